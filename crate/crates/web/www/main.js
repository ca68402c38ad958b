// pkg/ is produced by `wasm-bindgen --target web --out-dir crates/web/www/pkg`.
import init, { z_trace, arg_xi_profile, littlewood_check } from "./pkg/zeta_audit_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function plot(canvas, xs, ys, marks = []) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 30;
  ctx.clearRect(0, 0, w, h);
  const x0 = Math.min(...xs), x1 = Math.max(...xs);
  let y0 = Math.min(...ys, ...marks), y1 = Math.max(...ys, ...marks);
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  const px = (x) => pad + (x - x0) / (x1 - x0) * (w - 2 * pad);
  const py = (y) => h - pad - (y - y0) / (y1 - y0) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, h - pad); ctx.lineTo(w - pad, h - pad);
  ctx.moveTo(pad, pad); ctx.lineTo(pad, h - pad);
  if (y0 < 0 && y1 > 0) { ctx.moveTo(pad, py(0)); ctx.lineTo(w - pad, py(0)); }
  ctx.stroke();

  ctx.fillStyle = "#555";
  ctx.fillText(x0.toPrecision(4), pad, h - 10);
  ctx.fillText(x1.toPrecision(4), w - pad - 30, h - 10);
  ctx.fillText(y1.toPrecision(4), 2, pad);
  ctx.fillText(y0.toPrecision(4), 2, h - pad);

  ctx.strokeStyle = "#c60";
  ctx.setLineDash([4, 4]);
  for (const m of marks) {
    ctx.beginPath(); ctx.moveTo(pad, py(m)); ctx.lineTo(w - pad, py(m)); ctx.stroke();
  }
  ctx.setLineDash([]);

  ctx.strokeStyle = "#1a5fb4";
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(px(x), py(ys[i])) : ctx.moveTo(px(x), py(ys[i]))));
  ctx.stroke();
}

function guarded(info, f) {
  try {
    info.classList.remove("err");
    f();
  } catch (e) {
    info.classList.add("err");
    info.textContent = String(e);
  }
}

function runZ() {
  guarded($("z-info"), () => {
    const r = JSON.parse(z_trace(num("z-lo"), num("z-hi"), num("z-step")));
    let changes = 0;
    for (let i = 1; i < r.z.length; i++) if (r.z[i - 1] * r.z[i] < 0) changes++;
    $("z-info").textContent = `${r.t.length} points, ${changes} sign changes`;
    plot($("z-canvas"), r.t, r.z);
  });
}

function runProfile() {
  guarded($("p-info"), () => {
    const r = JSON.parse(arg_xi_profile(num("p-t"), num("p-n")));
    $("p-info").textContent =
      `von Mangoldt N(T) = ${r.n_mangoldt.toFixed(6)}, S(T) = ${r.s_of_T.toFixed(6)}`;
    plot($("p-canvas"), r.sigma, r.arg_over_pi, [Math.round(r.n_mangoldt)]);
  });
}

function runAudit() {
  guarded($("l-out"), () => {
    const r = JSON.parse(littlewood_check(num("l-alpha"), num("l-t")));
    $("l-out").textContent = Object.entries(r).map(([k, v]) => `${k.padEnd(20)} ${v}`).join("\n");
  });
}

init().then(() => {
  $("status").textContent = "ready";
  $("z-run").onclick = runZ;
  $("p-run").onclick = runProfile;
  $("l-run").onclick = runAudit;
  runZ();
}, (e) => {
  $("status").textContent = `failed to load wasm: ${e}`;
  $("status").classList.add("err");
});
