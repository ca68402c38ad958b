use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{fmt_float, Payload, ReportEnvelope};
use crate::argument::arg_zeta_unguarded;
use crate::census::{census_at, count_on_line, ratio_report, Census};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::littlewood::{audit, audit_with_census, AuditRectangle, LittlewoodReport};
use crate::parallel::map_collect;
use crate::special::hardy_z;

/// Rendered result of one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    /// File contents (CSV or JSON).
    pub body: String,
    /// One-line human summary, if the command has one.
    pub summary: Option<String>,
    pub exit_code: i32,
}

const EXIT_OK: i32 = 0;
const EXIT_INCONSISTENT: i32 = 2;
const EXIT_ACCURACY: i32 = 4;

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().flexible(true).from_writer(Vec::new())
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// `index,gamma,bracket_lo,bracket_hi,residual` for every zero below t_max.
pub fn cmd_zeros(t_max: f64, cfg: &EvalConfig) -> Result<CommandOutput> {
    cfg.validate()?;
    let census = count_on_line(t_max, cfg)?;
    let mut w = csv_writer();
    w.write_record(["index", "gamma", "bracket_lo", "bracket_hi", "residual"]).map_err(csv_err)?;
    for (i, z) in census.zeros.iter().enumerate() {
        w.write_record([
            (i + 1).to_string(),
            fmt_float(z.ordinate),
            fmt_float(z.bracket_lo),
            fmt_float(z.bracket_hi),
            fmt_float(z.residual),
        ])
        .map_err(csv_err)?;
    }
    let mut exit_code = EXIT_OK;
    if !census.complete {
        exit_code = EXIT_INCONSISTENT;
        w.write_record([format!(
            "# flag: {} sign changes but the von Mangoldt count is {}",
            census.n0, census.expected
        )])
        .map_err(csv_err)?;
    }
    Ok(CommandOutput {
        body: csv_finish(w)?,
        summary: Some(format!("{} zeros in (0, {t_max})", census.n0)),
        exit_code,
    })
}

/// JSON census report at height T.
pub fn cmd_census(t: f64, cfg: &EvalConfig) -> Result<CommandOutput> {
    cfg.validate()?;
    let report = ratio_report(t, cfg)?;
    let flags = report.flags.clone();
    let summary = format!(
        "T = {t}: N0 = {}, N = {}, von Mangoldt {:.6}, ratio {}",
        report.n0, report.n_argument_principle, report.n_mangoldt_real, report.ratio
    );
    let exit_code = if flags.is_empty() { EXIT_OK } else { EXIT_INCONSISTENT };
    let envelope = ReportEnvelope::new(*cfg, Payload::Census(report), flags);
    Ok(CommandOutput { body: envelope.to_json()?, summary: Some(summary), exit_code })
}

fn audit_exit_code(report: &LittlewoodReport) -> i32 {
    let failed = report.failed_checks();
    if failed.iter().any(|c| matches!(c.name.as_str(), "identity" | "vertical_nullity" | "horizontal_forms_agree")) {
        EXIT_ACCURACY
    } else if !failed.is_empty() || !report.flags.is_empty() {
        EXIT_INCONSISTENT
    } else {
        EXIT_OK
    }
}

fn audit_summary(report: &LittlewoodReport) -> String {
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    let failed: Vec<&str> = report.failed_checks().iter().map(|c| c.name.as_str()).collect();
    let mut line = format!(
        "{verdict} alpha={} T={}: lhs {:.10} rhs {:.10} identity {:.3e} asymptotic {:.3e} theorem {}",
        report.rectangle.alpha,
        report.rectangle.t,
        report.lhs_sum_distances,
        report.rhs_total,
        report.residual_identity,
        report.residual_asymptotic,
        report.residual_theorem
    );
    if !failed.is_empty() {
        line.push_str(&format!(" (failed: {})", failed.join(", ")));
    }
    line
}

/// JSON Littlewood report for the rectangle (α, T).
pub fn cmd_audit(alpha: f64, t: f64, cfg: &EvalConfig) -> Result<CommandOutput> {
    cfg.validate()?;
    let rect = AuditRectangle::new(alpha, t)?;
    let report = audit(&rect, cfg)?;
    let summary = audit_summary(&report);
    let exit_code = audit_exit_code(&report);
    let flags = report.flags.clone();
    let envelope = ReportEnvelope::new(*cfg, Payload::Audit(Box::new(report)), flags);
    Ok(CommandOutput { body: envelope.to_json()?, summary: Some(summary), exit_code })
}

/// One (α, T) cell of a sweep; numeric fields are absent when the cell failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub lhs: Option<f64>,
    pub rhs_vertical: Option<f64>,
    pub rhs_horizontal: Option<f64>,
    pub rhs_total: Option<f64>,
    pub arg_xi_integral: Option<f64>,
    pub asymptotic_rhs: Option<f64>,
    pub n_of_t: Option<u64>,
    pub residual_identity: Option<f64>,
    pub residual_asymptotic: Option<f64>,
    pub residual_theorem: Option<u64>,
    pub passed: Option<bool>,
    pub error: Option<String>,
    /// Exit code the cell's error maps to.
    pub error_exit_code: Option<i32>,
}

impl SweepRow {
    fn ok(r: &LittlewoodReport) -> Self {
        SweepRow {
            alpha: r.rectangle.alpha,
            t: r.rectangle.t,
            lhs: Some(r.lhs_sum_distances),
            rhs_vertical: Some(r.rhs_vertical),
            rhs_horizontal: Some(r.rhs_horizontal),
            rhs_total: Some(r.rhs_total),
            arg_xi_integral: Some(r.arg_xi_integral),
            asymptotic_rhs: Some(r.asymptotic_rhs),
            n_of_t: Some(r.n_of_t),
            residual_identity: Some(r.residual_identity),
            residual_asymptotic: Some(r.residual_asymptotic),
            residual_theorem: Some(r.residual_theorem),
            passed: Some(r.passed()),
            error: None,
            error_exit_code: None,
        }
    }

    fn failed(alpha: f64, t: f64, e: &Error) -> Self {
        SweepRow {
            alpha,
            t,
            lhs: None,
            rhs_vertical: None,
            rhs_horizontal: None,
            rhs_total: None,
            arg_xi_integral: None,
            asymptotic_rhs: None,
            n_of_t: None,
            residual_identity: None,
            residual_asymptotic: None,
            residual_theorem: None,
            passed: None,
            error: Some(e.to_string()),
            error_exit_code: Some(e.exit_code()),
        }
    }
}

/// First difference of residual_asymptotic between consecutive T at fixed α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepTrend {
    pub alpha: f64,
    pub t_from: f64,
    pub t_to: f64,
    pub difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub trend: Vec<SweepTrend>,
}

impl SweepTable {
    pub fn succeeded(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_none()).count()
    }

    /// Audits every (α, T) pair; one census per T is shared by all α.
    pub fn compute(alphas: &[f64], t_values: &[f64], cfg: &EvalConfig) -> Result<Self> {
        if alphas.is_empty() || t_values.is_empty() {
            return Err(Error::Usage("sweep needs at least one alpha and one T".into()));
        }
        let censuses: Vec<Result<Census>> = t_values.iter().map(|&t| census_at(t, cfg)).collect();
        let mut rows = Vec::with_capacity(alphas.len() * t_values.len());
        for &alpha in alphas {
            for (&t, census) in t_values.iter().zip(&censuses) {
                let cell = AuditRectangle::new(alpha, t).and_then(|rect| match census {
                    Ok(c) => audit_with_census(&rect, c, cfg),
                    Err(e) => Err(e.clone()),
                });
                rows.push(match cell {
                    Ok(r) => SweepRow::ok(&r),
                    Err(e) => {
                        log::warn!("sweep cell alpha = {alpha}, T = {t}: {e}");
                        SweepRow::failed(alpha, t, &e)
                    }
                });
            }
        }
        let mut trend = Vec::new();
        for &alpha in alphas {
            let mut cells: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.alpha == alpha)
                .filter_map(|r| r.residual_asymptotic.map(|v| (r.t, v)))
                .collect();
            cells.sort_by(|a, b| a.0.total_cmp(&b.0));
            for w in cells.windows(2) {
                trend.push(SweepTrend { alpha, t_from: w[0].0, t_to: w[1].0, difference: w[1].1 - w[0].1 });
            }
        }
        Ok(SweepTable { rows, trend })
    }

    fn exit_code(&self) -> i32 {
        if self.succeeded() > 0 {
            EXIT_OK
        } else {
            self.rows.iter().find_map(|r| r.error_exit_code).unwrap_or(1)
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let opt = |v: Option<f64>| v.map(fmt_float).unwrap_or_default();
        let opt_int = |v: Option<u64>| v.map(|n| n.to_string()).unwrap_or_default();
        let mut w = csv_writer();
        w.write_record([
            "alpha",
            "T",
            "lhs",
            "rhs_vertical",
            "rhs_horizontal",
            "rhs_total",
            "arg_xi_integral",
            "asymptotic_rhs",
            "n_of_T",
            "residual_identity",
            "residual_asymptotic",
            "residual_theorem",
            "passed",
            "error",
        ])
        .map_err(csv_err)?;
        for r in &self.rows {
            w.write_record([
                fmt_float(r.alpha),
                fmt_float(r.t),
                opt(r.lhs),
                opt(r.rhs_vertical),
                opt(r.rhs_horizontal),
                opt(r.rhs_total),
                opt(r.arg_xi_integral),
                opt(r.asymptotic_rhs),
                opt_int(r.n_of_t),
                opt(r.residual_identity),
                opt(r.residual_asymptotic),
                opt_int(r.residual_theorem),
                r.passed.map(|p| p.to_string()).unwrap_or_default(),
                r.error.clone().unwrap_or_default(),
            ])
            .map_err(csv_err)?;
        }
        w.write_record(["# trend: first differences of residual_asymptotic over T"]).map_err(csv_err)?;
        w.write_record(["alpha", "T_from", "T_to", "difference"]).map_err(csv_err)?;
        for d in &self.trend {
            w.write_record([fmt_float(d.alpha), fmt_float(d.t_from), fmt_float(d.t_to), fmt_float(d.difference)])
                .map_err(csv_err)?;
        }
        csv_finish(w)
    }
}

/// Sweep over α × T as CSV (or a JSON envelope when `json` is set).
pub fn cmd_sweep(alphas: &[f64], t_values: &[f64], cfg: &EvalConfig, json: bool) -> Result<CommandOutput> {
    cfg.validate()?;
    let table = SweepTable::compute(alphas, t_values, cfg)?;
    let summary = format!("{} of {} cells audited", table.succeeded(), table.rows.len());
    let exit_code = table.exit_code();
    let body = if json {
        ReportEnvelope::new(*cfg, Payload::Sweep(table), Vec::new()).to_json()?
    } else {
        table.to_csv()?
    };
    Ok(CommandOutput { body, summary: Some(summary), exit_code })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    ZTrace,
    SStaircase,
    Residuals,
}

impl FromStr for FigureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z-trace" => Ok(FigureKind::ZTrace),
            "s-staircase" => Ok(FigureKind::SStaircase),
            "residuals" => Ok(FigureKind::Residuals),
            other => Err(Error::Usage(format!(
                "unknown figure kind '{other}' (expected z-trace, s-staircase or residuals)"
            ))),
        }
    }
}

/// Sampling range for figure data. The t-grid is used by the trace kinds,
/// the α and T lists by `residuals`.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureRange {
    pub t_lo: f64,
    pub t_hi: f64,
    pub step: f64,
    pub alphas: Vec<f64>,
    pub t_values: Vec<f64>,
}

impl FigureRange {
    fn grid(&self) -> Result<Vec<f64>> {
        if !(self.t_hi > self.t_lo && self.step > 0.0 && self.t_lo.is_finite() && self.t_hi.is_finite()) {
            return Err(Error::Usage(format!(
                "figure range [{}, {}] with step {} is empty",
                self.t_lo, self.t_hi, self.step
            )));
        }
        let n = ((self.t_hi - self.t_lo) / self.step + 1e-9).floor() as usize;
        Ok((0..=n).map(|k| self.t_lo + self.step * k as f64).collect())
    }
}

fn s_of(t: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(arg_zeta_unguarded(0.5, t, cfg)? / std::f64::consts::PI)
}

/// Bisects every upward unit jump of S in [a, b] down to width zero_tol.
fn locate_jumps(a: (f64, f64), b: (f64, f64), cfg: &EvalConfig, out: &mut Vec<(f64, f64, f64)>) -> Result<()> {
    if b.1 - a.1 < 0.5 {
        return Ok(());
    }
    if b.0 - a.0 <= cfg.zero_tol {
        out.push((0.5 * (a.0 + b.0), a.1, b.1));
        return Ok(());
    }
    let m = 0.5 * (a.0 + b.0);
    let mid = (m, s_of(m, cfg)?);
    locate_jumps(a, mid, cfg, out)?;
    locate_jumps(mid, b, cfg, out)
}

/// Plottable series as CSV with a self-describing header.
pub fn cmd_figure_data(kind: FigureKind, range: &FigureRange, cfg: &EvalConfig) -> Result<CommandOutput> {
    cfg.validate()?;
    let mut w = csv_writer();
    let mut exit_code = EXIT_OK;
    match kind {
        FigureKind::ZTrace => {
            let grid = range.grid()?;
            let values = map_collect(&grid, |&t| hardy_z(t, cfg));
            w.write_record(["t", "z"]).map_err(csv_err)?;
            for (t, z) in grid.iter().zip(values) {
                w.write_record([fmt_float(*t), fmt_float(z?)]).map_err(csv_err)?;
            }
        }
        FigureKind::SStaircase => {
            if !(range.t_lo > 0.0) {
                return Err(Error::Usage("s-staircase needs t_lo > 0".into()));
            }
            let grid = range.grid()?;
            let values = map_collect(&grid, |&t| s_of(t, cfg)).into_iter().collect::<Result<Vec<_>>>()?;
            let cells: Vec<usize> = (1..grid.len()).collect();
            let jumps = map_collect(&cells, |&k| {
                let mut out = Vec::new();
                locate_jumps((grid[k - 1], values[k - 1]), (grid[k], values[k]), cfg, &mut out).map(|_| out)
            });
            let mut rows: Vec<(f64, f64, f64)> = grid.iter().zip(&values).map(|(&t, &s)| (t, s, s)).collect();
            for j in jumps {
                rows.extend(j?);
            }
            rows.sort_by(|a, b| a.0.total_cmp(&b.0));
            w.write_record(["t", "s_left", "s_right"]).map_err(csv_err)?;
            for (t, l, r) in rows {
                w.write_record([fmt_float(t), fmt_float(l), fmt_float(r)]).map_err(csv_err)?;
            }
        }
        FigureKind::Residuals => {
            if range.alphas.is_empty() || range.t_values.is_empty() {
                return Err(Error::Usage("residuals figure needs a nonempty sweep".into()));
            }
            let table = SweepTable::compute(&range.alphas, &range.t_values, cfg)?;
            exit_code = table.exit_code();
            w.write_record(["T", "alpha", "residual_identity", "residual_asymptotic", "residual_theorem", "error"])
                .map_err(csv_err)?;
            for r in &table.rows {
                w.write_record([
                    fmt_float(r.t),
                    fmt_float(r.alpha),
                    r.residual_identity.map(fmt_float).unwrap_or_default(),
                    r.residual_asymptotic.map(fmt_float).unwrap_or_default(),
                    r.residual_theorem.map(|n| n.to_string()).unwrap_or_default(),
                    r.error.clone().unwrap_or_default(),
                ])
                .map_err(csv_err)?;
            }
        }
    }
    Ok(CommandOutput { body: csv_finish(w)?, summary: None, exit_code })
}
