//! Adaptive Gauss-Kronrod (G10/K21) quadrature.
//!
//! Integrands are fallible (`Fn(f64) -> Result<f64>`) because every
//! integrand in this crate evaluates special functions that can refuse an
//! argument. Subdivision always splits the interval with the largest error
//! estimate, the lowest index winning ties, so results are reproducible.

use crate::error::{Error, Result};
use crate::parallel::map_collect;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_914_159,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights belong to XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// One 21-point Kronrod pass; returns (Kronrod value, |Kronrod - Gauss|).
pub fn gauss_kronrod21<F>(f: &F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(10).enumerate() {
        let dx = half * x;
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs()))
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Adaptive integration of `f` over [a, b] until the summed error estimate
/// drops below max(abs_tol, rel_tol·|value|) or `max_segments` is reached.
pub fn integrate<F>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("integration limits [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, error: 0.0, evaluations: 0, converged: true });
    }
    let (value, error) = gauss_kronrod21(f, a, b)?;
    let mut segments = vec![Segment { a, b, value, error }];
    let mut evaluations = 21;
    loop {
        let total: f64 = segments.iter().map(|s| s.value).sum();
        let err: f64 = segments.iter().map(|s| s.error).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(QuadResult { value: total, error: err, evaluations, converged: true });
        }
        if segments.len() >= max_segments {
            log::warn!(
                "quadrature on [{a}, {b}] stopped at {max_segments} segments with error {err:.3e}"
            );
            return Ok(QuadResult { value: total, error: err, evaluations, converged: false });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, s)| {
                if s.error > best.1 {
                    (i, s.error)
                } else {
                    best
                }
            });
        let seg = segments[worst];
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            return Ok(QuadResult { value: total, error: err, evaluations, converged: false });
        }
        let (lv, le) = gauss_kronrod21(f, seg.a, mid)?;
        let (rv, re) = gauss_kronrod21(f, mid, seg.b)?;
        evaluations += 42;
        segments[worst] = Segment { a: seg.a, b: mid, value: lv, error: le };
        segments.insert(worst + 1, Segment { a: mid, b: seg.b, value: rv, error: re });
    }
}

/// Splits [a, b] into `panels` equal pieces, integrates each adaptively to
/// `abs_tol / panels` (possibly concurrently) and sums them left to right.
pub fn integrate_panels<F>(
    f: &F,
    a: f64,
    b: f64,
    panels: usize,
    abs_tol: f64,
    max_segments: usize,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64> + Sync + Send,
{
    let panels = panels.max(1);
    let bounds: Vec<(f64, f64)> = (0..panels)
        .map(|k| {
            let lo = a + (b - a) * (k as f64 / panels as f64);
            let hi = if k + 1 == panels {
                b
            } else {
                a + (b - a) * ((k + 1) as f64 / panels as f64)
            };
            (lo, hi)
        })
        .collect();
    let tol = abs_tol / panels as f64;
    let parts = map_collect(&bounds, |&(lo, hi)| integrate(f, lo, hi, tol, 0.0, max_segments));
    let mut out = QuadResult { value: 0.0, error: 0.0, evaluations: 0, converged: true };
    for part in parts {
        let part = part?;
        out.value += part.value;
        out.error += part.error;
        out.evaluations += part.evaluations;
        out.converged &= part.converged;
    }
    Ok(out)
}
