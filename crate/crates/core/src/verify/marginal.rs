//! Law of a single coordinate of a uniform point on the unit sphere in ℝⁿ.
//!
//! Projecting onto n − 2 coordinates gives the uniform law on the
//! (n − 2)-ball; one more integration leaves the density
//! `c·(1 − t²)^{(n−3)/2}` on `[−1, 1]`.

use std::f64::consts::{FRAC_1_PI, PI};

const NODES: usize = 256;
const SEGMENT_TOLERANCE: f64 = 1e-13;
const TAIL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
enum Form {
    Arcsine,
    Uniform,
    Semicircle,
    /// Cumulative integrals of the unnormalised density at equally spaced nodes.
    Tabulated { exponent: f64, cumulative: Vec<f64> },
}

#[derive(Clone, Debug)]
pub struct MarginalLaw {
    n: usize,
    form: Form,
}

/// The coordinate law for dimension `n ≥ 2`.
///
/// Closed forms for n = 2, 3, 4; adaptive Simpson quadrature otherwise.
pub fn marginal_cdf(n: usize) -> MarginalLaw {
    assert!(n >= 2, "coordinate marginal needs n >= 2");
    let form = match n {
        2 => Form::Arcsine,
        3 => Form::Uniform,
        4 => Form::Semicircle,
        _ => {
            let exponent = (n as f64 - 3.0) / 2.0;
            let density = |t: f64| (1.0 - t * t).max(0.0).powf(exponent);
            let h = 2.0 / NODES as f64;
            let mut cumulative = Vec::with_capacity(NODES + 1);
            cumulative.push(0.0);
            let mut acc = 0.0;
            for k in 0..NODES {
                let lo = -1.0 + k as f64 * h;
                acc += adaptive_simpson(&density, lo, lo + h, SEGMENT_TOLERANCE);
                cumulative.push(acc);
            }
            Form::Tabulated {
                exponent,
                cumulative,
            }
        }
    };
    MarginalLaw { n, form }
}

impl MarginalLaw {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= -1.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        match &self.form {
            Form::Arcsine => 0.5 + x.asin() * FRAC_1_PI,
            Form::Uniform => (x + 1.0) / 2.0,
            Form::Semicircle => 0.5 + (x * (1.0 - x * x).sqrt() + x.asin()) / PI,
            Form::Tabulated {
                exponent,
                cumulative,
            } => {
                let h = 2.0 / NODES as f64;
                let k = (((x + 1.0) / h) as usize).min(NODES - 1);
                let lo = -1.0 + k as f64 * h;
                let e = *exponent;
                let density = |t: f64| (1.0 - t * t).max(0.0).powf(e);
                let partial = cumulative[k] + adaptive_simpson(&density, lo, x, TAIL_TOLERANCE);
                (partial / cumulative[NODES]).clamp(0.0, 1.0)
            }
        }
    }
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}
