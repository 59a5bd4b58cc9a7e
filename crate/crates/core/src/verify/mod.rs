//! Goodness-of-fit machinery for checking sampler output against analytic laws.
//!
//! All p-values are asymptotic: the Kolmogorov distribution (series truncated
//! at 100 terms) for KS tests, the regularised upper incomplete gamma function
//! for chi-square, and the normal tail for z-scores.

use std::fmt;

mod chisq;
mod ks;
mod marginal;
pub mod suites;

pub use chisq::chi_square_binned;
pub use ks::{kolmogorov_survival, ks_one_sample, ks_two_sample};
pub use marginal::{marginal_cdf, MarginalLaw};
pub use suites::{run_suite, Suite, SuiteConfig, SuiteOutcome, SuiteRow};

/// Per-test significance level used unless configured otherwise.
pub const DEFAULT_ALPHA: f64 = 1e-3;

/// Smallest sample accepted by the KS tests.
pub const MIN_KS_SAMPLES: usize = 10;

/// Smallest expected count per chi-square bin.
pub const MIN_EXPECTED_PER_BIN: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },
    #[error("{bins} bins leave {expected:.2} expected counts per bin (need >= 5)")]
    BinsTooFine { bins: usize, expected: f64 },
    #[error("sample contains NaN")]
    NotANumber,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GofTest {
    Ks1,
    Ks2,
    ChiSquare,
    /// Normal-approximation test of a mean or a correlation.
    ZScore,
}

impl GofTest {
    pub fn tag(self) -> &'static str {
        match self {
            GofTest::Ks1 => "ks1",
            GofTest::Ks2 => "ks2",
            GofTest::ChiSquare => "chi2",
            GofTest::ZScore => "z",
        }
    }
}

impl fmt::Display for GofTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GofReport {
    pub test: GofTest,
    pub statistic: f64,
    pub p_value: f64,
    pub samples: usize,
    pub alpha: f64,
    /// `p_value > alpha`.
    pub pass: bool,
}

impl GofReport {
    pub fn new(test: GofTest, statistic: f64, p_value: f64, samples: usize) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        GofReport {
            test,
            statistic,
            p_value,
            samples,
            alpha: DEFAULT_ALPHA,
            pass: p_value > DEFAULT_ALPHA,
        }
    }

    pub fn at_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self.pass = self.p_value > alpha;
        self
    }
}

/// Two-sided normal test of `observed` against `expected` with the given standard error.
pub fn z_test(observed: f64, expected: f64, std_error: f64, samples: usize) -> GofReport {
    let p = if std_error > 0.0 {
        let z = (observed - expected) / std_error;
        statrs::function::erf::erfc(z.abs() / std::f64::consts::SQRT_2)
    } else if observed == expected {
        1.0
    } else {
        0.0
    };
    GofReport::new(GofTest::ZScore, observed, p, samples)
}

/// Failures a suite of `tests` checks may show at per-test level `alpha`:
/// the expected count under the null, rounded up.
pub fn bonferroni_allowance(tests: usize, alpha: f64) -> usize {
    (tests as f64 * alpha).ceil() as usize
}

pub(crate) fn sorted_copy(values: &[f64]) -> Result<Vec<f64>, VerifyError> {
    if values.iter().any(|v| v.is_nan()) {
        return Err(VerifyError::NotANumber);
    }
    let mut v = values.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    Ok(v)
}
