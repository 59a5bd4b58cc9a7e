use statrs::function::gamma::gamma_ur;

use super::{GofReport, GofTest, VerifyError, MIN_EXPECTED_PER_BIN};

/// Pearson chi-square test with `bins` equiprobable bins under `cdf`.
///
/// Binning by `⌊F(x)·bins⌋` is the same as cutting at the quantiles
/// `F⁻¹(k/bins)` without having to invert `F`.
pub fn chi_square_binned(
    values: &[f64],
    cdf: impl Fn(f64) -> f64,
    bins: usize,
) -> Result<GofReport, VerifyError> {
    let expected = values.len() as f64 / bins.max(1) as f64;
    if bins < 2 || expected < MIN_EXPECTED_PER_BIN {
        return Err(VerifyError::BinsTooFine { bins, expected });
    }
    let mut counts = vec![0u64; bins];
    for &x in values {
        if x.is_nan() {
            return Err(VerifyError::NotANumber);
        }
        let q = cdf(x).clamp(0.0, 1.0);
        let k = ((q * bins as f64) as usize).min(bins - 1);
        counts[k] += 1;
    }
    let statistic: f64 = counts
        .iter()
        .map(|&c| {
            let diff = c as f64 - expected;
            diff * diff / expected
        })
        .sum();
    let dof = (bins - 1) as f64;
    let p = gamma_ur(dof / 2.0, statistic / 2.0);
    Ok(GofReport::new(GofTest::ChiSquare, statistic, p, values.len()))
}
