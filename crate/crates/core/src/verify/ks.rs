use super::{sorted_copy, GofReport, GofTest, VerifyError, MIN_KS_SAMPLES};

const SERIES_TERMS: usize = 100;

/// `P(K > λ)` for the Kolmogorov distribution.
///
/// Uses the theta-function form of the CDF for small `λ`, where the
/// alternating tail series converges poorly.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let c = -pi2 / (8.0 * lambda * lambda);
        let sum: f64 = (1..=SERIES_TERMS)
            .map(|k| {
                let j = (2 * k - 1) as f64;
                (c * j * j).exp()
            })
            .sum();
        let cdf = (2.0 * std::f64::consts::PI).sqrt() / lambda * sum;
        (1.0 - cdf).clamp(0.0, 1.0)
    } else {
        let mut sum = 0.0;
        for k in 1..=SERIES_TERMS {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            sum += if k % 2 == 1 { term } else { -term };
        }
        (2.0 * sum).clamp(0.0, 1.0)
    }
}

/// Asymptotic p-value with the usual `√n + 0.12 + 0.11/√n` effective-size correction.
fn ks_p_value(d: f64, effective_n: f64) -> f64 {
    let root = effective_n.sqrt();
    kolmogorov_survival((root + 0.12 + 0.11 / root) * d)
}

pub fn ks_one_sample(values: &[f64], cdf: impl Fn(f64) -> f64) -> Result<GofReport, VerifyError> {
    if values.len() < MIN_KS_SAMPLES {
        return Err(VerifyError::TooFewSamples {
            got: values.len(),
            min: MIN_KS_SAMPLES,
        });
    }
    let sorted = sorted_copy(values)?;
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let below = f - i as f64 / n;
        let above = (i + 1) as f64 / n - f;
        d = d.max(below).max(above);
    }
    Ok(GofReport::new(GofTest::Ks1, d, ks_p_value(d, n), sorted.len()))
}

pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<GofReport, VerifyError> {
    let shortest = a.len().min(b.len());
    if shortest < MIN_KS_SAMPLES {
        return Err(VerifyError::TooFewSamples {
            got: shortest,
            min: MIN_KS_SAMPLES,
        });
    }
    let a = sorted_copy(a)?;
    let b = sorted_copy(b)?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let effective = na * nb / (na + nb);
    Ok(GofReport::new(
        GofTest::Ks2,
        d,
        ks_p_value(d, effective),
        a.len() + b.len(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{RngKind, RngStream};

    fn uniforms(seed: u64, count: usize) -> Vec<f64> {
        let mut rng = RngStream::new(RngKind::Mt19937_64, seed);
        (0..count).map(|_| rng.uniform()).collect()
    }

    #[test]
    fn survival_reference_points() {
        // classical critical values of the Kolmogorov distribution
        assert!((kolmogorov_survival(1.358) - 0.05).abs() < 5e-4);
        assert!((kolmogorov_survival(1.628) - 0.01).abs() < 2e-4);
        assert!((kolmogorov_survival(1.949) - 0.001).abs() < 5e-5);
        assert_eq!(kolmogorov_survival(0.0), 1.0);
        assert!(kolmogorov_survival(0.3) > 0.9999);
        // the two series agree where they switch
        let pi2 = std::f64::consts::PI.powi(2);
        let l: f64 = 1.18;
        let theta = 1.0
            - (2.0 * std::f64::consts::PI).sqrt() / l
                * (1..=100)
                    .map(|k| (-((2 * k - 1) as f64).powi(2) * pi2 / (8.0 * l * l)).exp())
                    .sum::<f64>();
        assert!((theta - kolmogorov_survival(l)).abs() < 1e-12);
    }

    #[test]
    fn null_uniform_passes() {
        let r = ks_one_sample(&uniforms(1, 1_000_000), |x| x).unwrap();
        assert!(r.p_value > 0.001, "{r:?}");
        assert_eq!(r.samples, 1_000_000);
    }

    #[test]
    fn squared_uniforms_are_rejected() {
        let v: Vec<f64> = uniforms(2, 100_000).into_iter().map(|u| u * u).collect();
        let r = ks_one_sample(&v, |x| x).unwrap();
        // sup(√x − x) = 1/4 at x = 1/4
        assert!((r.statistic - 0.25).abs() < 0.01, "{r:?}");
        assert!(r.p_value < 1e-6);
    }

    #[test]
    fn identical_values() {
        let r = ks_one_sample(&[0.95; 10], |x| x).unwrap();
        assert!(r.statistic >= 0.9);
    }

    #[test]
    fn too_few() {
        assert_eq!(
            ks_one_sample(&[0.5; 9], |x| x),
            Err(VerifyError::TooFewSamples { got: 9, min: 10 })
        );
        assert!(ks_two_sample(&[0.5; 20], &[0.5; 3]).is_err());
        assert_eq!(
            ks_one_sample(&[f64::NAN; 10], |x| x),
            Err(VerifyError::NotANumber)
        );
    }

    #[test]
    fn two_sample_identical_inputs() {
        let a = uniforms(3, 1000);
        let r = ks_two_sample(&a, &a).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn two_sample_brute_force_statistic() {
        let a = uniforms(4, 300);
        let b: Vec<f64> = uniforms(5, 200).into_iter().map(|u| u.powf(1.3)).collect();
        let ecdf = |s: &[f64], x: f64| s.iter().filter(|&&v| v <= x).count() as f64 / s.len() as f64;
        let brute = a
            .iter()
            .chain(&b)
            .map(|&x| (ecdf(&a, x) - ecdf(&b, x)).abs())
            .fold(0.0, f64::max);
        let r = ks_two_sample(&a, &b).unwrap();
        assert!((r.statistic - brute).abs() < 1e-15);
    }

    #[test]
    fn p_values_are_calibrated_under_the_null() {
        let p: Vec<f64> = (0..200)
            .map(|k| ks_one_sample(&uniforms(100 + k, 2000), |x| x).unwrap().p_value)
            .collect();
        let meta = ks_one_sample(&p, |x| x).unwrap();
        assert!(meta.p_value > 0.001, "{meta:?}");

        let p2: Vec<f64> = (0..200)
            .map(|k| {
                ks_two_sample(&uniforms(1000 + k, 2000), &uniforms(5000 + k, 1500))
                    .unwrap()
                    .p_value
            })
            .collect();
        let meta = ks_one_sample(&p2, |x| x).unwrap();
        assert!(meta.p_value > 0.001, "{meta:?}");
    }
}
