//! Batteries of goodness-of-fit checks over the samplers.
//!
//! Each suite produces one [`SuiteRow`] per check. A suite passes when the
//! number of failing rows does not exceed [`bonferroni_allowance`] for its
//! size and per-test `alpha`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::{
    bonferroni_allowance, chi_square_binned, ks_one_sample, ks_two_sample, marginal_cdf, z_test,
    GofReport, VerifyError, DEFAULT_ALPHA,
};
use crate::rng::{RngKind, RngStream};
use crate::samplers::{draw_disk_pair, DiskPair, Sampler, SamplerKind};

pub const CSV_HEADER: &str = "test,method,rng,n,samples,statistic,p_value,pass";

/// Samples per check below which the suites refuse to run.
pub const MIN_SUITE_SAMPLES: usize = 1000;

const CHI_SQUARE_BINS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Marginals,
    Projections,
    Lemmas,
    Equivalence,
    Consumption,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Marginals,
        Suite::Projections,
        Suite::Lemmas,
        Suite::Equivalence,
        Suite::Consumption,
        Suite::All,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Suite::Marginals => "marginals",
            Suite::Projections => "projections",
            Suite::Lemmas => "lemmas",
            Suite::Equivalence => "equivalence",
            Suite::Consumption => "consumption",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub samples: usize,
    pub rng: RngKind,
    pub seed: u64,
    pub alpha: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            samples: 100_000,
            rng: RngKind::Mt19937_64,
            seed: 1,
            alpha: DEFAULT_ALPHA,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteRow {
    /// `<test kind>:<quantity>`, e.g. `chi2:x1` or `ks2:max|x|`.
    pub check: String,
    /// Sampler tag, or `a~b` for two-sample comparisons.
    pub method: String,
    pub rng: RngKind,
    pub n: usize,
    pub report: GofReport,
}

impl SuiteRow {
    pub fn csv(&self) -> String {
        let r = &self.report;
        format!(
            "{},{},{},{},{},{},{},{}",
            self.check, self.method, self.rng, self.n, r.samples, r.statistic, r.p_value, r.pass
        )
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub rows: Vec<SuiteRow>,
    pub alpha: f64,
}

impl SuiteOutcome {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.report.pass).count()
    }

    pub fn allowance(&self) -> usize {
        bonferroni_allowance(self.rows.len(), self.alpha)
    }

    pub fn passed(&self) -> bool {
        self.failures() <= self.allowance()
    }

    pub fn find(&self, check: &str, method: &str, n: usize) -> Option<&SuiteRow> {
        self.rows
            .iter()
            .find(|r| r.check == check && r.method == method && r.n == n)
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteOutcome, VerifyError> {
    if config.samples < MIN_SUITE_SAMPLES {
        return Err(VerifyError::TooFewSamples {
            got: config.samples,
            min: MIN_SUITE_SAMPLES,
        });
    }
    let mut ctx = Context {
        config: *config,
        next_seed: config.seed,
        rows: Vec::new(),
    };
    match suite {
        Suite::Marginals => marginals(&mut ctx)?,
        Suite::Projections => projections(&mut ctx)?,
        Suite::Lemmas => lemmas(&mut ctx)?,
        Suite::Equivalence => equivalence(&mut ctx)?,
        Suite::Consumption => consumption(&mut ctx)?,
        Suite::All => {
            marginals(&mut ctx)?;
            projections(&mut ctx)?;
            lemmas(&mut ctx)?;
            equivalence(&mut ctx)?;
            consumption(&mut ctx)?;
        }
    }
    Ok(SuiteOutcome {
        rows: ctx.rows,
        alpha: config.alpha,
    })
}

struct Context {
    config: SuiteConfig,
    next_seed: u64,
    rows: Vec<SuiteRow>,
}

impl Context {
    fn stream(&mut self) -> RngStream {
        let s = RngStream::new(self.config.rng, self.next_seed);
        self.next_seed = self.next_seed.wrapping_add(1);
        s
    }

    fn push(&mut self, check: String, method: impl Into<String>, n: usize, report: GofReport) {
        self.rows.push(SuiteRow {
            check,
            method: method.into(),
            rng: self.config.rng,
            n,
            report: report.at_alpha(self.config.alpha),
        });
    }

    /// Draws `samples` points and records `stats` of each one.
    fn collect(&mut self, kind: SamplerKind, n: usize, stats: &[Stat]) -> Vec<Vec<f64>> {
        let count = self.config.samples;
        let mut rng = self.stream();
        let mut sampler = Sampler::<f64>::new(kind, n).expect("suite cells are valid");
        let mut point = vec![0.0; n];
        let mut columns = vec![Vec::with_capacity(count); stats.len()];
        for _ in 0..count {
            sampler.fill(&mut rng, &mut point);
            for (column, stat) in columns.iter_mut().zip(stats) {
                column.push((stat.eval)(&point));
            }
        }
        columns
    }
}

struct Stat {
    name: &'static str,
    eval: fn(&[f64]) -> f64,
}

const X1: Stat = Stat {
    name: "x1",
    eval: |p| p[0],
};
const X1X2: Stat = Stat {
    name: "x1*x2",
    eval: |p| p[0] * p[1],
};
const MAX_ABS: Stat = Stat {
    name: "max|x|",
    eval: |p| p.iter().fold(0.0, |m, x| f64::max(m, x.abs())),
};
const LAST: Stat = Stat {
    name: "xn",
    eval: |p| p[p.len() - 1],
};
const NORM_SQUARED: Stat = Stat {
    name: "|x|^2",
    eval: |p| p.iter().map(|x| x * x).sum(),
};

fn marginals(ctx: &mut Context) -> Result<(), VerifyError> {
    use SamplerKind::*;
    let cells: &[(SamplerKind, usize)] = &[
        (SortedPairBasic, 3),
        (SortedPairBasic, 4),
        (SortedPairBasic, 5),
        (SortedPairBasic, 8),
        (SortedPairBucket, 5),
        (SortedPairBucket, 9),
        (SortedPairInSitu, 4),
        (SortedPairInSitu, 8),
        (Muller, 3),
        (Muller, 4),
        (Muller, 5),
        (Muller, 8),
        (SibuyaEven, 4),
        (SibuyaEven, 8),
        (Polar3, 3),
        (Marsaglia3, 3),
        (Marsaglia4, 4),
        (RejectionCube, 3),
        (RejectionCube, 5),
    ];
    for &(kind, n) in cells {
        let law = marginal_cdf(n);
        let columns = ctx.collect(kind, n, &[X1, LAST]);
        for (column, label) in columns.iter().zip(["x1".to_string(), format!("x{n}")]) {
            let report = chi_square_binned(column, |x| law.cdf(x), CHI_SQUARE_BINS)?;
            ctx.push(format!("chi2:{label}"), kind.tag(), n, report);
        }
    }
    Ok(())
}

fn projections(ctx: &mut Context) -> Result<(), VerifyError> {
    use SamplerKind::*;
    let samples = ctx.config.samples;

    let mut rng = ctx.stream();
    let s: Vec<f64> = (0..samples)
        .map(|_| draw_disk_pair::<f64, _>(&mut rng).s)
        .collect();
    ctx.push("ks1:S".into(), "disk-pair", 2, ks_one_sample(&s, |x| x)?);

    // the first n − 2 coordinates are uniform in the (n − 2)-ball: ‖·‖^{n−2} ~ U(0, 1)
    for &(kind, n) in &[
        (SortedPairBasic, 4),
        (SortedPairBasic, 6),
        (SortedPairBasic, 9),
        (SortedPairBucket, 9),
        (SortedPairInSitu, 6),
        (Marsaglia4, 4),
        (Muller, 6),
    ] {
        let k = n - 2;
        let mut rng = ctx.stream();
        let mut sampler = Sampler::<f64>::new(kind, n).expect("valid cell");
        let mut point = vec![0.0; n];
        let values: Vec<f64> = (0..samples)
            .map(|_| {
                sampler.fill(&mut rng, &mut point);
                let r2: f64 = point[..k].iter().map(|x| x * x).sum();
                r2.powf(k as f64 / 2.0)
            })
            .collect();
        let check = format!("ks1:|x[1..{k}]|^{k}");
        ctx.push(check, kind.tag(), n, ks_one_sample(&values, |x| x)?);
    }

    // interior points: ‖x‖ⁿ ~ U(0, 1)
    for &(kind, n) in &[
        (BallSortedPair, 2),
        (BallSortedPair, 4),
        (BallSortedPair, 8),
        (BallViaSpherePlus2, 1),
        (BallViaSpherePlus2, 2),
        (BallViaSpherePlus2, 3),
        (BallViaSpherePlus2, 5),
    ] {
        let columns = ctx.collect(kind, n, &[NORM_SQUARED]);
        let values: Vec<f64> = columns[0].iter().map(|r2| r2.powf(n as f64 / 2.0)).collect();
        ctx.push(
            format!("ks1:|x|^{n}"),
            kind.tag(),
            n,
            ks_one_sample(&values, |x| x)?,
        );
    }
    Ok(())
}

fn lemmas(ctx: &mut Context) -> Result<(), VerifyError> {
    let reps = ctx.config.samples;

    for m in [2usize, 5, 16] {
        let mut rng = ctx.stream();
        let maxima: Vec<f64> = (0..reps)
            .map(|_| (0..m).map(|_| rng.uniform()).fold(0.0, f64::max))
            .collect();
        let report = ks_one_sample(&maxima, |x| x.powi(m as i32))?;
        ctx.push(format!("ks1:max-of-{m}"), "uniform", m, report);
    }

    // sorted uniforms: η_i = ξ_i/ξ_{i+1} has CDF xⁱ, and the η are independent
    const M: usize = 8;
    let mut rng = ctx.stream();
    let mut ratios: Vec<Vec<f64>> = (1..M).map(|_| Vec::with_capacity(reps)).collect();
    let mut xi = [0.0f64; M];
    for _ in 0..reps {
        for x in xi.iter_mut() {
            *x = rng.uniform();
        }
        xi.sort_unstable_by(f64::total_cmp);
        for i in 0..M - 1 {
            ratios[i].push(xi[i] / xi[i + 1]);
        }
    }
    for (i, eta) in ratios.iter().enumerate() {
        let power = (i + 1) as i32;
        let report = ks_one_sample(eta, |x| x.clamp(0.0, 1.0).powi(power))?;
        ctx.push(format!("ks1:eta{}", i + 1), "uniform", M, report);
    }
    for i in 0..M - 1 {
        for j in i + 1..M - 1 {
            let r = correlation(&ratios[i], &ratios[j]);
            let report = z_test(r, 0.0, 1.0 / (reps as f64).sqrt(), reps);
            ctx.push(format!("z:corr(eta{},eta{})", i + 1, j + 1), "uniform", M, report);
        }
    }

    // disk radii have density ∝ x, so sorted ratios follow CDF x^{2i}
    let mut rng = ctx.stream();
    let mut ratios: Vec<Vec<f64>> = (1..M).map(|_| Vec::with_capacity(reps)).collect();
    let mut radii = [0.0f64; M];
    for _ in 0..reps {
        for r in radii.iter_mut() {
            let pair: DiskPair<f64> = draw_disk_pair(&mut rng);
            *r = pair.s.sqrt();
        }
        radii.sort_unstable_by(f64::total_cmp);
        for i in 0..M - 1 {
            ratios[i].push(radii[i] / radii[i + 1]);
        }
    }
    for (i, eta) in ratios.iter().enumerate() {
        let power = 2 * (i + 1) as i32;
        let report = ks_one_sample(eta, |x| x.clamp(0.0, 1.0).powi(power))?;
        ctx.push(format!("ks1:radius-eta{}", i + 1), "disk-pair", M, report);
    }

    // √S_max over n/2 pairs has density ∝ x^{n−1}
    for n in [8usize, 16] {
        let mut rng = ctx.stream();
        let values: Vec<f64> = (0..reps)
            .map(|_| {
                (0..n / 2)
                    .map(|_| draw_disk_pair::<f64, _>(&mut rng).s)
                    .fold(0.0, f64::max)
                    .sqrt()
            })
            .collect();
        let report = ks_one_sample(&values, |x| x.powi(n as i32))?;
        ctx.push(format!("ks1:sqrt(Smax)^{n}"), "disk-pair", n, report);
    }
    Ok(())
}

fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    sab / (saa * sbb).sqrt()
}

/// Sphere samplers compared against Gaussian rescaling at each dimension.
pub const EQUIVALENCE_DIMS: [usize; 5] = [3, 4, 8, 9, 24];

fn equivalence(ctx: &mut Context) -> Result<(), VerifyError> {
    use SamplerKind::*;
    let stats = [X1, X1X2, MAX_ABS];
    let candidates = [
        Polar3,
        Marsaglia3,
        Marsaglia4,
        SibuyaEven,
        SortedPairBasic,
        SortedPairBucket,
        SortedPairInSitu,
        RejectionCube,
    ];
    for n in EQUIVALENCE_DIMS {
        let reference = ctx.collect(Muller, n, &stats);
        for kind in candidates.into_iter().filter(|k| k.supports(n)) {
            let columns = ctx.collect(kind, n, &stats);
            for ((ours, theirs), stat) in columns.iter().zip(&reference).zip(&stats) {
                let report = ks_two_sample(ours, theirs)?;
                ctx.push(
                    format!("ks2:{}", stat.name),
                    format!("{}~{}", kind.tag(), Muller.tag()),
                    n,
                    report,
                );
            }
        }
    }
    for n in [4usize, 16] {
        let reference = ctx.collect(SortedPairBasic, n, &stats);
        let columns = ctx.collect(SibuyaEven, n, &stats);
        for ((ours, theirs), stat) in columns.iter().zip(&reference).zip(&stats) {
            ctx.push(
                format!("ks2:{}", stat.name),
                format!("{}~{}", SibuyaEven.tag(), SortedPairBasic.tag()),
                n,
                ks_two_sample(ours, theirs)?,
            );
        }
    }
    Ok(())
}

/// Mean uniforms per component for the sorted-pair sphere samplers:
/// `4/π` per pair coordinate, times `(n + 1)/n` for odd `n`.
pub fn expected_sorted_pair_draws(n: usize) -> f64 {
    let pair_dim = (n + n % 2) as f64;
    4.0 / PI * pair_dim / n as f64
}

fn consumption(ctx: &mut Context) -> Result<(), VerifyError> {
    use SamplerKind::*;
    let samples = ctx.config.samples;
    let accept = PI / 4.0;
    for &(kind, n) in &[
        (SortedPairBasic, 10),
        (SortedPairBasic, 9),
        (SortedPairBucket, 10),
        (SortedPairInSitu, 10),
        (Muller, 10),
        (Muller, 9),
    ] {
        let mut rng = ctx.stream();
        let mut sampler = Sampler::<f64>::new(kind, n).expect("valid cell");
        let mut point = vec![0.0; n];
        for _ in 0..samples {
            sampler.fill(&mut rng, &mut point);
        }
        let per_component = rng.draw_count() as f64 / (samples * n) as f64;
        let report = if kind == Muller {
            let expected = (n + n % 2) as f64 / n as f64;
            z_test(per_component, expected, 0.0, samples)
        } else {
            // attempts per pair are geometric with success probability π/4
            let pairs = (samples * (n + n % 2) / 2) as f64;
            let factor = (n + n % 2) as f64 / n as f64;
            let se = factor * ((1.0 - accept) / (accept * accept) / pairs).sqrt();
            z_test(per_component, expected_sorted_pair_draws(n), se, samples)
        };
        ctx.push("z:draws/component".into(), kind.tag(), n, report);
    }
    Ok(())
}
