//! Time-per-component measurements across samplers, generators and dimensions.
//!
//! A cell `(method, rng, n)` is timed around the whole batch of vectors with
//! a monotonic clock, after an untimed warmup, with all buffers allocated up
//! front. Each cell is repeated and the median wall time is reported.
//!
//! The default batch size, `max(10³, 10⁷/n)` vectors, is a guess aimed at
//! comparable work per cell; pass an explicit count for anything else.
//! Absolute numbers depend on the machine, CPU frequency scaling and
//! whatever else is running; only relative orderings carry over.

use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::rng::{RngKind, RngStream};
use crate::samplers::{SampleError, Sampler, SamplerKind};

pub const GOLDEN_RATIO: f64 = 1.618034;
pub const DEFAULT_REPETITIONS: usize = 3;
pub const CSV_HEADER: &str = "method,rng,n,vectors,seconds_per_component,rng_draws_per_component";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BenchError {
    #[error("a benchmark cell needs at least one vector")]
    ZeroVectors,
    #[error("the dimension schedule needs max_n >= 2, got {0}")]
    InvalidMaxN(usize),
    #[error("no methods or no generators selected")]
    EmptyGrid,
    #[error(transparent)]
    Sample(#[from] SampleError),
}

/// Dimensions `2, 3, 4, 5, 8, 9, 14, 15, …`: even `n` is followed by `n + 1`,
/// odd `n` by `⌊n·φ⌋` rounded down to even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionSchedule {
    pub values: Vec<usize>,
    pub max_n: usize,
}

pub fn schedule(max_n: usize) -> Result<DimensionSchedule, BenchError> {
    if max_n < 2 {
        return Err(BenchError::InvalidMaxN(max_n));
    }
    let mut values = vec![2usize];
    loop {
        let n = *values.last().expect("non-empty");
        let next = if n % 2 == 0 {
            n + 1
        } else {
            let scaled = (n as f64 * GOLDEN_RATIO).floor() as usize;
            scaled - scaled % 2
        };
        if next > max_n {
            break;
        }
        values.push(next);
    }
    Ok(DimensionSchedule { values, max_n })
}

/// Vectors per cell when none are given.
pub fn default_vectors(n: usize) -> usize {
    (10_000_000 / n.max(1)).max(1000)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub method: SamplerKind,
    pub rng: RngKind,
    pub n: usize,
    pub vectors: usize,
    pub seconds_per_component: f64,
    pub rng_draws_per_component: f64,
}

impl BenchRecord {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{:e},{}",
            self.method,
            self.rng,
            self.n,
            self.vectors,
            self.seconds_per_component,
            self.rng_draws_per_component
        )
    }
}

pub fn run_cell(
    method: SamplerKind,
    rng: RngKind,
    n: usize,
    vectors: usize,
    seed: u64,
) -> Result<BenchRecord, BenchError> {
    run_cell_repeated(method, rng, n, vectors, seed, DEFAULT_REPETITIONS)
}

/// As [`run_cell`] with an explicit repetition count; every repetition
/// replays the same stream.
pub fn run_cell_repeated(
    method: SamplerKind,
    rng_kind: RngKind,
    n: usize,
    vectors: usize,
    seed: u64,
    repetitions: usize,
) -> Result<BenchRecord, BenchError> {
    if vectors == 0 {
        return Err(BenchError::ZeroVectors);
    }
    let mut sampler = Sampler::<f64>::new(method, n)?;
    let mut out = vec![0.0f64; n];
    let warmup = (vectors / 10).min(1000);
    let mut times = Vec::with_capacity(repetitions.max(1));
    let mut draws = 0u64;
    let mut sink = 0.0f64;

    for _ in 0..repetitions.max(1) {
        let mut rng = RngStream::new(rng_kind, seed);
        for _ in 0..warmup {
            sampler.fill(&mut rng, &mut out);
            sink += out.iter().sum::<f64>();
        }
        let before = rng.draw_count();
        let start = Instant::now();
        for _ in 0..vectors {
            sampler.fill(&mut rng, &mut out);
            sink += out.iter().sum::<f64>();
        }
        times.push(start.elapsed());
        draws = rng.draw_count() - before;
    }
    black_box(sink);

    times.sort_unstable();
    let median = times[times.len() / 2].max(Duration::from_nanos(1));
    let components = (vectors * n) as f64;
    Ok(BenchRecord {
        method,
        rng: rng_kind,
        n,
        vectors,
        seconds_per_component: median.as_secs_f64() / components,
        rng_draws_per_component: draws as f64 / components,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct GridConfig {
    /// Fixed vectors per cell; `None` uses [`default_vectors`].
    pub vectors: Option<usize>,
    pub repetitions: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            vectors: None,
            repetitions: DEFAULT_REPETITIONS,
        }
    }
}

/// All valid `(method, rng, n)` cells, ordered by method, then generator, then `n`.
/// Cell `i` in that order is seeded with `seed + i`.
pub fn grid_cells(
    methods: &[SamplerKind],
    rngs: &[RngKind],
    max_n: usize,
) -> Result<Vec<(SamplerKind, RngKind, usize)>, BenchError> {
    if methods.is_empty() || rngs.is_empty() {
        return Err(BenchError::EmptyGrid);
    }
    let dims = schedule(max_n)?.values;
    let mut methods = methods.to_vec();
    methods.sort_unstable();
    methods.dedup();
    let mut rngs = rngs.to_vec();
    rngs.sort_unstable();
    rngs.dedup();
    let mut cells = Vec::new();
    for &m in &methods {
        for &r in &rngs {
            cells.extend(dims.iter().filter(|&&n| m.supports(n)).map(|&n| (m, r, n)));
        }
    }
    Ok(cells)
}

pub fn run_grid(
    methods: &[SamplerKind],
    rngs: &[RngKind],
    max_n: usize,
    config: GridConfig,
    seed: u64,
) -> Result<Vec<BenchRecord>, BenchError> {
    run_grid_with(methods, rngs, max_n, config, seed, |_| {})
}

/// [`run_grid`] with a callback invoked after each finished cell.
pub fn run_grid_with(
    methods: &[SamplerKind],
    rngs: &[RngKind],
    max_n: usize,
    config: GridConfig,
    seed: u64,
    mut on_record: impl FnMut(&BenchRecord),
) -> Result<Vec<BenchRecord>, BenchError> {
    let cells = grid_cells(methods, rngs, max_n)?;
    let mut records = Vec::with_capacity(cells.len());
    for (index, (method, rng, n)) in cells.into_iter().enumerate() {
        let vectors = config.vectors.unwrap_or_else(|| default_vectors(n));
        let record = run_cell_repeated(
            method,
            rng,
            n,
            vectors,
            seed.wrapping_add(index as u64),
            config.repetitions,
        )?;
        on_record(&record);
        records.push(record);
    }
    Ok(records)
}
