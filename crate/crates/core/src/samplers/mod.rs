//! Point generators for the unit sphere surface and the unit ball.
//!
//! Every generator is available in two shapes: a free function returning a
//! checked [`UnitVector`] / [`BallPoint`], and the reusable [`Sampler`], which
//! owns its scratch memory and writes into a caller-provided buffer. The
//! benchmark uses the latter so that nothing is allocated while timing.
//!
//! The new method lives in [`sorted_pairs`]: draw `n/2` points in the unit
//! disk by rejection, sort them by squared radius `S`, and rescale pair `i` by
//! `√((1 − S_{i−1}/S_i) / S_max)`. No logarithms, trigonometric functions or
//! higher-order roots are needed.

use std::fmt;
use std::str::FromStr;

use crate::rng::UniformSource;
use crate::scalar::{norm_squared, Real};

pub mod classic;
pub mod sibuya;
pub mod sorted_pairs;

pub use classic::{
    sample_marsaglia3, sample_marsaglia4, sample_muller, sample_polar3, sample_rejection_cube,
};
pub use sibuya::sample_sibuya_even;
pub use sorted_pairs::{
    bucket_count, sample_ball_sorted_pairs, sample_ball_via_sphere, sample_sphere_sorted_pairs,
    sample_sphere_sorted_pairs_bucket, sample_sphere_sorted_pairs_in_situ,
    sample_sphere_sorted_pairs_odd, BUCKET_SIZE,
};

/// Rejection from the enclosing cube is refused beyond this dimension.
/// At n = 12 the acceptance rate is already about 3·10⁻⁴.
pub const REJECTION_CUBE_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SampleError {
    #[error("{method} does not support n = {n}")]
    UnsupportedDimension { method: SamplerKind, n: usize },
    #[error("rejection from the cube is limited to n <= {max}, got n = {n}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("squared norm {norm_squared} is not within tolerance of 1")]
    NotOnSphere { norm_squared: f64 },
    #[error("squared norm {norm_squared} exceeds 1")]
    OutsideBall { norm_squared: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SamplerKind {
    Muller,
    Polar3,
    Marsaglia3,
    Marsaglia4,
    SibuyaEven,
    SortedPairBasic,
    SortedPairBucket,
    SortedPairInSitu,
    BallSortedPair,
    BallViaSpherePlus2,
    RejectionCube,
}

impl SamplerKind {
    pub const ALL: [SamplerKind; 11] = [
        SamplerKind::Muller,
        SamplerKind::Polar3,
        SamplerKind::Marsaglia3,
        SamplerKind::Marsaglia4,
        SamplerKind::SibuyaEven,
        SamplerKind::SortedPairBasic,
        SamplerKind::SortedPairBucket,
        SamplerKind::SortedPairInSitu,
        SamplerKind::BallSortedPair,
        SamplerKind::BallViaSpherePlus2,
        SamplerKind::RejectionCube,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SamplerKind::Muller => "muller",
            SamplerKind::Polar3 => "polar3",
            SamplerKind::Marsaglia3 => "marsaglia3",
            SamplerKind::Marsaglia4 => "marsaglia4",
            SamplerKind::SibuyaEven => "sibuya",
            SamplerKind::SortedPairBasic => "sorted-basic",
            SamplerKind::SortedPairBucket => "sorted-bucket",
            SamplerKind::SortedPairInSitu => "sorted-insitu",
            SamplerKind::BallSortedPair => "ball-sorted",
            SamplerKind::BallViaSpherePlus2 => "ball-proj",
            SamplerKind::RejectionCube => "reject-cube",
        }
    }

    /// Ball samplers produce interior points rather than surface points.
    pub fn is_ball(self) -> bool {
        matches!(
            self,
            SamplerKind::BallSortedPair | SamplerKind::BallViaSpherePlus2
        )
    }

    pub fn supports(self, n: usize) -> bool {
        let even = n % 2 == 0;
        match self {
            SamplerKind::Polar3 | SamplerKind::Marsaglia3 => n == 3,
            SamplerKind::Marsaglia4 => n == 4,
            SamplerKind::SibuyaEven | SamplerKind::SortedPairInSitu | SamplerKind::BallSortedPair => {
                even && n >= 2
            }
            SamplerKind::RejectionCube => (2..=REJECTION_CUBE_MAX_N).contains(&n),
            SamplerKind::BallViaSpherePlus2 => n >= 1,
            SamplerKind::Muller | SamplerKind::SortedPairBasic | SamplerKind::SortedPairBucket => {
                n >= 2
            }
        }
    }

    pub fn check(self, n: usize) -> Result<(), SampleError> {
        if self.supports(n) {
            return Ok(());
        }
        if self == SamplerKind::RejectionCube && n > REJECTION_CUBE_MAX_N {
            return Err(SampleError::DimensionTooLarge {
                n,
                max: REJECTION_CUBE_MAX_N,
            });
        }
        Err(SampleError::UnsupportedDimension { method: self, n })
    }
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown method `{0}`")]
pub struct UnknownMethod(pub String);

impl FromStr for SamplerKind {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SamplerKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| UnknownMethod(s.to_owned()))
    }
}

/// A point on the surface of the unit sphere in `n` dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector<T> {
    coords: Vec<T>,
}

impl<T: Real> UnitVector<T> {
    pub fn new(coords: Vec<T>) -> Result<Self, SampleError> {
        let norm_squared = norm_squared(&coords).to_f64_lossy();
        if (norm_squared - 1.0).abs() < T::NORM_TOLERANCE {
            Ok(UnitVector { coords })
        } else {
            Err(SampleError::NotOnSphere { norm_squared })
        }
    }

    pub(crate) fn from_sampler(coords: Vec<T>) -> Self {
        debug_assert!(
            (norm_squared(&coords).to_f64_lossy() - 1.0).abs() < T::NORM_TOLERANCE,
            "sampler produced a non-unit vector"
        );
        UnitVector { coords }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn into_inner(self) -> Vec<T> {
        self.coords
    }
}

/// A point in the closed unit ball.
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint<T> {
    coords: Vec<T>,
}

impl<T: Real> BallPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self, SampleError> {
        let norm_squared = norm_squared(&coords).to_f64_lossy();
        if norm_squared <= 1.0 + T::NORM_TOLERANCE {
            Ok(BallPoint { coords })
        } else {
            Err(SampleError::OutsideBall { norm_squared })
        }
    }

    pub(crate) fn from_sampler(coords: Vec<T>) -> Self {
        debug_assert!(norm_squared(&coords).to_f64_lossy() <= 1.0 + T::NORM_TOLERANCE);
        BallPoint { coords }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm_squared(&self) -> T {
        norm_squared(&self.coords)
    }

    pub fn into_inner(self) -> Vec<T> {
        self.coords
    }
}

/// One accepted rejection sample from the unit disk, `s = a² + b² < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct DiskPair<T> {
    pub a: T,
    pub b: T,
    pub s: T,
}

impl<T: Real> DiskPair<T> {
    /// The pair's direction `(a, b)/√s` on the unit circle.
    pub fn direction(&self) -> (T, T) {
        let inv = self.s.sqrt().recip();
        (self.a * inv, self.b * inv)
    }
}

#[inline]
pub(crate) fn symmetric<T: Real>(u: f64) -> T {
    T::lit(2.0) * T::from_unit(u) - T::one()
}

/// Draws `(a, b)` from `[−1, 1)²` until `a² + b² < 1`; two uniforms per attempt.
#[inline]
pub fn draw_disk_pair<T: Real, R: UniformSource + ?Sized>(rng: &mut R) -> DiskPair<T> {
    loop {
        let a = symmetric::<T>(rng.uniform());
        let b = symmetric::<T>(rng.uniform());
        let s = a * a + b * b;
        if s < T::one() {
            return DiskPair { a, b, s };
        }
    }
}

/// As [`draw_disk_pair`], but also redraws the origin, whose direction is undefined.
#[inline]
pub(crate) fn draw_nonzero_disk_pair<T: Real, R: UniformSource + ?Sized>(
    rng: &mut R,
) -> DiskPair<T> {
    loop {
        let pair = draw_disk_pair(rng);
        if pair.s > T::zero() {
            return pair;
        }
    }
}

/// Reusable generator for one `(kind, n)` cell.
///
/// Scratch memory is sized at construction and retained between calls.
#[derive(Clone, Debug)]
pub struct Sampler<T> {
    kind: SamplerKind,
    n: usize,
    pairs: Vec<DiskPair<T>>,
    buckets: Vec<Vec<DiskPair<T>>>,
    aux: Vec<T>,
}

impl<T: Real> Sampler<T> {
    pub fn new(kind: SamplerKind, n: usize) -> Result<Self, SampleError> {
        kind.check(n)?;
        let pair_dim = n + n % 2;
        let mut sampler = Sampler {
            kind,
            n,
            pairs: Vec::new(),
            buckets: Vec::new(),
            aux: Vec::new(),
        };
        match kind {
            SamplerKind::SortedPairBasic | SamplerKind::BallSortedPair => {
                sampler.pairs.reserve(pair_dim / 2);
            }
            SamplerKind::SortedPairBucket => {
                let nb = bucket_count(pair_dim);
                let per_bucket = 2 * BUCKET_SIZE;
                sampler.buckets = (0..nb).map(|_| Vec::with_capacity(per_bucket)).collect();
            }
            SamplerKind::BallViaSpherePlus2 => {
                let nb = bucket_count(n + 2 + n % 2);
                let per_bucket = 2 * BUCKET_SIZE;
                sampler.buckets = (0..nb).map(|_| Vec::with_capacity(per_bucket)).collect();
                sampler.aux = vec![T::zero(); n + 2];
            }
            SamplerKind::SibuyaEven => sampler.aux = Vec::with_capacity(n / 2 + 1),
            _ => {}
        }
        Ok(sampler)
    }

    pub fn kind(&self) -> SamplerKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Writes one point into `out`, which must have length `n`.
    pub fn fill<R: UniformSource + ?Sized>(&mut self, rng: &mut R, out: &mut [T]) {
        assert_eq!(out.len(), self.n, "output buffer length must equal n");
        match self.kind {
            SamplerKind::Muller => classic::fill_muller(rng, out),
            SamplerKind::Polar3 => classic::fill_polar3(rng, out),
            SamplerKind::Marsaglia3 => classic::fill_marsaglia3(rng, out),
            SamplerKind::Marsaglia4 => classic::fill_marsaglia4(rng, out),
            SamplerKind::RejectionCube => classic::fill_rejection_cube(rng, out),
            SamplerKind::SibuyaEven => sibuya::fill_sibuya_even(&mut self.aux, rng, out),
            SamplerKind::SortedPairBasic => sorted_pairs::fill_basic(&mut self.pairs, rng, out),
            SamplerKind::SortedPairBucket => sorted_pairs::fill_bucket(&mut self.buckets, rng, out),
            SamplerKind::SortedPairInSitu => sorted_pairs::fill_in_situ(rng, out),
            SamplerKind::BallSortedPair => sorted_pairs::fill_ball(&mut self.pairs, rng, out),
            SamplerKind::BallViaSpherePlus2 => {
                sorted_pairs::fill_ball_via_sphere(&mut self.buckets, &mut self.aux, rng, out)
            }
        }
    }

    pub fn sample<R: UniformSource + ?Sized>(&mut self, rng: &mut R) -> Vec<T> {
        let mut out = vec![T::zero(); self.n];
        self.fill(rng, &mut out);
        out
    }
}

pub(crate) fn sphere_point<T: Real, R: UniformSource + ?Sized>(
    kind: SamplerKind,
    n: usize,
    rng: &mut R,
) -> Result<UnitVector<T>, SampleError> {
    let mut sampler = Sampler::new(kind, n)?;
    Ok(UnitVector::from_sampler(sampler.sample(rng)))
}

pub(crate) fn ball_point<T: Real, R: UniformSource + ?Sized>(
    kind: SamplerKind,
    n: usize,
    rng: &mut R,
) -> Result<BallPoint<T>, SampleError> {
    let mut sampler = Sampler::new(kind, n)?;
    Ok(BallPoint::from_sampler(sampler.sample(rng)))
}
