//! Sphere and ball sampling from sorted disk pairs.
//!
//! For even `n`, draw `m = n/2` disk pairs, sort them so that
//! `S_1 ≤ … ≤ S_m`, put `S_0 = 0` and emit `(X_{2i−1}, X_{2i}) = r_i·(a_i, b_i)`
//! with
//!
//! ```text
//! sphere: r_i = √((1 − S_{i−1}/S_i) / S_m)      Σ X² = 1
//! ball:   r_i = √(1 − S_{i−1}/S_i)               Σ X² = S_m
//! ```
//!
//! Odd `n` runs the even method in `n + 1` dimensions and drops the `a`
//! coordinate of the smallest pair, folding the lost mass into the common
//! scale: `s = (1/S_m) / (1 − a_1²/S_m)`, so no separate normalisation pass
//! is needed.
//!
//! Three sorting strategies are provided. They consume the generator
//! identically, so the basic and bucket variants agree bit for bit and the
//! in-situ variant agrees up to the rounding of its extra square root.

use std::cmp::Ordering;

use super::{
    ball_point, draw_nonzero_disk_pair, sphere_point, BallPoint, DiskPair, SampleError,
    SamplerKind, UnitVector,
};
use crate::rng::UniformSource;
use crate::scalar::Real;

/// Target number of pairs per bucket.
pub const BUCKET_SIZE: usize = 16;

/// Number of buckets used for dimension `n` (odd `n` sorts `n + 1` coordinates).
pub fn bucket_count(n: usize) -> usize {
    1 + (n + n % 2) / BUCKET_SIZE
}

#[inline]
fn by_radius<T: Real>(p: &DiskPair<T>, q: &DiskPair<T>) -> Ordering {
    p.s.partial_cmp(&q.s).unwrap_or(Ordering::Equal)
}

fn draw_pairs<T: Real, R: UniformSource + ?Sized>(
    pairs: &mut Vec<DiskPair<T>>,
    count: usize,
    rng: &mut R,
) {
    pairs.clear();
    for _ in 0..count {
        pairs.push(draw_nonzero_disk_pair(rng));
    }
}

fn assign_sphere_even<'a, T, I>(pairs: I, s_max: T, out: &mut [T])
where
    T: Real,
    I: IntoIterator<Item = &'a DiskPair<T>>,
{
    let inv_max = s_max.recip();
    let mut prev = T::zero();
    for (pair, xy) in pairs.into_iter().zip(out.chunks_exact_mut(2)) {
        let t = ((T::one() - prev / pair.s) * inv_max).sqrt();
        xy[0] = pair.a * t;
        xy[1] = pair.b * t;
        prev = pair.s;
    }
}

/// Returns `false` when the retained coordinates carry no mass, which needs
/// tied radii and therefore essentially never happens.
fn assign_sphere_odd<'a, T, I>(pairs: I, s_max: T, out: &mut [T]) -> bool
where
    T: Real,
    I: IntoIterator<Item = &'a DiskPair<T>>,
{
    let mut pairs = pairs.into_iter();
    let first = pairs.next().expect("at least two pairs for odd n");
    let inv_max = s_max.recip();
    let kept = T::one() - inv_max * first.a * first.a;
    if kept <= T::zero() {
        return false;
    }
    let scale = inv_max / kept;
    out[0] = first.b * scale.sqrt();
    let mut prev = first.s;
    for (pair, xy) in pairs.zip(out[1..].chunks_exact_mut(2)) {
        let t = ((T::one() - prev / pair.s) * scale).sqrt();
        xy[0] = pair.a * t;
        xy[1] = pair.b * t;
        prev = pair.s;
    }
    true
}

pub(crate) fn fill_basic<T: Real, R: UniformSource + ?Sized>(
    pairs: &mut Vec<DiskPair<T>>,
    rng: &mut R,
    out: &mut [T],
) {
    let n = out.len();
    let m = (n + 1) / 2;
    loop {
        draw_pairs(pairs, m, rng);
        pairs.sort_by(by_radius);
        debug_assert!(pairs.windows(2).all(|w| w[0].s <= w[1].s));
        let s_max = pairs[m - 1].s;
        if n % 2 == 0 {
            assign_sphere_even(pairs.iter(), s_max, out);
            return;
        }
        if assign_sphere_odd(pairs.iter(), s_max, out) {
            return;
        }
    }
}

pub(crate) fn fill_bucket<T: Real, R: UniformSource + ?Sized>(
    buckets: &mut Vec<Vec<DiskPair<T>>>,
    rng: &mut R,
    out: &mut [T],
) {
    let n = out.len();
    let m = (n + 1) / 2;
    let nb = bucket_count(n);
    if buckets.len() < nb {
        buckets.resize_with(nb, Vec::new);
    }
    let buckets = &mut buckets[..nb];
    let scale = T::from_usize(nb).expect("bucket count fits the scalar");
    loop {
        for _ in 0..m {
            let pair: DiskPair<T> = draw_nonzero_disk_pair(rng);
            // monotone in s, so concatenated buckets stay ordered
            let index = (pair.s * scale).to_usize().unwrap_or(0).min(nb - 1);
            buckets[index].push(pair);
        }
        for bucket in buckets.iter_mut() {
            bucket.sort_by(by_radius);
        }
        let s_max = buckets
            .iter()
            .rev()
            .find_map(|b| b.last())
            .expect("m >= 1 pairs were drawn")
            .s;
        let done = if n % 2 == 0 {
            assign_sphere_even(buckets.iter().flatten(), s_max, out);
            true
        } else {
            assign_sphere_odd(buckets.iter().flatten(), s_max, out)
        };
        for bucket in buckets.iter_mut() {
            bucket.clear();
        }
        if done {
            return;
        }
    }
}

/// Packs a pair as `(±S, b)` with the sign of `a` (non-positive `a` → negative).
#[inline]
pub(crate) fn pack_signed<T: Real>(a: T, b: T) -> [T; 2] {
    let s = a * a + b * b;
    [if a > T::zero() { s } else { -s }, b]
}

/// Recovers `a = ±√(|S| − b²)`, clamping a rounding-negative radicand to zero.
#[inline]
pub(crate) fn unpack_signed<T: Real>(signed_s: T, b: T) -> T {
    let radicand = (signed_s.abs() - b * b).max(T::zero());
    if signed_s > T::zero() {
        radicand.sqrt()
    } else {
        -radicand.sqrt()
    }
}

/// Even `n` only. Uses `out` as the pair storage; performs no allocation.
pub(crate) fn fill_in_situ<T: Real, R: UniformSource + ?Sized>(rng: &mut R, out: &mut [T]) {
    let (pairs, rest) = out.as_chunks_mut::<2>();
    debug_assert!(rest.is_empty());
    for slot in pairs.iter_mut() {
        let pair: DiskPair<T> = draw_nonzero_disk_pair(rng);
        *slot = pack_signed(pair.a, pair.b);
    }
    pairs.sort_unstable_by(|p, q| p[0].abs().partial_cmp(&q[0].abs()).unwrap_or(Ordering::Equal));
    let inv_max = pairs[pairs.len() - 1][0].abs().recip();
    let mut prev = T::zero();
    for slot in pairs.iter_mut() {
        let s = slot[0].abs();
        let t = ((T::one() - prev / s) * inv_max).sqrt();
        prev = s;
        let a = unpack_signed(slot[0], slot[1]);
        slot[0] = a * t;
        slot[1] *= t;
    }
}

/// Even `n` only; the squared norm of the result is the largest drawn `S`.
pub(crate) fn fill_ball<T: Real, R: UniformSource + ?Sized>(
    pairs: &mut Vec<DiskPair<T>>,
    rng: &mut R,
    out: &mut [T],
) {
    let m = out.len() / 2;
    draw_pairs(pairs, m, rng);
    pairs.sort_by(by_radius);
    let mut prev = T::zero();
    for (pair, xy) in pairs.iter().zip(out.chunks_exact_mut(2)) {
        let t = (T::one() - prev / pair.s).sqrt();
        xy[0] = pair.a * t;
        xy[1] = pair.b * t;
        prev = pair.s;
    }
}

/// First `n` coordinates of a point on the `(n + 2)`-sphere.
pub(crate) fn fill_ball_via_sphere<T: Real, R: UniformSource + ?Sized>(
    buckets: &mut Vec<Vec<DiskPair<T>>>,
    sphere: &mut [T],
    rng: &mut R,
    out: &mut [T],
) {
    fill_bucket(buckets, rng, sphere);
    out.copy_from_slice(&sphere[..out.len()]);
}

fn require_even(method: SamplerKind, n: usize) -> Result<(), SampleError> {
    if n % 2 == 0 && n >= 2 {
        Ok(())
    } else {
        Err(SampleError::UnsupportedDimension { method, n })
    }
}

/// Even `n ≥ 2`, comparison sort.
pub fn sample_sphere_sorted_pairs<T: Real, R: UniformSource + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<UnitVector<T>, SampleError> {
    require_even(SamplerKind::SortedPairBasic, n)?;
    sphere_point(SamplerKind::SortedPairBasic, n, rng)
}

/// Odd `n ≥ 3`, via the `(n + 1)`-dimensional construction.
pub fn sample_sphere_sorted_pairs_odd<T: Real, R: UniformSource + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<UnitVector<T>, SampleError> {
    if n % 2 == 0 || n < 3 {
        return Err(SampleError::UnsupportedDimension {
            method: SamplerKind::SortedPairBasic,
            n,
        });
    }
    sphere_point(SamplerKind::SortedPairBasic, n, rng)
}

/// Any `n ≥ 2`; pairs are distributed into [`bucket_count`] buckets by `⌊S·nb⌋`.
pub fn sample_sphere_sorted_pairs_bucket<T: Real, R: UniformSource + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<UnitVector<T>, SampleError> {
    sphere_point(SamplerKind::SortedPairBucket, n, rng)
}

pub fn sample_sphere_sorted_pairs_in_situ<T: Real, R: UniformSource + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<UnitVector<T>, SampleError> {
    sphere_point(SamplerKind::SortedPairInSitu, n, rng)
}

pub fn sample_ball_sorted_pairs<T: Real, R: UniformSource + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<BallPoint<T>, SampleError> {
    ball_point(SamplerKind::BallSortedPair, n, rng)
}

pub fn sample_ball_via_sphere<T: Real, R: UniformSource + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<BallPoint<T>, SampleError> {
    ball_point(SamplerKind::BallViaSpherePlus2, n, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{RngKind, RngStream, ScriptedUniforms};
    use crate::samplers::Sampler;
    use proptest::prelude::*;

    fn uniforms_for(pairs: &[(f64, f64)]) -> ScriptedUniforms {
        ScriptedUniforms::new(
            pairs
                .iter()
                .flat_map(|&(a, b)| [(a + 1.0) / 2.0, (b + 1.0) / 2.0])
                .collect::<Vec<_>>(),
        )
    }

    fn close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < tol, "{got:?} vs {want:?}");
        }
    }

    // Direct evaluation: r1 = √(1/0.64) = 1.25, r2 = √((1 − 0.36/0.64)/0.64).
    const X4: f64 = 0.661_437_827_766_147_8;

    #[test]
    fn two_dimensions_normalise_the_pair() {
        let v: UnitVector<f64> =
            sample_sphere_sorted_pairs(2, &mut uniforms_for(&[(0.6, 0.0)])).unwrap();
        close(v.coords(), &[1.0, 0.0], 1e-15);
    }

    #[test]
    fn four_dimensional_worked_example() {
        let r2 = ((1.0f64 - 0.36 / 0.64) / 0.64).sqrt();
        assert!((0.8 * r2 - X4).abs() < 1e-15);
        // drawn out of order; sorting puts S = 0.36 first
        for order in [[(0.6, 0.0), (0.0, 0.8)], [(0.0, 0.8), (0.6, 0.0)]] {
            let v: UnitVector<f64> =
                sample_sphere_sorted_pairs(4, &mut uniforms_for(&order)).unwrap();
            close(v.coords(), &[0.75, 0.0, 0.0, X4], 1e-15);
        }
    }

    #[test]
    fn odd_dimension_drops_first_a() {
        let v: UnitVector<f64> =
            sample_sphere_sorted_pairs_odd(3, &mut uniforms_for(&[(0.0, 0.6), (0.0, 0.8)]))
                .unwrap();
        close(v.coords(), &[0.75, 0.0, X4], 1e-15);

        let v: UnitVector<f64> =
            sample_sphere_sorted_pairs_odd(3, &mut uniforms_for(&[(0.6, 0.0), (0.0, 0.8)]))
                .unwrap();
        close(v.coords(), &[0.0, 0.0, 1.0], 1e-15);
    }

    #[test]
    fn odd_matches_renormalised_truncation() {
        // Generic route: run n + 1, drop the first coordinate, rescale.
        for seed in 0..200 {
            let mut a = RngStream::new(RngKind::Lcg48, seed);
            let mut b = a.clone();
            let odd: UnitVector<f64> = sample_sphere_sorted_pairs_odd(7, &mut a).unwrap();
            let even: UnitVector<f64> = sample_sphere_sorted_pairs(8, &mut b).unwrap();
            let tail = &even.coords()[1..];
            let norm = tail.iter().map(|x| x * x).sum::<f64>().sqrt();
            let want: Vec<f64> = tail.iter().map(|x| x / norm).collect();
            close(odd.coords(), &want, 1e-12);
        }
    }

    #[test]
    fn parity_guards() {
        let mut rng = RngStream::new(RngKind::Mt19937_32, 1);
        assert!(sample_sphere_sorted_pairs::<f64, _>(5, &mut rng).is_err());
        assert!(sample_sphere_sorted_pairs_odd::<f64, _>(4, &mut rng).is_err());
        assert!(sample_sphere_sorted_pairs_odd::<f64, _>(1, &mut rng).is_err());
        assert!(sample_sphere_sorted_pairs_in_situ::<f64, _>(5, &mut rng).is_err());
        assert!(sample_ball_sorted_pairs::<f64, _>(3, &mut rng).is_err());
    }

    #[test]
    fn bucket_counts() {
        assert_eq!(bucket_count(2), 1);
        assert_eq!(bucket_count(15), 2);
        assert_eq!(bucket_count(16), 2);
        assert_eq!(bucket_count(100), 7);
        assert_eq!(bucket_count(1000), 63);
    }

    #[test]
    fn sign_packing() {
        let [s, b] = pack_signed(-0.3f64, 0.4);
        assert!((s + 0.25).abs() < 1e-16);
        assert_eq!(b, 0.4);
        assert!((unpack_signed(s, b) + 0.3).abs() < 1e-15);
        let [s, b] = pack_signed(0.3f64, -0.4);
        assert!((unpack_signed(s, b) - 0.3).abs() < 1e-15);
        // radicand below zero by rounding is clamped
        assert_eq!(unpack_signed(0.16f64, 0.4 + 1e-12), 0.0);
    }

    #[test]
    fn ball_examples() {
        let p: BallPoint<f64> = sample_ball_sorted_pairs(2, &mut uniforms_for(&[(0.6, 0.0)])).unwrap();
        close(p.coords(), &[0.6, 0.0], 1e-15);
        let p: BallPoint<f64> =
            sample_ball_sorted_pairs(4, &mut uniforms_for(&[(0.6, 0.0), (0.0, 0.8)])).unwrap();
        assert!((p.norm_squared() - 0.64).abs() < 1e-15);
    }

    #[test]
    fn ball_via_sphere_truncates() {
        let p: BallPoint<f64> =
            sample_ball_via_sphere(2, &mut uniforms_for(&[(0.6, 0.0), (0.0, 0.8)])).unwrap();
        close(p.coords(), &[0.75, 0.0], 1e-15);
    }

    #[test]
    fn in_situ_worked_example() {
        let v: UnitVector<f64> = sample_sphere_sorted_pairs_in_situ(
            4,
            &mut uniforms_for(&[(0.0, 0.8), (-0.6, 0.0)]),
        )
        .unwrap();
        close(v.coords(), &[-0.75, 0.0, 0.0, X4], 1e-12);
    }

    #[test]
    fn single_precision_norm() {
        let mut rng = RngStream::new(RngKind::Mt19937_32, 99);
        for kind in [
            SamplerKind::SortedPairBasic,
            SamplerKind::SortedPairBucket,
            SamplerKind::SortedPairInSitu,
        ] {
            for n in [2usize, 6, 10, 64] {
                let mut s = Sampler::<f32>::new(kind, n).unwrap();
                for _ in 0..200 {
                    let v = s.sample(&mut rng);
                    let nrm: f32 = v.iter().map(|x| x * x).sum();
                    assert!((nrm - 1.0).abs() < 1e-5, "{kind} n={n}: {nrm}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn unit_norm_for_all_variants(seed in any::<u64>(), n in 2usize..65) {
            let mut rng = RngStream::new(RngKind::Mt19937_64, seed);
            for kind in [SamplerKind::SortedPairBasic, SamplerKind::SortedPairBucket] {
                let v = Sampler::<f64>::new(kind, n).unwrap().sample(&mut rng);
                let nrm: f64 = v.iter().map(|x| x * x).sum();
                prop_assert!((nrm - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn bucket_equals_basic(seed in any::<u64>(), n in 2usize..200) {
            let mut a = RngStream::new(RngKind::Lcg48, seed);
            let mut b = a.clone();
            let basic = Sampler::<f64>::new(SamplerKind::SortedPairBasic, n).unwrap().sample(&mut a);
            let bucket = Sampler::<f64>::new(SamplerKind::SortedPairBucket, n).unwrap().sample(&mut b);
            prop_assert_eq!(basic, bucket);
            prop_assert_eq!(a.draw_count(), b.draw_count());
        }

        #[test]
        fn in_situ_tracks_basic(seed in any::<u64>(), half in 1usize..40) {
            let n = 2 * half;
            let mut a = RngStream::new(RngKind::MarsagliaTsang64, seed);
            let mut b = a.clone();
            let basic = Sampler::<f64>::new(SamplerKind::SortedPairBasic, n).unwrap().sample(&mut a);
            let situ = Sampler::<f64>::new(SamplerKind::SortedPairInSitu, n).unwrap().sample(&mut b);
            for (x, y) in basic.iter().zip(&situ) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }

        #[test]
        fn ball_norm_is_largest_radius(seed in any::<u64>(), half in 1usize..40) {
            let n = 2 * half;
            let mut rng = RngStream::new(RngKind::Mt19937_32, seed);
            let mut probe = rng.clone();
            let p = Sampler::<f64>::new(SamplerKind::BallSortedPair, n).unwrap().sample(&mut rng);
            let s_max = (0..half)
                .map(|_| draw_nonzero_disk_pair::<f64, _>(&mut probe).s)
                .fold(0.0, f64::max);
            let nrm: f64 = p.iter().map(|x| x * x).sum();
            prop_assert!((nrm - s_max).abs() <= 1e-14);
            prop_assert!(nrm < 1.0);
        }
    }
}
