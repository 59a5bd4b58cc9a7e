//! Baselines: Gaussian rescaling, the polar method, Marsaglia's n = 3 and
//! n = 4 constructions, and rejection from the enclosing cube.

use super::{
    draw_disk_pair, draw_nonzero_disk_pair, sphere_point, symmetric, DiskPair, SampleError,
    SamplerKind, UnitVector,
};
use crate::rng::UniformSource;
use crate::scalar::{norm_squared, Real};

/// Two Gaussian-distributed coordinates per pair of uniforms.
///
/// `r = √(−2 ln(1 − u₁))`, `c = cos 2πu₂`, and the partner coordinate is
/// `±r√(1 − c²)` with the sign taken from `u₂ < ½`, which saves the sine call.
#[inline]
fn gaussian_pair<T: Real, R: UniformSource + ?Sized>(rng: &mut R) -> (T, T) {
    let r = (T::lit(-2.0) * (T::one() - T::from_unit(rng.uniform())).ln()).sqrt();
    let p = T::from_unit(rng.uniform());
    let c = (T::TAU() * p).cos();
    let s = r * (T::one() - c * c).sqrt();
    (r * c, if p < T::lit(0.5) { s } else { -s })
}

pub(crate) fn fill_muller<T: Real, R: UniformSource + ?Sized>(rng: &mut R, out: &mut [T]) {
    let n = out.len();
    loop {
        let mut sum = T::zero();
        for xy in out.chunks_exact_mut(2) {
            let (x, y) = gaussian_pair(rng);
            xy[0] = x;
            xy[1] = y;
            sum += x * x + y * y;
        }
        if n % 2 == 1 {
            // odd tail: one more radius, cosine only
            let r = (T::lit(-2.0) * (T::one() - T::from_unit(rng.uniform())).ln()).sqrt();
            let x = r * (T::TAU() * T::from_unit(rng.uniform())).cos();
            out[n - 1] = x;
            sum += x * x;
        }
        if sum > T::zero() {
            let inv = sum.sqrt().recip();
            for x in out.iter_mut() {
                *x *= inv;
            }
            return;
        }
    }
}

pub(crate) fn fill_polar3<T: Real, R: UniformSource + ?Sized>(rng: &mut R, out: &mut [T]) {
    let z = symmetric::<T>(rng.uniform());
    let phi = T::TAU() * T::from_unit(rng.uniform());
    let rho = (T::one() - z * z).sqrt();
    out[0] = phi.cos() * rho;
    out[1] = phi.sin() * rho;
    out[2] = z;
}

pub(crate) fn fill_marsaglia3<T: Real, R: UniformSource + ?Sized>(rng: &mut R, out: &mut [T]) {
    let pair: DiskPair<T> = draw_disk_pair(rng);
    if pair.s == T::zero() {
        out.copy_from_slice(&[T::zero(), T::zero(), T::one()]);
        return;
    }
    let z = T::one() - T::lit(2.0) * pair.s;
    let f = ((T::one() - z * z) / pair.s).sqrt();
    out[0] = pair.a * f;
    out[1] = pair.b * f;
    out[2] = z;
}

pub(crate) fn fill_marsaglia4<T: Real, R: UniformSource + ?Sized>(rng: &mut R, out: &mut [T]) {
    let first: DiskPair<T> = draw_disk_pair(rng);
    let second: DiskPair<T> = draw_nonzero_disk_pair(rng);
    let f = ((T::one() - first.s) / second.s).sqrt();
    out[0] = first.a;
    out[1] = first.b;
    out[2] = second.a * f;
    out[3] = second.b * f;
}

/// Exactly `n` uniforms per attempt; the origin is redrawn.
pub(crate) fn fill_rejection_cube<T: Real, R: UniformSource + ?Sized>(rng: &mut R, out: &mut [T]) {
    loop {
        for x in out.iter_mut() {
            *x = symmetric(rng.uniform());
        }
        let s = norm_squared(out);
        if s < T::one() && s > T::zero() {
            let inv = s.sqrt().recip();
            for x in out.iter_mut() {
                *x *= inv;
            }
            return;
        }
    }
}

pub fn sample_muller<T: Real, R: UniformSource + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<UnitVector<T>, SampleError> {
    sphere_point(SamplerKind::Muller, n, rng)
}

pub fn sample_polar3<T: Real, R: UniformSource + ?Sized>(rng: &mut R) -> UnitVector<T> {
    let mut out = vec![T::zero(); 3];
    fill_polar3(rng, &mut out);
    UnitVector::from_sampler(out)
}

pub fn sample_marsaglia3<T: Real, R: UniformSource + ?Sized>(rng: &mut R) -> UnitVector<T> {
    let mut out = vec![T::zero(); 3];
    fill_marsaglia3(rng, &mut out);
    UnitVector::from_sampler(out)
}

pub fn sample_marsaglia4<T: Real, R: UniformSource + ?Sized>(rng: &mut R) -> UnitVector<T> {
    let mut out = vec![T::zero(); 4];
    fill_marsaglia4(rng, &mut out);
    UnitVector::from_sampler(out)
}

pub fn sample_rejection_cube<T: Real, R: UniformSource + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<UnitVector<T>, SampleError> {
    sphere_point(SamplerKind::RejectionCube, n, rng)
}
