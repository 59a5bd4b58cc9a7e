//! Sibuya's construction for even `n`: independent directions on the unit
//! circle, scaled by the square roots of the spacings of `n/2 − 1` sorted
//! uniforms. Kept as an independent reference for the sorted-pair method,
//! which it equals in distribution.

use std::cmp::Ordering;

use super::{draw_nonzero_disk_pair, sphere_point, DiskPair, SampleError, SamplerKind, UnitVector};
use crate::rng::UniformSource;
use crate::scalar::Real;

/// Draws all `n/2` circle points first, then the `n/2 − 1` spacing uniforms.
pub(crate) fn fill_sibuya_even<T: Real, R: UniformSource + ?Sized>(
    cuts: &mut Vec<T>,
    rng: &mut R,
    out: &mut [T],
) {
    let m = out.len() / 2;
    for xy in out.chunks_exact_mut(2) {
        let pair: DiskPair<T> = draw_nonzero_disk_pair(rng);
        let (x, y) = pair.direction();
        xy[0] = x;
        xy[1] = y;
    }
    cuts.clear();
    for _ in 1..m {
        cuts.push(T::from_unit(rng.uniform()));
    }
    cuts.sort_unstable_by(|p, q| p.partial_cmp(q).unwrap_or(Ordering::Equal));
    cuts.push(T::one());
    let mut prev = T::zero();
    for (&cut, xy) in cuts.iter().zip(out.chunks_exact_mut(2)) {
        let f = (cut - prev).sqrt();
        xy[0] *= f;
        xy[1] *= f;
        prev = cut;
    }
}

pub fn sample_sibuya_even<T: Real, R: UniformSource + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<UnitVector<T>, SampleError> {
    sphere_point(SamplerKind::SibuyaEven, n, rng)
}
