//! Seedable, bit-reproducible generators with a uniform-draw counter.
//!
//! Four engines are available, selected by [`RngKind`]:
//!
//! * `mt32`: MT19937, 32-bit words, `init_genrand` seeding (seed truncated to 32 bits).
//! * `mt64`: MT19937-64, 64-bit words, `init_genrand64` seeding.
//! * `lcg48`: the `drand48` recurrence `x' = (0x5DEECE66D·x + 0xB) mod 2⁴⁸`.
//! * `mt64x`: Marsaglia's 64-bit KISS (see [`kiss64`]), standing in for the
//!   Marsaglia–Tsang 64-bit generator; the exact algorithm behind that name
//!   was never pinned down, so treat this slot as "a fast 64-bit Marsaglia
//!   generator", not as a reproduction of a specific reference stream.
//!
//! Words are mapped to `[0, 1)` by division by `max_word + 1`. For 64-bit
//! words the top 53 bits are used, which is the same division truncated to
//! what an `f64` can hold; a round-to-nearest conversion of `u64::MAX` would
//! otherwise produce exactly `1.0`.

use std::fmt;
use std::str::FromStr;

pub mod kiss64;
pub mod lcg48;
pub mod mt;

use kiss64::Kiss64;
use lcg48::Lcg48;
use mt::{Mt19937, Mt19937_64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RngKind {
    Mt19937_32,
    Mt19937_64,
    Lcg48,
    MarsagliaTsang64,
}

impl RngKind {
    pub const ALL: [RngKind; 4] = [
        RngKind::Mt19937_32,
        RngKind::Mt19937_64,
        RngKind::Lcg48,
        RngKind::MarsagliaTsang64,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RngKind::Mt19937_32 => "mt32",
            RngKind::Mt19937_64 => "mt64",
            RngKind::Lcg48 => "lcg48",
            RngKind::MarsagliaTsang64 => "mt64x",
        }
    }

    /// Number of significant bits in a raw word.
    pub fn word_bits(self) -> u32 {
        match self {
            RngKind::Mt19937_32 => 32,
            RngKind::Lcg48 => 48,
            RngKind::Mt19937_64 | RngKind::MarsagliaTsang64 => 64,
        }
    }

    pub fn max_word(self) -> u64 {
        match self.word_bits() {
            64 => u64::MAX,
            bits => (1u64 << bits) - 1,
        }
    }

    /// Maps a raw word of this generator to `[0, 1)`.
    #[inline]
    pub fn word_to_unit(self, word: u64) -> f64 {
        match self {
            RngKind::Mt19937_32 => word as f64 * (1.0 / 4_294_967_296.0),
            RngKind::Lcg48 => word as f64 * (1.0 / 281_474_976_710_656.0),
            RngKind::Mt19937_64 | RngKind::MarsagliaTsang64 => {
                (word >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
            }
        }
    }
}

impl fmt::Display for RngKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rng `{0}` (expected one of mt32, mt64, lcg48, mt64x)")]
pub struct UnknownRng(pub String);

impl FromStr for RngKind {
    type Err = UnknownRng;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RngKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| UnknownRng(s.to_owned()))
    }
}

/// Anything that hands out uniform variates in `[0, 1)`.
///
/// Samplers are generic over this so that hand-picked sequences can drive them.
pub trait UniformSource {
    fn uniform(&mut self) -> f64;
}

impl<U: UniformSource + ?Sized> UniformSource for &mut U {
    #[inline]
    fn uniform(&mut self) -> f64 {
        (**self).uniform()
    }
}

#[derive(Clone)]
enum Engine {
    Mt32(Box<Mt19937>),
    Mt64(Box<Mt19937_64>),
    Lcg48(Lcg48),
    Kiss64(Kiss64),
}

/// A deterministic generator plus a counter of `uniform()` calls.
///
/// Not shareable between threads while in use; move it instead.
#[derive(Clone)]
pub struct RngStream {
    kind: RngKind,
    seed: u64,
    engine: Engine,
    draws: u64,
}

impl RngStream {
    pub fn new(kind: RngKind, seed: u64) -> Self {
        let engine = match kind {
            RngKind::Mt19937_32 => Engine::Mt32(Box::new(Mt19937::new(seed as u32))),
            RngKind::Mt19937_64 => Engine::Mt64(Box::new(Mt19937_64::new(seed))),
            RngKind::Lcg48 => Engine::Lcg48(Lcg48::new(seed)),
            RngKind::MarsagliaTsang64 => Engine::Kiss64(Kiss64::new(seed)),
        };
        RngStream {
            kind,
            seed,
            engine,
            draws: 0,
        }
    }

    pub fn kind(&self) -> RngKind {
        self.kind
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Next raw generator word, zero-extended to 64 bits. Does not count as a draw.
    #[inline]
    pub fn raw(&mut self) -> u64 {
        match &mut self.engine {
            Engine::Mt32(g) => g.next_u32() as u64,
            Engine::Mt64(g) => g.next_u64(),
            Engine::Lcg48(g) => g.next_u48(),
            Engine::Kiss64(g) => g.next_u64(),
        }
    }

    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.draws += 1;
        let word = self.raw();
        self.kind.word_to_unit(word)
    }

    /// Cumulative number of `uniform()` calls.
    pub fn draw_count(&self) -> u64 {
        self.draws
    }

    /// Current 48-bit state for the `lcg48` kind.
    pub fn lcg48_state(&self) -> Option<u64> {
        match &self.engine {
            Engine::Lcg48(g) => Some(g.state()),
            _ => None,
        }
    }
}

impl fmt::Debug for RngStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RngStream")
            .field("kind", &self.kind)
            .field("seed", &self.seed)
            .field("draws", &self.draws)
            .finish_non_exhaustive()
    }
}

impl UniformSource for RngStream {
    #[inline]
    fn uniform(&mut self) -> f64 {
        RngStream::uniform(self)
    }
}

/// Replays a fixed list of uniforms; panics once exhausted.
#[derive(Clone, Debug, Default)]
pub struct ScriptedUniforms {
    values: Vec<f64>,
    next: usize,
}

impl ScriptedUniforms {
    pub fn new(values: impl Into<Vec<f64>>) -> Self {
        ScriptedUniforms {
            values: values.into(),
            next: 0,
        }
    }

    pub fn consumed(&self) -> usize {
        self.next
    }

    pub fn remaining(&self) -> usize {
        self.values.len() - self.next
    }
}

impl UniformSource for ScriptedUniforms {
    fn uniform(&mut self) -> f64 {
        let u = *self
            .values
            .get(self.next)
            .unwrap_or_else(|| panic!("scripted uniforms exhausted after {} draws", self.next));
        self.next += 1;
        u
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for kind in RngKind::ALL {
            assert_eq!(kind.tag().parse::<RngKind>().unwrap(), kind);
        }
        assert!("mt19937".parse::<RngKind>().is_err());
    }

    #[test]
    fn default_seed_mt32_prefix() {
        let mut s = RngStream::new(RngKind::Mt19937_32, 5489);
        assert_eq!(s.raw(), 3_499_211_612);
        assert_eq!(s.raw(), 581_869_302);
        assert_eq!(s.raw(), 3_890_346_734);
    }

    #[test]
    fn lcg48_seed_zero_state() {
        let s = RngStream::new(RngKind::Lcg48, 0);
        assert_eq!(s.lcg48_state(), Some(0x330E));
        assert_eq!(RngStream::new(RngKind::Mt19937_32, 0).lcg48_state(), None);
    }

    #[test]
    fn extreme_words_map_into_half_open_interval() {
        for kind in RngKind::ALL {
            assert_eq!(kind.word_to_unit(0), 0.0);
            let top = kind.word_to_unit(kind.max_word());
            assert!(top < 1.0, "{kind}: {top}");
            assert!(top > 0.999_999, "{kind}: {top}");
        }
    }

    #[test]
    fn draw_counter() {
        let mut s = RngStream::new(RngKind::Mt19937_64, 3);
        assert_eq!(s.draw_count(), 0);
        s.raw();
        assert_eq!(s.draw_count(), 0);
        for _ in 0..3 {
            s.uniform();
        }
        assert_eq!(s.draw_count(), 3);
    }

    #[test]
    fn scripted_replays_in_order() {
        let mut s = ScriptedUniforms::new(vec![0.25, 0.5]);
        assert_eq!(s.uniform(), 0.25);
        assert_eq!(s.uniform(), 0.5);
        assert_eq!(s.consumed(), 2);
        assert_eq!(s.remaining(), 0);
    }

    #[test]
    #[should_panic(expected = "exhausted")]
    fn scripted_panics_when_empty() {
        ScriptedUniforms::new(vec![]).uniform();
    }
}
