//! The `drand48` family linear congruential generator.

pub const MULTIPLIER: u64 = 0x5_DEEC_E66D;
pub const INCREMENT: u64 = 0xB;
pub const MASK: u64 = (1 << 48) - 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lcg48 {
    state: u64,
}

impl Lcg48 {
    /// `srand48` convention: the low 32 bits of the seed become the high
    /// 32 bits of the state, the low 16 bits are `0x330E`.
    pub fn new(seed: u64) -> Self {
        Lcg48 {
            state: ((seed << 16) ^ 0x330E) & MASK,
        }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    /// Advances one step and returns the full 48-bit state.
    #[inline]
    pub fn next_u48(&mut self) -> u64 {
        self.state = MULTIPLIER.wrapping_mul(self.state).wrapping_add(INCREMENT) & MASK;
        self.state
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeding_convention() {
        assert_eq!(Lcg48::new(0).state(), 0x330E);
        assert_eq!(Lcg48::new(1).state(), 0x1_330E);
        // only the low 32 bits of the seed survive
        assert_eq!(Lcg48::new(1 << 32).state(), 0x330E);
    }

    #[test]
    fn recurrence_against_wide_arithmetic() {
        let mut lcg = Lcg48::new(12345);
        let mut x = lcg.state() as u128;
        for _ in 0..5 {
            x = (0x5DEECE66Du128 * x + 0xB) % (1u128 << 48);
            assert_eq!(lcg.next_u48() as u128, x);
        }
    }
}
