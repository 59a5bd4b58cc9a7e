//! Marsaglia's 64-bit KISS: a multiply-with-carry, a 64-bit xorshift and a
//! congruential sequence, summed modulo 2⁶⁴.
//!
//! Published state constants:
//!
//! | word | initial value            |
//! |------|--------------------------|
//! | x    | 1234567890987654321      |
//! | c    | 123456123456123456       |
//! | y    | 362436362436362436       |
//! | z    | 1066149217761810         |
//!
//! Steps: `MWC: t = (x << 58) + c; c = x >> 6; x += t; c += (x < t)`,
//! `XSH: y ^= y << 13; y ^= y >> 17; y ^= y << 43`,
//! `CNG: z = 6906969069·z + 1234567`, output `MWC + XSH + CNG`.
//!
//! A seed `s` is folded in as `x ^= s`, `y ^= rotl(s, 21)`, `z ^= rotl(s, 42)`;
//! seed 0 reproduces the published stream. `y` is never left at zero.

const X0: u64 = 1_234_567_890_987_654_321;
const C0: u64 = 123_456_123_456_123_456;
const Y0: u64 = 362_436_362_436_362_436;
const Z0: u64 = 1_066_149_217_761_810;

#[derive(Clone, Debug)]
pub struct Kiss64 {
    x: u64,
    c: u64,
    y: u64,
    z: u64,
}

impl Kiss64 {
    pub fn new(seed: u64) -> Self {
        let mut y = Y0 ^ seed.rotate_left(21);
        if y == 0 {
            y = Y0;
        }
        Kiss64 {
            x: X0 ^ seed,
            c: C0,
            y,
            z: Z0 ^ seed.rotate_left(42),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let t = (self.x << 58).wrapping_add(self.c);
        self.c = self.x >> 6;
        self.x = self.x.wrapping_add(t);
        self.c = self.c.wrapping_add((self.x < t) as u64);

        self.y ^= self.y << 13;
        self.y ^= self.y >> 17;
        self.y ^= self.y << 43;

        self.z = 6_906_969_069u64.wrapping_mul(self.z).wrapping_add(1_234_567);

        self.x.wrapping_add(self.y).wrapping_add(self.z)
    }
}
