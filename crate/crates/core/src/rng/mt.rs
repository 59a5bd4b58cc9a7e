//! 32- and 64-bit Mersenne Twister (MT19937, MT19937-64) with the reference
//! `init_genrand` seeding.

const N32: usize = 624;
const M32: usize = 397;
const MATRIX_A32: u32 = 0x9908_b0df;
const UPPER32: u32 = 0x8000_0000;
const LOWER32: u32 = 0x7fff_ffff;

#[derive(Clone)]
pub struct Mt19937 {
    state: [u32; N32],
    index: usize,
}

impl Mt19937 {
    pub fn new(seed: u32) -> Self {
        let mut state = [0u32; N32];
        state[0] = seed;
        for i in 1..N32 {
            let prev = state[i - 1];
            state[i] = 1_812_433_253u32
                .wrapping_mul(prev ^ (prev >> 30))
                .wrapping_add(i as u32);
        }
        Mt19937 { state, index: N32 }
    }

    fn twist(&mut self) {
        for i in 0..N32 {
            let y = (self.state[i] & UPPER32) | (self.state[(i + 1) % N32] & LOWER32);
            let mut next = self.state[(i + M32) % N32] ^ (y >> 1);
            if y & 1 != 0 {
                next ^= MATRIX_A32;
            }
            self.state[i] = next;
        }
        self.index = 0;
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        if self.index >= N32 {
            self.twist();
        }
        let mut y = self.state[self.index];
        self.index += 1;
        y ^= y >> 11;
        y ^= (y << 7) & 0x9d2c_5680;
        y ^= (y << 15) & 0xefc6_0000;
        y ^ (y >> 18)
    }
}

const N64: usize = 312;
const M64: usize = 156;
const MATRIX_A64: u64 = 0xB502_6F5A_A966_19E9;
const UPPER64: u64 = 0xFFFF_FFFF_8000_0000;
const LOWER64: u64 = 0x7FFF_FFFF;

#[derive(Clone)]
pub struct Mt19937_64 {
    state: [u64; N64],
    index: usize,
}

impl Mt19937_64 {
    pub fn new(seed: u64) -> Self {
        let mut state = [0u64; N64];
        state[0] = seed;
        for i in 1..N64 {
            let prev = state[i - 1];
            state[i] = 6_364_136_223_846_793_005u64
                .wrapping_mul(prev ^ (prev >> 62))
                .wrapping_add(i as u64);
        }
        Mt19937_64 { state, index: N64 }
    }

    fn twist(&mut self) {
        for i in 0..N64 {
            let x = (self.state[i] & UPPER64) | (self.state[(i + 1) % N64] & LOWER64);
            let mut next = self.state[(i + M64) % N64] ^ (x >> 1);
            if x & 1 != 0 {
                next ^= MATRIX_A64;
            }
            self.state[i] = next;
        }
        self.index = 0;
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        if self.index >= N64 {
            self.twist();
        }
        let mut x = self.state[self.index];
        self.index += 1;
        x ^= (x >> 29) & 0x5555_5555_5555_5555;
        x ^= (x << 17) & 0x71D6_7FFF_EDA6_0000;
        x ^= (x << 37) & 0xFFF7_EEE0_0000_0000;
        x ^ (x >> 43)
    }
}
