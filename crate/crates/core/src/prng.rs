//! Deterministic splitmix64 generator used by every playout and walk.

/// splitmix64 state. The whole output sequence is a function of the seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrngState {
    pub s: u64,
}

impl PrngState {
    pub fn new(seed: u64) -> Self {
        Self { s: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.s = self.s.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.s;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform index in `[0, n)`: high word of the 128-bit product `draw * n`.
    #[inline]
    pub fn uniform_index(&mut self, n: usize) -> usize {
        debug_assert!(n >= 1);
        scale_draw(self.next_u64(), n)
    }
}

/// Maps a raw 64-bit draw into `[0, n)`.
#[inline]
pub fn scale_draw(draw: u64, n: usize) -> usize {
    ((draw as u128 * n as u128) >> 64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_zero_vectors() {
        let mut p = PrngState::new(0);
        assert_eq!(p.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(p.next_u64(), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn state_add_wraps() {
        let mut p = PrngState::new(u64::MAX);
        p.next_u64();
        assert_eq!(p.s, 0x9E37_79B9_7F4A_7C14);
    }

    #[test]
    fn index_edges() {
        assert_eq!(scale_draw(u64::MAX, 1), 0);
        assert_eq!(scale_draw(0, 17), 0);
        assert_eq!(scale_draw(1 << 63, 2), 1);
        let mut p = PrngState::new(99);
        for n in 1..50 {
            assert!(p.uniform_index(n) < n);
        }
    }
}
