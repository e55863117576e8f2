/// 64-bit xorshift* generator (shift triple 12/25/27).
#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

const MULTIPLIER: u64 = 2_685_821_657_736_338_717;

impl XorShift64Star {
    /// A zero seed would lock the generator at zero, so it is replaced by a
    /// fixed non-zero constant.
    pub fn new(seed: u64) -> Self {
        Self {
            state: if seed == 0 { 0x9E37_79B9_7F4A_7C15 } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(MULTIPLIER)
    }

    /// Top 32 bits of the next output.
    pub fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    /// `next_u32() / 2^32`, in `[0, 1)`.
    pub fn next_unit(&mut self) -> f64 {
        f64::from(self.next_u32()) / 4_294_967_296.0
    }
}
