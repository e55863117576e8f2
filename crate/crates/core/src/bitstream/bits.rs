use crate::{Error, Result};

/// MSB-first bit packer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitWriter {
    bytes: Vec<u8>,
    bits: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn write(&mut self, value: u32, width: usize) {
        debug_assert!(width <= 32);
        debug_assert!(width == 32 || value >> width == 0, "{value} does not fit {width} bits");
        for i in (0..width).rev() {
            if self.bits % 8 == 0 {
                self.bytes.push(0);
            }
            if (value >> i) & 1 == 1 {
                let last = self.bytes.len() - 1;
                self.bytes[last] |= 0x80 >> (self.bits % 8);
            }
            self.bits += 1;
        }
    }

    /// Zero-fills up to the next byte boundary.
    pub fn align(&mut self) {
        self.bits = self.bytes.len() * 8;
    }

    pub fn bit_len(&self) -> usize {
        self.bits
    }

    /// Finished bytes; a trailing partial byte is zero padded.
    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

/// MSB-first bit reader over a byte slice.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    /// Reads `width` bits; reading past the end is [`Error::TruncatedFrame`].
    pub fn read(&mut self, width: usize) -> Result<u32> {
        debug_assert!(width <= 32);
        let end = self.pos + width;
        if end > self.bytes.len() * 8 {
            return Err(Error::TruncatedFrame {
                needed: end.div_ceil(8),
                available: self.bytes.len(),
            });
        }
        let mut v = 0u32;
        for p in self.pos..end {
            let bit = (self.bytes[p / 8] >> (7 - p % 8)) & 1;
            v = (v << 1) | u32::from(bit);
        }
        self.pos = end;
        Ok(v)
    }

    pub fn position(&self) -> usize {
        self.pos
    }
}
