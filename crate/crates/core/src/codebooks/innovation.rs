use super::mode::ModeTable;
use super::rng::XorShift64Star;

/// Seed of the generator every innovation codebook is drawn from.
pub const INNOVATION_SEED: u64 = 0x5EED_5EED;

/// Ternary sub-vector codebook. Entry 0 is the all-zero vector; every other
/// entry has at least one non-zero value.
#[derive(Debug, Clone, PartialEq)]
pub struct InnovationCodebook {
    subvector_len: usize,
    values: Vec<i8>,
    energies: Vec<f64>,
}

// 6 u < 1 and 6 u > 5 with u = v / 2^32, evaluated in integers.
fn ternary(v: u32) -> i8 {
    let six_v = 6 * u64::from(v);
    if six_v < 1 << 32 {
        -1
    } else if six_v > 5 << 32 {
        1
    } else {
        0
    }
}

impl InnovationCodebook {
    /// Draws `2^bits` entries of `subvector_len` ternary values from a fresh
    /// generator seeded with [`INNOVATION_SEED`]. An all-zero draw for a
    /// non-zero entry is discarded and redrawn.
    pub fn generate(subvector_len: usize, bits: usize) -> Self {
        let size = 1usize << bits;
        let mut rng = XorShift64Star::new(INNOVATION_SEED);
        let mut values = vec![0i8; subvector_len];
        for _ in 1..size {
            loop {
                let entry: Vec<i8> = (0..subvector_len).map(|_| ternary(rng.next_u32())).collect();
                if entry.iter().any(|&v| v != 0) {
                    values.extend(entry);
                    break;
                }
            }
        }
        let energies = values
            .chunks(subvector_len)
            .map(|c| c.iter().map(|&v| f64::from(v * v)).sum())
            .collect();
        Self {
            subvector_len,
            values,
            energies,
        }
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn subvector_len(&self) -> usize {
        self.subvector_len
    }

    pub fn entry(&self, index: usize) -> &[i8] {
        &self.values[index * self.subvector_len..(index + 1) * self.subvector_len]
    }

    pub fn energy(&self, index: usize) -> f64 {
        self.energies[index]
    }

    /// All entries back to back.
    pub fn as_flat(&self) -> &[i8] {
        &self.values
    }
}

/// Narrowband-layer innovation codebook of a mode.
pub fn build_innovation_codebook(mode: &ModeTable) -> InnovationCodebook {
    InnovationCodebook::generate(mode.subvector_len, mode.codebook_bits)
}
