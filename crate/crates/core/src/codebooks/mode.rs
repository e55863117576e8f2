use std::fmt;
use std::str::FromStr;

use crate::{Error, Result, NB_RATE, SUBFRAMES, SUBFRAME_SIZE, WB_RATE};

/// Smallest encodable pitch period in samples.
pub const PITCH_MIN: usize = 17;
/// Largest encodable pitch period in samples (`PITCH_MIN + 127`).
pub const PITCH_MAX: usize = 144;

/// Coding mode. The discriminant is the container `mode_id` byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    NbLow = 0,
    NbHigh = 1,
    WbLow = 2,
    WbHigh = 3,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::NbLow, Mode::NbHigh, Mode::WbLow, Mode::WbHigh];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.id() == id)
            .ok_or(Error::UnknownMode(id))
    }

    pub fn is_wideband(self) -> bool {
        matches!(self, Mode::WbLow | Mode::WbHigh)
    }

    /// Narrowband mode used for the low band (itself for narrowband modes).
    pub fn narrowband_layer(self) -> Mode {
        match self {
            Mode::NbLow | Mode::WbLow => Mode::NbLow,
            Mode::NbHigh | Mode::WbHigh => Mode::NbHigh,
        }
    }

    pub fn sample_rate(self) -> u32 {
        if self.is_wideband() {
            WB_RATE
        } else {
            NB_RATE
        }
    }

    pub fn frame_size(self) -> usize {
        self.sample_rate() as usize / 50
    }

    pub fn table(self) -> &'static ModeTable {
        &TABLES[self as usize]
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::NbLow => "nb-low",
            Mode::NbHigh => "nb-high",
            Mode::WbLow => "wb-low",
            Mode::WbHigh => "wb-high",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown mode '{s}'")))
    }
}

/// High-band bit allocation of the wideband modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HighBandLayout {
    pub lpc_order: usize,
    pub lsp_bits: usize,
    pub global_gain_bits: usize,
    pub subframe_corr_bits: usize,
    /// `(subvector_len, codebook_bits)` when the high band carries a coded
    /// innovation; `None` when its excitation is folded from the low band.
    pub innovation: Option<(usize, usize)>,
}

impl HighBandLayout {
    pub fn innovation_bits_per_subframe(&self) -> usize {
        self.innovation
            .map_or(0, |(len, bits)| SUBFRAME_SIZE / len * bits)
    }

    pub fn bits(&self) -> usize {
        self.lsp_bits
            + self.global_gain_bits
            + SUBFRAMES * (self.subframe_corr_bits + self.innovation_bits_per_subframe())
    }
}

/// Bit allocation and codebook geometry of one mode; the bitstream layout is
/// derived from this table alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeTable {
    pub mode: Mode,
    /// Innovation sub-vector length of the (low) narrowband layer.
    pub subvector_len: usize,
    pub codebook_bits: usize,
    pub lsp_bits: usize,
    pub pitch_bits: usize,
    pub pitch_gain_bits: usize,
    pub subframe_corr_bits: usize,
    pub global_gain_bits: usize,
    pub high_band: Option<HighBandLayout>,
}

const LSP_BITS: usize = 40;

const fn nb_table(mode: Mode, subvector_len: usize, codebook_bits: usize) -> ModeTable {
    ModeTable {
        mode,
        subvector_len,
        codebook_bits,
        lsp_bits: LSP_BITS,
        pitch_bits: 7,
        pitch_gain_bits: 5,
        subframe_corr_bits: 3,
        global_gain_bits: 5,
        high_band: None,
    }
}

const fn wb_table(
    mode: Mode,
    low: ModeTable,
    innovation: Option<(usize, usize)>,
) -> ModeTable {
    ModeTable {
        mode,
        high_band: Some(HighBandLayout {
            lpc_order: 8,
            lsp_bits: 32,
            global_gain_bits: 5,
            subframe_corr_bits: 3,
            innovation,
        }),
        ..low
    }
}

const NB_LOW: ModeTable = nb_table(Mode::NbLow, 20, 5);
const NB_HIGH: ModeTable = nb_table(Mode::NbHigh, 5, 8);

static TABLES: [ModeTable; 4] = [
    NB_LOW,
    NB_HIGH,
    wb_table(Mode::WbLow, NB_LOW, None),
    wb_table(Mode::WbHigh, NB_HIGH, Some((5, 8))),
];

impl ModeTable {
    pub fn subvectors_per_subframe(&self) -> usize {
        SUBFRAME_SIZE / self.subvector_len
    }

    pub fn codebook_size(&self) -> usize {
        1 << self.codebook_bits
    }

    pub fn innovation_bits_per_subframe(&self) -> usize {
        self.subvectors_per_subframe() * self.codebook_bits
    }

    /// Innovation bit rate of the narrowband layer in bits per second.
    pub fn innovation_bps(&self) -> usize {
        self.innovation_bits_per_subframe() * SUBFRAMES * 50
    }

    /// Bits of the narrowband (low-band) layer.
    pub fn nb_bits(&self) -> usize {
        self.lsp_bits
            + self.global_gain_bits
            + SUBFRAMES
                * (self.pitch_bits
                    + self.pitch_gain_bits
                    + self.subframe_corr_bits
                    + self.innovation_bits_per_subframe())
    }

    /// Bytes of the narrowband layer; for wideband modes this is the
    /// truncation point.
    pub fn nb_bytes(&self) -> usize {
        self.nb_bits().div_ceil(8)
    }

    pub fn hb_bits(&self) -> usize {
        self.high_band.map_or(0, |hb| hb.bits())
    }

    pub fn hb_bytes(&self) -> usize {
        self.hb_bits().div_ceil(8)
    }

    /// Payload bits per frame, excluding byte-alignment padding.
    pub fn total_bits(&self) -> usize {
        self.nb_bits() + self.hb_bits()
    }

    /// Serialized frame length in bytes.
    pub fn frame_bytes(&self) -> usize {
        self.nb_bytes() + self.hb_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn innovation_rates() {
        let low = Mode::NbLow.table();
        assert_eq!(low.innovation_bits_per_subframe(), 10);
        assert_eq!(low.innovation_bps(), 2000);
        let high = Mode::NbHigh.table();
        assert_eq!(high.innovation_bits_per_subframe(), 64);
        assert_eq!(high.innovation_bps(), 12800);
    }

    #[test]
    fn frame_totals() {
        for m in Mode::ALL {
            let t = m.table();
            assert_eq!(
                t.nb_bits(),
                40 + 5 + 4 * (7 + 5 + 3 + t.innovation_bits_per_subframe())
            );
        }
        assert_eq!(Mode::NbLow.table().total_bits(), 145);
        assert_eq!(Mode::NbLow.table().frame_bytes(), 19);
        assert_eq!(Mode::NbHigh.table().total_bits(), 361);
        assert_eq!(Mode::NbHigh.table().frame_bytes(), 46);
        assert_eq!(Mode::WbLow.table().total_bits(), 145 + 49);
        assert_eq!(Mode::WbLow.table().frame_bytes(), 19 + 7);
        assert_eq!(Mode::WbHigh.table().total_bits(), 361 + 49 + 256);
    }

    #[test]
    fn pitch_range_fits_seven_bits() {
        assert_eq!(PITCH_MAX - PITCH_MIN, (1 << 7) - 1);
    }

    #[test]
    fn ids_and_names_round_trip() {
        for m in Mode::ALL {
            assert_eq!(Mode::from_id(m.id()).unwrap(), m);
            assert_eq!(m.name().parse::<Mode>().unwrap(), m);
        }
        assert_eq!(Mode::from_id(9), Err(Error::UnknownMode(9)));
        assert!("wb-medium".parse::<Mode>().is_err());
    }

    #[test]
    fn geometry() {
        assert_eq!(Mode::NbLow.frame_size(), 160);
        assert_eq!(Mode::WbHigh.frame_size(), 320);
        assert_eq!(Mode::NbLow.table().subvectors_per_subframe(), 2);
        assert_eq!(Mode::NbHigh.table().subvectors_per_subframe(), 8);
        assert_eq!(Mode::WbLow.narrowband_layer(), Mode::NbLow);
    }
}
