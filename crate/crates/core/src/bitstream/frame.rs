//! Frame layout.
//!
//! Narrowband section: the LSP indices (4 bits each, lowest coefficient
//! first), the global gain (5 bits), then for each sub-frame the pitch period
//! minus 17 (7 bits), the pitch gain index (5 bits), the gain correction
//! (3 bits) and the innovation indices in time order. The section is zero
//! padded to a byte boundary.
//!
//! Wideband frames append the high-band section: 8 LSP indices (4 bits each),
//! the global gain (5 bits), four corrections (3 bits each) and, in `WbHigh`,
//! the innovation indices of each sub-frame. It is also padded to a byte.

use super::bits::{BitReader, BitWriter};
use crate::codebooks::{Mode, ModeTable, PitchParams, PITCH_MIN};
use crate::nb::{FrameParams, SubframeParams};
use crate::wb::WbFrameParams;
use crate::{Error, Result, HB_LPC_ORDER, LPC_ORDER, SUBFRAMES};

const LSP_INDEX_BITS: usize = 4;

fn write_nb(w: &mut BitWriter, p: &FrameParams, t: &ModeTable) {
    debug_assert!(p.validate(t).is_ok());
    for &i in &p.lsp_indices {
        w.write(i as u32, LSP_INDEX_BITS);
    }
    w.write(p.global_gain_index as u32, t.global_gain_bits);
    for sf in &p.subframes {
        w.write((sf.pitch.period - PITCH_MIN) as u32, t.pitch_bits);
        w.write(sf.pitch.gain_index as u32, t.pitch_gain_bits);
        w.write(sf.corr_index as u32, t.subframe_corr_bits);
        for &i in &sf.innovation {
            w.write(i as u32, t.codebook_bits);
        }
    }
    w.align();
}

fn read_nb(r: &mut BitReader, t: &ModeTable) -> Result<FrameParams> {
    let mut lsp_indices = Vec::with_capacity(LPC_ORDER);
    for _ in 0..LPC_ORDER {
        lsp_indices.push(r.read(LSP_INDEX_BITS)? as usize);
    }
    let global_gain_index = r.read(t.global_gain_bits)? as usize;
    let mut subframes = Vec::with_capacity(SUBFRAMES);
    for _ in 0..SUBFRAMES {
        let period = r.read(t.pitch_bits)? as usize + PITCH_MIN;
        let gain_index = r.read(t.pitch_gain_bits)? as usize;
        let corr_index = r.read(t.subframe_corr_bits)? as usize;
        let mut innovation = Vec::with_capacity(t.subvectors_per_subframe());
        for _ in 0..t.subvectors_per_subframe() {
            innovation.push(r.read(t.codebook_bits)? as usize);
        }
        subframes.push(SubframeParams {
            pitch: PitchParams { period, gain_index },
            corr_index,
            innovation,
        });
    }
    let p = FrameParams {
        lsp_indices,
        global_gain_index,
        subframes,
    };
    p.validate(t)?;
    Ok(p)
}

fn check_len(bytes: &[u8], needed: usize) -> Result<()> {
    if bytes.len() < needed {
        return Err(Error::TruncatedFrame {
            needed,
            available: bytes.len(),
        });
    }
    Ok(())
}

/// Serializes narrowband parameters. For a wideband `mode` this produces the
/// narrowband section only.
pub fn pack_frame(params: &FrameParams, mode: Mode) -> Vec<u8> {
    let t = mode.narrowband_layer().table();
    let mut w = BitWriter::new();
    write_nb(&mut w, params, t);
    w.into_bytes()
}

/// Parses the narrowband section at the start of `bytes`; trailing bytes
/// (such as a wideband high-band section) are ignored.
pub fn unpack_frame(bytes: &[u8], mode: Mode) -> Result<FrameParams> {
    let t = mode.narrowband_layer().table();
    check_len(bytes, t.nb_bytes())?;
    read_nb(&mut BitReader::new(bytes), t)
}

/// Serializes a wideband frame: narrowband section then high-band section.
pub fn pack_wb_frame(params: &WbFrameParams, mode: Mode) -> Vec<u8> {
    debug_assert!(params.validate(mode).is_ok());
    let t = mode.table();
    let hb = t.high_band.expect("wideband mode");
    let mut w = BitWriter::new();
    write_nb(&mut w, &params.nb, mode.narrowband_layer().table());
    for &i in &params.hb_lsp_indices {
        w.write(i as u32, LSP_INDEX_BITS);
    }
    w.write(params.hb_global_gain_index as u32, hb.global_gain_bits);
    for &c in &params.hb_corr_index {
        w.write(c as u32, hb.subframe_corr_bits);
    }
    if let (Some((_, bits)), Some(sfs)) = (hb.innovation, &params.hb_innovation) {
        for sf in sfs {
            for &i in sf {
                w.write(i as u32, bits);
            }
        }
    }
    w.align();
    w.into_bytes()
}

/// Parses a high-band section (`bytes` starts right after the narrowband
/// section) and joins it with already decoded low-band parameters.
pub fn unpack_high_band(bytes: &[u8], nb: FrameParams, mode: Mode) -> Result<WbFrameParams> {
    let Some(hb) = mode.table().high_band else {
        return Err(Error::InvalidInput(format!("{mode} is not a wideband mode")));
    };
    check_len(bytes, hb.bits().div_ceil(8))?;
    let mut r = BitReader::new(bytes);
    let mut hb_lsp_indices = Vec::with_capacity(HB_LPC_ORDER);
    for _ in 0..HB_LPC_ORDER {
        hb_lsp_indices.push(r.read(LSP_INDEX_BITS)? as usize);
    }
    let hb_global_gain_index = r.read(hb.global_gain_bits)? as usize;
    let mut hb_corr_index = [0; SUBFRAMES];
    for c in hb_corr_index.iter_mut() {
        *c = r.read(hb.subframe_corr_bits)? as usize;
    }
    let hb_innovation = match hb.innovation {
        None => None,
        Some((len, bits)) => {
            let mut sfs = Vec::with_capacity(SUBFRAMES);
            for _ in 0..SUBFRAMES {
                let mut v = Vec::with_capacity(crate::SUBFRAME_SIZE / len);
                for _ in 0..crate::SUBFRAME_SIZE / len {
                    v.push(r.read(bits)? as usize);
                }
                sfs.push(v);
            }
            Some(sfs)
        }
    };
    let p = WbFrameParams {
        nb,
        hb_lsp_indices,
        hb_global_gain_index,
        hb_corr_index,
        hb_innovation,
    };
    p.validate(mode)?;
    Ok(p)
}

/// Parses a complete wideband frame.
pub fn unpack_wb_frame(bytes: &[u8], mode: Mode) -> Result<WbFrameParams> {
    let t = mode.table();
    if t.high_band.is_none() {
        return Err(Error::InvalidInput(format!("{mode} is not a wideband mode")));
    }
    check_len(bytes, t.frame_bytes())?;
    let nb = unpack_frame(bytes, mode)?;
    unpack_high_band(&bytes[t.nb_bytes()..], nb, mode)
}
