use std::io::{Read, Seek, Write};

use hound::{SampleFormat, WavReader, WavSpec, WavWriter};

use crate::error::{CliError, Result};

/// Mono 16-bit PCM audio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pcm {
    pub sample_rate: u32,
    pub samples: Vec<i16>,
}

/// Reads a RIFF PCM16 mono WAV; anything else is an input-format error.
pub fn read_wav<R: Read>(reader: R) -> Result<Pcm> {
    let wav = WavReader::new(reader)?;
    let spec = wav.spec();
    if spec.channels != 1 {
        return Err(CliError::InputFormat(format!(
            "expected mono, got {} channels",
            spec.channels
        )));
    }
    if spec.sample_format != SampleFormat::Int || spec.bits_per_sample != 16 {
        return Err(CliError::InputFormat(format!(
            "expected 16-bit integer PCM, got {}-bit {:?}",
            spec.bits_per_sample, spec.sample_format
        )));
    }
    let samples = wav.into_samples::<i16>().collect::<std::result::Result<_, _>>()?;
    Ok(Pcm {
        sample_rate: spec.sample_rate,
        samples,
    })
}

pub fn write_wav<W: Write + Seek>(writer: W, pcm: &Pcm) -> Result<()> {
    let spec = WavSpec {
        channels: 1,
        sample_rate: pcm.sample_rate,
        bits_per_sample: 16,
        sample_format: SampleFormat::Int,
    };
    let mut w = WavWriter::new(writer, spec)?;
    for &s in &pcm.samples {
        w.write_sample(s)?;
    }
    w.finalize()?;
    Ok(())
}

/// Rounds and saturates a decoded sample to 16 bits.
pub fn to_i16(v: f64) -> i16 {
    v.round().clamp(-32768.0, 32767.0) as i16
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn round_trip_is_exact() {
        let pcm = Pcm {
            sample_rate: 8000,
            samples: vec![i16::MIN, -1, 0, 1, i16::MAX, 1234],
        };
        let mut buf = Cursor::new(Vec::new());
        write_wav(&mut buf, &pcm).unwrap();
        buf.set_position(0);
        assert_eq!(read_wav(buf).unwrap(), pcm);
    }

    #[test]
    fn rejects_stereo_and_float() {
        for spec in [
            WavSpec {
                channels: 2,
                sample_rate: 8000,
                bits_per_sample: 16,
                sample_format: SampleFormat::Int,
            },
            WavSpec {
                channels: 1,
                sample_rate: 8000,
                bits_per_sample: 32,
                sample_format: SampleFormat::Float,
            },
        ] {
            let mut buf = Cursor::new(Vec::new());
            let mut w = WavWriter::new(&mut buf, spec).unwrap();
            if spec.sample_format == SampleFormat::Float {
                w.write_sample(0.5f32).unwrap();
            } else {
                w.write_sample(1i16).unwrap();
                w.write_sample(1i16).unwrap();
            }
            w.finalize().unwrap();
            buf.set_position(0);
            assert!(matches!(read_wav(buf), Err(CliError::InputFormat(_))));
        }
        assert!(matches!(
            read_wav(Cursor::new(b"not a wav file".to_vec())),
            Err(CliError::InputFormat(_))
        ));
    }

    #[test]
    fn saturating_conversion() {
        assert_eq!(to_i16(40000.0), i16::MAX);
        assert_eq!(to_i16(-40000.0), i16::MIN);
        assert_eq!(to_i16(-0.4), 0);
        assert_eq!(to_i16(2.5), 3);
    }
}
