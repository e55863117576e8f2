use mclp::bitstream::{unpack_frame, unpack_wb_frame};
use mclp::dsp::{autocorrelate, levinson_durbin, lpc_to_lsp, AcfConditioning, Window};
use mclp::{Mode, NbDecoder, NbEncoder, WbDecoder, WbEncoder};
use proptest::prelude::*;

fn frame_strategy(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop_oneof![
        proptest::collection::vec(-32768.0f64..32767.0, len),
        (-32768.0f64..32767.0).prop_map(move |v| vec![v; len]),
        Just((0..len).map(|n| if n % 2 == 0 { 32767.0 } else { -32768.0 }).collect()),
        (0..len).prop_map(move |k| {
            let mut v = vec![0.0; len];
            v[k] = 32767.0;
            v
        }),
        (1.0f64..4000.0, 100.0f64..32767.0).prop_map(move |(f, a)| {
            (0..len)
                .map(|n| a * (2.0 * std::f64::consts::PI * f * n as f64 / 8000.0).sin())
                .collect()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn analysis_is_always_stable(x in frame_strategy(240)) {
        let acf = autocorrelate(&x, Window::Hamming, 10, &AcfConditioning::standard(8000)).unwrap();
        let lpc = levinson_durbin(&acf, 10).unwrap().lpc;
        let k = lpc.reflection_coefficients().unwrap();
        prop_assert!(k.iter().all(|k| k.abs() < 1.0));
        prop_assert!(lpc_to_lsp(&lpc).is_ok());
    }

    #[test]
    fn codec_output_stays_in_range(frames in proptest::collection::vec(frame_strategy(160), 3)) {
        for mode in [Mode::NbLow, Mode::NbHigh] {
            let mut enc = NbEncoder::new(mode).unwrap();
            let mut dec = NbDecoder::new(mode).unwrap();
            for f in &frames {
                let y = dec.decode_frame(&enc.encode_frame(f).unwrap()).unwrap();
                prop_assert!(y.iter().all(|v| (-32768.0..=32767.0).contains(v)));
            }
        }
    }

    #[test]
    fn arbitrary_bytes_decode_or_fail_cleanly(
        frames in proptest::collection::vec(proptest::collection::vec(any::<u8>(), 46), 4)
    ) {
        let mut dec = NbDecoder::new(Mode::NbHigh).unwrap();
        for b in &frames {
            let p = unpack_frame(b, Mode::NbHigh).unwrap();
            let y = dec.decode_frame(&p).unwrap();
            prop_assert!(y.iter().all(|v| v.is_finite() && v.abs() <= 32768.0));
        }
    }

    #[test]
    fn arbitrary_wideband_bytes(
        frames in proptest::collection::vec(proptest::collection::vec(any::<u8>(), 86), 3)
    ) {
        let mode = Mode::WbHigh;
        let mut dec = WbDecoder::new(mode).unwrap();
        for b in &frames {
            let b = &b[..mode.table().frame_bytes()];
            prop_assert!(unpack_wb_frame(b, mode).is_ok());
            let out = dec.decode_bytes(b).unwrap();
            prop_assert!(out.wide.iter().all(|v| v.is_finite() && v.abs() <= 32768.0));
        }
    }
}

#[test]
fn wideband_extremes() {
    for mode in [Mode::WbLow, Mode::WbHigh] {
        let mut enc = WbEncoder::new(mode).unwrap();
        let mut dec = WbDecoder::new(mode).unwrap();
        let inputs: [Vec<f64>; 3] = [
            vec![32767.0; 320],
            (0..320).map(|n| if n % 2 == 0 { 32767.0 } else { -32768.0 }).collect(),
            vec![0.0; 320],
        ];
        for x in inputs.iter().cycle().take(9) {
            let out = dec.decode_frame(&enc.encode_frame(x).unwrap()).unwrap();
            assert!(out.wide.iter().all(|v| (-32768.0..=32767.0).contains(v)));
        }
    }
}
