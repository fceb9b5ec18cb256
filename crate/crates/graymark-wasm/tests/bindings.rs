//! The exported functions are plain Rust on non-wasm targets, so the
//! binding layer's argument handling and round trips are testable here
//! without a browser.

use graymark_wasm::{embed, extract, quality_json};

fn cover(w: usize, h: usize) -> Vec<u8> {
    (0..w * h).map(|i| (30 + (i * 7) % 196) as u8).collect()
}

fn watermark(w: usize, h: usize) -> Vec<u8> {
    (0..w * h).map(|i| if i % 2 == 0 { 220 } else { 40 }).collect()
}

#[test]
fn embed_extract_round_trip_per_method() {
    let c = cover(128, 128);
    let w = watermark(10, 12);
    for method in ["lsb", "dwt", "dct"] {
        let stego = embed(&c, 128, 128, &w, 10, 12, method, None, "77").unwrap();
        assert_eq!(stego.len(), c.len(), "{method}");
        let got = extract(&stego, 128, 128, method, None, "77").unwrap();
        assert_eq!((got.width(), got.height()), (10, 12), "{method}");
        let want: Vec<u8> = w.iter().map(|&p| if p >= 128 { 255 } else { 0 }).collect();
        assert_eq!(got.pixels(), want, "{method}");
    }
}

#[test]
fn custom_delta_is_honored() {
    let c = cover(128, 64);
    let w = watermark(6, 6);
    let stego = embed(&c, 128, 64, &w, 6, 6, "dct", Some(12.0), "").unwrap();
    let got = extract(&stego, 128, 64, "dct", Some(12.0), "").unwrap();
    assert_eq!((got.width(), got.height()), (6, 6));
}

#[test]
fn errors_come_back_as_strings() {
    let c = cover(16, 16);
    let w = watermark(4, 4);

    let err = embed(&c, 16, 15, &w, 4, 4, "lsb", None, "").unwrap_err();
    assert!(err.starts_with("cover:"), "{err}");

    let err = embed(&c, 16, 16, &w, 4, 4, "de", None, "").unwrap_err();
    assert!(err.contains("sidecar"), "{err}");

    let err = embed(&c, 16, 16, &w, 4, 4, "svd", None, "").unwrap_err();
    assert!(err.contains("unknown method"), "{err}");

    let err = embed(&c, 16, 16, &w, 4, 4, "dct", None, "not-a-number").unwrap_err();
    assert!(err.contains("decimal"), "{err}");

    let err = embed(&c, 16, 16, &w, 4, 4, "dct", Some(-3.0), "").unwrap_err();
    assert!(err.contains("delta"), "{err}");

    // 16x16 has only four 8x8 blocks; the payload needs 48 bits.
    let err = embed(&c, 16, 16, &w, 4, 4, "dct", None, "").unwrap_err();
    assert!(err.contains("capacity"), "{err}");
}

#[test]
fn quality_json_reports_distortion() {
    let c = cover(32, 32);
    let same = quality_json(&c, &c, 32, 32).unwrap();
    assert_eq!(same, r#"{"mse": 0, "psnr_db": "inf", "max_abs_diff": 0}"#);

    let w = watermark(8, 8);
    let stego = embed(&c, 32, 32, &w, 8, 8, "lsb", None, "").unwrap();
    let report = quality_json(&c, &stego, 32, 32).unwrap();
    assert!(report.contains("\"max_abs_diff\": 1"), "{report}");

    let err = quality_json(&c, &c[..100], 32, 32).unwrap_err();
    assert!(err.contains("second image"), "{err}");
}
