//! Quality, capacity and robustness measurements.
//!
//! Quality is MSE/PSNR against an 8-bit peak of 255, robustness is the
//! bit error rate between sent and recovered payloads, capacity is the
//! per-method bit budget for a given cover, and histograms feed the
//! before/after distribution comparisons.

use crate::error::{Error, Result};
use crate::expansion::de_capacity;
use crate::freq::{dct_capacity, dwt_capacity, EmbedParams};
use crate::image::GrayImage;
use crate::payload::BitPayload;
use crate::Method;

fn check_dims(a: &GrayImage, b: &GrayImage) -> Result<()> {
    if a.dimensions() != b.dimensions() {
        return Err(Error::DimensionMismatch {
            a_width: a.width(),
            a_height: a.height(),
            b_width: b.width(),
            b_height: b.height(),
        });
    }
    Ok(())
}

/// Mean squared per-pixel difference.
pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    check_dims(a, b)?;
    let sum: f64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&p, &q)| {
            let d = p as f64 - q as f64;
            d * d
        })
        .sum();
    Ok(sum / a.pixel_count() as f64)
}

/// 10 log10(255^2 / mse) in decibels; +infinity for identical images.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    let mse = mse(a, b)?;
    if mse == 0.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
    }
}

/// Fraction of differing bits.
pub fn ber(sent: &BitPayload, recv: &BitPayload) -> Result<f64> {
    if sent.len() != recv.len() {
        return Err(Error::LengthMismatch {
            expected: sent.len(),
            got: recv.len(),
        });
    }
    if sent.is_empty() {
        return Ok(0.0);
    }
    let wrong = sent
        .bits()
        .iter()
        .zip(recv.bits())
        .filter(|(a, b)| a != b)
        .count();
    Ok(wrong as f64 / sent.len() as f64)
}

/// Intensity counts; counts[v] is the number of pixels with value v.
pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut counts = [0u64; 256];
    for &p in img.pixels() {
        counts[p as usize] += 1;
    }
    counts
}

/// The histogram in its interchange form: 256 lines of "value,count".
pub fn histogram_csv(counts: &[u64; 256]) -> String {
    let mut out = String::with_capacity(256 * 8);
    for (value, count) in counts.iter().enumerate() {
        out.push_str(&format!("{value},{count}\n"));
    }
    out
}

/// Maximum embeddable bit count for a method on a cover.
///
/// The difference-expansion number is conservative (worst-case bit 1 in
/// the expandability test) so payloads sized against it nearly always
/// fit; see the expansion module for the boundary cases.
pub fn capacity(method: Method, cover: &GrayImage, params: &EmbedParams) -> Result<usize> {
    match method {
        Method::Lsb => Ok(cover.pixel_count()),
        Method::De => Ok(de_capacity(cover)),
        Method::Dwt => {
            params.validate_for_dwt()?;
            dwt_capacity(cover)
        }
        Method::Dct => {
            params.validate_for_dct()?;
            Ok(dct_capacity(cover))
        }
    }
}

/// Distortion summary between two images of equal geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    pub psnr_db: f64,
    pub max_abs_diff: u8,
}

impl QualityReport {
    /// JSON object with psnr_db rendered as the string "inf" when the
    /// images are identical (bare infinity is not valid JSON).
    pub fn to_json(&self) -> String {
        let psnr = if self.psnr_db.is_infinite() {
            "\"inf\"".to_string()
        } else {
            format!("{}", self.psnr_db)
        };
        format!(
            "{{\"mse\": {}, \"psnr_db\": {}, \"max_abs_diff\": {}}}",
            self.mse, psnr, self.max_abs_diff
        )
    }
}

/// Computes the full quality report for a cover/stego pair.
pub fn quality(a: &GrayImage, b: &GrayImage) -> Result<QualityReport> {
    let mse = mse(a, b)?;
    let psnr_db = if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (255.0f64 * 255.0 / mse).log10()
    };
    let max_abs_diff = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&p, &q)| (p as i16 - q as i16).unsigned_abs() as u8)
        .max()
        .unwrap_or(0);
    Ok(QualityReport {
        mse,
        psnr_db,
        max_abs_diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn img(w: usize, h: usize, px: Vec<u8>) -> GrayImage {
        GrayImage::new(w, h, px).unwrap()
    }

    #[test]
    fn mse_examples() {
        let a = img(2, 1, vec![3, 9]);
        assert_eq!(mse(&a, &a).unwrap(), 0.0);
        assert_eq!(
            mse(&img(1, 1, vec![0]), &img(1, 1, vec![255])).unwrap(),
            65025.0
        );
        assert_eq!(
            mse(&img(2, 1, vec![0, 0]), &img(2, 1, vec![1, 0])).unwrap(),
            0.5
        );
    }

    #[test]
    fn psnr_examples() {
        let a = img(2, 1, vec![7, 8]);
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);
        let zero_db = psnr(&img(1, 1, vec![0]), &img(1, 1, vec![255])).unwrap();
        assert!(zero_db.abs() < 1e-12);
    }

    #[test]
    fn psnr_decreases_as_mse_grows() {
        let base = img(4, 1, vec![10, 10, 10, 10]);
        let near = img(4, 1, vec![11, 10, 10, 10]);
        let far = img(4, 1, vec![14, 10, 10, 10]);
        assert!(psnr(&base, &near).unwrap() > psnr(&base, &far).unwrap());
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let e = mse(&img(2, 1, vec![0, 0]), &img(1, 2, vec![0, 0]));
        assert_eq!(
            e,
            Err(Error::DimensionMismatch {
                a_width: 2,
                a_height: 1,
                b_width: 1,
                b_height: 2
            })
        );
    }

    #[test]
    fn ber_examples() {
        let p = |v: &[u8]| BitPayload::from_bits(v.iter().map(|&b| b == 1).collect());
        let sent = p(&[1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(ber(&sent, &sent).unwrap(), 0.0);
        assert_eq!(ber(&sent, &p(&[0, 1, 0, 1, 0, 1, 0, 1])).unwrap(), 1.0);
        assert_eq!(ber(&sent, &p(&[0, 0, 1, 0, 1, 0, 1, 1])).unwrap(), 0.25);
        assert!(matches!(
            ber(&sent, &p(&[1, 0])),
            Err(Error::LengthMismatch { .. })
        ));
        assert_eq!(
            ber(&BitPayload::from_bits(vec![]), &BitPayload::from_bits(vec![])).unwrap(),
            0.0
        );
    }

    #[test]
    fn histogram_examples() {
        let counts = histogram(&img(4, 4, vec![7; 16]));
        assert_eq!(counts[7], 16);
        assert_eq!(counts.iter().sum::<u64>(), 16);

        let counts = histogram(&img(1, 2, vec![0, 255]));
        assert_eq!(counts[0], 1);
        assert_eq!(counts[255], 1);
        assert_eq!(counts.iter().sum::<u64>(), 2);
    }

    #[test]
    fn histogram_csv_shape() {
        let csv = histogram_csv(&histogram(&img(1, 2, vec![0, 255])));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 256);
        assert_eq!(lines[0], "0,1");
        assert_eq!(lines[1], "1,0");
        assert_eq!(lines[255], "255,1");
    }

    #[test]
    fn capacity_per_method() {
        let params = EmbedParams::dct_defaults();
        let big = GrayImage::from_fn(512, 512, |x, y| ((x ^ y) % 256) as u8).unwrap();
        assert_eq!(capacity(Method::Lsb, &big, &params).unwrap(), 262144);
        assert_eq!(capacity(Method::Dct, &big, &params).unwrap(), 4096);
        assert_eq!(
            capacity(Method::Dwt, &big, &EmbedParams::dwt_defaults()).unwrap(),
            65536
        );

        let white = img(4, 2, vec![255; 8]);
        assert_eq!(capacity(Method::De, &white, &params).unwrap(), 0);

        let odd = img(3, 3, vec![0; 9]);
        assert!(matches!(
            capacity(Method::Dwt, &odd, &EmbedParams::dwt_defaults()),
            Err(Error::OddDimensions { .. })
        ));
    }

    #[test]
    fn quality_report_json() {
        let a = img(2, 1, vec![0, 0]);
        let same = quality(&a, &a).unwrap();
        assert_eq!(same.to_json(), "{\"mse\": 0, \"psnr_db\": \"inf\", \"max_abs_diff\": 0}");

        let r = quality(&a, &img(2, 1, vec![1, 0])).unwrap();
        assert_eq!(r.mse, 0.5);
        assert_eq!(r.max_abs_diff, 1);
        let json = r.to_json();
        assert!(json.starts_with("{\"mse\": 0.5, \"psnr_db\": 51.14"), "{json}");
        assert!(json.ends_with("\"max_abs_diff\": 1}"), "{json}");
    }

    proptest! {
        #[test]
        fn mse_is_symmetric(
            (a, b) in (1usize..=16, 1usize..=16).prop_flat_map(|(w, h)| {
                (
                    proptest::collection::vec(any::<u8>(), w * h)
                        .prop_map(move |px| GrayImage::new(w, h, px).unwrap()),
                    proptest::collection::vec(any::<u8>(), w * h)
                        .prop_map(move |px| GrayImage::new(w, h, px).unwrap()),
                )
            })
        ) {
            prop_assert_eq!(mse(&a, &b).unwrap(), mse(&b, &a).unwrap());
        }

        #[test]
        fn histogram_counts_every_pixel_once(
            img in (1usize..=24, 1usize..=24).prop_flat_map(|(w, h)| {
                proptest::collection::vec(any::<u8>(), w * h)
                    .prop_map(move |px| GrayImage::new(w, h, px).unwrap())
            })
        ) {
            let counts = histogram(&img);
            prop_assert_eq!(counts.iter().sum::<u64>(), img.pixel_count() as u64);
            // Permutation invariance: reversing the raster keeps counts.
            let mut reversed = img.pixels().to_vec();
            reversed.reverse();
            let r = GrayImage::new(img.width(), img.height(), reversed).unwrap();
            prop_assert_eq!(histogram(&r), counts);
        }
    }
}
