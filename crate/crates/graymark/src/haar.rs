//! Single-level 2-D Haar decomposition over unnormalized integer
//! sums and differences.
//!
//! Each non-overlapping 2x2 block (a, b on the top row, c, d below)
//! produces one coefficient per band:
//!
//! ```text
//! LL = a+b+c+d    HL = (a-b)+(c-d)    LH = (a+b)-(c+d)    HH = (a-b)-(c-d)
//! ```
//!
//! The first letter names the horizontal filter, the second the vertical
//! one. Sums are kept whole (no /sqrt 2), so the transform is exact in
//! integers: LL lies in [0,1020], the detail bands in [-510,510], and the
//! four coefficients at any position sum to 4a, a multiple of 4. The
//! inverse divides by 4 and is the exact identity on unmodified bands.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// One of the three detail bands (the LL approximation band never
/// carries a watermark).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subband {
    Hl,
    Lh,
    Hh,
}

impl FromStr for Subband {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hl" => Ok(Subband::Hl),
            "lh" => Ok(Subband::Lh),
            "hh" => Ok(Subband::Hh),
            other => Err(Error::InvalidParams(format!(
                "unknown sub-band {other:?}, expected hl, lh or hh"
            ))),
        }
    }
}

impl fmt::Display for Subband {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subband::Hl => "hl",
            Subband::Lh => "lh",
            Subband::Hh => "hh",
        })
    }
}

/// The four coefficient matrices of one decomposition level, each
/// half_w x half_h in raster order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubBands {
    half_w: usize,
    half_h: usize,
    ll: Vec<i32>,
    hl: Vec<i32>,
    lh: Vec<i32>,
    hh: Vec<i32>,
}

impl SubBands {
    pub fn new(
        half_w: usize,
        half_h: usize,
        ll: Vec<i32>,
        hl: Vec<i32>,
        lh: Vec<i32>,
        hh: Vec<i32>,
    ) -> Result<Self> {
        let expected = half_w * half_h;
        for band in [&ll, &hl, &lh, &hh] {
            if band.len() != expected {
                return Err(Error::LengthMismatch {
                    expected,
                    got: band.len(),
                });
            }
        }
        Ok(Self {
            half_w,
            half_h,
            ll,
            hl,
            lh,
            hh,
        })
    }

    pub fn half_w(&self) -> usize {
        self.half_w
    }

    pub fn half_h(&self) -> usize {
        self.half_h
    }

    pub fn coeff_count(&self) -> usize {
        self.half_w * self.half_h
    }

    pub fn ll(&self) -> &[i32] {
        &self.ll
    }

    pub fn band(&self, which: Subband) -> &[i32] {
        match which {
            Subband::Hl => &self.hl,
            Subband::Lh => &self.lh,
            Subband::Hh => &self.hh,
        }
    }

    pub fn band_mut(&mut self, which: Subband) -> &mut [i32] {
        match which {
            Subband::Hl => &mut self.hl,
            Subband::Lh => &mut self.lh,
            Subband::Hh => &mut self.hh,
        }
    }
}

/// Decomposes an even-dimensioned image into its four Haar bands.
pub fn haar_forward(img: &GrayImage) -> Result<SubBands> {
    let (w, h) = img.dimensions();
    if w % 2 != 0 || h % 2 != 0 {
        return Err(Error::OddDimensions {
            width: w,
            height: h,
        });
    }
    let (half_w, half_h) = (w / 2, h / 2);
    let n = half_w * half_h;
    let (mut ll, mut hl, mut lh, mut hh) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    for row in 0..half_h {
        for col in 0..half_w {
            let a = img.pixel(2 * col, 2 * row) as i32;
            let b = img.pixel(2 * col + 1, 2 * row) as i32;
            let c = img.pixel(2 * col, 2 * row + 1) as i32;
            let d = img.pixel(2 * col + 1, 2 * row + 1) as i32;
            ll.push(a + b + c + d);
            hl.push((a - b) + (c - d));
            lh.push((a + b) - (c + d));
            hh.push((a - b) - (c - d));
        }
    }
    SubBands::new(half_w, half_h, ll, hl, lh, hh)
}

fn reconstruction_sums(bands: &SubBands, idx: usize) -> [i32; 4] {
    let (ll, hl, lh, hh) = (
        bands.ll[idx],
        bands.hl[idx],
        bands.lh[idx],
        bands.hh[idx],
    );
    [
        ll + hl + lh + hh, // a: top-left
        ll - hl + lh - hh, // b: top-right
        ll + hl - lh - hh, // c: bottom-left
        ll - hl - lh + hh, // d: bottom-right
    ]
}

const QUAD_OFFSETS: [(usize, usize); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

/// Exact inverse: every reconstruction sum must be a nonnegative
/// multiple of 4 no larger than 1020, or the bands do not describe an
/// 8-bit image and the offending pixel is reported.
pub fn haar_inverse(bands: &SubBands) -> Result<GrayImage> {
    let (w, h) = (bands.half_w * 2, bands.half_h * 2);
    let mut pixels = vec![0u8; w * h];
    for row in 0..bands.half_h {
        for col in 0..bands.half_w {
            let sums = reconstruction_sums(bands, row * bands.half_w + col);
            for (s, (dx, dy)) in sums.into_iter().zip(QUAD_OFFSETS) {
                let (x, y) = (2 * col + dx, 2 * row + dy);
                if s % 4 != 0 {
                    return Err(Error::RangeViolation {
                        x,
                        y,
                        detail: format!("reconstruction sum {s} is not a multiple of 4"),
                    });
                }
                let q = s / 4;
                if !(0..=255).contains(&q) {
                    return Err(Error::RangeViolation {
                        x,
                        y,
                        detail: format!("reconstructed value {q} outside [0,255]"),
                    });
                }
                pixels[y * w + x] = q as u8;
            }
        }
    }
    GrayImage::new(w, h, pixels)
}

/// Lossy inverse for modified bands: divides by 4 in reals, rounds half
/// away from zero and clamps to [0,255] instead of erroring.
pub fn haar_inverse_rounded(bands: &SubBands) -> GrayImage {
    let (w, h) = (bands.half_w * 2, bands.half_h * 2);
    let mut pixels = vec![0u8; w * h];
    for row in 0..bands.half_h {
        for col in 0..bands.half_w {
            let sums = reconstruction_sums(bands, row * bands.half_w + col);
            for (s, (dx, dy)) in sums.into_iter().zip(QUAD_OFFSETS) {
                let q = (s as f64 / 4.0).round().clamp(0.0, 255.0);
                pixels[(2 * row + dy) * w + 2 * col + dx] = q as u8;
            }
        }
    }
    GrayImage::new(w, h, pixels).expect("dimensions are positive and length matches")
}
