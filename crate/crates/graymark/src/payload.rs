//! Watermark payload: an ordered bit sequence with a 32-bit dimension
//! header, produced by binarizing a watermark image.
//!
//! Layout: 16 bits of width, 16 bits of height (most significant bit
//! first), then one bit per pixel in raster order. The header is what
//! makes blind extraction possible — the decoder learns the watermark
//! shape from the first 32 extracted bits.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Pixels at or above this intensity binarize to 1.
pub const BINARIZE_THRESHOLD: u8 = 128;

/// Number of header bits carrying the watermark dimensions.
pub const HEADER_BITS: usize = 32;

/// Length-prefixed ordered bit sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitPayload {
    bits: Vec<bool>,
}

impl BitPayload {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The length prefix used when the payload is serialized.
    pub fn declared_len(&self) -> u32 {
        self.bits.len() as u32
    }

    /// First `n` bits as a new payload. Panics when `n` exceeds the length.
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            bits: self.bits[..n].to_vec(),
        }
    }
}

fn push_u16_bits(bits: &mut Vec<bool>, value: u16) {
    for shift in (0..16).rev() {
        bits.push((value >> shift) & 1 == 1);
    }
}

fn read_u16_bits(bits: &[bool]) -> u16 {
    bits.iter().fold(0u16, |acc, &b| (acc << 1) | b as u16)
}

/// Binarizes a watermark image into a payload with a 32-bit dimension header.
pub fn payload_from_image(wm: &GrayImage) -> Result<BitPayload> {
    let (w, h) = wm.dimensions();
    if w > u16::MAX as usize || h > u16::MAX as usize {
        return Err(Error::DimensionOverflow {
            width: w,
            height: h,
        });
    }
    let mut bits = Vec::with_capacity(HEADER_BITS + w * h);
    push_u16_bits(&mut bits, w as u16);
    push_u16_bits(&mut bits, h as u16);
    bits.extend(wm.pixels().iter().map(|&p| p >= BINARIZE_THRESHOLD));
    Ok(BitPayload::from_bits(bits))
}

/// Reads the dimension header from the first 32 bits of a payload.
pub fn header_dims(bits: &[bool]) -> Result<(usize, usize)> {
    if bits.len() < HEADER_BITS {
        return Err(Error::BadHeader(format!(
            "{} bits cannot hold the 32-bit dimension header",
            bits.len()
        )));
    }
    let w = read_u16_bits(&bits[..16]) as usize;
    let h = read_u16_bits(&bits[16..32]) as usize;
    if w == 0 || h == 0 {
        return Err(Error::BadHeader(format!("zero dimension {w}x{h}")));
    }
    Ok((w, h))
}

/// Materializes a payload back into a binary image (bit 1 -> 255, bit 0 -> 0).
pub fn image_from_payload(p: &BitPayload) -> Result<GrayImage> {
    let (w, h) = header_dims(p.bits())?;
    let body = &p.bits()[HEADER_BITS..];
    if body.len() != w * h {
        return Err(Error::LengthMismatch {
            expected: HEADER_BITS + w * h,
            got: p.len(),
        });
    }
    let pixels = body.iter().map(|&b| if b { 255 } else { 0 }).collect();
    GrayImage::new(w, h, pixels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_white_pixel() {
        let wm = GrayImage::new(1, 1, vec![255]).unwrap();
        let p = payload_from_image(&wm).unwrap();
        assert_eq!(p.declared_len(), 33);
        let mut expected = vec![false; 15];
        expected.push(true); // width 1
        expected.extend(vec![false; 15]);
        expected.push(true); // height 1
        expected.push(true); // the pixel
        assert_eq!(p.bits(), expected.as_slice());
    }

    #[test]
    fn threshold_boundary() {
        let below = GrayImage::new(1, 1, vec![127]).unwrap();
        assert!(!payload_from_image(&below).unwrap().bits()[32]);
        let pair = GrayImage::new(2, 1, vec![128, 0]).unwrap();
        assert_eq!(&payload_from_image(&pair).unwrap().bits()[32..], &[true, false]);
    }

    #[test]
    fn binarization_is_lossy_but_shape_preserving() {
        let wm = GrayImage::new(1, 1, vec![255]).unwrap();
        let back = image_from_payload(&payload_from_image(&wm).unwrap()).unwrap();
        assert_eq!(back, wm);

        let gray = GrayImage::new(1, 1, vec![127]).unwrap();
        let back = image_from_payload(&payload_from_image(&gray).unwrap()).unwrap();
        assert_eq!(back.pixels(), &[0]);
    }

    #[test]
    fn rejects_bad_headers() {
        let short = BitPayload::from_bits(vec![true; 8]);
        assert!(matches!(image_from_payload(&short), Err(Error::BadHeader(_))));

        // 32 header bits claiming 1x1 but no body.
        let mut bits = vec![false; 15];
        bits.push(true);
        bits.extend(vec![false; 15]);
        bits.push(true);
        let p = BitPayload::from_bits(bits);
        assert_eq!(
            image_from_payload(&p),
            Err(Error::LengthMismatch { expected: 33, got: 32 })
        );

        let zero_dims = BitPayload::from_bits(vec![false; 32]);
        assert!(matches!(image_from_payload(&zero_dims), Err(Error::BadHeader(_))));
    }

    #[test]
    fn oversized_watermark_is_rejected() {
        // 65536 wide cannot be described by the 16-bit header.
        let wide = GrayImage::new(65536, 1, vec![0; 65536]).unwrap();
        assert!(matches!(
            payload_from_image(&wide),
            Err(Error::DimensionOverflow { .. })
        ));
    }

    fn arb_payload() -> impl Strategy<Value = BitPayload> {
        (1usize..=32, 1usize..=32).prop_flat_map(|(w, h)| {
            proptest::collection::vec(any::<bool>(), w * h).prop_map(move |body| {
                let mut bits = Vec::with_capacity(32 + body.len());
                push_u16_bits(&mut bits, w as u16);
                push_u16_bits(&mut bits, h as u16);
                bits.extend(body);
                BitPayload::from_bits(bits)
            })
        })
    }

    proptest! {
        #[test]
        fn payload_image_round_trip(p in arb_payload()) {
            let img = image_from_payload(&p).unwrap();
            prop_assert_eq!(payload_from_image(&img).unwrap(), p);
        }
    }
}
