//! Least-significant-bit embedding in the spatial domain.
//!
//! Bit `k` of the payload replaces the LSB of pixel `k` in raster order:
//! `out = cover - cover % 2 + bit`. Pixels past the payload are copied
//! untouched. Each pixel moves by at most 1, so a full-capacity random
//! payload perturbs half the pixels by one level (MSE 0.5, about 51 dB).

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::payload::BitPayload;

/// Replaces pixel LSBs with payload bits in raster order.
pub fn lsb_embed(cover: &GrayImage, payload: &BitPayload) -> Result<GrayImage> {
    let capacity = cover.pixel_count();
    if payload.len() > capacity {
        return Err(Error::CapacityExceeded {
            capacity,
            requested: payload.len(),
        });
    }
    let mut pixels = cover.pixels().to_vec();
    for (px, &b) in pixels.iter_mut().zip(payload.bits()) {
        *px = *px - *px % 2 + b as u8;
    }
    GrayImage::new(cover.width(), cover.height(), pixels)
}

/// Reads back the first `nbits` pixel LSBs in raster order.
pub fn lsb_extract(stego: &GrayImage, nbits: usize) -> Result<BitPayload> {
    let capacity = stego.pixel_count();
    if nbits > capacity {
        return Err(Error::CapacityExceeded {
            capacity,
            requested: nbits,
        });
    }
    Ok(BitPayload::from_bits(
        stego.pixels()[..nbits].iter().map(|&p| p % 2 == 1).collect(),
    ))
}
