//! Tian difference expansion: reversible embedding in pixel pairs.
//!
//! Pixels are paired horizontally (even column with the odd column to its
//! right), scanned in raster order; a trailing odd column never carries
//! data. Each pair is described by its integer average `l = floor((x+y)/2)`
//! and difference `h = x - y`, from which the pixels are recovered exactly:
//!
//! ```text
//! x = l + floor((h + 1) / 2)        y = l - floor(h / 2)
//! ```
//!
//! A bit expands the difference to `h' = 2h + b`, permitted only when
//! `|2h + b| <= min(2(255 - l), 2l + 1)` so both pixels stay in range.
//! The location map records which pairs were expanded; together with the
//! payload length it allows exact payload extraction and bit-identical
//! cover restoration.

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::payload::BitPayload;

/// A horizontal pixel pair in (average, difference) form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelPair {
    pub x: u8,
    pub y: u8,
}

impl PixelPair {
    pub fn new(x: u8, y: u8) -> Self {
        Self { x, y }
    }

    /// Integer average, floor((x+y)/2). Always in [0,255].
    pub fn l(self) -> i32 {
        (self.x as i32 + self.y as i32) >> 1
    }

    /// Difference x - y, in [-255,255].
    pub fn h(self) -> i32 {
        self.x as i32 - self.y as i32
    }
}

/// Inverse of the (l, h) decomposition. May land outside [0,255] for
/// (l, h) combinations no valid pair produces.
fn recompose(l: i32, h: i32) -> (i32, i32) {
    (l + (h + 1).div_euclid(2), l - h.div_euclid(2))
}

/// Tests the expandability condition |2h + b| <= min(2(255-l), 2l+1),
/// which guarantees the expanded pair stays inside [0,255].
pub fn de_is_expandable(pair: PixelPair, b: bool) -> bool {
    let l = pair.l();
    let expanded = 2 * pair.h() + b as i32;
    expanded.abs() <= (2 * (255 - l)).min(2 * l + 1)
}

/// Conservative capacity: pairs expandable with the stricter bit value 1.
///
/// For h >= 0 a pair that accepts a 1 accepts a 0 too, so this undercounts
/// only at negative-difference boundary pairs; it is the gate-independent
/// number a caller can size payloads against.
pub fn de_capacity(cover: &GrayImage) -> usize {
    pairs(cover).filter(|&p| de_is_expandable(p, true)).count()
}

fn pair_count(img: &GrayImage) -> usize {
    (img.width() / 2) * img.height()
}

fn pairs(img: &GrayImage) -> impl Iterator<Item = PixelPair> + '_ {
    let w = img.width();
    (0..img.height()).flat_map(move |row| {
        (0..w / 2).map(move |i| PixelPair::new(img.pixel(2 * i, row), img.pixel(2 * i + 1, row)))
    })
}

/// Sidecar metadata produced by embedding: which pairs were expanded and
/// how many payload bits they carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeMetadata {
    pair_count: usize,
    payload_len: usize,
    location_map: Vec<bool>,
}

const DEM_MAGIC: &[u8; 4] = b"DEM1";

impl DeMetadata {
    pub fn new(pair_count: usize, payload_len: usize, location_map: Vec<bool>) -> Result<Self> {
        if pair_count > u32::MAX as usize || payload_len > u32::MAX as usize {
            return Err(Error::BadMetadata(format!(
                "counts {pair_count}/{payload_len} exceed the 32-bit file format"
            )));
        }
        if location_map.len() != pair_count {
            return Err(Error::MapInconsistent(format!(
                "location map holds {} bits for {} pairs",
                location_map.len(),
                pair_count
            )));
        }
        let ones = location_map.iter().filter(|&&b| b).count();
        if ones != payload_len {
            return Err(Error::MapInconsistent(format!(
                "location map marks {ones} pairs but payload length is {payload_len}"
            )));
        }
        Ok(Self {
            pair_count,
            payload_len,
            location_map,
        })
    }

    pub fn pair_count(&self) -> usize {
        self.pair_count
    }

    pub fn payload_len(&self) -> usize {
        self.payload_len
    }

    pub fn location_map(&self) -> &[bool] {
        &self.location_map
    }

    /// Serializes to the DEM1 sidecar format: magic, big-endian pair and
    /// payload counts, then the map packed MSB-first and zero-padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(12 + self.pair_count.div_ceil(8));
        out.extend_from_slice(DEM_MAGIC);
        out.extend_from_slice(&(self.pair_count as u32).to_be_bytes());
        out.extend_from_slice(&(self.payload_len as u32).to_be_bytes());
        for chunk in self.location_map.chunks(8) {
            let mut byte = 0u8;
            for (i, &bit) in chunk.iter().enumerate() {
                byte |= (bit as u8) << (7 - i);
            }
            out.push(byte);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 12 {
            return Err(Error::BadMetadata(format!(
                "{} bytes is shorter than the 12-byte header",
                bytes.len()
            )));
        }
        if &bytes[..4] != DEM_MAGIC {
            return Err(Error::BadMetadata("missing DEM1 magic".into()));
        }
        let pair_count = u32::from_be_bytes(bytes[4..8].try_into().unwrap()) as usize;
        let payload_len = u32::from_be_bytes(bytes[8..12].try_into().unwrap()) as usize;
        let map_bytes = pair_count.div_ceil(8);
        if bytes.len() != 12 + map_bytes {
            return Err(Error::BadMetadata(format!(
                "expected {} bytes for {} pairs, got {}",
                12 + map_bytes,
                pair_count,
                bytes.len()
            )));
        }
        let mut location_map = Vec::with_capacity(pair_count);
        for (i, &byte) in bytes[12..].iter().enumerate() {
            for bit in 0..8 {
                let idx = i * 8 + bit;
                let set = byte >> (7 - bit) & 1 == 1;
                if idx < pair_count {
                    location_map.push(set);
                } else if set {
                    return Err(Error::BadMetadata("nonzero padding bits".into()));
                }
            }
        }
        Self::new(pair_count, payload_len, location_map)
    }
}

/// Embeds payload bits into expandable pairs, greedily in scan order.
///
/// The k-th payload bit lands in the k-th pair that can expand with that
/// exact bit value; pairs that cannot take the pending bit are skipped and
/// marked 0. Errors with the achieved count when bits remain after the
/// last pair.
pub fn de_embed(cover: &GrayImage, payload: &BitPayload) -> Result<(GrayImage, DeMetadata)> {
    let (w, h) = cover.dimensions();
    let pairs_per_row = w / 2;
    let mut pixels = cover.pixels().to_vec();
    let mut map = Vec::with_capacity(pairs_per_row * h);
    let bits = payload.bits();
    let mut cursor = 0;
    for row in 0..h {
        for i in 0..pairs_per_row {
            let base = row * w + 2 * i;
            let pair = PixelPair::new(pixels[base], pixels[base + 1]);
            if cursor < bits.len() && de_is_expandable(pair, bits[cursor]) {
                let expanded = 2 * pair.h() + bits[cursor] as i32;
                let (nx, ny) = recompose(pair.l(), expanded);
                pixels[base] = nx as u8;
                pixels[base + 1] = ny as u8;
                map.push(true);
                cursor += 1;
            } else {
                map.push(false);
            }
        }
    }
    if cursor < bits.len() {
        return Err(Error::CapacityExceeded {
            capacity: cursor,
            requested: bits.len(),
        });
    }
    let meta = DeMetadata::new(pairs_per_row * h, cursor, map)?;
    Ok((GrayImage::new(w, h, pixels)?, meta))
}

/// Recovers the payload and restores the cover bit-exactly.
///
/// For each pair the map marks: the bit is the floor-division parity of
/// the expanded difference (so h' = -3 yields 1), and halving the
/// difference undoes the expansion.
pub fn de_extract_restore(stego: &GrayImage, meta: &DeMetadata) -> Result<(BitPayload, GrayImage)> {
    let (w, h) = stego.dimensions();
    if meta.pair_count() != pair_count(stego) {
        return Err(Error::GeometryMismatch {
            expected: meta.pair_count(),
            got: pair_count(stego),
        });
    }
    let pairs_per_row = w / 2;
    let mut pixels = stego.pixels().to_vec();
    let mut bits = Vec::with_capacity(meta.payload_len());
    for row in 0..h {
        for i in 0..pairs_per_row {
            if !meta.location_map()[row * pairs_per_row + i] {
                continue;
            }
            let base = row * w + 2 * i;
            let pair = PixelPair::new(pixels[base], pixels[base + 1]);
            let expanded = pair.h();
            bits.push(expanded.rem_euclid(2) == 1);
            let (nx, ny) = recompose(pair.l(), expanded.div_euclid(2));
            // Unreachable for maps de_embed wrote (contraction keeps the
            // restored pair between l and the stego pixel); kept as a guard
            // against foreign metadata.
            if !(0..=255).contains(&nx) || !(0..=255).contains(&ny) {
                return Err(Error::MapInconsistent(format!(
                    "pair at column {}, row {row} restores to ({nx},{ny})",
                    2 * i
                )));
            }
            pixels[base] = nx as u8;
            pixels[base + 1] = ny as u8;
        }
    }
    Ok((
        BitPayload::from_bits(bits),
        GrayImage::new(w, h, pixels)?,
    ))
}
