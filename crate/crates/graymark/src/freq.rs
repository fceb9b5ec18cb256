//! Blind QIM watermarking in the Haar and block-DCT domains.
//!
//! Both pipelines share the same shape: transform, snap one coefficient
//! per payload bit onto its QIM lattice, transform back, round to pixels.
//! Extraction repeats the forward transform and reads the nearest lattice
//! parity, so only the embedding parameters are needed (no cover).
//!
//! Bit k lands at coefficient/block position perm[k], where perm is the
//! keyed Fisher-Yates permutation (identity for key 0). Embedder and
//! extractor must agree on delta, position parameters and key.
//!
//! Known edge-block caveat for DCT on dimensions that are not multiples
//! of 8: replication padding is re-derived from the cropped stego at
//! extraction time, which flattens a partial block's replicated region
//! and loses the modulated mid-frequency component. Bits that land in
//! partial edge blocks therefore do not survive. Covers with multiple-
//! of-8 dimensions carry every bit reliably.

use crate::dct::{dct2, idct2, partition_blocks, reassemble_blocks};
use crate::error::{Error, Result};
use crate::haar::{haar_forward, haar_inverse_rounded, Subband};
use crate::image::GrayImage;
use crate::payload::BitPayload;
use crate::perm::keyed_permutation;
use crate::qim::{qim_embed_value, qim_extract_value};

/// The DCT pipeline always works on 8x8 blocks.
pub const DCT_BLOCK: usize = 8;

/// Tuning shared by the transform-domain methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedParams {
    /// QIM step. The DWT path needs an even integer so modified bands
    /// stay integral.
    pub delta: f64,
    /// Modulated coefficient (horizontal, vertical) inside each DCT
    /// block. Never (0,0): the DC level is visually critical.
    pub dct_pos: (usize, usize),
    /// Haar band carrying the watermark.
    pub subband: Subband,
    /// Shuffle seed; 0 embeds in plain raster order.
    pub key: u64,
}

impl EmbedParams {
    pub fn dct_defaults() -> Self {
        Self {
            delta: 8.0,
            dct_pos: (4, 3),
            subband: Subband::Hl,
            key: 0,
        }
    }

    pub fn dwt_defaults() -> Self {
        Self {
            delta: 16.0,
            ..Self::dct_defaults()
        }
    }

    fn check_delta(&self) -> Result<()> {
        if self.delta.is_finite() && self.delta > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "delta must be a positive finite number, got {}",
                self.delta
            )))
        }
    }

    pub fn validate_for_dct(&self) -> Result<()> {
        self.check_delta()?;
        let (u, v) = self.dct_pos;
        if (u, v) == (0, 0) {
            return Err(Error::InvalidParams(
                "dct position (0,0) would modulate the DC coefficient".into(),
            ));
        }
        if u >= DCT_BLOCK || v >= DCT_BLOCK {
            return Err(Error::InvalidParams(format!(
                "dct position ({u},{v}) outside the {DCT_BLOCK}x{DCT_BLOCK} block"
            )));
        }
        Ok(())
    }

    pub fn validate_for_dwt(&self) -> Result<()> {
        self.check_delta()?;
        if self.delta.fract() != 0.0 || (self.delta as i64) % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "dwt delta must be an even integer to keep bands integral, got {}",
                self.delta
            )));
        }
        Ok(())
    }
}

/// Bits a DWT embedding can carry: one per coefficient of one band.
pub fn dwt_capacity(cover: &GrayImage) -> Result<usize> {
    let (w, h) = cover.dimensions();
    if w % 2 != 0 || h % 2 != 0 {
        return Err(Error::OddDimensions {
            width: w,
            height: h,
        });
    }
    Ok((w / 2) * (h / 2))
}

/// Bits a DCT embedding can carry: one per 8x8 block after padding.
pub fn dct_capacity(cover: &GrayImage) -> usize {
    let (w, h) = cover.dimensions();
    w.div_ceil(DCT_BLOCK) * h.div_ceil(DCT_BLOCK)
}

/// Quantizes one coefficient of the chosen Haar band per payload bit,
/// then reconstructs with rounding and clamping.
pub fn dwt_embed(cover: &GrayImage, payload: &BitPayload, params: &EmbedParams) -> Result<GrayImage> {
    params.validate_for_dwt()?;
    let mut bands = haar_forward(cover)?;
    let capacity = bands.coeff_count();
    if payload.len() > capacity {
        return Err(Error::CapacityExceeded {
            capacity,
            requested: payload.len(),
        });
    }
    let perm = keyed_permutation(params.key, capacity);
    let band = bands.band_mut(params.subband);
    for (k, &bit) in payload.bits().iter().enumerate() {
        let c = band[perm[k]] as f64;
        // Integral delta makes the lattice value exact; round only
        // guards the float-to-int conversion.
        band[perm[k]] = qim_embed_value(c, bit, params.delta).round() as i32;
    }
    Ok(haar_inverse_rounded(&bands))
}

/// Reads the lattice parity of the first `nbits` embedding positions.
pub fn dwt_extract(stego: &GrayImage, nbits: usize, params: &EmbedParams) -> Result<BitPayload> {
    params.validate_for_dwt()?;
    let bands = haar_forward(stego)?;
    let capacity = bands.coeff_count();
    if nbits > capacity {
        return Err(Error::CapacityExceeded {
            capacity,
            requested: nbits,
        });
    }
    let perm = keyed_permutation(params.key, capacity);
    let band = bands.band(params.subband);
    Ok(BitPayload::from_bits(
        (0..nbits)
            .map(|k| qim_extract_value(band[perm[k]] as f64, params.delta))
            .collect(),
    ))
}

/// Quantizes one mid-frequency coefficient per bit-carrying 8x8 block.
/// Blocks without a bit are copied through untouched, so an empty
/// payload returns the cover bit-identically.
pub fn dct_embed(cover: &GrayImage, payload: &BitPayload, params: &EmbedParams) -> Result<GrayImage> {
    params.validate_for_dct()?;
    let (mut blocks, geom) = partition_blocks(cover, DCT_BLOCK)?;
    let capacity = geom.block_count();
    if payload.len() > capacity {
        return Err(Error::CapacityExceeded {
            capacity,
            requested: payload.len(),
        });
    }
    let perm = keyed_permutation(params.key, capacity);
    let (u, v) = params.dct_pos;
    for (k, &bit) in payload.bits().iter().enumerate() {
        let block = &mut blocks[perm[k]];
        let mut coeffs = dct2(block);
        coeffs.set(u, v, qim_embed_value(coeffs.at(u, v), bit, params.delta));
        *block = idct2(&coeffs);
    }
    reassemble_blocks(&blocks, &geom)
}

/// Reads the lattice parity at dct_pos of the first `nbits` blocks in
/// embedding order.
pub fn dct_extract(stego: &GrayImage, nbits: usize, params: &EmbedParams) -> Result<BitPayload> {
    params.validate_for_dct()?;
    let (blocks, geom) = partition_blocks(stego, DCT_BLOCK)?;
    let capacity = geom.block_count();
    if nbits > capacity {
        return Err(Error::CapacityExceeded {
            capacity,
            requested: nbits,
        });
    }
    let perm = keyed_permutation(params.key, capacity);
    let (u, v) = params.dct_pos;
    Ok(BitPayload::from_bits(
        (0..nbits)
            .map(|k| qim_extract_value(dct2(&blocks[perm[k]]).at(u, v), params.delta))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gradient(w: usize, h: usize) -> GrayImage {
        GrayImage::from_fn(w, h, |x, y| (30 + (x * 5 + y * 3) % 196) as u8).unwrap()
    }

    fn pattern_bits(n: usize) -> BitPayload {
        BitPayload::from_bits((0..n).map(|k| k % 3 == 0 || k % 7 == 2).collect())
    }

    #[test]
    fn dwt_empty_payload_is_identity() {
        let cover = gradient(16, 16);
        let stego = dwt_embed(&cover, &BitPayload::from_bits(vec![]), &EmbedParams::dwt_defaults())
            .unwrap();
        assert_eq!(stego, cover);
    }

    #[test]
    fn dwt_round_trip_at_33_bits_and_full_capacity() {
        let cover = gradient(64, 64);
        let params = EmbedParams::dwt_defaults();
        for n in [33usize, 1024] {
            let payload = pattern_bits(n);
            let stego = dwt_embed(&cover, &payload, &params).unwrap();
            assert_eq!(stego.dimensions(), cover.dimensions());
            assert_eq!(dwt_extract(&stego, n, &params).unwrap(), payload);
        }
    }

    #[test]
    fn dwt_subband_and_key_must_match() {
        let cover = gradient(32, 32);
        let payload = pattern_bits(64);
        for subband in [Subband::Hl, Subband::Lh, Subband::Hh] {
            for key in [0u64, 0xdead_beef] {
                let params = EmbedParams {
                    subband,
                    key,
                    ..EmbedParams::dwt_defaults()
                };
                let stego = dwt_embed(&cover, &payload, &params).unwrap();
                assert_eq!(dwt_extract(&stego, 64, &params).unwrap(), payload);
            }
        }
    }

    #[test]
    fn dwt_rejects_bad_inputs() {
        let odd = GrayImage::new(3, 3, vec![0; 9]).unwrap();
        let params = EmbedParams::dwt_defaults();
        assert!(matches!(
            dwt_embed(&odd, &BitPayload::from_bits(vec![]), &params),
            Err(Error::OddDimensions { .. })
        ));

        let cover = gradient(64, 64);
        assert_eq!(
            dwt_embed(&cover, &BitPayload::from_bits(vec![false; 1025]), &params),
            Err(Error::CapacityExceeded { capacity: 1024, requested: 1025 })
        );
        assert!(matches!(
            dwt_extract(&cover, 1025, &params),
            Err(Error::CapacityExceeded { .. })
        ));

        for delta in [0.0, -8.0, 15.0, 8.5, f64::NAN] {
            let bad = EmbedParams { delta, ..params };
            assert!(matches!(
                dwt_embed(&cover, &pattern_bits(4), &bad),
                Err(Error::InvalidParams(_))
            ));
        }
    }

    #[test]
    fn dct_empty_payload_is_identity() {
        let cover = gradient(24, 24);
        let stego = dct_embed(&cover, &BitPayload::from_bits(vec![]), &EmbedParams::dct_defaults())
            .unwrap();
        assert_eq!(stego, cover);
    }

    #[test]
    fn dct_round_trip_on_aligned_cover() {
        let cover = gradient(64, 64);
        let params = EmbedParams::dct_defaults();
        let payload = pattern_bits(64);
        let stego = dct_embed(&cover, &payload, &params).unwrap();
        assert_eq!(stego.dimensions(), cover.dimensions());
        assert_eq!(dct_extract(&stego, 64, &params).unwrap(), payload);
    }

    #[test]
    fn dct_keyed_round_trip() {
        let cover = gradient(64, 64);
        let params = EmbedParams {
            key: 99,
            ..EmbedParams::dct_defaults()
        };
        let payload = pattern_bits(40);
        let stego = dct_embed(&cover, &payload, &params).unwrap();
        assert_eq!(dct_extract(&stego, 40, &params).unwrap(), payload);
    }

    #[test]
    fn dct_edge_blocks_flatten_after_crop() {
        // 17 columns: the third block column keeps only x=16 after the
        // crop, so its re-replicated form has no horizontal frequency
        // content and always decodes 0. Interior bits still survive.
        let cover = gradient(17, 16);
        let params = EmbedParams::dct_defaults();
        let payload = BitPayload::from_bits(vec![true, true, true]);
        let stego = dct_embed(&cover, &payload, &params).unwrap();
        let got = dct_extract(&stego, 3, &params).unwrap();
        assert_eq!(got.bits()[..2], [true, true]);
        assert!(!got.bits()[2]);
    }

    #[test]
    fn dct_rejects_bad_inputs() {
        let cover = gradient(16, 16);
        let params = EmbedParams::dct_defaults();
        assert_eq!(
            dct_embed(&cover, &BitPayload::from_bits(vec![false; 5]), &params),
            Err(Error::CapacityExceeded { capacity: 4, requested: 5 })
        );
        assert!(matches!(
            dct_extract(&cover, 5, &params),
            Err(Error::CapacityExceeded { .. })
        ));
        for dct_pos in [(0, 0), (8, 0), (0, 8)] {
            let bad = EmbedParams { dct_pos, ..params };
            assert!(matches!(
                dct_embed(&cover, &pattern_bits(2), &bad),
                Err(Error::InvalidParams(_))
            ));
        }
    }

    #[test]
    fn capacities() {
        assert_eq!(dwt_capacity(&gradient(64, 64)).unwrap(), 1024);
        assert!(dwt_capacity(&gradient(17, 16)).is_err());
        assert_eq!(dct_capacity(&gradient(512, 512)), 4096);
        assert_eq!(dct_capacity(&gradient(17, 16)), 6);
    }

    /// Midrange pixels keep reconstruction away from the clamp rails, so
    /// round trips are deterministic rather than statistical.
    fn arb_midrange_even_cover() -> impl Strategy<Value = GrayImage> {
        (4usize..=20, 4usize..=20).prop_flat_map(|(hw, hh)| {
            proptest::collection::vec(30u8..=225, 4 * hw * hh)
                .prop_map(move |px| GrayImage::new(2 * hw, 2 * hh, px).unwrap())
        })
    }

    proptest! {
        #[test]
        fn dwt_round_trip_property(
            (cover, payload, key) in arb_midrange_even_cover().prop_flat_map(|c| {
                let cap = (c.width() / 2) * (c.height() / 2);
                (
                    Just(c),
                    proptest::collection::vec(any::<bool>(), 0..=cap)
                        .prop_map(BitPayload::from_bits),
                    any::<u64>(),
                )
            })
        ) {
            let params = EmbedParams { key, ..EmbedParams::dwt_defaults() };
            let stego = dwt_embed(&cover, &payload, &params).unwrap();
            prop_assert_eq!(stego.dimensions(), cover.dimensions());
            prop_assert_eq!(dwt_extract(&stego, payload.len(), &params).unwrap(), payload);
        }

        #[test]
        fn dct_round_trip_property(
            (cover, payload, key) in (1usize..=4, 1usize..=4).prop_flat_map(|(bw, bh)| {
                (
                    proptest::collection::vec(30u8..=225, 64 * bw * bh)
                        .prop_map(move |px| GrayImage::new(8 * bw, 8 * bh, px).unwrap()),
                    proptest::collection::vec(any::<bool>(), 0..=bw * bh)
                        .prop_map(BitPayload::from_bits),
                    any::<u64>(),
                )
            })
        ) {
            let params = EmbedParams { key, ..EmbedParams::dct_defaults() };
            let stego = dct_embed(&cover, &payload, &params).unwrap();
            prop_assert_eq!(stego.dimensions(), cover.dimensions());
            prop_assert_eq!(dct_extract(&stego, payload.len(), &params).unwrap(), payload);
        }
    }
}
