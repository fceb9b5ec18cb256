//! Grayscale image watermarking over PGM rasters.
//!
//! Four embedding methods share one payload model (a binarized watermark
//! image behind a 32-bit dimension header):
//!
//! * `lsb` - spatial least-significant-bit replacement, 1 bit per pixel.
//! * `de` - Tian difference expansion in horizontal pixel pairs;
//!   reversible, extraction also restores the cover bit-exactly using a
//!   sidecar location map.
//! * `dwt` - QIM on a detail band of a single-level integer Haar
//!   decomposition, 1 bit per 2x2 block.
//! * `dct` - QIM on one mid-frequency coefficient per 8x8 DCT block.
//!
//! Extraction is blind for every method (`de` needs its sidecar, none
//! need the cover). The `metrics` module measures distortion (MSE/PSNR),
//! robustness (BER) and per-method capacity.
//!
//! The low-level pieces (transforms, QIM, the keyed permutation) are
//! public; `embed_image`, `extract_payload` and `extract_watermark_image`
//! tie them together for whole-image workflows.

pub mod dct;
pub mod error;
pub mod expansion;
pub mod freq;
pub mod haar;
pub mod image;
pub mod lsb;
pub mod metrics;
pub mod payload;
pub mod perm;
pub mod pgm;
pub mod qim;

use std::fmt;
use std::str::FromStr;

pub use dct::{dct2, idct2, partition_blocks, reassemble_blocks, BlockGeometry, CoeffBlock, PixelBlock};
pub use error::{Error, Result};
pub use expansion::{de_capacity, de_embed, de_extract_restore, de_is_expandable, DeMetadata, PixelPair};
pub use freq::{dct_capacity, dct_embed, dct_extract, dwt_capacity, dwt_embed, dwt_extract, EmbedParams, DCT_BLOCK};
pub use haar::{haar_forward, haar_inverse, haar_inverse_rounded, SubBands, Subband};
pub use image::GrayImage;
pub use lsb::{lsb_embed, lsb_extract};
pub use metrics::{ber, capacity, histogram, histogram_csv, mse, psnr, quality, QualityReport};
pub use payload::{header_dims, image_from_payload, payload_from_image, BitPayload, BINARIZE_THRESHOLD, HEADER_BITS};
pub use perm::{keyed_permutation, XorShift64};
pub use pgm::{read_pgm, write_pgm};
pub use qim::{qim_embed_value, qim_extract_value};

/// The four embedding techniques.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Lsb,
    De,
    Dwt,
    Dct,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lsb" => Ok(Method::Lsb),
            "de" => Ok(Method::De),
            "dwt" => Ok(Method::Dwt),
            "dct" => Ok(Method::Dct),
            other => Err(Error::InvalidParams(format!(
                "unknown method {other:?}, expected lsb, de, dwt or dct"
            ))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Lsb => "lsb",
            Method::De => "de",
            Method::Dwt => "dwt",
            Method::Dct => "dct",
        })
    }
}

/// Result of embedding a watermark image: the stego image, plus the
/// restoration metadata when the method produces one (only `de` does).
#[derive(Debug, Clone, PartialEq)]
pub struct EmbedOutcome {
    pub stego: GrayImage,
    pub meta: Option<DeMetadata>,
}

/// Serializes the watermark image and embeds it with the chosen method.
pub fn embed_image(
    cover: &GrayImage,
    watermark: &GrayImage,
    method: Method,
    params: &EmbedParams,
) -> Result<EmbedOutcome> {
    let payload = payload_from_image(watermark)?;
    let (stego, meta) = match method {
        Method::Lsb => (lsb_embed(cover, &payload)?, None),
        Method::De => {
            let (stego, meta) = de_embed(cover, &payload)?;
            (stego, Some(meta))
        }
        Method::Dwt => (dwt_embed(cover, &payload, params)?, None),
        Method::Dct => (dct_embed(cover, &payload, params)?, None),
    };
    Ok(EmbedOutcome { stego, meta })
}

/// Recovers payload bits from a stego image.
///
/// With `nbits` given, exactly that many bits are read. Otherwise the
/// first 32 bits are decoded as the watermark dimension header and the
/// full payload length follows from it. Difference expansion instead
/// takes its bit count from the required sidecar metadata, truncated
/// when `nbits` asks for less.
pub fn extract_payload(
    stego: &GrayImage,
    method: Method,
    params: &EmbedParams,
    nbits: Option<usize>,
    meta: Option<&DeMetadata>,
) -> Result<BitPayload> {
    if method == Method::De {
        let meta = meta.ok_or_else(|| {
            Error::InvalidParams("difference-expansion extraction needs the sidecar metadata".into())
        })?;
        let (bits, _) = de_extract_restore(stego, meta)?;
        return match nbits {
            None => Ok(bits),
            Some(n) if n <= bits.len() => Ok(bits.truncated(n)),
            Some(n) => Err(Error::CapacityExceeded {
                capacity: bits.len(),
                requested: n,
            }),
        };
    }
    let read = |n: usize| match method {
        Method::Lsb => lsb_extract(stego, n),
        Method::Dwt => dwt_extract(stego, n, params),
        Method::Dct => dct_extract(stego, n, params),
        Method::De => unreachable!("handled above"),
    };
    match nbits {
        Some(n) => read(n),
        None => {
            let header = read(HEADER_BITS)?;
            let (w, h) = header_dims(header.bits())?;
            read(HEADER_BITS + w * h)
        }
    }
}

/// Extracts and materializes the embedded watermark as a binary image.
pub fn extract_watermark_image(
    stego: &GrayImage,
    method: Method,
    params: &EmbedParams,
    meta: Option<&DeMetadata>,
) -> Result<GrayImage> {
    let payload = extract_payload(stego, method, params, None, meta)?;
    image_from_payload(&payload)
}
