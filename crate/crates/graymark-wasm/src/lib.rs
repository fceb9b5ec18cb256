//! Browser bindings for the watermarking toolkit.
//!
//! The demo page works on raw grayscale buffers (one byte per pixel,
//! row-major), so every entry point takes `&[u8]` plus dimensions and
//! returns owned buffers. Errors cross the boundary as strings.
//!
//! Difference expansion is deliberately not exposed: its restoration
//! sidecar needs file plumbing that a single-page demo has no use for.

use graymark::{embed_image, extract_watermark_image, quality, EmbedParams, GrayImage, Method};
use wasm_bindgen::prelude::*;

fn image_from_raw(pixels: &[u8], width: u32, height: u32, what: &str) -> Result<GrayImage, String> {
    GrayImage::new(width as usize, height as usize, pixels.to_vec())
        .map_err(|e| format!("{what}: {e}"))
}

fn parse_method(method: &str) -> Result<Method, String> {
    let m: Method = method.parse().map_err(|e: graymark::Error| e.to_string())?;
    if m == Method::De {
        return Err("difference expansion needs a sidecar file; use lsb, dwt or dct here".into());
    }
    Ok(m)
}

fn build_params(method: Method, delta: Option<f64>, key: &str) -> Result<EmbedParams, String> {
    let mut p = match method {
        Method::Dwt => EmbedParams::dwt_defaults(),
        _ => EmbedParams::dct_defaults(),
    };
    if let Some(d) = delta {
        p.delta = d;
    }
    let key = key.trim();
    if !key.is_empty() {
        p.key = key.parse().map_err(|e| format!("key must be a decimal 64-bit integer: {e}"))?;
    }
    Ok(p)
}

/// Embeds a watermark image into a cover and returns the stego pixels.
/// `delta` falls back to the method default (8 for dct, 16 for dwt) when
/// omitted; `key` is a decimal integer, empty meaning 0.
///
/// The flat argument list is the JS-facing ABI: two buffers plus their
/// dimensions cannot be bundled without extra glue objects.
#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn embed(
    cover: &[u8],
    cover_width: u32,
    cover_height: u32,
    watermark: &[u8],
    wm_width: u32,
    wm_height: u32,
    method: &str,
    delta: Option<f64>,
    key: &str,
) -> Result<Vec<u8>, String> {
    let m = parse_method(method)?;
    let c = image_from_raw(cover, cover_width, cover_height, "cover")?;
    let w = image_from_raw(watermark, wm_width, wm_height, "watermark")?;
    let params = build_params(m, delta, key)?;
    let outcome = embed_image(&c, &w, m, &params).map_err(|e| e.to_string())?;
    Ok(outcome.stego.into_pixels())
}

/// A recovered watermark: binary pixels (0 or 255) plus its dimensions,
/// decoded from the 32-bit header that `embed` placed in front.
#[wasm_bindgen]
pub struct Extracted {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

#[wasm_bindgen]
impl Extracted {
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[wasm_bindgen(getter)]
    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> Vec<u8> {
        self.pixels.clone()
    }
}

/// Recovers the embedded watermark from a stego image.
#[wasm_bindgen]
pub fn extract(
    stego: &[u8],
    width: u32,
    height: u32,
    method: &str,
    delta: Option<f64>,
    key: &str,
) -> Result<Extracted, String> {
    let m = parse_method(method)?;
    let s = image_from_raw(stego, width, height, "stego")?;
    let params = build_params(m, delta, key)?;
    let wm = extract_watermark_image(&s, m, &params, None).map_err(|e| e.to_string())?;
    Ok(Extracted {
        width: wm.width() as u32,
        height: wm.height() as u32,
        pixels: wm.into_pixels(),
    })
}

/// Distortion report between two same-size images as a JSON string:
/// `{"mse": ..., "psnr_db": ..., "max_abs_diff": ...}`.
#[wasm_bindgen(js_name = qualityJson)]
pub fn quality_json(a: &[u8], b: &[u8], width: u32, height: u32) -> Result<String, String> {
    let ia = image_from_raw(a, width, height, "first image")?;
    let ib = image_from_raw(b, width, height, "second image")?;
    Ok(quality(&ia, &ib).map_err(|e| e.to_string())?.to_json())
}
