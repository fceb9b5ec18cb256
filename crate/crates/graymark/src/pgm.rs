//! Bit-exact reader/writer for portable graymaps (PGM).
//!
//! Accepts binary `P5` and ASCII `P2` input with maxval 255 and `#`
//! comments between header tokens. Output is always canonical `P5`:
//! `P5\n{width} {height}\n255\n` followed by the raw bytes, so
//! `read_pgm(write_pgm(img)) == img` holds bit for bit.

use crate::error::{Error, Result};
use crate::image::GrayImage;

fn is_pnm_whitespace(b: u8) -> bool {
    matches!(b, b' ' | b'\t' | b'\r' | b'\n' | 0x0b | 0x0c)
}

struct Tokens<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    fn skip_space_and_comments(&mut self) {
        while self.pos < self.data.len() {
            let b = self.data[self.pos];
            if is_pnm_whitespace(b) {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Option<&'a [u8]> {
        self.skip_space_and_comments();
        if self.pos >= self.data.len() {
            return None;
        }
        let start = self.pos;
        while self.pos < self.data.len()
            && !is_pnm_whitespace(self.data[self.pos])
            && self.data[self.pos] != b'#'
        {
            self.pos += 1;
        }
        Some(&self.data[start..self.pos])
    }

    fn next_number(&mut self, what: &str) -> Result<u32> {
        let tok = self
            .next()
            .ok_or_else(|| Error::MalformedHeader(format!("missing {what}")))?;
        let s = std::str::from_utf8(tok)
            .map_err(|_| Error::MalformedHeader(format!("non-ASCII {what}")))?;
        s.parse::<u32>()
            .map_err(|_| Error::MalformedHeader(format!("bad {what} token {s:?}")))
    }
}

/// Parses a PGM byte stream (binary `P5` or ASCII `P2`, maxval 255).
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut tokens = Tokens::new(bytes);
    let magic = tokens
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let binary = match magic {
        b"P5" => true,
        b"P2" => false,
        other => {
            return Err(Error::MalformedHeader(format!(
                "bad magic {:?}",
                String::from_utf8_lossy(other)
            )))
        }
    };

    let width = tokens.next_number("width")? as usize;
    let height = tokens.next_number("height")? as usize;
    let maxval = tokens.next_number("maxval")?;
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval(maxval));
    }
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "zero dimension {width}x{height}"
        )));
    }
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedHeader(format!("{width}x{height} overflows")))?;

    let pixels = if binary {
        // Exactly one whitespace byte separates the maxval from the raster.
        if tokens.pos >= bytes.len() || !is_pnm_whitespace(bytes[tokens.pos]) {
            return Err(Error::MalformedHeader(
                "missing whitespace before raster data".into(),
            ));
        }
        let data = &bytes[tokens.pos + 1..];
        if data.len() < expected {
            return Err(Error::TruncatedData {
                expected,
                got: data.len(),
            });
        }
        data[..expected].to_vec()
    } else {
        let mut pixels = Vec::with_capacity(expected);
        while pixels.len() < expected {
            let Some(tok) = tokens.next() else {
                return Err(Error::TruncatedData {
                    expected,
                    got: pixels.len(),
                });
            };
            let s = std::str::from_utf8(tok)
                .map_err(|_| Error::MalformedHeader("non-ASCII sample".into()))?;
            let v = s
                .parse::<u32>()
                .map_err(|_| Error::MalformedHeader(format!("bad sample token {s:?}")))?;
            if v > 255 {
                return Err(Error::MalformedHeader(format!("sample {v} exceeds maxval")));
            }
            pixels.push(v as u8);
        }
        pixels
    };

    GrayImage::new(width, height, pixels)
}

/// Serializes an image as canonical binary PGM.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}
