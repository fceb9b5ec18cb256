//! 2-D DCT-II and its DCT-III inverse on square pixel blocks, plus the
//! block partition/reassembly used by the 8x8 embedding pipeline.
//!
//! The orthonormal kernel is
//!
//! ```text
//! DCT(i,j) = alpha(i) alpha(j) sum_x sum_y f(x,y)
//!            cos[pi (2x+1) i / 2N] cos[pi (2y+1) j / 2N]
//! ```
//!
//! with alpha(0) = sqrt(1/N) and alpha(k) = sqrt(2/N) otherwise. Both
//! directions are computed separably (rows then columns, O(n^3)); the
//! direct double-sum is the reference the tests compare against.
//!
//! Index convention everywhere: the first index is horizontal (x for
//! pixels, i for frequencies), storage is row-major, so entry (i, j)
//! lives at offset j*n + i.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// An n x n block of real-valued samples, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelBlock {
    n: usize,
    values: Vec<f64>,
}

impl PixelBlock {
    pub fn new(n: usize, values: Vec<f64>) -> Self {
        assert!(n >= 1, "block size must be at least 1");
        assert_eq!(values.len(), n * n, "block needs n*n samples");
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.n + x]
    }
}

/// An n x n block of DCT coefficients, row-major, always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffBlock {
    n: usize,
    coeffs: Vec<f64>,
}

impl CoeffBlock {
    pub fn new(n: usize, coeffs: Vec<f64>) -> Self {
        assert!(n >= 1, "block size must be at least 1");
        assert_eq!(coeffs.len(), n * n, "block needs n*n coefficients");
        assert!(
            coeffs.iter().all(|c| c.is_finite()),
            "coefficients must be finite"
        );
        Self { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient at horizontal frequency `i`, vertical frequency `j`.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.coeffs[j * self.n + i]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        assert!(value.is_finite(), "coefficients must be finite");
        self.coeffs[j * self.n + i] = value;
    }
}

/// basis[i*n + x] = alpha(i) cos(pi (2x+1) i / 2n); its rows are
/// orthonormal, so the same table drives both transform directions.
fn basis(n: usize) -> Vec<f64> {
    let mut table = vec![0.0; n * n];
    for i in 0..n {
        let alpha = if i == 0 {
            (1.0 / n as f64).sqrt()
        } else {
            (2.0 / n as f64).sqrt()
        };
        for x in 0..n {
            let angle = std::f64::consts::PI * (2 * x + 1) as f64 * i as f64 / (2 * n) as f64;
            table[i * n + x] = alpha * angle.cos();
        }
    }
    table
}

/// Forward DCT-II, separable: rows first, then columns.
pub fn dct2(block: &PixelBlock) -> CoeffBlock {
    let n = block.n;
    let basis = basis(n);
    // rows[y*n + i] = sum_x basis[i][x] f(x,y)
    let mut rows = vec![0.0; n * n];
    for y in 0..n {
        for i in 0..n {
            rows[y * n + i] = (0..n)
                .map(|x| basis[i * n + x] * block.values[y * n + x])
                .sum();
        }
    }
    let mut coeffs = vec![0.0; n * n];
    for j in 0..n {
        for i in 0..n {
            coeffs[j * n + i] = (0..n).map(|y| basis[j * n + y] * rows[y * n + i]).sum();
        }
    }
    CoeffBlock::new(n, coeffs)
}

/// Inverse (DCT-III), separable; exact companion of `dct2` up to
/// floating-point rounding.
pub fn idct2(coeffs: &CoeffBlock) -> PixelBlock {
    let n = coeffs.n;
    let basis = basis(n);
    // cols[j*n + x] = sum_i basis[i][x] C(i,j)
    let mut cols = vec![0.0; n * n];
    for j in 0..n {
        for x in 0..n {
            cols[j * n + x] = (0..n)
                .map(|i| basis[i * n + x] * coeffs.coeffs[j * n + i])
                .sum();
        }
    }
    let mut values = vec![0.0; n * n];
    for y in 0..n {
        for x in 0..n {
            values[y * n + x] = (0..n).map(|j| basis[j * n + y] * cols[j * n + x]).sum();
        }
    }
    PixelBlock::new(n, values)
}

/// Where the blocks of a partitioned image came from, including the
/// replication padding that reassembly crops away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockGeometry {
    orig_w: usize,
    orig_h: usize,
    n: usize,
    blocks_x: usize,
    blocks_y: usize,
}

impl BlockGeometry {
    pub fn orig_dims(&self) -> (usize, usize) {
        (self.orig_w, self.orig_h)
    }

    pub fn padded_dims(&self) -> (usize, usize) {
        (self.blocks_x * self.n, self.blocks_y * self.n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_count(&self) -> usize {
        self.blocks_x * self.blocks_y
    }
}

/// Splits an image into n x n blocks in raster order, padding the right
/// and bottom edges by replicating the outermost pixels.
pub fn partition_blocks(img: &GrayImage, n: usize) -> Result<(Vec<PixelBlock>, BlockGeometry)> {
    if n == 0 {
        return Err(Error::InvalidParams("block size must be at least 1".into()));
    }
    let (w, h) = img.dimensions();
    let geom = BlockGeometry {
        orig_w: w,
        orig_h: h,
        n,
        blocks_x: w.div_ceil(n),
        blocks_y: h.div_ceil(n),
    };
    let mut blocks = Vec::with_capacity(geom.block_count());
    for by in 0..geom.blocks_y {
        for bx in 0..geom.blocks_x {
            let mut values = Vec::with_capacity(n * n);
            for dy in 0..n {
                let sy = (by * n + dy).min(h - 1);
                for dx in 0..n {
                    let sx = (bx * n + dx).min(w - 1);
                    values.push(img.pixel(sx, sy) as f64);
                }
            }
            blocks.push(PixelBlock::new(n, values));
        }
    }
    Ok((blocks, geom))
}

/// Rounds (half away from zero), clamps to [0,255], stitches the blocks
/// back together and crops off the padding.
pub fn reassemble_blocks(blocks: &[PixelBlock], geom: &BlockGeometry) -> Result<GrayImage> {
    if blocks.len() != geom.block_count() {
        return Err(Error::LengthMismatch {
            expected: geom.block_count(),
            got: blocks.len(),
        });
    }
    if let Some(bad) = blocks.iter().find(|b| b.n != geom.n) {
        return Err(Error::InvalidParams(format!(
            "block size {} does not match geometry {}",
            bad.n, geom.n
        )));
    }
    let n = geom.n;
    let (w, h) = (geom.orig_w, geom.orig_h);
    let mut pixels = vec![0u8; w * h];
    for (bi, block) in blocks.iter().enumerate() {
        let (bx, by) = (bi % geom.blocks_x, bi / geom.blocks_x);
        for dy in 0..n {
            let y = by * n + dy;
            if y >= h {
                break;
            }
            for dx in 0..n {
                let x = bx * n + dx;
                if x >= w {
                    break;
                }
                let v = block.values[dy * n + dx].round().clamp(0.0, 255.0);
                pixels[y * w + x] = v as u8;
            }
        }
    }
    GrayImage::new(w, h, pixels)
}
