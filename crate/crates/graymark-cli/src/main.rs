//! `graymark`: watermark embedding, extraction, cover restoration and
//! measurement over PGM files.
//!
//! All outputs are written atomically (temp file in the destination
//! directory, then rename); a failing command leaves no output files.
//! Exit codes: 0 success, 1 I/O, 2 usage, 3 malformed input data,
//! 4 capacity, 5 geometry or metadata mismatch.

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use graymark::{
    capacity, de_extract_restore, embed_image, extract_payload, extract_watermark_image,
    histogram, histogram_csv, quality, read_pgm, write_pgm, DeMetadata, EmbedParams, Error,
    GrayImage, Method, Subband,
};

#[derive(Parser)]
#[command(name = "graymark", version, about = "Grayscale image watermarking over PGM files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hide a watermark image inside a cover image.
    Embed {
        /// Embedding method: lsb, de, dwt or dct.
        #[arg(long, value_parser = parse_method)]
        method: Method,
        /// Cover image (PGM, P5 or P2).
        #[arg(long)]
        cover: PathBuf,
        /// Watermark image; binarized at threshold 128 before embedding.
        #[arg(long)]
        watermark: PathBuf,
        /// Stego image destination (PGM P5).
        #[arg(long)]
        out: PathBuf,
        /// Restoration sidecar destination, de only (default: OUT + ".dem").
        #[arg(long)]
        meta: Option<PathBuf>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Recover the embedded watermark from a stego image.
    Extract {
        /// Embedding method: lsb, de, dwt or dct.
        #[arg(long, value_parser = parse_method)]
        method: Method,
        /// Stego image (PGM, P5 or P2).
        #[arg(long)]
        stego: PathBuf,
        /// Recovered watermark destination: PGM P5, or ASCII bits with --nbits.
        #[arg(long)]
        out: PathBuf,
        /// Restoration sidecar, de only (default: STEGO + ".dem").
        #[arg(long)]
        meta: Option<PathBuf>,
        /// Read exactly this many raw bits instead of decoding the
        /// dimension header; OUT then holds one '0'/'1' per bit.
        #[arg(long)]
        nbits: Option<usize>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Rebuild the original cover from a difference-expansion stego image.
    Restore {
        /// Stego image produced by `embed --method de`.
        #[arg(long)]
        stego: PathBuf,
        /// Restoration sidecar (default: STEGO + ".dem").
        #[arg(long)]
        meta: Option<PathBuf>,
        /// Restored cover destination (PGM P5).
        #[arg(long)]
        out: PathBuf,
    },
    /// Print distortion metrics between two same-size images as JSON.
    Metrics {
        /// Reference image, typically the cover.
        #[arg(long)]
        cover: PathBuf,
        /// Image under test, typically the stego.
        #[arg(long)]
        stego: PathBuf,
    },
    /// Write an image's 256-bin intensity histogram as "value,count" CSV.
    Histogram {
        /// Image to measure.
        #[arg(long)]
        image: PathBuf,
        /// CSV destination.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print how many payload bits a cover can hold with a method.
    Capacity {
        /// Embedding method: lsb, de, dwt or dct.
        #[arg(long, value_parser = parse_method)]
        method: Method,
        /// Cover image (PGM, P5 or P2).
        #[arg(long)]
        cover: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
}

/// Transform-domain tuning; ignored by lsb and de.
#[derive(Args, Clone)]
struct ParamArgs {
    /// QIM step (default: 8 for dct, 16 for dwt).
    #[arg(long)]
    delta: Option<f64>,
    /// Haar detail band carrying the bits: hl, lh or hh.
    #[arg(long, default_value = "hl", value_parser = parse_subband)]
    subband: Subband,
    /// DCT coefficient position inside each 8x8 block.
    #[arg(long, value_name = "U,V", default_value = "4,3", value_parser = parse_dct_pos)]
    dct_pos: (usize, usize),
    /// Bit-position shuffle key, decimal (0 = no shuffle).
    #[arg(long, default_value_t = 0)]
    key: u64,
}

impl ParamArgs {
    fn resolve(&self, method: Method) -> EmbedParams {
        EmbedParams {
            delta: self.delta.unwrap_or(match method {
                Method::Dwt => 16.0,
                _ => 8.0,
            }),
            dct_pos: self.dct_pos,
            subband: self.subband,
            key: self.key,
        }
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_subband(s: &str) -> Result<Subband, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_dct_pos(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s
        .split_once(',')
        .ok_or_else(|| "expected two comma-separated indices, e.g. 4,3".to_string())?;
    let u = u.trim().parse().map_err(|e| format!("bad horizontal index: {e}"))?;
    let v = v.trim().parse().map_err(|e| format!("bad vertical index: {e}"))?;
    Ok((u, v))
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Lib(Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) => 1,
            Failure::Lib(e) => match e {
                Error::InvalidParams(_) => 2,
                Error::MalformedHeader(_)
                | Error::UnsupportedMaxval(_)
                | Error::TruncatedData { .. }
                | Error::BadHeader(_)
                | Error::LengthMismatch { .. }
                | Error::BadMetadata(_)
                | Error::InvalidImage(_) => 3,
                Error::CapacityExceeded { .. } | Error::DimensionOverflow { .. } => 4,
                Error::OddDimensions { .. }
                | Error::DimensionMismatch { .. }
                | Error::GeometryMismatch { .. }
                | Error::MapInconsistent(_)
                | Error::RangeViolation { .. } => 5,
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Lib(e) => e.fmt(f),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn load_pgm(path: &Path) -> Result<GrayImage, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Io(path.into(), e))?;
    Ok(read_pgm(&bytes)?)
}

fn load_meta(path: &Path) -> Result<DeMetadata, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Io(path.into(), e))?;
    Ok(DeMetadata::from_bytes(&bytes)?)
}

fn sidecar_path(stego: &Path) -> PathBuf {
    let mut name = stego.as_os_str().to_os_string();
    name.push(".dem");
    PathBuf::from(name)
}

/// Stages every output in a temp file first, then renames them into
/// place, so a failure anywhere leaves no destination file behind.
fn write_outputs(outputs: &[(&Path, &[u8])]) -> Result<(), Failure> {
    let mut staged = Vec::with_capacity(outputs.len());
    for (path, bytes) in outputs {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let stage = || -> std::io::Result<tempfile::NamedTempFile> {
            let mut tmp = tempfile::Builder::new()
                .prefix(".graymark-")
                .tempfile_in(dir)?;
            tmp.write_all(bytes)?;
            tmp.flush()?;
            Ok(tmp)
        };
        staged.push((*path, stage().map_err(|e| Failure::Io(path.into(), e))?));
    }
    let mut done: Vec<&Path> = Vec::with_capacity(staged.len());
    for (path, tmp) in staged {
        match tmp.persist(path) {
            Ok(_) => done.push(path),
            Err(e) => {
                for p in done {
                    let _ = fs::remove_file(p);
                }
                return Err(Failure::Io(path.into(), e.error));
            }
        }
    }
    Ok(())
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Embed { method, cover, watermark, out, meta, params } => {
            let cover = load_pgm(&cover)?;
            let wm = load_pgm(&watermark)?;
            let outcome = embed_image(&cover, &wm, method, &params.resolve(method))?;
            let stego_bytes = write_pgm(&outcome.stego);
            match outcome.meta {
                Some(m) => {
                    let meta_path = meta.unwrap_or_else(|| sidecar_path(&out));
                    write_outputs(&[(&out, &stego_bytes), (&meta_path, &m.to_bytes())])
                }
                None => write_outputs(&[(&out, &stego_bytes)]),
            }
        }
        Command::Extract { method, stego, out, meta, nbits, params } => {
            let stego_img = load_pgm(&stego)?;
            let de_meta = match method {
                Method::De => Some(load_meta(&meta.unwrap_or_else(|| sidecar_path(&stego)))?),
                _ => None,
            };
            let params = params.resolve(method);
            match nbits {
                Some(n) => {
                    let bits =
                        extract_payload(&stego_img, method, &params, Some(n), de_meta.as_ref())?;
                    let mut text = String::with_capacity(bits.len() + 1);
                    text.extend(bits.bits().iter().map(|&b| if b { '1' } else { '0' }));
                    text.push('\n');
                    write_outputs(&[(&out, text.as_bytes())])
                }
                None => {
                    let wm =
                        extract_watermark_image(&stego_img, method, &params, de_meta.as_ref())?;
                    write_outputs(&[(&out, &write_pgm(&wm))])
                }
            }
        }
        Command::Restore { stego, meta, out } => {
            let stego_img = load_pgm(&stego)?;
            let m = load_meta(&meta.unwrap_or_else(|| sidecar_path(&stego)))?;
            let (_, cover) = de_extract_restore(&stego_img, &m)?;
            write_outputs(&[(&out, &write_pgm(&cover))])
        }
        Command::Metrics { cover, stego } => {
            let a = load_pgm(&cover)?;
            let b = load_pgm(&stego)?;
            println!("{}", quality(&a, &b)?.to_json());
            Ok(())
        }
        Command::Histogram { image, out } => {
            let img = load_pgm(&image)?;
            let csv = histogram_csv(&histogram(&img));
            write_outputs(&[(&out, csv.as_bytes())])
        }
        Command::Capacity { method, cover, params } => {
            let img = load_pgm(&cover)?;
            println!("{}", capacity(method, &img, &params.resolve(method))?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("graymark: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
