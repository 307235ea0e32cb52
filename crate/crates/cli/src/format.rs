//! QF2D and ST4D grid files.
//!
//! Layout, all little-endian: 4-byte magic, `u32` version, one `u32` size per
//! axis, one `f64` spacing per axis, `u32` element width in reals, then the
//! payload of `f64` coefficients in sample order. QF2D samples are `(r,i,j,k)`
//! with `x` fastest; ST4D samples are the 16 `Cl(3,1)` blade coefficients in
//! bitmask order (`e1 = 1, e2 = 2, e3 = 4, e0 = 8`) with `z` fastest.

use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use hyperfourier::clifford::{Multivector, Signature};
use hyperfourier::qft2d::{QSpectrum2D, QuaternionField2D};
use hyperfourier::spacetime::{STSpectrum4D, SpacetimeField4D};
use hyperfourier::Quaternion;
use thiserror::Error;

pub const VERSION: u32 = 1;
pub const QF2D_MAGIC: [u8; 4] = *b"QF2D";
pub const ST4D_MAGIC: [u8; 4] = *b"ST4D";
pub const QF2D_WIDTH: u32 = 4;
pub const ST4D_WIDTH: u32 = 16;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("byte offset {offset}: {message}")]
    Malformed { offset: usize, message: String },
    #[error(transparent)]
    Grid(#[from] hyperfourier::Error),
}

fn malformed(offset: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed { offset, message: message.into() }
}

/// Contents of a grid file. Fields and spectra share the layout.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Q2(QuaternionField2D),
    S4(SpacetimeField4D),
}

impl Grid {
    pub fn kind(&self) -> &'static str {
        match self {
            Grid::Q2(_) => "qf2d",
            Grid::S4(_) => "st4d",
        }
    }
}

impl From<QSpectrum2D> for Grid {
    fn from(s: QSpectrum2D) -> Self {
        let (dx, dy) = s.spacing();
        let (m, n) = (s.width(), s.height());
        Grid::Q2(QuaternionField2D::with_spacing(m, n, dx, dy, s.into_data()).expect("same shape"))
    }
}

impl From<STSpectrum4D> for Grid {
    fn from(s: STSpectrum4D) -> Self {
        let (dims, spacing) = (s.dims(), s.spacing());
        Grid::S4(SpacetimeField4D::with_spacing(dims, spacing, s.into_data()).expect("same shape"))
    }
}

pub fn to_q2_spectrum(f: &QuaternionField2D) -> QSpectrum2D {
    let (dx, dy) = f.spacing();
    QSpectrum2D::with_spacing(f.width(), f.height(), dx, dy, f.data().to_vec()).expect("same shape")
}

pub fn to_s4_spectrum(f: &SpacetimeField4D) -> STSpectrum4D {
    STSpectrum4D::with_spacing(f.dims(), f.spacing(), f.data().to_vec()).expect("same shape")
}

pub fn encode(grid: &Grid) -> Vec<u8> {
    let mut out = Vec::new();
    let (magic, sizes, spacings, width): (_, Vec<usize>, Vec<f64>, _) = match grid {
        Grid::Q2(f) => {
            let (dx, dy) = f.spacing();
            (QF2D_MAGIC, vec![f.width(), f.height()], vec![dx, dy], QF2D_WIDTH)
        }
        Grid::S4(f) => (ST4D_MAGIC, f.dims().to_vec(), f.spacing().to_vec(), ST4D_WIDTH),
    };
    out.extend_from_slice(&magic);
    out.extend_from_slice(&VERSION.to_le_bytes());
    for s in &sizes {
        out.extend_from_slice(&(*s as u32).to_le_bytes());
    }
    for h in &spacings {
        out.extend_from_slice(&h.to_le_bytes());
    }
    out.extend_from_slice(&width.to_le_bytes());
    match grid {
        Grid::Q2(f) => {
            for q in f.data() {
                for c in q.to_array() {
                    out.extend_from_slice(&c.to_le_bytes());
                }
            }
        }
        Grid::S4(f) => {
            for m in f.data() {
                for c in m.coeffs() {
                    out.extend_from_slice(&c.to_le_bytes());
                }
            }
        }
    }
    out
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8], FormatError> {
        if self.bytes.len() - self.pos < n {
            return Err(malformed(self.pos, format!("truncated {what}")));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self, what: &str) -> Result<u32, FormatError> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn f64(&mut self, what: &str) -> Result<f64, FormatError> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

pub fn decode(bytes: &[u8]) -> Result<Grid, FormatError> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic: [u8; 4] = cur.take(4, "magic")?.try_into().unwrap();
    let (rank, width) = match magic {
        QF2D_MAGIC => (2, QF2D_WIDTH),
        ST4D_MAGIC => (4, ST4D_WIDTH),
        _ => return Err(malformed(0, format!("unknown magic {:?}", String::from_utf8_lossy(&magic)))),
    };
    let version = cur.u32("version")?;
    if version != VERSION {
        return Err(malformed(4, format!("unsupported version {version}")));
    }
    let mut sizes = Vec::with_capacity(rank);
    for _ in 0..rank {
        let at = cur.pos;
        let s = cur.u32("dimension size")?;
        if s == 0 {
            return Err(malformed(at, "dimension size must be positive"));
        }
        sizes.push(s as usize);
    }
    let mut spacings = Vec::with_capacity(rank);
    for _ in 0..rank {
        spacings.push(cur.f64("spacing")?);
    }
    let at = cur.pos;
    let w = cur.u32("element width")?;
    if w != width {
        return Err(malformed(at, format!("element width {w}, expected {width}")));
    }
    let samples = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
    let expected = samples
        .and_then(|s| s.checked_mul(width as usize * 8))
        .ok_or_else(|| malformed(at, "dimensions overflow"))?;
    let payload = bytes.len() - cur.pos;
    if payload != expected {
        return Err(malformed(cur.pos, format!("payload is {payload} bytes, expected {expected}")));
    }
    let mut reals = Vec::with_capacity(expected / 8);
    for _ in 0..expected / 8 {
        reals.push(cur.f64("payload")?);
    }
    Ok(match rank {
        2 => {
            let data = reals.chunks_exact(4).map(|c| Quaternion::from_array([c[0], c[1], c[2], c[3]])).collect();
            Grid::Q2(QuaternionField2D::with_spacing(sizes[0], sizes[1], spacings[0], spacings[1], data)?)
        }
        _ => {
            let data = reals
                .chunks_exact(16)
                .map(|c| Multivector::from_coeffs(Signature::CL31, c))
                .collect::<Result<Vec<_>, _>>()?;
            let dims = [sizes[0], sizes[1], sizes[2], sizes[3]];
            let spacing = [spacings[0], spacings[1], spacings[2], spacings[3]];
            Grid::S4(SpacetimeField4D::with_spacing(dims, spacing, data)?)
        }
    })
}

pub fn read_grid(path: &Path) -> Result<Grid, FormatError> {
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|source| FormatError::Io { path: path.to_owned(), source })?;
    decode(&bytes)
}

pub fn write_grid(path: &Path, grid: &Grid) -> Result<(), FormatError> {
    write_atomic(path, &encode(grid))
}

/// Writes to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), FormatError> {
    let io_err = |source| FormatError::Io { path: path.to_owned(), source };
    let name = path.file_name().ok_or_else(|| io_err(io::Error::other("output path has no file name")))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = File::create(&tmp).and_then(|file| {
        let mut w = BufWriter::new(file);
        w.write_all(bytes)?;
        w.into_inner().map_err(|e| e.into_error())?.sync_all()
    });
    if let Err(e) = result.and_then(|_| fs::rename(&tmp, path)) {
        let _ = fs::remove_file(&tmp);
        return Err(io_err(e));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qf2d_round_trip_is_bit_exact() {
        let f = QuaternionField2D::with_spacing(3, 2, 0.5, 2.0, (0..6).map(|k| Quaternion::new(k as f64, -0.1, 1e-300, f64::MIN_POSITIVE)).collect()).unwrap();
        let grid = Grid::Q2(f);
        assert_eq!(decode(&encode(&grid)).unwrap(), grid);
    }

    #[test]
    fn header_layout() {
        let bytes = encode(&Grid::Q2(QuaternionField2D::zeros(2, 3).unwrap()));
        assert_eq!(&bytes[..4], b"QF2D");
        assert_eq!(u32::from_le_bytes(bytes[8..12].try_into().unwrap()), 2);
        assert_eq!(u32::from_le_bytes(bytes[12..16].try_into().unwrap()), 3);
        assert_eq!(u32::from_le_bytes(bytes[32..36].try_into().unwrap()), 4);
        assert_eq!(bytes.len(), 36 + 6 * 4 * 8);
    }

    #[test]
    fn rejects_bad_input() {
        let mut bytes = encode(&Grid::Q2(QuaternionField2D::zeros(2, 2).unwrap()));
        assert!(matches!(decode(&bytes[..bytes.len() - 1]), Err(FormatError::Malformed { .. })));
        bytes[8] = 0;
        assert!(matches!(decode(&bytes), Err(FormatError::Malformed { offset: 8, .. })));
        bytes[0] = b'X';
        assert!(matches!(decode(&bytes), Err(FormatError::Malformed { offset: 0, .. })));
    }

    #[test]
    fn st4d_round_trip() {
        let f = SpacetimeField4D::from_fn([1, 2, 1, 2], |[_, x, _, z]| {
            let mut m = Multivector::zero(Signature::CL31);
            m.set(15, x as f64 - 0.25 * z as f64);
            m.set(3, 7.0);
            m
        })
        .unwrap();
        let grid = Grid::S4(f);
        assert_eq!(decode(&encode(&grid)).unwrap(), grid);
    }
}
