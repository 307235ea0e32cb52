//! CSV and image conversions.
//!
//! QF2D rows are `x,y,r,i,j,k`; ST4D rows are `t,x,y,z` followed by the 16
//! blade coefficients in file order. A header row is written on output and
//! skipped on input. Values are printed in shortest round-trip form.

use std::path::Path;

use hyperfourier::clifford::{Multivector, Signature};
use hyperfourier::qft2d::QuaternionField2D;
use hyperfourier::spacetime::SpacetimeField4D;
use hyperfourier::Quaternion;
use thiserror::Error;

use crate::format::{write_atomic, FormatError, Grid};

#[derive(Debug, Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("dimension mismatch: {0}")]
    Dimensions(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Image(#[from] image::ImageError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Grid(#[from] hyperfourier::Error),
}

const Q2_HEADER: [&str; 6] = ["x", "y", "r", "i", "j", "k"];

fn parse_err(line: u64, message: impl Into<String>) -> TextError {
    TextError::Parse { line, message: message.into() }
}

pub fn read_csv(path: &Path) -> Result<Grid, TextError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_path(path)?;
    let mut rows: Vec<(u64, Vec<usize>, Vec<f64>)> = Vec::new();
    let mut width = None;
    for (k, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(k as u64 + 1, |p| p.line());
        if k == 0 && record.get(0).is_some_and(|s| s.parse::<f64>().is_err()) {
            continue;
        }
        let (rank, comps) = match record.len() {
            6 => (2, 4),
            20 => (4, 16),
            n => return Err(parse_err(line, format!("expected 6 or 20 columns, found {n}"))),
        };
        if *width.get_or_insert(record.len()) != record.len() {
            return Err(parse_err(line, "column count changes between rows"));
        }
        let mut idx = Vec::with_capacity(rank);
        for (c, field) in record.iter().take(rank).enumerate() {
            idx.push(field.parse::<usize>().map_err(|e| parse_err(line, format!("column {}: {e}", c + 1)))?);
        }
        let mut vals = Vec::with_capacity(comps);
        for (c, field) in record.iter().skip(rank).enumerate() {
            vals.push(field.parse::<f64>().map_err(|e| parse_err(line, format!("column {}: {e}", rank + c + 1)))?);
        }
        rows.push((line, idx, vals));
    }
    let Some((_, first, _)) = rows.first() else {
        return Err(TextError::Dimensions("no data rows".into()));
    };
    let rank = first.len();
    let mut dims = vec![0usize; rank];
    for (_, idx, _) in &rows {
        for (d, &i) in dims.iter_mut().zip(idx) {
            *d = (*d).max(i + 1);
        }
    }
    let total: usize = dims.iter().product();
    if rows.len() != total {
        return Err(TextError::Dimensions(format!("{} rows for a {dims:?} grid", rows.len())));
    }
    let mut slots: Vec<Option<Vec<f64>>> = vec![None; total];
    for (line, idx, vals) in rows {
        // QF2D is x fastest; ST4D is z fastest.
        let flat = if rank == 2 {
            idx[1] * dims[0] + idx[0]
        } else {
            idx.iter().zip(&dims).fold(0, |acc, (&i, &d)| acc * d + i)
        };
        if slots[flat].replace(vals).is_some() {
            return Err(parse_err(line, format!("duplicate sample {idx:?}")));
        }
    }
    let values = slots.into_iter().map(|v| v.expect("every slot filled once"));
    Ok(if rank == 2 {
        let data = values.map(|v| Quaternion::new(v[0], v[1], v[2], v[3])).collect();
        Grid::Q2(QuaternionField2D::new(dims[0], dims[1], data)?)
    } else {
        let data = values.map(|v| Multivector::from_coeffs(Signature::CL31, &v)).collect::<Result<Vec<_>, _>>()?;
        Grid::S4(SpacetimeField4D::new([dims[0], dims[1], dims[2], dims[3]], data)?)
    })
}

fn csv_bytes(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<(), csv::Error>) -> Result<Vec<u8>, TextError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w)?;
    w.into_inner().map_err(|e| TextError::Csv(e.into_error().into()))
}

pub fn write_csv(path: &Path, grid: &Grid) -> Result<(), TextError> {
    let bytes = csv_bytes(|w| match grid {
        Grid::Q2(f) => {
            w.write_record(Q2_HEADER)?;
            for y in 0..f.height() {
                for x in 0..f.width() {
                    let q = f.get(x as i64, y as i64);
                    let mut row = vec![x.to_string(), y.to_string()];
                    row.extend(q.to_array().iter().map(|c| format!("{c:?}")));
                    w.write_record(&row)?;
                }
            }
            Ok(())
        }
        Grid::S4(f) => {
            let mut header: Vec<String> = ["t", "x", "y", "z"].map(String::from).to_vec();
            header.extend((0..16).map(|m| format!("b{m}")));
            w.write_record(&header)?;
            let [t, x, y, z] = f.dims();
            let mut k = 0;
            for it in 0..t {
                for ix in 0..x {
                    for iy in 0..y {
                        for iz in 0..z {
                            let mut row: Vec<String> = [it, ix, iy, iz].iter().map(ToString::to_string).collect();
                            row.extend(f.data()[k].coeffs().iter().map(|c| format!("{c:?}")));
                            w.write_record(&row)?;
                            k += 1;
                        }
                    }
                }
            }
            Ok(())
        }
    })?;
    Ok(write_atomic(path, &bytes)?)
}

/// Writes `x,y,|F|` rows for plotting a 2D spectrum.
pub fn write_magnitude_csv(path: &Path, f: &QuaternionField2D) -> Result<(), TextError> {
    let bytes = csv_bytes(|w| {
        w.write_record(["x", "y", "magnitude"])?;
        for y in 0..f.height() {
            for x in 0..f.width() {
                let q = f.get(x as i64, y as i64);
                w.write_record([x.to_string(), y.to_string(), format!("{:?}", q.norm())])?;
            }
        }
        Ok(())
    })?;
    Ok(write_atomic(path, &bytes)?)
}

/// Pure quaternion embedding of an RGB image: `(R, G, B) / 255 → (i, j, k)`.
pub fn read_image(path: &Path) -> Result<Grid, TextError> {
    let img = image::open(path)?.into_rgb8();
    let (w, h) = img.dimensions();
    let field = QuaternionField2D::from_fn(w as usize, h as usize, |x, y| {
        let [r, g, b] = img.get_pixel(x as u32, y as u32).0;
        Quaternion::new(0.0, f64::from(r) / 255.0, f64::from(g) / 255.0, f64::from(b) / 255.0)
    })?;
    Ok(Grid::Q2(field))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_preserves_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        let f = QuaternionField2D::from_fn(3, 2, |x, y| Quaternion::new(0.1 * x as f64, 1.0 / 3.0, -(y as f64), 1e-17)).unwrap();
        let grid = Grid::Q2(f);
        write_csv(&path, &grid).unwrap();
        assert_eq!(read_csv(&path).unwrap(), grid);
    }

    #[test]
    fn csv_reports_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "x,y,r,i,j,k\n0,0,1,0,0,0\n1,0,oops,0,0,0\n").unwrap();
        match read_csv(&path) {
            Err(TextError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        std::fs::write(&path, "0,0,1,0,0,0\n1,1,1,0,0,0\n").unwrap();
        assert!(matches!(read_csv(&path), Err(TextError::Dimensions(_))));
    }

    #[test]
    fn red_pixel_is_i() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("red.png");
        image::RgbImage::from_pixel(1, 1, image::Rgb([255, 0, 0])).save(&path).unwrap();
        let Grid::Q2(f) = read_image(&path).unwrap() else { panic!() };
        assert_eq!(f.data(), &[Quaternion::I]);
    }
}
