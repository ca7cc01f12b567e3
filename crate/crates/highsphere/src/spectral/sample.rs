//! Column-stacked observation matrices with CSV and binary serialization.
//!
//! CSV layout: one observation per row, p comma-separated values, no header.
//! Binary layout (little-endian): an 8-byte magic tag, then p and n as
//! unsigned 64-bit integers, then the n columns of p 64-bit floats in
//! column-major order. The complex variant stores each entry as a
//! (real, imaginary) pair of floats and uses its own magic tag.

use crate::error::{Error, Result};
use nalgebra::{Complex, DMatrix, DVector};
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

/// Magic tags: ASCII "HSPHMAT1" / "HSPHMATC" as little-endian u64.
pub const MATRIX_MAGIC: u64 = u64::from_le_bytes(*b"HSPHMAT1");
pub const COMPLEX_MATRIX_MAGIC: u64 = u64::from_le_bytes(*b"HSPHMATC");

/// Unit-norm tolerance when the unit flag is set.
pub const UNIT_NORM_TOL: f64 = 1e-9;

/// A p x n matrix whose columns are observations.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    data: DMatrix<f64>,
    unit: bool,
}

impl SampleMatrix {
    pub fn from_columns(data: DMatrix<f64>, unit: bool) -> Result<Self> {
        if data.nrows() == 0 || data.ncols() == 0 {
            return Err(Error::Validation("empty sample matrix".into()));
        }
        if unit {
            for j in 0..data.ncols() {
                let norm = data.column(j).norm();
                if (norm - 1.0).abs() > UNIT_NORM_TOL {
                    return Err(Error::Validation(format!(
                        "unit flag set but column {j} has norm {norm}"
                    )));
                }
            }
        }
        Ok(SampleMatrix { data, unit })
    }

    pub fn p(&self) -> usize {
        self.data.nrows()
    }

    pub fn n(&self) -> usize {
        self.data.ncols()
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }

    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn column(&self, j: usize) -> DVector<f64> {
        self.data.column(j).into_owned()
    }

    /// Write as CSV, one observation per row.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let mut line = String::new();
        for j in 0..self.n() {
            line.clear();
            for i in 0..self.p() {
                if i > 0 {
                    line.push(',');
                }
                line.push_str(&format!("{}", self.data[(i, j)]));
            }
            line.push('\n');
            w.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    /// Read CSV written by [`write_csv`]: one observation per row.
    pub fn read_csv<R: Read>(r: R, unit: bool) -> Result<Self> {
        let rows = parse_numeric_rows(r)?;
        let matrix = rows_to_matrix(rows)?;
        SampleMatrix::from_columns(matrix, unit)
    }

    pub fn read_csv_path(path: &Path, unit: bool) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::read_csv(BufReader::new(f), unit)
    }

    /// Write the packed binary format.
    pub fn write_binary<W: Write>(&self, w: W) -> Result<()> {
        let mut w = BufWriter::new(w);
        w.write_all(&MATRIX_MAGIC.to_le_bytes())?;
        w.write_all(&(self.p() as u64).to_le_bytes())?;
        w.write_all(&(self.n() as u64).to_le_bytes())?;
        for j in 0..self.n() {
            for i in 0..self.p() {
                w.write_all(&self.data[(i, j)].to_le_bytes())?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R, unit: bool) -> Result<Self> {
        let magic = read_u64(&mut r)?;
        if magic != MATRIX_MAGIC {
            return Err(Error::Ingestion(format!(
                "bad magic {magic:#018x}, expected {MATRIX_MAGIC:#018x}"
            )));
        }
        let p = read_u64(&mut r)? as usize;
        let n = read_u64(&mut r)? as usize;
        if p == 0 || n == 0 || p.checked_mul(n).is_none() {
            return Err(Error::Ingestion(format!("bad dimensions p = {p}, n = {n}")));
        }
        let mut data = DMatrix::zeros(p, n);
        for j in 0..n {
            for i in 0..p {
                data[(i, j)] = read_f64(&mut r)?;
            }
        }
        SampleMatrix::from_columns(data, unit)
    }
}

/// Complex observations, same column layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSampleMatrix {
    data: DMatrix<Complex<f64>>,
    unit: bool,
}

impl ComplexSampleMatrix {
    pub fn from_columns(data: DMatrix<Complex<f64>>, unit: bool) -> Result<Self> {
        if data.nrows() == 0 || data.ncols() == 0 {
            return Err(Error::Validation("empty sample matrix".into()));
        }
        if unit {
            for j in 0..data.ncols() {
                let norm = data.column(j).norm();
                if (norm - 1.0).abs() > UNIT_NORM_TOL {
                    return Err(Error::Validation(format!(
                        "unit flag set but column {j} has norm {norm}"
                    )));
                }
            }
        }
        Ok(ComplexSampleMatrix { data, unit })
    }

    pub fn p(&self) -> usize {
        self.data.nrows()
    }

    pub fn n(&self) -> usize {
        self.data.ncols()
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }

    pub fn data(&self) -> &DMatrix<Complex<f64>> {
        &self.data
    }

    pub fn column(&self, j: usize) -> DVector<Complex<f64>> {
        self.data.column(j).into_owned()
    }

    /// CSV with interleaved real/imaginary parts: 2p values per row.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let mut line = String::new();
        for j in 0..self.n() {
            line.clear();
            for i in 0..self.p() {
                if i > 0 {
                    line.push(',');
                }
                let z = self.data[(i, j)];
                line.push_str(&format!("{},{}", z.re, z.im));
            }
            line.push('\n');
            w.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R, unit: bool) -> Result<Self> {
        let rows = parse_numeric_rows(r)?;
        let reals = rows_to_matrix(rows)?;
        if reals.nrows() % 2 != 0 {
            return Err(Error::Ingestion(
                "complex CSV requires an even number of values per row \
                 (interleaved real, imaginary)"
                    .into(),
            ));
        }
        let p = reals.nrows() / 2;
        let n = reals.ncols();
        let data = DMatrix::from_fn(p, n, |i, j| {
            Complex::new(reals[(2 * i, j)], reals[(2 * i + 1, j)])
        });
        ComplexSampleMatrix::from_columns(data, unit)
    }

    pub fn read_csv_path(path: &Path, unit: bool) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::read_csv(BufReader::new(f), unit)
    }

    pub fn write_binary<W: Write>(&self, w: W) -> Result<()> {
        let mut w = BufWriter::new(w);
        w.write_all(&COMPLEX_MATRIX_MAGIC.to_le_bytes())?;
        w.write_all(&(self.p() as u64).to_le_bytes())?;
        w.write_all(&(self.n() as u64).to_le_bytes())?;
        for j in 0..self.n() {
            for i in 0..self.p() {
                let z = self.data[(i, j)];
                w.write_all(&z.re.to_le_bytes())?;
                w.write_all(&z.im.to_le_bytes())?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R, unit: bool) -> Result<Self> {
        let magic = read_u64(&mut r)?;
        if magic != COMPLEX_MATRIX_MAGIC {
            return Err(Error::Ingestion(format!(
                "bad magic {magic:#018x}, expected {COMPLEX_MATRIX_MAGIC:#018x}"
            )));
        }
        let p = read_u64(&mut r)? as usize;
        let n = read_u64(&mut r)? as usize;
        if p == 0 || n == 0 || p.checked_mul(n).is_none() {
            return Err(Error::Ingestion(format!("bad dimensions p = {p}, n = {n}")));
        }
        let mut data = DMatrix::zeros(p, n);
        for j in 0..n {
            for i in 0..p {
                let re = read_f64(&mut r)?;
                let im = read_f64(&mut r)?;
                data[(i, j)] = Complex::new(re, im);
            }
        }
        ComplexSampleMatrix::from_columns(data, unit)
    }
}

/// Parse rows of comma-separated floats, reporting 1-based row/column
/// positions on failure.
pub fn parse_numeric_rows<R: Read>(r: R) -> Result<Vec<Vec<f64>>> {
    let reader = BufReader::new(r);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (col, field) in trimmed.split(',').enumerate() {
            let v: f64 = field.trim().parse().map_err(|_| {
                Error::Ingestion(format!(
                    "row {}, column {}: cannot parse {:?} as a number",
                    lineno + 1,
                    col + 1,
                    field.trim()
                ))
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Ingestion("no data rows".into()));
    }
    Ok(rows)
}

fn rows_to_matrix(rows: Vec<Vec<f64>>) -> Result<DMatrix<f64>> {
    let p = rows[0].len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != p {
            return Err(Error::Ingestion(format!(
                "row {} has {} values, expected {} as in row 1",
                i + 1,
                row.len(),
                p
            )));
        }
    }
    let n = rows.len();
    Ok(DMatrix::from_fn(p, n, |i, j| rows[j][i]))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> SampleMatrix {
        let data = DMatrix::from_row_slice(3, 2, &[0.6, 0.0, 0.8, 1.0, 0.0, 0.0]);
        SampleMatrix::from_columns(data, true).unwrap()
    }

    #[test]
    fn unit_flag_validation() {
        let data = DMatrix::from_row_slice(2, 1, &[1.0, 1.0]);
        assert!(SampleMatrix::from_columns(data.clone(), true).is_err());
        assert!(SampleMatrix::from_columns(data, false).is_ok());
    }

    #[test]
    fn csv_roundtrip_lossless() {
        let m = toy();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let back = SampleMatrix::read_csv(buf.as_slice(), true).unwrap();
        assert_eq!(m.data(), back.data());
    }

    #[test]
    fn binary_roundtrip_lossless() {
        // values chosen to have no short decimal representation
        let data = DMatrix::from_fn(4, 3, |i, j| ((i * 7 + j) as f64).sin() * 1e-7);
        let m = SampleMatrix::from_columns(data, false).unwrap();
        let mut buf = Vec::new();
        m.write_binary(&mut buf).unwrap();
        let back = SampleMatrix::read_binary(buf.as_slice(), false).unwrap();
        assert_eq!(m.data(), back.data());
    }

    #[test]
    fn csv_errors_carry_row_numbers() {
        let bad = "1.0,2.0\n1.0,zzz\n";
        let err = SampleMatrix::read_csv(bad.as_bytes(), false).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 2"), "message was: {msg}");

        let ragged = "1.0,2.0\n1.0\n";
        let err = SampleMatrix::read_csv(ragged.as_bytes(), false).unwrap_err();
        assert!(err.to_string().contains("row 2"));
    }

    #[test]
    fn binary_magic_checked() {
        let mut buf = Vec::new();
        toy().write_binary(&mut buf).unwrap();
        buf[0] ^= 0xff;
        assert!(SampleMatrix::read_binary(buf.as_slice(), true).is_err());
    }

    #[test]
    fn complex_roundtrips() {
        let data = DMatrix::from_fn(3, 2, |i, j| {
            Complex::new((i + j) as f64 * 0.1 + 0.05, (i as f64 - j as f64) * 0.3)
        });
        let m = ComplexSampleMatrix::from_columns(data, false).unwrap();

        let mut csv = Vec::new();
        m.write_csv(&mut csv).unwrap();
        let back = ComplexSampleMatrix::read_csv(csv.as_slice(), false).unwrap();
        assert_eq!(m.data(), back.data());

        let mut bin = Vec::new();
        m.write_binary(&mut bin).unwrap();
        let back = ComplexSampleMatrix::read_binary(bin.as_slice(), false).unwrap();
        assert_eq!(m.data(), back.data());
    }
}
