//! CSV/TSV emission and map (de)serialisation.
//!
//! Numbers are written with 17 significant digits (`{:.16e}`), rows end in
//! `\n`, and the first row is always a header, so output is byte-stable for
//! fixed inputs.

use std::io::{Read, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{CircleGrid, CircleMap, C64, MODULUS_TOL};
use crate::optimizer::OptimizeReport;
use crate::sphere2::Sphere2Map;

/// Column separator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Tsv,
}

impl Format {
    fn delimiter(self) -> u8 {
        match self {
            Format::Csv => b',',
            Format::Tsv => b'\t',
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "tsv" => Ok(Format::Tsv),
            other => Err(Error::Parse(format!("format must be csv or tsv, got {other:?}"))),
        }
    }
}

/// `x` with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Real(f64),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => fmt_real(*x),
            Cell::Empty => String::new(),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(if b { "PASS" } else { "FAIL" }.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

/// A header and rows of cells.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: W, format: Format) -> Result<()> {
        let mut w = writer(out, format);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_string(&self, format: Format) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf, format).expect("writing to memory");
        String::from_utf8(buf).expect("cells are UTF-8")
    }
}

fn writer<W: Write>(out: W, format: Format) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .delimiter(format.delimiter())
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// Columns `theta, re, im`.
pub fn circle_map_table(f: &CircleMap) -> Table {
    let mut t = Table::new(&["theta", "re", "im"]);
    for (theta, z) in f.grid().thetas().zip(f.samples()) {
        t.push(vec![theta.into(), z.re.into(), z.im.into()]);
    }
    t
}

pub fn write_circle_map<W: Write>(out: W, f: &CircleMap, format: Format) -> Result<()> {
    circle_map_table(f).write(out, format)
}

/// Reads `theta, re, im` rows. The `theta` column must be the uniform grid
/// `2πj/M` (to `1e-9`). Samples must lie within `1e-9` of the unit circle;
/// those off by more than [`MODULUS_TOL`] are renormalised, the rest are
/// kept bit for bit.
pub fn read_circle_map<R: Read>(input: R, format: Format) -> Result<CircleMap> {
    let mut r = csv::ReaderBuilder::new()
        .delimiter(format.delimiter())
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut thetas = Vec::new();
    let mut samples = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != 3 {
            return Err(Error::Parse(format!("row {}: expected 3 columns", line + 1)));
        }
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("row {}: {:?} is not a number", line + 1, &rec[i])))
        };
        thetas.push(num(0)?);
        samples.push(C64::new(num(1)?, num(2)?));
    }
    let grid = CircleGrid::new(samples.len())?;
    for (j, t) in thetas.iter().enumerate() {
        if (t - grid.theta(j)).abs() > 1e-9 {
            return Err(Error::InvalidGrid(format!(
                "row {}: theta {t} is not the uniform grid point {}",
                j + 1,
                grid.theta(j)
            )));
        }
    }
    for (index, z) in samples.iter_mut().enumerate() {
        let modulus = z.norm();
        if (modulus - 1.0).abs() > 1e-9 {
            return Err(Error::NotUnitModulus { index, modulus });
        }
        if (modulus - 1.0).abs() > MODULUS_TOL {
            *z /= modulus;
        }
    }
    CircleMap::new(samples)
}

/// Columns `phi, lambda, v1, v2, v3`, with `phi` the colatitude in the
/// grid's frame.
pub fn sphere_map_table(f: &Sphere2Map) -> Table {
    let grid = f.grid();
    let mut t = Table::new(&["phi", "lambda", "v1", "v2", "v3"]);
    for i in 0..grid.n_phi() {
        for j in 0..grid.n_lambda() {
            let v = f.value(i, j);
            t.push(vec![
                grid.phi(i).into(),
                grid.lambda(j).into(),
                v[0].into(),
                v[1].into(),
                v[2].into(),
            ]);
        }
    }
    t
}

pub fn write_sphere_map<W: Write>(out: W, f: &Sphere2Map, format: Format) -> Result<()> {
    sphere_map_table(f).write(out, format)
}

/// `iteration, value` rows of the winning restart, then one summary row
/// `best, <value>`.
pub fn trace_table(report: &OptimizeReport) -> Table {
    let mut t = Table::new(&["iteration", "value"]);
    for &(it, v) in &report.trace {
        t.push(vec![Cell::Int(it as i64), v.into()]);
    }
    t.push(vec!["best".into(), report.best.into()]);
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::power_map;

    #[test]
    fn circle_round_trip_is_exact() {
        let f = crate::gallery::oscillator(2, 5, CircleGrid::new(256).unwrap()).unwrap().map;
        let text = circle_map_table(&f).to_string(Format::Csv);
        assert!(text.starts_with("theta,re,im\n"));
        assert!(!text.contains('\r'));
        let back = read_circle_map(text.as_bytes(), Format::Csv).unwrap();
        for (a, b) in f.samples().iter().zip(back.samples()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn tsv_uses_tabs() {
        let f = power_map(1, CircleGrid::new(16).unwrap());
        let text = circle_map_table(&f).to_string(Format::Tsv);
        assert!(text.lines().next().unwrap() == "theta\tre\tim");
        assert!(read_circle_map(text.as_bytes(), Format::Tsv).is_ok());
    }

    #[test]
    fn reals_have_seventeen_digits() {
        assert_eq!(fmt_real(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_real(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn rejects_non_uniform_theta_and_modulus() {
        let good = circle_map_table(&power_map(1, CircleGrid::new(16).unwrap()));
        let mut shifted = good.clone();
        shifted.rows[3][0] = Cell::Real(1.0);
        let err = read_circle_map(shifted.to_string(Format::Csv).as_bytes(), Format::Csv);
        assert!(matches!(err, Err(Error::InvalidGrid(_))));
        let mut scaled = good;
        scaled.rows[5][1] = Cell::Real(2.0);
        let err = read_circle_map(scaled.to_string(Format::Csv).as_bytes(), Format::Csv);
        assert!(matches!(err, Err(Error::NotUnitModulus { index: 5, .. })));
    }
}
