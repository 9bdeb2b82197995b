//! JSON documents for complexes and chain maps.
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "N": 3,
//!   "coeff": "Fp:5",
//!   "objects": { "0": 1, "1": 1 },
//!   "diff": { "0": [[1]] }
//! }
//! ```
//!
//! Matrix entries are JSON integers or strings such as `"-3/2"`. Degrees
//! missing from `objects` are zero; missing differentials are zero maps.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::complex::{ChainMap, NComplex};
use crate::error::{Error, Result};
use crate::linalg::{Domain, ExactMatrix};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

pub type MatrixRows = Vec<Vec<Entry>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub format_version: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub coeff: String,
    #[serde(default)]
    pub objects: BTreeMap<i64, usize>,
    #[serde(default)]
    pub diff: BTreeMap<i64, MatrixRows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub format_version: String,
    pub source: ComplexDocument,
    pub target: ComplexDocument,
    #[serde(default)]
    pub components: BTreeMap<i64, MatrixRows>,
}

fn parse_entry(e: &Entry) -> std::result::Result<BigRational, String> {
    match e {
        Entry::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
        Entry::Text(s) => {
            let s = s.trim();
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s, "1"),
            };
            let num: BigInt = num.parse().map_err(|_| format!("bad entry {s:?}"))?;
            let den: BigInt = den.parse().map_err(|_| format!("bad entry {s:?}"))?;
            if den == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

fn entry_of(x: &BigRational) -> Entry {
    if x.is_integer() {
        if let Ok(v) = i64::try_from(x.to_integer()) {
            return Entry::Int(v);
        }
        return Entry::Text(x.to_integer().to_string());
    }
    Entry::Text(x.to_string())
}

/// Reads a matrix of the expected shape; `what` names it in diagnostics.
fn matrix_from_rows(domain: Domain, rows: &MatrixRows, shape: (usize, usize), what: &str) -> Result<ExactMatrix> {
    let (r, c) = shape;
    // A matrix with no rows is written `[]` whatever its width.
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        let found = (rows.len(), rows.first().map_or(0, Vec::len));
        if !(r == 0 && rows.is_empty()) {
            return Err(Error::Parse(format!(
                "{what}: expected a {r}x{c} matrix, found {}x{}",
                found.0, found.1
            )));
        }
    }
    let mut values = Vec::with_capacity(r * c);
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            values.push(parse_entry(e).map_err(|m| Error::Parse(format!("{what}, row {i}, column {j}: {m}")))?);
        }
    }
    ExactMatrix::from_rationals(domain, r, c, values).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn rows_of(m: &ExactMatrix) -> MatrixRows {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| entry_of(&m.entry(i, j))).collect()).collect()
}

impl ComplexDocument {
    pub fn from_complex(x: &NComplex) -> Self {
        let mut objects = BTreeMap::new();
        let mut diff = BTreeMap::new();
        if let Some((lo, hi)) = x.support() {
            for i in lo..=hi {
                if x.dim(i) > 0 {
                    objects.insert(i, x.dim(i));
                }
                let d = x.diff(i);
                if d.rows() * d.cols() > 0 {
                    diff.insert(i, rows_of(&d));
                }
            }
        }
        ComplexDocument {
            format_version: FORMAT_VERSION.into(),
            n: x.n(),
            coeff: x.domain().to_string(),
            objects,
            diff,
        }
    }

    /// Builds the complex without checking `d^N = 0`.
    pub fn to_complex_unchecked(&self) -> Result<NComplex> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format_version {:?}", self.format_version)));
        }
        let domain: Domain = self.coeff.parse()?;
        let dim = |i: i64| self.objects.get(&i).copied().unwrap_or(0);
        let mut diffs = BTreeMap::new();
        for (&i, rows) in &self.diff {
            diffs.insert(i, matrix_from_rows(domain, rows, (dim(i + 1), dim(i)), &format!("diff at degree {i}"))?);
        }
        NComplex::from_maps(self.n, domain, &self.objects, &diffs)
    }

    /// Builds the complex and checks `d^N = 0`.
    pub fn to_complex(&self) -> Result<NComplex> {
        let x = self.to_complex_unchecked()?;
        match x.nilpotency_violation() {
            Some(degree) => Err(Error::NotNilpotent { degree, n: x.n() }),
            None => Ok(x),
        }
    }
}

impl MapDocument {
    pub fn from_map(f: &ChainMap) -> Self {
        MapDocument {
            format_version: FORMAT_VERSION.into(),
            source: ComplexDocument::from_complex(f.source()),
            target: ComplexDocument::from_complex(f.target()),
            components: f.components().iter().map(|(&i, m)| (i, rows_of(m))).collect(),
        }
    }

    pub fn to_map(&self) -> Result<ChainMap> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format_version {:?}", self.format_version)));
        }
        let x = self.source.to_complex()?;
        let y = self.target.to_complex()?;
        let mut comps = BTreeMap::new();
        for (&i, rows) in &self.components {
            let what = format!("component at degree {i}");
            comps.insert(i, matrix_from_rows(x.domain(), rows, (y.dim(i), x.dim(i)), &what)?);
        }
        ChainMap::new(x, y, comps)
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn parse_complex(text: &str) -> Result<NComplex> {
    from_json::<ComplexDocument>(text)?.to_complex()
}

pub fn complex_to_string(x: &NComplex) -> String {
    to_json(&ComplexDocument::from_complex(x))
}

pub fn parse_map(text: &str) -> Result<ChainMap> {
    from_json::<MapDocument>(text)?.to_map()
}

pub fn map_to_string(f: &ChainMap) -> String {
    to_json(&MapDocument::from_map(f))
}

/// Canonical form of a complex document: parse, then print.
pub fn canonicalize(text: &str) -> Result<String> {
    Ok(complex_to_string(&parse_complex(text)?))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_complex(path: &Path) -> Result<NComplex> {
    parse_complex(&read(path)?).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn save_complex(path: &Path, x: &NComplex) -> Result<()> {
    std::fs::write(path, complex_to_string(x)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_map(path: &Path) -> Result<ChainMap> {
    parse_map(&read(path)?).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn save_map(path: &Path, f: &ChainMap) -> Result<()> {
    std::fs::write(path, map_to_string(f)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests;
