use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elim::{self, FieldOps, ModP, Rat};
use super::Domain;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Entries {
    Residues(Vec<u64>),
    /// Used for both `Rationals` and `Integers`; integer matrices only ever
    /// hold values with denominator one.
    Rationals(Vec<BigRational>),
}

/// Dense row-major matrix with exact entries over a [`Domain`].
///
/// Entries are always kept canonical, so the derived `PartialEq` is exact
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    domain: Domain,
    rows: usize,
    cols: usize,
    pub(crate) entries: Entries,
}

fn reduce_mod(value: &BigInt, p: u64) -> u64 {
    value
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

fn rational_to_residue(value: &BigRational, p: u64) -> Option<u64> {
    let den = reduce_mod(value.denom(), p);
    if den == 0 {
        return None;
    }
    let ops = ModP(p);
    Some(ops.mul(&reduce_mod(value.numer(), p), &ops.inv(&den)))
}

impl ExactMatrix {
    pub fn zeros(domain: Domain, rows: usize, cols: usize) -> Self {
        let entries = match domain {
            Domain::Prime(_) => Entries::Residues(vec![0; rows * cols]),
            _ => Entries::Rationals(vec![BigRational::zero(); rows * cols]),
        };
        ExactMatrix { domain, rows, cols, entries }
    }

    pub fn identity(domain: Domain, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m.set_one(i, i);
        }
        m
    }

    /// Builds a matrix from small integer entries, reducing them into the
    /// domain.
    pub fn from_i64(domain: Domain, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "entry count must equal rows * cols");
        let entries = match domain {
            Domain::Prime(p) => Entries::Residues(
                values
                    .iter()
                    .map(|&v| reduce_mod(&BigInt::from(v), p))
                    .collect(),
            ),
            _ => Entries::Rationals(
                values
                    .iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect(),
            ),
        };
        ExactMatrix { domain, rows, cols, entries }
    }

    /// Row-wise literal. All rows must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(domain: Domain, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.as_ref().len(), cols, "ragged matrix literal");
            values.extend_from_slice(row.as_ref());
        }
        Self::from_i64(domain, rows.len(), cols, &values)
    }

    pub fn from_rationals(
        domain: Domain,
        rows: usize,
        cols: usize,
        values: Vec<BigRational>,
    ) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "from_rationals",
                left: (rows, cols),
                right: (values.len(), 1),
            });
        }
        let entries = match domain {
            Domain::Prime(p) => Entries::Residues(
                values
                    .iter()
                    .map(|v| {
                        rational_to_residue(v, p).ok_or_else(|| Error::UnrepresentableEntry {
                            value: v.to_string(),
                            domain,
                        })
                    })
                    .collect::<Result<_>>()?,
            ),
            Domain::Integers => {
                if let Some(bad) = values.iter().find(|v| !v.is_integer()) {
                    return Err(Error::UnrepresentableEntry { value: bad.to_string(), domain });
                }
                Entries::Rationals(values)
            }
            Domain::Rationals => Entries::Rationals(values),
        };
        Ok(ExactMatrix { domain, rows, cols, entries })
    }

    pub(crate) fn from_bigints(domain: Domain, rows: usize, cols: usize, values: Vec<BigInt>) -> Self {
        let values = values.into_iter().map(BigRational::from_integer).collect();
        Self::from_rationals(domain, rows, cols, values).expect("integers embed in every domain")
    }

    fn from_entries(domain: Domain, rows: usize, cols: usize, entries: Entries) -> Self {
        ExactMatrix { domain, rows, cols, entries }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Entry as a rational number; residues are reported by their canonical
    /// representative in `[0, p)`.
    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of bounds");
        let k = i * self.cols + j;
        match &self.entries {
            Entries::Residues(v) => BigRational::from_integer(v[k].into()),
            Entries::Rationals(v) => v[k].clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Residues(v) => v.iter().all(|&x| x == 0),
            Entries::Rationals(v) => v.iter().all(Zero::is_zero),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.domain, self.rows)
    }

    fn set_one(&mut self, i: usize, j: usize) {
        let k = i * self.cols + j;
        match &mut self.entries {
            Entries::Residues(v) => v[k] = 1 % self.domain.characteristic(),
            Entries::Rationals(v) => v[k] = BigRational::one(),
        }
    }

    pub fn transpose(&self) -> Self {
        fn tr<T: Clone>(v: &[T], rows: usize, cols: usize) -> Vec<T> {
            let mut out = Vec::with_capacity(v.len());
            for j in 0..cols {
                for i in 0..rows {
                    out.push(v[i * cols + j].clone());
                }
            }
            out
        }
        let entries = match &self.entries {
            Entries::Residues(v) => Entries::Residues(tr(v, self.rows, self.cols)),
            Entries::Rationals(v) => Entries::Rationals(tr(v, self.rows, self.cols)),
        };
        Self::from_entries(self.domain, self.cols, self.rows, entries)
    }

    fn check_domain(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: other.domain });
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        fn mm<F: FieldOps>(ops: &F, a: &[F::E], b: &[F::E], n: usize, k: usize, m: usize) -> Vec<F::E> {
            let mut out = vec![ops.zero(); n * m];
            for i in 0..n {
                for l in 0..k {
                    let x = &a[i * k + l];
                    if ops.is_zero(x) {
                        continue;
                    }
                    for j in 0..m {
                        let y = &b[l * m + j];
                        if ops.is_zero(y) {
                            continue;
                        }
                        let t = ops.mul(x, y);
                        out[i * m + j] = ops.add(&out[i * m + j], &t);
                    }
                }
            }
            out
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let entries = match (&self.entries, &other.entries) {
            (Entries::Residues(a), Entries::Residues(b)) => {
                Entries::Residues(mm(&ModP(self.domain.characteristic()), a, b, n, k, m))
            }
            (Entries::Rationals(a), Entries::Rationals(b)) => Entries::Rationals(mm(&Rat, a, b, n, k, m)),
            _ => unreachable!("storage is determined by the domain"),
        };
        Ok(Self::from_entries(self.domain, n, m, entries))
    }

    fn zip_with(&self, other: &Self, op: &'static str, sub: bool) -> Result<Self> {
        self.check_domain(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        let entries = match (&self.entries, &other.entries) {
            (Entries::Residues(a), Entries::Residues(b)) => {
                let ops = ModP(self.domain.characteristic());
                Entries::Residues(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| if sub { ops.sub(x, y) } else { ops.add(x, y) })
                        .collect(),
                )
            }
            (Entries::Rationals(a), Entries::Rationals(b)) => Entries::Rationals(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| if sub { x - y } else { x + y })
                    .collect(),
            ),
            _ => unreachable!("storage is determined by the domain"),
        };
        Ok(Self::from_entries(self.domain, self.rows, self.cols, entries))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", true)
    }

    pub fn scale(&self, factor: &BigRational) -> Result<Self> {
        let entries = match &self.entries {
            Entries::Residues(v) => {
                let p = self.domain.characteristic();
                let c = rational_to_residue(factor, p).ok_or_else(|| Error::UnrepresentableEntry {
                    value: factor.to_string(),
                    domain: self.domain,
                })?;
                let ops = ModP(p);
                Entries::Residues(v.iter().map(|x| ops.mul(x, &c)).collect())
            }
            Entries::Rationals(v) => {
                if self.domain == Domain::Integers && !factor.is_integer() {
                    return Err(Error::UnrepresentableEntry {
                        value: factor.to_string(),
                        domain: self.domain,
                    });
                }
                Entries::Rationals(v.iter().map(|x| x * factor).collect())
            }
        };
        Ok(Self::from_entries(self.domain, self.rows, self.cols, entries))
    }

    /// Copy of rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        fn sub<T: Clone>(v: &[T], cols: usize, r0: usize, r1: usize, c0: usize, c1: usize) -> Vec<T> {
            (r0..r1).flat_map(|i| v[i * cols + c0..i * cols + c1].iter().cloned()).collect()
        }
        let entries = match &self.entries {
            Entries::Residues(v) => Entries::Residues(sub(v, self.cols, r0, r1, c0, c1)),
            Entries::Rationals(v) => Entries::Rationals(sub(v, self.cols, r0, r1, c0, c1)),
        };
        Self::from_entries(self.domain, r1 - r0, c1 - c0, entries)
    }

    /// Overwrites the block whose top-left corner is `(r0, c0)`.
    pub(crate) fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        assert_eq!(self.domain, block.domain);
        let cols = self.cols;
        match (&mut self.entries, &block.entries) {
            (Entries::Residues(dst), Entries::Residues(src)) => {
                for i in 0..block.rows {
                    dst[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + block.cols]
                        .copy_from_slice(&src[i * block.cols..(i + 1) * block.cols]);
                }
            }
            (Entries::Rationals(dst), Entries::Rationals(src)) => {
                for i in 0..block.rows {
                    dst[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + block.cols]
                        .clone_from_slice(&src[i * block.cols..(i + 1) * block.cols]);
                }
            }
            _ => unreachable!("storage is determined by the domain"),
        }
    }

    /// Assembles a block matrix. `block(i, j)` returns the block in block-row
    /// `i` and block-column `j`, or `None` for a zero block; every returned
    /// block must have shape `row_sizes[i] x col_sizes[j]`.
    pub fn from_blocks(
        domain: Domain,
        row_sizes: &[usize],
        col_sizes: &[usize],
        mut block: impl FnMut(usize, usize) -> Option<ExactMatrix>,
    ) -> Self {
        let rows = row_sizes.iter().sum();
        let cols = col_sizes.iter().sum();
        let mut out = Self::zeros(domain, rows, cols);
        let mut r0 = 0;
        for (i, &h) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (j, &w) in col_sizes.iter().enumerate() {
                if let Some(b) = block(i, j) {
                    assert_eq!(b.shape(), (h, w), "block ({i}, {j}) has the wrong shape");
                    out.set_block(r0, c0, &b);
                }
                c0 += w;
            }
            r0 += h;
        }
        out
    }

    pub fn hstack(parts: &[&ExactMatrix], domain: Domain, rows: usize) -> Self {
        let widths: Vec<usize> = parts.iter().map(|p| p.cols).collect();
        Self::from_blocks(domain, &[rows], &widths, |_, j| Some(parts[j].clone()))
    }

    pub fn vstack(parts: &[&ExactMatrix], domain: Domain, cols: usize) -> Self {
        let heights: Vec<usize> = parts.iter().map(|p| p.rows).collect();
        Self::from_blocks(domain, &heights, &[cols], |i, _| Some(parts[i].clone()))
    }

    /// Kronecker product. For row-major vectorisation,
    /// `vec(A * S * B) = (A ⊗ Bᵀ) vec(S)`.
    pub fn kron(&self, other: &Self) -> Self {
        assert_eq!(self.domain, other.domain);
        let (n, m) = (self.rows * other.rows, self.cols * other.cols);
        fn kr<F: FieldOps>(ops: &F, a: &[F::E], ar: usize, ac: usize, b: &[F::E], br: usize, bc: usize) -> Vec<F::E> {
            let m = ac * bc;
            let mut out = vec![ops.zero(); ar * br * m];
            for i in 0..ar {
                for j in 0..ac {
                    let x = &a[i * ac + j];
                    if ops.is_zero(x) {
                        continue;
                    }
                    for k in 0..br {
                        for l in 0..bc {
                            out[(i * br + k) * m + j * bc + l] = ops.mul(x, &b[k * bc + l]);
                        }
                    }
                }
            }
            out
        }
        let entries = match (&self.entries, &other.entries) {
            (Entries::Residues(a), Entries::Residues(b)) => Entries::Residues(kr(
                &ModP(self.domain.characteristic()),
                a,
                self.rows,
                self.cols,
                b,
                other.rows,
                other.cols,
            )),
            (Entries::Rationals(a), Entries::Rationals(b)) => {
                Entries::Rationals(kr(&Rat, a, self.rows, self.cols, b, other.rows, other.cols))
            }
            _ => unreachable!("storage is determined by the domain"),
        };
        Self::from_entries(self.domain, n, m, entries)
    }

    /// Row-major flattening into a single column.
    pub fn vectorize(&self) -> Self {
        Self::from_entries(self.domain, self.rows * self.cols, 1, self.entries.clone())
    }

    /// Inverse of [`vectorize`](Self::vectorize) on a column segment.
    pub fn unvectorize(column: &Self, offset: usize, rows: usize, cols: usize) -> Self {
        assert_eq!(column.cols, 1);
        let flat = column.submatrix(offset, offset + rows * cols, 0, 1);
        Self::from_entries(column.domain, rows, cols, flat.entries)
    }

    pub(crate) fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        match &self.entries {
            Entries::Rationals(v) => (0..self.rows)
                .map(|i| {
                    v[i * self.cols..(i + 1) * self.cols]
                        .iter()
                        .map(|x| x.to_integer())
                        .collect()
                })
                .collect(),
            Entries::Residues(v) => (0..self.rows)
                .map(|i| v[i * self.cols..(i + 1) * self.cols].iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }

    /// Same entries viewed over the rationals. Only meaningful for integer
    /// and rational matrices.
    pub(crate) fn over_rationals(&self) -> Self {
        assert!(!matches!(self.domain, Domain::Prime(_)));
        Self::from_entries(Domain::Rationals, self.rows, self.cols, self.entries.clone())
    }

    /// Canonical textual form of an entry: `"-3"`, `"3/2"`.
    pub fn entry_string(&self, i: usize, j: usize) -> String {
        let v = self.entry(i, j);
        if v.is_integer() {
            v.numer().to_string()
        } else {
            format!("{}/{}", v.numer(), v.denom())
        }
    }

    /// Largest absolute numerator or denominator, used to keep random
    /// instances small.
    pub fn height(&self) -> BigInt {
        match &self.entries {
            Entries::Residues(v) => BigInt::from(v.iter().copied().max().unwrap_or(0)),
            Entries::Rationals(v) => v
                .iter()
                .map(|x| x.numer().abs().max(x.denom().clone()))
                .max()
                .unwrap_or_else(BigInt::zero),
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&self.entry_string(i, j))?;
            }
        }
        f.write_str("]")
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;

    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;

    fn neg(self) -> ExactMatrix {
        let entries = match &self.entries {
            Entries::Residues(v) => {
                let ops = ModP(self.domain.characteristic());
                Entries::Residues(v.iter().map(|x| ops.neg(x)).collect())
            }
            Entries::Rationals(v) => Entries::Rationals(v.iter().map(|x| -x).collect()),
        };
        ExactMatrix::from_entries(self.domain, self.rows, self.cols, entries)
    }
}

// Field-generic entry points used by the solver module.
impl ExactMatrix {
    pub(crate) fn field_rank(&self) -> usize {
        match &self.entries {
            Entries::Residues(v) => {
                elim::rank(&ModP(self.domain.characteristic()), self.rows, self.cols, &mut v.clone())
            }
            Entries::Rationals(v) => elim::rank(&Rat, self.rows, self.cols, &mut v.clone()),
        }
    }

    pub(crate) fn field_kernel(&self) -> Self {
        let (k, entries) = match &self.entries {
            Entries::Residues(v) => {
                let (k, out) = elim::kernel(&ModP(self.domain.characteristic()), self.rows, self.cols, v.clone());
                (k, Entries::Residues(out))
            }
            Entries::Rationals(v) => {
                let (k, out) = elim::kernel(&Rat, self.rows, self.cols, v.clone());
                (k, Entries::Rationals(out))
            }
        };
        Self::from_entries(self.domain, self.cols, k, entries)
    }

    pub(crate) fn field_solve(&self, rhs: &Self) -> Option<Self> {
        let entries = match (&self.entries, &rhs.entries) {
            (Entries::Residues(a), Entries::Residues(b)) => Entries::Residues(elim::solve(
                &ModP(self.domain.characteristic()),
                self.rows,
                self.cols,
                a,
                rhs.cols,
                b,
            )?),
            (Entries::Rationals(a), Entries::Rationals(b)) => {
                Entries::Rationals(elim::solve(&Rat, self.rows, self.cols, a, rhs.cols, b)?)
            }
            _ => unreachable!("storage is determined by the domain"),
        };
        Some(Self::from_entries(self.domain, self.cols, rhs.cols, entries))
    }
}
