//! Smith normal form over the integers and the integer-side solvers built on
//! top of it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Domain, ExactMatrix};
use crate::error::{Error, Result};

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal in
/// divisibility order (nonnegative, zeros trailing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: ExactMatrix,
    pub d: ExactMatrix,
    pub v: ExactMatrix,
    /// Nonzero diagonal entries of `d`, in order.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

struct Reducer {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        self.u.swap(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        for row in &mut self.a {
            row.swap(j, k);
        }
        for row in &mut self.v {
            row.swap(j, k);
        }
    }

    /// row_i -= q * row_k
    fn row_axpy(&mut self, i: usize, k: usize, q: &BigInt) {
        for mat in [&mut self.a, &mut self.u] {
            let src = mat[k].clone();
            for (x, s) in mat[i].iter_mut().zip(&src) {
                *x -= q * s;
            }
        }
    }

    /// col_j -= q * col_k
    fn col_axpy(&mut self, j: usize, k: usize, q: &BigInt) {
        for mat in [&mut self.a, &mut self.v] {
            for row in mat.iter_mut() {
                let s = row[k].clone();
                row[j] -= q * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
    }

    /// Smallest nonzero |entry| in the trailing submatrix starting at (t, t).
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Smallest nonzero |entry| in row t and column t (from the diagonal on).
    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
            let x = &self.a[i][j];
            let b = &self.a[best.0][best.1];
            if !x.is_zero() && (b.is_zero() || x.abs() < b.abs()) {
                *best = (i, j);
            }
        };
        for i in t..self.m {
            consider(i, t, &mut best);
        }
        for j in t..self.n {
            consider(t, j, &mut best);
        }
        best
    }

    fn run(&mut self) {
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((i, j)) = self.min_pivot(t) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let mut dirty = false;
                for i in t + 1..self.m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_axpy(i, t, &q);
                    dirty |= !self.a[i][t].is_zero();
                }
                for j in t + 1..self.n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_axpy(j, t, &q);
                    dirty |= !self.a[t][j].is_zero();
                }
                if dirty {
                    let (i, j) = self.min_in_cross(t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                let pivot = self.a[t][t].clone();
                let offender = (t + 1..self.m).find(|&i| {
                    (t + 1..self.n).any(|j| !self.a[i][j].is_multiple_of(&pivot))
                });
                match offender {
                    // Pull the offending row into row t; the next pass
                    // produces a remainder smaller than the pivot.
                    Some(i) => self.row_axpy(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

fn flatten(rows: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    rows.into_iter().flatten().collect()
}

/// Smith normal form with transforms. Only defined over the integers.
pub fn smith_normal_form(a: &ExactMatrix) -> Result<SmithForm> {
    if a.domain() != Domain::Integers {
        return Err(Error::UnsupportedDomain { op: "smith_normal_form", domain: a.domain() });
    }
    let (m, n) = a.shape();
    let mut r = Reducer { a: a.integer_rows(), u: identity(m), v: identity(n), m, n };
    r.run();
    let invariant_factors: Vec<BigInt> = (0..m.min(n))
        .map(|i| r.a[i][i].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    let dom = Domain::Integers;
    Ok(SmithForm {
        u: ExactMatrix::from_bigints(dom, m, m, flatten(r.u)),
        d: ExactMatrix::from_bigints(dom, m, n, flatten(r.a)),
        v: ExactMatrix::from_bigints(dom, n, n, flatten(r.v)),
        invariant_factors,
    })
}

/// Saturated kernel basis of an integer matrix: the trailing columns of `V`.
pub(crate) fn integer_kernel(a: &ExactMatrix) -> ExactMatrix {
    let snf = smith_normal_form(a).expect("integer matrix");
    let n = a.cols();
    snf.v.submatrix(0, n, snf.rank(), n)
}

/// Integer solution of `a * x = b`, if one exists.
pub(crate) fn integer_solve(a: &ExactMatrix, b: &ExactMatrix) -> Option<ExactMatrix> {
    let snf = smith_normal_form(a).expect("integer matrix");
    let rank = snf.rank();
    let ub = (&snf.u * b).integer_rows();
    let (n, k) = (a.cols(), b.cols());
    let mut y = vec![BigInt::zero(); n * k];
    for (i, row) in ub.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i < rank {
                let (q, rem) = x.div_rem(&snf.invariant_factors[i]);
                if !rem.is_zero() {
                    return None;
                }
                y[i * k + j] = q;
            } else if !x.is_zero() {
                return None;
            }
        }
    }
    let y = ExactMatrix::from_bigints(Domain::Integers, n, k, y);
    Some(&snf.v * &y)
}
