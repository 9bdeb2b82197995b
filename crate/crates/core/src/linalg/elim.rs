//! Gauss-Jordan elimination over the two field representations.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) trait FieldOps {
    type E: Clone + PartialEq;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

#[derive(Clone, Copy)]
pub(crate) struct ModP(pub u64);

impl FieldOps for ModP {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let p = self.0;
        let (mut base, mut exp, mut acc) = (*a % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Rat;

impl FieldOps for Rat {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// Reduces the row-major `rows x cols` buffer to reduced row echelon form in
/// place, choosing pivots only among the first `pivot_cols` columns. Returns
/// the pivot column of each nonzero row, in order.
pub(crate) fn rref<F: FieldOps>(
    ops: &F,
    rows: usize,
    cols: usize,
    pivot_cols: usize,
    data: &mut [F::E],
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ops.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = ops.inv(&data[r * cols + c]);
        for j in c..cols {
            data[r * cols + j] = ops.mul(&data[r * cols + j], &inv);
        }
        for i in 0..rows {
            if i == r || ops.is_zero(&data[i * cols + c]) {
                continue;
            }
            let factor = data[i * cols + c].clone();
            for j in c..cols {
                if ops.is_zero(&data[r * cols + j]) {
                    continue;
                }
                let t = ops.mul(&factor, &data[r * cols + j]);
                data[i * cols + j] = ops.sub(&data[i * cols + j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Forward elimination only; enough to read off the rank.
pub(crate) fn rank<F: FieldOps>(ops: &F, rows: usize, cols: usize, data: &mut [F::E]) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ops.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = ops.inv(&data[r * cols + c]);
        for i in r + 1..rows {
            if ops.is_zero(&data[i * cols + c]) {
                continue;
            }
            let factor = ops.mul(&data[i * cols + c], &inv);
            for j in c..cols {
                if ops.is_zero(&data[r * cols + j]) {
                    continue;
                }
                let t = ops.mul(&factor, &data[r * cols + j]);
                data[i * cols + j] = ops.sub(&data[i * cols + j], &t);
            }
        }
        r += 1;
    }
    r
}

/// Basis of the null space as a `cols x (cols - rank)` row-major buffer.
/// Basis vectors are ordered by their free column.
pub(crate) fn kernel<F: FieldOps>(
    ops: &F,
    rows: usize,
    cols: usize,
    mut data: Vec<F::E>,
) -> (usize, Vec<F::E>) {
    let pivots = rref(ops, rows, cols, cols, &mut data);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let k = free.len();
    let mut out = vec![ops.zero(); cols * k];
    for (slot, &fc) in free.iter().enumerate() {
        out[fc * k + slot] = ops.one();
        for (row, &pc) in pivots.iter().enumerate() {
            out[pc * k + slot] = ops.neg(&data[row * cols + fc]);
        }
    }
    (k, out)
}

/// Solves `A X = B` for `A` of shape `rows x a_cols` and `B` of shape
/// `rows x b_cols`. Free variables are set to zero, so the answer is a
/// deterministic function of the inputs.
pub(crate) fn solve<F: FieldOps>(
    ops: &F,
    rows: usize,
    a_cols: usize,
    a: &[F::E],
    b_cols: usize,
    b: &[F::E],
) -> Option<Vec<F::E>> {
    let cols = a_cols + b_cols;
    let mut aug = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        aug.extend_from_slice(&a[i * a_cols..(i + 1) * a_cols]);
        aug.extend_from_slice(&b[i * b_cols..(i + 1) * b_cols]);
    }
    let pivots = rref(ops, rows, cols, a_cols, &mut aug);
    for i in pivots.len()..rows {
        if (a_cols..cols).any(|j| !ops.is_zero(&aug[i * cols + j])) {
            return None;
        }
    }
    let mut x = vec![ops.zero(); a_cols * b_cols];
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..b_cols {
            x[pc * b_cols + j] = aug[row * cols + a_cols + j].clone();
        }
    }
    Some(x)
}
