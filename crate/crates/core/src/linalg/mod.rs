//! Exact linear algebra over prime fields, the rationals and the integers.
//!
//! Field computations use Gauss-Jordan elimination on canonical entries.
//! Integer computations (kernels, solvability, quotient invariants) go
//! through the Smith normal form, which uses a smallest-absolute-value pivot
//! chosen by a full search of the remaining submatrix.

mod domain;
mod elim;
mod matrix;
mod smith;

use num_bigint::BigInt;
use num_traits::One;

pub use domain::Domain;
pub use matrix::ExactMatrix;
pub use smith::{smith_normal_form, SmithForm};

use crate::error::{Error, Result};

/// Exact rank. Over the integers this is the rank over the rationals.
pub fn rank(a: &ExactMatrix) -> usize {
    match a.domain() {
        Domain::Integers => a.over_rationals().field_rank(),
        _ => a.field_rank(),
    }
}

/// Columns form a basis of `{v : a v = 0}`. Over the integers the basis is
/// saturated (a basis of the kernel lattice), obtained from the Smith form.
pub fn kernel_basis(a: &ExactMatrix) -> ExactMatrix {
    match a.domain() {
        Domain::Integers => smith::integer_kernel(a),
        _ => a.field_kernel(),
    }
}

/// Some `x` with `a * x = b`, or `None` when the system is inconsistent
/// (over the integers: has no integral solution).
pub fn solve(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch { left: a.domain(), right: b.domain() });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch { op: "solve", left: a.shape(), right: b.shape() });
    }
    Ok(match a.domain() {
        Domain::Integers => smith::integer_solve(a, b),
        _ => a.field_solve(b),
    })
}

/// Whether every column of `small` lies in the column span of `big`.
pub fn span_contains(big: &ExactMatrix, small: &ExactMatrix) -> Result<bool> {
    Ok(solve(big, small)?.is_some())
}

/// Structure of a finitely generated quotient: `free_rank` copies of the
/// base ring plus cyclic torsion summands (integers only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl QuotientInvariants {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Invariants of `span(gens_big) / span(gens_small)`, both given as column
/// generators inside a common ambient space.
pub fn subquotient_invariants(gens_big: &ExactMatrix, gens_small: &ExactMatrix) -> Result<QuotientInvariants> {
    if gens_big.domain() != gens_small.domain() {
        return Err(Error::DomainMismatch { left: gens_big.domain(), right: gens_small.domain() });
    }
    if gens_big.rows() != gens_small.rows() {
        return Err(Error::DimensionMismatch {
            op: "subquotient_invariants",
            left: gens_big.shape(),
            right: gens_small.shape(),
        });
    }
    if gens_big.domain().is_field() {
        let big = rank(gens_big);
        let joint = rank(&ExactMatrix::hstack(
            &[gens_big, gens_small],
            gens_big.domain(),
            gens_big.rows(),
        ));
        if joint != big {
            return Err(Error::NotASubobject);
        }
        return Ok(QuotientInvariants { free_rank: big - rank(gens_small), torsion: Vec::new() });
    }
    // span(big) = Z^k / ker(big); the small generators pull back to integer
    // coordinates c with big * c = small. The quotient is Z^k / (ker + im c).
    let coords = smith::integer_solve(gens_big, gens_small).ok_or(Error::NotASubobject)?;
    let k = gens_big.cols();
    let kernel = smith::integer_kernel(gens_big);
    let relations = ExactMatrix::hstack(&[&kernel, &coords], Domain::Integers, k);
    let snf = smith_normal_form(&relations)?;
    Ok(QuotientInvariants {
        free_rank: k - snf.rank(),
        torsion: snf.invariant_factors.into_iter().filter(|d| !d.is_one()).collect(),
    })
}
