//! Null-homotopies of chain maps between N-complexes, and hom-spaces of the
//! homotopy category over a field.
//!
//! A witness family `s^i : X^i -> Y^{i-N+1}` realizes the degreewise map
//!
//! ```text
//! f^i = sum_{j=0}^{N-1} d_Y^{i-(N-1-j)}_{N-1-j} s^{i+j} d_X^i_{j}
//! ```
//!
//! Deciding null-homotopy is one linear system in the entries of all `s^i`.
//! Unknowns are ordered degree-major, then row-major inside each matrix.

use std::collections::BTreeMap;

use crate::complex::{ChainMap, NComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, Domain, ExactMatrix};

/// A witness family `s^i : X^i -> Y^{i-N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    source: NComplex,
    target: NComplex,
    witness: BTreeMap<i64, ExactMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HomKSpace {
    pub dim_chain_maps: usize,
    pub dim_null_homotopic: usize,
    pub dim_homotopy_classes: usize,
}

/// Block layout of a vector of stacked, row-major matrices.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    /// (degree, rows, cols, offset)
    pub(crate) blocks: Vec<(i64, usize, usize, usize)>,
    pub(crate) total: usize,
}

impl Layout {
    pub(crate) fn new(shapes: impl IntoIterator<Item = (i64, usize, usize)>) -> Self {
        let mut blocks = Vec::new();
        let mut total = 0;
        for (i, r, c) in shapes {
            if r * c > 0 {
                blocks.push((i, r, c, total));
                total += r * c;
            }
        }
        Layout { blocks, total }
    }

    pub(crate) fn offset(&self, i: i64) -> Option<usize> {
        self.blocks.iter().find(|b| b.0 == i).map(|b| b.3)
    }

    pub(crate) fn unpack(&self, v: &ExactMatrix, col: usize) -> BTreeMap<i64, ExactMatrix> {
        let column = v.submatrix(0, v.rows(), col, col + 1);
        self.blocks
            .iter()
            .map(|&(i, r, c, off)| (i, ExactMatrix::unvectorize(&column, off, r, c)))
            .collect()
    }

    pub(crate) fn pack(&self, domain: Domain, maps: impl Fn(i64) -> ExactMatrix) -> ExactMatrix {
        let parts: Vec<ExactMatrix> = self.blocks.iter().map(|b| maps(b.0).vectorize()).collect();
        let refs: Vec<&ExactMatrix> = parts.iter().collect();
        ExactMatrix::vstack(&refs, domain, 1)
    }
}

/// Degrees `i` where `f^i : X^i -> Y^i` has nonzero shape.
pub(crate) fn map_layout(x: &NComplex, y: &NComplex) -> Layout {
    let Some((lo, hi)) = crate::complex::joint_window(x, y, 0) else { return Layout::new([]) };
    Layout::new((lo..=hi).map(|i| (i, y.dim(i), x.dim(i))))
}

/// Degrees `i` where `s^i : X^i -> Y^{i-N+1}` has nonzero shape.
fn witness_layout(x: &NComplex, y: &NComplex) -> Layout {
    let shift = x.n() as i64 - 1;
    let (Some((xlo, xhi)), Some((ylo, yhi))) = (x.support(), y.support()) else { return Layout::new([]) };
    let (lo, hi) = (xlo.max(ylo + shift), xhi.min(yhi + shift));
    Layout::new((lo..=hi).map(|i| (i, y.dim(i - shift), x.dim(i))))
}

/// Matrix sending stacked witnesses to the stacked maps they realize.
fn realization_operator(x: &NComplex, y: &NComplex, rows: &Layout, cols: &Layout) -> ExactMatrix {
    let n = x.n();
    let mut op = ExactMatrix::zeros(x.domain(), rows.total, cols.total);
    for &(k, _, _, roff) in &rows.blocks {
        for j in 0..n {
            let i = k + j as i64;
            let Some(coff) = cols.offset(i) else { continue };
            let a = y.composite_unchecked(k - (n - 1 - j) as i64, n - 1 - j);
            let b = x.composite_unchecked(k, j);
            op.set_block(roff, coff, &a.kron(&b.transpose()));
        }
    }
    op
}

/// Matrix whose kernel is the space of chain maps `X -> Y`, in the
/// coordinates of [`map_layout`]. Row block `k` is `d_Y f^k - f^{k+1} d_X`.
pub(crate) fn commutation_operator(x: &NComplex, y: &NComplex, cols: &Layout) -> ExactMatrix {
    let dom = x.domain();
    let Some((lo, hi)) = crate::complex::joint_window(x, y, 1) else {
        return ExactMatrix::zeros(dom, 0, 0);
    };
    let rows = Layout::new((lo..=hi).map(|k| (k, y.dim(k + 1), x.dim(k))));
    let mut op = ExactMatrix::zeros(dom, rows.total, cols.total);
    for &(k, _, _, roff) in &rows.blocks {
        if let Some(c) = cols.offset(k) {
            let block = y.diff(k).kron(&ExactMatrix::identity(dom, x.dim(k)));
            op.set_block(roff, c, &block);
        }
        if let Some(c) = cols.offset(k + 1) {
            let block = ExactMatrix::identity(dom, y.dim(k + 1)).kron(&x.diff(k).transpose());
            op.set_block(roff, c, &-&block);
        }
    }
    op
}

impl Homotopy {
    /// Shape-checked witness family. Missing degrees are zero.
    pub fn new(source: NComplex, target: NComplex, witness: BTreeMap<i64, ExactMatrix>) -> Result<Self> {
        source.same_category(&target)?;
        let shift = source.n() as i64 - 1;
        let mut kept = BTreeMap::new();
        for (i, s) in witness {
            let expected = (target.dim(i - shift), source.dim(i));
            if s.shape() != expected {
                return Err(Error::ShapeMismatch { degree: i, expected, found: s.shape() });
            }
            if s.domain() != source.domain() {
                return Err(Error::DomainMismatch { left: source.domain(), right: s.domain() });
            }
            if !s.is_zero() {
                kept.insert(i, s);
            }
        }
        Ok(Homotopy { source, target, witness: kept })
    }

    pub fn zero(source: &NComplex, target: &NComplex) -> Result<Self> {
        Self::new(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &NComplex {
        &self.source
    }

    pub fn target(&self) -> &NComplex {
        &self.target
    }

    /// `s^i : X^i -> Y^{i-N+1}`.
    pub fn witness_at(&self, i: i64) -> ExactMatrix {
        match self.witness.get(&i) {
            Some(s) => s.clone(),
            None => {
                let shift = self.source.n() as i64 - 1;
                ExactMatrix::zeros(self.source.domain(), self.target.dim(i - shift), self.source.dim(i))
            }
        }
    }

    /// Nonzero witness components, keyed by degree.
    pub fn witnesses(&self) -> &BTreeMap<i64, ExactMatrix> {
        &self.witness
    }

    /// The map this family witnesses, evaluated term by term. The result is
    /// checked to commute with the differentials.
    pub fn realize(&self) -> Result<ChainMap> {
        let (x, y) = (&self.source, &self.target);
        let n = x.n();
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = crate::complex::joint_window(x, y, 0) {
            for k in lo..=hi {
                let mut acc = ExactMatrix::zeros(x.domain(), y.dim(k), x.dim(k));
                for j in 0..n {
                    let s = self.witness.get(&(k + j as i64));
                    let Some(s) = s else { continue };
                    let a = y.composite_unchecked(k - (n - 1 - j) as i64, n - 1 - j);
                    let b = x.composite_unchecked(k, j);
                    acc = &acc + &(&(&a * s) * &b);
                }
                comps.insert(k, acc);
            }
        }
        ChainMap::new(x.clone(), y.clone(), comps)
    }
}

/// A witness `s` realizing `f`, or `None` when `f` is not null-homotopic.
/// Over the integers the witness must be integral.
pub fn null_homotopy(f: &ChainMap) -> Result<Option<Homotopy>> {
    let (x, y) = (f.source(), f.target());
    let rows = map_layout(x, y);
    let cols = witness_layout(x, y);
    let op = realization_operator(x, y, &rows, &cols);
    let rhs = rows.pack(x.domain(), |i| f.component(i).into_owned());
    let Some(sol) = linalg::solve(&op, &rhs)? else { return Ok(None) };
    let witness = if cols.total == 0 { BTreeMap::new() } else { cols.unpack(&sol, 0) };
    Homotopy::new(x.clone(), y.clone(), witness).map(Some)
}

pub fn homotopic(f: &ChainMap, g: &ChainMap) -> Result<bool> {
    Ok(null_homotopy(&f.sub(g)?)?.is_some())
}

fn require_field(op: &'static str, domain: Domain) -> Result<()> {
    if !domain.is_field() {
        return Err(Error::UnsupportedDomain { op, domain });
    }
    Ok(())
}

/// Dimensions of chain maps, null-homotopic maps and homotopy classes
/// `X -> Y`. Field coefficients only.
pub fn hom_k(x: &NComplex, y: &NComplex) -> Result<HomKSpace> {
    x.same_category(y)?;
    require_field("hom_k", x.domain())?;
    let maps = map_layout(x, y);
    let dim_chain_maps = maps.total - linalg::rank(&commutation_operator(x, y, &maps));
    let dim_null_homotopic = linalg::rank(&realization_operator(x, y, &maps, &witness_layout(x, y)));
    Ok(HomKSpace {
        dim_chain_maps,
        dim_null_homotopic,
        dim_homotopy_classes: dim_chain_maps - dim_null_homotopic,
    })
}

/// A basis of the space of chain maps `X -> Y` over a field.
pub fn chain_map_basis(x: &NComplex, y: &NComplex) -> Result<Vec<ChainMap>> {
    x.same_category(y)?;
    require_field("chain_map_basis", x.domain())?;
    let maps = map_layout(x, y);
    let kernel = linalg::kernel_basis(&commutation_operator(x, y, &maps));
    (0..kernel.cols())
        .map(|c| ChainMap::new(x.clone(), y.clone(), maps.unpack(&kernel, c)))
        .collect()
}

/// True iff the identity of `X` is null-homotopic.
pub fn is_contractible(x: &NComplex) -> Result<bool> {
    Ok(null_homotopy(&ChainMap::identity(x))?.is_some())
}

#[cfg(test)]
mod tests;
