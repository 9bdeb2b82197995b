//! Mapping cones, suspensions, the hull `I(-)`, the extension map `psi` and
//! strict retractions of the cone inclusion.
//!
//! Every construction is a complex of block objects. Block orders:
//!
//! * `C(f)^m = Y^m ⊕ X^{m+1} ⊕ ... ⊕ X^{m+N-1}`
//! * `(ΣX)^m = X^{m+1} ⊕ ... ⊕ X^{m+N-1}`
//! * `(Σ⁻¹X)^m = X^{m-N+1} ⊕ ... ⊕ X^{m-1}`
//! * `I(X)^m = X^m ⊕ ... ⊕ X^{m+N-1}`

use std::collections::BTreeMap;

use crate::complex::{joint_window, ChainMap, NComplex};
use crate::error::{Error, Result};
use crate::homotopy::{self, Homotopy, Layout};
use crate::linalg::{self, Domain, ExactMatrix};

/// `X -f-> Y -u-> C(f) -p-> ΣX`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictTriangle {
    pub f: ChainMap,
    pub into_cone: ChainMap,
    pub onto_suspension: ChainMap,
}

impl StrictTriangle {
    pub fn cone(&self) -> &NComplex {
        self.into_cone.target()
    }
}

/// `0 -> left -inj-> middle -surj-> right -> 0`, split exact in each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreewiseSplitSES {
    inj: ChainMap,
    surj: ChainMap,
}

type Block = Option<ExactMatrix>;

/// Complex whose object in degree `m` has summands `sizes(m)` and whose
/// differential `d^m` has block `(target, source)` given by `block(m, t, s)`.
fn assemble(
    n: usize,
    domain: Domain,
    window: Option<(i64, i64)>,
    sizes: impl Fn(i64) -> Vec<usize>,
    block: impl Fn(i64, usize, usize) -> Block,
) -> NComplex {
    let Some((lo, hi)) = window else { return NComplex::zero(n, domain) };
    let dims: Vec<usize> = (lo..=hi).map(|m| sizes(m).iter().sum()).collect();
    let diffs = (lo..hi)
        .map(|m| ExactMatrix::from_blocks(domain, &sizes(m + 1), &sizes(m), |t, s| block(m, t, s)))
        .collect();
    NComplex::new(n, domain, lo, dims, diffs).expect("blocks have matching shapes")
}

/// Chain map between block complexes; `block(m, t, s)` as in [`assemble`].
fn assemble_map(
    source: &NComplex,
    target: &NComplex,
    source_sizes: impl Fn(i64) -> Vec<usize>,
    target_sizes: impl Fn(i64) -> Vec<usize>,
    block: impl Fn(i64, usize, usize) -> Block,
) -> Result<ChainMap> {
    let mut comps = BTreeMap::new();
    if let Some((lo, hi)) = joint_window(source, target, 0) {
        for m in lo..=hi {
            let mat = ExactMatrix::from_blocks(source.domain(), &target_sizes(m), &source_sizes(m), |t, s| {
                block(m, t, s)
            });
            comps.insert(m, mat);
        }
    }
    ChainMap::new(source.clone(), target.clone(), comps)
}

fn neg(m: ExactMatrix) -> ExactMatrix {
    -&m
}

fn widen(x: &NComplex, pad: i64) -> Option<(i64, i64)> {
    x.support().map(|(lo, hi)| (lo - pad, hi + pad))
}

fn cone_sizes<'a>(x: &'a NComplex, y: &'a NComplex) -> impl Fn(i64) -> Vec<usize> + 'a {
    move |m| {
        let mut v = vec![y.dim(m)];
        v.extend((1..x.n() as i64).map(|c| x.dim(m + c)));
        v
    }
}

fn susp_sizes(x: &NComplex) -> impl Fn(i64) -> Vec<usize> + '_ {
    move |m| (1..x.n() as i64).map(|c| x.dim(m + c)).collect()
}

fn inv_susp_sizes(x: &NComplex) -> impl Fn(i64) -> Vec<usize> + '_ {
    let n = x.n() as i64;
    move |m| (0..n - 1).map(|b| x.dim(m - n + 1 + b)).collect()
}

fn hull_sizes(x: &NComplex) -> impl Fn(i64) -> Vec<usize> + '_ {
    move |m| (0..x.n() as i64).map(|c| x.dim(m + c)).collect()
}

/// The mapping cone of `f : X -> Y` and its strict triangle.
pub fn cone(f: &ChainMap) -> Result<(NComplex, StrictTriangle)> {
    let (x, y) = (f.source(), f.target());
    let n = x.n();
    let window = joint_window(x, y, n as i64);
    let c = assemble(n, x.domain(), window, cone_sizes(x, y), |m, t, s| match (t, s) {
        (0, 0) => Some(y.diff(m).into_owned()),
        (0, 1) => Some(f.component(m + 1).into_owned()),
        (t, s) if t == n - 1 && s >= 1 => Some(neg(x.composite_unchecked(m + s as i64, n - s))),
        (t, s) if s == t + 1 => Some(ExactMatrix::identity(x.domain(), x.dim(m + s as i64))),
        _ => None,
    });
    let sx = suspension(x);
    let u = assemble_map(y, &c, |m| vec![y.dim(m)], cone_sizes(x, y), |m, t, _| {
        (t == 0).then(|| ExactMatrix::identity(x.domain(), y.dim(m)))
    })?;
    let p = assemble_map(&c, &sx, cone_sizes(x, y), susp_sizes(x), |m, t, s| {
        (s == t + 1).then(|| ExactMatrix::identity(x.domain(), x.dim(m + s as i64)))
    })?;
    Ok((c, StrictTriangle { f: f.clone(), into_cone: u, onto_suspension: p }))
}

/// `ΣX`: identity superdiagonal, last row `-d_{N-1-c}` out of block `c`.
pub fn suspension(x: &NComplex) -> NComplex {
    let n = x.n();
    assemble(n, x.domain(), widen(x, n as i64), susp_sizes(x), |m, t, s| {
        if t == n - 2 {
            Some(neg(x.composite_unchecked(m + 1 + s as i64, n - 1 - s)))
        } else if s == t + 1 {
            Some(ExactMatrix::identity(x.domain(), x.dim(m + 1 + s as i64)))
        } else {
            None
        }
    })
}

/// `Σ⁻¹X`: first column `-d_{t+1}` into block `t`, identity superdiagonal.
pub fn inv_suspension(x: &NComplex) -> NComplex {
    let n = x.n() as i64;
    assemble(x.n(), x.domain(), widen(x, n), inv_susp_sizes(x), |m, t, s| {
        if s == 0 {
            Some(neg(x.composite_unchecked(m - n + 1, t + 1)))
        } else if s == t + 1 {
            Some(ExactMatrix::identity(x.domain(), x.dim(m - n + 1 + s as i64)))
        } else {
            None
        }
    })
}

/// `I(X)` with the pure shift differential, and the split monomorphism
/// `X -> I(X)`, `x ↦ (x, d x, d_2 x, ..., d_{N-1} x)`.
pub fn hull(x: &NComplex) -> Result<(NComplex, ChainMap)> {
    let n = x.n();
    let h = assemble(n, x.domain(), widen(x, n as i64), hull_sizes(x), |m, t, s| {
        (s == t + 1).then(|| ExactMatrix::identity(x.domain(), x.dim(m + s as i64)))
    });
    let iota = assemble_map(x, &h, |m| vec![x.dim(m)], hull_sizes(x), |m, t, _| Some(x.composite_unchecked(m, t)))?;
    Ok((h, iota))
}

/// Block sizes of `ΣΣ⁻¹Y`: block `(c, b)` (flattened `(c-1)(N-1) + b`)
/// holds `Y^{m+c-N+1+b}`, for `1 <= c <= N-1`, `0 <= b <= N-2`.
fn double_sizes(y: &NComplex) -> impl Fn(i64) -> Vec<usize> + '_ {
    let n = y.n() as i64;
    move |m| {
        (1..n)
            .flat_map(|c| (0..n - 1).map(move |b| (c, b)))
            .map(|(c, b)| y.dim(m + c - n + 1 + b))
            .collect()
    }
}

/// `Y -> ΣΣ⁻¹Y`, `y ↦ d_{c-1} y` in block `(c, N-2)`.
pub fn unit(y: &NComplex) -> Result<ChainMap> {
    let n = y.n();
    let target = suspension(&inv_suspension(y));
    assemble_map(y, &target, |m| vec![y.dim(m)], double_sizes(y), |m, t, _| {
        let (c, b) = (t / (n - 1) + 1, t % (n - 1));
        (b == n - 2).then(|| y.composite_unchecked(m, c - 1))
    })
}

/// `ΣΣ⁻¹Y -> Y`, the identity on each block `(c, N-1-c)`.
pub fn counit(y: &NComplex) -> Result<ChainMap> {
    let n = y.n();
    let source = suspension(&inv_suspension(y));
    assemble_map(&source, y, double_sizes(y), |m| vec![y.dim(m)], |m, _, s| {
        let (c, b) = (s / (n - 1) + 1, s % (n - 1));
        (b + c == n - 1).then(|| ExactMatrix::identity(y.domain(), y.dim(m)))
    })
}

/// Block sizes of `Σ⁻¹ΣX`: block `(b, c)` (flattened `b(N-1) + c`) holds
/// `X^{m-N+2+b+c}`, for `0 <= b, c <= N-2`.
fn inv_double_sizes(x: &NComplex) -> impl Fn(i64) -> Vec<usize> + '_ {
    let n = x.n() as i64;
    move |m| {
        (0..n - 1)
            .flat_map(|b| (0..n - 1).map(move |c| (b, c)))
            .map(|(b, c)| x.dim(m - n + 2 + b + c))
            .collect()
    }
}

/// `X -> Σ⁻¹ΣX`, the identity into every block `(b, N-2-b)`.
pub fn inverse_unit(x: &NComplex) -> Result<ChainMap> {
    let n = x.n();
    let target = inv_suspension(&suspension(x));
    assemble_map(x, &target, |m| vec![x.dim(m)], inv_double_sizes(x), |m, t, _| {
        (t / (n - 1) + t % (n - 1) == n - 2).then(|| ExactMatrix::identity(x.domain(), x.dim(m)))
    })
}

impl DegreewiseSplitSES {
    /// Checks `surj ∘ inj = 0` and degreewise split exactness.
    pub fn new(inj: ChainMap, surj: ChainMap) -> Result<Self> {
        if inj.target() != surj.source() {
            return Err(Error::EndpointMismatch);
        }
        let bad = |m: i64, what: &str| Err(Error::InvalidSequence(format!("degree {m}: {what}")));
        if let Some((lo, hi)) = joint_window(inj.source(), surj.target(), 0)
            .into_iter()
            .chain(inj.target().support())
            .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
        {
            for m in lo..=hi {
                let (i, s) = (inj.component(m), surj.component(m));
                let (l, r) = (i.cols(), s.rows());
                if !(&*s * &*i).is_zero() {
                    return bad(m, "surj ∘ inj is nonzero");
                }
                if i.rows() != l + r {
                    return bad(m, "dimensions do not add up");
                }
                let dom = i.domain();
                let retraction = linalg::solve(&i.transpose(), &ExactMatrix::identity(dom, l))?;
                if retraction.is_none() {
                    return bad(m, "inj has no left inverse");
                }
                if linalg::solve(&s, &ExactMatrix::identity(dom, r))?.is_none() {
                    return bad(m, "surj has no right inverse");
                }
            }
        }
        Ok(DegreewiseSplitSES { inj, surj })
    }

    pub fn left(&self) -> &NComplex {
        self.inj.source()
    }

    pub fn middle(&self) -> &NComplex {
        self.inj.target()
    }

    pub fn right(&self) -> &NComplex {
        self.surj.target()
    }

    pub fn inj(&self) -> &ChainMap {
        &self.inj
    }

    pub fn surj(&self) -> &ChainMap {
        &self.surj
    }
}

/// The extension of `Y` by `X` attached to `f : Σ⁻¹Y -> X`.
///
/// The middle term is `E^m = X^m ⊕ Y^m` with differential
/// `[[d_X, g], [0, d_Y]]`, where `g^m(y) = f^{m+1}(0, ..., 0, y)` reads `y` in
/// the last block of `(Σ⁻¹Y)^{m+1}`. It is the pullback of
/// `X -> C(f) -> ΣΣ⁻¹Y` along the unit `Y -> ΣΣ⁻¹Y`.
pub fn psi(f: &ChainMap, y: &NComplex) -> Result<DegreewiseSplitSES> {
    let x = f.target();
    if *f.source() != inv_suspension(y) {
        return Err(Error::SourceShapeMismatch);
    }
    let n = x.n();
    let dom = x.domain();
    let sizes = |m: i64| vec![x.dim(m), y.dim(m)];
    let glue = |m: i64| {
        let full = f.component(m + 1);
        let c = full.cols();
        full.submatrix(0, full.rows(), c - y.dim(m), c)
    };
    let e = assemble(n, dom, joint_window(x, y, 0), sizes, |m, t, s| match (t, s) {
        (0, 0) => Some(x.diff(m).into_owned()),
        (0, 1) => Some(glue(m)),
        (1, 1) => Some(y.diff(m).into_owned()),
        _ => None,
    });
    if let Some(degree) = e.nilpotency_violation() {
        return Err(Error::NotNilpotent { degree, n });
    }
    let inj = assemble_map(x, &e, |m| vec![x.dim(m)], sizes, |m, t, _| {
        (t == 0).then(|| ExactMatrix::identity(dom, x.dim(m)))
    })?;
    let surj = assemble_map(&e, y, sizes, |m| vec![y.dim(m)], |m, _, s| {
        (s == 1).then(|| ExactMatrix::identity(dom, y.dim(m)))
    })?;
    DegreewiseSplitSES::new(inj, surj)
}

/// A chain map `r : middle -> left` with `r ∘ inj = 1`, if the sequence
/// splits as complexes.
pub fn split_test(ses: &DegreewiseSplitSES) -> Result<Option<ChainMap>> {
    let (left, middle) = (ses.left(), ses.middle());
    let dom = left.domain();
    let maps = homotopy::map_layout(middle, left);
    let commute = homotopy::commutation_operator(middle, left, &maps);
    // r^m inj^m = 1 for every degree where left is nonzero.
    let eqs = Layout::new(maps.blocks.iter().map(|&(m, r, _, _)| (m, r, r)));
    let mut retract = ExactMatrix::zeros(dom, eqs.total, maps.total);
    for &(m, r, _, off) in &eqs.blocks {
        let block = ExactMatrix::identity(dom, r).kron(&ses.inj.component(m).transpose());
        retract.set_block(off, maps.offset(m).expect("same degrees"), &block);
    }
    let a = ExactMatrix::vstack(&[&commute, &retract], dom, maps.total);
    let rhs = ExactMatrix::vstack(
        &[&ExactMatrix::zeros(dom, commute.rows(), 1), &eqs.pack(dom, |m| ExactMatrix::identity(dom, left.dim(m)))],
        dom,
        1,
    );
    let Some(sol) = linalg::solve(&a, &rhs)? else { return Ok(None) };
    let comps = if maps.total == 0 { BTreeMap::new() } else { maps.unpack(&sol, 0) };
    let r = ChainMap::new(middle.clone(), left.clone(), comps)?;
    if !r.compose(&ses.inj)?.sub(&ChainMap::identity(left))?.is_zero() {
        return Err(Error::InvalidSequence("retraction check failed".into()));
    }
    Ok(Some(r))
}

/// Upgrades a homotopy retraction `r` of `u : Y -> C(f)` to a strict one.
///
/// `t` must witness `1 - r∘u`. The result is
/// `a(y, x_1, ..., x_{N-1}) = y + sum_{c=1}^{N-1} sum_{i=1}^{N-c}
/// d_{N-i-c} t d_{i-1} f(x_c) + r(0, x_1, ..., x_{N-1})`.
pub fn lemma41_retraction(f: &ChainMap, r: &ChainMap, t: &Homotopy) -> Result<ChainMap> {
    let (x, y) = (f.source(), f.target());
    let (c, tri) = cone(f)?;
    if *r.source() != c || r.target() != y || t.source() != y || t.target() != y {
        return Err(Error::EndpointMismatch);
    }
    let realized = t.realize()?;
    let expected = ChainMap::identity(y).sub(&r.compose(&tri.into_cone)?)?;
    let diff = realized.sub(&expected)?;
    if let Some((&degree, _)) = diff.components().iter().next() {
        return Err(Error::WitnessInvalid { degree });
    }
    let n = x.n();
    let sizes = cone_sizes(x, y);
    assemble_map(&c, y, &sizes, |m| vec![y.dim(m)], |m, _, s| {
        let width = sizes(m)[s];
        let off: usize = sizes(m)[..s].iter().sum();
        let rm = r.component(m);
        let mut block = rm.submatrix(0, rm.rows(), off, off + width);
        if s == 0 {
            return Some(ExactMatrix::identity(y.domain(), y.dim(m)));
        }
        let cc = s as i64;
        for i in 1..=(n - s) as i64 {
            let len = n as i64 - i - cc;
            let outer = y.composite_unchecked(m + i + cc - n as i64, len as usize);
            let inner = y.composite_unchecked(m + cc, (i - 1) as usize);
            let term = &(&(&outer * &t.witness_at(m + i + cc - 1)) * &inner) * &f.component(m + cc);
            block = &block + &term;
        }
        Some(block)
    })
}
