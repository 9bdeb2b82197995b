//! N-complexes with finite support, chain maps between them, and amplitude
//! homology.
//!
//! Degrees are cohomological: `d^i : X^i -> X^{i+1}`. A complex stores its
//! objects on an interval `[lo, hi]` and is zero everywhere else. Over the
//! integers every object is the free module of the given rank.

use std::borrow::Cow;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{self, Domain, ExactMatrix, QuotientInvariants};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NComplex {
    n: usize,
    domain: Domain,
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[k]` is `d^{lo + k}`; the differential leaving `hi` is zero.
    diffs: Vec<ExactMatrix>,
}

/// `H^i_r = Z^i_r / B^i_{N-r}` described by its invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmplitudeHomology {
    pub degree: i64,
    pub amplitude: usize,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AmplitudeHomology {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// `X^i / B^i_r`, presented as the ambient free object modulo the column
/// span of `relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ambient: usize,
    pub relations: ExactMatrix,
}

impl Presentation {
    pub fn invariants(&self) -> QuotientInvariants {
        let domain = self.relations.domain();
        linalg::subquotient_invariants(&ExactMatrix::identity(domain, self.ambient), &self.relations)
            .expect("relations live in the ambient object")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactnessMode {
    AllAmplitudes,
    SingleAmplitude(usize),
}

fn check_amplitude(r: usize, min: usize, max: usize) -> Result<()> {
    if r < min || r > max {
        return Err(Error::AmplitudeOutOfRange { r, min, max });
    }
    Ok(())
}

impl NComplex {
    /// Complex with objects `dims[k]` in degree `lo + k` and differentials
    /// `diffs[k] = d^{lo+k}`. Only shapes are checked here; see
    /// [`validate`](Self::validate) and [`checked`](Self::checked).
    pub fn new(n: usize, domain: Domain, lo: i64, dims: Vec<usize>, diffs: Vec<ExactMatrix>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidN(n));
        }
        if diffs.len() != dims.len().saturating_sub(1) {
            return Err(Error::ShapeMismatch {
                degree: lo + diffs.len() as i64,
                expected: (dims.len().saturating_sub(1), 0),
                found: (diffs.len(), 0),
            });
        }
        for (k, d) in diffs.iter().enumerate() {
            let expected = (dims[k + 1], dims[k]);
            if d.domain() != domain {
                return Err(Error::DomainMismatch { left: domain, right: d.domain() });
            }
            if d.shape() != expected {
                return Err(Error::ShapeMismatch { degree: lo + k as i64, expected, found: d.shape() });
            }
        }
        let mut x = NComplex { n, domain, lo, dims, diffs };
        x.trim();
        Ok(x)
    }

    /// [`new`](Self::new) followed by the nilpotency check.
    pub fn checked(n: usize, domain: Domain, lo: i64, dims: Vec<usize>, diffs: Vec<ExactMatrix>) -> Result<Self> {
        let x = Self::new(n, domain, lo, dims, diffs)?;
        match x.nilpotency_violation() {
            Some(degree) => Err(Error::NotNilpotent { degree, n }),
            None => Ok(x),
        }
    }

    /// Builds a complex from sparse degree maps. Differentials at degrees
    /// whose source or target is zero may be omitted; any given must have the
    /// right shape.
    pub fn from_maps(
        n: usize,
        domain: Domain,
        objects: &BTreeMap<i64, usize>,
        diffs: &BTreeMap<i64, ExactMatrix>,
    ) -> Result<Self> {
        let dim = |i: i64| objects.get(&i).copied().unwrap_or(0);
        for (&i, d) in diffs {
            let expected = (dim(i + 1), dim(i));
            if d.shape() != expected {
                return Err(Error::ShapeMismatch { degree: i, expected, found: d.shape() });
            }
        }
        let (Some(&lo), Some(&hi)) = (objects.keys().next(), objects.keys().next_back()) else {
            return Self::new(n, domain, 0, vec![], vec![]);
        };
        let dims: Vec<usize> = (lo..=hi).map(dim).collect();
        let ds = (lo..hi)
            .map(|i| {
                diffs
                    .get(&i)
                    .cloned()
                    .unwrap_or_else(|| ExactMatrix::zeros(domain, dim(i + 1), dim(i)))
            })
            .collect();
        Self::new(n, domain, lo, dims, ds)
    }

    pub fn zero(n: usize, domain: Domain) -> Self {
        Self::new(n, domain, 0, vec![], vec![]).expect("empty complex")
    }

    /// Single object of dimension `dim` in `degree`, zero differentials.
    pub fn stalk(n: usize, domain: Domain, degree: i64, dim: usize) -> Self {
        Self::new(n, domain, degree, vec![dim], vec![]).expect("stalk complex")
    }

    /// The disc `D^j_i(M)`: `M` (free of rank `m`) in degrees
    /// `j - i + 1 ..= j`, joined by identities.
    pub fn disc(n: usize, domain: Domain, j: i64, i: usize, m: usize) -> Result<Self> {
        check_amplitude(i, 1, n)?;
        let ids = vec![ExactMatrix::identity(domain, m); i - 1];
        Self::new(n, domain, j - i as i64 + 1, vec![m; i], ids)
    }

    fn trim(&mut self) {
        let first = self.dims.iter().position(|&d| d > 0);
        let Some(first) = first else {
            self.lo = 0;
            self.dims.clear();
            self.diffs.clear();
            return;
        };
        let last = self.dims.iter().rposition(|&d| d > 0).expect("nonempty");
        self.dims.truncate(last + 1);
        self.diffs.truncate(last);
        self.dims.drain(..first);
        self.diffs.drain(..first);
        self.lo += first as i64;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// `[lo, hi]` of the nonzero objects, or `None` for the zero complex.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.dims.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.dims.len() as i64 - 1))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, i: i64) -> usize {
        if i < self.lo {
            return 0;
        }
        self.dims.get((i - self.lo) as usize).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d^i : X^i -> X^{i+1}` (a zero matrix of the right shape outside the
    /// stored range).
    pub fn diff(&self, i: i64) -> Cow<'_, ExactMatrix> {
        if i >= self.lo {
            if let Some(d) = self.diffs.get((i - self.lo) as usize) {
                return Cow::Borrowed(d);
            }
        }
        Cow::Owned(ExactMatrix::zeros(self.domain, self.dim(i + 1), self.dim(i)))
    }

    pub(crate) fn composite_unchecked(&self, i: i64, r: usize) -> ExactMatrix {
        let mut acc = ExactMatrix::identity(self.domain, self.dim(i));
        for k in 0..r as i64 {
            acc = &*self.diff(i + k) * &acc;
        }
        acc
    }

    /// `d^i_{r} = d^{i+r-1} ... d^i`, with `d^i_{0}` the identity.
    pub fn composite(&self, i: i64, r: usize) -> Result<ExactMatrix> {
        check_amplitude(r, 0, self.n)?;
        Ok(self.composite_unchecked(i, r))
    }

    /// First degree whose N-fold composite is nonzero.
    pub fn nilpotency_violation(&self) -> Option<i64> {
        let (lo, hi) = self.support()?;
        (lo..=hi).find(|&i| !self.composite_unchecked(i, self.n).is_zero())
    }

    /// True iff every N-fold composite of consecutive differentials vanishes.
    pub fn validate(&self) -> bool {
        self.nilpotency_violation().is_none()
    }

    /// Generators of `Z^i_r = ker d^i_{r}`, `1 <= r <= N`.
    pub fn cycles(&self, i: i64, r: usize) -> Result<ExactMatrix> {
        check_amplitude(r, 1, self.n)?;
        if r == self.n {
            return Ok(ExactMatrix::identity(self.domain, self.dim(i)));
        }
        Ok(linalg::kernel_basis(&self.composite_unchecked(i, r)))
    }

    /// Generators of `B^i_r = im d^{i-r}_{r}`, `1 <= r <= N`.
    pub fn boundaries(&self, i: i64, r: usize) -> Result<ExactMatrix> {
        check_amplitude(r, 1, self.n)?;
        Ok(self.composite_unchecked(i - r as i64, r))
    }

    /// `C^i_r = X^i / B^i_r`.
    pub fn cokernel_presentation(&self, i: i64, r: usize) -> Result<Presentation> {
        Ok(Presentation { ambient: self.dim(i), relations: self.boundaries(i, r)? })
    }

    /// `H^i_r = Z^i_r / B^i_{N-r}`, `1 <= r <= N-1`.
    pub fn homology(&self, i: i64, r: usize) -> Result<AmplitudeHomology> {
        check_amplitude(r, 1, self.n - 1)?;
        let z = self.cycles(i, r)?;
        let b = self.boundaries(i, self.n - r)?;
        // B^i_{N-r} lies in Z^i_r exactly when the complex is valid.
        let q = linalg::subquotient_invariants(&z, &b).map_err(|_| Error::NotNilpotent { degree: i - (self.n - r) as i64, n: self.n })?;
        Ok(AmplitudeHomology { degree: i, amplitude: r, free_rank: q.free_rank, torsion: q.torsion })
    }

    /// All `H^i_r` over the support, degree-major.
    pub fn homology_table(&self) -> Vec<AmplitudeHomology> {
        let Some((lo, hi)) = self.support() else { return Vec::new() };
        (lo..=hi)
            .flat_map(|i| (1..self.n).map(move |r| (i, r)))
            .map(|(i, r)| self.homology(i, r).expect("amplitude in range"))
            .collect()
    }

    /// First `(i, r)` with nonzero homology among the amplitudes selected by
    /// `mode`.
    pub fn first_nonvanishing(&self, mode: ExactnessMode) -> Result<Option<(i64, usize)>> {
        let amplitudes: Vec<usize> = match mode {
            ExactnessMode::AllAmplitudes => (1..self.n).collect(),
            ExactnessMode::SingleAmplitude(r) => {
                check_amplitude(r, 1, self.n - 1)?;
                vec![r]
            }
        };
        let Some((lo, hi)) = self.support() else { return Ok(None) };
        for i in lo..=hi {
            for &r in &amplitudes {
                if !self.homology(i, r)?.is_zero() {
                    return Ok(Some((i, r)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_n_exact(&self, mode: ExactnessMode) -> Result<bool> {
        Ok(self.first_nonvanishing(mode)?.is_none())
    }

    /// Whether the restriction `d^n : Z^n_r -> Z^{n+1}_{r-1}` is onto,
    /// `1 <= r <= N`.
    pub fn induced_differential_is_epi(&self, n: i64, r: usize) -> Result<bool> {
        check_amplitude(r, 1, self.n)?;
        if r == 1 {
            return Ok(true);
        }
        let image = &*self.diff(n) * &self.cycles(n, r)?;
        let target = self.cycles(n + 1, r - 1)?;
        let q = linalg::subquotient_invariants(&target, &image)
            .map_err(|_| Error::NotNilpotent { degree: n - (self.n - r) as i64 + 1, n: self.n })?;
        Ok(q.is_zero())
    }

    /// Every induced `d^n_r` is an epimorphism.
    pub fn all_induced_differentials_epi(&self) -> bool {
        let Some((lo, hi)) = self.support() else { return true };
        (lo - 1..=hi).all(|n| (2..=self.n).all(|r| self.induced_differential_is_epi(n, r).expect("in range")))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.domain != other.domain {
            return Err(Error::ComplexMismatch);
        }
        let (lo, hi) = match (self.support(), other.support()) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        };
        let dims = (lo..=hi).map(|i| self.dim(i) + other.dim(i)).collect();
        let diffs = (lo..hi)
            .map(|i| {
                ExactMatrix::from_blocks(
                    self.domain,
                    &[self.dim(i + 1), other.dim(i + 1)],
                    &[self.dim(i), other.dim(i)],
                    |a, b| match (a, b) {
                        (0, 0) => Some(self.diff(i).into_owned()),
                        (1, 1) => Some(other.diff(i).into_owned()),
                        _ => None,
                    },
                )
            })
            .collect();
        Self::new(self.n, self.domain, lo, dims, diffs)
    }

    pub(crate) fn same_category(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.domain != other.domain {
            return Err(Error::ComplexMismatch);
        }
        Ok(())
    }
}

/// Union of the supports of two complexes, widened by `pad` on each side.
pub(crate) fn joint_window(a: &NComplex, b: &NComplex, pad: i64) -> Option<(i64, i64)> {
    let w = match (a.support(), b.support()) {
        (None, None) => return None,
        (Some(s), None) | (None, Some(s)) => s,
        (Some(x), Some(y)) => (x.0.min(y.0), x.1.max(y.1)),
    };
    Some((w.0 - pad, w.1 + pad))
}

/// A degreewise family `f^i : X^i -> Y^i` commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: NComplex,
    target: NComplex,
    /// Only nonzero components are stored, so equality is exact.
    components: BTreeMap<i64, ExactMatrix>,
}

impl ChainMap {
    /// Checks shapes and the commutation `d_Y f^i = f^{i+1} d_X`.
    pub fn new(source: NComplex, target: NComplex, components: BTreeMap<i64, ExactMatrix>) -> Result<Self> {
        let f = Self::degreewise(source, target, components)?;
        match f.commutation_defect() {
            Some(degree) => Err(Error::NotAChainMap { degree }),
            None => Ok(f),
        }
    }

    /// Shape-checked family that need not commute with the differentials.
    pub(crate) fn degreewise(
        source: NComplex,
        target: NComplex,
        components: BTreeMap<i64, ExactMatrix>,
    ) -> Result<Self> {
        source.same_category(&target)?;
        let mut kept = BTreeMap::new();
        for (i, m) in components {
            let expected = (target.dim(i), source.dim(i));
            if m.shape() != expected {
                return Err(Error::ShapeMismatch { degree: i, expected, found: m.shape() });
            }
            if m.domain() != source.domain() {
                return Err(Error::DomainMismatch { left: source.domain(), right: m.domain() });
            }
            if !m.is_zero() {
                kept.insert(i, m);
            }
        }
        Ok(ChainMap { source, target, components: kept })
    }

    pub fn zero(source: &NComplex, target: &NComplex) -> Result<Self> {
        Self::degreewise(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn identity(x: &NComplex) -> Self {
        let comps = x
            .support()
            .map(|(lo, hi)| (lo..=hi).map(|i| (i, ExactMatrix::identity(x.domain(), x.dim(i)))).collect())
            .unwrap_or_default();
        Self::degreewise(x.clone(), x.clone(), comps).expect("identity is well shaped")
    }

    pub fn source(&self) -> &NComplex {
        &self.source
    }

    pub fn target(&self) -> &NComplex {
        &self.target
    }

    pub fn component(&self, i: i64) -> Cow<'_, ExactMatrix> {
        match self.components.get(&i) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(ExactMatrix::zeros(self.source.domain(), self.target.dim(i), self.source.dim(i))),
        }
    }

    /// Stored components, keyed by degree.
    pub fn components(&self) -> &BTreeMap<i64, ExactMatrix> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(ExactMatrix::is_zero)
    }

    /// First degree where `d_Y f^i != f^{i+1} d_X`.
    pub fn commutation_defect(&self) -> Option<i64> {
        let (lo, hi) = joint_window(&self.source, &self.target, 1)?;
        (lo..=hi).find(|&i| {
            let left = &*self.target.diff(i) * &self.component(i);
            let right = &*self.component(i + 1) * &self.source.diff(i);
            left != right
        })
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ChainMap) -> Result<ChainMap> {
        if f.target != self.source {
            return Err(Error::EndpointMismatch);
        }
        let comps = f
            .components
            .keys()
            .filter(|i| self.components.contains_key(i))
            .map(|&i| (i, &self.components[&i] * &f.components[&i]))
            .collect();
        Self::degreewise(f.source.clone(), self.target.clone(), comps)
    }

    fn zip(&self, other: &ChainMap, sub: bool) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::EndpointMismatch);
        }
        let mut comps = self.components.clone();
        for (i, m) in &other.components {
            let base = self.component(*i);
            comps.insert(*i, if sub { &*base - m } else { &*base + m });
        }
        Self::degreewise(self.source.clone(), self.target.clone(), comps)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip(other, false)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip(other, true)
    }

    pub fn neg(&self) -> ChainMap {
        let comps = self.components.iter().map(|(&i, m)| (i, -m)).collect();
        Self::degreewise(self.source.clone(), self.target.clone(), comps).expect("same shapes")
    }

    pub fn scale(&self, c: &num_rational::BigRational) -> Result<ChainMap> {
        let comps = self
            .components
            .iter()
            .map(|(&i, m)| Ok((i, m.scale(c)?)))
            .collect::<Result<_>>()?;
        Self::degreewise(self.source.clone(), self.target.clone(), comps)
    }
}
