//! Class predicates on N-complexes, degreewise-split Ext over a field, and
//! the disc-extension criterion for N-exactness.

use std::fmt;
use std::str::FromStr;

use crate::complex::{ChainMap, ExactnessMode, NComplex};
use crate::error::{Error, Result};
use crate::homotopy::{self, HomKSpace};
use crate::linalg::{self, Domain, ExactMatrix};
use crate::triangle;

/// Predicate on the objects of a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseClass {
    All,
    /// Free modules (integers only).
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Every object lies in the base class.
    Degreewise,
    /// N-exact with every cycle object `Z^i_r` in the base class.
    ExactTilde,
    /// Degreewise and N-exact.
    Ex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassSpec {
    pub base: BaseClass,
    pub variant: Variant,
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            BaseClass::All => "all",
            BaseClass::Free => "free",
        };
        let variant = match self.variant {
            Variant::Degreewise => "degreewise",
            Variant::ExactTilde => "exact-tilde",
            Variant::Ex => "ex",
        };
        write!(f, "{base}:{variant}")
    }
}

/// Parses `base:variant`, e.g. `all:ex` or `free:degreewise`.
impl FromStr for ClassSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (base, variant) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected base:variant, got {s:?}")))?;
        let base = match base {
            "all" => BaseClass::All,
            "free" => BaseClass::Free,
            other => return Err(Error::Parse(format!("unknown base class {other:?}"))),
        };
        let variant = match variant {
            "degreewise" => Variant::Degreewise,
            "exact-tilde" => Variant::ExactTilde,
            "ex" => Variant::Ex,
            other => return Err(Error::Parse(format!("unknown class variant {other:?}"))),
        };
        Ok(ClassSpec { base, variant })
    }
}

fn require_field(op: &'static str, domain: Domain) -> Result<()> {
    if !domain.is_field() {
        return Err(Error::UnsupportedDomain { op, domain });
    }
    Ok(())
}

/// Whether the span of `gens` is a free direct summand (over the integers:
/// saturated, so the quotient is torsion-free).
fn spans_free_summand(gens: &ExactMatrix) -> Result<bool> {
    let ambient = ExactMatrix::identity(gens.domain(), gens.rows());
    Ok(linalg::subquotient_invariants(&ambient, gens)?.torsion.is_empty())
}

fn base_holds(x: &NComplex, base: BaseClass, cycles: bool) -> Result<bool> {
    match base {
        BaseClass::All => Ok(true),
        BaseClass::Free if x.domain() != Domain::Integers => {
            Err(Error::UnsupportedClass { base: "free".into(), domain: x.domain() })
        }
        BaseClass::Free => {
            // Objects are free by construction; cycle subgroups are checked.
            if !cycles {
                return Ok(true);
            }
            let Some((lo, hi)) = x.support() else { return Ok(true) };
            for i in lo..=hi {
                for r in 1..x.n() {
                    if !spans_free_summand(&x.cycles(i, r)?)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

pub fn class_membership(x: &NComplex, spec: ClassSpec) -> Result<bool> {
    let exact = || x.is_n_exact(ExactnessMode::AllAmplitudes);
    match spec.variant {
        Variant::Degreewise => base_holds(x, spec.base, false),
        Variant::Ex => Ok(base_holds(x, spec.base, false)? && exact()?),
        Variant::ExactTilde => Ok(base_holds(x, spec.base, true)? && exact()?),
    }
}

/// `dim Ext^1_dw(Y, X) = dim Hom_K(Y, ΣX)`.
pub fn ext_dw_dim(y: &NComplex, x: &NComplex) -> Result<usize> {
    require_field("ext_dw_dim", y.domain())?;
    Ok(homotopy::hom_k(y, &triangle::suspension(x))?.dim_homotopy_classes)
}

fn stacked(maps: &[ChainMap], layout: &homotopy::Layout, domain: Domain) -> ExactMatrix {
    let cols: Vec<ExactMatrix> = maps.iter().map(|f| layout.pack(domain, |i| f.component(i).into_owned())).collect();
    let refs: Vec<&ExactMatrix> = cols.iter().collect();
    ExactMatrix::hstack(&refs, domain, layout.total)
}

/// Whether every chain map `X -> D^e_r(k)` lifts along the canonical
/// epimorphism `D^{e+N-r}_N(k) -> D^e_r(k)`, for all end degrees `e` and
/// amplitudes `1 <= r <= N-1`. Over a field this holds iff `X` is N-exact.
pub fn prop31_criterion(x: &NComplex) -> Result<bool> {
    Ok(prop31_failure(x)?.is_none())
}

/// First `(e, r)` at which some map to `D^e_r(k)` does not lift.
pub fn prop31_failure(x: &NComplex) -> Result<Option<(i64, usize)>> {
    let dom = x.domain();
    require_field("prop31_criterion", dom)?;
    let Some((lo, hi)) = x.support() else { return Ok(None) };
    let n = x.n();
    for e in lo - n as i64..=hi + n as i64 {
        for r in 1..n {
            let small = NComplex::disc(n, dom, e, r, 1)?;
            let big = NComplex::disc(n, dom, e + (n - r) as i64, n, 1)?;
            let pi = ChainMap::new(
                big.clone(),
                small.clone(),
                (e - r as i64 + 1..=e).map(|i| (i, ExactMatrix::identity(dom, 1))).collect(),
            )?;
            let wanted = homotopy::hom_k(x, &small)?.dim_chain_maps;
            if wanted == 0 {
                continue;
            }
            let lifts: Vec<ChainMap> = homotopy::chain_map_basis(x, &big)?
                .iter()
                .map(|g| pi.compose(g))
                .collect::<Result<_>>()?;
            let layout = homotopy::map_layout(x, &small);
            if linalg::rank(&stacked(&lifts, &layout, dom)) < wanted {
                return Ok(Some((e, r)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpotReport {
    /// `Hom_K(X, C)` for each test complex `C`, in order.
    pub hom: Vec<HomKSpace>,
    pub pass: bool,
}

/// Necessary condition for orthogonality to N-exact complexes: checks
/// `Hom_K(X, C) = 0` for each given `C`. Each `C` must be N-exact.
/// This is a finite spot test, not a membership decision.
pub fn orthogonality_spot_test(x: &NComplex, tests: &[NComplex]) -> Result<SpotReport> {
    require_field("orthogonality_spot_test", x.domain())?;
    let mut hom = Vec::with_capacity(tests.len());
    for (index, c) in tests.iter().enumerate() {
        if !class_membership(c, ClassSpec { base: BaseClass::All, variant: Variant::ExactTilde })? {
            return Err(Error::TestComplexNotInClass { index });
        }
        hom.push(homotopy::hom_k(x, c)?);
    }
    let pass = hom.iter().all(|h| h.dim_homotopy_classes == 0);
    Ok(SpotReport { hom, pass })
}

/// Degreewise-split Ext groups against discs on an object of dimension `m`
/// placed at degree `n`. Over a field every entry is zero; the amplitude
/// entries are only computed for N-exact `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscExtReport {
    /// `Ext(D^{n+N-1}_N(M), Y)`
    pub from_full_disc: usize,
    /// `Ext(Y, D^n_N(M))`
    pub into_full_disc: usize,
    /// `Ext(D^{n+r-1}_r(M), Y)`
    pub from_disc: Option<usize>,
    /// `Ext(Y, D^n_r(M))`
    pub into_disc: Option<usize>,
}

impl DiscExtReport {
    pub fn all_vanish(&self) -> bool {
        self.from_full_disc == 0
            && self.into_full_disc == 0
            && self.from_disc.unwrap_or(0) == 0
            && self.into_disc.unwrap_or(0) == 0
    }
}

pub fn disc_ext_checks(m: usize, y: &NComplex, n: i64, r: usize) -> Result<DiscExtReport> {
    let dom = y.domain();
    require_field("disc_ext_checks", dom)?;
    let big_n = y.n();
    if r == 0 || r >= big_n {
        return Err(Error::AmplitudeOutOfRange { r, min: 1, max: big_n - 1 });
    }
    let from_full_disc = ext_dw_dim(&NComplex::disc(big_n, dom, n + big_n as i64 - 1, big_n, m)?, y)?;
    let into_full_disc = ext_dw_dim(y, &NComplex::disc(big_n, dom, n, big_n, m)?)?;
    let (from_disc, into_disc) = if y.is_n_exact(ExactnessMode::AllAmplitudes)? {
        (
            Some(ext_dw_dim(&NComplex::disc(big_n, dom, n + r as i64 - 1, r, m)?, y)?),
            Some(ext_dw_dim(y, &NComplex::disc(big_n, dom, n, r, m)?)?),
        )
    } else {
        (None, None)
    };
    Ok(DiscExtReport { from_full_disc, into_full_disc, from_disc, into_disc })
}

#[cfg(test)]
mod tests;
