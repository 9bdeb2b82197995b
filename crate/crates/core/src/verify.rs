//! Seeded randomized verification suites.
//!
//! Trial `k` of a run seeded with `s` draws from its own RNG stream and uses
//! `N = 2 + k mod 4`, so every suite covers `N = 2..=5` once it has four
//! trials. Trials run in parallel; failures are reported sorted by trial id.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classes;
use crate::complex::{ChainMap, ExactnessMode, NComplex};
use crate::document::{complex_to_string, map_to_string};
use crate::error::{Error, Result};
use crate::homotopy::{self, Homotopy};
use crate::linalg::{self, Domain, ExactMatrix};
use crate::random::{self, trial_rng};
use crate::triangle::{self, DegreewiseSplitSES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Nilpotency,
    RemarkAmplitude,
    EpiCriterion,
    ConeContractible,
    Lemma24Kernel,
    Lemma41,
    SigmaExact,
    Prop31,
    N2Regression,
    ExtdwAdditivity,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Nilpotency,
        Suite::RemarkAmplitude,
        Suite::EpiCriterion,
        Suite::ConeContractible,
        Suite::Lemma24Kernel,
        Suite::Lemma41,
        Suite::SigmaExact,
        Suite::Prop31,
        Suite::N2Regression,
        Suite::ExtdwAdditivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Nilpotency => "nilpotency",
            Suite::RemarkAmplitude => "remark-amplitude",
            Suite::EpiCriterion => "epi-criterion",
            Suite::ConeContractible => "cone-contractible",
            Suite::Lemma24Kernel => "lemma24-kernel",
            Suite::Lemma41 => "lemma41",
            Suite::SigmaExact => "sigma-exact",
            Suite::Prop31 => "prop31",
            Suite::N2Regression => "n2-regression",
            Suite::ExtdwAdditivity => "extdw-additivity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: u64,
    pub counterexample: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Ok(None)` on success, `Ok(Some(description))` on a counterexample.
type Outcome = Result<Option<String>>;

fn fail_unless(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    Ok(if ok { None } else { Some(what()) })
}

fn exact(x: &NComplex) -> Result<bool> {
    x.is_n_exact(ExactnessMode::AllAmplitudes)
}

fn nilpotency(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let dom = random::random_field(rng);
    let x = random::random_complex(rng, n, dom);
    let y = random::random_complex(rng, n, dom);
    let f = random::random_chain_map(rng, &x, &y);
    let (c, _) = triangle::cone(&f)?;
    let (h, _) = triangle::hull(&x)?;
    let checks = [
        ("cone", c.validate()),
        ("suspension", triangle::suspension(&x).validate()),
        ("inverse suspension", triangle::inv_suspension(&x).validate()),
        ("hull", h.validate()),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((what, _)) => Ok(Some(format!("{what} is not nilpotent for\n{}", map_to_string(&f)))),
        None => Ok(None),
    }
}

fn remark_amplitude(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let dom = random::random_field(rng);
    let x = random::random_sample(rng, n, dom);
    let all = exact(&x)?;
    for r in 1..n {
        if x.is_n_exact(ExactnessMode::SingleAmplitude(r))? != all {
            return Ok(Some(format!("amplitude {r} disagrees (all: {all}) for\n{}", complex_to_string(&x))));
        }
    }
    Ok(None)
}

fn epi_criterion(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let dom = random::random_field(rng);
    let x = random::random_sample(rng, n, dom);
    let (a, b) = (exact(&x)?, x.all_induced_differentials_epi());
    fail_unless(a == b, || format!("exact {a} but epi {b} for\n{}", complex_to_string(&x)))
}

fn cone_contractible(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let dom = random::random_field(rng);
    let x = random::random_complex(rng, n, dom);
    let (c, _) = triangle::cone(&ChainMap::identity(&x))?;
    fail_unless(homotopy::is_contractible(&c)?, || complex_to_string(&x))
}

fn small_complex(rng: &mut ChaCha8Rng, n: usize, dom: Domain) -> NComplex {
    random::random_complex_with(rng, n, dom, 3, n + 2)
}

fn lemma24_kernel(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let dom = random::FIELDS[rng.gen_range(0..3)];
    let x = small_complex(rng, n, dom);
    let y = small_complex(rng, n, dom);
    let src = triangle::inv_suspension(&y);
    let f = if rng.gen_ratio(1, 3) {
        random::random_homotopy(rng, &src, &x).realize()?
    } else {
        random::random_chain_map(rng, &src, &x)
    };
    let split = triangle::split_test(&triangle::psi(&f, &y)?)?.is_some();
    let null = homotopy::null_homotopy(&f)?.is_some();
    fail_unless(split == null, || format!("split {split}, null-homotopic {null} for\n{}", map_to_string(&f)))
}

/// A cone inclusion together with a homotopy retraction and its witness.
fn lemma41_instance(rng: &mut ChaCha8Rng, n: usize, dom: Domain) -> Result<(ChainMap, ChainMap, Homotopy)> {
    if rng.gen_bool(0.5) {
        // Contractible ends: any f is a homotopy equivalence, r = 0 and
        // t contracts Y.
        let x = random::random_contractible(rng, n, dom);
        let y = random::random_contractible(rng, n, dom);
        let y = random::scramble(rng, &y);
        let f = random::random_chain_map(rng, &x, &y);
        let (c, _) = triangle::cone(&f)?;
        let t = homotopy::null_homotopy(&ChainMap::identity(&y))?.expect("sums of discs are contractible");
        Ok((f, ChainMap::zero(&c, &y)?, t))
    } else {
        // Null-homotopic f: a strict retraction plus a null-homotopic
        // perturbation R(w); then 1 - r u is realized by -(w u).
        let x = small_complex(rng, n, dom);
        let y = small_complex(rng, n, dom);
        let f = random::random_homotopy(rng, &x, &y).realize()?;
        let (c, tri) = triangle::cone(&f)?;
        let ses = DegreewiseSplitSES::new(tri.into_cone.clone(), tri.onto_suspension.clone())?;
        let r0 = triangle::split_test(&ses)?.expect("cones of null-homotopic maps split");
        let w = random::random_homotopy(rng, &c, &y);
        let r = r0.add(&w.realize()?)?;
        let tw = y
            .support()
            .map(|(lo, hi)| (lo..=hi).map(|i| (i, -&(&w.witness_at(i) * &tri.into_cone.component(i)))).collect())
            .unwrap_or_default();
        Ok((f, r, Homotopy::new(y.clone(), y, tw)?))
    }
}

fn lemma41(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let dom = random::random_field(rng);
    let (f, r, t) = lemma41_instance(rng, n, dom)?;
    let a = triangle::lemma41_retraction(&f, &r, &t)?;
    let (_, tri) = triangle::cone(&f)?;
    let ok = a.compose(&tri.into_cone)? == ChainMap::identity(f.target());
    fail_unless(ok, || map_to_string(&f))
}

fn sigma_exact(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let dom = random::random_field(rng);
    let x = random::random_exact(rng, n, dom);
    let ok = exact(&x)? && exact(&triangle::suspension(&x))? && exact(&triangle::inv_suspension(&x))?;
    fail_unless(ok, || complex_to_string(&x))
}

fn prop31(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let dom = random::random_field(rng);
    let x = random::random_sample(rng, n, dom);
    let (a, b) = (classes::prop31_criterion(&x)?, exact(&x)?);
    fail_unless(a == b, || format!("criterion {a}, exact {b} for\n{}", complex_to_string(&x)))
}

/// Classical reference computations for `N = 2`, written directly in terms
/// of matrices rather than through the N-complex machinery.
mod classical {
    use super::*;

    pub struct Classical {
        pub domain: Domain,
        pub lo: i64,
        pub dims: Vec<usize>,
        pub d: Vec<ExactMatrix>,
    }

    impl Classical {
        pub fn of(x: &NComplex) -> Self {
            let (lo, hi) = x.support().unwrap_or((0, -1));
            Classical {
                domain: x.domain(),
                lo,
                dims: (lo..=hi).map(|i| x.dim(i)).collect(),
                d: (lo..hi).map(|i| x.diff(i).into_owned()).collect(),
            }
        }

        pub fn dim(&self, i: i64) -> usize {
            if i < self.lo {
                return 0;
            }
            self.dims.get((i - self.lo) as usize).copied().unwrap_or(0)
        }

        pub fn d(&self, i: i64) -> ExactMatrix {
            if i >= self.lo {
                if let Some(m) = self.d.get((i - self.lo) as usize) {
                    return m.clone();
                }
            }
            ExactMatrix::zeros(self.domain, self.dim(i + 1), self.dim(i))
        }

        /// `dim H^i = dim X^i - rank d^i - rank d^{i-1}`.
        pub fn betti(&self, i: i64) -> usize {
            self.dim(i) - linalg::rank(&self.d(i)) - linalg::rank(&self.d(i - 1))
        }
    }

    /// Cone differential `[[d_Y, f], [0, -d_X]]` from `Y^m ⊕ X^{m+1}`.
    pub fn cone_diff(f: &ChainMap, m: i64) -> ExactMatrix {
        let (x, y) = (f.source(), f.target());
        let dom = x.domain();
        ExactMatrix::from_blocks(dom, &[y.dim(m + 1), x.dim(m + 2)], &[y.dim(m), x.dim(m + 1)], |i, j| match (i, j) {
            (0, 0) => Some(y.diff(m).into_owned()),
            (0, 1) => Some(f.component(m + 1).into_owned()),
            (1, 1) => Some(-&*x.diff(m + 1)),
            _ => None,
        })
    }

    /// Solves `f^i = d s^i + s^{i+1} d` for `s^i : X^i -> Y^{i-1}`.
    pub fn null_homotopic(f: &ChainMap) -> Result<bool> {
        let (x, y) = (Classical::of(f.source()), Classical::of(f.target()));
        let dom = x.domain;
        let Some((lo, hi)) = crate::complex::joint_window(f.source(), f.target(), 1) else { return Ok(true) };
        let degrees: Vec<i64> = (lo..=hi).collect();
        let s_off: Vec<usize> = degrees
            .iter()
            .scan(0, |acc, &i| {
                let o = *acc;
                *acc += y.dim(i - 1) * x.dim(i);
                Some(o)
            })
            .collect();
        let unknowns: usize = degrees.iter().map(|&i| y.dim(i - 1) * x.dim(i)).sum();
        let mut blocks = Vec::new();
        let mut rhs = Vec::new();
        for (k, &i) in degrees.iter().enumerate() {
            let (r, c) = (y.dim(i), x.dim(i));
            if r * c == 0 {
                continue;
            }
            let mut row = ExactMatrix::zeros(dom, r * c, unknowns);
            // d_Y^{i-1} s^i
            let a = y.d(i - 1).kron(&ExactMatrix::identity(dom, c));
            if a.cols() > 0 {
                row = &row + &ExactMatrix::from_blocks(dom, &[r * c], &[s_off[k], a.cols(), unknowns - s_off[k] - a.cols()], |_, j| (j == 1).then(|| a.clone()));
            }
            // s^{i+1} d_X^i
            if k + 1 < degrees.len() {
                let b = ExactMatrix::identity(dom, r).kron(&x.d(i).transpose());
                if b.cols() > 0 {
                    row = &row + &ExactMatrix::from_blocks(dom, &[r * c], &[s_off[k + 1], b.cols(), unknowns - s_off[k + 1] - b.cols()], |_, j| (j == 1).then(|| b.clone()));
                }
            }
            blocks.push(row);
            rhs.push(f.component(i).vectorize());
        }
        let a = ExactMatrix::vstack(&blocks.iter().collect::<Vec<_>>(), dom, unknowns);
        let b = ExactMatrix::vstack(&rhs.iter().collect::<Vec<_>>(), dom, 1);
        Ok(linalg::solve(&a, &b)?.is_some())
    }
}

fn n2_regression(rng: &mut ChaCha8Rng, _n: usize) -> Outcome {
    let dom = random::random_field(rng);
    let x = random::random_complex(rng, 2, dom);
    let y = random::random_complex(rng, 2, dom);
    let cx = classical::Classical::of(&x);
    if let Some((lo, hi)) = x.support() {
        for i in lo..=hi {
            let h = x.homology(i, 1)?;
            if h.free_rank != cx.betti(i) {
                return Ok(Some(format!("H^{i} differs for\n{}", complex_to_string(&x))));
            }
        }
    }
    let f = if rng.gen_bool(0.3) {
        random::random_homotopy(rng, &x, &y).realize()?
    } else {
        random::random_chain_map(rng, &x, &y)
    };
    let (c, _) = triangle::cone(&f)?;
    if let Some((lo, hi)) = crate::complex::joint_window(&x, &y, 2) {
        for m in lo..=hi {
            if *c.diff(m) != classical::cone_diff(&f, m) {
                return Ok(Some(format!("cone differential differs at {m} for\n{}", map_to_string(&f))));
            }
            if *triangle::suspension(&x).diff(m) != -&*x.diff(m + 1) {
                return Ok(Some(format!("suspension differs at {m} for\n{}", complex_to_string(&x))));
            }
        }
    }
    let (a, b) = (homotopy::null_homotopy(&f)?.is_some(), classical::null_homotopic(&f)?);
    fail_unless(a == b, || format!("null-homotopy {a} vs classical {b} for\n{}", map_to_string(&f)))
}

fn extdw_additivity(rng: &mut ChaCha8Rng, n: usize) -> Outcome {
    let dom = random::random_field(rng);
    let y1 = small_complex(rng, n, dom);
    let y2 = small_complex(rng, n, dom);
    let x = small_complex(rng, n, dom);
    let whole = classes::ext_dw_dim(&y1.direct_sum(&y2)?, &x)?;
    let parts = classes::ext_dw_dim(&y1, &x)? + classes::ext_dw_dim(&y2, &x)?;
    fail_unless(whole == parts, || {
        format!("{whole} != {parts} for\n{}{}{}", complex_to_string(&y1), complex_to_string(&y2), complex_to_string(&x))
    })
}

fn trial_fn(suite: Suite) -> fn(&mut ChaCha8Rng, usize) -> Outcome {
    match suite {
        Suite::Nilpotency => nilpotency,
        Suite::RemarkAmplitude => remark_amplitude,
        Suite::EpiCriterion => epi_criterion,
        Suite::ConeContractible => cone_contractible,
        Suite::Lemma24Kernel => lemma24_kernel,
        Suite::Lemma41 => lemma41,
        Suite::SigmaExact => sigma_exact,
        Suite::Prop31 => prop31,
        Suite::N2Regression => n2_regression,
        Suite::ExtdwAdditivity => extdw_additivity,
    }
}

/// Runs one trial. Errors count as failures.
pub fn run_trial(suite: Suite, seed: u64, trial: u64) -> Option<Failure> {
    let mut rng = trial_rng(seed, trial);
    let n = 2 + (trial % 4) as usize;
    match trial_fn(suite)(&mut rng, n) {
        Ok(None) => None,
        Ok(Some(counterexample)) => Some(Failure { trial, counterexample }),
        Err(e) => Some(Failure { trial, counterexample: format!("error: {e}") }),
    }
}

pub fn run_suite(suite: Suite, seed: u64, trials: u64) -> VerifyReport {
    let start = Instant::now();
    let mut failures: Vec<Failure> = (0..trials).into_par_iter().filter_map(|t| run_trial(suite, seed, t)).collect();
    failures.sort_by_key(|f| f.trial);
    VerifyReport {
        suite: suite.name().into(),
        seed,
        trials,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Seed from `NCOMPLEX_SEED`, if set and numeric.
pub fn default_seed() -> Option<u64> {
    std::env::var("NCOMPLEX_SEED").ok()?.trim().parse().ok()
}
