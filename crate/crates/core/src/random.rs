//! Seeded generators for complexes, chain maps and homotopies.
//!
//! Differentials are drawn one degree at a time: `d^i` is uniform among the
//! maps killing the image of the previous `N-1` fold composite, so every
//! complex produced here satisfies `d^N = 0` by construction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{ChainMap, NComplex};
use crate::homotopy::{self, Homotopy};
use crate::linalg::{self, Domain, ExactMatrix};
use crate::triangle;

/// Field coefficients exercised by the randomized batteries.
pub const FIELDS: [Domain; 4] = [Domain::Prime(2), Domain::Prime(3), Domain::Prime(5), Domain::Rationals];

pub const MAX_DIM: usize = 4;

/// Deterministic RNG for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn random_field<R: Rng>(rng: &mut R) -> Domain {
    *FIELDS.choose(rng).expect("nonempty")
}

pub fn random_n<R: Rng>(rng: &mut R) -> usize {
    rng.gen_range(2..=5)
}

pub fn random_scalar<R: Rng>(rng: &mut R, domain: Domain) -> BigRational {
    let v = match domain {
        Domain::Prime(p) => rng.gen_range(0..p as i64),
        _ => rng.gen_range(-3..=3),
    };
    let mut x = BigRational::from_integer(BigInt::from(v));
    if domain == Domain::Rationals && rng.gen_ratio(1, 6) {
        x /= BigInt::from(2);
    }
    x
}

pub fn random_matrix<R: Rng>(rng: &mut R, domain: Domain, rows: usize, cols: usize) -> ExactMatrix {
    let values = (0..rows * cols).map(|_| random_scalar(rng, domain)).collect();
    ExactMatrix::from_rationals(domain, rows, cols, values).expect("scalars lie in the domain")
}

pub fn random_invertible<R: Rng>(rng: &mut R, domain: Domain, n: usize) -> ExactMatrix {
    loop {
        let g = random_matrix(rng, domain, n, n);
        if linalg::rank(&g) == n {
            return g;
        }
    }
}

/// A random N-complex with objects of dimension at most `max_dim` on at most
/// `max_len` consecutive degrees.
pub fn random_complex_with<R: Rng>(rng: &mut R, n: usize, domain: Domain, max_dim: usize, max_len: usize) -> NComplex {
    let lo = rng.gen_range(-2..=2);
    let len = rng.gen_range(1..=max_len);
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut diffs: Vec<ExactMatrix> = Vec::new();
    for k in 1..len {
        // Composite of the previous N-1 differentials landing in degree k-1.
        let partial = NComplex::new(n, domain, lo, dims[..k].to_vec(), diffs.clone()).expect("shapes agree");
        let back = match (k - 1).checked_sub(n - 1) {
            Some(start) => partial.composite_unchecked(lo + start as i64, n - 1),
            // Fewer than N-1 maps precede: nothing to kill.
            None => ExactMatrix::zeros(domain, dims[k - 1], 0),
        };
        let allowed = linalg::kernel_basis(&back.transpose());
        let coeffs = random_matrix(rng, domain, dims[k], allowed.cols());
        diffs.push(&coeffs * &allowed.transpose());
    }
    let x = NComplex::new(n, domain, lo, dims, diffs).expect("shapes agree");
    debug_assert!(x.validate());
    x
}

pub fn random_complex<R: Rng>(rng: &mut R, n: usize, domain: Domain) -> NComplex {
    random_complex_with(rng, n, domain, MAX_DIM, n + 3)
}

pub fn random_disc<R: Rng>(rng: &mut R, n: usize, domain: Domain, amplitude: usize) -> NComplex {
    let j = rng.gen_range(-3..=3);
    let m = rng.gen_range(1..=2);
    NComplex::disc(n, domain, j, amplitude, m).expect("amplitude in range")
}

/// Direct sum of `1..=3` discs `D^j_N`; contractible.
pub fn random_contractible<R: Rng>(rng: &mut R, n: usize, domain: Domain) -> NComplex {
    let k = rng.gen_range(1..=3);
    (0..k).fold(NComplex::zero(n, domain), |acc, _| {
        acc.direct_sum(&random_disc(rng, n, domain, n)).expect("same category")
    })
}

/// `g^{i+1} d^i (g^i)^{-1}` for random invertible `g`.
pub fn scramble<R: Rng>(rng: &mut R, x: &NComplex) -> NComplex {
    let Some((lo, hi)) = x.support() else { return x.clone() };
    let dom = x.domain();
    let g: Vec<ExactMatrix> = (lo..=hi).map(|i| random_invertible(rng, dom, x.dim(i))).collect();
    let inv: Vec<ExactMatrix> = g
        .iter()
        .map(|m| linalg::solve(m, &ExactMatrix::identity(dom, m.rows())).unwrap().expect("invertible"))
        .collect();
    let diffs = (lo..hi)
        .map(|i| {
            let k = (i - lo) as usize;
            &(&g[k + 1] * &x.diff(i)) * &inv[k]
        })
        .collect();
    NComplex::new(x.n(), dom, lo, (lo..=hi).map(|i| x.dim(i)).collect(), diffs).expect("conjugation keeps shapes")
}

/// A random element of the space of chain maps `X -> Y` (field only).
pub fn random_chain_map<R: Rng>(rng: &mut R, x: &NComplex, y: &NComplex) -> ChainMap {
    let basis = homotopy::chain_map_basis(x, y).expect("field coefficients");
    let mut f = ChainMap::zero(x, y).expect("same category");
    for b in &basis {
        let c = random_scalar(rng, x.domain());
        f = f.add(&b.scale(&c).expect("scalar in domain")).expect("same endpoints");
    }
    f
}

/// A random witness family `s^i : X^i -> Y^{i-N+1}`.
pub fn random_homotopy<R: Rng>(rng: &mut R, x: &NComplex, y: &NComplex) -> Homotopy {
    let shift = x.n() as i64 - 1;
    let mut w = BTreeMap::new();
    if let Some((lo, hi)) = x.support() {
        for i in lo..=hi {
            w.insert(i, random_matrix(rng, x.domain(), y.dim(i - shift), x.dim(i)));
        }
    }
    Homotopy::new(x.clone(), y.clone(), w).expect("shapes by construction")
}

/// N-exact complex: an iterated cone over sums of discs, scrambled.
pub fn random_exact<R: Rng>(rng: &mut R, n: usize, domain: Domain) -> NComplex {
    let mut x = random_contractible(rng, n, domain);
    let rounds = rng.gen_range(0..=1);
    for _ in 0..rounds {
        let y = random_contractible(rng, n, domain);
        let f = random_chain_map(rng, &y, &x);
        x = triangle::cone(&f).expect("valid map").0;
    }
    if x.total_dim() > 3 * MAX_DIM * n {
        return random_contractible(rng, n, domain);
    }
    scramble(rng, &x)
}

/// Mix of generic complexes, discs, stalks and exact complexes, so that
/// both exact and non-exact samples occur.
pub fn random_sample<R: Rng>(rng: &mut R, n: usize, domain: Domain) -> NComplex {
    match rng.gen_range(0..10) {
        0..=4 => random_complex(rng, n, domain),
        5 => {
            let r = rng.gen_range(1..=n);
            random_disc(rng, n, domain, r)
        }
        6 => NComplex::stalk(n, domain, rng.gen_range(-2..=2), rng.gen_range(1..=2)),
        7 => random_contractible(rng, n, domain),
        _ => {
            let x = random_contractible(rng, n, domain);
            scramble(rng, &x)
        }
    }
}
