use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

use ncomplex::classes::{class_membership, ext_dw_dim, ClassSpec};
use ncomplex::complex::{ChainMap, ExactnessMode, NComplex};
use ncomplex::homotopy::{homotopic, is_contractible, null_homotopy};
use ncomplex::linalg::{self, Domain};
use ncomplex::random::{self, trial_rng, FIELDS};
use ncomplex::triangle::{self, DegreewiseSplitSES};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

fn setup(seed: u64, field: usize) -> (ChaCha8Rng, Domain) {
    (trial_rng(seed, 0), FIELDS[field])
}

fn small(rng: &mut ChaCha8Rng, n: usize, dom: Domain) -> NComplex {
    random::random_complex_with(rng, n, dom, 3, n + 2)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn composites_and_cycles(seed: u64, n in 2usize..=5, field in 0usize..5) {
        let mut rng = trial_rng(seed, 0);
        let dom = if field == 4 { Domain::Integers } else { FIELDS[field] };
        let x = random::random_complex(&mut rng, n, dom);
        prop_assert!(x.validate());
        let (lo, hi) = x.support().unwrap_or((0, -1));
        for i in lo - 1..=hi + 1 {
            prop_assert!(x.composite(i, n).unwrap().is_zero());
            prop_assert_eq!(linalg::rank(&x.cycles(i, n).unwrap()), x.dim(i));
            for r in 1..n {
                let z = x.cycles(i, r).unwrap();
                let b = x.boundaries(i, n - r).unwrap();
                prop_assert!(linalg::span_contains(&z, &b).unwrap());
            }
        }
    }

    #[test]
    fn homology_of_sums_adds(seed: u64, n in 2usize..=5, field in 0usize..4) {
        let (mut rng, dom) = setup(seed, field);
        let x = random::random_complex(&mut rng, n, dom);
        let y = random::random_complex(&mut rng, n, dom);
        let s = x.direct_sum(&y).unwrap();
        for i in -4..=10 {
            for r in 1..n {
                let (a, b, c) = (x.homology(i, r).unwrap(), y.homology(i, r).unwrap(), s.homology(i, r).unwrap());
                prop_assert_eq!(c.free_rank, a.free_rank + b.free_rank);
            }
        }
    }

    #[test]
    fn exactness_modes_and_epi_criterion_agree(seed: u64, n in 2usize..=5, field in 0usize..4) {
        let (mut rng, dom) = setup(seed, field);
        let x = random::random_sample(&mut rng, n, dom);
        let all = x.is_n_exact(ExactnessMode::AllAmplitudes).unwrap();
        for r in 1..n {
            prop_assert_eq!(x.is_n_exact(ExactnessMode::SingleAmplitude(r)).unwrap(), all);
        }
        prop_assert_eq!(x.all_induced_differentials_epi(), all);
    }

    #[test]
    fn realization_closure_and_witnesses(seed: u64, n in 2usize..=5, field in 0usize..4) {
        let (mut rng, dom) = setup(seed, field);
        let x = random::random_complex(&mut rng, n, dom);
        let y = random::random_complex(&mut rng, n, dom);
        let f = random::random_homotopy(&mut rng, &x, &y).realize().unwrap();
        prop_assert!(f.commutation_defect().is_none());
        let w = null_homotopy(&f).unwrap().unwrap();
        prop_assert_eq!(w.realize().unwrap(), f);
        let g = random::random_chain_map(&mut rng, &x, &y);
        if let Some(w) = null_homotopy(&g).unwrap() {
            prop_assert_eq!(w.realize().unwrap(), g);
        }
    }

    #[test]
    fn homotopy_is_a_congruence(seed: u64, n in 2usize..=5, field in 0usize..4) {
        let (mut rng, dom) = setup(seed, field);
        let v = small(&mut rng, n, dom);
        let x = small(&mut rng, n, dom);
        let y = small(&mut rng, n, dom);
        let w = small(&mut rng, n, dom);
        let f = random::random_chain_map(&mut rng, &x, &y);
        let g = f.add(&random::random_homotopy(&mut rng, &x, &y).realize().unwrap()).unwrap();
        let h = g.add(&random::random_homotopy(&mut rng, &x, &y).realize().unwrap()).unwrap();
        prop_assert!(homotopic(&f, &f).unwrap());
        prop_assert!(homotopic(&g, &f).unwrap());
        prop_assert!(homotopic(&f, &h).unwrap());
        let k = random::random_chain_map(&mut rng, &y, &w);
        let m = random::random_chain_map(&mut rng, &v, &x);
        prop_assert!(homotopic(&k.compose(&f).unwrap(), &k.compose(&g).unwrap()).unwrap());
        prop_assert!(homotopic(&f.compose(&m).unwrap(), &g.compose(&m).unwrap()).unwrap());
        // Non-homotopic maps stay apart after adding null-homotopic ones.
        let e = random::random_chain_map(&mut rng, &x, &y);
        prop_assert_eq!(homotopic(&e, &f).unwrap(), homotopic(&e, &h).unwrap());
    }

    #[test]
    fn contractible_implies_exact(seed: u64, n in 2usize..=5, field in 0usize..4) {
        let (mut rng, dom) = setup(seed, field);
        let x = random::random_contractible(&mut rng, n, dom);
        let x = random::scramble(&mut rng, &x);
        prop_assert!(is_contractible(&x).unwrap());
        prop_assert!(x.is_n_exact(ExactnessMode::AllAmplitudes).unwrap());
        let y = random::random_sample(&mut rng, n, dom);
        if is_contractible(&y).unwrap() {
            prop_assert!(y.is_n_exact(ExactnessMode::AllAmplitudes).unwrap());
        }
    }

    #[test]
    fn constructions_stay_nilpotent(seed: u64, n in 2usize..=5, field in 0usize..5) {
        let mut rng = trial_rng(seed, 0);
        let dom = if field == 4 { Domain::Integers } else { FIELDS[field] };
        let x = random::random_complex(&mut rng, n, dom);
        let y = random::random_complex(&mut rng, n, dom);
        let f = random::random_homotopy(&mut rng, &x, &y).realize().unwrap();
        let (c, tri) = triangle::cone(&f).unwrap();
        prop_assert!(c.validate());
        prop_assert!(tri.onto_suspension.compose(&tri.into_cone).unwrap().is_zero());
        prop_assert!(triangle::suspension(&x).validate());
        prop_assert!(triangle::inv_suspension(&x).validate());
        prop_assert!(triangle::hull(&x).unwrap().0.validate());
    }

    #[test]
    fn cone_sequence_splits_iff_null_homotopic(seed: u64, n in 2usize..=5, field in 0usize..4) {
        let (mut rng, dom) = setup(seed, field);
        let x = small(&mut rng, n, dom);
        let y = small(&mut rng, n, dom);
        let f = if seed % 2 == 0 {
            random::random_homotopy(&mut rng, &x, &y).realize().unwrap()
        } else {
            random::random_chain_map(&mut rng, &x, &y)
        };
        let (_, tri) = triangle::cone(&f).unwrap();
        let ses = DegreewiseSplitSES::new(tri.into_cone.clone(), tri.onto_suspension.clone()).unwrap();
        let split = triangle::split_test(&ses).unwrap();
        prop_assert_eq!(split.is_some(), null_homotopy(&f).unwrap().is_some());
        if let Some(r) = split {
            prop_assert_eq!(r.compose(&tri.into_cone).unwrap(), ChainMap::identity(&y));
        }
    }

    #[test]
    fn unit_maps_are_homotopy_equivalences(seed: u64, n in 2usize..=4, field in 0usize..4) {
        let (mut rng, dom) = setup(seed, field);
        let x = random::random_complex_with(&mut rng, n, dom, 2, n + 1);
        for g in [triangle::unit(&x).unwrap(), triangle::counit(&x).unwrap(), triangle::inverse_unit(&x).unwrap()] {
            prop_assert!(is_contractible(&triangle::cone(&g).unwrap().0).unwrap());
        }
    }

    #[test]
    fn ext_dw_vanishes_against_contractibles(seed: u64, n in 2usize..=5, field in 0usize..4) {
        let (mut rng, dom) = setup(seed, field);
        let c = random::random_contractible(&mut rng, n, dom);
        let y = small(&mut rng, n, dom);
        prop_assert_eq!(ext_dw_dim(&c, &y).unwrap(), 0);
        prop_assert_eq!(ext_dw_dim(&y, &c).unwrap(), 0);
    }

    #[test]
    fn ext_dw_is_additive(seed: u64, n in 2usize..=5, field in 0usize..4) {
        let (mut rng, dom) = setup(seed, field);
        let y1 = small(&mut rng, n, dom);
        let y2 = small(&mut rng, n, dom);
        let x = small(&mut rng, n, dom);
        prop_assert_eq!(
            ext_dw_dim(&y1.direct_sum(&y2).unwrap(), &x).unwrap(),
            ext_dw_dim(&y1, &x).unwrap() + ext_dw_dim(&y2, &x).unwrap()
        );
    }

    #[test]
    fn class_variants_nest(seed: u64, n in 2usize..=5, field in 0usize..4) {
        let (mut rng, dom) = setup(seed, field);
        let x = random::random_sample(&mut rng, n, dom);
        let member = |s: &str| class_membership(&x, s.parse::<ClassSpec>().unwrap()).unwrap();
        prop_assert!(!member("all:exact-tilde") || member("all:ex"));
        prop_assert!(!member("all:ex") || member("all:degreewise"));
    }
}
