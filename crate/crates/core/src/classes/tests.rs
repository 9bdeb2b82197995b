use super::*;
use crate::random::{self, trial_rng};

const F5: Domain = Domain::Prime(5);
const Z: Domain = Domain::Integers;

fn spec(s: &str) -> ClassSpec {
    s.parse().unwrap()
}

#[test]
fn spec_round_trip() {
    for s in ["all:degreewise", "all:exact-tilde", "all:ex", "free:ex"] {
        assert_eq!(spec(s).to_string(), s);
    }
    assert!("all".parse::<ClassSpec>().is_err());
    assert!("flat:ex".parse::<ClassSpec>().is_err());
}

#[test]
fn membership_examples() {
    let mut rng = trial_rng(30, 0);
    for n in 2..=5 {
        let x = random::random_complex(&mut rng, n, F5);
        assert!(class_membership(&x, spec("all:degreewise")).unwrap());
        let d = NComplex::disc(n, F5, 1, n, 2).unwrap();
        assert!(class_membership(&d, spec("all:exact-tilde")).unwrap());
        let s = NComplex::stalk(n, F5, 0, 1);
        assert!(!class_membership(&s, spec("all:ex")).unwrap());
    }
    assert!(matches!(
        class_membership(&NComplex::stalk(3, F5, 0, 1), spec("free:degreewise")),
        Err(Error::UnsupportedClass { .. })
    ));
}

#[test]
fn free_variants_over_integers() {
    let d = NComplex::disc(3, Z, 0, 3, 1).unwrap();
    assert!(class_membership(&d, spec("free:exact-tilde")).unwrap());
    // 0 -> Z -2-> Z -> 0 is exact over Q but has torsion homology over Z.
    let x = NComplex::new(2, Z, 0, vec![1, 1], vec![ExactMatrix::from_rows(Z, &[[2]])]).unwrap();
    assert!(class_membership(&x, spec("free:degreewise")).unwrap());
    assert!(!class_membership(&x, spec("free:ex")).unwrap());
}

#[test]
fn variant_implications() {
    for trial in 0..40 {
        let mut rng = trial_rng(31, trial);
        let n = 2 + trial as usize % 4;
        let x = random::random_sample(&mut rng, n, random::FIELDS[trial as usize % 4]);
        let tilde = class_membership(&x, spec("all:exact-tilde")).unwrap();
        let ex = class_membership(&x, spec("all:ex")).unwrap();
        let dw = class_membership(&x, spec("all:degreewise")).unwrap();
        assert!(!tilde || ex);
        assert!(!ex || dw);
    }
}

#[test]
fn ext_dw_examples() {
    let s = NComplex::stalk(3, F5, 0, 1);
    assert_eq!(ext_dw_dim(&s, &s).unwrap(), 0);
    assert_eq!(ext_dw_dim(&NComplex::zero(3, F5), &s).unwrap(), 0);
    let mut rng = trial_rng(32, 0);
    for n in 2..=5 {
        let y = random::random_complex(&mut rng, n, F5);
        let d = random::random_disc(&mut rng, n, F5, n);
        assert_eq!(ext_dw_dim(&d, &y).unwrap(), 0);
        assert_eq!(ext_dw_dim(&y, &d).unwrap(), 0);
    }
    // Ext(k[0], k[1]) = Hom_K(k[0], Σ k[1]) is one-dimensional for N = 2.
    let a = NComplex::stalk(2, F5, 0, 1);
    let b = NComplex::stalk(2, F5, 1, 1);
    assert_eq!(ext_dw_dim(&a, &b).unwrap(), 1);
    assert!(matches!(ext_dw_dim(&NComplex::stalk(2, Z, 0, 1), &NComplex::stalk(2, Z, 0, 1)), Err(Error::UnsupportedDomain { .. })));
}

#[test]
fn ext_dw_is_additive() {
    for trial in 0..15 {
        let mut rng = trial_rng(33, trial);
        let n = 2 + trial as usize % 4;
        let dom = random::FIELDS[trial as usize % 4];
        let y1 = random::random_complex_with(&mut rng, n, dom, 2, n + 1);
        let y2 = random::random_complex_with(&mut rng, n, dom, 2, n + 1);
        let x = random::random_complex_with(&mut rng, n, dom, 2, n + 1);
        let sum = ext_dw_dim(&y1.direct_sum(&y2).unwrap(), &x).unwrap();
        assert_eq!(sum, ext_dw_dim(&y1, &x).unwrap() + ext_dw_dim(&y2, &x).unwrap());
    }
}

#[test]
fn prop31_examples() {
    let mut rng = trial_rng(34, 0);
    for n in 2..=5 {
        assert!(prop31_criterion(&random::random_contractible(&mut rng, n, F5)).unwrap());
        let s = NComplex::stalk(n, F5, 0, 1);
        assert!(!prop31_criterion(&s).unwrap());
        assert!(prop31_failure(&s).unwrap().is_some());
        assert!(prop31_criterion(&NComplex::zero(n, F5)).unwrap());
    }
    assert!(prop31_criterion(&NComplex::stalk(3, Z, 0, 1)).is_err());
}

#[test]
fn prop31_matches_exactness() {
    let mut seen = [0usize; 2];
    for trial in 0..40 {
        let mut rng = trial_rng(35, trial);
        let n = 2 + trial as usize % 4;
        let x = random::random_sample(&mut rng, n, random::FIELDS[trial as usize % 4]);
        let exact = x.is_n_exact(ExactnessMode::AllAmplitudes).unwrap();
        assert_eq!(prop31_criterion(&x).unwrap(), exact, "trial {trial}");
        seen[exact as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn spot_test_examples() {
    let mut rng = trial_rng(36, 0);
    let tests: Vec<NComplex> = (0..4).map(|_| random::random_exact(&mut rng, 3, F5)).collect();
    let d = NComplex::disc(3, F5, 0, 3, 1).unwrap();
    assert!(orthogonality_spot_test(&d, &tests).unwrap().pass);
    let s = NComplex::stalk(3, F5, 0, 1);
    let report = orthogonality_spot_test(&s, &[]).unwrap();
    assert!(report.pass && report.hom.is_empty());
    // Over a field N-exact complexes are contractible, so nothing maps to
    // them nontrivially up to homotopy.
    assert!(orthogonality_spot_test(&s, &tests).unwrap().pass);
    let bad = vec![tests[0].clone(), s.clone()];
    assert_eq!(orthogonality_spot_test(&d, &bad), Err(Error::TestComplexNotInClass { index: 1 }));
}

#[test]
fn disc_ext_examples() {
    let mut rng = trial_rng(37, 0);
    for n in 2..=4 {
        let y = random::random_complex(&mut rng, n, F5);
        let report = disc_ext_checks(2, &y, 0, 1).unwrap();
        assert!(report.all_vanish());
        let e = random::random_exact(&mut rng, n, F5);
        let report = disc_ext_checks(1, &e, 1, n - 1).unwrap();
        assert!(report.from_disc.is_some() && report.all_vanish());
        let zero = disc_ext_checks(1, &NComplex::zero(n, F5), 0, 1).unwrap();
        assert_eq!(zero, DiscExtReport { from_full_disc: 0, into_full_disc: 0, from_disc: Some(0), into_disc: Some(0) });
    }
}
