use super::*;
use crate::complex::ExactnessMode;
use crate::random::{self, trial_rng};

const F5: Domain = Domain::Prime(5);
const Z: Domain = Domain::Integers;

#[test]
fn zero_map_has_zero_witness() {
    let x = NComplex::disc(3, F5, 1, 3, 1).unwrap();
    let h = null_homotopy(&ChainMap::zero(&x, &x).unwrap()).unwrap().unwrap();
    assert!(h.witnesses().is_empty());
}

#[test]
fn disc_identity_witness() {
    // D^1_3: k in degrees -1, 0, 1. The only witness slot is s^1 : X^1 -> X^{-1}.
    let x = NComplex::disc(3, F5, 1, 3, 1).unwrap();
    let h = null_homotopy(&ChainMap::identity(&x)).unwrap().unwrap();
    assert_eq!(h.witnesses().len(), 1);
    assert_eq!(h.witness_at(1), ExactMatrix::identity(F5, 1));
    assert_eq!(h.realize().unwrap(), ChainMap::identity(&x));
}

#[test]
fn stalk_identity_is_not_null_homotopic() {
    let x = NComplex::stalk(3, F5, 0, 1);
    assert!(null_homotopy(&ChainMap::identity(&x)).unwrap().is_none());
    assert!(!homotopic(&ChainMap::identity(&x), &ChainMap::zero(&x, &x).unwrap()).unwrap());
    assert!(homotopic(&ChainMap::identity(&x), &ChainMap::identity(&x)).unwrap());
}

#[test]
fn hom_k_examples() {
    let s = NComplex::stalk(3, F5, 0, 1);
    let h = hom_k(&s, &s).unwrap();
    assert_eq!((h.dim_chain_maps, h.dim_null_homotopic, h.dim_homotopy_classes), (1, 0, 1));
    let h = hom_k(&s, &NComplex::zero(3, F5)).unwrap();
    assert_eq!((h.dim_chain_maps, h.dim_null_homotopic, h.dim_homotopy_classes), (0, 0, 0));
    let d = NComplex::disc(3, F5, 0, 3, 2).unwrap();
    assert_eq!(hom_k(&d, &d).unwrap().dim_homotopy_classes, 0);
    assert_eq!(hom_k(&d, &d).unwrap().dim_chain_maps, 4);
    assert!(matches!(hom_k(&NComplex::stalk(3, Z, 0, 1), &NComplex::stalk(3, Z, 0, 1)), Err(Error::UnsupportedDomain { .. })));
}

#[test]
fn discs_map_trivially_in_homotopy_category() {
    for trial in 0..20 {
        let mut rng = trial_rng(20, trial);
        let n = 2 + (trial as usize % 4);
        let dom = random::FIELDS[trial as usize % 4];
        let d = random::random_disc(&mut rng, n, dom, n);
        let y = random::random_complex(&mut rng, n, dom);
        assert_eq!(hom_k(&d, &y).unwrap().dim_homotopy_classes, 0);
        assert_eq!(hom_k(&y, &d).unwrap().dim_homotopy_classes, 0);
    }
}

#[test]
fn contractibility_examples() {
    for n in 2..=5 {
        for j in -3..=3 {
            assert!(is_contractible(&NComplex::disc(n, F5, j, n, 2).unwrap()).unwrap());
            for r in 1..n {
                assert!(!is_contractible(&NComplex::disc(n, F5, j, r, 1).unwrap()).unwrap());
            }
        }
        assert!(is_contractible(&NComplex::zero(n, F5)).unwrap());
    }
}

#[test]
fn integer_null_homotopy_needs_integral_witness() {
    // D^1_2 over Z with d = 2: the identity would need s = 1/2.
    let x = NComplex::new(2, Z, 0, vec![1, 1], vec![ExactMatrix::from_rows(Z, &[[2]])]).unwrap();
    assert!(null_homotopy(&ChainMap::identity(&x)).unwrap().is_none());
    let x = NComplex::disc(2, Z, 1, 2, 1).unwrap();
    let h = null_homotopy(&ChainMap::identity(&x)).unwrap().unwrap();
    assert_eq!(h.realize().unwrap(), ChainMap::identity(&x));
    let q = NComplex::new(2, Domain::Rationals, 0, vec![1, 1], vec![ExactMatrix::from_rows(Domain::Rationals, &[[2]])]).unwrap();
    assert!(is_contractible(&q).unwrap());
}

#[test]
fn realization_is_a_chain_map_and_recovered() {
    for trial in 0..40 {
        let mut rng = trial_rng(21, trial);
        let n = 2 + (trial as usize % 4);
        let dom = random::FIELDS[trial as usize % 4];
        let x = random::random_complex(&mut rng, n, dom);
        let y = random::random_complex(&mut rng, n, dom);
        let s = random::random_homotopy(&mut rng, &x, &y);
        let f = s.realize().expect("realizations commute");
        let w = null_homotopy(&f).unwrap().expect("realized maps are null-homotopic");
        assert_eq!(w.realize().unwrap(), f);
        let g = random::random_chain_map(&mut rng, &x, &y);
        assert!(homotopic(&g, &g.add(&f).unwrap()).unwrap());
    }
}

#[test]
fn chain_map_basis_matches_hom_k() {
    for trial in 0..20 {
        let mut rng = trial_rng(22, trial);
        let n = 2 + (trial as usize % 4);
        let dom = random::FIELDS[trial as usize % 4];
        let x = random::random_complex(&mut rng, n, dom);
        let y = random::random_complex(&mut rng, n, dom);
        let basis = chain_map_basis(&x, &y).unwrap();
        assert_eq!(basis.len(), hom_k(&x, &y).unwrap().dim_chain_maps);
    }
}

#[test]
fn contractible_complexes_are_exact() {
    for trial in 0..20 {
        let mut rng = trial_rng(23, trial);
        let n = 2 + (trial as usize % 4);
        let x = random::random_contractible(&mut rng, n, random::FIELDS[trial as usize % 4]);
        let x = random::scramble(&mut rng, &x);
        assert!(is_contractible(&x).unwrap());
        assert!(x.is_n_exact(ExactnessMode::AllAmplitudes).unwrap());
    }
}

#[test]
fn witness_shapes_are_checked() {
    let x = NComplex::disc(3, F5, 1, 3, 1).unwrap();
    let mut w = BTreeMap::new();
    w.insert(1, ExactMatrix::zeros(F5, 2, 1));
    assert!(matches!(Homotopy::new(x.clone(), x, w), Err(Error::ShapeMismatch { degree: 1, .. })));
}
