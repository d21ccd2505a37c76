mod common;

use proptest::prelude::*;
use qcoideal::catalog::borel_constant;
use qcoideal::expr::{parse_element, Substitution};
use qcoideal::repr::{act, build_simple_module, onedim_flag_length, restrict_find_onedim, Matrix, ModuleVector};
use qcoideal::subalgebra::GeneratorSet;
use qcoideal::{Algebra, QRat, SystemKind, UElement};
use rand::SeedableRng;

fn el(s: &str) -> UElement {
    parse_element(SystemKind::A1, s, &Substitution::new()).unwrap()
}

fn borel(l: QRat) -> GeneratorSet {
    let lp = &borel_constant() / &l;
    let subs = Substitution::from([("l".to_string(), l), ("lp".to_string(), lp)]);
    let gens = ["E*K^-1 + l*K^-1", "F + lp*K^-1"]
        .iter()
        .map(|s| parse_element(SystemKind::A1, s, &subs).unwrap())
        .collect();
    GeneratorSet::new("B", gens).unwrap()
}

#[test]
fn defining_relations_hold() {
    for m in 0..=6 {
        let module = build_simple_module(m);
        assert_eq!(module.dim(), m + 1);
        assert!(module.relations_hold(), "L({m})");
        assert_eq!(module.k.mul(&module.k_inv), Matrix::identity(m + 1));
        assert!(module.e.is_upper_triangular() && module.f.is_lower_triangular());
    }
}

#[test]
fn highest_weight_vector() {
    let module = build_simple_module(4);
    let top = ModuleVector::basis(&module, 0);
    assert!(act(&el("E"), &module, &top).unwrap().is_zero());
    let k = act(&el("K"), &module, &top).unwrap();
    assert_eq!(k.coords[0], QRat::q_pow(4));
    let bottom = ModuleVector::basis(&module, 4);
    assert!(act(&el("F"), &module, &bottom).unwrap().is_zero());
}

#[test]
fn other_systems_are_rejected() {
    let module = build_simple_module(2);
    let x = parse_element(SystemKind::A2, "E[a]", &Substitution::new()).unwrap();
    assert!(module.matrix_of(&x).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_is_multiplicative(seed in any::<u64>(), m in 0usize..4) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let alg = Algebra::get(SystemKind::A1);
        let module = build_simple_module(m);
        let x = common::random_element(&mut rng, SystemKind::A1, 3, 2);
        let y = common::random_element(&mut rng, SystemKind::A1, 3, 2);
        let xy = alg.multiply(&x, &y).unwrap();
        prop_assert_eq!(
            module.matrix_of(&xy).unwrap(),
            module.matrix_of(&x).unwrap().mul(&module.matrix_of(&y).unwrap())
        );
        for i in 0..module.dim() {
            let v = ModuleVector::basis(&module, i);
            let lhs = act(&xy, &module, &v).unwrap();
            let rhs = act(&x, &module, &act(&y, &module, &v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn borel_flags_are_complete() {
    for l in [QRat::one(), QRat::q(), QRat::from_int(-3)] {
        let b = borel(l.clone());
        for m in 0..=4 {
            let module = build_simple_module(m);
            assert_eq!(onedim_flag_length(&module, &b).unwrap(), m + 1, "L({m}), l = {l}");
        }
        let r = restrict_find_onedim(&build_simple_module(1), &b).unwrap();
        assert_eq!(r.submodules.len(), 1);
        assert_eq!(r.quotients.len(), 1);
    }
}

#[test]
fn whole_algebra_has_no_line() {
    let u = GeneratorSet::new("U", vec![el("E"), el("F"), el("K"), el("K^-1")]).unwrap();
    for m in 1..=4 {
        let module = build_simple_module(m);
        let r = restrict_find_onedim(&module, &u).unwrap();
        assert!(r.submodules.is_empty());
        assert_eq!(onedim_flag_length(&module, &u).unwrap(), 0);
    }
}
