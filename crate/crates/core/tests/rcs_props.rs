mod common;

use std::collections::BTreeMap;

use qcoideal::expr::{parse_element, Substitution};
use qcoideal::rcs::{
    character_shift_set, character_support, homogeneous_rcs, perp_lattice, validate_character, Character, Lattice, Side,
};
use qcoideal::subalgebra::{is_right_coideal, torus_check, CoidealStatus, GeneratorSet};
use qcoideal::{QRat, RootSystem, SystemKind, UElement, Weight, WeylWord};

use SystemKind::{A1, A2};

fn w(s: &str) -> WeylWord {
    WeylWord::parse(s).unwrap()
}

fn el(sys: SystemKind, s: &str) -> UElement {
    parse_element(sys, s, &Substitution::new()).unwrap()
}

/// The two-sided homogeneous list with the smallest lattice each entry allows.
fn two_sided_table() -> Vec<(&'static str, &'static str, Vec<Weight>)> {
    let a2 = Weight::new(2, 0);
    let b2 = Weight::new(0, 2);
    let ab2 = Weight::new(2, 2);
    vec![
        ("sa", "sa", vec![a2]),
        ("sa sb", "sa", vec![a2]),
        ("sb", "sa", vec![]),
        ("sb sa", "sa", vec![a2]),
        ("sa sb sa", "sa", vec![a2]),
        ("sa sb", "sa sb", vec![a2, b2]),
        ("sb sa", "sa sb", vec![ab2]),
        ("sa sb sa", "sa sb", vec![a2, b2]),
        ("sa sb sa", "sa sb sa", vec![a2, b2]),
    ]
}

#[test]
fn two_sided_homogeneous_entries() {
    for (wp, wm, basis) in two_sided_table() {
        let lattice = Lattice::generated_by(&basis);
        let z = homogeneous_rcs(A2, &w(wp), &lattice, &w(wm)).unwrap();
        let report = is_right_coideal(&z, 3, 2);
        assert_eq!(report.status, CoidealStatus::VerifiedUpToD, "({wp}, {wm})");
        assert!(torus_check(&z, 3, 2).is_subhopf(), "({wp}, {wm}) torus");
        // without K_l for the first basis vector the torus loses its inverses
        if let Some(l) = basis.first() {
            let k = UElement::k(A2, *l);
            let dropped: Vec<UElement> = z.gens().iter().filter(|g| **g != k).cloned().collect();
            let dropped = GeneratorSet::new("dropped", dropped).unwrap();
            let t = torus_check(&dropped, 3, 2);
            assert!(!t.is_subhopf(), "({wp}, {wm}) without K[{l}]");
        }
    }
}

#[test]
fn listed_example_generators() {
    let z = homogeneous_rcs(A2, &w("sa"), &Lattice::generated_by(&[Weight::new(2, 0)]), &w("sa")).unwrap();
    let want: Vec<UElement> = ["E[a]*K[-a]", "K[2a]", "K[-2a]", "F[a]"]
        .iter()
        .map(|s| el(A2, s))
        .collect();
    assert_eq!(z.gens(), &want[..]);
    let u0 = homogeneous_rcs(A2, &WeylWord::identity(), &Lattice::full(A2), &WeylWord::identity()).unwrap();
    assert_eq!(is_right_coideal(&u0, 3, 0).status, CoidealStatus::VerifiedUpToD);
    assert!(u0.gens().iter().all(|g| g.terms().keys().all(|m| m.is_pure_k())));
}

#[test]
fn perp_lattices_pair_to_zero() {
    let rs = RootSystem::get(A2);
    let supports: Vec<Vec<Weight>> = vec![
        vec![Weight::ALPHA],
        vec![Weight::BETA],
        vec![Weight::new(1, 1)],
        vec![Weight::ALPHA, Weight::BETA],
        vec![],
    ];
    for s in supports {
        let l = perp_lattice(A2, &s);
        for b in &l.basis {
            for r in &s {
                assert_eq!(rs.form(*b, *r), 0);
            }
        }
    }
    assert_eq!(perp_lattice(A2, &[Weight::ALPHA]).basis.len(), 1);
    assert!(perp_lattice(A2, &[Weight::ALPHA]).contains(Weight::new(1, 2)));
    assert!(perp_lattice(A2, &[Weight::new(1, 1)]).contains(Weight::new(1, -1)));
    assert_eq!(perp_lattice(A2, &[]).rank(), 2);
}

fn shifts() -> Vec<(GeneratorSet, Character)> {
    let mut out = Vec::new();
    let lam = QRat::from_int(2);
    let a1 = |s: &str, side, v: &QRat| {
        let phi = Character::new(A1, w("sa"), side, BTreeMap::from([(Weight::ALPHA, v.clone())])).unwrap();
        (GeneratorSet::new("z", vec![el(A1, s)]).unwrap(), phi)
    };
    out.push(a1("F", Side::F, &lam));
    out.push(a1("E*K^-1", Side::E, &QRat::q()));
    let plus = GeneratorSet::new("z", vec![el(A2, "E[a]*K[-a]"), el(A2, "E[ab]*K[-a-b]")]).unwrap();
    let phi_a = Character::new(A2, w("sa sb"), Side::E, BTreeMap::from([(Weight::ALPHA, lam.clone())])).unwrap();
    let phi_ab = Character::new(
        A2,
        w("sa sb"),
        Side::E,
        BTreeMap::from([(Weight::new(1, 1), lam.clone())]),
    )
    .unwrap();
    out.push((plus.clone(), phi_a.clone()));
    out.push((plus, phi_ab.clone()));
    // with the torus allowed by the support
    let perp_a = perp_lattice(A2, &[Weight::ALPHA]).basis[0];
    let with_torus = GeneratorSet::new(
        "z",
        vec![
            el(A2, "E[a]*K[-a]"),
            el(A2, "E[ab]*K[-a-b]"),
            UElement::k(A2, perp_a),
            UElement::k(A2, -perp_a),
        ],
    )
    .unwrap();
    out.push((with_torus, phi_a));
    let minus = GeneratorSet::new("z", vec![el(A2, "F[b]")]).unwrap();
    let phi_b = Character::new(A2, w("sb"), Side::F, BTreeMap::from([(Weight::BETA, QRat::q_pow(-1))])).unwrap();
    out.push((minus, phi_b));
    out
}

#[test]
fn character_shifts_are_coideals() {
    for (z, phi) in shifts() {
        assert!(validate_character(&phi, 3));
        let (shifted, report) = character_shift_set(&z, &phi, 3).unwrap();
        let report = if report.status == CoidealStatus::VerifiedUpToD {
            report
        } else {
            is_right_coideal(&shifted, 3, 2)
        };
        assert_eq!(report.status, CoidealStatus::VerifiedUpToD, "{:?}", shifted.gens());
        assert!(!character_support(&phi).is_empty());
    }
}

#[test]
fn listed_shift_values() {
    let (z, phi) = &shifts()[0];
    let (shifted, _) = character_shift_set(z, phi, 3).unwrap();
    assert_eq!(shifted.gens()[0], el(A1, "F + 2*K^-1"));
    let (z, phi) = &shifts()[2];
    let (shifted, _) = character_shift_set(z, phi, 3).unwrap();
    assert_eq!(shifted.gens()[0], el(A2, "E[a]*K[-a] + 2*K[-a]"));
    assert_eq!(shifted.gens()[1], el(A2, "E[ab]*K[-a-b] + 2*(1 - q^-2)*E[b]*K[-a-b]"));
}

#[test]
fn zero_shift_is_identity() {
    for (z, phi) in shifts() {
        let zero = Character::zero(phi.system, phi.domain_word.clone(), phi.side).unwrap();
        let (shifted, _) = character_shift_set(&z, &zero, 2).unwrap();
        assert_eq!(shifted.gens(), z.gens());
        assert!(character_support(&zero).is_empty());
    }
}
