#![allow(dead_code)]

use qcoideal::pbw::{ExpVec, PBWMonomial, UElement};
use qcoideal::{QRat, RootSystem, SystemKind, Weight};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// (a + b q^i) / (c + d q^j) with small integers and a nonzero denominator.
pub fn random_qrat(rng: &mut StdRng) -> QRat {
    loop {
        let a = QRat::from_int(rng.gen_range(-3..=3));
        let b = QRat::from_int(rng.gen_range(-3..=3));
        let c = QRat::from_int(rng.gen_range(-2..=2));
        let d = QRat::from_int(rng.gen_range(-2..=2));
        let num = &a + &(&b * &QRat::q_pow(rng.gen_range(-3..=3)));
        let den = &c + &(&d * &QRat::q_pow(rng.gen_range(-3..=3)));
        if num.is_zero() || den.is_zero() {
            continue;
        }
        return &num / &den;
    }
}

fn random_exp(rng: &mut StdRng, n: usize, budget: u32) -> ExpVec {
    let mut e = ExpVec::ZERO;
    let mut left = budget;
    while left > 0 && rng.gen_bool(0.6) {
        e = e.add(&ExpVec::unit(rng.gen_range(0..n)));
        left -= 1;
    }
    e
}

pub fn random_monomial(rng: &mut StdRng, sys: SystemKind, max_degree: u32) -> PBWMonomial {
    let rs = RootSystem::get(sys);
    let n = rs.n_pos();
    let e = random_exp(rng, n, max_degree);
    let f = random_exp(rng, n, max_degree - e.degree());
    let k = match sys {
        SystemKind::A1 => Weight::new(rng.gen_range(-3..=3), 0),
        SystemKind::A2 => Weight::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3)),
    };
    PBWMonomial::new(e, k, f)
}

pub fn random_element(rng: &mut StdRng, sys: SystemKind, max_terms: usize, max_degree: u32) -> UElement {
    let terms = rng.gen_range(1..=max_terms);
    UElement::from_terms(
        sys,
        (0..terms).map(|_| (random_monomial(rng, sys, max_degree), random_qrat(rng))),
    )
}

pub fn random_system(rng: &mut StdRng) -> SystemKind {
    if rng.gen_bool(0.5) {
        SystemKind::A1
    } else {
        SystemKind::A2
    }
}
