//! Homogeneous right coideal subalgebras, characters and character shifts.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{slice_left, LeftFunctional};
use crate::pbw::{Algebra, ExpVec, PBWMonomial, UElement};
use crate::rootdata::{RootSystem, SystemKind, Weight, WeylWord};
use crate::scalar::QRat;
use crate::subalgebra::{is_right_coideal, CoidealReport, GeneratorSet};

/// Subgroup of the root lattice, stored in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub basis: Vec<Weight>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Lattice {
    pub fn zero() -> Lattice {
        Lattice { basis: vec![] }
    }

    /// The whole root lattice Q.
    pub fn full(system: SystemKind) -> Lattice {
        Lattice::generated_by(&RootSystem::get(system).simple_roots)
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(gens: &[Weight]) -> Lattice {
        let mut lead: Option<(i64, i64)> = None;
        let mut g2 = 0i64;
        for w in gens {
            let mut v = (w.0[0] as i64, w.0[1] as i64);
            match lead {
                None if v.0 != 0 => lead = Some(v),
                None => g2 = gcd(g2, v.1),
                Some(mut r) => {
                    while v.0 != 0 {
                        let t = r.0 / v.0;
                        r = (r.0 - t * v.0, r.1 - t * v.1);
                        std::mem::swap(&mut r, &mut v);
                    }
                    lead = Some(r);
                    g2 = gcd(g2, v.1);
                }
            }
        }
        let mut basis = Vec::new();
        if let Some(mut r) = lead {
            if r.0 < 0 {
                r = (-r.0, -r.1);
            }
            if g2 != 0 {
                r.1 = r.1.rem_euclid(g2);
            }
            basis.push(Weight::new(r.0 as i32, r.1 as i32));
        }
        if g2 != 0 {
            basis.push(Weight::new(0, g2 as i32));
        }
        Lattice { basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, w: Weight) -> bool {
        let mut v = (w.0[0] as i64, w.0[1] as i64);
        let mut it = self.basis.iter().peekable();
        if let Some(r) = it.peek() {
            if r.0[0] != 0 {
                let r = (r.0[0] as i64, r.0[1] as i64);
                if v.0 % r.0 != 0 {
                    return false;
                }
                let t = v.0 / r.0;
                v = (0, v.1 - t * r.1);
                it.next();
            }
        }
        if v.0 != 0 {
            return false;
        }
        match it.next() {
            Some(r) => v.1 % (r.0[1] as i64) == 0,
            None => v.1 == 0,
        }
    }

    pub fn contains_lattice(&self, o: &Lattice) -> bool {
        o.basis.iter().all(|&w| self.contains(w))
    }
}

impl std::fmt::Display for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|w| w.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Which triangular half a character lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    E,
    F,
}

/// Character of `U⁺[w]` (values on `E_β K_β⁻¹`) or `U⁻[w]` (values on `F_β`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub system: SystemKind,
    pub domain_word: WeylWord,
    pub side: Side,
    pub values: BTreeMap<Weight, QRat>,
}

#[derive(Serialize, Deserialize)]
struct CharacterJson {
    #[serde(default)]
    system: Option<SystemKind>,
    word: Vec<String>,
    side: Side,
    values: BTreeMap<String, QRat>,
}

impl Character {
    pub fn new(
        system: SystemKind,
        domain_word: WeylWord,
        side: Side,
        values: BTreeMap<Weight, QRat>,
    ) -> Result<Character> {
        let rs = RootSystem::get(system);
        let order = rs.phi_plus_of(&domain_word)?;
        for root in values.keys() {
            if !order.roots.contains(root) {
                return Err(Error::Precondition(format!(
                    "{root} is not in the inversion set of {domain_word}"
                )));
            }
        }
        let values = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Character {
            system,
            domain_word,
            side,
            values,
        })
    }

    pub fn zero(system: SystemKind, domain_word: WeylWord, side: Side) -> Result<Character> {
        Character::new(system, domain_word, side, BTreeMap::new())
    }

    /// Φ⁺(w) of the domain word.
    pub fn roots(&self) -> Vec<Weight> {
        RootSystem::get(self.system)
            .phi_plus_of(&self.domain_word)
            .map(|o| o.roots)
            .unwrap_or_default()
    }

    pub fn value(&self, root: Weight) -> QRat {
        self.values.get(&root).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    fn domain_indices(&self) -> BTreeSet<usize> {
        let rs = RootSystem::get(self.system);
        self.roots().into_iter().filter_map(|r| rs.root_index(r)).collect()
    }

    /// Whether `m` is a spanning monomial of the domain algebra.
    pub fn in_domain(&self, m: &PBWMonomial) -> bool {
        let rs = RootSystem::get(self.system);
        let idx = self.domain_indices();
        let (exps, rest_ok) = match self.side {
            Side::E => (m.e, m.f.is_zero() && m.k == -rs.pr(&m.e)),
            Side::F => (m.f, m.e.is_zero() && m.k.is_zero()),
        };
        rest_ok && (0..rs.n_pos()).all(|i| exps.0[i] == 0 || idx.contains(&i))
    }

    /// Value on a PBW monomial of the domain algebra.
    pub fn value_on(&self, m: &PBWMonomial) -> Result<QRat> {
        if !self.in_domain(m) {
            return Err(Error::CharacterUndefined(crate::expr::print_monomial(self.system, m)));
        }
        let rs = RootSystem::get(self.system);
        let exps = match self.side {
            Side::E => m.e,
            Side::F => m.f,
        };
        let mut v = QRat::one();
        for i in 0..rs.n_pos() {
            if exps.0[i] > 0 {
                v = &v * &self.value(rs.positive_roots[i]).pow(exps.0[i] as i64)?;
            }
        }
        if v.is_zero() || self.side == Side::F {
            return Ok(v);
        }
        // product of normalized generators in PBW order is c · E_ē K_{-pr ē}
        let alg = Algebra::get(self.system);
        let mut prod = UElement::one(self.system);
        for i in (0..rs.n_pos()).rev() {
            let g = UElement::e(self.system, i).mul_k_right(-rs.positive_roots[i]);
            for _ in 0..exps.0[i] {
                prod = alg.multiply(&prod, &g)?;
            }
        }
        let c = prod.coefficient_of(m);
        if prod.len() != 1 || c.is_zero() {
            return Err(Error::CharacterUndefined(crate::expr::print_monomial(self.system, m)));
        }
        Ok(&v / &c)
    }

    /// Linear extension of [`Character::value_on`].
    pub fn evaluate(&self, x: &UElement) -> Result<QRat> {
        let mut acc = QRat::zero();
        for (m, c) in x.terms() {
            acc += &(c * &self.value_on(m)?);
        }
        Ok(acc)
    }

    /// Spanning monomials of the domain up to `degree` root-vector letters.
    pub fn domain_monomials(&self, degree: u32) -> Vec<PBWMonomial> {
        let rs = RootSystem::get(self.system);
        let idx: Vec<usize> = self.domain_indices().into_iter().collect();
        let mut out = vec![PBWMonomial::ONE];
        let mut frontier = vec![ExpVec::ZERO];
        for _ in 0..degree {
            let mut next = BTreeSet::new();
            for e in &frontier {
                for &i in &idx {
                    next.insert(e.add(&ExpVec::unit(i)));
                }
            }
            frontier = next.into_iter().collect();
            for e in &frontier {
                out.push(match self.side {
                    Side::E => PBWMonomial::new(*e, -rs.pr(e), ExpVec::ZERO),
                    Side::F => PBWMonomial::f_only(*e),
                });
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rs = RootSystem::get(self.system);
        let word = self
            .domain_word
            .0
            .iter()
            .map(|&i| if i == 0 { "sa" } else { "sb" }.to_string())
            .collect();
        let values = self
            .values
            .iter()
            .map(|(r, v)| {
                let name = rs
                    .root_index(*r)
                    .map(|i| crate::expr::root_name(self.system, i).to_string())
                    .unwrap_or_else(|| r.to_string());
                (name, v.clone())
            })
            .collect();
        serde_json::to_value(CharacterJson {
            system: Some(self.system),
            word,
            side: self.side,
            values,
        })
        .expect("serializable")
    }

    /// Reads `{word: [...], side: "E"|"F", values: {root: qrat}}`.
    pub fn from_json(system: SystemKind, v: &serde_json::Value) -> Result<Character> {
        let cj: CharacterJson = serde_json::from_value(v.clone()).map_err(|e| Error::Data(e.to_string()))?;
        if let Some(s) = cj.system {
            if s != system {
                return Err(Error::SystemMismatch(s, system));
            }
        }
        let word = WeylWord::parse(&cj.word.join(" "))?;
        let rs = RootSystem::get(system);
        let mut values = BTreeMap::new();
        for (k, v) in cj.values {
            values.insert(rs.parse_weight(&k)?, v);
        }
        Character::new(system, word, cj.side, values)
    }
}

/// Generators `E_β K_β⁻¹` (β ∈ Φ⁺(w⁺)), `K_{±l}` (l in a basis of L) and `F_β` (β ∈ Φ⁺(w⁻)).
pub fn homogeneous_rcs(
    system: SystemKind,
    wplus: &WeylWord,
    lattice: &Lattice,
    wminus: &WeylWord,
) -> Result<GeneratorSet> {
    let rs = RootSystem::get(system);
    let alg = Algebra::get(system);
    let mut gens = Vec::new();
    let plus = rs.phi_plus_of(wplus)?.roots;
    for &r in &plus {
        let x = if swapped_root(rs, &plus, r) {
            alg.e_ba()?
        } else {
            UElement::e(system, rs.root_index(r).expect("positive root"))
        };
        gens.push(x.mul_k_right(-r));
    }
    for &l in &lattice.basis {
        gens.push(UElement::k(system, l));
        gens.push(UElement::k(system, -l));
    }
    let minus = rs.phi_plus_of(wminus)?.roots;
    for &r in &minus {
        if r == Weight::new(1, 1) && rs.kind == SystemKind::A2 && !swapped_root(rs, &minus, r) {
            gens.push(alg.f_ba()?);
        } else {
            gens.push(UElement::f(system, rs.root_index(r).expect("positive root")));
        }
    }
    if gens.is_empty() {
        gens.push(UElement::one(system));
    }
    GeneratorSet::new(format!("U+[{wplus}] T{lattice} U-[{wminus}]"), gens)
}

/// Whether the order starts with β, so that the E-side root vector of α+β is `E_{βα}`.
/// On the F-side the roles flip: `F_{βα}` belongs to orders starting with α.
fn swapped_root(rs: &RootSystem, order: &[Weight], r: Weight) -> bool {
    rs.kind == SystemKind::A2 && r == Weight::new(1, 1) && order.first() == Some(&Weight::BETA)
}

/// Roots on which the character does not vanish.
pub fn character_support(phi: &Character) -> BTreeSet<Weight> {
    phi.values
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(r, _)| *r)
        .collect()
}

/// Basis of the sublattice orthogonal to every element of `support`.
pub fn perp_lattice(system: SystemKind, support: &[Weight]) -> Lattice {
    Lattice::generated_by(&RootSystem::get(system).perp_lattice(support))
}

/// Checks φ(xy) = φ(x)φ(y) for all domain monomials with total degree ≤ `degree`.
pub fn validate_character(phi: &Character, degree: u32) -> bool {
    let alg = Algebra::get(phi.system);
    let monos = phi.domain_monomials(degree);
    for a in &monos {
        for b in &monos {
            if a.total_degree() + b.total_degree() > degree || a.is_one() || b.is_one() {
                continue;
            }
            let prod = UElement::from_terms(phi.system, alg.mono_mul(a, b));
            let lhs = match phi.evaluate(&prod) {
                Ok(v) => v,
                Err(_) => return false,
            };
            let (Ok(va), Ok(vb)) = (phi.value_on(a), phi.value_on(b)) else {
                return false;
            };
            if lhs != &va * &vb {
                return false;
            }
        }
    }
    true
}

/// Applies x ↦ (φ⊗id)Δ(x) to every generator; pure torus generators pass through unchanged.
pub fn character_shift(z: &GeneratorSet, phi: &Character) -> Result<GeneratorSet> {
    if z.system() != phi.system {
        return Err(Error::SystemMismatch(z.system(), phi.system));
    }
    let mut gens = Vec::with_capacity(z.len());
    for g in z.gens() {
        if g.terms().keys().all(|m| m.is_pure_k()) {
            gens.push(g.clone());
        } else {
            gens.push(slice_left(g, LeftFunctional::Character(phi))?);
        }
    }
    GeneratorSet::new(format!("{}_phi", z.name), gens)
}

/// [`character_shift`] followed by the coideal verifier at `degree`.
pub fn character_shift_set(z: &GeneratorSet, phi: &Character, degree: usize) -> Result<(GeneratorSet, CoidealReport)> {
    let shifted = character_shift(z, phi)?;
    let report = is_right_coideal(&shifted, degree, 0);
    Ok((shifted, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_element, Substitution};

    fn p(sys: SystemKind, s: &str) -> UElement {
        parse_element(sys, s, &Substitution::new()).unwrap()
    }

    #[test]
    fn lattice_membership() {
        let l = Lattice::generated_by(&[Weight::new(2, 0), Weight::new(0, 2), Weight::new(2, 4)]);
        assert_eq!(l.basis, vec![Weight::new(2, 0), Weight::new(0, 2)]);
        assert!(l.contains(Weight::new(4, -2)));
        assert!(!l.contains(Weight::new(1, 0)));
        let l = Lattice::generated_by(&[Weight::new(1, 2)]);
        assert!(l.contains(Weight::new(-2, -4)));
        assert!(!l.contains(Weight::new(0, 2)));
        let l = Lattice::generated_by(&[Weight::new(3, 1), Weight::new(1, 1)]);
        assert_eq!(l.basis, vec![Weight::new(1, 1), Weight::new(0, 2)]);
        assert!(Lattice::zero().contains(Weight::ZERO));
        assert!(!Lattice::zero().contains(Weight::ALPHA));
    }

    #[test]
    fn perp_examples() {
        let sys = SystemKind::A2;
        assert_eq!(perp_lattice(sys, &[Weight::ALPHA]).basis, vec![Weight::new(1, 2)]);
        assert_eq!(perp_lattice(sys, &[Weight::new(1, 1)]).basis, vec![Weight::new(1, -1)]);
        assert_eq!(perp_lattice(sys, &[]), Lattice::full(sys));
    }

    #[test]
    fn homogeneous_example() {
        let sys = SystemKind::A2;
        let sa = WeylWord::parse("sa").unwrap();
        let z = homogeneous_rcs(sys, &sa, &Lattice::generated_by(&[Weight::new(2, 0)]), &sa).unwrap();
        let expect = ["E[a]*K[-a]", "K[2a]", "K[-2a]", "F[a]"];
        assert_eq!(z.gens().len(), 4);
        for (g, s) in z.gens().iter().zip(expect) {
            assert_eq!(g, &p(sys, s));
        }
    }

    #[test]
    fn shift_examples() {
        let a1 = SystemKind::A1;
        let sa = WeylWord::parse("sa").unwrap();
        let lp: QRat = "3".parse().unwrap();
        let phi = Character::new(a1, sa.clone(), Side::F, [(Weight::ALPHA, lp)].into()).unwrap();
        let out = slice_left(&p(a1, "F"), LeftFunctional::Character(&phi)).unwrap();
        assert_eq!(out, p(a1, "F + 3*K^-1"));
        let phi = Character::new(a1, sa, Side::E, [(Weight::ALPHA, QRat::from_int(2))].into()).unwrap();
        let out = slice_left(&p(a1, "E*K^-1"), LeftFunctional::Character(&phi)).unwrap();
        assert_eq!(out, p(a1, "E*K^-1 + 2*K^-1"));

        let a2 = SystemKind::A2;
        let w = WeylWord::parse("sa sb").unwrap();
        let phi = Character::new(a2, w, Side::E, [(Weight::ALPHA, QRat::from_int(5))].into()).unwrap();
        let out = slice_left(&p(a2, "E[ab]*K[-a-b]"), LeftFunctional::Character(&phi)).unwrap();
        assert_eq!(out, p(a2, "E[ab]*K[-a-b] + 5*(1 - q^-2)*E[b]*K[-a-b]"));
        assert!(validate_character(&phi, 3));
        let err = slice_left(&p(a2, "E[b]"), LeftFunctional::Character(&phi));
        assert!(matches!(err, Err(Error::CharacterUndefined(_))));
    }

    #[test]
    fn incompatible_values() {
        let a2 = SystemKind::A2;
        let w = WeylWord::parse("sa sb").unwrap();
        let vals = [(Weight::ALPHA, QRat::one()), (Weight::new(1, 1), QRat::one())];
        let phi = Character::new(a2, w.clone(), Side::E, vals.into()).unwrap();
        assert!(!validate_character(&phi, 2));
        let phi = Character::new(a2, w, Side::F, [(Weight::ALPHA, QRat::q())].into()).unwrap();
        assert!(validate_character(&phi, 3));
    }

    #[test]
    fn json_round_trip() {
        let a2 = SystemKind::A2;
        let w = WeylWord::parse("sa sb").unwrap();
        let phi = Character::new(a2, w, Side::E, [(Weight::ALPHA, QRat::q())].into()).unwrap();
        let back = Character::from_json(a2, &phi.to_json()).unwrap();
        assert_eq!(back, phi);
    }
}
