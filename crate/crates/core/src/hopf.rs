//! Coproduct, counit and slicing functionals.
//!
//! `Δ(E_i) = E_i⊗1 + K_i⊗E_i`, `Δ(F_i) = F_i⊗K_i⁻¹ + 1⊗F_i`, `Δ(K_ν) = K_ν⊗K_ν`,
//! extended multiplicatively to root vectors and PBW monomials.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, RwLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pbw::{Algebra, ExpVec, PBWMonomial, UElement};
use crate::rcs::Character;
use crate::rootdata::{RootSystem, SystemKind, Weight};
use crate::scalar::QRat;

/// Finite linear combination of `m ⊗ m'` for PBW monomials `m, m'`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    system: SystemKind,
    terms: BTreeMap<(PBWMonomial, PBWMonomial), QRat>,
}

impl TensorElement {
    pub fn zero(system: SystemKind) -> Self {
        TensorElement {
            system,
            terms: BTreeMap::new(),
        }
    }

    pub fn system(&self) -> SystemKind {
        self.system
    }

    pub fn terms(&self) -> &BTreeMap<(PBWMonomial, PBWMonomial), QRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, l: PBWMonomial, r: PBWMonomial, c: &QRat) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &UElement, b: &UElement) -> Result<TensorElement> {
        if a.system() != b.system() {
            return Err(Error::SystemMismatch(a.system(), b.system()));
        }
        let mut out = TensorElement::zero(a.system());
        for (l, c) in a.terms() {
            for (r, d) in b.terms() {
                out.add_term(*l, *r, &(c * d));
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, o: &TensorElement) -> Result<TensorElement> {
        if self.system != o.system {
            return Err(Error::SystemMismatch(self.system, o.system));
        }
        let mut out = self.clone();
        for ((l, r), c) in &o.terms {
            out.add_term(*l, *r, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &TensorElement) -> Result<TensorElement> {
        self.try_add(&o.scale(&-QRat::one()))
    }

    pub fn scale(&self, c: &QRat) -> TensorElement {
        let mut out = TensorElement::zero(self.system);
        for ((l, r), v) in &self.terms {
            out.add_term(*l, *r, &(v * c));
        }
        out
    }

    /// Product in U ⊗ U.
    pub fn multiply(&self, o: &TensorElement) -> Result<TensorElement> {
        if self.system != o.system {
            return Err(Error::SystemMismatch(self.system, o.system));
        }
        let alg = Algebra::get(self.system);
        let mut out = TensorElement::zero(self.system);
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &o.terms {
                let c12 = c1 * c2;
                let ls = alg.mono_mul(l1, l2);
                let rs = alg.mono_mul(r1, r2);
                for (l, cl) in &ls {
                    let c = &c12 * cl;
                    for (r, cr) in &rs {
                        out.add_term(*l, *r, &(&c * cr));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Groups the terms by right leg: right monomial ↦ left element.
    pub fn by_right_leg(&self) -> BTreeMap<PBWMonomial, UElement> {
        let mut out: BTreeMap<PBWMonomial, UElement> = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            out.entry(*r)
                .or_insert_with(|| UElement::zero(self.system))
                .add_term(*l, c);
        }
        out
    }

    /// Groups the terms by left leg: left monomial ↦ right element.
    pub fn by_left_leg(&self) -> BTreeMap<PBWMonomial, UElement> {
        let mut out: BTreeMap<PBWMonomial, UElement> = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            out.entry(*l)
                .or_insert_with(|| UElement::zero(self.system))
                .add_term(*r, c);
        }
        out
    }
}

impl std::fmt::Display for TensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| {
                let ls = crate::expr::print_monomial(self.system, l);
                let rs = crate::expr::print_monomial(self.system, r);
                format!("({c}) {ls} ⊗ {rs}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl std::fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TensorElement[{}]({self})", self.system)
    }
}

type DeltaCache = RwLock<HashMap<(SystemKind, PBWMonomial), Arc<TensorElement>>>;
static DELTA_CACHE: LazyLock<DeltaCache> = LazyLock::new(|| RwLock::new(HashMap::new()));

fn simple_delta(system: SystemKind, letter: &crate::pbw::Letter) -> TensorElement {
    use crate::pbw::Letter;
    let rs = RootSystem::get(system);
    let mut t = TensorElement::zero(system);
    let one = PBWMonomial::ONE;
    match *letter {
        Letter::E(i) => {
            let m = PBWMonomial::e_only(ExpVec::unit(i));
            t.add_term(m, one, &QRat::one());
            t.add_term(PBWMonomial::k_only(rs.positive_roots[i]), m, &QRat::one());
        }
        Letter::F(i) => {
            let m = PBWMonomial::f_only(ExpVec::unit(i));
            t.add_term(m, PBWMonomial::k_only(-rs.positive_roots[i]), &QRat::one());
            t.add_term(one, m, &QRat::one());
        }
        Letter::K(w) => {
            let m = PBWMonomial::k_only(w);
            t.add_term(m, m, &QRat::one());
        }
    }
    t
}

fn root_vector_delta(system: SystemKind, e_side: bool, i: usize) -> Result<TensorElement> {
    let alg = Algebra::get(system);
    let words = if e_side {
        alg.table().e_expansion(i)
    } else {
        alg.table().f_expansion(i)
    };
    let mut out = TensorElement::zero(system);
    for (c, w) in words {
        let mut acc = TensorElement::zero(system);
        acc.add_term(PBWMonomial::ONE, PBWMonomial::ONE, &c);
        for l in &w {
            acc = acc.multiply(&simple_delta(system, l))?;
        }
        out = out.try_add(&acc)?;
    }
    Ok(out)
}

fn monomial_delta(system: SystemKind, m: &PBWMonomial) -> Result<Arc<TensorElement>> {
    let key = (system, *m);
    if let Some(v) = DELTA_CACHE.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let value = if m.is_one() {
        let mut t = TensorElement::zero(system);
        t.add_term(PBWMonomial::ONE, PBWMonomial::ONE, &QRat::one());
        t
    } else if !m.e.is_zero() && (!m.f.is_zero() || !m.k.is_zero()) {
        let e = monomial_delta(system, &PBWMonomial::e_only(m.e))?;
        let rest = monomial_delta(system, &PBWMonomial::new(ExpVec::ZERO, m.k, m.f))?;
        e.multiply(&rest)?
    } else if !m.k.is_zero() && !m.f.is_zero() {
        let mut kk = TensorElement::zero(system);
        kk.add_term(PBWMonomial::k_only(m.k), PBWMonomial::k_only(m.k), &QRat::one());
        kk.multiply(&*monomial_delta(system, &PBWMonomial::f_only(m.f))?)?
    } else if !m.k.is_zero() {
        let mut kk = TensorElement::zero(system);
        kk.add_term(*m, *m, &QRat::one());
        kk
    } else if !m.e.is_zero() {
        let j = m.e.0.iter().rposition(|&x| x > 0).unwrap();
        let first = root_vector_delta(system, true, j)?;
        let rest = m.e.checked_sub(&ExpVec::unit(j)).unwrap();
        if rest.is_zero() {
            first
        } else {
            first.multiply(&*monomial_delta(system, &PBWMonomial::e_only(rest))?)?
        }
    } else {
        let j = m.f.0.iter().position(|&x| x > 0).unwrap();
        let first = root_vector_delta(system, false, j)?;
        let rest = m.f.checked_sub(&ExpVec::unit(j)).unwrap();
        if rest.is_zero() {
            first
        } else {
            first.multiply(&*monomial_delta(system, &PBWMonomial::f_only(rest))?)?
        }
    };
    let v = Arc::new(value);
    DELTA_CACHE.write().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Δ(X) with both legs in PBW normal form.
pub fn coproduct(x: &UElement) -> Result<TensorElement> {
    let system = x.system();
    let parts: Vec<(Arc<TensorElement>, QRat)> = x
        .terms()
        .par_iter()
        .map(|(m, c)| monomial_delta(system, m).map(|d| (d, c.clone())))
        .collect::<Result<_>>()?;
    let mut out = TensorElement::zero(system);
    for (d, c) in parts {
        for ((l, r), v) in d.terms() {
            out.add_term(*l, *r, &(v * &c));
        }
    }
    Ok(out)
}

/// Counit ε.
pub fn counit(x: &UElement) -> QRat {
    x.counit()
}

/// Element of U ⊗ U ⊗ U used for coassociativity checks.
pub type Tensor3 = BTreeMap<(PBWMonomial, PBWMonomial, PBWMonomial), QRat>;

fn add3(t: &mut Tensor3, key: (PBWMonomial, PBWMonomial, PBWMonomial), c: &QRat) {
    let e = t.entry(key).or_insert_with(QRat::zero);
    *e += c;
    if e.is_zero() {
        t.remove(&key);
    }
}

/// (Δ⊗id)Δ(X).
pub fn delta_left(x: &UElement) -> Result<Tensor3> {
    let mut out = Tensor3::new();
    for ((l, r), c) in coproduct(x)?.terms() {
        for ((a, b), d) in monomial_delta(x.system(), l)?.terms() {
            add3(&mut out, (*a, *b, *r), &(c * d));
        }
    }
    Ok(out)
}

/// (id⊗Δ)Δ(X).
pub fn delta_right(x: &UElement) -> Result<Tensor3> {
    let mut out = Tensor3::new();
    for ((l, r), c) in coproduct(x)?.terms() {
        for ((a, b), d) in monomial_delta(x.system(), r)?.terms() {
            add3(&mut out, (*l, *a, *b), &(c * d));
        }
    }
    Ok(out)
}

/// (ε⊗id)Δ(X) and (id⊗ε)Δ(X).
pub fn counit_sides(x: &UElement) -> Result<(UElement, UElement)> {
    let d = coproduct(x)?;
    let mut left = UElement::zero(x.system());
    let mut right = UElement::zero(x.system());
    for ((l, r), c) in d.terms() {
        if l.is_pure_k() {
            left.add_term(*r, c);
        }
        if r.is_pure_k() {
            right.add_term(*l, c);
        }
    }
    Ok((left, right))
}

/// Linear functional dual to one PBW monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualFunctional {
    pub target: PBWMonomial,
}

impl DualFunctional {
    pub fn new(target: PBWMonomial) -> Self {
        DualFunctional { target }
    }

    /// Dual to `K_η`.
    pub fn k(eta: Weight) -> Self {
        DualFunctional::new(PBWMonomial::k_only(eta))
    }
}

/// Left-hand functional for [`slice_left`].
#[derive(Clone, Copy, Debug)]
pub enum LeftFunctional<'a> {
    Dual(DualFunctional),
    Character(&'a Character),
}

/// (id⊗φ)Δ(X). Pure-K targets use the filter `ν − γ = η`.
pub fn slice_right(x: &UElement, phi: &DualFunctional) -> Result<UElement> {
    if phi.target.is_pure_k() {
        let rs = RootSystem::get(x.system());
        let eta = phi.target.k;
        return Ok(x.filter(|m| m.k - rs.pr(&m.f) == eta));
    }
    slice_right_via_coproduct(x, phi)
}

/// (id⊗φ)Δ(X) computed from the full coproduct.
pub fn slice_right_via_coproduct(x: &UElement, phi: &DualFunctional) -> Result<UElement> {
    let d = coproduct(x)?;
    let mut out = UElement::zero(x.system());
    for ((l, r), c) in d.terms() {
        if *r == phi.target {
            out.add_term(*l, c);
        }
    }
    Ok(out)
}

/// (φ⊗id)Δ(X).
pub fn slice_left(x: &UElement, phi: LeftFunctional<'_>) -> Result<UElement> {
    let d = coproduct(x)?;
    let mut out = UElement::zero(x.system());
    for ((l, r), c) in d.terms() {
        let v = match phi {
            LeftFunctional::Dual(df) => {
                if *l == df.target {
                    QRat::one()
                } else {
                    QRat::zero()
                }
            }
            LeftFunctional::Character(ch) => ch.value_on(l)?,
        };
        if !v.is_zero() {
            out.add_term(*r, &(c * &v));
        }
    }
    Ok(out)
}

/// Checks the triangular shape of Δ(X) for X homogeneous of degree (μ, ν, γ):
/// after removing `X⊗K_{ν−γ}` and `K_{μ+ν}⊗X`, every term lies in
/// `U⁺_{μ'} K_{ν+μ−μ'} U⁻_{−γ'} ⊗ U⁺_{μ−μ'} K_{ν−γ'} U⁻_{−γ+γ'}`
/// with `(0,0) ≺ (μ',γ') ≺ (μ,γ)` strictly on both sides.
pub fn check_coproduct_shape(x: &UElement, mu: Weight, nu: Weight, gamma: Weight) -> Result<bool> {
    let rs = RootSystem::get(x.system());
    for m in x.terms().keys() {
        if rs.pr(&m.e) != mu || m.k != nu || rs.pr(&m.f) != gamma {
            return Err(Error::NotHomogeneous(format!(
                "{} is not of degree ({mu}, {nu}, {gamma})",
                crate::expr::print_monomial(x.system(), m)
            )));
        }
    }
    let d = coproduct(x)?;
    let mut rest = d.try_sub(&TensorElement::tensor(x, &UElement::k(x.system(), nu - gamma))?)?;
    if !(mu.is_zero() && gamma.is_zero()) {
        rest = rest.try_sub(&TensorElement::tensor(&UElement::k(x.system(), mu + nu), x)?)?;
    }
    for (l, r) in rest.terms().keys() {
        let mu1 = rs.pr(&l.e);
        let gamma1 = rs.pr(&l.f);
        let lower = mu1.is_nonneg()
            && gamma1.is_nonneg()
            && (mu - mu1).is_nonneg()
            && (gamma - gamma1).is_nonneg()
            && !(mu1.is_zero() && gamma1.is_zero())
            && !(mu1 == mu && gamma1 == gamma);
        let left_k = l.k == nu + mu - mu1;
        let right_ok = rs.pr(&r.e) == mu - mu1 && r.k == nu - gamma1 && rs.pr(&r.f) == gamma - gamma1;
        if !(lower && left_k && right_ok) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_element, Substitution};
    use SystemKind::{A1, A2};

    fn p(sys: SystemKind, s: &str) -> UElement {
        parse_element(sys, s, &Substitution::new()).unwrap()
    }

    fn t(sys: SystemKind, pairs: &[(&str, &str, &str)]) -> TensorElement {
        let mut out = TensorElement::zero(sys);
        for (c, l, r) in pairs {
            let c: QRat = c.parse().unwrap();
            let x = TensorElement::tensor(&p(sys, l), &p(sys, r)).unwrap().scale(&c);
            out = out.try_add(&x).unwrap();
        }
        out
    }

    #[test]
    fn root_vector_coproducts() {
        let d = coproduct(&p(A2, "E[ab]")).unwrap();
        let expect = t(
            A2,
            &[
                ("1", "E[ab]", "1"),
                ("1", "K[a+b]", "E[ab]"),
                ("q^2 - 1 / q^2", "E[a]*K[b]", "E[b]"),
            ],
        );
        assert_eq!(d, expect);
        let d = coproduct(&p(A2, "F[ab]")).unwrap();
        let expect = t(
            A2,
            &[
                ("1", "F[ab]", "K[-a-b]"),
                ("1", "1", "F[ab]"),
                ("-q^2 + 1 / q", "F[b]", "F[a]*K[-b]"),
            ],
        );
        assert_eq!(d, expect);
    }

    #[test]
    fn a1_normalized_e() {
        let d = coproduct(&p(A1, "E*K^-1")).unwrap();
        assert_eq!(d, t(A1, &[("1", "E*K^-1", "K^-1"), ("1", "1", "E*K^-1")]));
    }

    #[test]
    fn counit_values() {
        assert!(counit(&p(A1, "K")).is_one());
        assert!(counit(&p(A1, "E")).is_zero());
        assert_eq!(counit(&p(A1, "E*K^-1 + 3*K")), QRat::from_int(3));
    }

    #[test]
    fn slices() {
        let x = p(A1, "E*K^-1 + K");
        assert_eq!(
            slice_right(&x, &DualFunctional::k(-Weight::ALPHA)).unwrap(),
            p(A1, "E*K^-1")
        );
        assert_eq!(slice_right(&x, &DualFunctional::k(Weight::ALPHA)).unwrap(), p(A1, "K"));
        let one = UElement::one(A1);
        assert_eq!(slice_right(&one, &DualFunctional::k(Weight::ZERO)).unwrap(), one);
        for eta in [-Weight::ALPHA, Weight::ALPHA, Weight::ZERO] {
            let phi = DualFunctional::k(eta);
            assert_eq!(
                slice_right(&x, &phi).unwrap(),
                slice_right_via_coproduct(&x, &phi).unwrap()
            );
        }
    }

    #[test]
    fn shape_examples() {
        assert!(check_coproduct_shape(&p(A1, "E"), Weight::ALPHA, Weight::ZERO, Weight::ZERO).unwrap());
        let ab = Weight::new(1, 1);
        assert!(check_coproduct_shape(&p(A2, "F[ab]"), Weight::ZERO, Weight::ZERO, ab).unwrap());
        assert!(check_coproduct_shape(&p(A2, "E[ab]"), ab, Weight::ZERO, Weight::ZERO).unwrap());
        assert!(check_coproduct_shape(&p(A2, "E[a] + F[a]"), Weight::ALPHA, Weight::ZERO, Weight::ZERO).is_err());
    }

    #[test]
    fn coassociativity_generators() {
        for s in ["E[a]", "E[ab]", "F[ab]*K[a]", "E[b]*F[a]", "E[ab]*F[ab]"] {
            let x = p(A2, s);
            assert_eq!(delta_left(&x).unwrap(), delta_right(&x).unwrap(), "{s}");
            let (l, r) = counit_sides(&x).unwrap();
            assert_eq!(l, x);
            assert_eq!(r, x);
        }
    }
}
