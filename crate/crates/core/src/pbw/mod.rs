//! PBW monomials, elements of U_q, and straightening multiplication.
//!
//! A monomial `E_ē K_ν F_f̄` stores the E-block in decreasing convex order
//! (`E_β^{e2} E_{αβ}^{e1} E_α^{e0}` in A2) and the F-block in increasing order
//! (`F_α^{f0} F_{αβ}^{f1} F_β^{f2}`). Products are straightened with the rules
//! of a [`RelationTable`] and memoised per algebra.
//!
//! Conventions: `K_μ E_β K_μ⁻¹ = q^{(μ,β)} E_β`, `K_μ F_β K_μ⁻¹ = q^{-(μ,β)} F_β`,
//! `[E_i, F_i] = (K_i − K_i⁻¹)/(q − q⁻¹)`.

mod relations;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, SystemKind, Weight};
use crate::scalar::QRat;

pub use crate::rootdata::ExpVec;
use relations::Words;
pub use relations::{Letter, RelationTable};

/// Basis element `E_ē K_ν F_f̄` of the PBW basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PBWMonomial {
    pub e: ExpVec,
    pub k: Weight,
    pub f: ExpVec,
}

impl PBWMonomial {
    pub const ONE: PBWMonomial = PBWMonomial {
        e: ExpVec::ZERO,
        k: Weight::ZERO,
        f: ExpVec::ZERO,
    };

    pub fn new(e: ExpVec, k: Weight, f: ExpVec) -> Self {
        PBWMonomial { e, k, f }
    }

    pub fn k_only(k: Weight) -> Self {
        PBWMonomial::new(ExpVec::ZERO, k, ExpVec::ZERO)
    }

    pub fn e_only(e: ExpVec) -> Self {
        PBWMonomial::new(e, Weight::ZERO, ExpVec::ZERO)
    }

    pub fn f_only(f: ExpVec) -> Self {
        PBWMonomial::new(ExpVec::ZERO, Weight::ZERO, f)
    }

    /// Number of root-vector letters in both blocks.
    pub fn total_degree(&self) -> u32 {
        self.e.degree() + self.f.degree()
    }

    pub fn is_pure_k(&self) -> bool {
        self.e.is_zero() && self.f.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == PBWMonomial::ONE
    }

    /// Q-degree pr(ē) − pr(f̄).
    pub fn q_degree(&self, rs: &RootSystem) -> Weight {
        rs.pr(&self.e) - rs.pr(&self.f)
    }
}

impl Ord for PBWMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.e.cmp(&other.e))
            .then_with(|| self.k.cmp(&other.k))
            .then_with(|| self.f.cmp(&other.f))
    }
}

impl PartialOrd for PBWMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A single algebra generator: a root vector `E_β`, `F_β` (by convex index) or `K_ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E(usize),
    F(usize),
    K(Weight),
}

/// Finite Q(q)-linear combination of PBW monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UElement {
    system: SystemKind,
    terms: BTreeMap<PBWMonomial, QRat>,
}

impl UElement {
    pub fn zero(system: SystemKind) -> Self {
        UElement {
            system,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(system: SystemKind) -> Self {
        Self::scalar(system, QRat::one())
    }

    pub fn scalar(system: SystemKind, c: QRat) -> Self {
        Self::monomial(system, PBWMonomial::ONE, c)
    }

    pub fn monomial(system: SystemKind, m: PBWMonomial, c: QRat) -> Self {
        let mut x = Self::zero(system);
        x.add_term(m, &c);
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (PBWMonomial, QRat)>>(system: SystemKind, it: I) -> Self {
        let mut x = Self::zero(system);
        for (m, c) in it {
            x.add_term(m, &c);
        }
        x
    }

    /// `E_β` for the root at convex index `i`.
    pub fn e(system: SystemKind, i: usize) -> Self {
        Self::monomial(system, PBWMonomial::e_only(ExpVec::unit(i)), QRat::one())
    }

    /// `F_β` for the root at convex index `i`.
    pub fn f(system: SystemKind, i: usize) -> Self {
        Self::monomial(system, PBWMonomial::f_only(ExpVec::unit(i)), QRat::one())
    }

    pub fn k(system: SystemKind, w: Weight) -> Self {
        Self::monomial(system, PBWMonomial::k_only(w), QRat::one())
    }

    pub fn generator(system: SystemKind, g: Generator) -> Self {
        match g {
            Generator::E(i) => Self::e(system, i),
            Generator::F(i) => Self::f(system, i),
            Generator::K(w) => Self::k(system, w),
        }
    }

    pub fn system(&self) -> SystemKind {
        self.system
    }

    pub fn terms(&self) -> &BTreeMap<PBWMonomial, QRat> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<PBWMonomial, QRat> {
        self.terms
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

    /// Adds `c·m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: PBWMonomial, c: &QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &QRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.system);
        }
        UElement {
            system: self.system,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    fn check_same(&self, o: &UElement) -> Result<()> {
        if self.system != o.system {
            return Err(Error::SystemMismatch(self.system, o.system));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &UElement) -> Result<UElement> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &UElement) -> Result<UElement> {
        self.try_add(&o.scale(&-QRat::one()))
    }

    /// Product in the algebra; fails on mixed root systems.
    pub fn try_mul(&self, o: &UElement) -> Result<UElement> {
        Algebra::get(self.system).multiply(self, o)
    }

    /// `self·o − c·o·self`.
    pub fn q_commutator(&self, o: &UElement, c: &QRat) -> Result<UElement> {
        let alg = Algebra::get(self.system);
        alg.q_commutator(self, o, c)
    }

    /// Power with nonnegative exponent; negative exponents need an invertible element.
    pub fn pow(&self, n: i64) -> Result<UElement> {
        let base = if n < 0 {
            self.inverse()
                .ok_or_else(|| Error::Unsupported(format!("negative power of non-invertible {self}")))?
        } else {
            self.clone()
        };
        let alg = Algebra::get(self.system);
        let mut acc = UElement::one(self.system);
        for _ in 0..n.unsigned_abs() {
            acc = alg.multiply(&acc, &base)?;
        }
        Ok(acc)
    }

    /// Inverse of `c·K_ν`; `None` for anything else.
    pub fn inverse(&self) -> Option<UElement> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if !m.is_pure_k() {
            return None;
        }
        Some(UElement::monomial(
            self.system,
            PBWMonomial::k_only(-m.k),
            c.inv().ok()?,
        ))
    }

    pub fn coefficient(&self, e: &ExpVec, nu: Weight, f: &ExpVec) -> QRat {
        self.terms
            .get(&PBWMonomial::new(*e, nu, *f))
            .cloned()
            .unwrap_or_else(QRat::zero)
    }

    pub fn coefficient_of(&self, m: &PBWMonomial) -> QRat {
        self.terms.get(m).cloned().unwrap_or_else(QRat::zero)
    }

    /// Terms with pr(ē) = μ, K-exponent ν and pr(f̄) = γ.
    pub fn project_triangular(&self, mu: Weight, nu: Weight, gamma: Weight) -> UElement {
        let rs = RootSystem::get(self.system);
        self.filter(|m| rs.pr(&m.e) == mu && m.k == nu && rs.pr(&m.f) == gamma)
    }

    pub fn filter<P: Fn(&PBWMonomial) -> bool>(&self, pred: P) -> UElement {
        UElement {
            system: self.system,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Disjoint split into U^{≥0}-part (incl. pure U⁰), U^{≤0}-part and mixed part.
    pub fn parts(&self) -> (UElement, UElement, UElement) {
        let geq = self.filter(|m| m.f.is_zero());
        let leq = self.filter(|m| m.e.is_zero() && !m.f.is_zero());
        let mixed = self.filter(|m| !m.e.is_zero() && !m.f.is_zero());
        (geq, leq, mixed)
    }

    /// Largest monomial in the crate-wide monomial order.
    pub fn max_monomial(&self) -> Option<&PBWMonomial> {
        self.terms.keys().next_back()
    }

    /// Set of distinct Q-degrees of the terms.
    pub fn q_degrees(&self) -> Vec<Weight> {
        let rs = RootSystem::get(self.system);
        let mut v: Vec<Weight> = self.terms.keys().map(|m| m.q_degree(rs)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Triangular degrees (pr ē, ν, pr f̄) present in the element.
    pub fn triangular_degrees(&self) -> Vec<(Weight, Weight, Weight)> {
        let rs = RootSystem::get(self.system);
        let mut v: Vec<_> = self.terms.keys().map(|m| (rs.pr(&m.e), m.k, rs.pr(&m.f))).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Counit: sum of coefficients of pure-K terms.
    pub fn counit(&self) -> QRat {
        let mut acc = QRat::zero();
        for (m, c) in &self.terms {
            if m.is_pure_k() {
                acc += c;
            }
        }
        acc
    }

    /// Scalar value when the element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<QRat> {
        match self.terms.len() {
            0 => Some(QRat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Multiplies every term on the right by `K_ν` (no reordering needed).
    pub fn mul_k_right(&self, nu: Weight) -> UElement {
        let rs = RootSystem::get(self.system);
        let mut out = UElement::zero(self.system);
        for (m, c) in &self.terms {
            // F_f̄ K_ν = q^{(ν, pr f̄)} K_ν F_f̄
            let s = rs.form(nu, rs.pr(&m.f)) as i64;
            let nm = PBWMonomial::new(m.e, m.k + nu, m.f);
            out.add_term(nm, &(c * &QRat::q_pow(s)));
        }
        out
    }

    /// Multiplies every term on the left by `K_ν`.
    pub fn mul_k_left(&self, nu: Weight) -> UElement {
        let rs = RootSystem::get(self.system);
        let mut out = UElement::zero(self.system);
        for (m, c) in &self.terms {
            let s = rs.form(nu, rs.pr(&m.e)) as i64;
            let nm = PBWMonomial::new(m.e, m.k + nu, m.f);
            out.add_term(nm, &(c * &QRat::q_pow(s)));
        }
        out
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::print_element(self))
    }
}

impl fmt::Debug for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UElement[{}]({})", self.system, self)
    }
}

macro_rules! element_op {
    ($tr:ident, $m:ident, $call:ident) => {
        /// Panics on mismatched root systems; use the `try_` method to get an error instead.
        impl std::ops::$tr for &UElement {
            type Output = UElement;
            fn $m(self, rhs: &UElement) -> UElement {
                self.$call(rhs).expect("UElement operation")
            }
        }
        impl std::ops::$tr for UElement {
            type Output = UElement;
            fn $m(self, rhs: UElement) -> UElement {
                (&self).$call(&rhs).expect("UElement operation")
            }
        }
    };
}
element_op!(Add, add, try_add);
element_op!(Sub, sub, try_sub);
element_op!(Mul, mul, try_mul);

impl std::ops::Neg for &UElement {
    type Output = UElement;
    fn neg(self) -> UElement {
        self.scale(&-QRat::one())
    }
}

impl std::ops::Neg for UElement {
    type Output = UElement;
    fn neg(self) -> UElement {
        self.scale(&-QRat::one())
    }
}

type PlusTerms = Arc<Vec<(ExpVec, QRat)>>;
type MixedTerms = Arc<Vec<(PBWMonomial, QRat)>>;

/// Straightening engine of one root system with memoised partial products.
pub struct Algebra {
    kind: SystemKind,
    rs: &'static RootSystem,
    table: RelationTable,
    plus_cache: RwLock<HashMap<(ExpVec, ExpVec), PlusTerms>>,
    minus_cache: RwLock<HashMap<(ExpVec, ExpVec), PlusTerms>>,
    fe_cache: RwLock<HashMap<(ExpVec, ExpVec), MixedTerms>>,
    omega_e: Vec<UElement>,
    omega_f: Vec<UElement>,
}

static A1_ALGEBRA: LazyLock<Algebra> =
    LazyLock::new(|| Algebra::build(SystemKind::A1).expect("A1 relation table is confluent"));
static A2_ALGEBRA: LazyLock<Algebra> =
    LazyLock::new(|| Algebra::build(SystemKind::A2).expect("A2 relation table is confluent"));

impl Algebra {
    /// Shared instance for a root system.
    pub fn get(kind: SystemKind) -> &'static Algebra {
        match kind {
            SystemKind::A1 => &A1_ALGEBRA,
            SystemKind::A2 => &A2_ALGEBRA,
        }
    }

    /// Builds the table (deriving compound E–F rules) and the ω images.
    pub fn build(kind: SystemKind) -> Result<Algebra> {
        let rs = RootSystem::get(kind);
        let base = RelationTable::base(kind);
        let mut alg = Algebra::with_table(kind, base);
        let derived = alg.derive_compound_rules()?;
        for ((i, j), v) in derived {
            alg.table.insert_fe(i, j, v);
        }
        alg.clear_caches();
        let n = rs.n_pos();
        let mut omega_e = Vec::with_capacity(n);
        let mut omega_f = Vec::with_capacity(n);
        for i in 0..n {
            let ew = alg.table.e_expansion(i);
            let fw = alg.table.f_expansion(i);
            omega_e.push(alg.eval_words(&swap_letters(&ew))?);
            omega_f.push(alg.eval_words(&swap_letters(&fw))?);
        }
        alg.omega_e = omega_e;
        alg.omega_f = omega_f;
        Ok(alg)
    }

    fn with_table(kind: SystemKind, table: RelationTable) -> Algebra {
        Algebra {
            kind,
            rs: RootSystem::get(kind),
            table,
            plus_cache: RwLock::new(HashMap::new()),
            minus_cache: RwLock::new(HashMap::new()),
            fe_cache: RwLock::new(HashMap::new()),
            omega_e: Vec::new(),
            omega_f: Vec::new(),
        }
    }

    fn clear_caches(&mut self) {
        self.plus_cache.write().unwrap().clear();
        self.minus_cache.write().unwrap().clear();
        self.fe_cache.write().unwrap().clear();
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn root_system(&self) -> &'static RootSystem {
        self.rs
    }

    pub fn table(&self) -> &RelationTable {
        &self.table
    }

    fn check(&self, x: &UElement) -> Result<()> {
        if x.system != self.kind {
            return Err(Error::SystemMismatch(self.kind, x.system));
        }
        Ok(())
    }

    /// E_a · E_p inside U⁺.
    pub(crate) fn mul_plus(&self, a: &ExpVec, p: &ExpVec) -> PlusTerms {
        if p.is_zero() || a.is_zero() {
            return Arc::new(vec![(a.add(p), QRat::one())]);
        }
        let key = (*a, *p);
        if let Some(v) = self.plus_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let lo_a = lowest(a);
        let hi_p = highest(p);
        let result = if lo_a >= hi_p {
            vec![(a.add(p), QRat::one())]
        } else {
            let rest = p.checked_sub(&ExpVec::unit(hi_p)).unwrap();
            let mut acc: BTreeMap<ExpVec, QRat> = BTreeMap::new();
            for (s, c) in self.append_plus(a, hi_p).iter() {
                for (t, d) in self.mul_plus(s, &rest).iter() {
                    accumulate(&mut acc, *t, &(c * d));
                }
            }
            acc.into_iter().collect()
        };
        let v = Arc::new(result);
        self.plus_cache.write().unwrap().insert(key, v.clone());
        v
    }

    fn append_plus(&self, a: &ExpVec, j: usize) -> PlusTerms {
        let i = lowest(a);
        if a.is_zero() || i >= j {
            return Arc::new(vec![(a.add(&ExpVec::unit(j)), QRat::one())]);
        }
        let rest = a.checked_sub(&ExpVec::unit(i)).unwrap();
        let mut acc: BTreeMap<ExpVec, QRat> = BTreeMap::new();
        for (s, c) in self.table.ee_rule(i, j) {
            for (t, d) in self.mul_plus(&rest, s).iter() {
                accumulate(&mut acc, *t, &(c * d));
            }
        }
        Arc::new(acc.into_iter().collect())
    }

    /// F_r · F_d inside U⁻.
    pub(crate) fn mul_minus(&self, r: &ExpVec, d: &ExpVec) -> PlusTerms {
        if r.is_zero() || d.is_zero() {
            return Arc::new(vec![(r.add(d), QRat::one())]);
        }
        let key = (*r, *d);
        if let Some(v) = self.minus_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let hi_r = highest(r);
        let lo_d = lowest(d);
        let result = if hi_r <= lo_d {
            vec![(r.add(d), QRat::one())]
        } else {
            let rest = d.checked_sub(&ExpVec::unit(lo_d)).unwrap();
            let mut acc: BTreeMap<ExpVec, QRat> = BTreeMap::new();
            for (s, c) in self.append_minus(r, lo_d).iter() {
                for (t, dd) in self.mul_minus(s, &rest).iter() {
                    accumulate(&mut acc, *t, &(c * dd));
                }
            }
            acc.into_iter().collect()
        };
        let v = Arc::new(result);
        self.minus_cache.write().unwrap().insert(key, v.clone());
        v
    }

    fn append_minus(&self, r: &ExpVec, j: usize) -> PlusTerms {
        let i = highest(r);
        if r.is_zero() || i <= j {
            return Arc::new(vec![(r.add(&ExpVec::unit(j)), QRat::one())]);
        }
        let rest = r.checked_sub(&ExpVec::unit(i)).unwrap();
        let mut acc: BTreeMap<ExpVec, QRat> = BTreeMap::new();
        for (s, c) in self.table.ff_rule(i, j) {
            for (t, d) in self.mul_minus(&rest, s).iter() {
                accumulate(&mut acc, *t, &(c * d));
            }
        }
        Arc::new(acc.into_iter().collect())
    }

    /// F_b · E_c written as Σ E K F.
    pub(crate) fn f_times_e(&self, b: &ExpVec, c: &ExpVec) -> MixedTerms {
        if b.is_zero() || c.is_zero() {
            return Arc::new(vec![(PBWMonomial::new(*c, Weight::ZERO, *b), QRat::one())]);
        }
        let key = (*b, *c);
        if let Some(v) = self.fe_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let i = highest(b);
        let j = highest(c);
        let b1 = b.checked_sub(&ExpVec::unit(i)).unwrap();
        let c1 = c.checked_sub(&ExpVec::unit(j)).unwrap();
        let left = PBWMonomial::f_only(b1);
        let right = PBWMonomial::e_only(c1);
        let mut acc: BTreeMap<PBWMonomial, QRat> = BTreeMap::new();
        for (m, coef) in self.table.fe_rule(i, j) {
            for (m2, c2) in self.mono_mul(&left, m) {
                let c12 = coef * &c2;
                for (m3, c3) in self.mono_mul(&m2, &right) {
                    accumulate(&mut acc, m3, &(&c12 * &c3));
                }
            }
        }
        let v = Arc::new(acc.into_iter().collect::<Vec<_>>());
        self.fe_cache.write().unwrap().insert(key, v.clone());
        v
    }

    /// Product of two PBW monomials as a list of (monomial, coefficient).
    pub fn mono_mul(&self, x: &PBWMonomial, y: &PBWMonomial) -> Vec<(PBWMonomial, QRat)> {
        let mut acc: BTreeMap<PBWMonomial, QRat> = BTreeMap::new();
        for (m, coef) in self.f_times_e(&x.f, &y.e).iter() {
            let s = self.rs.form(x.k, self.rs.pr(&m.e)) + self.rs.form(y.k, self.rs.pr(&m.f));
            let base = coef * &QRat::q_pow(s as i64);
            let k = x.k + m.k + y.k;
            let es = self.mul_plus(&x.e, &m.e);
            let fs = self.mul_minus(&m.f, &y.f);
            for (e, ce) in es.iter() {
                let bce = &base * ce;
                for (f, cf) in fs.iter() {
                    accumulate(&mut acc, PBWMonomial::new(*e, k, *f), &(&bce * cf));
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Product of two elements in PBW normal form.
    pub fn multiply(&self, x: &UElement, y: &UElement) -> Result<UElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = UElement::zero(self.kind);
        if x.is_zero() || y.is_zero() {
            return Ok(out);
        }
        for (mx, cx) in &x.terms {
            for (my, cy) in &y.terms {
                let cxy = cx * cy;
                for (m, c) in self.mono_mul(mx, my) {
                    out.add_term(m, &(&cxy * &c));
                }
            }
        }
        Ok(out)
    }

    pub fn q_commutator(&self, x: &UElement, y: &UElement, c: &QRat) -> Result<UElement> {
        let xy = self.multiply(x, y)?;
        let yx = self.multiply(y, x)?;
        xy.try_sub(&yx.scale(c))
    }

    /// Normal form of a linear combination of generator words.
    pub fn normalize(&self, words: &[(QRat, Vec<Generator>)]) -> Result<UElement> {
        let mut out = UElement::zero(self.kind);
        for (c, w) in words {
            let mut acc = UElement::scalar(self.kind, c.clone());
            for g in w {
                self.check_generator(g)?;
                acc = self.multiply(&acc, &UElement::generator(self.kind, *g))?;
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    fn check_generator(&self, g: &Generator) -> Result<()> {
        let n = self.rs.n_pos();
        match g {
            Generator::E(i) | Generator::F(i) if *i >= n => Err(Error::UnknownGenerator(format!("{g:?}"))),
            Generator::K(w) if !self.rs.contains_weight(*w) => Err(Error::UnknownGenerator(format!("K[{w}]"))),
            _ => Ok(()),
        }
    }

    /// Evaluates words in simple-letter [`Letter`]s (used for root-vector expansions).
    pub(crate) fn eval_words(&self, words: &[(QRat, Vec<Letter>)]) -> Result<UElement> {
        let gens: Vec<(QRat, Vec<Generator>)> = words
            .iter()
            .map(|(c, w)| (c.clone(), w.iter().map(|l| l.to_generator(self.rs)).collect()))
            .collect();
        self.normalize(&gens)
    }

    /// The algebra automorphism E_i ↔ F_i, K_ν ↦ K_{−ν}.
    pub fn omega(&self, x: &UElement) -> Result<UElement> {
        self.check(x)?;
        let mut out = UElement::zero(self.kind);
        for (m, c) in &x.terms {
            // ω(E_{β_n}^{e_n} ⋯ E_{β_1}^{e_1} K_ν F_{β_1}^{f_1} ⋯ F_{β_n}^{f_n})
            let mut acc = UElement::scalar(self.kind, c.clone());
            for i in (0..self.rs.n_pos()).rev() {
                for _ in 0..m.e.0[i] {
                    acc = self.multiply(&acc, &self.omega_e[i])?;
                }
            }
            acc = acc.mul_k_right(-m.k);
            for i in 0..self.rs.n_pos() {
                for _ in 0..m.f.0[i] {
                    acc = self.multiply(&acc, &self.omega_f[i])?;
                }
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    /// A PBW monomial as a sum of simple-letter words.
    fn monomial_words(&self, m: &PBWMonomial) -> Words {
        let n = self.rs.n_pos();
        let mut gens = Vec::new();
        for i in (0..n).rev() {
            gens.extend(std::iter::repeat_n(Generator::E(i), m.e.0[i] as usize));
        }
        if !m.k.is_zero() {
            gens.push(Generator::K(m.k));
        }
        for i in 0..n {
            gens.extend(std::iter::repeat_n(Generator::F(i), m.f.0[i] as usize));
        }
        let mut words: Words = vec![(QRat::one(), Vec::new())];
        for g in gens {
            let ex = self.table.expand_generator(g);
            let mut next = Vec::with_capacity(words.len() * ex.len());
            for (c1, w1) in &words {
                for (c2, w2) in &ex {
                    let mut w = w1.clone();
                    w.extend_from_slice(w2);
                    next.push((c1 * c2, w));
                }
            }
            words = next;
        }
        words
    }

    /// Applies a map given on simple letters, multiplicatively or (with `anti`)
    /// antimultiplicatively, to every monomial of `x`.
    fn map_letters<M: Fn(Letter) -> Words>(&self, x: &UElement, anti: bool, image: M) -> Result<UElement> {
        self.check(x)?;
        let mut out = UElement::zero(self.kind);
        for (m, c) in &x.terms {
            let mut words = Vec::new();
            for (cw, w) in self.monomial_words(m) {
                let mut acc: Words = vec![(c * &cw, Vec::new())];
                let letters: Vec<Letter> = if anti { w.into_iter().rev().collect() } else { w };
                for l in letters {
                    let img = image(l);
                    let mut next = Vec::with_capacity(acc.len() * img.len());
                    for (c1, w1) in &acc {
                        for (c2, w2) in &img {
                            let mut w = w1.clone();
                            w.extend_from_slice(w2);
                            next.push((c1 * c2, w));
                        }
                    }
                    acc = next;
                }
                words.extend(acc);
            }
            out = out.try_add(&self.eval_words(&words)?)?;
        }
        Ok(out)
    }

    /// The antipode: S(E_i) = −K_i⁻¹E_i, S(F_i) = −F_iK_i, S(K_ν) = K_{−ν}.
    pub fn antipode(&self, x: &UElement) -> Result<UElement> {
        let rs = self.rs;
        self.map_letters(x, true, |l| match l {
            Letter::E(i) => vec![(-QRat::one(), vec![Letter::K(-rs.positive_roots[i]), Letter::E(i)])],
            Letter::F(i) => vec![(-QRat::one(), vec![Letter::F(i), Letter::K(rs.positive_roots[i])])],
            Letter::K(w) => vec![(QRat::one(), vec![Letter::K(-w)])],
        })
    }

    /// The diagram automorphism α ↔ β of A2 (identity on A1).
    pub fn diagram_swap(&self, x: &UElement) -> Result<UElement> {
        if self.kind == SystemKind::A1 {
            self.check(x)?;
            return Ok(x.clone());
        }
        let last = self.rs.n_pos() - 1;
        let flip = |i: usize| if i == 0 { last } else { 0 };
        self.map_letters(x, false, |l| {
            let img = match l {
                Letter::E(i) => Letter::E(flip(i)),
                Letter::F(i) => Letter::F(flip(i)),
                Letter::K(w) => Letter::K(Weight::new(w.0[1], w.0[0])),
            };
            vec![(QRat::one(), vec![img])]
        })
    }

    /// `E_{βα} = −q⁻¹(E_α E_β − q E_β E_α)` in A2.
    pub fn e_ba(&self) -> Result<UElement> {
        self.require_a2()?;
        let w = vec![
            (-QRat::q_pow(-1), vec![Generator::E(0), Generator::E(2)]),
            (QRat::one(), vec![Generator::E(2), Generator::E(0)]),
        ];
        self.normalize(&w)
    }

    /// `F_{βα} = F_α F_β − q F_β F_α` in A2.
    pub fn f_ba(&self) -> Result<UElement> {
        self.require_a2()?;
        let w = vec![
            (QRat::one(), vec![Generator::F(0), Generator::F(2)]),
            (-QRat::q(), vec![Generator::F(2), Generator::F(0)]),
        ];
        self.normalize(&w)
    }

    fn require_a2(&self) -> Result<()> {
        if self.kind != SystemKind::A2 {
            return Err(Error::SystemMismatch(SystemKind::A2, self.kind));
        }
        Ok(())
    }

    /// Normal form of `x·y` for two generators, derived from simple-generator rules.
    pub fn derive_relation(&self, x: Generator, y: Generator) -> Result<UElement> {
        self.check_generator(&x)?;
        self.check_generator(&y)?;
        let ex = self.table.expand_generator(x);
        let ey = self.table.expand_generator(y);
        let mut words = Vec::new();
        for (c1, w1) in &ex {
            for (c2, w2) in &ey {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                words.push((c1 * c2, w));
            }
        }
        let left = self.collect(&relations::straighten_words(self.rs, &words, false))?;
        let right = self.collect(&relations::straighten_words(self.rs, &words, true))?;
        if left != right {
            return Err(Error::NonConfluent(format!("{x:?}·{y:?}")));
        }
        Ok(left)
    }

    /// Re-collects normal-ordered simple-letter words into PBW form.
    fn collect(&self, terms: &[(QRat, Vec<usize>, Weight, Vec<usize>)]) -> Result<UElement> {
        let mut out = UElement::zero(self.kind);
        for (c, ew, k, fw) in terms {
            let mut e_part: BTreeMap<ExpVec, QRat> = BTreeMap::new();
            e_part.insert(ExpVec::ZERO, QRat::one());
            for &l in ew {
                let mut next = BTreeMap::new();
                for (s, cs) in &e_part {
                    for (t, ct) in self.mul_plus(s, &ExpVec::unit(l)).iter() {
                        accumulate(&mut next, *t, &(cs * ct));
                    }
                }
                e_part = next;
            }
            let mut f_part: BTreeMap<ExpVec, QRat> = BTreeMap::new();
            f_part.insert(ExpVec::ZERO, QRat::one());
            for &l in fw {
                let mut next = BTreeMap::new();
                for (s, cs) in &f_part {
                    for (t, ct) in self.mul_minus(s, &ExpVec::unit(l)).iter() {
                        accumulate(&mut next, *t, &(cs * ct));
                    }
                }
                f_part = next;
            }
            for (e, ce) in &e_part {
                for (f, cf) in &f_part {
                    out.add_term(PBWMonomial::new(*e, *k, *f), &(&(c * ce) * cf));
                }
            }
        }
        Ok(out)
    }

    fn derive_compound_rules(&self) -> Result<Vec<((usize, usize), relations::RuleTerms)>> {
        let mut out = Vec::new();
        for (i, j) in self.table.missing_fe_pairs() {
            let v = self.derive_relation(Generator::F(i), Generator::E(j))?;
            out.push(((i, j), v.terms.into_iter().collect()));
        }
        Ok(out)
    }

    /// All monomials with total degree ≤ `d` and K-exponent zero.
    pub fn monomials_up_to(&self, d: u32) -> Vec<PBWMonomial> {
        let n = self.rs.n_pos();
        let mut exps = vec![ExpVec::ZERO];
        for _ in 0..d {
            let mut next = exps.clone();
            for e in &exps {
                for i in 0..n {
                    let x = e.add(&ExpVec::unit(i));
                    if !next.contains(&x) {
                        next.push(x);
                    }
                }
            }
            exps = next;
        }
        let mut out = Vec::new();
        for e in &exps {
            for f in &exps {
                if e.degree() + f.degree() <= d {
                    out.push(PBWMonomial::new(*e, Weight::ZERO, *f));
                }
            }
        }
        out.sort();
        out
    }
}

fn swap_letters(words: &[(QRat, Vec<Letter>)]) -> Vec<(QRat, Vec<Letter>)> {
    words
        .iter()
        .map(|(c, w)| {
            (
                c.clone(),
                w.iter()
                    .map(|l| match l {
                        Letter::E(i) => Letter::F(*i),
                        Letter::F(i) => Letter::E(*i),
                        Letter::K(w) => Letter::K(-*w),
                    })
                    .collect(),
            )
        })
        .collect()
}

fn lowest(e: &ExpVec) -> usize {
    e.0.iter().position(|&x| x > 0).unwrap_or(usize::MAX)
}

fn highest(e: &ExpVec) -> usize {
    e.0.iter().rposition(|&x| x > 0).unwrap_or(0)
}

fn accumulate<K: Ord>(acc: &mut BTreeMap<K, QRat>, k: K, c: &QRat) {
    if c.is_zero() {
        return;
    }
    match acc.entry(k) {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c.clone());
        }
    }
}
