//! Bounded-degree spans of finitely generated subalgebras and the right coideal verifier.
//!
//! Degree means the number of generator factors. Spans are kept in reduced
//! row-echelon form with pivots at the largest monomial of each row.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::coproduct;
use crate::pbw::{Algebra, Generator, PBWMonomial, UElement};
use crate::rcs::Lattice;
use crate::rootdata::{SystemKind, Weight};
use crate::scalar::QRat;

/// Named, non-empty list of generators in one root system.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    pub name: String,
    system: SystemKind,
    gens: Vec<UElement>,
}

impl GeneratorSet {
    pub fn new(name: impl Into<String>, gens: Vec<UElement>) -> Result<GeneratorSet> {
        let Some(first) = gens.first() else {
            return Err(Error::Precondition("generator set is empty".into()));
        };
        let system = first.system();
        if let Some(g) = gens.iter().find(|g| g.system() != system) {
            return Err(Error::SystemMismatch(system, g.system()));
        }
        Ok(GeneratorSet {
            name: name.into(),
            system,
            gens,
        })
    }

    pub fn system(&self) -> SystemKind {
        self.system
    }

    pub fn gens(&self) -> &[UElement] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn with_extra(&self, extra: &[UElement]) -> Result<GeneratorSet> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        GeneratorSet::new(self.name.clone(), gens)
    }
}

/// Row-reduced basis of the span of all products of at most `degree` generators.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    system: SystemKind,
    gens: Vec<UElement>,
    degree: usize,
    rows: BTreeMap<PBWMonomial, UElement>,
    /// Vectors that entered the span at each degree.
    levels: Vec<Vec<UElement>>,
}

/// Result of a membership test: coefficients of the basis rows, keyed by pivot.
#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub member: bool,
    pub certificate: Vec<(PBWMonomial, QRat)>,
    pub remainder: UElement,
}

impl SpanBasis {
    pub fn new(z: &GeneratorSet, degree: usize) -> SpanBasis {
        let mut b = SpanBasis {
            system: z.system,
            gens: z.gens.clone(),
            degree: 0,
            rows: BTreeMap::new(),
            levels: Vec::new(),
        };
        let one = UElement::one(z.system);
        let first = b.insert(&one).into_iter().collect();
        b.levels.push(first);
        b.extend_to(degree);
        b
    }

    pub fn system(&self) -> SystemKind {
        self.system
    }

    pub fn degree_bound(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows in increasing pivot order.
    pub fn basis(&self) -> Vec<UElement> {
        self.rows.values().cloned().collect()
    }

    /// Vectors spanning the same space, grouped by the degree at which they appeared.
    pub fn levels(&self) -> &[Vec<UElement>] {
        &self.levels
    }

    pub fn pivots(&self) -> impl Iterator<Item = &PBWMonomial> {
        self.rows.keys()
    }

    pub fn extend_to(&mut self, degree: usize) {
        let alg = Algebra::get(self.system);
        while self.degree < degree {
            let prev = self.levels.last().cloned().unwrap_or_default();
            let products: Vec<UElement> = prev
                .par_iter()
                .flat_map_iter(|v| {
                    self.gens
                        .iter()
                        .map(move |g| alg.multiply(g, v).expect("same root system"))
                })
                .collect();
            let mut next = Vec::new();
            for p in products {
                if let Some(v) = self.insert(&p) {
                    next.push(v);
                }
            }
            self.levels.push(next);
            self.degree += 1;
        }
    }

    fn reduce_with(&self, x: &UElement) -> (UElement, Vec<(PBWMonomial, QRat)>) {
        let mut rem = x.clone();
        let mut cert = Vec::new();
        for (m, c) in x.terms() {
            if let Some(row) = self.rows.get(m) {
                rem = rem.try_sub(&row.scale(c)).expect("same root system");
                cert.push((*m, c.clone()));
            }
        }
        (rem, cert)
    }

    /// Inserts `x`; returns the normalized new row when the span grew.
    fn insert(&mut self, x: &UElement) -> Option<UElement> {
        let (rem, _) = self.reduce_with(x);
        let (pivot, lc) = rem.terms().iter().next_back().map(|(m, c)| (*m, c.clone()))?;
        let row = rem.scale(&lc.inv().expect("nonzero pivot"));
        let touched: Vec<PBWMonomial> = self
            .rows
            .iter()
            .filter(|(_, r)| !r.coefficient_of(&pivot).is_zero())
            .map(|(p, _)| *p)
            .collect();
        for p in touched {
            let r = &self.rows[&p];
            let c = r.coefficient_of(&pivot);
            let nr = r.try_sub(&row.scale(&c)).expect("same root system");
            self.rows.insert(p, nr);
        }
        self.rows.insert(pivot, row.clone());
        Some(row)
    }

    pub fn contains(&self, x: &UElement) -> Membership {
        let (rem, cert) = self.reduce_with(x);
        Membership {
            member: rem.is_zero(),
            certificate: if rem.is_zero() { cert } else { Vec::new() },
            remainder: rem,
        }
    }

    pub fn contains_element(&self, x: &UElement) -> bool {
        self.reduce_with(x).0.is_zero()
    }

    /// Rows whose pivot is a pure torus monomial; together they span the torus part of the span.
    pub fn torus_rows(&self) -> Vec<UElement> {
        self.rows
            .iter()
            .filter(|(p, _)| p.is_pure_k())
            .map(|(_, r)| r.clone())
            .collect()
    }
}

/// Span of all products of at most `degree` generators (with 1).
pub fn span_basis(z: &GeneratorSet, degree: usize) -> SpanBasis {
    SpanBasis::new(z, degree)
}

/// Verifier outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoidealStatus {
    VerifiedUpToD,
    Failed,
    Inconclusive,
}

/// A basis element whose coproduct has a left coefficient outside the span.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub element: UElement,
    pub right_leg: PBWMonomial,
    pub left: UElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoidealReport {
    pub status: CoidealStatus,
    pub degree: usize,
    pub margin: usize,
    pub checked: usize,
    pub witnesses: Vec<Witness>,
}

impl CoidealReport {
    pub fn is_verified(&self) -> bool {
        self.status == CoidealStatus::VerifiedUpToD
    }
}

/// Smallest span of PBW monomials `E_ē K_ν F_f̄` (ē, f̄ supported on fixed root sets,
/// ν in a lattice) that is closed under straightening and contains the generators.
/// A left leg outside it is outside the generated subalgebra at every degree.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialHull {
    pub e_roots: BTreeSet<usize>,
    pub f_roots: BTreeSet<usize>,
    pub lattice: Lattice,
}

impl MonomialHull {
    pub fn contains_monomial(&self, m: &PBWMonomial) -> bool {
        (0..3).all(|i| m.e.0[i] == 0 || self.e_roots.contains(&i))
            && (0..3).all(|i| m.f.0[i] == 0 || self.f_roots.contains(&i))
            && self.lattice.contains(m.k)
    }

    pub fn contains(&self, x: &UElement) -> bool {
        x.terms().keys().all(|m| self.contains_monomial(m))
    }
}

pub fn monomial_hull(z: &GeneratorSet) -> MonomialHull {
    let alg = Algebra::get(z.system);
    let mut e_roots = BTreeSet::new();
    let mut f_roots = BTreeSet::new();
    let mut ks: Vec<Weight> = Vec::new();
    let absorb =
        |m: &PBWMonomial, e_roots: &mut BTreeSet<usize>, f_roots: &mut BTreeSet<usize>, ks: &mut Vec<Weight>| {
            for i in 0..3 {
                if m.e.0[i] > 0 {
                    e_roots.insert(i);
                }
                if m.f.0[i] > 0 {
                    f_roots.insert(i);
                }
            }
            if !m.k.is_zero() && !ks.contains(&m.k) {
                ks.push(m.k);
            }
        };
    for g in &z.gens {
        for m in g.terms().keys() {
            absorb(m, &mut e_roots, &mut f_roots, &mut ks);
        }
    }
    let rules = alg.table().rules();
    loop {
        let before = (e_roots.clone(), f_roots.clone(), ks.len());
        for (x, y, rhs) in &rules {
            let inside = |g: &Generator| match g {
                Generator::E(i) => e_roots.contains(i),
                Generator::F(i) => f_roots.contains(i),
                Generator::K(_) => true,
            };
            if inside(x) && inside(y) {
                for (m, _) in rhs {
                    absorb(m, &mut e_roots, &mut f_roots, &mut ks);
                }
            }
        }
        if before == (e_roots.clone(), f_roots.clone(), ks.len()) {
            break;
        }
    }
    MonomialHull {
        e_roots,
        f_roots,
        lattice: Lattice::generated_by(&ks),
    }
}

/// Lattice L with `K_l` and `K_{-l}` both among the generators (up to scalars), so that
/// the group algebra of L lies in the generated subalgebra.
pub fn torus_group(z: &GeneratorSet) -> Lattice {
    let ks: BTreeSet<Weight> = z
        .gens
        .iter()
        .filter(|g| g.len() == 1 && g.terms().keys().next().unwrap().is_pure_k())
        .map(|g| g.terms().keys().next().unwrap().k)
        .collect();
    let paired: Vec<Weight> = ks.iter().filter(|w| ks.contains(&-**w)).copied().collect();
    Lattice::generated_by(&paired)
}

/// Membership of `x` or of some `x·K_l` (l ∈ `torus`); valid because the span's
/// subalgebra contains `K_{±l}`.
fn contains_up_to_torus(span: &SpanBasis, torus: &Lattice, x: &UElement) -> bool {
    if span.contains_element(x) {
        return true;
    }
    let shifts: BTreeSet<Weight> = x
        .terms()
        .keys()
        .filter(|m| !m.k.is_zero() && torus.contains(m.k))
        .map(|m| -m.k)
        .collect();
    shifts.into_iter().any(|l| span.contains_element(&x.mul_k_right(l)))
}

/// Checks Δ(b) ∈ C ⊗ U for every element b of the degree-`degree` span, testing left
/// coefficients against the span at `degree + margin`.
pub fn is_right_coideal(z: &GeneratorSet, degree: usize, margin: usize) -> CoidealReport {
    let small = span_basis(z, degree);
    let elements: Vec<UElement> = small.levels().iter().flatten().cloned().collect();
    let pending: Vec<Witness> = elements
        .par_iter()
        .flat_map_iter(|b| {
            let d = coproduct(b).expect("same root system");
            d.by_right_leg()
                .into_iter()
                .filter(|(_, left)| !small.contains_element(left))
                .map(|(r, left)| Witness {
                    element: b.clone(),
                    right_leg: r,
                    left,
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut report = CoidealReport {
        status: CoidealStatus::VerifiedUpToD,
        degree,
        margin,
        checked: elements.len(),
        witnesses: Vec::new(),
    };
    if pending.is_empty() {
        return report;
    }
    let mut big = small;
    big.extend_to(degree + margin);
    let torus = torus_group(z);
    let unresolved: Vec<Witness> = pending
        .into_par_iter()
        .filter(|w| !contains_up_to_torus(&big, &torus, &w.left))
        .collect();
    if unresolved.is_empty() {
        return report;
    }
    let hull = monomial_hull(z);
    let outside: Vec<Witness> = unresolved.iter().filter(|w| !hull.contains(&w.left)).cloned().collect();
    if outside.is_empty() {
        report.status = CoidealStatus::Inconclusive;
        report.witnesses = unresolved;
    } else {
        report.status = CoidealStatus::Failed;
        report.witnesses = outside;
    }
    report
}

/// Whether all pairwise products of the generators lie in the degree-`degree` span.
/// Returns the first failing pair of generator indices.
pub fn is_closed_under_multiplication(z: &GeneratorSet, degree: usize) -> (bool, Option<(usize, usize)>) {
    let span = span_basis(z, degree);
    let alg = Algebra::get(z.system);
    for (i, a) in z.gens.iter().enumerate() {
        for (j, b) in z.gens.iter().enumerate() {
            let p = alg.multiply(a, b).expect("same root system");
            if !span.contains_element(&p) {
                return (false, Some((i, j)));
            }
        }
    }
    (true, None)
}

/// Torus part of the span: weights ν with `K_ν` in the span, and weights whose
/// inverse is missing (checked against the span at `degree + margin`).
#[derive(Clone, Debug, PartialEq)]
pub struct TorusReport {
    pub weights: Vec<Weight>,
    pub non_monomial: Vec<UElement>,
    pub missing_inverses: Vec<Weight>,
}

impl TorusReport {
    pub fn is_subhopf(&self) -> bool {
        self.non_monomial.is_empty() && self.missing_inverses.is_empty()
    }
}

/// Checks that the torus part of the generated subalgebra is a group algebra `k[H]`.
pub fn torus_check(z: &GeneratorSet, degree: usize, margin: usize) -> TorusReport {
    let small = span_basis(z, degree);
    let mut weights = BTreeSet::new();
    let mut non_monomial = Vec::new();
    for row in small.torus_rows() {
        if row.len() == 1 {
            weights.insert(row.terms().keys().next().unwrap().k);
            continue;
        }
        let mut all = true;
        for m in row.terms().keys() {
            if small.contains_element(&UElement::k(z.system, m.k)) {
                weights.insert(m.k);
            } else {
                all = false;
            }
        }
        if !all {
            non_monomial.push(row);
        }
    }
    let mut missing = Vec::new();
    let need: Vec<Weight> = weights.iter().filter(|w| !weights.contains(&-**w)).copied().collect();
    if !need.is_empty() {
        let mut big = small;
        big.extend_to(degree + margin);
        for w in need {
            if !big.contains_element(&UElement::k(z.system, -w)) {
                missing.push(-w);
            }
        }
    }
    TorusReport {
        weights: weights.into_iter().collect(),
        non_monomial,
        missing_inverses: missing,
    }
}

/// Whether every scalar multiple of a torus monomial among the generators has its inverse
/// in the span at `degree`.
pub fn generator_torus_is_subhopf(z: &GeneratorSet, degree: usize) -> bool {
    let ks: Vec<Weight> = z
        .gens
        .iter()
        .filter(|g| g.len() == 1 && g.terms().keys().next().unwrap().is_pure_k())
        .map(|g| g.terms().keys().next().unwrap().k)
        .collect();
    if ks.is_empty() {
        return true;
    }
    let span = span_basis(z, degree);
    ks.iter().all(|w| span.contains_element(&UElement::k(z.system, -*w)))
}
