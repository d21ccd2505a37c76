//! η-splitting, leading terms, M-sets and the leading-term reduction of generators.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::hopf::coproduct;
use crate::pbw::{Algebra, ExpVec, PBWMonomial, UElement};
use crate::rcs::{Lattice, Side};
use crate::rootdata::{dominance_lt, RootSystem, SystemKind, Weight};
use crate::scalar::QRat;
use crate::subalgebra::{span_basis, torus_group, GeneratorSet};

/// Default bound on the X⁽ⁱ⁾ iteration.
pub const DEFAULT_ITERATION_BOUND: usize = 64;

/// Terms of X grouped by η = ν − pr f̄.
pub fn eta_split(x: &UElement) -> BTreeMap<Weight, UElement> {
    let rs = RootSystem::get(x.system());
    let mut out: BTreeMap<Weight, UElement> = BTreeMap::new();
    for (m, c) in x.terms() {
        out.entry(m.k - rs.pr(&m.f))
            .or_insert_with(|| UElement::zero(x.system()))
            .add_term(*m, c);
    }
    out
}

fn maximal(set: &BTreeSet<Weight>) -> Vec<Weight> {
    set.iter()
        .copied()
        .filter(|&mu| !set.iter().any(|&o| dominance_lt(mu, o)))
        .collect()
}

fn side_degree(rs: &RootSystem, m: &PBWMonomial, side: Side) -> Weight {
    match side {
        Side::E => rs.pr(&m.e),
        Side::F => rs.pr(&m.f),
    }
}

/// ≺-maximal nonzero degrees on one side.
pub fn side_degrees(x: &UElement, side: Side) -> Vec<Weight> {
    let rs = RootSystem::get(x.system());
    let all: BTreeSet<Weight> = x
        .terms()
        .keys()
        .map(|m| side_degree(rs, m, side))
        .filter(|w| !w.is_zero())
        .collect();
    maximal(&all)
}

/// E(X): ≺-maximal nonzero U⁺-degrees.
pub fn e_degrees(x: &UElement) -> Vec<Weight> {
    side_degrees(x, Side::E)
}

/// ≺-maximal nonzero U⁻-degrees.
pub fn f_degrees(x: &UElement) -> Vec<Weight> {
    side_degrees(x, Side::F)
}

/// L_μ(X) = Σ_{ν,γ} X_{μ,ν,γ} for μ ∈ E(X).
pub fn leading_term(x: &UElement, mu: Weight) -> Result<UElement> {
    side_leading_term(x, mu, Side::E)
}

/// F-side analog: all terms of U⁻-degree γ for γ among the maximal F-degrees.
pub fn f_leading_term(x: &UElement, gamma: Weight) -> Result<UElement> {
    side_leading_term(x, gamma, Side::F)
}

pub fn side_leading_term(x: &UElement, mu: Weight, side: Side) -> Result<UElement> {
    if !side_degrees(x, side).contains(&mu) {
        return Err(Error::NotMaximal(mu.to_string()));
    }
    let rs = RootSystem::get(x.system());
    Ok(x.filter(|m| side_degree(rs, m, side) == mu))
}

/// Splits X into ad(K_l)-eigencomponents for l in a basis of `lattice`; each
/// component is labelled by the smallest Q-degree occurring in it.
pub fn weight_decompose(x: &UElement, lattice: &Lattice) -> Vec<(Weight, UElement)> {
    let rs = RootSystem::get(x.system());
    let mut groups: BTreeMap<Vec<i32>, (Weight, UElement)> = BTreeMap::new();
    for (m, c) in x.terms() {
        let d = m.q_degree(rs);
        let key: Vec<i32> = lattice.basis.iter().map(|&l| rs.form(l, d)).collect();
        let entry = groups.entry(key).or_insert_with(|| (d, UElement::zero(x.system())));
        if d < entry.0 {
            entry.0 = d;
        }
        entry.1.add_term(*m, c);
    }
    groups.into_values().collect()
}

/// Set of exponent vectors used to measure mixed leading terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MSet {
    pub vectors: BTreeSet<ExpVec>,
}

impl MSet {
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn union(&self, o: &MSet) -> MSet {
        MSet {
            vectors: self.vectors.union(&o.vectors).copied().collect(),
        }
    }
}

/// E-side M(X): PBW exponents of E-leading terms that carry a nontrivial F-part.
pub fn m_set(x: &UElement) -> MSet {
    side_m_set(x, Side::E)
}

/// F-side M(X): PBW exponents of F-leading terms that carry a nontrivial E-part.
pub fn m_set_f(x: &UElement) -> MSet {
    side_m_set(x, Side::F)
}

pub fn side_m_set(x: &UElement, side: Side) -> MSet {
    let rs = RootSystem::get(x.system());
    let maxima = side_degrees(x, side);
    let vectors = x
        .terms()
        .keys()
        .filter(|m| {
            let (own, other) = match side {
                Side::E => (&m.e, &m.f),
                Side::F => (&m.f, &m.e),
            };
            !other.is_zero() && maxima.contains(&rs.pr(own))
        })
        .map(|m| match side {
            Side::E => m.e,
            Side::F => m.f,
        })
        .collect();
    MSet { vectors }
}

pub fn m_set_of(xs: &[UElement], side: Side) -> MSet {
    xs.iter()
        .fold(MSet::default(), |acc, x| acc.union(&side_m_set(x, side)))
}

/// Outcome of comparing two M-sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MOrder {
    Smaller,
    Equal,
    NotSmaller,
}

/// ν̄ ≤ μ̄: pr ν̄ ≺ pr μ̄, or equal projections and ν̄ ≤_lex μ̄.
pub fn vector_leq(rs: &RootSystem, nu: &ExpVec, mu: &ExpVec) -> bool {
    let (a, b) = (rs.pr(nu), rs.pr(mu));
    dominance_lt(a, b) || (a == b && nu.0 <= mu.0)
}

/// Partial order on M-sets with its strict part.
pub fn m_compare(system: SystemKind, n: &MSet, m: &MSet) -> MOrder {
    let rs = RootSystem::get(system);
    if n == m {
        return MOrder::Equal;
    }
    let leq = n
        .vectors
        .iter()
        .all(|nu| m.vectors.iter().any(|mu| vector_leq(rs, nu, mu)));
    let strict = m
        .vectors
        .iter()
        .any(|mu| n.vectors.iter().all(|nu| !vector_leq(rs, mu, nu)));
    if leq && strict {
        MOrder::Smaller
    } else {
        MOrder::NotSmaller
    }
}

fn weight_key_cmp(a: &Weight, b: &Weight) -> Ordering {
    a.0.cmp(&b.0)
}

/// Maximal element under (≺ on projections, then lex); ties between incomparable
/// projections go to the larger Q-coordinates.
fn pick_max(rs: &RootSystem, vs: &BTreeSet<ExpVec>) -> Option<ExpVec> {
    let projs: BTreeSet<Weight> = vs.iter().map(|v| rs.pr(v)).collect();
    let top = maximal(&projs).into_iter().max_by(weight_key_cmp)?;
    vs.iter().filter(|v| rs.pr(v) == top).max().copied()
}

/// One pass of the reduction: the elements (6), (5)⁻¹, (4) and z.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStep {
    pub side: Side,
    pub pivot: ExpVec,
    pub eta: Weight,
    /// `E_μ̄ K_{η+γmax} + (rest)` (E-side) or its mirror.
    pub leading_part: UElement,
    /// Torus element `K_{η+γmax+μ}` (E-side) or `K_{μmax+η+γ}` (F-side).
    pub torus: Weight,
    /// `Σ c K_{η+γ+μ} F_γ̄` (E-side) or `Σ c E_ē K_{η+γ}` (F-side).
    pub complement: UElement,
    pub z: UElement,
    pub remainder: UElement,
}

/// Output of [`reduce_generator`].
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub input: UElement,
    pub side: Side,
    pub outputs: Vec<UElement>,
    pub steps: Vec<ReductionStep>,
    pub m_before: MSet,
    pub m_after: MSet,
}

impl Reduction {
    /// Human-readable trace of the construction.
    pub fn trace(&self) -> String {
        let mut s = format!("reduce {}\n", self.input);
        for (i, st) in self.steps.iter().enumerate() {
            s.push_str(&format!(
                "step {i}: pivot {:?} eta {}\n  leading part: {}\n  torus: K[{}]\n  complement: {}\n  z: {}\n  remainder: {}\n",
                st.pivot.0, st.eta, st.leading_part, st.torus, st.complement, st.z, st.remainder
            ));
        }
        s
    }
}

fn left_coefficient(x: &UElement, right: &PBWMonomial) -> Result<UElement> {
    let d = coproduct(x)?;
    let mut out = UElement::zero(x.system());
    for ((l, r), c) in d.terms() {
        if r == right {
            out.add_term(*l, c);
        }
    }
    Ok(out)
}

fn single_step(x: &UElement, side: Side) -> Result<Option<ReductionStep>> {
    let sys = x.system();
    let rs = RootSystem::get(sys);
    let alg = Algebra::get(sys);
    let mset = side_m_set(x, side);
    let Some(pivot) = pick_max(rs, &mset.vectors) else {
        return Ok(None);
    };
    // all pivot terms share η by construction of the caller
    let block: Vec<(PBWMonomial, QRat)> = x
        .terms()
        .iter()
        .filter(|(m, _)| match side {
            Side::E => m.e == pivot,
            Side::F => m.f == pivot,
        })
        .map(|(m, c)| (*m, c.clone()))
        .collect();
    let (m0, _) = &block[0];
    let eta = m0.k - rs.pr(&m0.f);
    let mu = rs.pr(&pivot);
    let others: BTreeSet<ExpVec> = block
        .iter()
        .map(|(m, _)| match side {
            Side::E => m.f,
            Side::F => m.e,
        })
        .filter(|v| !v.is_zero())
        .collect();
    let other_max = pick_max(rs, &others).expect("pivot lies in the M-set");
    let other_deg = rs.pr(&other_max);
    let (lead_mono, lead_right, comp_right, torus) = match side {
        Side::E => {
            let nu = eta + other_deg;
            (
                PBWMonomial::new(pivot, nu, ExpVec::ZERO),
                PBWMonomial::new(ExpVec::ZERO, nu, other_max),
                PBWMonomial::new(pivot, eta, ExpVec::ZERO),
                eta + other_deg + mu,
            )
        }
        Side::F => {
            let nu = eta + mu;
            (
                PBWMonomial::new(ExpVec::ZERO, other_deg + nu, pivot),
                PBWMonomial::new(other_max, eta, ExpVec::ZERO),
                PBWMonomial::new(ExpVec::ZERO, nu, pivot),
                other_deg + nu,
            )
        }
    };
    let raw_lead = left_coefficient(x, &lead_right)?;
    let c = raw_lead.coefficient_of(&lead_mono);
    if c.is_zero() {
        return Err(Error::Precondition(format!(
            "leading coefficient vanished while reducing {x}"
        )));
    }
    let leading_part = raw_lead.scale(&c.inv()?);
    let complement = left_coefficient(x, &comp_right)?;
    let tinv = UElement::k(sys, -torus);
    let z = match side {
        Side::E => alg.multiply(&alg.multiply(&leading_part, &tinv)?, &complement)?,
        Side::F => alg.multiply(&alg.multiply(&complement, &tinv)?, &leading_part)?,
    };
    let remainder = x.try_sub(&z)?;
    Ok(Some(ReductionStep {
        side,
        pivot,
        eta,
        leading_part,
        torus,
        complement,
        z,
        remainder,
    }))
}

fn normalized(x: &UElement) -> Option<UElement> {
    let (_, c) = x.terms().iter().next_back()?;
    let y = x.scale(&c.inv().ok()?);
    if y.as_scalar().is_some() {
        return None;
    }
    Some(y)
}

fn push_unique(out: &mut Vec<UElement>, x: &UElement) {
    if let Some(y) = normalized(x) {
        if !out.contains(&y) {
            out.push(y);
        }
    }
}

fn generator_torus_paired(c: &GeneratorSet) -> bool {
    let ks: BTreeSet<Weight> = c
        .gens()
        .iter()
        .filter(|g| g.len() == 1 && g.terms().keys().next().unwrap().is_pure_k())
        .map(|g| g.terms().keys().next().unwrap().k)
        .collect();
    ks.iter().all(|w| ks.contains(&-*w))
}

/// Replaces X by finitely many elements with strictly smaller M-set on `side`
/// that generate X, following the leading-term construction.
pub fn reduce_generator_with(
    x: &UElement,
    c: &GeneratorSet,
    degree: usize,
    side: Side,
    bound: usize,
) -> Result<Reduction> {
    if x.system() != c.system() {
        return Err(Error::SystemMismatch(x.system(), c.system()));
    }
    let m_before = side_m_set(x, side);
    if m_before.is_empty() {
        return Err(Error::Precondition("M(X) is empty".into()));
    }
    if !generator_torus_paired(c) {
        return Err(Error::Precondition(
            "torus generators are not closed under inversion".into(),
        ));
    }
    if !span_basis(c, degree).contains_element(x) {
        return Err(Error::Precondition(format!(
            "{x} is not in the span of the generators at degree {degree}"
        )));
    }
    let mut outputs = Vec::new();
    let mut steps = Vec::new();
    let parts = eta_split(x);
    let mut budget = bound;
    for part in parts.values() {
        let mut cur = part.clone();
        let part_m = side_m_set(&cur, side);
        if part_m.is_empty() {
            push_unique(&mut outputs, &cur);
            continue;
        }
        loop {
            if budget == 0 {
                return Err(Error::IterationBound(bound));
            }
            budget -= 1;
            let Some(step) = single_step(&cur, side)? else {
                push_unique(&mut outputs, &cur);
                break;
            };
            push_unique(&mut outputs, &step.leading_part);
            push_unique(&mut outputs, &UElement::k(x.system(), step.torus));
            push_unique(&mut outputs, &UElement::k(x.system(), -step.torus));
            push_unique(&mut outputs, &step.complement);
            cur = step.remainder.clone();
            let pivot = step.pivot;
            steps.push(step);
            let cur_m = side_m_set(&cur, side);
            let done = !cur_m.vectors.contains(&pivot) && m_compare(x.system(), &cur_m, &part_m) == MOrder::Smaller;
            if done {
                push_unique(&mut outputs, &cur);
                break;
            }
        }
    }
    let m_after = m_set_of(&outputs, side);
    if m_compare(x.system(), &m_after, &m_before) != MOrder::Smaller {
        return Err(Error::Precondition(format!(
            "reduction of {x} did not decrease the M-set"
        )));
    }
    Ok(Reduction {
        input: x.clone(),
        side,
        outputs,
        steps,
        m_before,
        m_after,
    })
}

/// E-side reduction with the default iteration bound.
pub fn reduce_generator(x: &UElement, c: &GeneratorSet, degree: usize) -> Result<Reduction> {
    reduce_generator_with(x, c, degree, Side::E, DEFAULT_ITERATION_BOUND)
}

/// Output of [`reduce_system`].
#[derive(Clone, Debug)]
pub struct SystemReduction {
    pub gens: GeneratorSet,
    pub reductions: Vec<Reduction>,
    /// Every input generator lies in the span of the output at degree + 1.
    pub input_in_output: bool,
    /// Every output generator lies in the span of the input at degree + 1.
    pub output_in_input: bool,
}

fn needs_work(x: &UElement) -> Option<Side> {
    if !m_set(x).is_empty() {
        Some(Side::E)
    } else if !m_set_f(x).is_empty() {
        Some(Side::F)
    } else {
        None
    }
}

/// Splits by η and ad(T_L)-weight, then reduces until no generator has a mixed leading term.
pub fn reduce_system(z: &GeneratorSet, degree: usize) -> Result<SystemReduction> {
    if !generator_torus_paired(z) {
        return Err(Error::Precondition(
            "torus generators are not closed under inversion".into(),
        ));
    }
    let lattice = torus_group(z);
    let mut work: Vec<UElement> = Vec::new();
    for g in z.gens() {
        for part in eta_split(g).values() {
            for (_, comp) in weight_decompose(part, &lattice) {
                push_unique(&mut work, &comp);
            }
        }
    }
    let mut reductions = Vec::new();
    for _ in 0..DEFAULT_ITERATION_BOUND {
        let Some(pos) = work.iter().position(|g| needs_work(g).is_some()) else {
            break;
        };
        let x = work[pos].clone();
        let side = needs_work(&x).unwrap();
        let ambient = GeneratorSet::new(z.name.clone(), work.clone())?;
        let red = reduce_generator_with(&x, &ambient, degree, side, DEFAULT_ITERATION_BOUND)?;
        let mut next: Vec<UElement> = Vec::new();
        for (i, g) in work.iter().enumerate() {
            if i == pos {
                for o in &red.outputs {
                    push_unique(&mut next, o);
                }
            } else {
                push_unique(&mut next, g);
            }
        }
        work = next;
        reductions.push(red);
    }
    if work.iter().any(|g| needs_work(g).is_some()) {
        return Err(Error::IterationBound(DEFAULT_ITERATION_BOUND));
    }
    let out = GeneratorSet::new(z.name.clone(), work)?;
    let out_span = span_basis(&out, degree + 1);
    let in_span = span_basis(z, degree + 1);
    let input_in_output = z.gens().iter().all(|g| out_span.contains_element(g));
    let output_in_input = out.gens().iter().all(|g| in_span.contains_element(g));
    Ok(SystemReduction {
        gens: out,
        reductions,
        input_in_output,
        output_in_input,
    })
}

/// Why an element is not of the generator form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormRejection {
    Zero,
    /// A leading term with both E- and F-part.
    MixedTerm(String),
    SeveralLeadingTerms(Side),
    NotRootDegree(Side, Weight),
    EtaNotConstant,
    LeadingNotNormalized,
    /// λ_K ≠ 0 together with λ_F ≠ 0 and μ ≠ ν.
    TorusWithBothSides,
    /// (μ + ν, μ − ν) ≠ 0 for μ ≠ ν.
    NotOrthogonal {
        mu: Weight,
        nu: Weight,
    },
    /// Not an ad(T_L)-weight vector for the given lattice.
    LatticeNotOrthogonal(Weight),
}

impl std::fmt::Display for FormRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormRejection::Zero => write!(f, "element is zero"),
            FormRejection::MixedTerm(m) => write!(f, "mixed term {m}"),
            FormRejection::SeveralLeadingTerms(s) => write!(f, "several {s:?}-leading terms"),
            FormRejection::NotRootDegree(s, w) => write!(f, "{s:?}-leading degree {w} is not a root"),
            FormRejection::EtaNotConstant => write!(f, "terms do not share one torus twist"),
            FormRejection::LeadingNotNormalized => write!(f, "E-leading term is not X_mu K_mu^-1 up to the twist"),
            FormRejection::TorusWithBothSides => {
                write!(f, "lambda_K and lambda_F both nonzero with mu != nu")
            }
            FormRejection::NotOrthogonal { mu, nu } => {
                write!(f, "({mu} + {nu}, {mu} - {nu}) != 0")
            }
            FormRejection::LatticeNotOrthogonal(l) => {
                write!(f, "not an ad(K_{l}) weight vector")
            }
        }
    }
}

/// Parsed generator `(λ_E E^φ_μ + λ_F K⁻¹_{μ−ν} F^φ_ν + λ_K K⁻¹_μ)·K_τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorForm {
    pub lambda_e: QRat,
    pub lambda_f: QRat,
    pub lambda_k: QRat,
    pub mu: Option<Weight>,
    pub nu: Option<Weight>,
    /// Torus twist τ.
    pub twist: Weight,
    pub e_part: UElement,
    pub f_part: UElement,
    pub k_part: UElement,
}

/// Matches `x` against the generator form, allowing a global torus twist K_τ on the right.
/// Mixed monomials are allowed below the leading terms; `e_part`/`f_part` hold the pure parts.
pub fn check_generator_form(
    x: &UElement,
    lattice: Option<&Lattice>,
) -> std::result::Result<GeneratorForm, FormRejection> {
    let sys = x.system();
    let rs = RootSystem::get(sys);
    if x.is_zero() {
        return Err(FormRejection::Zero);
    }
    let e_deg = e_degrees(x);
    let f_deg = f_degrees(x);
    if let Some(m) = x
        .terms()
        .keys()
        .find(|m| !m.e.is_zero() && !m.f.is_zero() && (e_deg.contains(&rs.pr(&m.e)) || f_deg.contains(&rs.pr(&m.f))))
    {
        return Err(FormRejection::MixedTerm(crate::expr::print_monomial(sys, m)));
    }
    let e_part = x.filter(|m| !m.e.is_zero() && m.f.is_zero());
    let f_part = x.filter(|m| !m.f.is_zero() && m.e.is_zero());
    let k_part = x.filter(|m| m.is_pure_k());
    if e_deg.len() > 1 {
        return Err(FormRejection::SeveralLeadingTerms(Side::E));
    }
    if f_deg.len() > 1 {
        return Err(FormRejection::SeveralLeadingTerms(Side::F));
    }
    let mu = e_deg.first().copied();
    let nu = f_deg.first().copied();
    if let Some(m) = mu {
        if rs.root_index(m).is_none() {
            return Err(FormRejection::NotRootDegree(Side::E, m));
        }
    }
    if let Some(n) = nu {
        if rs.root_index(n).is_none() {
            return Err(FormRejection::NotRootDegree(Side::F, n));
        }
    }
    if let (Some(m), Some(n)) = (mu, nu) {
        if m != n && !k_part.is_zero() {
            return Err(FormRejection::TorusWithBothSides);
        }
    }
    let etas = eta_split(x);
    if etas.len() != 1 {
        return Err(FormRejection::EtaNotConstant);
    }
    let eta = *etas.keys().next().unwrap();
    // η = τ − μ
    let twist = match mu {
        Some(m) => {
            let lead = leading_term(x, m).expect("maximal degree");
            if lead.terms().keys().any(|t| t.k != eta) {
                return Err(FormRejection::LeadingNotNormalized);
            }
            eta + m
        }
        None => Weight::ZERO,
    };
    if let (Some(m), Some(n)) = (mu, nu) {
        if m != n && rs.form(m + n, m - n) != 0 {
            return Err(FormRejection::NotOrthogonal { mu: m, nu: n });
        }
    }
    if let Some(l) = lattice {
        for &b in &l.basis {
            let weights: BTreeSet<i32> = x.terms().keys().map(|t| rs.form(b, t.q_degree(rs))).collect();
            if weights.len() > 1 {
                return Err(FormRejection::LatticeNotOrthogonal(b));
            }
        }
    }
    let lambda_e = match mu {
        Some(m) => {
            let lead = leading_term(x, m).expect("maximal degree");
            lead.terms().values().next_back().cloned().unwrap_or_else(QRat::zero)
        }
        None => QRat::zero(),
    };
    let lambda_f = match nu {
        Some(n) => {
            let lead = f_leading_term(x, n).expect("maximal degree");
            lead.terms().values().next_back().cloned().unwrap_or_else(QRat::zero)
        }
        None => QRat::zero(),
    };
    let lambda_k = k_part.coefficient_of(&PBWMonomial::k_only(eta));
    Ok(GeneratorForm {
        lambda_e,
        lambda_f,
        lambda_k,
        mu,
        nu,
        twist,
        e_part,
        f_part,
        k_part,
    })
}
