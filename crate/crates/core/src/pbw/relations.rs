//! Straightening rules for out-of-order generator pairs.
//!
//! The E–E and F–F rules and the E–F rules between simple root vectors are
//! shipped literally. E–F rules involving the compound root vector of A2 are
//! derived when the algebra is built: both root vectors are expanded into
//! simple letters, the word is normal-ordered with the simple commutation
//! rules only, and the result is collected back into PBW form.

use std::collections::{BTreeMap, HashMap};

use crate::pbw::{Generator, PBWMonomial};
use crate::rootdata::{ExpVec, RootSystem, SystemKind, Weight};
use crate::scalar::QRat;

/// Letter of a word in simple generators; `E(i)`/`F(i)` use convex indices of simple roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    E(usize),
    F(usize),
    K(Weight),
}

impl Letter {
    pub fn to_generator(self, _rs: &RootSystem) -> Generator {
        match self {
            Letter::E(i) => Generator::E(i),
            Letter::F(i) => Generator::F(i),
            Letter::K(w) => Generator::K(w),
        }
    }

    fn class(&self) -> u8 {
        match self {
            Letter::E(_) => 0,
            Letter::K(_) => 1,
            Letter::F(_) => 2,
        }
    }
}

pub(crate) type Words = Vec<(QRat, Vec<Letter>)>;

/// Right-hand side of a straightening rule.
pub type RuleTerms = Vec<(PBWMonomial, QRat)>;

/// Rewriting rules of one algebra instance.
#[derive(Clone, Debug)]
pub struct RelationTable {
    kind: SystemKind,
    ee: HashMap<(usize, usize), Vec<(ExpVec, QRat)>>,
    ff: HashMap<(usize, usize), Vec<(ExpVec, QRat)>>,
    fe: HashMap<(usize, usize), Vec<(PBWMonomial, QRat)>>,
    e_defs: Vec<Words>,
    f_defs: Vec<Words>,
}

fn inv_q_minus_qinv() -> QRat {
    // 1/(q − q⁻¹) = q/(q² − 1)
    &QRat::q() / &(&QRat::q_pow(2) - &QRat::one())
}

impl RelationTable {
    /// Literal rules: all E–E, F–F and simple E–F pairs.
    pub fn base(kind: SystemKind) -> RelationTable {
        let rs = RootSystem::get(kind);
        let one = QRat::one;
        let q = QRat::q_pow;
        let mut ee = HashMap::new();
        let mut ff = HashMap::new();
        let mut fe = HashMap::new();
        let c = inv_q_minus_qinv();
        for &i in &rs.simple_index {
            let root = rs.positive_roots[i];
            let e = ExpVec::unit(i);
            fe.insert(
                (i, i),
                vec![
                    (PBWMonomial::new(e, Weight::ZERO, e), one()),
                    (PBWMonomial::k_only(root), -c.clone()),
                    (PBWMonomial::k_only(-root), c.clone()),
                ],
            );
        }
        let mut e_defs: Vec<Words> = Vec::new();
        let mut f_defs: Vec<Words> = Vec::new();
        match kind {
            SystemKind::A1 => {
                e_defs.push(vec![(one(), vec![Letter::E(0)])]);
                f_defs.push(vec![(one(), vec![Letter::F(0)])]);
            }
            SystemKind::A2 => {
                // E_α E_{αβ} = q E_{αβ} E_α
                ee.insert((0, 1), vec![(ExpVec([1, 1, 0]), q(1))]);
                // E_α E_β = q⁻¹ E_β E_α + E_{αβ}
                ee.insert((0, 2), vec![(ExpVec([1, 0, 1]), q(-1)), (ExpVec([0, 1, 0]), one())]);
                // E_{αβ} E_β = q E_β E_{αβ}
                ee.insert((1, 2), vec![(ExpVec([0, 1, 1]), q(1))]);
                // F_{αβ} F_α = q⁻¹ F_α F_{αβ}
                ff.insert((1, 0), vec![(ExpVec([1, 1, 0]), q(-1))]);
                // F_β F_α = q F_α F_β + F_{αβ}
                ff.insert((2, 0), vec![(ExpVec([1, 0, 1]), q(1)), (ExpVec([0, 1, 0]), one())]);
                // F_β F_{αβ} = q⁻¹ F_{αβ} F_β
                ff.insert((2, 1), vec![(ExpVec([0, 1, 1]), q(-1))]);
                fe.insert(
                    (0, 2),
                    vec![(PBWMonomial::new(ExpVec::unit(2), Weight::ZERO, ExpVec::unit(0)), one())],
                );
                fe.insert(
                    (2, 0),
                    vec![(PBWMonomial::new(ExpVec::unit(0), Weight::ZERO, ExpVec::unit(2)), one())],
                );
                e_defs.push(vec![(one(), vec![Letter::E(0)])]);
                // E_{αβ} = E_α E_β − q⁻¹ E_β E_α
                e_defs.push(vec![
                    (one(), vec![Letter::E(0), Letter::E(2)]),
                    (-q(-1), vec![Letter::E(2), Letter::E(0)]),
                ]);
                e_defs.push(vec![(one(), vec![Letter::E(2)])]);
                f_defs.push(vec![(one(), vec![Letter::F(0)])]);
                // F_{αβ} = −q(F_α F_β − q⁻¹ F_β F_α)
                f_defs.push(vec![
                    (-q(1), vec![Letter::F(0), Letter::F(2)]),
                    (one(), vec![Letter::F(2), Letter::F(0)]),
                ]);
                f_defs.push(vec![(one(), vec![Letter::F(2)])]);
            }
        }
        RelationTable {
            kind,
            ee,
            ff,
            fe,
            e_defs,
            f_defs,
        }
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub(crate) fn ee_rule(&self, i: usize, j: usize) -> &[(ExpVec, QRat)] {
        self.ee
            .get(&(i, j))
            .unwrap_or_else(|| panic!("missing E-E rule ({i},{j})"))
    }

    pub(crate) fn ff_rule(&self, i: usize, j: usize) -> &[(ExpVec, QRat)] {
        self.ff
            .get(&(i, j))
            .unwrap_or_else(|| panic!("missing F-F rule ({i},{j})"))
    }

    pub(crate) fn fe_rule(&self, i: usize, j: usize) -> &[(PBWMonomial, QRat)] {
        self.fe
            .get(&(i, j))
            .unwrap_or_else(|| panic!("missing F-E rule ({i},{j})"))
    }

    pub(crate) fn insert_fe(&mut self, i: usize, j: usize, v: Vec<(PBWMonomial, QRat)>) {
        self.fe.insert((i, j), v);
    }

    pub(crate) fn missing_fe_pairs(&self) -> Vec<(usize, usize)> {
        let n = RootSystem::get(self.kind).n_pos();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.fe.contains_key(&(i, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Expansion of `E_β` (convex index `i`) in simple letters.
    pub fn e_expansion(&self, i: usize) -> Words {
        self.e_defs[i].clone()
    }

    /// Expansion of `F_β` (convex index `i`) in simple letters.
    pub fn f_expansion(&self, i: usize) -> Words {
        self.f_defs[i].clone()
    }

    pub(crate) fn expand_generator(&self, g: Generator) -> Words {
        match g {
            Generator::E(i) => self.e_expansion(i),
            Generator::F(i) => self.f_expansion(i),
            Generator::K(w) => vec![(QRat::one(), vec![Letter::K(w)])],
        }
    }

    /// Every stored rule as (left generator, right generator, normal form terms).
    pub fn rules(&self) -> Vec<(Generator, Generator, RuleTerms)> {
        let mut out = Vec::new();
        let mut keys: Vec<_> = self.ee.keys().copied().collect();
        keys.sort();
        for (i, j) in keys {
            let v = self.ee[&(i, j)]
                .iter()
                .map(|(e, c)| (PBWMonomial::e_only(*e), c.clone()))
                .collect();
            out.push((Generator::E(i), Generator::E(j), v));
        }
        let mut keys: Vec<_> = self.ff.keys().copied().collect();
        keys.sort();
        for (i, j) in keys {
            let v = self.ff[&(i, j)]
                .iter()
                .map(|(f, c)| (PBWMonomial::f_only(*f), c.clone()))
                .collect();
            out.push((Generator::F(i), Generator::F(j), v));
        }
        let mut keys: Vec<_> = self.fe.keys().copied().collect();
        keys.sort();
        for (i, j) in keys {
            out.push((Generator::F(i), Generator::E(j), self.fe[&(i, j)].clone()));
        }
        out
    }
}

/// Normal-orders simple-letter words into `E…E K F…F` using only the simple
/// E–F commutator and K moves. `rightmost` picks the rewrite position.
pub(crate) fn straighten_words(
    rs: &RootSystem,
    words: &[(QRat, Vec<Letter>)],
    rightmost: bool,
) -> Vec<(QRat, Vec<usize>, Weight, Vec<usize>)> {
    let c = inv_q_minus_qinv();
    let mut done: BTreeMap<Vec<Letter>, QRat> = BTreeMap::new();
    let mut stack: Vec<(QRat, Vec<Letter>)> = words.to_vec();
    while let Some((coef, w)) = stack.pop() {
        if coef.is_zero() {
            continue;
        }
        let bad = |p: usize| {
            let (x, y) = (w[p], w[p + 1]);
            x.class() > y.class() || (x.class() == 1 && y.class() == 1)
        };
        let n = w.len();
        let pos = if n < 2 {
            None
        } else if rightmost {
            (0..n - 1).rev().find(|&p| bad(p))
        } else {
            (0..n - 1).find(|&p| bad(p))
        };
        let Some(p) = pos else {
            let e = done.entry(w).or_insert_with(QRat::zero);
            *e += &coef;
            continue;
        };
        let splice = |mid: Vec<Letter>| {
            let mut v = w[..p].to_vec();
            v.extend(mid);
            v.extend_from_slice(&w[p + 2..]);
            v
        };
        match (w[p], w[p + 1]) {
            (Letter::F(i), Letter::E(j)) => {
                stack.push((coef.clone(), splice(vec![Letter::E(j), Letter::F(i)])));
                if i == j {
                    let r = rs.positive_roots[i];
                    stack.push((-(&coef * &c), splice(vec![Letter::K(r)])));
                    stack.push((&coef * &c, splice(vec![Letter::K(-r)])));
                }
            }
            (Letter::K(nu), Letter::E(j)) => {
                let s = rs.form(nu, rs.positive_roots[j]) as i64;
                stack.push((&coef * &QRat::q_pow(s), splice(vec![Letter::E(j), Letter::K(nu)])));
            }
            (Letter::F(j), Letter::K(nu)) => {
                let s = rs.form(nu, rs.positive_roots[j]) as i64;
                stack.push((&coef * &QRat::q_pow(s), splice(vec![Letter::K(nu), Letter::F(j)])));
            }
            (Letter::K(a), Letter::K(b)) => {
                stack.push((coef, splice(vec![Letter::K(a + b)])));
            }
            _ => unreachable!("pair is in order"),
        }
    }
    let mut out = Vec::new();
    for (w, coef) in done {
        if coef.is_zero() {
            continue;
        }
        let mut ew = Vec::new();
        let mut fw = Vec::new();
        let mut k = Weight::ZERO;
        for l in w {
            match l {
                Letter::E(i) => ew.push(i),
                Letter::F(i) => fw.push(i),
                Letter::K(x) => k += x,
            }
        }
        out.push((coef, ew, k, fw));
    }
    out
}
