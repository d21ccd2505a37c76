//! Root systems of type A1 and A2, Weyl words and convex orders on positive roots.
//!
//! Weights live in the root lattice and are written in simple-root
//! coordinates; `a` is α and `b` is β. A1 uses only the first coordinate.
//! The global reduced expression of the longest element of A2 is
//! `s_α s_β s_α`, which orders the positive roots as α < α+β < β. Every
//! exponent vector in the crate is indexed by this order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the two supported root systems is active.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SystemKind {
    A1,
    A2,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemKind::A1 => write!(f, "A1"),
            SystemKind::A2 => write!(f, "A2"),
        }
    }
}

impl FromStr for SystemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" | "SL2" => Ok(SystemKind::A1),
            "A2" | "SL3" => Ok(SystemKind::A2),
            other => Err(Error::Data(format!("unknown root system `{other}`"))),
        }
    }
}

/// Element of the root lattice Q in simple-root coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub [i32; 2]);

impl Weight {
    pub const ZERO: Weight = Weight([0, 0]);
    pub const ALPHA: Weight = Weight([1, 0]);
    pub const BETA: Weight = Weight([0, 1]);

    pub fn new(a: i32, b: i32) -> Self {
        Weight([a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0]
    }

    /// True when every coordinate is nonnegative (the weight lies in NΠ).
    pub fn is_nonneg(&self) -> bool {
        self.0[0] >= 0 && self.0[1] >= 0
    }

    /// Sum of coordinates.
    pub fn height(&self) -> i32 {
        self.0[0] + self.0[1]
    }

    /// Parses forms such as `a`, `-a-b`, `2b+a`, `ab` (= a+b) and `0`.
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |column: usize, message: &str| Error::Parse {
            column,
            message: message.to_string(),
        };
        if compact.is_empty() {
            return Err(err(1, "empty weight"));
        }
        if compact == "0" {
            return Ok(Weight::ZERO);
        }
        if compact == "ab" || compact == "ba" {
            return Ok(Weight::new(1, 1));
        }
        let chars: Vec<char> = compact.chars().collect();
        let mut w = Weight::ZERO;
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(err(i + 1, "expected '+' or '-'"));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let n: i32 = if i > start {
                chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err(start + 1, "bad coefficient"))?
            } else {
                1
            };
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            match chars.get(i) {
                Some('a') => w.0[0] += sign * n,
                Some('b') => w.0[1] += sign * n,
                None if i > start => {
                    if sign * n != 0 {
                        return Err(err(start + 1, "bare integer in weight"));
                    }
                    return Ok(w);
                }
                _ => return Err(err(i + 1, "expected `a` or `b`")),
            }
            i += 1;
        }
        Ok(w)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, name) in [(self.0[0], 'a'), (self.0[1], 'b')] {
            if c == 0 {
                continue;
            }
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{name}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Weight::parse(s)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, o: Weight) {
        *self = *self + o;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight([-self.0[0], -self.0[1]])
    }
}

impl Mul<Weight> for i32 {
    type Output = Weight;
    fn mul(self, w: Weight) -> Weight {
        Weight([self * w.0[0], self * w.0[1]])
    }
}

/// Result of comparing two weights in the dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// μ ≼ ν iff ν − μ ∈ NΠ.
pub fn dominance_leq(mu: Weight, nu: Weight) -> Dominance {
    if mu == nu {
        return Dominance::Equal;
    }
    if (nu - mu).is_nonneg() {
        Dominance::Less
    } else if (mu - nu).is_nonneg() {
        Dominance::Greater
    } else {
        Dominance::Incomparable
    }
}

/// `mu ≺ nu` strictly.
pub fn dominance_lt(mu: Weight, nu: Weight) -> bool {
    dominance_leq(mu, nu) == Dominance::Less
}

/// Exponent vector over the global convex order of positive roots.
///
/// Length is fixed at three; A1 uses position 0 only.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec(pub [u16; 3]);

impl ExpVec {
    pub const ZERO: ExpVec = ExpVec([0, 0, 0]);

    pub fn unit(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        ExpVec(e)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    /// Number of root-vector letters.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&x| x as u32).sum()
    }

    pub fn add(&self, o: &ExpVec) -> ExpVec {
        ExpVec([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn checked_sub(&self, o: &ExpVec) -> Option<ExpVec> {
        Some(ExpVec([
            self.0[0].checked_sub(o.0[0])?,
            self.0[1].checked_sub(o.0[1])?,
            self.0[2].checked_sub(o.0[2])?,
        ]))
    }

    /// Componentwise `self ≤ o`.
    pub fn divides(&self, o: &ExpVec) -> bool {
        (0..3).all(|i| self.0[i] <= o.0[i])
    }
}

/// Lexicographic comparison of exponent vectors read in convex-order positions.
pub fn lex_compare(a: &[u16], b: &[u16]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::IndexMismatch(a.len(), b.len()));
    }
    Ok(a.cmp(b))
}

/// A word in simple reflections, letters `0` (s_α) and `1` (s_β).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<u8>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, o: &WeylWord) -> WeylWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        WeylWord(v)
    }

    /// Parses `sa sb sa`, `aba`, `s_a s_b` or `e` for the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        let t = s.trim();
        if t.is_empty() || t == "e" || t == "1" {
            return Ok(WeylWord(out));
        }
        for (i, c) in t.chars().enumerate() {
            match c {
                'a' | 'α' => out.push(0),
                'b' | 'β' => out.push(1),
                's' | '_' | ' ' | '*' | ',' => {}
                _ => {
                    return Err(Error::Parse {
                        column: i + 1,
                        message: format!("unexpected `{c}` in Weyl word"),
                    })
                }
            }
        }
        Ok(WeylWord(out))
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let names: Vec<&str> = self.0.iter().map(|&l| if l == 0 { "sa" } else { "sb" }).collect();
        write!(f, "{}", names.join(" "))
    }
}

/// Positive roots of `w` in the order induced by a reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexOrder {
    pub word: WeylWord,
    pub roots: Vec<Weight>,
}

impl ConvexOrder {
    /// Checks that μ < ν with μ+ν in the list forces μ < μ+ν < ν.
    pub fn is_convex(&self) -> bool {
        let pos = |r: Weight| self.roots.iter().position(|&x| x == r);
        for i in 0..self.roots.len() {
            for j in (i + 1)..self.roots.len() {
                if let Some(k) = pos(self.roots[i] + self.roots[j]) {
                    if !(i < k && k < j) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn root_set(&self) -> BTreeSet<Weight> {
        self.roots.iter().copied().collect()
    }
}

/// Static data of a root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: SystemKind,
    pub rank: usize,
    pub cartan: Vec<Vec<i32>>,
    pub bilinear: Vec<Vec<i32>>,
    pub simple_roots: Vec<Weight>,
    /// Positive roots in the global convex order.
    pub positive_roots: Vec<Weight>,
    /// Position of each simple root in the global convex order.
    pub simple_index: Vec<usize>,
    pub longest_word: WeylWord,
}

static A1_SYSTEM: LazyLock<RootSystem> = LazyLock::new(|| RootSystem {
    kind: SystemKind::A1,
    rank: 1,
    cartan: vec![vec![2]],
    bilinear: vec![vec![2]],
    simple_roots: vec![Weight::ALPHA],
    positive_roots: vec![Weight::ALPHA],
    simple_index: vec![0],
    longest_word: WeylWord(vec![0]),
});

static A2_SYSTEM: LazyLock<RootSystem> = LazyLock::new(|| {
    let bilinear = vec![vec![2, -1], vec![-1, 2]];
    let cartan = (0..2)
        .map(|i| (0..2).map(|j| 2 * bilinear[i][j] / bilinear[j][j]).collect())
        .collect();
    RootSystem {
        kind: SystemKind::A2,
        rank: 2,
        cartan,
        bilinear,
        simple_roots: vec![Weight::ALPHA, Weight::BETA],
        positive_roots: vec![Weight::ALPHA, Weight::new(1, 1), Weight::BETA],
        simple_index: vec![0, 2],
        longest_word: WeylWord(vec![0, 1, 0]),
    }
});

impl RootSystem {
    pub fn get(kind: SystemKind) -> &'static RootSystem {
        match kind {
            SystemKind::A1 => &A1_SYSTEM,
            SystemKind::A2 => &A2_SYSTEM,
        }
    }

    pub fn n_pos(&self) -> usize {
        self.positive_roots.len()
    }

    /// The bilinear form (μ, ν).
    pub fn form(&self, mu: Weight, nu: Weight) -> i32 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += mu.0[i] * nu.0[j] * self.bilinear[i][j];
            }
        }
        s
    }

    /// Whether a weight has nonzero coordinates only within the rank.
    pub fn contains_weight(&self, w: Weight) -> bool {
        self.rank == 2 || w.0[1] == 0
    }

    /// Index of a positive root in the global convex order.
    pub fn root_index(&self, root: Weight) -> Option<usize> {
        self.positive_roots.iter().position(|&r| r == root)
    }

    /// pr(ē) = Σ e_i β_i.
    pub fn pr(&self, e: &ExpVec) -> Weight {
        let mut w = Weight::ZERO;
        for (i, &r) in self.positive_roots.iter().enumerate() {
            w += (e.0[i] as i32) * r;
        }
        w
    }

    /// The simple reflection s_i.
    pub fn reflect(&self, i: u8, w: Weight) -> Weight {
        let ai = self.simple_roots[i as usize];
        let c = 2 * self.form(w, ai) / self.form(ai, ai);
        w - c * ai
    }

    /// Action of `s_{i_1} ⋯ s_{i_k}` on a weight.
    pub fn act(&self, word: &WeylWord, w: Weight) -> Weight {
        word.0.iter().rev().fold(w, |acc, &i| self.reflect(i, acc))
    }

    /// ℓ(w) = #{α > 0 : w⁻¹α < 0}.
    pub fn length(&self, word: &WeylWord) -> usize {
        let inv = word.inverse();
        self.all_positive_roots()
            .into_iter()
            .filter(|&r| {
                let x = self.act(&inv, r);
                !x.is_nonneg()
            })
            .count()
    }

    pub fn is_reduced(&self, word: &WeylWord) -> bool {
        word.0.iter().all(|&l| (l as usize) < self.rank) && self.length(word) == word.len()
    }

    fn all_positive_roots(&self) -> Vec<Weight> {
        self.positive_roots.clone()
    }

    /// Φ⁺(w) in the order β_i = s_{i_1}⋯s_{i_{j−1}}(α_{i_j}).
    pub fn phi_plus_of(&self, word: &WeylWord) -> Result<ConvexOrder> {
        if !self.is_reduced(word) {
            return Err(Error::NotReduced(word.to_string()));
        }
        let mut roots = Vec::with_capacity(word.len());
        for j in 0..word.len() {
            let prefix = WeylWord(word.0[..j].to_vec());
            roots.push(self.act(&prefix, self.simple_roots[word.0[j] as usize]));
        }
        Ok(ConvexOrder {
            word: word.clone(),
            roots,
        })
    }

    /// {α ∈ Φ⁺ | w⁻¹α ≺ 0}, computed directly from the action.
    pub fn inversion_set(&self, word: &WeylWord) -> BTreeSet<Weight> {
        let inv = word.inverse();
        self.positive_roots
            .iter()
            .copied()
            .filter(|&r| !self.act(&inv, r).is_nonneg())
            .collect()
    }

    /// Matrix of `w` acting on simple-root coordinates, used as a group-element key.
    pub fn matrix(&self, word: &WeylWord) -> [[i32; 2]; 2] {
        let c0 = self.act(word, Weight::ALPHA);
        let c1 = if self.rank == 2 {
            self.act(word, Weight::BETA)
        } else {
            Weight::BETA
        };
        [[c0.0[0], c1.0[0]], [c0.0[1], c1.0[1]]]
    }

    /// One shortlex-minimal reduced word per Weyl group element.
    pub fn weyl_elements(&self) -> Vec<WeylWord> {
        let mut seen: HashMap<[[i32; 2]; 2], ()> = HashMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        queue.push_back(WeylWord::identity());
        while let Some(w) = queue.pop_front() {
            let m = self.matrix(&w);
            if seen.insert(m, ()).is_some() {
                continue;
            }
            out.push(w.clone());
            for i in 0..self.rank as u8 {
                let mut next = w.0.clone();
                next.push(i);
                queue.push_back(WeylWord(next));
            }
        }
        out
    }

    /// Every reduced word of every Weyl group element.
    pub fn all_reduced_words(&self) -> Vec<WeylWord> {
        let max = self.longest_word.len();
        let mut out = vec![WeylWord::identity()];
        let mut frontier = vec![WeylWord::identity()];
        for _ in 0..max {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..self.rank as u8 {
                    let mut v = w.0.clone();
                    v.push(i);
                    let cand = WeylWord(v);
                    if self.is_reduced(&cand) {
                        next.push(cand);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Weak (prefix) order: v ≤ w iff ℓ(w) = ℓ(v) + ℓ(v⁻¹w).
    pub fn weak_leq(&self, v: &WeylWord, w: &WeylWord) -> bool {
        let vinv_w = v.inverse().concat(w);
        self.length(w) == self.length(v) + self.length(&vinv_w)
    }

    /// The global convex order on all positive roots.
    pub fn global_order(&self) -> ConvexOrder {
        self.phi_plus_of(&self.longest_word).expect("longest word is reduced")
    }

    /// Parses a weight and checks it belongs to this system.
    pub fn parse_weight(&self, s: &str) -> Result<Weight> {
        let w = Weight::parse(s)?;
        if !self.contains_weight(w) {
            return Err(Error::UnknownGenerator(format!("weight {s} in {}", self.kind)));
        }
        Ok(w)
    }

    /// Basis of {l ∈ Q : (l, s) = 0 for all s ∈ S}.
    pub fn perp_lattice(&self, support: &[Weight]) -> Vec<Weight> {
        let rows: Vec<[i32; 2]> = support
            .iter()
            .map(|&s| {
                let mut r = [0; 2];
                for (i, ri) in r.iter_mut().enumerate().take(self.rank) {
                    let mut e = Weight::ZERO;
                    e.0[i] = 1;
                    *ri = self.form(e, s);
                }
                r
            })
            .filter(|r| *r != [0, 0])
            .collect();
        if self.rank == 1 {
            return if rows.is_empty() { vec![Weight::ALPHA] } else { vec![] };
        }
        if rows.is_empty() {
            return vec![Weight::ALPHA, Weight::BETA];
        }
        let [a, b] = rows[0];
        let g = gcd_i32(a, b);
        let mut cand = Weight::new(-b / g, a / g);
        if cand.0[0] < 0 || (cand.0[0] == 0 && cand.0[1] < 0) {
            cand = -cand;
        }
        let ok = rows.iter().all(|r| r[0] * cand.0[0] + r[1] * cand.0[1] == 0);
        if ok {
            vec![cand]
        } else {
            vec![]
        }
    }
}

fn gcd_i32(a: i32, b: i32) -> i32 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}
