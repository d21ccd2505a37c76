//! Exact arithmetic in Q(q).
//!
//! [`IntPoly`] is a dense polynomial in `q` with big-integer coefficients and
//! [`QRat`] is a quotient of two of them kept in a unique canonical form:
//! numerator and denominator are coprime in Z[q] (content included) and the
//! denominator has a positive leading coefficient. Negative powers of `q` are
//! ordinary quotients, `q^-n = 1 / q^n`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial in `q` with integer coefficients, `coeffs[i]` multiplying `q^i`.
///
/// Trailing zeros are never stored, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Nonzero coefficients as `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn is_monomial(&self) -> bool {
        match self.valuation() {
            Some(v) => v + 1 == self.coeffs.len(),
            None => false,
        }
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divide by `q^k`; the caller guarantees `k <= valuation`.
    fn unshift(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return Self::zero();
        }
        let mut p = self.div_scalar_exact(&c);
        if p.lc().is_some_and(|l| l.is_negative()) {
            p = -p;
        }
        p
    }

    /// Pseudo-remainder of `self` by `divisor` (nonzero).
    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let db = divisor.coeffs.len() - 1;
        let lb = divisor.lc().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                r[dr - db + i] -= &lr * b;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        IntPoly { coeffs: r }
    }

    /// Exact quotient in Z[q], or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return None;
        }
        let lb = divisor.lc().unwrap();
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); r.len() - db];
        for k in (0..quot.len()).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                r[k + i] -= &qk * b;
            }
            quot[k] = qk;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    /// Greatest common divisor in Z[q], normalised to a positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let va = self.valuation().unwrap();
        let vb = other.valuation().unwrap();
        let v = va.min(vb);
        let cont = self.content().gcd(&other.content());
        if self.is_monomial() || other.is_monomial() || self.is_constant() || other.is_constant() {
            return IntPoly::monomial(cont, v);
        }
        let mut a = self.unshift(va).primitive_part();
        let mut b = other.unshift(vb).primitive_part();
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                a = IntPoly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&cont).shift(v)
    }

    fn normalize_sign(&self) -> IntPoly {
        if self.lc().is_some_and(|l| l.is_negative()) {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c += s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *c -= s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{abs}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Sparse textual form such as `-2*q^3 + q - 5`; `3q^2` is accepted as well.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let err = |column: usize, message: &str| Error::Parse {
            column: column + 1,
            message: message.to_string(),
        };
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let mut acc = IntPoly::zero();
        let mut first = true;
        skip_ws(&mut pos);
        if pos == chars.len() {
            return Err(err(pos, "empty polynomial"));
        }
        while pos < chars.len() {
            let mut sign = 1i32;
            skip_ws(&mut pos);
            if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
                if chars[pos] == '-' {
                    sign = -1;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(err(pos, "expected '+' or '-'"));
            }
            first = false;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coeff = if pos > start {
                chars[start..pos]
                    .iter()
                    .collect::<String>()
                    .parse::<BigInt>()
                    .map_err(|_| err(start, "bad integer"))?
            } else {
                BigInt::one()
            };
            let had_number = pos > start;
            skip_ws(&mut pos);
            let mut exp = 0usize;
            if pos < chars.len() && chars[pos] == '*' {
                if !had_number {
                    return Err(err(pos, "unexpected '*'"));
                }
                pos += 1;
                skip_ws(&mut pos);
                if pos >= chars.len() || chars[pos] != 'q' {
                    return Err(err(pos, "expected 'q'"));
                }
            }
            if pos < chars.len() && chars[pos] == 'q' {
                pos += 1;
                exp = 1;
                skip_ws(&mut pos);
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let es = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if es == pos {
                        return Err(err(pos, "expected nonnegative exponent"));
                    }
                    exp = chars[es..pos]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| err(es, "bad exponent"))?;
                }
            } else if !had_number {
                return Err(err(pos, "expected a term"));
            }
            if sign < 0 {
                coeff = -coeff;
            }
            acc = &acc + &IntPoly::monomial(coeff, exp);
            skip_ws(&mut pos);
        }
        Ok(acc)
    }
}

/// Element of the field Q(q) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: IntPoly,
    den: IntPoly,
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl QRat {
    pub fn zero() -> Self {
        QRat {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        QRat::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        QRat {
            num: IntPoly::constant(BigInt::from(n)),
            den: IntPoly::one(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        QRat {
            num: IntPoly::constant(n),
            den: IntPoly::one(),
        }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        QRat {
            num: p,
            den: IntPoly::one(),
        }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        QRat::q_pow(1)
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(n: i64) -> Self {
        let k = n.unsigned_abs() as usize;
        let m = IntPoly::monomial(BigInt::one(), k);
        if n >= 0 {
            QRat {
                num: m,
                den: IntPoly::one(),
            }
        } else {
            QRat {
                num: IntPoly::one(),
                den: m,
            }
        }
    }

    /// Builds `num / den` and brings it into canonical form.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return QRat::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        if den.lc().is_some_and(|l| l.is_negative()) {
            num = -num;
            den = -den;
        }
        QRat { num, den }
    }

    /// `[n]_q = (q^n - q^-n) / (q - q^-1)`.
    pub fn q_number(n: i64) -> Self {
        if n == 0 {
            return QRat::zero();
        }
        let k = n.unsigned_abs() as usize;
        // (q^{2k} - 1) / (q^{k-1} (q^2 - 1))
        let top = &IntPoly::monomial(BigInt::one(), 2 * k) - &IntPoly::one();
        let bottom = IntPoly::monomial(BigInt::one(), k - 1).mul(&IntPoly::from_i64s(&[-1, 0, 1]));
        let v = QRat::canonical(top, bottom);
        if n < 0 {
            -v
        } else {
            v
        }
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in Q (no `q` dependence).
    pub fn is_rational_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &QRat) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = QRat::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluate at a rational point, `None` at a pole.
    pub fn eval_i64(&self, q: i64) -> Option<(BigInt, BigInt)> {
        let ev = |p: &IntPoly| {
            let mut acc = BigInt::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc * q + c;
            }
            acc
        };
        let d = ev(&self.den);
        if d.is_zero() {
            return None;
        }
        let n = ev(&self.num);
        let g = n.gcd(&d);
        if g.is_zero() {
            return Some((n, d));
        }
        Some((n / &g, d / g))
    }

    /// Small-integer view when the value is an integer constant.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        if self.num.is_constant() && self.den.is_one() {
            self.num.coeffs()[0].to_i64()
        } else {
            None
        }
    }

    /// Parenthesised form usable inside larger expressions.
    pub fn to_factor_string(&self) -> String {
        if self.den.is_one() {
            if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
                && !self.num.lc().is_some_and(|l| l.is_negative())
            {
                self.num.to_string()
            } else {
                format!("({})", self.num)
            }
        } else {
            format!("({})/({})", self.num, self.den)
        }
    }
}

impl Ord for QRat {
    /// Structural order; only used to make collections deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |p: &IntPoly| (p.coeffs().len(), p.coeffs().to_vec());
        key(&self.num)
            .cmp(&key(&other.num))
            .then_with(|| key(&self.den).cmp(&key(&other.den)))
    }
}

impl PartialOrd for QRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for QRat {
    fn from(n: i64) -> Self {
        QRat::from_int(n)
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -self.clone()
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return QRat {
                    num,
                    den: IntPoly::one(),
                };
            }
            return QRat::canonical(num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a_co = rhs.den.div_exact(&g).unwrap();
        let b_co = self.den.div_exact(&g).unwrap();
        let num = &(&self.num * &a_co) + &(&rhs.num * &b_co);
        let den = &self.den * &a_co;
        QRat::canonical(num, den)
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRat {
                num: &self.num * &rhs.num,
                den: IntPoly::one(),
            };
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let mut num = &n1 * &n2;
        let mut den = &d1 * &d2;
        if den.lc().is_some_and(|l| l.is_negative()) {
            num = -num;
            den = -den;
        }
        QRat { num, den }
    }
}

/// Panics on division by zero; use [`QRat::checked_div`] for a fallible form.
impl Div for &QRat {
    type Output = QRat;
    fn div(self, rhs: &QRat) -> QRat {
        self.checked_div(rhs).expect("division by zero in Q(q)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QRat> for QRat {
    fn add_assign(&mut self, rhs: &QRat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QRat> for QRat {
    fn sub_assign(&mut self, rhs: &QRat) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QRat> for QRat {
    fn mul_assign(&mut self, rhs: &QRat) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} / {}", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

impl FromStr for QRat {
    type Err = Error;

    /// Parses `poly` or `poly / poly`; each side may be wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        fn strip(s: &str) -> &str {
            let t = s.trim();
            if t.starts_with('(') && t.ends_with(')') {
                t[1..t.len() - 1].trim()
            } else {
                t
            }
        }
        let mut parts = s.splitn(2, '/');
        let top = parts.next().unwrap_or("");
        let num: IntPoly = strip(top).parse()?;
        match parts.next() {
            None => Ok(QRat::from_poly(num)),
            Some(bottom) => {
                if bottom.contains('/') {
                    return Err(Error::Parse {
                        column: top.len() + 2,
                        message: "more than one '/'".into(),
                    });
                }
                let den: IntPoly = strip(bottom).parse().map_err(|e| match e {
                    Error::Parse { column, message } => Error::Parse {
                        column: column + top.len() + 1,
                        message,
                    },
                    other => other,
                })?;
                QRat::new(num, den)
            }
        }
    }
}

impl serde::Serialize for QRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> QRat {
        s.parse().unwrap()
    }

    #[test]
    fn gcd_cancellation() {
        let x = QRat::new(IntPoly::from_i64s(&[-1, 0, 1]), IntPoly::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(x, r("q + 1"));
    }

    #[test]
    fn inverse_pairs() {
        // 1/(q - q^-1) = q/(q^2 - 1)
        let a = r("q / q^2 - 1");
        let b = r("q^2 - 1 / q");
        assert!((&a * &b).is_one());
        let q = QRat::q();
        let qi = QRat::q_pow(-1);
        let lam = &(&q * &q) / &(&(&QRat::one() - &(&q * &q)) * &(&q - &qi));
        let recip = &(&(&QRat::one() - &(&q * &q)) * &(&q - &qi)) / &(&q * &q);
        assert!((&lam * &recip).is_one());
    }

    #[test]
    fn q_numbers() {
        assert!(QRat::q_number(0).is_zero());
        assert!(QRat::q_number(1).is_one());
        assert_eq!(QRat::q_number(2), r("q^2 + 1 / q"));
        assert_eq!(QRat::q_number(3), r("q^4 + q^2 + 1 / q^2"));
        assert_eq!(QRat::q_number(-2), -QRat::q_number(2));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(QRat::one().checked_div(&QRat::zero()), Err(Error::DivisionByZero));
        assert!(QRat::new(IntPoly::one(), IntPoly::zero()).is_err());
    }

    #[test]
    fn canonical_sign_and_content() {
        let a = QRat::new(IntPoly::from_i64s(&[2]), IntPoly::from_i64s(&[0, -4])).unwrap();
        assert_eq!(a.numer(), &IntPoly::from_i64s(&[-1]));
        assert_eq!(a.denom(), &IntPoly::from_i64s(&[0, 2]));
        assert_eq!(a.to_string(), "-1 / 2*q");
    }

    #[test]
    fn negative_powers_round_trip() {
        for n in -6..=6 {
            let x = QRat::q_pow(n);
            let y = QRat::q_pow(-n);
            assert!((&x * &y).is_one());
            assert_eq!(x.to_string().parse::<QRat>().unwrap(), x);
        }
    }

    #[test]
    fn text_form() {
        assert_eq!(r("q^2 - 1 / q").to_string(), "q^2 - 1 / q");
        assert_eq!(r("(q^2 - 1) / (q)"), r("q^2 - 1 / q"));
        assert_eq!(r("3q^2-q+5").to_string(), "3*q^2 - q + 5");
        assert!("q^".parse::<QRat>().is_err());
        assert!("1 / 0".parse::<QRat>().is_err());
    }

    #[test]
    fn gcd_nontrivial() {
        // (q+1)(q^2+2) and (q+1)(3q-1)
        let a = &IntPoly::from_i64s(&[1, 1]) * &IntPoly::from_i64s(&[2, 0, 1]);
        let b = &IntPoly::from_i64s(&[1, 1]) * &IntPoly::from_i64s(&[-1, 3]);
        assert_eq!(a.gcd(&b), IntPoly::from_i64s(&[1, 1]));
        let c = &IntPoly::from_i64s(&[2, 2]) * &IntPoly::from_i64s(&[0, 0, 6]);
        let d = IntPoly::from_i64s(&[0, 4, 4]);
        assert_eq!(c.gcd(&d), IntPoly::from_i64s(&[0, 4, 4]));
    }
}
