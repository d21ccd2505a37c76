//! Finite-dimensional simple U_q(sl2)-modules L(m) with basis x_0, …, x_m and
//! one-dimensional subquotients of their restrictions to subalgebras.
//!
//! The action is `K x_i = q^{m−2i} x_i`, `E x_i = [m−i+1] x_{i−1}`,
//! `F x_i = [i+1] x_{i+1}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pbw::UElement;
use crate::rootdata::SystemKind;
use crate::scalar::QRat;
use crate::subalgebra::GeneratorSet;

/// Dense square matrix over Q(q), row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub n: usize,
    pub rows: Vec<Vec<QRat>>,
}

impl Matrix {
    pub fn zero(n: usize) -> Matrix {
        Matrix {
            n,
            rows: vec![vec![QRat::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.rows[i][i] = QRat::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &QRat {
        &self.rows[i][j]
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    if !o.rows[k][j].is_zero() {
                        out.rows[i][j] += &(&self.rows[i][k] * &o.rows[k][j]);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.rows[i][j] += &o.rows[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: &QRat) -> Matrix {
        let mut out = self.clone();
        for row in &mut out.rows {
            for x in row {
                *x = &*x * c;
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.rows[j][i] = self.rows[i][j].clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &[QRat]) -> Vec<QRat> {
        self.rows
            .iter()
            .map(|row| {
                let mut s = QRat::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += &(a * b);
                    }
                }
                s
            })
            .collect()
    }

    pub fn diagonal(&self) -> Vec<QRat> {
        (0..self.n).map(|i| self.rows[i][i].clone()).collect()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.rows[i][j].is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.rows[i][j].is_zero()))
    }
}

/// Null space of a (possibly non-square) matrix given by its rows.
fn kernel(rows: &[Vec<QRat>], ncols: usize) -> Vec<Vec<QRat>> {
    let mut a: Vec<Vec<QRat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in &mut a[r] {
            *x = &*x * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![QRat::zero(); ncols];
        v[free] = QRat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[row][free];
        }
        out.push(v);
    }
    out
}

fn transpose_rows(vectors: &[Vec<QRat>], ncols: usize) -> Vec<Vec<QRat>> {
    (0..ncols)
        .map(|j| vectors.iter().map(|v| v[j].clone()).collect())
        .collect()
}

/// Rank of the span of `vectors` (each of length `ncols`).
fn rank_of_columns(vectors: &[Vec<QRat>], ncols: usize) -> usize {
    vectors.len() - kernel(&transpose_rows(vectors, ncols), vectors.len()).len()
}

/// Scales `v` so its first nonzero coordinate is 1.
fn normalize_vector(v: &mut [QRat]) {
    if let Some(p) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = p.inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
    }
}

/// The simple module L(m) of U_q(sl2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleModule {
    pub m: usize,
    pub e: Matrix,
    pub f: Matrix,
    pub k: Matrix,
    pub k_inv: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleVector {
    pub coords: Vec<QRat>,
}

impl ModuleVector {
    pub fn basis(m: &SimpleModule, i: usize) -> ModuleVector {
        let mut coords = vec![QRat::zero(); m.dim()];
        coords[i] = QRat::one();
        ModuleVector { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(QRat::is_zero)
    }
}

impl std::fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    format!("x{i}")
                } else {
                    format!("{}*x{i}", c.to_factor_string())
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Builds L(m).
pub fn build_simple_module(m: usize) -> SimpleModule {
    let n = m + 1;
    let mut e = Matrix::zero(n);
    let mut f = Matrix::zero(n);
    let mut k = Matrix::zero(n);
    let mut k_inv = Matrix::zero(n);
    for i in 0..n {
        let w = m as i64 - 2 * i as i64;
        k.rows[i][i] = QRat::q_pow(w);
        k_inv.rows[i][i] = QRat::q_pow(-w);
        if i > 0 {
            // column i holds the image of x_i
            e.rows[i - 1][i] = QRat::q_number((m - i + 1) as i64);
        }
        if i + 1 < n {
            f.rows[i + 1][i] = QRat::q_number(i as i64 + 1);
        }
    }
    SimpleModule { m, e, f, k, k_inv }
}

impl SimpleModule {
    pub fn dim(&self) -> usize {
        self.m + 1
    }

    fn k_power(&self, n: i64) -> Matrix {
        let mut out = Matrix::zero(self.dim());
        for i in 0..self.dim() {
            let w = self.m as i64 - 2 * i as i64;
            out.rows[i][i] = QRat::q_pow(n * w);
        }
        out
    }

    fn power(a: &Matrix, n: u16) -> Matrix {
        let mut out = Matrix::identity(a.n);
        for _ in 0..n {
            out = out.mul(a);
        }
        out
    }

    /// Matrix of `x` acting on the module.
    pub fn matrix_of(&self, x: &UElement) -> Result<Matrix> {
        if x.system() != SystemKind::A1 {
            return Err(Error::SystemMismatch(SystemKind::A1, x.system()));
        }
        let mut out = Matrix::zero(self.dim());
        for (mono, c) in x.terms() {
            let a = Self::power(&self.e, mono.e.0[0])
                .mul(&self.k_power(mono.k.0[0] as i64))
                .mul(&Self::power(&self.f, mono.f.0[0]));
            out = out.add(&a.scale(c));
        }
        Ok(out)
    }

    /// Checks EF − FE = (K − K⁻¹)/(q − q⁻¹), KE = q²EK, KF = q⁻²FK, KK⁻¹ = 1.
    pub fn relations_hold(&self) -> bool {
        let d = (&QRat::q() - &QRat::q_pow(-1)).inv().expect("q - q^-1 is nonzero");
        let lhs = self.e.mul(&self.f).add(&self.f.mul(&self.e).scale(&-QRat::one()));
        let rhs = self.k.add(&self.k_inv.scale(&-QRat::one())).scale(&d);
        let ke = self.k.mul(&self.e) == self.e.mul(&self.k).scale(&QRat::q_pow(2));
        let kf = self.k.mul(&self.f) == self.f.mul(&self.k).scale(&QRat::q_pow(-2));
        lhs == rhs && ke && kf && self.k.mul(&self.k_inv) == Matrix::identity(self.dim())
    }
}

/// Action of `x` on `v`.
pub fn act(x: &UElement, module: &SimpleModule, v: &ModuleVector) -> Result<ModuleVector> {
    if v.coords.len() != module.dim() {
        return Err(Error::IndexMismatch(v.coords.len(), module.dim()));
    }
    Ok(ModuleVector {
        coords: module.matrix_of(x)?.apply(&v.coords),
    })
}

/// A common eigenvector of the generators, or a common eigen-functional whose
/// kernel is an invariant subspace of codimension one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneDim {
    pub vector: ModuleVector,
    pub eigenvalues: Vec<QRat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneDimReport {
    /// Common eigenvectors: one-dimensional submodules.
    pub submodules: Vec<OneDim>,
    /// Functionals ξ with ξ∘g = μ_g ξ: one-dimensional quotients V/ker ξ.
    pub quotients: Vec<OneDim>,
    /// True when every generator matrix is triangular, so the diagonal is its
    /// whole spectrum and the search is exhaustive.
    pub exhaustive: bool,
}

fn distinct(values: Vec<QRat>) -> Vec<QRat> {
    let mut out: Vec<QRat> = Vec::new();
    for v in values {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Bases of the joint eigenspaces of `mats`, with eigenvalues taken from the diagonals.
fn joint_eigenvectors(mats: &[Matrix]) -> Vec<OneDim> {
    let n = mats.first().map_or(0, |m| m.n);
    let mut tuples: Vec<Vec<QRat>> = vec![Vec::new()];
    for a in mats {
        let cands = distinct(a.diagonal());
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                cands.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for t in tuples {
        let mut rows = Vec::new();
        for (a, lambda) in mats.iter().zip(&t) {
            for i in 0..n {
                let mut row = a.rows[i].clone();
                row[i] -= lambda;
                rows.push(row);
            }
        }
        for mut v in kernel(&rows, n) {
            normalize_vector(&mut v);
            out.push(OneDim {
                vector: ModuleVector { coords: v },
                eigenvalues: t.clone(),
            });
        }
    }
    out
}

/// One-dimensional submodules and quotients of `module` restricted to the algebra generated by `b`.
pub fn restrict_find_onedim(module: &SimpleModule, b: &GeneratorSet) -> Result<OneDimReport> {
    let mats = b
        .gens()
        .iter()
        .map(|g| module.matrix_of(g))
        .collect::<Result<Vec<_>>>()?;
    let exhaustive = mats.iter().all(|a| a.is_upper_triangular() || a.is_lower_triangular());
    let transposed: Vec<Matrix> = mats.iter().map(Matrix::transpose).collect();
    Ok(OneDimReport {
        submodules: joint_eigenvectors(&mats),
        quotients: joint_eigenvectors(&transposed),
        exhaustive,
    })
}

/// Length of a chain 0 = V_0 ⊂ V_1 ⊂ … of invariant subspaces with one-dimensional
/// steps, built greedily from common eigenvectors of the induced quotient actions.
/// Equals `module.dim()` exactly when every composition factor is one-dimensional
/// (for triangular generator matrices).
pub fn onedim_flag_length(module: &SimpleModule, b: &GeneratorSet) -> Result<usize> {
    let mats = b
        .gens()
        .iter()
        .map(|g| module.matrix_of(g))
        .collect::<Result<Vec<_>>>()?;
    let n = module.dim();
    let spectra: Vec<Vec<QRat>> = mats.iter().map(|a| distinct(a.diagonal())).collect();
    let mut flag: Vec<Vec<QRat>> = Vec::new();
    while flag.len() < n {
        let mut found = None;
        'search: for cand in standard_tuples(&spectra) {
            // v with (A − λ)v ∈ span(flag) for every generator, v ∉ span(flag)
            for v in relative_eigenvectors(&mats, &cand, &flag, n) {
                let mut with = flag.clone();
                with.push(v.clone());
                if rank_of_columns(&with, n) > flag.len() {
                    found = Some(v);
                    break 'search;
                }
            }
        }
        match found {
            Some(v) => flag.push(v),
            None => break,
        }
    }
    Ok(flag.len())
}

fn standard_tuples(spectra: &[Vec<QRat>]) -> Vec<Vec<QRat>> {
    let mut tuples: Vec<Vec<QRat>> = vec![Vec::new()];
    for s in spectra {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                s.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    tuples
}

/// Solutions (v, w_g) of (A_g − λ_g)v = Σ w_{g,j} f_j; returns the v-components.
fn relative_eigenvectors(mats: &[Matrix], lambdas: &[QRat], flag: &[Vec<QRat>], n: usize) -> Vec<Vec<QRat>> {
    let k = flag.len();
    let ncols = n + mats.len() * k;
    let mut rows = Vec::new();
    for (g, (a, lambda)) in mats.iter().zip(lambdas).enumerate() {
        for i in 0..n {
            let mut row = vec![QRat::zero(); ncols];
            row[..n].clone_from_slice(&a.rows[i][..n]);
            row[i] -= lambda;
            for (j, f) in flag.iter().enumerate() {
                row[n + g * k + j] = -&f[i];
            }
            rows.push(row);
        }
    }
    kernel(&rows, ncols)
        .into_iter()
        .map(|v| v[..n].to_vec())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::borel_constant;
    use crate::expr::{parse_element, Substitution};

    fn el(s: &str) -> UElement {
        let subs = Substitution::from([("l".to_string(), QRat::one()), ("lp".to_string(), borel_constant())]);
        parse_element(SystemKind::A1, s, &subs).unwrap()
    }

    fn vec_of(cs: &[QRat]) -> ModuleVector {
        ModuleVector { coords: cs.to_vec() }
    }

    #[test]
    fn small_modules() {
        let m0 = build_simple_module(0);
        assert_eq!(m0.e, Matrix::zero(1));
        assert_eq!(m0.k, Matrix::identity(1));
        let m1 = build_simple_module(1);
        let x0 = ModuleVector::basis(&m1, 0);
        let x1 = ModuleVector::basis(&m1, 1);
        assert_eq!(act(&el("F"), &m1, &x0).unwrap(), x1);
        assert_eq!(act(&el("E"), &m1, &x1).unwrap(), x0);
        assert_eq!(act(&el("K"), &m1, &x0).unwrap(), vec_of(&[QRat::q(), QRat::zero()]));
        let m2 = build_simple_module(2);
        let x1 = ModuleVector::basis(&m2, 1);
        assert_eq!(
            act(&el("E"), &m2, &x1).unwrap(),
            vec_of(&[QRat::q_number(2), QRat::zero(), QRat::zero()])
        );
        assert_eq!(
            act(&el("F"), &m2, &x1).unwrap(),
            vec_of(&[QRat::zero(), QRat::zero(), QRat::q_number(2)])
        );
        for m in 0..=6 {
            assert!(build_simple_module(m).relations_hold(), "m = {m}");
        }
    }

    #[test]
    fn kernel_and_rank() {
        let one = QRat::one;
        let rows = vec![vec![one(), one()], vec![QRat::from_int(2), QRat::from_int(2)]];
        let k = kernel(&rows, 2);
        assert_eq!(k, vec![vec![-one(), one()]]);
        assert_eq!(rank_of_columns(&rows, 2), 1);
    }

    #[test]
    fn nilpotent_generator() {
        let m1 = build_simple_module(1);
        let b = GeneratorSet::new("E", vec![el("E")]).unwrap();
        let r = restrict_find_onedim(&m1, &b).unwrap();
        assert_eq!(r.submodules.len(), 1);
        assert_eq!(r.submodules[0].vector, ModuleVector::basis(&m1, 0));
        assert!(r.submodules[0].eigenvalues[0].is_zero());
    }

    #[test]
    fn borel_restriction() {
        let m1 = build_simple_module(1);
        let b = GeneratorSet::new("B", vec![el("E*K^-1 + l*K^-1"), el("F + lp*K^-1")]).unwrap();
        let r = restrict_find_onedim(&m1, &b).unwrap();
        assert!(r.exhaustive);
        let q = QRat::q();
        let qi = QRat::q_pow(-1);
        let lp = borel_constant();
        assert_eq!(r.submodules.len(), 1);
        assert_eq!(
            r.submodules[0].vector,
            vec_of(&[QRat::one(), &QRat::one() - &QRat::q_pow(-2)])
        );
        assert_eq!(r.submodules[0].eigenvalues, vec![q.clone(), &lp * &qi]);
        assert_eq!(r.quotients.len(), 1);
        assert_eq!(r.quotients[0].eigenvalues, vec![qi, &lp * &q]);
        for m in 0..=3 {
            let module = build_simple_module(m);
            assert_eq!(onedim_flag_length(&module, &b).unwrap(), m + 1);
        }
        let full = GeneratorSet::new("U", vec![el("E"), el("F")]).unwrap();
        assert_eq!(onedim_flag_length(&build_simple_module(1), &full).unwrap(), 0);
    }
}
