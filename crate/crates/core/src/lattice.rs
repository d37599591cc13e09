//! Integer matrices with Hermite and Smith normal forms, ℓ-contents and
//! kernels modulo m.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::numtheory::{is_prime, v_ell_big};
use crate::error::{Error, Result};

/// Dense integer matrix, row-major. Zero dimensions are allowed (an empty
/// generator list gives a 0-column exponent matrix).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.clone()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        self.data.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    /// Determinant of a square matrix (Bareiss fraction-free elimination).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(i) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(i, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let src_row = self.data[src].clone();
        for (d, s) in self.data[dst].iter_mut().zip(&src_row) {
            *d += k * s;
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in &mut self.data {
            let s = r[src].clone();
            r[dst] += k * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -std::mem::take(x);
        }
    }
}

/// Row-style Hermite normal form: returns (H, U) with U unimodular and
/// U·A = H in echelon form, pivots positive and the entries above each
/// pivot reduced into [0, pivot).
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut pr = 0;
    for col in 0..a.cols {
        if pr == a.rows {
            break;
        }
        let mut has_pivot = false;
        loop {
            let best = (pr..a.rows)
                .filter(|&i| !h.data[i][col].is_zero())
                .min_by_key(|&i| h.data[i][col].abs());
            let Some(i) = best else { break };
            has_pivot = true;
            h.swap_rows(pr, i);
            u.swap_rows(pr, i);
            let mut clean = true;
            for i in pr + 1..a.rows {
                if h.data[i][col].is_zero() {
                    continue;
                }
                let q = -h.data[i][col].div_floor(&h.data[pr][col]);
                h.add_row(i, pr, &q);
                u.add_row(i, pr, &q);
                clean &= h.data[i][col].is_zero();
            }
            if clean {
                break;
            }
        }
        if !has_pivot {
            continue;
        }
        if h.data[pr][col].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        for i in 0..pr {
            let q = -h.data[i][col].div_floor(&h.data[pr][col]);
            h.add_row(i, pr, &q);
            u.add_row(i, pr, &q);
        }
        pr += 1;
    }
    (h, u)
}

/// U·A·V = S with S diagonal, nonnegative, d₁ | d₂ | ….
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// The first min(rows, cols) diagonal entries (trailing zeros included).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s.data[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &s.data[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s.data[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SmithDecomposition { u, s, v };
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = -s.data[i][t].div_floor(&s.data[t][t]);
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= s.data[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = -s.data[t][j].div_floor(&s.data[t][t]);
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= s.data[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = s.data[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.data[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    s.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s.data[t][t].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, s, v }
}

/// v_ℓ of the gcd of a vector's entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EllContent {
    Finite(u32),
    Infinite,
}

impl EllContent {
    pub fn finite(self) -> Option<u32> {
        match self {
            EllContent::Finite(v) => Some(v),
            EllContent::Infinite => None,
        }
    }
}

pub fn ell_content(v: &[BigInt], ell: u64) -> Result<EllContent> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(match v_ell_big(&g, ell) {
        Some(d) => EllContent::Finite(d),
        None => EllContent::Infinite,
    })
}

/// Generators (as columns) of {x ∈ ℤ^cols : A·x ≡ 0 mod m}.
pub fn kernel_mod(a: &IntMatrix, m: u64) -> Result<IntMatrix> {
    if m == 0 {
        return Err(Error::InvalidParameter("kernel modulus must be positive".into()));
    }
    let sd = snf(a);
    let diag = sd.diagonal();
    let m = BigInt::from(m);
    let mut out = sd.v.clone();
    for j in 0..a.cols {
        let d = diag.get(j).cloned().unwrap_or_default();
        // d·y ≡ 0 mod m iff (m / gcd(d, m)) | y; d = 0 leaves y free
        let k = &m / d.gcd(&m);
        for i in 0..a.cols {
            out.data[i][j] *= &k;
        }
    }
    Ok(out)
}

/// Rank of A modulo a prime p.
pub fn rank_mod_prime(a: &IntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = a
        .data
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(&pb).to_u64().expect("reduced")).collect())
        .collect();
    let mut rank = 0;
    for col in 0..a.cols {
        let Some(piv) = (rank..a.rows).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, piv);
        let inv = crate::algebra::numtheory::pow_mod_u64(m[rank][col], (p - 2) as u128, p);
        for i in 0..a.rows {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col] * inv % p;
                for j in col..a.cols {
                    m[i][j] = (m[i][j] + p * p - f * m[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Invariant factors (those > 1) of ℤ^dim / L, L spanned by the given
/// vectors (as rows); `None` if the quotient is infinite.
pub fn quotient_invariants(generators: &[Vec<BigInt>], dim: usize) -> Option<Vec<BigInt>> {
    if dim == 0 {
        return Some(Vec::new());
    }
    let a = IntMatrix::from_rows(generators.to_vec(), dim);
    let diag = snf(&a).diagonal();
    if diag.len() < dim || diag.iter().any(Zero::is_zero) {
        return None;
    }
    Some(diag.into_iter().filter(|d| !d.is_one()).collect())
}

/// A sublattice of ℤ^dim kept as the nonzero rows of its Hermite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Sublattice {
    pub fn new(dim: usize) -> Self {
        Sublattice { dim, basis: Vec::new() }
    }

    /// m·ℤ^dim.
    pub fn scaled_identity(dim: usize, m: &BigInt) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { m.clone() } else { BigInt::zero() }).collect())
            .collect();
        Sublattice { dim, basis }
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.basis.clone(), self.dim)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        for row in &self.basis {
            let Some(c) = row.iter().position(|x| !x.is_zero()) else { continue };
            let (q, r) = w[c].div_rem(&row[c]);
            if !r.is_zero() {
                return false;
            }
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi -= &q * ri;
            }
        }
        w.iter().all(Zero::is_zero)
    }

    /// Adds a vector; returns whether the lattice grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        if self.contains(v) {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        let (h, _) = hnf(&IntMatrix::from_rows(rows, self.dim));
        self.basis = h.data.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        true
    }

    /// Invariant factors (> 1) of ℤ^dim / L; `None` if the index is infinite.
    pub fn quotient_invariants(&self) -> Option<Vec<BigInt>> {
        quotient_invariants(&self.basis, self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(hnf(&id), (id.clone(), id.clone()));
        let (h, u) = hnf(&m(&[vec![2], vec![4]]));
        assert_eq!(h, m(&[vec![2], vec![0]]));
        assert!(u.is_unimodular());
        let a = m(&[vec![1, 2], vec![3, 4]]);
        let (h, u) = hnf(&a);
        assert_eq!(u.mul(&a), h);
        assert_eq!((h.get(0, 0).clone(), h.get(1, 1).clone()), (BigInt::from(1), BigInt::from(2)));
        assert!(h.get(1, 0).is_zero());
        assert_eq!(h.get(0, 1), &BigInt::zero());
    }

    #[test]
    fn snf_examples() {
        let d = m(&[vec![2, 0], vec![0, 4]]);
        assert_eq!(snf(&d).s, d);
        let sd = snf(&m(&[vec![1, 1], vec![1, 3]]));
        assert_eq!(sd.diagonal(), big(&[1, 2]));
        let z = IntMatrix::zeros(2, 3);
        let sd = snf(&z);
        assert_eq!(sd.s, z);
        assert_eq!(sd.u, IntMatrix::identity(2));
        assert_eq!(sd.v, IntMatrix::identity(3));
        // diag(2, 3) is not in Smith form
        let sd = snf(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(sd.diagonal(), big(&[1, 6]));
    }

    #[test]
    fn ell_contents() {
        assert_eq!(ell_content(&big(&[4, 8, 12]), 2).unwrap(), EllContent::Finite(2));
        assert_eq!(ell_content(&big(&[3, 5]), 2).unwrap(), EllContent::Finite(0));
        assert_eq!(ell_content(&big(&[0, 0]), 3).unwrap(), EllContent::Infinite);
        assert!(ell_content(&big(&[1]), 4).is_err());
    }

    #[test]
    fn kernels() {
        let k = kernel_mod(&m(&[vec![2]]), 4).unwrap();
        assert_eq!(k, m(&[vec![2]]));
        let k = kernel_mod(&IntMatrix::identity(2), 5).unwrap();
        assert_eq!(quotient_invariants(&[k.column(0), k.column(1)], 2), Some(vec![BigInt::from(5); 2]));
        let a = m(&[vec![1, 1], vec![1, 3]]);
        let k = kernel_mod(&a, 2).unwrap();
        for j in 0..k.cols() {
            let col = k.column(j);
            assert!(a.mul_vec(&col).iter().all(|x| x.is_multiple_of(&BigInt::from(2))));
            let r: Vec<i64> = col.iter().map(|x| x.mod_floor(&BigInt::from(2)).to_i64().unwrap()).collect();
            assert!(r == vec![0, 0] || r == vec![1, 1]);
        }
    }

    #[test]
    fn sublattice_growth() {
        let mut l = Sublattice::scaled_identity(2, &BigInt::from(4));
        assert_eq!(l.quotient_invariants(), Some(big(&[4, 4])));
        assert!(l.insert(&big(&[2, 2])));
        assert!(!l.insert(&big(&[6, 2])));
        assert!(l.contains(&big(&[2, -2])));
        assert_eq!(l.quotient_invariants(), Some(big(&[2, 4])));
        assert_eq!(Sublattice::new(2).quotient_invariants(), None);
    }

    #[test]
    fn ranks_mod_p() {
        assert_eq!(rank_mod_prime(&m(&[vec![1, 1], vec![0, 2]]), 2), 1);
        assert_eq!(rank_mod_prime(&m(&[vec![1, 1], vec![0, 2]]), 3), 2);
        assert_eq!(rank_mod_prime(&m(&[vec![3], vec![6]]), 3), 0);
    }
}
