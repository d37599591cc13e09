//! Dense univariate polynomials over a [`Field`] context.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Zero;

use super::field::Field;

/// Degree of a polynomial; the zero polynomial has degree −∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree of a polynomial known to be nonzero.
    ///
    /// Panics on the zero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().finite().expect("degree of the zero polynomial")
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

impl<E: Ord> PartialOrd for Poly<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by degree, then lexicographically on coefficients
/// from the constant term up.
impl<E: Ord> Ord for Poly<E> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Polynomial arithmetic over a borrowed field context.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing<'a, F: Field> {
    pub field: &'a F,
}

impl<'a, F: Field> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        PolyRing { field }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> Poly<F::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn monomial(&self, c: F::Elem, degree: usize) -> Poly<F::Elem> {
        let mut coeffs = vec![self.field.zero(); degree];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    pub fn is_one(&self, f: &Poly<F::Elem>) -> bool {
        f.coeffs.len() == 1 && self.field.is_one(&f.coeffs[0])
    }

    pub fn is_monic(&self, f: &Poly<F::Elem>) -> bool {
        f.lc().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&zero);
                let y = b.coeffs.get(i).unwrap_or(&zero);
                self.field.add(x, y)
            })
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: &F::Elem, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let prod = self.field.mul(x, y);
                out[i + j] = self.field.add(&out[i + j], &prod);
            }
        }
        self.from_coeffs(out)
    }

    pub fn pow(&self, a: &Poly<F::Elem>, mut e: u64) -> Poly<F::Elem> {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn divrem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Option<(Poly<F::Elem>, Poly<F::Elem>)> {
        let lc_inv = self.field.inv(b.lc()?)?;
        if a.coeffs.len() < b.coeffs.len() {
            return Some((Poly::zero(), a.clone()));
        }
        let db = b.coeffs.len() - 1;
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.field.zero(); a.coeffs.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.field.mul(&rem[k + db], &lc_inv);
            if self.field.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                let t = self.field.mul(&c, bj);
                rem[k + j] = self.field.sub(&rem[k + j], &t);
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Some((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        self.divrem(a, b).map(|(_, r)| r)
    }

    /// Quotient when `b` divides `a` exactly.
    pub fn div_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        match self.divrem(a, b) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, b: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        self.div_exact(a, b).is_some()
    }

    /// Splits off the leading coefficient: f = lc · monic.
    pub fn monic(&self, f: &Poly<F::Elem>) -> (F::Elem, Poly<F::Elem>) {
        match f.lc() {
            None => (self.field.zero(), Poly::zero()),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                (lc.clone(), self.scale(&inv, f))
            }
        }
    }

    /// Monic gcd; the zero polynomial when both inputs are zero.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.monic(&x).1
    }

    /// Returns (g, s, t) with s·a + t·b = g, g monic (or zero).
    pub fn ext_gcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).expect("nonzero divisor");
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                (self.scale(&inv, &r0), self.scale(&inv, &s0), self.scale(&inv, &t0))
            }
        }
    }

    pub fn derivative(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        let coeffs = f
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(&self.field.from_i64(i as i64), c))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn eval(&self, f: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        f.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    /// f(g(x)).
    pub fn compose(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        f.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            self.add(&self.mul(&acc, g), &self.constant(c.clone()))
        })
    }

    pub fn mul_mod(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        m: &Poly<F::Elem>,
    ) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, a: &Poly<F::Elem>, exp: &BigUint, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let base = self.rem(a, m).expect("nonzero modulus");
        let mut acc = self.rem(&self.one(), m).expect("nonzero modulus");
        if exp.is_zero() {
            return acc;
        }
        for i in (0..exp.bits()).rev() {
            acc = self.mul_mod(&acc, &acc, m);
            if exp.bit(i) {
                acc = self.mul_mod(&acc, &base, m);
            }
        }
        acc
    }

    pub fn map<G: Field>(
        &self,
        target: &PolyRing<'_, G>,
        f: &Poly<F::Elem>,
        map: impl Fn(&F::Elem) -> G::Elem,
    ) -> Poly<G::Elem> {
        target.from_coeffs(f.coeffs.iter().map(map).collect())
    }

    /// Human-readable form in the given variable, highest degree first.
    pub fn format(&self, f: &Poly<F::Elem>, var: &str) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in f.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let cs = self.field.format_elem(c);
            let needs_parens = cs.contains(['+', ' ']) || cs[1..].contains('-');
            let cs = if needs_parens { format!("({cs})") } else { cs };
            let term = match i {
                0 => cs,
                _ => {
                    let mon = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if self.field.is_one(c) {
                        mon
                    } else if cs == "-1" {
                        format!("-{mon}")
                    } else {
                        format!("{cs}*{mon}")
                    }
                }
            };
            terms.push(term);
        }
        let mut out = String::new();
        for (k, t) in terms.iter().enumerate() {
            if k == 0 {
                out.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    }
}
