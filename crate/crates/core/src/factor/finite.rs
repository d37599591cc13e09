//! Squarefree, distinct-degree and Cantor–Zassenhaus equal-degree
//! factorization over finite fields.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::squarefree;
use crate::algebra::{FiniteField, Poly, PolyRing};
use crate::error::{Error, Result};

use super::Factorization;

pub fn factor_finite<F: FiniteField>(field: &F, f: &Poly<F::Elem>, seed: u64) -> Result<Factorization<F::Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factor_finite"));
    }
    let ring = PolyRing::new(field);
    let (unit, monic) = ring.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree::finite(field, &monic) {
        for g in factor_squarefree(field, &part, &mut rng) {
            factors.push((g, mult));
        }
    }
    Ok(Factorization::sorted(unit, factors))
}

/// Irreducible factors of a monic squarefree polynomial.
pub fn factor_squarefree<F: FiniteField, R: Rng>(field: &F, f: &Poly<F::Elem>, rng: &mut R) -> Vec<Poly<F::Elem>> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(field, f) {
        equal_degree(field, &g, d, rng, &mut out);
    }
    out
}

/// Splits a monic squarefree f into products of irreducibles of equal degree.
pub fn distinct_degree<F: FiniteField>(field: &F, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let ring = PolyRing::new(field);
    let q = BigUint::from(field.order());
    let mut out = Vec::new();
    let mut rest = f.clone();
    if rest.deg() == 0 {
        return out;
    }
    let mut h = ring.rem(&ring.x(), &rest).expect("nonzero modulus");
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = ring.pow_mod(&h, &q, &rest);
        let g = ring.gcd(&rest, &ring.sub(&h, &ring.x()));
        if g.deg() > 0 {
            rest = ring.div_exact(&rest, &g).expect("gcd divides");
            h = ring.rem(&h, &rest).expect("nonzero modulus");
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

fn equal_degree<F: FiniteField, R: Rng>(
    field: &F,
    f: &Poly<F::Elem>,
    d: usize,
    rng: &mut R,
    out: &mut Vec<Poly<F::Elem>>,
) {
    let n = f.deg();
    if n == d {
        out.push(f.clone());
        return;
    }
    let ring = PolyRing::new(field);
    let q = field.order();
    let qd = BigUint::from(q).pow(d as u32);
    loop {
        let a = ring.from_coeffs((0..n).map(|_| field.random_elem(rng)).collect());
        if a.is_zero() || a.deg() == 0 {
            continue;
        }
        let b = if q % 2 == 1 {
            let e = (&qd - BigUint::one()) >> 1;
            ring.sub(&ring.pow_mod(&a, &e, f), &ring.one())
        } else {
            trace(field, &a, f, qd.bits() - 1)
        };
        let g = ring.gcd(f, &b);
        if g.deg() > 0 && g.deg() < n {
            let h = ring.div_exact(f, &g).expect("gcd divides");
            equal_degree(field, &g, d, rng, out);
            equal_degree(field, &h, d, rng, out);
            return;
        }
    }
}

/// a + a² + a⁴ + … + a^{2^{k−1}} mod f, in characteristic 2.
fn trace<F: FiniteField>(field: &F, a: &Poly<F::Elem>, f: &Poly<F::Elem>, k: u64) -> Poly<F::Elem> {
    let ring = PolyRing::new(field);
    let mut term = ring.rem(a, f).expect("nonzero modulus");
    let mut acc = term.clone();
    for _ in 1..k {
        term = ring.mul_mod(&term, &term, f);
        acc = ring.add(&acc, &term);
    }
    acc
}
