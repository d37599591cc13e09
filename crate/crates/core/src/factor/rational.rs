//! Zassenhaus factorization over ℚ: modular factorization at a good prime,
//! Hensel lifting past the Landau–Mignotte bound, subset recombination.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::intpoly::{self, ZPoly};
use crate::algebra::numtheory::is_prime;
use crate::algebra::{Field, Poly, PolyRing, PrimeField, Rationals};
use crate::error::{Error, Result};

use super::finite::factor_squarefree;
use super::Factorization;

pub fn factor_rational(f: &Poly<BigRational>) -> Result<Factorization<BigRational>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factor_rational"));
    }
    let q = Rationals;
    let ring = PolyRing::new(&q);
    let (unit, monic) = ring.monic(f);
    let mut factors = Vec::new();
    let (_, prim) = intpoly::from_rational(&monic);
    for (part, mult) in squarefree_integer(&prim) {
        for g in factor_squarefree_integer(&part) {
            let (_, g) = ring.monic(&intpoly::to_rational(&g));
            factors.push((g, mult));
        }
    }
    Ok(Factorization::sorted(unit, factors))
}

fn positive(mut f: ZPoly) -> ZPoly {
    if f.last().is_some_and(Signed::is_negative) {
        f.iter_mut().for_each(|c| *c = -&*c);
    }
    f
}

/// Whether g ∈ ℤ[x] is squarefree: a squarefree reduction modulo a prime not
/// dividing lc(g) settles it, otherwise an exact gcd with g′ does.
pub fn is_squarefree_integer(g: &[BigInt]) -> bool {
    let lc = g.last().expect("nonzero");
    let mut tried = 0;
    let mut p = 5u64;
    while tried < 8 {
        if is_prime(p) && !(lc % p).is_zero() {
            tried += 1;
            let field = PrimeField::new(p).expect("prime");
            let ring = PolyRing::new(&field);
            let fp = reduce(&field, g);
            if ring.gcd(&fp, &ring.derivative(&fp)).deg() == 0 {
                return true;
            }
        }
        p += 2;
    }
    intpoly::degree(&intpoly::gcd(g, &intpoly::derivative(g))) == Some(0)
}

/// Yun's squarefree decomposition of a primitive g with positive lc, using
/// exact division in ℤ[x]; parts are primitive with positive lc.
pub fn squarefree_integer(g: &[BigInt]) -> Vec<(ZPoly, u32)> {
    let g = positive(g.to_vec());
    if intpoly::degree(&g).unwrap_or(0) == 0 {
        return Vec::new();
    }
    if is_squarefree_integer(&g) {
        return vec![(g, 1)];
    }
    let dg = intpoly::derivative(&g);
    let b = positive(intpoly::gcd(&g, &dg));
    let exact = |a: &[BigInt], b: &[BigInt]| intpoly::div_exact(a, b).expect("exact division over ℤ");
    let mut c = exact(&g, &b);
    let mut d = sub(&exact(&dg, &b), &intpoly::derivative(&c));
    let mut out = Vec::new();
    let mut i = 1;
    while intpoly::degree(&c).unwrap_or(0) > 0 {
        let a = if d.is_empty() { c.clone() } else { positive(intpoly::gcd(&c, &d)) };
        c = exact(&c, &a);
        if intpoly::degree(&a).unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        let da = if d.is_empty() { d.clone() } else { exact(&d, &a) };
        d = sub(&da, &intpoly::derivative(&c));
        i += 1;
    }
    out
}

/// Irreducible factors in ℤ[x] of a primitive squarefree polynomial with
/// positive leading coefficient; each factor primitive with positive lc.
pub fn factor_squarefree_integer(g: &[BigInt]) -> Vec<ZPoly> {
    let n = intpoly::degree(g).expect("nonzero input");
    if n <= 1 {
        return vec![g.to_vec()];
    }
    let (p, fp) = good_prime(g);
    let field = PrimeField::new(p).expect("prime below 2^31");
    let ring = PolyRing::new(&field);
    let (_, monic) = ring.monic(&fp);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(p);
    let mut modular = factor_squarefree(&field, &monic, &mut rng);
    if modular.len() == 1 {
        return vec![g.to_vec()];
    }
    modular.sort();

    let bound = BigInt::from(2) * mignotte_bound(g);
    let pb = BigInt::from(p);
    let mut a = 1u32;
    let mut pa = pb.clone();
    while pa <= bound {
        pa *= &pb;
        a += 1;
    }
    let lifted = hensel_lift(g, &modular, p, a);
    recombine(g, lifted, &pa)
}

/// Smallest prime p ≥ 5 with p ∤ lc(g) and g mod p squarefree.
fn good_prime(g: &[BigInt]) -> (u64, Poly<u64>) {
    let lc = g.last().expect("nonzero");
    let mut p = 5u64;
    loop {
        if is_prime(p) && !(lc % p).is_zero() {
            let field = PrimeField::new(p).expect("prime");
            let fp = reduce(&field, g);
            let ring = PolyRing::new(&field);
            if ring.gcd(&fp, &ring.derivative(&fp)).deg() == 0 {
                return (p, fp);
            }
        }
        p += 2;
    }
}

/// |lc|·2ⁿ·‖g‖₂ (rounded up), bounding |lc|·(coefficients of any factor).
fn mignotte_bound(g: &[BigInt]) -> BigInt {
    let n = g.len() - 1;
    let norm_sq: BigInt = g.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    g.last().unwrap().abs() * (BigInt::one() << n) * norm
}

fn reduce(field: &PrimeField, g: &[BigInt]) -> Poly<u64> {
    let p = BigInt::from(field.p());
    let coeffs = g
        .iter()
        .map(|c| {
            let r = c.mod_floor(&p);
            r.iter_u64_digits().next().unwrap_or(0)
        })
        .collect();
    PolyRing::new(field).from_coeffs(coeffs)
}

fn lift_poly(f: &Poly<u64>) -> ZPoly {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_poly(f: &[BigInt], m: &BigInt) -> ZPoly {
    intpoly::trim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(f: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    intpoly::trim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    intpoly::trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    intpoly::trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn scale(c: &BigInt, f: &[BigInt]) -> ZPoly {
    intpoly::trim(f.iter().map(|x| x * c).collect())
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts g ≡ lc(g)·∏ uᵢ (mod p), uᵢ monic and pairwise coprime, to monic
/// factors modulo p^a.
fn hensel_lift(g: &[BigInt], factors: &[Poly<u64>], p: u64, a: u32) -> Vec<ZPoly> {
    let pa = num_traits::pow(BigInt::from(p), a as usize);
    if factors.len() == 1 {
        let inv = mod_inverse(g.last().unwrap(), &pa);
        return vec![mod_poly(&scale(&inv, g), &pa)];
    }
    let field = PrimeField::new(p).expect("prime");
    let ring = PolyRing::new(&field);
    let (left, right) = factors.split_at(factors.len() / 2);
    let a0 = left.iter().fold(ring.one(), |acc, u| ring.mul(&acc, u));
    let b0 = right.iter().fold(ring.one(), |acc, u| ring.mul(&acc, u));
    let (big_a, big_b) = lift_pair(g, &a0, &b0, p, a);
    let mut out = hensel_lift(&big_a, left, p, a);
    out.extend(hensel_lift(&big_b, right, p, a));
    out
}

/// Linear Hensel lifting of g ≡ lc·A·B (mod p) with A, B monic coprime.
fn lift_pair(g: &[BigInt], a0: &Poly<u64>, b0: &Poly<u64>, p: u64, a: u32) -> (ZPoly, ZPoly) {
    let field = PrimeField::new(p).expect("prime");
    let ring = PolyRing::new(&field);
    let (one, _, t) = ring.ext_gcd(a0, b0);
    debug_assert!(ring.is_one(&one));
    let lc = g.last().unwrap().clone();
    let lc_mod = reduce(&field, std::slice::from_ref(&lc));
    let lc_inv = field.inv(lc_mod.lc().expect("p does not divide lc")).expect("nonzero");
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    let mut big_a = lift_poly(a0);
    let mut big_b = lift_poly(b0);
    for _ in 1..a {
        let err = sub(g, &scale(&lc, &intpoly::mul(&big_a, &big_b)));
        let e: ZPoly = err.iter().map(|c| c / &m).collect();
        let e = ring.scale(&lc_inv, &reduce(&field, &e));
        let da = ring.rem(&ring.mul(&e, &t), a0).expect("nonzero");
        let db = ring.div_exact(&ring.sub(&e, &ring.mul(&da, b0)), a0).expect("Hensel step divides");
        big_a = add(&big_a, &scale(&m, &lift_poly(&da)));
        big_b = add(&big_b, &scale(&m, &lift_poly(&db)));
        m *= &pb;
        big_a = mod_poly(&big_a, &m);
        big_b = mod_poly(&big_b, &m);
    }
    (big_a, big_b)
}

fn recombine(g: &[BigInt], mut modular: Vec<ZPoly>, pa: &BigInt) -> Vec<ZPoly> {
    let mut rest = g.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= modular.len() {
        let mut hit = None;
        for subset in (0..modular.len()).combinations(size) {
            let lc = rest.last().unwrap().clone();
            let prod = subset.iter().fold(vec![lc], |acc, &i| mod_poly(&intpoly::mul(&acc, &modular[i]), pa));
            let candidate = intpoly::primitive_part(&symmetric(&prod, pa));
            if let Some(q) = intpoly::div_exact(&rest, &candidate) {
                hit = Some((subset, candidate, q));
                break;
            }
        }
        match hit {
            Some((subset, candidate, q)) => {
                found.push(candidate);
                rest = intpoly::primitive_part(&q);
                for &i in subset.iter().rev() {
                    modular.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if intpoly::degree(&rest).is_some_and(|d| d > 0) {
        found.push(rest);
    }
    found
}
