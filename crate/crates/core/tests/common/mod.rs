#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use kummer_core::algebra::ratfunc::RatFuncField;
use kummer_core::algebra::{Poly, PolyRing, PrimeField, RatFunc, Rationals};
use kummer_core::constfield::BaseField;
use kummer_core::funcfield::FactoredFunction;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random elements for test generation.
pub trait Sample: BaseField {
    fn coeff(&self, rng: &mut TestRng) -> Self::Elem;
    fn unit(&self, rng: &mut TestRng) -> Self::Elem;
    /// Monic irreducible polynomials of degree ≤ 2 for building factored inputs.
    fn places(&self) -> Vec<Poly<Self::Elem>>;
}

impl Sample for PrimeField {
    fn coeff(&self, rng: &mut TestRng) -> u64 {
        rng.gen_range(0..self.p())
    }

    fn unit(&self, rng: &mut TestRng) -> u64 {
        rng.gen_range(1..self.p())
    }

    fn places(&self) -> Vec<Poly<u64>> {
        let ring = PolyRing::new(self);
        let p = self.p() as i64;
        let mut out: Vec<_> = (0..p.min(6)).map(|a| ring.from_i64s(&[a, 1])).collect();
        // t² − a with a a non-residue
        if let Some(a) = (1..p).find(|a| (0..p).all(|x| (x * x - a).rem_euclid(p) != 0)) {
            out.push(ring.from_i64s(&[-a, 0, 1]));
        }
        out
    }
}

impl Sample for Rationals {
    fn coeff(&self, rng: &mut TestRng) -> BigRational {
        BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3)))
    }

    fn unit(&self, rng: &mut TestRng) -> BigRational {
        let n: i64 = *[-3, -2, -1, 1, 2, 3, 4, 6].choose(rng).unwrap();
        let d: i64 = *[1, 1, 1, 2, 3].choose(rng).unwrap();
        BigRational::new(n.into(), d.into())
    }

    fn places(&self) -> Vec<Poly<BigRational>> {
        let ring = PolyRing::new(self);
        let mut out: Vec<_> = (-2..=3).map(|a| ring.from_i64s(&[a, 1])).collect();
        out.push(ring.from_i64s(&[1, 0, 1]));
        out.push(ring.from_i64s(&[-2, 0, 1]));
        out.push(ring.from_i64s(&[1, 1, 1]));
        out
    }
}

pub fn random_poly<F: Sample>(field: &F, rng: &mut TestRng, deg: usize) -> Poly<F::Elem> {
    let ring = PolyRing::new(field);
    let mut coeffs: Vec<F::Elem> = (0..deg).map(|_| field.coeff(rng)).collect();
    coeffs.push(field.unit(rng));
    ring.from_coeffs(coeffs)
}

/// c·num/den with num, den of degree ≤ max_deg; constant with probability 1/4.
pub fn random_generator<F: Sample>(field: &F, rng: &mut TestRng, max_deg: usize) -> RatFunc<F::Elem> {
    let rf = RatFuncField::new(field);
    let c = rf.constant(field.unit(rng));
    if rng.gen_ratio(1, 4) {
        return c;
    }
    loop {
        let (dn, dd) = (rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg));
        let num = random_poly(field, rng, dn);
        let den = random_poly(field, rng, dd);
        let g = rf.mul(&c, &rf.new_fraction(num, den).expect("nonzero denominator"));
        if !g.is_zero() {
            return g;
        }
    }
}

/// A non-constant factored function on distinct places from the pool, with
/// exponents biased toward ℓ-power multiples.
pub fn random_factored<F: Sample>(field: &F, rng: &mut TestRng, ell: u64, max_factors: usize) -> FactoredFunction<F::Elem> {
    let mut places = field.places();
    places.shuffle(rng);
    let k = rng.gen_range(1..=max_factors);
    let mut factors = Vec::new();
    for p in places.into_iter().take(k) {
        let base: i64 = rng.gen_range(1..=3);
        let scale = (ell as i64).pow(rng.gen_range(0..=2));
        let mut e = (base * scale).min(12);
        if rng.gen_bool(0.5) {
            e = -e;
        }
        factors.push((p, e));
    }
    FactoredFunction::new(field.unit(rng), factors)
}

pub fn to_ratfunc<F: Sample>(field: &F, g: &FactoredFunction<F::Elem>) -> RatFunc<F::Elem> {
    g.to_ratfunc(field)
}

/// ∏ gⱼ^{xⱼ} computed in k(t).
pub fn power_product<F: Sample>(field: &F, gens: &[RatFunc<F::Elem>], exps: &[i64]) -> RatFunc<F::Elem> {
    let rf = RatFuncField::new(field);
    gens.iter().zip(exps).fold(rf.constant(field.one()), |acc, (g, &e)| rf.mul(&acc, &rf.pow(g, e).expect("nonzero")))
}

/// Random unimodular matrix as a product of elementary row operations.
pub fn random_unimodular(rng: &mut TestRng, n: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n == 0 {
        return u;
    }
    for _ in 0..rng.gen_range(1..=6) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = rng.gen_range(-2i64..=2);
                for c in 0..n {
                    u[i][c] += k * u[j][c];
                }
            }
            1 => u.swap(i, j),
            _ => u[i].iter_mut().for_each(|x| *x = -*x),
        }
    }
    u
}

/// ℓ ∈ {2, 3} different from p, n ∈ {1, 2}, and M = ℓⁿ or 2·ℓⁿ when allowed.
pub fn random_finite_instance(rng: &mut TestRng) -> (PrimeField, u64, u32, u64) {
    let p = *[3u64, 5, 7, 13].choose(rng).unwrap();
    let ell = if p == 3 { 2 } else { *[2u64, 3].choose(rng).unwrap() };
    let n = rng.gen_range(1..=2);
    let mut m = ell.pow(n);
    if p != 2 && ell != 2 && rng.gen_bool(0.3) {
        m *= 2;
    }
    (PrimeField::new(p).unwrap(), ell, n, m)
}
