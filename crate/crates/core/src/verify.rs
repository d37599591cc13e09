//! Exhaustive oracle for the radical quotient G·K*^{ℓⁿ}/K*^{ℓⁿ}, computed
//! over k(ζ_M)(t) by direct factorization and enumeration.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{Field, RatFunc};
use crate::constfield::{check_modulus, search_size, BaseField, CycloField};
use crate::error::{Error, Result};
use crate::factor::Factor;
use crate::funcfield::{joint_support, FactoredFunction};
use crate::lattice::Sublattice;

/// ℤ^rank/Λ, with Λ the relation lattice of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalQuotient {
    pub rank: usize,
    pub lattice: Vec<Vec<BigInt>>,
    pub invariant_factors: Vec<u128>,
    pub degree: u128,
}

/// Factors a rational function of k(t) over the extension field.
pub fn factor_over<F: BaseField>(
    field: &F,
    ext: &F::Ext,
    g: &RatFunc<F::Elem>,
    seed: u64,
) -> Result<FactoredFunction<<F::Ext as Field>::Elem>> {
    if g.is_zero() {
        return Err(Error::ZeroInput("generator"));
    }
    let mut unit = ext.one();
    let mut factors = Vec::new();
    for (part, sign) in [(g.numerator(), 1i64), (g.denominator(), -1)] {
        let mut by_base = Factor::factor(field, part, seed)?;
        let u = field.embed(ext, &by_base.unit);
        unit = if sign > 0 { ext.mul(&unit, &u) } else { ext.div(&unit, &u).expect("nonzero unit") };
        for (p, e) in by_base.factors.drain(..) {
            let over_ext = ext.factor(&field.embed_poly(ext, &p), seed)?;
            let ue = ext.pow_u64(&over_ext.unit, e as u64);
            unit = if sign > 0 { ext.mul(&unit, &ue) } else { ext.div(&unit, &ue).expect("nonzero unit") };
            for (q, f) in over_ext.factors {
                factors.push((q, sign * (e as i64) * (f as i64)));
            }
        }
    }
    Ok(FactoredFunction::new(unit, factors))
}

/// Whether g is an ℓ^j-th power in k(ζ_M)(t).
pub fn member_of_powers<X: CycloField>(ext: &X, g: &FactoredFunction<X::Elem>, ell: u64, j: u32) -> Result<bool> {
    let m = (ell as i64).pow(j);
    if g.factors().iter().any(|(_, e)| e % m != 0) {
        return Ok(false);
    }
    ext.ell_power_unchecked(g.unit(), ell, j)
}

fn exponent_rows<E: Clone + Ord>(gens: &[FactoredFunction<E>]) -> Vec<Vec<i64>> {
    let support = joint_support(gens);
    gens.iter().map(|g| support.iter().map(|p| g.exponent(p)).collect()).collect()
}

fn quotient_from(lattice: Sublattice, rank: usize) -> RadicalQuotient {
    let invariant_factors: Vec<u128> = lattice
        .quotient_invariants()
        .expect("contains ℓⁿℤ^rank")
        .iter()
        .map(|d| d.to_u128().expect("bounded by ℓ^{n·rank}"))
        .collect();
    let degree = invariant_factors.iter().product();
    RadicalQuotient { rank, lattice: lattice.basis().to_vec(), invariant_factors, degree }
}

/// Visits every x ∈ [0, ℓⁿ)^rank, inserting those accepted by `relation`.
fn enumerate(
    rank: usize,
    ln: u64,
    mut relation: impl FnMut(&[u64]) -> Result<bool>,
) -> Result<Sublattice> {
    let mut lattice = Sublattice::scaled_identity(rank, &BigInt::from(ln));
    let mut x = vec![0u64; rank];
    loop {
        let mut i = 0;
        while i < rank && x[i] + 1 == ln {
            x[i] = 0;
            i += 1;
        }
        if i == rank {
            break;
        }
        x[i] += 1;
        let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        if !lattice.contains(&v) && relation(&x)? {
            lattice.insert(&v);
        }
    }
    Ok(lattice)
}

fn check_search(ell: u64, n: u32, rank: usize, budget: u128) -> Result<u64> {
    let needed = search_size(ell, n, rank).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    ell.checked_pow(n).ok_or_else(|| Error::InvalidParameter("ℓⁿ overflows".into()))
}

/// The radical quotient for ℓⁿ, computed without any divisibility theory.
pub fn brute_force_report<F: BaseField>(
    field: &F,
    m: u64,
    generators: &[RatFunc<F::Elem>],
    ell: u64,
    n: u32,
    seed: u64,
    budget: u128,
) -> Result<RadicalQuotient> {
    check_modulus(&field.descriptor(), m)?;
    let rank = generators.len();
    let ln = check_search(ell, n, rank, budget)?;
    if !m.is_multiple_of(ln) {
        return Err(Error::InvalidParameter(format!("ℓⁿ = {ln} does not divide M = {m}")));
    }
    let ext = field.cyclotomic_extension(m)?;
    let gens = generators
        .iter()
        .map(|g| factor_over(field, &ext, g, seed))
        .collect::<Result<Vec<_>>>()?;
    let rows = exponent_rows(&gens);
    let cols = rows.first().map_or(0, Vec::len);
    let mut memo: BTreeMap<<F::Ext as Field>::Elem, bool> = BTreeMap::new();
    let lattice = enumerate(rank, ln, |x| {
        let divisible = (0..cols).all(|j| {
            let s: i128 = x.iter().zip(&rows).map(|(&c, r)| c as i128 * r[j] as i128).sum();
            s % ln as i128 == 0
        });
        if !divisible {
            return Ok(false);
        }
        let unit = x.iter().zip(&gens).fold(ext.one(), |acc, (&c, g)| ext.mul(&acc, &ext.pow_u64(g.unit(), c)));
        if let Some(&hit) = memo.get(&unit) {
            return Ok(hit);
        }
        let hit = ext.ell_power_unchecked(&unit, ell, n)?;
        memo.insert(unit, hit);
        Ok(hit)
    })?;
    Ok(quotient_from(lattice, rank))
}

/// Exponent-only variant: relations among the images of non-constant
/// functions in the free part of K̄*/K̄*^{ℓⁿ}.
pub fn geometric_brute_force<E: Clone + Ord>(
    gens: &[FactoredFunction<E>],
    ell: u64,
    n: u32,
    budget: u128,
) -> Result<RadicalQuotient> {
    let rank = gens.len();
    let ln = check_search(ell, n, rank, budget)?;
    let rows = exponent_rows(gens);
    let cols = rows.first().map_or(0, Vec::len);
    let lattice = enumerate(rank, ln, |x| {
        Ok((0..cols).all(|j| {
            let s: BigInt = x.iter().zip(&rows).map(|(&c, r)| BigInt::from(c) * r[j]).sum();
            (s % ln).is_zero()
        }))
    })?;
    Ok(quotient_from(lattice, rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratfunc::RatFuncField;
    use crate::algebra::{PolyRing, PrimeField, Rationals};
    use crate::algebra::rational::int;

    #[test]
    fn f5_examples() {
        let k = PrimeField::new(5).unwrap();
        let rk = RatFuncField::new(&k);
        let ring = PolyRing::new(&k);
        let t2 = rk.from_poly(ring.monomial(2, 2));
        let q = brute_force_report(&k, 4, &[t2], 2, 2, 0, 1 << 16).unwrap();
        assert_eq!(q.invariant_factors, vec![4]);
        assert_eq!(q.degree, 4);
        let two = rk.constant(2);
        let q = brute_force_report(&k, 4, &[two], 2, 2, 0, 1 << 16).unwrap();
        assert_eq!(q.degree, 4);
        let four = rk.constant(4);
        let q = brute_force_report(&k, 4, &[four], 2, 2, 0, 1 << 16).unwrap();
        assert_eq!(q.degree, 2);
    }

    #[test]
    fn rational_examples() {
        let q = Rationals;
        let rq = RatFuncField::new(&q);
        let ring = PolyRing::new(&q);
        let four_t4 = rq.from_poly(ring.monomial(int(4), 4));
        let r = brute_force_report(&q, 2, &[four_t4], 2, 1, 0, 1 << 16).unwrap();
        assert_eq!(r.degree, 1);
        let t = rq.t();
        let r = brute_force_report(&q, 6, &[t.clone(), rq.mul(&t, &t)], 3, 1, 0, 1 << 16).unwrap();
        assert_eq!(r.invariant_factors, vec![3]);
    }

    #[test]
    fn geometric_examples() {
        let k = PrimeField::new(5).unwrap();
        let ring = PolyRing::new(&k);
        let t = ring.from_i64s(&[0, 1]);
        let t1 = ring.from_i64s(&[1, 1]);
        let a = FactoredFunction::new(1u64, [(t.clone(), 2)]);
        let b = FactoredFunction::new(1u64, [(t1, 1)]);
        let q = geometric_brute_force(&[a, b], 2, 2, 1 << 16).unwrap();
        assert_eq!(q.invariant_factors, vec![2, 4]);
    }

    #[test]
    fn budget_refusal() {
        let q = Rationals;
        let rq = RatFuncField::new(&q);
        let gens = vec![rq.t(); 5];
        let err = brute_force_report(&q, 16, &gens, 2, 4, 0, 1 << 16).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
