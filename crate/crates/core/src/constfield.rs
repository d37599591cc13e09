//! Constant-field computations in k(ζ_M): ℓ-power membership, quotient
//! divisibility, and Kummer degrees of constant subgroups.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::algebra::numtheory::{euler_phi, factorize, gcd_u64, is_prime, multiplicative_order, v_ell_u128};
use crate::algebra::{
    cyclotomic_poly, CyclotomicRationals, Field, FieldDescriptor, FiniteField, GaloisField, Poly, PolyRing,
    PrimeField, Rationals,
};
use crate::error::{Error, Result};
use crate::factor::{factor_cyclotomic, factor_finite, Factor};
use crate::lattice::{hnf, IntMatrix, Sublattice};

/// Default number of membership tests an exhaustive search may spend.
pub const DEFAULT_BUDGET: u128 = 1 << 16;

/// [k(ζ_M) : k].
pub fn cyclotomic_degree(k: &FieldDescriptor, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidParameter("M must be positive".into()));
    }
    match *k {
        FieldDescriptor::Rationals => Ok(euler_phi(m)),
        FieldDescriptor::PrimeField(p) => {
            if m.is_multiple_of(p) {
                return Err(Error::CharacteristicDivides { characteristic: p, value: m });
            }
            Ok(multiplicative_order(p % m, m).expect("coprime"))
        }
    }
}

/// A model of k(ζ_M) with an exact ℓ-power membership test.
pub trait CycloField: Factor {
    fn cyclotomic_order(&self) -> u64;

    /// [k(ζ_M) : k].
    fn extension_degree(&self) -> usize;

    /// Whether `c` is an ℓ^t-th power; parameters already validated.
    fn ell_power_unchecked(&self, c: &Self::Elem, ell: u64, t: u32) -> Result<bool>;

    /// Human-readable description of the field model.
    fn describe(&self) -> String;
}

/// A constant field k together with its cyclotomic extensions.
pub trait BaseField: Factor {
    type Ext: CycloField;

    fn descriptor(&self) -> FieldDescriptor;

    fn cyclotomic_extension(&self, m: u64) -> Result<Self::Ext>;

    fn embed(&self, ext: &Self::Ext, a: &Self::Elem) -> <Self::Ext as Field>::Elem;

    fn embed_poly(&self, ext: &Self::Ext, p: &Poly<Self::Elem>) -> Poly<<Self::Ext as Field>::Elem> {
        PolyRing::new(self).map(&PolyRing::new(ext), p, |c| self.embed(ext, c))
    }

    /// A generating set of ⟨gens⟩ ⊆ k^× that depends only on the subgroup.
    fn canonical_constants(&self, gens: &[Self::Elem]) -> Vec<Self::Elem>;
}

impl CycloField for GaloisField {
    fn cyclotomic_order(&self) -> u64 {
        // recovered from the multiplicative order of the generator class
        let q = self.order() as u64;
        let z = self.generator();
        crate::algebra::numtheory::divisors(q - 1)
            .into_iter()
            .find(|&d| self.is_one(&self.pow_u64(&z, d)))
            .expect("order divides q - 1")
    }

    fn extension_degree(&self) -> usize {
        self.degree()
    }

    fn ell_power_unchecked(&self, c: &Vec<u64>, ell: u64, t: u32) -> Result<bool> {
        let q1 = self.order() - 1;
        // gcd(ℓ^t, q − 1) = ℓ^{min(t, v_ℓ(q − 1))}
        let g = (ell as u128).pow(t.min(v_ell_u128(q1, ell).expect("q > 1")));
        Ok(self.is_one(&self.pow(c, &BigUint::from(q1 / g))))
    }

    fn describe(&self) -> String {
        let ring = PolyRing::new(self.base());
        format!("F({})[z]/({})", self.base().p(), ring.format(self.modulus(), "z"))
    }
}

/// Whether an integer is a perfect k-th power (sign allowed for odd k).
fn is_perfect_power(n: &BigInt, k: u32) -> bool {
    if n.is_negative() && k.is_multiple_of(2) {
        return false;
    }
    let r = n.abs().nth_root(k);
    num_traits::pow(r, k as usize) == n.abs()
}

fn rational_ell_power(c: &BigRational, ell: u64, t: u32) -> bool {
    let k = (ell as u32).pow(t);
    is_perfect_power(c.numer(), k) && is_perfect_power(c.denom(), k)
}

impl CyclotomicRationals {
    /// Roots of x^ℓ − c lying in the field.
    fn ell_roots(&self, c: &[BigRational], ell: u64) -> Result<Vec<Vec<BigRational>>> {
        let ring = PolyRing::new(self);
        let f = ring.sub(&ring.monomial(self.one(), ell as usize), &ring.constant(c.to_vec()));
        let fac = factor_cyclotomic(self, &f)?;
        Ok(fac
            .factors
            .iter()
            .filter(|(p, _)| p.deg() == 1)
            .map(|(p, _)| self.neg(&p.coeffs()[0]))
            .collect())
    }

    fn ell_power_by_roots(&self, c: &[BigRational], ell: u64, t: u32) -> Result<bool> {
        if t == 0 {
            return Ok(true);
        }
        for y in self.ell_roots(c, ell)? {
            if self.ell_power_by_roots(&y, ell, t - 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl CycloField for CyclotomicRationals {
    fn cyclotomic_order(&self) -> u64 {
        self.order()
    }

    fn extension_degree(&self) -> usize {
        self.degree()
    }

    fn ell_power_unchecked(&self, c: &Vec<BigRational>, ell: u64, t: u32) -> Result<bool> {
        if ell != 2 {
            if let Some(r) = self.as_rational(c) {
                let fast = rational_ell_power(&r, ell, t);
                if cfg!(debug_assertions) {
                    let general = self.ell_power_by_roots(c, ell, t)?;
                    if general != fast {
                        return Err(Error::Inconsistent(format!(
                            "odd-ℓ rational criterion disagrees with root finding for {r}, ℓ = {ell}, t = {t}"
                        )));
                    }
                }
                return Ok(fast);
            }
        }
        self.ell_power_by_roots(c, ell, t)
    }

    fn describe(&self) -> String {
        let q = Rationals;
        format!("Q[zeta]/({})", PolyRing::new(&q).format(self.modulus(), "zeta"))
    }
}

impl BaseField for PrimeField {
    type Ext = GaloisField;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::PrimeField(self.p())
    }

    /// 𝔽_p[z]/(g), g the first irreducible factor of Φ_M mod p in canonical order.
    fn cyclotomic_extension(&self, m: u64) -> Result<GaloisField> {
        cyclotomic_degree(&self.descriptor(), m)?;
        let phi = cyclotomic_poly(m)?;
        let ring = PolyRing::new(self);
        let coeffs = phi
            .coeffs()
            .iter()
            .map(|c| self.reduce(c.to_integer().to_i64().expect("small cyclotomic coefficient")))
            .collect();
        let phi_p = ring.from_coeffs(coeffs);
        let fac = factor_finite(self, &phi_p, 0)?;
        let g = fac.factors.into_iter().next().expect("Φ_M has a factor").0;
        Ok(GaloisField::new(*self, g))
    }

    fn embed(&self, ext: &GaloisField, a: &u64) -> Vec<u64> {
        ext.embed(*a)
    }

    /// h^{(p−1)/|G₀|} with h the least primitive root.
    fn canonical_constants(&self, gens: &[u64]) -> Vec<u64> {
        let p = self.p();
        let order = gens
            .iter()
            .map(|&g| multiplicative_order(g, p).expect("nonzero constant"))
            .fold(1, |a, b| a / gcd_u64(a, b) * b);
        if order == 1 {
            return Vec::new();
        }
        let h = (1..p).find(|&h| multiplicative_order(h, p) == Some(p - 1)).expect("primitive root");
        vec![self.pow_u64(&h, (p - 1) / order)]
    }
}

impl BaseField for Rationals {
    type Ext = CyclotomicRationals;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn cyclotomic_extension(&self, m: u64) -> Result<CyclotomicRationals> {
        CyclotomicRationals::new(m)
    }

    fn embed(&self, ext: &CyclotomicRationals, a: &BigRational) -> Vec<BigRational> {
        ext.embed(a)
    }

    /// Hermite basis of the exponent lattice over the primes involved, with
    /// the sign as a final coordinate modulo 2.
    fn canonical_constants(&self, gens: &[BigRational]) -> Vec<BigRational> {
        let fallback = || {
            let mut out: Vec<BigRational> = gens.iter().filter(|g| !self.is_one(g)).cloned().collect();
            out.sort();
            out.dedup();
            out
        };
        let mut rows: Vec<(Vec<(u64, i64)>, bool)> = Vec::new();
        for g in gens {
            let parts = [g.numer(), g.denom()].map(|x| x.magnitude().to_u64().filter(|&v| v < TRIAL_DIVISION_LIMIT));
            let [Some(num), Some(den)] = parts else {
                return fallback();
            };
            let mut exps: Vec<(u64, i64)> = factorize(num).into_iter().map(|(q, e)| (q, e as i64)).collect();
            exps.extend(factorize(den).into_iter().map(|(q, e)| (q, -(e as i64))));
            rows.push((exps, g.is_negative()));
        }
        let mut primes: Vec<u64> = rows.iter().flat_map(|(e, _)| e.iter().map(|(q, _)| *q)).collect();
        primes.sort_unstable();
        primes.dedup();
        let width = primes.len() + 1;
        let mut matrix: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|(exps, negative)| {
                let mut row = vec![BigInt::from(0); width];
                for (q, e) in exps {
                    row[primes.binary_search(q).expect("collected")] += *e;
                }
                row[width - 1] = BigInt::from(i32::from(*negative));
                row
            })
            .collect();
        let mut two = vec![BigInt::from(0); width];
        two[width - 1] = BigInt::from(2);
        matrix.push(two);
        let (h, _) = hnf(&IntMatrix::from_rows(matrix, width));
        let mut out = Vec::new();
        for row in h.to_rows() {
            let mut value = BigRational::from_integer(BigInt::from(if row[width - 1].is_odd() { -1 } else { 1 }));
            for (q, e) in primes.iter().zip(&row) {
                let e = e.to_i32().expect("small exponent");
                value *= BigRational::from_integer(BigInt::from(*q)).pow(e);
            }
            if !self.is_one(&value) {
                out.push(value);
            }
        }
        out
    }
}

/// Constants with a numerator or denominator beyond this are not factored.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 40;

fn check_membership_params<F: CycloField>(field: &F, c: &F::Elem, ell: u64) -> Result<()> {
    if field.is_zero(c) {
        return Err(Error::ZeroInput("ℓ-power membership"));
    }
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if field.characteristic() == ell {
        return Err(Error::CharacteristicDivides { characteristic: ell, value: ell });
    }
    Ok(())
}

/// c ∈ (k(ζ_M)^×)^{ℓ^t}.
pub fn is_power_in_cyclotomic<F: CycloField>(c: &F::Elem, ell: u64, t: u32, field: &F) -> Result<bool> {
    check_membership_params(field, c, ell)?;
    if t == 0 {
        return Ok(true);
    }
    field.ell_power_unchecked(c, ell, t)
}

/// A finitely generated subgroup of k(ζ_M)^×.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantSubgroup<F: Field> {
    pub field: F,
    pub generators: Vec<F::Elem>,
}

impl<F: CycloField> ConstantSubgroup<F> {
    pub fn new(field: F, generators: Vec<F::Elem>) -> Result<Self> {
        if generators.iter().any(|g| field.is_zero(g)) {
            return Err(Error::ZeroInput("constant subgroup generator"));
        }
        Ok(ConstantSubgroup { field, generators })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    fn product(&self, exps: &[u64], sign: bool, base: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.generators.iter().zip(exps).fold(base.clone(), |acc, (g, &x)| {
            let p = f.pow_u64(g, x);
            if sign {
                f.div(&acc, &p).expect("nonzero")
            } else {
                f.mul(&acc, &p)
            }
        })
    }
}

/// The dᵢ of a quotient-divisibility search, capped at the caller's bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CappedDivisibility {
    Exact(u32),
    AtLeast(u32),
}

impl CappedDivisibility {
    /// min(d, cap) for use in formulas.
    pub fn truncated(self) -> u32 {
        match self {
            CappedDivisibility::Exact(d) | CappedDivisibility::AtLeast(d) => d,
        }
    }
}

/// Iterates over [0, base)^len in lexicographic order.
pub(crate) fn exponent_vectors(base: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (base as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    (0..total).map(move |mut i| {
        let mut v = vec![0; len];
        for x in v.iter_mut().rev() {
            *x = (i % base as u128) as u64;
            i /= base as u128;
        }
        v
    })
}

pub(crate) fn search_size(ell: u64, exponent: u32, rank: usize) -> Option<u128> {
    (ell as u128).checked_pow(exponent.checked_mul(rank as u32)?)
}

fn charge(needed: Option<u128>, budget: u128) -> Result<()> {
    match needed {
        Some(n) if n <= budget => Ok(()),
        Some(n) => Err(Error::BudgetExceeded { needed: n, budget }),
        None => Err(Error::BudgetExceeded { needed: u128::MAX, budget }),
    }
}

/// Largest d ≤ cap with c ∈ ⟨H⟩·(k(ζ_M)^×)^{ℓ^d}.
pub fn quotient_power_divisibility<F: CycloField>(
    c: &F::Elem,
    h: &ConstantSubgroup<F>,
    ell: u64,
    cap: u32,
    budget: u128,
) -> Result<CappedDivisibility> {
    let field = &h.field;
    check_membership_params(field, c, ell)?;
    if cap == 0 {
        return Err(Error::InvalidParameter("cap must be at least 1".into()));
    }
    let needed = (1..=cap).try_fold(0u128, |acc, d| acc.checked_add(search_size(ell, d, h.rank())?));
    charge(needed, budget)?;
    for d in 1..=cap {
        let ld = ell.pow(d);
        let mut found = false;
        for x in exponent_vectors(ld, h.rank()) {
            if field.ell_power_unchecked(&h.product(&x, true, c), ell, d)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(CappedDivisibility::Exact(d - 1));
        }
    }
    Ok(CappedDivisibility::AtLeast(cap))
}

/// Gal(k(ζ_M, ℓⁿ√G₀)/k(ζ_M)) ≅ G₀/(G₀ ∩ ℓⁿ-th powers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantKummer {
    pub degree: u128,
    pub invariant_factors: Vec<u128>,
    /// Basis (rows) of the relation lattice Λ ⊆ ℤ^{r₀}.
    pub relations: Vec<Vec<BigInt>>,
}

pub fn constant_kummer<F: CycloField>(
    g0: &ConstantSubgroup<F>,
    ell: u64,
    n: u32,
    budget: u128,
) -> Result<ConstantKummer> {
    let field = &g0.field;
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let m = field.cyclotomic_order();
    let ln = ell.checked_pow(n).ok_or_else(|| Error::InvalidParameter("ℓⁿ overflows".into()))?;
    if !m.is_multiple_of(ln) {
        return Err(Error::InvalidParameter(format!("ℓⁿ = {ln} does not divide M = {m}")));
    }
    let r0 = g0.rank();
    charge(search_size(ell, n, r0), budget)?;
    let mut lattice = Sublattice::scaled_identity(r0, &BigInt::from(ln));
    for x in exponent_vectors(ln, r0) {
        let v: Vec<BigInt> = x.iter().map(|&e| BigInt::from(e)).collect();
        if lattice.contains(&v) {
            continue;
        }
        if field.ell_power_unchecked(&g0.product(&x, false, &field.one()), ell, n)? {
            lattice.insert(&v);
        }
    }
    let invariant_factors: Vec<u128> = lattice
        .quotient_invariants()
        .expect("ℓⁿℤ^r ⊆ Λ")
        .iter()
        .map(|d| d.to_u128().expect("bounded by ℓⁿ"))
        .collect();
    let degree = invariant_factors.iter().product();
    Ok(ConstantKummer { degree, invariant_factors, relations: lattice.basis().to_vec() })
}

/// gcd(M, char k) = 1 check shared by the engine and the oracle.
pub fn check_modulus(k: &FieldDescriptor, m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameter("M must be positive".into()));
    }
    let p = k.characteristic();
    if p != 0 && gcd_u64(m, p) != 1 {
        return Err(Error::CharacteristicDivides { characteristic: p, value: m });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn degrees() {
        assert_eq!(cyclotomic_degree(&FieldDescriptor::PrimeField(5), 4).unwrap(), 1);
        assert_eq!(cyclotomic_degree(&FieldDescriptor::Rationals, 8).unwrap(), 4);
        assert_eq!(cyclotomic_degree(&FieldDescriptor::PrimeField(5), 16).unwrap(), 4);
        assert!(cyclotomic_degree(&FieldDescriptor::PrimeField(5), 10).is_err());
    }

    #[test]
    fn canonical_constant_generators() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.canonical_constants(&[2]), f7.canonical_constants(&[4]));
        assert_eq!(f7.canonical_constants(&[2, 6]), vec![3]);
        assert!(f7.canonical_constants(&[1, 1]).is_empty());
        let q = Rationals;
        let r = |n, d| crate::algebra::rational::rat(n, d);
        assert_eq!(q.canonical_constants(&[int(-2)]), vec![int(-2)]);
        assert_eq!(q.canonical_constants(&[int(-2), int(1)]), q.canonical_constants(&[int(4), int(-2)]));
        assert_eq!(q.canonical_constants(&[int(6), int(2)]), q.canonical_constants(&[int(3), r(1, 2)]));
        assert_eq!(q.canonical_constants(&[int(-1), int(-1)]), vec![int(-1)]);
        assert!(q.canonical_constants(&[int(1)]).is_empty());
    }

    #[test]
    fn finite_field_models() {
        let f5 = PrimeField::new(5).unwrap();
        for m in [1, 2, 3, 4, 8, 12, 16, 24] {
            let ext = f5.cyclotomic_extension(m).unwrap();
            assert_eq!(ext.cyclotomic_order(), m);
            assert_eq!(ext.degree() as u64, cyclotomic_degree(&FieldDescriptor::PrimeField(5), m).unwrap());
        }
    }

    #[test]
    fn rational_membership_examples() {
        let q4 = CyclotomicRationals::new(4).unwrap();
        assert!(is_power_in_cyclotomic(&q4.embed(&int(-4)), 2, 2, &q4).unwrap());
        let q8 = CyclotomicRationals::new(8).unwrap();
        assert!(is_power_in_cyclotomic(&q8.embed(&int(2)), 2, 1, &q8).unwrap());
        let q9 = CyclotomicRationals::new(9).unwrap();
        assert!(!is_power_in_cyclotomic(&q9.embed(&int(2)), 3, 1, &q9).unwrap());
        assert!(is_power_in_cyclotomic(&q9.embed(&int(-8)), 3, 1, &q9).unwrap());
        assert!(is_power_in_cyclotomic(&q9.embed(&int(3)), 3, 0, &q9).unwrap());
        assert!(is_power_in_cyclotomic(&q9.zero(), 3, 1, &q9).is_err());
        // -1 is a square but not a 4th power in Q(i)
        assert!(is_power_in_cyclotomic(&q4.embed(&int(-1)), 2, 1, &q4).unwrap());
        assert!(!is_power_in_cyclotomic(&q4.embed(&int(-1)), 2, 2, &q4).unwrap());
    }

    #[test]
    fn finite_membership_matches_enumeration() {
        for (p, m) in [(5u64, 4u64), (7, 3), (3, 8), (13, 4), (2, 3)] {
            let k = PrimeField::new(p).unwrap();
            let ext = k.cyclotomic_extension(m).unwrap();
            for ell in [2u64, 3] {
                if ell == p {
                    continue;
                }
                for t in 0..3 {
                    let e = ell.pow(t);
                    let powers: std::collections::HashSet<_> =
                        ext.elements().skip(1).map(|x| ext.pow_u64(&x, e)).collect();
                    for c in ext.elements().skip(1) {
                        assert_eq!(is_power_in_cyclotomic(&c, ell, t, &ext).unwrap(), powers.contains(&c));
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_divisibility_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let ext = f5.cyclotomic_extension(4).unwrap();
        let trivial = ConstantSubgroup::new(ext.clone(), vec![]).unwrap();
        let d = quotient_power_divisibility(&ext.embed(4), &trivial, 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(d, CappedDivisibility::Exact(1));
        let h = ConstantSubgroup::new(ext.clone(), vec![ext.embed(4)]).unwrap();
        let d = quotient_power_divisibility(&ext.one(), &h, 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(d, CappedDivisibility::AtLeast(3));
        let d = quotient_power_divisibility(&ext.embed(2), &h, 2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(d, CappedDivisibility::Exact(0));
    }

    #[test]
    fn constant_kummer_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let ext = f5.cyclotomic_extension(4).unwrap();
        let g = ConstantSubgroup::new(ext.clone(), vec![ext.embed(2)]).unwrap();
        let ck = constant_kummer(&g, 2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!((ck.degree, ck.invariant_factors), (4, vec![4]));
        let trivial = ConstantSubgroup::new(ext.clone(), vec![]).unwrap();
        assert_eq!(constant_kummer(&trivial, 2, 2, DEFAULT_BUDGET).unwrap().degree, 1);
        let g = ConstantSubgroup::new(ext.clone(), vec![ext.embed(4)]).unwrap();
        let ck = constant_kummer(&g, 2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!((ck.degree, ck.invariant_factors), (2, vec![2]));
        assert!(constant_kummer(&g, 2, 3, DEFAULT_BUDGET).is_err());
        assert!(matches!(constant_kummer(&g, 2, 2, 1), Err(Error::BudgetExceeded { .. })));
    }
}
