//! The rational function field K = k(t): factored forms, valuations,
//! ℓ-divisibility modulo constants and ℓ-good bases.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::numtheory::{is_prime, v_ell_big, v_ell_i64};
use crate::algebra::{Field, Poly, PolyRing, RatFunc};
use crate::algebra::ratfunc::RatFuncField;
use crate::error::{Error, Result};
use crate::factor::Factor;
use crate::lattice::{hnf, rank_mod_prime, snf, IntMatrix};

/// c · ∏ Pᵢ^{nᵢ} with the Pᵢ distinct monic irreducibles in canonical order
/// and every nᵢ nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredFunction<E> {
    unit: E,
    factors: Vec<(Poly<E>, i64)>,
}

impl<E: Clone + Ord> FactoredFunction<E> {
    /// Merges repeated places and drops zero exponents. The polynomials must
    /// already be monic irreducible.
    pub fn new(unit: E, factors: impl IntoIterator<Item = (Poly<E>, i64)>) -> Self {
        let mut merged: BTreeMap<Poly<E>, i64> = BTreeMap::new();
        for (p, e) in factors {
            *merged.entry(p).or_default() += e;
        }
        FactoredFunction { unit, factors: merged.into_iter().filter(|(_, e)| *e != 0).collect() }
    }

    pub fn constant(unit: E) -> Self {
        FactoredFunction { unit, factors: Vec::new() }
    }

    pub fn unit(&self) -> &E {
        &self.unit
    }

    pub fn factors(&self) -> &[(Poly<E>, i64)] {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, place: &Poly<E>) -> i64 {
        self.factors.iter().find(|(p, _)| p == place).map_or(0, |(_, e)| *e)
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        Self::new(
            field.mul(&self.unit, &other.unit),
            self.factors.iter().chain(&other.factors).cloned(),
        )
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, e: i64) -> Self {
        FactoredFunction {
            unit: field.pow_i64(&self.unit, e).expect("nonzero unit"),
            factors: if e == 0 {
                Vec::new()
            } else {
                self.factors.iter().map(|(p, n)| (p.clone(), n.checked_mul(e).expect("exponent overflow"))).collect()
            },
        }
    }

    /// ∏ elems[i]^{exps[i]}.
    pub fn power_product<F: Field<Elem = E>>(field: &F, elems: &[Self], exps: &[BigInt]) -> Self {
        assert_eq!(elems.len(), exps.len());
        elems.iter().zip(exps).fold(Self::constant(field.one()), |acc, (g, x)| {
            acc.mul(field, &g.pow(field, x.to_i64().expect("exponent fits in i64")))
        })
    }

    pub fn to_ratfunc<F: Field<Elem = E> + crate::algebra::PolyAlgorithms>(&self, field: &F) -> RatFunc<E> {
        let ring = PolyRing::new(field);
        let mut num = ring.constant(self.unit.clone());
        let mut den = ring.one();
        for (p, e) in &self.factors {
            if *e > 0 {
                num = ring.mul(&num, &ring.pow(p, *e as u64));
            } else {
                den = ring.mul(&den, &ring.pow(p, e.unsigned_abs()));
            }
        }
        RatFuncField::new(field).new_fraction(num, den).expect("nonzero denominator")
    }

    /// Expression form such as `2*t^2*(t + 1)^-1`, readable back by the CLI parser.
    pub fn format<F: Field<Elem = E>>(&self, field: &F, var: &str) -> String {
        let ring = PolyRing::new(field);
        let mut parts = Vec::new();
        if !field.is_one(&self.unit) || self.factors.is_empty() {
            let u = field.format_elem(&self.unit);
            parts.push(if self.factors.is_empty() || !u.contains(['+', ' ']) { u } else { format!("({u})") });
        }
        for (p, e) in &self.factors {
            let base = ring.format(p, var);
            let base = if base == var { base } else { format!("({base})") };
            parts.push(if *e == 1 { base } else { format!("{base}^{e}") });
        }
        parts.join("*")
    }
}

/// A place of k(t): a monic irreducible polynomial, or the place at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place<E> {
    Finite(Poly<E>),
    Infinite,
}

impl<E: Ord> PartialOrd for Place<E> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite places in canonical polynomial order, infinity last.
impl<E: Ord> Ord for Place<E> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Infinite) => Ordering::Less,
            (Place::Infinite, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinite, Place::Infinite) => Ordering::Equal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationVector<E> {
    pub support: Vec<Place<E>>,
    pub values: Vec<i64>,
}

impl<E: Clone + Ord> ValuationVector<E> {
    pub fn value(&self, place: &Place<E>) -> i64 {
        self.support.iter().position(|p| p == place).map_or(0, |i| self.values[i])
    }
}

/// α = c · β^{ℓ^D} with β ℓ-indivisible modulo constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityDecomposition<E> {
    pub d: u32,
    pub c: E,
    pub beta: FactoredFunction<E>,
}

/// An ℓ-good basis modulo constants of G′, ordered with D ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodBasis<E> {
    pub alphas: Vec<FactoredFunction<E>>,
    pub d: Vec<u32>,
    pub c: Vec<E>,
    pub betas: Vec<FactoredFunction<E>>,
    /// Column j holds the exponents of α_j in the input generators.
    pub v: IntMatrix,
    /// Smith diagonal of the exponent matrix, in basis order.
    pub smith_diagonal: Vec<BigInt>,
}

/// The result of splitting G into constants and a complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantSplit<E> {
    pub g0: Vec<E>,
    pub gprime: Vec<FactoredFunction<E>>,
    /// Rows give the new generators (G′ first, then the constant relations)
    /// as exponent vectors in the inputs.
    pub transform: IntMatrix,
}

pub fn normalize<F: Factor>(field: &F, f: &RatFunc<F::Elem>, seed: u64) -> Result<FactoredFunction<F::Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("normalize"));
    }
    let num = field.factor(f.numerator(), seed)?;
    let den = field.factor(f.denominator(), seed)?;
    let unit = field.div(&num.unit, &den.unit).expect("nonzero");
    let factors = num
        .factors
        .into_iter()
        .map(|(p, e)| (p, e as i64))
        .chain(den.factors.into_iter().map(|(p, e)| (p, -(e as i64))));
    Ok(FactoredFunction::new(unit, factors))
}

pub fn valuation_vector<E: Clone + Ord>(
    f: &FactoredFunction<E>,
    extra_support: &[Place<E>],
) -> ValuationVector<E> {
    let mut values: BTreeMap<Place<E>, i64> = BTreeMap::new();
    for p in extra_support {
        values.insert(p.clone(), 0);
    }
    let mut at_infinity = 0;
    for (p, e) in &f.factors {
        values.insert(Place::Finite(p.clone()), *e);
        at_infinity -= e * p.deg() as i64;
    }
    values.insert(Place::Infinite, at_infinity);
    let (support, values) = values.into_iter().unzip();
    ValuationVector { support, values }
}

fn check_ell<F: Field>(field: &F, ell: u64) -> Result<()> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if field.characteristic() == ell {
        return Err(Error::CharacteristicDivides { characteristic: ell, value: ell });
    }
    Ok(())
}

pub fn divisibility_parameter<F: Field>(
    field: &F,
    alpha: &FactoredFunction<F::Elem>,
    ell: u64,
) -> Result<DivisibilityDecomposition<F::Elem>> {
    check_ell(field, ell)?;
    if alpha.is_constant() {
        return Err(Error::ConstantInput);
    }
    let d = alpha.factors.iter().map(|(_, e)| v_ell_i64(*e, ell).expect("nonzero")).min().expect("nonconstant");
    let q = (ell as i64).pow(d);
    let beta = FactoredFunction {
        unit: field.one(),
        factors: alpha.factors.iter().map(|(p, e)| (p.clone(), e / q)).collect(),
    };
    Ok(DivisibilityDecomposition { d, c: alpha.unit.clone(), beta })
}

/// Sorted union of the finite places of the given elements.
pub fn joint_support<E: Clone + Ord>(elems: &[FactoredFunction<E>]) -> Vec<Poly<E>> {
    let mut places: Vec<Poly<E>> = elems.iter().flat_map(|g| g.factors.iter().map(|(p, _)| p.clone())).collect();
    places.sort();
    places.dedup();
    places
}

/// Places × elements matrix of exponents over the joint finite support.
pub fn exponent_matrix<E: Clone + Ord>(elems: &[FactoredFunction<E>]) -> (Vec<Poly<E>>, IntMatrix) {
    let support = joint_support(elems);
    let rows = support
        .iter()
        .map(|p| elems.iter().map(|g| BigInt::from(g.exponent(p))).collect())
        .collect();
    (support, IntMatrix::from_rows(rows, elems.len()))
}

pub fn is_ell_independent<F: Field>(field: &F, elems: &[FactoredFunction<F::Elem>], ell: u64) -> Result<bool> {
    check_ell(field, ell)?;
    let (_, a) = exponent_matrix(elems);
    Ok(rank_mod_prime(&a, ell) == elems.len())
}

fn pow_big<F: Field>(field: &F, a: &F::Elem, e: &BigInt) -> F::Elem {
    let base = if e.is_negative() { field.inv(a).expect("nonzero") } else { a.clone() };
    field.pow(&base, &e.magnitude().clone())
}

pub fn split_constants<F: Field>(field: &F, gens: &[FactoredFunction<F::Elem>]) -> ConstantSplit<F::Elem> {
    let (_, a) = exponent_matrix(gens);
    let (h, u) = hnf(&a.transpose());
    let mut g0 = Vec::new();
    let mut gprime = Vec::new();
    for j in 0..gens.len() {
        let exps = u.row(j);
        if h.row(j).iter().all(Zero::is_zero) {
            let c = gens.iter().zip(exps).fold(field.one(), |acc, (g, x)| field.mul(&acc, &pow_big(field, &g.unit, x)));
            if !field.is_one(&c) {
                g0.push(c);
            }
        } else {
            gprime.push(FactoredFunction::power_product(field, gens, exps));
        }
    }
    ConstantSplit { g0, gprime, transform: u }
}

pub fn good_basis<F: Field>(
    field: &F,
    gprime: &[FactoredFunction<F::Elem>],
    ell: u64,
) -> Result<GoodBasis<F::Elem>> {
    check_ell(field, ell)?;
    if gprime.iter().any(FactoredFunction::is_constant) {
        return Err(Error::ConstantInput);
    }
    let (_, a) = exponent_matrix(gprime);
    let sd = snf(&a);
    let rank = sd.rank();
    if rank < gprime.len() {
        return Err(Error::RankDeficient { rank, count: gprime.len() });
    }
    let diag = sd.diagonal();
    let mut entries = Vec::new();
    for j in 0..gprime.len() {
        let col = sd.v.column(j);
        let alpha = FactoredFunction::power_product(field, gprime, &col);
        let dec = divisibility_parameter(field, &alpha, ell)?;
        if Some(dec.d) != v_ell_big(&diag[j], ell) {
            return Err(Error::Inconsistent(format!(
                "basis element {j}: D = {} but Smith entry {} has a different ℓ-adic valuation",
                dec.d, diag[j]
            )));
        }
        entries.push((dec.d, j, alpha, dec, col));
    }
    entries.sort_by_key(|(d, j, ..)| (*d, *j));
    let v = IntMatrix::from_columns(&entries.iter().map(|e| e.4.clone()).collect::<Vec<_>>(), gprime.len());
    let smith_diagonal = entries.iter().map(|e| diag[e.1].clone()).collect();
    let mut basis = GoodBasis { alphas: Vec::new(), d: Vec::new(), c: Vec::new(), betas: Vec::new(), v, smith_diagonal };
    for (d, _, alpha, dec, _) in entries {
        basis.alphas.push(alpha);
        basis.d.push(d);
        basis.c.push(dec.c);
        basis.betas.push(dec.beta);
    }
    Ok(basis)
}

pub fn epsilon_bound<F: Field>(field: &F, gprime: &[FactoredFunction<F::Elem>], ell: u64) -> Result<u32> {
    let basis = good_basis(field, gprime, ell)?;
    Ok(basis.smith_diagonal.iter().map(|s| v_ell_big(s, ell).expect("nonzero")).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::{PrimeField, Rationals};

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn lin(field: &PrimeField, a: i64) -> Poly<u64> {
        PolyRing::new(field).from_i64s(&[a, 1])
    }

    fn ff(field: &PrimeField, unit: u64, facs: &[(i64, i64)]) -> FactoredFunction<u64> {
        FactoredFunction::new(unit, facs.iter().map(|&(a, e)| (lin(field, a), e)))
    }

    #[test]
    fn normalize_examples() {
        let k = f5();
        let r = RatFuncField::new(&k);
        let ring = PolyRing::new(&k);
        let f = r.new_fraction(ring.from_i64s(&[0, 0, 2]), ring.from_i64s(&[1, 1])).unwrap();
        assert_eq!(normalize(&k, &f, 0).unwrap(), ff(&k, 2, &[(0, 2), (1, -1)]));
        let q = Rationals;
        let rq = RatFuncField::new(&q);
        let qr = PolyRing::new(&q);
        assert_eq!(normalize(&q, &rq.constant(int(7)), 0).unwrap(), FactoredFunction::constant(int(7)));
        let g = rq.new_fraction(qr.from_i64s(&[-1, 0, 1]), qr.from_i64s(&[-1, 1])).unwrap();
        assert_eq!(normalize(&q, &g, 0).unwrap(), FactoredFunction::new(int(1), [(qr.from_i64s(&[1, 1]), 1)]));
        assert!(normalize(&q, &rq.constant(int(0)), 0).is_err());
    }

    #[test]
    fn valuation_examples() {
        let k = f5();
        let v = valuation_vector(&ff(&k, 1, &[(0, 2), (1, -1)]), &[]);
        assert_eq!(v.value(&Place::Finite(lin(&k, 0))), 2);
        assert_eq!(v.value(&Place::Finite(lin(&k, 1))), -1);
        assert_eq!(v.value(&Place::Infinite), -1);
        let c = valuation_vector(&FactoredFunction::constant(3u64), &[Place::Finite(lin(&k, 2))]);
        assert_eq!(c.values, vec![0, 0]);
        let t3 = valuation_vector(&ff(&k, 1, &[(0, 3)]), &[]);
        assert_eq!(t3.values, vec![3, -3]);
    }

    #[test]
    fn divisibility_examples() {
        let k = PrimeField::new(7).unwrap();
        let alpha = ff(&k, 3, &[(0, 3), (1, 6)]);
        let dec = divisibility_parameter(&k, &alpha, 3).unwrap();
        assert_eq!((dec.d, dec.c), (1, 3));
        assert_eq!(dec.beta, ff(&k, 1, &[(0, 1), (1, 2)]));
        let k5 = f5();
        let dec = divisibility_parameter(&k5, &ff(&k5, 2, &[(0, 2)]), 2).unwrap();
        assert_eq!((dec.d, dec.c, dec.beta), (1, 2, ff(&k5, 1, &[(0, 1)])));
        assert_eq!(divisibility_parameter(&k5, &FactoredFunction::constant(2), 2), Err(Error::ConstantInput));
        assert!(divisibility_parameter(&k5, &ff(&k5, 1, &[(0, 1)]), 5).is_err());
    }

    #[test]
    fn independence_examples() {
        let k = f5();
        let t = ff(&k, 1, &[(0, 1)]);
        let s = ff(&k, 1, &[(1, 1)]);
        assert!(is_ell_independent(&k, &[t.clone(), s.clone()], 3).unwrap());
        let ts2 = ff(&k, 1, &[(0, 1), (1, 2)]);
        // (t·s²)/t = s² is a square, so the mod-2 exponent matrix [[1,1],[0,0]] has rank 1
        assert!(!is_ell_independent(&k, &[t.clone(), ts2.clone()], 2).unwrap());
        assert!(is_ell_independent(&k, &[t.clone(), ts2], 3).unwrap());
        assert!(!is_ell_independent(&k, &[t.clone(), ff(&k, 1, &[(0, 3)])], 3).unwrap());
        assert!(!is_ell_independent(&k, &[t, FactoredFunction::constant(2)], 3).unwrap());
    }

    #[test]
    fn split_examples() {
        let k = f5();
        let split = split_constants(&k, &[FactoredFunction::constant(2), ff(&k, 3, &[(0, 1)])]);
        assert_eq!(split.g0, vec![2]);
        assert_eq!(split.gprime, vec![ff(&k, 3, &[(0, 1)])]);
        let q = Rationals;
        let qr = PolyRing::new(&q);
        let t = FactoredFunction::new(int(1), [(qr.x(), 1)]);
        let four_over_t = FactoredFunction::new(int(4), [(qr.x(), -1)]);
        let split = split_constants(&q, &[t.clone(), four_over_t]);
        assert_eq!(split.g0, vec![int(4)]);
        assert_eq!(split.gprime, vec![t]);
    }

    #[test]
    fn good_basis_examples() {
        let k = f5();
        // c1·P1, c2·P1·P2² with P1 = t, P2 = t + 1
        let g = [ff(&k, 2, &[(0, 1)]), ff(&k, 3, &[(0, 1), (1, 2)])];
        let basis = good_basis(&k, &g, 2).unwrap();
        assert_eq!(basis.d, vec![0, 1]);
        assert!(basis.v.is_unimodular());
        for i in 0..2 {
            let rebuilt = FactoredFunction::constant(basis.c[i]).mul(&k, &basis.betas[i].pow(&k, 1 << basis.d[i]));
            assert_eq!(rebuilt, basis.alphas[i]);
        }
        assert!(is_ell_independent(&k, &basis.betas, 2).unwrap());
        let t2 = ff(&k, 1, &[(0, 2)]);
        let t3 = ff(&k, 1, &[(0, 3)]);
        assert!(matches!(good_basis(&k, &[t2, t3], 2), Err(Error::RankDeficient { rank: 1, count: 2 })));
    }

    #[test]
    fn epsilon_examples() {
        let k = f5();
        assert_eq!(epsilon_bound(&k, &[ff(&k, 1, &[(0, 2)])], 2).unwrap(), 1);
        assert_eq!(epsilon_bound(&k, &[ff(&k, 1, &[(0, 1)]), ff(&k, 1, &[(1, 1)])], 3).unwrap(), 0);
        let g = [ff(&k, 1, &[(0, 2), (1, 2)]), ff(&k, 1, &[(0, 4)])];
        assert_eq!(epsilon_bound(&k, &g, 2).unwrap(), 2);
    }

    #[test]
    fn format_round_trip_shape() {
        let k = f5();
        assert_eq!(ff(&k, 2, &[(0, 2), (1, -1)]).format(&k, "t"), "2*t^2*(t + 1)^-1");
        assert_eq!(FactoredFunction::constant(3u64).format(&k, "t"), "3");
        assert_eq!(ff(&k, 1, &[(0, 1)]).format(&k, "t"), "t");
    }
}
