//! Norm-based (Trager) factorization over ℚ(ζ_M).

use num_rational::BigRational;

use crate::algebra::{intpoly, CyclotomicRationals, Field, Poly, PolyRing, Rationals};
use crate::error::{Error, Result};

use super::rational::{factor_rational, is_squarefree_integer};
use super::{modular, Factorization};

/// Largest |s| tried in the shift search.
pub const SHIFT_BOUND: i64 = 64;

type Elem = Vec<BigRational>;

pub fn factor_cyclotomic(field: &CyclotomicRationals, f: &Poly<Elem>) -> Result<Factorization<Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factor_cyclotomic"));
    }
    let ring = PolyRing::new(field);
    let (unit, monic) = ring.monic(f);
    let mut factors = Vec::new();
    // a repeated factor of f would repeat in N(f)
    if monic.deg() > 1 && field.degree() > 1 {
        let n = modular::norm(field, &monic);
        if is_squarefree_integer(&intpoly::from_rational(&n).1) {
            let parts = factor_squarefree(field, &monic, Some(n))?;
            return Ok(Factorization::sorted(unit, parts.into_iter().map(|g| (g, 1)).collect()));
        }
    }
    for (part, mult) in modular::yun(field, &monic) {
        for g in factor_squarefree(field, &part, None)? {
            factors.push((g, mult));
        }
    }
    Ok(Factorization::sorted(unit, factors))
}

fn to_rational_poly(field: &CyclotomicRationals, f: &Poly<Elem>) -> Poly<BigRational> {
    PolyRing::new(field).map(&PolyRing::new(&Rationals), f, |c| {
        field.as_rational(c).expect("rational coefficient")
    })
}

fn from_rational_poly(field: &CyclotomicRationals, f: &Poly<BigRational>) -> Poly<Elem> {
    PolyRing::new(&Rationals).map(&PolyRing::new(field), f, |c| field.embed(c))
}

fn shifts() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=SHIFT_BOUND).flat_map(|s| [s, -s]))
}

/// Irreducible monic factors of a monic squarefree g.
/// `known_norm` is N(g) when the caller already has it.
fn factor_squarefree(
    field: &CyclotomicRationals,
    g: &Poly<Elem>,
    mut known_norm: Option<Poly<BigRational>>,
) -> Result<Vec<Poly<Elem>>> {
    let ring = PolyRing::new(field);
    if g.deg() <= 1 {
        return Ok(vec![g.clone()]);
    }
    if field.degree() == 1 {
        let fac = factor_rational(&to_rational_poly(field, g))?;
        return Ok(fac.factors.iter().map(|(p, _)| from_rational_poly(field, p)).collect());
    }
    for s in shifts() {
        let sz = field.mul(&field.from_i64(s), &field.zeta_pow(1));
        // g(x − sζ)
        let shifted = ring.compose(g, &ring.from_coeffs(vec![field.neg(&sz), field.one()]));
        let n = if s == 0 { known_norm.take().unwrap_or_else(|| modular::norm(field, &shifted)) } else { modular::norm(field, &shifted) };
        if !is_squarefree_integer(&intpoly::from_rational(&n).1) {
            continue;
        }
        let back = ring.from_coeffs(vec![sz, field.one()]);
        let parts = factor_rational(&n)?.factors;
        if parts.len() == 1 {
            return Ok(vec![g.clone()]);
        }
        let mut out = Vec::new();
        for (h, _) in parts {
            let d = modular::gcd(field, &shifted, &from_rational_poly(field, &h));
            if d.deg() > 0 {
                out.push(ring.compose(&d, &back));
            }
        }
        return Ok(out);
    }
    Err(Error::ShiftSearchFailed(SHIFT_BOUND))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn lift(field: &CyclotomicRationals, c: &[i64]) -> Poly<Elem> {
        PolyRing::new(field).from_coeffs(c.iter().map(|&v| field.embed(&int(v))).collect())
    }

    #[test]
    fn gaussian_split() {
        let k = CyclotomicRationals::new(4).unwrap();
        let ring = PolyRing::new(&k);
        let fac = factor_cyclotomic(&k, &lift(&k, &[1, 0, 1])).unwrap();
        let i = k.zeta_pow(1);
        let mut expected = vec![
            (ring.from_coeffs(vec![k.neg(&i), k.one()]), 1),
            (ring.from_coeffs(vec![i, k.one()]), 1),
        ];
        expected.sort();
        assert_eq!(fac.factors, expected);
    }

    #[test]
    fn square_roots_of_two() {
        let k8 = CyclotomicRationals::new(8).unwrap();
        let fac = factor_cyclotomic(&k8, &lift(&k8, &[-2, 0, 1])).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(p, e)| p.deg() == 1 && *e == 1));
        let k3 = CyclotomicRationals::new(3).unwrap();
        assert!(factor_cyclotomic(&k3, &lift(&k3, &[-2, 0, 1])).unwrap().is_irreducible());
    }

    #[test]
    fn cube_roots_over_q_zeta9() {
        let k9 = CyclotomicRationals::new(9).unwrap();
        assert!(factor_cyclotomic(&k9, &lift(&k9, &[-2, 0, 0, 1])).unwrap().is_irreducible());
        // x^3 - 1 splits completely
        let fac = factor_cyclotomic(&k9, &lift(&k9, &[-1, 0, 0, 1])).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(&k9), lift(&k9, &[-1, 0, 0, 1]));
    }

    #[test]
    fn trivial_cyclotomic_matches_rationals() {
        let k1 = CyclotomicRationals::new(1).unwrap();
        let f = [6, -5, -2, 1];
        let over_q = factor_rational(&PolyRing::new(&Rationals).from_i64s(&f)).unwrap();
        let over_k1 = factor_cyclotomic(&k1, &lift(&k1, &f)).unwrap();
        let mapped: Vec<_> = over_q.factors.iter().map(|(p, e)| (from_rational_poly(&k1, p), *e)).collect();
        assert_eq!(over_k1.factors, mapped);
    }
}
