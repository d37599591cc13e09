//! Exact arithmetic substrate: ℚ, 𝔽_p, 𝔽_{p^m}, ℚ(ζ_M), and univariate
//! polynomials and rational functions over them.

pub mod cyclotomic;
pub mod field;
pub mod galois;
pub mod intpoly;
pub mod numtheory;
pub mod poly;
pub mod prime_field;
pub mod ratfunc;
pub mod rational;
pub mod squarefree;

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};

pub use cyclotomic::{cyclotomic_poly, CyclotomicRationals};
pub use field::{FiniteField, Field};
pub use galois::GaloisField;
pub use poly::{Degree, Poly, PolyRing};
pub use prime_field::PrimeField;
pub use ratfunc::RatFunc;
pub use rational::{Rational, Rationals};

/// The constant field k of K = k(t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
}

impl FieldDescriptor {
    /// Parses `Q` or `F(p)`; p is checked for primality.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "Q" || s == "QQ" {
            return Ok(FieldDescriptor::Rationals);
        }
        let inner = s
            .strip_prefix("F(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown field `{text}`; expected Q or F(p)")))?;
        let p: u64 = inner
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad characteristic `{inner}`")))?;
        PrimeField::new(p)?;
        Ok(FieldDescriptor::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "F({p})"),
        }
    }
}

/// gcd, squarefree decomposition and resultants, with the algorithm chosen
/// per field.
pub trait PolyAlgorithms: Field {
    /// Squarefree parts of a monic polynomial; multiplicities strictly increasing.
    fn squarefree_parts(&self, f: &Poly<Self::Elem>) -> Vec<(Poly<Self::Elem>, u32)>;

    fn gcd_nonzero(&self, a: &Poly<Self::Elem>, b: &Poly<Self::Elem>) -> Poly<Self::Elem> {
        PolyRing::new(self).gcd(a, b)
    }

    fn resultant_nonzero(&self, f: &Poly<Self::Elem>, g: &Poly<Self::Elem>) -> Self::Elem {
        euclidean_resultant(self, f, g)
    }
}

/// Monic greatest common divisor.
pub fn poly_gcd<F: PolyAlgorithms>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput("poly_gcd"));
    }
    Ok(field.gcd_nonzero(a, b))
}

/// f = lc(f) · ∏ gᵢ^{mᵢ}, gᵢ monic squarefree pairwise coprime.
pub fn squarefree_decompose<F: PolyAlgorithms>(
    field: &F,
    f: &Poly<F::Elem>,
) -> Result<Vec<(Poly<F::Elem>, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("squarefree_decompose"));
    }
    Ok(field.squarefree_parts(f))
}

pub fn resultant<F: PolyAlgorithms>(field: &F, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<F::Elem> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("resultant"));
    }
    Ok(field.resultant_nonzero(f, g))
}

/// Res(f, g) by the Euclidean recursion; exact over any field.
pub fn euclidean_resultant<F: Field>(field: &F, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> F::Elem {
    let ring = PolyRing::new(field);
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = field.one();
    loop {
        let (Some(da), Some(db)) = (a.degree().finite(), b.degree().finite()) else {
            return field.zero();
        };
        if db == 0 {
            return field.mul(&acc, &field.pow_u64(b.lc().unwrap(), da as u64));
        }
        if da == 0 {
            return field.mul(&acc, &field.pow_u64(a.lc().unwrap(), db as u64));
        }
        let r = ring.rem(&a, &b).expect("nonzero divisor");
        let Some(dr) = r.degree().finite() else {
            return field.zero();
        };
        if (da * db) % 2 == 1 {
            acc = field.neg(&acc);
        }
        acc = field.mul(&acc, &field.pow_u64(b.lc().unwrap(), (da - dr) as u64));
        a = b;
        b = r;
    }
}

impl PolyAlgorithms for Rationals {
    fn squarefree_parts(&self, f: &Poly<BigRational>) -> Vec<(Poly<BigRational>, u32)> {
        squarefree::yun(self, f)
    }

    fn gcd_nonzero(&self, a: &Poly<BigRational>, b: &Poly<BigRational>) -> Poly<BigRational> {
        let (_, za) = intpoly::from_rational(a);
        let (_, zb) = intpoly::from_rational(b);
        let g = intpoly::gcd(&za, &zb);
        PolyRing::new(self).monic(&intpoly::to_rational(&g)).1
    }

    fn resultant_nonzero(&self, f: &Poly<BigRational>, g: &Poly<BigRational>) -> BigRational {
        let (sf, zf) = intpoly::from_rational(f);
        let (sg, zg) = intpoly::from_rational(g);
        let r = BigRational::from_integer(intpoly::resultant(&zf, &zg));
        // Res(a·F, b·G) = a^{deg G} b^{deg F} Res(F, G)
        r * self.pow_u64(&sf, g.deg() as u64) * self.pow_u64(&sg, f.deg() as u64)
    }
}

impl PolyAlgorithms for PrimeField {
    fn squarefree_parts(&self, f: &Poly<u64>) -> Vec<(Poly<u64>, u32)> {
        squarefree::finite(self, f)
    }
}

impl PolyAlgorithms for GaloisField {
    fn squarefree_parts(&self, f: &Poly<Vec<u64>>) -> Vec<(Poly<Vec<u64>>, u32)> {
        squarefree::finite(self, f)
    }
}

impl PolyAlgorithms for CyclotomicRationals {
    fn squarefree_parts(&self, f: &Poly<Vec<BigRational>>) -> Vec<(Poly<Vec<BigRational>>, u32)> {
        squarefree::yun(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn descriptor_parsing() {
        assert_eq!(FieldDescriptor::parse("Q").unwrap(), FieldDescriptor::Rationals);
        assert_eq!(FieldDescriptor::parse("F(5)").unwrap(), FieldDescriptor::PrimeField(5));
        assert_eq!(FieldDescriptor::parse(" F( 7 ) ").unwrap(), FieldDescriptor::PrimeField(7));
        assert_eq!(FieldDescriptor::parse("F(9)"), Err(Error::NotPrime(9)));
        assert!(FieldDescriptor::parse("R").is_err());
    }

    #[test]
    fn spec_level_errors() {
        let q = Rationals;
        let z = Poly::zero();
        assert!(poly_gcd(&q, &z, &z).is_err());
        assert!(squarefree_decompose(&q, &z).is_err());
        assert!(resultant(&q, &z, &PolyRing::new(&q).one()).is_err());
    }

    #[test]
    fn resultant_routes_agree() {
        let q = Rationals;
        let ring = PolyRing::new(&q);
        let f = ring.from_i64s(&[1, 0, 1]);
        let g = ring.from_i64s(&[-2, 0, 1]);
        assert_eq!(resultant(&q, &f, &g).unwrap(), int(9));
        assert_eq!(euclidean_resultant(&q, &f, &g), int(9));
        let lin = ring.from_i64s(&[-3, 1]);
        let h = ring.from_i64s(&[5, -1, 2]);
        assert_eq!(resultant(&q, &lin, &h).unwrap(), ring.eval(&h, &int(3)));
        assert_eq!(resultant(&q, &h, &ring.one()).unwrap(), int(1));
    }
}
