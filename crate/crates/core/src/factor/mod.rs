//! Complete factorization of univariate polynomials over 𝔽_p, 𝔽_{p^m}, ℚ
//! and ℚ(ζ_M).

pub mod cyclotomic;
pub mod finite;
mod modular;
pub mod rational;

use crate::algebra::{CyclotomicRationals, Field, GaloisField, Poly, PolyAlgorithms, PolyRing, PrimeField, Rationals};
use crate::error::Result;

pub use cyclotomic::factor_cyclotomic;
pub use finite::factor_finite;
pub use rational::factor_rational;

/// f = unit · ∏ Pᵢ^{nᵢ} with the Pᵢ monic, irreducible and distinct, sorted
/// canonically (degree, then coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization<E> {
    pub unit: E,
    pub factors: Vec<(Poly<E>, u32)>,
}

impl<E: Clone + Ord> Factorization<E> {
    pub(crate) fn sorted(unit: E, mut factors: Vec<(Poly<E>, u32)>) -> Self {
        factors.sort();
        Factorization { unit, factors }
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Multiplies the factorization back out.
    pub fn expand<F: Field<Elem = E>>(&self, field: &F) -> Poly<E> {
        let ring = PolyRing::new(field);
        self.factors.iter().fold(ring.constant(self.unit.clone()), |acc, (p, e)| {
            ring.mul(&acc, &ring.pow(p, *e as u64))
        })
    }
}

/// Fields over which univariate polynomials can be factored completely.
///
/// The seed drives the random choices of the finite-field splitter; the
/// canonical output does not depend on it.
pub trait Factor: PolyAlgorithms {
    fn factor(&self, f: &Poly<Self::Elem>, seed: u64) -> Result<Factorization<Self::Elem>>;
}

impl Factor for PrimeField {
    fn factor(&self, f: &Poly<u64>, seed: u64) -> Result<Factorization<u64>> {
        factor_finite(self, f, seed)
    }
}

impl Factor for GaloisField {
    fn factor(&self, f: &Poly<Vec<u64>>, seed: u64) -> Result<Factorization<Vec<u64>>> {
        factor_finite(self, f, seed)
    }
}

impl Factor for Rationals {
    fn factor(&self, f: &Poly<num_rational::BigRational>, _seed: u64) -> Result<Factorization<num_rational::BigRational>> {
        factor_rational(f)
    }
}

impl Factor for CyclotomicRationals {
    fn factor(
        &self,
        f: &Poly<Vec<num_rational::BigRational>>,
        _seed: u64,
    ) -> Result<Factorization<Vec<num_rational::BigRational>>> {
        factor_cyclotomic(self, f)
    }
}
