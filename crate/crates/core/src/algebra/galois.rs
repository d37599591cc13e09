//! 𝔽_{p^m} as 𝔽_p[z]/(g) for a monic irreducible g of degree m.

use std::sync::Arc;

use super::field::{FiniteField, Field};
use super::poly::{Poly, PolyRing};
use super::prime_field::PrimeField;

/// Elements are coefficient vectors of length exactly m (residues of degree < m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    base: PrimeField,
    modulus: Arc<Poly<u64>>,
    m: usize,
}

impl GaloisField {
    /// `modulus` must be monic and irreducible over `base`; irreducibility is
    /// the caller's contract (the cyclotomic constructor guarantees it).
    pub fn new(base: PrimeField, modulus: Poly<u64>) -> Self {
        let ring = PolyRing::new(&base);
        assert!(ring.is_monic(&modulus) && modulus.deg() >= 1, "modulus must be monic of degree >= 1");
        let m = modulus.deg();
        GaloisField { base, modulus: Arc::new(modulus), m }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn modulus(&self) -> &Poly<u64> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn embed(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.m];
        v[0] = a % self.base.p();
        v
    }

    /// The residue class of z.
    pub fn generator(&self) -> Vec<u64> {
        let ring = PolyRing::new(&self.base);
        self.from_poly(&ring.x())
    }

    pub fn from_poly(&self, f: &Poly<u64>) -> Vec<u64> {
        let ring = PolyRing::new(&self.base);
        let r = ring.rem(f, &self.modulus).expect("nonzero modulus");
        let mut v = r.into_coeffs();
        v.resize(self.m, 0);
        v
    }

    pub fn to_poly(&self, a: &[u64]) -> Poly<u64> {
        PolyRing::new(&self.base).from_coeffs(a.to_vec())
    }

    /// Returns the prime-field value if `a` lies in 𝔽_p.
    pub fn as_prime(&self, a: &[u64]) -> Option<u64> {
        a[1..].iter().all(|&c| c == 0).then_some(a[0])
    }
}

impl Field for GaloisField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.m]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let p = self.base.p();
        let m = self.m;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let g = self.modulus.coeffs();
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            // z^k = z^{k-m} · (z^m) ≡ −z^{k-m} · (g − z^m)
            for (j, &gj) in g.iter().enumerate().take(m) {
                prod[k - m + j] = (prod[k - m + j] + (p - c) * gj) % p;
            }
            prod[k] = 0;
        }
        prod.truncate(m);
        prod
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let ring = PolyRing::new(&self.base);
        let (g, s, _) = ring.ext_gcd(&self.to_poly(a), &self.modulus);
        debug_assert!(ring.is_one(&g), "modulus not irreducible");
        Some(self.from_poly(&s))
    }
    fn from_i64(&self, v: i64) -> Vec<u64> {
        self.embed(self.base.reduce(v))
    }
    fn characteristic(&self) -> u64 {
        self.base.p()
    }
    fn format_elem(&self, a: &Vec<u64>) -> String {
        match self.as_prime(a) {
            Some(c) => c.to_string(),
            None => PolyRing::new(&self.base).format(&self.to_poly(a), "z"),
        }
    }
}

impl FiniteField for GaloisField {
    fn order(&self) -> u128 {
        (self.base.p() as u128).pow(self.m as u32)
    }
    fn element(&self, mut index: u128) -> Vec<u64> {
        let p = self.base.p() as u128;
        (0..self.m)
            .map(|_| {
                let d = (index % p) as u64;
                index /= p;
                d
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> GaloisField {
        // z^2 + 1 is irreducible over F_3
        let f3 = PrimeField::new(3).unwrap();
        let ring = PolyRing::new(&f3);
        GaloisField::new(f3, ring.from_i64s(&[1, 0, 1]))
    }

    #[test]
    fn field_axioms_on_f9() {
        let f = f9();
        assert_eq!(f.order(), 9);
        let elems: Vec<_> = f.elements().collect();
        assert_eq!(elems.len(), 9);
        for a in &elems {
            if !f.is_zero(a) {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, &inv), f.one());
                // a^(q-1) = 1
                assert_eq!(f.pow_u64(a, 8), f.one());
            }
            for b in &elems {
                assert_eq!(f.mul(a, b), f.mul(b, a));
            }
        }
        let z = f.generator();
        assert_eq!(f.mul(&z, &z), f.from_i64(-1));
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = f9();
        for a in f.elements() {
            assert_eq!(f.pth_root(&f.pow_u64(&a, 3)), a);
        }
    }
}
