//! Modular gcd and norm over ℚ(ζ_M): images at the roots of Φ_M modulo
//! primes p ≡ 1 (mod M), then Chinese remaindering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::algebra::numtheory::{is_prime, multiplicative_order, pow_mod_u64};
use crate::algebra::{CyclotomicRationals, Poly, PolyRing, PrimeField, Rationals};

type Elem = Vec<BigRational>;

/// Primes tried before falling back to Euclid over ℚ(ζ_M).
const MAX_PRIMES: usize = 400;
const PRIME_FLOOR: u64 = 1 << 30;

struct Image {
    p: u64,
    /// coefficient j of the monic gcd, as residues of its φ(M) coordinates
    coeffs: Vec<Vec<u64>>,
}

/// Monic gcd of a and b over ℚ(ζ_M).
pub fn gcd(field: &CyclotomicRationals, a: &Poly<Elem>, b: &Poly<Elem>) -> Poly<Elem> {
    let ring = PolyRing::new(field);
    if a.is_zero() || b.is_zero() {
        return ring.monic(if a.is_zero() { b } else { a }).1;
    }
    if field.degree() == 1 || a.deg() == 0 || b.deg() == 0 {
        return ring.gcd(a, b);
    }
    let m = field.order();
    let denominators = a.coeffs().iter().chain(b.coeffs()).flatten().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut modulus = BigInt::one();
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut degree = usize::MAX;
    let mut last: Option<Poly<Elem>> = None;
    let mut p = PRIME_FLOOR - PRIME_FLOOR % m + 1;
    for _ in 0..MAX_PRIMES {
        p = next_prime(p, m);
        if (&denominators % p).is_zero() {
            continue;
        }
        let Some(image) = image(field, a, b, p) else { continue };
        let d = image.coeffs.len() - 1;
        if d == 0 {
            return ring.one();
        }
        if d > degree {
            continue;
        }
        if d < degree {
            degree = d;
            modulus = BigInt::one();
            residues = vec![vec![BigInt::zero(); field.degree()]; d + 1];
            last = None;
        }
        let pb = BigInt::from(image.p);
        let inv = modulus.mod_floor(&pb).modpow(&(&pb - 2u32), &pb);
        for (row, new) in residues.iter_mut().zip(&image.coeffs) {
            for (r, &v) in row.iter_mut().zip(new) {
                // r + modulus·((v − r)·modulus⁻¹ mod p)
                let t = ((BigInt::from(v) - &*r) * &inv).mod_floor(&pb);
                *r += &modulus * t;
            }
        }
        modulus *= &pb;
        let Some(candidate) = reconstruct(field, &residues, &modulus) else { continue };
        if last.as_ref() == Some(&candidate) && ring.divides(&candidate, a) && ring.divides(&candidate, b) {
            return candidate;
        }
        last = Some(candidate);
    }
    ring.gcd(a, b)
}

/// Yun's squarefree decomposition of a monic polynomial, with modular gcds.
pub fn yun(field: &CyclotomicRationals, f: &Poly<Elem>) -> Vec<(Poly<Elem>, u32)> {
    let ring = PolyRing::new(field);
    let (_, f) = ring.monic(f);
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = ring.derivative(&f);
    let a0 = gcd(field, &f, &df);
    let mut b = ring.div_exact(&f, &a0).expect("gcd divides");
    let c = ring.div_exact(&df, &a0).expect("gcd divides");
    let mut d = ring.sub(&c, &ring.derivative(&b));
    let mut i = 1;
    while b.deg() > 0 {
        let a = if d.is_zero() { b.clone() } else { gcd(field, &b, &d) };
        b = ring.div_exact(&b, &a).expect("gcd divides");
        let c = ring.div_exact(&d, &a).expect("gcd divides");
        d = ring.sub(&c, &ring.derivative(&b));
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn next_prime(mut p: u64, m: u64) -> u64 {
    loop {
        p += m;
        if is_prime(p) {
            return p;
        }
    }
}

fn reduce(c: &BigRational, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let num = c.numer().mod_floor(&pb);
    let den = c.denom().mod_floor(&pb);
    let inv = den.modpow(&(&pb - 2u32), &pb);
    let r = (num * inv) % &pb;
    r.iter_u64_digits().next().unwrap_or(0)
}

/// The primitive M-th roots of unity modulo p ≡ 1 (mod M), ordered like
/// the Galois exponents.
fn roots_of_unity(field: &CyclotomicRationals, p: u64) -> Vec<u64> {
    let m = field.order();
    let zeta = (2..p)
        .map(|g| pow_mod_u64(g, ((p - 1) / m) as u128, p))
        .find(|&r| multiplicative_order(r, p) == Some(m))
        .expect("p ≡ 1 (mod M)");
    field.galois_exponents().into_iter().map(|e| pow_mod_u64(zeta, e as u128, p)).collect()
}

fn reduced(f: &Poly<Elem>, p: u64) -> Vec<Vec<u64>> {
    f.coeffs().iter().map(|c| c.iter().map(|x| reduce(x, p)).collect()).collect()
}

/// The image of f under ζ ↦ r.
fn specialize(f: &[Vec<u64>], r: u64, p: u64) -> Vec<u64> {
    f.iter().map(|c| c.iter().rev().fold(0u64, |acc, &x| (acc * r + x) % p)).collect()
}

/// N(g) = ∏_σ σ(g) ∈ ℚ[x]. With D the common denominator of g, D^φ·N(g) is
/// integral with coefficients bounded by (D·Σ|c|)^φ, where the sum runs over
/// all coordinates of g.
pub fn norm(field: &CyclotomicRationals, g: &Poly<Elem>) -> Poly<BigRational> {
    let q = Rationals;
    let phi = field.degree() as u32;
    let den = g.coeffs().iter().flatten().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let height: BigInt = g.coeffs().iter().flatten().map(|c| (c * BigRational::from_integer(den.clone())).to_integer().abs()).sum();
    let bound = BigInt::from(2u32) * Pow::pow(&height, phi) + 1u32;
    let scale = Pow::pow(&den, phi);
    let m = field.order();
    let len = g.deg() * field.degree() + 1;
    let mut modulus = BigInt::one();
    let mut residues = vec![BigInt::zero(); len];
    let mut p = PRIME_FLOOR - PRIME_FLOOR % m + 1;
    while modulus <= bound {
        p = next_prime(p, m);
        if (&den % p).is_zero() {
            continue;
        }
        let fp = PrimeField::new(p).expect("prime");
        let ring = PolyRing::new(&fp);
        let rg = reduced(g, p);
        let s = reduce(&BigRational::from_integer(scale.clone()), p);
        let prod = roots_of_unity(field, p)
            .into_iter()
            .fold(ring.constant(s), |acc, r| ring.mul(&acc, &ring.from_coeffs(specialize(&rg, r, p))));
        let pb = BigInt::from(p);
        let inv = modulus.mod_floor(&pb).modpow(&(&pb - 2u32), &pb);
        for (i, r) in residues.iter_mut().enumerate() {
            let v = prod.coeff(i).copied().unwrap_or(0);
            let t = ((BigInt::from(v) - &*r) * &inv).mod_floor(&pb);
            *r += &modulus * t;
        }
        modulus *= &pb;
    }
    let half = &modulus / 2u32;
    let coeffs = residues
        .into_iter()
        .map(|r| {
            let r = if r > half { r - &modulus } else { r };
            BigRational::new(r, scale.clone())
        })
        .collect();
    PolyRing::new(&q).from_coeffs(coeffs)
}

/// The monic gcd modulo p at every root of Φ_M, interpolated back to
/// coordinates; None when p is unlucky for the leading coefficients or the
/// degrees disagree across roots.
fn image(field: &CyclotomicRationals, a: &Poly<Elem>, b: &Poly<Elem>, p: u64) -> Option<Image> {
    let fp = PrimeField::new(p).expect("prime");
    let ring = PolyRing::new(&fp);
    let roots = roots_of_unity(field, p);
    let (ra, rb) = (reduced(a, p), reduced(b, p));
    let mut images = Vec::with_capacity(roots.len());
    for &r in &roots {
        let pa = specialize(&ra, r, p);
        let pb = specialize(&rb, r, p);
        if pa.last() == Some(&0) || pb.last() == Some(&0) {
            return None;
        }
        let g = ring.gcd(&ring.from_coeffs(pa), &ring.from_coeffs(pb));
        if images.first().is_some_and(|h: &Poly<u64>| h.deg() != g.deg()) {
            return None;
        }
        images.push(g);
    }
    let dg = images[0].deg();
    let inv = vandermonde_inverse(&roots, p);
    let coeffs = (0..=dg)
        .map(|j| {
            let values: Vec<u64> = images.iter().map(|g| *g.coeff(j).expect("in range")).collect();
            inv.iter().map(|row| row.iter().zip(&values).fold(0u64, |acc, (&x, &v)| (acc + x * v) % p)).collect()
        })
        .collect();
    Some(Image { p, coeffs })
}

/// V⁻¹ for V[k][i] = rootsₖ^i, by Gauss–Jordan modulo p.
fn vandermonde_inverse(roots: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = roots.len();
    let mut a: Vec<Vec<u64>> = roots
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            let mut row: Vec<u64> = (0..n).map(|i| pow_mod_u64(r, i as u128, p)).collect();
            row.extend((0..n).map(|i| u64::from(i == k)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0).expect("distinct roots");
        a.swap(col, piv);
        let inv = pow_mod_u64(a[col][col], (p - 2) as u128, p);
        a[col].iter_mut().for_each(|x| *x = *x * inv % p);
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn reconstruct(field: &CyclotomicRationals, residues: &[Vec<BigInt>], modulus: &BigInt) -> Option<Poly<Elem>> {
    let bound = (modulus / 2u32).sqrt();
    let coeffs = residues
        .iter()
        .map(|row| row.iter().map(|r| rational_reconstruction(r, modulus, &bound)).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    Some(PolyRing::new(field).from_coeffs(coeffs))
}

/// n/d ≡ r (mod m) with |n|, d ≤ bound.
fn rational_reconstruction(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (t0, t1) = (t1.clone(), &t0 - &q * &t1);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::algebra::Field;

    fn elem(field: &CyclotomicRationals, c: &[BigRational]) -> Elem {
        field.from_poly(&PolyRing::new(&crate::algebra::Rationals).from_coeffs(c.to_vec()))
    }

    #[test]
    fn recovers_a_known_common_factor() {
        let k = CyclotomicRationals::new(7).unwrap();
        let ring = PolyRing::new(&k);
        let g = ring.from_coeffs(vec![elem(&k, &[rat(1, 3), int(2)]), elem(&k, &[int(0), int(0), rat(-5, 2)]), k.one()]);
        let u = ring.from_coeffs(vec![elem(&k, &[int(1), int(1)]), k.one()]);
        let v = ring.from_coeffs(vec![elem(&k, &[int(-2), int(0), int(3)]), k.zero(), k.one()]);
        let a = ring.mul(&g, &u);
        let b = ring.mul(&ring.mul(&g, &v), &g);
        assert_eq!(gcd(&k, &a, &b), g);
        assert!(ring.is_one(&gcd(&k, &u, &v)));
    }

    #[test]
    fn yun_separates_multiplicities() {
        let k = CyclotomicRationals::new(5).unwrap();
        let ring = PolyRing::new(&k);
        let u = ring.from_coeffs(vec![k.zeta_pow(1), k.one()]);
        let v = ring.from_coeffs(vec![k.zeta_pow(2), k.zero(), k.one()]);
        let f = ring.mul(&u, &ring.pow(&v, 3));
        assert_eq!(yun(&k, &f), vec![(u, 1), (v, 3)]);
    }

    #[test]
    fn norm_is_the_product_of_conjugates() {
        let k = CyclotomicRationals::new(9).unwrap();
        let ring = PolyRing::new(&k);
        let g = ring.from_coeffs(vec![elem(&k, &[rat(-1, 2), int(3), int(0), int(-2)]), elem(&k, &[int(1), rat(1, 3)]), k.one()]);
        let direct = k.galois_exponents().into_iter().fold(ring.one(), |acc, e| {
            ring.mul(&acc, &ring.from_coeffs(g.coeffs().iter().map(|c| k.conjugate(c, e)).collect()))
        });
        let direct = PolyRing::new(&k).map(&PolyRing::new(&Rationals), &direct, |c| k.as_rational(c).unwrap());
        assert_eq!(norm(&k, &g), direct);
    }

    #[test]
    fn reconstruction_inverts_reduction() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        let bound = (&m / 2u32).sqrt();
        let x = rat(-37, 41);
        let inv = x.denom().extended_gcd(&m).x.mod_floor(&m);
        let r = (x.numer() * inv).mod_floor(&m);
        assert_eq!(rational_reconstruction(&r, &m, &bound), Some(x));
    }
}
