//! Integer polynomials (coefficient vectors over ℤ, lowest degree first):
//! content, primitive parts, pseudo-division and subresultant resultants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Poly, PolyRing};
use super::rational::Rationals;

pub type ZPoly = Vec<BigInt>;

pub fn trim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub fn degree(f: &[BigInt]) -> Option<usize> {
    f.len().checked_sub(1)
}

/// Nonnegative gcd of the coefficients (zero for the zero polynomial).
pub fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(f: &[BigInt]) -> ZPoly {
    let c = content(f);
    if c.is_zero() {
        return Vec::new();
    }
    let sign = if f.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let c = c * sign;
    f.iter().map(|x| x / &c).collect()
}

/// Scales a rational polynomial to a primitive integer polynomial with
/// positive leading coefficient. Returns (scale, primitive) with
/// f = scale · primitive.
pub fn from_rational(f: &Poly<BigRational>) -> (BigRational, ZPoly) {
    if f.is_zero() {
        return (BigRational::zero(), Vec::new());
    }
    let denom_lcm = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: ZPoly = f.coeffs().iter().map(|c| (c * &denom_lcm).to_integer()).collect();
    let prim = primitive_part(&ints);
    let scale = BigRational::new(ints.last().unwrap().clone(), denom_lcm * prim.last().unwrap());
    (scale, prim)
}

pub fn to_rational(f: &[BigInt]) -> Poly<BigRational> {
    PolyRing::new(&Rationals).from_coeffs(f.iter().cloned().map(BigRational::from_integer).collect())
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn derivative(f: &[BigInt]) -> ZPoly {
    trim(f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

/// Pseudo-remainder: lc(b)^{deg a − deg b + 1} · a mod b.
pub fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = degree(b).expect("nonzero divisor");
    let lb = b[db].clone();
    let mut r: ZPoly = a.to_vec();
    let Some(da) = degree(a) else { return r };
    if da < db {
        return r;
    }
    let mut steps = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bj;
        }
        r = trim(r);
        steps -= 1;
    }
    let scale = num_traits::pow(lb, steps);
    trim(r.into_iter().map(|c| c * &scale).collect())
}

/// Exact division in ℤ[x]; `None` if b does not divide a.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = degree(b)?;
    let mut r: ZPoly = a.to_vec();
    let Some(da) = degree(a) else { return Some(Vec::new()) };
    if da < db {
        return None;
    }
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let (c, rem) = r[k + db].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then(|| trim(q))
}

/// Resultant over ℤ by the subresultant algorithm; no divisions other than
/// exact ones.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (Some(_), Some(_)) = (degree(a), degree(b)) else { return BigInt::zero() };
    let ca = content(a);
    let cb = content(b);
    let mut a: ZPoly = a.iter().map(|x| x / &ca).collect();
    let mut b: ZPoly = b.iter().map(|x| x / &cb).collect();
    let t = num_traits::pow(ca, degree(&b).unwrap()) * num_traits::pow(cb, degree(&a).unwrap());
    let mut s = BigInt::one();
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
        if degree(&a).unwrap() % 2 == 1 && degree(&b).unwrap() % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = degree(&a).unwrap();
        let db = degree(&b).unwrap();
        if db == 0 {
            // h ← h^{1−da} · lc(b)^{da}
            let lb = b[0].clone();
            let hh = if da == 0 {
                h.clone()
            } else {
                num_traits::pow(lb, da) / num_traits::pow(h.clone(), da - 1)
            };
            return s * t * hh;
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        let denom = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.into_iter().map(|c| c / &denom).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
        };
    }
}

/// Monic gcd of primitive parts via the primitive PRS.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive_part(&pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        trim(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn resultant_examples() {
        // Res(x^2+1, x^2-2) = (i^2-2)((-i)^2-2) = 9
        assert_eq!(resultant(&z(&[1, 0, 1]), &z(&[-2, 0, 1])), BigInt::from(9));
        // Res(x - a, g) = g(a)
        assert_eq!(resultant(&z(&[-3, 1]), &z(&[1, 2, 1])), BigInt::from(16));
        assert_eq!(resultant(&z(&[1, 2, 1]), &z(&[1])), BigInt::from(1));
        // common root
        assert_eq!(resultant(&z(&[-1, 0, 1]), &z(&[-1, 1])), BigInt::zero());
    }

    #[test]
    fn gcd_and_division() {
        let a = mul(&z(&[1, 1]), &z(&[2, 0, 3]));
        let b = mul(&z(&[1, 1]), &z(&[5, 7]));
        assert_eq!(gcd(&a, &b), z(&[1, 1]));
        assert_eq!(div_exact(&a, &z(&[1, 1])), Some(z(&[2, 0, 3])));
        assert_eq!(div_exact(&a, &z(&[1, 2])), None);
    }

    #[test]
    fn rational_scaling() {
        let ring = PolyRing::new(&Rationals);
        let f = ring.from_coeffs(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        ]);
        let (scale, prim) = from_rational(&f);
        assert_eq!(prim, z(&[-2, 3]));
        assert_eq!(ring.scale(&scale, &to_rational(&prim)), f);
    }
}
