//! Squarefree decomposition in characteristic zero (Yun) and over finite
//! fields (with p-th-root descent).

use super::field::{FiniteField, Field};
use super::poly::{Poly, PolyRing};

/// Yun's algorithm on a monic polynomial in characteristic zero.
pub fn yun<F: Field>(field: &F, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, u32)> {
    let ring = PolyRing::new(field);
    let (_, f) = ring.monic(f);
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = ring.derivative(&f);
    let a0 = ring.gcd(&f, &df);
    let mut b = ring.div_exact(&f, &a0).expect("gcd divides");
    let c = ring.div_exact(&df, &a0).expect("gcd divides");
    let mut d = ring.sub(&c, &ring.derivative(&b));
    let mut i = 1;
    while b.deg() > 0 {
        let a = ring.gcd(&b, &d);
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

/// Squarefree decomposition of a monic polynomial over a finite field.
pub fn finite<F: FiniteField>(field: &F, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, u32)> {
    let ring = PolyRing::new(field);
    let (_, f) = ring.monic(f);
    let mut out = sff(field, &f);
    out.sort_by_key(|(_, m)| *m);
    out
}

fn sff<F: FiniteField>(field: &F, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, u32)> {
    let ring = PolyRing::new(field);
    let p = field.characteristic() as u32;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = ring.derivative(f);
    let rest = if df.is_zero() {
        f.clone()
    } else {
        let mut c = ring.gcd(f, &df);
        let mut w = ring.div_exact(f, &c).expect("gcd divides");
        let mut i = 1;
        while w.deg() > 0 {
            let y = ring.gcd(&w, &c);
            let fac = ring.div_exact(&w, &y).expect("gcd divides");
            if fac.deg() > 0 {
                out.push((fac, i));
            }
            i += 1;
            w = y;
            c = ring.div_exact(&c, &w).expect("gcd divides");
        }
        c
    };
    if rest.deg() > 0 {
        let root = pth_root_poly(field, &rest);
        out.extend(sff(field, &root).into_iter().map(|(g, m)| (g, m * p)));
    }
    out
}

/// g with g^p = f, for f a polynomial in x^p.
fn pth_root_poly<F: FiniteField>(field: &F, f: &Poly<F::Elem>) -> Poly<F::Elem> {
    let p = field.characteristic() as usize;
    let coeffs = f.coeffs().iter().step_by(p).map(|c| field.pth_root(c)).collect();
    PolyRing::new(field).from_coeffs(coeffs)
}
