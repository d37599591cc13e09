//! Small-integer number theory helpers: primality, factoring, orders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorization, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut upper: Vec<u64> = ds.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    ds.append(&mut upper);
    ds
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn pow_mod_u64(base: u64, mut exp: u128, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `m`; `None` when gcd(a, m) != 1.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd_u64(a % m, m) != 1 {
        return None;
    }
    let phi = euler_phi(m);
    let mut order = phi;
    for (p, _) in factorize(phi) {
        while order.is_multiple_of(p) && pow_mod_u64(a, (order / p) as u128, m) == 1 {
            order /= p;
        }
    }
    Some(order)
}

/// ℓ-adic valuation of a nonzero machine integer.
pub fn v_ell_i64(n: i64, ell: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut n = n.unsigned_abs();
    let mut v = 0;
    while n.is_multiple_of(ell) {
        n /= ell;
        v += 1;
    }
    Some(v)
}

pub fn v_ell_u128(mut n: u128, ell: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n.is_multiple_of(ell as u128) {
        n /= ell as u128;
        v += 1;
    }
    Some(v)
}

/// ℓ-adic valuation of a nonzero big integer.
pub fn v_ell_big(n: &BigInt, ell: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let l = BigInt::from(ell);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&l);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
    }

    #[test]
    fn phi_and_order() {
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(multiplicative_order(5, 16), Some(4));
        assert_eq!(multiplicative_order(5, 4), Some(1));
        assert_eq!(multiplicative_order(2, 4), None);
        // brute force cross-check
        for m in 1..40u64 {
            for a in 1..m {
                if gcd_u64(a, m) == 1 {
                    let brute = (1..=m).find(|&k| pow_mod_u64(a, k as u128, m) == 1 % m).unwrap();
                    assert_eq!(multiplicative_order(a, m), Some(brute), "a={a} m={m}");
                }
            }
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(v_ell_i64(-24, 2), Some(3));
        assert_eq!(v_ell_i64(0, 2), None);
        assert_eq!(v_ell_big(&BigInt::from(81), 3), Some(4));
    }
}
