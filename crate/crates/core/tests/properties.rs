mod common;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use kummer_core::algebra::ratfunc::RatFuncField;
use kummer_core::algebra::{CyclotomicRationals, Field, PolyRing, PrimeField, RatFunc, Rationals};
use kummer_core::factor::Factor;
use kummer_core::kummer::{composite_report, galois_structure, kummer_degree, EngineOptions, KummerProblem};
use kummer_core::lattice::{hnf, snf, IntMatrix, Sublattice};

use common::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn f_p_instance(seed: u64) -> (PrimeField, u64, u32, u64, Vec<RatFunc<u64>>) {
    let mut rng = rng(seed);
    let (k, ell, n, m) = random_finite_instance(&mut rng);
    let count = rng.gen_range(1..=3);
    let gens = (0..count).map(|_| random_generator(&k, &mut rng, 2)).collect();
    (k, ell, n, m, gens)
}

fn structure<F: kummer_core::constfield::BaseField>(
    field: &F,
    m: u64,
    gens: &[RatFunc<F::Elem>],
    ell: u64,
    n: u32,
) -> (u128, Vec<u128>) {
    let problem = KummerProblem::new(field.clone(), m, ell.pow(n), gens.to_vec()).unwrap();
    let r = galois_structure(&problem, ell, n, &EngineOptions::default()).unwrap();
    (r.degree, r.invariant_factors)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermite_form_is_a_unimodular_echelon_form(rows in matrix()) {
        let a = IntMatrix::from_i64_rows(&rows);
        let (h, u) = hnf(&a);
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(u.mul(&a), h.clone());
        let mut last_pivot = None;
        for i in 0..h.rows() {
            match h.row(i).iter().position(|x| !x.is_zero()) {
                Some(c) => {
                    prop_assert!(last_pivot.is_none_or(|l| c > l));
                    prop_assert!(h.get(i, c).is_positive());
                    for above in 0..i {
                        prop_assert!(!h.get(above, c).is_negative() && h.get(above, c) < h.get(i, c));
                    }
                    last_pivot = Some(c);
                }
                None => prop_assert!((i..h.rows()).all(|j| h.row(j).iter().all(Zero::is_zero))),
            }
        }
    }

    #[test]
    fn smith_form_is_a_divisor_chain(rows in matrix()) {
        let a = IntMatrix::from_i64_rows(&rows);
        let d = snf(&a);
        prop_assert!(d.u.is_unimodular() && d.v.is_unimodular());
        prop_assert_eq!(d.u.mul(&a).mul(&d.v), d.s.clone());
        let diag = d.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn sublattice_index_is_the_determinant(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 3..=5)) {
        let mut lattice = Sublattice::new(3);
        for r in &rows {
            lattice.insert(&r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        }
        for r in &rows {
            prop_assert!(lattice.contains(&r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()));
        }
        let basis = lattice.basis_matrix();
        match lattice.quotient_invariants() {
            Some(inv) => {
                prop_assert_eq!(basis.rows(), 3);
                let order: BigInt = inv.iter().product();
                prop_assert_eq!(order, basis.det().abs());
            }
            None => prop_assert!(basis.rows() < 3),
        }
    }

    #[test]
    fn degree_is_the_group_order(seed in any::<u64>()) {
        let (k, ell, n, m, gens) = f_p_instance(seed);
        let problem = KummerProblem::new(k, m, ell.pow(n), gens).unwrap();
        let opts = EngineOptions::default();
        let report = galois_structure(&problem, ell, n, &opts).unwrap();
        prop_assert_eq!(kummer_degree(&problem, ell, n, &opts).unwrap(), report.degree);
        prop_assert_eq!(report.invariant_factors.iter().product::<u128>(), report.degree);
        prop_assert!(report.invariant_factors.iter().all(|&x| x > 1 && x <= ell.pow(n) as u128));
        let composite = composite_report(&problem, &opts).unwrap();
        prop_assert_eq!(composite.degree, report.degree);
    }

    #[test]
    fn structure_depends_only_on_the_group(seed in any::<u64>()) {
        let (k, ell, n, m, gens) = f_p_instance(seed);
        let base = structure(&k, m, &gens, ell, n);
        let mut rng = rng(seed ^ 0x5eed);
        let rf = RatFuncField::new(&k);
        let big_n = ell.pow(n) as i64;

        let mut reversed = gens.clone();
        reversed.reverse();
        prop_assert_eq!(&structure(&k, m, &reversed, ell, n), &base);

        let h = random_generator(&k, &mut rng, 2);
        let mut scaled = gens.clone();
        scaled[0] = rf.mul(&scaled[0], &rf.pow(&h, big_n).unwrap());
        prop_assert_eq!(&structure(&k, m, &scaled, ell, n), &base);

        let exps: Vec<i64> = gens.iter().map(|_| rng.gen_range(-2..=2)).collect();
        let mut extended = gens.clone();
        extended.push(power_product(&k, &gens, &exps));
        prop_assert_eq!(&structure(&k, m, &extended, ell, n), &base);
    }

    #[test]
    fn degrees_divide_up_the_tower(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let k = PrimeField::new(*[5u64, 7, 13].choose(&mut rng).unwrap()).unwrap();
        let ell: u64 = if k.p() == 7 { 3 } else { 2 };
        let m = ell.pow(3);
        let gens: Vec<_> = (0..rng.gen_range(1..=2)).map(|_| random_generator(&k, &mut rng, 2)).collect();
        let degrees: Vec<u128> = (1..=3).map(|n| structure(&k, m, &gens, ell, n).0).collect();
        prop_assert!(degrees.windows(2).all(|w| w[1] % w[0] == 0), "{:?}", degrees);
    }

    #[test]
    fn rational_factorizations_recombine(coeffs in prop::collection::vec(-7i64..=7, 2..=7), square in any::<bool>()) {
        let q = Rationals;
        let ring = PolyRing::new(&q);
        let f = ring.from_i64s(&coeffs);
        prop_assume!(f.deg() >= 1);
        let f = if square { ring.mul(&f, &ring.from_i64s(&[1, 1])) } else { f };
        let fac = q.factor(&f, 0).unwrap();
        prop_assert_eq!(fac.expand(&q), f);
        for (p, _) in &fac.factors {
            prop_assert!(q.factor(p, 0).unwrap().is_irreducible());
        }
    }

    #[test]
    fn cyclotomic_factorizations_recombine(m in 3u64..=8, coeffs in prop::collection::vec(-3i64..=3, 2..=5)) {
        let k = CyclotomicRationals::new(m).unwrap();
        let ring = PolyRing::new(&k);
        let zeta = k.zeta_pow(1);
        let mut c: Vec<_> = coeffs.iter().enumerate().map(|(i, &v)| {
            let v = k.from_i64(v);
            if i % 2 == 0 { k.mul(&v, &zeta) } else { v }
        }).collect();
        c.push(k.one());
        let g = ring.from_coeffs(c);
        let f = ring.mul(&g, &ring.from_coeffs(vec![k.neg(&zeta), k.one()]));
        let fac = k.factor(&f, 0).unwrap();
        prop_assert_eq!(fac.expand(&k), f);
        prop_assert!(fac.factors.iter().any(|(p, _)| p.deg() == 1));
    }
}
