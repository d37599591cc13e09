//! Degrees and Galois group structures of K(ζ_M, ᴺ√G)/K(ζ_M) from
//! divisibility data over the constant field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebra::numtheory::factorize;
use crate::algebra::RatFunc;
use crate::constfield::{
    check_modulus, constant_kummer, quotient_power_divisibility, BaseField, CappedDivisibility, ConstantKummer,
    ConstantSubgroup, CycloField, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::funcfield::{good_basis, normalize, split_constants, FactoredFunction, GoodBasis};
use crate::lattice::Sublattice;

/// An instance K(ζ_M, ᴺ√G)/K(ζ_M) with K = k(t) and G = ⟨generators⟩.
#[derive(Clone, Debug)]
pub struct KummerProblem<F: BaseField> {
    pub field: F,
    pub m: u64,
    pub n_total: u64,
    pub generators: Vec<RatFunc<F::Elem>>,
}

impl<F: BaseField> KummerProblem<F> {
    pub fn new(field: F, m: u64, n_total: u64, generators: Vec<RatFunc<F::Elem>>) -> Result<Self> {
        check_modulus(&field.descriptor(), m)?;
        if n_total == 0 || !m.is_multiple_of(n_total) {
            return Err(Error::InvalidParameter(format!("N = {n_total} must divide M = {m}")));
        }
        if generators.iter().any(RatFunc::is_zero) {
            return Err(Error::ZeroInput("generator"));
        }
        Ok(KummerProblem { field, m, n_total, generators })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    pub seed: u64,
    pub budget: u128,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { seed: 0, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Radicand<E> {
    RootOfUnity,
    Constant(E),
    Function(FactoredFunction<E>),
}

/// The generator ᵢⁿᵈᵉˣ√radicand of a constant subextension. `trivial` is
/// set when the radical already lies in K(ζ_M).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical<E> {
    pub index: u128,
    pub radicand: Radicand<E>,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisReport<E> {
    pub ell: u64,
    pub n: u32,
    pub m: u64,
    pub seed: u64,
    pub field_model: String,
    pub degree: u128,
    /// Cyclic decomposition of the Galois group, ascending.
    pub invariant_factors: Vec<u128>,
    /// Gal(k(ζ_M, ℓⁿ√G₀)/k(ζ_M)).
    pub constant_part: Vec<u128>,
    /// ℓ^{max(n − Dᵢ, 0)}, trivial factors dropped.
    pub geometric_part: Vec<u128>,
    pub g0: Vec<E>,
    pub alphas: Vec<FactoredFunction<E>>,
    pub betas: Vec<FactoredFunction<E>>,
    pub big_d: Vec<u32>,
    pub c: Vec<E>,
    pub small_d: Vec<CappedDivisibility>,
    pub h_generators: Vec<E>,
    pub constant_h_degree: u128,
    pub epsilon: u32,
    /// Constant part × ∏ ℤ/ℓ^{max(n − min(Dᵢ, dᵢ), 0)}, as a cyclic decomposition.
    pub special_formula_factors: Vec<u128>,
    pub special_formula_agrees: bool,
    pub max_constant_subextension: Vec<Radical<E>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeReport<E> {
    pub reports: BTreeMap<u64, GaloisReport<E>>,
    pub degree: u128,
    pub invariant_factors: Vec<u128>,
}

/// ℓ^{max(n − Dᵢ, 0)} for each basis element, ones dropped, ascending.
pub fn geometric_structure<E>(basis: &GoodBasis<E>, ell: u64, n: u32) -> Vec<u128> {
    let mut out: Vec<u128> = basis
        .d
        .iter()
        .map(|&d| (ell as u128).pow(n.saturating_sub(d)))
        .filter(|&x| x > 1)
        .collect();
    out.sort_unstable();
    out
}

/// Shared front half of every engine entry point.
struct Analysis<F: BaseField> {
    ext: F::Ext,
    g0: Vec<F::Elem>,
    basis: GoodBasis<F::Elem>,
    exponents: Vec<u32>,
}

fn checked_ell_power(ell: u64, n: u32) -> Result<u64> {
    ell.checked_pow(n).ok_or_else(|| Error::InvalidParameter("ℓⁿ overflows".into()))
}

fn analyse<F: BaseField>(problem: &KummerProblem<F>, ell: u64, n: u32, opts: &EngineOptions) -> Result<Analysis<F>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let ln = checked_ell_power(ell, n)?;
    if !problem.m.is_multiple_of(ln) {
        return Err(Error::InvalidParameter(format!("ℓⁿ = {ln} does not divide M = {}", problem.m)));
    }
    let field = &problem.field;
    let gens = problem
        .generators
        .iter()
        .map(|g| normalize(field, g, opts.seed))
        .collect::<Result<Vec<_>>>()?;
    let split = split_constants(field, &gens);
    let basis = if split.gprime.is_empty() {
        GoodBasis {
            alphas: Vec::new(),
            d: Vec::new(),
            c: Vec::new(),
            betas: Vec::new(),
            v: crate::lattice::IntMatrix::zeros(0, 0),
            smith_diagonal: Vec::new(),
        }
    } else {
        good_basis(field, &split.gprime, ell)?
    };
    let exponents = basis.d.iter().map(|&d| n.saturating_sub(d)).collect();
    let ext = field.cyclotomic_extension(problem.m)?;
    Ok(Analysis { ext, g0: field.canonical_constants(&split.g0), basis, exponents })
}

fn subgroup<F: BaseField>(field: &F, ext: &F::Ext, gens: &[F::Elem]) -> Result<ConstantSubgroup<F::Ext>> {
    ConstantSubgroup::new(ext.clone(), gens.iter().map(|g| field.embed(ext, g)).collect())
}

fn h_generators<F: BaseField>(field: &F, a: &Analysis<F>, ell: u64) -> Vec<F::Elem> {
    let mut h = a.g0.clone();
    for (c, &e) in a.basis.c.iter().zip(&a.exponents) {
        h.push(field.pow_u64(c, ell.pow(e)));
    }
    h
}

fn checked_product(xs: impl IntoIterator<Item = u128>) -> Result<u128> {
    xs.into_iter()
        .try_fold(1u128, |acc, x| acc.checked_mul(x))
        .ok_or_else(|| Error::InvalidParameter("degree overflows 128 bits".into()))
}

/// [K(ζ_M, ℓⁿ√G) : K(ζ_M)] = |H mod ℓⁿ-th powers| · ∏ ℓ^{max(n − Dᵢ, 0)}.
pub fn kummer_degree<F: BaseField>(problem: &KummerProblem<F>, ell: u64, n: u32, opts: &EngineOptions) -> Result<u128> {
    let a = analyse(problem, ell, n, opts)?;
    let h = subgroup(&problem.field, &a.ext, &h_generators(&problem.field, &a, ell))?;
    let ck = constant_kummer(&h, ell, n, opts.budget)?;
    checked_product(std::iter::once(ck.degree).chain(a.exponents.iter().map(|&e| (ell as u128).pow(e))))
}

/// Cyclic decomposition of ℤ^{r₀+r}/Λ, where Λ pulls the relation lattice of
/// H back along x ↦ (x₀, ℓ^{eᵢ}·yᵢ).
fn exact_structure(ck_h: &ConstantKummer, r0: usize, exponents: &[u32], ell: u64) -> Vec<u128> {
    let dim = r0 + exponents.len();
    let mut lattice = Sublattice::new(dim);
    for row in &ck_h.relations {
        let mut v = row.clone();
        for (i, &e) in exponents.iter().enumerate() {
            v[r0 + i] *= BigInt::from(ell).pow(e);
        }
        lattice.insert(&v);
    }
    lattice
        .quotient_invariants()
        .expect("full-rank relation lattice")
        .iter()
        .map(|d| d.to_u128().expect("bounded by the degree"))
        .collect()
}

fn merge_cyclic(mut parts: Vec<u128>) -> Vec<u128> {
    parts.retain(|&x| x > 1);
    parts.sort_unstable();
    parts
}

pub fn galois_structure<F: BaseField>(
    problem: &KummerProblem<F>,
    ell: u64,
    n: u32,
    opts: &EngineOptions,
) -> Result<GaloisReport<F::Elem>> {
    let field = &problem.field;
    let a = analyse(problem, ell, n, opts)?;
    let r = a.basis.alphas.len();

    let mut small_d = Vec::with_capacity(r);
    for i in 0..r {
        let mut rest = a.g0.clone();
        rest.extend(a.basis.c[i + 1..].iter().cloned());
        let h_i = subgroup(field, &a.ext, &rest)?;
        let c_i = field.embed(&a.ext, &a.basis.c[i]);
        small_d.push(quotient_power_divisibility(&c_i, &h_i, ell, n, opts.budget)?);
    }

    let h_gens = h_generators(field, &a, ell);
    let ck_h = constant_kummer(&subgroup(field, &a.ext, &h_gens)?, ell, n, opts.budget)?;
    let geometric_full: Vec<u128> = a.exponents.iter().map(|&e| (ell as u128).pow(e)).collect();
    let degree = checked_product(std::iter::once(ck_h.degree).chain(geometric_full.iter().copied()))?;

    let invariant_factors = exact_structure(&ck_h, a.g0.len(), &a.exponents, ell);
    let order = checked_product(invariant_factors.iter().copied())?;
    if order != degree {
        return Err(Error::Inconsistent(format!(
            "group order {order} differs from degree {degree} (D = {:?}, H = {} generators, |H| = {})",
            a.basis.d,
            h_gens.len(),
            ck_h.degree
        )));
    }

    let ck_g0 = constant_kummer(&subgroup(field, &a.ext, &a.g0)?, ell, n, opts.budget)?;
    let mut special = ck_g0.invariant_factors.clone();
    for (d_big, d_small) in a.basis.d.iter().zip(&small_d) {
        special.push((ell as u128).pow(n.saturating_sub((*d_big).min(d_small.truncated()))));
    }
    let special_formula_factors = merge_cyclic(special);
    let special_formula_agrees = special_formula_factors == invariant_factors;

    let max_constant_subextension = constant_subextension(field, &a, ell, n)?;
    let epsilon = a.basis.d.iter().copied().max().unwrap_or(0);

    Ok(GaloisReport {
        ell,
        n,
        m: problem.m,
        seed: opts.seed,
        field_model: a.ext.describe(),
        degree,
        invariant_factors,
        constant_part: ck_g0.invariant_factors,
        geometric_part: geometric_structure(&a.basis, ell, n),
        g0: a.g0,
        alphas: a.basis.alphas,
        betas: a.basis.betas,
        big_d: a.basis.d,
        c: a.basis.c,
        small_d,
        h_generators: h_gens,
        constant_h_degree: ck_h.degree,
        epsilon,
        special_formula_factors,
        special_formula_agrees,
        max_constant_subextension,
    })
}

fn constant_subextension<F: BaseField>(
    field: &F,
    a: &Analysis<F>,
    ell: u64,
    n: u32,
) -> Result<Vec<Radical<F::Elem>>> {
    let mut out = vec![Radical { index: a.ext.cyclotomic_order() as u128, radicand: Radicand::RootOfUnity, trivial: false }];
    for g in &a.g0 {
        let trivial = a.ext.ell_power_unchecked(&field.embed(&a.ext, g), ell, n)?;
        out.push(Radical { index: (ell as u128).pow(n), radicand: Radicand::Constant(g.clone()), trivial });
    }
    for ((alpha, c), &d) in a.basis.alphas.iter().zip(&a.basis.c).zip(&a.basis.d) {
        let k = d.min(n);
        if k == 0 {
            continue;
        }
        let trivial = a.ext.ell_power_unchecked(&field.embed(&a.ext, c), ell, k)?;
        out.push(Radical { index: (ell as u128).pow(k), radicand: Radicand::Function(alpha.clone()), trivial });
    }
    Ok(out)
}

/// ζ_M, ℓⁿ√g for g ∈ G₀, and ℓ^{min(Dᵢ, n)}√αᵢ.
pub fn maximal_constant_subextension<F: BaseField>(
    problem: &KummerProblem<F>,
    ell: u64,
    n: u32,
    opts: &EngineOptions,
) -> Result<Vec<Radical<F::Elem>>> {
    let a = analyse(problem, ell, n, opts)?;
    constant_subextension(&problem.field, &a, ell, n)
}

/// Combines cyclic ℓ-parts for distinct primes into invariant factors.
pub fn combine_coprime(parts: &[Vec<u128>]) -> Vec<u128> {
    let width = parts.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u128; width];
    for p in parts {
        let mut desc = p.clone();
        desc.sort_unstable_by(|a, b| b.cmp(a));
        for (o, x) in out.iter_mut().zip(desc) {
            *o *= x;
        }
    }
    out.retain(|&x| x > 1);
    out.sort_unstable();
    out
}

/// One report per prime power ℓⁿ ‖ N; the group is their direct product.
pub fn composite_report<F: BaseField>(
    problem: &KummerProblem<F>,
    opts: &EngineOptions,
) -> Result<CompositeReport<F::Elem>> {
    let mut reports = BTreeMap::new();
    for (ell, n) in factorize(problem.n_total) {
        reports.insert(ell, galois_structure(problem, ell, n, opts)?);
    }
    let degree = checked_product(reports.values().map(|r| r.degree))?;
    let parts: Vec<Vec<u128>> = reports.values().map(|r| r.invariant_factors.clone()).collect();
    Ok(CompositeReport { reports, degree, invariant_factors: combine_coprime(&parts) })
}
