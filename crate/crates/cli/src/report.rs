//! JSON document and text rendering. Field order is the schema order.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use kummer_core::algebra::Field;
use kummer_core::constfield::CappedDivisibility;
use kummer_core::kummer::{GaloisReport, Radicand};
use kummer_core::verify::RadicalQuotient;
use num_traits::ToPrimitive;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Document {
    pub schema: u32,
    pub command: String,
    pub field: String,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "N")]
    pub n_total: u64,
    pub seed: u64,
    pub budget: u128,
    pub generators: Vec<String>,
    pub field_model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<EngineDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EngineDoc {
    pub degree: u128,
    pub invariant_factors: Vec<u128>,
    pub primes: Vec<PrimeDoc>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PrimeDoc {
    pub ell: u64,
    pub n: u32,
    pub degree: u128,
    pub invariant_factors: Vec<u128>,
    pub constant_part: Vec<u128>,
    pub geometric_part: Vec<u128>,
    #[serde(rename = "D")]
    pub big_d: Vec<u32>,
    pub d: Vec<CappedDoc>,
    pub c: Vec<String>,
    pub g0: Vec<String>,
    pub alphas: Vec<String>,
    pub betas: Vec<String>,
    #[serde(rename = "H")]
    pub h: Vec<String>,
    pub constant_h_degree: u128,
    pub epsilon: u32,
    pub special_formula: SpecialDoc,
    pub max_constant_subextension: Vec<RadicalDoc>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CappedDoc {
    pub value: u32,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SpecialDoc {
    pub invariant_factors: Vec<u128>,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RadicalDoc {
    pub kind: &'static str,
    pub index: u128,
    pub radicand: String,
    pub trivial: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OracleDoc {
    pub degree: u128,
    pub invariant_factors: Vec<u128>,
    pub primes: Vec<OraclePrimeDoc>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OraclePrimeDoc {
    pub ell: u64,
    pub n: u32,
    pub degree: u128,
    pub invariant_factors: Vec<u128>,
    pub relation_lattice: Vec<Vec<i64>>,
}

pub fn prime_doc<F: Field>(field: &F, r: &GaloisReport<F::Elem>) -> PrimeDoc {
    let elems = |xs: &[F::Elem]| xs.iter().map(|x| field.format_elem(x)).collect::<Vec<_>>();
    PrimeDoc {
        ell: r.ell,
        n: r.n,
        degree: r.degree,
        invariant_factors: r.invariant_factors.clone(),
        constant_part: r.constant_part.clone(),
        geometric_part: r.geometric_part.clone(),
        big_d: r.big_d.clone(),
        d: r
            .small_d
            .iter()
            .map(|d| match *d {
                CappedDivisibility::Exact(v) => CappedDoc { value: v, exact: true },
                CappedDivisibility::AtLeast(v) => CappedDoc { value: v, exact: false },
            })
            .collect(),
        c: elems(&r.c),
        g0: elems(&r.g0),
        alphas: r.alphas.iter().map(|a| a.format(field, "t")).collect(),
        betas: r.betas.iter().map(|b| b.format(field, "t")).collect(),
        h: elems(&r.h_generators),
        constant_h_degree: r.constant_h_degree,
        epsilon: r.epsilon,
        special_formula: SpecialDoc {
            invariant_factors: r.special_formula_factors.clone(),
            agrees: r.special_formula_agrees,
        },
        max_constant_subextension: r
            .max_constant_subextension
            .iter()
            .map(|x| {
                let (kind, radicand) = match &x.radicand {
                    Radicand::RootOfUnity => ("root_of_unity", "1".to_string()),
                    Radicand::Constant(c) => ("constant", field.format_elem(c)),
                    Radicand::Function(f) => ("function", f.format(field, "t")),
                };
                RadicalDoc { kind, index: x.index, radicand, trivial: x.trivial }
            })
            .collect(),
    }
}

pub fn oracle_prime_doc(ell: u64, n: u32, q: &RadicalQuotient) -> OraclePrimeDoc {
    OraclePrimeDoc {
        ell,
        n,
        degree: q.degree,
        invariant_factors: q.invariant_factors.clone(),
        relation_lattice: q
            .lattice
            .iter()
            .map(|row| row.iter().map(|x| x.to_i64().expect("entries below ℓⁿ")).collect())
            .collect(),
    }
}

/// `Z/2 x Z/4`, or `trivial`.
pub fn group(factors: &[u128]) -> String {
    if factors.is_empty() {
        return "trivial".into();
    }
    factors.iter().map(|f| format!("Z/{f}")).collect::<Vec<_>>().join(" x ")
}

fn list<T: ToString>(xs: &[T]) -> String {
    format!("[{}]", xs.iter().map(T::to_string).collect::<Vec<_>>().join(", "))
}

pub fn render_text(doc: &Document) -> String {
    let mut s = String::new();
    writeln!(s, "field {}, M = {}, N = {}, seed {}", doc.field, doc.m, doc.n_total, doc.seed).unwrap();
    writeln!(s, "model {}", doc.field_model).unwrap();
    writeln!(s, "generators {}", list(&doc.generators)).unwrap();
    if let Some(e) = &doc.engine {
        writeln!(s, "degree {}", e.degree).unwrap();
        writeln!(s, "group {}", group(&e.invariant_factors)).unwrap();
        for p in &e.primes {
            writeln!(s, "ell = {}, n = {}", p.ell, p.n).unwrap();
            writeln!(s, "  degree {}", p.degree).unwrap();
            writeln!(s, "  group {}", group(&p.invariant_factors)).unwrap();
            writeln!(s, "  constant part {}", group(&p.constant_part)).unwrap();
            writeln!(s, "  geometric part {}", group(&p.geometric_part)).unwrap();
            writeln!(s, "  G0 {}", list(&p.g0)).unwrap();
            writeln!(s, "  alpha {}", list(&p.alphas)).unwrap();
            writeln!(s, "  D {}", list(&p.big_d)).unwrap();
            writeln!(s, "  c {}", list(&p.c)).unwrap();
            let d: Vec<String> =
                p.d.iter().map(|d| if d.exact { d.value.to_string() } else { format!(">={}", d.value) }).collect();
            writeln!(s, "  d {}", list(&d)).unwrap();
            writeln!(s, "  H {} of order {}", list(&p.h), p.constant_h_degree).unwrap();
            let note = if p.special_formula.agrees { "agrees" } else { "DIFFERS" };
            writeln!(s, "  special formula {} ({note})", group(&p.special_formula.invariant_factors)).unwrap();
            let radicals: Vec<String> = p
                .max_constant_subextension
                .iter()
                .map(|r| {
                    let body = match r.kind {
                        "root_of_unity" => format!("zeta_{}", r.index),
                        _ => format!("root({}, {})", r.radicand, r.index),
                    };
                    if r.trivial {
                        format!("{body} (trivial)")
                    } else {
                        body
                    }
                })
                .collect();
            writeln!(s, "  constant subextension {}", list(&radicals)).unwrap();
        }
    }
    if let Some(o) = &doc.oracle {
        writeln!(s, "oracle degree {}", o.degree).unwrap();
        writeln!(s, "oracle group {}", group(&o.invariant_factors)).unwrap();
    }
    if let Some(v) = doc.verdict {
        writeln!(s, "verdict {}", if v == Verdict::Match { "match" } else { "mismatch" }).unwrap();
    }
    if let Some(t) = &doc.timings_ms {
        for (k, v) in t {
            writeln!(s, "time {k} {v:.3} ms").unwrap();
        }
    }
    s
}
