//! Report envelopes: every command returns one, rendered as text or JSON.
//!
//! The `results` payload is deterministic for identical inputs (field order
//! is sorted, no timestamps); timing lives outside it so byte-stable golden
//! comparison works on `results` alone.

use diffideal::ring::MonomialOrder;
use diffideal::{
    CandidateConstant, Completeness, ConstantFamilyReport, DarbouxPair, DifferentialRing,
    LocalizationWitness, NewConstantReport, SearchResult,
};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "1";

pub struct Envelope {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub completeness: Option<String>,
    pub timing_ms: u128,
}

impl Envelope {
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
        map.insert("command".into(), json!(self.command));
        map.insert("inputs".into(), self.inputs.clone());
        map.insert("results".into(), self.results.clone());
        if let Some(flag) = &self.completeness {
            map.insert("completeness".into(), json!(flag));
        }
        map.insert("timing_ms".into(), json!(self.timing_ms as u64));
        Value::Object(map)
    }
}

pub fn ring_json(ring: &DifferentialRing, order: &MonomialOrder) -> Value {
    let base = ring.ring();
    let derivation: Map<String, Value> = base
        .symbols()
        .iter()
        .enumerate()
        .map(|(i, name)| (name.clone(), json!(ring.image(i).render(order))))
        .collect();
    json!({
        "vars": base.vars(),
        "params": base.params(),
        "derivation": Value::Object(derivation),
    })
}

pub fn pair_json(pair: &DarbouxPair, order: &MonomialOrder) -> Value {
    json!({
        "w": pair.w().render(order),
        "cofactor": pair.cofactor().render(order),
    })
}

pub fn completeness_str(flag: Completeness) -> String {
    flag.to_string()
}

pub fn search_json(result: &SearchResult, order: &MonomialOrder) -> Value {
    json!({
        "pairs": result.pairs.iter().map(|p| pair_json(p, order)).collect::<Vec<_>>(),
        "completeness": completeness_str(result.completeness),
    })
}

pub fn constant_json(c: &CandidateConstant, order: &MonomialOrder) -> Value {
    json!({
        "value": c.value().render(order),
        "dependence": c
            .dependence()
            .coefficients()
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>(),
    })
}

pub fn report_json(report: &NewConstantReport, order: &MonomialOrder) -> Value {
    json!({
        "constants": report.constants.iter().map(|c| constant_json(c, order)).collect::<Vec<_>>(),
        "primes": report.primes.iter().map(|p| pair_json(p, order)).collect::<Vec<_>>(),
        "completeness": completeness_str(report.completeness),
        "verdict": report.verdict.to_string(),
        "summary": report.summary,
    })
}

pub fn family_json(report: &ConstantFamilyReport, order: &MonomialOrder) -> Value {
    json!({
        "constant": report.constant.render(order),
        "members": report
            .members
            .iter()
            .map(|m| {
                json!({
                    "c": rat_string(&m.c),
                    "generator": m.generator.render(order),
                    "proper": m.proper,
                    "differential": m.differential,
                })
            })
            .collect::<Vec<_>>(),
        "all_proper": report.all_proper(),
        "all_differential": report.all_differential(),
        "pairwise_distinct": report.pairwise_distinct,
    })
}

pub fn witness_json(witness: &LocalizationWitness, order: &MonomialOrder) -> Value {
    json!({
        "witness": witness.witness.render(order),
        "darboux_factor": witness.darboux_factor.render(order),
        "dx1": witness.dx1.render(order),
        "coverage": witness
            .coverage
            .iter()
            .map(|(pair, contained)| {
                json!({
                    "prime": pair.w().render(order),
                    "contains_witness": contained,
                })
            })
            .collect::<Vec<_>>(),
        "heuristic": witness.heuristic,
    })
}

pub fn rat_string(c: &diffideal::Rat) -> String {
    use num_traits::One;
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}
