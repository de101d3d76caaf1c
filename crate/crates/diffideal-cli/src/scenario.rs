//! Bundled scenarios with golden comparison.
//!
//! `paper-s1-circle` runs the pencil ring (DX = X, DY = Y) through the full
//! pipeline: the invariant circle generator, the constant X/Y, family
//! detection at degree 1, the ten-member ideal family, and the lattice.
//! `paper-s2-family-k<N>` (N = 1..8) runs the one-variable ring with N
//! parameters all carrying the cubic image t^3 - 2t^2 + 2t: each X - a_i is
//! a principal differential prime, the k cofactors are independent (no
//! lattice constant), and the localization witness covers every found prime.
//!
//! Golden JSON lives in the `goldens/` directory next to the crate (override
//! with `DIFFIDEAL_GOLDEN_DIR`); normal runs compare, `--bless` rewrites.

use crate::envelope::{
    completeness_str, constant_json, pair_json, rat_string, ring_json, search_json, witness_json,
};
use diffideal::poly::rat_int;
use diffideal::{
    constant_family, darboux_search, first_integral_lattice_from_pairs,
    height_one_differential_primes, is_differential_ideal, localization_witness, parse_poly,
    parse_ratfunc, verify_darboux, DarbouxPair, DifferentialRing, Error, Ideal, Result,
    SearchConfig,
};
use std::path::PathBuf;

pub const MAX_FAMILY_K: usize = 8;

pub fn available_scenarios() -> Vec<String> {
    let mut names = vec!["paper-s1-circle".to_string()];
    for k in 1..=MAX_FAMILY_K {
        names.push(format!("paper-s2-family-k{k}"));
    }
    names
}

pub fn golden_dir() -> PathBuf {
    match std::env::var("DIFFIDEAL_GOLDEN_DIR") {
        Ok(dir) => PathBuf::from(dir),
        Err(_) => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/goldens")),
    }
}

fn circle_results() -> Result<serde_json::Value> {
    let d = DifferentialRing::build(&["X", "Y"], &[], &[("X", "X"), ("Y", "Y")])?;
    let ring = d.ring().clone();
    let order = ring.default_order();

    let generator = parse_poly(&ring, "X^2 + Y^2")?;
    let ideal = Ideal::new(d.clone(), vec![generator.clone()])?;
    let cofactor = verify_darboux(&d, &generator)?.expect("circle generator is invariant");

    let x_over_y = parse_ratfunc(&ring, "X / Y")?;
    let derivative = d.derive_ratfunc(&x_over_y);

    let cfg = SearchConfig::new(1)?;
    let search = darboux_search(&d, &cfg)?;
    let primes = height_one_differential_primes(&d, &cfg)?;
    let constants = first_integral_lattice_from_pairs(&d, &primes.pairs)?;

    let cs: Vec<_> = (1..=10).map(rat_int).collect();
    let family = constant_family(
        &d,
        &parse_poly(&ring, "X")?,
        &parse_poly(&ring, "Y")?,
        &cs,
    )?;

    Ok(serde_json::json!({
        "ring": ring_json(&d, &order),
        "circle_ideal": {
            "generator": generator.render(&order),
            "differential": is_differential_ideal(&ideal)?,
            "cofactor": cofactor.render(&order),
        },
        "constant_x_over_y": {
            "value": x_over_y.render(&order),
            "is_constant": d.is_constant(&x_over_y),
            "derivative": derivative.render(&order),
        },
        "darboux_search_deg1": search_json(&search, &order),
        "family_x_minus_c_y": {
            "samples": cs.iter().map(rat_string).collect::<Vec<_>>(),
            "all_proper": family.all_proper(),
            "all_differential": family.all_differential(),
            "pairwise_distinct": family.pairwise_distinct,
        },
        "first_integrals": constants
            .iter()
            .map(|c| constant_json(c, &order))
            .collect::<Vec<_>>(),
    }))
}

pub fn family_ring(k: usize) -> Result<DifferentialRing> {
    let names: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    let params: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut images = vec![("X".to_string(), "X^3 - 2*X^2 + 2*X".to_string())];
    for name in &names {
        images.push((name.clone(), format!("{name}^3 - 2*{name}^2 + 2*{name}")));
    }
    let image_refs: Vec<(&str, &str)> = images
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    DifferentialRing::build(&["X"], &params, &image_refs)
}

fn family_results(k: usize) -> Result<serde_json::Value> {
    let d = family_ring(k)?;
    let ring = d.ring().clone();
    let order = ring.default_order();

    // The k linear generators verify with their quadratic cofactors and are
    // pairwise non-associate.
    let mut pairs: Vec<DarbouxPair> = Vec::new();
    let mut verified = Vec::new();
    for i in 1..=k {
        let w = parse_poly(&ring, &format!("X - a{i}"))?;
        let pair = DarbouxPair::new(&d, &w)?
            .ok_or_else(|| Error::InvalidInput(format!("X - a{i} must be invariant")))?;
        verified.push(pair_json(&pair, &order));
        pairs.push(pair);
    }
    let mut pairwise_non_associate = true;
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if pairs[i].is_associate_of(&pairs[j]) {
                pairwise_non_associate = false;
            }
        }
    }
    let constants = first_integral_lattice_from_pairs(&d, &pairs)?;

    let cfg = SearchConfig::new(1)?;
    let search = height_one_differential_primes(&d, &cfg)?;
    let witness = localization_witness(&d, &cfg)?;

    Ok(serde_json::json!({
        "ring": ring_json(&d, &order),
        "truncation_k": k,
        "verified_pairs": verified,
        "pairwise_non_associate": pairwise_non_associate,
        "lattice_constants": constants
            .iter()
            .map(|c| constant_json(c, &order))
            .collect::<Vec<_>>(),
        "primes_deg1": search_json(&search, &order),
        "witness": witness_json(&witness, &order),
    }))
}

/// Computes the scenario's results payload.
pub fn run_scenario(name: &str) -> Result<(serde_json::Value, Option<String>)> {
    if name == "paper-s1-circle" {
        let results = circle_results()?;
        return Ok((results, Some(completeness_str(
            diffideal::Completeness::RepresentativesOnly,
        ))));
    }
    if let Some(rest) = name.strip_prefix("paper-s2-family-k") {
        if let Ok(k) = rest.parse::<usize>() {
            if (1..=MAX_FAMILY_K).contains(&k) {
                let results = family_results(k)?;
                return Ok((results, Some(completeness_str(
                    diffideal::Completeness::CompleteForRationalCoefficients,
                ))));
            }
        }
    }
    Err(Error::Precondition(format!(
        "unknown scenario `{name}`; available: {}",
        available_scenarios().join(", ")
    )))
}

/// Compares against (or rewrites) the committed golden. Returns Ok(true) on
/// match or bless, Ok(false) with a printed diff on mismatch.
pub fn check_golden(name: &str, results: &serde_json::Value, bless: bool) -> Result<bool> {
    let path = golden_dir().join(format!("{name}.json"));
    let rendered = serde_json::to_string_pretty(results).expect("results serialize") + "\n";
    if bless {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)
                .map_err(|e| Error::InvalidInput(format!("cannot create golden dir: {e}")))?;
        }
        std::fs::write(&path, &rendered)
            .map_err(|e| Error::InvalidInput(format!("cannot write golden: {e}")))?;
        println!("blessed golden {}", path.display());
        return Ok(true);
    }
    let committed = std::fs::read_to_string(&path).map_err(|_| {
        Error::Precondition(format!(
            "no golden committed at {}; run with --bless to create it",
            path.display()
        ))
    })?;
    if committed == rendered {
        return Ok(true);
    }
    eprintln!("golden mismatch for scenario `{name}` ({}):", path.display());
    for diff_line in diff_lines(&committed, &rendered) {
        eprintln!("{diff_line}");
    }
    Ok(false)
}

fn diff_lines(expected: &str, actual: &str) -> Vec<String> {
    let mut out = Vec::new();
    let e: Vec<&str> = expected.lines().collect();
    let a: Vec<&str> = actual.lines().collect();
    let n = e.len().max(a.len());
    for i in 0..n {
        let left = e.get(i).copied();
        let right = a.get(i).copied();
        if left != right {
            if let Some(l) = left {
                out.push(format!("-{l}"));
            }
            if let Some(r) = right {
                out.push(format!("+{r}"));
            }
        }
    }
    out
}
