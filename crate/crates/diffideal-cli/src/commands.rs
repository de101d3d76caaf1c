//! Command implementations: each returns a report envelope.

use crate::envelope::{
    completeness_str, constant_json, family_json, report_json, ring_json, search_json,
    witness_json, Envelope,
};
use crate::problem::{parse_rat, Problem};
use diffideal::groebner::DEFAULT_CLOSURE_CAP;
use diffideal::ring::MonomialOrder;
use diffideal::{
    constant_family, darboux_search, differential_closure, first_integral_lattice,
    height_one_differential_primes, is_differential_ideal, localization_witness,
    new_constant_report, parse_poly, parse_ratfunc, Error, Ideal, Result, SearchConfig,
};
use serde_json::{json, Value};

pub struct CommandContext {
    pub problem: Problem,
    pub order: MonomialOrder,
    pub max_deg: u32,
    pub json: bool,
}

impl CommandContext {
    fn inputs(&self) -> Value {
        let mut inputs = serde_json::Map::new();
        inputs.insert(
            "ring".into(),
            ring_json(&self.problem.ring, &self.order),
        );
        inputs.insert("order".into(), json!(self.order.kind().to_string()));
        inputs.insert("max_deg".into(), json!(self.max_deg));
        if let Some(f) = &self.problem.clearing_factor {
            inputs.insert(
                "clearing_factor".into(),
                json!(f.render(&self.order)),
            );
        }
        Value::Object(inputs)
    }

    fn envelope(&self, command: &str, results: Value, completeness: Option<String>) -> Envelope {
        Envelope {
            command: command.to_string(),
            inputs: self.inputs(),
            results,
            completeness,
            timing_ms: 0,
        }
    }

    fn search_config(&self) -> Result<SearchConfig> {
        SearchConfig::new(self.max_deg)
    }

    pub fn apply(&self, expr: &str) -> Result<Envelope> {
        let ring = self.problem.ring.ring();
        let value = parse_ratfunc(ring, expr)?;
        let derivative = self.problem.ring.derive_ratfunc(&value);
        let results = json!({
            "input": value.render(&self.order),
            "derivative": derivative.render(&self.order),
        });
        Ok(self.envelope("apply", results, None))
    }

    pub fn is_constant(&self, expr: &str) -> Result<Envelope> {
        let ring = self.problem.ring.ring();
        let value = parse_ratfunc(ring, expr)?;
        let derivative = self.problem.ring.derive_ratfunc(&value);
        let results = json!({
            "input": value.render(&self.order),
            "is_constant": derivative.is_zero(),
            "derivative": derivative.render(&self.order),
        });
        Ok(self.envelope("is-constant", results, None))
    }

    fn parse_ideal(&self, gens: &[String]) -> Result<Ideal> {
        if gens.is_empty() {
            return Err(Error::Precondition("at least one generator is required".into()));
        }
        let texts: Vec<&str> = gens.iter().map(String::as_str).collect();
        Ideal::parse(&self.problem.ring, &texts)
    }

    pub fn is_diff_ideal(&self, gens: &[String]) -> Result<Envelope> {
        let ideal = self.parse_ideal(gens)?;
        let differential = is_differential_ideal(&ideal)?;
        let results = json!({
            "generators": ideal
                .generators()
                .iter()
                .map(|g| g.render(&self.order))
                .collect::<Vec<_>>(),
            "differential": differential,
        });
        Ok(self.envelope("is-diff-ideal", results, None))
    }

    pub fn diff_closure(&self, gens: &[String]) -> Result<Envelope> {
        let ideal = self.parse_ideal(gens)?;
        let closed = differential_closure(&ideal, DEFAULT_CLOSURE_CAP)?;
        let results = json!({
            "generators": ideal
                .generators()
                .iter()
                .map(|g| g.render(&self.order))
                .collect::<Vec<_>>(),
            "closure_generators": closed
                .generators()
                .iter()
                .map(|g| g.render(&self.order))
                .collect::<Vec<_>>(),
        });
        Ok(self.envelope("diff-closure", results, None))
    }

    pub fn darboux(&self) -> Result<Envelope> {
        let result = darboux_search(&self.problem.ring, &self.search_config()?)?;
        let flag = completeness_str(result.completeness);
        let results = search_json(&result, &self.order);
        Ok(self.envelope("darboux", results, Some(flag)))
    }

    pub fn primes(&self) -> Result<Envelope> {
        let result = height_one_differential_primes(&self.problem.ring, &self.search_config()?)?;
        let flag = completeness_str(result.completeness);
        let results = search_json(&result, &self.order);
        Ok(self.envelope("primes", results, Some(flag)))
    }

    pub fn first_integrals(&self) -> Result<Envelope> {
        let constants = first_integral_lattice(&self.problem.ring, &self.search_config()?)?;
        let results = json!({
            "constants": constants
                .iter()
                .map(|c| constant_json(c, &self.order))
                .collect::<Vec<_>>(),
        });
        Ok(self.envelope("first-integrals", results, None))
    }

    pub fn report(&self) -> Result<Envelope> {
        let report = new_constant_report(&self.problem.ring, &self.search_config()?)?;
        let flag = completeness_str(report.completeness);
        let results = report_json(&report, &self.order);
        Ok(self.envelope("report", results, Some(flag)))
    }

    pub fn family(&self, f: &str, g: &str, cs: Option<&str>) -> Result<Envelope> {
        let ring = self.problem.ring.ring();
        let f = parse_poly(ring, f)?;
        let g = parse_poly(ring, g)?;
        let samples = match cs {
            Some(list) => {
                let mut out = Vec::new();
                for part in list.split(',') {
                    let c = parse_rat(part).ok_or_else(|| {
                        Error::Precondition(format!("bad rational `{}` in --c", part.trim()))
                    })?;
                    out.push(c);
                }
                out
            }
            None => self
                .problem
                .options
                .c_samples
                .clone()
                .ok_or_else(|| {
                    Error::Precondition(
                        "no samples: pass --c or set c_samples in the problem file".into(),
                    )
                })?,
        };
        let report = constant_family(&self.problem.ring, &f, &g, &samples)?;
        let results = family_json(&report, &self.order);
        Ok(self.envelope("family", results, None))
    }

    pub fn witness(&self) -> Result<Envelope> {
        let witness = localization_witness(&self.problem.ring, &self.search_config()?)?;
        let results = witness_json(&witness, &self.order);
        let flag = if witness.heuristic {
            "heuristic".to_string()
        } else {
            completeness_str(diffideal::Completeness::CompleteForRationalCoefficients)
        };
        Ok(self.envelope("witness", results, Some(flag)))
    }
}

/// Renders an envelope for humans: a compact indented listing.
pub fn render_text(envelope: &Envelope) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", envelope.command));
    if let Some(flag) = &envelope.completeness {
        out.push_str(&format!("completeness: {flag}\n"));
    }
    out.push_str("results:\n");
    render_value(&envelope.results, 1, &mut out);
    out.push_str(&format!("timing: {} ms\n", envelope.timing_ms));
    out
}

fn render_value(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, inner) in map {
                match inner {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(inner, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", scalar(inner))),
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{pad}(none)\n"));
            }
            for inner in items {
                match inner {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(inner, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(inner))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
