//! Problem files: the line-oriented text format declaring a differential
//! ring and default options.
//!
//! ```text
//! # comments start with '#'
//! vars: X, Y
//! params:
//! derivation:
//!   D X = X
//!   D Y = Y
//! options:
//!   max_deg = 2
//!   order = grevlex
//!   c_samples = 1, 2, 3
//! ```
//!
//! Derivation images are polynomials; a rational image (for example
//! `D X = X / t`) is rejected with a hint unless `--clear-denominators` is
//! set, in which case the whole derivation is multiplied by the least common
//! multiple of the denominators and the clearing factor is reported.

use diffideal::poly::{MultiPoly, Rat};
use diffideal::ring::{OrderKind, Ring};
use diffideal::{
    multivariate_lcm, parse_ratfunc, DifferentialRing, Error, RationalFunction, Result,
};
use num_bigint::BigInt;

#[derive(Debug, Clone, Default)]
pub struct ProblemOptions {
    pub max_deg: Option<u32>,
    pub order: Option<OrderKind>,
    pub c_samples: Option<Vec<Rat>>,
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub ring: DifferentialRing,
    pub options: ProblemOptions,
    /// The Lemma-style clearing factor applied to make all images
    /// polynomial, when `--clear-denominators` was used.
    pub clearing_factor: Option<MultiPoly>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn split_names(line_no: usize, body: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for part in body.split(',') {
        let name = part.trim();
        if name.is_empty() {
            continue;
        }
        if !valid_name(name) {
            return Err(Error::parse_at(
                line_no,
                1,
                format!("invalid symbol name `{name}`"),
            ));
        }
        out.push(name.to_string());
    }
    Ok(out)
}

/// Parses a rational literal like `3`, `-1/2`.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        None => text.parse::<BigInt>().ok().map(Rat::from),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d == BigInt::from(0) {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
    }
}

#[derive(PartialEq)]
enum Section {
    None,
    Derivation,
    Options,
}

pub fn parse_problem(text: &str, clear_denominators: bool) -> Result<Problem> {
    let mut vars: Option<Vec<String>> = None;
    let mut params: Option<Vec<String>> = None;
    let mut derivation_lines: Vec<(usize, usize, String, String)> = Vec::new();
    let mut options = ProblemOptions::default();
    let mut section = Section::None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(body) = trimmed.strip_prefix("vars:") {
            vars = Some(split_names(line_no, body)?);
            section = Section::None;
        } else if let Some(body) = trimmed.strip_prefix("params:") {
            params = Some(split_names(line_no, body)?);
            section = Section::None;
        } else if trimmed == "derivation:" {
            section = Section::Derivation;
        } else if trimmed == "options:" {
            section = Section::Options;
        } else {
            match section {
                Section::Derivation => {
                    let body = trimmed.strip_prefix('D').map(str::trim_start).ok_or_else(|| {
                        Error::parse_at(line_no, 1, "expected `D <name> = <poly>`")
                    })?;
                    let (name, rhs) = body.split_once('=').ok_or_else(|| {
                        Error::parse_at(line_no, 1, "expected `=` in derivation line")
                    })?;
                    let name = name.trim();
                    if !valid_name(name) {
                        return Err(Error::parse_at(
                            line_no,
                            1,
                            format!("invalid symbol name `{name}`"),
                        ));
                    }
                    let col = raw.find('=').map(|p| p + 2).unwrap_or(1);
                    derivation_lines.push((line_no, col, name.to_string(), rhs.trim().to_string()));
                }
                Section::Options => {
                    let (key, value) = trimmed.split_once('=').ok_or_else(|| {
                        Error::parse_at(line_no, 1, "expected `key = value` in options")
                    })?;
                    let key = key.trim();
                    let value = value.trim();
                    match key {
                        "max_deg" => {
                            options.max_deg = Some(value.parse().map_err(|_| {
                                Error::parse_at(line_no, 1, format!("bad max_deg `{value}`"))
                            })?)
                        }
                        "order" => {
                            options.order = Some(match value {
                                "lex" => OrderKind::Lex,
                                "grevlex" => OrderKind::GrevLex,
                                other => {
                                    return Err(Error::parse_at(
                                        line_no,
                                        1,
                                        format!("unknown order `{other}` (lex or grevlex)"),
                                    ))
                                }
                            })
                        }
                        "c_samples" => {
                            let mut cs = Vec::new();
                            for part in value.split(',') {
                                let c = parse_rat(part).ok_or_else(|| {
                                    Error::parse_at(
                                        line_no,
                                        1,
                                        format!("bad rational `{}` in c_samples", part.trim()),
                                    )
                                })?;
                                cs.push(c);
                            }
                            options.c_samples = Some(cs);
                        }
                        other => {
                            return Err(Error::parse_at(
                                line_no,
                                1,
                                format!("unknown option `{other}`"),
                            ))
                        }
                    }
                }
                Section::None => {
                    return Err(Error::parse_at(
                        line_no,
                        1,
                        format!("unexpected line `{trimmed}` outside any section"),
                    ))
                }
            }
        }
    }

    let vars = vars.ok_or_else(|| Error::parse_at(1, 1, "missing `vars:` section"))?;
    let params = params.unwrap_or_default();
    let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let param_refs: Vec<&str> = params.iter().map(String::as_str).collect();
    let ring = Ring::new(&var_refs, &param_refs)?;

    // Parse images as rational functions so denominators can be diagnosed.
    let mut images: Vec<Option<RationalFunction>> = vec![None; ring.num_symbols()];
    for (line_no, col, name, rhs) in &derivation_lines {
        let index = ring.symbol_index(name).ok_or_else(|| {
            Error::parse_at(*line_no, 1, format!("derivation image for undeclared symbol `{name}`"))
        })?;
        if images[index].is_some() {
            return Err(Error::parse_at(
                *line_no,
                1,
                format!("duplicate derivation image for `{name}`"),
            ));
        }
        let image = parse_ratfunc(&ring, rhs).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::Parse {
                line: *line_no,
                column: col + column - 1,
                message,
            },
            other => other,
        })?;
        images[index] = Some(image);
    }
    let images: Vec<RationalFunction> = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            img.ok_or_else(|| {
                Error::InvalidInput(format!(
                    "no derivation image for `{}`",
                    ring.symbol_name(i)
                ))
            })
        })
        .collect::<Result<_>>()?;

    let rational_images: Vec<&RationalFunction> =
        images.iter().filter(|r| !r.is_polynomial()).collect();
    let (ring, clearing_factor) = if rational_images.is_empty() {
        let polys = images
            .iter()
            .map(|r| r.as_polynomial().cloned().expect("checked polynomial"))
            .collect();
        (DifferentialRing::new(ring, polys)?, None)
    } else if !clear_denominators {
        let offenders: Vec<String> = rational_images.iter().map(|r| r.to_string()).collect();
        return Err(Error::Precondition(format!(
            "derivation images must be polynomial, found {}; rescale by a common \
             denominator or pass --clear-denominators to do it automatically",
            offenders.join(", ")
        )));
    } else {
        let mut factor = MultiPoly::one(&ring);
        for img in &rational_images {
            factor = multivariate_lcm(&factor, img.den())?;
        }
        let factor_fn = RationalFunction::from_poly(factor.clone());
        let polys = images
            .iter()
            .map(|img| {
                let cleared = img.checked_mul(&factor_fn)?;
                cleared
                    .as_polynomial()
                    .cloned()
                    .ok_or_else(|| Error::Domain("clearing factor failed".into()))
            })
            .collect::<Result<_>>()?;
        (DifferentialRing::new(ring, polys)?, Some(factor))
    };

    Ok(Problem {
        ring,
        options,
        clearing_factor,
    })
}

/// Renders a problem file for the ring and options; `parse_problem` of the
/// result reproduces the identical ring.
#[cfg_attr(not(test), allow(dead_code))]
pub fn render_problem(ring: &DifferentialRing, options: &ProblemOptions) -> String {
    let base = ring.ring();
    let order = base.default_order();
    let mut out = String::new();
    out.push_str(&format!("vars: {}\n", base.vars().join(", ")));
    out.push_str(&format!("params: {}\n", base.params().join(", ")));
    out.push_str("derivation:\n");
    for (i, name) in base.symbols().iter().enumerate() {
        out.push_str(&format!("  D {} = {}\n", name, ring.image(i).render(&order)));
    }
    let mut option_lines = Vec::new();
    if let Some(d) = options.max_deg {
        option_lines.push(format!("  max_deg = {d}"));
    }
    if let Some(kind) = options.order {
        option_lines.push(format!("  order = {kind}"));
    }
    if let Some(cs) = &options.c_samples {
        let rendered: Vec<String> = cs
            .iter()
            .map(|c| {
                if c.denom() == &BigInt::from(1) {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                }
            })
            .collect();
        option_lines.push(format!("  c_samples = {}", rendered.join(", ")));
    }
    if !option_lines.is_empty() {
        out.push_str("options:\n");
        for line in option_lines {
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const PENCIL: &str = "\
# pencil derivation
vars: X, Y
params:
derivation:
  D X = X
  D Y = Y
options:
  max_deg = 1
";

    #[test]
    fn parses_a_basic_problem() {
        let problem = parse_problem(PENCIL, false).unwrap();
        assert_eq!(problem.ring.ring().vars(), &["X", "Y"]);
        assert_eq!(problem.options.max_deg, Some(1));
        assert!(problem.clearing_factor.is_none());
    }

    #[test]
    fn missing_image_is_reported_by_name() {
        let text = "vars: X, Y\nderivation:\n  D X = X\n";
        let err = parse_problem(text, false).unwrap_err();
        assert!(err.to_string().contains("no derivation image for `Y`"));
    }

    #[test]
    fn parse_errors_carry_line_and_column() {
        let text = "vars: X\nderivation:\n  D X = X +\n";
        match parse_problem(text, false).unwrap_err() {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 8);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rational_images_need_the_clearing_flag() {
        let text = "vars: X\nparams: t\nderivation:\n  D X = X / t\n  D t = t\n";
        let err = parse_problem(text, false).unwrap_err();
        assert!(err.to_string().contains("--clear-denominators"));

        let problem = parse_problem(text, true).unwrap();
        let ring = problem.ring.ring().clone();
        assert_eq!(
            problem.clearing_factor,
            Some(diffideal::parse_poly(&ring, "t").unwrap())
        );
        assert_eq!(problem.ring.image(0), &diffideal::parse_poly(&ring, "X").unwrap());
        assert_eq!(problem.ring.image(1), &diffideal::parse_poly(&ring, "t^2").unwrap());
    }

    #[test]
    fn round_trip_reproduces_the_ring() {
        let problem = parse_problem(PENCIL, false).unwrap();
        let rendered = render_problem(&problem.ring, &problem.options);
        let again = parse_problem(&rendered, false).unwrap();
        assert_eq!(again.ring, problem.ring);
        assert_eq!(again.options.max_deg, problem.options.max_deg);
    }

    #[test]
    fn rejects_bad_names_and_unknown_options() {
        assert!(parse_problem("vars: 1X\nderivation:\n  D 1X = 1\n", false).is_err());
        assert!(parse_problem("vars: X\nderivation:\n  D X = X\noptions:\n  frob = 1\n", false)
            .is_err());
        assert!(parse_problem("stray\n", false).is_err());
    }
}
