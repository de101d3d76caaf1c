//! Rational solutions of zero-dimensional polynomial systems.
//!
//! Solving works on the lex basis: the reduced basis of a zero-dimensional
//! ideal contains exactly one polynomial univariate in the lex-least symbol;
//! its rational roots (found by the rational root theorem on the primitive
//! integer form) are substituted and the smaller system is re-solved.
//! Solutions with any non-rational coordinate are counted, not computed: each
//! residual univariate factor of degree d contributes d times the product of
//! the staircase degrees of the remaining symbols. The count is exact when
//! the lex basis is a triangular tower and an upper-bound bookkeeping figure
//! otherwise.

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, Ideal};
use crate::poly::{MultiPoly, Rat};
use crate::ring::{MonomialOrder, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Outcome of a rational solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSolutions {
    /// All solutions with every coordinate rational, one entry per ring
    /// symbol, sorted lexicographically.
    pub points: Vec<Vec<Rat>>,
    /// Bookkeeping count of algebraic solutions that were not returned.
    pub nonrational_count: u64,
}

/// Lex analysis of a polynomial system.
#[derive(Debug, Clone)]
pub enum LexOutcome {
    /// The ideal is the unit ideal: no solutions at all.
    NoSolutions,
    /// Zero-dimensional: finitely many solutions over the algebraic closure.
    ZeroDimensional(RationalSolutions),
    /// Not zero-dimensional; the listed symbols have no pure power among the
    /// leading monomials.
    PositiveDimensional { free_symbols: Vec<usize> },
}

/// Degree of the smallest pure-power leading monomial per symbol, when one
/// exists. A symbol with `None` has no pure power in the leading-term ideal;
/// the ideal is zero-dimensional iff no symbol that still occurs is `None`.
fn staircase_degrees(gb: &GroebnerBasis, ring: &Arc<Ring>) -> Vec<Option<u32>> {
    let n = ring.num_symbols();
    let mut degrees = vec![None; n];
    for b in gb.basis() {
        let lm = b.leading_monomial(gb.order()).unwrap();
        let mut support: Option<usize> = None;
        let mut pure = true;
        for i in 0..n {
            if lm.exponent(i) > 0 {
                if support.is_some() {
                    pure = false;
                    break;
                }
                support = Some(i);
            }
        }
        if pure {
            if let Some(i) = support {
                let d = lm.exponent(i);
                if degrees[i].map_or(true, |old| d < old) {
                    degrees[i] = Some(d);
                }
            }
        }
    }
    degrees
}

/// Number of monomials outside the leading-term staircase (the Q-dimension
/// of the quotient), for a zero-dimensional lex basis.
pub fn standard_monomial_count(gb: &GroebnerBasis, ring: &Arc<Ring>) -> Option<u64> {
    let degrees = staircase_degrees(gb, ring)
        .into_iter()
        .collect::<Option<Vec<u32>>>()?;
    let leads: Vec<_> = gb
        .basis()
        .iter()
        .map(|b| b.leading_monomial(gb.order()).unwrap().clone())
        .collect();
    let mut count = 0u64;
    let mut exps = vec![0u32; ring.num_symbols()];
    fn rec(
        exps: &mut Vec<u32>,
        pos: usize,
        degrees: &[u32],
        leads: &[crate::ring::Monomial],
        count: &mut u64,
    ) {
        if pos == exps.len() {
            let m = crate::ring::Monomial::new(exps.clone());
            if !leads.iter().any(|l| l.divides(&m)) {
                *count += 1;
            }
            return;
        }
        for e in 0..degrees[pos] {
            exps[pos] = e;
            rec(exps, pos + 1, degrees, leads, count);
        }
        exps[pos] = 0;
    }
    rec(&mut exps, 0, &degrees, &leads, &mut count);
    Some(count)
}

/// Positive divisors of `|n|` by trial division; `n` must be nonzero.
fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    let root = n.sqrt();
    while d <= root {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Coefficients of `p` as a univariate polynomial in `sym` (ascending), or
/// None if another symbol occurs.
fn as_univariate(p: &MultiPoly, sym: usize) -> Option<Vec<Rat>> {
    let mut coeffs = vec![Rat::zero(); p.degree_in(sym) as usize + 1];
    for (m, c) in p.terms() {
        if !m.supported_on(|i| i == sym) {
            return None;
        }
        coeffs[m.exponent(sym) as usize] = c.clone();
    }
    Some(coeffs)
}

/// Rational roots (sorted ascending, with multiplicity) and the degree of the
/// residual factor with no rational roots.
fn rational_roots(coeffs: &[Rat]) -> (Vec<(Rat, u32)>, u32) {
    // Scale to a primitive integer polynomial.
    let mut den_lcm = BigInt::one();
    for c in coeffs {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    while ints.last().map_or(false, Zero::is_zero) {
        ints.pop();
    }
    if ints.is_empty() {
        // Zero polynomial: callers never pass this.
        return (Vec::new(), 0);
    }
    let mut roots: Vec<(Rat, u32)> = Vec::new();

    // Factor out the power of the variable itself.
    let zero_mult = ints.iter().take_while(|c| c.is_zero()).count() as u32;
    if zero_mult > 0 {
        ints.drain(..zero_mult as usize);
        roots.push((Rat::zero(), zero_mult));
    }
    if ints.len() <= 1 {
        return (roots, 0);
    }

    let mut current = ints;
    let mut candidates: BTreeSet<Rat> = BTreeSet::new();
    let trailing = current.first().unwrap().clone();
    let leading = current.last().unwrap().clone();
    for p in positive_divisors(&trailing) {
        for q in positive_divisors(&leading) {
            let c = Rat::new(p.clone(), q.clone());
            candidates.insert(c.clone());
            candidates.insert(-c);
        }
    }
    for cand in candidates {
        if current.len() <= 1 {
            break;
        }
        let mut mult = 0u32;
        loop {
            // Horner evaluation on the current (deflated) polynomial.
            let rational_coeffs: Vec<Rat> = current.iter().map(|c| Rat::from(c.clone())).collect();
            let mut value = Rat::zero();
            for c in rational_coeffs.iter().rev() {
                value = &(&value * &cand) + c;
            }
            if !value.is_zero() {
                break;
            }
            // Synthetic division by (x - cand); exact because cand is a root.
            let d = current.len() - 1;
            let mut quotient = vec![Rat::zero(); d];
            quotient[d - 1] = Rat::from(current[d].clone());
            for i in (0..d - 1).rev() {
                quotient[i] = &Rat::from(current[i + 1].clone()) + &(&cand * &quotient[i + 1]);
            }
            // Re-normalize to integers for the next round.
            let mut lcm = BigInt::one();
            for c in &quotient {
                lcm = lcm.lcm(c.denom());
            }
            current = quotient
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect();
            mult += 1;
        }
        if mult > 0 {
            roots.push((cand, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let residual = (current.len() - 1) as u32;
    (roots, residual)
}

fn is_unit_basis(gb: &GroebnerBasis) -> bool {
    gb.is_unit_ideal()
}

fn solve_rec(
    gb: &GroebnerBasis,
    ring: &Arc<Ring>,
    remaining: &[usize],
    assignment: &mut Vec<Rat>,
    points: &mut Vec<Vec<Rat>>,
    nonrational: &mut u64,
) {
    if is_unit_basis(gb) {
        return;
    }
    let Some((&sym, rest)) = remaining.split_last() else {
        points.push(assignment.clone());
        return;
    };
    // Substitution keeps the system zero-dimensional over the remaining
    // symbols, so the staircase entries used below are always present.
    let degrees = staircase_degrees(gb, ring);
    let univariate = gb
        .basis()
        .iter()
        .find_map(|b| as_univariate(b, sym))
        .expect("zero-dimensional basis has a univariate element in the least symbol");
    let (roots, residual) = rational_roots(&univariate);
    if residual > 0 {
        let mut below: u64 = 1;
        for &r in rest {
            below = below.saturating_mul(degrees[r].unwrap_or(1) as u64);
        }
        *nonrational += residual as u64 * below;
    }
    for (root, _mult) in roots {
        let substituted: Vec<MultiPoly> = gb
            .basis()
            .iter()
            .map(|b| b.substitute(sym, &root))
            .filter(|p| !p.is_zero())
            .collect();
        assignment[sym] = root.clone();
        if rest.is_empty() {
            if substituted.is_empty() {
                points.push(assignment.clone());
            }
            // A nonzero constant residue cannot occur: the remaining
            // generators are univariate in `sym` and vanish at a true root,
            // but guard anyway.
            else if substituted.iter().all(MultiPoly::is_zero) {
                points.push(assignment.clone());
            }
        } else {
            let sub_gb = buchberger(&substituted, gb.order());
            solve_rec(&sub_gb, ring, rest, assignment, points, nonrational);
        }
        assignment[sym] = Rat::zero();
    }
}

/// Runs the lex analysis on raw generators.
pub fn analyze_lex(gens: &[MultiPoly], ring: &Arc<Ring>) -> LexOutcome {
    let order = MonomialOrder::lex(ring);
    let gb = buchberger(gens, &order);
    if gb.is_unit_ideal() {
        return LexOutcome::NoSolutions;
    }
    let degrees = staircase_degrees(&gb, ring);
    let free_symbols: Vec<usize> = (0..ring.num_symbols())
        .filter(|&i| degrees[i].is_none())
        .collect();
    if !free_symbols.is_empty() {
        return LexOutcome::PositiveDimensional { free_symbols };
    }
    let all: Vec<usize> = (0..ring.num_symbols()).collect();
    let mut assignment = vec![Rat::zero(); ring.num_symbols()];
    let mut points = Vec::new();
    let mut nonrational = 0u64;
    solve_rec(&gb, ring, &all, &mut assignment, &mut points, &mut nonrational);
    points.sort();
    LexOutcome::ZeroDimensional(RationalSolutions {
        points,
        nonrational_count: nonrational,
    })
}

/// All solutions of the ideal with every coordinate in Q. Errors if the
/// ideal is not zero-dimensional; solutions outside Q are counted in
/// `nonrational_count`, never silently dropped.
pub fn solve_zero_dim_rational(ideal: &Ideal) -> Result<RationalSolutions> {
    let ring = ideal.ring().ring();
    match analyze_lex(ideal.generators(), ring) {
        LexOutcome::NoSolutions => Ok(RationalSolutions {
            points: Vec::new(),
            nonrational_count: 0,
        }),
        LexOutcome::PositiveDimensional { free_symbols } => {
            let names: Vec<&str> = free_symbols
                .iter()
                .map(|&i| ring.symbol_name(i))
                .collect();
            Err(Error::Dimension(format!(
                "ideal is not zero-dimensional: no pure power of {} among the leading terms",
                names.join(", ")
            )))
        }
        LexOutcome::ZeroDimensional(sols) => {
            for point in &sols.points {
                for g in ideal.generators() {
                    debug_assert!(
                        g.evaluate(point).is_zero(),
                        "solver returned a non-solution"
                    );
                }
            }
            Ok(sols)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::DifferentialRing;
    use crate::poly::{rat, rat_int};

    fn trivial_ring_xy() -> DifferentialRing {
        DifferentialRing::build(&["X", "Y"], &[], &[("X", "0"), ("Y", "0")]).unwrap()
    }

    #[test]
    fn substitution_solve() {
        let d = trivial_ring_xy();
        let i = Ideal::parse(&d, &["X^2 - 1", "Y - X"]).unwrap();
        let sols = solve_zero_dim_rational(&i).unwrap();
        assert_eq!(
            sols.points,
            vec![vec![rat_int(-1), rat_int(-1)], vec![rat_int(1), rat_int(1)]]
        );
        assert_eq!(sols.nonrational_count, 0);
    }

    #[test]
    fn nonrational_roots_are_counted() {
        let d = trivial_ring_xy();
        let i = Ideal::parse(&d, &["X^2 + 1", "Y"]).unwrap();
        let sols = solve_zero_dim_rational(&i).unwrap();
        assert!(sols.points.is_empty());
        assert_eq!(sols.nonrational_count, 2);
    }

    #[test]
    fn origin_only() {
        let d = trivial_ring_xy();
        let i = Ideal::parse(&d, &["X", "Y"]).unwrap();
        let sols = solve_zero_dim_rational(&i).unwrap();
        assert_eq!(sols.points, vec![vec![rat_int(0), rat_int(0)]]);
    }

    #[test]
    fn positive_dimensional_is_an_error() {
        let d = trivial_ring_xy();
        let i = Ideal::parse(&d, &["X"]).unwrap();
        assert!(matches!(
            solve_zero_dim_rational(&i),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn fractional_roots_and_multiplicity() {
        let d = trivial_ring_xy();
        // (2X - 1)^2 (X + 3) = 0, Y = X.
        let i = Ideal::parse(&d, &["4*X^3 + 8*X^2 - 11*X + 3", "Y - X"]).unwrap();
        let sols = solve_zero_dim_rational(&i).unwrap();
        assert_eq!(
            sols.points,
            vec![vec![rat_int(-3), rat_int(-3)], vec![rat(1, 2), rat(1, 2)]]
        );
        assert_eq!(sols.nonrational_count, 0);
    }

    #[test]
    fn mixed_rational_and_algebraic() {
        let d = trivial_ring_xy();
        // X^3 - 2X = X (X^2 - 2): one rational root, two algebraic.
        let i = Ideal::parse(&d, &["X^3 - 2*X", "Y - 1"]).unwrap();
        let sols = solve_zero_dim_rational(&i).unwrap();
        assert_eq!(sols.points, vec![vec![rat_int(0), rat_int(1)]]);
        assert_eq!(sols.nonrational_count, 2);
    }

    #[test]
    fn standard_monomials_counted() {
        let d = trivial_ring_xy();
        let ring = d.ring().clone();
        let i = Ideal::parse(&d, &["X^2 + 1", "Y^3 - Y"]).unwrap();
        let gb = i.groebner(&MonomialOrder::lex(&ring));
        assert_eq!(standard_monomial_count(&gb, &ring), Some(6));
    }
}
