//! Shared test utilities: seeded random generators and independent oracles.
//!
//! The oracles here deliberately avoid the library's Groebner and search
//! machinery. Membership is decided by exact linear algebra on a Macaulay
//! matrix of bounded degree, and Darboux pairs are found by enumerating
//! primitive integer coefficient vectors in a box and checking divisibility
//! directly.

#![allow(dead_code)]

use diffideal::poly::{rat_int, MultiPoly, Rat};
use diffideal::ring::{monomials_up_to_degree, Monomial, Ring};
use diffideal::{verify_darboux, DarbouxPair, DifferentialRing};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational with numerator and denominator bounded by `bound`.
pub fn random_rat(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    let numer = rng.gen_range(-bound..=bound);
    let denom = if rng.gen_bool(0.3) {
        rng.gen_range(1..=bound)
    } else {
        1
    };
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Random polynomial with total degree at most `max_deg` and roughly
/// `max_terms` terms. May be zero.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    ring: &Arc<Ring>,
    max_deg: u32,
    max_terms: usize,
    coeff_bound: i64,
) -> MultiPoly {
    let monos = monomials_up_to_degree(ring.num_symbols(), max_deg);
    let mut p = MultiPoly::zero(ring);
    let terms = rng.gen_range(0..=max_terms);
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        let c = random_rat(rng, coeff_bound);
        p = &p + &MultiPoly::from_terms(ring, [(m, c)]);
    }
    p
}

pub fn random_nonzero_poly(
    rng: &mut ChaCha8Rng,
    ring: &Arc<Ring>,
    max_deg: u32,
    max_terms: usize,
    coeff_bound: i64,
) -> MultiPoly {
    loop {
        let p = random_poly(rng, ring, max_deg, max_terms, coeff_bound);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Consistency of the exact linear system `A x = b` via Gauss elimination on
/// the augmented matrix. Rows and columns are plain vectors; nothing is
/// shared with the library's linear algebra.
fn linear_system_solvable(columns: &[Vec<Rat>], rhs: &[Rat]) -> bool {
    let rows = rhs.len();
    let cols = columns.len();
    // Augmented matrix, row-major.
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = {
            let v = m[pivot_row][col].clone();
            Rat::new(v.denom().clone(), v.numer().clone())
        };
        for c in col..=cols {
            m[pivot_row][c] = &m[pivot_row][c] * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    m[r][c] = &m[r][c] - &(&f * &m[pivot_row][c]);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    // Inconsistent iff a row reads 0 = nonzero.
    for r in 0..rows {
        if m[r][..cols].iter().all(Rat::is_zero) && !m[r][cols].is_zero() {
            return false;
        }
    }
    true
}

/// Membership oracle: is `p` a Q-linear combination of monomial multiples
/// `m * g` of total degree at most `deg(p) + 4`? A bounded-degree membership
/// test, independent of any Groebner computation.
pub fn macaulay_membership(p: &MultiPoly, gens: &[MultiPoly]) -> bool {
    if p.is_zero() {
        return true;
    }
    let ring = p.ring();
    let bound = p.total_degree() + 4;
    let row_monos = monomials_up_to_degree(ring.num_symbols(), bound);
    let row_index = |m: &Monomial| row_monos.iter().position(|r| r == m).unwrap();
    let mut columns: Vec<Vec<Rat>> = Vec::new();
    for g in gens {
        if g.is_zero() || g.total_degree() > bound {
            continue;
        }
        for m in monomials_up_to_degree(ring.num_symbols(), bound - g.total_degree()) {
            let prod = g.mul_term(&m, &Rat::one());
            let mut col = vec![Rat::zero(); row_monos.len()];
            for (mono, c) in prod.terms() {
                col[row_index(mono)] = c.clone();
            }
            columns.push(col);
        }
    }
    let mut rhs = vec![Rat::zero(); row_monos.len()];
    for (mono, c) in p.terms() {
        rhs[row_index(mono)] = c.clone();
    }
    linear_system_solvable(&columns, &rhs)
}

/// Exhaustive Darboux enumeration: every primitive integer coefficient
/// vector over the monomials of degree <= `max_deg`, with entries in
/// `[-bound, bound]` and canonical sign, is checked for `w | D(w)` by exact
/// division. The same ascending-degree divisibility filter as the search is
/// applied. Complete for pairs whose normalized coefficients fit the box.
pub fn brute_force_darboux(
    ring: &DifferentialRing,
    max_deg: u32,
    bound: i64,
    include_zero_cofactors: bool,
) -> Vec<(MultiPoly, MultiPoly)> {
    let base = ring.ring();
    let monos = monomials_up_to_degree(base.num_symbols(), max_deg);
    let k = monos.len();
    let width = (2 * bound + 1) as u64;
    let total = width.pow(k as u32);
    let mut found: Vec<(MultiPoly, MultiPoly)> = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut coeffs = vec![0i64; k];
        for slot in coeffs.iter_mut() {
            *slot = (c % width) as i64 - bound;
            c /= width;
        }
        // Canonical sign: the highest nonzero slot (monomials are generated
        // in ascending storage order) must be positive.
        let Some(last) = coeffs.iter().rposition(|&x| x != 0) else {
            continue;
        };
        if coeffs[last] < 0 {
            continue;
        }
        // Primitive vectors only.
        let mut g = 0i64;
        for &x in &coeffs {
            g = gcd_i64(g, x.abs());
        }
        if g != 1 {
            continue;
        }
        let w = MultiPoly::from_terms(
            base,
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (monos[i].clone(), rat_int(x))),
        );
        if !w.involves_main_variable() {
            continue;
        }
        if let Some(z) = verify_darboux(ring, &w).unwrap() {
            if include_zero_cofactors || !z.is_zero() {
                found.push((w, z));
            }
        }
    }
    found.sort_by_key(|(w, _)| w.total_degree());
    let mut kept: Vec<(MultiPoly, MultiPoly)> = Vec::new();
    for (w, z) in found {
        let divisible = kept.iter().any(|(kw, _)| {
            kw.total_degree() < w.total_degree()
                && w.exact_div(kw).map(|q| q.is_some()).unwrap_or(false)
        });
        if !divisible {
            kept.push((w, z));
        }
    }
    kept
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

/// Renders a pair set as sorted strings for order-insensitive comparison.
pub fn pair_set_strings(pairs: &[DarbouxPair]) -> Vec<String> {
    let mut out: Vec<String> = pairs
        .iter()
        .map(|p| format!("{} | {}", p.w(), p.cofactor()))
        .collect();
    out.sort();
    out
}

pub fn raw_pair_set_strings(pairs: &[(MultiPoly, MultiPoly)]) -> Vec<String> {
    let mut out: Vec<String> = pairs
        .iter()
        .map(|(w, z)| format!("{w} | {z}"))
        .collect();
    out.sort();
    out
}
