//! Multivariate GCD over Q via the recursive content/primitive-part
//! Euclidean algorithm with pseudo-division. Adequate at desk scale; no
//! modular arithmetic.

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ring::ensure_same_ring;

/// Highest symbol index occurring in `p` with positive degree.
fn top_symbol(p: &MultiPoly) -> Option<usize> {
    let n = p.ring().num_symbols();
    (0..n).rev().find(|&i| p.degree_in(i) > 0)
}

/// Coefficients of `p` viewed as univariate in `sym`, ascending degree.
/// Each coefficient lives in the same ambient ring with `sym`-degree 0.
fn univariate_coefficients(p: &MultiPoly, sym: usize) -> Vec<MultiPoly> {
    let deg = p.degree_in(sym) as usize;
    let mut coeffs = vec![MultiPoly::zero(p.ring()); deg + 1];
    for (m, c) in p.terms() {
        let e = m.exponent(sym) as usize;
        let mut exps = m.exponents().to_vec();
        exps[sym] = 0;
        coeffs[e].add_term(crate::ring::Monomial::new(exps), c.clone());
    }
    coeffs
}

/// Content of `p` with respect to `sym`: the GCD of its univariate
/// coefficients.
fn content_in(p: &MultiPoly, sym: usize) -> MultiPoly {
    let coeffs = univariate_coefficients(p, sym);
    let mut content = MultiPoly::zero(p.ring());
    for c in coeffs.into_iter().filter(|c| !c.is_zero()) {
        content = gcd_rec(&content, &c);
        if content.is_constant() && !content.is_zero() {
            break;
        }
    }
    content
}

fn primitive_part_in(p: &MultiPoly, sym: usize) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let content = content_in(p, sym);
    p.exact_div(&content)
        .expect("content is nonzero")
        .expect("content divides exactly")
}

/// Coefficient of `sym^power` in `p`, a polynomial in the remaining symbols.
fn coefficient_of_power(p: &MultiPoly, sym: usize, power: u32) -> MultiPoly {
    let mut out = MultiPoly::zero(p.ring());
    for (m, c) in p.terms() {
        if m.exponent(sym) == power {
            let mut exps = m.exponents().to_vec();
            exps[sym] = 0;
            out.add_term(crate::ring::Monomial::new(exps), c.clone());
        }
    }
    out
}

/// Canonical pseudo-remainder `lc(g)^(deg f - deg g + 1) * f mod g` viewed
/// univariately in `sym`.
fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, sym: usize) -> MultiPoly {
    let dg = g.degree_in(sym);
    let lc_g = coefficient_of_power(g, sym, dg);
    let mut r = f.clone();
    let mut pad = (f.degree_in(sym) - dg) as i64 + 1;
    while !r.is_zero() && r.degree_in(sym) >= dg {
        let dr = r.degree_in(sym);
        let lc_r = coefficient_of_power(&r, sym, dr);
        let shift = MultiPoly::from_terms(
            r.ring(),
            [(
                crate::ring::Monomial::var(r.ring().num_symbols(), sym).pow(dr - dg),
                crate::poly::rat_int(1),
            )],
        );
        r = &(&r * &lc_g) - &(&(&lc_r * &shift) * g);
        pad -= 1;
    }
    for _ in 0..pad {
        r = &r * &lc_g;
    }
    r
}

/// `factor * base^(pos - neg)` with a possibly negative exponent; negative
/// powers are exact divisions (the subresultant recurrence guarantees them).
fn mul_signed_power(factor: MultiPoly, base: &MultiPoly, pos: u32, neg: u32) -> MultiPoly {
    if pos >= neg {
        &factor * &base.pow(pos - neg)
    } else {
        factor
            .exact_div(&base.pow(neg - pos))
            .expect("nonzero subresultant divisor")
            .expect("subresultant power divides exactly")
    }
}

/// Subresultant pseudo-remainder sequence in `sym` (Brown-Traub): each
/// remainder is exactly divisible by a known factor, which keeps coefficient
/// growth polynomial without any content computations inside the loop.
/// Inputs must be nonzero with `deg_sym(f) >= deg_sym(g) >= 1`; the result is
/// a GCD of the primitive parts up to content in `sym`.
fn subresultant_prs(f: MultiPoly, g: MultiPoly, sym: usize) -> MultiPoly {
    let one = MultiPoly::one(f.ring());
    let mut f_prev = f;
    let mut f_cur = g;
    let mut n_prev = f_prev.degree_in(sym);
    let mut n_cur = f_cur.degree_in(sym);
    let mut a_prev = one.clone();
    let mut psi_prev = one;
    loop {
        let delta = n_prev - n_cur;
        let rem = pseudo_rem(&f_prev, &f_cur, sym);
        if rem.is_zero() {
            return f_cur;
        }
        let divisor = (&a_prev * &psi_prev.negated().pow(delta)).negated();
        let f_next = rem
            .exact_div(&divisor)
            .expect("nonzero subresultant divisor")
            .expect("subresultant divisor divides the remainder");
        let a_cur = coefficient_of_power(&f_cur, sym, n_cur);
        let psi_cur = mul_signed_power(a_cur.pow(delta), &psi_prev, n_cur + 1, n_prev);
        f_prev = f_cur;
        f_cur = f_next;
        n_prev = n_cur;
        n_cur = f_cur.degree_in(sym);
        a_prev = a_cur;
        psi_prev = psi_cur;
        if n_cur == 0 {
            // A nonzero remainder of sym-degree 0: the primitive parts are
            // coprime in sym.
            return f_cur;
        }
    }
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.integer_primitive();
    }
    if b.is_zero() {
        return a.integer_primitive();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.ring());
    }
    let sym = top_symbol(a)
        .into_iter()
        .chain(top_symbol(b))
        .max()
        .expect("non-constant operands");
    if a.degree_in(sym) == 0 {
        return gcd_rec(a, &content_in(b, sym));
    }
    if b.degree_in(sym) == 0 {
        return gcd_rec(&content_in(a, sym), b);
    }

    let content_gcd = gcd_rec(&content_in(a, sym), &content_in(b, sym));
    let pa = primitive_part_in(a, sym);
    let pb = primitive_part_in(b, sym);
    let (f, g) = if pa.degree_in(sym) >= pb.degree_in(sym) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let prs = subresultant_prs(f, g, sym);
    let pf = if prs.degree_in(sym) == 0 {
        MultiPoly::one(a.ring())
    } else {
        primitive_part_in(&prs.integer_primitive(), sym)
    };
    (&content_gcd * &pf).integer_primitive()
}

/// A greatest common divisor of `a` and `b`, normalized monic (leading
/// coefficient 1 under the ring's default order). Errors if both are zero.
pub fn multivariate_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    ensure_same_ring(a.ring(), b.ring())?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidInput("gcd(0, 0) is undefined".into()));
    }
    let order = a.ring().default_order();
    Ok(gcd_rec(a, b).monic(&order))
}

/// Least common multiple `a * b / gcd(a, b)`, normalized monic.
pub fn multivariate_lcm(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput("lcm with zero argument".into()));
    }
    let g = multivariate_gcd(a, b)?;
    let prod = a * b;
    let l = prod
        .exact_div(&g)?
        .expect("gcd divides the product exactly");
    let order = a.ring().default_order();
    Ok(l.monic(&order))
}
