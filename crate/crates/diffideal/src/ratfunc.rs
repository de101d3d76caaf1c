//! Rational functions: quotients of [`MultiPoly`] in canonical form.
//!
//! Canonical form means numerator and denominator are coprime and the
//! denominator is monic under the ring's default order. Equality of rational
//! functions is then structural equality.

use crate::error::{Error, Result};
use crate::gcd::multivariate_gcd;
use crate::poly::{MultiPoly, Rat};
use crate::ring::{ensure_same_ring, Ring};
use num_traits::One;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    /// Builds `num / den` and simplifies to canonical form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        ensure_same_ring(num.ring(), den.ring())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero("zero denominator".into()));
        }
        let ring = Arc::clone(num.ring());
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: MultiPoly::one(&ring),
            });
        }
        let order = ring.default_order();
        let g = multivariate_gcd(&num, &den)?;
        let mut num = num.exact_div(&g)?.expect("gcd divides numerator");
        let mut den = den.exact_div(&g)?.expect("gcd divides denominator");
        let lc = den
            .leading_coefficient(&order)
            .expect("nonzero denominator")
            .clone();
        let inv = Rat::one() / lc;
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let ring = Arc::clone(p.ring());
        RationalFunction {
            num: p,
            den: MultiPoly::one(&ring),
        }
    }

    pub fn from_rat(ring: &Arc<Ring>, c: Rat) -> Self {
        Self::from_poly(MultiPoly::constant(ring, c))
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::from_poly(MultiPoly::zero(ring))
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::from_poly(MultiPoly::one(ring))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True if the value is a polynomial (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&MultiPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// True if the value is a rational number (no symbols at all).
    pub fn is_rational_number(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// True if numerator and denominator involve only parameters, i.e. the
    /// value lies in the coefficient field.
    pub fn is_parameter_only(&self) -> bool {
        let nv = self.ring().num_vars();
        !(0..nv).any(|i| self.num.degree_in(i) > 0 || self.den.degree_in(i) > 0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        ensure_same_ring(self.ring(), other.ring())?;
        RationalFunction::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        ensure_same_ring(self.ring(), other.ring())?;
        RationalFunction::new(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        ensure_same_ring(self.ring(), other.ring())?;
        RationalFunction::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        ensure_same_ring(self.ring(), other.ring())?;
        if other.is_zero() {
            return Err(Error::DivisionByZero("division by zero rational function".into()));
        }
        RationalFunction::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn negated(&self) -> Self {
        RationalFunction {
            num: self.num.negated(),
            den: self.den.clone(),
        }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("reciprocal of zero".into()));
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 {
            self.reciprocal()?
        } else {
            self.clone()
        };
        let mut out = Self::one(self.ring());
        for _ in 0..n.unsigned_abs() {
            out = out.checked_mul(&base)?;
        }
        Ok(out)
    }

    /// Cross-multiplication equality: true iff the two quotients denote the
    /// same element of the fraction field.
    pub fn equivalent(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn render(&self, order: &crate::ring::MonomialOrder) -> String {
        crate::text::render_ratfunc(self, order)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_add(rhs).expect("rational function +")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_sub(rhs).expect("rational function -")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_mul(rhs).expect("rational function *")
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("rational function /")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.negated()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&self.ring().default_order()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_poly, parse_ratfunc};

    fn ring_xy() -> Arc<Ring> {
        Ring::new(&["X", "Y"], &[]).unwrap()
    }

    #[test]
    fn simplification_examples() {
        let r = ring_xy();
        let f = parse_ratfunc(&r, "X^2 - Y^2 / X - Y").unwrap();
        assert_eq!(f.num(), &parse_poly(&r, "X + Y").unwrap());
        assert!(f.is_polynomial());

        let g = parse_ratfunc(&r, "2*X / 2*Y").unwrap();
        assert_eq!(g.num(), &parse_poly(&r, "X").unwrap());
        assert_eq!(g.den(), &parse_poly(&r, "Y").unwrap());

        let h = parse_ratfunc(&r, "X*Y + Y^2 / Y^2").unwrap();
        assert_eq!(h.num(), &parse_poly(&r, "X + Y").unwrap());
        assert_eq!(h.den(), &parse_poly(&r, "Y").unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent_and_monic() {
        let r = ring_xy();
        let f = parse_ratfunc(&r, "3*X / 6*Y - 3").unwrap();
        // Denominator is monic, numerator carries the scale.
        assert_eq!(f.den(), &parse_poly(&r, "Y - 1/2").unwrap());
        assert_eq!(f.num(), &parse_poly(&r, "1/2*X").unwrap());
        let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn cross_multiplication_equality_matches_canonical_equality() {
        let r = ring_xy();
        let a = parse_ratfunc(&r, "X^2 + X*Y / X*Y + Y^2").unwrap();
        let b = parse_ratfunc(&r, "X / Y").unwrap();
        assert!(a.equivalent(&b));
        assert_eq!(a, b);
    }

    #[test]
    fn zero_denominator_rejected() {
        let r = ring_xy();
        let num = parse_poly(&r, "X").unwrap();
        assert!(RationalFunction::new(num, MultiPoly::zero(&r)).is_err());
    }

    #[test]
    fn arithmetic_and_powers() {
        let r = ring_xy();
        let x_over_y = parse_ratfunc(&r, "X / Y").unwrap();
        let sum = &x_over_y + &x_over_y.reciprocal().unwrap();
        assert_eq!(sum, parse_ratfunc(&r, "X^2 + Y^2 / X*Y").unwrap());
        let sq = x_over_y.powi(-2).unwrap();
        assert_eq!(sq, parse_ratfunc(&r, "Y^2 / X^2").unwrap());
    }
}
