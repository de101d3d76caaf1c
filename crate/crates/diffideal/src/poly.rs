//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are a `BTreeMap` from exponent vector to nonzero coefficient, so the
//! zero polynomial is the empty map and structural equality is canonical
//! equality. The map's key order is plain lexicographic on exponents; it is a
//! storage order only, unrelated to the monomial order used for Groebner
//! computations.

use crate::error::{Error, Result};
use crate::ring::{ensure_same_ring, Monomial, MonomialOrder, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Arbitrary-precision rational scalar. `num_rational` keeps values in
/// canonical form: positive denominator, reduced fraction.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

/// Sparse exact multivariate polynomial over [`Rat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MultiPoly {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rat) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.num_symbols()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rat::one())
    }

    /// The polynomial consisting of the single symbol at `index`.
    pub fn symbol(ring: &Arc<Ring>, index: usize) -> Self {
        let mut p = Self::zero(ring);
        p.terms
            .insert(Monomial::var(ring.num_symbols(), index), Rat::one());
        p
    }

    /// The symbol with the given name; None if not declared.
    pub fn symbol_named(ring: &Arc<Ring>, name: &str) -> Option<Self> {
        ring.symbol_index(name).map(|i| Self::symbol(ring, i))
    }

    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Degree in the single symbol `index`.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(index)).max().unwrap_or(0)
    }

    /// True if some term has a positive exponent on a main variable.
    pub fn involves_main_variable(&self) -> bool {
        let nv = self.ring.num_vars();
        self.terms
            .keys()
            .any(|m| (0..nv).any(|i| m.exponent(i) > 0))
    }

    /// True if the polynomial is a rational constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value if `is_constant`.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        ensure_same_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        ensure_same_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        ensure_same_ring(&self.ring, &other.ring)?;
        let mut out = MultiPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> MultiPoly {
        MultiPoly {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one(&self.ring);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Leading term (monomial, coefficient) under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.compare(a, b))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self, order: &MonomialOrder) -> Option<&Rat> {
        self.leading_term(order).map(|(_, c)| c)
    }

    /// Divides by the leading coefficient under `order`. Zero stays zero.
    pub fn monic(&self, order: &MonomialOrder) -> MultiPoly {
        match self.leading_coefficient(order) {
            None => self.clone(),
            Some(lc) => {
                let inv = Rat::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Exact division: `Some(q)` with `self = q * b` if `b` divides `self`,
    /// `None` if the division leaves a remainder, an error if `b` is zero.
    pub fn exact_div(&self, b: &MultiPoly) -> Result<Option<MultiPoly>> {
        ensure_same_ring(&self.ring, &b.ring)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero("exact division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Some(MultiPoly::zero(&self.ring)));
        }
        // Single-divisor division under any fixed order: if b divides self,
        // every intermediate leading term is divisible by b's leading term.
        let order = self.ring.default_order();
        let (bm, bc) = b.leading_term(&order).expect("nonzero divisor");
        let bm = bm.clone();
        let bc = bc.clone();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.ring);
        while let Some((rm, rc)) = rem.leading_term(&order) {
            if !bm.divides(rm) {
                return Ok(None);
            }
            let qm = bm.quotient_into(rm);
            let qc = rc / &bc;
            quot.add_term(qm.clone(), qc.clone());
            rem = &rem - &b.mul_term(&qm, &qc);
        }
        Ok(Some(quot))
    }

    /// Partial derivative with respect to the symbol at `index`.
    pub fn partial_derivative(&self, index: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            if let Some(lower) = m.step_down(index) {
                let e = Rat::from(BigInt::from(m.exponent(index)));
                out.add_term(lower, c * e);
            }
        }
        out
    }

    /// Substitutes the rational value `v` for the symbol at `index`.
    pub fn substitute(&self, index: usize, v: &Rat) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= v;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] = 0;
            out.add_term(Monomial::new(exps), coeff);
        }
        out
    }

    /// Evaluates at a full point (one value per symbol).
    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        debug_assert_eq!(point.len(), self.ring.num_symbols());
        let mut sum = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            sum += v;
        }
        sum
    }

    /// The positive rational `r` such that `r * self` has coprime integer
    /// coefficients. Zero gives 1.
    fn integer_normalization_factor(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        Rat::new(den_lcm, num_gcd)
    }

    /// Integer-primitive associate: coprime integer coefficients with the
    /// canonical-sign rule (the storage-order largest monomial has a positive
    /// coefficient). Zero stays zero. The result is independent of any
    /// monomial order, so it is a stable normal form for associates.
    pub fn integer_primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = self.scale(&self.integer_normalization_factor());
        let lead = out.terms.iter().next_back().map(|(_, c)| c.clone()).unwrap();
        if lead.is_negative() {
            out = out.negated();
        }
        out
    }

    /// True if `self` and `other` differ by a nonzero rational factor.
    pub fn is_associate(&self, other: &MultiPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.integer_primitive() == other.integer_primitive()
    }

    /// Renders using `order` for term layout. See [`crate::text`] for the
    /// grammar; `Display` uses the ring's default order.
    pub fn render(&self, order: &MonomialOrder) -> String {
        crate::text::render_poly(self, order)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.negated()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&self.ring.default_order()))
    }
}
