//! Symbol declarations, exponent vectors, and monomial orders.
//!
//! A [`Ring`] declares an ordered list of symbols: main variables first, then
//! parameters. Polynomials are indexed by [`Monomial`] exponent vectors whose
//! length equals the ring's symbol count. Monomial comparison for Groebner
//! work goes through [`MonomialOrder`]; the `Ord` impl on `Monomial` itself is
//! plain lexicographic on the exponent slice and is used only as a canonical
//! storage key.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Declaration of the ambient polynomial ring: named symbols with main
/// variables before parameters.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    symbols: Vec<String>,
    num_vars: usize,
}

impl Ring {
    /// Declares a ring with the given main variables and parameters.
    /// Symbol names must be unique and nonempty.
    pub fn new(vars: &[&str], params: &[&str]) -> Result<Arc<Ring>> {
        let mut symbols: Vec<String> = Vec::with_capacity(vars.len() + params.len());
        for name in vars.iter().chain(params.iter()) {
            if name.is_empty() {
                return Err(Error::InvalidInput("empty symbol name".into()));
            }
            if symbols.iter().any(|s| s == name) {
                return Err(Error::InvalidInput(format!("duplicate symbol `{name}`")));
            }
            symbols.push((*name).to_string());
        }
        Ok(Arc::new(Ring {
            symbols,
            num_vars: vars.len(),
        }))
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn vars(&self) -> &[String] {
        &self.symbols[..self.num_vars]
    }

    pub fn params(&self) -> &[String] {
        &self.symbols[self.num_vars..]
    }

    pub fn symbol_name(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    /// True if the symbol at `index` is a main variable.
    pub fn is_var(&self, index: usize) -> bool {
        index < self.num_vars
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    /// The order used for canonical forms (monic denominators, display
    /// defaults): graded reverse lexicographic in declared symbol order.
    pub fn default_order(self: &Arc<Ring>) -> MonomialOrder {
        MonomialOrder::grevlex(self)
    }
}

/// Checks that two ring handles denote the same declaration.
pub fn ensure_same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!(
            "[{}] vs [{}]",
            a.symbols.join(", "),
            b.symbols.join(", ")
        )))
    }
}

/// Exponent vector over the ring's symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(num_symbols: usize) -> Self {
        Monomial {
            exps: vec![0; num_symbols],
        }
    }

    pub fn var(num_symbols: usize, index: usize) -> Self {
        let mut exps = vec![0; num_symbols];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise divisibility.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Exponent decremented at `index`; None if it is already zero.
    pub fn step_down(&self, index: usize) -> Option<Monomial> {
        if self.exps[index] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[index] -= 1;
        Some(Monomial { exps })
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * n).collect(),
        }
    }

    /// True if every symbol with a positive exponent satisfies `pred`.
    pub fn supported_on(&self, mut pred: impl FnMut(usize) -> bool) -> bool {
        self.exps
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || pred(i))
    }
}

/// Order kind selector for [`MonomialOrder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GrevLex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::Lex => write!(f, "lex"),
            OrderKind::GrevLex => write!(f, "grevlex"),
        }
    }
}

/// A total order on monomials compatible with multiplication and with 1 as
/// the minimum. `priority[k]` is the symbol index compared at priority `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    ring: Arc<Ring>,
}

impl MonomialOrder {
    pub fn lex(ring: &Arc<Ring>) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: (0..ring.num_symbols()).collect(),
            ring: Arc::clone(ring),
        }
    }

    pub fn grevlex(ring: &Arc<Ring>) -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            priority: (0..ring.num_symbols()).collect(),
            ring: Arc::clone(ring),
        }
    }

    pub fn of_kind(kind: OrderKind, ring: &Arc<Ring>) -> Self {
        match kind {
            OrderKind::Lex => Self::lex(ring),
            OrderKind::GrevLex => Self::grevlex(ring),
        }
    }

    /// Lex order that ranks the symbols in `first` highest (in their given
    /// order), followed by the remaining symbols in declared order. Used for
    /// elimination.
    pub fn lex_eliminating(ring: &Arc<Ring>, first: &[usize]) -> Self {
        let mut priority: Vec<usize> = first.to_vec();
        for i in 0..ring.num_symbols() {
            if !priority.contains(&i) {
                priority.push(i);
            }
        }
        MonomialOrder {
            kind: OrderKind::Lex,
            priority,
            ring: Arc::clone(ring),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.priority {
                    match a.exponent(i).cmp(&b.exponent(i)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Ties: the last position where the exponents differ decides,
                // with the smaller exponent winning.
                for &i in self.priority.iter().rev() {
                    match a.exponent(i).cmp(&b.exponent(i)) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.compare(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

/// All monomials of total degree at most `max_deg`, in an arbitrary but
/// deterministic order.
pub fn monomials_up_to_degree(num_symbols: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; num_symbols];
    fn rec(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos == current.len() {
            out.push(Monomial::new(current.clone()));
            return;
        }
        for e in 0..=remaining {
            current[pos] = e;
            rec(out, current, pos + 1, remaining - e);
        }
        current[pos] = 0;
    }
    rec(&mut out, &mut current, 0, max_deg);
    out
}
