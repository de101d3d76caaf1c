//! Buchberger Groebner engine and the ideal predicates built on it.
//!
//! S-pairs are processed smallest lcm degree first; intermediate results are
//! kept integer-primitive to control coefficient growth. The returned basis
//! is reduced and monic, so it is the unique reduced Groebner basis for the
//! given monomial order.

use crate::derivation::DifferentialRing;
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rat};
use crate::ring::{ensure_same_ring, MonomialOrder};
use num_traits::One;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

/// A reduced, monic Groebner basis together with its order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    basis: Vec<MultiPoly>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// True if the basis is `{1}`.
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    /// True if the basis is empty (the zero ideal).
    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Fully reduces `p` modulo `basis`: every term of the result is divisible by
/// no leading monomial of the basis. Unique for a reduced basis.
fn reduce_full(p: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> MultiPoly {
    let ring = p.ring();
    let leads: Vec<_> = basis
        .iter()
        .map(|b| {
            let (m, c) = b.leading_term(order).expect("basis elements are nonzero");
            (m.clone(), c.clone())
        })
        .collect();
    let mut cur = p.clone();
    let mut rem = MultiPoly::zero(ring);
    'outer: while let Some((lm, lc)) = cur.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        for (i, (bm, bc)) in leads.iter().enumerate() {
            if bm.divides(&lm) {
                let qm = bm.quotient_into(&lm);
                let qc = &lc / bc;
                cur = &cur - &basis[i].mul_term(&qm, &qc);
                continue 'outer;
            }
        }
        rem.add_term(lm.clone(), lc.clone());
        cur = &cur - &MultiPoly::from_terms(ring, [(lm, lc)]);
    }
    rem
}

/// Computes the reduced Groebner basis of the ideal generated by `gens`.
/// Deterministic for a fixed input and order; the zero ideal yields an empty
/// basis.
pub fn buchberger(gens: &[MultiPoly], order: &MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let g = g.integer_primitive();
            if !basis.contains(&g) {
                basis.push(g);
            }
        }
    }

    // Pair queue keyed by (lcm total degree, i, j): normal selection strategy.
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let enqueue = |pairs: &mut BTreeSet<(u32, usize, usize)>, basis: &[MultiPoly], k: usize| {
        let lk = basis[k].leading_monomial(order).unwrap().clone();
        for i in 0..k {
            let li = basis[i].leading_monomial(order).unwrap();
            let lcm = li.lcm(&lk);
            // Product criterion: coprime leading monomials reduce to zero.
            if lcm.total_degree() == li.total_degree() + lk.total_degree() {
                continue;
            }
            pairs.insert((lcm.total_degree(), i, k));
        }
    };
    for k in 0..basis.len() {
        enqueue(&mut pairs, &basis, k);
    }

    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        let (li, ci) = basis[i].leading_term(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let (lj, cj) = basis[j].leading_term(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let lcm = li.lcm(&lj);
        let s = {
            let left = basis[i].mul_term(&li.quotient_into(&lcm), &(Rat::one() / ci));
            let right = basis[j].mul_term(&lj.quotient_into(&lcm), &(Rat::one() / cj));
            &left - &right
        };
        let reduced = reduce_full(&s, &basis, order).integer_primitive();
        if !reduced.is_zero() {
            basis.push(reduced);
            enqueue(&mut pairs, &basis, basis.len() - 1);
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by
    // another's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let li = basis[i].leading_monomial(order).unwrap().clone();
        for j in 0..basis.len() {
            if i != j && keep[j] && basis[j].leading_monomial(order).unwrap().divides(&li) {
                let lj = basis[j].leading_monomial(order).unwrap();
                if lj == &li && j > i {
                    continue; // equal leading monomials: keep the earlier one
                }
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<MultiPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(b, k)| k.then_some(b))
        .collect();

    // Inter-reduce tails and normalize monic.
    let mut reduced: Vec<MultiPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, b)| (j != i).then(|| b.clone()))
            .collect();
        let r = reduce_full(&minimal[i], &others, order);
        if !r.is_zero() {
            reduced.push(r.monic(order));
        }
    }
    reduced.sort_by(|a, b| {
        order.compare(
            a.leading_monomial(order).unwrap(),
            b.leading_monomial(order).unwrap(),
        )
    });
    GroebnerBasis {
        basis: reduced,
        order: order.clone(),
    }
}

/// Remainder of `p` under multivariate division by the basis; zero iff `p`
/// lies in the ideal.
pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> MultiPoly {
    reduce_full(p, &gb.basis, &gb.order)
}

/// A finitely generated ideal in a differential ring. Generators are stored
/// nonzero and deduplicated; the zero ideal has no generators.
pub struct Ideal {
    ring: DifferentialRing,
    generators: Vec<MultiPoly>,
    gb_cache: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(ring: DifferentialRing, generators: Vec<MultiPoly>) -> Result<Self> {
        let mut gens: Vec<MultiPoly> = Vec::new();
        for g in generators {
            ensure_same_ring(ring.ring(), g.ring())?;
            if !g.is_zero() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Ideal {
            ring,
            generators: gens,
            gb_cache: OnceLock::new(),
        })
    }

    /// Parses generator texts in the ring.
    pub fn parse(ring: &DifferentialRing, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|t| crate::text::parse_poly(ring.ring(), t))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring.clone(), polys)
    }

    pub fn ring(&self) -> &DifferentialRing {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// The reduced Groebner basis under the ring's default order, computed
    /// once and cached.
    pub fn groebner_default(&self) -> &GroebnerBasis {
        self.gb_cache
            .get_or_init(|| buchberger(&self.generators, &self.ring.ring().default_order()))
    }

    pub fn groebner(&self, order: &MonomialOrder) -> GroebnerBasis {
        buchberger(&self.generators, order)
    }

    /// Ideal membership through the cached basis.
    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        ensure_same_ring(self.ring.ring(), p.ring())?;
        Ok(normal_form(p, self.groebner_default()).is_zero())
    }

    /// True if `1` lies in the ideal.
    pub fn is_unit_ideal(&self) -> bool {
        self.groebner_default().is_unit_ideal()
    }

    /// True if the ideal is proper (not the unit ideal).
    pub fn is_proper(&self) -> bool {
        !self.is_unit_ideal()
    }
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(gb) = self.gb_cache.get() {
            let _ = cache.set(gb.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            gb_cache: cache,
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators
    }
}

/// True iff `p` lies in the ideal generated by `ideal`'s generators.
pub fn ideal_membership(p: &MultiPoly, ideal: &Ideal) -> Result<bool> {
    ideal.contains(p)
}

/// True iff the derivative of every generator lies back in the ideal; by the
/// Leibniz rule this is equivalent to the ideal being closed under the
/// derivation.
pub fn is_differential_ideal(ideal: &Ideal) -> Result<bool> {
    for g in ideal.generators() {
        let dg = ideal.ring().derive_poly(g);
        if !ideal.contains(&dg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub const DEFAULT_CLOSURE_CAP: usize = 64;

/// The smallest differential ideal containing `ideal`: generator derivatives
/// are appended until the ideal is closed under the derivation. The cap
/// exists as an internal-consistency alarm; in a Noetherian ring the
/// iteration always stabilizes.
pub fn differential_closure(ideal: &Ideal, cap: usize) -> Result<Ideal> {
    let mut gens = ideal.generators().to_vec();
    for _ in 0..cap {
        let current = Ideal::new(ideal.ring().clone(), gens.clone())?;
        let mut missing: Vec<MultiPoly> = Vec::new();
        for g in current.generators() {
            let dg = ideal.ring().derive_poly(g);
            if !dg.is_zero() && !current.contains(&dg)? {
                let dg = dg.integer_primitive();
                if !missing.contains(&dg) {
                    missing.push(dg);
                }
            }
        }
        if missing.is_empty() {
            return Ok(current);
        }
        gens.extend(missing);
    }
    Err(Error::ClosureCapExceeded { rounds: cap })
}

/// Generators of the intersection of the ideal with the subring in the kept
/// symbols, via a lex basis that eliminates the others first. The result may
/// be the zero ideal.
pub fn elimination_ideal(ideal: &Ideal, keep: &[usize]) -> Result<Ideal> {
    let ring = ideal.ring().ring();
    let eliminated: Vec<usize> = (0..ring.num_symbols()).filter(|i| !keep.contains(i)).collect();
    let order = MonomialOrder::lex_eliminating(ring, &eliminated);
    let gb = buchberger(ideal.generators(), &order);
    let kept: Vec<MultiPoly> = gb
        .basis()
        .iter()
        .filter(|p| {
            p.terms()
                .all(|(m, _)| m.supported_on(|i| keep.contains(&i)))
        })
        .cloned()
        .collect();
    Ideal::new(ideal.ring().clone(), kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::OrderKind;
    use crate::text::parse_poly;

    fn circle() -> DifferentialRing {
        DifferentialRing::build(&["X", "Y"], &[], &[("X", "X"), ("Y", "Y")]).unwrap()
    }

    #[test]
    fn already_reduced_basis() {
        let d = circle();
        let ring = d.ring().clone();
        let i = Ideal::parse(&d, &["X", "Y"]).unwrap();
        for kind in [OrderKind::Lex, OrderKind::GrevLex] {
            let gb = i.groebner(&MonomialOrder::of_kind(kind, &ring));
            let polys: Vec<String> = gb.basis().iter().map(|p| p.to_string()).collect();
            assert_eq!(polys, ["Y", "X"]);
        }
    }

    #[test]
    fn one_reduction_step() {
        let d = circle();
        let ring = d.ring().clone();
        let i = Ideal::parse(&d, &["X + Y^2", "X"]).unwrap();
        let gb = i.groebner(&MonomialOrder::lex(&ring));
        let polys: Vec<String> = gb.basis().iter().map(|p| p.to_string()).collect();
        assert_eq!(polys, ["Y^2", "X"]);
    }

    #[test]
    fn unit_ideal_collapses() {
        let d = circle();
        let i = Ideal::parse(&d, &["X^2 + Y^2", "1"]).unwrap();
        assert!(i.groebner_default().is_unit_ideal());
        assert!(i.is_unit_ideal());
    }

    #[test]
    fn normal_form_examples() {
        let d = circle();
        let ring = d.ring().clone();
        let just_x = Ideal::parse(&d, &["X"]).unwrap();
        assert!(normal_form(&parse_poly(&ring, "X^2").unwrap(), just_x.groebner_default()).is_zero());
        assert_eq!(
            normal_form(&parse_poly(&ring, "Y").unwrap(), just_x.groebner_default()),
            parse_poly(&ring, "Y").unwrap()
        );

        let i = Ideal::parse(&d, &["X + Y^2", "X"]).unwrap();
        assert!(i.contains(&parse_poly(&ring, "X + 2*Y^2").unwrap()).unwrap());
        assert!(!i.contains(&parse_poly(&ring, "Y").unwrap()).unwrap());
    }

    #[test]
    fn differential_ideal_predicate() {
        let d = circle();
        assert!(is_differential_ideal(&Ideal::parse(&d, &["X^2 + Y^2"]).unwrap()).unwrap());
        assert!(!is_differential_ideal(&Ideal::parse(&d, &["X + Y^2"]).unwrap()).unwrap());
        assert!(is_differential_ideal(&Ideal::parse(&d, &["X", "Y"]).unwrap()).unwrap());
    }

    #[test]
    fn closure_examples() {
        let d = circle();
        let already = Ideal::parse(&d, &["X^2 + Y^2"]).unwrap();
        let closed = differential_closure(&already, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(closed.generators(), already.generators());

        // DY = X forces X in, then DX = X is stable.
        let d2 = DifferentialRing::build(&["X", "Y"], &[], &[("X", "X"), ("Y", "X")]).unwrap();
        let ring = d2.ring().clone();
        let i = Ideal::parse(&d2, &["Y"]).unwrap();
        let closed = differential_closure(&i, DEFAULT_CLOSURE_CAP).unwrap();
        assert!(is_differential_ideal(&closed).unwrap());
        assert!(closed.contains(&parse_poly(&ring, "X").unwrap()).unwrap());
        assert_eq!(closed.generators().len(), 2);

        let unit = Ideal::parse(&d, &["1"]).unwrap();
        let closed = differential_closure(&unit, DEFAULT_CLOSURE_CAP).unwrap();
        assert!(closed.is_unit_ideal());
    }

    #[test]
    fn closure_is_idempotent() {
        let d2 = DifferentialRing::build(&["X", "Y"], &[], &[("X", "1"), ("Y", "X^2")]).unwrap();
        let i = Ideal::parse(&d2, &["Y"]).unwrap();
        let once = differential_closure(&i, DEFAULT_CLOSURE_CAP).unwrap();
        let twice = differential_closure(&once, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(once.generators(), twice.generators());
        assert!(is_differential_ideal(&once).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let d = circle();
        let ring = d.ring().clone();
        let i = Ideal::parse(&d, &["X - Y", "Y^2 - 1"]).unwrap();
        let keep_y = elimination_ideal(&i, &[1]).unwrap();
        assert_eq!(keep_y.generators(), &[parse_poly(&ring, "Y^2 - 1").unwrap()]);

        let only_x = Ideal::parse(&d, &["X"]).unwrap();
        assert!(elimination_ideal(&only_x, &[1]).unwrap().is_zero_ideal());

        let unit = Ideal::parse(&d, &["1"]).unwrap();
        assert!(elimination_ideal(&unit, &[1]).unwrap().is_unit_ideal());
    }

    #[test]
    fn reduced_basis_is_generator_order_independent() {
        let d = circle();
        let ring = d.ring().clone();
        let gens = ["X^2 + Y", "X*Y - 1", "Y^3 + X"];
        let order = MonomialOrder::grevlex(&ring);
        let a = Ideal::parse(&d, &gens).unwrap().groebner(&order);
        let b = Ideal::parse(&d, &["Y^3 + X", "X^2 + Y", "X*Y - 1"])
            .unwrap()
            .groebner(&order);
        assert_eq!(a.basis(), b.basis());
    }
}
