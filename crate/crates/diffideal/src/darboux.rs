//! Darboux polynomials: nonzero `w` with `D(w) = z * w` for a polynomial
//! cofactor `z`. In a polynomial ring these generate exactly the principal
//! (height-one) prime differential ideals, and their cofactors feed the
//! first-integral lattice.
//!
//! The search fixes a degree bound for `w`. Candidate leading monomials are
//! visited in decreasing monomial order; each slice pins the leading
//! coefficient to 1 and zeroes everything above, so every scalar class of
//! solutions appears in exactly one slice. Within a slice, dividing `D(w)` by
//! the monic symbolic `w` eliminates the cofactor unknowns, leaving a
//! polynomial system in the coefficients of `w` alone that is solved by the
//! Groebner machinery. Slices whose solution set is positive-dimensional
//! (an infinite family of invariant polynomials) are reported through corner
//! representatives and downgrade the completeness flag.

use crate::derivation::DifferentialRing;
use crate::error::{Error, Result};
use crate::poly::{rat_int, MultiPoly, Rat};
use crate::ring::{monomials_up_to_degree, Monomial, MonomialOrder, Ring};
use crate::solve::{analyze_lex, LexOutcome};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// `M`: the maximum total degree over all symbol images. Cofactors of
/// bounded-degree Darboux polynomials live in degree at most `M - 1`.
pub fn cofactor_degree_bound(ring: &DifferentialRing) -> u32 {
    ring.max_image_degree()
}

/// The finite-dimensional space cofactors live in: all monomials of total
/// degree at most `max(0, M - 1)`.
#[derive(Debug, Clone)]
pub struct CofactorSpace {
    degree_bound: u32,
    basis: Vec<Monomial>,
}

impl CofactorSpace {
    pub fn new(ring: &DifferentialRing) -> Self {
        let m = cofactor_degree_bound(ring);
        let basis = monomials_up_to_degree(ring.ring().num_symbols(), m.saturating_sub(1));
        CofactorSpace {
            degree_bound: m,
            basis,
        }
    }

    /// The image-degree bound `M` the space was built from.
    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }
}

/// A verified pair `(w, z)` with `D(w) = z * w` exactly. `w` is
/// integer-primitive with canonical sign and involves at least one main
/// variable; `z` may be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxPair {
    w: MultiPoly,
    z: MultiPoly,
}

impl DarbouxPair {
    /// Normalizes `w`, checks the defining identity, and packages the pair.
    /// Returns `Ok(None)` if `w` is not a Darboux polynomial. Errors if `w`
    /// is zero or involves no main variable.
    pub fn new(ring: &DifferentialRing, w: &MultiPoly) -> Result<Option<DarbouxPair>> {
        if !w.involves_main_variable() {
            return Err(Error::InvalidInput(
                "a Darboux pair requires w to involve a main variable".into(),
            ));
        }
        let w = w.integer_primitive();
        match verify_darboux(ring, &w)? {
            None => Ok(None),
            Some(z) => Ok(Some(DarbouxPair { w, z })),
        }
    }

    pub fn w(&self) -> &MultiPoly {
        &self.w
    }

    pub fn cofactor(&self) -> &MultiPoly {
        &self.z
    }

    pub fn is_associate_of(&self, other: &DarbouxPair) -> bool {
        self.w.is_associate(&other.w)
    }
}

impl fmt::Display for DarbouxPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(w = {}, z = {})", self.w, self.z)
    }
}

/// Exact cofactor extraction: `Some(z)` with `D(w) = z * w` when the
/// division is exact, `None` otherwise. `z = 0` is accepted (then `w` is a
/// polynomial constant of the derivation).
pub fn verify_darboux(ring: &DifferentialRing, w: &MultiPoly) -> Result<Option<MultiPoly>> {
    if w.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial is not Darboux".into()));
    }
    let dw = ring.derive_poly(w);
    let z = dw.exact_div(w)?;
    if let Some(z) = &z {
        debug_assert!(
            z.is_zero() || z.total_degree() <= cofactor_degree_bound(ring).saturating_sub(1),
            "cofactor exceeds its degree bound"
        );
    }
    Ok(z)
}

/// Degree bound and reporting options for the search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    max_deg: u32,
    include_constant_cofactor_zero: bool,
}

impl SearchConfig {
    pub fn new(max_deg: u32) -> Result<Self> {
        if max_deg < 1 {
            return Err(Error::InvalidInput("search degree bound must be at least 1".into()));
        }
        Ok(SearchConfig {
            max_deg,
            include_constant_cofactor_zero: false,
        })
    }

    /// Also report pairs with `z = 0` (polynomial constants).
    pub fn with_zero_cofactors(mut self) -> Self {
        self.include_constant_cofactor_zero = true;
        self
    }

    pub fn max_deg(&self) -> u32 {
        self.max_deg
    }

    pub fn includes_zero_cofactors(&self) -> bool {
        self.include_constant_cofactor_zero
    }
}

/// Whether the search provably saw every solution with rational
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// Every slice was zero-dimensional: the pair list is complete for
    /// rational coefficients up to the degree bound. No claim is made about
    /// coefficients in proper extensions of Q.
    CompleteForRationalCoefficients,
    /// Some slice had a positive-dimensional solution set (an infinite
    /// family); only corner representatives of those families are listed.
    RepresentativesOnly,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Completeness::CompleteForRationalCoefficients => {
                write!(f, "complete-for-rational-coefficients")
            }
            Completeness::RepresentativesOnly => write!(f, "representatives-only"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub pairs: Vec<DarbouxPair>,
    pub completeness: Completeness,
}

/// Element of `Q[unknowns][original ring]`: original-ring monomials with
/// coefficients in the auxiliary unknown ring.
type SymbolicPoly = BTreeMap<Monomial, MultiPoly>;

fn symbolic_add_term(p: &mut SymbolicPoly, m: Monomial, c: MultiPoly) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match p.entry(m) {
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

/// One normalization slice: leading monomial `m0` with coefficient 1,
/// unknowns attached to the strictly smaller candidate monomials.
struct Slice<'a> {
    ring: &'a DifferentialRing,
    order: &'a MonomialOrder,
    m0: Monomial,
    lower: Vec<Monomial>,
    aux: Arc<Ring>,
}

impl<'a> Slice<'a> {
    fn new(
        ring: &'a DifferentialRing,
        order: &'a MonomialOrder,
        m0: Monomial,
        lower: Vec<Monomial>,
    ) -> Result<Self> {
        let names: Vec<String> = (0..lower.len()).map(|i| format!("c{i}")).collect();
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let aux = Ring::new(&name_refs, &[])?;
        Ok(Slice {
            ring,
            order,
            m0,
            lower,
            aux,
        })
    }

    /// The ansatz `w = m0 + sum c_j * lower_j` as a symbolic polynomial.
    fn symbolic_w(&self) -> SymbolicPoly {
        let mut w = SymbolicPoly::new();
        w.insert(self.m0.clone(), MultiPoly::one(&self.aux));
        for (j, m) in self.lower.iter().enumerate() {
            w.insert(m.clone(), MultiPoly::symbol(&self.aux, j));
        }
        w
    }

    /// `D(w)` with the unknowns treated as constants.
    fn symbolic_derivative(&self, w: &SymbolicPoly) -> SymbolicPoly {
        let base = self.ring.ring();
        let mut dw = SymbolicPoly::new();
        for (m, coeff) in w {
            let mono_poly = MultiPoly::from_terms(base, [(m.clone(), rat_int(1))]);
            let dm = self.ring.derive_poly(&mono_poly);
            for (m2, k) in dm.terms() {
                symbolic_add_term(&mut dw, m2.clone(), coeff.scale(k));
            }
        }
        dw
    }

    /// Divides `dw` by the monic symbolic `w`. Returns the quotient (the
    /// symbolic cofactor) and the equations stating that the remainder
    /// vanishes.
    fn divide(&self, mut dw: SymbolicPoly, w: &SymbolicPoly) -> (SymbolicPoly, Vec<MultiPoly>) {
        let mut quotient = SymbolicPoly::new();
        loop {
            let target = dw
                .iter()
                .filter(|(m, _)| self.m0.divides(m))
                .max_by(|(a, _), (b, _)| self.order.compare(a, b))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((mu, c)) = target else { break };
            let qm = self.m0.quotient_into(&mu);
            for (m, cm) in w {
                symbolic_add_term(&mut dw, qm.mul(m), (&c * cm).negated());
            }
            symbolic_add_term(&mut quotient, qm, c);
        }
        let equations: Vec<MultiPoly> = dw.into_values().filter(|c| !c.is_zero()).collect();
        (quotient, equations)
    }

    /// Rational points of the slice system; downgrades `complete` when a
    /// positive-dimensional family shows up, in which case corner
    /// representatives (all free unknowns 0, then each in turn 1) are
    /// substituted and re-solved.
    fn solve(&self, equations: &[MultiPoly], complete: &mut bool) -> Vec<Vec<Rat>> {
        if self.lower.is_empty() {
            return if equations.is_empty() {
                vec![Vec::new()]
            } else {
                Vec::new()
            };
        }
        if equations.is_empty() {
            *complete = false;
            let free: Vec<usize> = (0..self.lower.len()).collect();
            return self.corner_points(equations, &free);
        }
        match analyze_lex(equations, &self.aux) {
            LexOutcome::NoSolutions => Vec::new(),
            LexOutcome::ZeroDimensional(sols) => sols.points,
            LexOutcome::PositiveDimensional { free_symbols } => {
                *complete = false;
                self.corner_points(equations, &free_symbols)
            }
        }
    }

    fn corner_points(&self, equations: &[MultiPoly], free: &[usize]) -> Vec<Vec<Rat>> {
        let mut assignments: Vec<Vec<(usize, Rat)>> = Vec::new();
        assignments.push(free.iter().map(|&f| (f, rat_int(0))).collect());
        for &f in free {
            assignments.push(
                free.iter()
                    .map(|&g| (g, rat_int(if g == f { 1 } else { 0 })))
                    .collect(),
            );
        }
        let mut points = Vec::new();
        for assignment in assignments {
            let mut eqs = equations.to_vec();
            for (sym, value) in &assignment {
                let pin = &MultiPoly::symbol(&self.aux, *sym)
                    - &MultiPoly::constant(&self.aux, value.clone());
                eqs.push(pin);
            }
            // A corner may still be underdetermined; keep pinning its free
            // unknowns to zero. Bounded because each round removes at least
            // one free symbol.
            let mut rounds = 0;
            loop {
                match analyze_lex(&eqs, &self.aux) {
                    LexOutcome::NoSolutions => break,
                    LexOutcome::ZeroDimensional(sols) => {
                        points.extend(sols.points);
                        break;
                    }
                    LexOutcome::PositiveDimensional { free_symbols } => {
                        rounds += 1;
                        if rounds > self.lower.len() {
                            break;
                        }
                        for f in free_symbols {
                            eqs.push(MultiPoly::symbol(&self.aux, f));
                        }
                    }
                }
            }
        }
        points
    }

    /// Reconstructs `(w, z)` in the original ring from an auxiliary point.
    fn instantiate(&self, quotient: &SymbolicPoly, point: &[Rat]) -> (MultiPoly, MultiPoly) {
        let base = self.ring.ring();
        let mut w = MultiPoly::from_terms(base, [(self.m0.clone(), rat_int(1))]);
        for (j, m) in self.lower.iter().enumerate() {
            w.add_term(m.clone(), point[j].clone());
        }
        let mut z = MultiPoly::zero(base);
        for (qm, qc) in quotient {
            z.add_term(qm.clone(), qc.evaluate(point));
        }
        (w, z)
    }
}

/// Bounded-degree search for Darboux pairs. See the module docs for the
/// slicing strategy. Pairs divisible by a lower-degree pair are filtered out
/// (their quotient is again Darboux), associates are deduplicated, and the
/// output is sorted by degree and then decreasing leading monomial.
pub fn darboux_search(ring: &DifferentialRing, cfg: &SearchConfig) -> Result<SearchResult> {
    let base = ring.ring();
    let order = base.default_order();
    let mut candidates = monomials_up_to_degree(base.num_symbols(), cfg.max_deg);
    candidates.sort_by(|a, b| order.compare(b, a));
    let involves_var =
        |m: &Monomial| (0..base.num_vars()).any(|i| m.exponent(i) > 0);

    let mut complete = true;
    let mut found: Vec<DarbouxPair> = Vec::new();

    for (idx, m0) in candidates.iter().enumerate() {
        if m0.total_degree() == 0 {
            continue;
        }
        // If no candidate monomial from here down involves a main variable,
        // every solution in this slice is parameter-only; skip it.
        if !candidates[idx..].iter().any(involves_var) {
            continue;
        }
        let slice = Slice::new(ring, &order, m0.clone(), candidates[idx + 1..].to_vec())?;
        let w_sym = slice.symbolic_w();
        let dw = slice.symbolic_derivative(&w_sym);
        let (quotient, equations) = slice.divide(dw, &w_sym);
        for point in slice.solve(&equations, &mut complete) {
            let (w, z) = slice.instantiate(&quotient, &point);
            if !w.involves_main_variable() {
                continue;
            }
            let w = w.integer_primitive();
            debug_assert_eq!(ring.derive_poly(&w), &z * &w, "search produced an unverified pair");
            let pair = DarbouxPair { w, z };
            if !found.iter().any(|p| p.w == pair.w) {
                found.push(pair);
            }
        }
    }

    // Ascending degree, then drop anything divisible by a kept lower-degree
    // pair.
    found.sort_by(|a, b| {
        a.w
            .total_degree()
            .cmp(&b.w.total_degree())
            .then_with(|| {
                order
                    .compare(
                        b.w.leading_monomial(&order).unwrap(),
                        a.w.leading_monomial(&order).unwrap(),
                    )
            })
            .then_with(|| a.w.render(&order).cmp(&b.w.render(&order)))
    });
    let mut kept: Vec<DarbouxPair> = Vec::new();
    for pair in found {
        let divisible = kept.iter().any(|k| {
            k.w.total_degree() < pair.w.total_degree()
                && pair.w.exact_div(&k.w).map(|q| q.is_some()).unwrap_or(false)
        });
        if !divisible {
            kept.push(pair);
        }
    }
    if !cfg.include_constant_cofactor_zero {
        kept.retain(|p| !p.z.is_zero());
    }
    Ok(SearchResult {
        pairs: kept,
        completeness: if complete {
            Completeness::CompleteForRationalCoefficients
        } else {
            Completeness::RepresentativesOnly
        },
    })
}

/// Height-one differential primes up to the degree bound: the Darboux search
/// restricted to nonzero cofactors. In a polynomial ring, height-one primes
/// are principal and every factor of a Darboux polynomial is Darboux, so the
/// ascending-degree divisibility filter stands in for irreducibility. Over Q
/// a reported generator may still split in an extension field.
pub fn height_one_differential_primes(
    ring: &DifferentialRing,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    let cfg = SearchConfig {
        max_deg: cfg.max_deg,
        include_constant_cofactor_zero: false,
    };
    darboux_search(ring, &cfg)
}
