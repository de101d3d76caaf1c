//! Rational first integrals from the cofactor lattice, ideal families
//! attached to a known constant, and localization witnesses.
//!
//! If `D(w_i) = z_i * w_i` and integers `n_i` (not all zero) satisfy
//! `sum n_i * z_i = 0`, then `prod w_i^{n_i}` is a constant of the
//! derivation: its logarithmic derivative is exactly that vanishing sum. The
//! lattice machinery computes an integer basis of the kernel of the cofactor
//! matrix and verifies each resulting candidate exactly.

use crate::darboux::{
    height_one_differential_primes, CofactorSpace, Completeness, DarbouxPair, SearchConfig,
};
use crate::derivation::DifferentialRing;
use crate::error::{Error, Result};
use crate::groebner::{is_differential_ideal, Ideal};
use crate::linalg::{primitive_integer_vector, QMatrix};
use crate::poly::{MultiPoly, Rat};
use crate::ratfunc::RationalFunction;
use crate::ring::Monomial;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use std::fmt;

/// Cofactor coefficients arranged with one row per cofactor-space basis
/// monomial and one column per pair.
#[derive(Debug, Clone)]
pub struct CofactorMatrix {
    pairs: Vec<DarbouxPair>,
    rows: Vec<Monomial>,
    matrix: QMatrix,
}

impl CofactorMatrix {
    /// Builds the matrix over the pairs with nonzero cofactor; `z = 0` pairs
    /// are dropped, since they contribute nothing to the lattice.
    pub fn new(ring: &DifferentialRing, pairs: &[DarbouxPair]) -> Self {
        let pairs: Vec<DarbouxPair> = pairs
            .iter()
            .filter(|p| !p.cofactor().is_zero())
            .cloned()
            .collect();
        let rows = CofactorSpace::new(ring).basis().to_vec();
        let mut matrix = QMatrix::zero(rows.len(), pairs.len());
        for (j, pair) in pairs.iter().enumerate() {
            for (i, row) in rows.iter().enumerate() {
                matrix.set(i, j, pair.cofactor().coefficient(row));
            }
        }
        CofactorMatrix {
            pairs,
            rows,
            matrix,
        }
    }

    pub fn pairs(&self) -> &[DarbouxPair] {
        &self.pairs
    }

    pub fn rows(&self) -> &[Monomial] {
        &self.rows
    }

    /// Rebuilds column `j` as a polynomial; equals the cofactor exactly.
    pub fn reconstruct_column(&self, j: usize) -> MultiPoly {
        let ring = self.pairs[j].cofactor().ring();
        let mut out = MultiPoly::zero(ring);
        for (i, row) in self.rows.iter().enumerate() {
            out.add_term(row.clone(), self.matrix.get(i, j).clone());
        }
        out
    }

    /// Primitive integer kernel vectors with the first nonzero entry
    /// positive; each satisfies `sum n_i * z_i = 0` exactly.
    pub fn integer_kernel(&self) -> Vec<IntegerDependence> {
        self.matrix
            .kernel_basis()
            .iter()
            .filter_map(|v| primitive_integer_vector(v))
            .map(|coefficients| IntegerDependence { coefficients })
            .collect()
    }
}

/// A primitive integer vector in the kernel of the cofactor matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerDependence {
    coefficients: Vec<BigInt>,
}

impl IntegerDependence {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }
}

impl fmt::Display for IntegerDependence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A verified constant `prod w_i^{n_i}` together with the dependence that
/// produced it.
#[derive(Debug, Clone)]
pub struct CandidateConstant {
    value: RationalFunction,
    dependence: IntegerDependence,
}

impl CandidateConstant {
    pub fn value(&self) -> &RationalFunction {
        &self.value
    }

    pub fn dependence(&self) -> &IntegerDependence {
        &self.dependence
    }
}

impl fmt::Display for CandidateConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} from {}", self.value, self.dependence)
    }
}

fn build_product(
    pairs: &[DarbouxPair],
    dependence: &IntegerDependence,
) -> Result<RationalFunction> {
    let ring = pairs[0].w().ring();
    let mut num = MultiPoly::one(ring);
    let mut den = MultiPoly::one(ring);
    for (pair, n) in pairs.iter().zip(dependence.coefficients()) {
        let e = n
            .abs()
            .to_u32()
            .ok_or_else(|| Error::InvalidInput("dependence exponent too large".into()))?;
        if e == 0 {
            continue;
        }
        let p = pair.w().pow(e);
        if n.is_positive() {
            num = &num * &p;
        } else {
            den = &den * &p;
        }
    }
    RationalFunction::new(num, den)
}

/// Constants built from integer dependencies among the cofactors of the
/// given pairs. Every returned value is verified to be killed by the
/// derivation and is not a bare rational number.
pub fn first_integral_lattice_from_pairs(
    ring: &DifferentialRing,
    pairs: &[DarbouxPair],
) -> Result<Vec<CandidateConstant>> {
    let matrix = CofactorMatrix::new(ring, pairs);
    if matrix.pairs().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for dependence in matrix.integer_kernel() {
        let value = build_product(matrix.pairs(), &dependence)?;
        if value.is_rational_number() {
            continue;
        }
        if !ring.is_constant(&value) {
            // The kernel identity makes this impossible; treat a failure as
            // an internal alarm rather than reporting a false constant.
            return Err(Error::InvalidInput(format!(
                "lattice produced a non-constant candidate {value}"
            )));
        }
        out.push(CandidateConstant { value, dependence });
    }
    Ok(out)
}

/// Runs the bounded-degree prime search and feeds the found pairs to the
/// lattice.
pub fn first_integral_lattice(
    ring: &DifferentialRing,
    cfg: &SearchConfig,
) -> Result<Vec<CandidateConstant>> {
    let primes = height_one_differential_primes(ring, cfg)?;
    first_integral_lattice_from_pairs(ring, &primes.pairs)
}

/// Finiteness diagnosis for the report. Bounded-degree search can witness an
/// infinite family but can never certify absence, so the verdict is
/// evidence-grade.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinitenessVerdict {
    /// Every element is a constant: the derivation is identically zero.
    TrivialDerivation,
    /// Some slice of the search was positive-dimensional: an infinite family
    /// of invariant polynomials exists, signalling a rational constant.
    InfiniteFamilyDetected,
    /// All slices were zero-dimensional up to the degree bound.
    FinitelyManyUpToDegree(u32),
}

impl fmt::Display for FinitenessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinitenessVerdict::TrivialDerivation => write!(f, "trivial-derivation"),
            FinitenessVerdict::InfiniteFamilyDetected => write!(f, "infinite-family-detected"),
            FinitenessVerdict::FinitelyManyUpToDegree(d) => {
                write!(f, "finitely-many-up-to-degree-{d}")
            }
        }
    }
}

/// Search evidence bundled for reporting: found primes, lattice constants,
/// and the finiteness verdict. A clean result is reported as "none found up
/// to the bound", never as a theorem.
#[derive(Debug, Clone)]
pub struct NewConstantReport {
    pub constants: Vec<CandidateConstant>,
    pub primes: Vec<DarbouxPair>,
    pub completeness: Completeness,
    pub verdict: FinitenessVerdict,
    pub summary: String,
}

pub fn new_constant_report(
    ring: &DifferentialRing,
    cfg: &SearchConfig,
) -> Result<NewConstantReport> {
    if ring.is_trivial() {
        return Ok(NewConstantReport {
            constants: Vec::new(),
            primes: Vec::new(),
            completeness: Completeness::CompleteForRationalCoefficients,
            verdict: FinitenessVerdict::TrivialDerivation,
            summary: "trivial derivation: every element is a constant".to_string(),
        });
    }
    let search = height_one_differential_primes(ring, cfg)?;
    let constants = first_integral_lattice_from_pairs(ring, &search.pairs)?;
    let verdict = match search.completeness {
        Completeness::RepresentativesOnly => FinitenessVerdict::InfiniteFamilyDetected,
        Completeness::CompleteForRationalCoefficients => {
            FinitenessVerdict::FinitelyManyUpToDegree(cfg.max_deg())
        }
    };
    let summary = if constants.is_empty() {
        format!("none found up to degree {}", cfg.max_deg())
    } else {
        format!(
            "{} constant(s) found up to degree {}",
            constants.len(),
            cfg.max_deg()
        )
    };
    Ok(NewConstantReport {
        constants,
        primes: search.pairs,
        completeness: search.completeness,
        verdict,
        summary,
    })
}

/// Checks recorded for one member `(f - c*g)` of a constant's ideal family.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub c: Rat,
    pub generator: MultiPoly,
    pub proper: bool,
    pub differential: bool,
}

/// The family of principal ideals `(f - c*g)` attached to a constant `f/g`,
/// with properness, differentiality, and pairwise-distinctness verified
/// exactly for the sampled values of `c`.
#[derive(Debug, Clone)]
pub struct ConstantFamilyReport {
    pub constant: RationalFunction,
    pub members: Vec<FamilyMember>,
    pub pairwise_distinct: bool,
}

impl ConstantFamilyReport {
    pub fn all_proper(&self) -> bool {
        self.members.iter().all(|m| m.proper)
    }

    pub fn all_differential(&self) -> bool {
        self.members.iter().all(|m| m.differential)
    }
}

/// Builds and checks the ideal family `(f - c*g)` for each sampled `c`.
/// Preconditions: `g` is nonzero, `f/g` is a constant of the derivation, and
/// the samples are pairwise distinct.
pub fn constant_family(
    ring: &DifferentialRing,
    f: &MultiPoly,
    g: &MultiPoly,
    cs: &[Rat],
) -> Result<ConstantFamilyReport> {
    if g.is_zero() {
        return Err(Error::Precondition("family denominator g must be nonzero".into()));
    }
    let constant = RationalFunction::new(f.clone(), g.clone())?;
    if !ring.is_constant(&constant) {
        return Err(Error::Precondition(format!(
            "f/g = {constant} is not a constant of the derivation"
        )));
    }
    for (i, a) in cs.iter().enumerate() {
        if cs[i + 1..].contains(a) {
            return Err(Error::Precondition(format!("duplicate sample c = {a}")));
        }
    }
    let mut members = Vec::with_capacity(cs.len());
    for c in cs {
        let generator = f - &g.scale(c);
        let ideal = Ideal::new(ring.clone(), vec![generator.clone()])?;
        members.push(FamilyMember {
            c: c.clone(),
            generator,
            proper: ideal.is_proper(),
            differential: is_differential_ideal(&ideal)?,
        });
    }
    let mut pairwise_distinct = true;
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if members[i].generator.is_associate(&members[j].generator) {
                pairwise_distinct = false;
            }
        }
    }
    Ok(ConstantFamilyReport {
        constant,
        members,
        pairwise_distinct,
    })
}

/// The element whose inversion kills every found height-one differential
/// prime: the product of the found Darboux generators times the image of the
/// first main variable.
#[derive(Debug, Clone)]
pub struct LocalizationWitness {
    /// `t * D(X1)` where `t` is the product of the found generators.
    pub witness: MultiPoly,
    /// The product `t` (1 when no primes were found).
    pub darboux_factor: MultiPoly,
    /// The image `D(X1)` the witness is built on.
    pub dx1: MultiPoly,
    /// Per found prime: the pair and whether the witness lies in its ideal.
    pub coverage: Vec<(DarbouxPair, bool)>,
    /// True when the underlying search was not complete for rational
    /// coefficients, so unseen primes may escape the witness.
    pub heuristic: bool,
}

pub fn localization_witness(
    ring: &DifferentialRing,
    cfg: &SearchConfig,
) -> Result<LocalizationWitness> {
    if ring.ring().num_vars() == 0 {
        return Err(Error::Precondition("the ring declares no main variables".into()));
    }
    let dx1 = ring.image(0).clone();
    if dx1.is_zero() {
        return Err(Error::Precondition(format!(
            "D({}) = 0: the witness construction requires a nonzero image",
            ring.ring().symbol_name(0)
        )));
    }
    let search = height_one_differential_primes(ring, cfg)?;
    let mut factor = MultiPoly::one(ring.ring());
    for pair in &search.pairs {
        factor = &factor * pair.w();
    }
    let witness = &factor * &dx1;
    let coverage = search
        .pairs
        .iter()
        .map(|pair| {
            let contained = witness
                .exact_div(pair.w())
                .map(|q| q.is_some())
                .unwrap_or(false);
            (pair.clone(), contained)
        })
        .collect();
    Ok(LocalizationWitness {
        witness,
        darboux_factor: factor,
        dx1,
        coverage,
        heuristic: search.completeness != Completeness::CompleteForRationalCoefficients,
    })
}
