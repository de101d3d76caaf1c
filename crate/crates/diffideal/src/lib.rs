//! Exact differential algebra over the rationals.
//!
//! The crate works with polynomial rings `Q[X1,...,Xn, t1,...,tk]` whose
//! symbols split into main variables and parameters, equipped with a
//! derivation given by one polynomial image per symbol. On top of the exact
//! arithmetic kernel it provides:
//!
//! - derivations extended by the Leibniz and quotient rules, constant
//!   testing, and rescaling by elements of the parameter field
//!   ([`derivation`]);
//! - a Buchberger Groebner engine with ideal membership, elimination,
//!   zero-dimensional rational solving, and differential-ideal predicates
//!   ([`groebner`], [`solve`]);
//! - bounded-degree search for Darboux polynomials `w` with `D(w) = z * w`
//!   ([`darboux`]);
//! - rational first integrals from integer dependencies among cofactors,
//!   families of differential ideals attached to a known constant, and
//!   localization witnesses ([`constants`]).
//!
//! The guide in `book/` walks through the theory chapter by chapter; its
//! code snippets compile against this crate as doctests.

pub mod constants;
pub mod darboux;
pub mod derivation;
pub mod error;
pub mod gcd;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub mod solve;
pub mod text;

pub use constants::{
    constant_family, first_integral_lattice, first_integral_lattice_from_pairs,
    localization_witness, new_constant_report, CandidateConstant, CofactorMatrix,
    ConstantFamilyReport, FamilyMember, FinitenessVerdict, IntegerDependence,
    LocalizationWitness, NewConstantReport,
};
pub use darboux::{
    cofactor_degree_bound, darboux_search, height_one_differential_primes, verify_darboux,
    CofactorSpace, Completeness, DarbouxPair, SearchConfig, SearchResult,
};
pub use derivation::{DifferentialRing, RescaledDerivation};
pub use error::{Error, Result};
pub use gcd::{multivariate_gcd, multivariate_lcm};
pub use groebner::{
    buchberger, differential_closure, elimination_ideal, ideal_membership, is_differential_ideal,
    normal_form, GroebnerBasis, Ideal,
};
pub use poly::{rat, rat_int, MultiPoly, Rat};
pub use ratfunc::RationalFunction;
pub use ring::{Monomial, MonomialOrder, OrderKind, Ring};
pub use solve::{solve_zero_dim_rational, RationalSolutions};
pub use text::{parse_poly, parse_ratfunc, render_poly, render_ratfunc};

// The book chapters double as doctests so the guide can never drift from the
// API. `cargo test --doc` compiles every fenced Rust block below.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub struct $name;
        };
    }

    chapter!(Introduction, "../../../book/src/introduction.md");
    chapter!(Rings, "../../../book/src/rings.md");
    chapter!(Derivations, "../../../book/src/derivations.md");
    chapter!(Ideals, "../../../book/src/ideals.md");
    chapter!(Darboux, "../../../book/src/darboux.md");
    chapter!(FirstIntegrals, "../../../book/src/first-integrals.md");
    chapter!(Cli, "../../../book/src/cli.md");
}
