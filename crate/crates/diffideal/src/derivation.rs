//! Derivations on polynomial rings.
//!
//! A [`DifferentialRing`] pairs a symbol declaration with one polynomial
//! image per symbol. The derivation extends to polynomials by the Leibniz
//! rule (as the sum of partial derivatives times symbol images) and to
//! rational functions by the quotient rule. Parameters are ordinary symbols
//! here: they may carry nonzero derivatives, so "rational coefficient" and
//! "constant of the derivation" are different notions.

use crate::error::{Error, Result};
use crate::gcd::multivariate_lcm;
use crate::poly::MultiPoly;
use crate::ratfunc::RationalFunction;
use crate::ring::{ensure_same_ring, Ring};
use std::sync::Arc;

/// A polynomial ring together with a derivation given by its images on the
/// symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialRing {
    ring: Arc<Ring>,
    images: Vec<MultiPoly>,
}

impl DifferentialRing {
    /// One image per declared symbol, in declaration order.
    pub fn new(ring: Arc<Ring>, images: Vec<MultiPoly>) -> Result<Self> {
        if images.len() != ring.num_symbols() {
            return Err(Error::InvalidInput(format!(
                "expected {} derivation images, got {}",
                ring.num_symbols(),
                images.len()
            )));
        }
        for img in &images {
            ensure_same_ring(&ring, img.ring())?;
        }
        Ok(DifferentialRing { ring, images })
    }

    /// Declares a ring and its derivation from polynomial texts, e.g.
    /// `DifferentialRing::build(&["X", "Y"], &[], &[("X", "X"), ("Y", "Y")])`.
    pub fn build(vars: &[&str], params: &[&str], images: &[(&str, &str)]) -> Result<Self> {
        let ring = Ring::new(vars, params)?;
        let mut image_polys = vec![None; ring.num_symbols()];
        for (name, text) in images {
            let index = ring
                .symbol_index(name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown symbol `{name}`")))?;
            if image_polys[index].is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate derivation image for `{name}`"
                )));
            }
            image_polys[index] = Some(crate::text::parse_poly(&ring, text)?);
        }
        let images = image_polys
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                p.ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "no derivation image for `{}`",
                        ring.symbol_name(i)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DifferentialRing::new(ring, images)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn image(&self, index: usize) -> &MultiPoly {
        &self.images[index]
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    /// True if every symbol image is zero.
    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(MultiPoly::is_zero)
    }

    /// Maximum total degree over all symbol images; 0 for the trivial
    /// derivation.
    pub fn max_image_degree(&self) -> u32 {
        self.images
            .iter()
            .filter(|p| !p.is_zero())
            .map(MultiPoly::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Applies the derivation to a polynomial: the sum over all symbols of
    /// the partial derivative times the symbol's image.
    pub fn derive_poly(&self, p: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (i, image) in self.images.iter().enumerate() {
            if image.is_zero() {
                continue;
            }
            let partial = p.partial_derivative(i);
            if !partial.is_zero() {
                out = &out + &(&partial * image);
            }
        }
        out
    }

    /// Quotient rule on an arbitrary representative `num / den`; the result
    /// is canonical and independent of the representative chosen.
    pub fn derive_quotient(&self, num: &MultiPoly, den: &MultiPoly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("quotient rule with zero denominator".into()));
        }
        let d_num = self.derive_poly(num);
        let d_den = self.derive_poly(den);
        RationalFunction::new(&(den * &d_num) - &(num * &d_den), den * den)
    }

    /// Applies the derivation to a rational function by the quotient rule.
    pub fn derive_ratfunc(&self, r: &RationalFunction) -> RationalFunction {
        self.derive_quotient(r.num(), r.den())
            .expect("canonical denominator is nonzero")
    }

    /// True iff the derivation kills the value.
    pub fn is_constant(&self, r: &RationalFunction) -> bool {
        self.derive_ratfunc(r).is_zero()
    }

    /// The rescaled derivation `f * D` for a nonzero `f` in the parameter
    /// field. Images may become rational; see [`RescaledDerivation`].
    pub fn rescale(&self, f: &RationalFunction) -> Result<RescaledDerivation> {
        ensure_same_ring(&self.ring, f.ring())?;
        if f.is_zero() {
            return Err(Error::InvalidScalar("rescaling factor must be nonzero".into()));
        }
        if !f.is_parameter_only() {
            return Err(Error::Domain(
                "rescaling factor must involve only parameters".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .map(|img| f.checked_mul(&RationalFunction::from_poly(img.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(RescaledDerivation {
            ring: Arc::clone(&self.ring),
            images,
            factor: f.clone(),
        })
    }
}

/// A derivation with possibly rational symbol images, produced by
/// [`DifferentialRing::rescale`]. Analysis entry points that tolerate
/// rational images live here; ideal-theoretic work requires clearing
/// denominators first.
#[derive(Debug, Clone)]
pub struct RescaledDerivation {
    ring: Arc<Ring>,
    images: Vec<RationalFunction>,
    factor: RationalFunction,
}

impl RescaledDerivation {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn images(&self) -> &[RationalFunction] {
        &self.images
    }

    /// The factor `f` this derivation was rescaled by.
    pub fn factor(&self) -> &RationalFunction {
        &self.factor
    }

    /// The rescaled derivation as a plain [`DifferentialRing`] if every
    /// image is already polynomial.
    pub fn as_polynomial(&self) -> Option<DifferentialRing> {
        let images = self
            .images
            .iter()
            .map(|r| r.as_polynomial().cloned())
            .collect::<Option<Vec<_>>>()?;
        Some(DifferentialRing {
            ring: Arc::clone(&self.ring),
            images,
        })
    }

    /// Multiplies by the least common multiple of all image denominators so
    /// every image clears to a polynomial; returns the cleared ring and the
    /// clearing factor used.
    pub fn cleared(&self) -> Result<(DifferentialRing, MultiPoly)> {
        let mut clearing = MultiPoly::one(&self.ring);
        for img in &self.images {
            if !img.is_polynomial() {
                clearing = multivariate_lcm(&clearing, img.den())?;
            }
        }
        let factor_fn = RationalFunction::from_poly(clearing.clone());
        let images = self
            .images
            .iter()
            .map(|img| {
                let cleared = img.checked_mul(&factor_fn)?;
                cleared.as_polynomial().cloned().ok_or_else(|| {
                    Error::Domain("clearing factor did not clear all denominators".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((
            DifferentialRing {
                ring: Arc::clone(&self.ring),
                images,
            },
            clearing,
        ))
    }

    pub fn derive_poly(&self, p: &MultiPoly) -> RationalFunction {
        let mut out = RationalFunction::zero(&self.ring);
        for (i, image) in self.images.iter().enumerate() {
            if image.is_zero() {
                continue;
            }
            let partial = RationalFunction::from_poly(p.partial_derivative(i));
            out = &out + &(&partial * image);
        }
        out
    }

    pub fn derive_ratfunc(&self, r: &RationalFunction) -> RationalFunction {
        let d_num = self.derive_poly(r.num());
        let d_den = self.derive_poly(r.den());
        let den = RationalFunction::from_poly(r.den().clone());
        let num = RationalFunction::from_poly(r.num().clone());
        let lhs = &den * &d_num;
        let rhs = &num * &d_den;
        &(&lhs - &rhs) / &(&den * &den)
    }

    pub fn is_constant(&self, r: &RationalFunction) -> bool {
        self.derive_ratfunc(r).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::text::{parse_poly, parse_ratfunc};

    fn circle_ring() -> DifferentialRing {
        DifferentialRing::build(&["X", "Y"], &[], &[("X", "X"), ("Y", "Y")]).unwrap()
    }

    #[test]
    fn derive_poly_examples() {
        let d = circle_ring();
        let ring = d.ring().clone();
        let p = parse_poly(&ring, "X^2 + Y^2").unwrap();
        assert_eq!(d.derive_poly(&p), parse_poly(&ring, "2*X^2 + 2*Y^2").unwrap());
        let c = MultiPoly::constant(&ring, rat(7, 3));
        assert!(d.derive_poly(&c).is_zero());
    }

    #[test]
    fn derive_poly_with_parameter_images() {
        let d = DifferentialRing::build(
            &["X"],
            &["a"],
            &[("X", "X^3 - 2*X^2 + 2*X"), ("a", "a^3 - 2*a^2 + 2*a")],
        )
        .unwrap();
        let ring = d.ring().clone();
        let p = parse_poly(&ring, "X - a").unwrap();
        let expect = parse_poly(&ring, "X^3 - 2*X^2 + 2*X - a^3 + 2*a^2 - 2*a").unwrap();
        assert_eq!(d.derive_poly(&p), expect);
    }

    #[test]
    fn quotient_rule_examples() {
        let d = circle_ring();
        let ring = d.ring().clone();
        assert!(d.derive_ratfunc(&parse_ratfunc(&ring, "X / Y").unwrap()).is_zero());
        let dy = d.derive_ratfunc(&parse_ratfunc(&ring, "1 / Y").unwrap());
        assert_eq!(dy, parse_ratfunc(&ring, "-1 / Y").unwrap());
        // Polynomial case agrees with derive_poly.
        let p = parse_poly(&ring, "X^2 - 3*Y").unwrap();
        let via_quot = d.derive_ratfunc(&RationalFunction::from_poly(p.clone()));
        assert_eq!(via_quot, RationalFunction::from_poly(d.derive_poly(&p)));
    }

    #[test]
    fn is_constant_examples() {
        let d = circle_ring();
        let ring = d.ring().clone();
        assert!(d.is_constant(&parse_ratfunc(&ring, "X / Y").unwrap()));
        assert!(!d.is_constant(&parse_ratfunc(&ring, "X").unwrap()));
        assert!(d.is_constant(&parse_ratfunc(&ring, "X^2 + Y^2 / X*Y").unwrap()));
    }

    #[test]
    fn quotient_rule_is_representative_independent() {
        let d = circle_ring();
        let ring = d.ring().clone();
        let num = parse_poly(&ring, "X^2 + X*Y").unwrap();
        let den = parse_poly(&ring, "X*Y + Y^2").unwrap();
        let via_raw = d.derive_quotient(&num, &den).unwrap();
        let reduced = parse_ratfunc(&ring, "X / Y").unwrap();
        assert_eq!(via_raw, d.derive_ratfunc(&reduced));
    }

    #[test]
    fn rescale_validation_and_clearing() {
        let d = DifferentialRing::build(&["X"], &["a"], &[("X", "X"), ("a", "a")]).unwrap();
        let ring = d.ring().clone();
        assert!(matches!(
            d.rescale(&RationalFunction::zero(&ring)),
            Err(Error::InvalidScalar(_))
        ));
        assert!(matches!(
            d.rescale(&parse_ratfunc(&ring, "X").unwrap()),
            Err(Error::Domain(_))
        ));

        // f = 2: images stay polynomial.
        let doubled = d
            .rescale(&parse_ratfunc(&ring, "2").unwrap())
            .unwrap()
            .as_polynomial()
            .unwrap();
        assert_eq!(doubled.image(0), &parse_poly(&ring, "2*X").unwrap());

        // f = a: direct multiplication.
        let by_a = d
            .rescale(&parse_ratfunc(&ring, "a").unwrap())
            .unwrap()
            .as_polynomial()
            .unwrap();
        assert_eq!(by_a.image(0), &parse_poly(&ring, "a*X").unwrap());

        // f = 1/a: images acquire denominator a; clearing by a recovers
        // polynomial images and reports the factor.
        let rescaled = d.rescale(&parse_ratfunc(&ring, "1 / a").unwrap()).unwrap();
        assert!(rescaled.as_polynomial().is_none());
        let (cleared, factor) = rescaled.cleared().unwrap();
        assert_eq!(factor, parse_poly(&ring, "a").unwrap());
        assert_eq!(cleared.image(0), &parse_poly(&ring, "X").unwrap());
        assert_eq!(cleared.image(1), &parse_poly(&ring, "a").unwrap());
    }

    #[test]
    fn rescaled_constant_test_agrees() {
        let d = circle_ring();
        let ring = d.ring().clone();
        let f = parse_ratfunc(&ring, "5/3").unwrap();
        let rescaled = d.rescale(&f).unwrap();
        for text in ["X / Y", "X", "X^2 + Y^2 / X*Y", "X + 1"] {
            let r = parse_ratfunc(&ring, text).unwrap();
            assert_eq!(d.is_constant(&r), rescaled.is_constant(&r));
        }
    }
}
