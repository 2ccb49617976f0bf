//! The ring-descriptor abstraction shared by matrices, representations and
//! skew polynomials.
//!
//! Every coefficient domain in this crate is a K-algebra over the rationals
//! with a canonical K-basis. A descriptor value (for example "the Grassmann
//! algebra on 3 generators") carries the parameters that a bare element type
//! cannot, and all arithmetic is dispatched through it.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::rational::Rational;

/// A unital associative algebra over the rationals with a distinguished
/// countable K-basis.
///
/// Binary operations assume both operands belong to this descriptor
/// (checked at module boundaries via [`Ring::contains`]).
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    /// Short descriptor, e.g. `grassmann 3`, `sqfree 2`, `rational`.
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_commutative(&self) -> bool;

    /// Whether `a` is a well-formed element of this particular descriptor.
    fn contains(&self, a: &Self::Elem) -> bool;

    /// The image of the rational scalar `c` under K -> R.
    fn from_rational(&self, c: &Rational) -> Self::Elem;

    /// The K-action `c * a`.
    fn scalar_mul(&self, c: &Rational, a: &Self::Elem) -> Self::Elem;

    /// `Some(c)` exactly when the canonical form of `a` is `c * 1`.
    fn as_rational(&self, a: &Self::Elem) -> Option<Rational>;

    /// Canonical text form of an element.
    fn render(&self, a: &Self::Elem) -> String;

    /// Sparse coordinates of `a` with respect to the canonical K-basis.
    /// Keys are stable per descriptor.
    fn coeff_vector(&self, a: &Self::Elem) -> Vec<(u64, Rational)>;

    /// Pseudo-random element with integer coefficients drawn uniformly from
    /// `[-coeff_bound, coeff_bound]`, each basis slot filled independently.
    fn sample(&self, rng: &mut ChaCha8Rng, coeff_bound: i64) -> Self::Elem;
}

/// The base field: exact rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = Rational;

    fn name(&self) -> String {
        "rational".to_string()
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn contains(&self, _a: &Rational) -> bool {
        true
    }

    fn from_rational(&self, c: &Rational) -> Rational {
        c.clone()
    }

    fn scalar_mul(&self, c: &Rational, a: &Rational) -> Rational {
        c * a
    }

    fn as_rational(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }

    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }

    fn coeff_vector(&self, a: &Rational) -> Vec<(u64, Rational)> {
        if a.is_zero() {
            Vec::new()
        } else {
            vec![(0, a.clone())]
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng, coeff_bound: i64) -> Rational {
        Rational::from_integer(sample_coeff(rng, coeff_bound))
    }
}

/// Uniform integer in `[-bound, bound]`.
pub(crate) fn sample_coeff(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let bound = bound.max(0);
    rng.gen_range(-bound..=bound)
}
