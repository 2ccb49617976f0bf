//! Exact symbolic computation with finitely generated Grassmann (exterior)
//! algebras: matrix representations over commutative quotient rings,
//! scalar-coefficient Cayley-Hamilton identities for matrices with Grassmann
//! entries, standard polynomial identities, and truncated skew polynomial
//! embeddings. All arithmetic is exact over the rationals.

pub mod error;
pub mod grassmann;
pub mod matrix;
pub mod quotient;
pub mod rational;
pub mod ring;
pub mod skew;
mod terms;
pub mod identities;
pub mod rep;

pub use error::{Error, Result};
pub use rational::Rational;
pub use ring::{RationalField, Ring};
