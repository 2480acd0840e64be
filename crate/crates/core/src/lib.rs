//! Canonical number systems over imaginary quadratic integer rings.
//!
//! The crate covers exact ring arithmetic ([`ring`]), base validation and
//! digit expansion ([`cns`]), digit statistics ([`digitstat`]), an exact
//! multiplicative-dependence decision ([`multdep`]), height and
//! linear-forms-in-logarithms bound calculators ([`bounds`]) and the
//! two-base experiment harness ([`lab`]).

// `!(x > y)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cns;
pub mod digitstat;
pub mod error;
pub mod lab;
pub mod multdep;
pub mod ring;

pub use cns::{make_base, CnsBase, CnsCheck, DigitString, ExhaustiveReport};
pub use digitstat::{DigitStats, KpConstants};
pub use error::{Error, Result};
pub use multdep::MultDepVerdict;
pub use ring::{make_field, FieldSpec, LatticePoint, QuadInt};
