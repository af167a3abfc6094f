//! Exact computation with lambda-quiddities: solutions `(a_1, ..., a_n)` of
//! the matrix equation
//!
//! ```text
//! M_n(a_1, ..., a_n) = N(a_n) ... N(a_1) = ±Id,    N(a) = [[a, -1], [1, 0]]
//! ```
//!
//! over commutative unitary rings described at run time ([`Ring`]).
//!
//! * [`ring`]: the ring tower, element syntax, canonical encodings.
//! * [`quiddity`]: matrix words, continuants, the `⊕` sum, dihedral
//!   equivalence.
//! * [`irreducibility`]: exact reducibility decision with certificates.
//! * [`enumeration`]: exhaustive enumeration and `ℓ_A` over finite rings,
//!   bounded searches over infinite ones.
//! * [`families`]: explicit solution families and the criteria detector for
//!   polynomial rings.

pub mod enumeration;
pub mod error;
pub mod families;
pub mod irreducibility;
pub mod quiddity;
pub mod ring;

pub use error::{Error, ParseError, Result};
pub use quiddity::{Mat2, QuiddityTuple, Sign, Transform};
pub use ring::{Element, Ring, RingKind, RingMap, Value};

/// Parses a ring expression such as `Z/6`, `Z[X]/(X^2+1)` or `Frac(Z/5[t])`.
pub fn parse_ring(expr: &str) -> Result<Ring> {
    ring::parse::parse_ring(expr)
}

impl Ring {
    pub fn parse_element(&self, text: &str) -> Result<Value, ParseError> {
        ring::parse::parse_element(self, text)
    }

    /// Comma-separated tuple, optionally in square brackets.
    pub fn parse_tuple(&self, text: &str) -> Result<Vec<Value>, ParseError> {
        ring::parse::parse_tuple(self, text)
    }
}
