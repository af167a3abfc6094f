use std::cmp::Ordering;
use std::fmt;

use super::{parse, Ring, Value};
use crate::error::{Error, ParseError, Result};

/// An element together with the ring it lives in.
///
/// Binary operations check that both operands share a descriptor and
/// report [`Error::RingMismatch`] otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    ring: Ring,
    value: Value,
}

impl Element {
    /// Wraps a payload, checking that it is canonical for `ring`.
    pub fn new(ring: &Ring, value: Value) -> Result<Element> {
        if !ring.contains(&value) {
            return Err(Error::InvalidParameter(format!(
                "{value:?} is not a canonical element of {ring}"
            )));
        }
        Ok(Element {
            ring: ring.clone(),
            value,
        })
    }

    pub(crate) fn from_canonical(ring: &Ring, value: Value) -> Element {
        debug_assert!(ring.contains(&value));
        Element {
            ring: ring.clone(),
            value,
        }
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Element, ParseError> {
        Ok(Element::from_canonical(ring, parse::parse_element(ring, text)?))
    }

    pub fn zero(ring: &Ring) -> Element {
        Element::from_canonical(ring, ring.zero())
    }

    pub fn one(ring: &Ring) -> Element {
        Element::from_canonical(ring, ring.one())
    }

    pub fn from_i64(ring: &Ring, n: i64) -> Element {
        Element::from_canonical(ring, ring.from_i64(n))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    fn same_ring(&self, other: &Element) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(self.ring.mismatch(&other.ring))
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(Element::from_canonical(&self.ring, self.ring.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(Element::from_canonical(&self.ring, self.ring.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(Element::from_canonical(&self.ring, self.ring.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> Element {
        Element::from_canonical(&self.ring, self.ring.neg(&self.value))
    }

    pub fn pow(&self, k: u32) -> Element {
        Element::from_canonical(&self.ring, self.ring.pow(&self.value, k))
    }

    pub fn inverse(&self) -> Option<Element> {
        self.ring
            .try_inverse(&self.value)
            .map(|v| Element::from_canonical(&self.ring, v))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    pub fn encode(&self) -> Vec<u8> {
        self.value.encode()
    }

    /// Order induced by the canonical encoding; elements of different
    /// rings are compared by ring name first.
    pub fn canonical_cmp(&self, other: &Element) -> Ordering {
        if self.ring != other.ring {
            return self.ring.to_string().cmp(&other.ring.to_string());
        }
        self.value.canonical_cmp(&other.value)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_rings_rejected() {
        let a = Element::from_i64(&Ring::integers(), 2);
        let b = Element::from_i64(&Ring::modular(3).unwrap(), 2);
        assert!(matches!(a.add(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn non_canonical_payload_rejected() {
        let z3 = Ring::modular(3).unwrap();
        assert!(Element::new(&z3, Value::Residue(3)).is_err());
        let q = Ring::rationals();
        let bad = Value::Frac(Box::new(Value::Int(2.into())), Box::new(Value::Int(4.into())));
        assert!(Element::new(&q, bad).is_err());
    }

    #[test]
    fn display_round_trips() {
        let r = crate::parse_ring("Z[X]/(X^4+1)").unwrap();
        let e = Element::parse(&r, "X - X^3").unwrap();
        assert_eq!(e.to_string(), "-X^3+X");
        assert_eq!(Element::parse(&r, &e.to_string()).unwrap(), e);
        assert_eq!(e.pow(2), Element::from_i64(&r, 2));
    }
}
