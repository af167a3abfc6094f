//! Exact commutative unitary rings built as towers of a few constructors.
//!
//! A [`Ring`] is an immutable, cheaply clonable descriptor. Elements are
//! plain [`Value`] payloads interpreted relative to a descriptor; every
//! arithmetic routine takes the ring explicitly and returns canonical
//! payloads, so structural equality of payloads is ring equality.
//!
//! Supported constructors:
//!
//! * `Z` and `Z/N` (`N >= 2`),
//! * `R[X]`, polynomials in a fresh variable,
//! * `R[X]/(f)` for a monic `f` of degree at least one,
//! * `Frac(D)` for `D` one of `Z`, `Z/p` or `F[X]` with `F` a field,
//! * `R * S`, the direct product.

mod encode;
mod element;
mod map;
pub(crate) mod parse;
mod poly;
mod scan;
pub mod testing;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use element::Element;
pub use map::RingMap;
pub use scan::{scan_elements, ElementScan, Finding};

/// Canonical payload of a ring element.
///
/// `Poly` is shared by polynomial rings (trimmed coefficient list, low to
/// high) and quotient rings (same, with degree below the modulus degree).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Int(BigInt),
    Residue(u64),
    Poly(Vec<Value>),
    Frac(Box<Value>, Box<Value>),
    Pair(Box<Value>, Box<Value>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    ModInt(u64),
    Polynomial { base: Ring, var: String },
    /// `poly` is always a `Polynomial` ring; `modulus` is monic in it.
    Quotient { poly: Ring, modulus: Vec<Value> },
    Fraction(Ring),
    Product(Ring, Ring),
}

/// Descriptor of one ring in the tower.
#[derive(Clone)]
pub struct Ring(Arc<RingKind>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Integers => write!(f, "Z"),
            RingKind::ModInt(n) => write!(f, "Z/{n}"),
            RingKind::Polynomial { base, var } => {
                write!(f, "{}[{var}]", base.postfix_operand())
            }
            RingKind::Quotient { poly, modulus } => {
                let RingKind::Polynomial { base, var } = poly.kind() else {
                    unreachable!("quotient over a non-polynomial ring")
                };
                write!(
                    f,
                    "{}[{var}]/({})",
                    base.postfix_operand(),
                    poly.format(&Value::Poly(modulus.clone()))
                )
            }
            RingKind::Fraction(base) if *base.kind() == RingKind::Integers => write!(f, "Q"),
            RingKind::Fraction(base) => write!(f, "Frac({base})"),
            RingKind::Product(l, r) => match r.kind() {
                RingKind::Product(..) => write!(f, "{l}*({r})"),
                _ => write!(f, "{l}*{r}"),
            },
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn valid_identifier(var: &str) -> bool {
    let mut chars = var.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && var != "Z"
        && var != "Q"
        && var != "Frac"
}

impl Ring {
    fn new(kind: RingKind) -> Ring {
        Ring(Arc::new(kind))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    pub fn integers() -> Ring {
        Ring::new(RingKind::Integers)
    }

    pub fn rationals() -> Ring {
        Ring::new(RingKind::Fraction(Ring::integers()))
    }

    pub fn modular(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("Z/{n} needs a modulus of at least 2")));
        }
        Ok(Ring::new(RingKind::ModInt(n)))
    }

    pub fn polynomial(base: &Ring, var: &str) -> Result<Ring> {
        if !valid_identifier(var) {
            return Err(Error::InvalidRing(format!("{var:?} is not a valid variable name")));
        }
        if base.variables().contains(&var) {
            return Err(Error::InvalidRing(format!("variable {var} already used in {base}")));
        }
        Ok(Ring::new(RingKind::Polynomial {
            base: base.clone(),
            var: var.to_string(),
        }))
    }

    /// `poly / (modulus)`. The modulus must be monic of degree at least one.
    pub fn quotient(poly: &Ring, modulus: &Value) -> Result<Ring> {
        let RingKind::Polynomial { base, .. } = poly.kind() else {
            return Err(Error::InvalidRing(format!(
                "quotients are taken of polynomial rings, not {poly}"
            )));
        };
        let Value::Poly(coeffs) = modulus else {
            return Err(Error::InvalidRing("modulus is not a polynomial".into()));
        };
        if coeffs.len() < 2 {
            return Err(Error::InvalidRing(format!(
                "modulus {} has degree < 1",
                poly.format(modulus)
            )));
        }
        if !base.is_one(coeffs.last().unwrap()) {
            return Err(Error::InvalidRing(format!(
                "modulus {} is not monic",
                poly.format(modulus)
            )));
        }
        Ok(Ring::new(RingKind::Quotient {
            poly: poly.clone(),
            modulus: coeffs.clone(),
        }))
    }

    pub fn fraction(base: &Ring) -> Result<Ring> {
        if !base.is_gcd_domain() {
            let why = match base.kind() {
                RingKind::ModInt(n) => {
                    let d = (2..*n).find(|d| n % d == 0).unwrap_or(*n);
                    format!("{base} is not an integral domain ({d}*{} = 0)", n / d)
                }
                _ => format!(
                    "{base} is not one of Z, Z/p or F[X] over a field, so Frac is not supported"
                ),
            };
            return Err(Error::InvalidRing(why));
        }
        Ok(Ring::new(RingKind::Fraction(base.clone())))
    }

    pub fn product(left: &Ring, right: &Ring) -> Result<Ring> {
        let (a, b) = (left.characteristic(), right.characteristic());
        if a != 0 && b != 0 {
            let g = a.gcd(&b);
            if (a / g).checked_mul(b).is_none() {
                return Err(Error::InvalidRing("characteristic overflows u64".into()));
            }
        }
        Ok(Ring::new(RingKind::Product(left.clone(), right.clone())))
    }

    /// Operand form for the `R[X]` postfix: products need parentheses.
    fn postfix_operand(&self) -> String {
        match self.kind() {
            RingKind::Product(..) => format!("({self})"),
            _ => self.to_string(),
        }
    }

    /// Variables of the polynomial tower, innermost first.
    pub fn variables(&self) -> Vec<&str> {
        match self.kind() {
            RingKind::Integers | RingKind::ModInt(_) => Vec::new(),
            RingKind::Polynomial { base, var } => {
                let mut v = base.variables();
                v.push(var);
                v
            }
            RingKind::Quotient { poly, .. } => poly.variables(),
            RingKind::Fraction(base) => base.variables(),
            RingKind::Product(l, r) => {
                let mut v = l.variables();
                v.extend(r.variables());
                v
            }
        }
    }

    /// Coefficient ring of a polynomial or quotient ring.
    pub fn coefficient_ring(&self) -> Option<&Ring> {
        match self.kind() {
            RingKind::Polynomial { base, .. } => Some(base),
            RingKind::Quotient { poly, .. } => poly.coefficient_ring(),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self.kind() {
            RingKind::ModInt(n) => is_prime(*n),
            RingKind::Fraction(_) => true,
            _ => false,
        }
    }

    /// Rings for which `Frac` is constructible.
    pub fn is_gcd_domain(&self) -> bool {
        match self.kind() {
            RingKind::Integers => true,
            RingKind::ModInt(n) => is_prime(*n),
            RingKind::Polynomial { base, .. } => base.is_field(),
            _ => false,
        }
    }

    /// Smallest `n >= 1` with `n * 1 = 0`, or 0.
    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            RingKind::Integers => 0,
            RingKind::ModInt(n) => *n,
            RingKind::Polynomial { base, .. } => base.characteristic(),
            RingKind::Quotient { poly, .. } => poly.characteristic(),
            RingKind::Fraction(base) => base.characteristic(),
            RingKind::Product(l, r) => {
                let (a, b) = (l.characteristic(), r.characteristic());
                if a == 0 || b == 0 {
                    0
                } else {
                    a.lcm(&b)
                }
            }
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn cardinality(&self) -> Option<BigUint> {
        match self.kind() {
            RingKind::Integers | RingKind::Polynomial { .. } => None,
            RingKind::ModInt(n) => Some(BigUint::from(*n)),
            RingKind::Quotient { poly, modulus } => {
                let base = poly.coefficient_ring()?.cardinality()?;
                Some(num_traits::pow(base, modulus.len() - 1))
            }
            // The fraction field of a finite field is the field itself.
            RingKind::Fraction(base) => match base.kind() {
                RingKind::ModInt(p) => Some(BigUint::from(*p)),
                _ => None,
            },
            RingKind::Product(l, r) => Some(l.cardinality()? * r.cardinality()?),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    /// Cardinality as `u64` if finite and at most `limit`.
    pub(crate) fn small_cardinality(&self, limit: u64, operation: &'static str) -> Result<u64> {
        let card = self.cardinality().ok_or_else(|| Error::InfiniteRing {
            ring: self.to_string(),
            operation,
        })?;
        match card.to_u64() {
            Some(c) if c <= limit => Ok(c),
            _ => Err(Error::TooLarge {
                ring: self.to_string(),
                cardinality: card.to_string(),
                limit,
            }),
        }
    }

    pub(crate) fn mismatch(&self, other: &Ring) -> Error {
        Error::RingMismatch {
            left: self.to_string(),
            right: other.to_string(),
        }
    }

    // ----- constants -------------------------------------------------

    pub fn zero(&self) -> Value {
        match self.kind() {
            RingKind::Integers => Value::Int(BigInt::zero()),
            RingKind::ModInt(_) => Value::Residue(0),
            RingKind::Polynomial { .. } | RingKind::Quotient { .. } => Value::Poly(Vec::new()),
            RingKind::Fraction(base) => {
                Value::Frac(Box::new(base.zero()), Box::new(base.one()))
            }
            RingKind::Product(l, r) => Value::Pair(Box::new(l.zero()), Box::new(r.zero())),
        }
    }

    pub fn one(&self) -> Value {
        self.from_int(&BigInt::one())
    }

    pub fn minus_one(&self) -> Value {
        self.neg(&self.one())
    }

    pub fn from_i64(&self, n: i64) -> Value {
        self.from_int(&BigInt::from(n))
    }

    /// Image of an integer under the unique unital map `Z -> R`.
    pub fn from_int(&self, n: &BigInt) -> Value {
        match self.kind() {
            RingKind::Integers => Value::Int(n.clone()),
            RingKind::ModInt(m) => {
                let r = n.mod_floor(&BigInt::from(*m));
                Value::Residue(r.to_u64().expect("residue fits in u64"))
            }
            RingKind::Polynomial { .. } | RingKind::Quotient { .. } => {
                let base = self.coefficient_ring().unwrap();
                self.embed(&base.from_int(n))
            }
            RingKind::Fraction(base) => Value::Frac(Box::new(base.from_int(n)), Box::new(base.one())),
            RingKind::Product(l, r) => Value::Pair(Box::new(l.from_int(n)), Box::new(r.from_int(n))),
        }
    }

    /// Embeds an element of the immediate base (coefficient ring or
    /// fraction base) as a constant.
    pub fn embed(&self, v: &Value) -> Value {
        match self.kind() {
            RingKind::Polynomial { base, .. } => {
                let mut c = vec![v.clone()];
                poly::trim(base, &mut c);
                Value::Poly(c)
            }
            RingKind::Quotient { poly, .. } => poly.embed(v),
            RingKind::Fraction(_) => Value::Frac(Box::new(v.clone()), Box::new(self.base_one())),
            _ => v.clone(),
        }
    }

    fn base_one(&self) -> Value {
        match self.kind() {
            RingKind::Fraction(base) => base.one(),
            _ => self.one(),
        }
    }

    /// The generator named `name`, looked up through the tower.
    pub fn variable(&self, name: &str) -> Result<Value> {
        let unknown = || Error::UnknownVariable {
            name: name.to_string(),
            ring: self.to_string(),
        };
        match self.kind() {
            RingKind::Integers | RingKind::ModInt(_) | RingKind::Product(..) => Err(unknown()),
            RingKind::Polynomial { base, var } => {
                if var == name {
                    Ok(Value::Poly(vec![base.zero(), base.one()]))
                } else {
                    Ok(self.embed(&base.variable(name)?))
                }
            }
            RingKind::Quotient { poly, .. } => {
                let x = poly.variable(name)?;
                Ok(self.reduce(&x))
            }
            RingKind::Fraction(base) => Ok(self.embed(&base.variable(name)?)),
        }
    }

    /// Maps an element of the polynomial ring onto its quotient residue.
    /// Identity on every other ring.
    pub fn reduce(&self, v: &Value) -> Value {
        match (self.kind(), v) {
            (RingKind::Quotient { poly, modulus }, Value::Poly(c)) => {
                let base = poly.coefficient_ring().unwrap();
                Value::Poly(poly::rem_monic(base, c, modulus))
            }
            _ => v.clone(),
        }
    }

    // ----- predicates ----------------------------------------------------

    pub fn is_zero(&self, v: &Value) -> bool {
        *v == self.zero()
    }

    pub fn is_one(&self, v: &Value) -> bool {
        *v == self.one()
    }

    /// `v` is `1` or `-1`.
    pub fn is_plus_minus_one(&self, v: &Value) -> bool {
        self.is_one(v) || *v == self.minus_one()
    }

    /// `1 = -1`, i.e. characteristic 2 (or the zero ring, which is not
    /// constructible).
    pub fn signs_collapse(&self) -> bool {
        self.characteristic() == 2
    }

    /// Checks that `v` is a canonical payload of this ring.
    pub fn contains(&self, v: &Value) -> bool {
        match (self.kind(), v) {
            (RingKind::Integers, Value::Int(_)) => true,
            (RingKind::ModInt(n), Value::Residue(r)) => r < n,
            (RingKind::Polynomial { base, .. }, Value::Poly(c)) => {
                c.last().is_none_or(|l| !base.is_zero(l)) && c.iter().all(|x| base.contains(x))
            }
            (RingKind::Quotient { poly, modulus }, Value::Poly(c)) => {
                c.len() < modulus.len() && poly.contains(v)
            }
            (RingKind::Fraction(base), Value::Frac(n, d)) => {
                base.contains(n) && base.contains(d) && **d != base.zero() && {
                    let renorm = self.normalize_fraction(n, d);
                    renorm == *v
                }
            }
            (RingKind::Product(l, r), Value::Pair(a, b)) => l.contains(a) && r.contains(b),
            _ => false,
        }
    }

    // ----- arithmetic ----------------------------------------------------

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (RingKind::ModInt(n), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (RingKind::Polynomial { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                Value::Poly(poly::add(base, x, y))
            }
            (RingKind::Quotient { poly, .. }, Value::Poly(x), Value::Poly(y)) => {
                Value::Poly(poly::add(poly.coefficient_ring().unwrap(), x, y))
            }
            (RingKind::Fraction(base), Value::Frac(n1, d1), Value::Frac(n2, d2)) => {
                if d1 == d2 {
                    return self.normalize_fraction(&base.add(n1, n2), d1);
                }
                let num = base.add(&base.mul(n1, d2), &base.mul(n2, d1));
                self.normalize_fraction(&num, &base.mul(d1, d2))
            }
            (RingKind::Product(l, r), Value::Pair(x1, x2), Value::Pair(y1, y2)) => {
                Value::Pair(Box::new(l.add(x1, y1)), Box::new(r.add(x2, y2)))
            }
            _ => panic!("payload does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (self.kind(), a) {
            (RingKind::Integers, Value::Int(x)) => Value::Int(-x),
            (RingKind::ModInt(n), Value::Residue(x)) => {
                Value::Residue(if *x == 0 { 0 } else { n - x })
            }
            (RingKind::Polynomial { base, .. }, Value::Poly(x)) => {
                Value::Poly(x.iter().map(|c| base.neg(c)).collect())
            }
            (RingKind::Quotient { poly, .. }, Value::Poly(_)) => poly.neg(a),
            (RingKind::Fraction(base), Value::Frac(n, d)) => {
                Value::Frac(Box::new(base.neg(n)), d.clone())
            }
            (RingKind::Product(l, r), Value::Pair(x, y)) => {
                Value::Pair(Box::new(l.neg(x)), Box::new(r.neg(y)))
            }
            _ => panic!("payload does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x * y),
            (RingKind::ModInt(n), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(((*x as u128 * *y as u128) % *n as u128) as u64)
            }
            (RingKind::Polynomial { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                Value::Poly(poly::mul(base, x, y))
            }
            (RingKind::Quotient { poly, modulus }, Value::Poly(x), Value::Poly(y)) => {
                let base = poly.coefficient_ring().unwrap();
                Value::Poly(poly::rem_monic(base, &poly::mul(base, x, y), modulus))
            }
            (RingKind::Fraction(base), Value::Frac(n1, d1), Value::Frac(n2, d2)) => {
                self.normalize_fraction(&base.mul(n1, n2), &base.mul(d1, d2))
            }
            (RingKind::Product(l, r), Value::Pair(x1, x2), Value::Pair(y1, y2)) => {
                Value::Pair(Box::new(l.mul(x1, y1)), Box::new(r.mul(x2, y2)))
            }
            _ => panic!("payload does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Value, mut k: u32) -> Value {
        let mut acc = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse when it exists and can be found.
    ///
    /// Exact for `Z`, `Z/N`, fraction fields, finite rings, products of
    /// those and quotients over a field. In `R[X]` and in infinite
    /// quotients over a non-field only constants are inverted, so `None`
    /// there does not prove that `a` is a non-unit.
    pub fn try_inverse(&self, a: &Value) -> Option<Value> {
        match (self.kind(), a) {
            (RingKind::Integers, Value::Int(x)) => {
                (x.magnitude().is_one()).then(|| a.clone())
            }
            (RingKind::ModInt(n), Value::Residue(x)) => {
                let e = BigInt::from(*x).extended_gcd(&BigInt::from(*n));
                e.gcd.is_one().then(|| self.from_int(&e.x))
            }
            (RingKind::Polynomial { base, .. }, Value::Poly(c)) => match c.len() {
                1 => base.try_inverse(&c[0]).map(|i| self.embed(&i)),
                _ => None,
            },
            (RingKind::Quotient { poly, modulus }, Value::Poly(c)) => {
                let base = poly.coefficient_ring().unwrap();
                if c.is_empty() {
                    return None;
                }
                if c.len() == 1 {
                    if let Some(i) = base.try_inverse(&c[0]) {
                        return Some(self.embed(&i));
                    }
                }
                if base.is_field() {
                    let inv = poly::inverse_mod_field(base, c, modulus)?;
                    return Some(Value::Poly(inv));
                }
                if self.small_cardinality(1 << 16, "inverse").is_ok() {
                    let one = self.one();
                    return self.elements().ok()?.into_iter().find(|y| self.mul(a, y) == one);
                }
                None
            }
            (RingKind::Fraction(base), Value::Frac(n, d)) => {
                if base.is_zero(n) {
                    None
                } else {
                    Some(self.normalize_fraction(d, n))
                }
            }
            (RingKind::Product(l, r), Value::Pair(x, y)) => Some(Value::Pair(
                Box::new(l.try_inverse(x)?),
                Box::new(r.try_inverse(y)?),
            )),
            _ => panic!("payload does not belong to {self}"),
        }
    }

    /// Lowest-terms representative of `num / den` in a fraction field.
    fn normalize_fraction(&self, num: &Value, den: &Value) -> Value {
        let RingKind::Fraction(base) = self.kind() else {
            unreachable!("normalize_fraction outside a fraction field")
        };
        assert!(!base.is_zero(den), "zero denominator");
        if base.is_zero(num) {
            return self.zero();
        }
        let frac = |n: Value, d: Value| Value::Frac(Box::new(n), Box::new(d));
        match (base.kind(), num, den) {
            (RingKind::Integers, Value::Int(n), Value::Int(d)) => {
                let g = n.gcd(d);
                let (mut n, mut d) = (n / &g, d / &g);
                if d.sign() == BigSign::Minus {
                    n = -n;
                    d = -d;
                }
                frac(Value::Int(n), Value::Int(d))
            }
            (RingKind::ModInt(_), _, _) => {
                let inv = base.try_inverse(den).expect("nonzero element of a field");
                frac(base.mul(num, &inv), base.one())
            }
            (RingKind::Polynomial { base: field, .. }, Value::Poly(n), Value::Poly(d)) => {
                let g = poly::gcd_field(field, n, d);
                let (n, _) = poly::divrem_field(field, n, &g);
                let (d, _) = poly::divrem_field(field, d, &g);
                let lead_inv = field
                    .try_inverse(d.last().unwrap())
                    .expect("nonzero element of a field");
                frac(
                    Value::Poly(poly::scale(field, &n, &lead_inv)),
                    Value::Poly(poly::scale(field, &d, &lead_inv)),
                )
            }
            _ => unreachable!("fraction field over unsupported base {base}"),
        }
    }

    /// Builds `num / den` in a fraction field from base-ring payloads.
    pub fn fraction_of(&self, num: &Value, den: &Value) -> Result<Value> {
        let RingKind::Fraction(base) = self.kind() else {
            return Err(Error::InvalidParameter(format!("{self} is not a fraction field")));
        };
        if base.is_zero(den) {
            return Err(Error::NotInvertible("0".into()));
        }
        Ok(self.normalize_fraction(num, den))
    }

    /// Exact quotient `a / b`, defined when `b` is invertible.
    pub fn div(&self, a: &Value, b: &Value) -> Result<Value> {
        let inv = self
            .try_inverse(b)
            .ok_or_else(|| Error::NotInvertible(self.format(b)))?;
        Ok(self.mul(a, &inv))
    }

    /// Integer value of a `Z` payload, if it is one.
    pub fn as_integer<'a>(&self, v: &'a Value) -> Option<&'a BigInt> {
        match (self.kind(), v) {
            (RingKind::Integers, Value::Int(x)) => Some(x),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz() -> Ring {
        Ring::integers()
    }

    fn gaussian() -> Ring {
        let zx = Ring::polynomial(&zz(), "X").unwrap();
        let m = zx.add(&zx.pow(&zx.variable("X").unwrap(), 2), &zx.one());
        Ring::quotient(&zx, &m).unwrap()
    }

    #[test]
    fn gaussian_unit_squares_to_minus_one() {
        let r = gaussian();
        let x = r.variable("X").unwrap();
        assert_eq!(r.mul(&x, &x), r.minus_one());
        assert_eq!(r.to_string(), "Z[X]/(X^2+1)");
    }

    #[test]
    fn rational_sum_normalizes() {
        let q = Ring::rationals();
        let a = q.fraction_of(&Value::Int(3.into()), &Value::Int(5.into())).unwrap();
        let b = q.fraction_of(&Value::Int(2.into()), &Value::Int(5.into())).unwrap();
        assert_eq!(q.add(&a, &b), q.one());
        let c = q.fraction_of(&Value::Int(4.into()), &Value::Int((-6).into())).unwrap();
        assert_eq!(
            c,
            Value::Frac(Box::new(Value::Int((-2).into())), Box::new(Value::Int(3.into())))
        );
    }

    #[test]
    fn eighth_root_embeddings_of_sqrt_two() {
        let zx = Ring::polynomial(&zz(), "X").unwrap();
        let x = zx.variable("X").unwrap();
        let m = zx.add(&zx.pow(&x, 4), &zx.one());
        let r = Ring::quotient(&zx, &m).unwrap();
        let x = r.variable("X").unwrap();
        let x3 = r.pow(&x, 3);
        let s = r.sub(&x, &x3);
        let is = r.add(&x, &x3);
        assert_eq!(r.mul(&s, &s), r.from_i64(2));
        assert_eq!(r.mul(&is, &is), r.from_i64(-2));
    }

    #[test]
    fn characteristic_follows_structure() {
        let z6 = Ring::modular(6).unwrap();
        assert_eq!(z6.characteristic(), 6);
        assert_eq!(Ring::polynomial(&zz(), "X").unwrap().characteristic(), 0);
        let p = Ring::product(&Ring::modular(2).unwrap(), &Ring::modular(3).unwrap()).unwrap();
        assert_eq!(p.characteristic(), 6);
        // brute force: n * 1 = 0 first at n = 6
        let one = p.one();
        let mut acc = p.zero();
        let mut first = None;
        for n in 1..=24u64 {
            acc = p.add(&acc, &one);
            if p.is_zero(&acc) && first.is_none() {
                first = Some(n);
            }
        }
        assert_eq!(first, Some(6));
        assert_eq!(Ring::product(&zz(), &Ring::modular(2).unwrap()).unwrap().characteristic(), 0);
    }

    #[test]
    fn fraction_needs_a_domain() {
        let z4t = Ring::polynomial(&Ring::modular(4).unwrap(), "t").unwrap();
        assert!(matches!(Ring::fraction(&z4t), Err(Error::InvalidRing(_))));
        let err = Ring::fraction(&Ring::modular(4).unwrap()).unwrap_err();
        assert!(err.to_string().contains("2*2 = 0"), "{err}");
        let zx = Ring::polynomial(&zz(), "X").unwrap();
        assert!(Ring::fraction(&zx).is_err());
        let f5t = Ring::polynomial(&Ring::modular(5).unwrap(), "t").unwrap();
        assert!(Ring::fraction(&f5t).is_ok());
    }

    #[test]
    fn quotient_modulus_must_be_monic() {
        let zx = Ring::polynomial(&zz(), "X").unwrap();
        let x = zx.variable("X").unwrap();
        let two_x = zx.mul(&zx.from_i64(2), &x);
        assert!(Ring::quotient(&zx, &two_x).is_err());
        assert!(Ring::quotient(&zx, &zx.from_i64(1)).is_err());
        assert!(Ring::quotient(&zx, &x).is_ok());
    }

    #[test]
    fn duplicate_variable_rejected() {
        let zx = Ring::polynomial(&zz(), "X").unwrap();
        assert!(Ring::polynomial(&zx, "X").is_err());
        assert!(Ring::polynomial(&zx, "Y").is_ok());
    }

    #[test]
    fn cardinalities() {
        let f2 = Ring::modular(2).unwrap();
        let f2x = Ring::polynomial(&f2, "X").unwrap();
        let x = f2x.variable("X").unwrap();
        let m = f2x.add(&f2x.add(&f2x.pow(&x, 2), &x), &f2x.one());
        let f4 = Ring::quotient(&f2x, &m).unwrap();
        assert_eq!(f4.cardinality(), Some(BigUint::from(4u32)));
        assert_eq!(f2x.cardinality(), None);
        assert_eq!(Ring::rationals().cardinality(), None);
        let p = Ring::product(&f2, &f4).unwrap();
        assert_eq!(p.cardinality(), Some(BigUint::from(8u32)));
    }

    #[test]
    fn inverses() {
        let z6 = Ring::modular(6).unwrap();
        assert_eq!(z6.try_inverse(&Value::Residue(5)), Some(Value::Residue(5)));
        assert_eq!(z6.try_inverse(&Value::Residue(2)), None);
        let f5t = Ring::polynomial(&Ring::modular(5).unwrap(), "t").unwrap();
        let t = f5t.variable("t").unwrap();
        let k = Ring::fraction(&f5t).unwrap();
        let kt = k.embed(&t);
        let inv = k.try_inverse(&kt).unwrap();
        assert_eq!(k.mul(&kt, &inv), k.one());
    }
}
