//! Canonical byte encoding (and the total order it induces) plus the
//! textual element syntax accepted back by the parser.
//!
//! Every encoding is self-delimiting, so comparing concatenations of
//! encodings byte-wise is the lexicographic order on the components.
//! Integers use the zigzag interleave 0, 1, -1, 2, -2, ...; polynomials
//! order by number of coefficients first, then from the leading
//! coefficient down.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign as BigSign};

use super::{Ring, RingKind, Value};

fn push_natural(out: &mut Vec<u8>, n: &BigUint) {
    let bytes = if n == &BigUint::ZERO {
        Vec::new()
    } else {
        n.to_bytes_be()
    };
    out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
    out.extend_from_slice(&bytes);
}

fn zigzag(n: &BigInt) -> BigUint {
    let m = n.magnitude();
    match n.sign() {
        BigSign::NoSign => BigUint::ZERO,
        BigSign::Plus => m * 2u32 - 1u32,
        BigSign::Minus => m * 2u32,
    }
}

impl Value {
    /// Canonical encoding of a canonical payload. Injective on every ring.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.encode_into(&mut out);
        out
    }

    pub fn encode_into(&self, out: &mut Vec<u8>) {
        match self {
            Value::Int(n) => push_natural(out, &zigzag(n)),
            Value::Residue(r) => push_natural(out, &BigUint::from(*r)),
            Value::Poly(c) => {
                out.extend_from_slice(&(c.len() as u32).to_be_bytes());
                for x in c.iter().rev() {
                    x.encode_into(out);
                }
            }
            Value::Frac(n, d) => {
                n.encode_into(out);
                d.encode_into(out);
            }
            Value::Pair(a, b) => {
                a.encode_into(out);
                b.encode_into(out);
            }
        }
    }

    /// Total order induced by [`Value::encode`].
    pub fn canonical_cmp(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Residue(a), Value::Residue(b)) => a.cmp(b),
            _ => self.encode().cmp(&other.encode()),
        }
    }
}

/// Whether `s` has a top-level `+` or binary `-`, i.e. it is a sum.
fn is_sum(s: &str) -> bool {
    top_level_any(s, &['+', '-'])
}

fn top_level_any(s: &str, ops: &[char]) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if depth == 0 && i > 0 && ops.contains(&c) => return true,
            _ => {}
        }
    }
    false
}

fn parenthesize_if(s: String, cond: bool) -> String {
    if cond {
        format!("({s})")
    } else {
        s
    }
}

impl Ring {
    /// Element syntax; re-parses to the same payload.
    pub fn format(&self, v: &Value) -> String {
        match (self.kind(), v) {
            (RingKind::Integers, Value::Int(n)) => n.to_string(),
            (RingKind::ModInt(_), Value::Residue(r)) => r.to_string(),
            (RingKind::Polynomial { base, var }, Value::Poly(c)) => format_poly(base, var, c),
            (RingKind::Quotient { poly, .. }, Value::Poly(_)) => poly.format(v),
            (RingKind::Fraction(base), Value::Frac(n, d)) => {
                let num = base.format(n);
                if base.is_one(d) {
                    return num;
                }
                let den = base.format(d);
                let num = parenthesize_if(num.clone(), is_sum(&num));
                let den = parenthesize_if(den.clone(), top_level_any(&den, &['+', '-', '*', '/']) || den.starts_with('-'));
                format!("{num}/{den}")
            }
            (RingKind::Product(l, r), Value::Pair(a, b)) => {
                format!("({}, {})", l.format(a), r.format(b))
            }
            _ => format!("<foreign payload {v:?}>"),
        }
    }
}

fn format_poly(base: &Ring, var: &str, c: &[Value]) -> String {
    if c.is_empty() {
        return "0".to_string();
    }
    let one = base.one();
    let minus_one = base.minus_one();
    let mut terms = Vec::new();
    for (k, coef) in c.iter().enumerate().rev() {
        if base.is_zero(coef) {
            continue;
        }
        let monomial = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let term = if k == 0 {
            base.format(coef)
        } else if *coef == one {
            monomial
        } else if *coef == minus_one && base.format(coef) == "-1" {
            format!("-{monomial}")
        } else {
            let cs = base.format(coef);
            let wrap = is_sum(&cs);
            format!("{}*{monomial}", parenthesize_if(cs, wrap))
        };
        terms.push(term);
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    out
}
