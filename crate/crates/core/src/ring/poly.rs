//! Dense univariate polynomial arithmetic over a coefficient ring.
//! Coefficient lists are low to high; results are trimmed.

use super::{Ring, Value};

pub(crate) fn trim(base: &Ring, c: &mut Vec<Value>) {
    while c.last().is_some_and(|x| base.is_zero(x)) {
        c.pop();
    }
}

pub(crate) fn add(base: &Ring, a: &[Value], b: &[Value]) -> Vec<Value> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Vec<Value> = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = base.add(o, s);
    }
    trim(base, &mut out);
    out
}

pub(crate) fn mul(base: &Ring, a: &[Value], b: &[Value]) -> Vec<Value> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![base.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if base.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = base.add(&out[i + j], &base.mul(x, y));
        }
    }
    trim(base, &mut out);
    out
}

pub(crate) fn scale(base: &Ring, a: &[Value], c: &Value) -> Vec<Value> {
    let mut out: Vec<Value> = a.iter().map(|x| base.mul(x, c)).collect();
    trim(base, &mut out);
    out
}

/// `a mod m` for a monic `m`.
pub(crate) fn rem_monic(base: &Ring, a: &[Value], m: &[Value]) -> Vec<Value> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    trim(base, &mut r);
    while r.len() > d {
        let lead = r.pop().unwrap();
        let shift = r.len() - d;
        for (k, mk) in m[..d].iter().enumerate() {
            let t = base.mul(&lead, mk);
            r[shift + k] = base.sub(&r[shift + k], &t);
        }
        trim(base, &mut r);
    }
    r
}

/// Euclidean division over a field.
pub(crate) fn divrem_field(field: &Ring, a: &[Value], b: &[Value]) -> (Vec<Value>, Vec<Value>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let lead_inv = field
        .try_inverse(b.last().unwrap())
        .expect("leading coefficient over a field is invertible");
    let mut r = a.to_vec();
    trim(field, &mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let coef = field.mul(r.last().unwrap(), &lead_inv);
        for (k, bk) in b.iter().enumerate() {
            let t = field.mul(&coef, bk);
            r[shift + k] = field.sub(&r[shift + k], &t);
        }
        q[shift] = coef;
        trim(field, &mut r);
    }
    trim(field, &mut q);
    (q, r)
}

fn make_monic(field: &Ring, a: &[Value]) -> Vec<Value> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = field.try_inverse(l).expect("nonzero element of a field");
            scale(field, a, &inv)
        }
    }
}

/// Monic greatest common divisor over a field (zero if both are zero).
pub(crate) fn gcd_field(field: &Ring, a: &[Value], b: &[Value]) -> Vec<Value> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem_field(field, &x, &y);
        x = y;
        y = r;
    }
    make_monic(field, &x)
}

/// Inverse of `a` modulo `m` over a field, when `gcd(a, m) = 1`.
pub(crate) fn inverse_mod_field(field: &Ring, a: &[Value], m: &[Value]) -> Option<Vec<Value>> {
    // extended Euclid keeping only the coefficient of `a`
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1) = (Vec::new(), vec![field.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem_field(field, &r0, &r1);
        let qs = mul(field, &q, &s1);
        let neg: Vec<Value> = qs.iter().map(|c| field.neg(c)).collect();
        let s = add(field, &s0, &neg);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = field.try_inverse(&r0[0])?;
    Some(rem_monic_field(field, &scale(field, &s0, &inv), m))
}

fn rem_monic_field(field: &Ring, a: &[Value], m: &[Value]) -> Vec<Value> {
    divrem_field(field, a, m).1
}
