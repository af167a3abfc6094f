//! Exact reducibility decision with checkable certificates.
//!
//! A quiddity `c` of size `n` is reducible when some dihedral image `d` of
//! `c` equals `a ⊕ b` with quiddities `a` (size `m`) and `b` (size `l`),
//! `m, l ≥ 3`. The interior `(b_2, ..., b_{l-1})` of `b` is the tail of
//! `d`, and the junction entries `b_1`, `b_l` are solved in closed form
//! from `P = M(b_2, ..., b_{l-1})`, so no search over ring elements is
//! needed.

use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::quiddity::{m_matrix, matrix_sign, n_matrix, oplus, quiddity_sign, Mat2, QuiddityTuple, Sign, Transform};
use crate::ring::{Ring, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    /// Maps the certified tuple onto `d = a ⊕ b`.
    pub transform: Transform,
    /// Size of `b`.
    pub l: usize,
    /// Size of `a`; `m = n + 2 - l`.
    pub m: usize,
    pub a: Vec<Value>,
    pub b: Vec<Value>,
    pub sign_a: Sign,
    pub sign_b: Sign,
}

impl ReductionCertificate {
    pub fn b_first(&self) -> &Value {
        &self.b[0]
    }

    pub fn b_last(&self) -> &Value {
        &self.b[self.l - 1]
    }

    pub fn to_json(&self, ring: &Ring) -> serde_json::Value {
        let strings = |t: &[Value]| t.iter().map(|v| ring.format(v)).collect::<Vec<_>>();
        json!({
            "transform": {
                "rotation": self.transform.rotation,
                "reversed": self.transform.reversed,
            },
            "l": self.l,
            "m": self.m,
            "a": strings(&self.a),
            "b": strings(&self.b),
            "sign_a": self.sign_a.as_i32(),
            "sign_b": self.sign_b.as_i32(),
        })
    }
}

/// One solution of the junction equation `N(b_last) P N(b_first) = ε Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Junction {
    pub sign: Sign,
    pub b_first: Value,
    pub b_last: Value,
}

/// Solves `N(b_last) P N(b_first) = ε Id` for `P = [[p, q], [r, s]]` of
/// determinant one. A solution exists for `ε` exactly when `p = -ε`, and
/// then `b_first = ε q`, `b_last = -ε r`.
pub fn junction_solve(p: &Mat2) -> Result<Vec<Junction>> {
    let ring = p.ring();
    if !ring.is_one(&p.det()) {
        return Err(Error::Invariant(format!("junction matrix {p} has determinant != 1")));
    }
    let mut out = Vec::new();
    for &sign in Sign::candidates(ring) {
        let eps = sign.value(ring);
        if p.a11 != ring.neg(&eps) {
            continue;
        }
        let j = Junction {
            sign,
            b_first: ring.mul(&eps, &p.a12),
            b_last: ring.neg(&ring.mul(&eps, &p.a21)),
        };
        let check = p.mul(&n_matrix(ring, &j.b_first)).push(&j.b_last);
        if !check.is_scalar(&eps) {
            return Err(Error::Invariant(format!("junction contract failed for {p}")));
        }
        out.push(j);
    }
    Ok(out)
}

/// Which dihedral images [`find_reduction`] scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// All `2n` transforms in id order.
    Full,
    /// Rotations only. Continuants are reversal invariant, so verdicts
    /// agree with [`ScanMode::Full`].
    RotationsOnly,
}

fn transforms(n: usize, mode: ScanMode) -> impl Iterator<Item = Transform> {
    let count = match mode {
        ScanMode::Full => 2 * n,
        ScanMode::RotationsOnly => n,
    };
    Transform::all(n).take(count)
}

/// Builds `a` from `d` once `b`'s junction entries are known.
fn split(ring: &Ring, d: &[Value], k: usize, j: &Junction) -> (Vec<Value>, Vec<Value>) {
    let n = d.len();
    let m = n - k;
    let mut b = Vec::with_capacity(k + 2);
    b.push(j.b_first.clone());
    b.extend_from_slice(&d[m..]);
    b.push(j.b_last.clone());
    let mut a = d[..m].to_vec();
    a[0] = ring.sub(&d[0], &j.b_last);
    a[m - 1] = ring.sub(&d[m - 1], &j.b_first);
    (a, b)
}

/// Scans one dihedral image: `k` ascending, then `ε` in `+1, -1` order.
fn reduce_image(ring: &Ring, g: Transform, d: &[Value]) -> Result<Option<ReductionCertificate>> {
    let n = d.len();
    // P_k = M(d_{n-k+1}, ..., d_n), extended at the right end of the word
    let mut p = Mat2::identity(ring);
    for k in 1..=n - 3 {
        p = p.mul(&n_matrix(ring, &d[n - k]));
        // the first junction in ε order decides this k
        if let Some(j) = junction_solve(&p)?.into_iter().next() {
            let (a, b) = split(ring, d, k, &j);
            let sign_b = quiddity_sign(ring, &b);
            let sign_a = quiddity_sign(ring, &a);
            let (Some(sign_a), Some(sign_b)) = (sign_a, sign_b) else {
                return Err(Error::Invariant(format!(
                    "junction split of {} at k = {k} is not a pair of quiddities",
                    fmt_tuple(ring, d)
                )));
            };
            if sign_b != j.sign || oplus(ring, &a, &b)? != d {
                return Err(Error::Invariant("junction split does not recompose".into()));
            }
            return Ok(Some(ReductionCertificate {
                transform: g,
                l: k + 2,
                m: n - k,
                a,
                b,
                sign_a,
                sign_b,
            }));
        }
    }
    Ok(None)
}

fn fmt_tuple(ring: &Ring, t: &[Value]) -> String {
    let parts: Vec<String> = t.iter().map(|v| ring.format(v)).collect();
    format!("({})", parts.join(", "))
}

/// First cyclic segment `(start, k)` of length `1 ≤ k ≤ n-3` whose
/// continuant is `±1`, scanning starts ascending then lengths ascending.
pub fn segment_witness(ring: &Ring, t: &[Value]) -> Option<(usize, usize)> {
    let n = t.len();
    if n < 4 {
        return None;
    }
    for start in 0..n {
        let (mut prev, mut cur) = (ring.zero(), ring.one());
        for k in 1..=n - 3 {
            let a = &t[(start + k - 1) % n];
            let next = ring.sub(&ring.mul(a, &cur), &prev);
            prev = cur;
            cur = next;
            if ring.is_plus_minus_one(&cur) {
                return Some((start, k));
            }
        }
    }
    None
}

/// Searches for a reduction of a quiddity given by its entries.
///
/// The scan is deterministic: transforms in id order, segment length
/// ascending, `ε = +1` before `ε = -1`. The result is cross-checked
/// against [`segment_witness`]; a disagreement is an [`Error::Invariant`].
pub fn find_reduction_in(ring: &Ring, t: &[Value], mode: ScanMode) -> Result<Option<ReductionCertificate>> {
    let n = t.len();
    if n <= 3 {
        return Ok(None);
    }
    let mut found = None;
    for g in transforms(n, mode) {
        if let Some(cert) = reduce_image(ring, g, &g.apply(t))? {
            found = Some(cert);
            break;
        }
    }
    if found.is_some() != segment_witness(ring, t).is_some() {
        return Err(Error::Invariant(format!(
            "junction scan and segment criterion disagree on {}",
            fmt_tuple(ring, t)
        )));
    }
    Ok(found)
}

/// [`find_reduction_in`] on a verified tuple with the full scan.
pub fn find_reduction(c: &QuiddityTuple) -> Result<Option<ReductionCertificate>> {
    if !c.is_verified() {
        return Err(Error::NotQuiddity);
    }
    find_reduction_in(c.ring(), c.entries(), ScanMode::Full)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    Reducible(ReductionCertificate),
    /// Size at most two, never counted as irreducible.
    Excluded,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Irreducible => "irreducible",
            Verdict::Reducible(_) => "reducible",
            Verdict::Excluded => "excluded",
        }
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self, Verdict::Irreducible)
    }
}

pub fn is_irreducible(c: &QuiddityTuple) -> Result<Verdict> {
    if !c.is_verified() {
        return Err(Error::NotQuiddity);
    }
    verdict_in(c.ring(), c.entries())
}

/// Verdict for entries already known to form a quiddity.
pub fn verdict_in(ring: &Ring, t: &[Value]) -> Result<Verdict> {
    if t.len() <= 2 {
        return Ok(Verdict::Excluded);
    }
    Ok(match find_reduction_in(ring, t, ScanMode::Full)? {
        Some(cert) => Verdict::Reducible(cert),
        None => Verdict::Irreducible,
    })
}

/// Why [`verify_certificate`] rejected a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateFault {
    /// `l` or `m` outside `[3, n-1]`, or `l + m != n + 2`.
    SizeBound,
    /// `a` or `b` does not have the declared length.
    LengthMismatch,
    RotationOutOfRange,
    /// `a ⊕ b` differs from the transformed tuple.
    SumMismatch,
    ANotQuiddity,
    BNotQuiddity,
    SignMismatch,
}

impl fmt::Display for CertificateFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateFault::SizeBound => "size_bound",
            CertificateFault::LengthMismatch => "length_mismatch",
            CertificateFault::RotationOutOfRange => "rotation_out_of_range",
            CertificateFault::SumMismatch => "sum_mismatch",
            CertificateFault::ANotQuiddity => "a_not_quiddity",
            CertificateFault::BNotQuiddity => "b_not_quiddity",
            CertificateFault::SignMismatch => "sign_mismatch",
        })
    }
}

/// Re-derives everything a certificate claims about `t`.
pub fn verify_certificate(ring: &Ring, cert: &ReductionCertificate, t: &[Value]) -> Result<(), CertificateFault> {
    let n = t.len();
    if cert.l < 3 || cert.m < 3 || cert.l + cert.m != n + 2 {
        return Err(CertificateFault::SizeBound);
    }
    if cert.a.len() != cert.m || cert.b.len() != cert.l {
        return Err(CertificateFault::LengthMismatch);
    }
    if cert.transform.rotation >= n {
        return Err(CertificateFault::RotationOutOfRange);
    }
    let sign_b = quiddity_sign(ring, &cert.b).ok_or(CertificateFault::BNotQuiddity)?;
    let sign_a = quiddity_sign(ring, &cert.a).ok_or(CertificateFault::ANotQuiddity)?;
    if sign_a != cert.sign_a || sign_b != cert.sign_b {
        return Err(CertificateFault::SignMismatch);
    }
    let d = cert.transform.apply(t);
    match oplus(ring, &cert.a, &cert.b) {
        Ok(sum) if sum == d => Ok(()),
        _ => Err(CertificateFault::SumMismatch),
    }
}

/// Brute force over junction entries, independent of [`junction_solve`].
///
/// For every transform, every `l ∈ [3, n-1]` and every pair
/// `(b_1, b_l) ∈ A²` (canonical order), `b` is assembled from the tail of
/// the image and both `b` and the complementary `a` are tested by full
/// matrix products. Finite rings only.
pub fn reduction_oracle(ring: &Ring, t: &[Value]) -> Result<Option<ReductionCertificate>> {
    let elements = ring.elements()?;
    let n = t.len();
    if n < 4 {
        return Ok(None);
    }
    for g in Transform::all(n) {
        let d = g.apply(t);
        for l in 3..n {
            let m = n + 2 - l;
            for b_first in &elements {
                for b_last in &elements {
                    let mut b = vec![b_first.clone()];
                    b.extend_from_slice(&d[m..]);
                    b.push(b_last.clone());
                    let Some(sign_b) = matrix_sign(&m_matrix(ring, &b)) else {
                        continue;
                    };
                    let mut a = d[..m].to_vec();
                    a[0] = ring.sub(&d[0], b_last);
                    a[m - 1] = ring.sub(&d[m - 1], b_first);
                    if let Some(sign_a) = matrix_sign(&m_matrix(ring, &a)) {
                        return Ok(Some(ReductionCertificate {
                            transform: g,
                            l,
                            m,
                            a,
                            b,
                            sign_a,
                            sign_b,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_ring;

    fn tup(ring: &Ring, s: &str) -> Vec<Value> {
        ring.parse_tuple(s).unwrap()
    }

    fn verified(ring: &Ring, s: &str) -> QuiddityTuple {
        QuiddityTuple::verify(ring, tup(ring, s)).unwrap()
    }

    #[test]
    fn junction_examples() {
        let z = Ring::integers();
        let sols = junction_solve(&m_matrix(&z, &tup(&z, "1"))).unwrap();
        assert_eq!(
            sols,
            vec![Junction {
                sign: Sign::Minus,
                b_first: z.one(),
                b_last: z.one()
            }]
        );
        assert!(junction_solve(&n_matrix(&z, &z.zero())).unwrap().is_empty());
        assert!(junction_solve(&n_matrix(&z, &z.from_i64(5))).unwrap().is_empty());
        let z4 = Ring::modular(4).unwrap();
        assert_eq!(junction_solve(&n_matrix(&z4, &z4.from_i64(5))).unwrap().len(), 1);
        let f2 = Ring::modular(2).unwrap();
        assert_eq!(junction_solve(&n_matrix(&f2, &f2.one())).unwrap().len(), 1);
        let bad = Mat2::scalar(&z, z.from_i64(2));
        assert!(matches!(junction_solve(&bad), Err(Error::Invariant(_))));
    }

    #[test]
    fn two_one_two_one_splits_into_triangles() {
        let z = Ring::integers();
        let c = verified(&z, "2,1,2,1");
        let cert = find_reduction(&c).unwrap().unwrap();
        assert_eq!(cert.b, tup(&z, "1,1,1"));
        assert_eq!(cert.a, tup(&z, "1,1,1"));
        assert_eq!((cert.l, cert.m), (3, 3));
        assert_eq!(verify_certificate(&z, &cert, c.entries()), Ok(()));
    }

    #[test]
    fn zero_a_zero_minus_a() {
        let z = Ring::integers();
        assert_eq!(find_reduction(&verified(&z, "0,5,0,-5")).unwrap(), None);
        let c = verified(&z, "0,1,0,-1");
        let cert = find_reduction(&c).unwrap().unwrap();
        assert_eq!(verify_certificate(&z, &cert, c.entries()), Ok(()));
        // the certificate through (0,-1,0,1) with segment (1)
        let g = Transform {
            rotation: 2,
            reversed: false,
        };
        let d = g.apply(c.entries());
        assert_eq!(d, tup(&z, "0,-1,0,1"));
        let at_two = reduce_image(&z, g, &d).unwrap().unwrap();
        assert_eq!(at_two.b, tup(&z, "1,1,1"));
        assert_eq!(at_two.a, tup(&z, "-1,-1,-1"));
        assert_eq!(verify_certificate(&z, &at_two, c.entries()), Ok(()));
    }

    #[test]
    fn verdicts() {
        let z = Ring::integers();
        assert_eq!(is_irreducible(&verified(&z, "0,0")).unwrap(), Verdict::Excluded);
        assert_eq!(is_irreducible(&verified(&z, "1,1,1")).unwrap(), Verdict::Irreducible);
        let r = parse_ring("Z/3[X]").unwrap();
        assert_eq!(is_irreducible(&verified(&r, "0,X,0,-X")).unwrap(), Verdict::Irreducible);
        let f2 = Ring::modular(2).unwrap();
        assert_eq!(is_irreducible(&verified(&f2, "0,0")).unwrap(), Verdict::Excluded);
        let unverified = QuiddityTuple::unverified(&z, tup(&z, "1,1,1"));
        assert!(matches!(is_irreducible(&unverified), Err(Error::NotQuiddity)));
    }

    #[test]
    fn tampered_certificates_rejected() {
        let z = Ring::integers();
        let c = verified(&z, "2,1,2,1");
        let cert = find_reduction(&c).unwrap().unwrap();
        let mut bumped = cert.clone();
        bumped.b[0] = z.add(&bumped.b[0], &z.one());
        assert_eq!(
            verify_certificate(&z, &bumped, c.entries()),
            Err(CertificateFault::BNotQuiddity)
        );
        let mut short = cert.clone();
        short.l = 2;
        short.b.truncate(2);
        assert_eq!(verify_certificate(&z, &short, c.entries()), Err(CertificateFault::SizeBound));
        let mut turned = cert;
        turned.transform.rotation = 1;
        assert_eq!(verify_certificate(&z, &turned, c.entries()), Err(CertificateFault::SumMismatch));
    }

    #[test]
    fn oracle_examples() {
        let f2 = Ring::modular(2).unwrap();
        let t = tup(&f2, "0,1,0,1");
        let cert = reduction_oracle(&f2, &t).unwrap().unwrap();
        assert_eq!(verify_certificate(&f2, &cert, &t), Ok(()));
        let f3 = Ring::modular(3).unwrap();
        assert_eq!(reduction_oracle(&f3, &tup(&f3, "0,0,0,0")).unwrap(), None);
        assert!(reduction_oracle(&Ring::integers(), &tup(&Ring::integers(), "0,0,0,0")).is_err());
    }

    #[test]
    fn size_four_irreducible_iff_no_unit_sign_entry() {
        let rings = ["Z", "Q", "Z/5", "Z/7", "Z/2[X]", "Z/3[X]"];
        for name in rings {
            let ring = parse_ring(name).unwrap();
            for text in ["0,0,0,0", "0,1,0,-1", "2,0,-2,0", "-1,0,1,0", "0,X,0,-X", "1,1,-1,-1"] {
                let Ok(t) = ring.parse_tuple(text) else { continue };
                let Some(_) = quiddity_sign(&ring, &t) else { continue };
                let expect = !t.iter().any(|x| ring.is_plus_minus_one(x));
                assert_eq!(verdict_in(&ring, &t).unwrap().is_irreducible(), expect, "{name} {text}");
            }
        }
    }

    #[test]
    fn certificate_json_shape() {
        let z = Ring::integers();
        let cert = find_reduction(&verified(&z, "2,1,2,1")).unwrap().unwrap();
        let j = cert.to_json(&z);
        assert_eq!(j["transform"]["rotation"], 0);
        assert_eq!(j["transform"]["reversed"], false);
        assert_eq!(j["b"], json!(["1", "1", "1"]));
        assert_eq!(j["sign_b"], -1);
    }
}
