//! Matrix words `M_n`, continuants, the `⊕` sum and dihedral equivalence.
//!
//! `M_n(a_1, ..., a_n) = N(a_n) N(a_{n-1}) ... N(a_1)` with
//! `N(a) = [[a, -1], [1, 0]]`: the factor built from `a_1` acts first.
//! Over `Z`, `N(a) = T^a S` for the standard generators `T` and `S` of
//! `SL(2, Z)`.

use std::cmp::Ordering;
use std::fmt;

use serde_json::json;

use crate::error::{Error, ParseError, Result};
use crate::ring::{Ring, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    ring: Ring,
    pub a11: Value,
    pub a12: Value,
    pub a21: Value,
    pub a22: Value,
}

impl Mat2 {
    pub fn new(ring: &Ring, a11: Value, a12: Value, a21: Value, a22: Value) -> Mat2 {
        Mat2 {
            ring: ring.clone(),
            a11,
            a12,
            a21,
            a22,
        }
    }

    pub fn identity(ring: &Ring) -> Mat2 {
        Mat2::scalar(ring, ring.one())
    }

    pub fn scalar(ring: &Ring, c: Value) -> Mat2 {
        Mat2::new(ring, c.clone(), ring.zero(), ring.zero(), c)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let r = &self.ring;
        let dot = |a: &Value, b: &Value, c: &Value, d: &Value| r.add(&r.mul(a, b), &r.mul(c, d));
        Mat2::new(
            r,
            dot(&self.a11, &rhs.a11, &self.a12, &rhs.a21),
            dot(&self.a11, &rhs.a12, &self.a12, &rhs.a22),
            dot(&self.a21, &rhs.a11, &self.a22, &rhs.a21),
            dot(&self.a21, &rhs.a12, &self.a22, &rhs.a22),
        )
    }

    /// `N(a) * self`, cheaper than a general product.
    pub fn push(&self, a: &Value) -> Mat2 {
        let r = &self.ring;
        Mat2::new(
            r,
            r.sub(&r.mul(a, &self.a11), &self.a21),
            r.sub(&r.mul(a, &self.a12), &self.a22),
            self.a11.clone(),
            self.a12.clone(),
        )
    }

    pub fn det(&self) -> Value {
        let r = &self.ring;
        r.sub(&r.mul(&self.a11, &self.a22), &r.mul(&self.a12, &self.a21))
    }

    pub fn neg(&self) -> Mat2 {
        let r = &self.ring;
        Mat2::new(r, r.neg(&self.a11), r.neg(&self.a12), r.neg(&self.a21), r.neg(&self.a22))
    }

    /// Inverse of a determinant-one matrix: `[[d, -b], [-c, a]]`.
    pub fn unimodular_inverse(&self) -> Mat2 {
        let r = &self.ring;
        Mat2::new(r, self.a22.clone(), r.neg(&self.a12), r.neg(&self.a21), self.a11.clone())
    }

    pub fn is_scalar(&self, c: &Value) -> bool {
        let r = &self.ring;
        self.a11 == *c && self.a22 == *c && r.is_zero(&self.a12) && r.is_zero(&self.a21)
    }

    pub fn entries(&self) -> [&Value; 4] {
        [&self.a11, &self.a12, &self.a21, &self.a22]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.ring;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            r.format(&self.a11),
            r.format(&self.a12),
            r.format(&self.a21),
            r.format(&self.a22)
        )
    }
}

/// `[[a, -1], [1, 0]]`.
pub fn n_matrix(ring: &Ring, a: &Value) -> Mat2 {
    Mat2::new(ring, a.clone(), ring.minus_one(), ring.one(), ring.zero())
}

/// `N(t_n) ... N(t_1)`; the identity for an empty word.
pub fn m_matrix(ring: &Ring, t: &[Value]) -> Mat2 {
    t.iter().fold(Mat2::identity(ring), |m, a| m.push(a))
}

/// `K() = 1`, `K(a_1) = a_1`, `K(a_1..a_j) = a_j K(a_1..a_{j-1}) - K(a_1..a_{j-2})`.
pub fn continuant(ring: &Ring, s: &[Value]) -> Value {
    let (mut prev, mut cur) = (ring.zero(), ring.one());
    for a in s {
        let next = ring.sub(&ring.mul(a, &cur), &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// The `ε` of `M_n = ε Id`. In characteristic 2 both signs coincide and
/// the solution is reported as [`Sign::Plus`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self, ring: &Ring) -> Value {
        match self {
            Sign::Plus => ring.one(),
            Sign::Minus => ring.minus_one(),
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Both signs, with `-1` dropped when it equals `1`.
    pub fn candidates(ring: &Ring) -> &'static [Sign] {
        if ring.signs_collapse() {
            &[Sign::Plus]
        } else {
            &[Sign::Plus, Sign::Minus]
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// `Some(ε)` when `M(t) = ε Id`.
pub fn quiddity_sign(ring: &Ring, t: &[Value]) -> Option<Sign> {
    matrix_sign(&m_matrix(ring, t))
}

pub fn matrix_sign(m: &Mat2) -> Option<Sign> {
    let ring = m.ring();
    Sign::candidates(ring)
        .iter()
        .copied()
        .find(|s| m.is_scalar(&s.value(ring)))
}

/// `(a_1 + b_m, a_2, ..., a_{n-1}, a_n + b_1, b_2, ..., b_{m-1})`.
///
/// Both operands need at least two entries: with a single entry the two
/// junction sums would land on the same position.
pub fn oplus(ring: &Ring, a: &[Value], b: &[Value]) -> Result<Vec<Value>> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::InvalidParameter(
            "both summands of ⊕ need at least two entries".into(),
        ));
    }
    let (n, m) = (a.len(), b.len());
    let mut out = Vec::with_capacity(n + m - 2);
    out.push(ring.add(&a[0], &b[m - 1]));
    out.extend_from_slice(&a[1..n - 1]);
    out.push(ring.add(&a[n - 1], &b[0]));
    out.extend_from_slice(&b[1..m - 1]);
    Ok(out)
}

/// An element of the dihedral group acting on tuple positions.
///
/// The image `d` of `t` satisfies `d[i] = u[(i + rotation) % n]`, where `u`
/// is `t` or its reversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transform {
    pub rotation: usize,
    pub reversed: bool,
}

impl Transform {
    pub const IDENTITY: Transform = Transform {
        rotation: 0,
        reversed: false,
    };

    /// All `2n` transforms in scan order: rotations, then reflected rotations.
    pub fn all(n: usize) -> impl Iterator<Item = Transform> {
        let plain = (0..n).map(|rotation| Transform {
            rotation,
            reversed: false,
        });
        let refl = (0..n).map(|rotation| Transform {
            rotation,
            reversed: true,
        });
        plain.chain(refl)
    }

    /// Position in [`Transform::all`].
    pub fn index(&self, n: usize) -> usize {
        self.rotation + if self.reversed { n } else { 0 }
    }

    pub fn apply<T: Clone>(&self, t: &[T]) -> Vec<T> {
        let n = t.len();
        (0..n)
            .map(|i| {
                let j = (i + self.rotation) % n;
                if self.reversed {
                    t[n - 1 - j].clone()
                } else {
                    t[j].clone()
                }
            })
            .collect()
    }
}

pub fn dihedral_orbit(t: &[Value]) -> Vec<(Transform, Vec<Value>)> {
    Transform::all(t.len()).map(|g| (g, g.apply(t))).collect()
}

pub fn equivalent(s: &[Value], t: &[Value]) -> bool {
    s.len() == t.len() && Transform::all(s.len()).any(|g| g.apply(s) == t)
}

fn lex_cmp(a: &[Vec<u8>], b: &[Vec<u8>]) -> Ordering {
    a.cmp(b)
}

/// Minimum of the dihedral orbit under the lexicographic order of
/// canonical encodings, with the first transform attaining it.
pub fn canonical_form(t: &[Value]) -> (Vec<Value>, Transform) {
    if t.is_empty() {
        return (Vec::new(), Transform::IDENTITY);
    }
    let enc: Vec<Vec<u8>> = t.iter().map(Value::encode).collect();
    let mut best = Transform::IDENTITY;
    let mut best_enc = enc.clone();
    for g in Transform::all(t.len()).skip(1) {
        let cand = g.apply(&enc);
        if lex_cmp(&cand, &best_enc) == Ordering::Less {
            best = g;
            best_enc = cand;
        }
    }
    (best.apply(t), best)
}

/// A tuple over a ring, with the sign recorded once verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiddityTuple {
    ring: Ring,
    entries: Vec<Value>,
    sign: Option<Sign>,
}

impl QuiddityTuple {
    /// Wraps entries without checking the matrix equation.
    pub fn unverified(ring: &Ring, entries: Vec<Value>) -> QuiddityTuple {
        QuiddityTuple {
            ring: ring.clone(),
            entries,
            sign: None,
        }
    }

    /// Trusts a sign established by the caller (e.g. from group tables).
    pub(crate) fn with_sign(ring: &Ring, entries: Vec<Value>, sign: Sign) -> QuiddityTuple {
        debug_assert_eq!(quiddity_sign(ring, &entries), Some(sign));
        QuiddityTuple {
            ring: ring.clone(),
            entries,
            sign: Some(sign),
        }
    }

    /// Checks `M(entries) = ±Id` and records the sign.
    pub fn verify(ring: &Ring, entries: Vec<Value>) -> Result<QuiddityTuple> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("empty tuple".into()));
        }
        if let Some(bad) = entries.iter().find(|v| !ring.contains(v)) {
            return Err(Error::InvalidParameter(format!("{bad:?} is not an element of {ring}")));
        }
        let sign = quiddity_sign(ring, &entries).ok_or(Error::NotQuiddity)?;
        Ok(QuiddityTuple {
            ring: ring.clone(),
            entries,
            sign: Some(sign),
        })
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<QuiddityTuple, ParseError> {
        Ok(QuiddityTuple::unverified(ring, ring.parse_tuple(text)?))
    }

    /// Re-checks the recorded sign against the matrix product.
    pub fn recheck(&self) -> bool {
        match self.sign {
            Some(s) => quiddity_sign(&self.ring, &self.entries) == Some(s),
            None => false,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn entries(&self) -> &[Value] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sign(&self) -> Option<Sign> {
        self.sign
    }

    pub fn is_verified(&self) -> bool {
        self.sign.is_some()
    }

    /// Element strings, the tuple's JSON array form.
    pub fn strings(&self) -> Vec<String> {
        self.entries.iter().map(|v| self.ring.format(v)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self.strings())
    }

    /// The canonical representative of the dihedral class, keeping the sign.
    pub fn canonical(&self) -> QuiddityTuple {
        QuiddityTuple {
            ring: self.ring.clone(),
            entries: canonical_form(&self.entries).0,
            sign: self.sign,
        }
    }
}

impl fmt::Display for QuiddityTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_ring;
    use crate::ring::testing::{registered_rings, sample_tuple};
    use proptest::prelude::*;

    fn z() -> Ring {
        Ring::integers()
    }

    fn tup(ring: &Ring, s: &str) -> Vec<Value> {
        ring.parse_tuple(s).unwrap()
    }

    #[test]
    fn n_of_zero_is_s() {
        let r = z();
        let s = Mat2::new(&r, r.zero(), r.minus_one(), r.one(), r.zero());
        assert_eq!(n_matrix(&r, &r.zero()), s);
        assert_eq!(n_matrix(&r, &r.one()).to_string(), "[[1, -1], [1, 0]]");
    }

    #[test]
    fn small_words() {
        let r = z();
        let minus_id = Mat2::scalar(&r, r.minus_one());
        assert_eq!(m_matrix(&r, &tup(&r, "1,1,1")), minus_id);
        assert_eq!(m_matrix(&r, &tup(&r, "0,0")), minus_id);
        let q = Ring::rationals();
        assert_eq!(m_matrix(&q, &tup(&q, "5, 3/5, 3, 2, 4/5")), Mat2::scalar(&q, q.minus_one()));
    }

    #[test]
    fn generator_word_matches_t_s_factorization() {
        // M_n = T^{a_n} S ... T^{a_1} S over Z
        let r = z();
        let t = Mat2::new(&r, r.one(), r.one(), r.zero(), r.one());
        let s = Mat2::new(&r, r.zero(), r.minus_one(), r.one(), r.zero());
        for word in [vec![0, 3, 1], vec![2, 2, 5, 0], vec![4], vec![1, 1, 1], vec![3, 0, 0, 2, 1]] {
            let mut expected = Mat2::identity(&r);
            for &a in &word {
                let mut ta = Mat2::identity(&r);
                for _ in 0..a {
                    ta = ta.mul(&t);
                }
                expected = ta.mul(&s).mul(&expected);
            }
            let vals: Vec<Value> = word.iter().map(|&a| r.from_i64(a)).collect();
            assert_eq!(m_matrix(&r, &vals), expected, "{word:?}");
        }
    }

    #[test]
    fn continuant_examples() {
        let r = z();
        assert_eq!(continuant(&r, &tup(&r, "2,3,4")), r.from_i64(18));
        assert_eq!(continuant(&r, &tup(&r, "4,3,2")), r.from_i64(18));
        assert_eq!(continuant(&r, &[]), r.one());
    }

    #[test]
    fn signs() {
        let r = z();
        assert_eq!(quiddity_sign(&r, &tup(&r, "0,0,0,0")), Some(Sign::Plus));
        assert_eq!(quiddity_sign(&r, &tup(&r, "1,1")), None);
        assert_eq!(
            m_matrix(&r, &tup(&r, "1,1")),
            Mat2::new(&r, r.zero(), r.minus_one(), r.one(), r.minus_one())
        );
        assert_eq!(quiddity_sign(&r, &tup(&r, "-1,-1,-1")), Some(Sign::Plus));
        let f2 = Ring::modular(2).unwrap();
        assert_eq!(quiddity_sign(&f2, &tup(&f2, "1,1,1")), Some(Sign::Plus));
    }

    #[test]
    fn oplus_examples() {
        let r = z();
        assert_eq!(oplus(&r, &tup(&r, "1,1,1"), &tup(&r, "1,1,1")).unwrap(), tup(&r, "2,1,2,1"));
        let t = tup(&r, "3,-2,7,0,5");
        assert_eq!(oplus(&r, &t, &tup(&r, "0,0")).unwrap(), t);
        let f2 = Ring::modular(2).unwrap();
        assert_eq!(oplus(&f2, &tup(&f2, "1,1,1"), &tup(&f2, "1,1,1")).unwrap(), tup(&f2, "0,1,0,1"));
        assert!(oplus(&r, &tup(&r, "1"), &tup(&r, "1,1,1")).is_err());
    }

    #[test]
    fn orbit_examples() {
        let r = z();
        let orbit = dihedral_orbit(&tup(&r, "1,2,3"));
        assert_eq!(orbit.len(), 6);
        assert!(orbit.iter().any(|(_, d)| *d == tup(&r, "3,2,1")));
        let zeros = dihedral_orbit(&tup(&r, "0,0,0,0"));
        assert_eq!(zeros.len(), 8);
        assert!(zeros.iter().all(|(_, d)| *d == tup(&r, "0,0,0,0")));
        let mut set: Vec<Vec<Value>> = dihedral_orbit(&tup(&r, "2,1,2,1")).into_iter().map(|x| x.1).collect();
        set.sort_by(|a, b| a.iter().map(Value::encode).cmp(b.iter().map(Value::encode)));
        set.dedup();
        assert_eq!(set, vec![tup(&r, "1,2,1,2"), tup(&r, "2,1,2,1")]);
        for (g, d) in dihedral_orbit(&tup(&r, "5,6,7,8,9")) {
            assert_eq!(g.apply(&tup(&r, "5,6,7,8,9")), d);
        }
    }

    #[test]
    fn equivalence_examples() {
        let r = z();
        assert!(equivalent(&tup(&r, "1,2,3"), &tup(&r, "3,2,1")));
        assert!(equivalent(&tup(&r, "1,2,3"), &tup(&r, "1,3,2")));
        assert!(!equivalent(&tup(&r, "0,1,0,1"), &tup(&r, "0,0,1,1")));
    }

    #[test]
    fn canonical_examples() {
        let r = z();
        assert_eq!(canonical_form(&tup(&r, "2,1,2,1")).0, tup(&r, "1,2,1,2"));
        assert_eq!(canonical_form(&tup(&r, "0,0,0,0")).0, tup(&r, "0,0,0,0"));
        // -1 sorts after 1 and before 2
        assert_eq!(canonical_form(&tup(&r, "2,-1,1")).0, tup(&r, "1,-1,2"));
    }

    #[test]
    fn size_one_never_and_size_two_only_zero_zero() {
        for n in [2u64, 3, 4] {
            let ring = Ring::modular(n).unwrap();
            let elems = ring.elements().unwrap();
            for a in &elems {
                assert_eq!(quiddity_sign(&ring, std::slice::from_ref(a)), None);
                for b in &elems {
                    let is_q = quiddity_sign(&ring, &[a.clone(), b.clone()]).is_some();
                    assert_eq!(is_q, ring.is_zero(a) && ring.is_zero(b), "Z/{n}");
                }
            }
        }
    }

    #[test]
    fn quiddity_tuple_verification() {
        let r = parse_ring("Z").unwrap();
        let q = QuiddityTuple::verify(&r, tup(&r, "1,1,1")).unwrap();
        assert_eq!(q.sign(), Some(Sign::Minus));
        assert!(q.recheck());
        assert_eq!(q.to_json(), serde_json::json!(["1", "1", "1"]));
        assert!(matches!(QuiddityTuple::verify(&r, tup(&r, "1,1")), Err(Error::NotQuiddity)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn words_have_determinant_one(
            ring_idx in 0usize..registered_rings().len(),
            seed in proptest::collection::vec(-9i64..=9, 1..64),
        ) {
            let ring = &registered_rings()[ring_idx];
            let t = sample_tuple(ring, &seed);
            prop_assert!(ring.is_one(&m_matrix(ring, &t).det()));
        }

        #[test]
        fn matrix_entries_are_continuants(
            ring_idx in 0usize..registered_rings().len(),
            seed in proptest::collection::vec(-9i64..=9, 2..64),
        ) {
            let ring = &registered_rings()[ring_idx];
            let t = sample_tuple(ring, &seed);
            prop_assume!(t.len() >= 2);
            let n = t.len();
            let m = m_matrix(ring, &t);
            prop_assert_eq!(&m.a11, &continuant(ring, &t));
            prop_assert_eq!(&m.a12, &ring.neg(&continuant(ring, &t[1..])));
            prop_assert_eq!(&m.a21, &continuant(ring, &t[..n - 1]));
            prop_assert_eq!(&m.a22, &ring.neg(&continuant(ring, &t[1..n - 1])));
        }

        #[test]
        fn continuant_reversal_symmetry(
            ring_idx in 0usize..registered_rings().len(),
            seed in proptest::collection::vec(-9i64..=9, 0..64),
        ) {
            let ring = &registered_rings()[ring_idx];
            let t = sample_tuple(ring, &seed);
            let mut r = t.clone();
            r.reverse();
            prop_assert_eq!(continuant(ring, &t), continuant(ring, &r));
        }

        #[test]
        fn canonical_form_is_idempotent_and_in_orbit(
            ring_idx in 0usize..registered_rings().len(),
            seed in proptest::collection::vec(-9i64..=9, 1..64),
        ) {
            let ring = &registered_rings()[ring_idx];
            let t = sample_tuple(ring, &seed);
            let (c, g) = canonical_form(&t);
            prop_assert_eq!(&g.apply(&t), &c);
            prop_assert_eq!(&canonical_form(&c).0, &c);
            prop_assert!(equivalent(&t, &c));
            prop_assert!(equivalent(&c, &t));
        }
    }
}
