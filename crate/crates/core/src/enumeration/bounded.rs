//! Irreducible quiddities inside a finite box of an infinite ring.
//!
//! Results are complete for the box only. The search meets in the middle:
//! left halves are indexed by a hash of their matrix, each right half `R`
//! looks up `ε M(R)^{-1}`, and every hit is re-verified exactly. Both halves
//! drop prefixes containing a short segment with continuant `±1`.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::irreducibility::{segment_witness, verdict_in, Verdict};
use crate::quiddity::{canonical_form, matrix_sign, m_matrix, Mat2, QuiddityTuple, Sign};
use crate::ring::{Ring, RingKind, Value};

/// Default limit on the estimated number of half-tuples visited.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Bounds on the entries tried by [`bounded_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBox {
    /// Largest absolute value of an integer coefficient (numerators and
    /// denominators over `Q`).
    pub height: u64,
    /// Largest polynomial degree in every polynomial layer.
    pub degree: usize,
}

impl SearchBox {
    pub fn new(height: u64, degree: usize) -> SearchBox {
        SearchBox { height, degree }
    }

    /// Box members in canonical order, without duplicates.
    pub fn elements(&self, ring: &Ring) -> Result<Vec<Value>> {
        let mut out = match ring.kind() {
            RingKind::Integers => {
                let h = self.height as i64;
                (-h..=h).map(|a| ring.from_i64(a)).collect()
            }
            RingKind::ModInt(_) => ring.elements()?,
            RingKind::Polynomial { base, .. } => self.polynomials(base, self.degree + 1)?,
            RingKind::Quotient { poly, modulus } => {
                let base = poly.coefficient_ring().expect("polynomial layer");
                let len = (self.degree + 1).min(modulus.len() - 1);
                self.polynomials(base, len)?
            }
            RingKind::Fraction(base) => {
                let parts = self.elements(base)?;
                let mut out = Vec::new();
                for num in &parts {
                    for den in parts.iter().filter(|d| !base.is_zero(d)) {
                        out.push(ring.fraction_of(num, den)?);
                    }
                }
                out
            }
            RingKind::Product(l, r) => {
                let left = self.elements(l)?;
                let right = self.elements(r)?;
                let mut out = Vec::with_capacity(left.len() * right.len());
                for a in &left {
                    for b in &right {
                        out.push(Value::Pair(Box::new(a.clone()), Box::new(b.clone())));
                    }
                }
                out
            }
        };
        out.sort_by(|a, b| a.canonical_cmp(b));
        out.dedup();
        Ok(out)
    }

    /// Coefficient lists of length at most `len` over the base box.
    fn polynomials(&self, base: &Ring, len: usize) -> Result<Vec<Value>> {
        let coeffs = self.elements(base)?;
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * coeffs.len());
            for prefix in &out {
                for c in &coeffs {
                    let mut p: Vec<Value> = prefix.clone();
                    p.push(c.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        Ok(out
            .into_iter()
            .map(|mut c| {
                while c.last().is_some_and(|x| base.is_zero(x)) {
                    c.pop();
                }
                Value::Poly(c)
            })
            .collect())
    }
}

#[derive(Clone, Debug)]
pub struct BoundedSearch {
    pub ring: Ring,
    pub size: usize,
    pub search_box: SearchBox,
    pub box_elements: usize,
    /// `|box|^left + |box|^right`, the estimate checked against the budget.
    pub candidates: u128,
    /// Canonical irreducible representatives with all entries in the box.
    pub irreducibles: Vec<QuiddityTuple>,
}

impl BoundedSearch {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ring": self.ring.to_string(),
            "size": self.size,
            "box": {"height": self.search_box.height, "degree": self.search_box.degree},
            "box_elements": self.box_elements,
            "candidates": self.candidates.to_string(),
            "scope": "complete within box only",
            "irreducibles": self.irreducibles.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
        })
    }
}

fn matrix_key(m: &Mat2) -> u64 {
    let mut h = DefaultHasher::new();
    for e in m.entries() {
        e.hash(&mut h);
    }
    h.finish()
}

/// Visits every word over `cands` of length `len` with no segment of
/// length `1..=max_segment` whose continuant is `±1`, passing the word
/// and its matrix to `visit`.
struct Halves<'a> {
    ring: &'a Ring,
    cands: &'a [Value],
    len: usize,
    max_segment: usize,
    /// Later entries are drawn from indices at or above the first one.
    first_is_min: bool,
}

impl Halves<'_> {
    fn walk(&self, first: usize, visit: &mut dyn FnMut(&[u16], &Mat2)) {
        let mut word = Vec::with_capacity(self.len);
        let mut conts: Vec<Vec<(Value, Value)>> = Vec::with_capacity(self.len);
        self.step(first, &mut word, &Mat2::identity(self.ring), &mut conts, visit);
    }

    fn step(
        &self,
        choice: usize,
        word: &mut Vec<u16>,
        m: &Mat2,
        conts: &mut Vec<Vec<(Value, Value)>>,
        visit: &mut dyn FnMut(&[u16], &Mat2),
    ) {
        let r = self.ring;
        let a = &self.cands[choice];
        // segments ending here: continuants of the last 1..=max_segment entries
        let mut here = Vec::with_capacity(self.max_segment);
        if self.max_segment > 0 {
            here.push((r.one(), a.clone()));
            if let Some(prev) = conts.last() {
                for (p, c) in prev.iter().take(self.max_segment - 1) {
                    here.push((c.clone(), r.sub(&r.mul(a, c), p)));
                }
            }
            if here.iter().any(|(_, c)| r.is_plus_minus_one(c)) {
                return;
            }
        }
        let m = m.push(a);
        word.push(choice as u16);
        if word.len() == self.len {
            visit(word, &m);
        } else {
            conts.push(here);
            let lo = if self.first_is_min { word[0] as usize } else { 0 };
            for next in lo..self.cands.len() {
                self.step(next, word, &m, conts, visit);
            }
            conts.pop();
        }
        word.pop();
    }
}

/// All canonical irreducible quiddities of size `n` whose entries lie in
/// the box. Refused with [`Error::BudgetExceeded`] when the estimate
/// exceeds `budget`.
pub fn bounded_search(ring: &Ring, n: usize, search_box: SearchBox, budget: u128) -> Result<BoundedSearch> {
    if n < 3 {
        return Err(Error::InvalidParameter("bounded search needs size at least 3".into()));
    }
    let cands = search_box.elements(ring)?;
    if cands.len() > u16::MAX as usize {
        return Err(Error::BudgetExceeded {
            candidates: cands.len() as u128,
            budget,
        });
    }
    let right_len = n / 2;
    let left_len = n - right_len;
    let size = cands.len() as u128;
    let candidates = size
        .checked_pow(left_len as u32)
        .and_then(|l| size.checked_pow(right_len as u32).and_then(|r| l.checked_add(r)))
        .unwrap_or(u128::MAX);
    if candidates > budget {
        return Err(Error::BudgetExceeded { candidates, budget });
    }
    let max_segment = n - 3;
    let left_walk = Halves {
        ring,
        cands: &cands,
        len: left_len,
        max_segment,
        first_is_min: true,
    };
    // a canonical tuple starts with its least entry
    let lefts: Vec<(u64, Vec<u16>)> = (0..cands.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            left_walk.walk(first, &mut |w, m| out.push((matrix_key(m), w.to_vec())));
            out
        })
        .collect();
    let mut index: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, (key, _)) in lefts.iter().enumerate() {
        index.entry(*key).or_default().push(i);
    }
    let right_walk = Halves {
        ring,
        cands: &cands,
        len: right_len,
        max_segment,
        first_is_min: false,
    };
    let signs: Vec<Value> = Sign::candidates(ring).iter().map(|s| s.value(ring)).collect();
    let mut found: Vec<QuiddityTuple> = (0..cands.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            right_walk.walk(first, &mut |w, m| {
                let inverse = m.unimodular_inverse();
                for eps in &signs {
                    let target = Mat2::scalar(ring, eps.clone()).mul(&inverse);
                    let Some(hits) = index.get(&matrix_key(&target)) else {
                        continue;
                    };
                    for &i in hits {
                        let t: Vec<Value> = lefts[i]
                            .1
                            .iter()
                            .chain(w.iter())
                            .map(|&c| cands[c as usize].clone())
                            .collect();
                        if let Some(q) = accept(ring, t) {
                            out.push(q);
                        }
                    }
                }
            });
            out
        })
        .collect();
    found.sort_by(|a, b| {
        let ea = a.entries().iter().map(Value::encode);
        let eb = b.entries().iter().map(Value::encode);
        ea.cmp(eb)
    });
    found.dedup();
    Ok(BoundedSearch {
        ring: ring.clone(),
        size: n,
        search_box,
        box_elements: cands.len(),
        candidates,
        irreducibles: found,
    })
}

/// Exact checks on a joined candidate: quiddity, canonical, irreducible.
fn accept(ring: &Ring, t: Vec<Value>) -> Option<QuiddityTuple> {
    let sign = matrix_sign(&m_matrix(ring, &t))?;
    if canonical_form(&t).0 != t || segment_witness(ring, &t).is_some() {
        return None;
    }
    match verdict_in(ring, &t) {
        Ok(Verdict::Irreducible) => Some(QuiddityTuple::with_sign(ring, t, sign)),
        _ => None,
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_ring;

    #[test]
    fn box_sizes() {
        let z = Ring::integers();
        assert_eq!(SearchBox::new(3, 0).elements(&z).unwrap().len(), 7);
        let zx = parse_ring("Z[X]").unwrap();
        assert_eq!(SearchBox::new(2, 2).elements(&zx).unwrap().len(), 125);
        let q = Ring::rationals();
        // a/b with |a| <= 2, 1 <= b <= 2: 0, ±1, ±2, ±1/2
        assert_eq!(SearchBox::new(2, 0).elements(&q).unwrap().len(), 7);
        let gauss = parse_ring("Z[X]/(X^2+1)").unwrap();
        assert_eq!(SearchBox::new(1, 5).elements(&gauss).unwrap().len(), 9);
    }

    #[test]
    fn integers_small_sizes() {
        let z = Ring::integers();
        let b = SearchBox::new(3, 0);
        let three: Vec<String> = bounded_search(&z, 3, b, DEFAULT_BUDGET)
            .unwrap()
            .irreducibles
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(three, ["(1, 1, 1)", "(-1, -1, -1)"]);
        assert!(bounded_search(&z, 5, b, DEFAULT_BUDGET).unwrap().irreducibles.is_empty());
    }

    #[test]
    fn budget_refusal() {
        let zx = parse_ring("Z[X]").unwrap();
        let err = bounded_search(&zx, 8, SearchBox::new(2, 2), 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 1000, .. }));
    }
}
