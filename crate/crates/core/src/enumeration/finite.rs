//! Depth-first enumeration over finite rings.
//!
//! A prefix `(a_1, ..., a_i)` is carried as its group element
//! `g = M(a_1, ..., a_i)` and extended only while `±Id` stays reachable in
//! the remaining number of steps. For irreducibles, each new entry also
//! closes segments ending at it; a segment of length at most `n - 3` with
//! continuant `±1` certifies reducibility of every completion.

use rayon::prelude::*;

use super::tables::{FiniteRing, ReachTable, Sl2Group};
use crate::error::{Error, Result};
use crate::irreducibility::{find_reduction_in, ScanMode};
use crate::quiddity::{canonical_form, quiddity_sign, QuiddityTuple, Sign};
use crate::ring::{Ring, Value};

/// Tables for one finite ring, valid for sizes up to `max_size`.
#[derive(Clone, Debug)]
pub struct Enumerator {
    ring: FiniteRing,
    group: Sl2Group,
    reach: ReachTable,
}

impl Enumerator {
    pub fn new(ring: &Ring, max_size: usize) -> Result<Enumerator> {
        let ring = FiniteRing::new(ring)?;
        let group = Sl2Group::new(&ring)?;
        let reach = ReachTable::new(&group, ring.len(), max_size);
        Ok(Enumerator { ring, group, reach })
    }

    pub fn finite_ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn group(&self) -> &Sl2Group {
        &self.group
    }

    pub fn reach(&self) -> &ReachTable {
        &self.reach
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if n > self.reach.max_steps() {
            return Err(Error::InvalidParameter(format!(
                "size {n} exceeds the prepared maximum {}",
                self.reach.max_steps()
            )));
        }
        Ok(())
    }

    /// All quiddities of size `n` as index tuples with their signs, in
    /// canonical order; one per dihedral class when `canonical_only`.
    pub fn quiddities(&self, n: usize, canonical_only: bool) -> Result<Vec<(Vec<u32>, Sign)>> {
        self.check_size(n)?;
        Ok(self.run(n, canonical_only, false))
    }

    /// Canonical representatives of the irreducible classes of size `n`.
    ///
    /// Survivors of the pruned search are re-checked with the full
    /// reduction scan; a disagreement is an [`Error::Invariant`].
    pub fn irreducibles(&self, n: usize) -> Result<Vec<(Vec<u32>, Sign)>> {
        self.check_size(n)?;
        if n < 3 {
            return Ok(Vec::new());
        }
        let found = self.run(n, true, n >= 4);
        for (t, _) in &found {
            let values = self.ring.values(t);
            if let Some(cert) = find_reduction_in(self.ring.ring(), &values, ScanMode::RotationsOnly)? {
                return Err(Error::Invariant(format!(
                    "pruned search kept a reducible tuple (split l = {})",
                    cert.l
                )));
            }
        }
        Ok(found)
    }

    /// Number of quiddities of size `n` by transfer-matrix counting over
    /// the group, independent of the search.
    pub fn dp_count(&self, n: usize) -> u128 {
        let q = self.ring.len() as u32;
        let mut counts = vec![0u128; self.group.order()];
        counts[self.group.identity as usize] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; counts.len()];
            for (g, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for a in 0..q {
                    next[self.group.step(g as u32, a) as usize] += c;
                }
            }
            counts = next;
        }
        let mut total = counts[self.group.identity as usize];
        if self.group.minus_identity != self.group.identity {
            total += counts[self.group.minus_identity as usize];
        }
        total
    }

    fn run(&self, n: usize, canonical: bool, segments: bool) -> Vec<(Vec<u32>, Sign)> {
        if n == 0 {
            return Vec::new();
        }
        let q = self.ring.len() as u32;
        let depth = n.min(2);
        let mut prefixes: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..depth {
            prefixes = prefixes
                .into_iter()
                .flat_map(|p| (0..q).map(move |a| [p.as_slice(), &[a]].concat()))
                .filter(|p| !canonical || p.iter().all(|&a| a >= p[0]))
                .collect();
        }
        let mut out: Vec<(Vec<u32>, Sign)> = prefixes
            .par_iter()
            .flat_map_iter(|prefix| {
                let mut s = Search::new(self, n, canonical, segments, prefix);
                s.place(0);
                s.out
            })
            .collect();
        out.sort_unstable();
        out
    }
}

struct Search<'a> {
    e: &'a Enumerator,
    n: usize,
    canonical: bool,
    segments: bool,
    fixed: &'a [u32],
    t: Vec<u32>,
    g: Vec<u32>,
    /// `conts[i * n + s] = (K(t_s..t_{i-1}), K(t_s..t_i))`.
    conts: Vec<(u32, u32)>,
    out: Vec<(Vec<u32>, Sign)>,
}

impl<'a> Search<'a> {
    fn new(e: &'a Enumerator, n: usize, canonical: bool, segments: bool, fixed: &'a [u32]) -> Search<'a> {
        let mut g = vec![0; n + 1];
        g[0] = e.group.identity;
        Search {
            e,
            n,
            canonical,
            segments,
            fixed,
            t: vec![0; n],
            g,
            conts: vec![(0, 0); n * n],
            out: Vec::new(),
        }
    }

    /// Continuants of the segments ending at `i` with entry `a`; `false`
    /// when one of length at most `n - 3` is `±1`.
    fn close_segments(&mut self, i: usize, a: u32) -> bool {
        let r = &self.e.ring;
        let n = self.n;
        let lowest = (i + 4).saturating_sub(n);
        for s in lowest..=i {
            let pair = if s == i {
                (r.one, a)
            } else {
                let (p, c) = self.conts[(i - 1) * n + s];
                (c, r.sub(r.mul(a, c), p))
            };
            if r.is_unit_sign(pair.1) {
                return false;
            }
            self.conts[i * n + s] = pair;
        }
        true
    }

    fn place(&mut self, i: usize) {
        if i == self.n {
            self.leaf();
            return;
        }
        let q = self.e.ring.len() as u32;
        let (lo, hi) = match self.fixed.get(i) {
            Some(&a) => (a, a + 1),
            None if self.canonical && i > 0 => (self.t[0], q),
            None => (0, q),
        };
        let remaining = self.n - i - 1;
        for a in lo..hi {
            let g = self.e.group.step(self.g[i], a);
            if !self.e.reach.reachable(remaining, g) {
                continue;
            }
            if self.segments && !self.close_segments(i, a) {
                continue;
            }
            self.t[i] = a;
            self.g[i + 1] = g;
            self.place(i + 1);
        }
    }

    fn leaf(&mut self) {
        let sign = self.e.group.sign_of(self.g[self.n]).expect("reach row 0 is ±Id");
        if self.segments && has_unit_segment(&self.e.ring, &self.t) {
            return;
        }
        if self.canonical && !is_canonical(&self.t) {
            return;
        }
        self.out.push((self.t.clone(), sign));
    }
}

/// Cyclic segment of length `1..=n-3` with continuant `±1`.
fn has_unit_segment(r: &FiniteRing, t: &[u32]) -> bool {
    let n = t.len();
    (0..n).any(|start| {
        let (mut prev, mut cur) = (r.zero, r.one);
        (1..=n.saturating_sub(3)).any(|k| {
            let next = r.sub(r.mul(t[(start + k - 1) % n], cur), prev);
            prev = cur;
            cur = next;
            r.is_unit_sign(cur)
        })
    })
}

/// `t` is the lexicographic minimum of its dihedral orbit.
fn is_canonical(t: &[u32]) -> bool {
    let n = t.len();
    for rot in 0..n {
        for reversed in [false, true] {
            let image = |i: usize| {
                let j = (i + rot) % n;
                if reversed {
                    t[n - 1 - j]
                } else {
                    t[j]
                }
            };
            for (i, &x) in t.iter().enumerate() {
                let y = image(i);
                if y < x {
                    return false;
                }
                if y > x {
                    break;
                }
            }
        }
    }
    true
}

fn to_tuples(e: &Enumerator, found: Vec<(Vec<u32>, Sign)>) -> Vec<QuiddityTuple> {
    let ring = e.ring.ring();
    found
        .into_iter()
        .map(|(t, sign)| QuiddityTuple::with_sign(ring, e.ring.values(&t), sign))
        .collect()
}

/// Quiddities of size `n` over a finite ring, in canonical order.
pub fn enumerate_quiddities(ring: &Ring, n: usize, canonical_only: bool) -> Result<Vec<QuiddityTuple>> {
    let e = Enumerator::new(ring, n)?;
    let found = e.quiddities(n, canonical_only)?;
    Ok(to_tuples(&e, found))
}

/// Canonical representatives of all irreducible classes of size `n`.
pub fn enumerate_irreducibles(ring: &Ring, n: usize) -> Result<Vec<QuiddityTuple>> {
    let e = Enumerator::new(ring, n)?;
    let found = e.irreducibles(n)?;
    Ok(to_tuples(&e, found))
}

/// Brute force over all `|A|^n` tuples with plain matrix products, for
/// cross-checking the pruned search. Canonical forms come from
/// [`canonical_form`].
pub fn enumerate_quiddities_unpruned(ring: &Ring, n: usize, canonical_only: bool) -> Result<Vec<QuiddityTuple>> {
    let elements = ring.elements()?;
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let mut idx = vec![0usize; n];
    'outer: loop {
        let t: Vec<Value> = idx.iter().map(|&i| elements[i].clone()).collect();
        if let Some(sign) = quiddity_sign(ring, &t) {
            if !canonical_only || canonical_form(&t).0 == t {
                out.push(QuiddityTuple::with_sign(ring, t, sign));
            }
        }
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < elements.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    out.sort_by(|a, b| {
        let ea = a.entries().iter().map(Value::encode);
        let eb = b.entries().iter().map(Value::encode);
        ea.cmp(eb)
    });
    Ok(out)
}

/// Number of quiddities of size `n` by transfer-matrix counting.
pub fn dp_count(ring: &Ring, n: usize) -> Result<u128> {
    Ok(Enumerator::new(ring, n)?.dp_count(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_ring;

    fn strings(ts: &[QuiddityTuple]) -> Vec<String> {
        ts.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn size_three_over_z3() {
        let r = parse_ring("Z/3").unwrap();
        let all = enumerate_quiddities(&r, 3, false).unwrap();
        assert_eq!(strings(&all), ["(1, 1, 1)", "(2, 2, 2)"]);
    }

    #[test]
    fn tiny_sizes() {
        let r = parse_ring("Z/2").unwrap();
        assert_eq!(strings(&enumerate_quiddities(&r, 2, false).unwrap()), ["(0, 0)"]);
        for ring in ["Z/2", "Z/5", "Z/2*Z/3"] {
            assert!(enumerate_quiddities(&parse_ring(ring).unwrap(), 1, false).unwrap().is_empty());
        }
    }

    #[test]
    fn irreducible_examples() {
        let f2 = parse_ring("Z/2").unwrap();
        assert!(enumerate_irreducibles(&f2, 5).unwrap().is_empty());
        let f3 = parse_ring("Z/3").unwrap();
        let four = strings(&enumerate_irreducibles(&f3, 4).unwrap());
        assert!(four.contains(&"(0, 0, 0, 0)".to_string()), "{four:?}");
    }

    #[test]
    fn pruned_matches_unpruned() {
        for ring in ["Z/2", "Z/3"] {
            let r = parse_ring(ring).unwrap();
            for n in 1..=7 {
                for canonical in [false, true] {
                    let fast = enumerate_quiddities(&r, n, canonical).unwrap();
                    let slow = enumerate_quiddities_unpruned(&r, n, canonical).unwrap();
                    assert_eq!(fast, slow, "{ring} n={n} canonical={canonical}");
                }
            }
        }
    }

    #[test]
    fn dp_matches_search() {
        for ring in ["Z/2", "Z/3", "Z/4"] {
            let r = parse_ring(ring).unwrap();
            let e = Enumerator::new(&r, 8).unwrap();
            for n in 1..=8 {
                assert_eq!(e.quiddities(n, false).unwrap().len() as u128, e.dp_count(n), "{ring} {n}");
            }
        }
    }

    #[test]
    fn canonical_check_matches_orbit_minimum() {
        let r = parse_ring("Z/3").unwrap();
        let e = Enumerator::new(&r, 6).unwrap();
        for (t, _) in e.quiddities(6, false).unwrap() {
            let values = e.finite_ring().values(&t);
            assert_eq!(is_canonical(&t), canonical_form(&values).0 == values);
        }
    }
}
