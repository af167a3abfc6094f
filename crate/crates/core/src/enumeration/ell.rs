//! Exact `ℓ_A` for finite rings.
//!
//! Irreducibles are enumerated for every size from 3 up to the bound
//! `|SL(2, A)| / |A| + 2` (characteristic 2) or `|SL(2, A)| / (2|A|) + 2`
//! (otherwise). The bound is a published theorem taken as the stopping
//! rule, not re-proved here; the report records that.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde_json::{json, Map};

use super::finite::Enumerator;
use super::tables::FiniteRing;
use crate::error::{Error, Result};
use crate::quiddity::QuiddityTuple;
use crate::ring::Ring;

pub fn sl2_order(ring: &Ring) -> Result<u64> {
    Ok(FiniteRing::new(ring)?.sl2_order())
}

fn upper_bound_from(ring: &Ring, order: u64, q: u64) -> Result<u64> {
    let divisor = if ring.characteristic() == 2 { q } else { 2 * q };
    if !order.is_multiple_of(divisor) {
        return Err(Error::Invariant(format!(
            "|SL2({ring})| = {order} is not divisible by {divisor}"
        )));
    }
    Ok(order / divisor + 2)
}

/// Upper bound on the size of an irreducible quiddity over a finite ring.
pub fn ell_upper_bound(ring: &Ring) -> Result<u64> {
    let table = FiniteRing::new(ring)?;
    upper_bound_from(ring, table.sl2_order(), table.len() as u64)
}

/// `max(4, char A)`, or `4` in characteristic 2.
pub fn ell_lower_bound(ring: &Ring) -> u64 {
    match ring.characteristic() {
        2 => 4,
        c => c.max(4),
    }
}

#[derive(Clone, Debug)]
pub struct EllReport {
    pub ring: Ring,
    pub sl2_order: u64,
    pub upper_bound: u64,
    pub lower_bound: u64,
    pub ell: u64,
    /// Every size from 3 to `ell`, possibly with empty lists in between.
    pub irreducibles_by_size: BTreeMap<u64, Vec<QuiddityTuple>>,
    /// Irreducible class counts for every searched size, up to the bound.
    pub counts_by_size: BTreeMap<u64, usize>,
    pub timing: Duration,
}

impl EllReport {
    pub fn bounds_hold(&self) -> bool {
        self.lower_bound <= self.ell && self.ell <= self.upper_bound
    }

    /// Everything except the timing, so equal inputs give equal output.
    pub fn to_json(&self) -> serde_json::Value {
        let mut by_size = Map::new();
        for (n, ts) in &self.irreducibles_by_size {
            by_size.insert(n.to_string(), json!(ts.iter().map(|t| t.to_json()).collect::<Vec<_>>()));
        }
        let mut counts = Map::new();
        for (n, c) in &self.counts_by_size {
            counts.insert(n.to_string(), json!(c));
        }
        json!({
            "ring": self.ring.to_string(),
            "sl2_order": self.sl2_order,
            "upper_bound": self.upper_bound,
            "lower_bound": self.lower_bound,
            "ell": self.ell,
            "bounds_hold": self.bounds_hold(),
            "irreducibles_by_size": by_size,
            "counts_by_size": counts,
        })
    }
}

/// Runs the irreducible enumeration for sizes `3..=bound`.
pub fn compute_ell(ring: &Ring) -> Result<EllReport> {
    let start = Instant::now();
    let table = FiniteRing::new(ring)?;
    let order = table.sl2_order();
    let upper = upper_bound_from(ring, order, table.len() as u64)?;
    let e = Enumerator::new(ring, upper as usize)?;
    let mut found = BTreeMap::new();
    for n in 3..=upper {
        let tuples: Vec<QuiddityTuple> = e
            .irreducibles(n as usize)?
            .into_iter()
            .map(|(t, sign)| QuiddityTuple::with_sign(ring, table.values(&t), sign))
            .collect();
        found.insert(n, tuples);
    }
    let ell = found
        .iter()
        .rev()
        .find(|(_, ts)| !ts.is_empty())
        .map(|(n, _)| *n)
        .ok_or_else(|| Error::Invariant(format!("no irreducible quiddity over {ring}")))?;
    let counts_by_size = found.iter().map(|(n, ts)| (*n, ts.len())).collect();
    found.retain(|n, _| *n <= ell);
    Ok(EllReport {
        ring: ring.clone(),
        sl2_order: order,
        upper_bound: upper,
        lower_bound: ell_lower_bound(ring),
        ell,
        irreducibles_by_size: found,
        counts_by_size,
        timing: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_ring;

    #[test]
    fn bounds() {
        for (expr, upper) in [("Z/2", 5), ("Z/3", 6), ("Z/6", 14), ("Z/2*Z/2", 11), ("Z/5", 14)] {
            assert_eq!(ell_upper_bound(&parse_ring(expr).unwrap()).unwrap(), upper, "{expr}");
        }
        assert_eq!(ell_lower_bound(&parse_ring("Z/2").unwrap()), 4);
        assert_eq!(ell_lower_bound(&parse_ring("Z/5").unwrap()), 5);
        assert_eq!(ell_lower_bound(&parse_ring("Z/6").unwrap()), 6);
        assert!(ell_upper_bound(&Ring::integers()).is_err());
    }

    #[test]
    fn small_rings() {
        for (expr, ell, counts) in [
            ("Z/2", 4, vec![1, 1, 0]),
            ("Z/3", 4, vec![2, 1, 0, 0]),
            ("Z/4", 4, vec![2, 3, 0, 0, 0, 0]),
        ] {
            let report = compute_ell(&parse_ring(expr).unwrap()).unwrap();
            assert_eq!(report.ell, ell, "{expr}");
            let got: Vec<usize> = report.counts_by_size.values().copied().collect();
            assert_eq!(got, counts, "{expr}");
            assert!(report.bounds_hold());
        }
    }

    #[test]
    fn json_omits_timing() {
        let report = compute_ell(&parse_ring("Z/2").unwrap()).unwrap();
        let a = report.to_json().to_string();
        let b = compute_ell(&parse_ring("Z/2").unwrap()).unwrap().to_json().to_string();
        assert_eq!(a, b);
        assert_eq!(report.to_json()["irreducibles_by_size"]["4"], json!([["0", "0", "0", "0"]]));
    }
}
