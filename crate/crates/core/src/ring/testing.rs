//! Deterministic element generation for randomized checks.
//!
//! Elements are built from a stream of small integers, so any integer
//! generator (a property-test strategy, a seeded RNG) drives them.

use super::{poly, Ring, RingKind, Value};

impl Ring {
    /// Builds an element by consuming integers from `next`.
    pub fn sample(&self, next: &mut dyn FnMut() -> i64) -> Value {
        match self.kind() {
            RingKind::Integers | RingKind::ModInt(_) => self.from_i64(next()),
            RingKind::Polynomial { base, .. } => {
                let len = next().rem_euclid(3) as usize + 1;
                let mut c: Vec<Value> = (0..len).map(|_| base.sample(next)).collect();
                poly::trim(base, &mut c);
                Value::Poly(c)
            }
            RingKind::Quotient { poly, .. } => self.reduce(&poly.sample(next)),
            RingKind::Fraction(base) => {
                let num = base.sample(next);
                let mut den = base.sample(next);
                if base.is_zero(&den) {
                    den = base.one();
                }
                self.fraction_of(&num, &den).expect("nonzero denominator")
            }
            RingKind::Product(l, r) => Value::Pair(Box::new(l.sample(next)), Box::new(r.sample(next))),
        }
    }
}

/// A tuple whose length (1 to 8) and entries are drawn cyclically from
/// `seed`. An empty seed gives an empty tuple.
pub fn sample_tuple(ring: &Ring, seed: &[i64]) -> Vec<Value> {
    if seed.is_empty() {
        return Vec::new();
    }
    let len = seed[0].rem_euclid(8) as usize + 1;
    let mut i = 0usize;
    let mut next = || {
        i += 1;
        seed[i % seed.len()]
    };
    (0..len).map(|_| ring.sample(&mut next)).collect()
}

/// A spread of rings covering every constructor.
pub fn registered_rings() -> Vec<Ring> {
    [
        "Z",
        "Q",
        "Z/2",
        "Z/3",
        "Z/4",
        "Z/6",
        "Z[X]",
        "Z/3[X]",
        "Z[X]/(X^2+1)",
        "Z[X]/(X^4+1)",
        "Z/2[X]/(X^2+X+1)",
        "Z/2*Z/3",
        "Z*Z/4",
        "Frac(Z/5[t])",
        "Q[X]/(X^2-2)",
    ]
    .iter()
    .map(|s| crate::parse_ring(s).expect("registered ring parses"))
    .collect()
}
