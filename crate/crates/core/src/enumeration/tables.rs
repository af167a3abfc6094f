//! Index tables for a finite ring and its group `SL(2, A)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::quiddity::Sign;
use crate::ring::{Ring, Value};

/// Largest ring for which operation tables are built.
pub const TABLE_ELEMENT_LIMIT: u64 = 1 << 10;

/// Largest `|SL(2, A)| * |A|` for which the step table is built.
pub const STEP_TABLE_LIMIT: u64 = 1 << 28;

/// A finite ring with elements numbered in canonical order.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    ring: Ring,
    elements: Vec<Value>,
    index: HashMap<Value, u32>,
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    pub zero: u32,
    pub one: u32,
    pub minus_one: u32,
}

impl FiniteRing {
    pub fn new(ring: &Ring) -> Result<FiniteRing> {
        let q = ring.small_cardinality(TABLE_ELEMENT_LIMIT, "table construction")? as usize;
        let elements = ring.elements()?;
        debug_assert_eq!(elements.len(), q);
        let index: HashMap<Value, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        let at = |v: &Value| index[v];
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate().skip(i) {
                let s = at(&ring.add(x, y));
                let p = at(&ring.mul(x, y));
                add[i * q + j] = s;
                add[j * q + i] = s;
                mul[i * q + j] = p;
                mul[j * q + i] = p;
            }
        }
        let neg = elements.iter().map(|x| at(&ring.neg(x))).collect();
        Ok(FiniteRing {
            zero: at(&ring.zero()),
            one: at(&ring.one()),
            minus_one: at(&ring.minus_one()),
            ring: ring.clone(),
            elements,
            index,
            q,
            add,
            mul,
            neg,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.q
    }

    pub fn is_empty(&self) -> bool {
        self.q == 0
    }

    pub fn value(&self, i: u32) -> &Value {
        &self.elements[i as usize]
    }

    pub fn values(&self, t: &[u32]) -> Vec<Value> {
        t.iter().map(|&i| self.elements[i as usize].clone()).collect()
    }

    pub fn index_of(&self, v: &Value) -> Option<u32> {
        self.index.get(v).copied()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn is_unit_sign(&self, a: u32) -> bool {
        a == self.one || a == self.minus_one
    }

    /// `|SL(2, A)|`: for each `(a, b, c)`, the number of `d` with
    /// `a d = 1 + b c`, read from a preimage count table.
    pub fn sl2_order(&self) -> u64 {
        let q = self.q;
        let mut preimages = vec![0u64; q * q];
        for a in 0..q as u32 {
            for d in 0..q as u32 {
                preimages[a as usize * q + self.mul(a, d) as usize] += 1;
            }
        }
        let mut count = 0u64;
        for a in 0..q as u32 {
            for b in 0..q as u32 {
                for c in 0..q as u32 {
                    let rhs = self.add(self.one, self.mul(b, c));
                    count += preimages[a as usize * q + rhs as usize];
                }
            }
        }
        count
    }
}

/// `SL(2, A)` with the action of every `N(a)` from the left.
#[derive(Clone, Debug)]
pub struct Sl2Group {
    mats: Vec<[u32; 4]>,
    q: usize,
    step: Vec<u32>,
    pub identity: u32,
    pub minus_identity: u32,
}

impl Sl2Group {
    pub fn new(ring: &FiniteRing) -> Result<Sl2Group> {
        let q = ring.len();
        let order = ring.sl2_order();
        if order.saturating_mul(q as u64) > STEP_TABLE_LIMIT {
            return Err(Error::TooLarge {
                ring: ring.ring().to_string(),
                cardinality: q.to_string(),
                limit: TABLE_ELEMENT_LIMIT.min(STEP_TABLE_LIMIT / order.max(1)),
            });
        }
        let mut solutions: Vec<Vec<u32>> = vec![Vec::new(); q * q];
        for a in 0..q as u32 {
            for d in 0..q as u32 {
                solutions[a as usize * q + ring.mul(a, d) as usize].push(d);
            }
        }
        let mut mats = Vec::with_capacity(order as usize);
        for a in 0..q as u32 {
            for b in 0..q as u32 {
                for c in 0..q as u32 {
                    let rhs = ring.add(ring.one, ring.mul(b, c));
                    for &d in &solutions[a as usize * q + rhs as usize] {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
        mats.sort_unstable();
        let id: HashMap<[u32; 4], u32> = mats.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let mut step = vec![0u32; mats.len() * q];
        for (g, &[x, y, z, w]) in mats.iter().enumerate() {
            for a in 0..q as u32 {
                let image = [ring.sub(ring.mul(a, x), z), ring.sub(ring.mul(a, y), w), x, y];
                step[g * q + a as usize] = id[&image];
            }
        }
        let (o, l, m) = (ring.one, ring.zero, ring.minus_one);
        Ok(Sl2Group {
            identity: id[&[o, l, l, o]],
            minus_identity: id[&[m, l, l, m]],
            mats,
            q,
            step,
        })
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn matrix(&self, g: u32) -> [u32; 4] {
        self.mats[g as usize]
    }

    /// `N(a) * g`.
    #[inline]
    pub fn step(&self, g: u32, a: u32) -> u32 {
        self.step[g as usize * self.q + a as usize]
    }

    pub fn sign_of(&self, g: u32) -> Option<Sign> {
        if g == self.identity {
            Some(Sign::Plus)
        } else if g == self.minus_identity {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

/// Bit `(r, g)`: some word of `r` factors `N(a)` takes `g` to `±Id`.
#[derive(Clone, Debug)]
pub struct ReachTable {
    rows: Vec<Vec<u64>>,
}

impl ReachTable {
    /// Rows `0..=max_steps`, each derived from the previous one.
    pub fn new(group: &Sl2Group, q: usize, max_steps: usize) -> ReachTable {
        let words = group.order().div_ceil(64);
        let mut first = vec![0u64; words];
        for g in [group.identity, group.minus_identity] {
            first[g as usize / 64] |= 1 << (g % 64);
        }
        let mut rows = vec![first];
        for _ in 0..max_steps {
            let prev = rows.last().unwrap();
            let mut row = vec![0u64; words];
            for g in 0..group.order() as u32 {
                if (0..q as u32).any(|a| {
                    let h = group.step(g, a);
                    prev[h as usize / 64] >> (h % 64) & 1 == 1
                }) {
                    row[g as usize / 64] |= 1 << (g % 64);
                }
            }
            rows.push(row);
        }
        ReachTable { rows }
    }

    pub fn max_steps(&self) -> usize {
        self.rows.len() - 1
    }

    #[inline]
    pub fn reachable(&self, steps: usize, g: u32) -> bool {
        self.rows[steps][g as usize / 64] >> (g % 64) & 1 == 1
    }

    pub fn count(&self, steps: usize) -> usize {
        self.rows[steps].iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_ring;

    fn tables(expr: &str) -> (FiniteRing, Sl2Group) {
        let r = FiniteRing::new(&parse_ring(expr).unwrap()).unwrap();
        let g = Sl2Group::new(&r).unwrap();
        (r, g)
    }

    #[test]
    fn sl2_orders() {
        for (expr, order) in [("Z/2", 6), ("Z/3", 24), ("Z/4", 48), ("Z/6", 144), ("Z/2[X]/(X^2+X+1)", 60)] {
            let (r, g) = tables(expr);
            assert_eq!(r.sl2_order(), order, "{expr}");
            assert_eq!(g.order() as u64, order, "{expr}");
        }
    }

    #[test]
    fn step_is_left_multiplication() {
        let (r, g) = tables("Z/3");
        let s = [r.zero, r.minus_one, r.one, r.zero];
        let s_id = (0..g.order() as u32).find(|&h| g.matrix(h) == s).unwrap();
        assert_eq!(g.step(g.identity, r.zero), s_id);
        assert_eq!(g.step(s_id, r.zero), g.minus_identity);
    }

    #[test]
    fn reach_rows() {
        let (r, g) = tables("Z/2");
        let reach = ReachTable::new(&g, r.len(), 6);
        assert_eq!(reach.count(0), 1);
        assert!(reach.reachable(0, g.identity));
        let s = (0..g.order() as u32)
            .find(|&h| g.matrix(h) == [r.zero, r.one, r.one, r.zero])
            .unwrap();
        // N(0) S = S^2 = -Id
        assert!(reach.reachable(1, s));
        assert_eq!(g.step(s, r.zero), g.minus_identity);
        assert!((0..r.len() as u32).filter(|&a| a != r.zero).all(|a| g.sign_of(g.step(s, a)).is_none()));
        for steps in 0..=4 {
            for h in 0..g.order() as u32 {
                if reach.reachable(steps, h) {
                    assert!(reach.reachable(steps + 2, h));
                }
            }
        }
    }

    #[test]
    fn infinite_ring_refused() {
        assert!(matches!(
            FiniteRing::new(&Ring::integers()),
            Err(Error::InfiniteRing { .. })
        ));
    }
}
