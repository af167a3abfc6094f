//! Explicit ring isomorphisms between finite rings, checked before use.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{Ring, RingKind, Value};
use crate::error::{Error, Result};

/// A verified unital ring isomorphism given by its full element table.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Ring,
    target: Ring,
    table: HashMap<Value, Value>,
}

impl RingMap {
    /// Checks that `pairs` is a bijection `source -> target` preserving
    /// `1`, `+` and `*`, reporting the first violating pair otherwise.
    pub fn from_table(source: &Ring, target: &Ring, pairs: Vec<(Value, Value)>) -> Result<RingMap> {
        let src = source.elements()?;
        let dst = target.elements()?;
        if src.len() != dst.len() {
            return Err(Error::NotIsomorphism(format!(
                "{source} has {} elements, {target} has {}",
                src.len(),
                dst.len()
            )));
        }
        let mut table = HashMap::with_capacity(pairs.len());
        for (x, y) in pairs {
            if !source.contains(&x) || !target.contains(&y) {
                return Err(Error::NotIsomorphism(format!("foreign entry {x:?} -> {y:?}")));
            }
            if table.insert(x.clone(), y).is_some() {
                return Err(Error::NotIsomorphism(format!(
                    "{} is mapped twice",
                    source.format(&x)
                )));
            }
        }
        if let Some(x) = src.iter().find(|x| !table.contains_key(*x)) {
            return Err(Error::NotIsomorphism(format!("{} has no image", source.format(x))));
        }
        let mut seen = HashMap::with_capacity(table.len());
        for (x, y) in &table {
            if let Some(prev) = seen.insert(y.clone(), x.clone()) {
                return Err(Error::NotIsomorphism(format!(
                    "{} and {} both map to {}",
                    source.format(&prev),
                    source.format(x),
                    target.format(y)
                )));
            }
        }
        let map = RingMap {
            source: source.clone(),
            target: target.clone(),
            table,
        };
        if map.table[&source.one()] != target.one() {
            return Err(Error::NotIsomorphism(format!(
                "f(1) = {}",
                target.format(&map.table[&source.one()])
            )));
        }
        for x in &src {
            for y in &src {
                let (fx, fy) = (&map.table[x], &map.table[y]);
                if map.table[&source.add(x, y)] != target.add(fx, fy) {
                    return Err(Error::NotIsomorphism(format!(
                        "f({0} + {1}) != f({0}) + f({1})",
                        source.format(x),
                        source.format(y)
                    )));
                }
                if map.table[&source.mul(x, y)] != target.mul(fx, fy) {
                    return Err(Error::NotIsomorphism(format!(
                        "f({0} * {1}) != f({0}) * f({1})",
                        source.format(x),
                        source.format(y)
                    )));
                }
            }
        }
        Ok(map)
    }

    /// Reduction of residues `Z/N -> target`, e.g. the Chinese remainder
    /// map `Z/6 -> Z/2 * Z/3`. Verified like any other table.
    pub fn from_residues(source: &Ring, target: &Ring) -> Result<RingMap> {
        let RingKind::ModInt(_) = source.kind() else {
            return Err(Error::NotIsomorphism(format!("{source} is not Z/N")));
        };
        let pairs = source
            .elements()?
            .into_iter()
            .map(|x| {
                let Value::Residue(r) = x else { unreachable!() };
                let image = target.from_int(&BigInt::from(r));
                (x, image)
            })
            .collect();
        RingMap::from_table(source, target, pairs)
    }

    pub fn identity(ring: &Ring) -> Result<RingMap> {
        let pairs = ring.elements()?.into_iter().map(|x| (x.clone(), x)).collect();
        RingMap::from_table(ring, ring, pairs)
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn image(&self, x: &Value) -> &Value {
        &self.table[x]
    }

    /// Entrywise image of a tuple.
    pub fn apply(&self, t: &[Value]) -> Vec<Value> {
        t.iter().map(|x| self.table[x].clone()).collect()
    }

    pub fn inverse(&self) -> RingMap {
        RingMap {
            source: self.target.clone(),
            target: self.source.clone(),
            table: self.table.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_ring;
    use crate::ring::parse::parse_tuple;

    #[test]
    fn crt_six() {
        let z6 = parse_ring("Z/6").unwrap();
        let p = parse_ring("Z/2*Z/3").unwrap();
        let f = RingMap::from_residues(&z6, &p).unwrap();
        let t = parse_tuple(&z6, "2,1,2,1").unwrap();
        let expected = parse_tuple(&p, "(0,2),(1,1),(0,2),(1,1)").unwrap();
        assert_eq!(f.apply(&t), expected);
        assert_eq!(f.inverse().apply(&expected), t);
    }

    #[test]
    fn identity_is_identity() {
        let r = parse_ring("Z/4").unwrap();
        let f = RingMap::identity(&r).unwrap();
        let t = parse_tuple(&r, "0,1,2,3").unwrap();
        assert_eq!(f.apply(&t), t);
    }

    #[test]
    fn non_unital_table_rejected() {
        let r = parse_ring("Z/3").unwrap();
        // x -> 2x is additive and bijective but sends 1 to 2
        let pairs = (0..3u64).map(|x| (Value::Residue(x), Value::Residue(2 * x % 3))).collect();
        let err = RingMap::from_table(&r, &r, pairs).unwrap_err();
        assert!(err.to_string().contains("f(1)"), "{err}");
    }

    #[test]
    fn non_multiplicative_table_rejected() {
        let z4 = parse_ring("Z/4").unwrap();
        let p = parse_ring("Z/2*Z/2").unwrap();
        assert!(RingMap::from_residues(&z4, &p).is_err());
    }
}
