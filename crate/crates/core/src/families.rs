//! Explicit solution families and the unboundedness criteria for
//! polynomial rings.
//!
//! Every generator verifies what it returns: the matrix equation always,
//! and the irreducibility verdict whenever the family claims one. A
//! failed claim is an error, never a silently wrong tuple.

use std::fmt;

use num_bigint::BigInt;
use serde_json::json;

use crate::error::{Error, Result};
use crate::irreducibility::{verdict_in, Verdict};
use crate::quiddity::QuiddityTuple;
use crate::ring::{scan_elements, Finding, Ring, RingKind, Value};

/// What a family asserts about one member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Irreducible,
    /// The family's side condition fails; nothing is asserted.
    Unclaimed,
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub tuple: QuiddityTuple,
    pub claim: Claim,
    pub verdict: Verdict,
}

impl FamilyMember {
    fn build(ring: &Ring, entries: Vec<Value>, claim: Claim) -> Result<FamilyMember> {
        let tuple = QuiddityTuple::verify(ring, entries).map_err(|e| match e {
            Error::NotQuiddity => Error::Invariant("family member is not a quiddity".into()),
            other => other,
        })?;
        let verdict = verdict_in(ring, tuple.entries())?;
        if claim == Claim::Irreducible && !verdict.is_irreducible() {
            return Err(Error::Invariant(format!("family member {tuple} is {}", verdict.name())));
        }
        Ok(FamilyMember { tuple, claim, verdict })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ring = self.tuple.ring();
        let mut out = json!({
            "tuple": self.tuple.to_json(),
            "size": self.tuple.len(),
            "sign": self.tuple.sign().map(|s| s.as_i32()),
            "verdict": self.verdict.name(),
            "claimed_irreducible": self.claim == Claim::Irreducible,
        });
        if let Verdict::Reducible(cert) = &self.verdict {
            out["certificate"] = cert.to_json(ring);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Family {
    pub name: &'static str,
    pub ring: Ring,
    pub members: Vec<FamilyMember>,
}

impl Family {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": self.name,
            "ring": self.ring.to_string(),
            "members": self.members.iter().map(FamilyMember::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `±(1,1,1)`, `(0,x,0,-x)` and `(x,0,-x,0)` for any `x`; the size-4
/// members are claimed irreducible when `x ∉ {±1}`.
fn triangles_and_squares(ring: &Ring, x: &Value) -> Result<Vec<FamilyMember>> {
    let one = ring.one();
    let m1 = ring.minus_one();
    let zero = ring.zero();
    let nx = ring.neg(x);
    let square_claim = if ring.is_plus_minus_one(x) {
        Claim::Unclaimed
    } else {
        Claim::Irreducible
    };
    Ok(vec![
        FamilyMember::build(ring, vec![one.clone(), one.clone(), one], Claim::Irreducible)?,
        FamilyMember::build(ring, vec![m1.clone(), m1.clone(), m1], Claim::Irreducible)?,
        FamilyMember::build(ring, vec![zero.clone(), x.clone(), zero.clone(), nx.clone()], square_claim)?,
        FamilyMember::build(ring, vec![x.clone(), zero.clone(), nx, zero], square_claim)?,
    ])
}

/// The irreducibles of size 3 and 4 over `Z`, at parameter `a`.
pub fn family_irr_z(a: &BigInt) -> Result<Family> {
    let ring = Ring::integers();
    let members = triangles_and_squares(&ring, &ring.from_int(a))?;
    Ok(Family {
        name: "irr_Z",
        ring,
        members,
    })
}

/// The same shapes with a polynomial parameter, over `Z[X]`, `(Z/2)[X]`
/// or `(Z/3)[X]` (any ring is accepted and checked).
pub fn family_irr_poly(ring: &Ring, p: &Value) -> Result<Family> {
    if !ring.contains(p) {
        return Err(Error::InvalidParameter(format!("{p:?} is not an element of {ring}")));
    }
    let name = match ring.kind() {
        RingKind::Polynomial { base, .. } if *base.kind() == RingKind::Integers => "irr_ZX",
        _ => "irr_ZkX",
    };
    Ok(Family {
        name,
        ring: ring.clone(),
        members: triangles_and_squares(ring, p)?,
    })
}

/// `(2n+1, (n+1)/(2n+1), 3, 2, ..., 2, 2n/(2n+1))` over `Q` with `n - 1`
/// twos, size `n + 3`, for `n ≥ 2`.
pub fn family_q_field(n: u64) -> Result<Family> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("q_field needs n >= 2, got {n}")));
    }
    let q = Ring::rationals();
    let int = |k: u64| q.from_int(&BigInt::from(k));
    let frac = |a: u64, b: u64| q.div(&int(a), &int(b));
    let mut t = vec![int(2 * n + 1), frac(n + 1, 2 * n + 1)?, int(3)];
    t.extend(std::iter::repeat_n(int(2), (n - 1) as usize));
    t.push(frac(2 * n, 2 * n + 1)?);
    let member = FamilyMember::build(&q, t, Claim::Irreducible)?;
    Ok(Family {
        name: "q_field",
        ring: q,
        members: vec![member],
    })
}

/// The `(4l + 8)`-tuple over `Z[X]/(X^4 + 1)` built from `s = X - X^3`
/// (`s² = 2`) and `is = X + X^3` (`(is)² = -2`):
///
/// ```text
/// (is, s-is, s, 2s, ..., 2s, s, s+is, -is, -s+is, -s, -2s, ..., -2s, -s, -s-is)
/// ```
///
/// with both alternating blocks of odd length `2l + 1`.
pub fn family_zeta8(l: u64) -> Result<Family> {
    if l < 1 {
        return Err(Error::InvalidParameter("zeta8 needs l >= 1".into()));
    }
    let ring = crate::parse_ring("Z[X]/(X^4+1)")?;
    let x = ring.variable("X")?;
    let x3 = ring.pow(&x, 3);
    let s = ring.sub(&x, &x3);
    let is = ring.add(&x, &x3);
    let two_s = ring.add(&s, &s);
    let block = |sign: &Value| -> Vec<Value> {
        (0..2 * l + 1)
            .map(|k| ring.mul(sign, if k % 2 == 0 { &s } else { &two_s }))
            .collect()
    };
    let (p, m) = (ring.one(), ring.minus_one());
    let mut t = vec![is.clone(), ring.sub(&s, &is)];
    t.extend(block(&p));
    t.push(ring.add(&s, &is));
    t.push(ring.neg(&is));
    t.push(ring.sub(&is, &s));
    t.extend(block(&m));
    t.push(ring.neg(&ring.add(&s, &is)));
    debug_assert_eq!(t.len() as u64, 4 * l + 8);
    let member = FamilyMember::build(&ring, t, Claim::Irreducible)?;
    Ok(Family {
        name: "zeta8",
        ring,
        members: vec![member],
    })
}

/// Maximum number of witnesses listed per flag.
const WITNESS_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flag {
    CharNotIn023 { characteristic: u64 },
    /// `witness^power = 0` with `power` minimal.
    HasNilpotent { witness: Value, power: u32, others: Vec<Value> },
    /// `e² = e`, `e ∉ {0, 1}`.
    Decomposable { idempotent: Value },
    /// `u · inverse = 1`, `u ∉ {±1}`.
    ExtraUnit { units: Vec<(Value, Value)> },
    FiniteNotZ2Z3 { cardinality: u64 },
}

impl Flag {
    pub fn name(&self) -> &'static str {
        match self {
            Flag::CharNotIn023 { .. } => "char_not_in_023",
            Flag::HasNilpotent { .. } => "has_nilpotent",
            Flag::Decomposable { .. } => "decomposable",
            Flag::ExtraUnit { .. } => "extra_unit",
            Flag::FiniteNotZ2Z3 { .. } => "finite_not_Z2_Z3",
        }
    }

    /// Re-checks the witness with ring arithmetic.
    pub fn verify(&self, ring: &Ring) -> bool {
        match self {
            Flag::CharNotIn023 { characteristic } => {
                ring.characteristic() == *characteristic && ![0, 2, 3].contains(characteristic)
            }
            Flag::HasNilpotent { witness, power, .. } => {
                !ring.is_zero(witness)
                    && ring.is_zero(&ring.pow(witness, *power))
                    && !ring.is_zero(&ring.pow(witness, power - 1))
            }
            Flag::Decomposable { idempotent: e } => {
                ring.mul(e, e) == *e && !ring.is_zero(e) && !ring.is_one(e)
            }
            Flag::ExtraUnit { units } => {
                !units.is_empty()
                    && units
                        .iter()
                        .all(|(u, v)| ring.is_one(&ring.mul(u, v)) && !ring.is_plus_minus_one(u))
            }
            Flag::FiniteNotZ2Z3 { cardinality } => {
                ring.cardinality().is_some_and(|c| c == (*cardinality).into()) && ![2, 3].contains(cardinality)
            }
        }
    }

    fn to_json(&self, ring: &Ring) -> serde_json::Value {
        let f = |v: &Value| ring.format(v);
        let detail = match self {
            Flag::CharNotIn023 { characteristic } => json!({"characteristic": characteristic}),
            Flag::HasNilpotent { witness, power, others } => json!({
                "witness": f(witness),
                "power": power,
                "others": others.iter().map(f).collect::<Vec<_>>(),
            }),
            Flag::Decomposable { idempotent } => json!({"idempotent": f(idempotent)}),
            Flag::ExtraUnit { units } => json!(units
                .iter()
                .map(|(u, v)| json!({"unit": f(u), "inverse": f(v)}))
                .collect::<Vec<_>>()),
            Flag::FiniteNotZ2Z3 { cardinality } => json!({"cardinality": cardinality}),
        };
        json!({"flag": self.name(), "witness": detail})
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    PolynomialRingUnbounded,
    BoundedKnown,
    Undecided(String),
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::PolynomialRingUnbounded => "polynomial_ring_unbounded",
            Conclusion::BoundedKnown => "bounded_known",
            Conclusion::Undecided(_) => "undecided",
        })
    }
}

/// Flags about `A` and the conclusion they support about `A[T]`.
///
/// The conclusion concerns the polynomial ring only; `ℓ_A` of the ring
/// itself is a separate question (see [`crate::enumeration::compute_ell`]).
#[derive(Clone, Debug)]
pub struct CriteriaReport {
    pub ring: Ring,
    pub flags: Vec<Flag>,
    pub conclusion: Conclusion,
}

impl CriteriaReport {
    pub fn flag(&self, name: &str) -> Option<&Flag> {
        self.flags.iter().find(|f| f.name() == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut polynomial = json!({
            "ring": format!("{}[{}]", self.ring, fresh_variable(&self.ring)),
            "conclusion": self.conclusion.to_string(),
            "status": match self.conclusion {
                Conclusion::PolynomialRingUnbounded => "claim from a cited theorem; no construction computed",
                Conclusion::BoundedKnown => "claim from a cited theorem",
                Conclusion::Undecided(_) => "no criterion applies",
            },
        });
        if let Conclusion::Undecided(reason) = &self.conclusion {
            polynomial["reason"] = json!(reason);
        }
        json!({
            "ring": self.ring.to_string(),
            "flags": self.flags.iter().map(|f| f.to_json(&self.ring)).collect::<Vec<_>>(),
            "polynomial_ring": polynomial,
            "base_ring": {
                "ring": self.ring.to_string(),
                "note": "flags speak about the polynomial ring; ell of this ring is computed separately",
            },
        })
    }
}

/// A variable name unused in the ring's tower.
fn fresh_variable(ring: &Ring) -> String {
    let used = ring.variables();
    std::iter::once("T".to_string())
        .chain((1..).map(|i| format!("T{i}")))
        .find(|v| !used.contains(&v.as_str()))
        .unwrap()
}

pub fn unboundedness_criteria(ring: &Ring) -> CriteriaReport {
    let scan = scan_elements(ring);
    let mut flags = Vec::new();
    let mut undecided = Vec::new();
    let char = ring.characteristic();
    if ![0, 2, 3].contains(&char) {
        flags.push(Flag::CharNotIn023 { characteristic: char });
    }
    let nonzero: Vec<Value> = scan
        .nilpotents
        .elements()
        .iter()
        .filter(|v| !ring.is_zero(v))
        .cloned()
        .collect();
    if let Some(w) = nonzero.first() {
        if let Some(power) = ring.nilpotency_index(w, 64) {
            flags.push(Flag::HasNilpotent {
                witness: w.clone(),
                power,
                others: nonzero.iter().skip(1).take(WITNESS_LIMIT).cloned().collect(),
            });
        }
    } else if let Finding::Undecided(r) = &scan.nilpotents {
        undecided.push(format!("nilpotents: {r}"));
    }
    let idempotent = match ring.kind() {
        RingKind::Product(l, r) => Some(Value::Pair(Box::new(l.one()), Box::new(r.zero()))),
        _ => scan
            .idempotents
            .elements()
            .iter()
            .find(|e| !ring.is_zero(e) && !ring.is_one(e))
            .cloned(),
    };
    match idempotent {
        Some(e) => flags.push(Flag::Decomposable { idempotent: e }),
        None => {
            if let Finding::Undecided(r) = &scan.idempotents {
                undecided.push(format!("idempotents: {r}"));
            }
        }
    }
    let units: Vec<(Value, Value)> = scan
        .units
        .elements()
        .iter()
        .filter(|u| !ring.is_plus_minus_one(u))
        .filter_map(|u| {
            // box scans certify units by pairing, so the partner is listed too
            let inverse = ring.try_inverse(u).or_else(|| {
                scan.units.elements().iter().find(|v| ring.is_one(&ring.mul(u, v))).cloned()
            });
            inverse.map(|v| (u.clone(), v))
        })
        .take(WITNESS_LIMIT)
        .collect();
    if !units.is_empty() {
        flags.push(Flag::ExtraUnit { units });
    } else if let Finding::Undecided(r) = &scan.units {
        undecided.push(format!("units: {r}"));
    }
    let cardinality = ring.cardinality().and_then(|c| u64::try_from(c).ok());
    if let Some(c) = cardinality {
        if c != 2 && c != 3 {
            flags.push(Flag::FiniteNotZ2Z3 { cardinality: c });
        }
    }
    let conclusion = if !flags.is_empty() {
        Conclusion::PolynomialRingUnbounded
    } else if matches!(cardinality, Some(2 | 3)) {
        Conclusion::BoundedKnown
    } else if undecided.is_empty() {
        Conclusion::Undecided("none of the criteria apply".into())
    } else {
        Conclusion::Undecided(undecided.join("; "))
    };
    CriteriaReport {
        ring: ring.clone(),
        flags,
        conclusion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_ring;

    fn tuples(f: &Family) -> Vec<String> {
        f.members.iter().map(|m| m.tuple.to_string()).collect()
    }

    #[test]
    fn integer_family() {
        let f = family_irr_z(&BigInt::from(7)).unwrap();
        assert!(f.members.iter().all(|m| m.verdict.is_irreducible()));
        let f = family_irr_z(&BigInt::from(1)).unwrap();
        assert_eq!(f.members[2].tuple.to_string(), "(0, 1, 0, -1)");
        assert_eq!(f.members[2].verdict.name(), "reducible");
        let f = family_irr_z(&BigInt::from(0)).unwrap();
        assert_eq!(tuples(&f)[2], "(0, 0, 0, 0)");
        assert!(f.members[2].verdict.is_irreducible());
    }

    #[test]
    fn polynomial_families() {
        let r = parse_ring("Z/2[X]").unwrap();
        let f = family_irr_poly(&r, &r.variable("X").unwrap()).unwrap();
        assert_eq!(tuples(&f)[2], "(0, X, 0, X)");
        assert!(f.members[2].verdict.is_irreducible());
        let r = parse_ring("Z/3[X]").unwrap();
        let f = family_irr_poly(&r, &r.one()).unwrap();
        assert_eq!(f.members[2].verdict.name(), "reducible");
        let r = parse_ring("Z[X]").unwrap();
        let p = r.parse_element("X^2-2").unwrap();
        let f = family_irr_poly(&r, &p).unwrap();
        assert_eq!(f.name, "irr_ZX");
        assert!(f.members[2].verdict.is_irreducible());
    }

    #[test]
    fn rational_family() {
        let f = family_q_field(2).unwrap();
        assert_eq!(tuples(&f), ["(5, 3/5, 3, 2, 4/5)"]);
        assert_eq!(f.members[0].tuple.sign(), Some(crate::Sign::Minus));
        assert_eq!(tuples(&family_q_field(3).unwrap()), ["(7, 4/7, 3, 2, 2, 6/7)"]);
        assert!(family_q_field(1).is_err());
    }

    #[test]
    fn zeta8_family() {
        for l in 1..=3 {
            let f = family_zeta8(l).unwrap();
            assert_eq!(f.members[0].tuple.len() as u64, 4 * l + 8);
            assert!(f.members[0].verdict.is_irreducible());
        }
        assert!(family_zeta8(0).is_err());
    }

    #[test]
    fn criteria_examples() {
        let r = parse_ring("Z[Y]/(Y^2)").unwrap();
        let rep = unboundedness_criteria(&r);
        let Some(Flag::HasNilpotent { witness, power, .. }) = rep.flag("has_nilpotent") else {
            panic!("{rep:?}")
        };
        assert_eq!((r.format(witness).as_str(), *power), ("Y", 2));
        assert_eq!(rep.conclusion, Conclusion::PolynomialRingUnbounded);

        let r = parse_ring("Z*Z/2").unwrap();
        let rep = unboundedness_criteria(&r);
        assert_eq!(
            rep.flag("decomposable"),
            Some(&Flag::Decomposable {
                idempotent: r.parse_element("(1, 0)").unwrap()
            })
        );

        let r = parse_ring("Z[Y]/(Y^2+Y+1)").unwrap();
        let rep = unboundedness_criteria(&r);
        let Some(Flag::ExtraUnit { units }) = rep.flag("extra_unit") else {
            panic!("{rep:?}")
        };
        let minus_y = r.parse_element("-Y").unwrap();
        let inv = units.iter().find(|(u, _)| *u == minus_y).map(|(_, v)| r.format(v));
        assert_eq!(inv.as_deref(), Some("Y+1"));

        let r = parse_ring("Z/4").unwrap();
        let rep = unboundedness_criteria(&r);
        assert_eq!(rep.flag("char_not_in_023"), Some(&Flag::CharNotIn023 { characteristic: 4 }));

        for rep in [
            unboundedness_criteria(&parse_ring("Z[Y]/(Y^2)").unwrap()),
            unboundedness_criteria(&parse_ring("Z/4").unwrap()),
            unboundedness_criteria(&parse_ring("Z*Z/2").unwrap()),
        ] {
            assert!(rep.flags.iter().all(|f| f.verify(&rep.ring)), "{rep:?}");
        }
    }

    #[test]
    fn criteria_conclusions() {
        let z = unboundedness_criteria(&Ring::integers());
        assert!(z.flags.is_empty());
        assert!(matches!(z.conclusion, Conclusion::Undecided(_)));
        let f2 = unboundedness_criteria(&parse_ring("Z/2").unwrap());
        assert_eq!(f2.conclusion, Conclusion::BoundedKnown);
        let f3 = unboundedness_criteria(&parse_ring("Z/3").unwrap());
        assert_eq!(f3.conclusion, Conclusion::BoundedKnown);
        let f5 = unboundedness_criteria(&parse_ring("Z/5").unwrap());
        assert_eq!(f5.conclusion, Conclusion::PolynomialRingUnbounded);
    }
}
