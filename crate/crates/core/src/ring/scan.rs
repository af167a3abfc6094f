//! Element enumeration for finite rings and the unit / nilpotent /
//! idempotent scan used by the unboundedness criteria.
//!
//! Finite rings are scanned exhaustively. Infinite rings use structural
//! rules per constructor:
//!
//! * `Z`: units `{1, -1}`, nilpotents `{0}`, idempotents `{0, 1}`.
//! * infinite fraction fields: every nonzero element is a unit, so a
//!   small non-`±1` unit is reported as a witness; no nilpotents;
//!   idempotents `{0, 1}`.
//! * `B[X]`: nilpotents and idempotents are those of `B`; units are those
//!   of `B` when `B` is reduced, and include `1 + nX` for a nilpotent `n`.
//! * `L * R`: componentwise; `(1, 0)` is always a non-trivial idempotent.
//! * infinite `B[X]/(f)`: bounded search over coefficient vectors with
//!   entries in `-2..=2`; anything found is a certified witness, nothing
//!   found is reported as undecided.

use super::{Ring, RingKind, Value};
use crate::error::Result;

/// Largest ring enumerated element by element.
pub const ELEMENT_LIMIT: u64 = 1 << 16;
/// Largest ring scanned exhaustively for units (quadratic work).
const EXHAUSTIVE_SCAN_LIMIT: u64 = 2048;
const BOX_HEIGHT: i64 = 2;
const BOX_MAX_CANDIDATES: usize = 4096;

/// Outcome of looking for elements with some property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    /// Exactly these elements, in canonical order.
    Complete(Vec<Value>),
    /// These elements have the property; there may be others.
    Witnesses(Vec<Value>),
    /// The ring gives no rule and the bounded search found no witness.
    Undecided(String),
}

impl Finding {
    pub fn elements(&self) -> &[Value] {
        match self {
            Finding::Complete(v) | Finding::Witnesses(v) => v,
            Finding::Undecided(_) => &[],
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Finding::Complete(_))
    }

    fn map(&self, f: impl Fn(&Value) -> Value) -> Finding {
        match self {
            Finding::Complete(v) => Finding::Complete(v.iter().map(f).collect()),
            Finding::Witnesses(v) => Finding::Witnesses(v.iter().map(f).collect()),
            Finding::Undecided(r) => Finding::Undecided(r.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementScan {
    pub units: Finding,
    pub nilpotents: Finding,
    pub idempotents: Finding,
    /// `true` when every finding came from exhaustive enumeration.
    pub exhaustive: bool,
}

fn sorted(mut v: Vec<Value>) -> Vec<Value> {
    v.sort_by(|a, b| a.canonical_cmp(b));
    v.dedup();
    v
}

impl Ring {
    /// All elements of a finite ring, in canonical-encoding order.
    pub fn elements(&self) -> Result<Vec<Value>> {
        self.small_cardinality(ELEMENT_LIMIT, "element enumeration")?;
        Ok(match self.kind() {
            RingKind::ModInt(n) => (0..*n).map(Value::Residue).collect(),
            RingKind::Quotient { poly, modulus } => {
                let base = poly.coefficient_ring().unwrap();
                let coeffs = base.elements()?;
                let d = modulus.len() - 1;
                let mut out = Vec::new();
                let mut idx = vec![0usize; d];
                loop {
                    let mut c: Vec<Value> = idx.iter().map(|&i| coeffs[i].clone()).collect();
                    super::poly::trim(base, &mut c);
                    out.push(Value::Poly(c));
                    let mut k = 0;
                    loop {
                        if k == d {
                            return Ok(sorted(out));
                        }
                        idx[k] += 1;
                        if idx[k] < coeffs.len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                }
            }
            RingKind::Fraction(base) => base
                .elements()?
                .iter()
                .map(|v| self.embed(v))
                .collect(),
            RingKind::Product(l, r) => {
                let (ls, rs) = (l.elements()?, r.elements()?);
                let mut out = Vec::with_capacity(ls.len() * rs.len());
                for a in &ls {
                    for b in &rs {
                        out.push(Value::Pair(Box::new(a.clone()), Box::new(b.clone())));
                    }
                }
                sorted(out)
            }
            RingKind::Integers | RingKind::Polynomial { .. } => unreachable!("infinite"),
        })
    }

    /// Smallest `k >= 1` with `v^k = 0`, searching `k <= limit`.
    pub fn nilpotency_index(&self, v: &Value, limit: u32) -> Option<u32> {
        let mut acc = v.clone();
        for k in 1..=limit {
            if self.is_zero(&acc) {
                return Some(k);
            }
            acc = self.mul(&acc, v);
        }
        None
    }
}

/// Units, nilpotents and idempotents of `ring`.
pub fn scan_elements(ring: &Ring) -> ElementScan {
    if let Ok(q) = ring.small_cardinality(EXHAUSTIVE_SCAN_LIMIT, "scan") {
        if let Ok(elems) = ring.elements() {
            return exhaustive_scan(ring, &elems, q);
        }
    }
    structural_scan(ring)
}

fn exhaustive_scan(ring: &Ring, elems: &[Value], q: u64) -> ElementScan {
    let one = ring.one();
    let units = elems
        .iter()
        .filter(|x| elems.iter().any(|y| ring.mul(x, y) == one))
        .cloned()
        .collect();
    let limit = q.min(u32::MAX as u64) as u32;
    let nilpotents = elems
        .iter()
        .filter(|x| ring.nilpotency_index(x, limit).is_some())
        .cloned()
        .collect();
    let idempotents = elems
        .iter()
        .filter(|x| ring.mul(x, x) == **x)
        .cloned()
        .collect();
    ElementScan {
        units: Finding::Complete(units),
        nilpotents: Finding::Complete(nilpotents),
        idempotents: Finding::Complete(idempotents),
        exhaustive: true,
    }
}

fn structural_scan(ring: &Ring) -> ElementScan {
    let trivial_units = || sorted(vec![ring.one(), ring.minus_one()]);
    let trivial_idem = || sorted(vec![ring.zero(), ring.one()]);
    match ring.kind() {
        RingKind::Integers => ElementScan {
            units: Finding::Complete(trivial_units()),
            nilpotents: Finding::Complete(vec![ring.zero()]),
            idempotents: Finding::Complete(trivial_idem()),
            exhaustive: false,
        },
        RingKind::Fraction(_) => {
            let mut candidates = vec![ring.from_i64(2), ring.from_i64(3)];
            candidates.extend(ring.variables().iter().filter_map(|v| ring.variable(v).ok()));
            let extra: Vec<Value> = candidates
                .into_iter()
                .filter(|c| !ring.is_zero(c) && !ring.is_plus_minus_one(c))
                .take(1)
                .collect();
            let mut units = trivial_units();
            units.extend(extra);
            ElementScan {
                units: Finding::Witnesses(sorted(units)),
                nilpotents: Finding::Complete(vec![ring.zero()]),
                idempotents: Finding::Complete(trivial_idem()),
                exhaustive: false,
            }
        }
        RingKind::Polynomial { base, var } => {
            let b = scan_elements(base);
            let embed = |v: &Value| ring.embed(v);
            let nilpotents = b.nilpotents.map(embed);
            let idempotents = b.idempotents.map(embed);
            let nonzero_nil: Vec<&Value> =
                b.nilpotents.elements().iter().filter(|n| !base.is_zero(n)).collect();
            let units = match (&b.nilpotents, nonzero_nil.first()) {
                (Finding::Complete(_), None) => b.units.map(embed),
                (_, Some(n)) => {
                    // 1 + nX is a unit with inverse 1 - nX + n^2 X^2 - ...
                    let x = ring.variable(var).expect("own variable");
                    let nx = ring.mul(&ring.embed(n), &x);
                    let mut w: Vec<Value> = b.units.elements().iter().map(embed).collect();
                    w.push(ring.add(&ring.one(), &nx));
                    Finding::Witnesses(sorted(w))
                }
                (_, None) => match &b.units {
                    Finding::Undecided(r) => Finding::Undecided(r.clone()),
                    other => {
                        let w: Vec<Value> = other.elements().iter().map(embed).collect();
                        if w.iter().any(|u| !ring.is_plus_minus_one(u)) {
                            Finding::Witnesses(w)
                        } else {
                            Finding::Undecided(format!("units of {ring} depend on nilpotents of {base}"))
                        }
                    }
                },
            };
            ElementScan {
                units,
                nilpotents,
                idempotents,
                exhaustive: false,
            }
        }
        RingKind::Product(l, r) => {
            let (ls, rs) = (scan_elements(l), scan_elements(r));
            let pair = |a: &Value, b: &Value| Value::Pair(Box::new(a.clone()), Box::new(b.clone()));
            let combine = |x: &Finding, y: &Finding, lfill: Value, rfill: Value| -> Finding {
                match (x, y) {
                    (Finding::Complete(a), Finding::Complete(b)) => Finding::Complete(sorted(
                        a.iter().flat_map(|u| b.iter().map(move |v| pair(u, v))).collect(),
                    )),
                    _ => {
                        let mut w: Vec<Value> = x.elements().iter().map(|u| pair(u, &rfill)).collect();
                        w.extend(y.elements().iter().map(|v| pair(&lfill, v)));
                        if w.is_empty() {
                            Finding::Undecided(format!("no witnesses in either factor of {ring}"))
                        } else {
                            Finding::Witnesses(sorted(w))
                        }
                    }
                }
            };
            let units = combine(&ls.units, &rs.units, l.one(), r.one());
            let nilpotents = combine(&ls.nilpotents, &rs.nilpotents, l.zero(), r.zero());
            let idempotents = match combine(&ls.idempotents, &rs.idempotents, l.zero(), r.zero()) {
                Finding::Complete(v) => Finding::Complete(v),
                other => {
                    let mut w = other.elements().to_vec();
                    w.push(pair(&l.one(), &r.zero()));
                    w.push(pair(&l.zero(), &r.one()));
                    Finding::Witnesses(sorted(w))
                }
            };
            ElementScan {
                units,
                nilpotents,
                idempotents,
                exhaustive: false,
            }
        }
        RingKind::Quotient { .. } => box_scan(ring),
        RingKind::ModInt(_) => {
            // only reachable when Z/N is too large for the exhaustive scan
            let reason = "modulus too large for an exhaustive scan".to_string();
            ElementScan {
                units: Finding::Undecided(reason.clone()),
                nilpotents: Finding::Undecided(reason.clone()),
                idempotents: Finding::Undecided(reason),
                exhaustive: false,
            }
        }
    }
}

/// Small coefficient vectors of an infinite quotient ring.
fn box_candidates(ring: &Ring) -> Option<Vec<Value>> {
    let RingKind::Quotient { poly, modulus } = ring.kind() else {
        return None;
    };
    let base = poly.coefficient_ring().unwrap();
    let coeffs: Vec<Value> = sorted((-BOX_HEIGHT..=BOX_HEIGHT).map(|n| base.from_i64(n)).collect());
    let d = modulus.len() - 1;
    let total = coeffs.len().checked_pow(d as u32)?;
    if total > BOX_MAX_CANDIDATES {
        return None;
    }
    let mut out = Vec::with_capacity(total);
    for mut i in 0..total {
        let mut c = Vec::with_capacity(d);
        for _ in 0..d {
            c.push(coeffs[i % coeffs.len()].clone());
            i /= coeffs.len();
        }
        super::poly::trim(base, &mut c);
        out.push(Value::Poly(c));
    }
    Some(sorted(out))
}

fn box_scan(ring: &Ring) -> ElementScan {
    let Some(cands) = box_candidates(ring) else {
        let reason = format!("{ring} is too large for a bounded witness search");
        return ElementScan {
            units: Finding::Undecided(reason.clone()),
            nilpotents: Finding::Undecided(reason.clone()),
            idempotents: Finding::Undecided(reason),
            exhaustive: false,
        };
    };
    let degree = match ring.kind() {
        RingKind::Quotient { modulus, .. } => modulus.len() - 1,
        _ => unreachable!(),
    } as u32;
    let reason = |what: &str| {
        format!("no {what} found among coefficient vectors of height <= {BOX_HEIGHT}")
    };
    let one = ring.one();
    let units: Vec<Value> = cands
        .iter()
        .filter(|x| {
            ring.try_inverse(x).is_some() || cands.iter().any(|y| ring.mul(x, y) == one)
        })
        .cloned()
        .collect();
    let nil: Vec<Value> = cands
        .iter()
        .filter(|x| !ring.is_zero(x) && ring.nilpotency_index(x, 2 * degree + 2).is_some())
        .cloned()
        .collect();
    let idem: Vec<Value> = cands
        .iter()
        .filter(|x| ring.mul(x, x) == **x && !ring.is_zero(x) && !ring.is_one(x))
        .cloned()
        .collect();
    let finding = |found: Vec<Value>, trivial: Vec<Value>, nontrivial: bool, what: &str| {
        if nontrivial {
            let mut all = trivial;
            all.extend(found);
            Finding::Witnesses(sorted(all))
        } else {
            Finding::Undecided(reason(what))
        }
    };
    let extra_units = units.iter().any(|u| !ring.is_plus_minus_one(u));
    ElementScan {
        units: finding(units.clone(), vec![], extra_units, "unit other than 1 and -1"),
        nilpotents: finding(nil.clone(), vec![ring.zero()], !nil.is_empty(), "nonzero nilpotent"),
        idempotents: finding(
            idem.clone(),
            vec![ring.zero(), ring.one()],
            !idem.is_empty(),
            "idempotent other than 0 and 1",
        ),
        exhaustive: false,
    }
}
