//! Exhaustive enumeration over finite rings, exact `ℓ_A`, and bounded
//! searches over infinite rings.

mod bounded;
mod ell;
mod finite;
mod tables;

pub use bounded::{bounded_search, BoundedSearch, SearchBox, DEFAULT_BUDGET};
pub use ell::{compute_ell, ell_lower_bound, ell_upper_bound, sl2_order, EllReport};
pub use finite::{dp_count, enumerate_irreducibles, enumerate_quiddities, enumerate_quiddities_unpruned, Enumerator};
pub use tables::{FiniteRing, ReachTable, Sl2Group, STEP_TABLE_LIMIT, TABLE_ELEMENT_LIMIT};

use crate::error::Result;
use crate::ring::Ring;

/// Reachability rows `0..=max_steps` over `SL(2, A)`.
pub fn reachability_table(ring: &Ring, max_steps: usize) -> Result<ReachTable> {
    let table = FiniteRing::new(ring)?;
    let group = Sl2Group::new(&table)?;
    Ok(ReachTable::new(&group, table.len(), max_steps))
}
