use thiserror::Error;

use super::cone::is_closed_manifold;
use super::gluing::{CubulationSpec, Slot, SlotPair};
use super::quotient::build_quotient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("not a closed manifold: {0}")]
    NotAManifold(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DoubleCover {
    AlreadyOrientable,
    /// Cube `c` lifts to cubes `c` and `c + n`, the second with reversed orientation.
    Cover(CubulationSpec),
}

pub fn orientation_double_cover(spec: &CubulationSpec) -> Result<DoubleCover, CoverError> {
    let check = is_closed_manifold(spec);
    if !check.is_manifold {
        return Err(CoverError::NotAManifold(check.diagnostic.unwrap_or_default()));
    }
    if build_quotient(spec).is_orientable() {
        return Ok(DoubleCover::AlreadyOrientable);
    }
    let n = spec.cube_count();
    let lift = |s: Slot, sheet: usize| Slot::new(s.cube + sheet * n, s.face);
    let mut pairs = Vec::with_capacity(2 * spec.pairs().len());
    for sheet in 0..2 {
        for p in spec.pairs() {
            let other = if p.sym.reflected { 1 - sheet } else { sheet };
            pairs.push(SlotPair { a: lift(p.a, sheet), b: lift(p.b, other), sym: p.sym });
        }
    }
    let cover = CubulationSpec::new(2 * n, pairs).expect("lifted slots are used once each");
    Ok(DoubleCover::Cover(cover))
}

/// The pairing of `spec` lifted to `n` sheets, pair `k` climbing `shifts[k]` sheets.
fn lift_cyclic(spec: &CubulationSpec, shifts: &[usize], n: usize) -> CubulationSpec {
    let c = spec.cube_count();
    let mut pairs = Vec::with_capacity(n * spec.pairs().len());
    for sheet in 0..n {
        for (p, &shift) in spec.pairs().iter().zip(shifts) {
            pairs.push(SlotPair {
                a: Slot::new(p.a.cube + sheet * c, p.a.face),
                b: Slot::new(p.b.cube + (sheet + shift) % n * c, p.b.face),
                sym: p.sym,
            });
        }
    }
    CubulationSpec::new(n * c, pairs).expect("lifted slots are used once each")
}

/// Connected, unbranched `n`-fold cyclic covers of a one-cube cubulation, one
/// per surjection of the fundamental group onto `Z/n`.
pub fn cyclic_covers(spec: &CubulationSpec, n: usize) -> Vec<CubulationSpec> {
    assert_eq!(spec.cube_count(), 1, "pair values generate the group only for one cube");
    let base = build_quotient(spec);
    let count = spec.pairs().len();
    (0..n.pow(count as u32))
        .map(|code| (0..count).map(|k| code / n.pow(k as u32) % n).collect::<Vec<_>>())
        .map(|shifts| lift_cyclic(spec, &shifts, n))
        .filter(|cover| {
            let q = build_quotient(cover);
            q.vertex_count() == n * base.vertex_count() && q.edge_count() == n * base.edge_count() && q.is_connected()
        })
        .collect()
}
