//! Barycentric-style subdivision of a cubulation: every boundary square is
//! coned to its center, and every cube to its center.

use super::cell::FaceLabel;
use super::gluing::{CubulationSpec, GluingPair, Slot};
use crate::triangulation::{ManifoldCheck, Perm4, Triangulation};

pub const TETS_PER_CUBE: usize = 24;

/// Tetrahedron `(cube center, face center, V_i, V_{i+1})` for chart edge `i` of `face`.
pub fn cone_tet_index(cube: usize, face: FaceLabel, i: usize) -> usize {
    TETS_PER_CUBE * cube + 4 * face.index() + i
}

/// For each slot, its partner slot and the pairing read from the slot's side.
fn partners(spec: &CubulationSpec) -> Vec<(Slot, GluingPair)> {
    let mut out = vec![None; 6 * spec.cube_count()];
    for p in spec.pairs() {
        let pair = p.face_pair();
        out[p.a.index()] = Some((p.b, pair));
        out[p.b.index()] = Some((p.a, pair.swapped()));
    }
    out.into_iter().map(|x| x.expect("every slot is glued")).collect()
}

/// Chart edge of `face` joining `u` and `w`, and whether it runs `u -> w`.
fn chart_edge(face: FaceLabel, u: usize, w: usize) -> (usize, bool) {
    let chart = face.chart();
    for i in 0..4 {
        let (a, b) = (chart[i].index(), chart[(i + 1) % 4].index());
        if (a, b) == (u, w) {
            return (i, true);
        }
        if (a, b) == (w, u) {
            return (i, false);
        }
    }
    unreachable!("{u}-{w} is not an edge of {face}")
}

fn corner_perm(forward: bool) -> Perm4 {
    if forward {
        Perm4::IDENTITY
    } else {
        Perm4([0, 1, 3, 2])
    }
}

pub fn cone_subdivide(spec: &CubulationSpec) -> Triangulation {
    let n = spec.cube_count();
    let partner = partners(spec);
    let mut tri = Triangulation::new(TETS_PER_CUBE * n);
    for cube in 0..n {
        for face in FaceLabel::ALL {
            let chart = face.chart();
            for i in 0..4 {
                let t = cone_tet_index(cube, face, i);
                let (u, w) = (chart[i], chart[(i + 1) % 4]);
                // Around the face center.
                tri.join(t, 2, cone_tet_index(cube, face, (i + 1) % 4), Perm4([0, 1, 3, 2]))
                    .expect("fresh slot");
                // Across the cube edge u-w, to the other face containing it.
                let other = FaceLabel::ALL
                    .into_iter()
                    .find(|&g| g != face && g.contains(u) && g.contains(w))
                    .expect("every edge lies on two faces");
                let (j, fwd) = chart_edge(other, u.index(), w.index());
                tri.join(t, 1, cone_tet_index(cube, other, j), corner_perm(fwd)).expect("consistent");
                // Through the boundary square, along the face pairing.
                let (slot, pair) = partner[6 * cube + face.index()];
                let (mu, mw) = (pair.map_vertex(u).expect("corner"), pair.map_vertex(w).expect("corner"));
                let (j, fwd) = chart_edge(slot.face, mu.index(), mw.index());
                tri.join(t, 0, cone_tet_index(slot.cube, slot.face, j), corner_perm(fwd)).expect("consistent");
            }
        }
    }
    tri
}

/// Link criterion on the cone subdivision, with the first failure as diagnostic.
pub fn is_closed_manifold(spec: &CubulationSpec) -> ManifoldCheck {
    cone_subdivide(spec).manifold_check()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AbelianInvariants;
    use crate::cube_complex::gluing::CubeGluing;

    #[test]
    fn torus() {
        let spec = CubeGluing::parse("+x -x r0 / +y -y r0 / +z -z r0").unwrap().to_spec();
        let t = cone_subdivide(&spec);
        assert_eq!(t.tet_count(), 24);
        assert!(t.is_closed());
        assert!(is_closed_manifold(&spec).is_manifold);
        assert_eq!(t.homology_h1().unwrap(), AbelianInvariants::new(3, &[]));
        assert!(t.is_orientable().unwrap());
        assert_eq!(t.euler_characteristic(), 0);
    }

    #[test]
    fn cone_vertices_are_spheres_when_total_space_is() {
        let spec = CubeGluing::parse("+x -x r1m / +y -y r0 / +z -z r0").unwrap().to_spec();
        let t = cone_subdivide(&spec);
        assert!(t.is_closed_manifold());
        assert!(!t.is_orientable().unwrap());
    }

    #[test]
    fn non_manifolds_carry_diagnostics() {
        let mut failures = 0;
        for g in crate::enumeration::enumerate_raw(true) {
            let spec = g.to_spec();
            let check = is_closed_manifold(&spec);
            assert_eq!(check.diagnostic.is_none(), check.is_manifold);
            if crate::cube_complex::build_quotient(&spec).euler_characteristic() != 0 {
                assert!(!check.is_manifold, "{g}");
            }
            failures += !check.is_manifold as usize;
        }
        assert!(failures > 0);
    }
}
