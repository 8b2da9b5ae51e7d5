use thiserror::Error;

use super::cell::{CubeEdge, CubeVertex};
use super::gluing::{CubulationSpec, Slot};
use crate::algebra::IntegerMatrix;
use crate::dsu::SignedUnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("edge orbit {0} is identified with itself reversed; the quotient is not a cell complex")]
    FoldedEdge(usize),
}

/// A square of the quotient: the first slot of its pair, and its boundary as
/// signed edge orbits read along that slot's chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCell {
    pub slot: Slot,
    pub boundary: [(usize, i64); 4],
}

/// Cell structure left on the cubes after all face identifications.
///
/// Cells are numbered `8 * cube + vertex` and `12 * cube + edge`; every orbit is
/// numbered by rank of its smallest member and oriented like that member.
#[derive(Debug, Clone)]
pub struct QuotientComplex {
    cube_count: usize,
    vertex_class: Vec<usize>,
    vertex_count: usize,
    edge_class: Vec<usize>,
    edge_reversed: Vec<bool>,
    edge_count: usize,
    folded: Vec<usize>,
    squares: Vec<SquareCell>,
    reflected_pairs: Vec<(usize, usize, bool)>,
}

pub fn build_quotient(spec: &CubulationSpec) -> QuotientComplex {
    let n = spec.cube_count();
    let mut vertices = SignedUnionFind::new(8 * n);
    let mut edges = SignedUnionFind::new(12 * n);
    for p in spec.pairs() {
        let face_pair = p.face_pair();
        let map = face_pair.vertex_map();
        for (va, vb) in map {
            vertices.union(8 * p.a.cube + va.index(), 8 * p.b.cube + vb.index(), false);
        }
        for i in 0..4 {
            let (a0, b0) = map[i];
            let (a1, b1) = map[(i + 1) % 4];
            let (ea, fwd_a) = CubeEdge::between(a0, a1).expect("chart corners are adjacent");
            let (eb, fwd_b) = CubeEdge::between(b0, b1).expect("gluing preserves adjacency");
            edges.union(12 * p.a.cube + ea.index(), 12 * p.b.cube + eb.index(), fwd_a != fwd_b);
        }
    }
    let (vertex_class, _, vertex_count) = vertices.classes();
    let (edge_class, edge_reversed, edge_count) = edges.classes();
    let mut folded: Vec<usize> =
        (0..12 * n).filter(|&e| edges.is_twisted(e)).map(|e| edge_class[e]).collect();
    folded.sort_unstable();
    folded.dedup();

    let squares = spec
        .pairs()
        .iter()
        .map(|p| {
            let chart = p.a.face.chart();
            let boundary = std::array::from_fn(|i| {
                let (e, fwd) = CubeEdge::between(chart[i], chart[(i + 1) % 4]).expect("adjacent");
                let id = 12 * p.a.cube + e.index();
                let sign = if fwd != edge_reversed[id] { 1 } else { -1 };
                (edge_class[id], sign)
            });
            SquareCell { slot: p.a, boundary }
        })
        .collect();
    let reflected_pairs = spec.pairs().iter().map(|p| (p.a.cube, p.b.cube, p.sym.reflected)).collect();

    QuotientComplex {
        cube_count: n,
        vertex_class,
        vertex_count,
        edge_class,
        edge_reversed,
        edge_count,
        folded,
        squares,
        reflected_pairs,
    }
}

impl QuotientComplex {
    pub fn cube_count(&self) -> usize {
        self.cube_count
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn squares(&self) -> &[SquareCell] {
        &self.squares
    }

    pub fn vertex_orbit_of(&self, cube: usize, v: CubeVertex) -> usize {
        self.vertex_class[8 * cube + v.index()]
    }

    /// Orbit of a cube edge and whether the edge runs against the orbit's orientation.
    pub fn edge_orbit_of(&self, cube: usize, e: CubeEdge) -> (usize, bool) {
        let id = 12 * cube + e.index();
        (self.edge_class[id], self.edge_reversed[id])
    }

    pub fn vertex_orbits(&self) -> Vec<Vec<(usize, CubeVertex)>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for (id, &c) in self.vertex_class.iter().enumerate() {
            out[c].push((id / 8, CubeVertex((id % 8) as u8)));
        }
        out
    }

    pub fn edge_orbits(&self) -> Vec<Vec<(usize, CubeEdge)>> {
        let mut out = vec![Vec::new(); self.edge_count];
        for (id, &c) in self.edge_class.iter().enumerate() {
            out[c].push((id / 12, CubeEdge((id % 12) as u8)));
        }
        out
    }

    /// Edge orbits glued to themselves with reversed direction.
    pub fn folded_edges(&self) -> &[usize] {
        &self.folded
    }

    /// `(tail, head)` vertex orbits of an edge orbit.
    pub fn edge_endpoints(&self, orbit: usize) -> (usize, usize) {
        let id = self.edge_class.iter().position(|&c| c == orbit).expect("orbit exists");
        let (t, h) = CubeEdge((id % 12) as u8).endpoints();
        let cube = id / 12;
        (self.vertex_orbit_of(cube, t), self.vertex_orbit_of(cube, h))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count as i64 + self.squares.len() as i64
            - self.cube_count as i64
    }

    /// Whether the cubes can be oriented so that every pairing is compatible.
    /// Meaningful for manifold quotients.
    pub fn is_orientable(&self) -> bool {
        let mut uf = SignedUnionFind::new(self.cube_count);
        for &(a, b, reflected) in &self.reflected_pairs {
            uf.union(a, b, reflected);
        }
        (0..self.cube_count).all(|c| !uf.is_twisted(c))
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = SignedUnionFind::new(self.cube_count);
        for &(a, b, _) in &self.reflected_pairs {
            uf.union(a, b, false);
        }
        uf.classes().2 == 1
    }

    /// Boundary matrices `d2: C2 -> C1`, `d1: C1 -> C0` of the cellular chain complex.
    pub fn chain_complex(&self) -> Result<(IntegerMatrix, IntegerMatrix), QuotientError> {
        if let Some(&e) = self.folded.first() {
            return Err(QuotientError::FoldedEdge(e));
        }
        let mut d1 = IntegerMatrix::zeros(self.vertex_count, self.edge_count);
        for e in 0..self.edge_count {
            let (t, h) = self.edge_endpoints(e);
            d1.add_to(h, e, 1);
            d1.add_to(t, e, -1);
        }
        let mut d2 = IntegerMatrix::zeros(self.edge_count, self.squares.len());
        for (s, sq) in self.squares.iter().enumerate() {
            for &(e, sign) in &sq.boundary {
                d2.add_to(e, s, sign);
            }
        }
        Ok((d2, d1))
    }
}

/// `χ = V − E + F − C` of the quotient.
pub fn euler_characteristic(q: &QuotientComplex) -> i64 {
    q.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube_complex::gluing::CubeGluing;

    /// Orbit counts by plain flood fill over explicit vertex/edge identifications,
    /// independent of the signed union-find.
    fn orbit_counts_oracle(g: &CubeGluing) -> (usize, usize) {
        let mut vlabel: Vec<usize> = (0..8).collect();
        let mut elabel: Vec<usize> = (0..12).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for p in g.pairs() {
                for (i, (va, vb)) in p.vertex_map().into_iter().enumerate() {
                    let m = vlabel[va.index()].min(vlabel[vb.index()]);
                    for v in [va, vb] {
                        if vlabel[v.index()] != m {
                            vlabel[v.index()] = m;
                            changed = true;
                        }
                    }
                    let (wa, wb) = p.vertex_map()[(i + 1) % 4];
                    let ea = CubeEdge::between(va, wa).unwrap().0.index();
                    let eb = CubeEdge::between(vb, wb).unwrap().0.index();
                    let m = elabel[ea].min(elabel[eb]);
                    for e in [ea, eb] {
                        if elabel[e] != m {
                            elabel[e] = m;
                            changed = true;
                        }
                    }
                }
            }
        }
        let distinct = |l: &[usize]| l.iter().collect::<std::collections::BTreeSet<_>>().len();
        (distinct(&vlabel), distinct(&elabel))
    }

    #[test]
    fn torus_orbits() {
        let g = CubeGluing::parse("+x -x r0\n+y -y r0\n+z -z r0").unwrap();
        assert_eq!(orbit_counts_oracle(&g), (1, 3));
        let q = build_quotient(&g.to_spec());
        assert_eq!((q.vertex_count(), q.edge_count(), q.square_count(), q.cube_count()), (1, 3, 3, 1));
        assert_eq!(euler_characteristic(&q), 0);
        assert!(q.is_orientable());
        assert!(q.folded_edges().is_empty());
    }

    #[test]
    fn klein_bottle_times_circle_orbits() {
        let g = CubeGluing::parse("+x -x r1m\n+y -y r0\n+z -z r0").unwrap();
        let (v, e) = orbit_counts_oracle(&g);
        let q = build_quotient(&g.to_spec());
        assert_eq!((q.vertex_count(), q.edge_count()), (v, e));
        assert_eq!(euler_characteristic(&q), 0);
        assert!(!q.is_orientable());
    }

    #[test]
    fn orbit_numbering_follows_smallest_member() {
        let g = CubeGluing::parse("+x -y r1\n-x +z r3m\n+y -z r2").unwrap();
        let q = build_quotient(&g.to_spec());
        let orbits = q.vertex_orbits();
        let firsts: Vec<_> = orbits.iter().map(|o| 8 * o[0].0 + o[0].1.index()).collect();
        assert!(firsts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(firsts[0], 0);
    }

    #[test]
    fn orbit_counts_match_oracle_on_all_gluings() {
        for g in crate::enumeration::enumerate_raw(false) {
            let q = build_quotient(&g.to_spec());
            assert_eq!((q.vertex_count(), q.edge_count()), orbit_counts_oracle(&g), "{g}");
            assert_eq!(q.square_count(), 3);
            assert_eq!(q.euler_characteristic(), q.vertex_count() as i64 - q.edge_count() as i64 + 2);
        }
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        for g in crate::enumeration::enumerate_raw(true) {
            let q = build_quotient(&g.to_spec());
            if let Ok((d2, d1)) = q.chain_complex() {
                assert!(d1.mul(&d2).unwrap().is_zero(), "{g}");
            }
        }
    }
}
