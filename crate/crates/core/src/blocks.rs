//! Triangulated cubes ("blocks") with two triangles on every boundary square,
//! and the choice of block that makes a given face pairing simplicial.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube_complex::{is_closed_manifold, CubeGluing, CubeVertex, FaceLabel};
use crate::enumeration::CubeSymmetry;
use crate::triangulation::{EdgeTag, EdgeValenceProfile, Perm4, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("no symmetry image of the {kind} block has pattern {pattern}")]
    NoMatchingBlock { kind: BlockKind, pattern: DiagonalPattern },
    #[error("case analysis left {0} mismatched pairs")]
    Unresolved(usize),
    #[error("mismatched faces are neither adjacent nor around a common vertex")]
    NoAdjacentChoice,
    #[error("boundary triangle of {0} has no partner across the pairing")]
    UnmatchedTriangle(FaceLabel),
    #[error("not a closed manifold: {0}")]
    NotAManifold(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockKind {
    FiveTetrahedron,
    Flipped,
    FiveValent,
    FourValent,
}

impl BlockKind {
    pub const ALL: [BlockKind; 4] =
        [BlockKind::FiveTetrahedron, BlockKind::Flipped, BlockKind::FiveValent, BlockKind::FourValent];

    /// Tetrahedra as cube vertex ids (`x + 2y + 4z`).
    pub fn reference_tets(self) -> &'static [[u8; 4]] {
        match self {
            BlockKind::FiveTetrahedron => &[[1, 2, 4, 7], [0, 1, 2, 4], [3, 1, 2, 7], [5, 1, 4, 7], [6, 2, 4, 7]],
            BlockKind::Flipped => {
                &[[1, 2, 4, 7], [0, 1, 2, 4], [3, 1, 2, 7], [5, 1, 4, 7], [6, 2, 4, 7], [0, 1, 4, 5]]
            }
            BlockKind::FiveValent => &[[2, 5, 0, 1], [2, 5, 1, 3], [2, 5, 3, 7], [2, 5, 7, 4], [2, 5, 4, 0], [2, 4, 6, 7]],
            BlockKind::FourValent => &[[2, 5, 0, 3], [2, 5, 3, 7], [2, 5, 7, 4], [2, 5, 4, 0], [2, 4, 6, 7], [0, 1, 3, 5]],
        }
    }

    pub fn tet_count(self) -> usize {
        self.reference_tets().len()
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockKind::FiveTetrahedron => "5-tetrahedron",
            BlockKind::Flipped => "flipped",
            BlockKind::FiveValent => "5-valent",
            BlockKind::FourValent => "4-valent",
        }
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One diagonal per face: `false` joins chart corners 0 and 2, `true` joins 1 and 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagonalPattern {
    odd: [bool; 6],
}

impl DiagonalPattern {
    pub fn from_fn(mut choose: impl FnMut(FaceLabel) -> bool) -> DiagonalPattern {
        DiagonalPattern { odd: std::array::from_fn(|i| choose(FaceLabel::from_index(i))) }
    }

    /// The pattern whose diagonal on each face is the given corner pair.
    pub fn from_diagonals(mut diagonal: impl FnMut(FaceLabel) -> (CubeVertex, CubeVertex)) -> Option<DiagonalPattern> {
        let mut odd = [false; 6];
        for face in FaceLabel::ALL {
            let (u, v) = diagonal(face);
            let (i, j) = (face.chart_index(u)?, face.chart_index(v)?);
            if (i + 2) % 4 != j {
                return None;
            }
            odd[face.index()] = i % 2 == 1;
        }
        Some(DiagonalPattern { odd })
    }

    /// Chart corner indices `(0, 2)` or `(1, 3)`.
    pub fn corners(&self, face: FaceLabel) -> (usize, usize) {
        if self.odd[face.index()] {
            (1, 3)
        } else {
            (0, 2)
        }
    }

    pub fn diagonal(&self, face: FaceLabel) -> (CubeVertex, CubeVertex) {
        let (i, j) = self.corners(face);
        let chart = face.chart();
        (chart[i], chart[j])
    }

    pub fn contains_diagonal(&self, face: FaceLabel, u: CubeVertex, v: CubeVertex) -> bool {
        let (a, b) = self.diagonal(face);
        (a, b) == (u, v) || (a, b) == (v, u)
    }

    pub fn flipped(&self, face: FaceLabel) -> DiagonalPattern {
        let mut out = *self;
        out.odd[face.index()] ^= true;
        out
    }

    pub fn image(&self, s: &CubeSymmetry) -> DiagonalPattern {
        let inv = s.inverse();
        DiagonalPattern::from_diagonals(|face| {
            let (u, v) = self.diagonal(inv.face_image(face));
            (s.apply(u), s.apply(v))
        })
        .expect("isometries carry diagonals to diagonals")
    }

    pub fn differing_faces(&self, other: &DiagonalPattern) -> Vec<FaceLabel> {
        FaceLabel::ALL.into_iter().filter(|f| self.odd[f.index()] != other.odd[f.index()]).collect()
    }
}

impl fmt::Display for DiagonalPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = FaceLabel::ALL
            .iter()
            .map(|&face| {
                let (u, v) = self.diagonal(face);
                format!("{face}:{}-{}", u.0, v.0)
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Diagonals joining the four odd corners `1, 2, 4, 7`.
pub fn five_tetrahedron_pattern() -> DiagonalPattern {
    DiagonalPattern::from_fn(|face| face.chart()[1].is_odd())
}

/// Boundary pattern of the block in its reference position.
pub fn reference_pattern(kind: BlockKind) -> DiagonalPattern {
    let base = five_tetrahedron_pattern();
    let minus_y = FaceLabel::from_index(3);
    match kind {
        BlockKind::FiveTetrahedron => base,
        BlockKind::Flipped => base.flipped(minus_y),
        BlockKind::FiveValent => base.flipped(minus_y).flipped(FaceLabel::from_index(0)),
        BlockKind::FourValent => {
            base.flipped(minus_y).flipped(FaceLabel::from_index(0)).flipped(FaceLabel::from_index(5))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchReport {
    /// Per pair of the gluing, in its stored order.
    pub matches: [bool; 3],
    pub mismatch_count: usize,
}

impl MismatchReport {
    pub fn mismatched(&self) -> Vec<usize> {
        (0..3).filter(|&k| !self.matches[k]).collect()
    }
}

pub fn mismatch_report(g: &CubeGluing, p: &DiagonalPattern) -> MismatchReport {
    let matches = g.pairs().map(|pair| {
        let (u, v) = p.diagonal(pair.a);
        let (mu, mv) = (pair.map_vertex(u).expect("corner of a"), pair.map_vertex(v).expect("corner of a"));
        p.contains_diagonal(pair.b, mu, mv)
    });
    MismatchReport { matches, mismatch_count: matches.iter().filter(|m| !**m).count() }
}

/// The block chosen for a gluing and where it sits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSelection {
    pub kind: BlockKind,
    pub pattern: DiagonalPattern,
    /// Mismatches against the 5-tetrahedron pattern before any change.
    pub initial_mismatches: usize,
    pub flipped_faces: Vec<FaceLabel>,
    #[serde(skip)]
    pub symmetry: Option<CubeSymmetry>,
}

fn common_vertex(faces: &[FaceLabel]) -> Option<CubeVertex> {
    CubeVertex::ALL.into_iter().find(|&v| faces.iter().all(|f| f.contains(v)))
}

/// Faces whose diagonals must change, by number of mismatched pairs.
fn faces_to_flip(g: &CubeGluing, report: &MismatchReport) -> Result<Vec<FaceLabel>, BlockError> {
    let bad: Vec<_> = report.mismatched().into_iter().map(|k| g.pairs()[k]).collect();
    match bad.len() {
        0 => Ok(Vec::new()),
        1 => Ok(vec![bad[0].a.min(bad[0].b)]),
        2 => {
            let mut choices: Vec<(FaceLabel, FaceLabel)> = Vec::new();
            for x in [bad[0].a, bad[0].b] {
                for y in [bad[1].a, bad[1].b] {
                    if x.is_adjacent(y) {
                        choices.push((x.min(y), x.max(y)));
                    }
                }
            }
            let (x, y) = choices.into_iter().min().ok_or(BlockError::NoAdjacentChoice)?;
            Ok(vec![x, y])
        }
        _ => {
            let mut triples: Vec<[FaceLabel; 3]> = (0..8)
                .map(|bits: usize| std::array::from_fn(|k| if bits >> k & 1 == 0 { bad[k].a } else { bad[k].b }))
                .filter(|t: &[FaceLabel; 3]| common_vertex(t).is_some())
                .map(|mut t: [FaceLabel; 3]| {
                    t.sort();
                    t
                })
                .collect();
            triples.sort();
            let triple = *triples.first().ok_or(BlockError::NoAdjacentChoice)?;
            let v = common_vertex(&triple).expect("filtered");
            if v.is_odd() {
                Ok(triple.to_vec())
            } else {
                // The complementary faces surround the antipodal (odd) vertex.
                let mut rest: Vec<FaceLabel> =
                    FaceLabel::ALL.into_iter().filter(|f| !triple.contains(f)).collect();
                rest.sort();
                Ok(rest)
            }
        }
    }
}

pub fn select_block(g: &CubeGluing) -> Result<BlockSelection, BlockError> {
    let base = five_tetrahedron_pattern();
    let report = mismatch_report(g, &base);
    let flipped_faces = faces_to_flip(g, &report)?;
    let pattern = flipped_faces.iter().fold(base, |p, &f| p.flipped(f));
    let left = mismatch_report(g, &pattern).mismatch_count;
    if left != 0 {
        return Err(BlockError::Unresolved(left));
    }
    let kind = BlockKind::ALL[report.mismatch_count];
    let reference = reference_pattern(kind);
    let symmetry = CubeSymmetry::all()
        .iter()
        .find(|s| reference.image(s) == pattern)
        .copied()
        .ok_or(BlockError::NoMatchingBlock { kind, pattern })?;
    Ok(BlockSelection { kind, pattern, initial_mismatches: report.mismatch_count, flipped_faces, symmetry: Some(symmetry) })
}

/// A block placed in the cube: tetrahedra on cube corners, glued along their
/// interior triangles, with the boundary left open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTriangulation {
    pub kind: BlockKind,
    pub tets: Vec<[CubeVertex; 4]>,
    pub pattern: DiagonalPattern,
    pub triangulation: Triangulation,
}

/// Triangle `(tet, face slot)` of a block boundary.
pub type BoundaryTriangle = (usize, usize);

impl BlockTriangulation {
    pub fn reference(kind: BlockKind) -> BlockTriangulation {
        BlockTriangulation::instantiate(kind, &CubeSymmetry::IDENTITY)
    }

    pub fn instantiate(kind: BlockKind, s: &CubeSymmetry) -> BlockTriangulation {
        let tets: Vec<[CubeVertex; 4]> =
            kind.reference_tets().iter().map(|t| t.map(|v| s.apply(CubeVertex(v)))).collect();
        let mut triangulation = Triangulation::new(tets.len());
        for a in 0..tets.len() {
            for fa in 0..4 {
                let labels = face_labels(&tets[a], fa);
                for b in a + 1..tets.len() {
                    let Some(fb) = (0..4).find(|&fb| face_labels(&tets[b], fb) == labels) else { continue };
                    let perm = relabel(&tets[a], fa, &tets[b], fb, |v| v);
                    triangulation.join(a, fa, b, perm).expect("interior triangles lie in two tetrahedra");
                }
            }
        }
        BlockTriangulation { kind, tets, pattern: reference_pattern(kind).image(s), triangulation }
    }

    /// The cube face an unglued tetrahedron face lies on.
    pub fn boundary_face(&self, tet: usize, face: usize) -> Option<FaceLabel> {
        if self.triangulation.gluing(tet, face).is_some() {
            return None;
        }
        let labels = face_labels(&self.tets[tet], face);
        FaceLabel::ALL.into_iter().find(|f| labels.iter().all(|&v| f.contains(v)))
    }

    pub fn boundary(&self, face: FaceLabel) -> Vec<BoundaryTriangle> {
        (0..self.tets.len())
            .flat_map(|t| (0..4).map(move |f| (t, f)))
            .filter(|&(t, f)| self.boundary_face(t, f) == Some(face))
            .collect()
    }

    /// Provenance of the segment `u-v` inside this block.
    pub fn edge_tag(&self, u: CubeVertex, v: CubeVertex) -> EdgeTag {
        match (u.0 ^ v.0).count_ones() {
            1 => EdgeTag::CubeEdge,
            2 => {
                let face = FaceLabel::ALL.into_iter().find(|f| f.contains(u) && f.contains(v)).expect("shared face");
                if self.pattern.contains_diagonal(face, u, v) {
                    EdgeTag::Diagonal
                } else {
                    EdgeTag::Internal
                }
            }
            _ => EdgeTag::Internal,
        }
    }

    /// Tags for the edge classes of any triangulation built from this block's tetrahedra.
    pub fn tag_profile(&self, t: &Triangulation) -> EdgeValenceProfile {
        let classes = t.edge_classes();
        let mut tags = vec![EdgeTag::Internal; classes.count];
        for (id, &c) in classes.class.iter().enumerate() {
            let (a, b) = crate::triangulation::EDGE_VERTICES[id % 6];
            let tet = &self.tets[id / 6];
            tags[c] = self.edge_tag(tet[a], tet[b]);
        }
        EdgeValenceProfile { valences: classes.valences(), tags: Some(tags) }
    }

    pub fn edge_profile(&self) -> EdgeValenceProfile {
        self.tag_profile(&self.triangulation)
    }
}

fn face_labels(tet: &[CubeVertex; 4], face: usize) -> Vec<CubeVertex> {
    let mut v: Vec<CubeVertex> = (0..4).filter(|&k| k != face).map(|k| tet[k]).collect();
    v.sort();
    v
}

/// Vertex bijection from `a` to `b` matching face `fa` onto `fb` through `map`.
fn relabel(a: &[CubeVertex; 4], fa: usize, b: &[CubeVertex; 4], fb: usize, map: impl Fn(CubeVertex) -> CubeVertex) -> Perm4 {
    let mut images = [0u8; 4];
    for k in 0..4 {
        images[k] = if k == fa {
            fb as u8
        } else {
            b.iter().position(|&w| w == map(a[k])).expect("image vertex in partner") as u8
        };
    }
    Perm4::new(images).expect("bijection")
}

/// A one-cube gluing triangulated by its selected block.
#[derive(Debug, Clone)]
pub struct AssembledTriangulation {
    pub selection: BlockSelection,
    pub block: BlockTriangulation,
    pub triangulation: Triangulation,
}

impl AssembledTriangulation {
    pub fn valences(&self) -> EdgeValenceProfile {
        self.block.tag_profile(&self.triangulation)
    }
}

/// Glues the selected block's boundary along `g`, whether or not the result is a manifold.
pub fn assemble_block_gluing(g: &CubeGluing) -> Result<AssembledTriangulation, BlockError> {
    let selection = select_block(g)?;
    let symmetry = selection.symmetry.expect("selection carries its symmetry");
    let block = BlockTriangulation::instantiate(selection.kind, &symmetry);
    debug_assert_eq!(block.pattern, selection.pattern);
    let mut tri = block.triangulation.clone();
    for pair in g.pairs() {
        let targets = block.boundary(pair.b);
        for (t, f) in block.boundary(pair.a) {
            let map = |v| pair.map_vertex(v).expect("corner of the glued face");
            let image: Vec<CubeVertex> = {
                let mut v: Vec<_> = face_labels(&block.tets[t], f).into_iter().map(map).collect();
                v.sort();
                v
            };
            let &(t2, f2) = targets
                .iter()
                .find(|&&(t2, f2)| face_labels(&block.tets[t2], f2) == image)
                .ok_or(BlockError::UnmatchedTriangle(pair.a))?;
            let perm = relabel(&block.tets[t], f, &block.tets[t2], f2, map);
            tri.join(t, f, t2, perm).expect("each boundary triangle is glued once");
        }
    }
    Ok(AssembledTriangulation { selection, block, triangulation: tri })
}

pub fn assemble_triangulation(g: &CubeGluing) -> Result<AssembledTriangulation, BlockError> {
    let check = is_closed_manifold(&g.to_spec());
    if !check.is_manifold {
        return Err(BlockError::NotAManifold(check.diagnostic.unwrap_or_default()));
    }
    assemble_block_gluing(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestRow {
    pub kind: BlockKind,
    pub internal: Vec<usize>,
    pub diagonals: Vec<usize>,
    pub expected_internal: Vec<usize>,
    pub expected_diagonals: Vec<usize>,
}

impl SelftestRow {
    pub fn passed(&self) -> bool {
        self.internal == self.expected_internal && self.diagonals == self.expected_diagonals
    }
}

/// Valences of the unglued 6-tetrahedron blocks against the expected table.
pub fn selftest() -> Vec<SelftestRow> {
    let expected = [
        (BlockKind::Flipped, vec![4], vec![1, 3, 3, 3, 3, 3]),
        (BlockKind::FiveValent, vec![5], vec![2, 2, 2, 2, 3, 3]),
        (BlockKind::FourValent, vec![4], vec![2, 2, 3, 3, 3, 3]),
    ];
    expected
        .into_iter()
        .map(|(kind, expected_internal, expected_diagonals)| {
            let profile = BlockTriangulation::reference(kind).edge_profile();
            SelftestRow {
                kind,
                internal: profile.of_tag(EdgeTag::Internal),
                diagonals: profile.of_tag(EdgeTag::Diagonal),
                expected_internal,
                expected_diagonals,
            }
        })
        .collect()
}

pub fn format_selftest(rows: &[SelftestRow]) -> String {
    let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut out = format!("{:<10} {:<10} {:<14} {}\n", "block", "internal", "diagonals", "status");
    for r in rows {
        out.push_str(&format!(
            "{:<10} {:<10} {:<14} {}\n",
            r.kind.name(),
            list(&r.internal),
            list(&r.diagonals),
            if r.passed() {
                "ok".to_string()
            } else {
                format!("FAIL (expected {} / {})", list(&r.expected_internal), list(&r.expected_diagonals))
            }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::enumerate_raw;

    #[test]
    fn blocks_are_balls_with_the_drawn_patterns() {
        for kind in BlockKind::ALL {
            let b = BlockTriangulation::reference(kind);
            assert_eq!(b.tets.len(), kind.tet_count());
            let t = &b.triangulation;
            // Every interior triangle is glued, every boundary square has two triangles.
            for tet in 0..t.tet_count() {
                for f in 0..4 {
                    assert_eq!(t.gluing(tet, f).is_none(), b.boundary_face(tet, f).is_some(), "{kind} {tet}:{f}");
                }
            }
            for face in FaceLabel::ALL {
                let tris = b.boundary(face);
                assert_eq!(tris.len(), 2, "{kind} {face}");
                // The two triangles share exactly the pattern diagonal.
                let (p, q) = (face_labels(&b.tets[tris[0].0], tris[0].1), face_labels(&b.tets[tris[1].0], tris[1].1));
                let shared: Vec<_> = p.iter().filter(|v| q.contains(v)).copied().collect();
                assert_eq!(shared.len(), 2);
                assert!(b.pattern.contains_diagonal(face, shared[0], shared[1]), "{kind} {face}");
            }
            assert_eq!(t.euler_characteristic(), 1, "{kind}");
            // The tetrahedra fill the unit cube; only the flipped block's extra
            // tetrahedron is flat, squashed onto the square it is glued to.
            let mut volume6 = 0;
            let mut flat = 0;
            for tet in &b.tets {
                let o = tet[0].coords().map(|c| c as i32);
                let d: Vec<[i32; 3]> =
                    tet[1..].iter().map(|v| std::array::from_fn(|k| v.coords()[k] as i32 - o[k])).collect();
                let det = d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1])
                    - d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0])
                    + d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0]);
                flat += (det == 0) as usize;
                volume6 += det.abs();
            }
            assert_eq!(volume6, 6, "{kind}");
            assert_eq!(flat, (kind == BlockKind::Flipped) as usize, "{kind}");
        }
    }

    #[test]
    fn reference_patterns() {
        let base = five_tetrahedron_pattern();
        assert_eq!(reference_pattern(BlockKind::FiveTetrahedron), base);
        // Corner tetrahedra exist: diagonals around each even corner form a triangle.
        for v in CubeVertex::ALL.into_iter().filter(|v| !v.is_odd()) {
            for f in FaceLabel::ALL.into_iter().filter(|f| f.contains(v)) {
                let (a, b) = base.diagonal(f);
                assert!(a != v && b != v);
            }
        }
        assert_eq!(reference_pattern(BlockKind::Flipped).differing_faces(&base).len(), 1);
        let two = reference_pattern(BlockKind::FiveValent).differing_faces(&base);
        assert_eq!(two.len(), 2);
        assert!(two[0].is_adjacent(two[1]));
        let three = reference_pattern(BlockKind::FourValent).differing_faces(&base);
        assert_eq!(three.len(), 3);
        assert!(common_vertex(&three).is_some());
    }

    #[test]
    fn table_of_valences() {
        let rows = selftest();
        for r in &rows {
            assert!(r.passed(), "{r:?}");
        }
        let five = BlockTriangulation::reference(BlockKind::FiveTetrahedron).edge_profile();
        assert!(five.of_tag(EdgeTag::Internal).is_empty());
        assert_eq!(five.of_tag(EdgeTag::Diagonal), vec![3; 6]);
    }

    #[test]
    fn torus_needs_the_four_valent_block() {
        let g = CubeGluing::parse("+x -x r0 / +y -y r0 / +z -z r0").unwrap();
        assert_eq!(mismatch_report(&g, &five_tetrahedron_pattern()).mismatch_count, 3);
        let s = select_block(&g).unwrap();
        assert_eq!(s.kind, BlockKind::FourValent);
        assert_eq!(mismatch_report(&g, &s.pattern).mismatch_count, 0);
        let a = assemble_triangulation(&g).unwrap();
        assert_eq!(a.triangulation.tet_count(), 6);
        assert!(a.triangulation.is_closed_manifold());
        assert!(a.triangulation.has_valence(4));
    }

    #[test]
    fn flipping_one_face_flips_one_flag() {
        let base = five_tetrahedron_pattern();
        for g in enumerate_raw(false).step_by(17) {
            let before = mismatch_report(&g, &base);
            for face in FaceLabel::ALL {
                let after = mismatch_report(&g, &base.flipped(face));
                let changed = (0..3).filter(|&k| before.matches[k] != after.matches[k]).count();
                assert_eq!(changed, 1);
                assert_eq!(g.pair_index(face), (0..3).find(|&k| before.matches[k] != after.matches[k]).unwrap());
            }
        }
    }

    #[test]
    fn selection_is_total_and_matches() {
        let mut seen = [0usize; 4];
        for g in enumerate_raw(false) {
            let s = select_block(&g).unwrap_or_else(|e| panic!("{g}: {e}"));
            assert_eq!(mismatch_report(&g, &s.pattern).mismatch_count, 0, "{g}");
            assert_eq!(reference_pattern(s.kind).image(&s.symmetry.unwrap()), s.pattern);
            seen[s.initial_mismatches] += 1;
            let a = assemble_block_gluing(&g).unwrap();
            assert!(a.triangulation.is_closed());
            assert_eq!(a.triangulation.tet_count(), s.kind.tet_count());
        }
        assert!(seen.iter().all(|&n| n > 0), "{seen:?}");
    }
}
