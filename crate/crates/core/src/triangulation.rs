//! Generalized triangulations: tetrahedra whose faces are paired by explicit
//! vertex bijections. Self- and multiple adjacencies are allowed, and faces
//! may be left unglued (boundary).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{self, AbelianInvariants, AlgebraError, IntegerMatrix};
use crate::dsu::SignedUnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("tetrahedron {0} out of range")]
    NoSuchTetrahedron(usize),
    #[error("gluing of {tet}:{face} must map face {face} to the partner face")]
    BadPermutation { tet: usize, face: usize },
    #[error("face {tet}:{face} is glued twice")]
    AlreadyGlued { tet: usize, face: usize },
    #[error("face {tet}:{face} cannot be glued to itself")]
    SelfGluedFace { tet: usize, face: usize },
    #[error("face pairing is not an involution at {tet}:{face}")]
    NotInvolution { tet: usize, face: usize },
    #[error("edge class {0} is identified with itself reversed")]
    FoldedEdge(usize),
    #[error("not a closed manifold: {0}")]
    NotClosedManifold(String),
    #[error("dump line {line}: {message}")]
    Dump { line: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A permutation of the tetrahedron vertices `0..4`, stored as images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || std::mem::replace(&mut seen[i as usize], true) {
                return None;
            }
        }
        Some(Perm4(images))
    }

    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for i in 0..4 {
            inv[self.0[i] as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`
    pub fn compose(self, other: Perm4) -> Perm4 {
        Perm4(std::array::from_fn(|i| self.0[other.0[i] as usize]))
    }

    pub fn is_even(self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Where face `f` of a tetrahedron goes: partner tetrahedron, and the vertex
/// map carrying this tetrahedron's vertices onto the partner's (so face `f`
/// lands on face `perm(f)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceGluing {
    pub tet: usize,
    pub perm: Perm4,
}

/// Vertex pairs of the six tetrahedron edges.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    EDGE_VERTICES.iter().position(|&e| e == (a, b)).expect("distinct vertices")
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    gluings: Vec<[Option<FaceGluing>; 4]>,
}

/// Edge classes of a triangulation.
#[derive(Debug, Clone)]
pub struct EdgeClasses {
    /// class of `(tet, edge)` at index `6 * tet + edge`
    pub class: Vec<usize>,
    /// whether that tetrahedron edge runs against its class orientation
    pub reversed: Vec<bool>,
    pub count: usize,
    pub folded: Vec<usize>,
}

impl EdgeClasses {
    /// Number of tetrahedron edges in each class.
    pub fn valences(&self) -> Vec<usize> {
        let mut v = vec![0; self.count];
        for &c in &self.class {
            v[c] += 1;
        }
        v
    }
}

/// Summary of the surface formed by the corners of tetrahedra at one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSummary {
    pub euler_characteristic: i64,
    pub connected: bool,
    pub orientable: bool,
    pub closed: bool,
}

impl LinkSummary {
    pub fn is_sphere(&self) -> bool {
        self.closed && self.connected && self.euler_characteristic == 2
    }
}

/// Outcome of the closed-manifold test with the first failure, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldCheck {
    pub is_manifold: bool,
    pub diagnostic: Option<String>,
}

/// Which part of a block an edge class came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeTag {
    Internal,
    Diagonal,
    CubeEdge,
}

/// Valence of every edge class, optionally tagged by provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeValenceProfile {
    pub valences: Vec<usize>,
    pub tags: Option<Vec<EdgeTag>>,
}

impl EdgeValenceProfile {
    pub fn total(&self) -> usize {
        self.valences.iter().sum()
    }

    pub fn sorted(&self) -> Vec<usize> {
        let mut v = self.valences.clone();
        v.sort_unstable();
        v
    }

    /// Sorted valences of the classes carrying `tag`.
    pub fn of_tag(&self, tag: EdgeTag) -> Vec<usize> {
        let Some(tags) = &self.tags else { return Vec::new() };
        let mut v: Vec<usize> =
            self.valences.iter().zip(tags).filter(|(_, t)| **t == tag).map(|(v, _)| *v).collect();
        v.sort_unstable();
        v
    }
}

impl Triangulation {
    /// `n` tetrahedra with every face unglued.
    pub fn new(n: usize) -> Triangulation {
        Triangulation { gluings: vec![[None; 4]; n] }
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<FaceGluing> {
        self.gluings[tet][face]
    }

    /// Glues face `face` of `tet` to face `perm(face)` of `other`, setting both sides.
    pub fn join(&mut self, tet: usize, face: usize, other: usize, perm: Perm4) -> Result<(), TriangulationError> {
        let n = self.tet_count();
        for t in [tet, other] {
            if t >= n {
                return Err(TriangulationError::NoSuchTetrahedron(t));
            }
        }
        let other_face = perm.apply(face);
        if tet == other && face == other_face {
            return Err(TriangulationError::SelfGluedFace { tet, face });
        }
        let here = FaceGluing { tet: other, perm };
        let there = FaceGluing { tet, perm: perm.inverse() };
        match (self.gluings[tet][face], self.gluings[other][other_face]) {
            (None, None) => {
                self.gluings[tet][face] = Some(here);
                self.gluings[other][other_face] = Some(there);
                Ok(())
            }
            (Some(g), _) if g == here => Ok(()),
            (Some(_), _) => Err(TriangulationError::AlreadyGlued { tet, face }),
            (None, Some(_)) => Err(TriangulationError::AlreadyGlued { tet: other, face: other_face }),
        }
    }

    /// Builds from a full gluing table, checking it is an involution.
    pub fn from_gluings(gluings: Vec<[Option<FaceGluing>; 4]>) -> Result<Triangulation, TriangulationError> {
        let n = gluings.len();
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= n {
                    return Err(TriangulationError::NoSuchTetrahedron(g.tet));
                }
                let f2 = g.perm.apply(f);
                if g.tet == t && f2 == f {
                    return Err(TriangulationError::SelfGluedFace { tet: t, face: f });
                }
                let back = gluings[g.tet][f2];
                if back != Some(FaceGluing { tet: t, perm: g.perm.inverse() }) {
                    return Err(TriangulationError::NotInvolution { tet: t, face: f });
                }
            }
        }
        Ok(Triangulation { gluings })
    }

    pub fn is_closed(&self) -> bool {
        self.gluings.iter().all(|faces| faces.iter().all(|g| g.is_some()))
    }

    fn glued_faces(&self) -> impl Iterator<Item = (usize, usize, FaceGluing)> + '_ {
        self.gluings
            .iter()
            .enumerate()
            .flat_map(|(t, faces)| faces.iter().enumerate().filter_map(move |(f, g)| g.map(|g| (t, f, g))))
    }

    /// Vertex class of `(tet, vertex)` at index `4 * tet + vertex`, and the class count.
    pub fn vertex_classes(&self) -> (Vec<usize>, usize) {
        let mut uf = SignedUnionFind::new(4 * self.tet_count());
        for (t, f, g) in self.glued_faces() {
            for v in (0..4).filter(|&v| v != f) {
                uf.union(4 * t + v, 4 * g.tet + g.perm.apply(v), false);
            }
        }
        let (class, _, count) = uf.classes();
        (class, count)
    }

    pub fn edge_classes(&self) -> EdgeClasses {
        let mut uf = SignedUnionFind::new(6 * self.tet_count());
        for (t, f, g) in self.glued_faces() {
            for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                if a == f || b == f {
                    continue;
                }
                let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                uf.union(6 * t + e, 6 * g.tet + edge_index(pa, pb), pa > pb);
            }
        }
        let (class, reversed, count) = uf.classes();
        let mut folded: Vec<usize> =
            (0..6 * self.tet_count()).filter(|&x| uf.is_twisted(x)).map(|x| class[x]).collect();
        folded.sort_unstable();
        folded.dedup();
        EdgeClasses { class, reversed, count, folded }
    }

    pub fn edge_valences(&self) -> EdgeValenceProfile {
        EdgeValenceProfile { valences: self.edge_classes().valences(), tags: None }
    }

    pub fn has_valence(&self, k: usize) -> bool {
        self.edge_classes().valences().contains(&k)
    }

    /// Link of the vertex class `vertex`, built from the corner triangles of
    /// every tetrahedron corner in that class.
    pub fn vertex_link(&self, vertex: usize) -> LinkSummary {
        let (vclass, _) = self.vertex_classes();
        self.link_with_classes(&vclass, vertex)
    }

    fn link_with_classes(&self, vclass: &[usize], vertex: usize) -> LinkSummary {
        let n = self.tet_count();
        let corners: Vec<(usize, usize)> =
            (0..n).flat_map(|t| (0..4).map(move |i| (t, i))).filter(|&(t, i)| vclass[4 * t + i] == vertex).collect();
        // Link vertices (t, i, j), link triangles (t, i) with orientation parity.
        let mut lv = SignedUnionFind::new(16 * n);
        let mut tri = SignedUnionFind::new(4 * n);
        let mut edge_slots = 0usize;
        let mut glued_slots = 0usize;
        for &(t, i) in &corners {
            for k in (0..4).filter(|&k| k != i) {
                edge_slots += 1;
                let Some(g) = self.gluings[t][k] else { continue };
                glued_slots += 1;
                let (t2, i2) = (g.tet, g.perm.apply(i));
                for j in (0..4).filter(|&j| j != i && j != k) {
                    lv.union(16 * t + 4 * i + j, 16 * t2 + 4 * i2 + g.perm.apply(j), false);
                }
                tri.union(4 * t + i, 4 * t2 + i2, g.perm.is_even());
            }
        }
        let mut link_vertices: Vec<usize> = corners
            .iter()
            .flat_map(|&(t, i)| (0..4).filter(move |&j| j != i).map(move |j| 16 * t + 4 * i + j))
            .map(|x| lv.find(x).0)
            .collect();
        link_vertices.sort_unstable();
        link_vertices.dedup();
        // Each glued link edge is seen from both sides.
        let edges = (glued_slots / 2) + (edge_slots - glued_slots);
        let faces = corners.len();
        let mut roots: Vec<usize> = corners.iter().map(|&(t, i)| tri.find(4 * t + i).0).collect();
        roots.sort_unstable();
        roots.dedup();
        LinkSummary {
            euler_characteristic: link_vertices.len() as i64 - edges as i64 + faces as i64,
            connected: roots.len() <= 1,
            orientable: corners.iter().all(|&(t, i)| !tri.is_twisted(4 * t + i)),
            closed: glued_slots == edge_slots,
        }
    }

    /// Closed, no edge identified with its own reverse, every vertex link a 2-sphere.
    pub fn manifold_check(&self) -> ManifoldCheck {
        let fail = |msg: String| ManifoldCheck { is_manifold: false, diagnostic: Some(msg) };
        if let Some((t, f)) = (0..self.tet_count())
            .flat_map(|t| (0..4).map(move |f| (t, f)))
            .find(|&(t, f)| self.gluings[t][f].is_none())
        {
            return fail(format!("face {t}:{f} is unglued"));
        }
        let edges = self.edge_classes();
        if let Some(&e) = edges.folded.first() {
            return fail(format!("edge class {e} is glued to itself reversed (projective-plane link at its midpoint)"));
        }
        let (vclass, count) = self.vertex_classes();
        for v in 0..count {
            let link = self.link_with_classes(&vclass, v);
            if !link.is_sphere() {
                return fail(format!(
                    "vertex {v} link has euler characteristic {}{}",
                    link.euler_characteristic,
                    if link.connected { "" } else { " and is disconnected" }
                ));
            }
        }
        ManifoldCheck { is_manifold: true, diagnostic: None }
    }

    pub fn is_closed_manifold(&self) -> bool {
        self.manifold_check().is_manifold
    }

    fn require_manifold(&self) -> Result<(), TriangulationError> {
        match self.manifold_check() {
            ManifoldCheck { is_manifold: true, .. } => Ok(()),
            ManifoldCheck { diagnostic, .. } => {
                Err(TriangulationError::NotClosedManifold(diagnostic.unwrap_or_default()))
            }
        }
    }

    /// Orientations propagate across each gluing; consistent iff no cycle
    /// forces a tetrahedron to disagree with itself.
    pub fn is_orientable(&self) -> Result<bool, TriangulationError> {
        self.require_manifold()?;
        Ok(self.orientable_unchecked())
    }

    pub(crate) fn orientable_unchecked(&self) -> bool {
        let mut uf = SignedUnionFind::new(self.tet_count());
        for (t, _, g) in self.glued_faces() {
            uf.union(t, g.tet, g.perm.is_even());
        }
        (0..self.tet_count()).all(|t| !uf.is_twisted(t))
    }

    /// `V − E + F − T`.
    pub fn euler_characteristic(&self) -> i64 {
        let (_, v) = self.vertex_classes();
        let e = self.edge_classes().count;
        let glued = self.glued_faces().count();
        let faces = glued / 2 + (4 * self.tet_count() - glued);
        v as i64 - e as i64 + faces as i64 - self.tet_count() as i64
    }

    /// Boundary matrices `(d2, d1)` of the simplicial chain complex.
    pub fn chain_complex(&self) -> Result<(IntegerMatrix, IntegerMatrix), TriangulationError> {
        let edges = self.edge_classes();
        if let Some(&e) = edges.folded.first() {
            return Err(TriangulationError::FoldedEdge(e));
        }
        let (vclass, vcount) = self.vertex_classes();
        let mut d1 = IntegerMatrix::zeros(vcount, edges.count);
        let mut seen = vec![false; edges.count];
        for t in 0..self.tet_count() {
            for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                let id = 6 * t + e;
                let c = edges.class[id];
                if std::mem::replace(&mut seen[c], true) {
                    continue;
                }
                // First member of each class is oriented like the class.
                debug_assert!(!edges.reversed[id]);
                d1.add_to(vclass[4 * t + b], c, 1);
                d1.add_to(vclass[4 * t + a], c, -1);
            }
        }
        let mut columns = Vec::new();
        for t in 0..self.tet_count() {
            for f in 0..4 {
                if let Some(g) = self.gluings[t][f] {
                    if (g.tet, g.perm.apply(f)) < (t, f) {
                        continue;
                    }
                }
                let vs: Vec<usize> = (0..4).filter(|&v| v != f).collect();
                let (p, q, r) = (vs[0], vs[1], vs[2]);
                let mut col = Vec::new();
                for (x, y, s) in [(q, r, 1i64), (p, r, -1), (p, q, 1)] {
                    let id = 6 * t + edge_index(x, y);
                    let sign = if edges.reversed[id] { -s } else { s };
                    col.push((edges.class[id], sign));
                }
                columns.push(col);
            }
        }
        let mut d2 = IntegerMatrix::zeros(edges.count, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for &(e, s) in col {
                d2.add_to(e, j, s);
            }
        }
        Ok((d2, d1))
    }

    pub fn homology_h1(&self) -> Result<AbelianInvariants, TriangulationError> {
        let (d2, d1) = self.chain_complex()?;
        Ok(algebra::h1_of_chain_complex(&d2, &d1)?)
    }

    pub fn homology_h1_mod(&self, p: u64) -> Result<usize, TriangulationError> {
        let (d2, d1) = self.chain_complex()?;
        Ok(algebra::h1_with_coefficients(&d2, &d1, p)?)
    }

    /// One line per face pairing, `t:f -> t':f' [perm]`, after a `tetrahedra N` header.
    pub fn dump(&self) -> String {
        let mut out = format!("tetrahedra {}\n", self.tet_count());
        for (t, f, g) in self.glued_faces() {
            let f2 = g.perm.apply(f);
            if (t, f) < (g.tet, f2) {
                out.push_str(&format!("{t}:{f} -> {}:{f2} [{}]\n", g.tet, g.perm));
            }
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Triangulation, TriangulationError> {
        let mut tri: Option<Triangulation> = None;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: &str| TriangulationError::Dump { line: line_no, message: message.to_string() };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(n) = line.strip_prefix("tetrahedra ") {
                let n: usize = n.trim().parse().map_err(|_| err("bad tetrahedron count"))?;
                tri = Some(Triangulation::new(n));
                continue;
            }
            let t = tri.as_mut().ok_or_else(|| err("missing `tetrahedra N` header"))?;
            let (lhs, rest) = line.split_once("->").ok_or_else(|| err("expected `->`"))?;
            let (rhs, perm) = rest.trim().split_once('[').ok_or_else(|| err("expected `[perm]`"))?;
            let perm = perm.trim().strip_suffix(']').ok_or_else(|| err("unterminated `[perm]`"))?;
            let slot = |s: &str| -> Option<(usize, usize)> {
                let (a, b) = s.trim().split_once(':')?;
                Some((a.parse().ok()?, b.parse().ok()?))
            };
            let (ta, fa) = slot(lhs).ok_or_else(|| err("bad source slot"))?;
            let (tb, fb) = slot(rhs).ok_or_else(|| err("bad target slot"))?;
            let digits: Vec<u8> = perm.bytes().map(|b| b.wrapping_sub(b'0')).collect();
            let images: [u8; 4] = digits.try_into().map_err(|_| err("perm needs four digits"))?;
            let perm = Perm4::new(images).ok_or_else(|| err("perm is not a permutation"))?;
            if fa > 3 || perm.apply(fa) != fb {
                return Err(err("perm does not carry the source face to the target face"));
            }
            t.join(ta, fa, tb, perm).map_err(|e| err(&e.to_string()))?;
        }
        tri.ok_or(TriangulationError::Dump { line: 0, message: "empty dump".into() })
    }
}
