//! Face-pairing specifications and their text format.
//!
//! A pair `A B s` identifies face `A` with face `B`. Corner `i` of `A`'s chart
//! (counterclockwise from outside) goes to corner `s(i)` of `B`'s chart read
//! clockwise from outside, i.e. counted from `B`'s first corner in the
//! opposite direction. With this reading `r0` on a pair of opposite faces is
//! the plain translation, and a pair is orientation-compatible with the cube
//! exactly when its symmetry is a rotation.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::cell::{CubeVertex, FaceLabel};
use super::symmetry::SquareSymmetry;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("face slot {0} is glued more than once")]
    DuplicateSlot(String),
    #[error("face slot {0} is not glued")]
    MissingSlot(String),
    #[error("a face cannot be glued to itself ({0})")]
    SelfGlued(String),
    #[error("expected {expected} pairs, found {found}")]
    PairCount { expected: usize, found: usize },
    #[error("a cubulation needs at least one cube")]
    NoCubes,
    #[error("slot refers to cube {cube} but the spec has {count} cubes")]
    CubeOutOfRange { cube: usize, count: usize },
}

/// Reading position `j` of a chart in the clockwise direction.
pub(crate) fn mirrored(j: usize) -> usize {
    (4 - j) % 4
}

/// Where the gluing `sym` sends corner `i` of the first face, as a corner index
/// of the second face's ordinary chart.
pub(crate) fn target_corner(sym: SquareSymmetry, i: usize) -> usize {
    mirrored(sym.apply(i))
}

/// One face pairing of a single cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GluingPair {
    pub a: FaceLabel,
    pub b: FaceLabel,
    pub sym: SquareSymmetry,
}

impl GluingPair {
    pub fn new(a: FaceLabel, b: FaceLabel, sym: SquareSymmetry) -> GluingPair {
        GluingPair { a, b, sym }
    }

    /// Image of a corner of face `a`.
    pub fn map_vertex(&self, v: CubeVertex) -> Option<CubeVertex> {
        let i = self.a.chart_index(v)?;
        Some(self.b.chart()[target_corner(self.sym, i)])
    }

    /// `(corner of a, corner of b)` for the four chart corners of `a`.
    pub fn vertex_map(&self) -> [(CubeVertex, CubeVertex); 4] {
        let ca = self.a.chart();
        let cb = self.b.chart();
        std::array::from_fn(|i| (ca[i], cb[target_corner(self.sym, i)]))
    }

    /// The pair realizing a given corner correspondence from `a` to `b`, if the
    /// correspondence is a symmetry of the square.
    pub fn from_vertex_map(
        a: FaceLabel,
        b: FaceLabel,
        map: impl Fn(CubeVertex) -> CubeVertex,
    ) -> Option<GluingPair> {
        let ca = a.chart();
        let images: Vec<usize> = ca.iter().map(|&v| b.chart_index(map(v))).collect::<Option<_>>()?;
        SquareSymmetry::ALL
            .into_iter()
            .find(|&s| (0..4).all(|i| target_corner(s, i) == images[i]))
            .map(|sym| GluingPair { a, b, sym })
    }

    /// The same identification written from `b` to `a`.
    pub fn swapped(&self) -> GluingPair {
        let map = self.vertex_map();
        GluingPair::from_vertex_map(self.b, self.a, |v| {
            map.iter().find(|(_, w)| *w == v).expect("bijection").0
        })
        .expect("inverse of a square symmetry is a square symmetry")
    }

    /// With `a` before `b` in chart order.
    pub fn normalized(&self) -> GluingPair {
        if self.a <= self.b {
            *self
        } else {
            self.swapped()
        }
    }

    pub fn preserves_orientation(&self) -> bool {
        !self.sym.reflected
    }

    pub(crate) fn key(&self) -> (u8, u8, u8) {
        (self.a.index() as u8, self.b.index() as u8, self.sym.code())
    }
}

impl fmt::Display for GluingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.sym)
    }
}

/// Three pairs matching the six faces of one cube.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeGluing {
    pairs: [GluingPair; 3],
}

impl CubeGluing {
    pub fn new(pairs: [GluingPair; 3]) -> Result<CubeGluing, SpecError> {
        let mut seen = HashSet::new();
        for p in &pairs {
            if p.a == p.b {
                return Err(SpecError::SelfGlued(p.a.to_string()));
            }
            for f in [p.a, p.b] {
                if !seen.insert(f) {
                    return Err(SpecError::DuplicateSlot(f.to_string()));
                }
            }
        }
        Ok(CubeGluing { pairs })
    }

    pub fn pairs(&self) -> &[GluingPair; 3] {
        &self.pairs
    }

    /// The pair containing `face`, oriented so that `face` is its first side.
    pub fn pair_from(&self, face: FaceLabel) -> GluingPair {
        let p = self.pairs.iter().find(|p| p.a == face || p.b == face).expect("perfect matching");
        if p.a == face {
            *p
        } else {
            p.swapped()
        }
    }

    /// Index of the pair containing `face`.
    pub fn pair_index(&self, face: FaceLabel) -> usize {
        self.pairs.iter().position(|p| p.a == face || p.b == face).expect("perfect matching")
    }

    /// Every pair written with its smaller face first, pairs sorted by first face.
    pub fn normalized(&self) -> CubeGluing {
        let mut pairs = self.pairs.map(|p| p.normalized());
        pairs.sort_by_key(|p| p.key());
        CubeGluing { pairs }
    }

    /// Total-order key of the normalized form.
    pub fn key(&self) -> [(u8, u8, u8); 3] {
        self.normalized().pairs.map(|p| p.key())
    }

    pub fn is_opposite_matching(&self) -> bool {
        self.pairs.iter().all(|p| p.b == p.a.opposite())
    }

    pub fn to_spec(&self) -> CubulationSpec {
        CubulationSpec {
            cube_count: 1,
            pairs: self
                .pairs
                .iter()
                .map(|p| SlotPair { a: Slot::new(0, p.a), b: Slot::new(0, p.b), sym: p.sym })
                .collect(),
        }
    }

    /// One pair per line.
    pub fn to_lines(&self) -> String {
        self.pairs.iter().map(|p| format!("{p}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<CubeGluing, SpecError> {
        let spec = CubulationSpec::parse(text)?;
        CubeGluing::try_from(&spec)
    }
}

impl fmt::Display for CubeGluing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" / "))
    }
}

impl TryFrom<&CubulationSpec> for CubeGluing {
    type Error = SpecError;

    fn try_from(spec: &CubulationSpec) -> Result<Self, Self::Error> {
        if spec.cube_count != 1 {
            return Err(SpecError::PairCount { expected: 3, found: spec.pairs.len() });
        }
        let pairs: Vec<GluingPair> =
            spec.pairs.iter().map(|p| GluingPair::new(p.a.face, p.b.face, p.sym)).collect();
        let pairs: [GluingPair; 3] = pairs
            .try_into()
            .map_err(|v: Vec<_>| SpecError::PairCount { expected: 3, found: v.len() })?;
        CubeGluing::new(pairs)
    }
}

/// A face of a particular cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub cube: usize,
    pub face: FaceLabel,
}

impl Slot {
    pub fn new(cube: usize, face: FaceLabel) -> Slot {
        Slot { cube, face }
    }

    pub(crate) fn index(self) -> usize {
        6 * self.cube + self.face.index()
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.cube, self.face)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlotPair {
    pub a: Slot,
    pub b: Slot,
    pub sym: SquareSymmetry,
}

impl SlotPair {
    pub fn face_pair(&self) -> GluingPair {
        GluingPair::new(self.a.face, self.b.face, self.sym)
    }
}

/// Face pairings of `cube_count` cubes; every face slot is used exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubulationSpec {
    cube_count: usize,
    pairs: Vec<SlotPair>,
}

impl CubulationSpec {
    pub fn new(cube_count: usize, pairs: Vec<SlotPair>) -> Result<CubulationSpec, SpecError> {
        if cube_count == 0 {
            return Err(SpecError::NoCubes);
        }
        if pairs.len() != 3 * cube_count {
            return Err(SpecError::PairCount { expected: 3 * cube_count, found: pairs.len() });
        }
        let mut seen = vec![false; 6 * cube_count];
        for p in &pairs {
            for s in [p.a, p.b] {
                if s.cube >= cube_count {
                    return Err(SpecError::CubeOutOfRange { cube: s.cube, count: cube_count });
                }
            }
            if p.a == p.b {
                return Err(SpecError::SelfGlued(p.a.to_string()));
            }
            for s in [p.a, p.b] {
                if std::mem::replace(&mut seen[s.index()], true) {
                    return Err(SpecError::DuplicateSlot(s.to_string()));
                }
            }
        }
        // 3·c pairs over 6·c slots with no repeats cover every slot.
        Ok(CubulationSpec { cube_count, pairs })
    }

    pub fn cube_count(&self) -> usize {
        self.cube_count
    }

    pub fn pairs(&self) -> &[SlotPair] {
        &self.pairs
    }

    /// Parses the line format `<faceA> <faceB> r<k>[m]`. Faces may carry a
    /// `<cube>:` prefix for multi-cube specs; `/` and `;` also separate pairs,
    /// and `#` starts a comment.
    pub fn parse(text: &str) -> Result<CubulationSpec, SpecError> {
        let mut pairs = Vec::new();
        let mut first_line: Vec<(Slot, usize)> = Vec::new();
        let mut max_cube = 0;
        for (lineno, raw_line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let content = raw_line.split('#').next().unwrap_or("");
            for chunk in content.split(['/', ';']) {
                let tokens: Vec<&str> = chunk.split_whitespace().collect();
                if tokens.is_empty() {
                    continue;
                }
                let err = |message: String| SpecError::Parse { line: line_no, message };
                if tokens.len() != 3 {
                    return Err(err(format!(
                        "expected `<faceA> <faceB> r<k>[m]`, got `{}`",
                        chunk.trim()
                    )));
                }
                let a = parse_slot(tokens[0]).map_err(err)?;
                let b = parse_slot(tokens[1]).map_err(err)?;
                let sym: SquareSymmetry = tokens[2].parse().map_err(err)?;
                for s in [a, b] {
                    if let Some((_, prev)) = first_line.iter().find(|(t, _)| *t == s) {
                        return Err(err(format!("face {s} already glued on line {prev}")));
                    }
                    if a == b {
                        return Err(err(format!("face {s} cannot be glued to itself")));
                    }
                    first_line.push((s, line_no));
                    max_cube = max_cube.max(s.cube);
                }
                pairs.push(SlotPair { a, b, sym });
            }
        }
        let cube_count = max_cube + 1;
        if pairs.len() != 3 * cube_count {
            // Report the first slot nobody glued.
            for cube in 0..cube_count {
                for face in FaceLabel::ALL {
                    let s = Slot::new(cube, face);
                    if !first_line.iter().any(|(t, _)| *t == s) {
                        return Err(SpecError::MissingSlot(s.to_string()));
                    }
                }
            }
        }
        CubulationSpec::new(cube_count, pairs)
    }

    /// One pair per line, with `<cube>:` prefixes only when there is more than one cube.
    pub fn to_lines(&self) -> String {
        let slot = |s: Slot| {
            if self.cube_count == 1 {
                s.face.to_string()
            } else {
                s.to_string()
            }
        };
        self.pairs.iter().map(|p| format!("{} {} {}\n", slot(p.a), slot(p.b), p.sym)).collect()
    }
}

fn parse_slot(token: &str) -> Result<Slot, String> {
    match token.split_once(':') {
        Some((cube, face)) => {
            let cube: usize = cube.parse().map_err(|_| format!("bad cube index in `{token}`"))?;
            Ok(Slot::new(cube, face.parse()?))
        }
        None => Ok(Slot::new(0, token.parse()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t3() -> CubeGluing {
        CubeGluing::parse("+x -x r0\n+y -y r0\n+z -z r0\n").unwrap()
    }

    #[test]
    fn identity_on_opposite_faces_is_translation() {
        for p in t3().pairs() {
            for (va, vb) in p.vertex_map() {
                let (ca, cb) = (va.coords(), vb.coords());
                for axis in 0..3 {
                    if axis == p.a.axis.index() {
                        assert_ne!(ca[axis], cb[axis]);
                    } else {
                        assert_eq!(ca[axis], cb[axis]);
                    }
                }
            }
        }
    }

    #[test]
    fn swapped_is_inverse_and_involutive() {
        for a in FaceLabel::ALL {
            for b in FaceLabel::ALL {
                if a == b {
                    continue;
                }
                for sym in SquareSymmetry::ALL {
                    let p = GluingPair::new(a, b, sym);
                    let q = p.swapped();
                    assert_eq!(q.swapped(), p);
                    assert_eq!(q.sym.reflected, p.sym.reflected);
                    for (va, vb) in p.vertex_map() {
                        assert_eq!(q.map_vertex(vb), Some(va));
                    }
                }
            }
        }
    }

    #[test]
    fn parse_rejects_duplicates_with_line_number() {
        let err = CubeGluing::parse("+x -x r0\n+y -x r1\n+z -z r0\n").unwrap_err();
        assert!(matches!(err, SpecError::Parse { line: 2, .. }), "{err}");
        let err = CubeGluing::parse("+x +x r0\n+y -y r0\n+z -z r0\n-x +y r0").unwrap_err();
        assert!(matches!(err, SpecError::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn parse_formats() {
        let one_line = CubeGluing::parse("+x -x r0 / +y -y r0 / +z -z r0").unwrap();
        assert_eq!(one_line, t3());
        assert_eq!(CubeGluing::parse(&t3().to_lines()).unwrap(), t3());
        assert_eq!(t3().to_string(), "+x -x r0 / +y -y r0 / +z -z r0");
        let unicode = CubeGluing::parse("+x \u{2212}x r0\n+y -y r0 # comment\n+z -z r0").unwrap();
        assert_eq!(unicode, t3());
        assert!(matches!(
            CubeGluing::parse("+x -x r0\n+y -y r0"),
            Err(SpecError::MissingSlot(_))
        ));
        assert!(matches!(
            CubeGluing::parse("+x -x q0\n+y -y r0\n+z -z r0"),
            Err(SpecError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            CubeGluing::parse("+x -x\n+y -y r0\n+z -z r0"),
            Err(SpecError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn multi_cube_specs() {
        let text = "0:+x 1:-x r0\n0:-x 1:+x r0\n0:+y 0:-y r0\n1:+y 1:-y r0\n0:+z 1:-z r0\n0:-z 1:+z r0\n";
        let spec = CubulationSpec::parse(text).unwrap();
        assert_eq!(spec.cube_count(), 2);
        assert_eq!(spec.to_lines(), text);
        assert!(CubulationSpec::parse("0:+x 2:-x r0").is_err());
    }

    #[test]
    fn normalization_orders_pairs() {
        let g = CubeGluing::parse("-z +z r1\n-y +x r0m\n+y -x r2").unwrap();
        let n = g.normalized();
        assert!(n.pairs().iter().all(|p| p.a < p.b));
        assert!(n.pairs().windows(2).all(|w| w[0].key() < w[1].key()));
        for p in g.pairs() {
            let q = n.pair_from(p.a);
            assert_eq!(q.vertex_map(), p.vertex_map());
        }
    }
}
