//! Cells of the unit cube: corners, edges and faces, with the corner-chart
//! convention used by every gluing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// A corner of the unit cube, encoded as `x + 2y + 4z` with coordinates in {0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CubeVertex(pub u8);

impl CubeVertex {
    pub const ALL: [CubeVertex; 8] = [
        CubeVertex(0),
        CubeVertex(1),
        CubeVertex(2),
        CubeVertex(3),
        CubeVertex(4),
        CubeVertex(5),
        CubeVertex(6),
        CubeVertex(7),
    ];

    pub fn from_coords(c: [u8; 3]) -> CubeVertex {
        debug_assert!(c.iter().all(|&x| x <= 1));
        CubeVertex(c[0] | (c[1] << 1) | (c[2] << 2))
    }

    pub fn coords(self) -> [u8; 3] {
        [self.0 & 1, (self.0 >> 1) & 1, (self.0 >> 2) & 1]
    }

    pub fn coord(self, axis: Axis) -> u8 {
        (self.0 >> axis.index()) & 1
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Corners with an odd coordinate sum: (1,0,0), (0,1,0), (0,0,1), (1,1,1).
    pub fn is_odd(self) -> bool {
        self.0.count_ones() % 2 == 1
    }
}

impl fmt::Display for CubeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.coords();
        write!(f, "({x},{y},{z})")
    }
}

/// One of the twelve cube edges. Edges parallel to `axis` are numbered
/// `4 * axis + offset`, where `offset` packs the two remaining coordinates
/// in increasing axis order. The canonical orientation runs from the corner
/// with `axis`-coordinate 0 to the one with coordinate 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeEdge(pub u8);

impl CubeEdge {
    pub fn all() -> impl Iterator<Item = CubeEdge> {
        (0..12).map(CubeEdge)
    }

    pub fn axis(self) -> Axis {
        Axis::from_index((self.0 / 4) as usize)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// `(tail, head)` in canonical orientation.
    pub fn endpoints(self) -> (CubeVertex, CubeVertex) {
        let axis = self.axis().index();
        let offset = self.0 % 4;
        let others: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
        let mut c = [0u8; 3];
        c[others[0]] = offset & 1;
        c[others[1]] = (offset >> 1) & 1;
        let tail = CubeVertex::from_coords(c);
        c[axis] = 1;
        (tail, CubeVertex::from_coords(c))
    }

    /// The edge joining two adjacent corners, and `true` when `from -> to`
    /// agrees with the canonical orientation.
    pub fn between(from: CubeVertex, to: CubeVertex) -> Option<(CubeEdge, bool)> {
        let diff = from.0 ^ to.0;
        if diff.count_ones() != 1 {
            return None;
        }
        let axis = diff.trailing_zeros() as usize;
        let low = if from.0 & diff == 0 { from } else { to };
        let lc = low.coords();
        let others: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
        let offset = lc[others[0]] | (lc[others[1]] << 1);
        Some((CubeEdge(4 * axis as u8 + offset), low == from))
    }
}

/// A face of the cube: the square where coordinate `axis` equals 1 (`Plus`) or 0 (`Minus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceLabel {
    pub axis: Axis,
    pub sign: Sign,
}

impl FaceLabel {
    /// Chart order: +x, -x, +y, -y, +z, -z.
    pub const ALL: [FaceLabel; 6] = [
        FaceLabel::new(Axis::X, Sign::Plus),
        FaceLabel::new(Axis::X, Sign::Minus),
        FaceLabel::new(Axis::Y, Sign::Plus),
        FaceLabel::new(Axis::Y, Sign::Minus),
        FaceLabel::new(Axis::Z, Sign::Plus),
        FaceLabel::new(Axis::Z, Sign::Minus),
    ];

    pub const fn new(axis: Axis, sign: Sign) -> FaceLabel {
        FaceLabel { axis, sign }
    }

    pub fn index(self) -> usize {
        2 * self.axis.index() + if self.sign == Sign::Plus { 0 } else { 1 }
    }

    pub fn from_index(i: usize) -> FaceLabel {
        FaceLabel::ALL[i]
    }

    pub fn opposite(self) -> FaceLabel {
        let sign = match self.sign {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        };
        FaceLabel::new(self.axis, sign)
    }

    pub fn level(self) -> u8 {
        match self.sign {
            Sign::Plus => 1,
            Sign::Minus => 0,
        }
    }

    pub fn contains(self, v: CubeVertex) -> bool {
        v.coord(self.axis) == self.level()
    }

    pub fn is_adjacent(self, other: FaceLabel) -> bool {
        self.axis != other.axis
    }

    /// The four corners of the face, counterclockwise as seen from outside the
    /// cube, starting at the corner with lexicographically smallest coordinates.
    pub fn chart(self) -> [CubeVertex; 4] {
        CHARTS[self.index()]
    }

    /// Position of `v` in the chart, if `v` lies on this face.
    pub fn chart_index(self, v: CubeVertex) -> Option<usize> {
        self.chart().iter().position(|&c| c == v)
    }

    /// The four boundary edges; edge `i` joins chart corners `i` and `i + 1`.
    pub fn chart_edges(self) -> [CubeEdge; 4] {
        let c = self.chart();
        std::array::from_fn(|i| CubeEdge::between(c[i], c[(i + 1) % 4]).expect("adjacent corners").0)
    }
}

impl PartialOrd for FaceLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FaceLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl fmt::Display for FaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        let a = match self.axis {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        };
        write!(f, "{s}{a}")
    }
}

impl FromStr for FaceLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') | Some('\u{2212}') => Sign::Minus,
            _ => return Err(format!("face `{s}` must start with + or -")),
        };
        let axis = match (chars.next(), chars.next()) {
            (Some('x'), None) => Axis::X,
            (Some('y'), None) => Axis::Y,
            (Some('z'), None) => Axis::Z,
            _ => return Err(format!("face `{s}` must be one of +x -x +y -y +z -z")),
        };
        Ok(FaceLabel::new(axis, sign))
    }
}

const CHARTS: [[CubeVertex; 4]; 6] = build_charts();

const fn build_charts() -> [[CubeVertex; 4]; 6] {
    let mut out = [[CubeVertex(0); 4]; 6];
    let mut f = 0;
    while f < 6 {
        let axis = f / 2;
        let level: u8 = if f % 2 == 0 { 1 } else { 0 };
        // (u, w) are the two in-face axes in cyclic order after `axis`, so that
        // e_u x e_w = e_axis. Going u first, then w, is counterclockwise seen
        // from +axis; reverse it for the face at level 0.
        let u = (axis + 1) % 3;
        let w = (axis + 2) % 3;
        let (first, second) = if level == 1 { (u, w) } else { (w, u) };
        let base = (level as usize) << axis;
        out[f][0] = CubeVertex(base as u8);
        out[f][1] = CubeVertex((base | (1 << first)) as u8);
        out[f][2] = CubeVertex((base | (1 << first) | (1 << second)) as u8);
        out[f][3] = CubeVertex((base | (1 << second)) as u8);
        f += 1;
    }
    out
}
