//! One-cube gluings, raw and up to the symmetries of the cube.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cube_complex::{CubeGluing, CubeVertex, FaceLabel, GluingPair, SquareSymmetry};

/// An isometry of the unit cube, acting on vertex coordinates by
/// `out[axes[k]] = c[k] ^ flips[k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeSymmetry {
    images: [u8; 8],
}

impl CubeSymmetry {
    pub const IDENTITY: CubeSymmetry = CubeSymmetry { images: [0, 1, 2, 3, 4, 5, 6, 7] };

    pub fn from_axes(axes: [usize; 3], flips: [bool; 3]) -> CubeSymmetry {
        let images = std::array::from_fn(|v| {
            let c = CubeVertex(v as u8).coords();
            let mut out = [0u8; 3];
            for k in 0..3 {
                out[axes[k]] = c[k] ^ flips[k] as u8;
            }
            CubeVertex::from_coords(out).0
        });
        CubeSymmetry { images }
    }

    /// All 48, identity first.
    pub fn all() -> &'static [CubeSymmetry] {
        static ALL: OnceLock<Vec<CubeSymmetry>> = OnceLock::new();
        ALL.get_or_init(|| {
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let mut out = Vec::with_capacity(48);
            for axes in perms {
                for f in 0..8u8 {
                    out.push(CubeSymmetry::from_axes(axes, [f & 1 != 0, f & 2 != 0, f & 4 != 0]));
                }
            }
            out
        })
    }

    pub fn apply(&self, v: CubeVertex) -> CubeVertex {
        CubeVertex(self.images[v.index()])
    }

    pub fn face_image(&self, face: FaceLabel) -> FaceLabel {
        let chart = face.chart();
        FaceLabel::ALL
            .into_iter()
            .find(|f| chart.iter().all(|&v| f.contains(self.apply(v))))
            .expect("isometries map faces to faces")
    }

    pub fn inverse(&self) -> CubeSymmetry {
        let mut images = [0u8; 8];
        for v in 0..8 {
            images[self.images[v] as usize] = v as u8;
        }
        CubeSymmetry { images }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &CubeSymmetry) -> CubeSymmetry {
        CubeSymmetry { images: std::array::from_fn(|v| self.images[other.images[v] as usize]) }
    }

    /// Orientation-preserving?
    pub fn is_rotation(&self) -> bool {
        let origin = self.apply(CubeVertex(0)).coords();
        let col = |axis: usize| -> [i32; 3] {
            let c = self.apply(CubeVertex(1 << axis)).coords();
            std::array::from_fn(|k| c[k] as i32 - origin[k] as i32)
        };
        let (a, b, c) = (col(0), col(1), col(2));
        let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]);
        det > 0
    }

    /// The pair `s ∘ φ ∘ s⁻¹` from `s(a)` to `s(b)`.
    pub fn act_on_pair(&self, p: &GluingPair) -> GluingPair {
        let inv = self.inverse();
        GluingPair::from_vertex_map(self.face_image(p.a), self.face_image(p.b), |v| {
            self.apply(p.map_vertex(inv.apply(v)).expect("vertex of the image face"))
        })
        .expect("conjugate of a square symmetry is a square symmetry")
    }

    /// Image of a gluing, normalized.
    pub fn act(&self, g: &CubeGluing) -> CubeGluing {
        let pairs = g.pairs().map(|p| self.act_on_pair(&p));
        CubeGluing::new(pairs).expect("symmetries permute the faces").normalized()
    }
}

/// A gluing that is the minimum of its orbit, and the orbit's size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalGluing {
    pub gluing: CubeGluing,
    pub orbit_size: usize,
}

impl CanonicalGluing {
    /// Stable class identifier: the serialized canonical gluing.
    pub fn id(&self) -> String {
        self.gluing.to_string()
    }
}

impl fmt::Display for CanonicalGluing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gluing)
    }
}

/// The 15 perfect matchings of the six faces, each as three `(a, b)` with `a < b`,
/// in lexicographic order. The opposite-face matching is first.
pub fn face_matchings() -> Vec<[(FaceLabel, FaceLabel); 3]> {
    let f = FaceLabel::from_index;
    let mut out = Vec::new();
    for j in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&k| k != j).collect();
        for k in 1..4 {
            let others: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != rest[k]).collect();
            out.push([(f(0), f(j)), (f(rest[0]), f(rest[k])), (f(others[0]), f(others[1]))]);
        }
    }
    out
}

/// Every one-cube gluing in normalized form, exactly once.
pub fn enumerate_raw(opposite_only: bool) -> impl Iterator<Item = CubeGluing> {
    let matchings: Vec<_> = face_matchings()
        .into_iter()
        .filter(|m| !opposite_only || m.iter().all(|(a, b)| a.opposite() == *b))
        .collect();
    matchings.into_iter().flat_map(|m| {
        (0..512usize).map(move |code| {
            let sym = |k: usize| SquareSymmetry::ALL[(code >> (3 * (2 - k))) & 7];
            let pairs = std::array::from_fn(|k| GluingPair::new(m[k].0, m[k].1, sym(k)));
            CubeGluing::new(pairs).expect("perfect matching")
        })
    })
}

pub fn raw_count(opposite_only: bool) -> usize {
    if opposite_only {
        512
    } else {
        15 * 512
    }
}

pub fn canonical_form(g: &CubeGluing) -> CanonicalGluing {
    let images: BTreeSet<_> = CubeSymmetry::all().iter().map(|s| s.act(g).key()).collect();
    let min = images.first().expect("orbit contains g");
    let gluing = CubeSymmetry::all()
        .iter()
        .map(|s| s.act(g))
        .find(|h| h.key() == *min)
        .expect("minimum is attained");
    CanonicalGluing { gluing, orbit_size: images.len() }
}

/// Each class once, sorted by the serialized key.
pub fn enumerate_canonical(opposite_only: bool) -> Vec<CanonicalGluing> {
    let raw: Vec<CubeGluing> = enumerate_raw(opposite_only).collect();
    let classes: BTreeMap<_, CanonicalGluing> = raw
        .par_iter()
        .map(canonical_form)
        .map(|c| (c.gluing.key(), c))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    classes.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn symmetry_group() {
        let all = CubeSymmetry::all();
        assert_eq!(all.len(), 48);
        assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), 48);
        assert_eq!(all.iter().filter(|s| s.is_rotation()).count(), 24);
        for a in all {
            assert!(all.contains(&a.inverse()));
            assert_eq!(a.compose(&a.inverse()), CubeSymmetry::IDENTITY);
            for b in all {
                assert!(all.contains(&a.compose(b)));
                for f in FaceLabel::ALL {
                    assert_eq!(a.compose(b).face_image(f), a.face_image(b.face_image(f)));
                }
            }
            // Adjacency of vertices is preserved.
            for v in CubeVertex::ALL {
                for w in CubeVertex::ALL {
                    let adjacent = |x: CubeVertex, y: CubeVertex| (x.0 ^ y.0).count_ones() == 1;
                    assert_eq!(adjacent(v, w), adjacent(a.apply(v), a.apply(w)));
                }
            }
        }
    }

    #[test]
    fn action_is_a_group_action_on_gluings() {
        let g = CubeGluing::parse("+x -y r1\n-x +z r3m\n+y -z r2").unwrap();
        let all = CubeSymmetry::all();
        for a in all.iter().step_by(5) {
            for b in all.iter().step_by(7) {
                assert_eq!(a.act(&b.act(&g)), a.compose(b).act(&g));
            }
        }
        assert_eq!(CubeSymmetry::IDENTITY.act(&g), g.normalized());
    }

    #[test]
    fn rotation_conjugation_preserves_reflection_flags() {
        for g in enumerate_raw(false).step_by(37) {
            let flags = |h: &CubeGluing| {
                let mut v: Vec<bool> = h.pairs().iter().map(|p| p.sym.reflected).collect();
                v.sort();
                v
            };
            for s in CubeSymmetry::all() {
                assert_eq!(flags(&s.act(&g)), flags(&g));
            }
        }
    }

    #[test]
    fn matchings() {
        let m = face_matchings();
        assert_eq!(m.len(), 15);
        assert!(m[0].iter().all(|(a, b)| a.opposite() == *b));
        for matching in &m {
            let mut faces: Vec<_> = matching.iter().flat_map(|&(a, b)| [a, b]).collect();
            faces.sort();
            assert_eq!(faces, FaceLabel::ALL.to_vec());
            assert!(matching.iter().all(|(a, b)| a < b));
        }
    }

    #[test]
    fn raw_counts() {
        assert_eq!(enumerate_raw(true).count(), 512);
        let all: Vec<_> = enumerate_raw(false).collect();
        assert_eq!(all.len(), 7680);
        let keys: BTreeSet<_> = all.iter().map(|g| g.key()).collect();
        assert_eq!(keys.len(), 7680);
        assert!(all.iter().all(|g| g.normalized() == *g));
    }

    /// Orbit partition by breadth-first closure under the 48 symmetries, with
    /// pair swaps and reorderings handled by explicit relabeling instead of
    /// normalization.
    fn brute_force_partition(opposite_only: bool) -> Vec<usize> {
        let raw: Vec<CubeGluing> = enumerate_raw(opposite_only).collect();
        let index: HashMap<_, usize> = raw.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let mut seen = vec![false; raw.len()];
        let mut sizes = Vec::new();
        for start in 0..raw.len() {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let mut size = 0;
            while let Some(i) = stack.pop() {
                size += 1;
                for s in CubeSymmetry::all() {
                    let moved: Vec<GluingPair> = raw[i].pairs().iter().map(|p| s.act_on_pair(p)).collect();
                    // Try every ordering and swap pattern; exactly one is normalized.
                    for order in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                        for swaps in 0..8 {
                            let pairs = std::array::from_fn(|k| {
                                let p = moved[order[k]];
                                if swaps >> k & 1 == 1 {
                                    p.swapped()
                                } else {
                                    p
                                }
                            });
                            let h = CubeGluing::new(pairs).unwrap();
                            if let Some(&j) = index.get(&h) {
                                if !seen[j] {
                                    seen[j] = true;
                                    stack.push(j);
                                }
                            }
                        }
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn canonical_classes_match_brute_force_partition() {
        for opposite_only in [true, false] {
            let classes = enumerate_canonical(opposite_only);
            let mut sizes: Vec<usize> = classes.iter().map(|c| c.orbit_size).collect();
            sizes.sort_unstable();
            assert_eq!(sizes, brute_force_partition(opposite_only));
            assert_eq!(sizes.iter().sum::<usize>(), raw_count(opposite_only));
            assert!(classes.windows(2).all(|w| w[0].gluing.key() < w[1].gluing.key()));
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_invariant() {
        let t3 = CubeGluing::parse("+x -x r0 / +y -y r0 / +z -z r0").unwrap();
        let c = canonical_form(&t3);
        assert_eq!(c.orbit_size, 1);
        for g in enumerate_raw(false).step_by(11) {
            let c = canonical_form(&g);
            assert_eq!(canonical_form(&c.gluing), c);
            for s in CubeSymmetry::all().iter().step_by(13) {
                assert_eq!(canonical_form(&s.act(&g)), c);
            }
        }
    }
}
