use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// An element of the dihedral group of order 8 acting on the corner indices
/// `0..4` of a square chart: `i -> k + i` for a rotation by `k` quarter turns,
/// `i -> k - i` when reflected (indices mod 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareSymmetry {
    pub rotation: u8,
    pub reflected: bool,
}

impl SquareSymmetry {
    pub const IDENTITY: SquareSymmetry = SquareSymmetry::new(0, false);

    pub const ALL: [SquareSymmetry; 8] = [
        SquareSymmetry::new(0, false),
        SquareSymmetry::new(1, false),
        SquareSymmetry::new(2, false),
        SquareSymmetry::new(3, false),
        SquareSymmetry::new(0, true),
        SquareSymmetry::new(1, true),
        SquareSymmetry::new(2, true),
        SquareSymmetry::new(3, true),
    ];

    pub const fn new(rotation: u8, reflected: bool) -> SquareSymmetry {
        SquareSymmetry { rotation: rotation % 4, reflected }
    }

    /// Position in [`SquareSymmetry::ALL`]; also the serialization order.
    pub fn code(self) -> u8 {
        self.rotation + if self.reflected { 4 } else { 0 }
    }

    pub fn apply(self, corner: usize) -> usize {
        let i = corner as u8 % 4;
        let out = if self.reflected { self.rotation + 4 - i } else { self.rotation + i };
        (out % 4) as usize
    }

    /// The element with the given action on corners 0 and 1, if one exists.
    pub fn from_action(img0: usize, img1: usize) -> Option<SquareSymmetry> {
        SquareSymmetry::ALL.into_iter().find(|s| s.apply(0) == img0 && s.apply(1) == img1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: SquareSymmetry) -> SquareSymmetry {
        SquareSymmetry::from_action(self.apply(other.apply(0)), self.apply(other.apply(1)))
            .expect("dihedral group is closed")
    }

    pub fn inverse(self) -> SquareSymmetry {
        if self.reflected {
            self
        } else {
            SquareSymmetry::new((4 - self.rotation) % 4, false)
        }
    }
}

impl fmt::Display for SquareSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}{}", self.rotation, if self.reflected { "m" } else { "" })
    }
}

impl FromStr for SquareSymmetry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("symmetry `{s}` must look like r0..r3 with optional trailing m");
        let rest = s.strip_prefix('r').ok_or_else(bad)?;
        let (digits, reflected) = match rest.strip_suffix('m') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let k: u8 = digits.parse().map_err(|_| bad())?;
        if k > 3 {
            return Err(bad());
        }
        Ok(SquareSymmetry::new(k, reflected))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws_exhaustive() {
        let id = SquareSymmetry::IDENTITY;
        for a in SquareSymmetry::ALL {
            let mut seen = [false; 4];
            for i in 0..4 {
                seen[a.apply(i)] = true;
            }
            assert!(seen.iter().all(|&b| b), "{a} is not a bijection");
            assert_eq!(a.compose(id), a);
            assert_eq!(id.compose(a), a);
            assert_eq!(a.compose(a.inverse()), id);
            assert_eq!(a.inverse().compose(a), id);
            for b in SquareSymmetry::ALL {
                let ab = a.compose(b);
                assert!(SquareSymmetry::ALL.contains(&ab));
                for i in 0..4 {
                    assert_eq!(ab.apply(i), a.apply(b.apply(i)));
                }
                for c in SquareSymmetry::ALL {
                    assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
                }
            }
        }
        let distinct: std::collections::HashSet<_> =
            SquareSymmetry::ALL.iter().map(|s| (0..4).map(|i| s.apply(i)).collect::<Vec<_>>()).collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn non_abelian() {
        let r = SquareSymmetry::new(1, false);
        let m = SquareSymmetry::new(0, true);
        assert_ne!(r.compose(m), m.compose(r));
    }

    #[test]
    fn parse_and_display() {
        for s in SquareSymmetry::ALL {
            assert_eq!(s.to_string().parse::<SquareSymmetry>().unwrap(), s);
        }
        assert!("r4".parse::<SquareSymmetry>().is_err());
        assert!("m".parse::<SquareSymmetry>().is_err());
        assert!("r1mm".parse::<SquareSymmetry>().is_err());
    }
}
