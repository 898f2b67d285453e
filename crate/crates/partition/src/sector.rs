//! Angular sectors with an exact tie rule on their bounding rays.

use serde::{Deserialize, Serialize};

/// Integer direction in dual-basis coordinates.
pub type Dir = [i64; 2];

pub fn cross(a: Dir, b: Dir) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Whether the perturbation `δ = (ε, ε²)` (real coordinates, ε → 0⁺) points
/// to the counterclockwise side of the ray `d`, i.e. `d × δ > 0`.
///
/// Both supported lattices map dual coordinates to the plane with a
/// positive-determinant matrix whose second row is proportional to `(0, 1)`,
/// so `sign ξ₂ = sign v`, and `sign ξ₁ = sign u` when `v = 0`.
pub fn ccw_of_perturbation(d: Dir) -> bool {
    d[1] < 0 || (d[1] == 0 && d[0] > 0)
}

pub fn neg(d: Dir) -> Dir {
    [-d[0], -d[1]]
}

/// Wedge from `start` counterclockwise to `end` (opening < π).
///
/// A point `w` on a bounding ray belongs to the wedge containing `w + δ` for
/// the fixed infinitesimal `δ = (ε, ε²)`. The reciprocal cell's half-open rule
/// is the same perturbation, so every translation tiling that holds almost
/// everywhere also holds exactly on grid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sector {
    pub start: Dir,
    pub end: Dir,
}

impl Sector {
    pub fn new(start: Dir, end: Dir) -> Self {
        debug_assert!(cross(start, end) > 0);
        Self { start, end }
    }

    pub fn reflected(&self) -> Self {
        Self::new(neg(self.start), neg(self.end))
    }

    pub fn map(&self, f: impl Fn(Dir) -> Dir) -> Self {
        Self::new(f(self.start), f(self.end))
    }

    pub fn contains(&self, w: Dir) -> bool {
        let cs = cross(self.start, w);
        let ce = cross(w, self.end);
        if cs > 0 && ce > 0 {
            return true;
        }
        if cs == 0 && ce > 0 {
            // on the start ray (same direction, since ce > 0)
            return ccw_of_perturbation(self.start);
        }
        if ce == 0 && cs > 0 {
            return !ccw_of_perturbation(self.end);
        }
        false
    }

    /// Strictly inside, off both rays.
    pub fn interior(&self, w: Dir) -> bool {
        cross(self.start, w) > 0 && cross(w, self.end) > 0
    }
}

/// Rotation by π/3 in hexagonal dual coordinates.
pub fn rot60(d: Dir) -> Dir {
    [d[0] - d[1], d[0]]
}

/// Rotation by −π/3 in hexagonal dual coordinates.
pub fn rot_m60(d: Dir) -> Dir {
    [d[1], d[1] - d[0]]
}

/// Reflection `ξ₂ → −ξ₂` in hexagonal dual coordinates.
pub fn reflect_hex(d: Dir) -> Dir {
    [d[0] - d[1], -d[1]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_invert() {
        for d in [[1, 0], [2, 1], [-3, 5]] {
            assert_eq!(rot60(rot_m60(d)), d);
            assert_eq!(rot60(rot60(rot60(d))), neg(d));
            assert_eq!(reflect_hex(reflect_hex(d)), d);
        }
    }

    #[test]
    fn adjacent_sectors_split_rays() {
        let a = Sector::new([3, 0], [4, 2]);
        let b = Sector::new([2, -2], [3, 0]);
        for w in [[3, 0], [6, 0], [-3, 0]] {
            let on = [a.contains(w), b.contains(w), a.reflected().contains(w), b.reflected().contains(w)];
            assert_eq!(on.iter().filter(|x| **x).count(), 1, "{w:?}");
        }
    }
}
