//! Exact segment arithmetic in reciprocal-lattice coordinates.
//!
//! Points are rational coordinates with respect to the dual basis, so
//! translations by dual-lattice vectors are integer shifts. Collinearity and
//! overlap are affine notions and need no metric.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Q = Rational64;
pub type Point = [Q; 2];

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn pt(u: i64, v: i64, d: i64) -> Point {
    [q(u, d), q(v, d)]
}

pub fn add(a: &Point, b: &Point) -> Point {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn sub(a: &Point, b: &Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn neg(a: &Point) -> Point {
    [-a[0], -a[1]]
}

pub fn scale(a: &Point, s: Q) -> Point {
    [a[0] * s, a[1] * s]
}

pub fn cross(a: &Point, b: &Point) -> Q {
    a[0] * b[1] - a[1] * b[0]
}

pub fn dot(a: &Point, b: &Point) -> Q {
    a[0] * b[0] + a[1] * b[1]
}

pub fn shift(a: &Point, l: [i64; 2]) -> Point {
    [a[0] + l[0], a[1] + l[1]]
}

/// Closed segment `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn dir(&self) -> Point {
        sub(&self.b, &self.a)
    }

    pub fn translate(&self, t: &Point) -> Self {
        Self::new(add(&self.a, t), add(&self.b, t))
    }

    pub fn at(&self, t: Q) -> Point {
        add(&self.a, &scale(&self.dir(), t))
    }

    pub fn midpoint(&self) -> Point {
        self.at(q(1, 2))
    }

    /// Affine parameter of a point on the supporting line.
    pub fn param(&self, x: &Point) -> Q {
        let d = self.dir();
        dot(&sub(x, &self.a), &d) / dot(&d, &d)
    }

    pub fn on_line(&self, x: &Point) -> bool {
        cross(&self.dir(), &sub(x, &self.a)).is_zero()
    }

    pub fn contains(&self, x: &Point) -> bool {
        if !self.on_line(x) {
            return false;
        }
        let t = self.param(x);
        !t.is_negative() && t <= Q::one()
    }

    /// Parameter interval (on `self`) of the positive-length overlap with `o`.
    pub fn overlap(&self, o: &Segment) -> Option<(Q, Q)> {
        if !(self.on_line(&o.a) && self.on_line(&o.b)) {
            return None;
        }
        let (mut t0, mut t1) = (self.param(&o.a), self.param(&o.b));
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        let lo = t0.max(Q::zero());
        let hi = t1.min(Q::one());
        (lo < hi).then_some((lo, hi))
    }

    pub fn sub_segment(&self, t0: Q, t1: Q) -> Segment {
        Segment::new(self.at(t0), self.at(t1))
    }

    /// Same point set regardless of direction.
    pub fn same_as(&self, o: &Segment) -> bool {
        (self.a == o.a && self.b == o.b) || (self.a == o.b && self.b == o.a)
    }
}

fn merge(mut iv: Vec<(Q, Q)>) -> Vec<(Q, Q)> {
    iv.sort();
    let mut out: Vec<(Q, Q)> = Vec::new();
    for (a, b) in iv {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

fn covered(s: &Segment, others: &[Segment]) -> Vec<(Q, Q)> {
    merge(others.iter().filter_map(|o| s.overlap(o)).collect())
}

/// Parts of `a` that overlap some segment of `b` with positive length.
pub fn intersect(a: &[Segment], b: &[Segment]) -> Vec<Segment> {
    a.iter()
        .flat_map(|s| covered(s, b).into_iter().map(move |(t0, t1)| s.sub_segment(t0, t1)))
        .collect()
}

/// Parts of `a` not covered by `b`.
pub fn subtract(a: &[Segment], b: &[Segment]) -> Vec<Segment> {
    let mut out = Vec::new();
    for s in a {
        let mut t = Q::zero();
        for (t0, t1) in covered(s, b) {
            if t < t0 {
                out.push(s.sub_segment(t, t0));
            }
            t = t.max(t1);
        }
        if t < Q::one() {
            out.push(s.sub_segment(t, Q::one()));
        }
    }
    out
}

/// Merge collinear overlapping or abutting pieces into maximal segments.
pub fn normalize(segs: &[Segment]) -> Vec<Segment> {
    let mut pending: Vec<Segment> = segs.to_vec();
    let mut out: Vec<Segment> = Vec::new();
    while let Some(s) = pending.pop() {
        // collect all pieces on the same line and glue their parameter intervals
        let (same, rest): (Vec<Segment>, Vec<Segment>) =
            pending.into_iter().partition(|o| s.on_line(&o.a) && s.on_line(&o.b));
        pending = rest;
        let mut iv: Vec<(Q, Q)> = vec![(Q::zero(), Q::one())];
        for o in &same {
            let (a, b) = (s.param(&o.a), s.param(&o.b));
            iv.push((a.min(b), a.max(b)));
        }
        for (t0, t1) in merge(iv) {
            out.push(s.sub_segment(t0, t1));
        }
    }
    out.sort_by(|x, y| (x.a, x.b).cmp(&(y.a, y.b)));
    out
}

/// Total length of `segs` after merging, measured with a real metric.
pub fn total_length(segs: &[Segment], to_real: &dyn Fn(&Point) -> [f64; 2]) -> f64 {
    normalize(segs)
        .iter()
        .map(|s| {
            let (a, b) = (to_real(&s.a), to_real(&s.b));
            (a[0] - b[0]).hypot(a[1] - b[1])
        })
        .sum()
}

/// Translate a set by every integer vector in `[-r, r]²`.
pub fn periodize(segs: &[Segment], r: i64) -> Vec<Segment> {
    let mut out = Vec::with_capacity(segs.len() * ((2 * r + 1) * (2 * r + 1)) as usize);
    for i in -r..=r {
        for j in -r..=r {
            let t = [Q::from_integer(i), Q::from_integer(j)];
            out.extend(segs.iter().map(|s| s.translate(&t)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(pt(a.0, a.1, 1), pt(b.0, b.1, 1))
    }

    #[test]
    fn overlap_and_subtract() {
        let s = seg((0, 0), (4, 0));
        let t = seg((1, 0), (2, 0));
        assert_eq!(s.overlap(&t), Some((q(1, 4), q(1, 2))));
        let rest = subtract(&[s], &[t]);
        assert_eq!(rest, vec![seg((0, 0), (1, 0)), seg((2, 0), (4, 0))]);
        assert!(s.overlap(&seg((4, 0), (5, 0))).is_none());
        assert!(s.overlap(&seg((0, 1), (4, 1))).is_none());
    }

    #[test]
    fn normalize_glues_pieces() {
        let n = normalize(&[seg((0, 0), (1, 1)), seg((2, 2), (1, 1)), seg((5, 0), (6, 0))]);
        assert_eq!(n.len(), 2);
        assert!(n.iter().any(|s| s.same_as(&seg((0, 0), (2, 2)))));
    }
}
