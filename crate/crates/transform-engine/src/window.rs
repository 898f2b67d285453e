//! Coefficient windows: one period of a sublattice of `Λ` inside the periodic `n×n` image.
//!
//! With the Hermite basis `(a, 0)`, `(b, d)` the window is the `(n/d)×(n/a)`
//! array of `t = (t1, t2)`, stored row-major with row `t2`; entry `t` sits at
//! the point `((a·t1 + b·t2) mod n, d·t2)`.

use lattice_core::{hnf, IMat2};

use crate::error::{TransformError, TransformResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub n: usize,
    /// Hermite form of the lattice, coordinates of `Λ`.
    pub lattice: IMat2,
    pub rows: usize,
    pub cols: usize,
}

impl Window {
    pub fn new(lattice: &IMat2, n: usize) -> TransformResult<Self> {
        let h = hnf::hnf(lattice)?;
        let (a, d) = (h[0][0] as usize, h[1][1] as usize);
        if n % a != 0 || n % d != 0 {
            return Err(TransformError::DimensionMismatch(format!(
                "a {n}×{n} period does not contain the lattice {h:?} periodically"
            )));
        }
        Ok(Self { n, lattice: h, rows: n / d, cols: n / a })
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Image index (`c2·n + c1`) of window entry `i`.
    #[inline]
    pub fn position(&self, i: usize) -> usize {
        let (t1, t2) = ((i % self.cols) as i64, (i / self.cols) as i64);
        let [[a, b], [_, d]] = self.lattice;
        let n = self.n as i64;
        let c1 = (a * t1 + b * t2).rem_euclid(n);
        (d * t2 * n + c1) as usize
    }

    /// All image indices, in window order.
    pub fn positions(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.position(i)).collect()
    }

    /// Window entry at the lattice point `c` (coordinates of `Λ`), if `c` is in the lattice.
    pub fn locate(&self, c: [i64; 2]) -> Option<usize> {
        if !hnf::contains(&self.lattice, c) {
            return None;
        }
        let [[a, b], [_, d]] = self.lattice;
        let n = self.n as i64;
        let t2 = c[1].rem_euclid(n) / d;
        let t1 = (c[0] - b * t2).rem_euclid(n) / a;
        Some((t2 * self.cols as i64 + t1) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_is_a_bijection_onto_the_lattice() {
        let n = 16;
        for lat in [[[2, 0], [0, 2]], [[4, 4], [-4, -2]], [[-4, 2], [4, 2]]] {
            let w = Window::new(&lat, n).unwrap();
            let det = hnf::det(&lat).unsigned_abs() as usize;
            assert_eq!(w.len() * det, n * n);
            let pos = w.positions();
            let mut seen = vec![false; n * n];
            for (i, &p) in pos.iter().enumerate() {
                assert!(!seen[p]);
                seen[p] = true;
                let c = [(p % n) as i64, (p / n) as i64];
                assert!(hnf::contains(&lat, c));
                assert_eq!(w.locate(c), Some(i));
                assert_eq!(w.locate([c[0] + n as i64, c[1] - n as i64]), Some(i));
            }
        }
    }

    #[test]
    fn rejects_incommensurate_period() {
        assert!(Window::new(&[[4, 0], [0, 2]], 6).is_err());
    }
}
