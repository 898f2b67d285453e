//! Transition ramps `ν` and the cos/sin profile built from them.

use std::f64::consts::FRAC_PI_2;

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `ν(x)`: 0 below 0, 1 above 1, and on `[0, 1]` the linear ramp
/// (`p_smooth = 0`) or the `C^p` polynomial smoothstep of order `p_smooth`.
///
/// `ν(x) + ν(1 − x) = 1` holds for every order.
pub fn ramp(x: f64, p_smooth: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    if x > 0.5 {
        // evaluate the larger half through the complement for symmetric rounding
        return 1.0 - ramp(1.0 - x, p_smooth);
    }
    let p = p_smooth as u64;
    let poly: f64 = (0..=p)
        .map(|k| binomial(p + k, k) * binomial(2 * p + 1, p - k) * (-x).powi(k as i32))
        .sum();
    x.powi(p_smooth as i32 + 1) * poly
}

/// `(cos(ν(t)·π/2), sin(ν(t)·π/2))`; the squares sum to one.
pub fn profile(t: f64, p_smooth: u32) -> (f64, f64) {
    match ramp(t, p_smooth) {
        r if r <= 0.0 => (1.0, 0.0),
        r if r >= 1.0 => (0.0, 1.0),
        r => ((r * FRAC_PI_2).cos(), (r * FRAC_PI_2).sin()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knots_and_midpoint() {
        for p in 0..5 {
            assert_eq!(ramp(-1.0, p), 0.0);
            assert_eq!(ramp(2.0, p), 1.0);
            assert!((ramp(0.5, p) - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn low_orders_match_closed_forms() {
        assert!((ramp(0.3, 0) - 0.3).abs() < 1e-15);
        assert!((ramp(0.25, 1) - 5.0 / 32.0).abs() < 1e-15);
        let x: f64 = 0.2;
        let quintic = 6.0 * x.powi(5) - 15.0 * x.powi(4) + 10.0 * x.powi(3);
        assert!((ramp(x, 2) - quintic).abs() < 1e-15);
    }

    #[test]
    fn smooth_at_knots() {
        // first derivative vanishes at 0 and 1 for p ≥ 1
        let h = 1e-6;
        for p in 1..4 {
            assert!(ramp(h, p) / h < 1e-4);
            assert!((1.0 - ramp(1.0 - h, p)) / h < 1e-4);
        }
    }

    #[test]
    fn profile_is_unit() {
        for i in 0..=100 {
            let (c, s) = profile(i as f64 / 100.0, 2);
            assert!((c * c + s * s - 1.0).abs() < 1e-15);
        }
    }
}
