//! Gauss–Legendre rules and the polar tensor rule on disks.

use crate::scalar::Real;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1, "Gauss-Legendre needs at least one node");
    let mut x = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        dp = if d.is_finite() { d } else { dp };
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = T::lit(-z);
        x[n - 1 - i] = T::lit(z);
        w[i] = T::lit(wi);
        w[n - 1 - i] = T::lit(wi);
    }
    if n % 2 == 1 {
        x[n / 2] = T::zero();
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// A planar quadrature point with weight (area element included).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaNode<T: Real> {
    pub x: T,
    pub y: T,
    pub w: T,
}

/// Polar tensor rule on the disk `|x - c| < r`: Gauss–Legendre in radius, trapezoid in angle.
pub fn polar_disk_rule<T: Real>(center: [T; 2], r: T, n_radial: usize, n_angular: usize) -> Vec<AreaNode<T>> {
    let (xr, wr) = gauss_legendre::<T>(n_radial);
    let half = T::lit(0.5);
    let h = T::two_pi() / T::nat(n_angular);
    let mut out = Vec::with_capacity(n_radial * n_angular);
    for (xi, wi) in xr.iter().zip(&wr) {
        let rho = half * r * (*xi + T::one());
        let wrho = half * r * *wi * rho * h;
        for j in 0..n_angular {
            let (s, c) = (h * T::nat(j)).sin_cos();
            out.push(AreaNode { x: center[0] + rho * c, y: center[1] + rho * s, w: wrho });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        for n in 1..=24 {
            let (x, w) = gauss_legendre::<f64>(n);
            for deg in 0..(2 * n) {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} deg={deg}: {q} vs {exact}");
            }
        }
    }

    #[test]
    fn f32_rule_is_consistent() {
        let (x, w) = gauss_legendre::<f32>(8);
        let s: f32 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-5);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn polar_rule_area_and_moment() {
        let nodes = polar_disk_rule::<f64>([0.5, -0.5], 0.1, 16, 32);
        let area: f64 = nodes.iter().map(|n| n.w).sum();
        assert!((area - std::f64::consts::PI * 0.01).abs() < 1e-15);
        let second: f64 = nodes.iter().map(|n| n.w * ((n.x - 0.5).powi(2) + (n.y + 0.5).powi(2))).sum();
        assert!((second - std::f64::consts::PI * 1e-4 / 2.0).abs() < 1e-16);
    }
}
