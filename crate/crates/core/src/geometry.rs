//! Closed parameterized curves, their Frenet data, and periodic quadrature.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::Vector2;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub type Point2<T> = Vector2<T>;

/// `[z, z', z'', z''']` at a parameter value.
pub type Jet<T> = [Point2<T>; 4];

type JetFn<T> = Arc<dyn Fn(T) -> Jet<T> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Circle,
    Ellipse,
    Kite,
    Custom,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CurveKind::Circle => "circle",
            CurveKind::Ellipse => "ellipse",
            CurveKind::Kite => "kite",
            CurveKind::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// A smooth, 2π-periodic, counterclockwise closed curve with analytic derivatives.
///
/// Parameters per kind:
/// - circle: `[cx, cy, R]` (or `[R]` for a centered circle)
/// - ellipse: `[a, b]` or `[a, b, cx, cy]`
/// - kite: `[]` or `[cx, cy]`; shape `(-1.5 sin t, cos t + 0.65 cos 2t - 0.65)`
#[derive(Clone)]
pub struct BoundaryCurve<T: Real> {
    kind: CurveKind,
    params: Vec<T>,
    custom: Option<JetFn<T>>,
}

impl<T: Real> fmt::Debug for BoundaryCurve<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryCurve")
            .field("kind", &self.kind)
            .field("params", &self.params.iter().map(|p| p.to_f64()).collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveFrame<T: Real> {
    pub point: Point2<T>,
    pub tangent_unit: Point2<T>,
    pub normal_unit: Point2<T>,
    pub speed: T,
}

/// Equispaced trapezoid rule on a curve; weights include the speed factor.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T: Real> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> T {
        self.weights.iter().fold(T::zero(), |a, &w| a + w)
    }
}

pub fn make_curve<T: Real>(kind: CurveKind, params: &[T]) -> Result<BoundaryCurve<T>> {
    let bad = |msg: String| Err(Error::InvalidGeometry(msg));
    let finite = params.iter().all(|p| p.is_finite());
    if !finite {
        return bad(format!("{kind} parameters must be finite"));
    }
    let params = match kind {
        CurveKind::Circle => match params.len() {
            1 => vec![T::zero(), T::zero(), params[0]],
            3 => params.to_vec(),
            n => return bad(format!("circle expects [R] or [cx, cy, R], got {n} values")),
        },
        CurveKind::Ellipse => match params.len() {
            2 => vec![params[0], params[1], T::zero(), T::zero()],
            4 => params.to_vec(),
            n => return bad(format!("ellipse expects [a, b] or [a, b, cx, cy], got {n} values")),
        },
        CurveKind::Kite => match params.len() {
            0 => vec![T::zero(), T::zero()],
            2 => params.to_vec(),
            n => return bad(format!("kite expects [] or [cx, cy], got {n} values")),
        },
        CurveKind::Custom => {
            return bad("custom curves are built with BoundaryCurve::custom".into());
        }
    };
    match kind {
        CurveKind::Circle if params[2] <= T::zero() => {
            bad(format!("circle radius must be positive, got {}", params[2].to_f64()))
        }
        CurveKind::Ellipse if params[0] <= T::zero() || params[1] <= T::zero() => bad(format!(
            "ellipse semi-axes must be positive, got ({}, {})",
            params[0].to_f64(),
            params[1].to_f64()
        )),
        _ => Ok(BoundaryCurve { kind, params, custom: None }),
    }
}

impl<T: Real> BoundaryCurve<T> {
    pub fn circle(center: [T; 2], radius: T) -> Result<Self> {
        make_curve(CurveKind::Circle, &[center[0], center[1], radius])
    }

    pub fn disk(radius: T) -> Result<Self> {
        make_curve(CurveKind::Circle, &[radius])
    }

    pub fn ellipse(a: T, b: T) -> Result<Self> {
        make_curve(CurveKind::Ellipse, &[a, b])
    }

    pub fn kite() -> Self {
        make_curve(CurveKind::Kite, &[]).expect("kite has no invalid parameters")
    }

    /// User curve from a jet function returning `[z, z', z'', z''']`.
    pub fn custom(jet: impl Fn(T) -> Jet<T> + Send + Sync + 'static) -> Self {
        BoundaryCurve { kind: CurveKind::Custom, params: Vec::new(), custom: Some(Arc::new(jet)) }
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    /// `Some((center, R))` for circles.
    pub fn as_circle(&self) -> Option<(Point2<T>, T)> {
        match self.kind {
            CurveKind::Circle => {
                Some((Point2::new(self.params[0], self.params[1]), self.params[2]))
            }
            _ => None,
        }
    }

    /// Radius of a circle centered at the origin.
    pub fn centered_disk_radius(&self) -> Option<T> {
        let tol = T::lit(1e-14);
        self.as_circle()
            .filter(|(c, r)| c.x.abs() <= tol * *r && c.y.abs() <= tol * *r)
            .map(|(_, r)| r)
    }

    pub fn jet(&self, t: T) -> Jet<T> {
        let (s, c) = t.sin_cos();
        match self.kind {
            CurveKind::Circle => {
                let (cx, cy, r) = (self.params[0], self.params[1], self.params[2]);
                [
                    Point2::new(cx + r * c, cy + r * s),
                    Point2::new(-r * s, r * c),
                    Point2::new(-r * c, -r * s),
                    Point2::new(r * s, -r * c),
                ]
            }
            CurveKind::Ellipse => {
                let (a, b, cx, cy) = (self.params[0], self.params[1], self.params[2], self.params[3]);
                [
                    Point2::new(cx + a * c, cy + b * s),
                    Point2::new(-a * s, b * c),
                    Point2::new(-a * c, -b * s),
                    Point2::new(a * s, -b * c),
                ]
            }
            CurveKind::Kite => {
                let (cx, cy) = (self.params[0], self.params[1]);
                let w = T::lit(1.5);
                let q = T::lit(0.65);
                let two = T::lit(2.0);
                let (s2, c2) = (two * t).sin_cos();
                [
                    Point2::new(cx - w * s, cy + c + q * c2 - q),
                    Point2::new(-w * c, -s - two * q * s2),
                    Point2::new(w * s, -c - T::lit(4.0) * q * c2),
                    Point2::new(w * c, s + T::lit(8.0) * q * s2),
                ]
            }
            CurveKind::Custom => (self.custom.as_ref().expect("custom curve has a jet"))(t),
        }
    }

    pub fn point(&self, t: T) -> Point2<T> {
        self.jet(t)[0]
    }

    pub fn d1(&self, t: T) -> Point2<T> {
        self.jet(t)[1]
    }

    pub fn d2(&self, t: T) -> Point2<T> {
        self.jet(t)[2]
    }

    pub fn d3(&self, t: T) -> Point2<T> {
        self.jet(t)[3]
    }

    pub fn frame(&self, t: T) -> CurveFrame<T> {
        curve_frame(self, t)
    }

    /// Area via Green's theorem (positive for counterclockwise curves).
    pub fn area(&self) -> T {
        let n = 512;
        let h = T::two_pi() / T::nat(n);
        let mut acc = T::zero();
        for i in 0..n {
            let [z, d, _, _] = self.jet(h * T::nat(i));
            acc += z.x * d.y - z.y * d.x;
        }
        acc * h / T::lit(2.0)
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point2<T> {
        let n = 512;
        let h = T::two_pi() / T::nat(n);
        let (mut ax, mut ay) = (T::zero(), T::zero());
        for i in 0..n {
            let [z, d, _, _] = self.jet(h * T::nat(i));
            ax += z.x * z.x * d.y;
            ay -= z.y * z.y * d.x;
        }
        let half = T::lit(0.5);
        let a = self.area();
        Point2::new(ax * h * half / a, ay * h * half / a)
    }

    pub fn perimeter(&self, n: usize) -> Result<T> {
        Ok(periodic_quadrature(self, n)?.total_weight())
    }

    /// Dense polygon used for point-location and distance queries.
    pub fn polygon(&self, n: usize) -> Vec<Point2<T>> {
        let h = T::two_pi() / T::nat(n);
        (0..n).map(|i| self.point(h * T::nat(i))).collect()
    }

    /// Point-in-curve test; analytic for circles and ellipses, polygonal (4096 sides) otherwise.
    pub fn contains(&self, p: Point2<T>) -> bool {
        match self.kind {
            CurveKind::Circle => {
                let (c, r) = self.as_circle().unwrap();
                (p - c).norm_squared() < r * r
            }
            CurveKind::Ellipse => {
                let (a, b) = (self.params[0], self.params[1]);
                let x = (p.x - self.params[2]) / a;
                let y = (p.y - self.params[3]) / b;
                x * x + y * y < T::one()
            }
            _ => point_in_polygon(&self.polygon(4096), p),
        }
    }

    /// Whether `p` lies inside the curve scaled by `factor` about its area centroid.
    pub fn contains_dilated(&self, p: Point2<T>, factor: T) -> bool {
        let c = self.centroid();
        self.contains(c + (p - c) / factor)
    }

    /// Euclidean distance from `p` to the closed region bounded by the curve.
    pub fn distance(&self, p: Point2<T>) -> T {
        if self.contains(p) {
            return T::zero();
        }
        self.distance_to_curve(p)
    }

    /// Euclidean distance from `p` to the curve itself (inside or outside).
    pub fn distance_to_curve(&self, p: Point2<T>) -> T {
        if let Some((c, r)) = self.as_circle() {
            return ((p - c).norm() - r).abs();
        }
        let n = 2048;
        let h = T::two_pi() / T::nat(n);
        let mut best_t = T::zero();
        let mut best = T::max_value().unwrap();
        for i in 0..n {
            let t = h * T::nat(i);
            let d = (self.point(t) - p).norm_squared();
            if d < best {
                best = d;
                best_t = t;
            }
        }
        // Newton on d/dt |z(t) - p|^2 / 2
        let mut t = best_t;
        for _ in 0..20 {
            let [z, d1, d2, _] = self.jet(t);
            let r = z - p;
            let g = r.dot(&d1);
            let gp = d1.dot(&d1) + r.dot(&d2);
            if gp <= T::zero() {
                break;
            }
            let step = g / gp;
            t -= step;
            if step.abs() < T::lit(1e-15) {
                break;
            }
        }
        (self.point(t) - p).norm().min(best.sqrt())
    }

    /// Largest `|z(t)|` over a dense sample.
    pub fn max_radius(&self) -> T {
        self.polygon(2048).iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }
}

pub fn curve_frame<T: Real>(curve: &BoundaryCurve<T>, t: T) -> CurveFrame<T> {
    let [z, d, _, _] = curve.jet(t);
    let speed = d.norm();
    let tangent_unit = d / speed;
    CurveFrame {
        point: z,
        tangent_unit,
        normal_unit: Point2::new(tangent_unit.y, -tangent_unit.x),
        speed,
    }
}

pub fn periodic_quadrature<T: Real>(curve: &BoundaryCurve<T>, n: usize) -> Result<QuadratureRule<T>> {
    if n < 4 {
        return Err(Error::InvalidDiscretization(format!("periodic quadrature needs N >= 4, got {n}")));
    }
    let h = T::two_pi() / T::nat(n);
    let nodes: Vec<T> = (0..n).map(|i| h * T::nat(i)).collect();
    let weights = nodes.iter().map(|&t| h * curve.d1(t).norm()).collect();
    Ok(QuadratureRule { nodes, weights })
}

/// Equispaced parameter nodes `2πi/n`.
pub fn parameter_nodes<T: Real>(n: usize) -> Vec<T> {
    let h = T::two_pi() / T::nat(n);
    (0..n).map(|i| h * T::nat(i)).collect()
}

fn point_in_polygon<T: Real>(poly: &[Point2<T>], p: Point2<T>) -> bool {
    let mut inside = false;
    let n = poly.len();
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// Angle `2π(j)/J` for `j = 0..J`, as `f64` for configuration echoes.
pub fn direction_angles(j: usize) -> Vec<f64> {
    (0..j).map(|i| 2.0 * PI * i as f64 / j as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameterization_examples() {
        let c = BoundaryCurve::<f64>::disk(0.5).unwrap();
        assert_eq!(c.point(0.0), Point2::new(0.5, 0.0));
        let e = BoundaryCurve::<f64>::ellipse(1.0, 0.9).unwrap();
        let p = e.point(PI / 2.0);
        assert!(p.x.abs() < 1e-16 && (p.y - 0.9).abs() < 1e-16);
        let k = BoundaryCurve::<f64>::kite();
        assert!((k.point(0.0) - Point2::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(matches!(BoundaryCurve::<f64>::disk(0.0), Err(Error::InvalidGeometry(_))));
        assert!(matches!(BoundaryCurve::<f64>::ellipse(1.0, -0.1), Err(Error::InvalidGeometry(_))));
        assert!(make_curve::<f64>(CurveKind::Circle, &[1.0, 2.0]).is_err());
        assert!(make_curve::<f64>(CurveKind::Circle, &[f64::NAN]).is_err());
    }

    #[test]
    fn frames() {
        let c = BoundaryCurve::<f64>::disk(2.0).unwrap();
        let f = c.frame(0.0);
        assert!((f.normal_unit - Point2::new(1.0, 0.0)).norm() < 1e-15);
        assert!((f.speed - 2.0).abs() < 1e-15);
        let f = c.frame(PI / 2.0);
        assert!((f.normal_unit - Point2::new(0.0, 1.0)).norm() < 1e-15);
        assert!((f.tangent_unit - Point2::new(-1.0, 0.0)).norm() < 1e-15);
        let e = BoundaryCurve::<f64>::ellipse(1.0, 0.9).unwrap();
        let f = e.frame(0.0);
        assert!((f.normal_unit - Point2::new(1.0, 0.0)).norm() < 1e-15);
        assert!((f.speed - 0.9).abs() < 1e-15);
    }

    #[test]
    fn quadrature_rejects_small_n() {
        let c = BoundaryCurve::<f64>::disk(1.0).unwrap();
        assert!(matches!(periodic_quadrature(&c, 3), Err(Error::InvalidDiscretization(_))));
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let h = 1e-5;
        for curve in [
            BoundaryCurve::<f64>::circle([0.3, -0.2], 0.7).unwrap(),
            BoundaryCurve::ellipse(1.0, 0.8).unwrap(),
            BoundaryCurve::kite(),
        ] {
            for i in 0..13 {
                let t = 0.37 + i as f64 * 0.5;
                let j = curve.jet(t);
                let (jp, jm) = (curve.jet(t + h), curve.jet(t - h));
                for d in 0..3 {
                    let fd = (jp[d] - jm[d]) / (2.0 * h);
                    assert!((fd - j[d + 1]).norm() < 1e-8, "{:?} d{} at {}", curve.kind(), d + 1, t);
                }
            }
        }
    }

    #[test]
    fn centroid_and_containment() {
        let c = BoundaryCurve::<f64>::circle([0.3, -0.2], 0.7).unwrap();
        let g = c.centroid();
        assert!((g - Point2::new(0.3, -0.2)).norm() < 1e-13);
        assert!((c.area() - PI * 0.49).abs() < 1e-13);
        let k = BoundaryCurve::<f64>::kite();
        assert!(k.contains(Point2::new(0.0, 0.0)));
        assert!(!k.contains(Point2::new(0.0, 1.1)));
        assert!(k.contains_dilated(Point2::new(0.0, 1.1), 1.5));
        assert!((k.distance(Point2::new(0.0, 3.0)) - 2.0).abs() < 1e-10);
    }
}
