//! Born approximation for unions of small disks.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forward_sov::{CauchyData, MeasurementSetup};
use crate::geometry::Point2;
use crate::quadrature::polar_disk_rule;
use crate::scalar::{cis, imag_unit, real, Cx, Real};
use crate::specfun::{bessel01, hankel1};

/// Disjoint disks of common radius `r0` sharing the coefficients `n`, `μ`, `γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallRegionSet<T: Real> {
    pub centers: Vec<Point2<T>>,
    pub r0: T,
    pub n: Cx<T>,
    pub mu: Cx<T>,
    pub gamma: Cx<T>,
}

impl<T: Real> SmallRegionSet<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.r0 > T::zero()) {
            return Err(Error::InvalidGeometry("region radius must be positive".into()));
        }
        if self.centers.is_empty() {
            return Err(Error::InvalidGeometry("at least one region is required".into()));
        }
        for (a, ca) in self.centers.iter().enumerate() {
            for cb in &self.centers[a + 1..] {
                if (ca - cb).norm() <= T::lit(2.0) * self.r0 {
                    return Err(Error::InvalidGeometry(format!(
                        "regions at ({}, {}) and ({}, {}) overlap",
                        ca.x.to_f64(),
                        ca.y.to_f64(),
                        cb.x.to_f64(),
                        cb.y.to_f64()
                    )));
                }
            }
        }
        Ok(())
    }

    fn single(&self, c: Point2<T>) -> Self {
        Self { centers: vec![c], ..self.clone() }
    }
}

/// Quadrature orders: polar Gauss–Legendre (radial × angular) and boundary trapezoid nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BornQuadrature {
    pub radial: usize,
    pub angular: usize,
    pub boundary: usize,
}

impl Default for BornQuadrature {
    fn default() -> Self {
        Self { radial: 16, angular: 32, boundary: 64 }
    }
}

/// `Φ(x, y) = (i/4) H_0^{(1)}(k|x - y|)`.
pub fn green2d<T: Real>(x: Point2<T>, y: Point2<T>, k: T) -> Result<Cx<T>> {
    let r = (x - y).norm();
    if r == T::zero() {
        return Err(Error::SingularArgument("Green's function at coincident points".into()));
    }
    Ok(imag_unit::<T>() * hankel1(0, real(k * r))? * real(T::lit(0.25)))
}

/// `(Φ(x, y), ∇_x Φ(x, y))`.
pub fn green2d_with_gradient<T: Real>(x: Point2<T>, y: Point2<T>, k: T) -> Result<(Cx<T>, [Cx<T>; 2])> {
    let d = x - y;
    let r = d.norm();
    if r == T::zero() {
        return Err(Error::SingularArgument("Green's function at coincident points".into()));
    }
    let [_, _, h0, h1] = bessel01(real(k * r))?;
    let i4 = imag_unit::<T>() * real(T::lit(0.25));
    let g = -(i4 * h1 * real(k / r));
    Ok((i4 * h0, [g * real(d.x), g * real(d.y)]))
}

/// `𝔅(u^i)` at `ω = c + r0 (cos t, sin t)` for `u^i = e^{ik ω·ŷ}`, `ŷ = (cos φ, sin φ)`.
pub fn lb_plane_wave<T: Real>(center: Point2<T>, r0: T, t: T, phi: T, k: T, mu: Cx<T>, gamma: Cx<T>) -> Cx<T> {
    let (s, c) = t.sin_cos();
    let (ys, yc) = phi.sin_cos();
    let w = Point2::new(center.x + r0 * c, center.y + r0 * s);
    let f = cis(k * (w.x * yc + w.y * ys));
    let tau_y = -s * yc + c * ys;
    let dtau_y = -c * yc - s * ys;
    let ik = imag_unit::<T>() * real(k * r0);
    let a = ik * real(tau_y);
    let d2 = (a * a + ik * real(dtau_y)) * f;
    -(mu * d2 * real(T::one() / (r0 * r0))) + gamma * f
}

/// Born Cauchy data with the default quadrature.
pub fn born_cauchy_data<T: Real>(regions: &SmallRegionSet<T>, setup: &MeasurementSetup<T>, k: T) -> Result<CauchyData<T>> {
    born_cauchy_data_with(regions, setup, k, BornQuadrature::default())
}

/// `u^s(x, ŷ) ≈ Σ_j [∫_{D_j} k²(n-1) Φ u^i dω - ∮_{∂D_j} Φ 𝔅(u^i) ds]` and its radial derivative.
pub fn born_cauchy_data_with<T: Real>(
    regions: &SmallRegionSet<T>,
    setup: &MeasurementSetup<T>,
    k: T,
    quad: BornQuadrature,
) -> Result<CauchyData<T>> {
    regions.validate()?;
    if !(k > T::zero()) {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    for c in &regions.centers {
        if c.norm() + regions.r0 >= setup.radius_omega {
            return Err(Error::InvalidGeometry(format!(
                "region at ({}, {}) meets the measurement circle",
                c.x.to_f64(),
                c.y.to_f64()
            )));
        }
    }
    let parts: Vec<(DMatrix<Cx<T>>, DMatrix<Cx<T>>)> = regions
        .centers
        .par_iter()
        .map(|c| single_region(&regions.single(*c), setup, k, quad))
        .collect::<Result<_>>()?;
    let mut it = parts.into_iter();
    let (mut us, mut dus) = it.next().expect("validated non-empty");
    for (a, b) in it {
        us += a;
        dus += b;
    }
    let data = CauchyData { us, dus, setup: *setup, k };
    data.validate()?;
    Ok(data)
}

fn single_region<T: Real>(
    region: &SmallRegionSet<T>,
    setup: &MeasurementSetup<T>,
    k: T,
    quad: BornQuadrature,
) -> Result<(DMatrix<Cx<T>>, DMatrix<Cx<T>>)> {
    let c = region.centers[0];
    let r0 = region.r0;
    let vol = polar_disk_rule([c.x, c.y], r0, quad.radial, quad.angular);
    let nb = quad.boundary;
    let hb = T::two_pi() / T::nat(nb);
    let bnodes: Vec<(T, Point2<T>)> = (0..nb)
        .map(|b| {
            let t = hb * T::nat(b);
            (t, Point2::new(c.x + r0 * t.cos(), c.y + r0 * t.sin()))
        })
        .collect();
    let obs = setup.points();
    let dirs = setup.angles();
    let jn = setup.j;
    let contrast = real(k * k) * (region.n - Cx::new(T::one(), T::zero()));

    // Φ and ∂_r Φ from each observation point to each quadrature node, weighted
    let nodes: Vec<(Point2<T>, T)> = vol
        .iter()
        .map(|q| (Point2::new(q.x, q.y), q.w))
        .chain(bnodes.iter().map(|(_, p)| (*p, hb * r0)))
        .collect();
    let nq = nodes.len();
    let nv = vol.len();
    let mut g = DMatrix::from_element(jn, nq, Cx::new(T::zero(), T::zero()));
    let mut gr = g.clone();
    for (i, x) in obs.iter().enumerate() {
        let xhat = x / x.norm();
        for (q, (y, w)) in nodes.iter().enumerate() {
            let (phi, grad) = green2d_with_gradient(*x, *y, k)?;
            let scale = if q < nv { contrast * real(*w) } else { -real(*w) };
            g[(i, q)] = phi * scale;
            gr[(i, q)] = (grad[0] * real(xhat.x) + grad[1] * real(xhat.y)) * scale;
        }
    }
    // incident field at volume nodes, Robin operator of it at boundary nodes
    let mut src = DMatrix::from_element(nq, jn, Cx::new(T::zero(), T::zero()));
    for (j, phi) in dirs.iter().enumerate() {
        let (ys, yc) = phi.sin_cos();
        for (q, node) in vol.iter().enumerate() {
            src[(q, j)] = cis(k * (node.x * yc + node.y * ys));
        }
        for (b, (t, _)) in bnodes.iter().enumerate() {
            src[(nv + b, j)] = lb_plane_wave(c, r0, *t, *phi, k, region.mu, region.gamma);
        }
    }
    Ok((&g * &src, &gr * &src))
}
