//! Direct sampling indicator over a grid of sampling points.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forward_sov::{sov_solve, CauchyData, MeasurementSetup, ScattererConfig, Truncation};
use crate::geometry::Point2;
use crate::linalg::{frobenius, singular_values, CMatrix};
use crate::quadrature::polar_disk_rule;
use crate::scalar::{abs, cx, imag_unit, real, Cx, Real};
use crate::specfun::bessel_j01;

fn j01<T: Real>(x: T) -> (T, T) {
    let [j0, j1] = bessel_j01(real(x)).expect("real arguments inside the envelope");
    (j0.re, j1.re)
}

/// `Im Φ(x, z) = J_0(k|x - z|) / 4`.
pub fn im_phi<T: Real>(x: Point2<T>, z: Point2<T>, k: T) -> T {
    j01(k * (x - z).norm()).0 * T::lit(0.25)
}

/// `∂_{ν(x)} Im Φ(x, z) = -(k/4) J_1(k|x - z|) (x - z)·ν / |x - z|`, zero at `x = z`.
pub fn im_phi_normal_deriv<T: Real>(x: Point2<T>, z: Point2<T>, k: T, nu: Point2<T>) -> T {
    let d = x - z;
    let r = d.norm();
    if r == T::zero() {
        return T::zero();
    }
    -k * T::lit(0.25) * j01(k * r).1 * d.dot(&nu) / r
}

/// Rectangular sampling grid; `values[(iy, ix)]` is at `(xs[ix], ys[iy])`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingGrid<T: Real> {
    pub xs: Vec<T>,
    pub ys: Vec<T>,
}

impl<T: Real> SamplingGrid<T> {
    /// `n × n` equispaced points covering `[lo, hi]²` including both ends.
    pub fn square(lo: T, hi: T, n: usize) -> Result<Self> {
        Self::rect([lo, hi], [lo, hi], n, n)
    }

    pub fn rect(xr: [T; 2], yr: [T; 2], nx: usize, ny: usize) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidParameter("sampling grid must be non-empty".into()));
        }
        let axis = |r: [T; 2], n: usize| -> Vec<T> {
            if n == 1 {
                return vec![(r[0] + r[1]) * T::lit(0.5)];
            }
            (0..n).map(|i| r[0] + (r[1] - r[0]) * T::nat(i) / T::nat(n - 1)).collect()
        };
        Ok(Self { xs: axis(xr, nx), ys: axis(yr, ny) })
    }

    pub fn points(&self) -> Vec<Point2<T>> {
        self.ys.iter().flat_map(|&y| self.xs.iter().map(move |&x| Point2::new(x, y))).collect()
    }

    fn check(&self) -> Result<()> {
        if self.xs.is_empty() || self.ys.is_empty() {
            return Err(Error::InvalidParameter("sampling grid must be non-empty".into()));
        }
        Ok(())
    }
}

impl<T: Real> Default for SamplingGrid<T> {
    fn default() -> Self {
        Self::square(-T::one(), T::one(), 150).expect("non-empty")
    }
}

/// Indicator values on a grid with their normalization `(W / max W)^ρ`.
#[derive(Debug, Clone)]
pub struct IndicatorGrid<T: Real> {
    pub xs: Vec<T>,
    pub ys: Vec<T>,
    pub values: DMatrix<T>,
    pub normalized: DMatrix<T>,
    pub rho: T,
}

impl<T: Real> IndicatorGrid<T> {
    /// Wraps raw values; `normalized` uses `ρ = 1` (all zeros when `W ≡ 0`).
    pub fn from_values(grid: &SamplingGrid<T>, flat: Vec<T>) -> Self {
        let values = DMatrix::from_row_slice(grid.ys.len(), grid.xs.len(), &flat);
        let max = values.max();
        let normalized = if max > T::zero() { values.map(|w| w / max) } else { values.clone() };
        Self { xs: grid.xs.clone(), ys: grid.ys.clone(), values, normalized, rho: T::one() }
    }

    pub fn max(&self) -> T {
        self.values.max()
    }

    /// Grid point of the largest value.
    pub fn argmax(&self) -> Point2<T> {
        let (iy, ix) = self.argmax_index();
        Point2::new(self.xs[ix], self.ys[iy])
    }

    /// `(row, column)` of the largest value.
    pub fn argmax_index(&self) -> (usize, usize) {
        let mut best = (0, 0);
        for iy in 0..self.values.nrows() {
            for ix in 0..self.values.ncols() {
                if self.values[(iy, ix)] > self.values[best] {
                    best = (iy, ix);
                }
            }
        }
        best
    }
}

/// `W_nor = (W / ‖W‖_∞)^ρ`.
pub fn normalize<T: Real>(grid: &IndicatorGrid<T>, rho: T) -> Result<IndicatorGrid<T>> {
    if !(rho > T::zero() && rho.is_finite()) {
        return Err(Error::InvalidParameter(format!("rho must be positive, got {}", rho.to_f64())));
    }
    let max = grid.max();
    if !(max > T::zero()) {
        return Err(Error::InvalidParameter("cannot normalize an all-zero indicator".into()));
    }
    let mut out = grid.clone();
    out.normalized = grid.values.map(|w| (w / max).powf(rho));
    out.rho = rho;
    Ok(out)
}

/// Riemann-sum weights and kernel columns on the measurement circle.
fn measurement_frame<T: Real>(setup: &MeasurementSetup<T>) -> (Vec<Point2<T>>, Vec<Point2<T>>, T) {
    let pts = setup.points();
    let normals = setup.directions();
    let w = T::two_pi() * setup.radius_omega / T::nat(setup.j);
    (pts, normals, w)
}

fn check_data<T: Real>(us: &CMatrix<T>, setup: &MeasurementSetup<T>) -> Result<()> {
    if us.nrows() != setup.j {
        return Err(Error::ShapeMismatch { expected: format!("{} observation rows", setup.j), found: us.nrows().to_string() });
    }
    Ok(())
}

/// `W(z) = Σ_j |Σ_i w [us(i,j) ∂_ν Im Φ(x_i, z) - dus(i,j) Im Φ(x_i, z)]|` at each point.
pub fn dsm_values<T: Real>(data: &CauchyData<T>, points: &[Point2<T>]) -> Result<Vec<T>> {
    check_data(&data.us, &data.setup)?;
    let (x, nu, w) = measurement_frame(&data.setup);
    let k = data.k;
    let ncols = data.us.ncols();
    Ok(points
        .par_iter()
        .map(|&z| {
            let mut a = Vec::with_capacity(x.len());
            let mut b = Vec::with_capacity(x.len());
            for i in 0..x.len() {
                a.push(im_phi_normal_deriv(x[i], z, k, nu[i]) * w);
                b.push(im_phi(x[i], z, k) * w);
            }
            let mut total = T::zero();
            for j in 0..ncols {
                let mut acc = Cx::new(T::zero(), T::zero());
                for i in 0..x.len() {
                    acc += data.us[(i, j)].scale(a[i]) - data.dus[(i, j)].scale(b[i]);
                }
                total += abs(acc);
            }
            total
        })
        .collect())
}

/// Indicator from Cauchy data on a grid.
pub fn dsm_indicator<T: Real>(data: &CauchyData<T>, grid: &SamplingGrid<T>) -> Result<IndicatorGrid<T>> {
    grid.check()?;
    Ok(IndicatorGrid::from_values(grid, dsm_values(data, &grid.points())?))
}

/// Far-field variant: `∂_ν u^s` replaced by `ik u^s`.
pub fn dsm_far_values<T: Real>(us: &CMatrix<T>, setup: &MeasurementSetup<T>, k: T, points: &[Point2<T>]) -> Result<Vec<T>> {
    check_data(us, setup)?;
    let (x, nu, w) = measurement_frame(setup);
    let ik = imag_unit::<T>() * real(k);
    Ok(points
        .par_iter()
        .map(|&z| {
            let c: Vec<Cx<T>> = (0..x.len())
                .map(|i| (real(im_phi_normal_deriv(x[i], z, k, nu[i])) - ik * real(im_phi(x[i], z, k))) * real(w))
                .collect();
            let mut total = T::zero();
            for j in 0..us.ncols() {
                let mut acc = Cx::new(T::zero(), T::zero());
                for i in 0..x.len() {
                    acc += us[(i, j)] * c[i];
                }
                total += abs(acc);
            }
            total
        })
        .collect())
}

pub fn dsm_indicator_far<T: Real>(us: &CMatrix<T>, setup: &MeasurementSetup<T>, k: T, grid: &SamplingGrid<T>) -> Result<IndicatorGrid<T>> {
    grid.check()?;
    Ok(IndicatorGrid::from_values(grid, dsm_far_values(us, setup, k, &grid.points())?))
}

/// Quadrature sizes for the volume-plus-boundary form of the indicator.
#[derive(Debug, Clone, Copy)]
pub struct InteriorFormRule {
    pub radial: usize,
    pub angular: usize,
    pub boundary: usize,
}

impl Default for InteriorFormRule {
    fn default() -> Self {
        Self { radial: 24, angular: 64, boundary: 128 }
    }
}

/// `W(z) = Σ_j |∫_D k²(n-1) Im Φ u dx - ∮_{∂D} Im Φ 𝔅(u) ds|` for a centered disk,
/// with the total field taken from the series solution.
pub fn dsm_interior_values<T: Real>(
    cfg: &ScattererConfig<T>,
    angles: &[T],
    rule: InteriorFormRule,
    points: &[Point2<T>],
) -> Result<Vec<T>> {
    let sol = sov_solve(cfg, Truncation::default(), None).map_err(|e| match e {
        Error::WrongSolver(m) => Error::UnsupportedDomain { function: "dsm_indicator_interior_form", detail: m },
        other => other,
    })?;
    let r = sol.radius;
    let k = cfg.k;
    let contrast = (cfg.n - Cx::new(T::one(), T::zero())) * real(k * k);
    let vol = polar_disk_rule([T::zero(), T::zero()], r, rule.radial, rule.angular);
    let bh = T::two_pi() / T::nat(rule.boundary);
    let bpts: Vec<(T, Point2<T>)> = (0..rule.boundary)
        .map(|m| {
            let th = bh * T::nat(m);
            (th, Point2::new(r * th.cos(), r * th.sin()))
        })
        .collect();
    let nq = vol.len() + bpts.len();
    let nj = angles.len();
    // columns: incident directions; rows: volume nodes then boundary nodes, weights folded in
    let mut u = DMatrix::from_element(nq, nj, Cx::new(T::zero(), T::zero()));
    for (j, &phi) in angles.iter().enumerate() {
        for (q, node) in vol.iter().enumerate() {
            u[(q, j)] = contrast * sol.interior(Point2::new(node.x, node.y), phi)? * real(node.w);
        }
        for (m, &(th, _)) in bpts.iter().enumerate() {
            u[(vol.len() + m, j)] = -(sol.robin_trace(th, phi)? * real(r * bh));
        }
    }
    let nodes: Vec<Point2<T>> = vol.iter().map(|n| Point2::new(n.x, n.y)).chain(bpts.iter().map(|b| b.1)).collect();
    Ok(points
        .par_iter()
        .map(|&z| {
            let g: Vec<T> = nodes.iter().map(|&x| im_phi(x, z, k)).collect();
            let mut total = T::zero();
            for j in 0..nj {
                let mut acc = Cx::new(T::zero(), T::zero());
                for q in 0..nq {
                    acc += u[(q, j)].scale(g[q]);
                }
                total += abs(acc);
            }
            total
        })
        .collect())
}

pub fn dsm_indicator_interior_form<T: Real>(
    cfg: &ScattererConfig<T>,
    grid: &SamplingGrid<T>,
    angles: &[T],
    rule: InteriorFormRule,
) -> Result<IndicatorGrid<T>> {
    grid.check()?;
    Ok(IndicatorGrid::from_values(grid, dsm_interior_values(cfg, angles, rule, &grid.points())?))
}

/// Matrix norm used to scale the noise matrices to unit size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseNorm {
    #[default]
    Frobenius,
    Spectral,
}

/// Multiplicative noise `us (1 + δ E1)`, `dus (1 + δ E2)`.
#[derive(Debug, Clone, Copy)]
pub struct NoiseModel<T: Real> {
    pub delta: T,
    pub seed: u64,
    pub norm: NoiseNorm,
}

impl<T: Real> NoiseModel<T> {
    pub fn new(delta: T, seed: u64) -> Self {
        Self { delta, seed, norm: NoiseNorm::Frobenius }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta >= T::zero() && self.delta < T::one()) {
            return Err(Error::InvalidParameter(format!("noise level must lie in [0, 1), got {}", self.delta.to_f64())));
        }
        Ok(())
    }

    /// `E1`, `E2` with uniform real and imaginary parts in `[-1, 1]`, each scaled to unit norm.
    pub fn matrices(&self, rows: usize, cols: usize) -> (CMatrix<T>, CMatrix<T>) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut draw = || {
            let m = DMatrix::from_fn(rows, cols, |_, _| {
                let re: f64 = rng.random_range(-1.0..=1.0);
                let im: f64 = rng.random_range(-1.0..=1.0);
                cx::<T>(re, im)
            });
            let scale = match self.norm {
                NoiseNorm::Frobenius => frobenius(&m),
                NoiseNorm::Spectral => singular_values(&m)[0],
            };
            m.map(|e| e.unscale(scale))
        };
        let e1 = draw();
        let e2 = draw();
        (e1, e2)
    }
}

/// `a(i,j) (1 + δ E(i,j))`.
pub fn perturb<T: Real>(a: &CMatrix<T>, e: &CMatrix<T>, delta: T) -> CMatrix<T> {
    a.zip_map(e, |x, n| x * (Cx::new(T::one(), T::zero()) + n.scale(delta)))
}

/// Applies the noise model to both Cauchy-data matrices.
pub fn add_noise<T: Real>(data: &CauchyData<T>, model: &NoiseModel<T>) -> Result<CauchyData<T>> {
    model.validate()?;
    if model.delta == T::zero() {
        return Ok(data.clone());
    }
    let (e1, e2) = model.matrices(data.us.nrows(), data.us.ncols());
    Ok(CauchyData { us: perturb(&data.us, &e1, model.delta), dus: perturb(&data.dus, &e2, model.delta), setup: data.setup, k: data.k })
}
