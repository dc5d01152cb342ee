//! Single-layer boundary integral solver for arbitrary smooth scatterers.
//!
//! Boundary operators are discretized on `N_c` equispaced parameter nodes with
//! the logarithmic-splitting trigonometric quadrature; the tangential second
//! derivative of the interior single layer uses centered finite differences in
//! the curve parameter with step `h`.

use nalgebra::{ComplexField, DMatrix};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forward_sov::{plane_wave, CauchyData, MeasurementSetup, ScattererConfig};
use crate::geometry::{BoundaryCurve, Point2};
use crate::linalg::{max_abs, relative_residual, CMatrix, Factorized};
use crate::scalar::{cis, imag_unit, real, Cx, Real};
use crate::specfun::bessel01;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Default finite-difference step of the tangential operator.
pub const DEFAULT_FD_STEP: f64 = 0.01;

/// Boundary samples at the collocation nodes.
#[derive(Debug, Clone)]
pub struct BoundaryNodes<T: Real> {
    pub t: Vec<T>,
    pub points: Vec<Point2<T>>,
    pub d1: Vec<Point2<T>>,
    pub d2: Vec<Point2<T>>,
    pub speed: Vec<T>,
    pub normals: Vec<Point2<T>>,
    /// Trapezoid weights `(2π/N) |z'(t_j)|`.
    pub weights: Vec<T>,
}

impl<T: Real> BoundaryNodes<T> {
    pub fn new(curve: &BoundaryCurve<T>, n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidDiscretization(format!("need at least 4 collocation nodes, got {n}")));
        }
        let h = T::two_pi() / T::nat(n);
        let t: Vec<T> = (0..n).map(|i| h * T::nat(i)).collect();
        let jets: Vec<_> = t.iter().map(|&s| curve.jet(s)).collect();
        let speed: Vec<T> = jets.iter().map(|j| j[1].norm()).collect();
        Ok(Self {
            points: jets.iter().map(|j| j[0]).collect(),
            d1: jets.iter().map(|j| j[1]).collect(),
            d2: jets.iter().map(|j| j[2]).collect(),
            normals: jets.iter().zip(&speed).map(|(j, s)| Point2::new(j[1].y, -j[1].x) / *s).collect(),
            weights: speed.iter().map(|s| *s * h).collect(),
            speed,
            t,
        })
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

/// Weights `R_j(t)` of `∫ ln(4 sin²((t-s)/2)) f(s) ds ≈ Σ_j R_j(t) f(s_j)` for
/// `t = t_i + shift`, indexed by `(i - j) mod N`.
pub fn log_weights<T: Real>(n: usize, shift: T) -> Vec<T> {
    let h = T::two_pi() / T::nat(n);
    let half = n / 2;
    let even = n % 2 == 0;
    let top = if even { half - 1 } else { half };
    let scale = -T::lit(4.0) * T::pi() / T::nat(n);
    (0..n)
        .map(|m| {
            let d = h * T::nat(m) + shift;
            let mut acc = T::zero();
            for q in 1..=top {
                acc += (T::nat(q) * d).cos() / T::nat(q);
            }
            if even {
                acc += (T::nat(half) * d).cos() / T::nat(n);
            }
            scale * acc
        })
        .collect()
}

/// Validates `κ` and maps a `-0` imaginary part to `+0` (principal branches read from above).
fn check_wavenumber<T: Real>(kappa: Cx<T>) -> Result<Cx<T>> {
    if kappa.re == T::zero() && kappa.im == T::zero() {
        return Err(Error::UnsupportedDomain {
            function: "boundary operators",
            detail: "wavenumber 0 (Laplace kernel) is not supported".into(),
        });
    }
    if !(kappa.re.is_finite() && kappa.im.is_finite()) {
        return Err(Error::InvalidParameter("wavenumber must be finite".into()));
    }
    Ok(Cx::new(kappa.re, kappa.im + T::zero()))
}

struct RowCtx<'a, T: Real> {
    nodes: &'a BoundaryNodes<T>,
    kappa: Cx<T>,
    logw: &'a [T],
    /// `ln(κ/2)` for the diagonal limit
    log_half_kappa: Cx<T>,
}

/// One row of `S` (and optionally `D^T`) at the node `t_i`.
fn layer_row<T: Real>(ctx: &RowCtx<'_, T>, i: usize, with_dt: bool) -> Result<(Vec<Cx<T>>, Vec<Cx<T>>)> {
    let nodes = ctx.nodes;
    let n = nodes.len();
    let h = T::two_pi() / T::nat(n);
    let four_pi = T::lit(4.0) * T::pi();
    let i4 = imag_unit::<T>() * real(T::lit(0.25));
    let kappa = ctx.kappa;
    let t = nodes.t[i];
    let (x, nx) = (nodes.points[i], nodes.normals[i]);
    let mut s_row = Vec::with_capacity(n);
    let mut d_row = Vec::with_capacity(if with_dt { n } else { 0 });
    for j in 0..n {
        let wlog = ctx.logw[(i + n - j) % n];
        let sj = nodes.speed[j];
        if i == j {
            let diag = (imag_unit::<T>() * real(T::lit(0.25))
                - real(T::lit(EULER_GAMMA) / T::two_pi())
                - (ctx.log_half_kappa + real(sj.ln())).unscale(T::two_pi()))
                * real(sj);
            let m1 = -sj / four_pi;
            s_row.push(real(wlog * m1) + diag * real(h));
            if with_dt {
                let k2 = nodes.d2[i].dot(&nodes.normals[i]) / (four_pi * sj);
                d_row.push(real(k2 * h));
            }
            continue;
        }
        let y = nodes.points[j];
        let d = x - y;
        let r = d.norm();
        let z = kappa * real(r);
        let [j0, j1, h0, h1] = bessel01(z)?;
        let ls = (T::lit(4.0) * ((t - nodes.t[j]) * T::lit(0.5)).sin().powi(2)).ln();
        let m = i4 * h0 * real(sj);
        let m1 = -(j0 * real(sj / four_pi));
        let m2 = m - m1 * real(ls);
        s_row.push(m1 * real(wlog) + m2 * real(h));
        if with_dt {
            let proj = d.dot(&nx) / r;
            let k = -(imag_unit::<T>() * kappa * h1 * real(T::lit(0.25) * proj * sj));
            let k1 = kappa * j1 * real(proj * sj / four_pi);
            let k2 = k - k1 * real(ls);
            d_row.push(k1 * real(wlog) + k2 * real(h));
        }
    }
    Ok((s_row, d_row))
}

/// Rows of `S` evaluated at the shifted targets `z(t_i + shift)`.
fn shifted_single_layer<T: Real>(curve: &BoundaryCurve<T>, nodes: &BoundaryNodes<T>, kappa: Cx<T>, shift: T) -> Result<CMatrix<T>> {
    let kappa = check_wavenumber(kappa)?;
    let n = nodes.len();
    let logw = log_weights(n, shift);
    let i4 = imag_unit::<T>() * real(T::lit(0.25));
    let four_pi = T::lit(4.0) * T::pi();
    let h = T::two_pi() / T::nat(n);
    let rows: Vec<Vec<Cx<T>>> = (0..n)
        .into_par_iter()
        .map(|i| -> Result<Vec<Cx<T>>> {
            let t = nodes.t[i] + shift;
            let x = curve.point(t);
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let sj = nodes.speed[j];
                let dt = t - nodes.t[j];
                let sin_half = (dt * T::lit(0.5)).sin();
                if sin_half.abs() < T::lit(1e-12) {
                    // target coincides with a node: diagonal limit
                    let diag = (i4 - real(T::lit(EULER_GAMMA) / T::two_pi())
                        - ((kappa * real(T::lit(0.5))).ln() + real(sj.ln())).unscale(T::two_pi()))
                        * real(sj);
                    row.push(real(logw[(i + n - j) % n] * (-sj / four_pi)) + diag * real(h));
                    continue;
                }
                let r = (x - nodes.points[j]).norm();
                let [j0, _, h0, _] = bessel01(kappa * real(r))?;
                let ls = (T::lit(4.0) * sin_half * sin_half).ln();
                let m1 = -(j0 * real(sj / four_pi));
                let m2 = i4 * h0 * real(sj) - m1 * real(ls);
                row.push(m1 * real(logw[(i + n - j) % n]) + m2 * real(h));
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// `S_κ` and `D^T_κ` on the collocation nodes.
pub fn assemble_layer_pair<T: Real>(nodes: &BoundaryNodes<T>, kappa: Cx<T>, with_dt: bool) -> Result<(CMatrix<T>, Option<CMatrix<T>>)> {
    let kappa = check_wavenumber(kappa)?;
    let n = nodes.len();
    let logw = log_weights(n, T::zero());
    let ctx = RowCtx { nodes, kappa, logw: &logw, log_half_kappa: (kappa * real(T::lit(0.5))).ln() };
    let rows: Vec<(Vec<Cx<T>>, Vec<Cx<T>>)> =
        (0..n).into_par_iter().map(|i| layer_row(&ctx, i, with_dt)).collect::<Result<_>>()?;
    let s = DMatrix::from_fn(n, n, |i, j| rows[i].0[j]);
    let d = with_dt.then(|| DMatrix::from_fn(n, n, |i, j| rows[i].1[j]));
    Ok((s, d))
}

/// Single-layer operator `φ ↦ ∮ Φ_κ(x_i, y) φ(y) ds(y)` on `n` nodes.
pub fn assemble_single_layer<T: Real>(curve: &BoundaryCurve<T>, kappa: Cx<T>, n: usize) -> Result<CMatrix<T>> {
    let nodes = BoundaryNodes::new(curve, n)?;
    Ok(assemble_layer_pair(&nodes, kappa, false)?.0)
}

/// Normal-derivative operator `φ ↦ ∮ ∂_{ν(x)} Φ_κ(x_i, y) φ(y) ds(y)` (no jump term).
pub fn assemble_normal_derivative<T: Real>(curve: &BoundaryCurve<T>, kappa: Cx<T>, n: usize) -> Result<CMatrix<T>> {
    let nodes = BoundaryNodes::new(curve, n)?;
    Ok(assemble_layer_pair(&nodes, kappa, true)?.1.expect("requested"))
}

/// `d²/ds² S_κ` by centered differences of step `h` in the curve parameter.
pub fn tangential_second_derivative<T: Real>(curve: &BoundaryCurve<T>, kappa: Cx<T>, n: usize, h: T) -> Result<CMatrix<T>> {
    let nodes = BoundaryNodes::new(curve, n)?;
    let (s, _) = assemble_layer_pair(&nodes, kappa, false)?;
    tangential_from_base(curve, &nodes, kappa, &s, h)
}

fn tangential_from_base<T: Real>(
    curve: &BoundaryCurve<T>,
    nodes: &BoundaryNodes<T>,
    kappa: Cx<T>,
    base: &CMatrix<T>,
    h: T,
) -> Result<CMatrix<T>> {
    if !(h > T::zero() && h.is_finite()) {
        return Err(Error::InvalidParameter(format!("finite-difference step must be positive, got {}", h.to_f64())));
    }
    let plus = shifted_single_layer(curve, nodes, kappa, h)?;
    let minus = shifted_single_layer(curve, nodes, kappa, -h)?;
    let n = nodes.len();
    let mut t = DMatrix::from_element(n, n, Cx::new(T::zero(), T::zero()));
    for i in 0..n {
        let sp2 = nodes.speed[i] * nodes.speed[i];
        let a = T::one() / sp2;
        let b = -nodes.d1[i].dot(&nodes.d2[i]) / (sp2 * sp2);
        let c2 = real(a / (h * h));
        let c1 = real(b / (T::lit(2.0) * h));
        for j in 0..n {
            let fd2 = plus[(i, j)] - base[(i, j)].scale(T::lit(2.0)) + minus[(i, j)];
            let fd1 = plus[(i, j)] - minus[(i, j)];
            t[(i, j)] = c2 * fd2 + c1 * fd1;
        }
    }
    Ok(t)
}

/// `S_k`, `S_{k√n}`, `D^T_k`, `D^T_{k√n}`, `T_{k√n}` on a common node set.
#[derive(Debug, Clone)]
pub struct BieOperatorSet<T: Real> {
    pub s_k: CMatrix<T>,
    pub s_kn: CMatrix<T>,
    pub dt_k: CMatrix<T>,
    pub dt_kn: CMatrix<T>,
    pub t_kn: CMatrix<T>,
}

/// Assembles all block operators for exterior wavenumber `k` and interior `k_in = k √n`.
pub fn assemble_operators<T: Real>(
    curve: &BoundaryCurve<T>,
    nodes: &BoundaryNodes<T>,
    k: Cx<T>,
    k_in: Cx<T>,
    h: T,
) -> Result<BieOperatorSet<T>> {
    let (s_k, dt_k) = assemble_layer_pair(nodes, k, true)?;
    let (s_kn, dt_kn) = assemble_layer_pair(nodes, k_in, true)?;
    let t_kn = tangential_from_base(curve, nodes, k_in, &s_kn, h)?;
    Ok(BieOperatorSet { s_k, s_kn, dt_k: dt_k.expect("requested"), dt_kn: dt_kn.expect("requested"), t_kn })
}

/// Sign of the `½I` attached to `D^T_k` in the second block row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpSide {
    /// Exterior trace, `-½I + D^T_k` (scattering problem).
    Exterior,
    /// `+½I + D^T_k` (transmission eigenvalue problem).
    Interior,
}

/// `[[S_k, -S_kn], [±½I + D_k, -(½I + D_kn + γ S_kn - μ T_kn)]]`.
pub fn block_matrix<T: Real>(ops: &BieOperatorSet<T>, gamma: Cx<T>, mu: Cx<T>, side: JumpSide) -> CMatrix<T> {
    let n = ops.s_k.nrows();
    let half = T::lit(0.5);
    let sign = match side {
        JumpSide::Exterior => -half,
        JumpSide::Interior => half,
    };
    let mut m = DMatrix::from_element(2 * n, 2 * n, Cx::new(T::zero(), T::zero()));
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { T::one() } else { T::zero() };
            m[(i, j)] = ops.s_k[(i, j)];
            m[(i, n + j)] = -ops.s_kn[(i, j)];
            m[(n + i, j)] = real(sign * id) + ops.dt_k[(i, j)];
            m[(n + i, n + j)] =
                -(real(half * id) + ops.dt_kn[(i, j)] + gamma * ops.s_kn[(i, j)] - mu * ops.t_kn[(i, j)]);
        }
    }
    m
}

/// Solved densities for one incident direction.
#[derive(Debug, Clone)]
pub struct LayerDensities<T: Real> {
    pub phi: Vec<Cx<T>>,
    pub psi: Vec<Cx<T>>,
    pub nodes: Vec<T>,
    /// Incident angle `φ` of `ŷ = (cos φ, sin φ)`.
    pub incident_angle: T,
    /// `‖M z - rhs‖ / ‖rhs‖`.
    pub residual: T,
    pub cond_estimate: T,
    pub warning: Option<String>,
}

/// Factorized forward system, shared across incident directions.
pub struct BieSolver<T: Real> {
    pub cfg: ScattererConfig<T>,
    pub nodes: BoundaryNodes<T>,
    pub h: T,
    matrix: CMatrix<T>,
    factors: Factorized<T>,
    cond_estimate: T,
}

impl<T: Real> BieSolver<T> {
    /// Assembles and factorizes the system with `N_c = 3 N_f` collocation nodes.
    pub fn new(cfg: &ScattererConfig<T>, n_f: usize, h: T) -> Result<Self> {
        Self::with_nodes(cfg, 3 * n_f, h)
    }

    pub fn with_nodes(cfg: &ScattererConfig<T>, n_c: usize, h: T) -> Result<Self> {
        cfg.validate()?;
        let nodes = BoundaryNodes::new(&cfg.curve, n_c)?;
        let ops = assemble_operators(&cfg.curve, &nodes, real(cfg.k), cfg.k_interior(), h)?;
        let matrix = block_matrix(&ops, cfg.gamma, cfg.mu, JumpSide::Exterior);
        let factors = Factorized::new(&matrix)?;
        let cond_estimate = factors.cond1_estimate();
        Ok(Self { cfg: cfg.clone(), nodes, h, matrix, factors, cond_estimate })
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn cond_estimate(&self) -> T {
        self.cond_estimate
    }

    /// Right-hand sides `(-u^i, -∂_ν u^i)` as columns, one per incident angle.
    pub fn rhs(&self, angles: &[T]) -> CMatrix<T> {
        let n = self.nodes.len();
        let k = self.cfg.k;
        DMatrix::from_fn(2 * n, angles.len(), |r, c| {
            let (s, co) = angles[c].sin_cos();
            let i = r % n;
            let ui = plane_wave(k, self.nodes.points[i], angles[c]);
            if r < n {
                -ui
            } else {
                let nd = self.nodes.normals[i].x * co + self.nodes.normals[i].y * s;
                -(imag_unit::<T>() * real(k * nd) * ui)
            }
        })
    }

    /// Densities for each incident angle (parallel over directions).
    pub fn solve(&self, angles: &[T]) -> Result<Vec<LayerDensities<T>>> {
        let b = self.rhs(angles);
        let x = self.factors.solve(&b);
        let n = self.nodes.len();
        let warning = (self.cond_estimate > T::lit(1e12)).then(|| {
            format!(
                "condition estimate {:.3e} exceeds 1e12: k = {} may be near a resonance of the single-layer ansatz",
                self.cond_estimate.to_f64(),
                self.cfg.k.to_f64()
            )
        });
        (0..angles.len())
            .into_par_iter()
            .map(|c| {
                let xc = x.columns(c, 1).into_owned();
                let bc = b.columns(c, 1).into_owned();
                let residual = relative_residual(&self.matrix, &xc, &bc);
                Ok(LayerDensities {
                    phi: xc.iter().take(n).copied().collect(),
                    psi: xc.iter().skip(n).copied().collect(),
                    nodes: self.nodes.t.clone(),
                    incident_angle: angles[c],
                    residual,
                    cond_estimate: self.cond_estimate,
                    warning: warning.clone(),
                })
            })
            .collect()
    }

    /// Scattered field `SL_k φ` at an exterior point.
    pub fn scattered(&self, d: &LayerDensities<T>, x: Point2<T>) -> Result<Cx<T>> {
        near_layer_potential(&self.cfg.curve, &self.nodes, real(self.cfg.k), &d.phi, x)
    }

    /// Interior total field `SL_{k√n} ψ` at an interior point.
    pub fn interior(&self, d: &LayerDensities<T>, x: Point2<T>) -> Result<Cx<T>> {
        near_layer_potential(&self.cfg.curve, &self.nodes, self.cfg.k_interior(), &d.psi, x)
    }
}

/// `Σ_j Φ_κ(x, y_j) σ_j w_j`.
pub fn layer_potential<T: Real>(nodes: &BoundaryNodes<T>, kappa: Cx<T>, sigma: &[Cx<T>], x: Point2<T>) -> Result<Cx<T>> {
    let i4 = imag_unit::<T>() * real(T::lit(0.25));
    let mut acc = Cx::new(T::zero(), T::zero());
    for j in 0..nodes.len() {
        let r = (x - nodes.points[j]).norm();
        if r == T::zero() {
            return Err(Error::SingularArgument("layer potential evaluated on a node".into()));
        }
        let [_, _, h0, _] = bessel01(kappa * real(r))?;
        acc += i4 * h0 * sigma[j] * real(nodes.weights[j]);
    }
    Ok(acc)
}

/// Trigonometric interpolant of node values `σ_j = σ(t_j)` evaluated at `t`.
pub fn trig_interpolate<T: Real>(sigma: &[Cx<T>], t: &[T]) -> Vec<Cx<T>> {
    let n = sigma.len();
    let h = T::two_pi() / T::nat(n);
    let half = (n / 2) as i64;
    let coef: Vec<(i64, Cx<T>)> = (-half..=half)
        .filter(|&q| n % 2 == 1 || q != -half)
        .map(|q| {
            let mut c = Cx::new(T::zero(), T::zero());
            for (j, s) in sigma.iter().enumerate() {
                c += *s * cis(-T::int(q) * h * T::nat(j));
            }
            let scale = if n % 2 == 0 && q == half { T::nat(2 * n) } else { T::nat(n) };
            (q, c.unscale(scale))
        })
        .collect();
    t.iter()
        .map(|&s| {
            let mut acc = Cx::new(T::zero(), T::zero());
            for &(q, c) in &coef {
                acc += c * cis(T::int(q) * s);
                if n % 2 == 0 && q == half {
                    // split Nyquist mode keeps the interpolant real for real data
                    acc += c * cis(-T::int(q) * s);
                }
            }
            acc
        })
        .collect()
}

/// Layer potential that stays accurate close to the boundary: when `x` lies
/// within a few node spacings of the curve the density is interpolated onto a
/// finer grid before applying the trapezoid rule.
pub fn near_layer_potential<T: Real>(
    curve: &BoundaryCurve<T>,
    nodes: &BoundaryNodes<T>,
    kappa: Cx<T>,
    sigma: &[Cx<T>],
    x: Point2<T>,
) -> Result<Cx<T>> {
    let spacing = nodes.weights.iter().fold(T::zero(), |a, &w| a.max(w));
    let node_dist = nodes.points.iter().fold(T::max_value().unwrap(), |a, y| a.min((x - y).norm()));
    if node_dist >= T::lit(5.0) * spacing {
        return layer_potential(nodes, kappa, sigma, x);
    }
    let dist = curve.distance_to_curve(x);
    if dist <= T::eps() * spacing {
        return Err(Error::SingularArgument("layer potential evaluated on the boundary".into()));
    }
    let factor = (spacing / (T::lit(0.25) * dist)).ceil().to_f64().min(1024.0) as usize;
    let fine = BoundaryNodes::new(curve, nodes.len() * factor.max(2))?;
    let values = trig_interpolate(sigma, &fine.t);
    layer_potential(&fine, kappa, &values, x)
}

/// Solves the forward system for one incident angle `φ` with `N_c = 3 N_f` nodes.
pub fn solve_bie<T: Real>(cfg: &ScattererConfig<T>, n_f: usize, h: T, incident_angle: T) -> Result<LayerDensities<T>> {
    let solver = BieSolver::new(cfg, n_f, h)?;
    Ok(solver.solve(&[incident_angle])?.remove(0))
}

/// Cauchy data on `∂Ω` for all `J` incident directions.
pub fn bie_cauchy_data<T: Real>(cfg: &ScattererConfig<T>, setup: &MeasurementSetup<T>, n_f: usize, h: T) -> Result<CauchyData<T>> {
    setup.validate(&cfg.curve)?;
    let solver = BieSolver::new(cfg, n_f, h)?;
    let dens = solver.solve(&setup.angles())?;
    bie_cauchy_from_densities(&solver.nodes, cfg.k, &dens, setup)
}

/// Evaluates `SL_k φ` and its radial derivative on the measurement circle.
pub fn bie_cauchy_from_densities<T: Real>(
    nodes: &BoundaryNodes<T>,
    k: T,
    dens: &[LayerDensities<T>],
    setup: &MeasurementSetup<T>,
) -> Result<CauchyData<T>> {
    let obs = setup.points();
    let jn = setup.j;
    if dens.len() != jn {
        return Err(Error::ShapeMismatch { expected: format!("{jn} density sets"), found: dens.len().to_string() });
    }
    let nc = nodes.len();
    let i4 = imag_unit::<T>() * real(T::lit(0.25));
    // kernel matrices (observation × node), weights folded in
    let rows: Vec<(Vec<Cx<T>>, Vec<Cx<T>>)> = obs
        .par_iter()
        .map(|x| -> Result<_> {
            let xhat = x / x.norm();
            let mut g = Vec::with_capacity(nc);
            let mut gr = Vec::with_capacity(nc);
            for j in 0..nc {
                let d = x - nodes.points[j];
                let r = d.norm();
                let [_, _, h0, h1] = bessel01(real(k * r))?;
                let w = real(nodes.weights[j]);
                g.push(i4 * h0 * w);
                gr.push(-(i4 * h1 * real(k * d.dot(&xhat) / r)) * w);
            }
            Ok((g, gr))
        })
        .collect::<Result<_>>()?;
    let g = DMatrix::from_fn(jn, nc, |i, j| rows[i].0[j]);
    let gr = DMatrix::from_fn(jn, nc, |i, j| rows[i].1[j]);
    let phi = DMatrix::from_fn(nc, jn, |j, c| dens[c].phi[j]);
    let data = CauchyData { us: &g * &phi, dus: &gr * &phi, setup: *setup, k };
    data.validate()?;
    Ok(data)
}

/// Far-field `S^∞_k φ(x̂) = Σ_m e^{-ik x̂·y_m} φ_m w_m` on `J` equispaced directions.
pub fn bie_farfield_vector<T: Real>(nodes: &BoundaryNodes<T>, k: T, phi: &[Cx<T>], j: usize) -> Vec<Cx<T>> {
    let h = T::two_pi() / T::nat(j);
    (0..j)
        .map(|a| {
            let (s, c) = (h * T::nat(a)).sin_cos();
            let mut acc = Cx::new(T::zero(), T::zero());
            for m in 0..nodes.len() {
                let y = nodes.points[m];
                acc += cis(-k * (c * y.x + s * y.y)) * phi[m] * real(nodes.weights[m]);
            }
            acc
        })
        .collect()
}

/// Far-field matrix: row `i` observation direction, column `j` incident direction.
pub fn bie_farfield<T: Real>(nodes: &BoundaryNodes<T>, k: T, dens: &[LayerDensities<T>], j: usize) -> Result<CMatrix<T>> {
    if dens.len() != j {
        return Err(Error::ShapeMismatch { expected: format!("{j} density sets"), found: dens.len().to_string() });
    }
    let cols: Vec<Vec<Cx<T>>> = dens.par_iter().map(|d| bie_farfield_vector(nodes, k, &d.phi, j)).collect();
    Ok(DMatrix::from_fn(j, j, |a, b| cols[b][a]))
}

/// Far-field matrix for `J` equispaced incident directions with `N_c = 3 N_f` nodes.
pub fn bie_farfield_matrix<T: Real>(cfg: &ScattererConfig<T>, n_f: usize, h: T, j: usize) -> Result<CMatrix<T>> {
    let solver = BieSolver::new(cfg, n_f, h)?;
    let angles: Vec<T> = (0..j).map(|a| T::two_pi() * T::nat(a) / T::nat(j)).collect();
    let dens = solver.solve(&angles)?;
    bie_farfield(&solver.nodes, cfg.k, &dens, j)
}

/// `max_{i,j} |F(i,j) - G(i,j)|`.
pub fn farfield_error<T: Real>(f_ref: &CMatrix<T>, f_bie: &CMatrix<T>) -> Result<T> {
    if f_ref.shape() != f_bie.shape() {
        return Err(Error::ShapeMismatch { expected: format!("{:?}", f_ref.shape()), found: format!("{:?}", f_bie.shape()) });
    }
    Ok(max_abs(&(f_ref - f_bie)))
}

#[cfg(test)]
mod tests;
