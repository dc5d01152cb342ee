//! Transmission eigenvalues: disk determinant roots and contour-integral
//! eigenvalue extraction for the boundary-integral operator family.

use std::fmt;

use nalgebra::{ComplexField, DMatrix, Schur};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forward_bie::{assemble_operators, block_matrix, BoundaryNodes, JumpSide, DEFAULT_FD_STEP};
use crate::geometry::BoundaryCurve;
use crate::linalg::{singular_values, CMatrix, Factorized};
use crate::scalar::{abs, cis, cx, real, Cx, Real};
use crate::specfun::{deriv_from_orders, j_orders};

/// Closed disk `|z - center| <= radius` in the complex wavenumber plane, with
/// the contour-integral parameters used on its boundary.
#[derive(Debug, Clone, Copy)]
pub struct ContourSpec<T: Real> {
    pub center: Cx<T>,
    pub radius: T,
    /// Trapezoid nodes on the circle.
    pub n_quad: usize,
    /// Probe columns.
    pub ell: usize,
    /// Relative singular-value cut `σ_i / σ_1 > rank_tol`.
    pub rank_tol: T,
    /// Number of contour moments per Hankel block (1 is the basic method).
    pub moments: usize,
    pub seed: u64,
}

impl<T: Real> ContourSpec<T> {
    pub fn new(center: Cx<T>, radius: T) -> Self {
        Self { center, radius, n_quad: 24, ell: 20, rank_tol: T::lit(1e-8), moments: 1, seed: 0x5eed }
    }

    pub fn contains(&self, z: Cx<T>) -> bool {
        abs(z - self.center) <= self.radius
    }

    fn node(&self, j: usize, offset: T) -> (Cx<T>, Cx<T>) {
        let th = T::two_pi() * (T::nat(j) + offset) / T::nat(self.n_quad);
        let e = cis(th);
        (self.center + e.scale(self.radius), e.scale(self.radius))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > T::zero() && self.radius.is_finite()) {
            return Err(Error::InvalidParameter("contour radius must be positive".into()));
        }
        if self.n_quad < 4 || self.ell == 0 || self.moments == 0 {
            return Err(Error::InvalidParameter("contour needs n_quad >= 4, ell >= 1, moments >= 1".into()));
        }
        if !(self.rank_tol > T::zero() && self.rank_tol < T::one()) {
            return Err(Error::InvalidParameter("rank_tol must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TevMethod {
    SeriesDet,
    BeynBie,
    BeynDet,
}

impl fmt::Display for TevMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TevMethod::SeriesDet => "series_det",
            TevMethod::BeynBie => "beyn_bie",
            TevMethod::BeynDet => "beyn_det",
        })
    }
}

/// One eigenvalue with its verification residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TevEntry<T: Real> {
    pub k: Cx<T>,
    /// `σ_min/σ_max` of `M(k)` (Beyn) or `|det| / column scale` (series).
    pub residual: T,
    pub multiplicity: usize,
    /// Angular order for disk modes.
    pub order: Option<usize>,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct TevResult<T: Real> {
    pub method: TevMethod,
    pub entries: Vec<TevEntry<T>>,
    /// Candidates discarded by the residual check.
    pub rejected: usize,
}

impl<T: Real> TevResult<T> {
    fn sorted(mut self) -> Self {
        self.entries.sort_by(|a, b| {
            (a.k.re, a.k.im).partial_cmp(&(b.k.re, b.k.im)).unwrap_or(std::cmp::Ordering::Equal)
        });
        self
    }

    /// Eigenvalues repeated according to multiplicity.
    pub fn eigenvalues(&self) -> Vec<Cx<T>> {
        self.entries.iter().flat_map(|e| std::iter::repeat_n(e.k, e.multiplicity)).collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }
}

/// Disk parameters for the determinant route.
#[derive(Debug, Clone, Copy)]
pub struct DiskTevParams<T: Real> {
    pub radius: T,
    pub n: T,
    pub mu: T,
    pub gamma: T,
}

impl<T: Real> DiskTevParams<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > T::zero()) {
            return Err(Error::InvalidGeometry("disk radius must be positive".into()));
        }
        if !(self.n > T::one()) {
            return Err(Error::InvalidParameter(format!("transmission eigenvalues need n > 1, got {}", self.n.to_f64())));
        }
        Ok(())
    }
}

fn disk_columns<T: Real>(k: Cx<T>, p: usize, d: &DiskTevParams<T>) -> Result<[Cx<T>; 4]> {
    let sn = d.n.sqrt();
    let a = k * real(d.radius);
    let b = k * real(sn * d.radius);
    let ja = j_orders(p + 1, a)?;
    let jb = j_orders(p + 1, b)?;
    let robin = d.gamma + d.mu * T::nat(p * p) / (d.radius * d.radius);
    Ok([
        ja[p],
        k * deriv_from_orders(&ja, p),
        -jb[p],
        -(k * real(sn) * deriv_from_orders(&jb, p) + jb[p] * real(robin)),
    ])
}

/// `det [[J_p(kR), -J_p(k√n R)], [k J_p'(kR), -(k√n J_p'(k√n R) + (γ + μp²/R²) J_p(k√n R))]]`.
pub fn disk_determinant<T: Real>(k: Cx<T>, p: usize, d: &DiskTevParams<T>) -> Result<Cx<T>> {
    let [a11, a21, a12, a22] = disk_columns(k, p, d)?;
    Ok(a11 * a22 - a12 * a21)
}

/// Determinant divided by the product of the columns' largest entries; the
/// second value is that scale.
pub fn disk_determinant_scaled<T: Real>(k: Cx<T>, p: usize, d: &DiskTevParams<T>) -> Result<(Cx<T>, T)> {
    let [a11, a21, a12, a22] = disk_columns(k, p, d)?;
    let s1 = abs(a11).max(abs(a21));
    let s2 = abs(a12).max(abs(a22));
    let scale = s1 * s2;
    let det = a11 * a22 - a12 * a21;
    Ok((if scale > T::zero() { det.unscale(scale) } else { det }, scale))
}

/// The 2×2 determinant matrix as an analytic family (for contour solvers).
pub fn disk_matrix<T: Real>(k: Cx<T>, p: usize, d: &DiskTevParams<T>) -> Result<CMatrix<T>> {
    let [a11, a21, a12, a22] = disk_columns(k, p, d)?;
    Ok(DMatrix::from_row_slice(2, 2, &[a11, a12, a21, a22]))
}

const FD_STEP: f64 = 1e-6;
const CONTOUR_SAMPLES: usize = 256;

fn fd_derivative<T: Real>(f: &impl Fn(Cx<T>) -> Result<Cx<T>>, z: Cx<T>) -> Result<Cx<T>> {
    let h = T::lit(FD_STEP);
    Ok((f(z + real(h))? - f(z - real(h))?).unscale(T::lit(2.0) * h))
}

/// `(1/2πi) ∮ z^m f'/f dz` for `m = 0..=m_max` by the trapezoid rule.
fn log_moments<T: Real>(f: &impl Fn(Cx<T>) -> Result<Cx<T>>, c: Cx<T>, r: T, samples: usize, m_max: usize) -> Result<Vec<Cx<T>>> {
    let mut s = vec![Cx::new(T::zero(), T::zero()); m_max + 1];
    for j in 0..samples {
        let e = cis(T::two_pi() * T::nat(j) / T::nat(samples));
        let z = c + e.scale(r);
        let fz = f(z)?;
        if abs(fz) == T::zero() {
            return Err(Error::SingularMatrix("root on the contour".into()));
        }
        let q = fd_derivative(f, z)? / fz * e.scale(r);
        // moments about the center keep the power sums well scaled
        let w = z - c;
        let mut wp = Cx::new(T::one(), T::zero());
        for sm in s.iter_mut() {
            *sm += q * wp;
            wp *= w;
        }
    }
    Ok(s.into_iter().map(|v| v.unscale(T::nat(samples))).collect())
}

/// Winding number of `f` around the circle (rounded argument-principle count).
pub fn winding_count<T: Real>(f: &impl Fn(Cx<T>) -> Result<Cx<T>>, c: Cx<T>, r: T) -> Result<i64> {
    let s0 = log_moments(f, c, r, CONTOUR_SAMPLES, 0)?[0];
    Ok(s0.re.to_f64().round() as i64)
}

/// Roots of the monic polynomial with power sums `s_1..s_m` (relative to the center).
fn roots_from_power_sums<T: Real>(s: &[Cx<T>], m: usize) -> Vec<Cx<T>> {
    if m == 0 {
        return Vec::new();
    }
    // Newton identities: e_j = (1/j) Σ_{i=1}^{j} (-1)^{i-1} e_{j-i} s_i
    let mut e = vec![Cx::new(T::one(), T::zero())];
    for j in 1..=m {
        let mut acc = Cx::new(T::zero(), T::zero());
        for i in 1..=j {
            let term = e[j - i] * s[i];
            acc += if i % 2 == 1 { term } else { -term };
        }
        e.push(acc.unscale(T::nat(j)));
    }
    // companion matrix of z^m - e1 z^{m-1} + e2 z^{m-2} - ...
    let mut comp = DMatrix::from_element(m, m, Cx::new(T::zero(), T::zero()));
    for j in 0..m {
        let c = e[j + 1];
        comp[(0, j)] = if j % 2 == 0 { c } else { -c };
    }
    for i in 1..m {
        comp[(i, i - 1)] = Cx::new(T::one(), T::zero());
    }
    schur_eigenvalues(comp)
}

fn schur_eigenvalues<T: Real>(m: CMatrix<T>) -> Vec<Cx<T>> {
    let n = m.nrows();
    if n == 1 {
        return vec![m[(0, 0)]];
    }
    let (_, t) = Schur::new(m).unpack();
    (0..n).map(|i| t[(i, i)]).collect()
}

fn newton<T: Real>(f: &impl Fn(Cx<T>) -> Result<Cx<T>>, mut z: Cx<T>) -> Result<(Cx<T>, bool)> {
    for _ in 0..50 {
        let fz = f(z)?;
        let d = fd_derivative(f, z)?;
        if abs(d) == T::zero() {
            return Ok((z, false));
        }
        let step = fz / d;
        z -= step;
        if abs(step) <= T::lit(1e-12) {
            return Ok((z, true));
        }
    }
    Ok((z, false))
}

/// Zeros of an analytic `f` inside the closed disk, by argument-principle
/// moments, companion eigenvalues and Newton polishing, subdividing the region
/// when the count and the recovered roots disagree.
pub fn analytic_roots<T: Real>(f: &impl Fn(Cx<T>) -> Result<Cx<T>>, c: Cx<T>, r: T) -> Result<Vec<(Cx<T>, bool)>> {
    roots_rec(f, c, r, 0)
}

fn roots_rec<T: Real>(f: &impl Fn(Cx<T>) -> Result<Cx<T>>, c: Cx<T>, r: T, depth: usize) -> Result<Vec<(Cx<T>, bool)>> {
    const MAX_PER_DISK: usize = 6;
    let count = winding_count(f, c, r)?;
    if count < 0 {
        return Err(Error::NoConvergence(format!("negative winding count {count}: f has poles in the region")));
    }
    let count = count as usize;
    if count == 0 {
        return Ok(Vec::new());
    }
    let tol = r * T::lit(1e-8) + T::lit(1e-12);
    if count <= MAX_PER_DISK {
        let s = log_moments(f, c, r, CONTOUR_SAMPLES, count)?;
        let guesses = roots_from_power_sums(&s, count);
        let mut found: Vec<(Cx<T>, bool)> = Vec::new();
        let mut ok = true;
        for g in guesses {
            let (z, conv) = newton(f, c + g)?;
            if !conv || abs(z - c) > r * (T::one() + T::lit(1e-9)) || found.iter().any(|(w, _)| abs(*w - z) <= tol) {
                ok = false;
                break;
            }
            found.push((z, conv));
        }
        if ok {
            return Ok(found);
        }
    }
    if depth >= 6 {
        return Err(Error::NoConvergence(format!("root isolation failed near {} (radius {:e})", c, r.to_f64())));
    }
    // seven half-radius disks cover the disk: one central, six on a ring at r√3/2
    let half = r * T::lit(0.5);
    let ring = r * T::lit(3f64.sqrt() / 2.0);
    let mut centers = vec![c];
    for m in 0..6 {
        centers.push(c + cis(T::pi() * T::nat(m) / T::lit(3.0)).scale(ring));
    }
    let mut out: Vec<(Cx<T>, bool)> = Vec::new();
    for cc in centers {
        for (z, conv) in roots_rec(f, cc, half, depth + 1)? {
            if abs(z - c) <= r && !out.iter().any(|(w, _)| abs(*w - z) <= tol) {
                out.push((z, conv));
            }
        }
    }
    Ok(out)
}

/// Determinant roots for every order `0..=p_max` inside the region; orders
/// `p >= 1` carry multiplicity 2 (the `±p` modes).
pub fn find_disk_tevs<T: Real>(d: &DiskTevParams<T>, region: &ContourSpec<T>, p_max: usize) -> Result<TevResult<T>> {
    d.validate()?;
    region.validate()?;
    let per_order: Vec<Vec<TevEntry<T>>> = (0..=p_max)
        .into_par_iter()
        .map(|p| -> Result<Vec<TevEntry<T>>> {
            let f = |k: Cx<T>| disk_determinant(k, p, d);
            let roots = analytic_roots(&f, region.center, region.radius)?;
            roots
                .into_iter()
                .map(|(k, converged)| {
                    let (det, _) = disk_determinant_scaled(k, p, d)?;
                    Ok(TevEntry { k, residual: abs(det), multiplicity: if p == 0 { 1 } else { 2 }, order: Some(p), converged })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(TevResult { method: TevMethod::SeriesDet, entries: per_order.into_iter().flatten().collect(), rejected: 0 }.sorted())
}

/// Boundary-integral transmission eigenvalue problem on a smooth curve.
#[derive(Debug, Clone)]
pub struct TevProblem<T: Real> {
    pub curve: BoundaryCurve<T>,
    pub n: T,
    pub mu: T,
    pub gamma: T,
    /// Collocation nodes.
    pub n_c: usize,
    pub h: T,
}

impl<T: Real> TevProblem<T> {
    pub fn new(curve: BoundaryCurve<T>, n: T, mu: T, gamma: T, n_c: usize) -> Self {
        Self { curve, n, mu, gamma, n_c, h: T::lit(DEFAULT_FD_STEP) }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n > T::one()) {
            return Err(Error::InvalidParameter(format!("transmission eigenvalues need n > 1, got {}", self.n.to_f64())));
        }
        if self.n_c < 4 {
            return Err(Error::InvalidDiscretization(format!("need at least 4 collocation nodes, got {}", self.n_c)));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        2 * self.n_c
    }
}

/// Node set and `M(k)` evaluation shared across wavenumbers.
pub struct TevOperator<T: Real> {
    pub problem: TevProblem<T>,
    nodes: BoundaryNodes<T>,
}

impl<T: Real> TevOperator<T> {
    pub fn new(problem: &TevProblem<T>) -> Result<Self> {
        problem.validate()?;
        Ok(Self { nodes: BoundaryNodes::new(&problem.curve, problem.n_c)?, problem: problem.clone() })
    }

    /// `M(k) = [[S_k, -S_kn], [½I + D_k, -(½I + D_kn + γ S_kn - μ T_kn)]]`.
    pub fn matrix(&self, k: Cx<T>) -> Result<CMatrix<T>> {
        let p = &self.problem;
        let ops = assemble_operators(&p.curve, &self.nodes, k, k * real(p.n.sqrt()), p.h)?;
        Ok(block_matrix(&ops, real(p.gamma), real(p.mu), JumpSide::Interior))
    }
}

/// `M(k)` for the boundary-integral eigenvalue problem.
pub fn assemble_tev_bie<T: Real>(k: Cx<T>, problem: &TevProblem<T>) -> Result<CMatrix<T>> {
    TevOperator::new(problem)?.matrix(k)
}

/// Contour-integral eigenvalues of the analytic family `m` inside the contour.
///
/// Uses the block-Hankel form with `contour.moments` moments per block; one
/// moment is the basic single-moment method. Candidates whose residual is not
/// already far below the threshold are polished by a few Newton steps on a
/// scalar reduction of `M`; every candidate is then re-verified by
/// `σ_min/σ_max` of `M(k)` and dropped when that exceeds `residual_tol`.
pub fn beyn_solve<T: Real, F>(dim: usize, m: F, contour: &ContourSpec<T>, residual_tol: T, method: TevMethod) -> Result<TevResult<T>>
where
    F: Fn(Cx<T>) -> Result<CMatrix<T>> + Sync,
{
    contour.validate()?;
    let ell = contour.ell.min(dim);
    let kk = contour.moments;
    let mut rng = ChaCha8Rng::seed_from_u64(contour.seed);
    let probe = DMatrix::from_fn(dim, ell, |_, _| {
        let re: f64 = rng.random_range(-1.0..=1.0);
        let im: f64 = rng.random_range(-1.0..=1.0);
        cx::<T>(re, im)
    });
    let n_mom = 2 * kk;
    let mut offset = T::zero();
    let moments = loop {
        let solves: Result<Vec<(Cx<T>, Cx<T>, CMatrix<T>)>> = (0..contour.n_quad)
            .into_par_iter()
            .map(|j| {
                let (z, dz) = contour.node(j, offset);
                let lu = Factorized::new(&m(z)?)?;
                Ok((z, dz, lu.solve(&probe)))
            })
            .collect();
        match solves {
            Ok(s) => {
                let mut a = vec![DMatrix::from_element(dim, ell, Cx::new(T::zero(), T::zero())); n_mom];
                for (z, dz, x) in &s {
                    let w = z - contour.center;
                    let mut wp = dz.unscale(T::nat(contour.n_quad));
                    for ap in a.iter_mut() {
                        *ap += x * wp;
                        wp *= w;
                    }
                }
                break a;
            }
            Err(Error::SingularMatrix(_)) if offset == T::zero() => offset = T::lit(0.5),
            Err(e) => return Err(e),
        }
    };
    // block Hankel matrices in the shifted variable w = z - center
    let rows = kk * dim;
    let cols = kk * ell;
    let mut b0 = DMatrix::from_element(rows, cols, Cx::new(T::zero(), T::zero()));
    let mut b1 = b0.clone();
    for bi in 0..kk {
        for bj in 0..kk {
            b0.view_mut((bi * dim, bj * ell), (dim, ell)).copy_from(&moments[bi + bj]);
            b1.view_mut((bi * dim, bj * ell), (dim, ell)).copy_from(&moments[bi + bj + 1]);
        }
    }
    let svd = b0.svd(true, true);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap_or(std::cmp::Ordering::Equal));
    let s_max = svd.singular_values[order[0]];
    let rank = if s_max > T::zero() {
        order.iter().filter(|&&i| svd.singular_values[i] > contour.rank_tol * s_max).count()
    } else {
        0
    };
    if rank == 0 {
        return Ok(TevResult { method, entries: Vec::new(), rejected: 0 });
    }
    if rank >= cols {
        return Err(Error::EllTooSmall { ell: contour.ell, rank });
    }
    let u = svd.u.as_ref().expect("requested");
    let vt = svd.v_t.as_ref().expect("requested");
    let v0 = DMatrix::from_fn(rows, rank, |i, c| u[(i, order[c])]);
    let w0 = DMatrix::from_fn(cols, rank, |i, c| vt[(order[c], i)].conj());
    let sinv = DMatrix::from_fn(rank, rank, |i, j| {
        if i == j { real(T::one() / svd.singular_values[order[i]]) } else { Cx::new(T::zero(), T::zero()) }
    });
    let b = v0.adjoint() * &b1 * w0 * sinv;
    let candidates: Vec<Cx<T>> = schur_eigenvalues(b).into_iter().map(|w| w + contour.center).collect();
    let checked: Vec<Option<TevEntry<T>>> = candidates
        .par_iter()
        .filter(|z| contour.contains(**z))
        .map(|&z| -> Result<Option<TevEntry<T>>> {
            let (mut z, mut ratio) = (z, residual_ratio(&m(z)?));
            let polish = ratio > residual_tol * T::lit(1e-3);
            if let Some(r) = polish.then(|| refine_candidate(&m, z, contour)).flatten() {
                let rr = residual_ratio(&m(r)?);
                if rr < ratio && contour.contains(r) {
                    (z, ratio) = (r, rr);
                }
            }
            Ok((ratio <= residual_tol).then_some(TevEntry { k: z, residual: ratio, multiplicity: 1, order: None, converged: true }))
        })
        .collect::<Result<_>>()?;
    let inside = checked.len();
    let entries: Vec<TevEntry<T>> = checked.into_iter().flatten().collect();
    Ok(TevResult { method, rejected: inside - entries.len(), entries }.sorted())
}

fn residual_ratio<T: Real>(a: &CMatrix<T>) -> T {
    let s = singular_values(a);
    s[s.len() - 1] / s[0]
}

// Newton on g(z) = 1 / (y^H M(z)^{-1} x) with x, y the extreme singular
// vectors at the starting point; g has a simple zero at a simple eigenvalue.
// Steps leaving the contour disk or failing to evaluate abandon the refinement.
fn refine_candidate<T: Real, F>(m: &F, z0: Cx<T>, contour: &ContourSpec<T>) -> Option<Cx<T>>
where
    F: Fn(Cx<T>) -> Result<CMatrix<T>>,
{
    let svd = m(z0).ok()?.svd(true, true);
    let s = &svd.singular_values;
    let imin = (0..s.len()).min_by(|&a, &b| s[a].partial_cmp(&s[b]).unwrap_or(std::cmp::Ordering::Equal)).unwrap_or(0);
    let x: CMatrix<T> = svd.v_t.as_ref().expect("requested").rows(imin, 1).adjoint();
    let y: CMatrix<T> = svd.u.as_ref().expect("requested").columns(imin, 1).into_owned();
    let g = |z: Cx<T>| -> Option<Cx<T>> {
        let lu = Factorized::new(&m(z).ok()?).ok()?;
        Some(Cx::new(T::one(), T::zero()) / y.dotc(&lu.solve(&x)))
    };
    let mut z = z0;
    for _ in 0..8 {
        let h = real::<T>(T::lit(1e-7) * (T::one() + abs(z)));
        let (g0, gp) = (g(z)?, g(z + h)?);
        let d = (gp - g0) / h;
        if abs(d) == T::zero() {
            return None;
        }
        let step = g0 / d;
        z -= step;
        if !z.re.is_finite() || !z.im.is_finite() || !contour.contains(z) {
            return None;
        }
        if abs(step) <= T::lit(1e-13) * (T::one() + abs(z)) {
            break;
        }
    }
    Some(z)
}

/// Default verification threshold for `σ_min/σ_max`.
pub const RESIDUAL_TOL: f64 = 1e-6;

/// Contour eigenvalues of the boundary-integral family.
pub fn beyn_bie<T: Real>(problem: &TevProblem<T>, contour: &ContourSpec<T>) -> Result<TevResult<T>> {
    let op = TevOperator::new(problem)?;
    beyn_solve(problem.dim(), |k| op.matrix(k), contour, T::lit(RESIDUAL_TOL), TevMethod::BeynBie)
}

/// One survey column: eigenvalues for a curve over a union of contours.
#[derive(Debug, Clone)]
pub struct SurveyColumn<T: Real> {
    pub label: String,
    pub result: TevResult<T>,
}

/// Runs the contour solver for each curve over several (possibly overlapping)
/// contours. Overlaps are resolved by keeping each eigenvalue only from the
/// contour with the nearest center; values with `|Im k| > max_imag` are dropped.
pub fn tev_survey<T: Real>(
    template: &TevProblem<T>,
    contours: &[ContourSpec<T>],
    curves: &[(String, BoundaryCurve<T>)],
    max_imag: T,
) -> Result<Vec<SurveyColumn<T>>> {
    curves
        .iter()
        .map(|(label, curve)| {
            let mut problem = template.clone();
            problem.curve = curve.clone();
            let mut entries = Vec::new();
            let mut rejected = 0;
            for (ci, c) in contours.iter().enumerate() {
                let res = beyn_bie(&problem, c)?;
                rejected += res.rejected;
                for e in res.entries {
                    let nearest = contours
                        .iter()
                        .enumerate()
                        .min_by(|a, b| abs(e.k - a.1.center).partial_cmp(&abs(e.k - b.1.center)).unwrap_or(std::cmp::Ordering::Equal))
                        .map(|(i, _)| i);
                    if nearest == Some(ci) && e.k.im.abs() <= max_imag {
                        entries.push(e);
                    }
                }
            }
            Ok(SurveyColumn {
                label: label.clone(),
                result: TevResult { method: TevMethod::BeynBie, entries, rejected }.sorted(),
            })
        })
        .collect()
}

/// Circles of the given radius centered on the real axis, spaced to overlap.
pub fn real_axis_contours<T: Real>(lo: T, hi: T, radius: T, n_quad: usize, ell: usize) -> Vec<ContourSpec<T>> {
    let step = radius * T::lit(1.5);
    let mut out = Vec::new();
    let mut c = lo + radius;
    loop {
        let mut spec = ContourSpec::new(real(c), radius);
        spec.n_quad = n_quad;
        spec.ell = ell;
        out.push(spec);
        if c + radius >= hi {
            break;
        }
        c += step;
    }
    out
}

#[cfg(test)]
mod tests;
