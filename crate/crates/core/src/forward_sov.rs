//! Exact series solution for a disk scatterer centered at the origin.

use nalgebra::{ComplexField, DMatrix};

use crate::error::{Error, Result};
use crate::geometry::{BoundaryCurve, Point2};
use crate::scalar::{abs, cis, i_pow, imag_unit, real, Cx, Real};
use crate::specfun::{bessel_table, j_orders, MAX_ORDER};

/// Physical parameters of the scattering problem.
#[derive(Debug, Clone)]
pub struct ScattererConfig<T: Real> {
    pub k: T,
    pub n: Cx<T>,
    pub mu: Cx<T>,
    pub gamma: Cx<T>,
    pub curve: BoundaryCurve<T>,
    /// Reject parameters violating `Im n >= 0`, `Re γ > 0`, `Re μ > 0`, `Im γ <= 0`, `Im μ <= 0`.
    pub enforce_signs: bool,
}

impl<T: Real> ScattererConfig<T> {
    pub fn new(k: T, n: Cx<T>, mu: Cx<T>, gamma: Cx<T>, curve: BoundaryCurve<T>) -> Self {
        Self { k, n, mu, gamma, curve, enforce_signs: true }
    }

    /// Same parameters with sign enforcement disabled (no-contrast and exploratory runs).
    pub fn unchecked(mut self) -> Self {
        self.enforce_signs = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k.is_finite() && self.k > T::zero()) {
            return Err(Error::InvalidParameter(format!("k must be positive and finite, got {}", self.k.to_f64())));
        }
        for (name, v) in [("n", self.n), ("mu", self.mu), ("gamma", self.gamma)] {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        if self.enforce_signs {
            let checks = [
                (self.n.im >= T::zero(), "Im(n) >= 0"),
                (self.gamma.re > T::zero(), "Re(gamma) > 0"),
                (self.mu.re > T::zero(), "Re(mu) > 0"),
                (self.gamma.im <= T::zero(), "Im(gamma) <= 0"),
                (self.mu.im <= T::zero(), "Im(mu) <= 0"),
            ];
            for (ok, what) in checks {
                if !ok {
                    return Err(Error::InvalidParameter(format!("sign condition violated: {what}")));
                }
            }
        }
        Ok(())
    }

    /// Interior wavenumber `k sqrt(n)` (principal root).
    pub fn k_interior(&self) -> Cx<T> {
        real(self.k) * self.n.sqrt()
    }

    fn disk_radius(&self) -> Result<T> {
        self.curve.centered_disk_radius().ok_or_else(|| {
            Error::WrongSolver(format!(
                "series solver needs a disk centered at the origin, got {}; use the boundary-integral solver",
                self.curve.kind()
            ))
        })
    }
}

/// Measurement circle `∂Ω` of radius `radius_omega` with `J` equispaced
/// observation points that double as incident directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetup<T: Real> {
    pub radius_omega: T,
    pub j: usize,
}

impl<T: Real> MeasurementSetup<T> {
    pub fn new(radius_omega: T, j: usize) -> Self {
        Self { radius_omega, j }
    }

    /// `2π i / J`, `i = 0..J`.
    pub fn angles(&self) -> Vec<T> {
        let h = T::two_pi() / T::nat(self.j);
        (0..self.j).map(|i| h * T::nat(i)).collect()
    }

    pub fn points(&self) -> Vec<Point2<T>> {
        self.angles().into_iter().map(|t| Point2::new(t.cos(), t.sin()) * self.radius_omega).collect()
    }

    pub fn directions(&self) -> Vec<Point2<T>> {
        self.angles().into_iter().map(|t| Point2::new(t.cos(), t.sin())).collect()
    }

    pub fn validate(&self, curve: &BoundaryCurve<T>) -> Result<()> {
        if self.j == 0 {
            return Err(Error::InvalidParameter("J must be positive".into()));
        }
        if !(self.radius_omega > T::zero()) {
            return Err(Error::InvalidGeometry("measurement radius must be positive".into()));
        }
        let m = curve.max_radius();
        if m >= self.radius_omega {
            return Err(Error::InvalidGeometry(format!(
                "scatterer reaches radius {} but the measurement circle has radius {}",
                m.to_f64(),
                self.radius_omega.to_f64()
            )));
        }
        Ok(())
    }
}

/// Scattered field and its radial derivative on `∂Ω`: entry `(i, j)` is observation
/// point `i` under incident direction `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyData<T: Real> {
    pub us: DMatrix<Cx<T>>,
    pub dus: DMatrix<Cx<T>>,
    pub setup: MeasurementSetup<T>,
    pub k: T,
}

impl<T: Real> CauchyData<T> {
    pub fn zeros(setup: MeasurementSetup<T>, k: T) -> Self {
        let z = DMatrix::from_element(setup.j, setup.j, Cx::new(T::zero(), T::zero()));
        Self { us: z.clone(), dus: z, setup, k }
    }

    pub fn validate(&self) -> Result<()> {
        let j = self.setup.j;
        for (name, m) in [("us", &self.us), ("dus", &self.dus)] {
            if m.nrows() != j || m.ncols() != j {
                return Err(Error::ShapeMismatch {
                    expected: format!("{j}x{j}"),
                    found: format!("{name} {}x{}", m.nrows(), m.ncols()),
                });
            }
            if m.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
                return Err(Error::NonFinite("Cauchy data"));
            }
        }
        Ok(())
    }
}

/// Series truncation policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// Sum over `|p| <= P`.
    Fixed(usize),
    /// Smallest `P >= min` whose last mode contributes at most `tol` relative to the largest mode.
    Auto { min: usize, tol: f64 },
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::Auto { min: 15, tol: 1e-10 }
    }
}

/// Coefficients `(us_p, u_p)` of the scattered and interior total field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoefficients<T: Real> {
    pub us: Cx<T>,
    pub u: Cx<T>,
}

/// Solves the 2×2 mode system by Cramer's rule, with a residual-driven refinement step.
///
/// Near resonance means `|det| < 1e-13 |c1| |c2|` for the matrix columns `c1`, `c2`.
pub fn sov_mode_coefficients<T: Real>(p: i64, cfg: &ScattererConfig<T>) -> Result<ModeCoefficients<T>> {
    cfg.validate()?;
    let r = cfg.disk_radius()?;
    let pa = p.unsigned_abs() as usize;
    if pa > MAX_ORDER {
        return Err(Error::UnsupportedDomain { function: "sov_mode_coefficients", detail: format!("order {p}") });
    }
    let k = cfg.k;
    let kn = cfg.k_interior();
    let out = bessel_table(pa, real(k * r))?;
    let inn = bessel_table(pa, kn * real(r))?;
    let (h, hd, j, jd) = (out.h[pa], out.hd[pa], out.j[pa], out.jd[pa]);
    let (jn, jnd) = (inn.j[pa], inn.jd[pa]);
    let robin = cfg.mu * real(T::nat(pa * pa) / (r * r)) + cfg.gamma;
    let a = [[h, -jn], [hd * real(k), -(kn * jnd) - robin * jn]];
    let b = [-j, -(jd * real(k))];
    solve2(a, b).map_err(|(det, scale)| Error::NearResonance {
        order: p,
        k: format!("{}", k.to_f64()),
        det,
        scale,
    })
}

type Mat2<T> = [[Cx<T>; 2]; 2];

fn solve2<T: Real>(a: Mat2<T>, b: [Cx<T>; 2]) -> std::result::Result<ModeCoefficients<T>, (f64, f64)> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let norm2 = |x: Cx<T>, y: Cx<T>| (abs(x) * abs(x) + abs(y) * abs(y)).sqrt();
    // column scaling: |det| / (|c1| |c2|) is the sine of the angle between the columns
    let scale = norm2(a[0][0], a[1][0]) * norm2(a[0][1], a[1][1]);
    if abs(det) < T::lit(1e-13) * scale || !(scale.is_finite()) {
        return Err((abs(det).to_f64(), scale.to_f64()));
    }
    let cramer = |b: [Cx<T>; 2]| {
        let x0 = (b[0] * a[1][1] - a[0][1] * b[1]) / det;
        let x1 = (a[0][0] * b[1] - b[0] * a[1][0]) / det;
        [x0, x1]
    };
    let mut x = cramer(b);
    let res = [b[0] - a[0][0] * x[0] - a[0][1] * x[1], b[1] - a[1][0] * x[0] - a[1][1] * x[1]];
    let size = |r: usize| abs(b[r]) + abs(a[r][0] * x[0]) + abs(a[r][1] * x[1]);
    if abs(res[0]) > T::lit(1e-14) * size(0) || abs(res[1]) > T::lit(1e-14) * size(1) {
        let dx = cramer(res);
        x = [x[0] + dx[0], x[1] + dx[1]];
    }
    Ok(ModeCoefficients { us: x[0], u: x[1] })
}

/// Relative residual of `(us_p, u_p)` in the mode system.
pub fn sov_mode_residual<T: Real>(p: i64, cfg: &ScattererConfig<T>, c: ModeCoefficients<T>) -> Result<T> {
    let r = cfg.disk_radius()?;
    let pa = p.unsigned_abs() as usize;
    let k = cfg.k;
    let kn = cfg.k_interior();
    let out = bessel_table(pa, real(k * r))?;
    let inn = bessel_table(pa, kn * real(r))?;
    let robin = cfg.mu * real(T::nat(pa * pa) / (r * r)) + cfg.gamma;
    let e1 = out.h[pa] * c.us - inn.j[pa] * c.u + out.j[pa];
    let e2 = out.hd[pa] * real(k) * c.us - (kn * inn.jd[pa] + robin * inn.j[pa]) * c.u + out.jd[pa] * real(k);
    let s1 = abs(out.h[pa] * c.us) + abs(inn.j[pa] * c.u) + abs(out.j[pa]);
    let s2 = abs(out.hd[pa] * real(k) * c.us) + abs((kn * inn.jd[pa] + robin * inn.j[pa]) * c.u) + abs(out.jd[pa] * real(k));
    Ok((abs(e1) / s1).max(abs(e2) / s2))
}

/// Solved series for a centered disk: coefficients for `p = 0..=P` (negative orders coincide).
#[derive(Debug, Clone)]
pub struct SovSolution<T: Real> {
    pub cfg: ScattererConfig<T>,
    pub radius: T,
    pub modes: Vec<ModeCoefficients<T>>,
}

impl<T: Real> SovSolution<T> {
    pub fn order(&self) -> usize {
        self.modes.len() - 1
    }

    /// Scattered field at `x` (outside the disk) for incident angle `phi`.
    pub fn scattered(&self, x: Point2<T>, phi: T) -> Result<Cx<T>> {
        let (r, th) = (x.norm(), x.y.atan2(x.x));
        let h = crate::specfun::h1_orders(self.order(), real(self.cfg.k * r))?;
        Ok(self.angular_sum(th - phi, |p| self.modes[p].us * h[p]))
    }

    /// Total field at `x` (inside the disk) for incident angle `phi`.
    pub fn interior(&self, x: Point2<T>, phi: T) -> Result<Cx<T>> {
        let (r, th) = (x.norm(), x.y.atan2(x.x));
        let j = j_orders(self.order(), self.cfg.k_interior() * real(r))?;
        Ok(self.angular_sum(th - phi, |p| self.modes[p].u * j[p]))
    }

    /// `𝔅(u)` on the disk boundary at polar angle `theta`.
    pub fn robin_trace(&self, theta: T, phi: T) -> Result<Cx<T>> {
        let r = self.radius;
        let j = j_orders(self.order(), self.cfg.k_interior() * real(r))?;
        Ok(self.angular_sum(theta - phi, |p| {
            let robin = self.cfg.mu * real(T::nat(p * p) / (r * r)) + self.cfg.gamma;
            self.modes[p].u * robin * j[p]
        }))
    }

    /// `Σ_{|p|<=P} i^p c_p e^{ipα}` for even-in-`p` coefficients `c_p`.
    fn angular_sum(&self, alpha: T, c: impl Fn(usize) -> Cx<T>) -> Cx<T> {
        let mut acc = Cx::new(T::zero(), T::zero());
        for p in 0..=self.order() {
            let w = if p == 0 { T::one() } else { T::lit(2.0) * (T::nat(p) * alpha).cos() };
            acc += i_pow::<T>(p as i64) * c(p) * real(w);
        }
        acc
    }
}

/// Solves all modes up to the truncation order. `probe_radius` is where the
/// automatic tail test measures mode contributions (`None` measures `|us_p|`).
pub fn sov_solve<T: Real>(cfg: &ScattererConfig<T>, trunc: Truncation, probe_radius: Option<T>) -> Result<SovSolution<T>> {
    cfg.validate()?;
    let radius = cfg.disk_radius()?;
    let mut modes = Vec::new();
    match trunc {
        Truncation::Fixed(p) => {
            for q in 0..=p {
                modes.push(sov_mode_coefficients(q as i64, cfg)?);
            }
        }
        Truncation::Auto { min, tol } => {
            let h = match probe_radius {
                Some(rho) => Some(crate::specfun::h1_orders(MAX_ORDER, real(cfg.k * rho))?),
                None => None,
            };
            let weight = |p: usize, c: &ModeCoefficients<T>| -> T {
                match &h {
                    Some(h) => abs(c.us * h[p]),
                    None => abs(c.us),
                }
            };
            let mut peak = T::zero();
            let mut done = false;
            for q in 0..=MAX_ORDER {
                let c = sov_mode_coefficients(q as i64, cfg)?;
                let w = weight(q, &c);
                peak = peak.max(w);
                modes.push(c);
                if q >= min && w <= T::lit(tol) * peak {
                    done = true;
                    break;
                }
            }
            if !done {
                return Err(Error::InvalidDiscretization(format!(
                    "series tail above {tol:e} at the maximal order {MAX_ORDER}"
                )));
            }
        }
    }
    Ok(SovSolution { cfg: cfg.clone(), radius, modes })
}

/// Cauchy data on `∂Ω` from the truncated series.
pub fn sov_cauchy_data<T: Real>(cfg: &ScattererConfig<T>, setup: &MeasurementSetup<T>, trunc: Truncation) -> Result<CauchyData<T>> {
    setup.validate(&cfg.curve)?;
    let sol = sov_solve(cfg, trunc, Some(setup.radius_omega))?;
    let p = sol.order();
    let kr = real(cfg.k * setup.radius_omega);
    let tab = bessel_table(p, kr)?;
    let ang = setup.angles();
    let jn = setup.j;
    let mut g = Vec::with_capacity(jn);
    let mut gd = Vec::with_capacity(jn);
    for a in &ang {
        g.push(sol.angular_sum(*a, |q| sol.modes[q].us * tab.h[q]));
        gd.push(sol.angular_sum(*a, |q| sol.modes[q].us * tab.hd[q]) * real(cfg.k));
    }
    let us = DMatrix::from_fn(jn, jn, |i, j| g[(i + jn - j) % jn]);
    let dus = DMatrix::from_fn(jn, jn, |i, j| gd[(i + jn - j) % jn]);
    let data = CauchyData { us, dus, setup: *setup, k: cfg.k };
    data.validate()?;
    Ok(data)
}

/// Far-field pattern `(4/i) Σ us_p e^{ip(θ_i - φ_j)}` on `J` equispaced directions.
pub fn sov_farfield<T: Real>(cfg: &ScattererConfig<T>, j: usize, trunc: Truncation) -> Result<DMatrix<Cx<T>>> {
    let sol = sov_solve(cfg, trunc, None)?;
    let h = T::two_pi() / T::nat(j);
    let four_over_i = -imag_unit::<T>() * real(T::lit(4.0));
    let g: Vec<Cx<T>> = (0..j)
        .map(|m| {
            let a = h * T::nat(m);
            // i^p is absent from the far-field series; undo the factor applied by angular_sum
            let mut acc = Cx::new(T::zero(), T::zero());
            for p in 0..=sol.order() {
                let w = if p == 0 { T::one() } else { T::lit(2.0) * (T::nat(p) * a).cos() };
                acc += sol.modes[p].us * real(w);
            }
            four_over_i * acc
        })
        .collect();
    Ok(DMatrix::from_fn(j, j, |a, b| g[(a + j - b) % j]))
}

/// Plane wave `e^{ik x·ŷ}` with `ŷ = (cos φ, sin φ)`.
pub fn plane_wave<T: Real>(k: T, x: Point2<T>, phi: T) -> Cx<T> {
    cis(k * (x.x * phi.cos() + x.y * phi.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use std::f64::consts::PI;

    fn example1(k: f64) -> ScattererConfig<f64> {
        ScattererConfig::new(k, cx(5.0, 0.0), cx(1.5, 0.0), cx(2.0, 0.0), BoundaryCurve::disk(0.5).unwrap())
    }

    fn null(k: f64, r: f64) -> ScattererConfig<f64> {
        ScattererConfig::new(k, cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), BoundaryCurve::disk(r).unwrap()).unchecked()
    }

    #[test]
    fn no_contrast_modes() {
        for p in [-3i64, 0, 1, 7] {
            let c = sov_mode_coefficients(p, &null(2.3, 0.7)).unwrap();
            assert!(abs(c.us) < 1e-15, "{}", abs(c.us));
            assert!(abs(c.u - cx(1.0, 0.0)) < 1e-14);
        }
    }

    #[test]
    fn matches_direct_elimination() {
        // 40-digit elimination, see tests/data/gen_sov_reference.py
        let reference = [
            (0, [-0.005_294_548_229_486_611_1, -0.072_570_765_384_776_336, -0.723_417_832_703_218_61, 0.052_778_423_722_141_816]),
            (1, [-0.924_476_429_227_920_56, -0.264_234_291_926_528_99, -0.176_659_360_855_454_23, 0.618_078_047_033_909_7]),
            (4, [-0.000_990_530_476_594_428_56, -0.031_457_102_949_403_433, 0.018_166_289_950_701_297, -0.000_572_025_461_841_265_5]),
        ];
        let cfg = example1(1.5 * PI);
        for (p, v) in reference {
            let c = sov_mode_coefficients(p, &cfg).unwrap();
            let (us, u) = (cx(v[0], v[1]), cx(v[2], v[3]));
            assert!(abs(c.us - us) < 1e-12 * abs(us), "p={p}");
            assert!(abs(c.u - u) < 1e-12 * abs(u), "p={p}");
        }
    }

    #[test]
    fn residuals_are_small() {
        for cfg in [example1(1.5 * PI), example1(5.0 * PI)] {
            for p in -20..=20 {
                let c = sov_mode_coefficients(p, &cfg).unwrap();
                assert!(sov_mode_residual(p, &cfg, c).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn non_disk_routes_elsewhere() {
        let mut cfg = example1(2.0);
        cfg.curve = BoundaryCurve::ellipse(0.5, 0.4).unwrap();
        assert!(matches!(sov_mode_coefficients(0, &cfg), Err(Error::WrongSolver(_))));
        cfg.curve = BoundaryCurve::circle([0.1, 0.0], 0.5).unwrap();
        let s = MeasurementSetup::new(1.0, 8);
        assert!(matches!(sov_cauchy_data(&cfg, &s, Truncation::Fixed(15)), Err(Error::WrongSolver(_))));
    }

    #[test]
    fn sign_conditions() {
        let mut cfg = example1(2.0);
        cfg.n = cx(5.0, -0.1);
        assert!(matches!(cfg.validate(), Err(Error::InvalidParameter(_))));
        cfg.n = cx(5.0, 0.1);
        cfg.gamma = cx(2.0, 0.5);
        assert!(cfg.validate().is_err());
        cfg.gamma = cx(2.0, -0.5);
        cfg.mu = cx(0.0, 0.0);
        assert!(cfg.validate().is_err());
        assert!(cfg.clone().unchecked().validate().is_ok());
    }

    #[test]
    fn near_resonance_reported() {
        let a = [[cx(1.0, 0.0), cx(2.0, 0.0)], [cx(0.5, 0.0), cx(1.0, 0.0)]];
        assert!(solve2::<f64>(a, [cx(1.0, 0.0), cx(0.0, 0.0)]).is_err());
    }

    #[test]
    fn example1_data_and_truncation() {
        let cfg = example1(1.5 * PI);
        let s = MeasurementSetup::new(1.0, 32);
        let a = sov_cauchy_data(&cfg, &s, Truncation::Fixed(15)).unwrap();
        let b = sov_cauchy_data(&cfg, &s, Truncation::Fixed(30)).unwrap();
        assert_eq!(a.us.shape(), (32, 32));
        let d = (&a.us - &b.us).iter().map(|v| abs(*v)).fold(0.0, f64::max);
        let dd = (&a.dus - &b.dus).iter().map(|v| abs(*v)).fold(0.0, f64::max);
        assert!(d <= 1e-10 && dd <= 1e-10, "{d} {dd}");
    }

    #[test]
    fn mode_decay_at_example1() {
        let cfg = example1(1.5 * PI);
        let m: Vec<f64> = (0..=15).map(|p| abs(sov_mode_coefficients(p, &cfg).unwrap().us)).collect();
        let peak = m.iter().cloned().fold(0.0, f64::max);
        assert!(m[15] / peak <= 1e-8);
    }

    #[test]
    fn circulant_structure_is_exact() {
        let cfg = example1(5.0 * PI);
        let s = MeasurementSetup::new(1.0, 16);
        let d = sov_cauchy_data(&cfg, &s, Truncation::default()).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                assert_eq!(d.us[(i, j)], d.us[((i + 1) % 16, (j + 1) % 16)]);
            }
        }
        let f = sov_farfield(&cfg, 16, Truncation::default()).unwrap();
        assert_eq!(f[(3, 1)], f[(5, 3)]);
    }

    #[test]
    fn no_contrast_data_and_farfield() {
        let s = MeasurementSetup::new(1.0, 32);
        let d = sov_cauchy_data(&null(5.0 * PI, 0.5), &s, Truncation::Fixed(15)).unwrap();
        assert!(d.us.iter().chain(d.dus.iter()).all(|v| abs(*v) <= 1e-12));
        let f = sov_farfield(&null(2.0, 2.0), 64, Truncation::Fixed(15)).unwrap();
        assert!(f.iter().all(|v| abs(*v) <= 1e-12));
    }

    #[test]
    fn farfield_truncation_self_consistency() {
        let cfg = ScattererConfig::new(2.0, cx(4.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), BoundaryCurve::disk(2.0).unwrap());
        let a = sov_farfield(&cfg, 64, Truncation::Fixed(25)).unwrap();
        let b = sov_farfield(&cfg, 64, Truncation::Fixed(50)).unwrap();
        assert!((&a - &b).iter().all(|v| abs(*v) <= 1e-10));
    }

    #[test]
    fn jacobi_anger() {
        for &k in &[1.0, 3.0, 5.0 * PI] {
            for &(r, th, phi) in &[(1.0, 0.3, 1.1), (0.5, 2.0, -0.4), (0.9, -1.3, 2.9)] {
                let p = 15 + (2.0 * k * r as f64).ceil() as usize;
                let j = j_orders(p, cx::<f64>(k * r, 0.0)).unwrap();
                let mut acc = cx::<f64>(0.0, 0.0);
                for q in -(p as i64)..=(p as i64) {
                    let jq = if q < 0 && q % 2 != 0 { -j[q.unsigned_abs() as usize] } else { j[q.unsigned_abs() as usize] };
                    acc += i_pow::<f64>(q) * jq * cis(q as f64 * (th - phi));
                }
                let x = Point2::new(r * f64::cos(th), r * f64::sin(th));
                assert!(abs(acc - plane_wave(k, x, phi)) < 1e-10);
            }
        }
    }

    #[test]
    fn fields_satisfy_transmission_conditions() {
        let cfg = example1(3.0);
        let sol = sov_solve(&cfg, Truncation::Fixed(25), None).unwrap();
        let (phi, th, r) = (0.7f64, 1.9f64, 0.5f64);
        let at = |d: f64| Point2::new((r + d) * th.cos(), (r + d) * th.sin());
        let outer = |d: f64| -> Cx<f64> { sol.scattered(at(d), phi).unwrap() + plane_wave(3.0, at(d), phi) };
        let inner = |d: f64| -> Cx<f64> { sol.interior(at(d), phi).unwrap() };
        assert!(abs(outer(0.0) - inner(0.0)) < 1e-12);
        let h = 1e-4;
        // one-sided second-order differences
        let dout = (outer(0.0) * -3.0 + outer(h) * 4.0 - outer(2.0 * h)) / (2.0 * h);
        let din = (inner(0.0) * 3.0 - inner(-h) * 4.0 + inner(-2.0 * h)) / (2.0 * h);
        let jump = dout - din;
        assert!(abs(jump - sol.robin_trace(th, phi).unwrap()) < 1e-5 * abs(jump).max(1.0));
    }
}
