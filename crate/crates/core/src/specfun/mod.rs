//! Integer-order Bessel `J_p` and Hankel `H_p^{(1)}` functions for complex arguments.
//!
//! Supported envelope: `|z| <= 1e3`, `0 <= p <= 64`. Hankel functions additionally
//! reject the closed left half of the lower half-plane (`Im z < 0` and `Re z <= 0`),
//! which lies across the principal branch cut of the reflection formula.
//!
//! Algorithms:
//! - `|z| <= 12`: ascending series (compensated accumulation) for `J_p`, and the
//!   logarithmic series for `Y_0`, `Y_1` when `Im z <= 1.5`.
//! - `|z| > 12`: Miller backward recurrence for `J_p`, normalized by the
//!   generating-function identity `e^{-iz} = J_0 + 2 Σ (-i)^n J_n`.
//! - `H_0`, `H_1`: Hankel asymptotic expansion for `|z| >= 40`, otherwise Steed's
//!   continued fraction for `H_0'/H_0` combined with the Wronskian.
//! - Higher Hankel orders by forward recurrence; `Im z < 0` by reflection.

mod lattice;

pub use lattice::{validation_lattice, LatticeReport};

use nalgebra::ComplexField;

use crate::error::{Error, Result};
use crate::scalar::{abs, cx, imag_unit, is_finite, CompensatedSum, Cx, Real};

/// Largest supported order for public entry points.
pub const MAX_ORDER: usize = 64;
/// Largest supported `|z|`.
pub const MAX_ABS_ARG: f64 = 1.0e3;

const SERIES_RADIUS: f64 = 12.0;
const ASYMPTOTIC_RADIUS: f64 = 40.0;
const Y_SERIES_MAX_IM: f64 = 1.5;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const RESCALE: f64 = 1.0e30;

fn check_arg<T: Real>(function: &'static str, p: usize, max_p: usize, z: Cx<T>) -> Result<()> {
    if !is_finite(z) {
        return Err(Error::UnsupportedDomain { function, detail: "non-finite argument".into() });
    }
    if p > max_p {
        return Err(Error::UnsupportedDomain { function, detail: format!("order {p} exceeds {max_p}") });
    }
    let m = abs(z).to_f64();
    if m > MAX_ABS_ARG {
        return Err(Error::UnsupportedDomain { function, detail: format!("|z| = {m} exceeds {MAX_ABS_ARG}") });
    }
    Ok(())
}

/// Maps a `-0` imaginary part to `+0`, so the negative real axis is read from above.
fn upper_zero<T: Real>(z: Cx<T>) -> Cx<T> {
    Cx::new(z.re, z.im + T::zero())
}

fn check_hankel_arg<T: Real>(function: &'static str, p: usize, max_p: usize, z: Cx<T>) -> Result<()> {
    check_arg(function, p, max_p, z)?;
    if z.re == T::zero() && z.im == T::zero() {
        return Err(Error::SingularArgument(format!("{function} at z = 0")));
    }
    if z.im < T::zero() && z.re <= T::zero() {
        return Err(Error::UnsupportedDomain {
            function,
            detail: format!("z = {} {:+}i lies across the branch cut", z.re.to_f64(), z.im.to_f64()),
        });
    }
    Ok(())
}

fn finite_or<T: Real>(name: &'static str, v: Vec<Cx<T>>) -> Result<Vec<Cx<T>>> {
    if v.iter().all(|z| is_finite(*z)) {
        Ok(v)
    } else {
        Err(Error::NonFinite(name))
    }
}

/// `J_p(z)`.
pub fn bessel_j<T: Real>(p: usize, z: Cx<T>) -> Result<Cx<T>> {
    check_arg("bessel_j", p, MAX_ORDER, z)?;
    Ok(j_orders_unchecked(p, z, "bessel_j")?[p])
}

/// `H_p^{(1)}(z)`.
pub fn hankel1<T: Real>(p: usize, z: Cx<T>) -> Result<Cx<T>> {
    let z = upper_zero(z);
    check_hankel_arg("hankel1", p, MAX_ORDER, z)?;
    Ok(h1_orders_unchecked(p, z)?[p])
}

/// `J_p'(z)`.
pub fn bessel_j_deriv<T: Real>(p: usize, z: Cx<T>) -> Result<Cx<T>> {
    check_arg("bessel_j_deriv", p, MAX_ORDER, z)?;
    let j = j_orders_unchecked(p + 1, z, "bessel_j_deriv")?;
    Ok(deriv_from_orders(&j, p))
}

/// `H_p^{(1)'}(z)`.
pub fn hankel1_deriv<T: Real>(p: usize, z: Cx<T>) -> Result<Cx<T>> {
    let z = upper_zero(z);
    check_hankel_arg("hankel1_deriv", p, MAX_ORDER, z)?;
    let h = h1_orders_unchecked(p + 1, z)?;
    Ok(deriv_from_orders(&h, p))
}

/// `J_{p}(z)` for a signed order via `J_{-p} = (-1)^p J_p`.
pub fn bessel_j_signed<T: Real>(p: i64, z: Cx<T>) -> Result<Cx<T>> {
    let v = bessel_j(p.unsigned_abs() as usize, z)?;
    Ok(if p < 0 && p % 2 != 0 { -v } else { v })
}

/// `J_0..=J_pmax` at `z` (`pmax <= 65` so that derivatives up to order 64 are available).
pub fn j_orders<T: Real>(pmax: usize, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    check_arg("j_orders", pmax, MAX_ORDER + 1, z)?;
    j_orders_unchecked(pmax, z, "j_orders")
}

/// `H_0..=H_pmax` at `z` (`pmax <= 65`).
pub fn h1_orders<T: Real>(pmax: usize, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    let z = upper_zero(z);
    check_hankel_arg("h1_orders", pmax, MAX_ORDER + 1, z)?;
    h1_orders_unchecked(pmax, z)
}

/// Derivative of order `p` from a table holding orders `0..=p+1`.
pub fn deriv_from_orders<T: Real>(c: &[Cx<T>], p: usize) -> Cx<T> {
    if p == 0 {
        -c[1]
    } else {
        (c[p - 1] - c[p + 1]).scale(T::lit(0.5))
    }
}

/// Values and derivatives of `J_p` and `H_p^{(1)}` for `p = 0..=pmax`.
#[derive(Debug, Clone)]
pub struct BesselTable<T: Real> {
    pub j: Vec<Cx<T>>,
    pub jd: Vec<Cx<T>>,
    pub h: Vec<Cx<T>>,
    pub hd: Vec<Cx<T>>,
}

/// `J`, `J'`, `H`, `H'` for orders `0..=pmax` (`pmax <= 64`).
pub fn bessel_table<T: Real>(pmax: usize, z: Cx<T>) -> Result<BesselTable<T>> {
    let z = upper_zero(z);
    check_hankel_arg("bessel_table", pmax, MAX_ORDER, z)?;
    let j = j_orders_unchecked(pmax + 1, z, "bessel_table")?;
    let h = h1_orders_unchecked(pmax + 1, z)?;
    let jd = (0..=pmax).map(|p| deriv_from_orders(&j, p)).collect();
    let hd = (0..=pmax).map(|p| deriv_from_orders(&h, p)).collect();
    Ok(BesselTable { j: j[..=pmax].to_vec(), jd, h: h[..=pmax].to_vec(), hd })
}

/// `[J_0, J_1, H_0, H_1]` at `z`; the kernel-assembly fast path.
pub fn bessel01<T: Real>(z: Cx<T>) -> Result<[Cx<T>; 4]> {
    let z = upper_zero(z);
    check_hankel_arg("bessel01", 1, 1, z)?;
    if z.im < T::zero() {
        let [j0, j1, h0c, h1c] = upper01(z.conj())?;
        let j0 = j0.conj();
        let j1 = j1.conj();
        let two = T::lit(2.0);
        return finite4([j0, j1, j0.scale(two) - h0c.conj(), j1.scale(two) - h1c.conj()]);
    }
    finite4(upper01(z)?)
}

/// `[J_0, J_1]` at `z`; valid everywhere in the envelope including `z = 0`.
pub fn bessel_j01<T: Real>(z: Cx<T>) -> Result<[Cx<T>; 2]> {
    check_arg("bessel_j01", 1, 1, z)?;
    let (w, flip) = if z.im < T::zero() { (z.conj(), true) } else { (z, false) };
    let [a, b] = if abs(w) <= T::lit(SERIES_RADIUS) {
        let s = series01(w, false);
        [s.j0, s.j1]
    } else {
        let v = j_miller(1, w);
        [v[0], v[1]]
    };
    let r = if flip { [a.conj(), b.conj()] } else { [a, b] };
    if is_finite(r[0]) && is_finite(r[1]) {
        Ok(r)
    } else {
        Err(Error::NonFinite("bessel_j01"))
    }
}

fn finite4<T: Real>(v: [Cx<T>; 4]) -> Result<[Cx<T>; 4]> {
    if v.iter().all(|z| is_finite(*z)) {
        Ok(v)
    } else {
        Err(Error::NonFinite("bessel01"))
    }
}

/// `[J0, J1, H0, H1]` for `Im z >= 0`.
fn upper01<T: Real>(z: Cx<T>) -> Result<[Cx<T>; 4]> {
    let m = abs(z);
    if m <= T::lit(SERIES_RADIUS) && z.im <= T::lit(Y_SERIES_MAX_IM) {
        let s = series01(z, true);
        let i = imag_unit::<T>();
        return Ok([s.j0, s.j1, s.j0 + i * s.y0, s.j1 + i * s.y1]);
    }
    let (j0, j1) = if m <= T::lit(SERIES_RADIUS) {
        let s = series01(z, false);
        (s.j0, s.j1)
    } else {
        let v = j_miller(1, z);
        (v[0], v[1])
    };
    let (h0, h1) = if m >= T::lit(ASYMPTOTIC_RADIUS) {
        (hankel_asymptotic(0, z), hankel_asymptotic(1, z))
    } else {
        hankel01_cf2(z, j0, j1)?
    };
    Ok([j0, j1, h0, h1])
}

fn j_orders_unchecked<T: Real>(pmax: usize, z: Cx<T>, name: &'static str) -> Result<Vec<Cx<T>>> {
    if z.im < T::zero() {
        let v = j_orders_upper(pmax, z.conj());
        return finite_or(name, v.into_iter().map(|c| c.conj()).collect());
    }
    finite_or(name, j_orders_upper(pmax, z))
}

fn j_orders_upper<T: Real>(pmax: usize, z: Cx<T>) -> Vec<Cx<T>> {
    if abs(z) <= T::lit(SERIES_RADIUS) {
        (0..=pmax).map(|p| j_series(p, z)).collect()
    } else {
        j_miller(pmax, z)
    }
}

fn h1_orders_unchecked<T: Real>(pmax: usize, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    if z.im < T::zero() {
        let j = j_orders_unchecked(pmax.max(1), z, "h1_orders")?;
        let hc = h_orders_upper(pmax, z.conj())?;
        let two = T::lit(2.0);
        let v = (0..=pmax).map(|p| j[p].scale(two) - hc[p].conj()).collect();
        return finite_or("h1_orders", v);
    }
    finite_or("h1_orders", h_orders_upper(pmax, z)?)
}

fn h_orders_upper<T: Real>(pmax: usize, z: Cx<T>) -> Result<Vec<Cx<T>>> {
    let [_, _, h0, h1] = upper01(z)?;
    let mut h = Vec::with_capacity(pmax + 1);
    h.push(h0);
    if pmax >= 1 {
        h.push(h1);
    }
    for p in 1..pmax {
        let c = Cx::new(T::nat(2 * p), T::zero()) / z;
        let next = c * h[p] - h[p - 1];
        h.push(next);
    }
    Ok(h)
}

/// Ascending series for `J_p`.
fn j_series<T: Real>(p: usize, z: Cx<T>) -> Cx<T> {
    let zero = Cx::new(T::zero(), T::zero());
    if z == zero {
        return if p == 0 { cx(1.0, 0.0) } else { zero };
    }
    let half = z.scale(T::lit(0.5));
    let mut term: Cx<T> = cx(1.0, 0.0);
    for m in 1..=p {
        term = term * half.unscale(T::nat(m));
    }
    if term == zero {
        return zero;
    }
    let q = -(half * half);
    let qa = abs(q);
    let eps = T::eps();
    let mut acc = CompensatedSum::default();
    acc.add(term);
    for k in 1..400usize {
        term = term * q.unscale(T::nat(k * (k + p)));
        acc.add(term);
        let decreasing = T::nat(k * (k + p)) > qa;
        if decreasing && abs(term) <= eps * abs(acc.value()) {
            break;
        }
    }
    acc.value()
}

struct Series01<T: Real> {
    j0: Cx<T>,
    j1: Cx<T>,
    y0: Cx<T>,
    y1: Cx<T>,
}

/// Joint series for `J_0`, `J_1`, and (optionally) `Y_0`, `Y_1`.
fn series01<T: Real>(z: Cx<T>, with_y: bool) -> Series01<T> {
    let zero = Cx::new(T::zero(), T::zero());
    let half = z.scale(T::lit(0.5));
    let q = -(half * half);
    let qa = abs(q);
    let eps = T::eps();
    let mut u: Cx<T> = cx(1.0, 0.0);
    let mut v = half;
    let (mut j0, mut j1) = (CompensatedSum::default(), CompensatedSum::default());
    let (mut s0, mut s1) = (CompensatedSum::default(), CompensatedSum::default());
    j0.add(u);
    j1.add(v);
    let mut hk = T::zero();
    let mut hk1 = T::one();
    s1.add(v.scale(hk + hk1));
    for k in 1..400usize {
        let kf = T::nat(k);
        u = u * q.unscale(kf * kf);
        v = v * q.unscale(kf * (kf + T::one()));
        hk = hk1;
        hk1 += T::one() / (kf + T::one());
        j0.add(u);
        j1.add(v);
        if with_y {
            s0.add(u.scale(hk));
            s1.add(v.scale(hk + hk1));
        }
        let decreasing = kf * kf > qa;
        let scale = abs(j0.value()) + abs(j1.value()) + abs(s0.value()) + abs(s1.value());
        if decreasing && (abs(u) + abs(v)) * (T::one() + hk1 + hk1) <= eps * scale {
            break;
        }
    }
    let (j0, j1) = (j0.value(), j1.value());
    let (y0, y1) = if with_y {
        let pi = T::pi();
        let two_pi = T::lit(2.0) / pi;
        let l = half.ln() + cx(EULER_GAMMA, 0.0);
        let y0 = (l * j0 - s0.value()).scale(two_pi);
        let y1 = (l * j1).scale(two_pi) - z.recip().scale(two_pi) - s1.value().unscale(pi);
        (y0, y1)
    } else {
        (zero, zero)
    };
    Series01 { j0, j1, y0, y1 }
}

/// Miller backward recurrence for `J_0..=J_pmax`, `Im z >= 0`.
fn j_miller<T: Real>(pmax: usize, z: Cx<T>) -> Vec<Cx<T>> {
    let m = abs(z).to_f64();
    let mut n = pmax.max(1).max(m.ceil() as usize) + 1 + (10.0 * m.cbrt()).ceil() as usize + 20;
    if n % 2 == 1 {
        n += 1;
    }
    let zero = Cx::new(T::zero(), T::zero());
    let big = T::lit(RESCALE);
    let inv_big = T::one() / big;
    let mut f = vec![zero; n + 2];
    f[n] = cx(1.0e-30, 0.0);
    let zi = z.recip();
    for k in (1..=n).rev() {
        let next = zi.scale(T::nat(2 * k)) * f[k] - f[k + 1];
        f[k - 1] = next;
        if abs(next) > big {
            for v in f[k - 1..].iter_mut() {
                *v = v.scale(inv_big);
            }
        }
    }
    // e^{-iz} = J_0 + 2 Σ (-i)^n J_n
    let mut acc = CompensatedSum::default();
    acc.add(f[0]);
    let ni = cx::<T>(0.0, -1.0);
    let mut ph: Cx<T> = cx(1.0, 0.0);
    for v in f.iter().take(n + 1).skip(1) {
        ph *= ni;
        acc.add((ph * *v).scale(T::lit(2.0)));
    }
    let norm = (-(imag_unit::<T>() * z)).exp() / acc.value();
    f.truncate(pmax + 1);
    f.into_iter().map(|v| v * norm).collect()
}

/// Hankel asymptotic expansion for orders 0 and 1 (`|z| >= 40`, `Im z >= 0`).
fn hankel_asymptotic<T: Real>(nu: usize, z: Cx<T>) -> Cx<T> {
    let i = imag_unit::<T>();
    let mu = T::lit(4.0 * (nu * nu) as f64);
    let eps = T::eps();
    let mut term: Cx<T> = cx(1.0, 0.0);
    let mut acc = CompensatedSum::default();
    acc.add(term);
    let mut last = T::one();
    for k in 1..200usize {
        let odd = T::nat(2 * k - 1);
        let factor = i.scale(mu - odd * odd) / z.scale(T::nat(8 * k));
        term *= factor;
        let a = abs(term);
        if a > last {
            break;
        }
        acc.add(term);
        last = a;
        if a <= eps * abs(acc.value()) {
            break;
        }
    }
    let phase = z - cx(std::f64::consts::FRAC_PI_4 * (1 + 2 * nu) as f64, 0.0);
    let pref = Cx::new((T::lit(2.0) / T::pi()).sqrt(), T::zero()) / z.sqrt();
    pref * (i * phase).exp() * acc.value()
}

/// Steed's continued fraction for `H_0'/H_0` plus the Wronskian (`Im z >= 0`).
fn hankel01_cf2<T: Real>(z: Cx<T>, j0: Cx<T>, j1: Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
    let i = imag_unit::<T>();
    let tiny = T::lit(1e-30);
    let tiny_c = Cx::new(tiny, T::zero());
    let eps = T::eps();
    let mut f = tiny_c;
    let mut c = f;
    let mut d = Cx::new(T::zero(), T::zero());
    let mut converged = false;
    for m in 1..20000usize {
        let h = T::nat(2 * m - 1) * T::lit(0.5);
        let a = Cx::new(h * h, T::zero());
        let b = (z + i.scale(T::nat(m))).scale(T::lit(2.0));
        d = b + a * d;
        if abs(d) < tiny {
            d = tiny_c;
        }
        c = b + a / c;
        if abs(c) < tiny {
            c = tiny_c;
        }
        d = d.recip();
        let delta = c * d;
        f *= delta;
        if abs(delta - cx(1.0, 0.0)) < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "Hankel continued fraction at z = {} {:+}i",
            z.re.to_f64(),
            z.im.to_f64()
        )));
    }
    let ratio = i - (z.scale(T::lit(2.0))).recip() + (i / z) * f;
    let w = i.scale(T::lit(2.0) / T::pi()) / z;
    let h0 = w / (j0 * ratio + j1);
    Ok((h0, -(ratio * h0)))
}
