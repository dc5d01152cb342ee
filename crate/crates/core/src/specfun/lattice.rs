use crate::scalar::{abs, cx, Cx};

use super::{bessel_j, bessel_j_deriv, hankel1, hankel1_deriv};

/// Maximum normalized identity residuals over the validation lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeReport {
    pub points: usize,
    pub wronskian: f64,
    pub recurrence_j: f64,
    pub recurrence_h: f64,
    pub conjugation: f64,
}

impl LatticeReport {
    pub fn max_residual(&self) -> f64 {
        self.wronskian.max(self.recurrence_j).max(self.recurrence_h).max(self.conjugation)
    }
}

/// Checks the Wronskian, three-term recurrence and conjugate symmetry on
/// `|z| ∈ [0.1, 60]` (log-spaced), `|arg z| <= π/3`, `p <= 20`.
///
/// Residuals:
/// - Wronskian `|J H' - J' H - 2i/(πz)| / max(|2/(πz)|, |J||H'| + |J'||H|)`
/// - recurrence `|C_{p-1} + C_{p+1} - (2p/z) C_p| / max(1, |C_p|)` for `J`, and
///   relative to `|C_{p-1}| + |C_{p+1}|` for `H`
/// - conjugation `|J_p(conj z) - conj J_p(z)| / max(1, |J_p(z)|)`
pub fn validation_lattice(n_mod: usize, n_arg: usize, pmax: usize) -> crate::Result<LatticeReport> {
    let mut rep = LatticeReport { points: 0, wronskian: 0.0, recurrence_j: 0.0, recurrence_h: 0.0, conjugation: 0.0 };
    let third = std::f64::consts::PI / 3.0;
    for a in 0..n_mod {
        let m = 0.1 * (600.0f64).powf(a as f64 / (n_mod - 1).max(1) as f64);
        for b in 0..n_arg {
            let arg = -third + 2.0 * third * b as f64 / (n_arg - 1).max(1) as f64;
            let z: Cx<f64> = Cx::from_polar(m, arg);
            let j = super::j_orders(pmax + 1, z)?;
            let h = super::h1_orders(pmax + 1, z)?;
            for p in 0..=pmax {
                rep.points += 1;
                let (jp, hp) = (bessel_j(p, z)?, hankel1(p, z)?);
                let (jd, hd) = (bessel_j_deriv(p, z)?, hankel1_deriv(p, z)?);
                let w = cx::<f64>(0.0, 2.0 / std::f64::consts::PI) / z;
                let scale = abs(w).max(abs(jp) * abs(hd) + abs(jd) * abs(hp));
                rep.wronskian = rep.wronskian.max(abs(jp * hd - jd * hp - w) / scale);
                if p >= 1 {
                    let c = cx::<f64>(2.0 * p as f64, 0.0) / z;
                    let rj = abs(j[p - 1] + j[p + 1] - c * j[p]) / abs(j[p]).max(1.0);
                    rep.recurrence_j = rep.recurrence_j.max(rj);
                    let rh = abs(h[p - 1] + h[p + 1] - c * h[p]) / (abs(h[p - 1]) + abs(h[p + 1]));
                    rep.recurrence_h = rep.recurrence_h.max(rh);
                }
                let jc = bessel_j(p, z.conj())?;
                rep.conjugation = rep.conjugation.max(abs(jc - jp.conj()) / abs(jp).max(1.0));
            }
        }
    }
    Ok(rep)
}
