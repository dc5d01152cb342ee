//! Scalar abstraction shared by every numerical module.
//!
//! All math in this crate is written against [`Real`], which is satisfied by
//! `f32` and `f64`. Complex values are `num_complex::Complex<T>`; transcendental
//! functions on them go through nalgebra's `ComplexField`.

use nalgebra::{ComplexField, RealField};
use num_complex::Complex;

/// Real floating-point scalar usable by the solvers.
pub trait Real: RealField + Copy {
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        nalgebra::convert(x)
    }

    /// Lossy conversion to `f64` (exact for `f32` and `f64`).
    #[inline]
    fn to_f64(self) -> f64 {
        self.to_subset().unwrap_or(f64::NAN)
    }

    /// Machine epsilon of the scalar type.
    #[inline]
    fn eps() -> Self {
        Self::default_epsilon()
    }

    #[inline]
    fn nat(n: usize) -> Self {
        Self::lit(n as f64)
    }

    #[inline]
    fn int(n: i64) -> Self {
        Self::lit(n as f64)
    }
}

impl<T: RealField + Copy> Real for T {}

/// Complex number over a [`Real`] scalar.
pub type Cx<T> = Complex<T>;

#[inline]
pub fn cx<T: Real>(re: f64, im: f64) -> Cx<T> {
    Cx::new(T::lit(re), T::lit(im))
}

#[inline]
pub fn real<T: Real>(re: T) -> Cx<T> {
    Cx::new(re, T::zero())
}

#[inline]
pub fn imag_unit<T: Real>() -> Cx<T> {
    Cx::new(T::zero(), T::one())
}

#[inline]
pub fn is_finite<T: Real>(z: Cx<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `|z|` computed through nalgebra's `ComplexField` (no `Float` bound needed).
#[inline]
pub fn abs<T: Real>(z: Cx<T>) -> T {
    z.modulus()
}

/// `i^p` for any integer `p`, exact.
pub fn i_pow<T: Real>(p: i64) -> Cx<T> {
    match p.rem_euclid(4) {
        0 => cx(1.0, 0.0),
        1 => cx(0.0, 1.0),
        2 => cx(-1.0, 0.0),
        _ => cx(0.0, -1.0),
    }
}

/// `e^{i theta}` for real `theta`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Cx<T> {
    Cx::new(theta.cos(), theta.sin())
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<T: Real> {
    sum: Cx<T>,
    comp: Cx<T>,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self { sum: Cx::new(T::zero(), T::zero()), comp: Cx::new(T::zero(), T::zero()) }
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn add(&mut self, x: Cx<T>) {
        let (re, cre) = two_sum(self.sum.re, x.re);
        let (im, cim) = two_sum(self.sum.im, x.im);
        self.sum = Cx::new(re, im);
        self.comp = Cx::new(self.comp.re + cre, self.comp.im + cim);
    }

    pub fn value(&self) -> Cx<T> {
        self.sum + self.comp
    }
}

#[inline]
fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let err = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_pow_cycles() {
        for p in -8..8i64 {
            let direct = (0..p.unsigned_abs()).fold(cx::<f64>(1.0, 0.0), |acc, _| {
                if p >= 0 {
                    acc * cx(0.0, 1.0)
                } else {
                    acc * cx(0.0, -1.0)
                }
            });
            assert_eq!(i_pow::<f64>(p), direct);
        }
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut acc = CompensatedSum::<f64>::default();
        acc.add(cx(1.0e16, 0.0));
        for _ in 0..1000 {
            acc.add(cx(1.0, 1.0));
        }
        acc.add(cx(-1.0e16, 0.0));
        assert_eq!(acc.value(), cx(1000.0, 1000.0));
    }
}
