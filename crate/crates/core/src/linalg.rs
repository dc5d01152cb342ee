//! Dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{ComplexField, DMatrix, Dyn, LU};

use crate::error::{Error, Result};
use crate::scalar::{abs, Cx, Real};

pub type CMatrix<T> = DMatrix<Cx<T>>;

/// LU factorization kept together with its explicit factors for adjoint solves.
pub struct Factorized<T: Real> {
    lu: LU<Cx<T>, Dyn, Dyn>,
    l: CMatrix<T>,
    u: CMatrix<T>,
    norm1: T,
}

impl<T: Real> Factorized<T> {
    pub fn new(a: &CMatrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::ShapeMismatch { expected: "square matrix".into(), found: format!("{:?}", a.shape()) });
        }
        let norm1 = norm1(a);
        let lu = a.clone().lu();
        let u = lu.u();
        let tiny = T::eps() * T::eps() * norm1;
        if (0..u.nrows()).any(|i| !(abs(u[(i, i)]) > tiny)) {
            return Err(Error::SingularMatrix(format!("zero pivot in {}x{} LU factorization", a.nrows(), a.ncols())));
        }
        Ok(Self { l: lu.l(), u, lu, norm1 })
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// Solves `A X = B`.
    pub fn solve(&self, b: &CMatrix<T>) -> CMatrix<T> {
        self.lu.solve(b).expect("pivots checked at factorization")
    }

    /// Solves `A^H X = B`.
    pub fn solve_adjoint(&self, b: &CMatrix<T>) -> CMatrix<T> {
        // P A = L U  =>  A^H = U^H L^H P
        let y = self.u.ad_solve_upper_triangular(b).expect("nonzero pivots");
        let mut w = self.l.ad_solve_lower_triangular(&y).expect("unit diagonal");
        self.lu.p().inv_permute_rows(&mut w);
        w
    }

    /// Hager–Higham estimate of the 1-norm condition number.
    pub fn cond1_estimate(&self) -> T {
        let n = self.dim();
        let zero = Cx::new(T::zero(), T::zero());
        let mut x = CMatrix::from_element(n, 1, Cx::new(T::one() / T::nat(n), T::zero()));
        let mut est = T::zero();
        let mut last_j = usize::MAX;
        for _ in 0..5 {
            let y = self.solve(&x);
            est = y.iter().fold(T::zero(), |s, v| s + abs(*v));
            let xi = y.map(|v| if v == zero { Cx::new(T::one(), T::zero()) } else { v.unscale(abs(v)) });
            let z = self.solve_adjoint(&xi);
            let (j, zmax) = z.iter().enumerate().fold((0, T::zero()), |(bj, bm), (j, v)| {
                if abs(*v) > bm { (j, abs(*v)) } else { (bj, bm) }
            });
            let ztx = z.iter().zip(x.iter()).fold(T::zero(), |s, (a, b)| s + (a.conj() * *b).re);
            if zmax <= ztx || j == last_j {
                break;
            }
            last_j = j;
            x.fill(zero);
            x[(j, 0)] = Cx::new(T::one(), T::zero());
        }
        // alternating-sign probe guards against underestimation
        let mut v = CMatrix::from_fn(n, 1, |i, _| {
            let s = if i % 2 == 0 { T::one() } else { -T::one() };
            Cx::new(s * (T::one() + T::nat(i) / T::nat((n - 1).max(1))), T::zero())
        });
        v = self.solve(&v);
        let alt = T::lit(2.0) * v.iter().fold(T::zero(), |s, c| s + abs(*c)) / (T::lit(3.0) * T::nat(n));
        est.max(alt) * self.norm1
    }
}

pub fn norm1<T: Real>(a: &CMatrix<T>) -> T {
    a.column_iter().map(|c| c.iter().fold(T::zero(), |s, v| s + abs(*v))).fold(T::zero(), |m, s| m.max(s))
}

pub fn frobenius<T: Real>(a: &CMatrix<T>) -> T {
    a.iter().fold(T::zero(), |s, v| s + v.modulus_squared()).sqrt()
}

pub fn max_abs<T: Real>(a: &CMatrix<T>) -> T {
    a.iter().fold(T::zero(), |m, v| m.max(abs(*v)))
}

/// `‖A X - B‖_F / ‖B‖_F` (absolute when `B = 0`).
pub fn relative_residual<T: Real>(a: &CMatrix<T>, x: &CMatrix<T>, b: &CMatrix<T>) -> T {
    let r = frobenius(&(a * x - b));
    let nb = frobenius(b);
    if nb > T::zero() { r / nb } else { r }
}

/// Singular values in descending order.
pub fn singular_values<T: Real>(a: &CMatrix<T>) -> Vec<T> {
    let mut s: Vec<T> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    s
}

/// `σ_min / σ_max`.
pub fn singular_value_ratio<T: Real>(a: &CMatrix<T>) -> T {
    let s = singular_values(a);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if hi > T::zero() => lo / hi,
        _ => T::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn sample(n: usize) -> CMatrix<f64> {
        CMatrix::from_fn(n, n, |i, j| {
            let d = if i == j { 4.0 } else { 0.0 };
            cx(d + ((i * 7 + j * 3) % 5) as f64 * 0.1, ((i + 2 * j) % 3) as f64 * 0.2 - 0.2)
        })
    }

    #[test]
    fn solves_and_adjoint_solves() {
        let a = sample(9);
        let f = Factorized::new(&a).unwrap();
        let b = CMatrix::from_fn(9, 2, |i, j| cx(i as f64, j as f64 - 1.0));
        let x = f.solve(&b);
        assert!(relative_residual(&a, &x, &b) < 1e-14);
        let y = f.solve_adjoint(&b);
        assert!(relative_residual(&a.adjoint(), &y, &b) < 1e-14);
    }

    #[test]
    fn condition_estimate_brackets_exact_value() {
        let a = sample(12);
        let f = Factorized::new(&a).unwrap();
        let inv = a.clone().try_inverse().unwrap();
        let exact = norm1(&a) * norm1(&inv);
        let est = f.cond1_estimate();
        assert!(est <= exact * (1.0 + 1e-12) && est >= exact / 3.0, "{est} vs {exact}");
        let mut s = CMatrix::<f64>::identity(4, 4);
        s[(3, 3)] = cx(1e-14, 0.0);
        let est = Factorized::new(&s).unwrap().cond1_estimate();
        assert!(est > 1e13);
    }

    #[test]
    fn singular_matrix_rejected() {
        let a = CMatrix::<f64>::from_element(3, 3, cx(1.0, 0.0));
        assert!(matches!(Factorized::new(&a), Err(Error::SingularMatrix(_))));
    }

    #[test]
    fn svd_ratio() {
        let a = CMatrix::<f64>::from_diagonal(&nalgebra::DVector::from_vec(vec![cx(2.0, 0.0), cx(0.0, 0.5), cx(-1.0, 0.0)]));
        assert!((singular_value_ratio(&a) - 0.25).abs() < 1e-15);
    }
}
