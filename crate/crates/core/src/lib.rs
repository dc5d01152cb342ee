//! Forward scattering, direct sampling imaging and transmission eigenvalues for
//! penetrable obstacles with a second-order Robin transmission condition.
//!
//! Numerical routines are generic over the real scalar ([`Real`], implemented by
//! `f32` and `f64`); the `*64` aliases below fix the double-precision instances.

pub mod error;
pub mod forward_bie;
pub mod forward_born;
pub mod forward_sov;
pub mod geometry;
pub mod imaging;
pub mod linalg;
pub mod quadrature;
pub mod scalar;
pub mod specfun;
pub mod tev;

pub use error::{Error, Result};
pub use scalar::{Cx, Real};

pub type C64 = Cx<f64>;
pub type Curve64 = geometry::BoundaryCurve<f64>;
