//! Exact Gaussian-rational scalars, polynomials and matrices.
//!
//! Everything here is exact: there are no tolerances anywhere in this module
//! or in the modules built on it.

mod laurent;
mod mat;
pub mod parse;
mod poly;
mod polymat;
mod scalar;

pub use laurent::LaurentMat;
pub use mat::Mat;
pub use poly::{poly_gcd_many, Poly};
pub use polymat::PolyMat;
pub use scalar::GaussScalar;

use crate::error::Error;

/// Characteristic polynomial `det(zI − M)`, monic of degree `size(M)`.
///
/// ```
/// use nahmkit::exact_algebra::{charpoly, Mat, Poly};
///
/// let m = Mat::from_i64_rows(&[&[1, 0], &[0, 2]]);
/// assert_eq!(charpoly(&m).unwrap(), Poly::from_i64s(&[2, -3, 1]));
/// ```
pub fn charpoly(m: &Mat) -> Result<Poly, Error> {
    m.charpoly()
}

/// The adjugate `adj(zI − M)`, satisfying `adj(zI − M)(zI − M) = charpoly(M)·I`.
pub fn resolvent_numerator(m: &Mat) -> Result<PolyMat, Error> {
    m.resolvent_numerator()
}

/// Exact basis of the right kernel.
pub fn nullspace(m: &Mat) -> Vec<Vec<GaussScalar>> {
    m.nullspace()
}

/// Exact determinant by fraction-free elimination.
pub fn det(m: &Mat) -> Result<GaussScalar, Error> {
    m.det()
}
