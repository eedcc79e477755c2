use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::Error;

pub type CMat = DMatrix<Complex64>;

pub fn frobenius(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn hermitian_part(a: &CMat) -> CMat {
    (a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn skew_part(a: &CMat) -> CMat {
    (a - a.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn is_hermitian(a: &CMat, tol: f64) -> bool {
    a.is_square() && frobenius(&(a - a.adjoint())) <= tol * (1.0 + frobenius(a))
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// Eigenvalues (ascending) and unitary eigenvectors of the hermitian part.
pub fn herm_eig(a: &CMat) -> (Vec<f64>, CMat) {
    let e = SymmetricEigen::new(hermitian_part(a));
    let mut idx: Vec<usize> = (0..e.eigenvalues.len()).collect();
    idx.sort_by(|&i, &j| e.eigenvalues[i].total_cmp(&e.eigenvalues[j]));
    let vals = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let vecs = CMat::from_fn(a.nrows(), a.ncols(), |r, c| e.eigenvectors[(r, idx[c])]);
    (vals, vecs)
}

/// `V f(Λ) V*` for hermitian `a = V Λ V*`.
pub fn herm_apply(a: &CMat, f: impl Fn(f64) -> f64) -> CMat {
    let (vals, v) = herm_eig(a);
    let d = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&x| Complex64::new(f(x), 0.0)),
    ));
    &v * d * v.adjoint()
}

pub fn check_positive(h: &CMat, what: &str) -> Result<(), Error> {
    if !h.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("{what} has non-finite entries")));
    }
    if !is_hermitian(h, 1e-10) {
        return Err(Error::Domain(format!("{what} is not hermitian")));
    }
    let (vals, _) = herm_eig(h);
    match vals.first() {
        Some(&l) if l > 0.0 => Ok(()),
        _ => Err(Error::Domain(format!("{what} is not positive definite"))),
    }
}

pub fn sqrtm(h: &CMat) -> CMat {
    herm_apply(h, f64::sqrt)
}

pub fn inv_sqrtm(h: &CMat) -> CMat {
    herm_apply(h, |x| 1.0 / x.sqrt())
}

pub fn logm(h: &CMat) -> CMat {
    herm_apply(h, f64::ln)
}

pub fn expm_herm(s: &CMat) -> CMat {
    herm_apply(s, f64::exp)
}

pub fn inverse(a: &CMat) -> Result<CMat, Error> {
    a.clone().try_inverse().ok_or_else(|| Error::Domain("singular matrix".into()))
}

/// `a^{1/2} (a^{-1/2} b a^{-1/2})^s a^{1/2}`: the affine-invariant geodesic.
pub fn geodesic(a: &CMat, b: &CMat, s: f64) -> CMat {
    let ah = sqrtm(a);
    let ai = inv_sqrtm(a);
    let mid = herm_apply(&(&ai * b * &ai), |x| x.powf(s));
    hermitian_part(&(&ah * mid * &ah))
}

/// `‖log(a^{-1/2} b a^{-1/2})‖²`.
pub fn dist_sq(a: &CMat, b: &CMat) -> f64 {
    let ai = inv_sqrtm(a);
    let (vals, _) = herm_eig(&(&ai * b * &ai));
    vals.iter().map(|x| x.ln().powi(2)).sum()
}

/// Solve `(c·T + μ) x = rhs` where `T = tridiag(−1, 2, −1)`, one scalar
/// system per matrix entry.
pub fn laplace_solve(rhs: &[CMat], c: f64, mu: f64) -> Vec<CMat> {
    let n = rhs.len();
    if n == 0 {
        return Vec::new();
    }
    let diag = 2.0 * c + mu;
    let off = -c;
    let mut cp = vec![0.0; n];
    let mut dp: Vec<CMat> = Vec::with_capacity(n);
    cp[0] = off / diag;
    dp.push(&rhs[0] / Complex64::new(diag, 0.0));
    for i in 1..n {
        let denom = diag - off * cp[i - 1];
        cp[i] = off / denom;
        let v = (&rhs[i] - &dp[i - 1] * Complex64::new(off, 0.0)) / Complex64::new(denom, 0.0);
        dp.push(v);
    }
    for i in (0..n - 1).rev() {
        let v = &dp[i] - &dp[i + 1] * Complex64::new(cp[i], 0.0);
        dp[i] = v;
    }
    dp
}
