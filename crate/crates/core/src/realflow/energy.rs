use num_complex::Complex64;

use super::linalg::{check_positive, frobenius, hermitian_part, inv_sqrtm, inverse, logm, sqrtm, CMat};
use super::path::{derivative, ComplexPairPath, Grid};
use crate::error::Error;

/// Positive hermitian `h` at every node of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct HPath {
    pub grid: Grid,
    pub h: Vec<CMat>,
}

impl HPath {
    pub fn new(grid: Grid, h: Vec<CMat>) -> Result<Self, Error> {
        if h.len() != grid.nodes {
            return Err(Error::Dimension(format!("expected {} nodes, got {}", grid.nodes, h.len())));
        }
        for (k, hk) in h.iter().enumerate() {
            check_positive(hk, &format!("h at node {k}"))?;
        }
        Ok(HPath { grid, h })
    }

    pub fn m(&self) -> usize {
        self.h[0].nrows()
    }

    /// `g = h^{1/2}` node by node.
    pub fn sqrt_path(&self) -> Vec<CMat> {
        self.h.iter().map(sqrtm).collect()
    }
}

fn tr_re(a: &CMat) -> f64 {
    a.trace().re
}

/// `2 tr(h β h⁻¹ β*) = 2|h^{1/2} β h^{−1/2}|²`.
fn potential_density(h: &CMat, hinv: &CMat, beta0: &CMat) -> f64 {
    2.0 * tr_re(&(h * beta0 * hinv * beta0.adjoint()))
}

/// Trapezoid quadrature of `|α′ + α′*|² + 2|β′|²` for `(α′, β′) = g.(0, β₀)`.
///
/// The integrand is evaluated through `h = g*g` as
/// `¼ tr((h⁻¹ḣ)²) + 2 tr(h β₀ h⁻¹ β₀*)`, with `ḣ` from central differences,
/// so it does not see a node-wise unitary factor on the left of `g`.
pub fn donaldson_energy(grid: &Grid, g: &[CMat], beta0: &CMat) -> Result<f64, Error> {
    if g.len() != grid.nodes {
        return Err(Error::Dimension(format!("expected {} nodes, got {}", grid.nodes, g.len())));
    }
    let h: Vec<CMat> = g.iter().map(|gk| hermitian_part(&(gk.adjoint() * gk))).collect();
    for (k, gk) in g.iter().enumerate() {
        if gk.clone().try_inverse().is_none() || gk.determinant().norm() < 1e-300 {
            return Err(Error::Domain(format!("g is singular at node {k}")));
        }
    }
    energy_of_h(grid, &h, beta0)
}

pub fn energy_of_h(grid: &Grid, h: &[CMat], beta0: &CMat) -> Result<f64, Error> {
    let dh = derivative(grid, h);
    let mut total = 0.0;
    for k in 0..grid.nodes {
        let hinv = inverse(&h[k])?;
        let x = &hinv * &dh[k];
        let density = 0.25 * tr_re(&(&x * &x)) + potential_density(&h[k], &hinv, beta0);
        total += grid.weight(k) * density;
    }
    Ok(total)
}

/// `(α′, β′) = (−½ ġ g⁻¹, g β₀ g⁻¹)` with central differences for `ġ`.
pub fn gauge_pair(grid: &Grid, g: &[CMat], beta0: &CMat) -> Result<ComplexPairPath, Error> {
    let dg = derivative(grid, g);
    let mut alpha = Vec::with_capacity(g.len());
    let mut beta = Vec::with_capacity(g.len());
    for (k, gk) in g.iter().enumerate() {
        let gi = inverse(gk)?;
        alpha.push(&dg[k] * &gi * Complex64::new(-0.5, 0.0));
        beta.push(gk * beta0 * &gi);
    }
    ComplexPairPath::new(grid.clone(), alpha, beta)
}

/// The discretized functional the solver minimizes:
/// `Σ d(h_k, h_{k+1})² / (4Δt) + Σ w_k 2 tr(h_k β₀ h_k⁻¹ β₀*)`, where `d` is
/// the affine-invariant distance on positive matrices.
pub fn discrete_energy(grid: &Grid, h: &[CMat], beta0: &CMat) -> Result<f64, Error> {
    let dt = grid.step();
    let mut total = 0.0;
    for k in 0..h.len() {
        let hinv = inverse(&h[k])?;
        total += grid.weight(k) * potential_density(&h[k], &hinv, beta0);
        if k + 1 < h.len() {
            total += super::linalg::dist_sq(&h[k], &h[k + 1]) / (4.0 * dt);
        }
    }
    Ok(total)
}

/// `∂J/∂h_k` at the interior nodes, as the hermitian matrix `G_k` with
/// `dJ = Σ Re tr(G_k δh_k)`. Endpoint entries are zero.
pub fn discrete_gradient(grid: &Grid, h: &[CMat], beta0: &CMat) -> Result<Vec<CMat>, Error> {
    let m = h[0].nrows();
    let dt = grid.step();
    let mut out = vec![CMat::zeros(m, m); h.len()];
    for k in 1..h.len() - 1 {
        let hinv = inverse(&h[k])?;
        let s = inv_sqrtm(&h[k]);
        let lg = |o: &CMat| &s * logm(&hermitian_part(&(&s * o * &s))) * &s;
        let kinetic = (lg(&h[k - 1]) + lg(&h[k + 1])) * Complex64::new(-0.5 / dt, 0.0);
        let pot = (beta0 * &hinv * beta0.adjoint() - &hinv * beta0.adjoint() * &h[k] * beta0 * &hinv)
            * Complex64::new(2.0 * dt, 0.0);
        out[k] = hermitian_part(&(kinetic + pot));
    }
    Ok(out)
}

/// `F_k = h_k^{1/2} (G_k / Δt) h_k^{1/2}`: the discrete real equation at the
/// interior nodes. It reduces to `F(α′, β′)` for `g = h^{1/2}` as `Δt → 0`.
pub fn variational_residual(grid: &Grid, h: &[CMat], beta0: &CMat) -> Result<Vec<CMat>, Error> {
    let grad = discrete_gradient(grid, h, beta0)?;
    let scale = Complex64::new(1.0 / grid.step(), 0.0);
    Ok((0..h.len())
        .map(|k| {
            if k == 0 || k + 1 == h.len() {
                grad[k].clone()
            } else {
                let g = sqrtm(&h[k]);
                hermitian_part(&(&g * &grad[k] * &g * scale))
            }
        })
        .collect())
}

pub fn sup_norm(f: &[CMat]) -> f64 {
    f.iter().map(frobenius).fold(0.0, f64::max)
}
