use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::energy::{discrete_energy, sup_norm, variational_residual, HPath};
use super::linalg::{check_positive, expm_herm, frobenius, geodesic, hermitian_part, laplace_solve, sqrtm, CMat};
use super::path::Grid;
use crate::error::Error;

/// Boundary data on the truncated interval `[0, L]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealFlowProblem {
    pub beta0: CMat,
    pub h_minus: CMat,
    pub h_plus: CMat,
    pub grid: Grid,
    pub tol: f64,
}

impl RealFlowProblem {
    pub fn new(beta0: CMat, h_minus: CMat, h_plus: CMat, grid: Grid, tol: f64) -> Result<Self, Error> {
        let m = beta0.nrows();
        for (name, a) in [("beta0", &beta0), ("h_minus", &h_minus), ("h_plus", &h_plus)] {
            if a.nrows() != m || a.ncols() != m {
                return Err(Error::Dimension(format!("{name} is {}x{}, expected {m}x{m}", a.nrows(), a.ncols())));
            }
        }
        check_positive(&h_minus, "h_minus")?;
        check_positive(&h_plus, "h_plus")?;
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Domain(format!("tol = {tol} must be positive")));
        }
        Ok(RealFlowProblem { beta0, h_minus, h_plus, grid, tol })
    }

    pub fn m(&self) -> usize {
        self.beta0.nrows()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    pub seed: u64,
    /// Size of the random smooth perturbation of the geodesic starting path.
    pub perturbation: f64,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { seed: 0, perturbation: 0.0, max_iterations: 5000 }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub path: HPath,
    pub residual: f64,
    pub iterations: usize,
    /// Residual after every accepted step, starting with the initial path.
    pub residual_history: Vec<f64>,
    pub energy: f64,
    pub seed: u64,
}

#[derive(Serialize)]
struct PathJson {
    t: Vec<f64>,
    h: Vec<Vec<Vec<[f64; 2]>>>,
}

impl SolveReport {
    pub fn eigenvalues(&self) -> Vec<Vec<f64>> {
        self.path.h.iter().map(|h| super::linalg::herm_eig(h).0).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let path = PathJson { t: self.path.grid.points(), h: self.path.h.iter().map(matrix_to_json).collect() };
        serde_json::json!({
            "converged": true,
            "energy": self.energy,
            "grid": self.path.grid.nodes,
            "iterations": self.iterations,
            "length": self.path.grid.length,
            "path": path,
            "residual": self.residual,
            "residual_history": self.residual_history,
            "seed": self.seed,
        })
    }

    /// One row per node: `t, λ₁, …, λ_m` (ascending eigenvalues of `h`).
    pub fn eigenvalue_csv(&self) -> String {
        let m = self.path.m();
        let mut s = String::from("t");
        for i in 1..=m {
            s.push_str(&format!(",lambda_{i}"));
        }
        s.push('\n');
        for (t, ev) in self.path.grid.points().iter().zip(self.eigenvalues()) {
            s.push_str(&format!("{t}"));
            for v in ev {
                s.push_str(&format!(",{v}"));
            }
            s.push('\n');
        }
        s
    }
}

pub fn matrix_to_json(a: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..a.nrows()).map(|r| (0..a.ncols()).map(|c| [a[(r, c)].re, a[(r, c)].im]).collect()).collect()
}

fn random_hermitian(rng: &mut ChaCha8Rng, m: usize) -> CMat {
    let a = CMat::from_fn(m, m, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    hermitian_part(&a)
}

/// Geodesic from `h₋` to `h₊`, bent by `g exp(ε Σ_j sin(jπt/L) R_j) g` with
/// seeded random hermitian `R_j` when `perturbation > 0`.
pub fn initial_path(problem: &RealFlowProblem, seed: u64, perturbation: f64) -> Vec<CMat> {
    let grid = &problem.grid;
    let m = problem.m();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modes: Vec<CMat> = (0..3).map(|_| random_hermitian(&mut rng, m)).collect();
    (0..grid.nodes)
        .map(|k| {
            if k == 0 {
                return problem.h_minus.clone();
            }
            if k + 1 == grid.nodes {
                return problem.h_plus.clone();
            }
            let s = k as f64 / (grid.nodes - 1) as f64;
            let base = geodesic(&problem.h_minus, &problem.h_plus, s);
            if perturbation == 0.0 {
                return base;
            }
            let mut x = CMat::zeros(m, m);
            for (j, r) in modes.iter().enumerate() {
                let w = ((j + 1) as f64 * std::f64::consts::PI * s).sin() / (j + 1) as f64;
                x += r * Complex64::new(perturbation * w, 0.0);
            }
            let g = sqrtm(&base);
            hermitian_part(&(&g * expm_herm(&x) * &g))
        })
        .collect()
}

/// Minimize the discretized Donaldson functional over `h` with fixed ends.
///
/// Each step moves `h_k ↦ g_k exp(τ S_k) g_k` with `g_k = h_k^{1/2}` and
/// `S = −(T/(2Δt²) + μ)⁻¹ F`, where `T` is the Dirichlet second-difference
/// matrix and `F` the variational residual. A step is accepted when the
/// functional satisfies the Armijo condition and the sup residual drops, so
/// the recorded residuals decrease strictly.
pub fn solve_real_bvp(problem: &RealFlowProblem, opts: &SolveOptions) -> Result<SolveReport, Error> {
    let grid = &problem.grid;
    let beta = &problem.beta0;
    let dt = grid.step();
    let mu = 4.0 * frobenius(beta).powi(2);
    let mut h = initial_path(problem, opts.seed, opts.perturbation);
    let mut energy = discrete_energy(grid, &h, beta)?;
    let mut f = variational_residual(grid, &h, beta)?;
    let mut res = sup_norm(&f);
    let mut history = vec![res];
    let mut iterations = 0;
    while res > problem.tol {
        if iterations >= opts.max_iterations {
            return Err(Error::NonConvergence { iterations, residual: res });
        }
        let interior = &f[1..f.len() - 1];
        let step: Vec<CMat> =
            laplace_solve(interior, 0.5 / (dt * dt), mu).into_iter().map(|s| -hermitian_part(&s)).collect();
        let predicted: f64 = dt * interior.iter().zip(&step).map(|(fk, sk)| (fk * sk).trace().re).sum::<f64>();
        let roots: Vec<CMat> = h[1..h.len() - 1].iter().map(sqrtm).collect();
        let mut tau = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let mut trial = h.clone();
            for (k, (g, s)) in roots.iter().zip(&step).enumerate() {
                trial[k + 1] = hermitian_part(&(g * expm_herm(&(s * Complex64::new(tau, 0.0))) * g));
            }
            let e = discrete_energy(grid, &trial, beta)?;
            let ft = variational_residual(grid, &trial, beta)?;
            let rt = sup_norm(&ft);
            let armijo = e <= energy + 1e-4 * tau * predicted + 1e-14 * energy.abs();
            if armijo && rt < res {
                accepted = Some((trial, e, ft, rt));
                break;
            }
            tau *= 0.5;
        }
        let Some((trial, e, ft, rt)) = accepted else {
            return Err(Error::NonConvergence { iterations, residual: res });
        };
        h = trial;
        energy = e;
        f = ft;
        res = rt;
        history.push(res);
        iterations += 1;
    }
    Ok(SolveReport {
        path: HPath::new(grid.clone(), h)?,
        residual: res,
        iterations,
        residual_history: history,
        energy,
        seed: opts.seed,
    })
}
