use serde::Serialize;

use super::energy::HPath;
use super::linalg::{check_positive, commutator, frobenius, herm_eig, hermitian_part, inverse, CMat};
use super::path::{residual_f, Grid};
use super::solver::{solve_real_bvp, RealFlowProblem, SolveOptions};
use crate::error::Error;

/// `Φ(h) = log λ_max(h)`.
pub fn phi(h: &CMat) -> Result<f64, Error> {
    check_positive(h, "h")?;
    let (vals, _) = herm_eig(h);
    Ok(vals.last().expect("nonempty").ln())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexityViolation {
    pub node: usize,
    /// `"phi(h)"` or `"phi(h^-1)"`.
    pub variant: String,
    pub second_difference: f64,
    pub lower_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub nodes_checked: usize,
    pub norm: String,
    pub slack: f64,
    /// Smallest value of `Φ'' − bound` over both variants (negative means
    /// the bound was crossed, possibly within the slack).
    pub min_margin: f64,
    pub violations: Vec<ConvexityViolation>,
}

impl ConvexityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Second differences of `Φ(h)` and `Φ(h⁻¹)` for `h = g*g` against
/// `−2(|F(0, β₀)| + |F(g.(0, β₀))|)` with Frobenius norms, at interior nodes.
/// A node is flagged when it misses the bound by more than
/// `tol + Δt·(1 + max|F|)`.
pub fn convexity_check(grid: &Grid, g: &[CMat], beta0: &CMat, tol: f64) -> Result<ConvexityReport, Error> {
    if g.len() != grid.nodes {
        return Err(Error::Dimension(format!("expected {} nodes, got {}", grid.nodes, g.len())));
    }
    let h: Vec<CMat> = g.iter().map(|gk| hermitian_part(&(gk.adjoint() * gk))).collect();
    let hinv: Vec<CMat> = h.iter().map(inverse).collect::<Result<_, _>>()?;
    let f0 = frobenius(&(commutator(beta0, &beta0.adjoint()) * num_complex::Complex64::new(2.0, 0.0)));
    let pair = super::energy::gauge_pair(grid, g, beta0)?;
    let f1: Vec<f64> = residual_f(&pair).iter().map(frobenius).collect();
    let dt = grid.step();
    let fmax = f1.iter().cloned().fold(f0, f64::max);
    let slack = tol + dt * (1.0 + fmax);
    let mut violations = Vec::new();
    let mut min_margin = f64::INFINITY;
    for (variant, path) in [("phi(h)", &h), ("phi(h^-1)", &hinv)] {
        let p: Vec<f64> = path.iter().map(phi).collect::<Result<_, _>>()?;
        for k in 1..grid.nodes - 1 {
            let second = (p[k + 1] - 2.0 * p[k] + p[k - 1]) / (dt * dt);
            let bound = -2.0 * (f0 + f1[k]);
            min_margin = min_margin.min(second - bound);
            if second < bound - slack {
                violations.push(ConvexityViolation {
                    node: k,
                    variant: variant.to_string(),
                    second_difference: second,
                    lower_bound: bound,
                });
            }
        }
    }
    Ok(ConvexityReport {
        nodes_checked: 2 * (grid.nodes - 2),
        norm: "frobenius".into(),
        slack,
        min_margin,
        violations,
    })
}

/// Convexity check on a solved path, with `g = h^{1/2}`.
pub fn convexity_check_h(path: &HPath, beta0: &CMat, tol: f64) -> Result<ConvexityReport, Error> {
    convexity_check(&path.grid, &path.sqrt_path(), beta0, tol)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub seeds: [u64; 2],
    pub residuals: [f64; 2],
    pub distance: f64,
}

/// Solve twice from independently perturbed starting paths and return the
/// largest node-wise Frobenius distance between the two solutions.
pub fn uniqueness_check(problem: &RealFlowProblem, seeds: [u64; 2]) -> Result<UniquenessReport, Error> {
    let solve = |seed| {
        solve_real_bvp(problem, &SolveOptions { seed, perturbation: 0.5, ..SolveOptions::default() })
    };
    let a = solve(seeds[0])?;
    let b = solve(seeds[1])?;
    let distance = a.path.h.iter().zip(&b.path.h).map(|(x, y)| frobenius(&(x - y))).fold(0.0, f64::max);
    Ok(UniquenessReport { seeds, residuals: [a.residual, b.residual], distance })
}
