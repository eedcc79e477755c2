use num_complex::Complex64;

use super::linalg::{commutator, frobenius, CMat};
use crate::error::Error;

pub const MIN_GRID: usize = 16;

/// Uniform nodes `t₀ = 0, …, t_{G−1} = L`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub length: f64,
    pub nodes: usize,
}

impl Grid {
    pub fn new(length: f64, nodes: usize) -> Result<Self, Error> {
        if nodes < MIN_GRID {
            return Err(Error::Domain(format!("grid has {nodes} nodes, at least {MIN_GRID} are required")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Domain(format!("interval length {length} must be positive")));
        }
        Ok(Grid { length, nodes })
    }

    pub fn step(&self) -> f64 {
        self.length / (self.nodes - 1) as f64
    }

    pub fn t(&self, k: usize) -> f64 {
        self.step() * k as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.nodes).map(|k| self.t(k)).collect()
    }

    /// Trapezoid weights.
    pub fn weight(&self, k: usize) -> f64 {
        if k == 0 || k + 1 == self.nodes {
            self.step() / 2.0
        } else {
            self.step()
        }
    }
}

/// Node-wise derivative: central differences inside, second-order one-sided
/// differences at the ends.
pub fn derivative(grid: &Grid, f: &[CMat]) -> Vec<CMat> {
    let n = f.len();
    let h = grid.step();
    (0..n)
        .map(|k| {
            if k == 0 {
                (&f[0] * Complex64::new(-3.0, 0.0) + &f[1] * Complex64::new(4.0, 0.0) - &f[2]) / Complex64::new(2.0 * h, 0.0)
            } else if k + 1 == n {
                (&f[n - 1] * Complex64::new(3.0, 0.0) - &f[n - 2] * Complex64::new(4.0, 0.0) + &f[n - 3])
                    / Complex64::new(2.0 * h, 0.0)
            } else {
                (&f[k + 1] - &f[k - 1]) / Complex64::new(2.0 * h, 0.0)
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPairPath {
    pub grid: Grid,
    pub alpha: Vec<CMat>,
    pub beta: Vec<CMat>,
}

impl ComplexPairPath {
    pub fn new(grid: Grid, alpha: Vec<CMat>, beta: Vec<CMat>) -> Result<Self, Error> {
        if alpha.len() != grid.nodes || beta.len() != grid.nodes {
            return Err(Error::Dimension(format!("expected {} nodes", grid.nodes)));
        }
        let m = alpha[0].nrows();
        if alpha.iter().chain(&beta).any(|a| a.nrows() != m || a.ncols() != m) {
            return Err(Error::Dimension(format!("every matrix must be {m}x{m}")));
        }
        if alpha.iter().chain(&beta).flat_map(|a| a.iter()).any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Domain("path has non-finite entries".into()));
        }
        Ok(ComplexPairPath { grid, alpha, beta })
    }

    pub fn m(&self) -> usize {
        self.alpha[0].nrows()
    }
}

fn check_skew(t: &CMat, which: usize, node: usize) -> Result<(), Error> {
    if !t.is_square() || frobenius(&(t + t.adjoint())) > 1e-10 {
        return Err(Error::Domain(format!("T_{which} is not skew-adjoint at node {node}")));
    }
    Ok(())
}

/// `α = (T₀ + iT₁)/2`, `β = (T₂ + iT₃)/2`.
pub fn nahm_to_complex_pair(grid: Grid, t: [&[CMat]; 4]) -> Result<ComplexPairPath, Error> {
    for (which, ti) in t.iter().enumerate() {
        if ti.len() != grid.nodes {
            return Err(Error::Dimension(format!("T_{which} has {} nodes, expected {}", ti.len(), grid.nodes)));
        }
        for (node, m) in ti.iter().enumerate() {
            check_skew(m, which, node)?;
        }
    }
    let i = Complex64::new(0.0, 1.0);
    let half = Complex64::new(0.5, 0.0);
    let alpha = (0..grid.nodes).map(|k| (&t[0][k] + &t[1][k] * i) * half).collect();
    let beta = (0..grid.nodes).map(|k| (&t[2][k] + &t[3][k] * i) * half).collect();
    ComplexPairPath::new(grid, alpha, beta)
}

/// Inverse of [`nahm_to_complex_pair`]: `T₀ = α − α*`, `T₁ = −i(α + α*)`.
pub fn complex_pair_to_nahm(path: &ComplexPairPath) -> [Vec<CMat>; 4] {
    let mi = Complex64::new(0.0, -1.0);
    let split = |v: &[CMat]| -> (Vec<CMat>, Vec<CMat>) {
        v.iter().map(|a| (a - a.adjoint(), (a + a.adjoint()) * mi)).unzip()
    };
    let (t0, t1) = split(&path.alpha);
    let (t2, t3) = split(&path.beta);
    [t0, t1, t2, t3]
}

/// `(α + α*)˙ + 2([α, α*] + [β, β*])` at every node.
pub fn residual_f(path: &ComplexPairPath) -> Vec<CMat> {
    let sym: Vec<CMat> = path.alpha.iter().map(|a| a + a.adjoint()).collect();
    let d = derivative(&path.grid, &sym);
    let two = Complex64::new(2.0, 0.0);
    (0..path.grid.nodes)
        .map(|k| {
            let (a, b) = (&path.alpha[k], &path.beta[k]);
            &d[k] + (commutator(a, &a.adjoint()) + commutator(b, &b.adjoint())) * two
        })
        .collect()
}

/// `β̇ + 2[α, β]` at every node.
pub fn complex_residual(path: &ComplexPairPath) -> Vec<CMat> {
    let d = derivative(&path.grid, &path.beta);
    let two = Complex64::new(2.0, 0.0);
    (0..path.grid.nodes).map(|k| &d[k] + commutator(&path.alpha[k], &path.beta[k]) * two).collect()
}
