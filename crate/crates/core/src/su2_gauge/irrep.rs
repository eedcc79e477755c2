use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::correspondence::ChargeVector;
use crate::error::Error;
use crate::exact_algebra::{GaussScalar, Mat};

/// Exact `sl₂` triple, the exact `su(2)` basis built from it, and the
/// floating unitary basis, all in dimension `d`.
#[derive(Clone, Debug)]
pub struct IrrepTriple {
    pub d: usize,
    pub e: Mat,
    pub f: Mat,
    pub h: Mat,
    /// `τ₃ = −ih/2`, `τ₁ = −i(e+f)/2`, `τ₂ = −(e−f)/2`.
    pub tau: [Mat; 3],
    /// `τⱼ = −iJⱼ` with hermitian spin matrices `Jⱼ`.
    pub tau_unitary: [DMatrix<Complex64>; 3],
}

/// `x(ℓ) = diag(−(ℓ−1)/4, …, (ℓ−1)/4)`.
pub fn x_block(l: usize) -> Mat {
    let entries: Vec<GaussScalar> = (0..l).map(|p| GaussScalar::frac(2 * p as i64 - (l as i64 - 1), 4)).collect();
    Mat::diag(&entries)
}

/// `y(ℓ)`: ones on the subdiagonal.
pub fn y_block(l: usize) -> Mat {
    Mat::from_fn(l, l, |r, c| if r == c + 1 { GaussScalar::one() } else { GaussScalar::zero() })
}

pub fn su2_irrep(d: usize) -> Result<IrrepTriple, Error> {
    if d < 1 {
        return Err(Error::Domain("representation dimension must be at least 1".into()));
    }
    let h = x_block(d).scale(&GaussScalar::from_i64(-4));
    let f = y_block(d);
    let e = Mat::from_fn(d, d, |r, c| {
        if c == r + 1 {
            GaussScalar::from_i64(((r + 1) * (d - r - 1)) as i64)
        } else {
            GaussScalar::zero()
        }
    });
    let mi_half = &GaussScalar::i() * &GaussScalar::frac(-1, 2);
    let tau = [(&e + &f).scale(&mi_half), (&e - &f).scale(&GaussScalar::frac(-1, 2)), h.scale(&mi_half)];

    let j = (d as f64 - 1.0) / 2.0;
    let mut jp = DMatrix::<Complex64>::zeros(d, d);
    for p in 0..d.saturating_sub(1) {
        // ⟨m+1|J₊|m⟩ with m = j − (p+1)
        let m = j - (p as f64 + 1.0);
        jp[(p, p + 1)] = Complex64::new(((j - m) * (j + m + 1.0)).sqrt(), 0.0);
    }
    let jm = jp.adjoint();
    let j1 = (&jp + &jm).map(|v| v * 0.5);
    let j2 = (&jp - &jm).map(|v| v * Complex64::new(0.0, -0.5));
    let j3 = DMatrix::from_fn(d, d, |r, c| if r == c { Complex64::new(j - r as f64, 0.0) } else { Complex64::new(0.0, 0.0) });
    let mi = Complex64::new(0.0, -1.0);
    let tau_unitary = [j1.map(|v| v * mi), j2.map(|v| v * mi), j3.map(|v| v * mi)];
    Ok(IrrepTriple { d, e, f, h, tau, tau_unitary })
}

/// Pole residues at both ends: `x₁ = −x(m)`, `y₁ = y(m)ᵀ`,
/// `x_N = diag(x(kₙ), …, x(k₁))`, `y_N = diag(y(kₙ), …, y(k₁))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryResidues {
    pub x1: Mat,
    pub y1: Mat,
    pub x_n: Mat,
    pub y_n: Mat,
}

pub fn boundary_residues(k: &ChargeVector) -> BoundaryResidues {
    let m = k.m();
    let mut x_n = Mat::zeros(m, m);
    let mut y_n = Mat::zeros(m, m);
    let mut off = 0;
    for &ki in k.as_slice().iter().rev() {
        x_n.set_block(off, off, &x_block(ki));
        y_n.set_block(off, off, &y_block(ki));
        off += ki;
    }
    BoundaryResidues { x1: -&x_block(m), y1: y_block(m).transpose(), x_n, y_n }
}
