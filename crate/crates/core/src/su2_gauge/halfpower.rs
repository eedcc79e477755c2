use serde::Serialize;

use super::irrep::boundary_residues;
use crate::correspondence::ChargeVector;
use crate::error::Error;
use crate::exact_algebra::{GaussScalar, LaurentMat, Mat};
use crate::normal_forms::{build_beta_st, NormalFormData};

/// Symmetric tridiagonal `M_ℓ(c)`: corners `c`, interior diagonal `11/2`,
/// off-diagonal `−2`.
pub fn tridiag_m(l: usize, c: &GaussScalar) -> Result<Mat, Error> {
    if l < 1 {
        return Err(Error::Domain("M_l needs l >= 1".into()));
    }
    Ok(Mat::from_fn(l, l, |r, col| {
        if r == col {
            if r == 0 || r == l - 1 {
                c.clone()
            } else {
                GaussScalar::frac(11, 2)
            }
        } else if r.abs_diff(col) == 1 {
            GaussScalar::from_i64(-2)
        } else {
            GaussScalar::zero()
        }
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TridiagDet {
    pub l: usize,
    pub direct: String,
    pub factored: String,
    /// `c₁ = 7/2`, `cᵢ = 11/2 − 4/c_{i−1}` for `i ≤ ⌊ℓ/2⌋`.
    pub c_sequence: Vec<String>,
    pub agree: bool,
    pub positive: bool,
}

/// `det M_ℓ(c)` through `det M_ℓ(c) = c² det M_{ℓ−2}(11/2 − 4/c)`, ending in
/// `c` (ℓ = 1), `c² − 4` (ℓ = 2) or `c(11c/2 − 8)` (ℓ = 3).
pub fn tridiag_det_factored(l: usize, c: &GaussScalar) -> GaussScalar {
    match l {
        0 => GaussScalar::one(),
        1 => c.clone(),
        2 => &(c * c) - &GaussScalar::from_i64(4),
        3 => c * &(&(&GaussScalar::frac(11, 2) * c) - &GaussScalar::from_i64(8)),
        _ => {
            let next = &GaussScalar::frac(11, 2) - &(&GaussScalar::from_i64(4) * &c.inv().expect("c > 0"));
            &(c * c) * &tridiag_det_factored(l - 2, &next)
        }
    }
}

pub fn tridiag_det_two_ways(l: usize) -> Result<TridiagDet, Error> {
    let c1 = GaussScalar::frac(7, 2);
    let direct = tridiag_m(l, &c1)?.det()?;
    let factored = tridiag_det_factored(l, &c1);
    let mut seq = vec![c1];
    for _ in 1..(l / 2) {
        let prev = seq.last().unwrap();
        seq.push(&GaussScalar::frac(11, 2) - &(&GaussScalar::from_i64(4) * &prev.inv().expect("nonzero")));
    }
    let positive = direct.is_real() && direct.re() > &num_rational::BigRational::from_integer(0.into());
    Ok(TridiagDet {
        l,
        agree: direct == factored,
        positive,
        direct: direct.to_string(),
        factored: factored.to_string(),
        c_sequence: seq.iter().map(ToString::to_string).collect(),
    })
}

/// Matrix of the `μ` and `ν` systems: `M_{k₁−2}(7/2)`, except that the
/// single equation for `k₁ = 3` has coefficient `11/2 − 4 = 3/2`.
pub fn halfpower_system(k1: usize) -> Result<Mat, Error> {
    match k1 {
        0..=2 => Err(Error::Domain(format!("k1 = {k1} gives an empty system"))),
        3 => Ok(Mat::diag(&[GaussScalar::frac(3, 2)])),
        _ => tridiag_m(k1 - 2, &GaussScalar::frac(7, 2)),
    }
}

/// Solve `M μ = 2 C̄_{k₂2} e₁` and `M ν = 2 C̄_{(m−1)1} e₁` with the matrix
/// from [`halfpower_system`]. For `k₁ = 2` both systems are empty.
pub fn halfpower_gauge_solve(
    k1: usize,
    cbar_k2_2: &GaussScalar,
    cbar_m1_1: &GaussScalar,
) -> Result<(Vec<GaussScalar>, Vec<GaussScalar>), Error> {
    if k1 < 2 {
        return Err(Error::Domain(format!("k1 = {k1} must be at least 2")));
    }
    if k1 == 2 {
        return Ok((Vec::new(), Vec::new()));
    }
    let inv = halfpower_system(k1)?.inverse()?;
    let two = GaussScalar::from_i64(2);
    let col0 = inv.col(0);
    let mu = col0.iter().map(|v| &(v * &two) * cbar_k2_2).collect();
    let nu = col0.iter().map(|v| &(v * &two) * cbar_m1_1).collect();
    Ok((mu, nu))
}

/// `(α½ + α½*)/2 + 2([x_N, α½*] + [α½, x_N*] + [y_N, β½*] + [β½, y_N*])`.
pub fn f_minus_half_coefficient(alpha_half: &Mat, beta_half: &Mat, x_n: &Mat, y_n: &Mat) -> Result<Mat, Error> {
    let m = alpha_half.rows();
    for (name, a) in [("alpha_half", alpha_half), ("beta_half", beta_half), ("x_N", x_n), ("y_N", y_n)] {
        if a.rows() != m || a.cols() != m {
            return Err(Error::Dimension(format!("{name} is {}x{}, expected {m}x{m}", a.rows(), a.cols())));
        }
    }
    let ah = alpha_half.conj_transpose();
    let bh = beta_half.conj_transpose();
    let sym = (alpha_half + &ah).scale(&GaussScalar::frac(1, 2));
    let comm = &(&(&Mat::commutator(x_n, &ah) + &Mat::commutator(alpha_half, &x_n.conj_transpose()))
        + &Mat::commutator(y_n, &bh))
        + &Mat::commutator(beta_half, &y_n.conj_transpose());
    Ok(&sym + &comm.scale(&GaussScalar::from_i64(2)))
}

/// `G = Σ μᵢ E_{(m+1−i)(k₂−i)} + Σ νᵢ E_{(k₂+1−i)(m−1−i)}` (1-based), for
/// `k = (k₁, k₁−1)` and `m = 2k₁ − 1`.
pub fn halfpower_gauge_matrix(k1: usize, mu: &[GaussScalar], nu: &[GaussScalar]) -> Result<Mat, Error> {
    let n_unknowns = k1.saturating_sub(2);
    if mu.len() != n_unknowns || nu.len() != n_unknowns {
        return Err(Error::Dimension(format!("k1 = {k1} needs {n_unknowns} values of mu and nu")));
    }
    let k2 = k1 - 1;
    let m = k1 + k2;
    let mut g = Mat::zeros(m, m);
    for i in 1..=n_unknowns {
        g.set(m - i, k2 - i - 1, mu[i - 1].clone());
        g.set(k2 - i, m - i - 2, nu[i - 1].clone());
    }
    Ok(g)
}

/// The real-equation expression `(α + α*)' + 2([α, α*] + [β, β*])` on
/// formal expansions.
pub fn real_equation_laurent(alpha: &LaurentMat, beta: &LaurentMat) -> LaurentMat {
    let ah = alpha.conj_transpose();
    let bh = beta.conj_transpose();
    let comm = &LaurentMat::commutator(alpha, &ah) + &LaurentMat::commutator(beta, &bh);
    &(alpha + &ah).derivative() + &comm.scale(&GaussScalar::from_i64(2))
}

/// Expansions near `λ_N` after the gauge `g = I + z^{3/2}G`:
/// `α' = gαg⁻¹ − ½ġg⁻¹` and `β' = gβg⁻¹` with `α = x_N/z` and `β = β_st`,
/// truncated after the `z^{1/2}` terms.
#[derive(Clone, Debug)]
pub struct HalfPowerAssembly {
    pub x_n: Mat,
    pub y_n: Mat,
    pub alpha: LaurentMat,
    pub beta: LaurentMat,
}

impl HalfPowerAssembly {
    pub fn alpha_half(&self) -> Mat {
        self.alpha.coeff(1)
    }

    pub fn beta_half(&self) -> Mat {
        self.beta.coeff(1)
    }

    /// `F(α', β')_{−1/2}` from the closed formula.
    pub fn f_minus_half(&self) -> Mat {
        f_minus_half_coefficient(&self.alpha_half(), &self.beta_half(), &self.x_n, &self.y_n).expect("square")
    }
}

pub fn halfpower_assembly(nf: &NormalFormData, g: &Mat) -> Result<HalfPowerAssembly, Error> {
    let k = nf.k();
    let m = k.m();
    if g.rows() != m || g.cols() != m {
        return Err(Error::Dimension("G has the wrong size".into()));
    }
    let res = boundary_residues(k);
    let alpha = LaurentMat::monomial(res.x_n.clone(), -2);
    let beta = build_beta_st(nf)?.lambda_n.to_laurent();
    let gz = &LaurentMat::identity(m) + &LaurentMat::monomial(g.clone(), 3);
    let gi = &LaurentMat::identity(m) - &LaurentMat::monomial(g.clone(), 3);
    let keep = 1;
    let conj = |x: &LaurentMat| gz.mul_truncated(x, keep + 3).mul_truncated(&gi, keep);
    let dg = gz.derivative().mul_truncated(&gi, keep).scale(&GaussScalar::frac(-1, 2));
    Ok(HalfPowerAssembly { x_n: res.x_n, y_n: res.y_n, alpha: &conj(&alpha) + &dg, beta: conj(&beta) })
}

/// Normal form data for `k = (k₁, k₁−1)` whose only nonzero `C` entries
/// are `C_{k₂2}` and `C_{(m−1)1}`, the two that reach the `z^{1/2}` terms.
pub fn halfpower_normal_form(k1: usize, c_k2_2: GaussScalar, c_m1_1: GaussScalar) -> Result<NormalFormData, Error> {
    if k1 < 2 {
        return Err(Error::Domain(format!("k1 = {k1} must be at least 2")));
    }
    let k = ChargeVector::new(vec![k1, k1 - 1])?;
    let m = k.m();
    let mut c = Mat::zeros(m, 2);
    c.set(k1 - 2, 1, c_k2_2);
    c.set(m - 2, 0, c_m1_1);
    NormalFormData::new(k, vec![GaussScalar::zero(); m], c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tridiag_examples() {
        let c = GaussScalar::frac(7, 2);
        assert_eq!(tridiag_m(1, &c).unwrap(), Mat::diag(&[c.clone()]));
        assert_eq!(tridiag_m(2, &c).unwrap().det().unwrap(), GaussScalar::frac(33, 4));
        let r = tridiag_det_two_ways(4).unwrap();
        assert_eq!(r.c_sequence, vec!["7/2".to_string(), "61/14".to_string()]);
        assert!(r.agree && r.positive);
        assert!(tridiag_m(0, &c).is_err());
    }

    #[test]
    fn closed_formula_on_simple_input() {
        let m = Mat::identity(2);
        let f = f_minus_half_coefficient(&m, &Mat::zeros(2, 2), &Mat::zeros(2, 2), &Mat::zeros(2, 2)).unwrap();
        assert_eq!(f, m);
        assert!(f_minus_half_coefficient(&m, &Mat::zeros(3, 3), &m, &m).is_err());
    }

    #[test]
    fn zero_data_solves_trivially() {
        let z = GaussScalar::zero();
        let (mu, nu) = halfpower_gauge_solve(5, &z, &z).unwrap();
        assert!(mu.iter().chain(&nu).all(GaussScalar::is_zero));
    }

    #[test]
    fn k1_three_single_equation() {
        let c = GaussScalar::from_parts(3, 1);
        let (mu, nu) = halfpower_gauge_solve(3, &c, &GaussScalar::zero()).unwrap();
        assert_eq!(mu, vec![&GaussScalar::frac(4, 3) * &c]);
        assert!(nu[0].is_zero());
    }

    #[test]
    fn solved_gauge_kills_the_term() {
        for k1 in 2..=6 {
            let c1 = GaussScalar::from_parts(2, -1);
            let c2 = GaussScalar::from_parts(-1, 3);
            let nf = halfpower_normal_form(k1, c1.clone(), c2.clone()).unwrap();
            let (mu, nu) = halfpower_gauge_solve(k1, &c1.conj(), &c2.conj()).unwrap();
            let g = halfpower_gauge_matrix(k1, &mu, &nu).unwrap();
            let asm = halfpower_assembly(&nf, &g).unwrap();
            assert!(asm.f_minus_half().is_zero(), "k1 = {k1}: {:?}", asm.f_minus_half());
            let full = real_equation_laurent(&asm.alpha, &asm.beta);
            assert!(full.coeff(-1).is_zero());
        }
    }
}
