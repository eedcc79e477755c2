use serde::Serialize;

use super::hurtubise::NormalFormData;
use super::layout::BlockLayout;
use crate::correspondence::ChargeVector;
use crate::error::Error;
use crate::exact_algebra::{GaussScalar, LaurentMat, Mat, Poly, PolyMat};

/// Expansion near `λ_N`: a `z⁻¹` residue plus terms in nonnegative half
/// powers of `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPowerBlock {
    residue: Mat,
    regular: LaurentMat,
}

impl HalfPowerBlock {
    /// Split `full` and check that block `(I, J)` of the regular part only
    /// carries exponents `≥ |k_{N−I} − k_{N−J}|/2`.
    pub fn new(full: &LaurentMat, k: &ChargeVector) -> Result<Self, Error> {
        let l = BlockLayout::new(k);
        let mut regular = LaurentMat::zero(full.rows(), full.cols());
        let mut residue = Mat::zeros(full.rows(), full.cols());
        for (e, m) in full.terms() {
            if e == -2 {
                residue = m.clone();
                continue;
            }
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if m.get(r, c).is_zero() {
                        continue;
                    }
                    let (ib, _) = l.locate(r);
                    let (jb, _) = l.locate(c);
                    let floor = l.size(ib).abs_diff(l.size(jb)) as i64;
                    if e < floor {
                        return Err(Error::Domain(format!(
                            "entry ({}, {}) carries z^({e}/2), below the bound z^({floor}/2)",
                            r + 1,
                            c + 1
                        )));
                    }
                }
            }
            regular = &regular + &LaurentMat::monomial(m.clone(), e);
        }
        Ok(HalfPowerBlock { residue, regular })
    }

    pub fn residue(&self) -> &Mat {
        &self.residue
    }

    pub fn regular(&self) -> &LaurentMat {
        &self.regular
    }

    pub fn to_laurent(&self) -> LaurentMat {
        &LaurentMat::monomial(self.residue.clone(), -2) + &self.regular
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaSt {
    /// `β_st(λ₁ + z)`: superdiagonal `z⁻¹`, last row `−z^{m−c} q_c`.
    pub lambda_1: LaurentMat,
    pub lambda_n: HalfPowerBlock,
}

/// `β_st(λ₁ + z)` for the given `q`.
pub fn beta_lambda_1(q: &[GaussScalar]) -> LaurentMat {
    let m = q.len();
    let mut entries = Vec::new();
    for r in 0..m.saturating_sub(1) {
        entries.push((r, r + 1, GaussScalar::one(), -2));
    }
    for (c, qc) in q.iter().enumerate() {
        entries.push((m - 1, c, -qc, 2 * (m - 1 - c) as i64));
    }
    LaurentMat::from_entries(m, m, entries)
}

/// Both boundary expansions of `β_st`.
///
/// Near `λ_N` the last-column entry of block `(I, J)` at local row `r` is
/// `z^{(a+b)/2 − r}` times the matching entry of `C`, with `a`, `b` the
/// sizes of blocks `I` and `J`; the diagonal blocks carry a `z⁻¹` shift.
pub fn build_beta_st(nf: &NormalFormData) -> Result<BetaSt, Error> {
    let k = nf.k();
    let l = BlockLayout::new(k);
    let c = nf.c();
    let mut entries = Vec::new();
    for ib in 1..=l.n() {
        for r in 1..l.size(ib) {
            entries.push((l.offset(ib) + r, l.offset(ib) + r - 1, GaussScalar::one(), -2));
        }
    }
    for jb in 1..=l.n() {
        let b = l.size(jb);
        if b == 0 {
            continue;
        }
        for ib in 1..=l.n() {
            let a = l.size(ib);
            for r in 1..=a {
                let v = c.get(l.offset(ib) + r - 1, jb - 1);
                if !v.is_zero() {
                    entries.push((l.offset(ib) + r - 1, l.offset(jb) + b - 1, v.clone(), (a + b) as i64 - 2 * r as i64));
                }
            }
        }
    }
    let full = LaurentMat::from_entries(k.m(), k.m(), entries);
    Ok(BetaSt { lambda_1: beta_lambda_1(nf.q()), lambda_n: HalfPowerBlock::new(&full, k)? })
}

/// `g_q` with `(r, c)` entry `z^{m+1−r−c} q_{r+c}` above the antidiagonal,
/// ones on it and zeros below (1-based indices).
pub fn gq_matrix(q: &[GaussScalar]) -> LaurentMat {
    let m = q.len();
    let mut entries = Vec::new();
    for r in 1..=m {
        for c in 1..=m {
            if r + c <= m {
                entries.push((r - 1, c - 1, q[r + c - 1].clone(), 2 * (m + 1 - r - c) as i64));
            } else if r + c == m + 1 {
                entries.push((r - 1, c - 1, GaussScalar::one(), 0));
            }
        }
    }
    LaurentMat::from_entries(m, m, entries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GqIdentityReport {
    pub m: usize,
    pub conjugation_holds: bool,
    pub det: String,
    pub det_is_unit: bool,
}

impl GqIdentityReport {
    pub fn holds(&self) -> bool {
        self.conjugation_holds && self.det_is_unit
    }
}

/// Check `g_q A g_q⁻¹ = Aᵀ` for `A = β_st(λ₁ + z)` in the form
/// `g_q A = Aᵀ g_q`, and that `det g_q = ±1`.
pub fn gq_identity_report(q: &[GaussScalar]) -> Result<GqIdentityReport, Error> {
    if q.is_empty() {
        return Err(Error::Dimension("q must be nonempty".into()));
    }
    let m = q.len();
    let g = gq_matrix(q);
    let a = beta_lambda_1(q);
    let at = a.transpose();
    let conjugation_holds = &g * &a == &at * &g;
    let gp = PolyMat::from_fn(m, m, |r, c| {
        let mut p = Poly::zero();
        for (e, mat) in g.terms() {
            p = &p + &Poly::monomial(mat.get(r, c).clone(), (e / 2) as usize);
        }
        p
    });
    let det = gp.det()?;
    let unit = det.degree() == Some(0) && {
        let d = det.coeff(0);
        d.is_one() || (-&d).is_one()
    };
    Ok(GqIdentityReport { m, conjugation_holds, det: det.to_string(), det_is_unit: unit })
}

pub fn gq_conjugation_identity(q: &[GaussScalar]) -> bool {
    gq_identity_report(q).map(|r| r.holds()).unwrap_or(false)
}
