use serde::Serialize;

use super::charge::ChargeVector;
use crate::error::Error;
use crate::exact_algebra::{GaussScalar, Mat};

/// The finite data `(B, w₁, w₂, …, w_N)` with `B` an `m×m` matrix, `w₁` a
/// row vector and `w₂ … w_N` column vectors, `N = n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPair {
    b: Mat,
    w1: Vec<GaussScalar>,
    w: Vec<Vec<GaussScalar>>,
}

impl MatrixPair {
    pub fn new(b: Mat, w1: Vec<GaussScalar>, w: Vec<Vec<GaussScalar>>) -> Result<Self, Error> {
        let m = b.rows();
        if m == 0 || !b.is_square() {
            return Err(Error::Dimension(format!("B must be square and nonempty, got {}x{}", b.rows(), b.cols())));
        }
        if w1.len() != m {
            return Err(Error::Dimension(format!("w1 has length {} but B is {m}x{m}", w1.len())));
        }
        if w.is_empty() {
            return Err(Error::Dimension("at least one column vector w_2 is required".into()));
        }
        if let Some(bad) = w.iter().position(|v| v.len() != m) {
            return Err(Error::Dimension(format!("w_{} has length {} instead of {m}", bad + 2, w[bad].len())));
        }
        Ok(MatrixPair { b, w1, w })
    }

    pub fn b(&self) -> &Mat {
        &self.b
    }

    pub fn w1(&self) -> &[GaussScalar] {
        &self.w1
    }

    /// The column vectors `(w₂, …, w_N)`.
    pub fn w(&self) -> &[Vec<GaussScalar>] {
        &self.w
    }

    pub fn m(&self) -> usize {
        self.b.rows()
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    /// Stacked rows `w₁, w₁B, …, w₁B^{m−1}`.
    pub fn krylov_rows(&self) -> Mat {
        let m = self.m();
        let mut rows = Vec::with_capacity(m);
        let mut cur = self.w1.clone();
        for _ in 0..m {
            let next = Mat::vec_mul(&cur, &self.b);
            rows.push(std::mem::replace(&mut cur, next));
        }
        Mat::from_rows(rows).expect("rows of equal length")
    }

    /// The action `g·(B, w) = (gBg⁻¹, w₁g⁻¹, g w_{i+1})`.
    pub fn act(&self, g: &Mat) -> Result<MatrixPair, Error> {
        if g.rows() != self.m() || !g.is_square() {
            return Err(Error::Dimension("change of basis has the wrong size".into()));
        }
        let gi = g.inverse()?;
        Ok(MatrixPair {
            b: &(g * &self.b) * &gi,
            w1: Mat::vec_mul(&self.w1, &gi),
            w: self.w.iter().map(|v| g.mul_vec(v)).collect(),
        })
    }
}

/// `M(ℓ)`: column blocks `w_N, …, B^{ℓₙ−1}w_N, …, w₂, …, B^{ℓ₁−1}w₂`.
///
/// ```
/// use nahmkit::correspondence::{krylov_block_matrix, MatrixPair};
/// use nahmkit::exact_algebra::{GaussScalar, Mat};
///
/// let b = Mat::from_i64_rows(&[&[0, 1], &[0, 0]]);
/// let g = |v: i64| GaussScalar::from_i64(v);
/// let p = MatrixPair::new(b, vec![g(1), g(0)], vec![vec![g(0), g(1)]]).unwrap();
/// assert_eq!(krylov_block_matrix(&p, &[2]).unwrap(), Mat::from_i64_rows(&[&[0, 1], &[1, 0]]));
/// ```
pub fn krylov_block_matrix(p: &MatrixPair, ell: &[usize]) -> Result<Mat, Error> {
    if ell.len() != p.n() {
        return Err(Error::Dimension(format!("ℓ has {} entries but the pair has n = {}", ell.len(), p.n())));
    }
    if ell.iter().sum::<usize>() != p.m() {
        return Err(Error::Domain(format!("ℓ = {ell:?} does not sum to m = {}", p.m())));
    }
    let mut cols = Vec::with_capacity(p.m());
    for i in (0..p.n()).rev() {
        let mut v = p.w[i].clone();
        for _ in 0..ell[i] {
            let next = p.b.mul_vec(&v);
            cols.push(std::mem::replace(&mut v, next));
        }
    }
    Ok(Mat::from_rows(cols)?.transpose())
}

/// One of the conditions `det M(k + l(eᵢ − eⱼ)) = 0` for `i > j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingCondition {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub ell: Vec<usize>,
    pub det_is_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub k: Vec<usize>,
    pub cyclic: bool,
    pub det_mk_nonzero: bool,
    pub vanishing: Vec<VanishingCondition>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.cyclic && self.det_mk_nonzero && self.vanishing.iter().all(|c| c.det_is_zero)
    }

    /// Human-readable list of the failed conditions.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.cyclic {
            out.push("w1 is not cyclic: the rows w1, w1 B, ... are dependent".to_string());
        }
        if !self.det_mk_nonzero {
            out.push(format!("det M(k) = 0 for k = {:?}", self.k));
        }
        for c in self.vanishing.iter().filter(|c| !c.det_is_zero) {
            out.push(format!("det M({:?}) != 0 (i = {}, j = {}, l = {})", c.ell, c.i, c.j, c.l));
        }
        out
    }
}

/// Every shifted charge `k + l(eᵢ − eⱼ)` with `i > j`, `1 ≤ l ≤ kⱼ − kᵢ`,
/// as `(i, j, l, ℓ)` with 1-based indices. The shift moves `l` from the
/// larger entry `kⱼ` to the smaller entry `kᵢ`.
pub fn rebalanced_charges(k: &ChargeVector) -> Vec<(usize, usize, usize, Vec<usize>)> {
    let ks = k.as_slice();
    let mut out = Vec::new();
    for i in 1..=ks.len() {
        for j in 1..i {
            for l in 1..=ks[j - 1].saturating_sub(ks[i - 1]) {
                let mut ell = ks.to_vec();
                ell[i - 1] += l;
                ell[j - 1] -= l;
                out.push((i, j, l, ell));
            }
        }
    }
    out
}

/// Check cyclicity of `w₁`, `det M(k) ≠ 0` and the vanishing conditions.
pub fn validate_matrix_pair(p: &MatrixPair, k: &ChargeVector) -> Result<ValidityReport, Error> {
    if k.n() != p.n() || k.m() != p.m() {
        return Err(Error::Dimension(format!(
            "charge {k} needs n = {}, m = {} but the pair has n = {}, m = {}",
            k.n(),
            k.m(),
            p.n(),
            p.m()
        )));
    }
    let cyclic = !p.krylov_rows().det()?.is_zero();
    let det_mk_nonzero = !krylov_block_matrix(p, k.as_slice())?.det()?.is_zero();
    let mut vanishing = Vec::new();
    for (i, j, l, ell) in rebalanced_charges(k) {
        let det_is_zero = krylov_block_matrix(p, &ell)?.det()?.is_zero();
        vanishing.push(VanishingCondition { i, j, l, ell, det_is_zero });
    }
    Ok(ValidityReport { k: k.as_slice().to_vec(), cyclic, det_mk_nonzero, vanishing })
}

/// Conjugate by the stacked Krylov matrix `K` of `w₁` so that the new Krylov
/// rows are the identity, i.e. `w₁ = e₁ᵀ`. Returns the new pair and `K`.
///
/// Two pairs have equal canonical forms iff they are related by `GL(m)`.
pub fn canonicalize(p: &MatrixPair) -> Result<(MatrixPair, Mat), Error> {
    let k = p.krylov_rows();
    if k.det()?.is_zero() {
        return Err(Error::Domain("w1 is not a cyclic vector for B^T".into()));
    }
    Ok((p.act(&k)?, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> GaussScalar {
        GaussScalar::from_i64(v)
    }

    fn nil2(w2: [i64; 2]) -> MatrixPair {
        let b = Mat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        MatrixPair::new(b, vec![g(1), g(0)], vec![vec![g(w2[0]), g(w2[1])]]).unwrap()
    }

    #[test]
    fn krylov_examples() {
        assert_eq!(krylov_block_matrix(&nil2([0, 1]), &[2]).unwrap(), Mat::from_i64_rows(&[&[0, 1], &[1, 0]]));
        let m = krylov_block_matrix(&nil2([1, 0]), &[2]).unwrap();
        assert_eq!(m, Mat::from_i64_rows(&[&[1, 0], &[0, 0]]));
        assert!(m.det().unwrap().is_zero());
        assert!(krylov_block_matrix(&nil2([1, 0]), &[1]).is_err());
    }

    #[test]
    fn two_vectors_without_powers() {
        let b = Mat::from_i64_rows(&[&[5, 7], &[1, 3]]);
        let p = MatrixPair::new(b, vec![g(1), g(0)], vec![vec![g(1), g(2)], vec![g(3), g(4)]]).unwrap();
        // columns [w₃, w₂]
        assert_eq!(krylov_block_matrix(&p, &[1, 1]).unwrap(), Mat::from_i64_rows(&[&[3, 1], &[4, 2]]));
    }

    #[test]
    fn validity_examples() {
        let k1 = ChargeVector::new(vec![1]).unwrap();
        let p = MatrixPair::new(Mat::zeros(1, 1), vec![g(1)], vec![vec![g(1)]]).unwrap();
        assert!(validate_matrix_pair(&p, &k1).unwrap().is_valid());
        let p0 = MatrixPair::new(Mat::zeros(1, 1), vec![g(1)], vec![vec![g(0)]]).unwrap();
        let rep = validate_matrix_pair(&p0, &k1).unwrap();
        assert!(!rep.is_valid());
        assert!(!rep.det_mk_nonzero);
    }

    #[test]
    fn rebalancing_moves_from_larger_to_smaller() {
        let k = ChargeVector::new(vec![3, 1]).unwrap();
        let got: Vec<Vec<usize>> = rebalanced_charges(&k).into_iter().map(|c| c.3).collect();
        assert_eq!(got, vec![vec![2, 2], vec![1, 3]]);
    }

    #[test]
    fn canonical_pair_is_fixed() {
        let p = nil2([0, 1]);
        let (c, t) = canonicalize(&p).unwrap();
        assert_eq!(c, p);
        assert_eq!(t, Mat::identity(2));
        let zero = MatrixPair::new(Mat::zeros(2, 2), vec![g(0), g(0)], vec![vec![g(1), g(0)]]).unwrap();
        assert!(canonicalize(&zero).is_err());
    }
}
