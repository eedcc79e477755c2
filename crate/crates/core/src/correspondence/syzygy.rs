use serde::Serialize;

use super::charge::ChargeVector;
use super::pair::rebalanced_charges;
use super::rational_map::RationalMapData;
use crate::error::Error;
use crate::exact_algebra::{GaussScalar, Mat, Poly};

/// Band matrix whose left null vectors are the tuples `(s, t₁, …, tₙ)` with
/// `deg s < s_len`, `deg tᵢ < t_lens[i]` and `sQ + Σ tᵢPᵢ = 0`.
///
/// Rows are `z^{s_len−1}Q, …, Q`, then `z^{t_lens[i]−1}Pᵢ, …, Pᵢ` for each
/// `i`. Columns are descending powers of `z`.
pub fn bounded_syzygy_matrix(f: &RationalMapData, s_len: usize, t_lens: &[usize]) -> Result<Mat, Error> {
    if t_lens.len() != f.n() {
        return Err(Error::Dimension(format!("{} degree bounds for n = {}", t_lens.len(), f.n())));
    }
    let m = f.m();
    let t_max = t_lens.iter().copied().max().unwrap_or(0);
    let s_width = if s_len > 0 { s_len + m } else { 0 };
    let t_width = if t_max > 0 { t_max + m - 1 } else { 0 };
    let width = s_width.max(t_width);
    let mut rows = Vec::new();
    let mut push_shifts = |p: &Poly, count: usize| {
        for e in (0..count).rev() {
            let mut row = vec![GaussScalar::zero(); width];
            for (j, c) in p.coeffs().iter().enumerate() {
                row[width - 1 - (e + j)] = c.clone();
            }
            rows.push(row);
        }
    };
    push_shifts(f.q(), s_len);
    for (pi, &len) in f.p().iter().zip(t_lens) {
        push_shifts(pi, len);
    }
    if rows.is_empty() {
        return Ok(Mat::zeros(0, width));
    }
    Mat::from_rows(rows)
}

/// Decode a left null vector of [`bounded_syzygy_matrix`] into `(s, t)`.
pub fn decode_syzygy(y: &[GaussScalar], s_len: usize, t_lens: &[usize]) -> (Poly, Vec<Poly>) {
    let mut pos = 0;
    let mut take = |len: usize| {
        let mut c = vec![GaussScalar::zero(); len];
        for e in (0..len).rev() {
            c[e] = y[pos].clone();
            pos += 1;
        }
        Poly::from_coeffs(c)
    };
    let s = take(s_len);
    let t = t_lens.iter().map(|&l| take(l)).collect();
    (s, t)
}

fn check_ell(f: &RationalMapData, ell: &[usize]) -> Result<(), Error> {
    if ell.len() != f.n() {
        return Err(Error::Dimension(format!("ℓ has {} entries but n = {}", ell.len(), f.n())));
    }
    if ell.iter().sum::<usize>() != f.m() {
        return Err(Error::Domain(format!("ℓ = {ell:?} does not sum to m = {}", f.m())));
    }
    Ok(())
}

/// `M̃(ℓ)`: the square band matrix for `deg s ≤ ℓ_max − 2`, `deg tᵢ ≤ ℓᵢ − 1`.
///
/// ```
/// use nahmkit::correspondence::{syzygy_constraint_matrix, RationalMapData};
/// use nahmkit::exact_algebra::{Mat, Poly};
///
/// let f = RationalMapData::new(Poly::from_i64s(&[0, 0, 1]), vec![Poly::one()]).unwrap();
/// assert_eq!(syzygy_constraint_matrix(&f, &[2]).unwrap(), Mat::identity(3));
/// ```
pub fn syzygy_constraint_matrix(f: &RationalMapData, ell: &[usize]) -> Result<Mat, Error> {
    check_ell(f, ell)?;
    let lmax = *ell.iter().max().expect("n >= 1");
    bounded_syzygy_matrix(f, lmax - 1, ell)
}

/// `A_ℓ(F)`: no nonzero tuple inside the degree bounds annihilates `(Q, P)`.
pub fn predicate_a(f: &RationalMapData, ell: &[usize]) -> Result<bool, Error> {
    Ok(!syzygy_constraint_matrix(f, ell)?.det()?.is_zero())
}

/// Dimension of the syzygies with every `deg tᵢ ≤ d` (hence `deg s ≤ d − 1`).
pub fn syzygy_count(f: &RationalMapData, d: usize) -> usize {
    let t = vec![d + 1; f.n()];
    let mat = bounded_syzygy_matrix(f, d, &t).expect("bounds match n");
    mat.rows() - mat.rank()
}

/// Minimal syzygy degrees of `(Q, P₁, …, Pₙ)`, sorted decreasingly.
///
/// With minimal degrees `kᵢ` the count at level `d` is `Σ max(0, d − kᵢ + 1)`,
/// so the second difference of the counts gives `#{kᵢ = d}`.
pub fn holomorphic_charge(f: &RationalMapData) -> ChargeVector {
    let mut k = Vec::with_capacity(f.n());
    let mut prev_count = 0;
    let mut prev_delta = 0;
    for d in 0..=f.m() {
        let count = syzygy_count(f, d);
        let delta = count - prev_count;
        k.extend(std::iter::repeat(d).take(delta - prev_delta));
        if k.len() >= f.n() {
            break;
        }
        prev_count = count;
        prev_delta = delta;
    }
    k.reverse();
    ChargeVector::new(k).expect("minimal degrees of a coprime row sum to m")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RebalancedTest {
    pub ell: Vec<usize>,
    pub predicate_a: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub k: Vec<usize>,
    pub predicate_a_k: bool,
    /// Every rebalancing of `k`; membership needs `A` to fail on all of them.
    pub rebalanced: Vec<RebalancedTest>,
    pub member: bool,
}

pub fn membership_report(f: &RationalMapData, k: &ChargeVector) -> Result<MembershipReport, Error> {
    check_ell(f, k.as_slice())?;
    let predicate_a_k = predicate_a(f, k.as_slice())?;
    let mut rebalanced = Vec::new();
    for (_, _, _, ell) in rebalanced_charges(k) {
        let a = predicate_a(f, &ell)?;
        rebalanced.push(RebalancedTest { ell, predicate_a: a });
    }
    let member = predicate_a_k && rebalanced.iter().all(|t| !t.predicate_a);
    Ok(MembershipReport { k: k.as_slice().to_vec(), predicate_a_k, rebalanced, member })
}

/// `F ∈ R_k`: `A_k(F)` holds and `A_ℓ(F)` fails for every rebalancing `ℓ`
/// of `k` (degree bound moved from a larger entry to a smaller one).
pub fn membership_rk(f: &RationalMapData, k: &ChargeVector) -> Result<bool, Error> {
    Ok(membership_report(f, k)?.member)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    pub k: Vec<usize>,
    pub ambient: usize,
    pub constraints: usize,
    pub jacobian_rank: usize,
    pub dimension: usize,
    /// The point is assumed smooth; a rank below the constraint count is
    /// reported here rather than treated as an error.
    pub full_rank: bool,
}

/// Jacobian of the conditions `det M̃(ℓ) = 0` over the rebalancings of `k`.
///
/// Variables are `q₀ … q_{m−1}` followed by the coefficients `0 … m−1` of
/// each `Pᵢ`. By Jacobi's formula the derivative of `det M̃` in an entry
/// `(r, c)` is `adj(M̃)_{c,r}`; every variable enters linearly.
pub fn tangent_report(f: &RationalMapData, k: &ChargeVector) -> Result<TangentReport, Error> {
    if !membership_rk(f, k)? {
        return Err(Error::Domain(format!("F is not in R_k for k = {k}")));
    }
    let m = f.m();
    let n = f.n();
    let ambient = (n + 1) * m;
    let mut jac = Vec::new();
    for (_, _, _, ell) in rebalanced_charges(k) {
        let mt = syzygy_constraint_matrix(f, &ell)?;
        let adj = mt.adjugate()?;
        let width = mt.cols();
        let lmax = *ell.iter().max().expect("n >= 1");
        let mut grad = vec![GaussScalar::zero(); ambient];
        let mut row = 0;
        // block 0 is Q with lmax − 1 shifts, block i is Pᵢ with ℓᵢ shifts
        let shifts: Vec<usize> = std::iter::once(lmax - 1).chain(ell.iter().copied()).collect();
        for (block, &count) in shifts.iter().enumerate() {
            for e in (0..count).rev() {
                for j in 0..m {
                    let col = width - 1 - (e + j);
                    grad[block * m + j] += adj.get(col, row);
                }
                row += 1;
            }
        }
        jac.push(grad);
    }
    let constraints = jac.len();
    let jacobian_rank = if jac.is_empty() { 0 } else { Mat::from_rows(jac)?.rank() };
    Ok(TangentReport {
        k: k.as_slice().to_vec(),
        ambient,
        constraints,
        jacobian_rank,
        dimension: ambient - jacobian_rank,
        full_rank: jacobian_rank == constraints,
    })
}

pub fn tangent_dimension(f: &RationalMapData, k: &ChargeVector) -> Result<usize, Error> {
    Ok(tangent_report(f, k)?.dimension)
}
