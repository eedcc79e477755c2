use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use super::irrep::su2_irrep;
use crate::error::Error;
use crate::exact_algebra::{GaussScalar, Mat, Poly};

/// `T = Σᵢ τᵢ^{(3)} ⊗ Dᵢ` on `ℂ³ ⊗ Mat(a×b)`, with `Dᵢ(X) = τᵢ^{(a)}X − Xτᵢ^{(b)}`
/// acting on row-major vectorised `X`.
pub fn casimir_operator(a: usize, b: usize) -> Result<Mat, Error> {
    let t3 = su2_irrep(3)?;
    let ta = su2_irrep(a)?;
    let tb = su2_irrep(b)?;
    let mut total = Mat::zeros(3 * a * b, 3 * a * b);
    for i in 0..3 {
        let d = &Mat::kron(&ta.tau[i], &Mat::identity(b)) - &Mat::kron(&Mat::identity(a), &tb.tau[i].transpose());
        total = &total + &Mat::kron(&t3.tau[i], &d);
    }
    Ok(total)
}

/// Eigenvalues of `T` with multiplicities, from
/// `S^{a−1} ⊗ (S^{b−1})* ≅ ⊕_M S^M` for `M = |a−b|, |a−b|+2, …, a+b−2` and
/// `S² ⊗ S^M ≅ ⊕_L S^L` for `L = |M−2|, …, M+2`. On `S^L ⊂ S² ⊗ S^M` the
/// operator acts by `½(C(S^L) − C(S²) − C(S^M))` with `C(S^ℓ) = −ℓ(ℓ+2)/4`.
pub fn predicted_spectrum(a: usize, b: usize) -> BTreeMap<BigRational, usize> {
    let cas = |l: i64| BigRational::new((-l * (l + 2)).into(), 4.into());
    let mut out = BTreeMap::new();
    let (a, b) = (a as i64, b as i64);
    let mut big_m = (a - b).abs();
    while big_m <= a + b - 2 {
        let mut l = (big_m - 2).abs();
        while l <= big_m + 2 {
            let ev = (cas(l) - cas(2) - cas(big_m)) / BigRational::from_integer(2.into());
            *out.entry(ev).or_insert(0) += (l + 1) as usize;
            l += 2;
        }
        big_m += 2;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CasimirReport {
    pub a: usize,
    pub b: usize,
    pub dimension: usize,
    /// `(eigenvalue, multiplicity)` pairs, eigenvalues as rational strings.
    pub predicted: Vec<(String, usize)>,
    pub charpoly_matches: bool,
    /// `γ` for every eigenvalue `−γ ≤ 0`.
    pub gammas: Vec<String>,
    /// Every such `γ` has `2γ ∈ ℤ` and `2γ ≥ |a − b|`.
    pub gamma_bound_holds: bool,
}

impl CasimirReport {
    pub fn passes(&self) -> bool {
        self.charpoly_matches && self.gamma_bound_holds
    }
}

pub fn casimir_spectrum_check(a: usize, b: usize) -> Result<CasimirReport, Error> {
    let t = casimir_operator(a, b)?;
    let spec = predicted_spectrum(a, b);
    let mut expected = Poly::one();
    for (ev, &mult) in &spec {
        let lin = Poly::from_coeffs(vec![-GaussScalar::real(ev.clone()), GaussScalar::one()]);
        for _ in 0..mult {
            expected = &expected * &lin;
        }
    }
    let charpoly_matches = t.charpoly()? == expected;
    let zero = BigRational::from_integer(0.into());
    let gammas: Vec<BigRational> = spec.keys().filter(|ev| **ev <= zero).map(|ev| -ev.clone()).collect();
    let diff = BigRational::from_integer(((a as i64) - (b as i64)).abs().into());
    let two = BigRational::from_integer(2.into());
    let gamma_bound_holds = gammas.iter().all(|g| {
        let twice = g * &two;
        twice.is_integer() && twice >= diff
    });
    Ok(CasimirReport {
        a,
        b,
        dimension: 3 * a * b,
        predicted: spec.iter().map(|(ev, &m)| (ev.to_string(), m)).collect(),
        charpoly_matches,
        gammas: gammas.iter().map(ToString::to_string).collect(),
        gamma_bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_blocks() {
        let t = casimir_operator(1, 1).unwrap();
        assert!(t.is_zero());
        let r = casimir_spectrum_check(1, 1).unwrap();
        assert_eq!(r.predicted, vec![("0".to_string(), 3)]);
        assert!(r.passes());
    }

    #[test]
    fn real_operator() {
        let t = casimir_operator(2, 3).unwrap();
        assert!(t.to_rows().iter().flatten().all(GaussScalar::is_real));
    }

    #[test]
    fn small_pairs() {
        for (a, b) in [(2, 1), (1, 2), (2, 2), (3, 1)] {
            let r = casimir_spectrum_check(a, b).unwrap();
            assert!(r.passes(), "{a},{b}: {r:?}");
            assert_eq!(r.predicted.iter().map(|p| p.1).sum::<usize>(), 3 * a * b);
        }
    }
}
