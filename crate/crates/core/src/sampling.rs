//! Seeded random instances for the property suites.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::correspondence::{validate_matrix_pair, ChargeVector, MatrixPair};
use crate::error::Error;
use crate::exact_algebra::{GaussScalar, Mat};
use crate::normal_forms::{canonical_pair, forced_zero_positions, hurtubise_block_b, NormalFormData};
use crate::realflow::CMat;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gaussian integer with both parts in `−bound..=bound`.
pub fn gauss_int(rng: &mut impl Rng, bound: i64) -> GaussScalar {
    GaussScalar::from_parts(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// Weakly decreasing charge with `m ≤ max_m`, `n ≤ max_n`; entries are
/// mostly positive, with an occasional trailing zero when `n ≥ 2`.
pub fn random_charge(rng: &mut impl Rng, max_m: usize, max_n: usize) -> ChargeVector {
    loop {
        let n = rng.gen_range(1..=max_n);
        let mut k: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        if n >= 2 && rng.gen_bool(0.15) {
            k[0] = 0;
        }
        k.sort_unstable_by(|a, b| b.cmp(a));
        let m: usize = k.iter().sum();
        if m >= 1 && m <= max_m {
            return ChargeVector::new(k).expect("sorted and positive");
        }
    }
}

/// `C` with small Gaussian integers on every allowed position and random `q`.
pub fn random_normal_form(rng: &mut impl Rng, k: &ChargeVector, bound: i64) -> NormalFormData {
    let m = k.m();
    let zeros = forced_zero_positions(k);
    let c = Mat::from_fn(m, k.n(), |r, col| {
        if zeros.contains(&(r, col)) {
            GaussScalar::zero()
        } else {
            gauss_int(rng, bound)
        }
    });
    let q = (0..m).map(|_| gauss_int(rng, bound)).collect();
    NormalFormData::new(k.clone(), q, c).expect("forced zeros respected")
}

/// A random source-pattern block matrix for `k`.
pub fn random_patterned_b(rng: &mut impl Rng, k: &ChargeVector, bound: i64) -> Mat {
    hurtubise_block_b(random_normal_form(rng, k, bound).c(), k).expect("valid C")
}

/// `L U` with unit-triangular factors, so `det = 1`.
pub fn random_unimodular(rng: &mut impl Rng, m: usize, bound: i64) -> Mat {
    let l = Mat::from_fn(m, m, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => GaussScalar::one(),
        std::cmp::Ordering::Greater => gauss_int(rng, bound),
        std::cmp::Ordering::Less => GaussScalar::zero(),
    });
    let u = Mat::from_fn(m, m, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => GaussScalar::one(),
        std::cmp::Ordering::Less => gauss_int(rng, bound),
        std::cmp::Ordering::Greater => GaussScalar::zero(),
    });
    &l * &u
}

/// A valid pair for `k`: the canonical pair of a random block matrix, moved
/// by a random unimodular change of basis. Draws are rejected until
/// [`validate_matrix_pair`] passes.
pub fn random_valid_pair(rng: &mut impl Rng, k: &ChargeVector) -> Result<MatrixPair, Error> {
    for _ in 0..200 {
        let nf = random_normal_form(rng, k, 2);
        let p = canonical_pair(nf.block_b(), k).act(&random_unimodular(rng, k.m(), 1))?;
        if validate_matrix_pair(&p, k)?.is_valid() {
            return Ok(p);
        }
    }
    Err(Error::NonConvergence { iterations: 200, residual: f64::NAN })
}

/// Random charge and valid pair; `m ≤ max_m`, `n ≤ max_n`.
pub fn random_instance(rng: &mut impl Rng, max_m: usize, max_n: usize) -> Result<(ChargeVector, MatrixPair), Error> {
    let k = random_charge(rng, max_m, max_n);
    let p = random_valid_pair(rng, &k)?;
    Ok((k, p))
}

pub fn random_q(rng: &mut impl Rng, m: usize, bound: i64) -> Vec<GaussScalar> {
    (0..m).map(|_| gauss_int(rng, bound)).collect()
}

/// Complex matrix with entries uniform in the unit square around 0, scaled.
pub fn random_complex(rng: &mut impl Rng, m: usize, scale: f64) -> CMat {
    CMat::from_fn(m, m, |_, _| Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)))
}

/// `exp(X)` for a random hermitian `X` of the given scale.
pub fn random_positive(rng: &mut impl Rng, m: usize, scale: f64) -> CMat {
    let a = random_complex(rng, m, scale);
    crate::realflow::linalg::expm_herm(&crate::realflow::linalg::hermitian_part(&a))
}

/// Pick one element.
pub fn choose<'a, T>(rng: &mut impl Rng, v: &'a [T]) -> &'a T {
    v.choose(rng).expect("nonempty")
}
