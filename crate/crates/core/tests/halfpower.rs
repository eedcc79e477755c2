//! The `z^{−1/2}` coefficient is real-affine in `(Re μ, Im μ, Re ν, Im ν)`.
//! These tests build that affine map by evaluating the assembled expansion,
//! solve it by exact elimination and compare with the tridiagonal formula.

use nahmkit::exact_algebra::{GaussScalar, Mat};
use nahmkit::sampling::{gauss_int, rng};
use nahmkit::su2_gauge::{
    halfpower_assembly, halfpower_gauge_matrix, halfpower_gauge_solve, halfpower_normal_form, real_equation_laurent,
    tridiag_det_two_ways, tridiag_m,
};
use num_rational::BigRational;

fn f_of(k1: usize, c1: &GaussScalar, c2: &GaussScalar, mu: &[GaussScalar], nu: &[GaussScalar]) -> Mat {
    let nf = halfpower_normal_form(k1, c1.clone(), c2.clone()).unwrap();
    let g = halfpower_gauge_matrix(k1, mu, nu).unwrap();
    halfpower_assembly(&nf, &g).unwrap().f_minus_half()
}

fn real_parts(m: &Mat) -> Vec<BigRational> {
    m.to_rows().iter().flatten().flat_map(|z| [z.re().clone(), z.im().clone()]).collect()
}

/// Unique `(μ, ν)` with vanishing `z^{−1/2}` term, from the affine map.
fn oracle(k1: usize, c1: &GaussScalar, c2: &GaussScalar) -> Option<(Vec<GaussScalar>, Vec<GaussScalar>)> {
    let n = k1 - 2;
    let zero = vec![GaussScalar::zero(); n];
    let f0 = real_parts(&f_of(k1, c1, c2, &zero, &zero));
    let mut columns = Vec::new();
    for which in 0..2 {
        for i in 0..n {
            for unit in [GaussScalar::one(), GaussScalar::i()] {
                let mut mu = zero.clone();
                let mut nu = zero.clone();
                if which == 0 {
                    mu[i] = unit;
                } else {
                    nu[i] = unit;
                }
                let fi = real_parts(&f_of(k1, c1, c2, &mu, &nu));
                columns.push(fi.iter().zip(&f0).map(|(a, b)| a - b).collect::<Vec<_>>());
            }
        }
    }
    let unknowns = columns.len();
    let rows: Vec<Vec<GaussScalar>> = (0..f0.len())
        .map(|r| {
            let mut row: Vec<GaussScalar> = columns.iter().map(|c| GaussScalar::real(c[r].clone())).collect();
            row.push(GaussScalar::real(-f0[r].clone()));
            row
        })
        .collect();
    let (rref, pivots) = Mat::from_rows(rows).unwrap().rref();
    if pivots.contains(&unknowns) || pivots.len() < unknowns {
        return None;
    }
    let x: Vec<GaussScalar> = (0..unknowns).map(|r| rref.get(r, unknowns).clone()).collect();
    let pack = |off: usize| -> Vec<GaussScalar> {
        (0..n).map(|i| &x[off + 2 * i] + &(&GaussScalar::i() * &x[off + 2 * i + 1])).collect()
    };
    Some((pack(0), pack(2 * n)))
}

#[test]
fn tridiagonal_formula_matches_elimination() {
    let mut r = rng(42);
    for k1 in 3..=6 {
        for _ in 0..5 {
            let c1 = gauss_int(&mut r, 4);
            let c2 = gauss_int(&mut r, 4);
            let (mu, nu) = oracle(k1, &c1, &c2).expect("unique solution");
            let closed = halfpower_gauge_solve(k1, &c1.conj(), &c2.conj()).unwrap();
            assert_eq!((mu, nu), closed, "k1 = {k1}");
        }
    }
}

#[test]
fn other_normalizations_fail() {
    // −2C̄ e₁ and −4C̄/7 for the first unknown do not cancel the term.
    let c1 = GaussScalar::from_parts(1, 2);
    let c2 = GaussScalar::from_parts(-3, 1);
    for k1 in 3..=5 {
        let n = k1 - 2;
        for factor in [GaussScalar::from_i64(-2), GaussScalar::frac(-4, 7)] {
            let m = if k1 == 3 { Mat::diag(&[GaussScalar::one()]) } else { tridiag_m(n, &GaussScalar::frac(7, 2)).unwrap() };
            let inv = m.inverse().unwrap();
            let e: Vec<GaussScalar> = inv.col(0);
            let mu: Vec<GaussScalar> = e.iter().map(|v| &(v * &factor) * &c1.conj()).collect();
            let nu: Vec<GaussScalar> = e.iter().map(|v| &(v * &factor) * &c2.conj()).collect();
            assert!(!f_of(k1, &c1, &c2, &mu, &nu).is_zero());
        }
    }
}

#[test]
fn closed_formula_is_the_expansion_coefficient() {
    let mut r = rng(7);
    for k1 in 2..=6 {
        let n = k1 - 2;
        let c1 = gauss_int(&mut r, 3);
        let c2 = gauss_int(&mut r, 3);
        let mu: Vec<GaussScalar> = (0..n).map(|_| gauss_int(&mut r, 3)).collect();
        let nu: Vec<GaussScalar> = (0..n).map(|_| gauss_int(&mut r, 3)).collect();
        let nf = halfpower_normal_form(k1, c1, c2).unwrap();
        let g = halfpower_gauge_matrix(k1, &mu, &nu).unwrap();
        let asm = halfpower_assembly(&nf, &g).unwrap();
        let full = real_equation_laurent(&asm.alpha, &asm.beta);
        assert_eq!(full.coeff(-1), asm.f_minus_half(), "k1 = {k1}");
        // the gauge leaves the z^{-2} term alone
        let bare = halfpower_assembly(&nf, &Mat::zeros(2 * k1 - 1, 2 * k1 - 1)).unwrap();
        assert_eq!(real_equation_laurent(&bare.alpha, &bare.beta).coeff(-4), full.coeff(-4));
    }
}

#[test]
fn empty_systems() {
    let z = GaussScalar::from_parts(2, 1);
    assert_eq!(halfpower_gauge_solve(2, &z, &z).unwrap(), (vec![], vec![]));
    assert!(f_of(2, &z, &z, &[], &[]).is_zero());
    assert!(halfpower_gauge_solve(1, &z, &z).is_err());
}

#[test]
fn tridiagonal_determinants() {
    for l in 1..=12 {
        let t = tridiag_det_two_ways(l).unwrap();
        assert!(t.agree && t.positive, "{t:?}");
    }
    assert_eq!(tridiag_det_two_ways(4).unwrap().c_sequence[1], "61/14");
}
