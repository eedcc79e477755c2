use std::time::Instant;

use nahmkit::realflow::linalg::{expm_herm, frobenius, geodesic, hermitian_part, logm};
use nahmkit::realflow::{
    complex_pair_to_nahm, convexity_check, convexity_check_h, discrete_energy, discrete_gradient, donaldson_energy,
    energy_of_h, gauge_pair, nahm_to_complex_pair, phi, residual_f, solve_real_bvp, uniqueness_check, variational_residual,
    CMat, Grid, RealFlowProblem, SolveOptions,
};
use nahmkit::sampling::{random_complex, random_positive, rng};
use num_complex::Complex64;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn smooth_positive_path(seed: u64, grid: &Grid, m: usize) -> Vec<CMat> {
    let mut r = rng(seed);
    let a = hermitian_part(&random_complex(&mut r, m, 1.0));
    let b = hermitian_part(&random_complex(&mut r, m, 1.0));
    grid.points()
        .iter()
        .map(|&t| {
            let s = t / grid.length;
            expm_herm(&(&a * c(s, 0.0) + &b * c((3.0 * s).sin() * 0.5, 0.0)))
        })
        .collect()
}

fn smooth_g_path(seed: u64, grid: &Grid, m: usize) -> Vec<CMat> {
    let mut r = rng(seed);
    let a = random_complex(&mut r, m, 0.7);
    let b = random_complex(&mut r, m, 0.7);
    grid.points()
        .iter()
        .map(|&t| {
            let s = t / grid.length;
            let x = &a * c(s, 0.0) + &b * c((2.0 * s).cos() - 1.0, 0.0);
            x.exp()
        })
        .collect()
}

#[test]
fn nahm_round_trip() {
    let grid = Grid::new(1.0, 16).unwrap();
    let mut r = rng(3);
    let t: Vec<Vec<CMat>> = (0..4)
        .map(|_| {
            (0..16)
                .map(|_| {
                    let a = random_complex(&mut r, 3, 1.0);
                    (&a - a.adjoint()) * c(0.5, 0.0)
                })
                .collect()
        })
        .collect();
    let p = nahm_to_complex_pair(grid, [&t[0], &t[1], &t[2], &t[3]]).unwrap();
    let back = complex_pair_to_nahm(&p);
    for i in 0..4 {
        for k in 0..16 {
            assert!(frobenius(&(&back[i][k] - &t[i][k])) < 1e-14);
        }
    }
}

#[test]
fn phi_examples() {
    assert_eq!(phi(&CMat::identity(2, 2)).unwrap(), 0.0);
    let d = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(2f64.exp().powi(1), 0.0), c(1.0, 0.0)]));
    assert!((phi(&d).unwrap() - 2.0).abs() < 1e-14);
    assert!((phi(&(CMat::identity(2, 2) * c(2.0, 0.0))).unwrap() - 2f64.ln()).abs() < 1e-15);
    assert!(phi(&(-CMat::identity(2, 2))).is_err());
}

#[test]
fn gradient_matches_finite_differences() {
    let grid = Grid::new(1.0, 20).unwrap();
    for seed in 0..5 {
        let h = smooth_positive_path(seed, &grid, 2);
        let mut r = rng(100 + seed);
        let beta = random_complex(&mut r, 2, 1.0);
        let grad = discrete_gradient(&grid, &h, &beta).unwrap();
        for _ in 0..5 {
            let k = r.gen_range(1..grid.nodes - 1);
            let e = hermitian_part(&random_complex(&mut r, 2, 1.0));
            let eps = 1e-5;
            let mut hp = h.clone();
            let mut hm = h.clone();
            hp[k] = &h[k] + &e * c(eps, 0.0);
            hm[k] = &h[k] - &e * c(eps, 0.0);
            let fd = (discrete_energy(&grid, &hp, &beta).unwrap() - discrete_energy(&grid, &hm, &beta).unwrap()) / (2.0 * eps);
            let an = (&e * &grad[k]).trace().re;
            assert!((fd - an).abs() <= 1e-6 * an.abs().max(1e-3), "seed {seed} node {k}: {fd} vs {an}");
        }
    }
}

/// Second-order agreement away from the ends, where the one-sided stencils
/// of the central-difference residual lose an order.
#[test]
fn discretizations_agree_on_smooth_paths() {
    let mut energy_gap = Vec::new();
    let mut residual_gap = Vec::new();
    for nodes in [101, 201, 401] {
        let grid = Grid::new(1.0, nodes).unwrap();
        let h = smooth_positive_path(7, &grid, 2);
        let beta = random_complex(&mut rng(8), 2, 1.0);
        let a = discrete_energy(&grid, &h, &beta).unwrap();
        let b = energy_of_h(&grid, &h, &beta).unwrap();
        let g: Vec<CMat> = h.iter().map(nahmkit::realflow::linalg::sqrtm).collect();
        let direct = residual_f(&gauge_pair(&grid, &g, &beta).unwrap());
        let var = variational_residual(&grid, &h, &beta).unwrap();
        let worst = (4..grid.nodes - 4).map(|k| frobenius(&(&direct[k] - &var[k]))).fold(0.0, f64::max);
        energy_gap.push((a - b).abs());
        residual_gap.push(worst);
    }
    for w in energy_gap.windows(2).chain(residual_gap.windows(2)) {
        let ratio = w[0] / w[1];
        assert!((3.5..4.5).contains(&ratio), "{energy_gap:?} {residual_gap:?}");
    }
    assert!(residual_gap[2] < 1e-4);
}

#[test]
fn unitary_invariance_of_energy() {
    let grid = Grid::new(1.0, 32).unwrap();
    let g = smooth_g_path(1, &grid, 2);
    let beta = random_complex(&mut rng(2), 2, 1.0);
    let mut r = rng(9);
    let ug: Vec<CMat> = g
        .iter()
        .map(|gk| {
            let x = random_complex(&mut r, 2, 1.0);
            let u = (&x - x.adjoint()).exp();
            u * gk
        })
        .collect();
    let e1 = donaldson_energy(&grid, &g, &beta).unwrap();
    let e2 = donaldson_energy(&grid, &ug, &beta).unwrap();
    assert!((e1 - e2).abs() < 1e-10 * e1.max(1.0));
}

fn random_problem(seed: u64, m: usize, nodes: usize, tol: f64) -> RealFlowProblem {
    let mut r = rng(seed);
    let beta = random_complex(&mut r, m, 1.0);
    let hm = random_positive(&mut r, m, 1.0);
    let hp = random_positive(&mut r, m, 1.0);
    RealFlowProblem::new(beta, hm, hp, Grid::new(1.0, nodes).unwrap(), tol).unwrap()
}

#[test]
fn identity_boundary() {
    let beta = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 2.0), c(0.0, 2.0), c(1.0, 0.0)]);
    let p = RealFlowProblem::new(beta, CMat::identity(2, 2), CMat::identity(2, 2), Grid::new(1.0, 50).unwrap(), 1e-10)
        .unwrap();
    let rep = solve_real_bvp(&p, &SolveOptions::default()).unwrap();
    assert!(rep.residual <= 1e-10);
    assert!(rep.path.h.iter().all(|h| frobenius(&(h - CMat::identity(2, 2))) < 1e-12));
}

#[test]
fn scalar_closed_form() {
    let p = random_problem(4, 1, 100, 1e-10);
    let rep = solve_real_bvp(&p, &SolveOptions { seed: 5, perturbation: 0.5, ..SolveOptions::default() }).unwrap();
    let (lm, lp) = (logm(&p.h_minus)[(0, 0)].re, logm(&p.h_plus)[(0, 0)].re);
    for (k, h) in rep.path.h.iter().enumerate() {
        let s = k as f64 / 99.0;
        let want = ((1.0 - s) * lm + s * lp).exp();
        assert!((h[(0, 0)].re - want).abs() < 1e-8, "node {k}");
    }
}

#[test]
fn random_two_by_two() {
    for seed in 0..3 {
        let p = random_problem(seed, 2, 200, 1e-6);
        let start = Instant::now();
        let rep = solve_real_bvp(&p, &SolveOptions { seed, perturbation: 0.3, ..SolveOptions::default() }).unwrap();
        eprintln!("seed {seed}: {} iterations, residual {:e}, {:?}", rep.iterations, rep.residual, start.elapsed());
        assert!(rep.residual <= 1e-6);
        assert!(rep.residual_history.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(rep.path.h[0], p.h_minus);
        assert_eq!(rep.path.h[199], p.h_plus);
        let conv = convexity_check_h(&rep.path, &p.beta0, 1e-6).unwrap();
        eprintln!("  convexity margin {:e}, slack {:e}", conv.min_margin, conv.slack);
        assert!(conv.holds(), "{:?}", conv.violations.first());
    }
}

#[test]
fn uniqueness() {
    let p = random_problem(11, 2, 100, 1e-8);
    let rep = uniqueness_check(&p, [1, 2]).unwrap();
    eprintln!("distance {:e}", rep.distance);
    assert!(rep.distance <= 1e-5);
}

#[test]
fn convexity_on_random_paths() {
    let grid = Grid::new(1.0, 200).unwrap();
    for seed in 0..20 {
        let g = smooth_g_path(seed, &grid, 2);
        let beta = random_complex(&mut rng(seed + 50), 2, 1.0);
        let rep = convexity_check(&grid, &g, &beta, 1e-6).unwrap();
        eprintln!("seed {seed}: margin {:e}", rep.min_margin);
        assert!(rep.holds(), "seed {seed}: {:?}", rep.violations.first());
    }
}

#[test]
fn geodesic_endpoints() {
    let mut r = rng(1);
    let a = random_positive(&mut r, 3, 1.0);
    let b = random_positive(&mut r, 3, 1.0);
    assert!(frobenius(&(geodesic(&a, &b, 0.0) - &a)) < 1e-12);
    assert!(frobenius(&(geodesic(&a, &b, 1.0) - &b)) < 1e-12);
}

// Scalar path h = exp(−t²): Φ'' = −2 and |F(g.(0, β))| = 1 everywhere, so
// the bound −2(|F₀| − |F₁|) = 2 is crossed while −2(|F₀| + |F₁|) = −2 is met.
#[test]
fn scalar_convexity_sign() {
    let grid = Grid::new(2.0, 201).unwrap();
    let g: Vec<CMat> = grid.points().iter().map(|&t| CMat::from_element(1, 1, c((-t * t / 2.0).exp(), 0.0))).collect();
    let beta = CMat::from_element(1, 1, c(0.7, -0.2));
    let pair = gauge_pair(&grid, &g, &beta).unwrap();
    let f1 = residual_f(&pair);
    for k in 5..grid.nodes - 5 {
        assert!((frobenius(&f1[k]) - 1.0).abs() < 1e-3, "node {k}: |F| = {}", frobenius(&f1[k]));
    }
    let dt = grid.step();
    let p: Vec<f64> = g.iter().map(|gk| phi(&(gk.adjoint() * gk)).unwrap()).collect();
    let k = grid.nodes / 2;
    let second = (p[k + 1] - 2.0 * p[k] + p[k - 1]) / (dt * dt);
    assert!((second + 2.0).abs() < 1e-6);
    assert!(second < -2.0 * (0.0 - frobenius(&f1[k])) - 1.0);
    assert!(convexity_check(&grid, &g, &beta, 1e-6).unwrap().holds());
}
