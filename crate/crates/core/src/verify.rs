//! Seeded property suites shared by the command line and the test targets.
//!
//! Every case draws its instance from its own generator, derived from the
//! suite seed and the case index, so cases can run in any order or in
//! parallel and still give identical reports.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::correspondence::{
    canonicalize, from_rational_map, holomorphic_charge, krylov_block_matrix, membership_rk, syzygy_constraint_matrix,
    tangent_report, to_rational_map, ChargeVector, MatrixPair,
};
use crate::error::Error;
use crate::io::{pair_to_json, rational_map_to_json, vector_to_json};
use crate::normal_forms::{block_pattern_validate, from_hurtubise_form, gq_identity_report, to_hurtubise_form};
use crate::realflow::{
    convexity_check, convexity_check_h, discrete_energy, discrete_gradient, solve_real_bvp, uniqueness_check, CMat, Grid,
    RealFlowProblem, SolveOptions,
};
use crate::sampling;
use crate::su2_gauge::{
    casimir_spectrum_check, halfpower_assembly, halfpower_gauge_matrix, halfpower_gauge_solve, halfpower_normal_form,
    tridiag_det_two_ways,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Roundtrip,
    Duality,
    Hurtubise,
    Casimir,
    Halfpower,
    Dimension,
    Realflow,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Roundtrip,
        Suite::Duality,
        Suite::Hurtubise,
        Suite::Casimir,
        Suite::Halfpower,
        Suite::Dimension,
        Suite::Realflow,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Duality => "duality",
            Suite::Hurtubise => "hurtubise",
            Suite::Casimir => "casimir",
            Suite::Halfpower => "halfpower",
            Suite::Dimension => "dimension",
            Suite::Realflow => "realflow",
        }
    }

    /// Case count when no budget is given.
    pub fn default_budget(&self) -> usize {
        match self {
            Suite::Roundtrip => 200,
            Suite::Duality => 50,
            Suite::Hurtubise => 100,
            Suite::Casimir => 16,
            Suite::Halfpower => 80,
            Suite::Dimension => 15,
            Suite::Realflow => REALFLOW_KINDS.len(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub index: usize,
    pub passed: bool,
    /// Instance and findings; always present for failures.
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<CaseOutcome>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn from_outcomes(suite: Suite, seed: u64, mut outcomes: Vec<CaseOutcome>) -> Self {
        outcomes.sort_by_key(|o| o.index);
        let cases = outcomes.len();
        let failures: Vec<CaseOutcome> = outcomes.into_iter().filter(|o| !o.passed).collect();
        SuiteReport {
            suite: suite.name().into(),
            seed,
            cases,
            passed: cases - failures.len(),
            pass: failures.is_empty(),
            failures,
        }
    }
}

/// Generator for case `index` of a run with `seed`.
pub fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    sampling::rng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (index as u64).wrapping_add(1).wrapping_mul(0xBF58_476D_1CE4_E5B9))
}

pub fn run_case(suite: Suite, seed: u64, index: usize) -> CaseOutcome {
    let mut rng = case_rng(seed, index);
    let result = match suite {
        Suite::Roundtrip => roundtrip_case(&mut rng),
        Suite::Duality => duality_case(&mut rng),
        Suite::Hurtubise => hurtubise_case(&mut rng, index),
        Suite::Casimir => casimir_case(index),
        Suite::Halfpower => halfpower_case(&mut rng, index),
        Suite::Dimension => dimension_case(&mut rng, index),
        Suite::Realflow => realflow_case(&mut rng, index),
    };
    match result {
        Ok((passed, detail)) => CaseOutcome { index, passed, detail },
        Err(e) => CaseOutcome { index, passed: false, detail: json!({ "error": e.to_string() }) },
    }
}

/// Run `budget` cases sequentially.
pub fn run_suite(suite: Suite, seed: u64, budget: Option<usize>) -> SuiteReport {
    let n = budget.unwrap_or(suite.default_budget());
    SuiteReport::from_outcomes(suite, seed, (0..n).map(|i| run_case(suite, seed, i)).collect())
}

type CaseResult = Result<(bool, Value), Error>;

/// Pair to map to pair, compared after canonicalization; then the charge of
/// the map and exhaustive membership over charges with the same `m`, `n`.
pub fn roundtrip_case(rng: &mut impl Rng) -> CaseResult {
    let (k, p) = sampling::random_instance(rng, 6, 3)?;
    let f = to_rational_map(&p)?;
    let back = from_rational_map(&f);
    let (c_in, _) = canonicalize(&p)?;
    let (c_out, _) = canonicalize(&back)?;
    let round_trip = c_in == c_out;
    let charge = holomorphic_charge(&f);
    let charge_ok = charge == k;
    let mut wrong_members = Vec::new();
    if k.m() <= 5 {
        for ell in ChargeVector::all_with(k.m(), k.n()) {
            if membership_rk(&f, &ell)? != (ell == k) {
                wrong_members.push(ell.as_slice().to_vec());
            }
        }
    } else if !membership_rk(&f, &k)? {
        wrong_members.push(k.as_slice().to_vec());
    }
    let passed = round_trip && charge_ok && wrong_members.is_empty();
    Ok((
        passed,
        json!({
            "k": k.as_slice(),
            "pair": pair_to_json(&p),
            "map": rational_map_to_json(&f),
            "round_trip": round_trip,
            "charge": charge.as_slice(),
            "membership_mismatches": wrong_members,
        }),
    ))
}

/// All ordered `n`-tuples of nonnegative integers summing to `m`.
pub fn compositions(m: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![m]];
    }
    (0..=m)
        .flat_map(|first| {
            compositions(m - first, n - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `det M(ℓ) = 0 ⇔ det M̃(ℓ) = 0` over every weakly decreasing `ℓ`.
pub fn duality_check(p: &MatrixPair) -> Result<Vec<Value>, Error> {
    let f = to_rational_map(p)?;
    let mut mismatches = Vec::new();
    for ell in ChargeVector::all_with(p.m(), p.n()) {
        let ell = ell.as_slice();
        let dm = krylov_block_matrix(p, ell)?.det()?.is_zero();
        let dt = syzygy_constraint_matrix(&f, ell)?.det()?.is_zero();
        if dm != dt {
            mismatches.push(json!({ "ell": ell, "det_M_zero": dm, "det_Mtilde_zero": dt }));
        }
    }
    Ok(mismatches)
}

pub fn duality_case(rng: &mut impl Rng) -> CaseResult {
    let (k, p) = sampling::random_instance(rng, 5, 3)?;
    let mismatches = duality_check(&p)?;
    Ok((mismatches.is_empty(), json!({ "k": k.as_slice(), "pair": pair_to_json(&p), "mismatches": mismatches })))
}

/// `g_q` identity, `g_B` chain round trip with target sparsity, and (for the
/// first twelve cases) `det M_ℓ(7/2)` with `ℓ = index + 1`.
pub fn hurtubise_case(rng: &mut impl Rng, index: usize) -> CaseResult {
    let m = rng.gen_range(1..=8);
    let q = sampling::random_q(rng, m, 3);
    let gq = gq_identity_report(&q)?;
    let k = sampling::random_charge(rng, 8, 4);
    let b = sampling::random_patterned_b(rng, &k, 3);
    let (g, bh) = to_hurtubise_form(&b, &k)?;
    let target = block_pattern_validate(&bh, &k, "hurtubise-target")?;
    let conj = &(&g * &b) * &g.inverse()? == bh;
    let (_, back) = from_hurtubise_form(&bh, &k)?;
    let round_trip = back == b;
    let mut passed = gq.holds() && target && conj && round_trip;
    let mut detail = json!({
        "q": vector_to_json(&q),
        "gq": gq,
        "k": k.as_slice(),
        "target_pattern": target,
        "conjugation": conj,
        "round_trip": round_trip,
    });
    if index < 12 {
        let t = tridiag_det_two_ways(index + 1)?;
        passed &= t.agree && t.positive;
        detail["tridiag"] = serde_json::to_value(&t).expect("serializable");
    }
    Ok((passed, detail))
}

/// Pair `(a, b)` number `index` in `1..=4 × 1..=4`.
pub fn casimir_case(index: usize) -> CaseResult {
    let (a, b) = (index / 4 % 4 + 1, index % 4 + 1);
    let r = casimir_spectrum_check(a, b)?;
    Ok((r.passes(), serde_json::to_value(&r).expect("serializable")))
}

/// `k₁ = 3 + index mod 4` with random `C_{k₂2}`, `C_{(m−1)1}`.
pub fn halfpower_case(rng: &mut impl Rng, index: usize) -> CaseResult {
    let k1 = 3 + index % 4;
    let c1 = sampling::gauss_int(rng, 5);
    let c2 = sampling::gauss_int(rng, 5);
    let nf = halfpower_normal_form(k1, c1.clone(), c2.clone())?;
    let (mu, nu) = halfpower_gauge_solve(k1, &c1.conj(), &c2.conj())?;
    let g = halfpower_gauge_matrix(k1, &mu, &nu)?;
    let f = halfpower_assembly(&nf, &g)?.f_minus_half();
    Ok((
        f.is_zero(),
        json!({
            "k1": k1,
            "C_k2_2": c1.to_string(),
            "C_m1_1": c2.to_string(),
            "mu": vector_to_json(&mu),
            "nu": vector_to_json(&nu),
            "F_minus_half_zero": f.is_zero(),
        }),
    ))
}

/// Tangent dimension `2Σ i kᵢ` at a random point of `R_k`, cycling through
/// `k = (1,1), (2,1), (2,2)`.
pub fn dimension_case(rng: &mut impl Rng, index: usize) -> CaseResult {
    let ks = [vec![1, 1], vec![2, 1], vec![2, 2]];
    let k = ChargeVector::new(ks[index % 3].clone())?;
    let expected: usize = 2 * k.as_slice().iter().enumerate().map(|(i, ki)| (i + 1) * ki).sum::<usize>();
    let p = sampling::random_valid_pair(rng, &k)?;
    let f = to_rational_map(&p)?;
    let r = tangent_report(&f, &k)?;
    Ok((
        r.dimension == expected && r.full_rank,
        json!({ "k": k.as_slice(), "expected": expected, "report": r, "map": rational_map_to_json(&f) }),
    ))
}

pub const REALFLOW_KINDS: [&str; 6] = ["identity", "scalar", "random", "uniqueness", "gradient", "convexity"];

fn c64(re: f64) -> num_complex::Complex64 {
    num_complex::Complex64::new(re, 0.0)
}

/// Random `m×m` problem on `[0, 1]`: `β₀` with entries in the unit square,
/// `h± = exp(X±)` for random hermitian `X±`.
pub fn random_real_problem(rng: &mut impl Rng, m: usize, nodes: usize, tol: f64) -> Result<RealFlowProblem, Error> {
    let beta = sampling::random_complex(rng, m, 1.0);
    let hm = sampling::random_positive(rng, m, 1.0);
    let hp = sampling::random_positive(rng, m, 1.0);
    RealFlowProblem::new(beta, hm, hp, Grid::new(1.0, nodes)?, tol)
}

/// Relative gap between the analytic gradient of the discrete functional
/// and central differences, over `probes` random hermitian directions.
pub fn gradient_gap(rng: &mut impl Rng, grid: &Grid, h: &[CMat], beta: &CMat, probes: usize) -> Result<f64, Error> {
    let grad = discrete_gradient(grid, h, beta)?;
    let mut worst: f64 = 0.0;
    for _ in 0..probes {
        let k = rng.gen_range(1..grid.nodes - 1);
        let e = crate::realflow::linalg::hermitian_part(&sampling::random_complex(rng, h[0].nrows(), 1.0));
        let eps = 1e-5;
        let mut hp = h.to_vec();
        let mut hm = h.to_vec();
        hp[k] = &h[k] + &e * c64(eps);
        hm[k] = &h[k] - &e * c64(eps);
        let fd = (discrete_energy(grid, &hp, beta)? - discrete_energy(grid, &hm, beta)?) / (2.0 * eps);
        let an = (&e * &grad[k]).trace().re;
        worst = worst.max((fd - an).abs() / an.abs().max(1e-3));
    }
    Ok(worst)
}

/// `g(t) = exp(A t/L + B (cos(2t/L) − 1))` for random complex `A`, `B`.
pub fn random_g_path(rng: &mut impl Rng, grid: &Grid, m: usize) -> Vec<CMat> {
    let a = sampling::random_complex(rng, m, 0.7);
    let b = sampling::random_complex(rng, m, 0.7);
    grid.points()
        .iter()
        .map(|&t| {
            let s = t / grid.length;
            (&a * c64(s) + &b * c64((2.0 * s).cos() - 1.0)).exp()
        })
        .collect()
}

pub fn realflow_case(rng: &mut impl Rng, index: usize) -> CaseResult {
    let kind = REALFLOW_KINDS[index % REALFLOW_KINDS.len()];
    match kind {
        "identity" => {
            let half = sampling::random_complex(rng, 2, 1.0);
            let beta = &half + half.adjoint();
            let i2 = CMat::identity(2, 2);
            let p = RealFlowProblem::new(beta, i2.clone(), i2, Grid::new(1.0, 64)?, 1e-10)?;
            let r = solve_real_bvp(&p, &SolveOptions::default())?;
            Ok((r.residual <= 1e-10, json!({ "kind": kind, "residual": r.residual })))
        }
        "scalar" => {
            let p = random_real_problem(rng, 1, 100, 1e-10)?;
            let r = solve_real_bvp(&p, &SolveOptions { seed: rng.gen(), perturbation: 0.5, ..SolveOptions::default() })?;
            let lm = p.h_minus[(0, 0)].re.ln();
            let lp = p.h_plus[(0, 0)].re.ln();
            let gap = r
                .path
                .h
                .iter()
                .enumerate()
                .map(|(k, h)| {
                    let s = k as f64 / 99.0;
                    (h[(0, 0)].re - ((1.0 - s) * lm + s * lp).exp()).abs()
                })
                .fold(0.0, f64::max);
            Ok((gap <= 1e-8, json!({ "kind": kind, "max_gap": gap })))
        }
        "random" => {
            let p = random_real_problem(rng, 2, 200, 1e-6)?;
            let start = std::time::Instant::now();
            let r = solve_real_bvp(&p, &SolveOptions { seed: rng.gen(), ..SolveOptions::default() })?;
            let secs = start.elapsed().as_secs_f64();
            let monotone = r.residual_history.windows(2).all(|w| w[1] < w[0]);
            let conv = convexity_check_h(&r.path, &p.beta0, 1e-6)?;
            Ok((
                r.residual <= 1e-6 && secs < 60.0 && monotone && conv.holds(),
                json!({ "kind": kind, "residual": r.residual, "iterations": r.iterations, "seconds": secs,
                        "monotone": monotone, "convexity_violations": conv.violations.len() }),
            ))
        }
        "uniqueness" => {
            let p = random_real_problem(rng, 2, 100, 1e-8)?;
            let r = uniqueness_check(&p, [rng.gen(), rng.gen()])?;
            Ok((r.distance <= 1e-5, json!({ "kind": kind, "report": r })))
        }
        "gradient" => {
            let grid = Grid::new(1.0, 24)?;
            let h: Vec<CMat> = random_g_path(rng, &grid, 2).iter().map(|g| g.adjoint() * g).collect();
            let beta = sampling::random_complex(rng, 2, 1.0);
            let gap = gradient_gap(rng, &grid, &h, &beta, 10)?;
            Ok((gap <= 1e-6, json!({ "kind": kind, "relative_gap": gap })))
        }
        _ => {
            let grid = Grid::new(1.0, 200)?;
            let mut worst = f64::INFINITY;
            let mut violations = 0;
            for _ in 0..20 {
                let g = random_g_path(rng, &grid, 2);
                let beta = sampling::random_complex(rng, 2, 1.0);
                let r = convexity_check(&grid, &g, &beta, 1e-6)?;
                worst = worst.min(r.min_margin);
                violations += r.violations.len();
            }
            Ok((violations == 0, json!({ "kind": kind, "paths": 20, "violations": violations, "min_margin": worst })))
        }
    }
}
