//! Worked examples through the public API.

use nahmkit::correspondence::{
    from_rational_map, holomorphic_charge, membership_rk, predicate_a, residue_pairing, tangent_dimension,
    to_rational_map, validate_matrix_pair, ChargeVector, MatrixPair, RationalMapData,
};
use nahmkit::exact_algebra::{GaussScalar, LaurentMat, Mat, Poly};
use nahmkit::flags::{based_check, flag_degree_vector, flag_lift, flag_to_map, minimal_syzygy_basis};
use nahmkit::normal_forms::{
    block_pattern_validate, build_beta_st, gb_inverse_transform, gb_transform, hurtubise_block_b, NormalFormData,
};
use nahmkit::su2_gauge::{boundary_residues, casimir_spectrum_check, su2_irrep, tridiag_det_two_ways, x_block};

fn g(v: i64) -> GaussScalar {
    GaussScalar::from_i64(v)
}

fn k(v: &[usize]) -> ChargeVector {
    ChargeVector::new(v.to_vec()).unwrap()
}

fn map(q: &[i64], p: &[&[i64]]) -> RationalMapData {
    RationalMapData::new(Poly::from_i64s(q), p.iter().map(|c| Poly::from_i64s(c)).collect()).unwrap()
}

/// `[z(z−1) : z−1 : z]`
fn line_pair_map() -> RationalMapData {
    map(&[0, -1, 1], &[&[-1, 1], &[0, 1]])
}

#[test]
fn inverse_square_map() {
    let b = Mat::from_i64_rows(&[&[0, 1], &[0, 0]]);
    let p = MatrixPair::new(b.clone(), vec![g(1), g(0)], vec![vec![g(0), g(1)]]).unwrap();
    let f = to_rational_map(&p).unwrap();
    assert_eq!(f, map(&[0, 0, 1], &[&[1]]));
    assert_eq!(holomorphic_charge(&f), k(&[2]));
    assert!(membership_rk(&f, &k(&[2])).unwrap());
    assert_eq!(tangent_dimension(&f, &k(&[2])).unwrap(), 4);

    let bad = MatrixPair::new(b, vec![g(1), g(0)], vec![vec![g(1), g(0)]]).unwrap();
    assert!(to_rational_map(&bad).is_err());
    assert!(!validate_matrix_pair(&bad, &k(&[2])).unwrap().is_valid());

    let back = from_rational_map(&f);
    assert_eq!(back.b(), &Mat::from_i64_rows(&[&[0, 0], &[1, 0]]));
    assert_eq!(back.w1(), &[g(0), g(1)]);
    assert_eq!(back.w()[0], vec![g(1), g(0)]);
}

#[test]
fn residue_pairing_values() {
    let t2 = Poly::from_i64s(&[0, 0, 1]);
    assert_eq!(residue_pairing(&Poly::one(), &Poly::one(), &t2).unwrap(), g(0));
    assert_eq!(residue_pairing(&Poly::one(), &Poly::z(), &t2).unwrap(), g(1));
    assert_eq!(residue_pairing(&Poly::one(), &Poly::one(), &Poly::z()).unwrap(), g(1));
}

#[test]
fn charges_of_small_maps() {
    let f = line_pair_map();
    assert_eq!(holomorphic_charge(&f), k(&[1, 1]));
    assert!(predicate_a(&f, &[1, 1]).unwrap());
    assert!(!predicate_a(&f, &[2, 0]).unwrap());
    assert_eq!(tangent_dimension(&f, &k(&[1, 1])).unwrap(), 6);

    let degenerate = map(&[0, 0, 1], &[&[1], &[]]);
    assert_eq!(holomorphic_charge(&degenerate), k(&[2, 0]));
    assert!(!membership_rk(&degenerate, &k(&[1, 1])).unwrap());

    for m in 1..=4 {
        let mut q = vec![0; m + 1];
        q[m] = 1;
        assert_eq!(holomorphic_charge(&map(&q, &[&[1]])), k(&[m]));
    }
}

#[test]
fn flag_examples() {
    assert_eq!(flag_degree_vector(&k(&[1, 1])), vec![2, 1]);
    assert_eq!(flag_degree_vector(&k(&[2, 1])), vec![3, 1]);
    assert_eq!(flag_degree_vector(&k(&[4])), vec![4]);

    let inv_sq = map(&[0, 0, 1], &[&[1]]);
    let basis = minimal_syzygy_basis(&inv_sq);
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0].s, Poly::from_i64s(&[-1]));
    assert_eq!(basis[0].t, vec![Poly::from_i64s(&[0, 0, 1])]);
    assert!(based_check(&inv_sq));

    let f = line_pair_map();
    let flag = flag_lift(&f, &k(&[1, 1])).unwrap();
    assert_eq!(flag.degrees, vec![1, 1]);
    assert_eq!(flag.piece_degrees(), vec![-1, -2]);
    assert_eq!(flag_to_map(&flag).unwrap(), f);
    assert!(flag_lift(&f, &k(&[2, 0])).is_err());

    let split = map(&[0, 0, 1], &[&[1], &[]]);
    let degs: Vec<usize> = minimal_syzygy_basis(&split).iter().map(|b| b.degree().unwrap()).collect();
    assert_eq!(degs, vec![0, 2]);
}

#[test]
fn based_depends_on_the_flag_at_infinity() {
    // [z³ : 1 : z]: the degree-one syzygy (0, z, −1) leads with e₁, not e₂.
    let f = map(&[0, 0, 0, 1], &[&[1], &[0, 1]]);
    assert_eq!(holomorphic_charge(&f), k(&[2, 1]));
    assert!(!based_check(&f));
    // Swapping the components gives a based map.
    let swapped = map(&[0, 0, 0, 1], &[&[0, 1], &[1]]);
    assert!(based_check(&swapped));
    assert!(membership_rk(&swapped, &k(&[2, 1])).unwrap());
}

#[test]
fn hurtubise_block_for_two_one() {
    let kk = k(&[2, 1]);
    let c = Mat::from_i64_rows(&[&[1, 2], &[3, 4], &[0, 5]]);
    let b = hurtubise_block_b(&c, &kk).unwrap();
    assert_eq!(b, Mat::from_i64_rows(&[&[1, 0, 2], &[3, 0, 4], &[0, 1, 5]]));
    assert!(block_pattern_validate(&b, &kk, "hurtubise-source").unwrap());
    let (gm, bp) = gb_transform(&b, &kk, 2, 1).unwrap();
    assert_eq!(&(&gm * &b) * &gm.inverse().unwrap(), bp);
    assert_eq!(gb_inverse_transform(&bp, &kk, 2, 1).unwrap(), b);

    let nf = NormalFormData::new(kk.clone(), vec![g(0); 3], c).unwrap();
    let p = nf.canonical_pair();
    assert!(validate_matrix_pair(&p, &kk).unwrap().is_valid());
    assert_eq!(holomorphic_charge(&to_rational_map(&p).unwrap()), kk);
    let beta = build_beta_st(&nf).unwrap();
    assert_eq!(beta.lambda_n.residue().rows(), 3);
}

#[test]
fn zero_normal_form_is_pure_residue() {
    let kk = k(&[2, 1]);
    let nf = NormalFormData::new(kk, vec![g(0); 3], Mat::zeros(3, 2)).unwrap();
    let beta = build_beta_st(&nf).unwrap();
    assert_eq!(beta.lambda_n.regular(), &LaurentMat::zero(3, 3));
}

#[test]
fn su2_data() {
    let r = su2_irrep(1).unwrap();
    assert!(r.tau.iter().all(Mat::is_zero));
    let r = su2_irrep(3).unwrap();
    let cas = r.tau.iter().fold(Mat::zeros(3, 3), |acc, t| &acc + &(t * t));
    assert_eq!(cas, Mat::identity(3).scale(&g(-2)));

    let res = boundary_residues(&k(&[2]));
    assert_eq!(res.x_n, x_block(2));
    assert_eq!(res.x_n, Mat::diag(&[GaussScalar::frac(-1, 4), GaussScalar::frac(1, 4)]));
    assert_eq!(res.y_n, Mat::from_i64_rows(&[&[0, 0], &[1, 0]]));
    let res = boundary_residues(&k(&[2, 1]));
    let mut expected = Mat::zeros(3, 3);
    expected.set_block(1, 1, &x_block(2));
    assert_eq!(res.x_n, expected);

    let c = casimir_spectrum_check(1, 1).unwrap();
    assert_eq!(c.predicted, vec![("0".to_string(), 3)]);
    assert!(casimir_spectrum_check(2, 1).unwrap().passes());

    let t = tridiag_det_two_ways(2).unwrap();
    assert_eq!(t.direct, "33/4");
    assert_eq!(t.factored, "33/4");
}
