//! Hand-computed values, frozen.

use rational_rmatrix::algebra::linalg;
use rational_rmatrix::gauge::{self, DynParams, SymFunctions};
use rational_rmatrix::verify::{self, compare, run_suite, SamplePlan, SuiteSelection, YbeKind};
use rational_rmatrix::zoo::{self, Family, Params};
use rational_rmatrix::{Rat, Series, TensorOperator};

fn r(p: i64, q: i64) -> Rat {
    Rat::new(p, q)
}

fn i(n: i64) -> Rat {
    Rat::from_int(n)
}

fn rows(m: &TensorOperator<Rat>) -> Vec<Vec<String>> {
    m.rows().map(|row| row.iter().map(|x| x.to_string()).collect()).collect()
}

#[test]
fn series_point_values() {
    let e = Series::point(Rat::zero(), -1, 2).unwrap();
    assert_eq!(e.coeffs_in(-1, 2).unwrap(), vec![i(0), i(0), i(1), i(0)]);
    let s = Series::point(r(1, 2), 0, 2).unwrap();
    let sq = s.clone() * s;
    assert_eq!(sq.coeffs_in(0, 2).unwrap(), vec![r(1, 4), i(1), i(1)]);
}

#[test]
fn series_inverse_and_phi_residue() {
    let e = Series::point(Rat::zero(), -1, 4).unwrap();
    let x = e.clone() * (Series::constant(i(1)) + e.clone());
    assert_eq!(x.invert().unwrap().coeff(-1).unwrap(), i(1));
    let phi = zoo::phi(&e, &Series::constant(i(1))).unwrap();
    assert_eq!(phi.coeff(-1).unwrap(), i(1));
}

#[test]
fn phi_values() {
    assert_eq!(zoo::phi(&i(1), &i(1)).unwrap(), i(2));
    assert_eq!(zoo::phi(&i(2), &i(-2)).unwrap(), i(0));
    let a = zoo::phi(&r(1, 3), &r(1, 5)).unwrap();
    let b = zoo::phi(&r(1, 3), &r(-1, 5)).unwrap();
    assert_eq!(a * b, i(-16));
}

#[test]
fn xi_determinants() {
    let q = DynParams::new(vec![i(2), i(0)]).unwrap();
    let xi = gauge::xi_matrix(&i(1), &q);
    assert_eq!(rows(&xi), vec![vec!["1", "1"], vec!["4", "0"]]);
    assert_eq!(linalg::determinant(&xi).unwrap(), i(-4));
    let q = DynParams::new(vec![i(3), i(2), i(1)]).unwrap();
    assert_eq!(linalg::determinant(&gauge::xi_matrix(&i(1), &q)).unwrap(), i(-6));
    assert_eq!(linalg::determinant(&gauge::xi_matrix(&i(0), &q)).unwrap(), i(0));
}

#[test]
fn symmetric_function_values() {
    let (a, b) = (r(2, 3), i(-5));
    let s = SymFunctions::new(&[a.clone(), b.clone()]);
    assert_eq!(s.sigma(2), i(1));
    assert_eq!(s.sigma(1), &a + &b);
    assert_eq!(s.sigma(0), &a * &b);
    assert_eq!(SymFunctions::new(&[i(1), r(1, 2), i(7)]).sigma(3), i(-1));
}

#[test]
fn eleven_vertex_at_one_one() {
    let m = Family::ElevenVertex.build(2, &Params::new().hbar(i(1)).z(i(1))).unwrap();
    assert_eq!(
        rows(&m),
        vec![
            vec!["2", "0", "0", "0"],
            vec!["-2", "1", "1", "0"],
            vec!["-2", "1", "1", "0"],
            vec!["-6", "2", "2", "2"],
        ]
    );
}

#[test]
fn yang_diagonal_is_phi() {
    let m = Family::Yang.build(3, &Params::new().hbar(r(1, 2)).z(r(1, 3))).unwrap();
    for a in 0..3 {
        assert_eq!(m.get4(a, a, a, a), &i(5));
    }
}

#[test]
fn dynamical_diagonal_entry() {
    let q = DynParams::new(vec![r(1, 2), i(3)]).unwrap();
    let (h, z) = (r(2, 7), r(-3, 4));
    let m = zoo::r_dynamical(&h, &z, &q).unwrap();
    assert_eq!(m.get4(0, 0, 0, 0), &(z.inv().unwrap() + h.inv().unwrap()));
}

#[test]
fn o_matrix_pattern() {
    let o = zoo::o_matrix::<Rat>(3);
    let mut expect = TensorOperator::zeros(3, 2);
    for a in 0..3 {
        for j in 0..3 {
            // E_jj ⊗ E_aj
            expect = &expect + &TensorOperator::unit(3, j, j).kron(&TensorOperator::unit(3, a, j));
        }
    }
    assert_eq!(o, expect);
}

#[test]
fn factorization_at_zero_eta_is_identity() {
    let q = DynParams::new(vec![i(1), r(5, 2), i(-2)]).unwrap();
    assert_eq!(gauge::cal_l_eta(&Rat::zero(), &r(3, 7), &q).unwrap(), TensorOperator::identity(3, 1));
}

#[test]
fn unit_weights_collapse_lax_matrix() {
    let q = DynParams::new(vec![i(1), r(5, 2)]).unwrap();
    let (eta, z) = (r(1, 3), r(4, 5));
    let data = gauge::lax_build(&eta, &z, &q, &[i(1), i(1)]).unwrap();
    let expect = gauge::g_matrix(&(&z + &eta), &q)
        .unwrap()
        .matmul(&gauge::g_inverse(&z, &q, gauge::InverseMethod::Direct).unwrap());
    assert_eq!(data.l_top, expect);
}

/// `c + P/z` solves the Yang-Baxter equation for every constant `c`, so
/// doubling the permutation term only rescales; a diagonal defect breaks it.
#[test]
fn yang_deformations_and_ybe() {
    let (h, z1, z2, z3) = (r(1, 2), i(3), r(-1, 4), r(2, 5));
    let residual = |bend: &dyn Fn(&Rat) -> TensorOperator<Rat>| {
        let e = |m: TensorOperator<Rat>, s: [usize; 2]| m.embed(&s, 3).unwrap();
        let r12 = e(bend(&(&z1 - &z2)), [1, 2]);
        let r13 = e(bend(&(&z1 - &z3)), [1, 3]);
        let r23 = e(bend(&(&z2 - &z3)), [2, 3]);
        compare(
            "ybe",
            &TensorOperator::product([&r12, &r13, &r23]),
            &TensorOperator::product([&r23, &r13, &r12]),
        )
    };
    let p = zoo::permutation::<Rat>(2);
    let doubled = |x: &Rat| &zoo::yang(2, &h, x).unwrap() + &p.scale(&x.inv().unwrap());
    assert!(residual(&doubled).is_none());
    let defect = TensorOperator::unit(2, 0, 0).kron(&TensorOperator::unit(2, 1, 1));
    let bent = |x: &Rat| &zoo::yang(2, &h, x).unwrap() + &defect;
    assert!(residual(&bent).is_some());
    assert!(verify::check_ybe(YbeKind::Quantum, Family::Yang, 2, &SamplePlan::new(10, 3)).passed);
}

#[test]
fn suite_is_deterministic() {
    let sel = SuiteSelection::parse("qybe");
    let plan = SamplePlan::new(5, 7);
    let a = run_suite(&sel, &[2], &plan).unwrap();
    let b = run_suite(&sel, &[2], &plan).unwrap();
    assert_eq!(a, b);
}
