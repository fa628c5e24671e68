use proptest::prelude::*;

use rational_rmatrix::cli::EmitRecord;
use rational_rmatrix::gauge::{self, DynParams, InverseMethod};
use rational_rmatrix::zoo::{self, Family, Params};
use rational_rmatrix::{Rat, Scalar, Series, TensorOperator};

fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=20).prop_map(|(p, q)| Rat::new(p, q))
}

fn nonzero() -> impl Strategy<Value = Rat> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn distinct(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(rat(), n).prop_filter("distinct", |v| {
        (0..v.len()).all(|i| (0..i).all(|j| v[i] != v[j]))
    })
}

fn op(n: usize, slots: usize) -> impl Strategy<Value = TensorOperator<Rat>> {
    let dim = n.pow(slots as u32);
    proptest::collection::vec(rat(), dim * dim).prop_map(move |v| {
        let mut it = v.into_iter();
        TensorOperator::from_fn(n, slots, |_, _| it.next().unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rat_display_parses_back(x in rat()) {
        prop_assert_eq!(x.to_string().parse::<Rat>().unwrap(), x);
    }

    #[test]
    fn rat_inverse(x in nonzero()) {
        prop_assert_eq!(&x * &x.inv().unwrap(), Rat::one());
    }

    #[test]
    fn series_inverse_is_inverse(c in proptest::collection::vec(rat(), 1..5), lead in nonzero(), v in -2i64..2) {
        let mut coeffs = vec![lead];
        coeffs.extend(c);
        let s = Series::from_coeffs("e", v, coeffs, Some(v + 6));
        let prod = s.clone() * s.invert().unwrap();
        for k in 0..=4 {
            let expect = if k == 0 { Rat::one() } else { Rat::zero() };
            prop_assert_eq!(prod.coeff(k).unwrap(), expect);
        }
    }

    #[test]
    fn swap_is_involution(a in op(2, 2)) {
        prop_assert_eq!(a.swap_slots().swap_slots(), a);
    }

    #[test]
    fn permutation_conjugation_swaps(a in op(2, 2)) {
        let p = zoo::permutation::<Rat>(2);
        prop_assert_eq!(TensorOperator::product([&p, &a, &p]), a.swap_slots());
    }

    #[test]
    fn partial_trace_of_kron(a in op(3, 1), b in op(3, 1)) {
        prop_assert_eq!(a.kron(&b).partial_trace(2).unwrap(), a.scale(&b.trace()));
    }

    #[test]
    fn embedding_is_multiplicative(a in op(2, 1), b in op(2, 1), slot in 1usize..=3) {
        let ea = a.embed(&[slot], 3).unwrap();
        let eb = b.embed(&[slot], 3).unwrap();
        prop_assert_eq!(ea.matmul(&eb), a.matmul(&b).embed(&[slot], 3).unwrap());
    }

    #[test]
    fn g_inverse_methods_agree(q in distinct(3), z in nonzero()) {
        let q = DynParams::new(q).unwrap();
        let g = gauge::g_matrix(&z, &q).unwrap();
        let a = gauge::g_inverse(&z, &q, InverseMethod::Direct).unwrap();
        let b = gauge::g_inverse(&z, &q, InverseMethod::Symmetric).unwrap();
        prop_assert_eq!(g.matmul(&a), TensorOperator::identity(3, 1));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn explicit_unitarity(h in nonzero(), z in nonzero()) {
        let r = |z: &Rat| Family::ExplicitAppendix.build(3, &Params::new().hbar(h.clone()).z(z.clone())).unwrap();
        let lhs = r(&z).matmul(&r(&-&z).swap_slots());
        let f = h.inv().unwrap().pow(2) - z.inv().unwrap().pow(2);
        prop_assert_eq!(lhs, TensorOperator::identity(3, 2).scale(&f));
    }

    #[test]
    fn vertex_matrix_ignores_q(q1 in distinct(2), q2 in distinct(2), h in nonzero(), z1 in rat(), z2 in rat()) {
        prop_assume!(z1 != z2);
        let build = |q: &Vec<Rat>| {
            let p = Params::new().hbar(h.clone()).z12(z1.clone(), z2.clone()).q(DynParams::new(q.clone()).unwrap());
            Family::VertexGauge.build(2, &p)
        };
        match (build(&q1), build(&q2)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(e), _) | (_, Err(e)) => prop_assert!(e.is_singular_point()),
        }
    }

    #[test]
    fn emit_record_round_trips(h in nonzero(), z in nonzero()) {
        let m = Family::Yang.build(2, &Params::new().hbar(h).z(z)).unwrap();
        let rec = EmitRecord::new("yang", Default::default(), &m);
        let back = EmitRecord::from_json(&rec.to_json()).unwrap();
        prop_assert_eq!(back.operator().unwrap(), m);
        prop_assert_eq!(back, rec);
    }
}
