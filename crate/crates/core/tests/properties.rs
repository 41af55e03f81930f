//! Property-based invariants over random scalars, matrices and forms.

use std::sync::LazyLock;

use proptest::prelude::*;
use qcalc_core::{CycField, CycScalar, Form, LinOp, Model, SVec, Solution};

static M3: LazyLock<Model> = LazyLock::new(|| Model::new(3).unwrap());

fn field(r: u32) -> &'static CycField {
    CycField::get(r).unwrap()
}

fn scalar(r: u32) -> impl Strategy<Value = CycScalar> {
    let n = field(r).degree();
    prop::collection::vec((-9i64..=9, 1i64..=5), n).prop_map(move |cs| {
        let s: Vec<String> = cs.iter().map(|(a, b)| format!("{a}/{b}")).collect();
        CycScalar::parse_strings(field(r), &s).unwrap()
    })
}

fn any_r() -> impl Strategy<Value = u32> {
    prop_oneof![Just(3u32), Just(5), Just(7)]
}

fn svec(r: u32, len: usize, max_nnz: usize) -> impl Strategy<Value = SVec> {
    prop::collection::vec((0..len, scalar(r)), 0..=max_nnz).prop_map(SVec::from_pairs)
}

fn matrix(r: u32) -> impl Strategy<Value = LinOp> {
    (1usize..9, 1usize..9).prop_flat_map(move |(rows, cols)| {
        prop::collection::vec(svec(r, cols, 4), rows).prop_map(move |data| LinOp::from_rows(field(r), cols, data))
    })
}

fn form3(degree: usize, max_nnz: usize) -> impl Strategy<Value = Form> {
    let len = M3.calculus().form_dim(degree);
    svec(3, len, max_nnz).prop_map(move |v| Form::new(degree, v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_axioms((x, y, z) in any_r().prop_flat_map(|r| (scalar(r), scalar(r), scalar(r)))) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x + &(-&x)).is_zero());
        match x.inv() {
            Some(xi) => prop_assert!((&x * &xi).is_one()),
            None => prop_assert!(x.is_zero()),
        }
    }

    #[test]
    fn scalar_strings_round_trip(x in any_r().prop_flat_map(scalar)) {
        let back = CycScalar::parse_strings(x.field(), &x.to_strings()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn rank_nullity(a in any_r().prop_flat_map(matrix)) {
        let rank = a.rank();
        prop_assert_eq!(rank + a.kernel().dim(), a.cols());
        prop_assert_eq!(a.image().dim(), rank);
        prop_assert_eq!(a.transpose().rank(), rank);
        for v in a.kernel().basis() {
            prop_assert!(a.apply(v).is_zero());
        }
    }

    #[test]
    fn solve_residual((a, x, b) in any_r().prop_flat_map(|r| matrix(r).prop_flat_map(move |a| {
        let (rows, cols) = (a.rows(), a.cols());
        (Just(a), svec(r, cols, 3), svec(r, rows, 2))
    }))) {
        let in_image = a.apply(&x);
        match a.solve(&in_image).unwrap() {
            Solution::Found(y) => prop_assert_eq!(a.apply(&y), in_image),
            Solution::NoSolution => prop_assert!(false, "consistent system reported unsolvable"),
        }
        match a.solve(&b).unwrap() {
            Solution::Found(y) => prop_assert_eq!(a.apply(&y), b),
            Solution::NoSolution => prop_assert!(!a.image().contains(&b)),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graded_leibniz((w, eta) in (0usize..3).prop_flat_map(|p| (form3(p, 3), (0..=(3 - p).min(2)).prop_flat_map(|q| form3(q, 3))))) {
        let calc = M3.calculus();
        let mut tail = calc.wedge(&w, &calc.d(&eta));
        if w.degree % 2 == 1 {
            tail = tail.neg();
        }
        prop_assert_eq!(calc.d(&calc.wedge(&w, &eta)), calc.wedge(&calc.d(&w), &eta).add(&tail));
    }

    #[test]
    fn wedge_is_associative((x, y, z) in (form3(1, 2), form3(1, 2), form3(1, 2))) {
        let calc = M3.calculus();
        prop_assert_eq!(calc.wedge(&calc.wedge(&x, &y), &z), calc.wedge(&x, &calc.wedge(&y, &z)));
    }

    #[test]
    fn d_squared_and_commutator((k, w) in (0usize..4).prop_flat_map(|k| (Just(k), form3(k, 4)))) {
        let calc = M3.calculus();
        let dw = calc.d(&w);
        prop_assert_eq!(&dw, &calc.d_by_commutator(&w));
        prop_assert_eq!(Form::new(k + 1, M3.complex().d(k).apply(&w.vec)), dw.clone());
        prop_assert!(calc.d(&dw).is_zero());
    }

    #[test]
    fn star_involution_and_coexact((k, w) in (0usize..5).prop_flat_map(|k| (Just(k), form3(k, 4)))) {
        let h = M3.hodge();
        prop_assert_eq!(h.star_form(&h.star_form(&w)), w.clone());
        if k >= 2 {
            prop_assert!(h.delta_form(&h.delta_form(&w)).is_zero());
        }
    }

    #[test]
    fn exact_one_forms_are_zero_modes(f in form3(0, 4)) {
        let calc = M3.calculus();
        let df = calc.d(&f);
        prop_assert!(M3.maxwell().apply(&df).is_zero());
    }

    #[test]
    fn form_json_round_trip(w in (0usize..5).prop_flat_map(|k| form3(k, 5))) {
        let calc = M3.calculus();
        prop_assert_eq!(calc.form_from_json(&calc.form_to_json(&w)).unwrap(), w);
    }
}
