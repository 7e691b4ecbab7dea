use proptest::prelude::*;
use rquiver_core::algebra::*;
use rquiver_core::AlgebraError;

fn q_val() -> impl Strategy<Value = Q> {
    (-20i64..20, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

fn poly_q() -> impl Strategy<Value = Poly<Q>> {
    prop::collection::vec(-4i64..5, 0..4).prop_map(|c| Poly::from_coeffs(c.into_iter().map(Q::from_i64).collect()))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly_q(), poly_q()).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_axioms(a in q_val(), b in q_val(), c in q_val()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + a.clone() * &c);
        if !Field::is_zero(&a) {
            prop_assert!(Field::is_one(&(a.clone() * &Field::inv(&a).unwrap())));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + a.clone() * &c);
        prop_assert_eq!(a.clone() - &a, RatFunc::zero());
        if !a.is_zero() {
            prop_assert!((a.clone() * &a.inv().unwrap()).is_one());
            prop_assert!(a.div(&a).unwrap().is_one());
        }
    }

    #[test]
    fn ratfunc_is_reduced(a in ratfunc()) {
        let g = Poly::gcd(a.numer(), a.denom());
        prop_assert!(g.is_constant());
        prop_assert_eq!(a.denom().leading().cloned(), Some(Q::one()));
        let again = RatFunc::new(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(again, a);
    }
}

#[test]
fn cancellation_in_q() {
    let q = RatFunc::q();
    let one = RatFunc::one();
    let lhs = (q.clone() * &q - &one).div(&(q.clone() - &one)).unwrap();
    assert_eq!(lhs, q + &one);
}

#[test]
fn zero_denominator_rejected() {
    assert_eq!(RatFunc::new(Poly::one(), Poly::zero()), Err(AlgebraError::DivisionByZero));
    assert!(RatFunc::zero().inv().is_err());
}

#[test]
fn neg_q_powers() {
    assert_eq!(RatFunc::neg_q_pow(3), -RatFunc::q_pow(3));
    assert_eq!(RatFunc::neg_q_pow(-2), RatFunc::q_pow(-2));
    assert!((RatFunc::q_pow(5) * &RatFunc::q_pow(-5)).is_one());
}

#[test]
fn linear_factors_multiply_back() {
    let z = RatFuncZ::z();
    let r2 = RatFuncZ::from_ratfunc(RatFunc::q_pow(2));
    let r6 = RatFuncZ::from_ratfunc(RatFunc::q_pow(6));
    let d = (z.clone() - &r2) * &(z.clone() - &r6);
    let expanded = z.clone() * &z - &(z.clone() * &(r2.clone() + &r6)) + &(r2 * &r6);
    assert_eq!(d, expanded);
    let lin = Poly::linear(RatFunc::q_pow(2));
    let (quot, rem) = d.numer().divrem(&lin).unwrap();
    assert!(rem.is_zero());
    assert_eq!(quot, Poly::linear(RatFunc::q_pow(6)));
}

#[test]
fn nullspace_identity_and_zero() {
    let id = SparseMatrix::<Q>::identity(4);
    assert_eq!(id.rank(), 4);
    assert!(id.nullspace().is_empty());
    let z = SparseMatrix::<Q>::zeros(3, 5);
    assert_eq!(z.rank(), 0);
    assert_eq!(z.nullspace().len(), 5);
}

#[test]
fn nullspace_over_ratfunc_recovers_kernel() {
    // M = A·[I | C] has kernel spanned by the columns of [-C; I].
    let q = RatFunc::q();
    let c = |i: i64| RatFunc::from_i64(i);
    let cm = [[q.clone(), c(1)], [c(0), q.clone() * &q], [c(-2), c(1)], [q.clone() + &c(1), c(3)]];
    let mut b = vec![vec![RatFunc::zero(); 6]; 4];
    for i in 0..4 {
        b[i][i] = c(1);
        b[i][4] = cm[i][0].clone();
        b[i][5] = cm[i][1].clone();
    }
    let a: Vec<Vec<RatFunc>> = (0..6)
        .map(|s| (0..4).map(|t| RatFunc::q_pow(((s * t) % 5) as i64) + &c(s as i64 - 2 * t as i64)).collect())
        .collect();
    let m = SparseMatrix::from_dense(a).mul(&SparseMatrix::from_dense(b)).unwrap();
    assert_eq!(m.rank(), 4);
    let ns = m.nullspace();
    assert_eq!(ns.len(), 2);
    for v in &ns {
        assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
    }
    for j in 0..2 {
        let mut k: Vec<RatFunc> = cm.iter().map(|r| -r[j].clone()).collect();
        k.extend([c(i64::from(j == 0)), c(i64::from(j == 1))]);
        let mut rows = ns.clone();
        rows.push(k);
        assert_eq!(SparseMatrix::from_dense(rows).rank(), 2);
    }
}

#[test]
fn solve_consistent_and_inconsistent() {
    let m = SparseMatrix::from_dense(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]]);
    let x = m.solve(&[rat(3, 1), rat(6, 1)]).unwrap().unwrap();
    assert_eq!(m.mul_vec(&x).unwrap(), vec![rat(3, 1), rat(6, 1)]);
    assert_eq!(m.solve(&[rat(1, 1), rat(0, 1)]).unwrap(), None);
}

#[test]
fn lcm_of_entry_denominators() {
    let z = RatFuncZ::z();
    let a = RatFuncZ::from_ratfunc(RatFunc::q_pow(2));
    let b = RatFuncZ::from_ratfunc(RatFunc::q_pow(4));
    let e1 = (z.clone() - &a).inv().unwrap();
    let e2 = ((z.clone() - &a) * &(z.clone() - &b)).inv().unwrap();
    let m = SparseMatrix::from_triplets(2, 2, [(0, 0, e1), (1, 1, e2), (0, 1, z.clone())]);
    let l = lcm_denominators(&m);
    let expect = Poly::linear(RatFunc::q_pow(2)) * Poly::linear(RatFunc::q_pow(4));
    assert_eq!(l, expect);
}

#[test]
fn laurent_round_trip() {
    let l = LaurentPoly::from_terms([(-2, rat(1, 1)), (3, rat(-2, 1))]);
    let f = l.to_ratfunc();
    assert_eq!(LaurentPoly::from_ratfunc(&f), Some(l.clone()));
    assert_eq!(l.eval(&rat(1, 1)).unwrap(), rat(-1, 1));
    assert_eq!(LaurentPoly::from_ratfunc(&(RatFunc::q() + &RatFunc::one()).inv().unwrap()), None);
}
