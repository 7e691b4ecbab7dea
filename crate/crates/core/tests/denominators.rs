use rquiver_core::denominators::*;
use rquiver_core::quiver::DynkinQuiver;
use rquiver_core::repetition::{RepVertex, Repetition};
use rquiver_core::roots::{CartanType, Family};
use rquiver_core::Error;

fn exps(k: usize, l: usize, n: usize) -> Vec<i64> {
    denom_d(k, l, n).unwrap().exponents
}

#[test]
fn d4_table() {
    assert_eq!(exps(1, 1, 4), vec![2, 6]);
    assert_eq!(exps(2, 2, 4), vec![2, 4, 4, 6]);
    assert_eq!(exps(1, 4, 4), vec![4]);
    assert_eq!(exps(4, 1, 4), vec![4]);
    assert_eq!(exps(4, 4, 4), vec![2, 6]);
    assert_eq!(exps(3, 4, 4), vec![4]);
}

#[test]
fn d_closed_form_by_clause() {
    for n in 4..=9usize {
        let ni = n as i64;
        for k in 1..=n {
            for l in 1..=n {
                let d = denom_d(k, l, n).unwrap();
                assert_eq!(d, denom_d(l, k, n).unwrap().clone_with(k, l));
                assert!(d.exponents.iter().all(|&s| (1..=2 * ni - 2).contains(&s)));
                let (ki, li) = (k as i64, l as i64);
                let spin = |x: usize| x + 1 >= n;
                let expect: Vec<i64> = if !spin(k) && !spin(l) {
                    (1..=ki.min(li)).flat_map(|s| [(ki - li).abs() + 2 * s, 2 * ni - ki - li - 2 + 2 * s]).collect()
                } else if spin(k) && spin(l) {
                    // s runs over 1..=n-1 with s ≡ k - l + 1 mod 2, exponent 2s.
                    (1..ni).filter(|s| (s - (ki - li + 1)).rem_euclid(2) == 0).map(|s| 2 * s).collect()
                } else {
                    let m = if spin(k) { li } else { ki };
                    (1..=m).map(|s| ni - m - 1 + 2 * s).collect()
                };
                let mut expect = expect;
                expect.sort_unstable();
                assert_eq!(d.exponents, expect, "n={n} ({k},{l})");
            }
        }
    }
}

trait CloneWith {
    fn clone_with(&self, k: usize, l: usize) -> Self;
}

impl CloneWith for DenominatorSpec {
    fn clone_with(&self, k: usize, l: usize) -> Self {
        DenominatorSpec::from_exponents(self.family, self.n, k, l, self.exponents.clone())
    }
}

#[test]
fn pole_orders() {
    let d = denom_d(2, 2, 4).unwrap();
    assert_eq!(d.pole_order(4), 2);
    assert_eq!(d.pole_order(0), 0);
    assert_eq!(denom_d(1, 1, 4).unwrap().pole_order(2), 1);
    assert_eq!(d.multiplicities().get(&4), Some(&2));
    assert_eq!(d.degree(), 4);
    assert!(double_pole_region(4, 2, 2, 4));
    assert!(!double_pole_region(4, 1, 1, 2));
}

#[test]
fn type_a_simple_poles() {
    assert_eq!(denom_a(1, 1, 2).unwrap().exponents, vec![2]);
    assert_eq!(denom_a(1, 2, 3).unwrap().exponents, vec![3]);
    for n in 1..=7 {
        for k in 1..=n {
            for l in 1..=n {
                assert!(denom_a(k, l, n).unwrap().multiplicities().values().all(|&m| m == 1));
            }
        }
    }
}

#[test]
fn invalid_indices() {
    assert!(matches!(denom_d(0, 1, 4), Err(Error::IndexOutOfRange(_))));
    assert!(denom_d(1, 5, 4).is_err());
    assert!(denom_d(1, 1, 3).is_err());
    assert!(denom_a(3, 1, 2).is_err());
    assert_eq!(denom(CartanType::e(6), 1, 2), Err(Error::UnsupportedType));
}

#[test]
fn factored_form() {
    assert_eq!(denom_d(1, 1, 4).unwrap().factored(), "(z - q^2)(z - q^6)");
    assert_eq!(denom_d(1, 5, 5).unwrap().factored(), "(z + q^5)");
    let d = denom_d(2, 3, 6).unwrap();
    assert_eq!(d.to_poly().degree(), Some(d.degree()));
}

#[test]
fn a2_gamma_j() {
    let q = DynkinQuiver::parse(CartanType::a(2), "1-2").unwrap();
    let rep = Repetition::new(&q);
    let j = build_j(&rep);
    assert_eq!(j[0].vertex, RepVertex::new(1, 1));
    assert_eq!(j[1].vertex, RepVertex::new(1, -1));
    let g = GammaJ::build(&rep).unwrap();
    assert_eq!(g.arrows(), vec![(2, 1, 1)]);
    assert_eq!(g.cartan, vec![vec![2, -1], vec![-1, 2]]);
    assert!(g.matches_reversed(&q));
    assert!(verify_thm42(&rep).unwrap());
}

#[test]
fn klr_parameters() {
    let q = DynkinQuiver::parse(CartanType::a(3), "1-2,2-3").unwrap();
    let g = GammaJ::build(&Repetition::new(&q)).unwrap();
    assert_eq!(g.klr_parameters(2, 2).unwrap(), KlrParameter::Zero);
    assert_eq!(g.klr_parameters(1, 3).unwrap(), KlrParameter::Pair { d_ij: 0, d_ji: 0 });
    assert_eq!(g.klr_parameters(1, 3).unwrap().expand().len(), 1);
    let adj = g.klr_parameters(2, 1).unwrap();
    assert_eq!(adj, KlrParameter::Pair { d_ij: 1, d_ji: 0 });
    // (u - v)
    assert_eq!(adj.expand().into_iter().collect::<Vec<_>>(), vec![((0, 1), -1), ((1, 0), 1)]);
    assert!(g.klr_parameters(0, 1).is_err());
    assert!(g.klr_parameters(1, 4).is_err());
}

#[test]
fn d4_gamma_j_every_orientation() {
    let ty = CartanType::d(4);
    for q in DynkinQuiver::all_orientations(ty) {
        let rep = Repetition::new(&q);
        let g = GammaJ::build(&rep).unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert_eq!(g.cartan, ty.cartan_matrix());
        assert!((0..4).all(|a| g.d[a][a] == 0));
        assert!(verify_lemma34(&rep).unwrap());
        assert!(verify_sink_source_gap(&rep));
    }
}

#[test]
fn e_type_gamma_j_unsupported() {
    let q = DynkinQuiver::linear(CartanType::e(6));
    assert!(matches!(GammaJ::build(&Repetition::new(&q)), Err(Error::UnsupportedType)));
    assert!(verify_lemma34(&Repetition::new(&DynkinQuiver::linear(CartanType::a(3)))).is_err());
}

#[test]
fn double_pole_classification() {
    for n in 4..=10 {
        assert!(verify_double_pole_classification(n).unwrap());
    }
    assert_eq!(denom(CartanType::d(5), 2, 3).unwrap().family, Family::D);
}
