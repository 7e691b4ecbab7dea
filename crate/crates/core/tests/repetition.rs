use std::collections::BTreeSet;

use rquiver_core::quiver::DynkinQuiver;
use rquiver_core::repetition::{gamma_i, RepVertex, Repetition};
use rquiver_core::roots::{CartanType, Root};
use rquiver_core::Error;

fn a2() -> (DynkinQuiver, Repetition) {
    let q = DynkinQuiver::parse(CartanType::a(2), "1-2").unwrap();
    let rep = Repetition::new(&q);
    (q, rep)
}

/// `τ = s₁ s₂` on `A₂` root coordinates, written out by hand.
fn tau_a2(b: &Root) -> Root {
    let s = |i: usize, v: [i64; 2]| match i {
        1 => [-v[0] + v[1], v[1]],
        _ => [v[0], v[0] - v[1]],
    };
    let v = s(1, s(2, [b.0[0], b.0[1]]));
    Root(v.to_vec())
}

#[test]
fn a2_phi_matches_hand_oracle() {
    let (_, rep) = a2();
    assert_eq!(rep.height().0, vec![1, 0]);
    // Walk down each row from the injective, flipping sign and shift on
    // leaving the positive roots.
    for (i, gamma) in [(1, Root(vec![1, 0])), (2, Root(vec![1, 1]))] {
        let (mut b, mut m) = (gamma, 0);
        let mut p = rep.xi(i);
        for _ in 0..6 {
            assert_eq!(rep.phi(RepVertex::new(i, p)).unwrap(), (b.clone(), m), "({i},{p})");
            let t = tau_a2(&b);
            (b, m) = if t.is_positive() { (t, m) } else { (-&t, m - 1) };
            p -= 2;
        }
    }
    assert_eq!(rep.phi(RepVertex::new(2, -2)).unwrap(), (Root(vec![1, 0]), -1));
    assert_eq!(rep.phi(RepVertex::new(1, -1)).unwrap(), (Root(vec![0, 1]), 0));
}

#[test]
fn phi_parity_errors() {
    let (_, rep) = a2();
    assert!(matches!(rep.phi(RepVertex::new(1, 0)), Err(Error::Parity { .. })));
    assert!(rep.spectral_exponent(RepVertex::new(2, 1)).is_err());
}

#[test]
fn phi_table_is_bijective() {
    for q in DynkinQuiver::all_orientations(CartanType::d(5)) {
        let rep = Repetition::new(&q);
        let t = rep.build_phi(rep.default_window());
        assert!(t.is_bijective());
        for i in 1..=5 {
            let v = RepVertex::new(i, rep.xi(i));
            assert_eq!(t.get(v), Some(&(rep.gamma(i).clone(), 0)));
            assert_eq!(t.inverse(rep.gamma(i), 0), Some(v));
        }
    }
}

#[test]
fn a2_ar_quiver() {
    let (_, rep) = a2();
    let ar = rep.ar_quiver();
    let verts: Vec<RepVertex> = ar.vertices().copied().collect();
    assert_eq!(verts, vec![RepVertex::new(1, -1), RepVertex::new(1, 1), RepVertex::new(2, 0)]);
    assert_eq!(
        ar.arrows,
        vec![(RepVertex::new(1, -1), RepVertex::new(2, 0)), (RepVertex::new(2, 0), RepVertex::new(1, 1))]
    );
    assert!(ar.path_exists(RepVertex::new(1, -1), RepVertex::new(1, 1)));
    assert!(!ar.path_exists(RepVertex::new(1, 1), RepVertex::new(1, -1)));
    assert!(ar.path_exists(RepVertex::new(2, 0), RepVertex::new(2, 0)));
}

#[test]
fn d_ar_quiver_sizes() {
    for n in 4..=6 {
        for q in DynkinQuiver::all_orientations(CartanType::d(n)) {
            let rep = Repetition::new(&q);
            let ar = rep.ar_quiver();
            assert_eq!(ar.len(), n * (n - 1));
            assert!(rep.check_injectives(&ar));
            // m_k = n - 2 wherever k* = k; otherwise m_{k*} absorbs ξ_{k*} - ξ_k.
            for k in 1..=n {
                let ks = rep.star(k);
                let expect = n as i64 - 2 + (rep.xi(ks) - rep.xi(k)) / 2;
                assert_eq!(rep.m(ks), expect);
                if ks == k {
                    assert_eq!(rep.m(k), n as i64 - 2);
                }
            }
        }
    }
}

#[test]
fn m_values_and_nakayama() {
    let (_, rep) = a2();
    assert_eq!((rep.m(1), rep.m(2)), (1, 0));
    for ty in [CartanType::a(4), CartanType::d(5), CartanType::e(6)] {
        for q in DynkinQuiver::all_orientations(ty) {
            assert!(Repetition::new(&q).check_nakayama(), "{q}");
        }
    }
}

#[test]
fn additivity() {
    for ty in [CartanType::d(4), CartanType::a(3)] {
        for q in DynkinQuiver::all_orientations(ty) {
            assert!(Repetition::new(&q).ar_quiver().check_additivity());
        }
    }
}

#[test]
fn simple_roots_on_boundary() {
    let (_, rep) = a2();
    let ar = rep.ar_quiver();
    assert_eq!(ar.vertex_of(&Root(vec![1, 0])), Some(RepVertex::new(1, rep.xi(1))));
    assert_eq!(ar.vertex_of(&Root(vec![0, 1])), Some(RepVertex::new(1, rep.xi(1) - 2 * rep.m(1))));
    let q = DynkinQuiver::parse(CartanType::d(4), "1-2,3-2,4-2").unwrap();
    let rep = Repetition::new(&q);
    assert!(rep.check_boundary(&rep.ar_quiver()));
    for k in q.sources() {
        let v = rep.ar_quiver().vertex_of(&Root::simple(4, k)).unwrap();
        assert_eq!(v, RepVertex::new(k, rep.xi(k)));
    }
}

#[test]
fn gamma_by_paths() {
    let q = DynkinQuiver::parse(CartanType::a(2), "1-2").unwrap();
    assert_eq!(gamma_i(&q, 1).unwrap(), Root(vec![1, 0]));
    assert_eq!(gamma_i(&q, 2).unwrap(), Root(vec![1, 1]));
    let lin = DynkinQuiver::linear(CartanType::a(5));
    assert_eq!(gamma_i(&lin, 5).unwrap(), Root(vec![1; 5]));
    for k in lin.sources() {
        assert_eq!(gamma_i(&lin, k).unwrap(), Root::simple(5, k));
    }
}

#[test]
fn spectral_exponents_and_signs() {
    let (_, rep) = a2();
    assert_eq!(rep.spectral_exponent(RepVertex::new(1, 1)).unwrap(), 4);
    let q = DynkinQuiver::parse(CartanType::d(4), "2-1,2-3,2-4").unwrap();
    let rep = Repetition::with_height(&q, q.height_function_at(2, 0).unwrap()).unwrap();
    assert_eq!(rep.spectral_exponent(RepVertex::new(2, 0)).unwrap(), 6);
    for q in DynkinQuiver::all_orientations(CartanType::d(5)) {
        let rep = Repetition::new(&q);
        for &(s, t) in q.arrows() {
            assert_eq!(rep.o(s), -rep.o(t));
        }
    }
}

#[test]
fn described_vertices_equal_gamma_q() {
    for q in DynkinQuiver::all_orientations(CartanType::e(6)) {
        let rep = Repetition::new(&q);
        let ar: BTreeSet<RepVertex> = rep.ar_quiver().vertices().copied().collect();
        assert_eq!(rep.described_vertices(), ar);
    }
}

#[test]
fn incompatible_height_rejected() {
    let q = DynkinQuiver::parse(CartanType::a(2), "1-2").unwrap();
    let bad = rquiver_core::quiver::HeightFunction(vec![0, 1]);
    assert!(Repetition::with_height(&q, bad).is_err());
}
