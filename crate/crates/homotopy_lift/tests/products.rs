mod common;

use common::*;
use fp_linalg::FVector;
use homotopy_lift::{yoneda_product, ChainMap, LiftError, SecondaryChainMap};
use proptest::prelude::*;
use resolution::{ExtClass, GenId};
use secondary_lift::lift_sum;

#[test]
fn chain_map_residuals_vanish() {
    for x in [h(2), basis(14, 4, 0), basis(8, 3, 0)] {
        let f = ChainMap::lift(res().clone(), res().clone(), x.clone()).unwrap();
        let mut checked = 0;
        for s in x.s + 1..S {
            for g in res().all_gens(s) {
                if let Some(r) = f.residual(s, g) {
                    assert!(r.is_zero(), "f̄∂ ≠ ∂f̄ at stage {s}, {g:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 50, "only {checked} generators checked");
    }
}

#[test]
fn secondary_residuals_vanish() {
    for v in [lift(h(2)), lift(basis(14, 4, 0)), value(h(0), basis(0, 2, 0))] {
        let m = map(v);
        let mut checked = 0;
        for s in 0..S {
            for g in res().all_gens(s) {
                if let Some(r) = m.residual(s, g) {
                    assert!(r.is_zero(), "H_τ equation fails at stage {s}, {g:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 50, "only {checked} generators checked");
    }
}

#[test]
fn k_rows_reduce_to_zero() {
    let m = h_map(2);
    for s in 2..S {
        for g in res().all_gens(s) {
            if let Some(rows) = m.k_row(s, g) {
                assert!(rows.iter().all(|(_, r)| r.in_ker_pi()));
            }
        }
    }
}

#[test]
fn h_tau_on_first_stage_is_the_tau_part() {
    let m = map(value(h(0), basis(0, 2, 0)));
    let g = GenId::new(2, 0);
    assert!(!m.h_tau(2, g).unwrap().is_zero());
    assert!(h_map(0).h_tau(2, g).unwrap().is_zero());
}

#[test]
fn lifting_a_class_with_nonzero_d2_fails() {
    let h4 = basis(15, 1, 0);
    let err = SecondaryChainMap::lift(sphere().clone(), sphere().clone(), lift(h4)).err().unwrap();
    assert!(matches!(err, LiftError::NotCtau2 { .. }), "{err}");
}

#[test]
fn h2_cubed() {
    let h2 = h_map(2);
    let sq = h2.product(&lift(h(2))).unwrap();
    let cube = h2.product(&sq).unwrap();
    let h1sq_h3 = mul(1, &mul(1, &h(3)));
    assert!(!h1sq_h3.is_zero());
    assert_eq!(cube, lift(h1sq_h3));
}

#[test]
fn h1_squared_h3() {
    let h1 = h_map(1);
    let x = h1.product(&h1.product(&lift(h(3))).unwrap()).unwrap();
    let h1sq_h3 = mul(1, &mul(1, &h(3)));
    let h1c0 = mul(1, &basis(8, 3, 0));
    assert!(!h1c0.is_zero());
    assert_eq!(x, value(h1sq_h3, h1c0));
}

#[test]
fn d0_times_h0h4_is_tau_k() {
    let d0 = map(lift(basis(14, 4, 0)));
    let h0h4 = mul(0, &basis(15, 1, 0));
    let x = d0.product(&lift(h0h4)).unwrap();
    assert_eq!(x, tau(basis(29, 7, 0)));
}

#[test]
fn hidden_four_extension_on_h0sq_h4sq() {
    let h0 = h_map(0);
    let h4sq = mul(4, &basis(15, 1, 0));
    let x = mul(0, &mul(0, &h4sq));
    assert_eq!(x, basis(30, 4, 0));
    let twice = h0.product(&h0.product(&lift(x)).unwrap()).unwrap();
    let h0_delta_h2sq = mul(0, &basis(30, 6, 0));
    assert!(!h0_delta_h2sq.is_zero());
    assert_eq!(twice, tau(h0_delta_h2sq));
}

#[test]
fn mod_tau_agrees_with_yoneda_oracle() {
    let mut checked = 0;
    for a in [h(0), h(1), h(2), basis(8, 3, 0), basis(14, 4, 0)] {
        let m = map(lift(a.clone()));
        for n in 0..=20 - a.n {
            for s in 1..=S - a.s - 2 {
                if !sphere().has_d2(n, s) || a.s + s + 2 > S - 1 {
                    continue;
                }
                for x in classes(n, s) {
                    if !sphere().d2(&x).unwrap().is_zero() {
                        continue;
                    }
                    let Ok(p) = m.product(&lift(x.clone())) else { continue };
                    let oracle = yoneda_product(res(), &a, &x).unwrap();
                    assert_eq!(p.e, oracle, "{a} · {x}");
                    if a.s == 1 {
                        let i = (a.n + 1).trailing_zeros();
                        assert_eq!(p.e, mul(i, &x), "h_{i} · {x}");
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100, "only {checked} products checked");
}

#[test]
fn products_are_commutative_up_to_twist() {
    for (a, x) in [(h(1), h(3)), (h(0), basis(15, 2, 0)), (h(2), basis(8, 3, 0)), (h(1), basis(14, 4, 0))] {
        let ax = map(lift(a.clone())).product(&lift(x.clone())).unwrap();
        let xa = map(lift(x.clone())).product(&lift(a.clone())).unwrap();
        assert_eq!(ax, xa, "[{x}][{a}]");
    }
}

#[test]
fn products_are_associative() {
    let h0 = h_map(0);
    let h0sq = map(h0.product(&lift(h(0))).unwrap());
    for x in [basis(30, 4, 0), basis(15, 2, 0), basis(14, 4, 0)] {
        let left = h0sq.product(&lift(x.clone())).unwrap();
        let right = h0.product(&h0.product(&lift(x)).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn tau_part_of_multiplier_acts_by_yoneda_product() {
    let y = basis(0, 2, 0);
    let with = map(value(h(0), y.clone()));
    for x in [h(3), basis(14, 4, 0), basis(8, 3, 0)] {
        let a = with.product(&lift(x.clone())).unwrap();
        let mut b = h_map(0).product(&lift(x.clone())).unwrap();
        b.f.vector.add_assign(&yoneda_product(res(), &y, &x).unwrap().vector);
        assert_eq!(a, b);
    }
}

#[test]
fn twist_is_an_involution() {
    for x in [basis(14, 4, 0), basis(15, 2, 0), h(0)] {
        let v = h_map(1).product(&lift(x)).unwrap();
        assert_eq!(v.neg(res()).unwrap().neg(res()).unwrap(), v);
    }
}

#[test]
fn product_is_outside_range_error() {
    let d0 = map(lift(basis(14, 4, 0)));
    let err = d0.product(&lift(basis(30, 2, 0))).err();
    assert!(matches!(err, Some(LiftError::NotComputed { .. }) | Some(LiftError::Resolution(_))));
}

/// Every nonzero class of `(n, s)` surviving `d₂`.
fn surviving(n: i32, s: u32) -> Vec<ExtClass> {
    let dim = res().num_gens(s, n + s as i32).unwrap();
    (1u32..1 << dim)
        .map(|bits| {
            let mut v = FVector::new(dim);
            for i in 0..dim {
                v.set(i, bits >> i & 1 == 1);
            }
            ExtClass::new(n, s, v)
        })
        .filter(|x| sphere().d2(x).unwrap().is_zero())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_is_additive_in_x(n in prop::sample::select(vec![(20, 4), (22, 7), (23, 9), (17, 4)]), i in 0usize..64, j in 0usize..64) {
        let xs = surviving(n.0, n.1);
        prop_assume!(!xs.is_empty());
        let (x, y) = (&xs[i % xs.len()], &xs[j % xs.len()]);
        let m = h_map(1);
        let sum = lift_sum(res(), &lift(x.clone()), &lift(y.clone())).unwrap();
        let lhs = m.product(&sum).unwrap();
        let rhs = lift_sum(res(), &m.product(&lift(x.clone())).unwrap(), &m.product(&lift(y.clone())).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn product_is_additive_in_the_multiplier() {
    let m_sum = map(lift_sum(res(), &lift(h(0)), &lift(h(0))).unwrap());
    for x in [h(1), h(2), basis(8, 3, 0), basis(14, 4, 0)] {
        let lhs = m_sum.product(&lift(x.clone())).unwrap();
        let p = h_map(0).product(&lift(x.clone())).unwrap();
        assert_eq!(lhs, lift_sum(res(), &p, &p).unwrap(), "{x}");
    }
}
