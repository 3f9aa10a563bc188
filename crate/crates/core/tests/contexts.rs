use cotangent_core::abgrp::FGAbGroup;
use cotangent_core::beck::{check_gamma_epi, check_theorem1, check_theorem2, BeckContext};
use cotangent_core::monoid::{self, FinCommMonoid, MonBeckModule, MonoidContext, MonoidHom};
use cotangent_core::set::{FinSet, SetBeckModule, SetContext, SetMap};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_group() -> impl Strategy<Value = FGAbGroup> {
    prop_oneof![
        Just(FGAbGroup::zero()),
        Just(FGAbGroup::cyclic(2)),
        Just(FGAbGroup::cyclic(3)),
        Just(FGAbGroup::cyclic(4)),
        Just(FGAbGroup::cyclic(6)),
    ]
}

fn set_map() -> impl Strategy<Value = SetMap> {
    (0usize..=3, 1usize..=3).prop_flat_map(|(m, n)| {
        prop::collection::vec(0..n, m).prop_map(move |images| {
            SetMap::new(FinSet::range(m), FinSet::range(n), images).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_adjunction_orders_match(
        (f, m_fibers, n_fibers) in set_map().prop_flat_map(|f| {
            let (m, n) = (f.source().len(), f.target().len());
            (Just(f), prop::collection::vec(small_group(), m), prop::collection::vec(small_group(), n))
        })
    ) {
        let ctx = SetContext;
        let m = SetBeckModule::new(f.source().clone(), m_fibers).unwrap();
        let n = SetBeckModule::new(f.target().clone(), n_fibers).unwrap();
        let left = ctx.hom_group(&ctx.pushforward(&f, &m).unwrap(), &n).unwrap();
        let right = ctx.hom_group(&m, &ctx.pullback(&f, &n).unwrap()).unwrap();
        prop_assert!(left.group.is_isomorphic(&right.group));
    }

    #[test]
    fn set_sequences_and_gamma(f in set_map()) {
        prop_assert!(check_theorem1(&SetContext, &f).unwrap().exact);
        prop_assert!(check_gamma_epi(&SetContext, &f).unwrap());
    }
}

fn constant(m: &FinCommMonoid, g: &FGAbGroup) -> MonBeckModule {
    let id = cotangent_core::abgrp::IntMatrix::identity(g.ngens());
    MonBeckModule::constant(m, g, &vec![id; m.len()]).unwrap()
}

#[test]
fn monoid_adjunction_orders_match() {
    let ctx = MonoidContext;
    let groups = [FGAbGroup::cyclic(2), FGAbGroup::cyclic(3)];
    for (_, s) in monoid::catalog() {
        for (_, t) in monoid::catalog() {
            for f in MonoidHom::all(&s, &t) {
                for g in &groups {
                    let a = constant(&s, g);
                    let b = constant(&t, g);
                    let left = ctx.hom_group(&ctx.pushforward(&f, &a).unwrap(), &b).unwrap();
                    let right = ctx.hom_group(&a, &ctx.pullback(&f, &b).unwrap()).unwrap();
                    assert!(left.group.is_isomorphic(&right.group), "{f:?} {g}");
                }
            }
        }
    }
}

#[test]
fn monoid_gamma_and_surjections() {
    let ctx = MonoidContext;
    for (_, s) in monoid::catalog() {
        for (_, t) in monoid::catalog() {
            for f in MonoidHom::all(&s, &t) {
                assert!(check_gamma_epi(&ctx, &f).unwrap(), "{f:?}");
                match check_theorem2(&ctx, &f) {
                    Ok(v) => assert!(f.is_surjective() && v.epi, "{f:?}"),
                    Err(cotangent_core::Error::NotAnEpi(_)) => assert!(!f.is_surjective()),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn omega_of_labeled_sets() {
    let x = FinSet::new(["a", "b", "c"]).unwrap();
    let o = SetContext.omega(&x).unwrap();
    assert_eq!(o.omega.describe(), "fiber a: Z, fiber b: Z, fiber c: Z");
    assert_eq!(o.unit, vec![vec![BigInt::from(1)]; 3]);
    let empty = SetContext.omega(&FinSet::range(0)).unwrap();
    assert!(empty.omega.fibers().is_empty());
}

#[test]
fn empty_preimage_pushes_forward_to_zero() {
    let f = SetMap::from_labels(FinSet::new(["1"]).unwrap(), FinSet::new(["a", "b"]).unwrap(), &["a"])
        .unwrap();
    let m = SetBeckModule::new(f.source().clone(), vec![FGAbGroup::free(1)]).unwrap();
    let p = SetContext.pushforward(&f, &m).unwrap();
    assert_eq!(p.describe(), "fiber a: Z, fiber b: 0");
}

#[test]
fn ens_verdicts_for_named_maps() {
    let ctx = SetContext;
    let two = FinSet::new(["1", "2"]).unwrap();
    let c = SetMap::from_labels(two.clone(), FinSet::new(["a"]).unwrap(), &["a", "a"]).unwrap();
    let v = ctx.prop_ens_check(&c).unwrap();
    assert!(v.consistent() && !v.bijective());
    let d = ctx.delta_tilde(&c).unwrap();
    assert!(d.is_epi() && !d.is_mono());
    let b = SetMap::from_labels(two, FinSet::new(["a", "b"]).unwrap(), &["b", "a"]).unwrap();
    assert!(ctx.prop_ens_check(&b).unwrap().delta_iso());
}

#[test]
fn truncated_nat_omega_stabilizes() {
    let ctx = MonoidContext;
    let eight = ctx.omega_nat_truncated(8).unwrap();
    assert!(eight.matches_expected());
    for bound in [9, 10, 12] {
        let larger = ctx.omega_nat_truncated(bound).unwrap();
        assert!(larger.matches_expected() && larger.agrees_with(&eight));
    }
}
