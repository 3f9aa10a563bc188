use cotangent_core::abgrp::{FGAbGroup, IntMatrix};
use cotangent_core::beck::BeckContext;
use cotangent_core::io::*;
use cotangent_core::monoid::{self, MonoidContext, MonoidHom};
use cotangent_core::set::{FinSet, SetBeckModule, SetMap};
use cotangent_core::Error;
use proptest::prelude::*;

fn reparse(v: &serde_json::Value) -> serde_json::Value {
    parse_json(&serde_json::to_string_pretty(v).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn groups_round_trip(r in 0usize..4, c in 0usize..4, seed in prop::collection::vec(-30i64..30, 16)) {
        let m = IntMatrix::from_i64(r, c, &seed[..r * c]);
        let g = FGAbGroup::new(r, m).unwrap();
        let back = group_from_json(&reparse(&group_to_json(&g))).unwrap();
        prop_assert_eq!(back.relations(), g.relations());
        prop_assert_eq!(back.invariant_factors(), g.invariant_factors());
    }

    #[test]
    fn set_maps_round_trip(m in 0usize..5, n in 1usize..5, images in prop::collection::vec(0usize..100, 5)) {
        let images: Vec<usize> = images[..m].iter().map(|i| i % n).collect();
        let f = SetMap::new(FinSet::range(m), FinSet::range(n), images).unwrap();
        prop_assert_eq!(map_from_json(&reparse(&map_to_json(&f))).unwrap(), f);
    }

    #[test]
    fn big_integers_round_trip(digits in "[1-9][0-9]{0,40}", negative in any::<bool>()) {
        let text = if negative { format!("-{digits}") } else { digits };
        let n: num_bigint::BigInt = text.parse().unwrap();
        prop_assert_eq!(int_from_json(&reparse(&int_to_json(&n))).unwrap(), n);
    }
}

#[test]
fn monoid_objects_modules_and_homs_round_trip() {
    for (_, m) in monoid::catalog() {
        assert_eq!(monoid_from_json(&reparse(&monoid_to_json(&m))).unwrap(), m);
        let omega = MonoidContext.omega(&m).unwrap().omega;
        let back = monoid_module_from_json(&reparse(&monoid_module_to_json(&omega))).unwrap();
        assert_eq!(back, omega);
        for f in MonoidHom::all(&m, &m) {
            assert_eq!(monoid_hom_from_json(&reparse(&monoid_hom_to_json(&f))).unwrap(), f);
        }
    }
    let nat = monoid::FinCommMonoid::nat(5);
    assert_eq!(monoid_from_json(&reparse(&monoid_to_json(&nat))).unwrap(), nat);
}

#[test]
fn set_modules_round_trip() {
    let x = FinSet::new(["a", "b"]).unwrap();
    let m = SetBeckModule::new(x, vec![FGAbGroup::cyclic(6), FGAbGroup::free(2)]).unwrap();
    assert_eq!(set_module_from_json(&reparse(&set_module_to_json(&m))).unwrap(), m);
}

#[test]
fn descriptors_by_shape() {
    let v = parse_json(r#"{"set": ["a", "b"]}"#).unwrap();
    assert!(matches!(set_input_from_json(&v).unwrap(), SetInput::Set(_)));
    let v = parse_json(r#"{"map": {"source": ["1", "2"], "target": ["a"], "images": ["a", "a"]}}"#).unwrap();
    assert!(matches!(set_input_from_json(&v).unwrap(), SetInput::Map(_)));
    let v = parse_json(r#"{"nat": {"bound": 8}}"#).unwrap();
    assert!(matches!(monoid_input_from_json(&v).unwrap(), MonoidInput::Monoid(_)));
}

#[test]
fn errors_carry_positions() {
    match parse_json("{\n  \"set\": [1,\n}") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
    let v = parse_json(r#"{"elements": ["e", "a"], "table": [[0, 1], [1, 1]], "unit": 1}"#).unwrap();
    assert!(monoid_from_json(&v).is_err());
}
