use cotangent_core::beck::{check_theorem1, BeckContext};
use cotangent_core::ring::context::universal_derivation;
use cotangent_core::ring::parse::parse_polynomial;
use cotangent_core::ring::{catalog, kaehler, AlgebraHom, FPAlgebra, Field, Polynomial, RingContext};
use num_rational::BigRational;
use proptest::prelude::*;

fn algebras() -> Vec<FPAlgebra> {
    vec![
        catalog::cusp(),
        catalog::dual_numbers(),
        catalog::punctured_line(),
        FPAlgebra::from_strs(Field::prime(5).unwrap(), &["x", "y"], &["x^2 - y", "y^3"]).unwrap(),
    ]
}

type Terms = Vec<(Vec<u32>, i64)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0u32..4, 2), -5i64..=5), 0..5)
}

fn build(a: &FPAlgebra, terms: &Terms) -> Polynomial {
    let n = a.nvars();
    Polynomial::from_terms(
        a.field(),
        n,
        terms.iter().map(|(m, c)| (m[..n].to_vec(), BigRational::from_integer((*c).into()))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent_and_ideal_invariant(i in 0usize..4, p in terms(), q in terms()) {
        let a = &algebras()[i];
        let (p, q) = (build(a, &p), build(a, &q));
        let nf = a.normal_form(&p);
        prop_assert_eq!(a.normal_form(&nf), nf.clone());
        let shifted = p.add(&q.mul(&a.relators()[0]));
        prop_assert_eq!(a.normal_form(&shifted), nf);
    }

    #[test]
    fn universal_derivation_obeys_leibniz(i in 0usize..4, p in terms(), q in terms()) {
        let a = &algebras()[i];
        let (p, q) = (build(a, &p), build(a, &q));
        let omega = kaehler(a).unwrap();
        let d = |f: &Polynomial| universal_derivation(a, f);
        let rhs = omega.add(&omega.scale(&p, &d(&q)), &omega.scale(&q, &d(&p)));
        let minus = Polynomial::from_int(a.field(), a.nvars(), -1);
        prop_assert!(omega.is_zero_element(&omega.add(&d(&p.mul(&q)), &omega.scale(&minus, &rhs))));
    }

    #[test]
    fn polynomial_text_round_trips(p in terms()) {
        let a = catalog::plane();
        let p = build(&a, &p);
        let back = parse_polynomial(&a.format(&p), a.field(), a.vars()).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn cusp_presentations() {
    let cusp = catalog::cusp();
    assert_eq!(kaehler(&cusp).unwrap().describe(), "gens dx,dy; rel -3x^2*dx + 2y*dy");
    let f = AlgebraHom::from_strs(&catalog::line(), &cusp, &["x"]).unwrap();
    assert_eq!(RingContext.omega_rel(&f).unwrap().omega.describe(), "gens dy; rel 2y*dy");
}

#[test]
fn localization_has_no_relative_differentials() {
    let f = AlgebraHom::from_strs(&catalog::line(), &catalog::punctured_line(), &["x"]).unwrap();
    assert!(f.is_localization().unwrap());
    assert!(!f.is_surjective().unwrap());
    assert!(RingContext.omega_rel(&f).unwrap().omega.is_zero());
    assert!(check_theorem1(&RingContext, &f).unwrap().exact);
}

#[test]
fn algebra_text_round_trips() {
    for a in algebras() {
        assert_eq!(FPAlgebra::parse(&a.to_text()).unwrap(), a);
    }
    for (_, f) in catalog::homs() {
        assert_eq!(AlgebraHom::parse(&f.to_text()).unwrap().to_text(), f.to_text());
    }
}

#[test]
fn prime_field_differentials() {
    // d(x^3) = 3x^2 dx vanishes in characteristic 3
    let a = FPAlgebra::from_strs(Field::prime(3).unwrap(), &["x"], &["x^3"]).unwrap();
    let omega = kaehler(&a).unwrap();
    assert_eq!(omega.dimension(), Some(3));
    let q = FPAlgebra::from_strs(Field::Rational, &["x"], &["x^3"]).unwrap();
    assert_eq!(kaehler(&q).unwrap().dimension(), Some(2));
}
