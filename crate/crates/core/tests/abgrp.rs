use cotangent_core::abgrp::{check_right_exact, smith_normal_form, AbHom, FGAbGroup, IntMatrix};
use cotangent_core::oracle;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntMatrix::from_i64(r, c, &e))
    })
}

/// A unimodular matrix as a product of elementary row operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, k, swap) in ops {
            let mut e = IntMatrix::identity(n);
            if swap {
                e[(i, i)] = BigInt::zero();
                e[(j, j)] = BigInt::zero();
                e[(i, j)] = BigInt::one();
                e[(j, i)] = BigInt::one();
                if i == j {
                    e[(i, i)] = BigInt::one();
                }
            } else if i != j {
                e[(i, j)] = BigInt::from(k);
            }
            m = &e * &m;
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_is_exact(m in matrix(6, 20)) {
        let f = smith_normal_form(&m);
        prop_assert_eq!(&(&f.u * &m) * &f.v, f.s.clone());
        prop_assert!((&f.u * &f.u_inv).is_identity());
        prop_assert!((&f.v * &f.v_inv).is_identity());
        prop_assert!(f.u.determinant().unwrap().abs().is_one());
        prop_assert!(f.v.determinant().unwrap().abs().is_one());
        let d = f.divisors();
        prop_assert_eq!(d.len(), f.rank);
        for w in d.windows(2) {
            prop_assert!(w[0].is_positive() && (&w[1] % &w[0]).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariant_factors_ignore_the_presentation(
        (m, p, q) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            (prop::collection::vec(-6i64..=6, r * c).prop_map(move |e| IntMatrix::from_i64(r, c, &e)),
             unimodular(r), unimodular(c))
        })
    ) {
        let g = FGAbGroup::new(m.rows(), m.clone()).unwrap();
        let h = FGAbGroup::new(m.rows(), &(&p * &m) * &q).unwrap();
        prop_assert_eq!(g.invariant_factors(), h.invariant_factors());
    }

    #[test]
    fn cokernel_projection_is_right_exact(m in matrix(3, 5), rels in matrix(3, 4)) {
        let b = FGAbGroup::new(m.rows(), IntMatrix::zeros(m.rows(), 0)).unwrap();
        let b = if rels.rows() == m.rows() { FGAbGroup::new(m.rows(), rels).unwrap() } else { b };
        let r = AbHom::new(FGAbGroup::free(m.cols()), b, m).unwrap();
        let (_, proj) = r.cokernel();
        prop_assert!(check_right_exact(&r, &proj).unwrap().exact);
        prop_assert!(proj.is_epi());
    }

    #[test]
    fn checker_agrees_with_hom_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, s) = oracle::random_sequence(&mut rng);
        prop_assert_eq!(check_right_exact(&r, &s).unwrap().exact, oracle::hom_exact(&r, &s));
    }
}

#[test]
fn kernel_of_multiplication_by_three_on_z6() {
    let z6 = FGAbGroup::cyclic(6);
    let h = AbHom::new(z6.clone(), z6, IntMatrix::from_i64(1, 1, &[3])).unwrap();
    let (k, _) = h.kernel();
    assert_eq!(k.invariant_factors(), &[BigInt::from(3)]);
    let (c, _) = h.cokernel();
    assert_eq!(c.invariant_factors(), &[BigInt::from(3)]);
}

#[test]
fn mixed_group_invariants() {
    let g = FGAbGroup::new(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 4])).unwrap();
    assert_eq!(g.invariant_factors(), &[BigInt::from(2), BigInt::from(4)]);
    let g = FGAbGroup::new(3, IntMatrix::from_i64(3, 1, &[6, 4, 0])).unwrap();
    assert_eq!(g.invariant_factors(), &[BigInt::from(2), BigInt::zero(), BigInt::zero()]);
}
