//! Independent oracles for derived values.
//!
//! Each oracle recomputes a quantity by a route that shares no algorithm
//! with the production code it is compared against: Hom-exactness by
//! enumerating homomorphisms into small test groups, derivation groups by
//! enumerating sections, and ring derivations by solving the Leibniz rule on
//! a `k`-basis instead of the Jacobian system.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::abgrp::{AbHom, FGAbGroup, IntMatrix};
use crate::beck::Section;
use crate::error::{Error, Result};
use crate::monoid::MonBeckModule;
use crate::ring::linalg::{self, Row};
use crate::ring::{FPAlgebra, FPModule, Field, Monomial, Polynomial};
use crate::set::SetBeckModule;

/// Largest order of a cyclic test group `Z/n`.
pub const MAX_TEST_ORDER: i64 = 8;
/// Largest generator count for which `Hom(-, Z/n)` is enumerated.
pub const MAX_TEST_GENS: usize = 4;
/// Largest number of sections enumerated by the derivation oracles.
pub const MAX_SECTIONS: u64 = 4096;

fn reduce(m: &IntMatrix, n: i64) -> Vec<Vec<i64>> {
    let n = BigInt::from(n);
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(|c| c.mod_floor(&n).to_i64().expect("residue fits")).collect())
        .collect()
}

/// `v · M (mod n)` for `M` with `v.len()` rows.
fn pull_mod(v: &[i64], m: &[Vec<i64>], cols: usize, n: i64) -> Vec<i64> {
    (0..cols)
        .map(|j| v.iter().zip(m).map(|(a, row)| a * row[j]).sum::<i64>().rem_euclid(n))
        .collect()
}

/// `Hom(G, Z/n)` as the row vectors `v` with `v · R ≡ 0 (mod n)`.
fn dual_mod(g: &FGAbGroup, n: i64) -> Vec<Vec<i64>> {
    let k = g.ngens();
    let rel = reduce(g.relations(), n);
    let cols = g.relations().cols();
    let mut out = Vec::new();
    let mut v = vec![0i64; k];
    loop {
        if pull_mod(&v, &rel, cols, n).iter().all(|&x| x == 0) {
            out.push(v.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < n {
                break;
            }
            v[i] = 0;
        }
    }
}

/// `0 -> Hom(C, Z/n) -> Hom(B, Z/n) -> Hom(A, Z/n)` is exact.
fn exact_against_cyclic(r: &AbHom, s: &AbHom, n: i64) -> bool {
    let mr = reduce(r.matrix(), n);
    let ms = reduce(s.matrix(), n);
    let (na, nb) = (r.source().ngens(), r.target().ngens());
    let c_dual = dual_mod(s.target(), n);
    let images: HashSet<Vec<i64>> = c_dual.iter().map(|phi| pull_mod(phi, &ms, nb, n)).collect();
    let killed = |psi: &Vec<i64>| pull_mod(psi, &mr, na, n).iter().all(|&x| x == 0);
    images.len() == c_dual.len()
        && images.iter().all(killed)
        && dual_mod(r.target(), n).iter().filter(|psi| killed(psi)).all(|psi| images.contains(psi))
}

fn to_q(c: &BigInt) -> BigRational {
    BigRational::from_integer(c.clone())
}

/// `Hom(G, Q)` as a basis of row vectors killed by every relator.
fn dual_q(g: &FGAbGroup) -> Vec<Row> {
    let rows = g.relations().columns().iter().map(|c| c.iter().map(to_q).collect()).collect();
    linalg::nullspace(&Field::Rational, rows, g.ngens())
}

fn pull_q(v: &Row, m: &IntMatrix) -> Row {
    (0..m.cols())
        .map(|j| v.iter().enumerate().map(|(i, a)| a * to_q(&m[(i, j)])).sum())
        .collect()
}

/// The same test against `Z`, by ranks over `Q`. Index defects of lattices
/// are torsion phenomena, which the cyclic test groups see.
fn exact_against_integers(r: &AbHom, s: &AbHom) -> bool {
    let q = Field::Rational;
    let c_dual = dual_q(s.target());
    let images: Vec<Row> = c_dual.iter().map(|phi| pull_q(phi, s.matrix())).collect();
    let nb = r.target().ngens();
    let na = r.source().ngens();
    let image_rank = linalg::rank(&q, images.clone(), nb);
    let composite_zero = images.iter().all(|v| pull_q(v, r.matrix()).iter().all(Zero::is_zero));
    let b_dual = dual_q(r.target());
    let pulled: Vec<Row> = b_dual.iter().map(|psi| pull_q(psi, r.matrix())).collect();
    let kernel_dim = b_dual.len() - linalg::rank(&q, pulled, na);
    image_rank == c_dual.len() && composite_zero && kernel_dim == image_rank
}

/// Right exactness of `A -r-> B -s-> C -> 0` by its definition: `Hom(-, U)`
/// turns it into a left exact sequence for `U = Z` and every cyclic `U` of
/// order at most [`MAX_TEST_ORDER`]. Non-cyclic test groups of that order
/// are sums of cyclic ones and add nothing.
///
/// The test set is complete for sequences accepted by [`hom_testable`].
pub fn hom_exact(r: &AbHom, s: &AbHom) -> bool {
    (2..=MAX_TEST_ORDER).all(|n| exact_against_cyclic(r, s, n)) && exact_against_integers(r, s)
}

/// Every torsion coefficient is at most [`MAX_TEST_ORDER`], so every
/// nonzero element has a nonzero image in `Z` or some test `Z/n`.
pub fn detectable(g: &FGAbGroup) -> bool {
    let bound = BigInt::from(MAX_TEST_ORDER);
    g.invariant_factors().iter().all(|d| d.is_zero() || *d <= bound)
}

/// Sequences on which [`hom_exact`] decides right exactness: small
/// presentations, and `C`, `coker r`, `coker s` all detectable. Every
/// failure of right exactness is a nonzero element of one of these.
pub fn hom_testable(r: &AbHom, s: &AbHom) -> bool {
    r.source().ngens() <= MAX_TEST_GENS
        && r.target().ngens() <= MAX_TEST_GENS
        && s.target().ngens() <= MAX_TEST_GENS
        && detectable(s.target())
        && detectable(&r.cokernel().0)
        && detectable(&s.cokernel().0)
}

fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::from_i64(rows, cols, &entries)
}

fn try_random_sequence<R: Rng>(rng: &mut R) -> Option<(AbHom, AbHom)> {
    let nb = rng.gen_range(1..=3);
    let nrel = rng.gen_range(0..=2);
    let b = FGAbGroup::new(nb, random_matrix(rng, nb, nrel, 4)).ok()?;
    let na = rng.gen_range(1..=3);
    let r = AbHom::new(FGAbGroup::free(na), b.clone(), random_matrix(rng, nb, na, 3)).ok()?;
    let full = b.relations().hcat(r.matrix()).ok()?;
    let (c_rel, s_mat) = match rng.gen_range(0..6) {
        0 => (full, IntMatrix::identity(nb)),
        // drop one relator coming from r
        1 => (
            b.relations().hcat(&r.matrix().submatrix_cols(0..na - 1)).ok()?,
            IntMatrix::identity(nb),
        ),
        // one relator too many
        2 => (full.hcat(&random_matrix(rng, nb, 1, 3)).ok()?, IntMatrix::identity(nb)),
        // multiplication by 2 into the cokernel
        3 => (full, IntMatrix::diagonal(&vec![BigInt::from(2); nb])),
        // an extra free generator in the target
        4 => {
            let mut rel = IntMatrix::zeros(nb + 1, full.cols());
            rel.set_block(0, 0, &full);
            let mut inc = IntMatrix::zeros(nb + 1, nb);
            inc.set_block(0, 0, &IntMatrix::identity(nb));
            (rel, inc)
        }
        // r not killed
        _ => (b.relations().clone(), IntMatrix::identity(nb)),
    };
    let c = FGAbGroup::new(c_rel.rows(), c_rel).ok()?;
    let s = AbHom::new(b, c, s_mat).ok()?;
    Some((r, s))
}

/// A random sequence `A -> B -> C` within the scope of [`hom_testable`],
/// drawn from a mix of exact and deliberately broken constructions.
pub fn random_sequence<R: Rng>(rng: &mut R) -> (AbHom, AbHom) {
    loop {
        if let Some((r, s)) = try_random_sequence(rng) {
            if hom_testable(&r, &s) {
                return (r, s);
            }
        }
    }
}

/// Number of elements of each order in a finite abelian group with the given
/// invariant factors, from `#{g : m·g = 0} = ∏ gcd(m, d_i)`.
/// `None` for infinite groups.
pub fn order_profile(factors: &[BigInt]) -> Option<BTreeMap<u64, u64>> {
    let ds: Vec<u64> = factors
        .iter()
        .map(|d| d.to_u64().filter(|&d| d > 0))
        .collect::<Option<_>>()?;
    let exponent = ds.iter().fold(1u64, |e, d| e.lcm(d));
    let divisors: Vec<u64> = (1..=exponent).filter(|m| exponent % m == 0).collect();
    let mut exact: BTreeMap<u64, u64> = BTreeMap::new();
    for &m in &divisors {
        let killed: u64 = ds.iter().map(|d| m.gcd(d)).product();
        let smaller: u64 = exact.iter().filter(|(&k, _)| m % k == 0).map(|(_, c)| c).sum();
        exact.insert(m, killed - smaller);
    }
    exact.retain(|_, c| *c > 0);
    Some(exact)
}

fn element_order(g: &FGAbGroup, v: &[BigInt]) -> u64 {
    let mut acc = v.to_vec();
    let mut k = 1;
    while !g.is_zero_element(&acc) {
        acc.iter_mut().zip(v).for_each(|(a, b)| *a += b);
        k += 1;
    }
    k
}

/// Enumerates all sections of a family of finite fibers, keeping those
/// accepted by `keep`, and counts them by order.
fn section_profile(fibers: &[FGAbGroup], keep: impl Fn(&Section) -> bool) -> Result<BTreeMap<u64, u64>> {
    let mut total = BigInt::from(1);
    for f in fibers {
        total *= f
            .order()
            .ok_or_else(|| Error::SizeLimit("derivation oracle needs finite fibers".into()))?;
    }
    if total > BigInt::from(MAX_SECTIONS) {
        return Err(Error::SizeLimit(format!("{total} sections exceed {MAX_SECTIONS}")));
    }
    let elements: Vec<Vec<Vec<BigInt>>> = fibers
        .iter()
        .map(|f| f.elements(MAX_SECTIONS))
        .collect::<Result<_>>()?;
    let mut profile = BTreeMap::new();
    let mut idx = vec![0usize; fibers.len()];
    loop {
        let s: Section = idx.iter().zip(&elements).map(|(&i, es)| es[i].clone()).collect();
        if keep(&s) {
            let order = s
                .iter()
                .zip(fibers)
                .fold(1u64, |o, (v, f)| o.lcm(&element_order(f, v)));
            *profile.entry(order).or_insert(0) += 1;
        }
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(profile);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < elements[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Order profile of `Der(X, b)` for a set module: every section counts.
pub fn set_derivation_profile(b: &SetBeckModule) -> Result<BTreeMap<u64, u64>> {
    section_profile(b.fibers(), |_| true)
}

/// Order profile of `Der(X, A)` for a monoid module, keeping the sections
/// with `s(xy) = x·s(y) + y·s(x)` for every defined product.
pub fn monoid_derivation_profile(a: &MonBeckModule) -> Result<BTreeMap<u64, u64>> {
    let base = a.base();
    section_profile(a.fibers(), |s| {
        base.products().all(|(x, y, xy)| {
            let mut rhs = a.h(x, y).apply(&s[y]);
            rhs.iter_mut().zip(a.h(y, x).apply(&s[x])).for_each(|(p, q)| *p += q);
            a.fiber(xy).elements_equal(&s[xy], &rhs)
        })
    })
}

/// `dim_k Der_k(A, M)` for finite-dimensional `A` and `M`. The unknowns are
/// the values `D(a_p)` on the standard monomials of `A`, constrained by
/// `D(a_p a_q) = a_p D(a_q) + a_q D(a_p)` for every pair.
pub fn leibniz_derivation_dimension(a: &FPAlgebra, m: &FPModule) -> Option<usize> {
    let basis = a.monomial_basis()?;
    let kb = m.k_basis()?;
    let field = a.field();
    let (na, nm) = (basis.len(), kb.len());
    let elem = |mono: &Monomial| Polynomial::monomial(field, mono.clone(), field.from_int(1));
    let unit = |s: usize| {
        let mut e = vec![BigRational::zero(); nm];
        e[s] = field.from_int(1);
        m.from_coordinates(&kb, &e)
    };
    // action[p][s][t]: coordinate t of a_p · m_s
    let action: Vec<Vec<Vec<BigRational>>> = basis
        .iter()
        .map(|ap| {
            let ap = elem(ap);
            (0..nm).map(|s| m.coordinates(&kb, &m.scale(&ap, &unit(s)))).collect()
        })
        .collect();
    let var = |r: usize, s: usize| r * nm + s;
    let mut rows = Vec::new();
    for p in 0..na {
        for q in p..na {
            let prod = a.normal_form(&elem(&basis[p]).mul(&elem(&basis[q])));
            for t in 0..nm {
                let mut row = vec![BigRational::zero(); na * nm];
                for (r, mono) in basis.iter().enumerate() {
                    row[var(r, t)] += prod.coeff(mono);
                }
                for s in 0..nm {
                    row[var(q, s)] -= &action[p][s][t];
                    row[var(p, s)] -= &action[q][s][t];
                }
                rows.push(row.into_iter().map(|c| field.normalize(c)).collect());
            }
        }
    }
    Some(na * nm - linalg::rank(field, rows, na * nm))
}

/// Test modules over `A`: `A`, `A/(x_1)` and `A²`.
pub fn ring_test_modules(a: &FPAlgebra) -> Result<Vec<(String, FPModule)>> {
    let mut out = vec![("A".to_string(), FPModule::free_rank(a, 1)?)];
    if a.nvars() > 0 {
        let name = format!("A/({})", a.vars()[0]);
        out.push((name, FPModule::new(a.clone(), vec!["e1".into()], vec![vec![a.var(0)]])?));
    }
    out.push(("A^2".to_string(), FPModule::free_rank(a, 2)?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::catalog;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z() -> FGAbGroup {
        FGAbGroup::free(1)
    }

    fn scalar(s: &FGAbGroup, t: &FGAbGroup, k: i64) -> AbHom {
        AbHom::new(s.clone(), t.clone(), IntMatrix::from_i64(1, 1, &[k])).unwrap()
    }

    #[test]
    fn multiplication_by_two_then_reduction_is_exact() {
        let z2 = FGAbGroup::cyclic(2);
        assert!(hom_exact(&scalar(&z(), &z(), 2), &scalar(&z(), &z2, 1)));
    }

    #[test]
    fn wrong_cokernel_is_rejected() {
        let z4 = FGAbGroup::cyclic(4);
        let z3 = FGAbGroup::cyclic(3);
        assert!(!hom_exact(&scalar(&z(), &z(), 2), &scalar(&z(), &z4, 1)));
        assert!(!hom_exact(&scalar(&z(), &z(), 2), &scalar(&z(), &z(), 1)));
        assert!(!hom_exact(&scalar(&z(), &z(), 1), &scalar(&z(), &z3, 2)));
    }

    #[test]
    fn profiles() {
        let klein = order_profile(&[BigInt::from(2), BigInt::from(2)]).unwrap();
        assert_eq!(klein, BTreeMap::from([(1, 1), (2, 3)]));
        let z6 = order_profile(&[BigInt::from(6)]).unwrap();
        assert_eq!(z6, BTreeMap::from([(1, 1), (2, 1), (3, 2), (6, 2)]));
        assert_eq!(order_profile(&[]).unwrap(), BTreeMap::from([(1, 1)]));
        assert!(order_profile(&[BigInt::zero()]).is_none());
    }

    #[test]
    fn leibniz_counts() {
        let dual = catalog::dual_numbers();
        let m = FPModule::free_rank(&dual, 1).unwrap();
        assert_eq!(leibniz_derivation_dimension(&dual, &m), Some(1));
        let cube = FPAlgebra::from_strs(Field::Rational, &["x"], &["x^3"]).unwrap();
        let m = FPModule::free_rank(&cube, 1).unwrap();
        assert_eq!(leibniz_derivation_dimension(&cube, &m), Some(2));
        assert_eq!(leibniz_derivation_dimension(&catalog::line(), &m), None);
    }

    #[test]
    fn random_sequences_mix_verdicts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let verdicts: Vec<bool> = (0..60)
            .map(|_| {
                let (r, s) = random_sequence(&mut rng);
                hom_exact(&r, &s)
            })
            .collect();
        assert!(verdicts.iter().any(|&v| v) && verdicts.iter().any(|&v| !v));
    }
}
