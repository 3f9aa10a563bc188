use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::base::{FinCommMonoid, MonoidHom};
use super::module::{MonBeckHom, MonBeckModule, MonHomGroup};
use crate::abgrp::{AbHom, DirectSum, FGAbGroup, IntMatrix};
use crate::beck::{BeckContext, CotangentData, Coproduct, Section, SequenceVerdict};
use crate::error::{Error, Result};

/// Generators of a presented family, indexed per fiber by a key.
struct Presentation<K> {
    keys: Vec<Vec<K>>,
    index: Vec<HashMap<K, usize>>,
    relations: Vec<Vec<Vec<BigInt>>>,
}

impl<K: std::hash::Hash + Eq + Clone> Presentation<K> {
    fn new(keys: Vec<Vec<K>>) -> Self {
        let index = keys
            .iter()
            .map(|ks| ks.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        let relations = vec![Vec::new(); keys.len()];
        Presentation {
            keys,
            index,
            relations,
        }
    }

    fn at(&self, z: usize, k: &K) -> usize {
        self.index[z][k]
    }

    fn relate(&mut self, z: usize, terms: &[(K, BigInt)]) {
        let mut col = vec![BigInt::zero(); self.keys[z].len()];
        for (k, c) in terms {
            col[self.index[z][k]] += c;
        }
        if col.iter().any(|v| !v.is_zero()) {
            self.relations[z].push(col);
        }
    }

    fn fibers(&self) -> Vec<FGAbGroup> {
        self.keys
            .iter()
            .zip(&self.relations)
            .map(|(ks, rel)| {
                FGAbGroup::from_relation_columns(ks.len(), rel).expect("relation lengths match")
            })
            .collect()
    }

    /// Transition matrices from a generator map `(v, key in fiber y) -> key in fiber v*y`.
    fn transitions(
        &self,
        base: &FinCommMonoid,
        fibers: &[FGAbGroup],
        mut image: impl FnMut(usize, &K) -> K,
    ) -> Vec<Vec<Option<AbHom>>> {
        let n = base.len();
        (0..n)
            .map(|v| {
                (0..n)
                    .map(|y| {
                        let vy = base.mul(v, y)?;
                        let mut m = IntMatrix::zeros(fibers[vy].ngens(), fibers[y].ngens());
                        for (j, k) in self.keys[y].iter().enumerate() {
                            m[(self.at(vy, &image(v, k)), j)] = BigInt::one();
                        }
                        Some(AbHom::new(fibers[y].clone(), fibers[vy].clone(), m).expect(
                            "generator transitions respect the presentation relations",
                        ))
                    })
                    .collect()
            })
            .collect()
    }
}

/// The presentation of `Ω_X`: fiber `z` has generators `(w, d_x)` with
/// `w*x = z` and relations `(w, d_{x*y}) - (w*x, d_y) - (w*y, d_x)`.
fn omega_presentation(x: &FinCommMonoid) -> Presentation<(usize, usize)> {
    let keys = (0..x.len()).map(|z| x.factorizations(z)).collect();
    let mut p = Presentation::new(keys);
    let one = BigInt::one();
    for w in 0..x.len() {
        for a in 0..x.len() {
            for b in a..x.len() {
                let Some(ab) = x.mul(a, b) else { continue };
                let Some(z) = x.mul(w, ab) else { continue };
                let wa = x.mul(w, a).expect("subproduct of a defined product");
                let wb = x.mul(w, b).expect("subproduct of a defined product");
                p.relate(
                    z,
                    &[((w, ab), one.clone()), ((wa, b), -&one), ((wb, a), -&one)],
                );
            }
        }
    }
    p
}

/// `Der(X, A)` as the kernel of the Leibniz system on `⊕_x A_x`.
#[derive(Clone, Debug)]
pub struct MonDerivations {
    pub group: FGAbGroup,
    /// Inclusion into `⊕_x A_x`.
    pub incl: AbHom,
    sum: DirectSum,
}

impl MonDerivations {
    pub fn decode(&self, element: &[BigInt]) -> Section {
        let v = self.incl.apply(element);
        (0..self.sum.offsets.len() - 1)
            .map(|k| v[self.sum.range(k)].to_vec())
            .collect()
    }

    pub fn encode(&self, s: &Section) -> Option<Vec<BigInt>> {
        let v: Vec<BigInt> = s.iter().flatten().cloned().collect();
        self.incl.preimage(&v)
    }
}

/// `Ω` of a truncation of `N`, in oriented canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatOmega {
    pub bound: usize,
    /// Invariant factors per fiber (`[]` for the zero group, `[0]` for `Z`).
    pub fibers: Vec<Vec<BigInt>>,
    /// `η_n = c_n · g_n` with the generator `g_n` oriented so that `c_n >= 0`.
    pub unit_multiples: Vec<BigInt>,
    /// `transitions[m][n]`: the scalar of `h_m: fiber n -> fiber n+m` between
    /// oriented generators; `None` when either fiber is not `Z` or `n+m` exceeds the bound.
    pub transitions: Vec<Vec<Option<BigInt>>>,
}

impl NatOmega {
    /// Fiber 0 is zero; fibers `1..=bound` are `Z` with `η_n = n·g_n` and all
    /// transitions between positive fibers the identity.
    pub fn matches_expected(&self) -> bool {
        let z = vec![BigInt::zero()];
        self.fibers[0].is_empty()
            && self.fibers[1..].iter().all(|f| *f == z)
            && self
                .unit_multiples
                .iter()
                .enumerate()
                .all(|(n, c)| *c == BigInt::from(n))
            && (0..=self.bound).all(|m| {
                (1..=self.bound - m).all(|n| self.transitions[m][n] == Some(BigInt::one()))
            })
    }

    /// Agreement with `other` on fibers `0..=min(bounds)`.
    pub fn agrees_with(&self, other: &NatOmega) -> bool {
        let b = self.bound.min(other.bound);
        (0..=b).all(|n| {
            self.fibers[n] == other.fibers[n] && self.unit_multiples[n] == other.unit_multiples[n]
        }) && (0..=b).all(|m| (0..=b - m).all(|n| self.transitions[m][n] == other.transitions[m][n]))
    }
}

/// Commutative monoids (finite, or truncations of `N`).
#[derive(Clone, Copy, Debug, Default)]
pub struct MonoidContext;

impl MonoidContext {
    pub fn hom_group(&self, m: &MonBeckModule, n: &MonBeckModule) -> Result<MonHomGroup> {
        MonHomGroup::new(m, n)
    }

    /// Whether `s` satisfies `s_{x*y} = h_x(s_y) + h_y(s_x)` for every defined product.
    pub fn is_derivation(&self, a: &MonBeckModule, s: &Section) -> Result<bool> {
        let b = a.base();
        if s.len() != b.len() {
            return Err(Error::MalformedDerivation(format!(
                "{} values for {} elements",
                s.len(),
                b.len()
            )));
        }
        for (x, v) in s.iter().enumerate() {
            a.fiber(x)
                .validate_element(v)
                .map_err(|e| Error::MalformedDerivation(e.to_string()))?;
        }
        Ok(b.products().all(|(x, y, xy)| {
            let rhs: Vec<BigInt> = a
                .h(x, y)
                .apply(&s[y])
                .iter()
                .zip(a.h(y, x).apply(&s[x]))
                .map(|(p, q)| p + q)
                .collect();
            a.fiber(xy).elements_equal(&s[xy], &rhs)
        }))
    }

    /// `Ω` of `N` truncated at `bound`, read off in canonical coordinates.
    pub fn omega_nat_truncated(&self, bound: usize) -> Result<NatOmega> {
        if bound == 0 {
            return Err(Error::InvalidObject("the truncation bound must be at least 1".into()));
        }
        let x = FinCommMonoid::nat(bound);
        let data = self.omega(&x)?;
        let om = &data.omega;
        let n = bound + 1;
        let mut fibers = Vec::with_capacity(n);
        let mut unit_multiples = Vec::with_capacity(n);
        let mut orientation = Vec::with_capacity(n);
        for k in 0..n {
            let g = om.fiber(k);
            fibers.push(g.invariant_factors().to_vec());
            let c = g.canonical_coords(&data.unit[k]);
            let (mult, sign) = match c.as_slice() {
                [] => (BigInt::zero(), BigInt::one()),
                [v] if g.invariant_factors()[0].is_zero() => {
                    let sign = if v.is_negative() { -BigInt::one() } else { BigInt::one() };
                    (v.abs(), sign)
                }
                _ => (BigInt::zero(), BigInt::zero()),
            };
            unit_multiples.push(mult);
            orientation.push(sign);
        }
        let is_z = |k: usize| fibers[k] == vec![BigInt::zero()];
        let transitions = (0..n)
            .map(|m| {
                (0..n)
                    .map(|k| {
                        if k + m >= n || !is_z(k) || !is_z(k + m) {
                            return None;
                        }
                        let src = om.fiber(k);
                        let tgt = om.fiber(k + m);
                        let image = om.h(m, k).apply(&src.from_canonical(&[BigInt::one()]));
                        let t = &tgt.canonical_coords(&image)[0];
                        Some(t * &orientation[k] * &orientation[k + m])
                    })
                    .collect()
            })
            .collect();
        Ok(NatOmega {
            bound,
            fibers,
            unit_multiples,
            transitions,
        })
    }

    /// Fiberwise cokernel of a module homomorphism, with induced transitions.
    pub fn cokernel(&self, h: &MonBeckHom) -> Result<(MonBeckModule, MonBeckHom)> {
        let t = h.target();
        let b = t.base();
        let fibers: Vec<FGAbGroup> = h.components().iter().map(|c| c.cokernel().0).collect();
        let transitions = (0..b.len())
            .map(|x| {
                (0..b.len())
                    .map(|y| {
                        let xy = b.mul(x, y)?;
                        Some(AbHom::new(
                            fibers[y].clone(),
                            fibers[xy].clone(),
                            t.h(x, y).matrix().clone(),
                        ))
                    })
                    .map(|o| o.transpose())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let c = MonBeckModule::from_parts(b.clone(), fibers, transitions);
        let proj = (0..b.len())
            .map(|z| AbHom::new(t.fiber(z).clone(), c.fiber(z).clone(), IntMatrix::identity(t.fiber(z).ngens())))
            .collect::<Result<Vec<_>>>()?;
        let proj = MonBeckHom::from_parts(t.clone(), c.clone(), proj)?;
        Ok((c, proj))
    }

    fn check_base(&self, m: &MonBeckModule, x: &FinCommMonoid) -> Result<()> {
        if m.base() != x {
            return Err(Error::InvalidModule("module lives over a different monoid".into()));
        }
        Ok(())
    }
}

impl BeckContext for MonoidContext {
    type Object = FinCommMonoid;
    type Morphism = MonoidHom;
    type Module = MonBeckModule;
    type Hom = MonBeckHom;
    type Derivation = Section;
    type Derivations = MonDerivations;

    fn morphism_source(&self, f: &MonoidHom) -> FinCommMonoid {
        f.source().clone()
    }

    fn morphism_target(&self, f: &MonoidHom) -> FinCommMonoid {
        f.target().clone()
    }

    fn identity(&self, x: &FinCommMonoid) -> MonoidHom {
        MonoidHom::identity(x)
    }

    fn omega(&self, x: &FinCommMonoid) -> Result<CotangentData<MonBeckModule, Section>> {
        let p = omega_presentation(x);
        let fibers = p.fibers();
        let transitions = p.transitions(x, &fibers, |v, &(w, a)| {
            (x.mul(v, w).expect("defined on a defined fiber"), a)
        });
        let unit = (0..x.len())
            .map(|z| {
                let mut e = vec![BigInt::zero(); fibers[z].ngens()];
                e[p.at(z, &(x.unit(), z))] = BigInt::one();
                e
            })
            .collect();
        Ok(CotangentData {
            omega: MonBeckModule::from_parts(x.clone(), fibers, transitions),
            unit,
        })
    }

    fn derivations(&self, x: &FinCommMonoid, a: &MonBeckModule) -> Result<MonDerivations> {
        self.check_base(a, x)?;
        let parts: Vec<&FGAbGroup> = a.fibers().iter().collect();
        let sum = DirectSum::new(&parts);
        let mut targets = Vec::new();
        let mut blocks: Vec<IntMatrix> = Vec::new();
        for (p, q, pq) in x.products().filter(|&(p, q, _)| p <= q) {
            // s ↦ s_{pq} - h_p(s_q) - h_q(s_p)
            let rows = a.fiber(pq).ngens();
            let mut m = IntMatrix::zeros(rows, sum.group.ngens());
            let mut add = |src: usize, mat: &IntMatrix, sign: i64| {
                let r = sum.range(src);
                for i in 0..rows {
                    for (jj, j) in r.clone().enumerate() {
                        m[(i, j)] += &mat[(i, jj)] * sign;
                    }
                }
            };
            add(pq, &IntMatrix::identity(rows), 1);
            add(q, a.h(p, q).matrix(), -1);
            add(p, a.h(q, p).matrix(), -1);
            blocks.push(m);
            targets.push(a.fiber(pq).clone());
        }
        let target_refs: Vec<&FGAbGroup> = targets.iter().collect();
        let target = DirectSum::new(&target_refs).group;
        let mut stacked = IntMatrix::zeros(target.ngens(), sum.group.ngens());
        let mut r0 = 0;
        for b in &blocks {
            stacked.set_block(r0, 0, b);
            r0 += b.rows();
        }
        let leibniz = AbHom::new(sum.group.clone(), target, stacked)?;
        let (group, incl) = leibniz.kernel();
        Ok(MonDerivations { group, incl, sum })
    }

    fn zero_test_derivation(&self, x: &FinCommMonoid, b: &MonBeckModule, theta: &Section) -> Result<bool> {
        self.check_base(b, x)?;
        if !self.is_derivation(b, theta)? {
            return Err(Error::MalformedDerivation("the Leibniz rule fails".into()));
        }
        Ok(b.fibers().iter().zip(theta).all(|(g, v)| g.is_zero_element(v)))
    }

    /// Fiber `x` is `B_{f(x)}`, with `h^A_x = h^B_{f(x)}`.
    fn pullback(&self, f: &MonoidHom, b: &MonBeckModule) -> Result<MonBeckModule> {
        self.check_base(b, f.target())?;
        let x = f.source();
        let fibers: Vec<FGAbGroup> = (0..x.len()).map(|a| b.fiber(f.apply(a)).clone()).collect();
        let transitions = (0..x.len())
            .map(|p| {
                (0..x.len())
                    .map(|q| x.mul(p, q).map(|_| b.h(f.apply(p), f.apply(q)).clone()))
                    .collect()
            })
            .collect();
        Ok(MonBeckModule::from_parts(x.clone(), fibers, transitions))
    }

    /// Left Kan extension: fiber `y` is generated by `(w, x, a)` with
    /// `w * f(x) = y` and `a` a generator of `A_x`, modulo the relations of
    /// `A_x` and `(w*f(u), x, a) = (w, u*x, h_u(a))`.
    fn pushforward(&self, f: &MonoidHom, a: &MonBeckModule) -> Result<MonBeckModule> {
        self.check_base(a, f.source())?;
        let (xs, ys) = (f.source(), f.target());
        let keys: Vec<Vec<(usize, usize, usize)>> = (0..ys.len())
            .map(|y| {
                let mut k = Vec::new();
                for w in 0..ys.len() {
                    for x in 0..xs.len() {
                        if ys.mul(w, f.apply(x)) == Some(y) {
                            k.extend((0..a.fiber(x).ngens()).map(|g| (w, x, g)));
                        }
                    }
                }
                k
            })
            .collect();
        let mut p = Presentation::new(keys);
        for w in 0..ys.len() {
            for x in 0..xs.len() {
                let Some(y) = ys.mul(w, f.apply(x)) else { continue };
                for rel in a.fiber(x).relations().columns() {
                    let terms: Vec<_> = rel
                        .into_iter()
                        .enumerate()
                        .map(|(g, c)| ((w, x, g), c))
                        .collect();
                    p.relate(y, &terms);
                }
                for u in 0..xs.len() {
                    let Some(ux) = xs.mul(u, x) else { continue };
                    let Some(wfu) = ys.mul(w, f.apply(u)) else { continue };
                    let Some(y2) = ys.mul(wfu, f.apply(x)) else { continue };
                    debug_assert_eq!(ys.mul(w, f.apply(ux)), Some(y2));
                    let hu = a.h(u, x).matrix();
                    for g in 0..a.fiber(x).ngens() {
                        let mut terms = vec![((wfu, x, g), BigInt::one())];
                        for b in 0..a.fiber(ux).ngens() {
                            if !hu[(b, g)].is_zero() {
                                terms.push(((w, ux, b), -hu[(b, g)].clone()));
                            }
                        }
                        p.relate(y2, &terms);
                    }
                }
            }
        }
        let fibers = p.fibers();
        let transitions = p.transitions(ys, &fibers, |v, &(w, x, g)| {
            (ys.mul(v, w).expect("defined on a defined fiber"), x, g)
        });
        Ok(MonBeckModule::from_parts(ys.clone(), fibers, transitions))
    }

    /// `(w, x, (v, d_u)) ↦ (w*f(v), d_{f(u)})`.
    fn delta_tilde(&self, f: &MonoidHom) -> Result<MonBeckHom> {
        let (xs, ys) = (f.source(), f.target());
        let om_x = omega_presentation(xs);
        let om_y = omega_presentation(ys);
        let source = self.pushforward(f, &self.omega(xs)?.omega)?;
        let target = self.omega(ys)?.omega;
        let mut components = Vec::with_capacity(ys.len());
        for y in 0..ys.len() {
            let mut m = IntMatrix::zeros(target.fiber(y).ngens(), source.fiber(y).ngens());
            let mut col = 0;
            for w in 0..ys.len() {
                for x in 0..xs.len() {
                    if ys.mul(w, f.apply(x)) != Some(y) {
                        continue;
                    }
                    for &(v, u) in &om_x.keys[x] {
                        let wfv = ys.mul(w, f.apply(v)).expect("factor of a defined product");
                        m[(om_y.at(y, &(wfv, f.apply(u))), col)] += 1;
                        col += 1;
                    }
                }
            }
            debug_assert_eq!(col, source.fiber(y).ngens());
            components.push(AbHom::new(source.fiber(y).clone(), target.fiber(y).clone(), m)?);
        }
        MonBeckHom::from_parts(source, target, components)
    }

    /// `Ω_Y` modulo the Beck submodule generated by `η_Y(f(x))`, i.e. with
    /// every generator `(w, d_{f(x)})` killed.
    fn omega_rel(&self, f: &MonoidHom) -> Result<CotangentData<MonBeckModule, Section>> {
        let ys = f.target();
        let mut p = omega_presentation(ys);
        let image: Vec<usize> = f.images().to_vec();
        for y in 0..ys.len() {
            let killed: Vec<(usize, usize)> = p.keys[y]
                .iter()
                .filter(|(_, u)| image.contains(u))
                .cloned()
                .collect();
            for k in killed {
                p.relate(y, &[(k, BigInt::one())]);
            }
        }
        let fibers = p.fibers();
        let transitions = p.transitions(ys, &fibers, |v, &(w, a)| {
            (ys.mul(v, w).expect("defined on a defined fiber"), a)
        });
        let unit = (0..ys.len())
            .map(|z| {
                let mut e = vec![BigInt::zero(); fibers[z].ngens()];
                e[p.at(z, &(ys.unit(), z))] = BigInt::one();
                e
            })
            .collect();
        Ok(CotangentData {
            omega: MonBeckModule::from_parts(ys.clone(), fibers, transitions),
            unit,
        })
    }

    fn gamma(&self, f: &MonoidHom) -> Result<MonBeckHom> {
        let source = self.omega(f.target())?.omega;
        let target = self.omega_rel(f)?.omega;
        let components = (0..source.fibers().len())
            .map(|z| {
                AbHom::new(
                    source.fiber(z).clone(),
                    target.fiber(z).clone(),
                    IntMatrix::identity(source.fiber(z).ngens()),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        MonBeckHom::from_parts(source, target, components)
    }

    fn compose_homs(&self, second: &MonBeckHom, first: &MonBeckHom) -> Result<MonBeckHom> {
        second.compose(first)
    }

    fn is_identity_hom(&self, h: &MonBeckHom) -> Result<bool> {
        Ok(h.is_identity())
    }

    fn is_epi_hom(&self, h: &MonBeckHom) -> Result<bool> {
        Ok(h.is_epi())
    }

    fn is_mono_hom(&self, h: &MonBeckHom) -> Result<bool> {
        Ok(h.is_mono())
    }

    fn check_right_exact(&self, r: &MonBeckHom, s: &MonBeckHom) -> Result<SequenceVerdict> {
        if r.target() != s.source() {
            return Err(Error::ShapeMismatch("sequence maps are not composable".into()));
        }
        let b = s.source().base();
        for (y, (a, c)) in r.components().iter().zip(s.components()).enumerate() {
            let v = crate::abgrp::check_right_exact(a, c)?;
            if !v.exact {
                return Ok(v.in_fiber(b.label(y)));
            }
        }
        Ok(SequenceVerdict::exact())
    }

    /// Only surjective homomorphisms are accepted.
    fn is_epimorphism(&self, f: &MonoidHom) -> Result<bool> {
        Ok(f.is_surjective())
    }

    /// The product monoid `z x x` with `g(c) = (c, 1)` and `f(a) = (1, a)`.
    fn coproduct(&self, z: &FinCommMonoid, x: &FinCommMonoid) -> Result<Coproduct<FinCommMonoid, MonoidHom>> {
        let y = FinCommMonoid::product(z, x)?;
        let nx = x.len();
        let first = MonoidHom::new(z.clone(), y.clone(), (0..z.len()).map(|c| c * nx + x.unit()).collect())
            .map_err(|e| Error::CoproductFailure(e.to_string()))?;
        let second = MonoidHom::new(x.clone(), y.clone(), (0..nx).map(|a| z.unit() * nx + a).collect())
            .map_err(|e| Error::CoproductFailure(e.to_string()))?;
        Ok(Coproduct {
            object: y,
            first,
            second,
        })
    }

    fn comparison_inverse(
        &self,
        _coproduct: &Coproduct<FinCommMonoid, MonoidHom>,
        forward: &MonBeckHom,
    ) -> Result<MonBeckHom> {
        forward
            .inverse()
            .ok_or_else(|| Error::CoproductFailure("comparison map is not invertible".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beck::{check_theorem1, check_theorem3};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn omega_small_monoids() {
        let ctx = MonoidContext;
        let t = ctx.omega(&FinCommMonoid::trivial()).unwrap().omega;
        assert!(t.is_zero());
        let e = ctx.omega(&FinCommMonoid::idempotent()).unwrap().omega;
        assert!(e.is_zero());
        let z2 = ctx.omega(&FinCommMonoid::cyclic_group(2)).unwrap().omega;
        assert_eq!(z2.describe(), "fiber 1: Z/2, fiber g: Z/2");
        z2.validate().unwrap();
    }

    #[test]
    fn omega_unit_is_derivation() {
        let ctx = MonoidContext;
        for (_, m) in super::super::base::catalog() {
            let d = ctx.omega(&m).unwrap();
            d.omega.validate().unwrap();
            assert!(ctx.is_derivation(&d.omega, &d.unit).unwrap());
        }
    }

    #[test]
    fn nat_truncation() {
        let ctx = MonoidContext;
        let a = ctx.omega_nat_truncated(8).unwrap();
        assert!(a.matches_expected(), "{a:?}");
        let b = ctx.omega_nat_truncated(9).unwrap();
        assert!(a.agrees_with(&b));
        assert!(ctx.omega_nat_truncated(1).unwrap().matches_expected());
    }

    #[test]
    fn nat_derivations_are_first_fiber() {
        // A_n = Z, h = x2 on every fiber: s_n = n 2^{n-1} s_1
        let ctx = MonoidContext;
        let x = FinCommMonoid::nat(5);
        let n = x.len();
        let matrices = (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| x.mul(p, q).map(|_| IntMatrix::from_i64(1, 1, &[1 << p])))
                    .collect()
            })
            .collect();
        let a = MonBeckModule::new(x.clone(), vec![FGAbGroup::free(1); n], matrices).unwrap();
        let der = ctx.derivations(&x, &a).unwrap();
        assert_eq!(der.group.invariant_factors(), ints(&[0]).as_slice());
        let s = der.decode(&der.group.generator(0));
        let s1 = s[1][0].clone();
        for (k, v) in s.iter().enumerate() {
            let expected = if k == 0 { BigInt::zero() } else { &s1 * BigInt::from(k as i64 * (1 << (k - 1))) };
            assert_eq!(v[0], expected);
        }
    }

    #[test]
    fn idempotent_kills_derivations() {
        let ctx = MonoidContext;
        let x = FinCommMonoid::idempotent();
        let a = MonBeckModule::constant(&x, &FGAbGroup::cyclic(3), &[IntMatrix::identity(1), IntMatrix::identity(1)]).unwrap();
        assert!(ctx.derivations(&x, &a).unwrap().group.is_trivial());
    }

    #[test]
    fn pullback_of_collapse() {
        let ctx = MonoidContext;
        let z2 = FinCommMonoid::cyclic_group(2);
        let t = FinCommMonoid::trivial();
        let f = MonoidHom::new(z2.clone(), t.clone(), vec![0, 0]).unwrap();
        let b = MonBeckModule::constant(&t, &FGAbGroup::free(1), &[IntMatrix::identity(1)]).unwrap();
        let p = ctx.pullback(&f, &b).unwrap();
        p.validate().unwrap();
        assert_eq!(p.describe(), "fiber 1: Z, fiber g: Z");
        assert!(p.h(1, 0).is_identity());
    }

    #[test]
    fn theorems_on_small_cases() {
        let ctx = MonoidContext;
        let z2 = FinCommMonoid::cyclic_group(2);
        let e = FinCommMonoid::idempotent();
        for f in MonoidHom::all(&z2, &FinCommMonoid::klein()) {
            assert!(check_theorem1(&ctx, &f).unwrap().exact);
        }
        let v = check_theorem3(&ctx, &z2, &e).unwrap();
        assert!(v.iso, "{v:?}");
    }
}
