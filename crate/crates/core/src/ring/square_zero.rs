//! Modules as abelian group objects over an algebra, and back.
//!
//! `A ⊕ M` is presented as `A[e_1..e_r] / (e_j e_k, relations of M)`. From
//! any `B` with `u: B -> A` and a section `e`, the candidate law on
//! `B ×_A B` is `m(b1, b2) = b1 + b2 - e(u(b1))`; its axioms are verified on
//! algebra generators of the fiber product.

use super::algebra::{AlgebraHom, FPAlgebra};
use super::groebner::ModVec;
use super::module::{FPModule, ModuleHom};
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// `A ⊕ M` with `(a, m)·(a', m') = (aa', am' + a'm)`.
#[derive(Clone, Debug)]
pub struct SquareZeroExtension {
    module: FPModule,
    total: FPAlgebra,
    projection: AlgebraHom,
    section: AlgebraHom,
}

fn fresh_names(taken: &[String], wanted: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for w in wanted {
        let mut name = w.clone();
        while taken.contains(&name) || out.contains(&name) {
            name.push('_');
        }
        out.push(name);
    }
    out
}

impl SquareZeroExtension {
    pub fn new(module: &FPModule) -> Result<Self> {
        let a = module.algebra();
        let field = a.field();
        let (n, r) = (a.nvars(), module.rank());
        let total_vars = n + r;
        let x_map: Vec<usize> = (0..n).collect();
        let lift = |p: &Polynomial| p.reindex(total_vars, &x_map);
        let e = |j: usize| Polynomial::var(field, total_vars, n + j);
        let mut vars = a.vars().to_vec();
        vars.extend(fresh_names(a.vars(), module.gens()));
        let mut rels: Vec<Polynomial> = a.relators().iter().map(lift).collect();
        for j in 0..r {
            for k in j..r {
                rels.push(e(j).mul(&e(k)));
            }
        }
        for rel in module.relations() {
            let mut p = Polynomial::zero(field, total_vars);
            for (j, c) in rel.iter().enumerate() {
                p = p.add(&lift(c).mul(&e(j)));
            }
            rels.push(p);
        }
        let total = FPAlgebra::with_options(
            field.clone(),
            vars,
            rels,
            a.order(),
            a.guard().widened(r),
        )?;
        let mut down: Vec<Polynomial> = (0..n).map(|i| a.var(i)).collect();
        down.extend((0..r).map(|_| a.zero()));
        let projection = AlgebraHom::new(total.clone(), a.clone(), down)?;
        let up = (0..n).map(|i| total.var(i)).collect();
        let section = AlgebraHom::new(a.clone(), total.clone(), up)?;
        Ok(SquareZeroExtension {
            module: module.clone(),
            total,
            projection,
            section,
        })
    }

    pub fn base(&self) -> &FPAlgebra {
        self.module.algebra()
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn total(&self) -> &FPAlgebra {
        &self.total
    }

    /// `u: A ⊕ M -> A`
    pub fn projection(&self) -> &AlgebraHom {
        &self.projection
    }

    /// `e: A -> A ⊕ M`
    pub fn section(&self) -> &AlgebraHom {
        &self.section
    }

    /// The element `(a, m)`.
    pub fn element(&self, a: &Polynomial, m: &[Polynomial]) -> Polynomial {
        let n = self.base().nvars();
        let total_vars = self.total.nvars();
        let x_map: Vec<usize> = (0..n).collect();
        let mut p = a.reindex(total_vars, &x_map);
        for (j, c) in m.iter().enumerate() {
            let e = Polynomial::var(self.total.field(), total_vars, n + j);
            p = p.add(&c.reindex(total_vars, &x_map).mul(&e));
        }
        self.total.normal_form(&p)
    }

    /// The components `(a, m)` of an element, both in normal form.
    pub fn components(&self, b: &Polynomial) -> (Polynomial, ModVec) {
        let a = self.base();
        let n = a.nvars();
        let nf = self.total.normal_form(b);
        let mut base = a.zero();
        let mut m = self.module.zero_vec();
        for (mono, c) in nf.terms() {
            let (xs, es) = mono.split_at(n);
            let deg: u32 = es.iter().sum();
            match deg {
                0 => base.add_term(xs.to_vec(), c.clone()),
                1 => {
                    let j = es.iter().position(|&e| e == 1).expect("degree one");
                    m[j].add_term(xs.to_vec(), c.clone());
                }
                _ => unreachable!("products of module generators reduce to zero"),
            }
        }
        (a.normal_form(&base), self.module.normal_form(&m))
    }

    /// The product on pairs, computed componentwise.
    pub fn mul_pairs(&self, p: (&Polynomial, &[Polynomial]), q: (&Polynomial, &[Polynomial])) -> (Polynomial, ModVec) {
        let a = self.base();
        let base = a.mul(p.0, q.0);
        let m = self.module.add(&self.module.scale(p.0, q.1), &self.module.scale(q.0, p.1));
        (base, m)
    }

    /// The law recovered from `(A ⊕ M, u, e)`.
    pub fn group_law(&self) -> Result<GroupLaw> {
        reconstruct_group_law(&self.total, &self.projection, &self.section)
    }

    /// `m((a, m1), (a, m2)) = (a, m1 + m2)` for `a` a variable, `0` or `1`
    /// and `m1, m2` generators or `0`. Returns the first failing triple.
    pub fn check_addition(&self, law: &GroupLaw) -> Result<Option<String>> {
        let a = self.base();
        let mut bases = vec![a.zero(), a.one()];
        bases.extend((0..a.nvars()).map(|i| a.var(i)));
        let mut vecs = vec![self.module.zero_vec()];
        vecs.extend((0..self.module.rank()).map(|j| self.module.basis_vec(j)));
        for base in &bases {
            for m1 in &vecs {
                for m2 in &vecs {
                    let b1 = self.element(base, m1);
                    let b2 = self.element(base, m2);
                    let (a_out, m_out) = self.components(&law.apply(&b1, &b2)?);
                    let expected = self.module.add(m1, m2);
                    if a_out != a.normal_form(base) || m_out != expected {
                        return Ok(Some(format!(
                            "m({}, {})",
                            self.total.format(&b1),
                            self.total.format(&b2)
                        )));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// `m(b1, b2) = b1 + b2 - e(u(b1))` on `B ×_A B`, with its axioms verified.
#[derive(Clone, Debug)]
pub struct GroupLaw {
    total: FPAlgebra,
    projection: AlgebraHom,
    section: AlgebraHom,
    kernel_gens: Vec<Polynomial>,
}

fn violation(axiom: &str, witness: String) -> Error {
    Error::AxiomViolation {
        axiom: axiom.into(),
        witness,
    }
}

/// Builds the law for `u: B -> A` with section `e: A -> B` and checks the
/// abelian group object axioms on generators.
///
/// The fiber product is generated as an algebra by the diagonal pairs
/// `(v, v)` for the variables `v` of `B` and the pairs `(k, 0)` for the
/// ideal generators `k = v - e(u(v))` of `ker u`. Since `m` is linear, it is
/// multiplicative exactly when `(ker u)^2 = 0`, which products of these
/// generators detect.
pub fn reconstruct_group_law(b: &FPAlgebra, u: &AlgebraHom, e: &AlgebraHom) -> Result<GroupLaw> {
    if u.source() != b || e.target() != b || u.target() != e.source() {
        return Err(Error::ShapeMismatch("expected u: B -> A and e: A -> B".into()));
    }
    if !u.compose(e)?.is_identity() {
        return Err(violation("u ∘ e = id", "the section is not split by u".into()));
    }
    let eu = |p: &Polynomial| e.apply(&u.apply(p));
    let kernel_gens: Vec<Polynomial> = (0..b.nvars())
        .map(|i| b.normal_form(&b.var(i).sub(&eu(&b.var(i)))))
        .filter(|k| !k.is_zero())
        .collect();
    let law = GroupLaw {
        total: b.clone(),
        projection: u.clone(),
        section: e.clone(),
        kernel_gens,
    };
    law.verify()?;
    Ok(law)
}

impl GroupLaw {
    fn raw(&self, b1: &Polynomial, b2: &Polynomial) -> Polynomial {
        let eu = self.section.apply(&self.projection.apply(b1));
        self.total.normal_form(&b1.add(b2).sub(&eu))
    }

    /// `m(b1, b2)`; requires `u(b1) = u(b2)`.
    pub fn apply(&self, b1: &Polynomial, b2: &Polynomial) -> Result<Polynomial> {
        if self.projection.apply(b1) != self.projection.apply(b2) {
            return Err(Error::ShapeMismatch(
                "the two elements lie over different points".into(),
            ));
        }
        Ok(self.raw(b1, b2))
    }

    /// `i(b) = 2 e(u(b)) - b`
    pub fn inverse(&self, b: &Polynomial) -> Polynomial {
        let eu = self.section.apply(&self.projection.apply(b));
        self.total.normal_form(&eu.add(&eu).sub(b))
    }

    pub fn kernel_generators(&self) -> &[Polynomial] {
        &self.kernel_gens
    }

    fn pair_generators(&self) -> Vec<(Polynomial, Polynomial)> {
        let b = &self.total;
        let mut g: Vec<(Polynomial, Polynomial)> =
            (0..b.nvars()).map(|i| (b.var(i), b.var(i))).collect();
        for k in &self.kernel_gens {
            g.push((k.clone(), b.zero()));
            g.push((b.zero(), k.clone()));
        }
        g
    }

    fn verify(&self) -> Result<()> {
        let b = &self.total;
        let show = |p: &Polynomial| b.format(p);
        let pair = |g: &(Polynomial, Polynomial)| format!("({}, {})", show(&g.0), show(&g.1));
        let gens = self.pair_generators();
        let one = (b.one(), b.one());
        if self.raw(&one.0, &one.1) != b.one() {
            return Err(violation("m(1, 1) = 1", pair(&one)));
        }
        for g in &gens {
            let (b1, b2) = g;
            let eu1 = self.section.apply(&self.projection.apply(b1));
            let eu2 = self.section.apply(&self.projection.apply(b2));
            if self.raw(b1, &eu1) != b.normal_form(b1) || self.raw(&eu2, b2) != b.normal_form(b2) {
                return Err(violation("unit", pair(g)));
            }
            if self.raw(b1, b2) != self.raw(b2, b1) {
                return Err(violation("commutativity", pair(g)));
            }
            if self.raw(b1, &self.inverse(b1)) != eu1 {
                return Err(violation("inverse", pair(g)));
            }
            for h in &gens {
                let prod = (b.mul(&g.0, &h.0), b.mul(&g.1, &h.1));
                if self.raw(&prod.0, &prod.1) != b.mul(&self.raw(&g.0, &g.1), &self.raw(&h.0, &h.1)) {
                    return Err(violation("multiplicativity", format!("{} * {}", pair(g), pair(h))));
                }
                for c in [&g.0, &g.1, &h.0, &h.1] {
                    if self.projection.apply(c) != self.projection.apply(&g.0) {
                        continue;
                    }
                    let left = self.raw(&self.raw(&g.0, &g.1), c);
                    let right = self.raw(&g.0, &self.raw(&g.1, c));
                    if left != right {
                        return Err(violation("associativity", pair(g)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `ker u` as an `A`-module: generated by the kernel generators, with the
    /// `B`-syzygies among them pushed down along `u`.
    pub fn kernel_module(&self) -> Result<FPModule> {
        let b = &self.total;
        let a = self.projection.target();
        let m = self.kernel_gens.len();
        let free = FPModule::free_rank(b, m)?;
        let line = FPModule::free_rank(b, 1)?;
        let images = self.kernel_gens.iter().map(|k| vec![k.clone()]).collect();
        let syz = ModuleHom::new(free, line, images)?.kernel_generators()?;
        let rels = syz
            .iter()
            .map(|v| v.iter().map(|p| self.projection.apply(p)).collect())
            .collect();
        let names = (0..b.nvars())
            .filter(|&i| {
                let v = b.var(i);
                !b.normal_form(&v.sub(&self.section.apply(&self.projection.apply(&v)))).is_zero()
            })
            .map(|i| b.vars()[i].clone())
            .collect();
        FPModule::new(a.clone(), names, rels)
    }
}

/// `M ↦ (A ⊕ M -> A)`
pub fn module_to_beck(m: &FPModule) -> Result<SquareZeroExtension> {
    SquareZeroExtension::new(m)
}

/// `(B -> A, e) ↦ ker u`
pub fn beck_to_module(b: &FPAlgebra, u: &AlgebraHom, e: &AlgebraHom) -> Result<FPModule> {
    reconstruct_group_law(b, u, e)?.kernel_module()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::algebra::catalog;
    use crate::ring::context::kaehler;
    use crate::ring::poly::Field;

    #[test]
    fn square_zero_multiplication() {
        let a = catalog::line();
        let m = FPModule::free_rank(&a, 1).unwrap();
        let s = SquareZeroExtension::new(&m).unwrap();
        let e1 = s.element(&a.zero(), &m.basis_vec(0));
        assert!(s.total().mul(&e1, &e1).is_zero());
        let x = a.var(0);
        let p = s.element(&x, &m.basis_vec(0));
        let (base, mv) = s.components(&s.total().mul(&p, &p));
        let (b2, m2) = s.mul_pairs((&x, &m.basis_vec(0)), (&x, &m.basis_vec(0)));
        assert_eq!((base.clone(), mv.clone()), (b2, m2));
        assert_eq!(a.format(&base), "x^2");
        assert_eq!(m.format_vec(&mv), "2x*e1");
    }

    #[test]
    fn law_is_addition() {
        for m in [
            FPModule::free_rank(&catalog::line(), 2).unwrap(),
            kaehler(&catalog::cusp()).unwrap(),
            kaehler(&catalog::dual_numbers()).unwrap(),
        ] {
            let s = SquareZeroExtension::new(&m).unwrap();
            let law = s.group_law().unwrap();
            assert_eq!(s.check_addition(&law).unwrap(), None, "{m:?}");
        }
    }

    #[test]
    fn zero_object() {
        let a = catalog::cusp();
        let id = AlgebraHom::identity(&a);
        let law = reconstruct_group_law(&a, &id, &id).unwrap();
        let y = a.var(1);
        assert_eq!(law.apply(&y, &y).unwrap(), y);
        assert_eq!(law.kernel_module().unwrap().rank(), 0);
    }

    #[test]
    fn round_trip() {
        let a = catalog::cusp();
        let m = kaehler(&a).unwrap();
        let s = module_to_beck(&m).unwrap();
        let back = beck_to_module(s.total(), s.projection(), s.section()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.gens(), m.gens());
    }

    #[test]
    fn cube_zero_is_not_a_group_object() {
        let a = catalog::line();
        let b = FPAlgebra::from_strs(Field::Rational, &["x", "eps"], &["eps^3"]).unwrap();
        let u = AlgebraHom::from_strs(&b, &a, &["x", "0"]).unwrap();
        let e = AlgebraHom::from_strs(&a, &b, &["x"]).unwrap();
        match reconstruct_group_law(&b, &u, &e) {
            Err(Error::AxiomViolation { axiom, witness }) => {
                assert_eq!(axiom, "multiplicativity");
                assert!(witness.contains("eps"), "{witness}");
            }
            other => panic!("{other:?}"),
        }
    }
}
