//! Finitely presented modules `A^r / R` over a finitely presented algebra,
//! decided through module Gröbner bases in `k[x]^r` that include `I·e_i`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::algebra::{AlgebraHom, FPAlgebra};
use super::groebner::{GroebnerBasis, ModVec};
use super::poly::{Monomial, Polynomial};
use crate::beck::{FailedAt, SequenceVerdict, Witness};
use crate::error::{Error, Result};

/// `A^rank` modulo the submodule generated by `relations`.
#[derive(Clone)]
pub struct FPModule {
    algebra: FPAlgebra,
    gens: Vec<String>,
    relations: Vec<ModVec>,
    gb: GroebnerBasis,
}

impl PartialEq for FPModule {
    /// Same algebra, rank and relation submodule; generator names are labels.
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra
            && self.rank() == other.rank()
            && self.gb.elements() == other.gb.elements()
    }
}

impl Eq for FPModule {}

impl fmt::Debug for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.describe(), self.algebra)
    }
}

fn submodule_basis(algebra: &FPAlgebra, rank: usize, vecs: &[ModVec]) -> Result<GroebnerBasis> {
    let mut gens: Vec<ModVec> = vecs.to_vec();
    let zero = algebra.zero();
    for g in algebra.groebner() {
        for i in 0..rank {
            let mut v = vec![zero.clone(); rank];
            v[i] = g.clone();
            gens.push(v);
        }
    }
    GroebnerBasis::compute(
        algebra.field(),
        algebra.nvars(),
        rank,
        &gens,
        algebra.order(),
        algebra.guard(),
    )
}

impl FPModule {
    pub fn new(algebra: FPAlgebra, gens: Vec<String>, relations: Vec<ModVec>) -> Result<Self> {
        let rank = gens.len();
        for rel in &relations {
            if rel.len() != rank
                || rel.iter().any(|p| p.nvars() != algebra.nvars() || p.field() != algebra.field())
            {
                return Err(Error::InvalidModule(
                    "relation does not live in the free module".into(),
                ));
            }
        }
        let relations: Vec<ModVec> = relations
            .iter()
            .map(|r| r.iter().map(|p| algebra.normal_form(p)).collect::<ModVec>())
            .filter(|r| r.iter().any(|p| !p.is_zero()))
            .collect();
        let gb = submodule_basis(&algebra, rank, &relations)?;
        Ok(FPModule {
            algebra,
            gens,
            relations,
            gb,
        })
    }

    pub fn free(algebra: &FPAlgebra, gens: Vec<String>) -> Result<Self> {
        Self::new(algebra.clone(), gens, Vec::new())
    }

    /// Generators named `e1, e2, ...`.
    pub fn free_rank(algebra: &FPAlgebra, rank: usize) -> Result<Self> {
        Self::free(algebra, (1..=rank).map(|i| format!("e{i}")).collect())
    }

    pub fn algebra(&self) -> &FPAlgebra {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn relations(&self) -> &[ModVec] {
        &self.relations
    }

    pub fn zero_vec(&self) -> ModVec {
        vec![self.algebra.zero(); self.rank()]
    }

    /// The `j`-th generator.
    pub fn basis_vec(&self, j: usize) -> ModVec {
        let mut v = self.zero_vec();
        v[j] = self.algebra.one();
        v
    }

    /// Canonical representative of the class of `v`.
    pub fn normal_form(&self, v: &[Polynomial]) -> ModVec {
        self.gb.reduce(v)
    }

    pub fn is_zero_element(&self, v: &[Polynomial]) -> bool {
        self.gb.contains(v)
    }

    pub fn add(&self, a: &[Polynomial], b: &[Polynomial]) -> ModVec {
        let s: ModVec = a.iter().zip(b).map(|(p, q)| p.add(q)).collect();
        self.normal_form(&s)
    }

    pub fn scale(&self, c: &Polynomial, v: &[Polynomial]) -> ModVec {
        let s: ModVec = v.iter().map(|p| c.mul(p)).collect();
        self.normal_form(&s)
    }

    /// The zero module.
    pub fn is_zero(&self) -> bool {
        (0..self.rank()).all(|j| self.is_zero_element(&self.basis_vec(j)))
    }

    /// A `k`-basis of standard terms `(generator, monomial)` when the module
    /// is finite dimensional over the field.
    pub fn k_basis(&self) -> Option<Vec<(usize, Monomial)>> {
        let mut out = Vec::new();
        for pos in 0..self.rank() {
            for m in self.gb.standard_monomials(pos)? {
                out.push((pos, m));
            }
        }
        Some(out)
    }

    pub fn dimension(&self) -> Option<usize> {
        self.k_basis().map(|b| b.len())
    }

    /// Coordinates of `v` in [`FPModule::k_basis`] (which must exist).
    pub fn coordinates(&self, basis: &[(usize, Monomial)], v: &[Polynomial]) -> Vec<BigRational> {
        let nf = self.normal_form(v);
        basis.iter().map(|(pos, m)| nf[*pos].coeff(m)).collect()
    }

    /// The element with the given coordinates in a `k`-basis.
    pub fn from_coordinates(&self, basis: &[(usize, Monomial)], c: &[BigRational]) -> ModVec {
        let mut v = self.zero_vec();
        for ((pos, m), c) in basis.iter().zip(c) {
            if !c.is_zero() {
                v[*pos].add_term(m.clone(), c.clone());
            }
        }
        v
    }

    /// `sum_i v_i * gen_i`, e.g. `-3x^2*dx + 2y*dy`.
    pub fn format_vec(&self, v: &[Polynomial]) -> String {
        let a = &self.algebra;
        let n = a.nvars();
        let total = n + self.rank();
        let field = a.field();
        let mut names: Vec<String> = a.vars().to_vec();
        names.extend(self.gens.iter().cloned());
        let map: Vec<usize> = (0..n).collect();
        let mut acc = Polynomial::zero(field, total);
        for (i, p) in v.iter().enumerate() {
            let g = Polynomial::var(field, total, n + i);
            acc = acc.add(&p.reindex(total, &map).mul(&g));
        }
        acc.format(&names, a.order())
    }

    /// `gens dx,dy; rel -3x^2*dx + 2y*dy`, or `0` for the zero presentation.
    pub fn describe(&self) -> String {
        if self.rank() == 0 {
            return "0".into();
        }
        let mut s = format!("gens {}", self.gens.join(","));
        for r in &self.relations {
            s.push_str("; rel ");
            s.push_str(&self.format_vec(r));
        }
        s
    }

    /// Removes generators that a relation solves for with a unit constant.
    /// Returns the smaller presentation and the image of each old generator.
    pub fn pruned(&self) -> Result<(FPModule, Vec<ModVec>)> {
        let a = &self.algebra;
        let field = a.field();
        let mut gens = self.gens.clone();
        let mut rels = self.relations.clone();
        let mut images: Vec<ModVec> = (0..self.rank()).map(|j| self.basis_vec(j)).collect();
        loop {
            let hit = rels.iter().enumerate().find_map(|(k, r)| {
                r.iter()
                    .enumerate()
                    .find_map(|(i, p)| p.as_constant().filter(|c| !c.is_zero()).map(|c| (k, i, c)))
            });
            let Some((k, i, c)) = hit else { break };
            let r = rels.remove(k);
            let cinv = field.inv(&c);
            // v <- v - (v_i / c) r, then drop position i
            let eliminate = |v: &mut ModVec| {
                let q = v[i].scale(&cinv);
                if !q.is_zero() {
                    for (vj, rj) in v.iter_mut().zip(&r) {
                        *vj = a.normal_form(&vj.sub(&q.mul(rj)));
                    }
                }
                debug_assert!(v[i].is_zero());
                v.remove(i);
            };
            rels.iter_mut().for_each(&eliminate);
            images.iter_mut().for_each(&eliminate);
            gens.remove(i);
        }
        let m = FPModule::new(a.clone(), gens, rels)?;
        let images = images.iter().map(|v| m.normal_form(v)).collect();
        Ok((m, images))
    }

    /// `M ⊗_A B` along `f: A -> B`: same generators, relations mapped by `f`.
    pub fn base_change(&self, f: &AlgebraHom) -> Result<FPModule> {
        if f.source() != &self.algebra {
            return Err(Error::ShapeMismatch("module is not over the source of the map".into()));
        }
        let rels = self
            .relations
            .iter()
            .map(|r| r.iter().map(|p| f.apply(p)).collect())
            .collect();
        FPModule::new(f.target().clone(), self.gens.clone(), rels)
    }
}

/// An `A`-linear map given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    source: FPModule,
    target: FPModule,
    images: Vec<ModVec>,
}

impl ModuleHom {
    /// Checks that every source relation maps to zero.
    pub fn new(source: FPModule, target: FPModule, images: Vec<ModVec>) -> Result<Self> {
        if source.algebra != target.algebra {
            return Err(Error::IllFormedHom("modules over different algebras".into()));
        }
        if images.len() != source.rank() || images.iter().any(|v| v.len() != target.rank()) {
            return Err(Error::IllFormedHom("image shape does not match the ranks".into()));
        }
        let images: Vec<ModVec> = images.iter().map(|v| target.normal_form(v)).collect();
        let h = ModuleHom {
            source,
            target,
            images,
        };
        for (k, rel) in h.source.relations.iter().enumerate() {
            if !h.target.is_zero_element(&h.apply_raw(rel)) {
                return Err(Error::IllFormedHom(format!(
                    "relation {k} of the source does not map to zero"
                )));
            }
        }
        Ok(h)
    }

    pub fn identity(m: &FPModule) -> Self {
        let images = (0..m.rank()).map(|j| m.normal_form(&m.basis_vec(j))).collect();
        ModuleHom {
            source: m.clone(),
            target: m.clone(),
            images,
        }
    }

    pub fn zero(source: &FPModule, target: &FPModule) -> Result<Self> {
        Self::new(source.clone(), target.clone(), vec![target.zero_vec(); source.rank()])
    }

    pub fn source(&self) -> &FPModule {
        &self.source
    }

    pub fn target(&self) -> &FPModule {
        &self.target
    }

    pub fn images(&self) -> &[ModVec] {
        &self.images
    }

    fn apply_raw(&self, v: &[Polynomial]) -> ModVec {
        let mut out = self.target.zero_vec();
        for (c, img) in v.iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(img) {
                *o = o.add(&c.mul(p));
            }
        }
        out
    }

    /// Image of a source element, in target normal form.
    pub fn apply(&self, v: &[Polynomial]) -> ModVec {
        self.target.normal_form(&self.apply_raw(v))
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &ModuleHom) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::IllFormedHom("composable module maps required".into()));
        }
        let images = first.images.iter().map(|v| self.apply(v)).collect();
        Ok(ModuleHom {
            source: first.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && (0..self.source.rank()).all(|j| {
                let d: ModVec = self.images[j]
                    .iter()
                    .zip(self.source.basis_vec(j))
                    .map(|(p, q)| p.sub(&q))
                    .collect();
                self.target.is_zero_element(&d)
            })
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| self.target.is_zero_element(v))
    }

    /// `target / image`, with the projection from the target.
    pub fn cokernel(&self) -> Result<(FPModule, ModuleHom)> {
        let mut rels = self.target.relations.clone();
        rels.extend(self.images.iter().cloned());
        let c = FPModule::new(self.target.algebra.clone(), self.target.gens.clone(), rels)?;
        let proj = ModuleHom::new(
            self.target.clone(),
            c.clone(),
            (0..c.rank()).map(|j| c.basis_vec(j)).collect(),
        )?;
        Ok((c, proj))
    }

    /// First target generator outside the image, if any.
    pub fn epi_witness(&self) -> Result<Option<usize>> {
        let (c, _) = self.cokernel()?;
        Ok((0..c.rank()).find(|&j| !c.is_zero_element(&c.basis_vec(j))))
    }

    pub fn is_epi(&self) -> Result<bool> {
        Ok(self.epi_witness()?.is_none())
    }

    /// Generators of the kernel, as nonzero normal forms in the source.
    ///
    /// Syzygies of `(image_j ; e_j)` together with `(target relations ; 0)`
    /// and `(I·e_i ; 0)` in `k[x]^{r+s}`, position-over-term with the `r`
    /// target positions first: basis elements vanishing there give the
    /// kernel in the last `s` positions.
    pub fn kernel_generators(&self) -> Result<Vec<ModVec>> {
        let a = &self.source.algebra;
        let (r, s) = (self.target.rank(), self.source.rank());
        let zero = a.zero();
        let mut gens: Vec<ModVec> = Vec::new();
        for (j, img) in self.images.iter().enumerate() {
            let mut v = img.clone();
            v.extend((0..s).map(|k| if k == j { a.one() } else { zero.clone() }));
            gens.push(v);
        }
        for rel in &self.target.relations {
            let mut v = rel.clone();
            v.extend(std::iter::repeat_n(zero.clone(), s));
            gens.push(v);
        }
        for g in a.groebner() {
            for i in 0..r + s {
                let mut v = vec![zero.clone(); r + s];
                v[i] = g.clone();
                gens.push(v);
            }
        }
        let gb = GroebnerBasis::compute(a.field(), a.nvars(), r + s, &gens, a.order(), a.guard())?;
        let mut out: Vec<ModVec> = Vec::new();
        for v in gb.elements() {
            if v[..r].iter().all(Polynomial::is_zero) {
                let k = self.source.normal_form(&v[r..]);
                if k.iter().any(|p| !p.is_zero()) && !out.contains(&k) {
                    out.push(k);
                }
            }
        }
        Ok(out)
    }

    pub fn is_mono(&self) -> Result<bool> {
        Ok(self.kernel_generators()?.is_empty())
    }

    /// The kernel as a module, with its inclusion into the source.
    pub fn kernel(&self) -> Result<(FPModule, ModuleHom)> {
        let a = &self.source.algebra;
        let gens = self.kernel_generators()?;
        let names: Vec<String> = (1..=gens.len()).map(|i| format!("k{i}")).collect();
        let free = FPModule::free(a, names.clone())?;
        let cover = ModuleHom::new(free, self.source.clone(), gens.clone())?;
        let rels = cover.kernel_generators()?;
        let k = FPModule::new(a.clone(), names, rels)?;
        let incl = ModuleHom::new(k.clone(), self.source.clone(), gens)?;
        Ok((k, incl))
    }

    /// `M -> N -> P -> 0` right exact, with `self = r: M -> N`.
    pub fn check_right_exact(&self, s: &ModuleHom) -> Result<SequenceVerdict> {
        if self.target != s.source {
            return Err(Error::IllFormedHom("the two maps are not composable".into()));
        }
        for (j, img) in self.images.iter().enumerate() {
            if !s.target.is_zero_element(&s.apply(img)) {
                return Ok(SequenceVerdict::failed(FailedAt::CompositeNonzero, Witness::generator(j)));
            }
        }
        if let Some(j) = s.epi_witness()? {
            return Ok(SequenceVerdict::failed(FailedAt::NotEpi, Witness::generator(j)));
        }
        let (c, _) = self.cokernel()?;
        let induced = ModuleHom::new(c.clone(), s.target.clone(), s.images.clone())?;
        if let Some(k) = induced.kernel_generators()?.first() {
            return Ok(SequenceVerdict::failed(
                FailedAt::InducedNotIso,
                Witness::detail(format!("{} maps to zero", c.format_vec(k))),
            ));
        }
        Ok(SequenceVerdict::exact())
    }

    /// `h ⊗_A B` along `f: A -> B`.
    pub fn base_change(&self, f: &AlgebraHom) -> Result<ModuleHom> {
        let images = self
            .images
            .iter()
            .map(|v| v.iter().map(|p| f.apply(p)).collect())
            .collect();
        ModuleHom::new(self.source.base_change(f)?, self.target.base_change(f)?, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::algebra::catalog;

    fn module(a: &FPAlgebra, gens: &[&str], rels: &[&[&str]]) -> FPModule {
        let rels = rels
            .iter()
            .map(|r| r.iter().map(|s| a.element(s).unwrap()).collect())
            .collect();
        FPModule::new(a.clone(), gens.iter().map(|g| g.to_string()).collect(), rels).unwrap()
    }

    #[test]
    fn membership_over_dual_numbers() {
        let a = catalog::dual_numbers();
        let m = FPModule::free_rank(&a, 1).unwrap();
        let two_x = vec![a.element("2x").unwrap()];
        let sub = module(&a, &["e1"], &[&["2x"]]);
        assert!(sub.is_zero_element(&two_x));
        assert!(sub.is_zero_element(&[a.element("x").unwrap()]));
        assert!(!sub.is_zero_element(&[a.one()]));
        assert!(!m.is_zero_element(&[a.element("x").unwrap()]));
        assert_eq!(sub.dimension(), Some(1));
    }

    #[test]
    fn kernels() {
        let a = catalog::line();
        let f = FPModule::free_rank(&a, 1).unwrap();
        assert!(ModuleHom::identity(&f).kernel_generators().unwrap().is_empty());
        let times_x = ModuleHom::new(f.clone(), f.clone(), vec![vec![a.var(0)]]).unwrap();
        assert!(times_x.is_mono().unwrap());
        assert!(!times_x.is_epi().unwrap());
        let (k, _) = times_x.kernel().unwrap();
        assert_eq!(k.rank(), 0);
        // over Q[x]/(x^2), multiplication by x has kernel (x)
        let d = catalog::dual_numbers();
        let g = FPModule::free_rank(&d, 1).unwrap();
        let h = ModuleHom::new(g.clone(), g.clone(), vec![vec![d.var(0)]]).unwrap();
        let ker = h.kernel_generators().unwrap();
        assert_eq!(ker, vec![vec![d.var(0)]]);
        let (k, _) = h.kernel().unwrap();
        assert_eq!(k.dimension(), Some(1));
    }

    #[test]
    fn pruning_and_description() {
        let a = catalog::cusp();
        let m = module(&a, &["dx", "dy"], &[&["-3x^2", "2y"], &["1", "0"]]);
        let (p, images) = m.pruned().unwrap();
        assert_eq!(p.describe(), "gens dy; rel 2y*dy");
        assert!(images[0].iter().all(Polynomial::is_zero));
        let full = module(&a, &["dx", "dy"], &[&["-3x^2", "2y"]]);
        assert_eq!(full.describe(), "gens dx,dy; rel -3x^2*dx + 2y*dy");
    }

    #[test]
    fn right_exactness() {
        let a = catalog::line();
        let f = FPModule::free_rank(&a, 1).unwrap();
        let times_x = ModuleHom::new(f.clone(), f.clone(), vec![vec![a.var(0)]]).unwrap();
        let (c, proj) = times_x.cokernel().unwrap();
        assert!(times_x.check_right_exact(&proj).unwrap().exact);
        let zero = ModuleHom::zero(&f, &c).unwrap();
        let v = times_x.check_right_exact(&zero).unwrap();
        assert_eq!(v.failed_at, Some(FailedAt::NotEpi));
        let id = ModuleHom::identity(&f);
        let v = id.check_right_exact(&id).unwrap();
        assert_eq!(v.failed_at, Some(FailedAt::CompositeNonzero));
        let z = FPModule::free_rank(&a, 0).unwrap();
        let into_zero = ModuleHom::zero(&z, &f).unwrap();
        let v = into_zero.check_right_exact(&proj).unwrap();
        assert_eq!(v.failed_at, Some(FailedAt::InducedNotIso));
    }
}
