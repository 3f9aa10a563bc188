//! Finite sets. A Beck module over `X` is a family of abelian groups indexed
//! by `X`; every construction is fiberwise.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abgrp::{AbHom, DirectSum, FGAbGroup, HomGroup, IntMatrix};
use crate::beck::{BeckContext, CotangentData, Coproduct, Section, SequenceVerdict};
use crate::error::{Error, Result};

/// Largest total size accepted by [`enumerate_group_objects`].
pub const GROUP_OBJECT_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinSet {
    elements: Vec<String>,
}

impl FinSet {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = S>) -> Result<Self> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e) {
                return Err(Error::InvalidObject(format!("duplicate label {e:?}")));
            }
        }
        Ok(FinSet { elements })
    }

    /// `{0, 1, ..., n-1}` labeled by decimal strings.
    pub fn range(n: usize) -> Self {
        FinSet {
            elements: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetMap {
    source: FinSet,
    target: FinSet,
    images: Vec<usize>,
}

impl SetMap {
    pub fn new(source: FinSet, target: FinSet, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidObject(format!(
                "{} images for a source of size {}",
                images.len(),
                source.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= target.len()) {
            return Err(Error::InvalidObject(format!(
                "image index {bad} out of range for a target of size {}",
                target.len()
            )));
        }
        Ok(SetMap {
            source,
            target,
            images,
        })
    }

    /// Builds from image labels.
    pub fn from_labels(source: FinSet, target: FinSet, images: &[&str]) -> Result<Self> {
        let idx = images
            .iter()
            .map(|l| {
                target
                    .index_of(l)
                    .ok_or_else(|| Error::InvalidObject(format!("unknown target label {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, idx)
    }

    pub fn identity(x: &FinSet) -> Self {
        SetMap {
            source: x.clone(),
            target: x.clone(),
            images: (0..x.len()).collect(),
        }
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &SetMap) -> Result<SetMap> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("maps are not composable".into()));
        }
        Ok(SetMap {
            source: first.source.clone(),
            target: self.target.clone(),
            images: first.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    /// Source indices mapping to `y`, in source order.
    pub fn preimage(&self, y: usize) -> Vec<usize> {
        (0..self.images.len()).filter(|&i| self.images[i] == y).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.images.iter().all(|i| seen.insert(*i))
    }

    /// Every map `source -> target`, in lexicographic order of image vectors.
    pub fn all(source: &FinSet, target: &FinSet) -> Vec<SetMap> {
        let (n, m) = (source.len(), target.len());
        if m == 0 {
            return if n == 0 {
                vec![SetMap::identity(source)]
            } else {
                Vec::new()
            };
        }
        let mut out = Vec::new();
        let mut images = vec![0usize; n];
        loop {
            out.push(SetMap {
                source: source.clone(),
                target: target.clone(),
                images: images.clone(),
            });
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                images[k] += 1;
                if images[k] < m {
                    break;
                }
                images[k] = 0;
            }
        }
    }
}

/// A family of abelian groups indexed by a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetBeckModule {
    base: FinSet,
    fibers: Vec<FGAbGroup>,
}

impl SetBeckModule {
    pub fn new(base: FinSet, fibers: Vec<FGAbGroup>) -> Result<Self> {
        if fibers.len() != base.len() {
            return Err(Error::InvalidModule(format!(
                "{} fibers over a base of size {}",
                fibers.len(),
                base.len()
            )));
        }
        Ok(SetBeckModule { base, fibers })
    }

    pub fn zero(base: &FinSet) -> Self {
        SetBeckModule {
            base: base.clone(),
            fibers: vec![FGAbGroup::zero(); base.len()],
        }
    }

    pub fn base(&self) -> &FinSet {
        &self.base
    }

    pub fn fibers(&self) -> &[FGAbGroup] {
        &self.fibers
    }

    pub fn fiber(&self, x: usize) -> &FGAbGroup {
        &self.fibers[x]
    }

    pub fn is_zero(&self) -> bool {
        self.fibers.iter().all(FGAbGroup::is_trivial)
    }

    /// Fiberwise isomorphism type.
    pub fn is_isomorphic(&self, other: &SetBeckModule) -> bool {
        self.base == other.base
            && self
                .fibers
                .iter()
                .zip(&other.fibers)
                .all(|(a, b)| a.is_isomorphic(b))
    }

    /// `fiber a: Z, fiber b: Z/2`
    pub fn describe(&self) -> String {
        self.base
            .elements()
            .iter()
            .zip(&self.fibers)
            .map(|(l, g)| format!("fiber {l}: {g}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetBeckHom {
    source: SetBeckModule,
    target: SetBeckModule,
    components: Vec<AbHom>,
}

impl SetBeckHom {
    pub fn new(source: SetBeckModule, target: SetBeckModule, components: Vec<AbHom>) -> Result<Self> {
        if source.base != target.base {
            return Err(Error::ShapeMismatch("modules over different bases".into()));
        }
        if components.len() != source.base.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} components over a base of size {}",
                components.len(),
                source.base.len()
            )));
        }
        for (x, h) in components.iter().enumerate() {
            if h.source() != source.fiber(x) || h.target() != target.fiber(x) {
                return Err(Error::IllFormedHom(format!(
                    "component at {} does not match the fibers",
                    source.base.label(x)
                )));
            }
        }
        Ok(SetBeckHom {
            source,
            target,
            components,
        })
    }

    pub fn identity(m: &SetBeckModule) -> Self {
        SetBeckHom {
            source: m.clone(),
            target: m.clone(),
            components: m.fibers.iter().map(AbHom::identity).collect(),
        }
    }

    pub fn source(&self) -> &SetBeckModule {
        &self.source
    }

    pub fn target(&self) -> &SetBeckModule {
        &self.target
    }

    pub fn components(&self) -> &[AbHom] {
        &self.components
    }

    pub fn component(&self, x: usize) -> &AbHom {
        &self.components[x]
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &SetBeckHom) -> Result<SetBeckHom> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("module homomorphisms are not composable".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(SetBeckHom {
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(AbHom::is_identity)
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().all(AbHom::is_epi)
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().all(AbHom::is_mono)
    }

    pub fn is_iso(&self) -> bool {
        self.is_epi() && self.is_mono()
    }

    /// Fiberwise inverse, when every component is an isomorphism.
    pub fn inverse(&self) -> Option<SetBeckHom> {
        let components = self
            .components
            .iter()
            .map(AbHom::inverse)
            .collect::<Option<Vec<_>>>()?;
        Some(SetBeckHom {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }
}

/// `Der(X, b)`: every section is a derivation, so this is `⊕_x b_x`.
#[derive(Clone, Debug)]
pub struct SetDerivations {
    pub group: FGAbGroup,
    sum: DirectSum,
}

impl SetDerivations {
    pub fn decode(&self, element: &[BigInt]) -> Section {
        (0..self.sum.offsets.len() - 1)
            .map(|k| element[self.sum.range(k)].to_vec())
            .collect()
    }

    pub fn encode(&self, section: &Section) -> Vec<BigInt> {
        section.iter().flatten().cloned().collect()
    }
}

/// `Hom(M, N)` as the product of fiberwise hom groups.
#[derive(Clone, Debug)]
pub struct SetHomGroup {
    pub group: FGAbGroup,
    parts: Vec<HomGroup>,
    sum: DirectSum,
    source: SetBeckModule,
    target: SetBeckModule,
}

impl SetHomGroup {
    pub fn new(m: &SetBeckModule, n: &SetBeckModule) -> Result<Self> {
        if m.base != n.base {
            return Err(Error::ShapeMismatch("modules over different bases".into()));
        }
        let parts: Vec<HomGroup> = m
            .fibers
            .iter()
            .zip(&n.fibers)
            .map(|(a, b)| HomGroup::new(a, b))
            .collect();
        let groups: Vec<&FGAbGroup> = parts.iter().map(|p| &p.group).collect();
        let sum = DirectSum::new(&groups);
        Ok(SetHomGroup {
            group: sum.group.clone(),
            parts,
            sum,
            source: m.clone(),
            target: n.clone(),
        })
    }

    pub fn decode(&self, element: &[BigInt]) -> SetBeckHom {
        let components = self
            .parts
            .iter()
            .enumerate()
            .map(|(k, p)| p.decode(&element[self.sum.range(k)]))
            .collect();
        SetBeckHom {
            source: self.source.clone(),
            target: self.target.clone(),
            components,
        }
    }
}

/// The free Beck module on `l: E -> X`: fiber at `x` is free on `l⁻¹(x)`.
pub fn abelianize(l: &SetMap) -> SetBeckModule {
    let fibers = (0..l.target.len())
        .map(|x| FGAbGroup::free(l.preimage(x).len()))
        .collect();
    SetBeckModule {
        base: l.target.clone(),
        fibers,
    }
}

/// Fiberwise verdict relating `delta_tilde(f)` to `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnsVerdict {
    pub surjective: bool,
    pub injective: bool,
    pub delta_epi: bool,
    pub delta_mono: bool,
}

impl EnsVerdict {
    pub fn consistent(&self) -> bool {
        self.surjective == self.delta_epi && self.injective == self.delta_mono
    }

    pub fn bijective(&self) -> bool {
        self.surjective && self.injective
    }

    pub fn delta_iso(&self) -> bool {
        self.delta_epi && self.delta_mono
    }
}

/// The category of finite sets.
#[derive(Clone, Copy, Debug, Default)]
pub struct SetContext;

impl SetContext {
    pub fn hom_group(&self, m: &SetBeckModule, n: &SetBeckModule) -> Result<SetHomGroup> {
        SetHomGroup::new(m, n)
    }

    /// `f_!` on morphisms: fiber `y` is the block-diagonal sum over `f⁻¹(y)`.
    pub fn pushforward_hom(&self, f: &SetMap, h: &SetBeckHom) -> Result<SetBeckHom> {
        let src = self.pushforward(f, &h.source)?;
        let tgt = self.pushforward(f, &h.target)?;
        let components = (0..f.target.len())
            .map(|y| {
                let blocks: Vec<&IntMatrix> =
                    f.preimage(y).iter().map(|&x| h.components[x].matrix()).collect();
                AbHom::new(
                    src.fibers[y].clone(),
                    tgt.fibers[y].clone(),
                    IntMatrix::block_diag(&blocks),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        SetBeckHom::new(src, tgt, components)
    }

    /// The canonical isomorphism `(g∘f)_!(M) -> g_!(f_!(M))`, a permutation
    /// of summands in each fiber.
    pub fn pushforward_composite_iso(
        &self,
        f: &SetMap,
        g: &SetMap,
        m: &SetBeckModule,
    ) -> Result<SetBeckHom> {
        let gf = g.compose(f)?;
        let direct = self.pushforward(&gf, m)?;
        let nested = self.pushforward(g, &self.pushforward(f, m)?)?;
        let components = (0..g.target.len())
            .map(|z| {
                let direct_order = gf.preimage(z);
                let nested_order: Vec<usize> = g
                    .preimage(z)
                    .into_iter()
                    .flat_map(|w| f.preimage(w))
                    .collect();
                let offset = |order: &[usize], x: usize| -> usize {
                    order
                        .iter()
                        .take_while(|&&u| u != x)
                        .map(|&u| m.fibers[u].ngens())
                        .sum()
                };
                let n = direct.fibers[z].ngens();
                let mut p = IntMatrix::zeros(n, n);
                for &x in &direct_order {
                    let (a, b) = (offset(&direct_order, x), offset(&nested_order, x));
                    for k in 0..m.fibers[x].ngens() {
                        p[(b + k, a + k)] = BigInt::one();
                    }
                }
                AbHom::new(direct.fibers[z].clone(), nested.fibers[z].clone(), p)
            })
            .collect::<Result<Vec<_>>>()?;
        SetBeckHom::new(direct, nested, components)
    }

    /// Compares `delta_tilde(f)` with `f` on surjectivity and injectivity.
    pub fn prop_ens_check(&self, f: &SetMap) -> Result<EnsVerdict> {
        let d = self.delta_tilde(f)?;
        Ok(EnsVerdict {
            surjective: f.is_surjective(),
            injective: f.is_injective(),
            delta_epi: d.is_epi(),
            delta_mono: d.is_mono(),
        })
    }

    fn check_same_base(&self, f: &SetMap, m: &SetBeckModule, side: &FinSet) -> Result<()> {
        if &m.base != side {
            return Err(Error::InvalidModule(format!(
                "module base {:?} does not match the map {:?}",
                m.base.elements(),
                f.images
            )));
        }
        Ok(())
    }
}

impl BeckContext for SetContext {
    type Object = FinSet;
    type Morphism = SetMap;
    type Module = SetBeckModule;
    type Hom = SetBeckHom;
    type Derivation = Section;
    type Derivations = SetDerivations;

    fn morphism_source(&self, f: &SetMap) -> FinSet {
        f.source.clone()
    }

    fn morphism_target(&self, f: &SetMap) -> FinSet {
        f.target.clone()
    }

    fn identity(&self, x: &FinSet) -> SetMap {
        SetMap::identity(x)
    }

    fn omega(&self, x: &FinSet) -> Result<CotangentData<SetBeckModule, Section>> {
        Ok(CotangentData {
            omega: abelianize(&SetMap::identity(x)),
            unit: vec![vec![BigInt::one()]; x.len()],
        })
    }

    fn derivations(&self, x: &FinSet, b: &SetBeckModule) -> Result<SetDerivations> {
        if &b.base != x {
            return Err(Error::InvalidModule("module lives over a different set".into()));
        }
        let parts: Vec<&FGAbGroup> = b.fibers.iter().collect();
        let sum = DirectSum::new(&parts);
        Ok(SetDerivations {
            group: sum.group.clone(),
            sum,
        })
    }

    fn zero_test_derivation(&self, x: &FinSet, b: &SetBeckModule, theta: &Section) -> Result<bool> {
        if &b.base != x || theta.len() != x.len() {
            return Err(Error::MalformedDerivation(format!(
                "section has {} values over a base of size {}",
                theta.len(),
                x.len()
            )));
        }
        for (g, v) in b.fibers.iter().zip(theta) {
            g.validate_element(v)
                .map_err(|e| Error::MalformedDerivation(e.to_string()))?;
        }
        Ok(b.fibers.iter().zip(theta).all(|(g, v)| g.is_zero_element(v)))
    }

    fn pullback(&self, f: &SetMap, b: &SetBeckModule) -> Result<SetBeckModule> {
        self.check_same_base(f, b, &f.target)?;
        Ok(SetBeckModule {
            base: f.source.clone(),
            fibers: f.images.iter().map(|&y| b.fibers[y].clone()).collect(),
        })
    }

    fn pushforward(&self, f: &SetMap, a: &SetBeckModule) -> Result<SetBeckModule> {
        self.check_same_base(f, a, &f.source)?;
        let fibers = (0..f.target.len())
            .map(|y| {
                let parts: Vec<&FGAbGroup> = f.preimage(y).iter().map(|&x| &a.fibers[x]).collect();
                DirectSum::new(&parts).group
            })
            .collect();
        Ok(SetBeckModule {
            base: f.target.clone(),
            fibers,
        })
    }

    /// Codiagonal `Z^{|f⁻¹(y)|} -> Z` in each fiber.
    fn delta_tilde(&self, f: &SetMap) -> Result<SetBeckHom> {
        let source = self.pushforward(f, &self.omega(&f.source)?.omega)?;
        let target = self.omega(&f.target)?.omega;
        let components = (0..f.target.len())
            .map(|y| {
                let k = f.preimage(y).len();
                AbHom::new(
                    source.fibers[y].clone(),
                    target.fibers[y].clone(),
                    IntMatrix::from_data(1, k, vec![BigInt::one(); k])?,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        SetBeckHom::new(source, target, components)
    }

    /// `Ω_Y` modulo the values `η_Y(f(x))`: fiber `y` is `Z / <1 per preimage>`.
    fn omega_rel(&self, f: &SetMap) -> Result<CotangentData<SetBeckModule, Section>> {
        let fibers = (0..f.target.len())
            .map(|y| {
                let k = f.preimage(y).len();
                FGAbGroup::new(1, IntMatrix::from_data(1, k, vec![BigInt::one(); k])?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CotangentData {
            omega: SetBeckModule {
                base: f.target.clone(),
                fibers,
            },
            unit: vec![vec![BigInt::one()]; f.target.len()],
        })
    }

    fn gamma(&self, f: &SetMap) -> Result<SetBeckHom> {
        let source = self.omega(&f.target)?.omega;
        let target = self.omega_rel(f)?.omega;
        let components = source
            .fibers
            .iter()
            .zip(&target.fibers)
            .map(|(a, b)| AbHom::new(a.clone(), b.clone(), IntMatrix::identity(1)))
            .collect::<Result<Vec<_>>>()?;
        SetBeckHom::new(source, target, components)
    }

    fn compose_homs(&self, second: &SetBeckHom, first: &SetBeckHom) -> Result<SetBeckHom> {
        second.compose(first)
    }

    fn is_identity_hom(&self, h: &SetBeckHom) -> Result<bool> {
        Ok(h.source == h.target && h.is_identity())
    }

    fn is_epi_hom(&self, h: &SetBeckHom) -> Result<bool> {
        Ok(h.is_epi())
    }

    fn is_mono_hom(&self, h: &SetBeckHom) -> Result<bool> {
        Ok(h.is_mono())
    }

    fn check_right_exact(&self, r: &SetBeckHom, s: &SetBeckHom) -> Result<SequenceVerdict> {
        if r.target != s.source {
            return Err(Error::ShapeMismatch("sequence maps are not composable".into()));
        }
        for (y, (a, b)) in r.components.iter().zip(&s.components).enumerate() {
            let v = crate::abgrp::check_right_exact(a, b)?;
            if !v.exact {
                return Ok(v.in_fiber(s.source.base.label(y)));
            }
        }
        Ok(SequenceVerdict::exact())
    }

    fn is_epimorphism(&self, f: &SetMap) -> Result<bool> {
        Ok(f.is_surjective())
    }

    /// `z ⊔ x` labeled `0:<z label>` then `1:<x label>`.
    fn coproduct(&self, z: &FinSet, x: &FinSet) -> Result<Coproduct<FinSet, SetMap>> {
        let labels = z
            .elements
            .iter()
            .map(|l| format!("0:{l}"))
            .chain(x.elements.iter().map(|l| format!("1:{l}")));
        let y = FinSet::new(labels).map_err(|e| Error::CoproductFailure(e.to_string()))?;
        let first = SetMap::new(z.clone(), y.clone(), (0..z.len()).collect())?;
        let second = SetMap::new(x.clone(), y.clone(), (z.len()..z.len() + x.len()).collect())?;
        Ok(Coproduct {
            object: y,
            first,
            second,
        })
    }

    fn comparison_inverse(
        &self,
        _coproduct: &Coproduct<FinSet, SetMap>,
        forward: &SetBeckHom,
    ) -> Result<SetBeckHom> {
        forward
            .inverse()
            .ok_or_else(|| Error::CoproductFailure("comparison map is not invertible".into()))
    }
}

/// One abelian group law on a fiber: `table[a][b]` is the product of local
/// indices `a` and `b`, `unit` the neutral element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberGroupLaw {
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiberGroupLaw {
    pub fn inverse(&self, a: usize) -> usize {
        (0..self.table.len())
            .find(|&b| self.table[a][b] == self.unit)
            .expect("group law has inverses")
    }
}

/// All abelian group objects on `u: F -> X`.
#[derive(Clone, Debug, Serialize)]
pub struct GroupObjectEnumeration {
    /// Laws per fiber; a group object is one choice per fiber.
    pub per_fiber: Vec<Vec<FiberGroupLaw>>,
}

impl GroupObjectEnumeration {
    pub fn count(&self) -> BigInt {
        self.per_fiber
            .iter()
            .map(|laws| BigInt::from(laws.len()))
            .product()
    }
}

/// Enumerates every abelian group object structure `(m, e, i)` on `u` by
/// backtracking over commutative multiplication tables fiber by fiber.
pub fn enumerate_group_objects(u: &SetMap) -> Result<GroupObjectEnumeration> {
    if u.source.len() > GROUP_OBJECT_LIMIT {
        return Err(Error::SizeLimit(format!(
            "group-object enumeration is limited to {GROUP_OBJECT_LIMIT} elements, got {}",
            u.source.len()
        )));
    }
    let per_fiber = (0..u.target.len())
        .map(|x| abelian_group_laws(u.preimage(x).len()))
        .collect();
    Ok(GroupObjectEnumeration { per_fiber })
}

/// Every abelian group law on `{0, ..., n-1}`. An empty fiber carries none,
/// since a group object needs a neutral element there.
pub fn abelian_group_laws(n: usize) -> Vec<FiberGroupLaw> {
    let mut out = Vec::new();
    for unit in 0..n {
        let mut t = vec![vec![usize::MAX; n]; n];
        for a in 0..n {
            t[unit][a] = a;
            t[a][unit] = a;
        }
        let cells: Vec<(usize, usize)> = (0..n)
            .filter(|&a| a != unit)
            .flat_map(|a| (a..n).filter(move |&b| b != unit).map(move |b| (a, b)))
            .collect();
        fill(&mut t, &cells, 0, unit, &mut out);
    }
    out
}

fn fill(
    t: &mut Vec<Vec<usize>>,
    cells: &[(usize, usize)],
    k: usize,
    unit: usize,
    out: &mut Vec<FiberGroupLaw>,
) {
    let n = t.len();
    if k == cells.len() {
        out.push(FiberGroupLaw {
            unit,
            table: t.clone(),
        });
        return;
    }
    let (a, b) = cells[k];
    for c in 0..n {
        // Latin property in row a and row b (column constraints follow by symmetry)
        if (0..n).any(|j| t[a][j] == c) || (0..n).any(|j| t[b][j] == c) {
            continue;
        }
        t[a][b] = c;
        t[b][a] = c;
        if associative_so_far(t) {
            fill(t, cells, k + 1, unit, out);
        }
        t[a][b] = usize::MAX;
        t[b][a] = usize::MAX;
    }
}

fn associative_so_far(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    for a in 0..n {
        for b in 0..n {
            let ab = t[a][b];
            if ab == usize::MAX {
                continue;
            }
            for c in 0..n {
                let bc = t[b][c];
                if bc == usize::MAX {
                    continue;
                }
                let (l, r) = (t[ab][c], t[a][bc]);
                if l != usize::MAX && r != usize::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// `Σ n!/|Aut G|` over abelian groups `G` of order `n`, computed from the
/// automorphism counts of the groups' invariant-factor decompositions.
pub fn labeled_abelian_group_count(n: u64) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    let factorial: BigInt = (1..=n).map(BigInt::from).product();
    abelian_groups_of_order(n)
        .into_iter()
        .map(|g| &factorial / automorphism_count(&g))
        .sum()
}

/// Invariant-factor lists `d_1 | ... | d_k` with product `n`.
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, first: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        // next factor d is a multiple of `first` dividing `rest`, and what
        // remains after it must be divisible by d again (or be 1)
        let mut d = first.max(2);
        while d <= rest {
            if rest.is_multiple_of(d) && d.is_multiple_of(first) {
                let r = rest / d;
                if r == 1 || r.is_multiple_of(d) {
                    acc.push(d);
                    go(r, d, acc, out);
                    acc.pop();
                }
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// `|Aut(Z/d_1 + ... + Z/d_k)|`, counted as the number of generator
/// assignments that define an invertible endomorphism.
fn automorphism_count(factors: &[u64]) -> BigInt {
    let g = FGAbGroup::from_invariant_factors(
        &factors.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>(),
    );
    let elems = g.elements(u64::MAX).expect("finite group");
    let k = g.ngens();
    let mut count = BigInt::zero();
    let mut idx = vec![0usize; k];
    if k == 0 {
        return BigInt::one();
    }
    loop {
        let cols: Vec<Vec<BigInt>> = idx.iter().map(|&i| elems[i].clone()).collect();
        let m = IntMatrix::from_cols(k, &cols).expect("square");
        if let Ok(h) = AbHom::new(g.clone(), g.clone(), m) {
            if h.is_mono() {
                count += 1;
            }
        }
        let mut p = k;
        loop {
            if p == 0 {
                return count;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < elems.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beck::check_theorem1;

    fn set(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().copied()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn abelianize_counts_preimages() {
        let e = set(&["p", "q", "r"]);
        let l = SetMap::from_labels(e, set(&["a", "b"]), &["a", "a", "b"]).unwrap();
        let m = abelianize(&l);
        assert_eq!(m.fiber(0).invariant_factors(), ints(&[0, 0]).as_slice());
        assert_eq!(m.fiber(1).invariant_factors(), ints(&[0]).as_slice());
    }

    #[test]
    fn pushforward_and_pullback_formulas() {
        let ctx = SetContext;
        let f = SetMap::from_labels(set(&["1", "2", "3"]), set(&["a", "b"]), &["a", "a", "b"]).unwrap();
        let m = SetBeckModule::new(
            f.source().clone(),
            vec![FGAbGroup::free(1), FGAbGroup::cyclic(2), FGAbGroup::free(1)],
        )
        .unwrap();
        let p = ctx.pushforward(&f, &m).unwrap();
        assert_eq!(p.describe(), "fiber a: Z/2 + Z, fiber b: Z");
        let n = SetBeckModule::new(f.target().clone(), vec![FGAbGroup::cyclic(3), FGAbGroup::free(1)]).unwrap();
        assert_eq!(ctx.pullback(&f, &n).unwrap().describe(), "fiber 1: Z/3, fiber 2: Z/3, fiber 3: Z");
    }

    #[test]
    fn relative_module_of_inclusion() {
        let ctx = SetContext;
        let f = SetMap::from_labels(set(&["1"]), set(&["a", "b"]), &["a"]).unwrap();
        let rel = ctx.omega_rel(&f).unwrap().omega;
        assert!(rel.fiber(0).is_trivial());
        assert_eq!(rel.fiber(1).invariant_factors(), ints(&[0]).as_slice());
        assert!(!ctx.delta_tilde(&f).unwrap().is_epi());
        assert!(check_theorem1(&ctx, &f).unwrap().exact);
    }

    #[test]
    fn zero_test_on_sections() {
        let ctx = SetContext;
        let x = set(&["a"]);
        let b = ctx.omega(&x).unwrap().omega;
        assert!(!ctx.zero_test_derivation(&x, &b, &vec![ints(&[1])]).unwrap());
        assert!(ctx.zero_test_derivation(&x, &b, &vec![ints(&[0])]).unwrap());
        assert!(ctx.zero_test_derivation(&x, &b, &vec![]).is_err());
    }

    #[test]
    fn group_law_counts_small() {
        let counts: Vec<usize> = (1..=5).map(|n| abelian_group_laws(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 16, 30]);
        assert!(abelian_group_laws(0).is_empty());
    }

    #[test]
    fn closed_form_counts() {
        let counts: Vec<BigInt> = (1..=5).map(labeled_abelian_group_count).collect();
        assert_eq!(counts, ints(&[1, 2, 3, 16, 30]));
        assert_eq!(abelian_groups_of_order(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
    }

    #[test]
    fn enumeration_guard() {
        let u = SetMap::new(FinSet::range(9), set(&["x"]), vec![0; 9]).unwrap();
        assert!(matches!(enumerate_group_objects(&u), Err(Error::SizeLimit(_))));
    }
}
