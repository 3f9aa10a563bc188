use num_bigint::BigInt;
use num_traits::Zero;

use super::base::FinCommMonoid;
use crate::abgrp::{AbHom, DirectSum, FGAbGroup, HomGroup, IntMatrix};
use crate::error::{Error, Result};

/// A Beck module over a commutative monoid: fibers `A_x` with transition
/// homomorphisms `h_x: A_y -> A_{x*y}` for every defined product, subject to
/// `h_1 = id` and `h_x ∘ h_y = h_{x*y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonBeckModule {
    base: FinCommMonoid,
    fibers: Vec<FGAbGroup>,
    /// `transitions[x][y]: A_y -> A_{x*y}`, present iff `x*y` is defined.
    transitions: Vec<Vec<Option<AbHom>>>,
}

impl MonBeckModule {
    /// `matrices[x][y]` acts on generators of `A_y`; validates well-definedness,
    /// the unit law and the composition law on every defined triple.
    pub fn new(
        base: FinCommMonoid,
        fibers: Vec<FGAbGroup>,
        matrices: Vec<Vec<Option<IntMatrix>>>,
    ) -> Result<Self> {
        let n = base.len();
        if fibers.len() != n || matrices.len() != n || matrices.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidModule(format!(
                "expected {n} fibers and an {n}x{n} transition table"
            )));
        }
        let mut transitions = vec![vec![None; n]; n];
        for x in 0..n {
            for y in 0..n {
                match (base.mul(x, y), &matrices[x][y]) {
                    (Some(xy), Some(m)) => {
                        let h = AbHom::new(fibers[y].clone(), fibers[xy].clone(), m.clone())
                            .map_err(|e| {
                                Error::InvalidModule(format!(
                                    "transition h_{} on fiber {}: {e}",
                                    base.label(x),
                                    base.label(y)
                                ))
                            })?;
                        transitions[x][y] = Some(h);
                    }
                    (None, None) => {}
                    (Some(_), None) => {
                        return Err(Error::InvalidModule(format!(
                            "missing transition h_{} on fiber {}",
                            base.label(x),
                            base.label(y)
                        )))
                    }
                    (None, Some(_)) => {
                        return Err(Error::InvalidModule(format!(
                            "transition h_{} on fiber {} where the product is undefined",
                            base.label(x),
                            base.label(y)
                        )))
                    }
                }
            }
        }
        let m = MonBeckModule {
            base,
            fibers,
            transitions,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(
        base: FinCommMonoid,
        fibers: Vec<FGAbGroup>,
        transitions: Vec<Vec<Option<AbHom>>>,
    ) -> Self {
        MonBeckModule {
            base,
            fibers,
            transitions,
        }
    }

    /// Constant fiber `g` with `h_x = rho[x]` on every fiber.
    pub fn constant(base: &FinCommMonoid, g: &FGAbGroup, rho: &[IntMatrix]) -> Result<Self> {
        let n = base.len();
        if rho.len() != n {
            return Err(Error::InvalidModule(format!("{} actions for {n} elements", rho.len())));
        }
        let matrices = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| base.mul(x, y).map(|_| rho[x].clone()))
                    .collect()
            })
            .collect();
        Self::new(base.clone(), vec![g.clone(); n], matrices)
    }

    pub fn zero(base: &FinCommMonoid) -> Self {
        let n = base.len();
        let z = FGAbGroup::zero();
        let transitions = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| base.mul(x, y).map(|_| AbHom::identity(&z)))
                    .collect()
            })
            .collect();
        MonBeckModule {
            base: base.clone(),
            fibers: vec![z; n],
            transitions,
        }
    }

    /// Checks `h_1 = id` and `h_x ∘ h_y = h_{x*y}` on every defined triple.
    pub fn validate(&self) -> Result<()> {
        let b = &self.base;
        let n = b.len();
        for y in 0..n {
            if !self.h(b.unit(), y).is_identity() {
                return Err(Error::InvalidModule(format!(
                    "h at the unit is not the identity on fiber {}",
                    b.label(y)
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = b.mul(x, y) else { continue };
                for z in 0..n {
                    let (Some(yz), Some(_)) = (b.mul(y, z), b.mul(xy, z)) else {
                        continue;
                    };
                    let lhs = self.h(x, yz).compose(self.h(y, z))?;
                    if !lhs.equals(self.h(xy, z)) {
                        return Err(Error::InvalidModule(format!(
                            "h_{} ∘ h_{} != h_{} on fiber {}",
                            b.label(x),
                            b.label(y),
                            b.label(xy),
                            b.label(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &FinCommMonoid {
        &self.base
    }

    pub fn fibers(&self) -> &[FGAbGroup] {
        &self.fibers
    }

    pub fn fiber(&self, x: usize) -> &FGAbGroup {
        &self.fibers[x]
    }

    /// `h_x: A_y -> A_{x*y}`; panics when the product is undefined.
    pub fn h(&self, x: usize, y: usize) -> &AbHom {
        self.transitions[x][y]
            .as_ref()
            .expect("transition defined for defined products")
    }

    pub fn try_h(&self, x: usize, y: usize) -> Option<&AbHom> {
        self.transitions[x][y].as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.fibers.iter().all(FGAbGroup::is_trivial)
    }

    /// `fiber 1: 0, fiber g: Z/2`
    pub fn describe(&self) -> String {
        self.base
            .labels()
            .iter()
            .zip(&self.fibers)
            .map(|(l, g)| format!("fiber {l}: {g}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// A natural family of fiber homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonBeckHom {
    source: MonBeckModule,
    target: MonBeckModule,
    components: Vec<AbHom>,
}

impl MonBeckHom {
    /// Validates `f_{x*y} ∘ h^A_x = h^B_x ∘ f_y` for every defined product.
    pub fn new(source: MonBeckModule, target: MonBeckModule, components: Vec<AbHom>) -> Result<Self> {
        let h = Self::from_parts(source, target, components)?;
        let b = &h.source.base;
        for (x, y, xy) in b.products() {
            let lhs = h.components[xy].compose(h.source.h(x, y))?;
            let rhs = h.target.h(x, y).compose(&h.components[y])?;
            if !lhs.equals(&rhs) {
                return Err(Error::IllFormedHom(format!(
                    "not natural at h_{} on fiber {}",
                    b.label(x),
                    b.label(y)
                )));
            }
        }
        Ok(h)
    }

    pub(crate) fn from_parts(
        source: MonBeckModule,
        target: MonBeckModule,
        components: Vec<AbHom>,
    ) -> Result<Self> {
        if source.base != target.base {
            return Err(Error::ShapeMismatch("modules over different monoids".into()));
        }
        if components.len() != source.base.len() {
            return Err(Error::ShapeMismatch("one component per element is required".into()));
        }
        for (x, c) in components.iter().enumerate() {
            if c.source() != source.fiber(x) || c.target() != target.fiber(x) {
                return Err(Error::IllFormedHom(format!(
                    "component at {} does not match the fibers",
                    source.base.label(x)
                )));
            }
        }
        Ok(MonBeckHom {
            source,
            target,
            components,
        })
    }

    pub fn identity(m: &MonBeckModule) -> Self {
        MonBeckHom {
            source: m.clone(),
            target: m.clone(),
            components: m.fibers.iter().map(AbHom::identity).collect(),
        }
    }

    pub fn source(&self) -> &MonBeckModule {
        &self.source
    }

    pub fn target(&self) -> &MonBeckModule {
        &self.target
    }

    pub fn components(&self) -> &[AbHom] {
        &self.components
    }

    pub fn component(&self, x: usize) -> &AbHom {
        &self.components[x]
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &MonBeckHom) -> Result<MonBeckHom> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("module homomorphisms are not composable".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonBeckHom {
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.components.iter().all(AbHom::is_identity)
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().all(AbHom::is_epi)
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().all(AbHom::is_mono)
    }

    /// Fiberwise inverse of an isomorphism; naturality is inherited.
    pub fn inverse(&self) -> Option<MonBeckHom> {
        let components = self
            .components
            .iter()
            .map(AbHom::inverse)
            .collect::<Option<Vec<_>>>()?;
        Some(MonBeckHom {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }
}

/// `Hom(M, N)`: the subgroup of `⊕_z Hom(M_z, N_z)` cut out by naturality.
#[derive(Clone, Debug)]
pub struct MonHomGroup {
    pub group: FGAbGroup,
    /// Inclusion into `⊕_z Hom(M_z, N_z)`.
    pub incl: AbHom,
    parts: Vec<HomGroup>,
    sum: DirectSum,
    source: MonBeckModule,
    target: MonBeckModule,
}

impl MonHomGroup {
    pub fn new(m: &MonBeckModule, n: &MonBeckModule) -> Result<Self> {
        if m.base != n.base {
            return Err(Error::ShapeMismatch("modules over different monoids".into()));
        }
        let b = &m.base;
        let parts: Vec<HomGroup> = m
            .fibers
            .iter()
            .zip(&n.fibers)
            .map(|(a, c)| HomGroup::new(a, c))
            .collect();
        let groups: Vec<&FGAbGroup> = parts.iter().map(|p| &p.group).collect();
        let sum = DirectSum::new(&groups);
        // flat matrix coordinates of each fiber component
        let flat_sizes: Vec<usize> = (0..b.len())
            .map(|z| m.fibers[z].ngens() * n.fibers[z].ngens())
            .collect();
        let flat_offsets: Vec<usize> = flat_sizes
            .iter()
            .scan(0, |acc, s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        let flat_total: usize = flat_sizes.iter().sum();
        let incl_blocks: Vec<&IntMatrix> = parts.iter().map(|p| p.incl.matrix()).collect();
        let to_flat = IntMatrix::block_diag(&incl_blocks);

        let mut targets = Vec::new();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (x, y, xy) in b.products() {
            // f_{xy} ∘ h^M_{x,y} - h^N_{x,y} ∘ f_y  in Hom(M_y, N_{xy}) flattened
            let hm = m.h(x, y).matrix();
            let hn = n.h(x, y).matrix();
            let (rows_out, cols_out) = (n.fibers[xy].ngens(), m.fibers[y].ngens());
            let mut block = vec![vec![BigInt::zero(); flat_total]; rows_out * cols_out];
            let nb_xy = n.fibers[xy].ngens();
            let ny = n.fibers[y].ngens();
            for j in 0..cols_out {
                for i in 0..rows_out {
                    let r = &mut block[j * rows_out + i];
                    // (F_xy · H^M)[i][j] = Σ_k F_xy[i][k] H^M[k][j]
                    for k in 0..m.fibers[xy].ngens() {
                        let c = &hm[(k, j)];
                        if !c.is_zero() {
                            r[flat_offsets[xy] + k * nb_xy + i] += c;
                        }
                    }
                    // (H^N · F_y)[i][j] = Σ_k H^N[i][k] F_y[k][j]
                    for k in 0..ny {
                        let c = &hn[(i, k)];
                        if !c.is_zero() {
                            r[flat_offsets[y] + j * ny + k] -= c;
                        }
                    }
                }
            }
            rows.extend(block);
            let copies: Vec<&FGAbGroup> = std::iter::repeat_n(&n.fibers[xy], cols_out).collect();
            targets.push(DirectSum::new(&copies).group);
        }
        let target_refs: Vec<&FGAbGroup> = targets.iter().collect();
        let constraint_target = DirectSum::new(&target_refs).group;
        let constraint = IntMatrix::from_rows(&rows, flat_total)?;
        let phi = AbHom::new(
            sum.group.clone(),
            constraint_target,
            constraint.checked_mul(&to_flat)?,
        )?;
        let (group, incl) = phi.kernel();
        Ok(MonHomGroup {
            group,
            incl,
            parts,
            sum,
            source: m.clone(),
            target: n.clone(),
        })
    }

    pub fn decode(&self, element: &[BigInt]) -> MonBeckHom {
        let v = self.incl.apply(element);
        let components = self
            .parts
            .iter()
            .enumerate()
            .map(|(k, p)| p.decode(&v[self.sum.range(k)]))
            .collect();
        MonBeckHom {
            source: self.source.clone(),
            target: self.target.clone(),
            components,
        }
    }

    pub fn encode(&self, h: &MonBeckHom) -> Option<Vec<BigInt>> {
        let mut v = Vec::new();
        for (p, c) in self.parts.iter().zip(&h.components) {
            v.extend(p.encode(c)?);
        }
        self.incl.preimage(&v)
    }
}
