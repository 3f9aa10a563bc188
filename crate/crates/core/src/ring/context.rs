//! Modules of differentials of finitely presented algebras and the
//! comparison maps between them.
//!
//! `Ω_A` is presented on `dx_1..dx_n` by the Jacobian rows of the relators;
//! a derivation `A -> M` is the tuple of values on the variables subject to
//! the same Jacobian equations in `M`.

use num_rational::BigRational;

use super::algebra::{tensor, AlgebraHom, FPAlgebra};
use super::groebner::ModVec;
use super::linalg;
use super::module::{FPModule, ModuleHom};
use super::poly::Polynomial;
use crate::beck::{
    check_theorem3, BeckContext, CotangentData, Coproduct, IsoVerdict, SequenceVerdict,
};
use crate::error::{Error, Result};

/// A derivation `A -> M`, stored as its values on the variables of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDerivation {
    pub values: Vec<ModVec>,
}

/// `Der_k(A, M)` together with a `k`-basis when `M` is finite dimensional.
#[derive(Clone, Debug)]
pub struct RingDerivations {
    pub module: FPModule,
    pub basis: Option<Vec<RingDerivation>>,
}

impl RingDerivations {
    pub fn dimension(&self) -> Option<usize> {
        self.basis.as_ref().map(Vec::len)
    }
}

/// The cotangent module: generators `d<var>`, one Jacobian row per relator.
pub fn kaehler(a: &FPAlgebra) -> Result<FPModule> {
    let gens = a.vars().iter().map(|v| format!("d{v}")).collect();
    let rels = a.relators().iter().map(|r| jacobian_row(a, r)).collect();
    FPModule::new(a.clone(), gens, rels)
}

fn jacobian_row(a: &FPAlgebra, p: &Polynomial) -> ModVec {
    (0..a.nvars()).map(|i| a.normal_form(&p.derivative(i))).collect()
}

/// The universal derivation `d: A -> Ω_A`.
pub fn universal_derivation(a: &FPAlgebra, p: &Polynomial) -> ModVec {
    jacobian_row(a, p)
}

/// Value of the derivation `D` on `p`, by the chain rule.
pub fn apply_derivation(a: &FPAlgebra, m: &FPModule, d: &RingDerivation, p: &Polynomial) -> ModVec {
    let mut out = m.zero_vec();
    for (i, v) in d.values.iter().enumerate() {
        let c = a.normal_form(&p.derivative(i));
        if c.is_zero() {
            continue;
        }
        for (o, q) in out.iter_mut().zip(v) {
            *o = o.add(&c.mul(q));
        }
    }
    m.normal_form(&out)
}

/// Whether the values on the variables extend to a derivation.
pub fn is_derivation(a: &FPAlgebra, m: &FPModule, d: &RingDerivation) -> bool {
    d.values.len() == a.nvars()
        && a.relators()
            .iter()
            .all(|r| m.is_zero_element(&apply_derivation(a, m, d, r)))
}

/// `k`-dimension of `Hom_A(Ω_A, M)`: tuples `(m_i)` killed by every
/// Jacobian row. `None` when `M` is infinite dimensional.
pub fn hom_from_omega_dimension(a: &FPAlgebra, m: &FPModule) -> Result<Option<usize>> {
    Ok(hom_from_omega_basis(a, m)?.map(|b| b.len()))
}

fn hom_from_omega_basis(a: &FPAlgebra, m: &FPModule) -> Result<Option<Vec<RingDerivation>>> {
    if m.algebra() != a {
        return Err(Error::ShapeMismatch("module is over a different algebra".into()));
    }
    let Some(kb) = m.k_basis() else {
        return Ok(None);
    };
    let field = a.field();
    let (n, d) = (a.nvars(), kb.len());
    let ncols = n * d;
    let nrows = a.relators().len() * d;
    let mut rows = vec![vec![BigRational::from_integer(0.into()); ncols]; nrows];
    for (ri, r) in a.relators().iter().enumerate() {
        let jac = jacobian_row(a, r);
        for i in 0..n {
            for s in 0..d {
                let mut e = vec![BigRational::from_integer(0.into()); d];
                e[s] = field.from_int(1);
                let b = m.from_coordinates(&kb, &e);
                let img = m.scale(&jac[i], &b);
                for (t, c) in m.coordinates(&kb, &img).into_iter().enumerate() {
                    rows[ri * d + t][i * d + s] = c;
                }
            }
        }
    }
    let basis = linalg::nullspace(field, rows, ncols)
        .into_iter()
        .map(|v| RingDerivation {
            values: (0..n).map(|i| m.from_coordinates(&kb, &v[i * d..(i + 1) * d])).collect(),
        })
        .collect();
    Ok(Some(basis))
}

/// The ring instantiation.
#[derive(Clone, Copy, Debug, Default)]
pub struct RingContext;

impl RingContext {
    /// `Ω_{A/k} ⊗_A A' ≅ Ω_{A'/k'}` for `A' = A ⊗_k k'`, by explicit inverse maps.
    pub fn base_change_check(&self, a: &FPAlgebra, k_prime: &FPAlgebra) -> Result<IsoVerdict> {
        check_theorem3(self, a, k_prime)
    }

    /// `Ω_B / (d f(x_i))` before pruning.
    fn relative_unpruned(&self, f: &AlgebraHom) -> Result<FPModule> {
        let b = f.target();
        let omega = kaehler(b)?;
        let mut rels = omega.relations().to_vec();
        rels.extend(f.images().iter().map(|p| universal_derivation(b, p)));
        FPModule::new(b.clone(), omega.gens().to_vec(), rels)
    }

    fn relative(&self, f: &AlgebraHom) -> Result<(FPModule, Vec<ModVec>)> {
        self.relative_unpruned(f)?.pruned()
    }
}

impl BeckContext for RingContext {
    type Object = FPAlgebra;
    type Morphism = AlgebraHom;
    type Module = FPModule;
    type Hom = ModuleHom;
    type Derivation = RingDerivation;
    type Derivations = RingDerivations;

    fn morphism_source(&self, f: &AlgebraHom) -> FPAlgebra {
        f.source().clone()
    }

    fn morphism_target(&self, f: &AlgebraHom) -> FPAlgebra {
        f.target().clone()
    }

    fn identity(&self, x: &FPAlgebra) -> AlgebraHom {
        AlgebraHom::identity(x)
    }

    fn omega(&self, x: &FPAlgebra) -> Result<CotangentData<FPModule, RingDerivation>> {
        let omega = kaehler(x)?;
        let unit = RingDerivation {
            values: (0..x.nvars()).map(|i| omega.basis_vec(i)).collect(),
        };
        Ok(CotangentData { omega, unit })
    }

    fn derivations(&self, x: &FPAlgebra, b: &FPModule) -> Result<RingDerivations> {
        Ok(RingDerivations {
            module: b.clone(),
            basis: hom_from_omega_basis(x, b)?,
        })
    }

    fn zero_test_derivation(&self, _x: &FPAlgebra, b: &FPModule, theta: &RingDerivation) -> Result<bool> {
        Ok(theta.values.iter().all(|v| b.is_zero_element(v)))
    }

    /// Restriction of scalars, for finite-dimensional modules only: the
    /// result is presented on a `k`-basis with the action of each variable.
    fn pullback(&self, f: &AlgebraHom, b: &FPModule) -> Result<FPModule> {
        let a = f.source();
        let kb = b.k_basis().ok_or_else(|| {
            Error::Unsupported("pullback is implemented for finite-dimensional modules".into())
        })?;
        let d = kb.len();
        let field = a.field();
        let unit = |s: usize| {
            let mut e = vec![BigRational::from_integer(0.into()); d];
            e[s] = field.from_int(1);
            e
        };
        let mut rels = Vec::new();
        for i in 0..a.nvars() {
            let xi = &f.images()[i];
            for s in 0..d {
                let img = b.scale(xi, &b.from_coordinates(&kb, &unit(s)));
                let coords = b.coordinates(&kb, &img);
                let mut rel = vec![a.zero(); d];
                rel[s] = a.var(i);
                for (t, c) in coords.into_iter().enumerate() {
                    rel[t] = rel[t].sub(&Polynomial::constant(field, a.nvars(), c));
                }
                rels.push(rel);
            }
        }
        let gens = kb
            .iter()
            .map(|(pos, m)| {
                let mut e = b.zero_vec();
                e[*pos].add_term(m.clone(), field.from_int(1));
                format!("[{}]", b.format_vec(&e))
            })
            .collect();
        FPModule::new(a.clone(), gens, rels)
    }

    fn pushforward(&self, f: &AlgebraHom, a: &FPModule) -> Result<FPModule> {
        a.base_change(f)
    }

    /// `dx_i ⊗ 1 ↦ d(f(x_i))`
    fn delta_tilde(&self, f: &AlgebraHom) -> Result<ModuleHom> {
        let source = kaehler(f.source())?.base_change(f)?;
        let target = kaehler(f.target())?;
        let images = f
            .images()
            .iter()
            .map(|p| universal_derivation(f.target(), p))
            .collect();
        ModuleHom::new(source, target, images)
    }

    fn omega_rel(&self, f: &AlgebraHom) -> Result<CotangentData<FPModule, RingDerivation>> {
        let (omega, images) = self.relative(f)?;
        Ok(CotangentData {
            omega,
            unit: RingDerivation { values: images },
        })
    }

    fn gamma(&self, f: &AlgebraHom) -> Result<ModuleHom> {
        let (rel, images) = self.relative(f)?;
        ModuleHom::new(kaehler(f.target())?, rel, images)
    }

    fn compose_homs(&self, second: &ModuleHom, first: &ModuleHom) -> Result<ModuleHom> {
        second.compose(first)
    }

    fn is_identity_hom(&self, h: &ModuleHom) -> Result<bool> {
        Ok(h.is_identity())
    }

    fn is_epi_hom(&self, h: &ModuleHom) -> Result<bool> {
        h.is_epi()
    }

    fn is_mono_hom(&self, h: &ModuleHom) -> Result<bool> {
        h.is_mono()
    }

    fn check_right_exact(&self, r: &ModuleHom, s: &ModuleHom) -> Result<SequenceVerdict> {
        r.check_right_exact(s)
    }

    /// Surjections and localizations.
    fn is_epimorphism(&self, f: &AlgebraHom) -> Result<bool> {
        Ok(f.is_surjective()? || f.is_localization()?)
    }

    fn coproduct(&self, z: &FPAlgebra, x: &FPAlgebra) -> Result<Coproduct<FPAlgebra, AlgebraHom>> {
        let (object, first, second) = tensor(z, x)?;
        Ok(Coproduct {
            object,
            first,
            second,
        })
    }

    /// The forward map sends generators bijectively onto generators; the
    /// inverse reverses that assignment.
    fn comparison_inverse(
        &self,
        _coproduct: &Coproduct<FPAlgebra, AlgebraHom>,
        forward: &ModuleHom,
    ) -> Result<ModuleHom> {
        let (src, tgt) = (forward.source(), forward.target());
        let mut images = Vec::with_capacity(tgt.rank());
        for j in 0..tgt.rank() {
            let e = tgt.normal_form(&tgt.basis_vec(j));
            let i = forward
                .images()
                .iter()
                .position(|v| *v == e)
                .ok_or_else(|| {
                    Error::CoproductFailure(format!(
                        "generator {} is not the image of a generator",
                        tgt.gens()[j]
                    ))
                })?;
            images.push(src.basis_vec(i));
        }
        ModuleHom::new(tgt.clone(), src.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beck::{check_theorem1, check_theorem2};
    use crate::ring::algebra::catalog;

    #[test]
    fn kaehler_classics() {
        assert_eq!(kaehler(&catalog::line()).unwrap().describe(), "gens dx");
        assert_eq!(
            kaehler(&catalog::cusp()).unwrap().describe(),
            "gens dx,dy; rel -3x^2*dx + 2y*dy"
        );
        let dual = kaehler(&catalog::dual_numbers()).unwrap();
        assert_eq!(dual.describe(), "gens dx; rel 2x*dx");
        assert_eq!(dual.dimension(), Some(1));
    }

    #[test]
    fn relative_classics() {
        let ctx = RingContext;
        let homs = catalog::homs();
        let cusp = ctx.omega_rel(&homs[1].1).unwrap().omega;
        assert_eq!(cusp.describe(), "gens dy; rel 2y*dy");
        let loc = ctx.omega_rel(&homs[2].1).unwrap().omega;
        assert!(loc.is_zero());
    }

    #[test]
    fn theorems_on_catalog() {
        let ctx = RingContext;
        for (name, f) in catalog::homs() {
            assert!(check_theorem1(&ctx, &f).unwrap().exact, "{name}");
        }
        let homs = catalog::homs();
        let v = check_theorem2(&ctx, &homs[2].1).unwrap();
        assert!(v.epi && v.iso);
        let v = check_theorem2(&ctx, &homs[0].1).unwrap();
        assert!(v.epi && !v.iso);
        assert!(matches!(check_theorem2(&ctx, &homs[1].1), Err(Error::NotAnEpi(_))));
    }

    #[test]
    fn base_change() {
        let ctx = RingContext;
        for (name, a, k) in catalog::base_change_pairs() {
            assert!(ctx.base_change_check(&a, &k).unwrap().iso, "{name}");
        }
    }

    #[test]
    fn derivations_of_dual_numbers() {
        let ctx = RingContext;
        let a = catalog::dual_numbers();
        let m = FPModule::free_rank(&a, 1).unwrap();
        let der = ctx.derivations(&a, &m).unwrap();
        // D(x) must satisfy 2x·D(x) = 0, so D(x) ∈ (x)
        assert_eq!(der.dimension(), Some(1));
        let d = &der.basis.unwrap()[0];
        assert!(is_derivation(&a, &m, d));
        assert!(!ctx.zero_test_derivation(&a, &m, d).unwrap());
    }

    #[test]
    fn pullback_restricts_scalars() {
        let ctx = RingContext;
        let f = &catalog::homs()[0].1;
        let m = FPModule::free_rank(f.target(), 1).unwrap();
        let p = ctx.pullback(f, &m).unwrap();
        assert_eq!(p.dimension(), Some(2));
        let g = &catalog::homs()[1].1;
        let m = FPModule::free_rank(g.target(), 1).unwrap();
        assert!(matches!(ctx.pullback(g, &m), Err(Error::Unsupported(_))));
    }
}
