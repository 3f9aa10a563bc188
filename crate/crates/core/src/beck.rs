//! The contract shared by the three concrete Beck contexts, and the exactness
//! checkers written once against it.
//!
//! A context supplies its cotangent module `omega(x)`, the change-of-base
//! functors, the comparison map `delta_tilde(f): f_!(Ω_x) -> Ω_y`, the
//! relative module `Ω_f` (computed directly over `y`) with its quotient map
//! `gamma(f): Ω_y -> Ω_f`, and the exactness primitives of its additive
//! category. The theorem checkers only compose these.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};

/// One fiber element per base point, in fiber generator coordinates.
pub type Section = Vec<Vec<BigInt>>;

/// Which condition of right exactness failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailedAt {
    CompositeNonzero,
    NotEpi,
    InducedNotIso,
}

/// Where a failure was observed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Witness {
    pub fn generator(j: usize) -> Self {
        Witness {
            generator: Some(j),
            ..Default::default()
        }
    }

    pub fn detail(msg: impl Into<String>) -> Self {
        Witness {
            detail: Some(msg.into()),
            ..Default::default()
        }
    }

    pub fn in_fiber(mut self, label: impl Into<String>) -> Self {
        self.fiber = Some(label.into());
        self
    }
}

/// Outcome of a right-exactness check `X -> Y -> Z -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceVerdict {
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_at: Option<FailedAt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl SequenceVerdict {
    pub fn exact() -> Self {
        SequenceVerdict {
            exact: true,
            failed_at: None,
            witness: None,
        }
    }

    pub fn failed(at: FailedAt, witness: Witness) -> Self {
        SequenceVerdict {
            exact: false,
            failed_at: Some(at),
            witness: Some(witness),
        }
    }

    /// Tags the witness (if any) with a fiber label.
    pub fn in_fiber(mut self, label: &str) -> Self {
        if let Some(w) = self.witness.take() {
            self.witness = Some(w.in_fiber(label));
        }
        self
    }
}

/// Result of the epimorphism theorem check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EpiVerdict {
    pub epi: bool,
    pub iso: bool,
}

/// Result of the coproduct comparison check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub iso: bool,
    /// `inverse ∘ forward` is the identity of `f_!(Ω_x)`.
    pub left_inverse: bool,
    /// `forward ∘ inverse` is the identity of `Ω_g`.
    pub right_inverse: bool,
}

/// The cotangent module together with its universal derivation (the unit).
#[derive(Clone, Debug)]
pub struct CotangentData<M, D> {
    pub omega: M,
    pub unit: D,
}

/// `y = z ⊔ x` with its two injections.
#[derive(Clone, Debug)]
pub struct Coproduct<O, F> {
    pub object: O,
    /// `g: z -> y`
    pub first: F,
    /// `f: x -> y`
    pub second: F,
}

pub trait BeckContext {
    type Object;
    type Morphism;
    type Module;
    type Hom;
    /// A single derivation datum (a section of a Beck module).
    type Derivation;
    /// The group (or module) of all derivations.
    type Derivations;

    fn morphism_source(&self, f: &Self::Morphism) -> Self::Object;
    fn morphism_target(&self, f: &Self::Morphism) -> Self::Object;
    fn identity(&self, x: &Self::Object) -> Self::Morphism;

    fn omega(&self, x: &Self::Object) -> Result<CotangentData<Self::Module, Self::Derivation>>;
    fn derivations(&self, x: &Self::Object, b: &Self::Module) -> Result<Self::Derivations>;
    /// True iff the section encoding `theta` is the neutral section of `b`.
    fn zero_test_derivation(
        &self,
        x: &Self::Object,
        b: &Self::Module,
        theta: &Self::Derivation,
    ) -> Result<bool>;

    fn pullback(&self, f: &Self::Morphism, b: &Self::Module) -> Result<Self::Module>;
    fn pushforward(&self, f: &Self::Morphism, a: &Self::Module) -> Result<Self::Module>;

    /// `f_!(Ω_x) -> Ω_y`
    fn delta_tilde(&self, f: &Self::Morphism) -> Result<Self::Hom>;
    /// `Ω_f`, realized over the target of `f`.
    fn omega_rel(&self, f: &Self::Morphism) -> Result<CotangentData<Self::Module, Self::Derivation>>;
    /// `Ω_y -> Ω_f`
    fn gamma(&self, f: &Self::Morphism) -> Result<Self::Hom>;

    /// `second ∘ first`
    fn compose_homs(&self, second: &Self::Hom, first: &Self::Hom) -> Result<Self::Hom>;
    fn is_identity_hom(&self, h: &Self::Hom) -> Result<bool>;
    fn is_epi_hom(&self, h: &Self::Hom) -> Result<bool>;
    fn is_mono_hom(&self, h: &Self::Hom) -> Result<bool>;
    fn check_right_exact(&self, r: &Self::Hom, s: &Self::Hom) -> Result<SequenceVerdict>;

    /// Whether `f` belongs to the class of epimorphisms this context can
    /// recognize (the precondition of [`check_theorem2`]).
    fn is_epimorphism(&self, f: &Self::Morphism) -> Result<bool>;
    fn coproduct(
        &self,
        z: &Self::Object,
        x: &Self::Object,
    ) -> Result<Coproduct<Self::Object, Self::Morphism>>;
    /// An inverse of the comparison `f_!(Ω_x) -> Ω_g` for a coproduct
    /// `y = z ⊔ x`, built by the context; the checker verifies it.
    fn comparison_inverse(
        &self,
        coproduct: &Coproduct<Self::Object, Self::Morphism>,
        forward: &Self::Hom,
    ) -> Result<Self::Hom>;
}

/// Right exactness of `f_!(Ω_x) -> Ω_y -> Ω_f -> 0`.
pub fn check_theorem1<C: BeckContext>(ctx: &C, f: &C::Morphism) -> Result<SequenceVerdict> {
    let delta = ctx.delta_tilde(f)?;
    let gamma = ctx.gamma(f)?;
    ctx.check_right_exact(&delta, &gamma)
}

/// For an epimorphism `f`, `delta_tilde(f)` must be an epimorphism.
pub fn check_theorem2<C: BeckContext>(ctx: &C, f: &C::Morphism) -> Result<EpiVerdict> {
    if !ctx.is_epimorphism(f)? {
        return Err(Error::NotAnEpi(
            "the morphism is not in the recognized class of epimorphisms".into(),
        ));
    }
    let delta = ctx.delta_tilde(f)?;
    let epi = ctx.is_epi_hom(&delta)?;
    let iso = epi && ctx.is_mono_hom(&delta)?;
    Ok(EpiVerdict { epi, iso })
}

/// For `y = z ⊔ x` with injections `g: z -> y`, `f: x -> y`: the composite
/// `gamma(g) ∘ delta_tilde(f): f_!(Ω_x) -> Ω_g` is an isomorphism, shown by
/// an explicit inverse.
pub fn check_theorem3<C: BeckContext>(
    ctx: &C,
    x: &C::Object,
    z: &C::Object,
) -> Result<IsoVerdict> {
    let cp = ctx.coproduct(z, x)?;
    let forward = ctx.compose_homs(&ctx.gamma(&cp.first)?, &ctx.delta_tilde(&cp.second)?)?;
    let inverse = ctx.comparison_inverse(&cp, &forward)?;
    let left_inverse = ctx.is_identity_hom(&ctx.compose_homs(&inverse, &forward)?)?;
    let right_inverse = ctx.is_identity_hom(&ctx.compose_homs(&forward, &inverse)?)?;
    Ok(IsoVerdict {
        iso: left_inverse && right_inverse,
        left_inverse,
        right_inverse,
    })
}

/// `gamma(f)` is always an epimorphism.
pub fn check_gamma_epi<C: BeckContext>(ctx: &C, f: &C::Morphism) -> Result<bool> {
    ctx.is_epi_hom(&ctx.gamma(f)?)
}
