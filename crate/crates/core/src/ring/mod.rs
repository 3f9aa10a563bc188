//! Finitely presented commutative algebras over `Q` or `F_p`.

pub mod algebra;
pub mod context;
pub mod groebner;
pub mod linalg;
pub mod module;
pub mod parse;
pub mod poly;
pub mod square_zero;

pub use algebra::{catalog, tensor, AlgebraHom, FPAlgebra};
pub use context::{kaehler, RingContext, RingDerivation, RingDerivations};
pub use groebner::{GroebnerBasis, Guard, ModVec};
pub use module::{FPModule, ModuleHom};
pub use poly::{Field, Monomial, MonomialOrder, Polynomial};
