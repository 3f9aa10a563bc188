//! Commutative monoids. A Beck module over `X` is a family of abelian groups
//! `A_x` with translation maps `h_x: A_y -> A_{x*y}`.

mod base;
mod context;
mod module;

pub use base::{catalog, FinCommMonoid, MonoidHom};
pub use context::{MonDerivations, MonoidContext, NatOmega};
pub use module::{MonBeckHom, MonBeckModule, MonHomGroup};
