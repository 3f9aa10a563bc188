//! Beck modules, cotangent modules `Ω_x`, relative differentials `Ω_f` and
//! the comparison maps between them, computed in three concrete categories:
//! finite sets, finite commutative monoids, and finitely presented
//! commutative algebras over `Q` or `F_p`.

pub mod abgrp;
pub mod beck;
pub mod error;
pub mod io;
pub mod monoid;
pub mod oracle;
pub mod ring;
pub mod set;
pub mod suite;

pub use error::{Error, Result};
