//! Exact integer linear algebra: finitely generated abelian groups, their
//! homomorphisms, kernels, cokernels and right-exactness checks.

mod group;
mod hom;
mod matrix;
mod snf;

pub use group::{DirectSum, FGAbGroup};
pub use hom::{
    check_right_exact, classify_hom, cokernel, hom_to_flat, integer_kernel, kernel, lattice_basis,
    matrix_space, solve_integer, AbHom, HomClass, HomGroup,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};

impl FGAbGroup {
    /// SNF-based canonicalization: the diagonal presentation on the invariant
    /// factors, with mutually inverse isomorphisms to and from `self`.
    pub fn canonicalize(&self) -> (FGAbGroup, AbHom, AbHom) {
        let canon = FGAbGroup::from_invariant_factors(self.invariant_factors());
        let to_cols: Vec<_> = (0..self.ngens())
            .map(|j| self.canonical_coords(&self.generator(j)))
            .collect();
        let to = AbHom::new(
            self.clone(),
            canon.clone(),
            IntMatrix::from_cols(canon.ngens(), &to_cols).expect("canonical columns"),
        )
        .expect("canonical map is well defined");
        let from_cols: Vec<_> = (0..canon.ngens())
            .map(|k| self.from_canonical(&canon.generator(k)))
            .collect();
        let from = AbHom::new(
            canon.clone(),
            self.clone(),
            IntMatrix::from_cols(self.ngens(), &from_cols).expect("canonical columns"),
        )
        .expect("inverse canonical map is well defined");
        (canon, to, from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn canonicalize_is_isomorphism() {
        let g = FGAbGroup::new(3, IntMatrix::from_i64(3, 2, &[2, 0, 4, 6, 0, 0])).unwrap();
        let (c, to, from) = g.canonicalize();
        assert_eq!(c.invariant_factors(), g.invariant_factors());
        assert!(from.compose(&to).unwrap().is_identity());
        assert!(to.compose(&from).unwrap().is_identity());
        assert_eq!(c.invariant_factors(), &[BigInt::from(2), BigInt::from(6), BigInt::from(0)]);
    }
}
