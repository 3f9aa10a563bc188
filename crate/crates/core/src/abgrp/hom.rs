use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::group::{DirectSum, FGAbGroup};
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::beck::{FailedAt, SequenceVerdict, Witness};
use crate::error::{Error, Result};

/// Homomorphism of finitely generated abelian groups, given by its action on
/// generators: column `j` of `matrix` is the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    source: FGAbGroup,
    target: FGAbGroup,
    matrix: IntMatrix,
}

/// Mono/epi/iso flags of a homomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomClass {
    pub is_mono: bool,
    pub is_epi: bool,
    pub is_iso: bool,
}

impl AbHom {
    pub fn new(source: FGAbGroup, target: FGAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::IllFormedHom(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let h = AbHom {
            source,
            target,
            matrix,
        };
        let images = h.matrix.checked_mul(h.source.relations())?;
        for j in 0..images.cols() {
            if !h.target.is_zero_element(&images.column(j)) {
                return Err(Error::IllFormedHom(format!(
                    "source relation {j} does not map into the target relations"
                )));
            }
        }
        Ok(h)
    }

    pub(crate) fn new_unchecked(source: FGAbGroup, target: FGAbGroup, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.ngens());
        debug_assert_eq!(matrix.cols(), source.ngens());
        AbHom {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(g: &FGAbGroup) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.ngens()))
    }

    pub fn zero(source: &FGAbGroup, target: &FGAbGroup) -> Self {
        Self::new_unchecked(
            source.clone(),
            target.clone(),
            IntMatrix::zeros(target.ngens(), source.ngens()),
        )
    }

    pub fn source(&self) -> &FGAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbHom) -> Result<AbHom> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch(
                "composition: target of the first map is not the source of the second".into(),
            ));
        }
        Ok(Self::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            &self.matrix * &first.matrix,
        ))
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom> {
        self.same_ends(other)?;
        let data = self
            .matrix
            .entries()
            .iter()
            .zip(other.matrix.entries())
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            IntMatrix::from_data(self.matrix.rows(), self.matrix.cols(), data)?,
        ))
    }

    fn same_ends(&self, other: &AbHom) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("homomorphisms between different groups".into()));
        }
        Ok(())
    }

    /// Whether the map is zero, i.e. every generator lands in the target relations.
    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }

    /// Equality as homomorphisms (not as matrices).
    pub fn equals(&self, other: &AbHom) -> bool {
        if self.same_ends(other).is_err() {
            return false;
        }
        (0..self.matrix.cols()).all(|j| {
            self.target
                .elements_equal(&self.matrix.column(j), &other.matrix.column(j))
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.equals(&AbHom::identity(&self.source))
    }

    /// Some `v` with `self(v) = t` in the target, if `t` is in the image.
    pub fn preimage(&self, t: &[BigInt]) -> Option<Vec<BigInt>> {
        let stacked = self.matrix.hcat(self.target.relations()).ok()?;
        let x = solve_integer(&stacked, t)?;
        Some(x[..self.source.ngens()].to_vec())
    }

    pub fn cokernel(&self) -> (FGAbGroup, AbHom) {
        let rel = self
            .target
            .relations()
            .hcat(&self.matrix)
            .expect("row counts agree");
        let c = FGAbGroup::new(self.target.ngens(), rel).expect("cokernel presentation");
        let proj = AbHom::new_unchecked(
            self.target.clone(),
            c.clone(),
            IntMatrix::identity(self.target.ngens()),
        );
        (c, proj)
    }

    /// Kernel via the integer kernel of `[matrix | target relations]`,
    /// projected to source coordinates and taken modulo source relations.
    pub fn kernel(&self) -> (FGAbGroup, AbHom) {
        let n = self.source.ngens();
        let stacked = self
            .matrix
            .hcat(self.target.relations())
            .expect("row counts agree");
        let ker = integer_kernel(&stacked);
        let projected = ker.submatrix_rows(0..n);
        let gens = lattice_basis(&projected);
        let r = gens.cols();
        let lifted = gens.hcat(self.source.relations()).expect("row counts agree");
        let rel_ker = integer_kernel(&lifted).submatrix_rows(0..r);
        let rel_cols: Vec<Vec<BigInt>> = rel_ker
            .columns()
            .into_iter()
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .collect();
        let k = FGAbGroup::from_relation_columns(r, &rel_cols).expect("kernel presentation");
        let incl = AbHom::new_unchecked(k.clone(), self.source.clone(), gens);
        (k, incl)
    }

    pub fn is_epi(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_mono(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn classify(&self) -> HomClass {
        let is_mono = self.is_mono();
        let is_epi = self.is_epi();
        HomClass {
            is_mono,
            is_epi,
            is_iso: is_mono && is_epi,
        }
    }

    /// Two-sided inverse when the map is an isomorphism.
    pub fn inverse(&self) -> Option<AbHom> {
        if !self.is_mono() {
            return None;
        }
        let cols = (0..self.target.ngens())
            .map(|j| self.preimage(&self.target.generator(j)))
            .collect::<Option<Vec<_>>>()?;
        let m = IntMatrix::from_cols(self.source.ngens(), &cols).ok()?;
        AbHom::new(self.target.clone(), self.source.clone(), m).ok()
    }
}

pub fn classify_hom(h: &AbHom) -> HomClass {
    h.classify()
}

pub fn cokernel(h: &AbHom) -> (FGAbGroup, AbHom) {
    h.cokernel()
}

pub fn kernel(h: &AbHom) -> (FGAbGroup, AbHom) {
    h.kernel()
}

/// Right exactness of `X --r--> Y --s--> Z --> 0` by the cokernel criterion:
/// `s∘r = 0`, `s` epi, and the induced `coker(r) -> Z` is an isomorphism.
pub fn check_right_exact(r: &AbHom, s: &AbHom) -> Result<SequenceVerdict> {
    if r.target() != s.source() {
        return Err(Error::ShapeMismatch(
            "target of the first map differs from source of the second".into(),
        ));
    }
    let composite = s.compose(r)?;
    for j in 0..composite.matrix().cols() {
        if !s.target().is_zero_element(&composite.matrix().column(j)) {
            return Ok(SequenceVerdict::failed(
                FailedAt::CompositeNonzero,
                Witness::generator(j),
            ));
        }
    }
    for j in 0..s.target().ngens() {
        if s.preimage(&s.target().generator(j)).is_none() {
            return Ok(SequenceVerdict::failed(FailedAt::NotEpi, Witness::generator(j)));
        }
    }
    let (c, _) = r.cokernel();
    let induced = AbHom::new(c, s.target().clone(), s.matrix().clone())?;
    let (k, incl) = induced.kernel();
    if !k.is_trivial() {
        let j = (0..k.ngens())
            .find(|&j| !k.is_zero_element(&k.generator(j)))
            .unwrap_or(0);
        let v = incl.apply(&k.generator(j));
        return Ok(SequenceVerdict::failed(
            FailedAt::InducedNotIso,
            Witness::detail(format!("element {v:?} of the middle term lies in ker s but not in im r")),
        ));
    }
    Ok(SequenceVerdict::exact())
}

/// Basis (as columns) of the integer kernel of `a`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let f = smith_normal_form(a);
    f.v.submatrix_cols(f.rank..a.cols())
}

/// A basis of the lattice spanned by the columns of `p`.
pub fn lattice_basis(p: &IntMatrix) -> IntMatrix {
    let f = smith_normal_form(p);
    let mut out = IntMatrix::zeros(p.rows(), f.rank);
    for i in 0..f.rank {
        let d = &f.s[(i, i)];
        for r in 0..p.rows() {
            out[(r, i)] = &f.u_inv[(r, i)] * d;
        }
    }
    out
}

/// An integer solution of `a x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows(), "right-hand side length");
    let f = smith_normal_form(a);
    let ub = f.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, v) in ub.iter().enumerate() {
        if i < f.rank {
            let d = &f.s[(i, i)];
            if !v.is_multiple_of(d) {
                return None;
            }
            y[i] = v / d;
        } else if !v.is_zero() {
            return None;
        }
    }
    Some(f.v.mul_vec(&y))
}

/// `Hom(A, B)` presented as a subgroup of the matrix space `B^{ngens(A)}`.
///
/// Coordinate `j * ngens(B) + i` of the matrix space is entry `(i, j)` of a
/// homomorphism matrix.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub group: FGAbGroup,
    /// Inclusion of `group` into the matrix space.
    pub incl: AbHom,
    source: FGAbGroup,
    target: FGAbGroup,
}

impl HomGroup {
    pub fn new(a: &FGAbGroup, b: &FGAbGroup) -> Self {
        let space = matrix_space(a, b);
        let (na, nb) = (a.ngens(), b.ngens());
        let ra = a.relations().cols();
        let copies: Vec<&FGAbGroup> = std::iter::repeat_n(b, ra).collect();
        let q = DirectSum::new(&copies).group;
        let mut phi = IntMatrix::zeros(nb * ra, nb * na);
        for l in 0..ra {
            for j in 0..na {
                let c = &a.relations()[(j, l)];
                if c.is_zero() {
                    continue;
                }
                for i in 0..nb {
                    phi[(l * nb + i, j * nb + i)] = c.clone();
                }
            }
        }
        let phi = AbHom::new_unchecked(space, q, phi);
        let (group, incl) = phi.kernel();
        HomGroup {
            group,
            incl,
            source: a.clone(),
            target: b.clone(),
        }
    }

    /// The homomorphism represented by an element of `group`.
    pub fn decode(&self, element: &[BigInt]) -> AbHom {
        let flat = self.incl.apply(element);
        matrix_to_hom(&flat, &self.source, &self.target)
    }

    /// Coordinates in `group` of a homomorphism `A -> B`.
    pub fn encode(&self, h: &AbHom) -> Option<Vec<BigInt>> {
        if h.source() != &self.source || h.target() != &self.target {
            return None;
        }
        self.incl.preimage(&hom_to_flat(h))
    }
}

/// The group `B^{ngens(A)}` of all generator assignments `A -> B` up to relations of `B`.
pub fn matrix_space(a: &FGAbGroup, b: &FGAbGroup) -> FGAbGroup {
    let copies: Vec<&FGAbGroup> = std::iter::repeat_n(b, a.ngens()).collect();
    DirectSum::new(&copies).group
}

pub fn hom_to_flat(h: &AbHom) -> Vec<BigInt> {
    let (nb, na) = (h.matrix().rows(), h.matrix().cols());
    let mut flat = vec![BigInt::zero(); nb * na];
    for j in 0..na {
        for i in 0..nb {
            flat[j * nb + i] = h.matrix()[(i, j)].clone();
        }
    }
    flat
}

pub(crate) fn matrix_to_hom(flat: &[BigInt], a: &FGAbGroup, b: &FGAbGroup) -> AbHom {
    let (na, nb) = (a.ngens(), b.ngens());
    let mut m = IntMatrix::zeros(nb, na);
    for j in 0..na {
        for i in 0..nb {
            m[(i, j)] = flat[j * nb + i].clone();
        }
    }
    AbHom::new_unchecked(a.clone(), b.clone(), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FGAbGroup {
        FGAbGroup::free(1)
    }

    fn scalar(s: &FGAbGroup, t: &FGAbGroup, k: i64) -> AbHom {
        AbHom::new(s.clone(), t.clone(), IntMatrix::from_i64(1, 1, &[k])).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = scalar(&z(), &z(), 2).classify();
        assert!(c.is_mono && !c.is_epi);
        let c = scalar(&z(), &FGAbGroup::cyclic(2), 1).classify();
        assert!(c.is_epi && !c.is_mono);
        let z6 = FGAbGroup::cyclic(6);
        assert!(AbHom::identity(&z6).classify().is_iso);
    }

    #[test]
    fn ill_formed_rejected() {
        let err = AbHom::new(FGAbGroup::cyclic(2), z(), IntMatrix::from_i64(1, 1, &[1]));
        assert!(matches!(err, Err(Error::IllFormedHom(_))));
        let err = AbHom::new(FGAbGroup::cyclic(4), FGAbGroup::cyclic(6), IntMatrix::from_i64(1, 1, &[1]));
        assert!(err.is_err());
        assert!(AbHom::new(FGAbGroup::cyclic(4), FGAbGroup::cyclic(6), IntMatrix::from_i64(1, 1, &[3])).is_ok());
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(scalar(&z(), &z(), 2).cokernel().0.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(scalar(&z(), &z(), 0).cokernel().0.invariant_factors(), &[BigInt::from(0)]);
        let f2 = FGAbGroup::free(2);
        let d = AbHom::new(f2.clone(), f2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 3])).unwrap();
        assert_eq!(d.cokernel().0.invariant_factors(), &[BigInt::from(6)]);
    }

    #[test]
    fn kernel_examples() {
        let (k, incl) = scalar(&z(), &FGAbGroup::cyclic(2), 1).kernel();
        assert_eq!(k.invariant_factors(), &[BigInt::from(0)]);
        // the kernel is generated by 2 (up to sign)
        let image = incl.apply(&k.generator(0));
        assert_eq!(image.len(), 1);
        assert_eq!(image[0].magnitude(), &num_bigint::BigUint::from(2u32));

        let z4 = FGAbGroup::cyclic(4);
        assert!(AbHom::identity(&z4).kernel().0.is_trivial());

        // x3 on Z/6, brute force: 3x = 0 mod 6 exactly for x in {0, 2, 4}
        let brute: Vec<i64> = (0..6).filter(|x| (3 * x) % 6 == 0).collect();
        assert_eq!(brute, vec![0, 2, 4]);
        let z6 = FGAbGroup::cyclic(6);
        let (k, incl) = scalar(&z6, &z6, 3).kernel();
        assert_eq!(k.order(), Some(BigInt::from(brute.len())));
        assert_eq!(k.invariant_factors(), &[BigInt::from(3)]);
        for e in k.elements(10).unwrap() {
            let v = incl.apply(&e);
            assert!(z6.is_zero_element(&[&v[0] * 3]));
        }
    }

    #[test]
    fn right_exact_examples() {
        let z2 = FGAbGroup::cyclic(2);
        let v = check_right_exact(&scalar(&z(), &z(), 2), &scalar(&z(), &z2, 1)).unwrap();
        assert!(v.exact);
        let v = check_right_exact(&scalar(&z(), &z(), 0), &scalar(&z(), &z(), 1)).unwrap();
        assert!(v.exact);
        let v = check_right_exact(&scalar(&z(), &z(), 2), &scalar(&z(), &z(), 1)).unwrap();
        assert_eq!(v.failed_at, Some(FailedAt::CompositeNonzero));
        let v = check_right_exact(&scalar(&z(), &z(), 0), &scalar(&z(), &z(), 2)).unwrap();
        assert_eq!(v.failed_at, Some(FailedAt::NotEpi));
        let v = check_right_exact(&scalar(&z(), &z(), 0), &scalar(&z(), &z2, 1)).unwrap();
        assert_eq!(v.failed_at, Some(FailedAt::InducedNotIso));
        assert!(check_right_exact(&scalar(&z(), &z(), 1), &scalar(&z2, &z2, 1)).is_err());
    }

    #[test]
    fn hom_group_structure() {
        // Hom(Z/4, Z/6) = Z/2, Hom(Z, Z/6) = Z/6, Hom(Z/6, Z) = 0
        let z4 = FGAbGroup::cyclic(4);
        let z6 = FGAbGroup::cyclic(6);
        assert_eq!(HomGroup::new(&z4, &z6).group.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(HomGroup::new(&z(), &z6).group.invariant_factors(), &[BigInt::from(6)]);
        assert!(HomGroup::new(&z6, &z()).group.is_trivial());
        let h = HomGroup::new(&z4, &z6);
        for e in h.group.elements(10).unwrap() {
            let f = h.decode(&e);
            assert!(AbHom::new(z4.clone(), z6.clone(), f.matrix().clone()).is_ok());
            let back = h.encode(&f).unwrap();
            assert!(h.group.elements_equal(&back, &e));
        }
    }

    #[test]
    fn inverse_of_iso() {
        let g = FGAbGroup::from_relation_columns(
            2,
            &[vec![BigInt::from(2), BigInt::from(4)], vec![BigInt::from(6), BigInt::from(8)]],
        )
        .unwrap();
        let c = FGAbGroup::from_invariant_factors(g.invariant_factors());
        let m = IntMatrix::from_cols(
            c.ngens(),
            &(0..2).map(|j| g.canonical_coords(&g.generator(j))).collect::<Vec<_>>(),
        )
        .unwrap();
        let iso = AbHom::new(g.clone(), c, m).unwrap();
        assert!(iso.classify().is_iso);
        let inv = iso.inverse().unwrap();
        assert!(inv.compose(&iso).unwrap().is_identity());
        assert!(iso.compose(&inv).unwrap().is_identity());
        assert!(scalar(&z(), &z(), 2).inverse().is_none());
    }
}
