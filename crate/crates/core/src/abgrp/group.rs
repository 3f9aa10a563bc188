use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, SmithForm};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^ngens / <relation columns>`.
///
/// The Smith form of the relation matrix is computed once at construction and
/// drives membership tests, canonical coordinates and invariant factors.
#[derive(Clone)]
pub struct FGAbGroup {
    ngens: usize,
    relations: IntMatrix,
    cache: Arc<Cache>,
}

struct Cache {
    smith: SmithForm,
    /// One entry per generator of the Smith basis: the diagonal entry, or 0
    /// past the rank.
    diagonal: Vec<BigInt>,
    /// Positions of `diagonal` that are not 1, i.e. carry a canonical coordinate.
    nontrivial: Vec<usize>,
    invariant_factors: Vec<BigInt>,
}

impl FGAbGroup {
    /// `relations` has `ngens` rows; each column is a relator.
    pub fn new(ngens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != ngens {
            return Err(Error::ShapeMismatch(format!(
                "relation matrix has {} rows for {ngens} generators",
                relations.rows()
            )));
        }
        let smith = smith_normal_form(&relations);
        let diagonal: Vec<BigInt> = (0..ngens)
            .map(|i| if i < smith.rank { smith.s[(i, i)].clone() } else { BigInt::zero() })
            .collect();
        let nontrivial: Vec<usize> = (0..ngens).filter(|&i| !diagonal[i].is_one()).collect();
        let invariant_factors = nontrivial.iter().map(|&i| diagonal[i].clone()).collect();
        Ok(FGAbGroup {
            ngens,
            relations,
            cache: Arc::new(Cache {
                smith,
                diagonal,
                nontrivial,
                invariant_factors,
            }),
        })
    }

    pub fn from_relation_columns(ngens: usize, cols: &[Vec<BigInt>]) -> Result<Self> {
        Self::new(ngens, IntMatrix::from_cols(ngens, cols)?)
    }

    pub fn zero() -> Self {
        Self::new(0, IntMatrix::zeros(0, 0)).expect("empty presentation")
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0)).expect("free presentation")
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the zero group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_invariant_factors(&[BigInt::from(n)])
    }

    /// Diagonal presentation `Z/d_1 + ... + Z/d_k`; factors equal to 1 are skipped.
    pub fn from_invariant_factors(factors: &[BigInt]) -> Self {
        let kept: Vec<BigInt> = factors.iter().filter(|d| !d.is_one()).map(|d| d.abs()).collect();
        let n = kept.len();
        let cols: Vec<Vec<BigInt>> = kept
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); n];
                c[i] = d.clone();
                c
            })
            .collect();
        Self::from_relation_columns(n, &cols).expect("diagonal presentation")
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn smith(&self) -> &SmithForm {
        &self.cache.smith
    }

    /// Divisor chain with unit factors dropped; `0` marks a free summand and
    /// sorts last. Empty means the zero group.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.cache.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.cache.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.cache.invariant_factors.iter().all(|d| !d.is_zero())
    }

    pub fn free_rank(&self) -> usize {
        self.cache.invariant_factors.iter().filter(|d| d.is_zero()).count()
    }

    /// Cardinality, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.is_finite() {
            Some(self.cache.invariant_factors.iter().product())
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &FGAbGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    fn check_len(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.ngens {
            return Err(Error::ShapeMismatch(format!(
                "element has {} coordinates, group has {} generators",
                v.len(),
                self.ngens
            )));
        }
        Ok(())
    }

    /// Coordinates with respect to the cyclic decomposition given by
    /// `invariant_factors`; torsion coordinates are reduced into `[0, d)`.
    pub fn canonical_coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ngens, "element length");
        let w = self.cache.smith.u.mul_vec(v);
        self.cache
            .nontrivial
            .iter()
            .map(|&i| {
                let d = &self.cache.diagonal[i];
                if d.is_zero() {
                    w[i].clone()
                } else {
                    w[i].mod_floor(d)
                }
            })
            .collect()
    }

    /// Inverse of [`canonical_coords`](Self::canonical_coords): a generator
    /// vector representing the given canonical coordinates.
    pub fn from_canonical(&self, c: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(c.len(), self.cache.nontrivial.len(), "canonical length");
        let mut w = vec![BigInt::zero(); self.ngens];
        for (k, &i) in self.cache.nontrivial.iter().enumerate() {
            w[i] = c[k].clone();
        }
        self.cache.smith.u_inv.mul_vec(&w)
    }

    /// Whether `v` lies in the relation lattice, i.e. is zero in the group.
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ngens, "element length");
        let w = self.cache.smith.u.mul_vec(v);
        w.iter().zip(&self.cache.diagonal).all(|(x, d)| {
            if d.is_zero() {
                x.is_zero()
            } else {
                x.is_multiple_of(d)
            }
        })
    }

    pub fn elements_equal(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&diff)
    }

    pub fn validate_element(&self, v: &[BigInt]) -> Result<()> {
        self.check_len(v)
    }

    /// Every element as a generator vector, in lexicographic order of
    /// canonical coordinates. Refuses infinite groups and groups larger than
    /// `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Vec<BigInt>>> {
        let order = self
            .order()
            .ok_or_else(|| Error::SizeLimit("cannot enumerate an infinite group".into()))?;
        if order > BigInt::from(limit) {
            return Err(Error::SizeLimit(format!("group of order {order} exceeds {limit}")));
        }
        let factors = self.invariant_factors();
        let mut out = Vec::new();
        let mut c = vec![BigInt::zero(); factors.len()];
        loop {
            out.push(self.from_canonical(&c));
            let mut k = factors.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                c[k] += 1;
                if c[k] < factors[k] {
                    break;
                }
                c[k] = BigInt::zero();
            }
        }
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.ngens]
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut v = self.zero_element();
        v[i] = BigInt::one();
        v
    }
}

impl PartialEq for FGAbGroup {
    /// Presentation equality: same generator count and identical relation matrix.
    fn eq(&self, other: &Self) -> bool {
        self.ngens == other.ngens && self.relations == other.relations
    }
}

impl Eq for FGAbGroup {}

impl fmt::Debug for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FGAbGroup")
            .field("ngens", &self.ngens)
            .field("relations", &self.relations)
            .field("invariant_factors", &self.cache.invariant_factors)
            .finish()
    }
}

/// Human-readable structure: `0`, `Z`, `Z/2 + Z`, `Z^2`, ...
impl fmt::Display for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.invariant_factors();
        if factors.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = factors
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Direct sum of a list of groups with block-diagonal relations.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FGAbGroup,
    pub offsets: Vec<usize>,
}

impl DirectSum {
    pub fn new(parts: &[&FGAbGroup]) -> Self {
        let mut offsets = Vec::with_capacity(parts.len() + 1);
        let mut total = 0;
        for p in parts {
            offsets.push(total);
            total += p.ngens();
        }
        offsets.push(total);
        let blocks: Vec<&IntMatrix> = parts.iter().map(|p| p.relations()).collect();
        let rel = IntMatrix::block_diag(&blocks);
        DirectSum {
            group: FGAbGroup::new(total, rel).expect("block presentation"),
            offsets,
        }
    }

    pub fn range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn invariant_factor_examples() {
        let g = FGAbGroup::from_relation_columns(2, &[ints(&[2, 0]), ints(&[0, 3])]).unwrap();
        assert_eq!(g.invariant_factors(), ints(&[6]).as_slice());
        assert_eq!(FGAbGroup::free(1).invariant_factors(), ints(&[0]).as_slice());
        assert!(FGAbGroup::zero().invariant_factors().is_empty());
        assert!(FGAbGroup::cyclic(1).is_trivial());
        assert_eq!(FGAbGroup::cyclic(1).ngens(), 0);
    }

    #[test]
    fn mixed_free_and_torsion() {
        let g = FGAbGroup::from_relation_columns(3, &[ints(&[4, 0, 0]), ints(&[0, 6, 0])]).unwrap();
        assert_eq!(g.invariant_factors(), ints(&[2, 12, 0]).as_slice());
        assert_eq!(g.to_string(), "Z/2 + Z/12 + Z");
        assert_eq!(g.order(), None);
    }

    #[test]
    fn canonical_coordinates_roundtrip() {
        let g = FGAbGroup::from_relation_columns(2, &[ints(&[2, 4]), ints(&[6, 8])]).unwrap();
        assert_eq!(g.order(), Some(BigInt::from(8)));
        let elems = g.elements(100).unwrap();
        assert_eq!(elems.len(), 8);
        for (i, a) in elems.iter().enumerate() {
            for b in &elems[i + 1..] {
                assert!(!g.elements_equal(a, b));
            }
            let back = g.from_canonical(&g.canonical_coords(a));
            assert!(g.elements_equal(a, &back));
        }
    }

    #[test]
    fn membership() {
        let g = FGAbGroup::cyclic(6);
        assert!(g.is_zero_element(&ints(&[12])));
        assert!(!g.is_zero_element(&ints(&[3])));
        assert!(FGAbGroup::free(2).is_zero_element(&ints(&[0, 0])));
        assert!(!FGAbGroup::free(2).is_zero_element(&ints(&[0, 1])));
    }

    #[test]
    fn infinite_enumeration_refused() {
        assert!(FGAbGroup::free(1).elements(10).is_err());
        assert!(FGAbGroup::cyclic(100).elements(10).is_err());
    }
}
