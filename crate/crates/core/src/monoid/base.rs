use std::fmt;

use crate::error::{Error, Result};

/// A commutative monoid on `{0, ..., n-1}` with a (possibly partial)
/// multiplication table.
///
/// Finite monoids have a total table. The truncation of `N` at a bound keeps
/// `0..=bound` with `x + y` defined only when it stays within the bound; every
/// relation among elements `<= n` involves only elements `<= n`, so fibers up
/// to the bound are computed exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinCommMonoid {
    labels: Vec<String>,
    table: Vec<Vec<Option<usize>>>,
    unit: usize,
    nat_bound: Option<usize>,
}

impl FinCommMonoid {
    /// Validates closure, the unit law, commutativity and associativity.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidObject("a monoid needs a unit element".into()));
        }
        if unit >= n {
            return Err(Error::InvalidObject(format!("unit index {unit} out of range")));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidObject(format!("duplicate label {l:?}")));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidObject(format!("multiplication table must be {n}x{n}")));
        }
        if let Some(&bad) = table.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::InvalidObject(format!("table entry {bad} out of range")));
        }
        for a in 0..n {
            if table[unit][a] != a {
                return Err(Error::InvalidObject(format!(
                    "unit law fails: {} * {} != {}",
                    labels[unit], labels[a], labels[a]
                )));
            }
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return Err(Error::InvalidObject(format!(
                        "not commutative at ({}, {})",
                        labels[a], labels[b]
                    )));
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidObject(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FinCommMonoid {
            labels,
            table: table
                .into_iter()
                .map(|r| r.into_iter().map(Some).collect())
                .collect(),
            unit,
            nat_bound: None,
        })
    }

    /// `(N, +)` truncated to `0..=bound`.
    pub fn nat(bound: usize) -> Self {
        let n = bound + 1;
        FinCommMonoid {
            labels: (0..n).map(|i| i.to_string()).collect(),
            table: (0..n)
                .map(|a| (0..n).map(|b| (a + b < n).then_some(a + b)).collect())
                .collect(),
            unit: 0,
            nat_bound: Some(bound),
        }
    }

    pub fn trivial() -> Self {
        Self::new(vec!["1".into()], vec![vec![0]], 0).expect("trivial monoid")
    }

    /// `{1, e}` with `e * e = e`.
    pub fn idempotent() -> Self {
        Self::new(vec!["1".into(), "e".into()], vec![vec![0, 1], vec![1, 1]], 0)
            .expect("idempotent monoid")
    }

    /// The cyclic group `Z/n` written multiplicatively, labels `1, g, g^2, ...`.
    pub fn cyclic_group(n: usize) -> Self {
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(labels, table, 0).expect("cyclic group")
    }

    /// `Z/2 x Z/2`, labels `1, a, b, ab`.
    pub fn klein() -> Self {
        let labels = ["1", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        Self::new(labels, table, 0).expect("Klein four-group")
    }

    /// Componentwise product `z x x`, element `(c, a)` at index `c * |x| + a`.
    pub fn product(z: &FinCommMonoid, x: &FinCommMonoid) -> Result<Self> {
        if z.is_partial() || x.is_partial() {
            return Err(Error::CoproductFailure(
                "products of truncated monoids are not closed".into(),
            ));
        }
        let (nz, nx) = (z.len(), x.len());
        let labels = (0..nz * nx)
            .map(|i| format!("({},{})", z.labels[i / nx], x.labels[i % nx]))
            .collect();
        let table = (0..nz * nx)
            .map(|p| {
                (0..nz * nx)
                    .map(|q| {
                        let c = z.mul(p / nx, q / nx).expect("total");
                        let a = x.mul(p % nx, q % nx).expect("total");
                        c * nx + a
                    })
                    .collect()
            })
            .collect();
        Self::new(labels, table, z.unit * nx + x.unit)
            .map_err(|e| Error::CoproductFailure(e.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// The truncation bound when this is a truncation of `N`.
    pub fn nat_bound(&self) -> Option<usize> {
        self.nat_bound
    }

    pub fn is_partial(&self) -> bool {
        self.nat_bound.is_some()
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a][b]
    }

    /// The full table for finite monoids.
    pub fn table(&self) -> Option<Vec<Vec<usize>>> {
        if self.is_partial() {
            return None;
        }
        Some(
            self.table
                .iter()
                .map(|r| r.iter().map(|v| v.expect("total")).collect())
                .collect(),
        )
    }

    /// All defined products `(a, b, a * b)`.
    pub fn products(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.len()).flat_map(move |a| {
            (0..self.len()).filter_map(move |b| self.mul(a, b).map(|c| (a, b, c)))
        })
    }

    /// Pairs `(w, x)` with `w * x = z`.
    pub fn factorizations(&self, z: usize) -> Vec<(usize, usize)> {
        self.products()
            .filter(|&(_, _, c)| c == z)
            .map(|(w, x, _)| (w, x))
            .collect()
    }
}

impl fmt::Debug for FinCommMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.nat_bound {
            Some(b) => write!(f, "N<={b}"),
            None => write!(f, "Monoid{:?}", self.labels),
        }
    }
}

/// A unit-preserving multiplicative map between commutative monoids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidHom {
    source: FinCommMonoid,
    target: FinCommMonoid,
    images: Vec<usize>,
}

impl MonoidHom {
    /// Requires `f(1) = 1` and `f(a * b) = f(a) * f(b)` for every defined product.
    pub fn new(source: FinCommMonoid, target: FinCommMonoid, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} images for a monoid of size {}",
                images.len(),
                source.len()
            )));
        }
        if images.iter().any(|&i| i >= target.len()) {
            return Err(Error::NotAHomomorphism("image index out of range".into()));
        }
        if images[source.unit] != target.unit {
            return Err(Error::NotAHomomorphism("the unit is not preserved".into()));
        }
        for (a, b, c) in source.products() {
            if target.mul(images[a], images[b]) != Some(images[c]) {
                return Err(Error::NotAHomomorphism(format!(
                    "f({} * {}) != f({}) * f({})",
                    source.labels[a], source.labels[b], source.labels[a], source.labels[b]
                )));
            }
        }
        Ok(MonoidHom {
            source,
            target,
            images,
        })
    }

    pub fn identity(x: &FinCommMonoid) -> Self {
        MonoidHom {
            source: x.clone(),
            target: x.clone(),
            images: (0..x.len()).collect(),
        }
    }

    pub fn source(&self) -> &FinCommMonoid {
        &self.source
    }

    pub fn target(&self) -> &FinCommMonoid {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.target.len()).all(|y| self.images.contains(&y))
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &MonoidHom) -> Result<MonoidHom> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("monoid homomorphisms are not composable".into()));
        }
        Ok(MonoidHom {
            source: first.source.clone(),
            target: self.target.clone(),
            images: first.images.iter().map(|&a| self.images[a]).collect(),
        })
    }

    /// Every homomorphism `source -> target`, by exhaustive search.
    pub fn all(source: &FinCommMonoid, target: &FinCommMonoid) -> Vec<MonoidHom> {
        let n = source.len();
        let m = target.len();
        let mut out = Vec::new();
        let mut images = vec![0usize; n];
        loop {
            if let Ok(h) = MonoidHom::new(source.clone(), target.clone(), images.clone()) {
                out.push(h);
            }
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

/// Finite monoids used by the exhaustive suites: trivial, `{1, e}`, `Z/2`,
/// `Z/3`, `Z/2 x Z/2`.
pub fn catalog() -> Vec<(&'static str, FinCommMonoid)> {
    vec![
        ("trivial", FinCommMonoid::trivial()),
        ("idempotent", FinCommMonoid::idempotent()),
        ("Z/2", FinCommMonoid::cyclic_group(2)),
        ("Z/3", FinCommMonoid::cyclic_group(3)),
        ("Z/2xZ/2", FinCommMonoid::klein()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_associative() {
        // (a a) b = b b = a but a (a b) = a a = b
        let labels = vec!["1".into(), "a".into(), "b".into()];
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 1]];
        assert!(FinCommMonoid::new(labels, table, 0).is_err());
    }

    #[test]
    fn rejects_bad_unit_and_commutativity() {
        let l = || vec!["1".to_string(), "a".to_string()];
        assert!(FinCommMonoid::new(l(), vec![vec![1, 0], vec![0, 1]], 0).is_err());
        let labels = vec!["1".into(), "a".into(), "b".into()];
        let t = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
        assert!(FinCommMonoid::new(labels, t, 0).is_err());
    }

    #[test]
    fn truncated_nat_is_partial() {
        let n = FinCommMonoid::nat(3);
        assert_eq!(n.mul(1, 2), Some(3));
        assert_eq!(n.mul(2, 2), None);
        assert_eq!(n.factorizations(2), vec![(0, 2), (1, 1), (2, 0)]);
    }

    #[test]
    fn homomorphism_counts() {
        let z2 = FinCommMonoid::cyclic_group(2);
        let z3 = FinCommMonoid::cyclic_group(3);
        assert_eq!(MonoidHom::all(&z2, &z3).len(), 1);
        assert_eq!(MonoidHom::all(&z2, &FinCommMonoid::klein()).len(), 4);
        // {1,e} -> {1,e}: e goes to an idempotent
        let e = FinCommMonoid::idempotent();
        assert_eq!(MonoidHom::all(&e, &e).len(), 2);
        assert!(MonoidHom::new(z2.clone(), e, vec![0, 1]).is_err());
    }

    #[test]
    fn product_monoid() {
        let p = FinCommMonoid::product(&FinCommMonoid::cyclic_group(2), &FinCommMonoid::idempotent()).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.label(3), "(g,e)");
        assert!(FinCommMonoid::product(&FinCommMonoid::nat(2), &FinCommMonoid::trivial()).is_err());
    }
}
