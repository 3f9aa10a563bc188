//! Buchberger's algorithm for submodules of `k[x]^r` under a
//! position-over-term order (position 0 largest). Ideals are the case `r = 1`.

use num_rational::BigRational;

use super::poly::{degree, divides, lcm, quotient, Field, Monomial, MonomialOrder, Polynomial};
use crate::error::{Error, Result};

/// A vector of polynomials, one per free-module position.
pub type ModVec = Vec<Polynomial>;

pub const DEFAULT_MAX_VARS: usize = 6;
pub const DEFAULT_MAX_DEGREE: u32 = 12;
pub const GUARD_DEGREE_ENV: &str = "COTANGENT_GUARD_DEGREE";

/// Desk-scale limits on Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub max_vars: usize,
    pub max_degree: u32,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_vars: DEFAULT_MAX_VARS,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

impl Guard {
    /// Defaults, with the degree limit overridden by `COTANGENT_GUARD_DEGREE`.
    pub fn from_env() -> Self {
        let mut g = Guard::default();
        if let Some(d) = std::env::var(GUARD_DEGREE_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            g.max_degree = d;
        }
        g
    }

    /// The same degree limit with room for auxiliary variables.
    pub(crate) fn widened(&self, extra_vars: usize) -> Self {
        Guard {
            max_vars: self.max_vars + extra_vars,
            max_degree: self.max_degree,
        }
    }
}

#[derive(Clone, Debug)]
struct Lead {
    pos: usize,
    mono: Monomial,
    coeff: BigRational,
}

fn lead(v: &[Polynomial], order: MonomialOrder) -> Option<Lead> {
    v.iter().enumerate().find(|(_, p)| !p.is_zero()).map(|(pos, p)| {
        let (m, c) = p.leading(order).expect("nonzero component");
        Lead {
            pos,
            mono: m.clone(),
            coeff: c.clone(),
        }
    })
}

fn vec_degree(v: &[Polynomial]) -> u32 {
    v.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
}

fn is_zero_vec(v: &[Polynomial]) -> bool {
    v.iter().all(Polynomial::is_zero)
}

/// `v - c · x^m · g`
fn sub_scaled(v: &mut [Polynomial], g: &[Polynomial], m: &[u32], c: &BigRational) {
    for (a, b) in v.iter_mut().zip(g) {
        if !b.is_zero() {
            *a = a.sub(&b.mul_term(m, c));
        }
    }
}

fn scaled(g: &[Polynomial], m: &[u32], c: &BigRational) -> ModVec {
    g.iter().map(|p| p.mul_term(m, c)).collect()
}

/// A Gröbner basis of a submodule of `k[x]^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    field: Field,
    nvars: usize,
    rank: usize,
    order: MonomialOrder,
    basis: Vec<ModVec>,
    leads: Vec<Lead>,
}

impl GroebnerBasis {
    /// Runs Buchberger and returns the reduced basis. Generators must all
    /// have `rank` components over the same ring.
    pub fn compute(
        field: &Field,
        nvars: usize,
        rank: usize,
        gens: &[ModVec],
        order: MonomialOrder,
        guard: &Guard,
    ) -> Result<Self> {
        if nvars > guard.max_vars {
            return Err(Error::DegreeLimitExceeded(format!(
                "{nvars} variables exceed the limit of {}",
                guard.max_vars
            )));
        }
        let mut gb = GroebnerBasis {
            field: field.clone(),
            nvars,
            rank,
            order,
            basis: Vec::new(),
            leads: Vec::new(),
        };
        for g in gens {
            assert_eq!(g.len(), rank, "generator length");
            let r = gb.reduce(g);
            if !is_zero_vec(&r) {
                gb.push(r, guard)?;
            }
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for j in 0..gb.basis.len() {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        while let Some((i, j)) = gb.pop_pair(&mut pairs) {
            let (li, lj) = (&gb.leads[i], &gb.leads[j]);
            if li.pos != lj.pos {
                continue;
            }
            let l = lcm(&li.mono, &lj.mono);
            if rank == 1 && degree(&l) == degree(&li.mono) + degree(&lj.mono) {
                // coprime leading monomials
                continue;
            }
            let mut s = scaled(&gb.basis[i], &quotient(&l, &li.mono), &gb.field.inv(&li.coeff));
            sub_scaled(&mut s, &gb.basis[j], &quotient(&l, &lj.mono), &gb.field.inv(&lj.coeff));
            let r = gb.reduce(&s);
            if !is_zero_vec(&r) {
                gb.push(r, guard)?;
                let k = gb.basis.len() - 1;
                for a in 0..k {
                    pairs.push((a, k));
                }
            }
        }
        gb.make_reduced();
        Ok(gb)
    }

    /// Pairs are processed by smallest lcm first (the normal strategy).
    fn pop_pair(&self, pairs: &mut Vec<(usize, usize)>) -> Option<(usize, usize)> {
        if pairs.is_empty() {
            return None;
        }
        let key = |&(i, j): &(usize, usize)| {
            let (a, b) = (&self.leads[i], &self.leads[j]);
            (a.pos != b.pos, degree(&lcm(&a.mono, &b.mono)))
        };
        let best = (0..pairs.len())
            .min_by_key(|&k| key(&pairs[k]))
            .expect("nonempty");
        Some(pairs.swap_remove(best))
    }

    fn push(&mut self, v: ModVec, guard: &Guard) -> Result<()> {
        let d = vec_degree(&v);
        if d > guard.max_degree {
            return Err(Error::DegreeLimitExceeded(format!(
                "basis element of degree {d} exceeds the limit of {}",
                guard.max_degree
            )));
        }
        let l = lead(&v, self.order).expect("nonzero");
        let inv = self.field.inv(&l.coeff);
        let v: ModVec = v.iter().map(|p| p.scale(&inv)).collect();
        self.leads.push(Lead {
            coeff: BigRational::from_integer(1.into()),
            ..l
        });
        self.basis.push(v);
        Ok(())
    }

    /// Full reduction of `v` modulo the basis.
    pub fn reduce(&self, v: &[Polynomial]) -> ModVec {
        assert_eq!(v.len(), self.rank, "vector length");
        let mut p: ModVec = v.to_vec();
        let mut r: ModVec = (0..self.rank)
            .map(|_| Polynomial::zero(&self.field, self.nvars))
            .collect();
        while let Some(lt) = lead(&p, self.order) {
            let hit = self
                .leads
                .iter()
                .position(|g| g.pos == lt.pos && divides(&g.mono, &lt.mono));
            match hit {
                Some(k) => {
                    let g = &self.leads[k];
                    let c = &lt.coeff / &g.coeff;
                    sub_scaled(&mut p, &self.basis[k], &quotient(&lt.mono, &g.mono), &c);
                }
                None => {
                    let t = Polynomial::monomial(&self.field, lt.mono.clone(), lt.coeff.clone());
                    r[lt.pos] = r[lt.pos].add(&t);
                    p[lt.pos] = p[lt.pos].sub(&t);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    fn make_reduced(&mut self) {
        // drop elements whose leading term is divisible by another's
        let n = self.basis.len();
        let mut keep = vec![true; n];
        for i in 0..n {
            for j in 0..n {
                if i == j || !keep[j] {
                    continue;
                }
                let (a, b) = (&self.leads[i], &self.leads[j]);
                if a.pos == b.pos && divides(&b.mono, &a.mono) && (a.mono != b.mono || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut basis: Vec<ModVec> = Vec::new();
        let mut leads: Vec<Lead> = Vec::new();
        for k in 0..n {
            if keep[k] {
                basis.push(self.basis[k].clone());
                leads.push(self.leads[k].clone());
            }
        }
        self.basis = basis;
        self.leads = leads;
        // interreduce tails
        for k in 0..self.basis.len() {
            let others = GroebnerBasis {
                field: self.field.clone(),
                nvars: self.nvars,
                rank: self.rank,
                order: self.order,
                basis: self
                    .basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != k)
                    .map(|(_, b)| b.clone())
                    .collect(),
                leads: self
                    .leads
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != k)
                    .map(|(_, l)| l.clone())
                    .collect(),
            };
            let r = others.reduce(&self.basis[k]);
            self.basis[k] = r;
        }
        // canonical order: decreasing leading term
        let order = self.order;
        let mut idx: Vec<usize> = (0..self.basis.len()).collect();
        idx.sort_by(|&a, &b| {
            let (la, lb) = (&self.leads[a], &self.leads[b]);
            la.pos
                .cmp(&lb.pos)
                .then_with(|| order.cmp(&lb.mono, &la.mono))
        });
        self.basis = idx.iter().map(|&i| self.basis[i].clone()).collect();
        self.leads = idx.iter().map(|&i| self.leads[i].clone()).collect();
    }

    pub fn elements(&self) -> &[ModVec] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Leading `(position, monomial)` of every basis element.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.leads.iter().map(|l| (l.pos, l.mono.clone())).collect()
    }

    /// Monomials of position `pos` not divisible by any leading monomial
    /// there, if finitely many; `None` when the quotient is infinite.
    pub fn standard_monomials(&self, pos: usize) -> Option<Vec<Monomial>> {
        let leads: Vec<&Monomial> = self
            .leads
            .iter()
            .filter(|l| l.pos == pos)
            .map(|l| &l.mono)
            .collect();
        if leads.iter().any(|m| m.iter().all(|&e| e == 0)) {
            return Some(Vec::new());
        }
        // finite iff every variable has a pure power among the leads
        let mut bounds = vec![0u32; self.nvars];
        for (i, b) in bounds.iter_mut().enumerate() {
            *b = leads
                .iter()
                .filter(|m| m.iter().enumerate().all(|(j, &e)| j == i || e == 0) && m[i] > 0)
                .map(|m| m[i])
                .min()?;
        }
        let mut out = Vec::new();
        let mut m = vec![0u32; self.nvars];
        loop {
            if !leads.iter().any(|l| divides(l, &m)) {
                out.push(m.clone());
            }
            let mut k = self.nvars;
            loop {
                if k == 0 {
                    out.sort_by(|a, b| self.order.cmp(a, b));
                    return Some(out);
                }
                k -= 1;
                m[k] += 1;
                if m[k] < bounds[k] {
                    break;
                }
                m[k] = 0;
            }
        }
    }
}

/// Reduced Gröbner basis of an ideal.
pub fn ideal_basis(
    field: &Field,
    nvars: usize,
    gens: &[Polynomial],
    order: MonomialOrder,
    guard: &Guard,
) -> Result<Vec<Polynomial>> {
    let vecs: Vec<ModVec> = gens.iter().map(|g| vec![g.clone()]).collect();
    let gb = GroebnerBasis::compute(field, nvars, 1, &vecs, order, guard)?;
    Ok(gb.basis.into_iter().map(|mut v| v.remove(0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn xy() -> (Field, Polynomial, Polynomial, Polynomial) {
        let f = Field::Rational;
        (
            f.clone(),
            Polynomial::var(&f, 2, 0),
            Polynomial::var(&f, 2, 1),
            Polynomial::one(&f, 2),
        )
    }

    #[test]
    fn lex_example() {
        let (f, x, y, one) = xy();
        let gens = vec![x.pow(2).sub(&one), x.mul(&y).sub(&one)];
        let gb = ideal_basis(&f, 2, &gens, MonomialOrder::Lex, &Guard::default()).unwrap();
        let shown: Vec<String> = gb.iter().map(|p| p.format(&names(), MonomialOrder::Lex)).collect();
        assert_eq!(shown, vec!["x - y", "y^2 - 1"]);
    }

    #[test]
    fn trivial_ideals() {
        let (f, x, _, _) = xy();
        let gb = ideal_basis(&f, 2, &[x.pow(2)], MonomialOrder::DegRevLex, &Guard::default()).unwrap();
        assert_eq!(gb, vec![x.pow(2)]);
        assert!(ideal_basis(&f, 2, &[], MonomialOrder::DegRevLex, &Guard::default()).unwrap().is_empty());
        let zero = Polynomial::zero(&f, 2);
        assert!(ideal_basis(&f, 2, &[zero], MonomialOrder::DegRevLex, &Guard::default()).unwrap().is_empty());
    }

    #[test]
    fn degree_guard_trips() {
        let (f, x, y, _) = xy();
        let g = Guard {
            max_vars: 6,
            max_degree: 3,
        };
        let r = ideal_basis(&f, 2, &[x.pow(5).sub(&y)], MonomialOrder::DegRevLex, &g);
        assert!(matches!(r, Err(Error::DegreeLimitExceeded(_))));
    }

    #[test]
    fn module_membership() {
        // over Q[x] with x^2 = 0: submodule of A^1 generated by 2x
        let f = Field::Rational;
        let x = Polynomial::var(&f, 1, 0);
        let two_x = x.scale(&BigRational::from_integer(2.into()));
        let gens = vec![vec![two_x.clone()], vec![x.pow(2)]];
        let gb = GroebnerBasis::compute(&f, 1, 1, &gens, MonomialOrder::DegRevLex, &Guard::default()).unwrap();
        assert!(gb.contains(&[two_x]));
        assert!(gb.contains(std::slice::from_ref(&x)));
        assert!(!gb.contains(&[Polynomial::one(&f, 1)]));
    }

    #[test]
    fn standard_monomials_count() {
        let (f, x, y, _) = xy();
        let gens = vec![vec![x.pow(2)], vec![y.pow(2)]];
        let gb = GroebnerBasis::compute(&f, 2, 1, &gens, MonomialOrder::DegRevLex, &Guard::default()).unwrap();
        assert_eq!(gb.standard_monomials(0).unwrap().len(), 4);
        let gb = GroebnerBasis::compute(&f, 2, 1, &[vec![x.pow(2)]], MonomialOrder::DegRevLex, &Guard::default()).unwrap();
        assert!(gb.standard_monomials(0).is_none());
    }
}
