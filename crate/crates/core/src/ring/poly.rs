use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field: the rationals or a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Primes are limited to 32 bits so trial division stays cheap.
    pub fn prime(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) {
            return Err(Error::Unsupported(format!("prime {p} exceeds 32 bits")));
        }
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::InvalidObject(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// Canonical representative: reduced fraction over Q, `[0, p)` over `F_p`.
    pub fn normalize(&self, c: BigRational) -> BigRational {
        match self {
            Field::Rational => c,
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let den = c.denom().mod_floor(&p);
                let inv = mod_inverse(&den, &p).expect("denominator invertible mod p");
                BigRational::from_integer((c.numer() * inv).mod_floor(&p))
            }
        }
    }

    /// Whether the integer `n` is a unit in the field.
    pub fn invertible(&self, n: &BigInt) -> bool {
        match self {
            Field::Rational => !n.is_zero(),
            Field::Prime(p) => !n.mod_floor(&BigInt::from(*p)).is_zero(),
        }
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> BigRational {
        self.normalize(BigRational::from_integer(n.into()))
    }

    pub fn inv(&self, c: &BigRational) -> BigRational {
        assert!(!c.is_zero(), "inverse of zero");
        self.normalize(c.recip())
    }

    pub fn tag(&self) -> String {
        match self {
            Field::Rational => "Q".into(),
            Field::Prime(p) => format!("GF({p})"),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(p);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(p))
}

/// Exponent vector.
pub type Monomial = Vec<u32>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| {
                    // smaller exponent in the last differing variable wins
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn quotient(b: &[u32], a: &[u32]) -> Monomial {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

pub fn monomial_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// A sparse polynomial over [`Field`] in a fixed number of variables. No zero
/// coefficient is ever stored, and coefficients are field-normalized.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        Polynomial {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Self::constant(field, nvars, BigRational::one())
    }

    pub fn from_int(field: &Field, nvars: usize, n: i64) -> Self {
        Self::constant(field, nvars, BigRational::from_integer(n.into()))
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, e, BigRational::one())
    }

    pub fn monomial(field: &Field, exps: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(field, exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(field: &Field, nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The constant term when the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        let c = self.field.normalize(c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = self.field.normalize(o.get() + c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        assert_eq!(self.nvars, other.nvars, "polynomials in different variable counts");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.normalize(-c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// `c · x^m · self`
    pub fn mul_term(&self, m: &[u32], c: &BigRational) -> Polynomial {
        let mut out = Self::zero(&self.field, self.nvars);
        for (k, v) in &self.terms {
            out.add_term(monomial_mul(k, m), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        let mut out = Self::zero(&self.field, self.nvars);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(monomial_mul(a, b), c * d);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Self::one(&self.field, self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| degree(m)).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    /// Largest term under `order`.
    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading(order).map(|(m, _)| m)
    }

    /// Scaled so the leading coefficient is 1.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c)),
        }
    }

    /// `∂/∂x_i`
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut k = m.clone();
            k[i] -= 1;
            out.add_term(k, c * BigRational::from_integer(m[i].into()));
        }
        out
    }

    /// Substitutes `images[i]` for `x_i`; all images share a ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let (field, n) = match images.first() {
            Some(p) => (p.field.clone(), p.nvars),
            None => (self.field.clone(), 0),
        };
        let mut out = Self::zero(&field, n);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&field, n, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Reinterprets in `new_nvars` variables, variable `i` becoming `map[i]`.
    pub fn reindex(&self, new_nvars: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars, "one target per variable");
        let mut out = Self::zero(&self.field, new_nvars);
        for (m, c) in &self.terms {
            let mut k = vec![0; new_nvars];
            for (i, &e) in m.iter().enumerate() {
                k[map[i]] += e;
            }
            out.add_term(k, c.clone());
        }
        out
    }

    /// Evaluates at a point of the field.
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        self.field.normalize(acc)
    }

    /// Formats with the given variable names, terms in decreasing `order`.
    pub fn format(&self, names: &[String], order: MonomialOrder) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{e}", names[i])
                    }
                })
                .collect();
            let coeff = format_rational(&abs);
            if mono.is_empty() {
                out.push_str(&coeff);
            } else {
                if !abs.is_one() {
                    out.push_str(&coeff);
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

pub fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format(&names, MonomialOrder::DegRevLex))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn arithmetic_and_printing() {
        let f = Field::Rational;
        let x = Polynomial::var(&f, 2, 0);
        let y = Polynomial::var(&f, 2, 1);
        let p = y.pow(2).sub(&x.pow(3));
        assert_eq!(p.format(&names(), MonomialOrder::DegRevLex), "-x^3 + y^2");
        assert_eq!(p.derivative(0).format(&names(), MonomialOrder::DegRevLex), "-3x^2");
        assert!(p.sub(&p).is_zero());
        let half = Polynomial::constant(&f, 2, BigRational::new(1.into(), 2.into()));
        assert_eq!(half.mul(&x).format(&names(), MonomialOrder::Lex), "1/2x");
    }

    #[test]
    fn degrevlex_order() {
        let o = MonomialOrder::DegRevLex;
        // x^2 > xy > y^2 > x > y in two variables
        assert_eq!(o.cmp(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2], &[1, 0]), Ordering::Greater);
        // x y z^0 vs x^0 y^0 z^2 in degree 2: the one with smaller last exponent is larger
        assert_eq!(o.cmp(&[1, 1, 0], &[0, 0, 2]), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
    }

    #[test]
    fn prime_field_normalization() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.normalize(BigRational::new(1.into(), 2.into())), q(3));
        assert_eq!(f.normalize(q(-1)), q(4));
        let x = Polynomial::var(&f, 1, 0);
        assert!(x.scale(&q(5)).is_zero());
        assert!(Field::prime(6).is_err());
    }

    #[test]
    fn substitution() {
        let f = Field::Rational;
        let x = Polynomial::var(&f, 2, 0);
        let y = Polynomial::var(&f, 2, 1);
        let p = x.mul(&y).sub(&Polynomial::one(&f, 2));
        let t = Polynomial::var(&f, 1, 0);
        let r = p.substitute(&[t.clone(), t.pow(2)]);
        assert_eq!(r.format(&["t".into()], MonomialOrder::DegRevLex), "t^3 - 1");
        assert_eq!(p.evaluate(&[q(2), q(3)]), q(5));
    }
}
