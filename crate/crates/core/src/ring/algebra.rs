//! Finitely presented algebras `k[x_1..x_n]/I` and their homomorphisms.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::groebner::{GroebnerBasis, Guard};
use super::parse::{self, AlgebraSpec, HomSpec};
use super::poly::{Field, Monomial, MonomialOrder, Polynomial};
use crate::error::{Error, Result};

/// `k[vars]/(relators)` with its reduced Gröbner basis computed eagerly.
#[derive(Clone)]
pub struct FPAlgebra {
    field: Field,
    vars: Vec<String>,
    relators: Vec<Polynomial>,
    order: MonomialOrder,
    guard: Guard,
    gb: GroebnerBasis,
}

impl PartialEq for FPAlgebra {
    /// Same field, variables and ideal.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.vars == other.vars
            && self.order == other.order
            && self.gb.elements() == other.gb.elements()
    }
}

impl Eq for FPAlgebra {}

impl fmt::Debug for FPAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FPAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field.tag(), self.vars.join(","))?;
        if !self.relators.is_empty() {
            let rels: Vec<String> = self.relators.iter().map(|r| self.format(r)).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

impl FPAlgebra {
    /// Degree-reverse-lexicographic order, guards from the environment.
    pub fn new(field: Field, vars: Vec<String>, relators: Vec<Polynomial>) -> Result<Self> {
        Self::with_options(field, vars, relators, MonomialOrder::default(), Guard::from_env())
    }

    pub fn with_options(
        field: Field,
        vars: Vec<String>,
        relators: Vec<Polynomial>,
        order: MonomialOrder,
        guard: Guard,
    ) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidObject(format!("variable '{v}' repeated")));
            }
        }
        let n = vars.len();
        for r in &relators {
            if r.nvars() != n || *r.field() != field {
                return Err(Error::InvalidObject(
                    "relator does not live in the ambient polynomial ring".into(),
                ));
            }
        }
        let gens: Vec<Vec<Polynomial>> = relators.iter().map(|r| vec![r.clone()]).collect();
        let gb = GroebnerBasis::compute(&field, n, 1, &gens, order, &guard)?;
        let relators = relators.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(FPAlgebra {
            field,
            vars,
            relators,
            order,
            guard,
            gb,
        })
    }

    /// The polynomial ring on the given names.
    pub fn polynomial_ring(field: Field, vars: &[&str]) -> Result<Self> {
        Self::new(field, vars.iter().map(|v| v.to_string()).collect(), Vec::new())
    }

    /// Builds from variable names and relators written in the text grammar.
    pub fn from_strs(field: Field, vars: &[&str], relators: &[&str]) -> Result<Self> {
        let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| parse::parse_polynomial(r, &field, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, names, rels)
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self> {
        Self::new(spec.field.clone(), spec.vars.clone(), spec.relators.clone())
    }

    pub fn parse(src: &str) -> Result<Self> {
        Self::from_spec(&parse::parse_algebra(src)?)
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            field: self.field.clone(),
            vars: self.vars.clone(),
            relators: self.relators.clone(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn relators(&self) -> &[Polynomial] {
        &self.relators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn guard(&self) -> &Guard {
        &self.guard
    }

    /// The reduced Gröbner basis of the ideal.
    pub fn groebner(&self) -> Vec<Polynomial> {
        self.gb.elements().iter().map(|v| v[0].clone()).collect()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.field, self.nvars(), i)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.field, self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        self.normal_form(&Polynomial::one(&self.field, self.nvars()))
    }

    /// Parses a polynomial in this algebra's variables and reduces it.
    pub fn element(&self, src: &str) -> Result<Polynomial> {
        let p = parse::parse_polynomial(src, &self.field, &self.vars)?;
        Ok(self.normal_form(&p))
    }

    /// Canonical representative modulo the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.gb.reduce(std::slice::from_ref(p)).remove(0)
    }

    pub fn in_ideal(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.normal_form(&a.mul(b))
    }

    /// The zero ring.
    pub fn is_trivial(&self) -> bool {
        self.in_ideal(&Polynomial::one(&self.field, self.nvars()))
    }

    /// Standard monomials, a `k`-basis, when the algebra is finite dimensional.
    pub fn monomial_basis(&self) -> Option<Vec<Monomial>> {
        self.gb.standard_monomials(0)
    }

    pub fn dimension(&self) -> Option<usize> {
        self.monomial_basis().map(|b| b.len())
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.format(&self.vars, self.order)
    }

    /// Text form accepted by [`FPAlgebra::parse`].
    pub fn to_text(&self) -> String {
        parse::format_algebra(&self.to_spec())
    }
}

/// `p(images)` in the ring of `target`, also when `p` has no variables.
fn substitute_into(p: &Polynomial, images: &[Polynomial], target: &FPAlgebra) -> Polynomial {
    if images.is_empty() {
        let c = p.as_constant().unwrap_or_else(BigRational::zero);
        return Polynomial::constant(&target.field, target.nvars(), c);
    }
    p.substitute(images)
}

/// A `k`-algebra map, given by the images of the source variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraHom {
    source: FPAlgebra,
    target: FPAlgebra,
    images: Vec<Polynomial>,
}

impl AlgebraHom {
    /// Checks that every source relator maps into the target ideal.
    pub fn new(source: FPAlgebra, target: FPAlgebra, images: Vec<Polynomial>) -> Result<Self> {
        if source.field != target.field {
            return Err(Error::NotAHomomorphism("source and target fields differ".into()));
        }
        if images.len() != source.nvars() {
            return Err(Error::NotAHomomorphism(format!(
                "{} images given for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        if images.iter().any(|p| p.nvars() != target.nvars() || *p.field() != target.field) {
            return Err(Error::NotAHomomorphism(
                "image does not live in the target ring".into(),
            ));
        }
        let images: Vec<Polynomial> = images.iter().map(|p| target.normal_form(p)).collect();
        for r in &source.relators {
            if !target.in_ideal(&substitute_into(r, &images, &target)) {
                return Err(Error::NotAHomomorphism(format!(
                    "relator {} does not map to zero",
                    source.format(r)
                )));
            }
        }
        Ok(AlgebraHom {
            source,
            target,
            images,
        })
    }

    /// Images written in the target's text grammar.
    pub fn from_strs(source: &FPAlgebra, target: &FPAlgebra, images: &[&str]) -> Result<Self> {
        let images = images
            .iter()
            .map(|s| parse::parse_polynomial(s, &target.field, &target.vars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source.clone(), target.clone(), images)
    }

    pub fn from_spec(spec: &HomSpec) -> Result<Self> {
        Self::new(
            FPAlgebra::from_spec(&spec.source)?,
            FPAlgebra::from_spec(&spec.target)?,
            spec.images.clone(),
        )
    }

    pub fn parse(src: &str) -> Result<Self> {
        Self::from_spec(&parse::parse_hom(src)?)
    }

    pub fn to_spec(&self) -> HomSpec {
        HomSpec {
            source: self.source.to_spec(),
            target: self.target.to_spec(),
            images: self.images.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        parse::format_hom(&self.to_spec())
    }

    pub fn identity(a: &FPAlgebra) -> Self {
        let images = (0..a.nvars()).map(|i| a.var(i)).collect();
        AlgebraHom {
            source: a.clone(),
            target: a.clone(),
            images,
        }
    }

    pub fn source(&self) -> &FPAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FPAlgebra {
        &self.target
    }

    /// Image of each source variable, in target normal form.
    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Image of a source polynomial, in target normal form.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        self.target.normal_form(&substitute_into(p, &self.images, &self.target))
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &AlgebraHom) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch("composable algebra maps required".into()));
        }
        let images = first.images.iter().map(|p| self.apply(p)).collect();
        Ok(AlgebraHom {
            source: first.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// Every target variable lies in `k[f(x)] + I`, decided by a lex
    /// elimination basis in `k[y, x]` with the target variables `y` first.
    pub fn is_surjective(&self) -> Result<bool> {
        let (na, nb) = (self.source.nvars(), self.target.nvars());
        let n = na + nb;
        let field = &self.target.field;
        let y_map: Vec<usize> = (0..nb).collect();
        let mut gens: Vec<Polynomial> = self
            .target
            .groebner()
            .iter()
            .map(|g| g.reindex(n, &y_map))
            .collect();
        for (i, img) in self.images.iter().enumerate() {
            let x = Polynomial::var(field, n, nb + i);
            gens.push(x.sub(&img.reindex(n, &y_map)));
        }
        let guard = self.target.guard.widened(na);
        let vecs: Vec<Vec<Polynomial>> = gens.into_iter().map(|g| vec![g]).collect();
        let gb = GroebnerBasis::compute(field, n, 1, &vecs, MonomialOrder::Lex, &guard)?;
        Ok((0..nb).all(|j| {
            let r = gb.reduce(&[Polynomial::var(field, n, j)]).remove(0);
            let only_x = r.terms().all(|(m, _)| m[..nb].iter().all(|&e| e == 0));
            only_x
        }))
    }

    /// When `f` is `A -> A[t]/(s·t - 1)` up to presentation, returns `s` as an
    /// element of the source.
    pub fn localization_element(&self) -> Result<Option<Polynomial>> {
        let (na, nb) = (self.source.nvars(), self.target.nvars());
        if nb != na + 1 {
            return Ok(None);
        }
        // images must be distinct target variables
        let mut map = Vec::with_capacity(na);
        for img in &self.images {
            let hit = (0..nb).find(|&j| *img == self.target.var(j));
            match hit {
                Some(j) if !map.contains(&j) => map.push(j),
                _ => return Ok(None),
            }
        }
        let t = (0..nb).find(|j| !map.contains(j)).expect("one variable left");
        let field = &self.target.field;
        for r in &self.target.relators {
            if r.degree_in(t) != 1 {
                continue;
            }
            let mut s = Polynomial::zero(field, nb);
            let mut c0 = Polynomial::zero(field, nb);
            for (m, c) in r.terms() {
                let mut m = m.clone();
                if m[t] == 1 {
                    m[t] = 0;
                    s.add_term(m, c.clone());
                } else {
                    c0.add_term(m, c.clone());
                }
            }
            let Some(c) = c0.as_constant().filter(|c| !c.is_zero()) else {
                continue;
            };
            // r = s·t + c, so r / (-c) = s'·t - 1
            let s = s.scale(&field.inv(&-c));
            let candidate = s.mul(&Polynomial::var(field, nb, t)).sub(&Polynomial::one(field, nb));
            let mut gens: Vec<Polynomial> = self
                .source
                .relators
                .iter()
                .map(|p| p.reindex(nb, &map))
                .collect();
            gens.push(candidate);
            let expected = FPAlgebra::with_options(
                field.clone(),
                self.target.vars.clone(),
                gens,
                self.target.order,
                self.target.guard,
            )?;
            if expected == self.target {
                let mut back = vec![0usize; nb];
                for (i, &j) in map.iter().enumerate() {
                    back[j] = i;
                }
                // s only involves the images of source variables
                let s_src = Polynomial::from_terms(
                    field,
                    na,
                    s.terms().map(|(m, c)| {
                        let mut k = vec![0u32; na];
                        for (j, &e) in m.iter().enumerate() {
                            if e > 0 {
                                k[back[j]] = e;
                            }
                        }
                        (k, c.clone())
                    }),
                );
                return Ok(Some(s_src));
            }
        }
        Ok(None)
    }

    pub fn is_localization(&self) -> Result<bool> {
        Ok(self.localization_element()?.is_some())
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && (0..self.source.nvars()).all(|i| self.images[i] == self.target.var(i))
    }
}

/// `z ⊗_k x` presented by the union of the two presentations, with its two
/// structure maps. Shared variable names are rejected.
pub fn tensor(z: &FPAlgebra, x: &FPAlgebra) -> Result<(FPAlgebra, AlgebraHom, AlgebraHom)> {
    if z.field != x.field {
        return Err(Error::CoproductFailure("the two algebras have different fields".into()));
    }
    if let Some(v) = z.vars.iter().find(|v| x.vars.contains(v)) {
        return Err(Error::CoproductFailure(format!(
            "variable '{v}' occurs in both presentations; rename one of them"
        )));
    }
    let (nz, nx) = (z.nvars(), x.nvars());
    let n = nz + nx;
    let z_map: Vec<usize> = (0..nz).collect();
    let x_map: Vec<usize> = (nz..n).collect();
    let mut vars = z.vars.clone();
    vars.extend(x.vars.iter().cloned());
    let mut rels: Vec<Polynomial> = z.relators.iter().map(|r| r.reindex(n, &z_map)).collect();
    rels.extend(x.relators.iter().map(|r| r.reindex(n, &x_map)));
    let guard = Guard {
        max_vars: z.guard.max_vars.max(x.guard.max_vars),
        max_degree: z.guard.max_degree.max(x.guard.max_degree),
    };
    let y = FPAlgebra::with_options(z.field.clone(), vars, rels, z.order, guard)?;
    let first = AlgebraHom::new(z.clone(), y.clone(), z_map.iter().map(|&i| y.var(i)).collect())?;
    let second = AlgebraHom::new(x.clone(), y.clone(), x_map.iter().map(|&i| y.var(i)).collect())?;
    Ok((y, first, second))
}

/// The ground field as an algebra with no variables.
pub fn ground(field: Field) -> FPAlgebra {
    FPAlgebra::new(field, Vec::new(), Vec::new()).expect("no relators")
}

/// The named algebras used by tests, the suite and the CLI.
pub mod catalog {
    use super::*;

    fn q(vars: &[&str], rels: &[&str]) -> FPAlgebra {
        FPAlgebra::from_strs(Field::Rational, vars, rels).expect("catalog algebra")
    }

    /// `Q[x]`
    pub fn line() -> FPAlgebra {
        q(&["x"], &[])
    }

    /// `Q[x,y]`
    pub fn plane() -> FPAlgebra {
        q(&["x", "y"], &[])
    }

    /// `Q[x]/(x^2)`
    pub fn dual_numbers() -> FPAlgebra {
        q(&["x"], &["x^2"])
    }

    /// `Q[x,y]/(y^2 - x^3)`
    pub fn cusp() -> FPAlgebra {
        q(&["x", "y"], &["y^2 - x^3"])
    }

    /// `Q[x,y]/(xy - 1)`
    pub fn punctured_line() -> FPAlgebra {
        q(&["x", "y"], &["x*y - 1"])
    }

    fn hom(a: &FPAlgebra, b: &FPAlgebra, images: &[&str]) -> AlgebraHom {
        AlgebraHom::from_strs(a, b, images).expect("catalog hom")
    }

    /// The four named homomorphisms with their labels.
    pub fn homs() -> Vec<(&'static str, AlgebraHom)> {
        vec![
            ("Q[x] -> Q[x]/(x^2)", hom(&line(), &dual_numbers(), &["x"])),
            ("Q[x] -> Q[x,y]/(y^2 - x^3)", hom(&line(), &cusp(), &["x"])),
            ("Q[x] -> Q[x,y]/(xy - 1)", hom(&line(), &punctured_line(), &["x"])),
            ("Q[x,y] -> Q[x], y -> x^2", hom(&plane(), &line(), &["x", "x^2"])),
        ]
    }

    /// Finite-dimensional algebras used for derivation counts.
    pub fn finite() -> Vec<(&'static str, FPAlgebra)> {
        vec![
            ("Q[x]/(x^2)", dual_numbers()),
            ("Q[x]/(x^3)", q(&["x"], &["x^3"])),
            ("Q[x,y]/(x^2, xy, y^2)", q(&["x", "y"], &["x^2", "x*y", "y^2"])),
            ("Q[x]/(x^2 - 1)", q(&["x"], &["x^2 - 1"])),
            (
                "GF(3)[x]/(x^3)",
                FPAlgebra::from_strs(Field::prime(3).expect("prime"), &["x"], &["x^3"])
                    .expect("catalog algebra"),
            ),
        ]
    }

    /// Pairs `(A, k')` for base change.
    pub fn base_change_pairs() -> Vec<(&'static str, FPAlgebra, FPAlgebra)> {
        vec![
            ("Q[x], Q[t]/(t^2 + 1)", line(), q(&["t"], &["t^2 + 1"])),
            ("Q[x]/(x^2), Q[t]/(t^2 - 2)", dual_numbers(), q(&["t"], &["t^2 - 2"])),
            ("Q[x,y]/(y^2 - x^3), Q", cusp(), ground(Field::Rational)),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms() {
        let a = catalog::cusp();
        let p = a.element("x^6").unwrap();
        assert_eq!(a.format(&p), "y^4");
        assert!(a.in_ideal(&a.element("y^2 - x^3").unwrap()));
        assert!(!catalog::punctured_line().is_trivial());
        assert!(FPAlgebra::from_strs(Field::Rational, &["x"], &["x", "x - 1"]).unwrap().is_trivial());
        assert_eq!(catalog::dual_numbers().dimension(), Some(2));
        assert_eq!(catalog::cusp().dimension(), None);
    }

    #[test]
    fn homs_validate() {
        let a = catalog::dual_numbers();
        let b = catalog::line();
        assert!(AlgebraHom::from_strs(&a, &b, &["x"]).is_err());
        assert!(AlgebraHom::from_strs(&b, &a, &["x + 1"]).is_ok());
        let g = AlgebraHom::from_strs(&a, &a, &["0"]).unwrap();
        assert!(g.compose(&AlgebraHom::identity(&a)).unwrap() == g);
    }

    #[test]
    fn surjectivity() {
        let homs = catalog::homs();
        let surj: Vec<bool> = homs.iter().map(|(_, f)| f.is_surjective().unwrap()).collect();
        assert_eq!(surj, vec![true, false, false, true]);
        let b = catalog::line();
        let sq = AlgebraHom::from_strs(&b, &b, &["x^2"]).unwrap();
        assert!(!sq.is_surjective().unwrap());
        let shift = AlgebraHom::from_strs(&b, &b, &["2x + 1"]).unwrap();
        assert!(shift.is_surjective().unwrap());
    }

    #[test]
    fn localization_recognized() {
        let homs = catalog::homs();
        let loc: Vec<bool> = homs.iter().map(|(_, f)| f.is_localization().unwrap()).collect();
        assert_eq!(loc, vec![false, false, true, false]);
        let s = homs[2].1.localization_element().unwrap().unwrap();
        assert_eq!(catalog::line().format(&s), "x");
        // 2 - 2xy presents the same ring
        let b = FPAlgebra::from_strs(Field::Rational, &["x", "y"], &["2 - 2x*y"]).unwrap();
        let f = AlgebraHom::from_strs(&catalog::line(), &b, &["x"]).unwrap();
        assert!(f.is_localization().unwrap());
    }

    #[test]
    fn tensor_presentation() {
        let (y, g, f) = tensor(&catalog::base_change_pairs()[0].2, &catalog::line()).unwrap();
        assert_eq!(y.to_string(), "Q[t,x]/(t^2 + 1)");
        assert_eq!(g.target(), &y);
        assert_eq!(f.images()[0], y.var(1));
        assert!(matches!(
            tensor(&catalog::line(), &catalog::line()),
            Err(Error::CoproductFailure(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        for (_, f) in catalog::homs() {
            assert_eq!(AlgebraHom::parse(&f.to_text()).unwrap(), f);
        }
    }
}
