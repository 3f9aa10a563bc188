//! Text formats for polynomials, algebras and algebra homomorphisms.
//!
//! Polynomials use `+ - * ^`, parentheses, juxtaposition and rational
//! literals `p/q`. An algebra file is a sequence of directives:
//!
//! ```text
//! # the cusp
//! field Q
//! vars x y
//! rel y^2 - x^3
//! ```
//!
//! A homomorphism file has `[source]` and `[target]` sections in that form
//! followed by a `[map]` section of `x = <polynomial>` lines.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{Field, Polynomial};
use crate::error::{Error, Result};

/// Exponents above this are rejected rather than expanded.
pub const MAX_EXPONENT: u32 = 64;
/// Intermediate results with more terms than this are rejected.
pub const MAX_TERMS: usize = 4096;
const MAX_DEPTH: usize = 64;

/// An unvalidated algebra presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub field: Field,
    pub vars: Vec<String>,
    pub relators: Vec<Polynomial>,
}

/// An unvalidated homomorphism: one image per source variable, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpec {
    pub source: AlgebraSpec,
    pub target: AlgebraSpec,
    pub images: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Lexed { tok, col });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n: BigInt = s.parse().expect("digits");
            out.push(Lexed { tok: Tok::Num(n), col });
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push(Lexed {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else {
            return Err(Error::parse(line, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    line: usize,
    end_col: usize,
    field: &'a Field,
    vars: &'a [String],
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |l| l.col)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.line, self.col(), msg))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|l| l.tok.clone());
        self.pos += 1;
        t
    }

    fn checked(&self, p: Polynomial) -> Result<Polynomial> {
        if p.num_terms() > MAX_TERMS {
            return self.err(format!("expression expands to more than {MAX_TERMS} terms"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        let nvars = self.vars.len();
        let mut acc = Polynomial::zero(self.field, nvars);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    false
                }
                Some(Tok::Minus) => {
                    self.bump();
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            acc = self.checked(acc)?;
            first = false;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.bump();
            } else if !self.starts_factor() {
                break;
            }
            let f = self.factor()?;
            acc = self.checked(acc.mul(&f))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let e = match self.bump() {
            Some(Tok::Num(n)) => n,
            _ => {
                self.pos -= 1;
                return self.err("expected a nonnegative integer exponent");
            }
        };
        let e: u32 = match u32::try_from(&e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => {
                self.pos -= 1;
                return self.err(format!("exponent exceeds {MAX_EXPONENT}"));
            }
        };
        let mut acc = Polynomial::one(self.field, self.vars.len());
        for _ in 0..e {
            acc = self.checked(acc.mul(&base))?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let nvars = self.vars.len();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let mut d = BigInt::from(1);
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(q)) => d = q,
                        _ => {
                            self.pos -= 1;
                            return self.err("expected a denominator");
                        }
                    }
                }
                if d.is_zero() || !self.field.invertible(&d) {
                    self.pos -= 1;
                    return self.err("denominator is not invertible in the field");
                }
                let c = self.field.normalize(BigRational::new(n, d));
                Ok(Polynomial::constant(self.field, nvars, c))
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Polynomial::var(self.field, nvars, i)),
                None => {
                    self.pos -= 1;
                    self.err(format!("unknown variable '{name}'"))
                }
            },
            Some(Tok::LParen) => {
                let p = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return self.err("expected ')'");
                }
                Ok(p)
            }
            Some(_) => {
                self.pos -= 1;
                self.err("expected a number, variable or '('")
            }
            None => self.err("unexpected end of expression"),
        }
    }
}

fn parse_at(src: &str, field: &Field, vars: &[String], line: usize, col0: usize) -> Result<Polynomial> {
    let toks = lex(src, line, col0)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col: col0 + src.chars().count(),
        field,
        vars,
        depth: 0,
    };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let poly = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected token");
    }
    Ok(poly)
}

/// Parses one polynomial in the given variables. Positions are reported on
/// line 1, columns counted from 1.
pub fn parse_polynomial(src: &str, field: &Field, vars: &[String]) -> Result<Polynomial> {
    parse_at(src, field, vars, 1, 1)
}

fn parse_field(arg: &str, line: usize, col: usize) -> Result<Field> {
    let arg = arg.trim();
    if arg == "Q" {
        return Ok(Field::Rational);
    }
    let p = arg
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|r| r.trim().parse::<u64>().ok());
    match p {
        Some(p) => Field::prime(p).map_err(|e| Error::parse(line, col, e.to_string())),
        None => Err(Error::parse(line, col, format!("unknown field '{arg}', expected Q or GF(p)"))),
    }
}

fn valid_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(is_ident_start) && cs.all(is_ident_char)
}

/// Strips a `#` comment and returns the content with its starting column.
fn content(raw: &str) -> (&str, usize) {
    let body = raw.split('#').next().unwrap_or("");
    let lead = body.len() - body.trim_start().len();
    (body.trim(), lead + 1)
}

struct AlgebraBuilder {
    field: Option<Field>,
    vars: Option<Vec<String>>,
    rels: Vec<Polynomial>,
}

impl AlgebraBuilder {
    fn new() -> Self {
        AlgebraBuilder {
            field: None,
            vars: None,
            rels: Vec::new(),
        }
    }

    fn line(&mut self, text: &str, line: usize, col: usize) -> Result<()> {
        let (key, rest) = match text.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r),
            None => (text, ""),
        };
        let arg_col = col + text.len() - rest.trim_start().len();
        match key {
            "field" => {
                if self.field.is_some() {
                    return Err(Error::parse(line, col, "field declared twice"));
                }
                if !self.rels.is_empty() {
                    return Err(Error::parse(line, col, "field must precede relations"));
                }
                self.field = Some(parse_field(rest, line, arg_col)?);
            }
            "vars" => {
                if self.vars.is_some() {
                    return Err(Error::parse(line, col, "vars declared twice"));
                }
                let mut vars: Vec<String> = Vec::new();
                for v in rest.split_whitespace() {
                    if !valid_ident(v) {
                        return Err(Error::parse(line, arg_col, format!("invalid variable name '{v}'")));
                    }
                    if vars.iter().any(|w| w == v) {
                        return Err(Error::parse(line, arg_col, format!("variable '{v}' repeated")));
                    }
                    vars.push(v.to_string());
                }
                self.vars = Some(vars);
            }
            "rel" => {
                let vars = self
                    .vars
                    .as_ref()
                    .ok_or_else(|| Error::parse(line, col, "vars must precede relations"))?;
                let field = self.field.get_or_insert(Field::Rational);
                self.rels.push(parse_at(rest, field, vars, line, arg_col)?);
            }
            _ => {
                return Err(Error::parse(
                    line,
                    col,
                    format!("unknown directive '{key}', expected field, vars or rel"),
                ))
            }
        }
        Ok(())
    }

    fn finish(self, line: usize) -> Result<AlgebraSpec> {
        let vars = self
            .vars
            .ok_or_else(|| Error::parse(line, 1, "missing vars directive"))?;
        Ok(AlgebraSpec {
            field: self.field.unwrap_or(Field::Rational),
            vars,
            relators: self.rels,
        })
    }
}

/// Parses an algebra file.
pub fn parse_algebra(src: &str) -> Result<AlgebraSpec> {
    let mut b = AlgebraBuilder::new();
    let mut last = 1;
    for (k, raw) in src.lines().enumerate() {
        last = k + 1;
        let (text, col) = content(raw);
        if !text.is_empty() {
            b.line(text, k + 1, col)?;
        }
    }
    b.finish(last)
}

/// Parses a homomorphism file.
pub fn parse_hom(src: &str) -> Result<HomSpec> {
    #[derive(PartialEq)]
    enum Sec {
        None,
        Source,
        Target,
        Map,
    }
    let mut sec = Sec::None;
    let mut source = AlgebraBuilder::new();
    let mut target = AlgebraBuilder::new();
    let mut seen = [false; 3];
    let mut maps: Vec<(String, String, usize, usize)> = Vec::new();
    let mut last = 1;
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        last = line;
        let (text, col) = content(raw);
        if text.is_empty() {
            continue;
        }
        if text.starts_with('[') {
            let (next, idx) = match text {
                "[source]" => (Sec::Source, 0),
                "[target]" => (Sec::Target, 1),
                "[map]" => (Sec::Map, 2),
                _ => return Err(Error::parse(line, col, format!("unknown section '{text}'"))),
            };
            if seen[idx] {
                return Err(Error::parse(line, col, format!("section '{text}' repeated")));
            }
            seen[idx] = true;
            sec = next;
            continue;
        }
        match sec {
            Sec::None => return Err(Error::parse(line, col, "content before the first section")),
            Sec::Source => source.line(text, line, col)?,
            Sec::Target => target.line(text, line, col)?,
            Sec::Map => {
                let (lhs, rhs) = text
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line, col, "expected 'variable = polynomial'"))?;
                let rhs_col = col + lhs.len() + 1;
                maps.push((lhs.trim().to_string(), rhs.to_string(), line, rhs_col));
            }
        }
    }
    for (i, name) in ["[source]", "[target]", "[map]"].iter().enumerate() {
        if !seen[i] {
            return Err(Error::parse(last, 1, format!("missing section {name}")));
        }
    }
    let source = source.finish(last)?;
    let target = target.finish(last)?;
    if source.field != target.field {
        return Err(Error::parse(last, 1, "source and target fields differ"));
    }
    let mut images: Vec<Option<Polynomial>> = vec![None; source.vars.len()];
    for (lhs, rhs, line, col) in maps {
        let i = source
            .vars
            .iter()
            .position(|v| *v == lhs)
            .ok_or_else(|| Error::parse(line, 1, format!("'{lhs}' is not a source variable")))?;
        if images[i].is_some() {
            return Err(Error::parse(line, 1, format!("image of '{lhs}' given twice")));
        }
        images[i] = Some(parse_at(rhs.trim_end(), &target.field, &target.vars, line, col)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| Error::parse(last, 1, format!("no image for '{}'", source.vars[i]))))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomSpec {
        source,
        target,
        images,
    })
}

/// Prints an algebra in the file format; `parse_algebra` inverts it.
pub fn format_algebra(spec: &AlgebraSpec) -> String {
    let order = Default::default();
    let mut s = format!("field {}\nvars {}\n", spec.field.tag(), spec.vars.join(" "));
    for r in &spec.relators {
        s.push_str(&format!("rel {}\n", r.format(&spec.vars, order)));
    }
    s
}

/// Prints a homomorphism in the file format; `parse_hom` inverts it.
pub fn format_hom(spec: &HomSpec) -> String {
    let order = Default::default();
    let mut s = format!(
        "[source]\n{}[target]\n{}[map]\n",
        format_algebra(&spec.source),
        format_algebra(&spec.target)
    );
    for (v, p) in spec.source.vars.iter().zip(&spec.images) {
        s.push_str(&format!("{v} = {}\n", p.format(&spec.target.vars, order)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::poly::MonomialOrder;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn show(p: &Polynomial) -> String {
        p.format(&xy(), MonomialOrder::DegRevLex)
    }

    #[test]
    fn grammar() {
        let q = Field::Rational;
        let p = parse_polynomial("y^2 - x^3", &q, &xy()).unwrap();
        assert_eq!(show(&p), "-x^3 + y^2");
        let p = parse_polynomial("2x y - (x+1)^2 + 1/2 x", &q, &xy()).unwrap();
        assert_eq!(show(&p), "-x^2 + 2x*y - 3/2x - 1");
        let p = parse_polynomial("-3x^2*x + x*(x^2)*3", &q, &xy()).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn printed_forms_reparse() {
        let q = Field::Rational;
        for src in ["-x^3 + y^2", "1/2x", "-3x^2", "x*y^3 - 7/3", "0"] {
            let p = parse_polynomial(src, &q, &xy()).unwrap();
            let again = parse_polynomial(&show(&p), &q, &xy()).unwrap();
            assert_eq!(p, again, "{src}");
        }
    }

    #[test]
    fn prime_field_literals() {
        let f = Field::prime(5).unwrap();
        let p = parse_polynomial("7x + 1/2", &f, &xy()).unwrap();
        assert_eq!(show(&p), "2x + 3");
        let e = parse_polynomial("1/5", &f, &xy()).unwrap_err();
        assert!(matches!(e, Error::Parse { column: 3, .. }), "{e:?}");
    }

    #[test]
    fn errors_carry_positions() {
        let q = Field::Rational;
        match parse_polynomial("x + z", &q, &xy()) {
            Err(Error::Parse { line: 1, column: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_polynomial("(x + y", &q, &xy()) {
            Err(Error::Parse { column: 7, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("x^99", &q, &xy()).is_err());
        assert!(parse_polynomial("", &q, &xy()).is_err());
        assert!(parse_polynomial("x $", &q, &xy()).is_err());
    }

    #[test]
    fn algebra_file() {
        let spec = parse_algebra("# cusp\nfield Q\nvars x y\nrel y^2 - x^3\n").unwrap();
        assert_eq!(spec.vars, xy());
        assert_eq!(spec.relators.len(), 1);
        assert_eq!(parse_algebra(&format_algebra(&spec)).unwrap(), spec);
        match parse_algebra("vars x\nrel x + w\n") {
            Err(Error::Parse { line: 2, column: 9, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_algebra("rel x\n").is_err());
        assert!(parse_algebra("field GF(4)\nvars x\n").is_err());
        assert!(parse_algebra("vars x x\n").is_err());
    }

    #[test]
    fn hom_file() {
        let src = "[source]\nvars x\n[target]\nvars x y\nrel x*y - 1\n[map]\nx = x\n";
        let spec = parse_hom(src).unwrap();
        assert_eq!(spec.images.len(), 1);
        assert_eq!(parse_hom(&format_hom(&spec)).unwrap(), spec);
        assert!(parse_hom("[source]\nvars x\n[target]\nvars y\n[map]\n").is_err());
        match parse_hom("[source]\nvars x\n[target]\nvars y\n[map]\nx = y + q\n") {
            Err(Error::Parse { line: 6, column: 9, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
