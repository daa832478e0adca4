//! Polynomials of the free graded algebra `F⟨X⟩`, their text syntax, and
//! multihomogeneous splitting.
//!
//! Variables are `x[g,i]`: degree `g`, copy index `i ≥ 1`. Indices are
//! per-degree, so `x[0,1]` and `x[1,1]` are different variables. In parity
//! notation the group is `G × Z_2` and `x[g,i]`, `y[g,i]` stand for degrees
//! `(g,0)` and `(g,1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::group::{DegreeLiteral, Group, GroupElement, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown group element `{0}`")]
    UnknownGroupElement(String),
    #[error("`y` variables need a group of the form G × Z_2 with parity notation enabled")]
    ParityVariableWithoutZ2,
    #[error("variable index must be at least 1")]
    ZeroIndex,
    #[error("scalar terms are not allowed; the free algebra has no unit")]
    EmptyWord,
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error("polynomial is not multihomogeneous")]
    NotMultihomogeneous,
}

impl From<GroupError> for FreeError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::UnknownElement(s) => FreeError::UnknownGroupElement(s),
            other => FreeError::UnknownGroupElement(other.to_string()),
        }
    }
}

/// The variable `x_g^{(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedVariable {
    pub degree: GroupElement,
    pub index: u32,
}

impl GradedVariable {
    pub fn new(degree: GroupElement, index: u32) -> GradedVariable {
        GradedVariable { degree, index }
    }
}

pub type Word = Vec<GradedVariable>;

/// How variables are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    /// `x[g,i]` with `g` the full degree.
    #[default]
    Plain,
    /// Group `G × Z_2`; `x[g,i]` for `(g,0)` and `y[g,i]` for `(g,1)`.
    Parity,
}

/// Parse settings: the grading group, notation, and whether integer literals
/// of cyclic groups are reduced modulo the order.
#[derive(Debug, Clone, Copy)]
pub struct ParseContext<'a> {
    pub group: &'a Group,
    pub notation: Notation,
    pub modular_literals: bool,
}

impl<'a> ParseContext<'a> {
    pub fn new(group: &'a Group) -> ParseContext<'a> {
        ParseContext {
            group,
            notation: Notation::Plain,
            modular_literals: false,
        }
    }

    pub fn parity(group: &'a Group) -> ParseContext<'a> {
        ParseContext {
            group,
            notation: Notation::Parity,
            modular_literals: false,
        }
    }

    pub fn with_modular_literals(mut self, on: bool) -> ParseContext<'a> {
        self.modular_literals = on;
        self
    }
}

/// Splits a parity degree `(g, δ)` into `g` and `δ`.
pub fn split_parity(degree: &GroupElement) -> Option<(&GroupElement, u64)> {
    match degree {
        GroupElement::Tuple(items) if items.len() == 2 => match &items[1] {
            GroupElement::Residue(d) => Some((&items[0], *d)),
            _ => None,
        },
        _ => None,
    }
}

/// The base group `G` when `group` is `G × Z_2`.
pub fn parity_base(group: &Group) -> Option<&Group> {
    match group {
        Group::Product(factors) if factors.len() == 2 && factors[1] == Group::Cyclic(2) => {
            Some(&factors[0])
        }
        _ => None,
    }
}

pub fn parity_degree(g: &GroupElement, parity: u64) -> GroupElement {
    GroupElement::Tuple(vec![g.clone(), GroupElement::Residue(parity)])
}

/// A linear combination of non-empty words with nonzero rational
/// coefficients; equal words are always merged.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedPolynomial {
    terms: BTreeMap<Word, BigRational>,
}

impl GradedPolynomial {
    pub fn zero() -> GradedPolynomial {
        GradedPolynomial::default()
    }

    pub fn monomial(word: Word, coeff: BigRational) -> Result<GradedPolynomial, FreeError> {
        let mut p = GradedPolynomial::zero();
        p.add_term(word, coeff)?;
        Ok(p)
    }

    /// `x_{h_1}^{(1)} x_{h_2}^{(2)} ⋯` with coefficient 1.
    pub fn multilinear_word(degrees: &[GroupElement]) -> Result<GradedPolynomial, FreeError> {
        let word = degrees
            .iter()
            .enumerate()
            .map(|(pos, g)| GradedVariable::new(g.clone(), pos as u32 + 1))
            .collect();
        GradedPolynomial::monomial(word, BigRational::one())
    }

    pub fn add_term(&mut self, word: Word, coeff: BigRational) -> Result<(), FreeError> {
        if word.is_empty() {
            return Err(FreeError::EmptyWord);
        }
        if word.iter().any(|v| v.index == 0) {
            return Err(FreeError::ZeroIndex);
        }
        let entry = self
            .terms
            .entry(word.clone())
            .or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &Word) -> Option<&BigRational> {
        self.terms.get(word)
    }

    pub fn add(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone())
                .expect("words already valid");
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> GradedPolynomial {
        if c.is_zero() {
            return GradedPolynomial::zero();
        }
        GradedPolynomial {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn sub(&self, other: &GradedPolynomial) -> GradedPolynomial {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().cloned());
                out.add_term(w, ca * cb).expect("words already valid");
            }
        }
        out
    }

    /// All variables occurring in the polynomial.
    pub fn variables(&self) -> BTreeSet<GradedVariable> {
        self.terms.keys().flat_map(|w| w.iter().cloned()).collect()
    }

    /// Number of distinct variables.
    pub fn arity(&self) -> usize {
        self.variables().len()
    }

    /// Every monomial contains every variable exactly once.
    pub fn is_multilinear(&self) -> bool {
        let vars = self.variables();
        self.terms
            .keys()
            .all(|w| w.len() == vars.len() && w.iter().collect::<BTreeSet<_>>().len() == w.len())
    }

    pub fn is_multihomogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|w| multidegree(w));
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    /// Parts of equal multidegree, ordered by multidegree.
    pub fn multihomogeneous_components(&self) -> Vec<GradedPolynomial> {
        let mut parts: BTreeMap<Vec<(GradedVariable, usize)>, GradedPolynomial> = BTreeMap::new();
        for (w, c) in &self.terms {
            let key: Vec<_> = multidegree(w).into_iter().collect();
            parts
                .entry(key)
                .or_default()
                .terms
                .insert(w.clone(), c.clone());
        }
        parts.into_values().collect()
    }

    /// Renders the polynomial in the syntax accepted by [`parse`]. Terms are
    /// listed by their sequence of variable indices, then by word.
    pub fn pretty(&self, group: &Group, notation: Notation) -> String {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(w, _)| w.iter().map(|v| v.index).collect::<Vec<_>>());
        render_terms(terms.into_iter(), rational_coefficient, |w| {
            render_word(w, group, notation)
        })
    }
}

/// Occurrence count of each variable in a word.
pub fn multidegree(word: &[GradedVariable]) -> BTreeMap<GradedVariable, usize> {
    let mut out = BTreeMap::new();
    for v in word {
        *out.entry(v.clone()).or_insert(0) += 1;
    }
    out
}

/// Sign and magnitude text of a coefficient; the magnitude is `None` for 1.
pub(crate) fn rational_coefficient(c: &BigRational) -> (bool, Option<String>) {
    let abs = c.abs();
    (
        c.is_negative(),
        if abs.is_one() {
            None
        } else {
            Some(abs.to_string())
        },
    )
}

pub(crate) fn render_terms<'w, C: 'w>(
    terms: impl Iterator<Item = (&'w Word, &'w C)>,
    coeff: impl Fn(&C) -> (bool, Option<String>),
    word: impl Fn(&Word) -> String,
) -> String {
    let mut out = String::new();
    for (pos, (w, c)) in terms.enumerate() {
        let (negative, magnitude) = coeff(c);
        match (pos, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if let Some(m) = magnitude {
            out.push_str(&m);
        }
        out.push_str(&word(w));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn render_variable(v: &GradedVariable, group: &Group, notation: Notation) -> String {
    if notation == Notation::Parity {
        if let (Some(base), Some((g, parity))) = (parity_base(group), split_parity(&v.degree)) {
            let letter = if parity == 1 { 'y' } else { 'x' };
            return format!("{letter}[{},{}]", base.display(g), v.index);
        }
    }
    format!("x[{},{}]", group.display(&v.degree), v.index)
}

pub fn render_word(word: &[GradedVariable], group: &Group, notation: Notation) -> String {
    word.iter()
        .map(|v| render_variable(v, group, notation))
        .collect()
}

impl fmt::Display for GradedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{:?},{}]", self.degree, self.index)
    }
}

/// Parses a polynomial. Grammar:
///
/// ```text
/// expr   := ['+'|'-'] term (('+'|'-') term)*
/// term   := [int ['/' int]] factor+
/// factor := var | '(' expr ')'
/// var    := ('x'|'y') '[' degree ',' int ']'
/// degree := ['-'] int | name | '(' degree (',' degree)* ')'
/// ```
pub fn parse(text: &str, ctx: &ParseContext<'_>) -> Result<GradedPolynomial, FreeError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    p.skip_ws();
    // The printer renders the zero polynomial as `0`.
    if p.at_end() || text.trim() == "0" {
        return Ok(GradedPolynomial::zero());
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a single degree literal such as `2`, `-1`, `a` or `(1,0)`.
pub fn parse_degree_literal(text: &str) -> Result<DegreeLiteral, FreeError> {
    let group = Group::Integers;
    let ctx = ParseContext::new(&group);
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx: &ctx,
    };
    p.skip_ws();
    let lit = p.degree()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(lit)
}

/// Parses a comma-separated list of degree literals; commas inside
/// parentheses belong to tuple literals.
pub fn parse_degree_list(text: &str) -> Result<Vec<DegreeLiteral>, FreeError> {
    let group = Group::Integers;
    let ctx = ParseContext::new(&group);
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx: &ctx,
    };
    let mut out = Vec::new();
    p.skip_ws();
    if p.at_end() {
        return Ok(out);
    }
    loop {
        out.push(p.degree()?);
        p.skip_ws();
        if p.at_end() {
            return Ok(out);
        }
        p.expect(b',')?;
        p.skip_ws();
    }
}

struct Parser<'s, 'c> {
    src: &'s [u8],
    pos: usize,
    ctx: &'c ParseContext<'c>,
}

impl Parser<'_, '_> {
    fn error(&self, message: &str) -> FreeError {
        FreeError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), FreeError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt, FreeError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn expr(&mut self) -> Result<GradedPolynomial, FreeError> {
        self.skip_ws();
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = GradedPolynomial::zero();
        loop {
            let t = self.term()?;
            acc = if negative { acc.sub(&t) } else { acc.add(&t) };
            self.skip_ws();
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<GradedPolynomial, FreeError> {
        self.skip_ws();
        let mut coeff = BigRational::one();
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.integer()?;
            self.skip_ws();
            let mut den = BigInt::one();
            if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                den = self.integer()?;
                if den.is_zero() {
                    return Err(self.error("zero denominator"));
                }
            }
            coeff = BigRational::new(num, den);
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
        }
        let mut acc: Option<GradedPolynomial> = None;
        loop {
            self.skip_ws();
            let factor = match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    self.expect(b')')?;
                    inner
                }
                Some(b'x') | Some(b'y') => self.variable()?,
                _ => break,
            };
            acc = Some(match acc {
                None => factor,
                Some(a) => a.mul(&factor),
            });
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
        }
        match acc {
            Some(p) => Ok(p.scale(&coeff)),
            None if self.at_end() || matches!(self.peek(), Some(b'+' | b'-' | b')')) => {
                Err(FreeError::EmptyWord)
            }
            None => Err(self.error("expected a variable or `(`")),
        }
    }

    fn variable(&mut self) -> Result<GradedPolynomial, FreeError> {
        let letter = self.peek().expect("caller checked");
        self.pos += 1;
        self.expect(b'[')?;
        self.skip_ws();
        let lit = self.degree()?;
        self.expect(b',')?;
        self.skip_ws();
        let index_at = self.pos;
        let index = self.integer()?;
        self.expect(b']')?;
        let index: u32 = index.try_into().map_err(|_| FreeError::Syntax {
            position: index_at,
            message: "variable index too large".into(),
        })?;
        if index == 0 {
            return Err(FreeError::ZeroIndex);
        }
        let degree = match self.ctx.notation {
            Notation::Parity => {
                let base = parity_base(self.ctx.group).ok_or(FreeError::ParityVariableWithoutZ2)?;
                let g = base.element_from_literal(&lit, self.ctx.modular_literals)?;
                parity_degree(&g, u64::from(letter == b'y'))
            }
            Notation::Plain => {
                if letter == b'y' {
                    return Err(FreeError::ParityVariableWithoutZ2);
                }
                self.ctx
                    .group
                    .element_from_literal(&lit, self.ctx.modular_literals)?
            }
        };
        GradedPolynomial::monomial(vec![GradedVariable::new(degree, index)], BigRational::one())
    }

    fn degree(&mut self) -> Result<DegreeLiteral, FreeError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let mut items = vec![self.degree()?];
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            items.push(self.degree()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            return Ok(DegreeLiteral::Tuple(items));
                        }
                        _ => return Err(self.error("expected `,` or `)` in degree")),
                    }
                }
            }
            Some(b'-') => {
                self.pos += 1;
                self.skip_ws();
                Ok(DegreeLiteral::Int(-self.integer()?))
            }
            Some(c) if c.is_ascii_digit() => Ok(DegreeLiteral::Int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name");
                Ok(DegreeLiteral::Name(name.to_string()))
            }
            _ => Err(self.error("expected a degree")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Group {
        Group::cyclic(n).unwrap()
    }

    fn r(v: u64) -> GroupElement {
        GroupElement::Residue(v)
    }

    #[test]
    fn parses_commutator_of_neutral_variables() {
        let g = z(2);
        let f = parse("x[0,1]x[0,2] - x[0,2]x[0,1]", &ParseContext::new(&g)).unwrap();
        assert_eq!(f.len(), 2);
        let w = vec![GradedVariable::new(r(0), 1), GradedVariable::new(r(0), 2)];
        assert_eq!(f.coefficient(&w), Some(&BigRational::one()));
        assert_eq!(f.pretty(&g, Notation::Plain), "x[0,1]x[0,2] - x[0,2]x[0,1]");
    }

    #[test]
    fn distributes_coefficients() {
        let g = z(2);
        let f = parse("3x[1,1](x[1,2] + x[0,3])", &ParseContext::new(&g)).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f
            .terms()
            .all(|(_, c)| *c == BigRational::from_integer(3.into())));
        assert!(!f.is_multihomogeneous());
        assert_eq!(f.multihomogeneous_components().len(), 2);
    }

    #[test]
    fn strict_and_modular_literals() {
        let g = z(3);
        assert_eq!(
            parse("x[5,1]", &ParseContext::new(&g)),
            Err(FreeError::UnknownGroupElement("5".into()))
        );
        let f = parse("x[5,1]", &ParseContext::new(&g).with_modular_literals(true)).unwrap();
        assert_eq!(f.variables().into_iter().next().unwrap().degree, r(2));
        let f = parse(
            "x[-1,1]",
            &ParseContext::new(&g).with_modular_literals(true),
        )
        .unwrap();
        assert_eq!(f.variables().into_iter().next().unwrap().degree, r(2));
    }

    #[test]
    fn merges_equal_words() {
        let g = z(2);
        let f = parse("x[1,1]x[1,2] + x[1,1]x[1,2]", &ParseContext::new(&g)).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.pretty(&g, Notation::Plain), "2x[1,1]x[1,2]");
        assert!(parse("x[1,1] - x[1,1]", &ParseContext::new(&g))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn negative_and_fractional_coefficients() {
        let g = z(2);
        let f = parse("-x[1,1]", &ParseContext::new(&g)).unwrap();
        assert_eq!(f.pretty(&g, Notation::Plain), "-x[1,1]");
        let f = parse("1/2 x[1,1] - 3/4x[0,1]", &ParseContext::new(&g)).unwrap();
        let text = f.pretty(&g, Notation::Plain);
        assert_eq!(text, "-3/4x[0,1] + 1/2x[1,1]");
        assert_eq!(parse(&text, &ParseContext::new(&g)).unwrap(), f);
    }

    #[test]
    fn product_degrees_and_parity() {
        let g = Group::product(vec![z(2), z(2)]).unwrap();
        let f = parse("x[(1,0),1]", &ParseContext::new(&g)).unwrap();
        assert_eq!(f.pretty(&g, Notation::Plain), "x[(1,0),1]");
        let f = parse("y[0,1]y[0,2] + y[0,2]y[0,1]", &ParseContext::parity(&g)).unwrap();
        assert_eq!(
            f.pretty(&g, Notation::Parity),
            "y[0,1]y[0,2] + y[0,2]y[0,1]"
        );
        assert_eq!(
            parse("y[0,1]", &ParseContext::new(&g)),
            Err(FreeError::ParityVariableWithoutZ2)
        );
        let h = Group::product(vec![z(2), z(3)]).unwrap();
        assert_eq!(
            parse("y[0,1]", &ParseContext::parity(&h)),
            Err(FreeError::ParityVariableWithoutZ2)
        );
    }

    #[test]
    fn rejects_scalars_and_bad_input() {
        let g = z(2);
        assert_eq!(
            parse("2", &ParseContext::new(&g)),
            Err(FreeError::EmptyWord)
        );
        assert_eq!(
            parse("x[1,1] + 1", &ParseContext::new(&g)),
            Err(FreeError::EmptyWord)
        );
        assert_eq!(
            parse("x[1,0]", &ParseContext::new(&g)),
            Err(FreeError::ZeroIndex)
        );
        assert!(matches!(
            parse("x[1,1", &ParseContext::new(&g)),
            Err(FreeError::Syntax { .. })
        ));
        assert!(matches!(
            parse("x[1,1] ]", &ParseContext::new(&g)),
            Err(FreeError::Syntax { .. })
        ));
        assert!(parse("", &ParseContext::new(&g)).unwrap().is_zero());
    }

    #[test]
    fn multilinearity() {
        let g = z(2);
        let ctx = ParseContext::new(&g);
        assert!(parse("x[1,1]x[1,2]x[1,3] - x[1,3]x[1,2]x[1,1]", &ctx)
            .unwrap()
            .is_multilinear());
        assert!(!parse("x[1,1]x[1,1]", &ctx).unwrap().is_multilinear());
        assert!(!parse("x[1,1]x[1,2] + x[1,1]", &ctx)
            .unwrap()
            .is_multilinear());
        assert!(
            parse("x[1,1]x[1,2] + x[1,1]", &ctx)
                .unwrap()
                .multihomogeneous_components()
                .len()
                == 2
        );
        assert!(GradedPolynomial::zero()
            .multihomogeneous_components()
            .is_empty());
    }

    #[test]
    fn degree_lists() {
        let lits = parse_degree_list("0, 1, (1,0), -2, a").unwrap();
        assert_eq!(lits.len(), 5);
        assert_eq!(lits[2].to_string(), "(1,0)");
        assert_eq!(lits[3].to_string(), "-2");
    }
}
