//! The expression language of the command line: rationals, coordinate
//! symbols, `+ - * ^`, parentheses, and `[ form | field ]` sections.
//!
//! `^` is the wedge, never exponentiation; powers are written as repeated
//! `*`. A leading `-` (also after `(`) is accepted so that canonical
//! renderings of negative values re-parse. Errors carry the column and the
//! expected-token set.

use crate::chiral::TildeUSection;
use crate::courant::CourantSection;
use crate::supercalc::{KahlerOneForm, SuperElement};
use crate::symcalc::{Form, Polynomial, Rational, VectorField};
use crate::vertex::VertexSection;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<&'static str>,
}

impl ParseError {
    fn new(pos: Pos, message: impl Into<String>, expected: Vec<&'static str>) -> Self {
        ParseError {
            line: pos.line,
            col: pos.col,
            message: message.into(),
            expected,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Sym(SymKind, usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Pipe,
    Eof,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SymKind {
    X,
    Dx,
    Theta,
    KDx,
    KDt,
    Frame,
    Iota,
    Lie,
}

fn lex(src: &str, n: usize) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            ' ' | '\t' | '\r' => {}
            '+' => out.push((Tok::Plus, pos)),
            '-' => out.push((Tok::Minus, pos)),
            '*' => out.push((Tok::Star, pos)),
            '^' => out.push((Tok::Caret, pos)),
            '(' => out.push((Tok::LParen, pos)),
            ')' => out.push((Tok::RParen, pos)),
            '[' => out.push((Tok::LBracket, pos)),
            ']' => out.push((Tok::RBracket, pos)),
            '|' => out.push((Tok::Pipe, pos)),
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                    col += 1;
                }
                let mut text: String = chars[start..i].iter().collect();
                if i < chars.len() && chars[i] == '/' {
                    let mut j = i + 1;
                    let dstart = j;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == dstart {
                        return Err(ParseError::new(
                            Pos { line, col: col + 1 },
                            "missing denominator",
                            vec!["digit"],
                        ));
                    }
                    text.push('/');
                    text.extend(chars[i + 1..j].iter());
                    col += j - i;
                    i = j;
                }
                let r = Rational::parse(&text)
                    .ok_or_else(|| ParseError::new(pos, format!("bad rational `{text}`"), vec![]))?;
                out.push((Tok::Num(r), pos));
                continue;
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                    col += 1;
                }
                let base: String = chars[start..i].iter().collect();
                let dstart = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                    col += 1;
                }
                if dstart == i {
                    return Err(ParseError::new(
                        pos,
                        format!("symbol `{base}` needs an index"),
                        vec!["x<i>", "dx<i>", "t<i>", "Dx<i>", "Dt<i>", "e<i>", "i<i>", "L<i>"],
                    ));
                }
                let idx: usize = chars[dstart..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| ParseError::new(pos, "index too large", vec![]))?;
                let kind = match base.as_str() {
                    "x" => SymKind::X,
                    "dx" => SymKind::Dx,
                    "t" => SymKind::Theta,
                    "Dx" => SymKind::KDx,
                    "Dt" => SymKind::KDt,
                    "e" => SymKind::Frame,
                    "i" => SymKind::Iota,
                    "L" => SymKind::Lie,
                    other => {
                        return Err(ParseError::new(
                            pos,
                            format!("unknown symbol `{other}{idx}`"),
                            vec!["x", "dx", "t", "Dx", "Dt", "e", "i", "L"],
                        ))
                    }
                };
                if idx == 0 || idx > n {
                    return Err(ParseError::new(
                        pos,
                        format!("symbol index {idx} out of range 1..={n}"),
                        vec![],
                    ));
                }
                out.push((Tok::Sym(kind, idx), pos));
                continue;
            }
            other => {
                return Err(ParseError::new(
                    pos,
                    format!("unexpected character `{other}`"),
                    vec![],
                ))
            }
        }
        i += 1;
        col += 1;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

/// A value of the expression language.
#[derive(Clone, Debug)]
pub enum Value {
    Scalar(Polynomial),
    Frm(Form),
    Fld(VectorField),
    Sup(SuperElement),
    Kf(KahlerOneForm),
    Tu(TildeUSection),
    Section(Box<Value>, Box<Value>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Frm(_) => "form",
            Value::Fld(_) => "field",
            Value::Sup(_) => "graded element",
            Value::Kf(_) => "Kahler form",
            Value::Tu(_) => "algebroid section",
            Value::Section(..) => "section",
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &'static str) -> Result<Pos, ParseError> {
        let (t, p) = self.bump();
        if t == tok {
            Ok(p)
        } else {
            Err(ParseError::new(
                p,
                format!("unexpected {}", describe(&t)),
                vec![what],
            ))
        }
    }

    fn parse_value(&mut self) -> Result<Value, ParseError> {
        if matches!(self.peek().0, Tok::LBracket) {
            self.bump();
            let left = self.parse_expr()?;
            self.expect(Tok::Pipe, "|")?;
            let right = self.parse_expr()?;
            self.expect(Tok::RBracket, "]")?;
            return Ok(Value::Section(Box::new(left), Box::new(right)));
        }
        self.parse_expr()
    }

    fn parse_expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = if matches!(self.peek().0, Tok::Minus) {
            self.bump();
            let t = self.parse_term()?;
            neg_value(t)
        } else {
            self.parse_term()?
        };
        loop {
            match self.peek().0 {
                Tok::Plus => {
                    let (_, p) = self.bump();
                    let rhs = self.parse_term()?;
                    acc = add_values(acc, rhs, p)?;
                }
                Tok::Minus => {
                    let (_, p) = self.bump();
                    let rhs = self.parse_term()?;
                    acc = add_values(acc, neg_value(rhs), p)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek().0 {
                Tok::Star => {
                    let (_, p) = self.bump();
                    let rhs = self.parse_factor()?;
                    acc = mul_values(acc, rhs, p, self.n)?;
                }
                Tok::Caret => {
                    let (_, p) = self.bump();
                    let rhs = self.parse_factor()?;
                    acc = wedge_values(acc, rhs, p, self.n)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Value, ParseError> {
        let (t, p) = self.bump();
        let n = self.n;
        match t {
            Tok::Num(r) => Ok(Value::Scalar(Polynomial::constant(n, r))),
            Tok::Sym(kind, idx) => Ok(match kind {
                SymKind::X => Value::Scalar(Polynomial::var(n, idx)),
                SymKind::Dx => Value::Frm(Form::basis(n, &[idx as u8])),
                SymKind::Theta => Value::Sup(SuperElement::theta(n, idx)),
                SymKind::KDx => Value::Kf(KahlerOneForm::dx_gen(n, idx)),
                SymKind::KDt => Value::Kf(KahlerOneForm::dtheta_gen(n, idx)),
                SymKind::Frame => Value::Fld(VectorField::frame(n, idx)),
                SymKind::Iota => {
                    Value::Tu(TildeUSection::frame_tensor(n, -1, idx, SuperElement::one(n)))
                }
                SymKind::Lie => {
                    Value::Tu(TildeUSection::frame_tensor(n, 0, idx, SuperElement::one(n)))
                }
            }),
            Tok::LParen => {
                let v = self.parse_expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(v)
            }
            other => Err(ParseError::new(
                p,
                format!("unexpected {}", describe(&other)),
                vec!["rational", "symbol", "("],
            )),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(r) => format!("number `{r}`"),
        Tok::Sym(_, _) => "symbol".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Pipe => "`|`".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn neg_value(v: Value) -> Value {
    match v {
        Value::Scalar(p) => Value::Scalar(p.neg()),
        Value::Frm(w) => Value::Frm(w.neg()),
        Value::Fld(f) => Value::Fld(f.neg()),
        Value::Sup(s) => Value::Sup(s.neg()),
        Value::Kf(k) => Value::Kf(k.neg()),
        Value::Tu(u) => Value::Tu(u.neg()),
        Value::Section(a, b) => Value::Section(Box::new(neg_value(*a)), Box::new(neg_value(*b))),
    }
}

fn type_error(p: Pos, op: &str, a: &Value, b: &Value) -> ParseError {
    ParseError::new(
        p,
        format!("cannot apply `{op}` to {} and {}", a.kind(), b.kind()),
        vec![],
    )
}

fn add_values(a: Value, b: Value, p: Pos) -> Result<Value, ParseError> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(x.add(&y)),
        (Frm(x), Frm(y)) => {
            if x.degree() != y.degree() && !x.is_zero() && !y.is_zero() {
                return Err(ParseError::new(p, "form degrees differ in `+`", vec![]));
            }
            Frm(x.add(&y))
        }
        (Frm(x), Scalar(y)) | (Scalar(y), Frm(x)) if y.is_zero() => Frm(x),
        (Frm(x), Scalar(y)) | (Scalar(y), Frm(x)) if x.degree() == 0 => {
            Scalar(x.coeff(&[]).add(&y))
        }
        (Fld(x), Fld(y)) => Fld(x.add(&y)),
        (Fld(x), Scalar(y)) | (Scalar(y), Fld(x)) if y.is_zero() => Fld(x),
        (Sup(x), Sup(y)) => Sup(x.add(&y)),
        (Sup(x), Scalar(y)) => Sup(x.add(&SuperElement::from_poly(&y))),
        (Scalar(y), Sup(x)) => Sup(SuperElement::from_poly(&y).add(&x)),
        (Kf(x), Kf(y)) => Kf(x.add(&y)),
        (Kf(x), Scalar(y)) | (Scalar(y), Kf(x)) if y.is_zero() => Kf(x),
        (Tu(x), Tu(y)) => Tu(x.add(&y)),
        (Tu(x), Kf(y)) => Tu(x.add(&TildeUSection::from_kform(y))),
        (Kf(y), Tu(x)) => Tu(TildeUSection::from_kform(y).add(&x)),
        (Tu(x), Scalar(y)) | (Scalar(y), Tu(x)) if y.is_zero() => Tu(x),
        (a, b) => return Err(type_error(p, "+", &a, &b)),
    })
}

fn mul_values(a: Value, b: Value, p: Pos, n: usize) -> Result<Value, ParseError> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(x.mul(&y)),
        (Scalar(x), Frm(y)) | (Frm(y), Scalar(x)) => Frm(y.scale(&x)),
        (Scalar(x), Fld(y)) | (Fld(y), Scalar(x)) => Fld(y.scale(&x)),
        (Sup(x), Sup(y)) => Sup(x.mul(&y)),
        (Scalar(x), Sup(y)) => Sup(SuperElement::from_poly(&x).mul(&y)),
        (Sup(x), Scalar(y)) => Sup(x.mul(&SuperElement::from_poly(&y))),
        (Sup(x), Kf(y)) => Kf(y.lmul(&x)),
        (Scalar(x), Kf(y)) => Kf(y.lmul(&SuperElement::from_poly(&x))),
        (Kf(y), Sup(x)) => Kf(y.rmul(&x)),
        (Kf(y), Scalar(x)) => Kf(y.rmul(&SuperElement::from_poly(&x))),
        (Scalar(x), Tu(u)) => Tu(scale_tu(&u, &SuperElement::from_poly(&x), n)),
        (Sup(x), Tu(u)) => Tu(scale_tu(&u, &x, n)),
        (a, b) => return Err(type_error(p, "*", &a, &b)),
    })
}

/// Left coefficient attachment on sections (exact for basis construction).
fn scale_tu(u: &TildeUSection, f: &SuperElement, n: usize) -> TildeUSection {
    let mut out = TildeUSection::from_kform(u.kform().lmul(f));
    for (key, beta) in u.tensor_terms() {
        let mut t = TildeUSection::zero(n);
        t.add_tensor(key.clone(), f.mul(beta));
        out = out.add(&t);
    }
    out
}

fn wedge_values(a: Value, b: Value, p: Pos, n: usize) -> Result<Value, ParseError> {
    use Value::*;
    let promote = |v: Value| -> Value {
        match v {
            Scalar(x) => Frm(Form::from_poly(&x)),
            other => other,
        }
    };
    match (&a, &b) {
        (Scalar(_), Scalar(_)) => Err(ParseError::new(
            p,
            "`^` is the wedge; write powers as repeated `*`",
            vec!["form operand"],
        )),
        (Sup(_), Sup(_)) | (Sup(_), Scalar(_)) | (Scalar(_), Sup(_)) => {
            // in the graded ring the product is the wedge
            mul_values(a, b, p, n)
        }
        _ => match (promote(a), promote(b)) {
            (Frm(x), Frm(y)) => Ok(Frm(x.wedge(&y))),
            (a, b) => Err(type_error(p, "^", &a, &b)),
        },
    }
}

/// Parse a full expression (or `[ left | right ]` section) for n variables.
pub fn parse_value(src: &str, n: usize) -> Result<Value, ParseError> {
    let toks = lex(src, n)?;
    let mut p = Parser { toks, at: 0, n };
    let v = p.parse_value()?;
    let (t, pos) = p.bump();
    if t != Tok::Eof {
        return Err(ParseError::new(
            pos,
            format!("trailing {}", describe(&t)),
            vec!["end of input"],
        ));
    }
    Ok(v)
}

fn err0(msg: impl Into<String>) -> ParseError {
    ParseError {
        line: 1,
        col: 1,
        message: msg.into(),
        expected: vec![],
    }
}

pub fn value_as_polynomial(v: &Value) -> Result<Polynomial, ParseError> {
    match v {
        Value::Scalar(p) => Ok(p.clone()),
        Value::Frm(w) if w.is_zero() => Ok(Polynomial::zero(w.n())),
        Value::Frm(w) if w.degree() == 0 => Ok(w.coeff(&[])),
        other => Err(err0(format!("expected a polynomial, got {}", other.kind()))),
    }
}

pub fn value_as_form(v: &Value, n: usize, degree: Option<usize>) -> Result<Form, ParseError> {
    let w = match v {
        Value::Frm(w) => w.clone(),
        Value::Scalar(p) if p.is_zero() => Form::zero(n, degree.unwrap_or(0)),
        Value::Scalar(p) => Form::from_poly(p),
        other => return Err(err0(format!("expected a form, got {}", other.kind()))),
    };
    if let Some(d) = degree {
        if w.is_zero() {
            return Ok(Form::zero(n, d));
        }
        if w.degree() != d {
            return Err(err0(format!(
                "expected a {d}-form, got degree {}",
                w.degree()
            )));
        }
    }
    Ok(w)
}

pub fn value_as_field(v: &Value, n: usize) -> Result<VectorField, ParseError> {
    match v {
        Value::Fld(f) => Ok(f.clone()),
        Value::Scalar(p) if p.is_zero() => Ok(VectorField::zero(n)),
        other => Err(err0(format!(
            "expected a vector field, got {}",
            other.kind()
        ))),
    }
}

pub fn value_as_super(v: &Value, _n: usize) -> Result<SuperElement, ParseError> {
    match v {
        Value::Sup(s) => Ok(s.clone()),
        Value::Scalar(p) => Ok(SuperElement::from_poly(p)),
        Value::Frm(w) => Ok(SuperElement::from_form(w)),
        other => Err(err0(format!(
            "expected a graded element, got {}",
            other.kind()
        ))),
    }
}

pub fn value_as_courant_section(v: &Value, n: usize) -> Result<CourantSection, ParseError> {
    match v {
        Value::Section(a, b) => {
            let alpha = value_as_form(a, n, Some(1))?;
            let xi = value_as_field(b, n)?;
            Ok(CourantSection { alpha, xi })
        }
        other => Err(err0(format!(
            "expected a section `[form|field]`, got {}",
            other.kind()
        ))),
    }
}

pub fn value_as_vertex_section(v: &Value, n: usize) -> Result<VertexSection, ParseError> {
    let q = value_as_courant_section(v, n)?;
    Ok(VertexSection::new(q.alpha, q.xi.components().to_vec()))
}

pub fn value_as_tilde_u(v: &Value, n: usize) -> Result<TildeUSection, ParseError> {
    match v {
        Value::Tu(u) => Ok(u.clone()),
        Value::Kf(k) => Ok(TildeUSection::from_kform(k.clone())),
        Value::Scalar(p) if p.is_zero() => Ok(TildeUSection::zero(n)),
        other => Err(err0(format!(
            "expected an algebroid section, got {}",
            other.kind()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        // powers are not written with '^'
        let err = parse_value("x1^2", 2).unwrap_err();
        assert_eq!(err.col, 3);
        assert!(err.message.contains("wedge"));
        // courant section
        let v = parse_value("[dx2 | e1]", 2).unwrap();
        let q = value_as_courant_section(&v, 2).unwrap();
        assert_eq!(q.alpha, Form::basis(2, &[2]));
        assert_eq!(q.xi, VectorField::frame(2, 1));
        // 3/2*x1*dx1^dx3
        let v = parse_value("3/2*x1*dx1^dx3", 3).unwrap();
        let w = value_as_form(&v, 3, Some(2)).unwrap();
        let expect = Form::basis(3, &[1, 3])
            .scale(&Polynomial::var(3, 1))
            .scale_rat(&Rational::new(3, 2));
        assert_eq!(w, expect);
    }

    #[test]
    fn error_positions() {
        let err = parse_value("x1 + ", 2).unwrap_err();
        assert_eq!((err.line, err.col), (1, 6));
        let err = parse_value("y1", 2).unwrap_err();
        assert_eq!(err.col, 1);
        let err = parse_value("x3", 2).unwrap_err();
        assert!(err.message.contains("out of range"));
        let err = parse_value("(x1", 2).unwrap_err();
        assert!(err.expected.contains(&")"));
    }

    #[test]
    fn round_trip_canonical_text() {
        let n = 3;
        let mut rng = crate::rng::Rng::new(41);
        for _ in 0..40 {
            let p = crate::rng::sample::poly(&mut rng, n, 3);
            let v = parse_value(&p.to_string(), n).unwrap();
            assert_eq!(value_as_polynomial(&v).unwrap(), p);

            let w = crate::rng::sample::form(&mut rng, n, 2, 3);
            let v = parse_value(&w.to_string(), n).unwrap();
            assert_eq!(value_as_form(&v, n, Some(2)).unwrap(), w);

            let f = crate::rng::sample::field(&mut rng, n, 3);
            let v = parse_value(&f.to_string(), n).unwrap();
            assert_eq!(value_as_field(&v, n).unwrap(), f);

            let s = crate::rng::sample::super_element(&mut rng, n, 3, 2);
            let v = parse_value(&s.to_string(), n).unwrap();
            assert_eq!(value_as_super(&v, n).unwrap(), s);

            let q = crate::courant::rand_section(&mut rng, n, 3);
            let v = parse_value(&q.to_string(), n).unwrap();
            assert_eq!(value_as_courant_section(&v, n).unwrap(), q);
        }
    }

    #[test]
    fn unary_minus_and_sections() {
        let v = parse_value("-x1+x2", 2).unwrap();
        let p = value_as_polynomial(&v).unwrap();
        assert_eq!(p, Polynomial::var(2, 2).sub(&Polynomial::var(2, 1)));
        let v = parse_value("[0|0]", 2).unwrap();
        let q = value_as_courant_section(&v, 2).unwrap();
        assert!(q.alpha.is_zero() && q.xi.is_zero());
    }

    #[test]
    fn tilde_u_expressions() {
        let n = 2;
        let v = parse_value("x1*i1 + t1*L2 + x2*Dx1", n).unwrap();
        let u = value_as_tilde_u(&v, n).unwrap();
        let mut expect = TildeUSection::frame_tensor(n, -1, 1, SuperElement::x(n, 1));
        expect = expect.add(&TildeUSection::frame_tensor(
            n,
            0,
            2,
            SuperElement::theta(n, 1),
        ));
        expect = expect.add(&TildeUSection::from_kform(
            KahlerOneForm::dx_gen(n, 1).lmul(&SuperElement::x(n, 2)),
        ));
        assert_eq!(u, expect);
    }
}
