//! Canonical text and JSON forms of [`SparsePoly`].
//!
//! Text: terms in descending graded-lex order, `c*x1^e1*x2^e2 + ...`, unit
//! coefficients and exponents of 1 omitted, negative terms joined with
//! ` - `. Coefficients from `Z[t]`/`F_p[t]` that are not single monomials
//! are parenthesized. The parser accepts any sum of products of integers,
//! variables, powers and parenthesized subexpressions, so it reads back the
//! canonical form and hand-written input alike.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{BaseRing, Scalar, SparsePoly};
use crate::error::{Error, Result};

fn monomial_text(exps: &[u32], name: impl Fn(usize) -> String) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{e}", name(i)) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Joins signed term strings: each item is (negative?, magnitude text).
fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (k, (neg, body)) in terms.into_iter().enumerate() {
        match (k, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn coefficient_times(c: &BigInt, mono: &str) -> (bool, String) {
    let neg = c.is_negative();
    let mag = c.abs();
    let body = match (mono.is_empty(), mag.is_one()) {
        (true, _) => mag.to_string(),
        (false, true) => mono.to_string(),
        (false, false) => format!("{mag}*{mono}"),
    };
    (neg, body)
}

pub(crate) fn scalar_to_string(s: &Scalar) -> String {
    join_terms(
        s.coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| coefficient_times(c, &monomial_text(&[e as u32], |_| "t".into()))),
    )
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |i: usize| format!("x{}", i + 1);
        let terms = self.terms().rev().map(|(m, c)| {
            let mono = monomial_text(m.exps(), name);
            let nonzero = c.coeffs().iter().filter(|x| !x.is_zero()).count();
            if nonzero == 1 {
                let e = c.coeffs().len() - 1;
                let tpart = monomial_text(&[e as u32], |_| "t".into());
                let joined = match (tpart.is_empty(), mono.is_empty()) {
                    (true, _) => mono,
                    (false, true) => tpart,
                    (false, false) => format!("{tpart}*{mono}"),
                };
                coefficient_times(c.coeffs().last().unwrap(), &joined)
            } else if mono.is_empty() {
                (false, format!("({})", scalar_to_string(c)))
            } else {
                (false, format!("({})*{mono}", scalar_to_string(c)))
            }
        });
        f.write_str(&join_terms(terms))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Var(usize),
    Param,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str, nvars: usize) -> Result<Vec<Token>> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Num(s[start..i].parse().unwrap()));
            }
            't' => {
                out.push(Token::Param);
                i += 1;
            }
            'x' => {
                let start = i + 1;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let idx: usize = s[start..i]
                    .parse()
                    .map_err(|_| Error::parse(format!("char {start}"), "expected variable index after x"))?;
                if idx == 0 || idx > nvars {
                    return Err(Error::parse(format!("char {start}"), format!("variable x{idx} out of range 1..={nvars}")));
                }
                out.push(Token::Var(idx - 1));
            }
            other => return Err(Error::parse(format!("char {i}"), format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    base: BaseRing,
    nvars: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(format!("token {}", self.pos), msg)
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = SparsePoly::zero(self.base, self.nvars);
        let mut sign = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if sign { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Token::Plus) => sign = false,
                Some(Token::Minus) => sign = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparsePoly> {
        let atom = match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => SparsePoly::constant(self.base, self.nvars, self.base.from_bigint(n)),
            Some(Token::Var(i)) => SparsePoly::var(self.base, self.nvars, i),
            Some(Token::Param) => {
                if !self.base.has_parameter() {
                    return Err(self.err("parameter t is not available over this base ring"));
                }
                SparsePoly::constant(self.base, self.nvars, self.base.parameter())
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.err("expected ')'"));
                }
                inner
            }
            _ => return Err(self.err("expected a number, variable or '('")),
        };
        self.pos += 1;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(e)) => {
                    let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    return Ok(atom.pow(e));
                }
                _ => return Err(self.err("expected exponent")),
            }
        }
        Ok(atom)
    }
}

impl SparsePoly {
    /// Parses the text form (see the module docs) into a polynomial in
    /// `nvars` variables over `base`.
    pub fn parse(base: BaseRing, nvars: usize, s: &str) -> Result<SparsePoly> {
        let tokens = tokenize(s, nvars)?;
        let mut p = Parser { tokens: &tokens, pos: 0, base, nvars };
        let out = p.expr()?;
        if p.pos != tokens.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

/// JSON form: `{"base": .., "vars": [..], "terms": [[coeffs..], [exps..]]}`.
/// Coefficients are decimal strings over `Z`/`F_p` and arrays of decimal
/// strings (dense in `t`, lowest degree first) over `Z[t]`/`F_p[t]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub base: BaseRing,
    pub vars: Vec<String>,
    pub terms: (Vec<serde_json::Value>, Vec<Vec<u32>>),
}

impl From<&SparsePoly> for PolyJson {
    fn from(p: &SparsePoly) -> Self {
        let mut coeffs = Vec::with_capacity(p.len());
        let mut exps = Vec::with_capacity(p.len());
        for (m, c) in p.terms().rev() {
            let v = if p.base().has_parameter() {
                serde_json::Value::Array(c.coeffs().iter().map(|x| x.to_string().into()).collect())
            } else {
                c.as_integer().unwrap().to_string().into()
            };
            coeffs.push(v);
            exps.push(m.exps().to_vec());
        }
        PolyJson {
            base: p.base(),
            vars: (1..=p.nvars()).map(|i| format!("x{i}")).collect(),
            terms: (coeffs, exps),
        }
    }
}

fn decimal(v: &serde_json::Value, path: &str) -> Result<BigInt> {
    match v {
        serde_json::Value::String(s) => s.parse().map_err(|_| Error::parse(path, format!("bad integer {s:?}"))),
        serde_json::Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| Error::parse(path, format!("bad integer {n}"))),
        _ => Err(Error::parse(path, "expected integer")),
    }
}

impl TryFrom<&PolyJson> for SparsePoly {
    type Error = Error;

    fn try_from(j: &PolyJson) -> Result<SparsePoly> {
        j.base.check()?;
        let (coeffs, exps) = &j.terms;
        if coeffs.len() != exps.len() {
            return Err(Error::parse("terms", "coefficient and exponent lists differ in length"));
        }
        let nvars = j.vars.len();
        let mut terms = Vec::with_capacity(coeffs.len());
        for (k, (c, e)) in coeffs.iter().zip(exps).enumerate() {
            let path = format!("terms[0][{k}]");
            let list = match c {
                serde_json::Value::Array(items) => {
                    items.iter().map(|x| decimal(x, &path)).collect::<Result<Vec<_>>>()?
                }
                other => vec![decimal(other, &path)?],
            };
            if e.len() != nvars {
                return Err(Error::parse(format!("terms[1][{k}]"), "exponent vector has wrong length"));
            }
            terms.push((e.clone(), j.base.element(list)?));
        }
        SparsePoly::from_terms(j.base, nvars, terms)
    }
}

impl SparsePoly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson::from(self)
    }
}
