//! Recursive-descent parser for curve input files.
//!
//! ```text
//! expression := ('+'|'-')? term (('+'|'-') term)*
//! term       := factor ('*' factor)*
//! factor     := base ('^' natural)?
//! base       := rational | variable | '(' expression ')'
//! rational   := integer ('/' positive-integer)?
//! ```
//!
//! A rational-function input may contain one top-level `/`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational};
use crate::poly::{MultiPoly, Var};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn lex(s: &str, line: usize, col0: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[st..i].iter().collect();
            out.push(Spanned { tok: Tok::Int(digits.parse().expect("digits")), col });
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Spanned { tok: Tok::Ident(chars[st..i].iter().collect()), col });
        } else if "+-*^/()".contains(c) {
            out.push(Spanned { tok: Tok::Op(c), col });
            i += 1;
        } else {
            return Err(Error::Parse { line, column: col, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_col: usize,
    vars: &'a [Var],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.col(), message: message.into() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expression(&mut self) -> Result<MultiPoly> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let b = self.base()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(b.pow(k))
                }
                _ => Err(self.err("expected a natural exponent")),
            }
        } else {
            Ok(b)
        }
    }

    fn base(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut r = Rational::from_integer(n);
                // integer '/' positive-integer binds as one rational
                if self.peek() == Some(&Tok::Op('/')) {
                    if let Some(Tok::Int(d)) = self.toks.get(self.pos + 1).map(|t| t.tok.clone()) {
                        if d.is_zero() {
                            self.pos += 1;
                            return Err(self.err("zero denominator"));
                        }
                        self.pos += 2;
                        r /= Rational::from_integer(d);
                    }
                }
                Ok(MultiPoly::constant(FieldElement::from_rational(r)))
            }
            Some(Tok::Ident(name)) => {
                let col = self.col();
                match Var::from_name(&name).filter(|v| self.vars.contains(v)) {
                    Some(v) => {
                        self.pos += 1;
                        Ok(MultiPoly::var(v))
                    }
                    None => Err(Error::UnknownVariable { name, line: self.line, column: col }),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expression()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses `num` or `num / den`. `line` and `col0` locate the text in its
/// file for diagnostics (both 1-based).
pub fn parse_fraction(text: &str, vars: &[Var], line: usize, col0: usize) -> Result<(MultiPoly, MultiPoly)> {
    let toks = lex(text, line, col0)?;
    let end_col = col0 + text.chars().count();
    let mut p = Parser { toks, pos: 0, line, end_col, vars };
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let num = p.expression()?;
    let den = if p.eat('/') { p.expression()? } else { MultiPoly::one() };
    if p.peek().is_some() {
        return Err(p.err("unexpected token"));
    }
    if den.is_zero() {
        return Err(Error::Parse { line, column: col0, message: "division by zero".into() });
    }
    Ok((num, den))
}

/// Parses a polynomial; a top-level `/` is only allowed by a constant.
pub fn parse_polynomial(text: &str, vars: &[Var], line: usize, col0: usize) -> Result<MultiPoly> {
    let (num, den) = parse_fraction(text, vars, line, col0)?;
    match den.constant_value() {
        Some(c) => Ok(num.scale(&c.inv()?)),
        None => Err(Error::Parse { line, column: col0, message: "polynomial expected".into() }),
    }
}

/// The two kinds of curve input.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveKind {
    Implicit,
    Parametric,
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveInput {
    pub kind: CurveKind,
    /// `(label, raw text)` per equation, in file order.
    pub sources: Vec<(String, String)>,
    /// `f1, f2` or `(num_i, den_i)` for `p1, p2, p3`.
    pub equations: Vec<(MultiPoly, MultiPoly)>,
}

const IMPLICIT: [Var; 3] = [Var::X1, Var::X2, Var::X3];

/// Reads `f1:`/`f2:` or `p1:`/`p2:`/`p3:` lines. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_input(text: &str) -> Result<CurveInput> {
    let mut found: Vec<(String, String, usize, usize)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(colon) = raw.find(':') else {
            return Err(Error::Parse { line, column: 1, message: "expected 'label: expression'".into() });
        };
        let label = raw[..colon].trim().to_string();
        if !matches!(label.as_str(), "f1" | "f2" | "p1" | "p2" | "p3") {
            return Err(Error::Parse { line, column: raw.len() - trimmed.len() + 1, message: format!("unknown label '{label}'") });
        }
        if found.iter().any(|f| f.0 == label) {
            return Err(Error::Parse { line, column: 1, message: format!("duplicate label '{label}'") });
        }
        let col0 = raw[..=colon].chars().count() + 1;
        found.push((label, raw[colon + 1..].to_string(), line, col0));
    }
    if found.is_empty() {
        return Err(Error::EmptyInput);
    }
    let implicit = found[0].0.starts_with('f');
    let labels: &[&str] = if implicit { &["f1", "f2"] } else { &["p1", "p2", "p3"] };
    let mut sources = Vec::new();
    let mut equations = Vec::new();
    for l in labels {
        let Some((label, src, line, col0)) = found.iter().find(|f| f.0 == *l) else {
            return Err(Error::Parse { line: text.lines().count().max(1), column: 1, message: format!("missing '{l}'") });
        };
        let eq = if implicit {
            (parse_polynomial(src, &IMPLICIT, *line, *col0)?, MultiPoly::one())
        } else {
            parse_fraction(src, &[Var::S], *line, *col0)?
        };
        sources.push((label.clone(), src.trim().to_string()));
        equations.push(eq);
    }
    if let Some(extra) = found.iter().find(|f| !labels.contains(&f.0.as_str())) {
        return Err(Error::Parse { line: extra.2, column: 1, message: format!("label '{}' mixes curve kinds", extra.0) });
    }
    let kind = if implicit { CurveKind::Implicit } else { CurveKind::Parametric };
    Ok(CurveInput { kind, sources, equations })
}

/// Reads `q1: t^n`, `q2: ...`, `q3: ...` with rational coefficients.
pub fn parse_asymptote(text: &str) -> Result<crate::asymptote::AsymptoteParam> {
    let mut qs: [Option<MultiPoly>; 3] = [None, None, None];
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let slot = match raw.split_once(':').map(|(l, _)| l.trim()) {
            Some("q1") => 0,
            Some("q2") => 1,
            Some("q3") => 2,
            _ => return Err(Error::Parse { line, column: 1, message: "expected 'q1:', 'q2:' or 'q3:'".into() }),
        };
        let colon = raw.find(':').expect("split above");
        let col0 = raw[..=colon].chars().count() + 1;
        qs[slot] = Some(parse_polynomial(&raw[colon + 1..], &[Var::T], line, col0)?);
    }
    if qs.iter().all(Option::is_none) {
        return Err(Error::EmptyInput);
    }
    let [q1, q2, q3] = qs.map(|q| q.unwrap_or_else(MultiPoly::zero));
    let n = q1.degree(Var::T).unwrap_or(0);
    if n == 0 || q1 != MultiPoly::var(Var::T).pow(n) {
        return Err(Error::InvalidArgument("q1 must be t^n with n >= 1".into()));
    }
    let up = |q: &MultiPoly| q.to_upoly(Var::T).expect("only t");
    crate::asymptote::AsymptoteParam::new(n, up(&q2), up(&q3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn example_one_input() {
        let c = parse_input("f1: -x2^2 - 2*x1*x3 + 2*x2*x3 - x1 + 3\nf2: x3 + x1*x2 - x2^2").unwrap();
        assert_eq!(c.kind, CurveKind::Implicit);
        assert_eq!(c.equations[1].0.to_string(), "x1*x2 - x2^2 + x3");
    }

    #[test]
    fn parametric_input() {
        let c = parse_input("# comment\np1: (-1+s^2)/s^3\np2: (-1+s^2)/s^2\np3: 1/s\n").unwrap();
        assert_eq!(c.kind, CurveKind::Parametric);
        assert_eq!(c.equations[2].1, MultiPoly::var(Var::S));
        assert_eq!(c.equations[2].0, MultiPoly::one());
    }

    #[test]
    fn rationals_and_division() {
        let (n, d) = parse_fraction("1/2*s^2 - 3/4", &[Var::S], 1, 1).unwrap();
        assert_eq!(d, MultiPoly::one());
        assert_eq!(n.coefficient(&crate::poly::exps(&[(Var::S, 2)])), FieldElement::from(rat(1, 2)));
        // 2/s is a fraction, not a rational
        let (_, d) = parse_fraction("2/s", &[Var::S], 1, 1).unwrap();
        assert_eq!(d, MultiPoly::var(Var::S));
        // the grammar reads 2/3^2 as (2/3)^2
        let (n, _) = parse_fraction("2/3^2", &[Var::S], 1, 1).unwrap();
        assert_eq!(n.constant_value(), Some(FieldElement::from(rat(4, 9))));
        let p = parse_polynomial("x1/2", &IMPLICIT, 1, 1).unwrap();
        assert_eq!(p, MultiPoly::var(Var::X1).scale(&FieldElement::from(rat(1, 2))));
    }

    #[test]
    fn asymptote_input() {
        let a = parse_asymptote("q1: t^3\nq2: -t^2 + 1/3\nq3: -t\n").unwrap();
        assert_eq!(a.to_string(), "(t^3, -t^2 + 1/3, -t)");
        assert!(matches!(parse_asymptote("q1: 2*t\n"), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn trailing_operator() {
        match parse_input("f1: x1 +\nf2: x2") {
            Err(Error::Parse { line: 1, column, .. }) => assert_eq!(column, 9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagnostics() {
        assert!(matches!(parse_input("f1: x1 + y\nf2: x2"), Err(Error::UnknownVariable { line: 1, column: 10, .. })));
        assert_eq!(parse_input("# nothing\n\n"), Err(Error::EmptyInput));
        assert!(matches!(parse_input("f1: x1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_input("f1: (x1\nf2: x2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_input("p1: s\np2: x1\np3: s"), Err(Error::UnknownVariable { .. })));
    }
}
