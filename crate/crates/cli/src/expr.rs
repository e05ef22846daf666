//! Operator expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' uint)?
//! atom   := rational | ident | 'x' | 'd' | 'D' | '(' expr ')'
//! ```
//!
//! `*` is composition, applied right to left as in `x*d = x∘d`. A rational is
//! `p` or `p/q` with no interior whitespace, so `3/4^2` is `(3/4)^2`.

use std::collections::BTreeMap;
use std::fmt;

use eulerop::number::{self, Rational};
use eulerop::DiffOp;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Param(String),
    X,
    Dx,
    Euler,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Group(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("at byte {offset}: {reason}")]
    Syntax { offset: usize, reason: String },
    #[error("unbound parameter {0:?}")]
    Unbound(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(r) => format!("number {r}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(offset: usize, reason: impl Into<String>) -> ExprError {
    ExprError::Syntax { offset, reason: reason.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'/' {
                i += 1;
                let den_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if den_start == i {
                    return Err(syntax(den_start, "expected denominator digits after '/'"));
                }
            }
            if i < bytes.len() && bytes[i] == b'.' {
                return Err(syntax(i, "decimal literals are not supported; use p/q"));
            }
            let r = number::parse(&text[start..i]).map_err(|e| syntax(start, e.to_string()))?;
            out.push((start, Tok::Num(r)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(syntax(start, format!("unknown token {ch:?}")));
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Num(r) if r.is_integer() && !r.is_negative() => {
                let n = number::as_integer(&r)
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| syntax(at, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), n))
            }
            t => Err(syntax(at, format!("expected a non-negative integer exponent, found {}", t.describe()))),
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(r) => Ok(Expr::Num(r)),
            Tok::Ident(s) => Ok(match s.as_str() {
                "x" => Expr::X,
                "d" => Expr::Dx,
                "D" => Expr::Euler,
                _ => Expr::Param(s),
            }),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(Expr::Group(Box::new(inner))),
                    t => Err(syntax(close, format!("expected ')', found {}", t.describe()))),
                }
            }
            t => Err(syntax(at, format!("expected an operand, found {}", t.describe()))),
        }
    }
}

pub fn parse_operator(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => Err(syntax(p.offset(), format!("unexpected {}", t.describe()))),
    }
}

impl Expr {
    /// Free identifiers, sorted.
    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        match self {
            Expr::Param(s) => out.push(s.clone()),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::Group(a) => a.collect_params(out),
            Expr::Num(_) | Expr::X | Expr::Dx | Expr::Euler => {}
        }
    }

    pub fn lower(&self, bindings: &BTreeMap<String, Rational>) -> Result<DiffOp, ExprError> {
        Ok(match self {
            Expr::Num(r) => DiffOp::scalar(r.clone()),
            Expr::Param(s) => DiffOp::scalar(bindings.get(s).cloned().ok_or_else(|| ExprError::Unbound(s.clone()))?),
            Expr::X => DiffOp::x(),
            Expr::Dx => DiffOp::d(),
            Expr::Euler => DiffOp::euler(),
            Expr::Add(a, b) => &a.lower(bindings)? + &b.lower(bindings)?,
            Expr::Sub(a, b) => &a.lower(bindings)? - &b.lower(bindings)?,
            Expr::Mul(a, b) => a.lower(bindings)?.compose(&b.lower(bindings)?),
            Expr::Pow(a, n) => a.lower(bindings)?.pow(*n),
            Expr::Neg(a) => -&a.lower(bindings)?,
            Expr::Group(a) => a.lower(bindings)?,
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) if r.is_zero() => write!(f, "0"),
            Expr::Num(r) => write!(f, "{}", number::to_string(r)),
            Expr::Param(s) => write!(f, "{s}"),
            Expr::X => write!(f, "x"),
            Expr::Dx => write!(f, "d"),
            Expr::Euler => write!(f, "D"),
            Expr::Add(a, b) => write!(f, "{a} + {b}"),
            Expr::Sub(a, b) => write!(f, "{a} - {b}"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Pow(a, n) => write!(f, "{a}^{n}"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Group(a) => write!(f, "({a})"),
        }
    }
}

/// Parses and lowers in one step.
pub fn operator(text: &str, bindings: &BTreeMap<String, Rational>) -> Result<DiffOp, ExprError> {
    parse_operator(text)?.lower(bindings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use eulerop::number::{frac, int};

    fn no_params() -> BTreeMap<String, Rational> {
        BTreeMap::new()
    }

    #[test]
    fn precedence() {
        let e = parse_operator("x*d^2 + d").unwrap();
        assert_eq!(
            e,
            Expr::Add(
                Box::new(Expr::Mul(Box::new(Expr::X), Box::new(Expr::Pow(Box::new(Expr::Dx), 2)))),
                Box::new(Expr::Dx)
            )
        );
        assert_eq!(parse_operator("-x^2").unwrap(), Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::X), 2))));
        assert_eq!(parse_operator("3/4").unwrap(), Expr::Num(frac(3, 4)));
    }

    #[test]
    fn euler_generator() {
        let op = operator("D", &no_params()).unwrap();
        assert_eq!(op.act_monomial(&int(3)), vec![(int(3), int(3))]);
        assert_eq!(op, operator("x*d", &no_params()).unwrap());
    }

    #[test]
    fn non_commutative() {
        let dx = operator("d*x", &no_params()).unwrap();
        let xd = operator("x*d", &no_params()).unwrap();
        assert_eq!(&dx - &xd, DiffOp::identity());
    }

    #[test]
    fn bound_parameters() {
        let b: BTreeMap<_, _> = [("g".to_string(), int(1)), ("a".to_string(), int(-2))].into();
        let op = operator("x*d^2 + (g - x)*d - a", &b).unwrap();
        assert_eq!(op, eulerop::families::confluent_operator(&int(-2), &int(1)));
        assert_eq!(
            parse_operator("x*d^2 + (g - x)*d - a").unwrap().lower(&no_params()),
            Err(ExprError::Unbound("g".into()))
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let cases = [
            ("x +* d", 3),
            ("(x + d", 6),
            ("x $ d", 2),
            ("x^y", 2),
            ("1.5*x", 1),
            ("x d", 2),
            ("", 0),
            ("3/", 2),
        ];
        for (text, offset) in cases {
            match parse_operator(text) {
                Err(ExprError::Syntax { offset: o, .. }) => assert_eq!(o, offset, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }
}
