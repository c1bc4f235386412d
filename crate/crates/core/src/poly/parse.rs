//! Recursive-descent parser for polynomial text.
//!
//! Accepts the flat canonical form (`-3/2*x^2*y + z`) plus parentheses,
//! unary minus and integer powers of subexpressions (`(x - y)^4`).

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PolyError, SparsePoly, MAX_DIM};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(PolyError::Syntax {
                    pos: start,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<SparsePoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SparsePoly, PolyError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SparsePoly, PolyError> {
        let at = self.offset();
        let (base, single_var) = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.peek() {
                Some(Tok::Num(_)) => {
                    let k = self.small_int()?;
                    Ok(base.pow(k))
                }
                Some(Tok::LParen) => {
                    // fractional power, only on a bare variable: x^(p/q)
                    self.bump();
                    let num = self.small_int()?;
                    let den = if let Some(Tok::Slash) = self.peek() {
                        self.bump();
                        self.small_int()?
                    } else {
                        1
                    };
                    if den == 0 {
                        return self.err("zero denominator in exponent");
                    }
                    if self.bump() != Some(Tok::RParen) {
                        return self.err("expected ')'");
                    }
                    let Some(var) = single_var else {
                        return Err(PolyError::Syntax {
                            pos: at,
                            msg: "fractional powers apply to a single variable".into(),
                        });
                    };
                    let mut e = vec![Rational::zero(); self.n()];
                    e[var] = crate::rational::q(num as i64, den as i64);
                    SparsePoly::from_rational_terms(self.n(), [(crate::rational::int(1), e)])
                }
                _ => self.err("expected exponent after '^'"),
            }
        } else {
            Ok(base)
        }
    }

    fn small_int(&mut self) -> Result<u32, PolyError> {
        match self.bump() {
            Some(Tok::Num(n)) => {
                let v: Option<u32> = num_traits::ToPrimitive::to_u32(&n);
                match v {
                    Some(v) if v <= 1024 => Ok(v),
                    _ => {
                        self.pos -= 1;
                        self.err("exponent too large")
                    }
                }
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.err("expected a nonnegative integer")
            }
        }
    }

    fn atom(&mut self) -> Result<(SparsePoly, Option<usize>), PolyError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let mut value = Rational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            value /= Rational::from_integer(d);
                        }
                        Some(Tok::Num(_)) => {
                            return Err(PolyError::Syntax {
                                pos: at,
                                msg: "division by zero".into(),
                            })
                        }
                        _ => {
                            self.pos -= 1;
                            return self.err("expected integer denominator after '/'");
                        }
                    }
                }
                Ok((SparsePoly::constant(self.n(), value), None))
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok((SparsePoly::variable(self.n(), i), Some(i))),
                None => Err(PolyError::UnknownVariable { name, pos: at }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return self.err("expected ')'");
                }
                Ok((inner, None))
            }
            Some(_) => {
                self.pos -= 1;
                self.err("expected a number, variable or '('")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` over the ordered variable list.
pub fn parse_poly(text: &str, variables: &[String]) -> Result<SparsePoly, PolyError> {
    if variables.is_empty() {
        return Err(PolyError::NoVariables);
    }
    if variables.len() > MAX_DIM {
        return Err(PolyError::Dimension(variables.len()));
    }
    for (i, v) in variables.iter().enumerate() {
        if variables[..i].contains(v) {
            return Err(PolyError::DuplicateVariable(v.clone()));
        }
    }
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars: variables,
    };
    let poly = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}

/// Conventional names `x, y, z, w` for the first `n` coordinates.
pub fn default_variables(n: usize) -> Vec<String> {
    ["x", "y", "z", "w"]
        .iter()
        .take(n)
        .map(|s| s.to_string())
        .collect()
}

/// Parses with variables inferred from the text: `x, y, z, w` order when every
/// identifier is one of those, alphabetical otherwise. `min_dim` pads with the
/// conventional names so that e.g. `"x^2"` can be read in two dimensions.
pub fn parse_poly_infer(
    text: &str,
    min_dim: usize,
) -> Result<(SparsePoly, Vec<String>), PolyError> {
    let toks = tokenize(text)?;
    let mut names: Vec<String> = Vec::new();
    for (_, t) in &toks {
        if let Tok::Ident(s) = t {
            if !names.contains(s) {
                names.push(s.clone());
            }
        }
    }
    let conventional = ["x", "y", "z", "w"];
    let vars = if names.iter().all(|n| conventional.contains(&n.as_str())) {
        let highest = names
            .iter()
            .map(|n| conventional.iter().position(|c| c == n).unwrap() + 1)
            .max()
            .unwrap_or(0)
            .max(min_dim)
            .max(1);
        default_variables(highest.min(MAX_DIM.max(highest)))
    } else {
        names.sort();
        names
    };
    let p = parse_poly(text, &vars)?;
    Ok((p, vars))
}
