//! Text grammar for polynomials, shared with the CLI: integer and rational
//! literals, the variable `z`, operators `+ - * / ^`, parentheses. Division
//! is restricted to single-term divisors so that Laurent inputs like
//! `z^2 + 1/z` parse while general rational functions are rejected.

use num_traits::Zero;
use std::collections::BTreeMap;

use crate::poly::{rat, ExactPoly, Rat};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            'z' | 'Z' | 'x' | 'X' | 'w' => {
                toks.push((i, Tok::Var));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: i64 = src[start..i].parse().map_err(|_| Error::Parse {
                    position: start,
                    message: "integer literal out of range".into(),
                })?;
                toks.push((start, Tok::Num(n)));
            }
            other => {
                return Err(Error::Parse {
                    position: i,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(toks)
}

/// Sparse exponent → coefficient map; exponents may be negative.
pub type TermMap = BTreeMap<i64, Rat>;

fn term_insert(m: &mut TermMap, k: i64, c: Rat) {
    let entry = m.entry(k).or_insert_with(Rat::zero);
    *entry += c;
    if entry.is_zero() {
        m.remove(&k);
    }
}

fn term_add(a: &TermMap, b: &TermMap) -> TermMap {
    let mut out = a.clone();
    for (k, c) in b {
        term_insert(&mut out, *k, c.clone());
    }
    out
}

fn term_mul(a: &TermMap, b: &TermMap) -> TermMap {
    let mut out = TermMap::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            term_insert(&mut out, ka + kb, ca * cb);
        }
    }
    out
}

fn term_neg(a: &TermMap) -> TermMap {
    a.iter().map(|(k, c)| (*k, -c)).collect()
}

fn term_pow(a: &TermMap, e: i64, pos: usize) -> Result<TermMap> {
    if e < 0 {
        // Negative powers only of single-term expressions.
        if a.len() != 1 {
            return Err(Error::Parse {
                position: pos,
                message: "negative exponent of a multi-term expression".into(),
            });
        }
        let (k, c) = a.iter().next().unwrap();
        let mut out = TermMap::new();
        let mut acc_k = 0i64;
        let mut acc_c = Rat::from_integer(1.into());
        for _ in 0..(-e) {
            acc_k += k;
            acc_c *= c;
        }
        out.insert(-acc_k, Rat::from_integer(1.into()) / acc_c);
        return Ok(out);
    }
    let mut acc = TermMap::from([(0i64, rat(1))]);
    let mut base = a.clone();
    let mut e = e as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = term_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = term_mul(&base, &base);
        }
    }
    Ok(acc)
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn next_pos(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(usize::MAX)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<TermMap> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                term_neg(&self.term()?)
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = term_add(&acc, &self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = term_add(&acc, &term_neg(&self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TermMap> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = term_mul(&acc, &self.factor()?);
                }
                Some(Tok::Slash) => {
                    let pos = self.next_pos();
                    self.bump();
                    let div = self.factor()?;
                    if div.len() != 1 {
                        return Err(Error::Parse {
                            position: pos,
                            message: "division only by a single-term divisor".into(),
                        });
                    }
                    let (k, c) = div.iter().next().unwrap();
                    if c.is_zero() {
                        return Err(Error::Parse {
                            position: pos,
                            message: "division by zero".into(),
                        });
                    }
                    let inv = TermMap::from([(-k, Rat::from_integer(1.into()) / c)]);
                    acc = term_mul(&acc, &inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<TermMap> {
        let pos = self.next_pos();
        let base = match self.bump() {
            Some(Tok::Num(n)) => TermMap::from([(0i64, rat(n))]),
            Some(Tok::Var) => TermMap::from([(1i64, rat(1))]),
            Some(Tok::Minus) => term_neg(&self.factor()?),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => inner,
                    _ => {
                        return Err(Error::Parse {
                            position: pos,
                            message: "unbalanced parenthesis".into(),
                        })
                    }
                }
            }
            other => {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("expected a factor, found {other:?}"),
                })
            }
        };
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let epos = self.next_pos();
            let neg = matches!(self.peek(), Some(Tok::Minus));
            if neg {
                self.bump();
            }
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e = if neg { -n } else { n };
                    return term_pow(&base, e, epos);
                }
                _ => {
                    return Err(Error::Parse {
                        position: epos,
                        message: "expected integer exponent after '^'".into(),
                    })
                }
            }
        }
        Ok(base)
    }
}

/// Parse a Laurent expression into its sparse exponent map.
pub fn parse_terms(src: &str) -> Result<TermMap> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            position: 0,
            message: "empty expression".into(),
        });
    }
    let mut lexer = Lexer { toks, pos: 0 };
    let map = lexer.expr()?;
    if lexer.pos != lexer.toks.len() {
        let (p, t) = &lexer.toks[lexer.pos];
        return Err(Error::Parse {
            position: *p,
            message: format!("trailing input {t:?}"),
        });
    }
    Ok(map)
}

/// Parse an ordinary polynomial; negative exponents are rejected.
pub fn parse_poly(src: &str) -> Result<ExactPoly> {
    let map = parse_terms(src)?;
    if let Some((k, _)) = map.iter().next() {
        if *k < 0 {
            return Err(Error::Parse {
                position: 0,
                message: format!("negative exponent z^{k} in a polynomial context"),
            });
        }
    }
    let deg = map.keys().next_back().copied().unwrap_or(0).max(0) as usize;
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for (k, c) in map {
        coeffs[k as usize] = c;
    }
    Ok(ExactPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_chebyshev() {
        let p = parse_poly("8*z^4-8*z^2+1").unwrap();
        assert_eq!(p, ExactPoly::from_ints(&[1, 0, -8, 0, 8]));
    }

    #[test]
    fn parses_products_and_fractions() {
        let p = parse_poly("z^2*(z-1)^2").unwrap();
        assert_eq!(p, ExactPoly::from_ints(&[0, 0, 1, -2, 1]));
        let q = parse_poly("1/2*z^2 - 3/4").unwrap();
        assert_eq!(q.coeff(2), crate::poly::ratio(1, 2));
        assert_eq!(q.coeff(0), crate::poly::ratio(-3, 4));
    }

    #[test]
    fn parses_laurent_terms() {
        let m = parse_terms("z^2 + 1/z").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[&2], rat(1));
        assert_eq!(m[&-1], rat(1));
        let n = parse_terms("z^-3 - 2*z").unwrap();
        assert_eq!(n[&-3], rat(1));
        assert_eq!(n[&1], rat(-2));
    }

    #[test]
    fn rejects_with_position() {
        let err = parse_poly("z^2 + $").unwrap_err();
        match err {
            Error::Parse { position, .. } => assert_eq!(position, 6),
            other => panic!("unexpected error {other}"),
        }
        assert!(parse_poly("1/z").is_err());
        assert!(parse_poly("1/(z+1)").is_err());
        assert!(parse_poly("").is_err());
    }

    #[test]
    fn unary_minus() {
        let p = parse_poly("-z^2").unwrap();
        assert_eq!(p, ExactPoly::from_ints(&[0, 0, -1]));
        let q = parse_poly("3*-z").unwrap();
        assert_eq!(q, ExactPoly::from_ints(&[0, -3]));
    }
}
