//! Polynomial expression parser.
//!
//! Grammar:
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := number | var | '(' expr ')'
//! ```
//! Numbers are integer, finite-decimal, or `p/q` rational literals, all
//! converted exactly. Implicit multiplication is rejected. Exponents must be
//! non-negative integer literals.

use num_rational::BigRational;
use num_traits::One;

use super::Polynomial;
use crate::numfmt::decimal_body_to_rational;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(text: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer {
            src: text.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            if lx.pos >= lx.src.len() {
                break;
            }
            let start = lx.pos;
            let c = lx.src[lx.pos];
            let tok = match c {
                b'+' => {
                    lx.pos += 1;
                    Tok::Plus
                }
                b'-' => {
                    lx.pos += 1;
                    Tok::Minus
                }
                b'*' => {
                    lx.pos += 1;
                    Tok::Star
                }
                b'^' => {
                    lx.pos += 1;
                    Tok::Caret
                }
                b'(' => {
                    lx.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    lx.pos += 1;
                    Tok::RParen
                }
                b'0'..=b'9' | b'.' => Tok::Num(lx.number()?),
                c if c.is_ascii_alphabetic() || c == b'_' => Tok::Var(lx.ident()),
                _ => {
                    return Err(Error::Syntax {
                        offset: start,
                        message: format!("unexpected character `{}`", c as char),
                    })
                }
            };
            out.push((tok, start));
        }
        Ok(out)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn number(&mut self) -> Result<BigRational> {
        let start = self.pos;
        let int_part = self.digits();
        // decimal literal
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let frac = self.digits();
            let body = format!("{int_part}.{frac}");
            return decimal_body_to_rational(&body).ok_or(Error::Syntax {
                offset: start,
                message: format!("malformed decimal literal `{body}`"),
            });
        }
        if int_part.is_empty() {
            return Err(Error::Syntax {
                offset: start,
                message: "malformed number".into(),
            });
        }
        // rational literal p/q
        if self.pos < self.src.len() && self.src[self.pos] == b'/' {
            let slash = self.pos;
            self.pos += 1;
            let den = self.digits();
            if den.is_empty() {
                return Err(Error::Syntax {
                    offset: slash + 1,
                    message: "expected denominator digits after `/`".into(),
                });
            }
            let d: num_bigint::BigInt = den.parse().expect("digit string");
            if num_traits::Zero::is_zero(&d) {
                return Err(Error::Syntax {
                    offset: slash + 1,
                    message: "zero denominator".into(),
                });
            }
            let n: num_bigint::BigInt = int_part.parse().expect("digit string");
            return Ok(BigRational::new(n, d));
        }
        let n: num_bigint::BigInt = int_part.parse().expect("digit string");
        Ok(BigRational::from(n))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

/// Map variable names appearing in the token stream to indices.
///
/// With explicit `var_names`, each name must be a member. Otherwise the
/// default schemes apply: `x,y,z` (n = highest letter used) or `x1..xn`
/// (n = highest subscript used); the indexed scheme wins if any `x<digits>`
/// name appears.
fn resolve_vars(
    tokens: &[(Tok, usize)],
    var_names: Option<&[String]>,
) -> Result<(usize, std::collections::HashMap<String, usize>)> {
    let mut map = std::collections::HashMap::new();
    if let Some(names) = var_names {
        for (i, n) in names.iter().enumerate() {
            map.insert(n.clone(), i);
        }
        for (tok, off) in tokens {
            if let Tok::Var(name) = tok {
                if !map.contains_key(name) {
                    return Err(Error::UnknownVariable {
                        name: name.clone(),
                        offset: *off,
                    });
                }
            }
        }
        return Ok((names.len(), map));
    }

    let indexed = tokens.iter().any(|(t, _)| {
        matches!(t, Tok::Var(n) if n.len() > 1
            && n.starts_with('x')
            && n[1..].chars().all(|c| c.is_ascii_digit()))
    });
    let mut n_vars = 0usize;
    for (tok, off) in tokens {
        if let Tok::Var(name) = tok {
            let idx = if indexed {
                let sub: Option<usize> = name
                    .strip_prefix('x')
                    .and_then(|s| if s.is_empty() { None } else { s.parse().ok() });
                match sub {
                    Some(k) if k >= 1 => k - 1,
                    _ => {
                        return Err(Error::UnknownVariable {
                            name: name.clone(),
                            offset: *off,
                        })
                    }
                }
            } else {
                match name.as_str() {
                    "x" => 0,
                    "y" => 1,
                    "z" => 2,
                    _ => {
                        return Err(Error::UnknownVariable {
                            name: name.clone(),
                            offset: *off,
                        })
                    }
                }
            };
            map.insert(name.clone(), idx);
            n_vars = n_vars.max(idx + 1);
        }
    }
    Ok((n_vars, map))
}

struct Parser<'a> {
    tokens: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    n_vars: usize,
    vars: &'a std::collections::HashMap<String, usize>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate_first = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            negate_first = true;
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let off = self.offset();
            match self.bump() {
                Some(Tok::Num(r)) => {
                    if !r.denom().is_one() || num_traits::Signed::is_negative(r.numer()) {
                        return Err(Error::Syntax {
                            offset: off,
                            message: format!("exponent must be a non-negative integer, got `{r}`"),
                        });
                    }
                    let e: u32 = r.numer().try_into().map_err(|_| Error::Syntax {
                        offset: off,
                        message: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                Some(Tok::Minus) => Err(Error::Syntax {
                    offset: off,
                    message: "exponent must be a non-negative integer".into(),
                }),
                _ => Err(Error::Syntax {
                    offset: off,
                    message: "expected integer exponent after `^`".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let off = self.offset();
        match self.bump().cloned() {
            Some(Tok::Num(r)) => Ok(Polynomial::constant(self.n_vars, r)),
            Some(Tok::Var(name)) => {
                let idx = *self.vars.get(&name).expect("resolved in first pass");
                Ok(Polynomial::var(self.n_vars, idx))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Syntax {
                        offset: close,
                        message: "expected `)`".into(),
                    }),
                }
            }
            Some(t) => Err(Error::Syntax {
                offset: off,
                message: format!("unexpected token `{t:?}`"),
            }),
            None => Err(Error::Syntax {
                offset: off,
                message: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parse an expression into canonical sparse form.
///
/// With `var_names = None` the variables are inferred: names from `x,y,z`,
/// or the indexed scheme `x1..xn` when any subscripted name appears.
pub fn parse_poly(text: &str, var_names: Option<&[String]>) -> Result<Polynomial> {
    let tokens = Lexer::tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty input".into(),
        });
    }
    let (n_vars, vars) = resolve_vars(&tokens, var_names)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        end: text.len(),
        n_vars,
        vars: &vars,
    };
    let poly = parser.expr()?;
    if parser.pos < tokens.len() {
        return Err(Error::Syntax {
            offset: parser.offset(),
            message: "trailing input after expression".into(),
        });
    }
    Ok(poly)
}
