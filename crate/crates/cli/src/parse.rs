//! Parser for binary forms written as polynomial expressions in `x` and `y`.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*"? factor)*
//! factor   := rational | var ("^" nat)?
//! var      := "x" | "y"
//! rational := int ("/" nat)?
//! ```
//!
//! Whitespace is ignored everywhere, so `2 x^2 y` reads as `2*x^2*y`. A leading
//! sign on the first term is accepted.

use std::fmt;

use rug::{Integer, Rational};
use waring_core::BinaryForm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Empty,
    /// Byte offset into the original text and what went wrong there.
    Syntax { pos: usize, msg: String },
    NotHomogeneous { pos: usize, expected: usize, found: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty => f.write_str("empty expression"),
            ParseError::Syntax { pos, msg } => write!(f, "syntax error at position {pos}: {msg}"),
            ParseError::NotHomogeneous { pos, expected, found } => write!(
                f,
                "form is not homogeneous: term at position {pos} has degree {found}, expected {expected}"
            ),
        }
    }
}

impl std::error::Error for ParseError {}

struct Term {
    pos: usize,
    coeff: Rational,
    x: usize,
    y: usize,
}

struct Parser<'a> {
    src: &'a str,
    // non-whitespace characters with their byte offsets
    chars: Vec<(usize, char)>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { src, chars, at: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |&(p, _)| p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.at += 1;
        }
        (!s.is_empty()).then_some(s)
    }

    fn nat(&mut self, what: &str) -> Result<Integer, ParseError> {
        match self.digits() {
            Some(s) => Ok(s.parse::<Integer>().expect("ascii digits")),
            None => self.error(format!("expected {what}")),
        }
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        let pos = self.pos();
        let n = self.nat("exponent")?;
        n.to_usize().filter(|&e| e <= 1 << 16).ok_or(ParseError::Syntax {
            pos,
            msg: "exponent too large".into(),
        })
    }

    fn factor(&mut self, term: &mut Term) -> Result<(), ParseError> {
        match self.peek() {
            Some(c @ ('x' | 'y')) => {
                self.at += 1;
                let e = if self.peek() == Some('^') {
                    self.at += 1;
                    self.exponent()?
                } else {
                    1
                };
                if c == 'x' {
                    term.x += e;
                } else {
                    term.y += e;
                }
                Ok(())
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat("integer")?;
                let den = if self.peek() == Some('/') {
                    self.at += 1;
                    let pos = self.pos();
                    let den = self.nat("denominator")?;
                    if den == 0 {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    den
                } else {
                    Integer::from(1)
                };
                term.coeff *= Rational::from((num, den));
                Ok(())
            }
            Some(c) => self.error(format!("unexpected '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }

    fn term(&mut self, negative: bool) -> Result<Term, ParseError> {
        let mut term = Term {
            pos: self.pos(),
            coeff: Rational::from(if negative { -1 } else { 1 }),
            x: 0,
            y: 0,
        };
        self.factor(&mut term)?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.at += 1;
                    self.factor(&mut term)?;
                }
                Some(c) if c == 'x' || c == 'y' || c.is_ascii_digit() => self.factor(&mut term)?,
                _ => return Ok(term),
            }
        }
    }

    fn expr(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some('-') => {
                self.at += 1;
                true
            }
            Some('+') => {
                self.at += 1;
                false
            }
            _ => false,
        };
        loop {
            terms.push(self.term(negative)?);
            negative = match self.peek() {
                Some('+') => false,
                Some('-') => true,
                None => return Ok(terms),
                Some(c) => return self.error(format!("unexpected '{c}'")),
            };
            self.at += 1;
        }
    }
}

/// Parses an expression into a form whose degree is the common total degree of
/// its terms. Terms that cancel still fix the degree, so `x^2 - x^2` is the zero
/// form of degree 2.
pub fn parse_form(text: &str) -> Result<BinaryForm, ParseError> {
    let mut p = Parser::new(text);
    if p.chars.is_empty() {
        return Err(ParseError::Empty);
    }
    let terms = p.expr()?;
    let d = terms[0].x + terms[0].y;
    let mut coeffs = vec![Rational::new(); d + 1];
    for t in terms {
        let found = t.x + t.y;
        if found != d {
            return Err(ParseError::NotHomogeneous {
                pos: t.pos,
                expected: d,
                found,
            });
        }
        coeffs[t.y] += t.coeff;
    }
    Ok(BinaryForm::new(d, coeffs).expect("length is degree + 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn reads_examples() {
        let f = parse_form("x^3 - 3*x*y^2").unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.coeffs(), &[q(1, 1), q(0, 1), q(-3, 1), q(0, 1)]);
        let g = parse_form("1/2*x^2*y^2").unwrap();
        assert_eq!(g.coeffs(), &[q(0, 1), q(0, 1), q(1, 2), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn implicit_products_and_whitespace() {
        let f = parse_form(" 2 x^2 y + x y x - 3/4 y x y ").unwrap();
        assert_eq!(f.coeffs(), &[q(0, 1), q(3, 1), q(-3, 4), q(0, 1)]);
        assert_eq!(parse_form("-x^2").unwrap().coeffs(), &[q(-1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(parse_form("2*3").unwrap().coeffs(), &[q(6, 1)]);
        assert_eq!(parse_form("x^2 - x^2").unwrap(), BinaryForm::zero(2));
        assert_eq!(parse_form("1 0").unwrap().coeffs(), &[q(10, 1)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_form("   "), Err(ParseError::Empty));
        assert_eq!(
            parse_form("x^2 + y^3"),
            Err(ParseError::NotHomogeneous {
                pos: 6,
                expected: 2,
                found: 3
            })
        );
        assert!(matches!(parse_form("x^2 + z"), Err(ParseError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_form("x^"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_form("1/0*x"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_form("x +"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_form("x/2"), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_form("x -- y"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn display_round_trips() {
        for s in ["x^3 - 3*x*y^2", "1/2*x^2*y^2", "-x + 2*y", "0*x^3", "0", "-7/3", "x^2*y"] {
            assert_eq!(parse_form(s).unwrap().to_string(), s);
        }
    }
}
