use std::iter::Peekable;
use std::str::CharIndices;

use thiserror::Error;

use crate::algebra::{Monomial, MonomialOrder, Polynomial, RingContext};
use crate::field::{PrimeModulus, Scalar};

/// A syntax or semantic error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

/// A parsed `.sys` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemDocument {
    pub ring: RingContext,
    pub polynomials: Vec<Polynomial>,
    /// Source line number of each polynomial.
    pub lines: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Int(&'a str),
    Ident(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
}

#[derive(Debug, Clone)]
struct Token<'a> {
    tok: Tok<'a>,
    col: usize,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token<'_>>, ParseError> {
    let mut out = Vec::new();
    let mut chars: Peekable<CharIndices> = text.char_indices().peekable();
    // columns count characters, not bytes
    let col_of = |byte: usize| text[..byte].chars().count() + 1;
    while let Some(&(start, c)) = chars.peek() {
        let col = col_of(start);
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push(Token { tok, col });
        } else if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() || c.is_alphabetic() || c == '_' {
            let numeric = c.is_ascii_digit();
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                let ok = if numeric {
                    d.is_ascii_digit()
                } else {
                    d.is_alphanumeric() || d == '_'
                };
                if !ok {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            let word = &text[start..end];
            out.push(Token {
                tok: if numeric {
                    Tok::Int(word)
                } else {
                    Tok::Ident(word)
                },
                col,
            });
        } else {
            return Err(err(line, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

fn reduce_digits(digits: &str, p: PrimeModulus) -> Scalar {
    let p64 = p.value() as u64;
    let v = digits
        .bytes()
        .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p64);
    p.scalar(v)
}

fn parse_header(text: &str, line: usize) -> Result<RingContext, ParseError> {
    let mut words = Vec::new();
    let mut col = 1;
    for piece in text.split_inclusive(char::is_whitespace) {
        let word = piece.trim_end();
        if !word.is_empty() {
            words.push((word, col));
        }
        col += piece.chars().count();
    }
    match words.first() {
        Some(("ring", _)) => {}
        Some((_, c)) => return Err(err(line, *c, "expected 'ring' header")),
        None => return Err(err(line, 1, "expected 'ring' header")),
    }
    if words.len() < 4 {
        let c = words
            .last()
            .map(|(w, c)| c + w.chars().count())
            .unwrap_or(1);
        return Err(err(
            line,
            c,
            "header needs a modulus, variables and an order",
        ));
    }
    let (p_word, p_col) = words[1];
    let p = p_word
        .parse::<u64>()
        .map_err(|_| err(line, p_col, format!("invalid modulus '{p_word}'")))?;
    let modulus = PrimeModulus::new(p).map_err(|e| err(line, p_col, e.to_string()))?;
    let (order_word, order_col) = words[words.len() - 1];
    let order = MonomialOrder::from_name(order_word)
        .map_err(|_| err(line, order_col, format!("unsupported order '{order_word}'")))?;
    let mut names: Vec<String> = Vec::new();
    for &(name, c) in &words[2..words.len() - 1] {
        let valid = name
            .chars()
            .next()
            .is_some_and(|ch| ch.is_alphabetic() || ch == '_')
            && name.chars().all(|ch| ch.is_alphanumeric() || ch == '_');
        if !valid {
            return Err(err(line, c, format!("invalid variable name '{name}'")));
        }
        if names.iter().any(|n| n == name) {
            return Err(err(line, c, format!("duplicate variable '{name}'")));
        }
        names.push(name.to_string());
    }
    RingContext::new(modulus, names, order).map_err(|e| err(line, 1, e.to_string()))
}

struct PolyParser<'a, 'r> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    line: usize,
    end_col: usize,
    ring: &'r RingContext,
}

impl<'a> PolyParser<'a, '_> {
    fn peek(&self) -> Option<&Tok<'a>> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn polynomial(&mut self) -> Result<Polynomial, ParseError> {
        let p = self.ring.modulus();
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek() == Some(&Tok::Minus) {
            negative = true;
            self.pos += 1;
        }
        loop {
            let (c, m) = self.term()?;
            terms.push((if negative { p.neg(c) } else { c }, m));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                Some(_) => return Err(err(self.line, self.col(), "expected '+' or '-'")),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(terms, self.ring))
    }

    fn term(&mut self) -> Result<(Scalar, Monomial), ParseError> {
        let start = self.col();
        let mut coeff = None;
        if let Some(Tok::Int(digits)) = self.peek() {
            coeff = Some(reduce_digits(digits, self.ring.modulus()));
            self.pos += 1;
        }
        let mut exps = vec![0u16; self.ring.nvars()];
        let mut factors = 0;
        loop {
            let starred = self.peek() == Some(&Tok::Star);
            if starred {
                if coeff.is_none() && factors == 0 {
                    return Err(err(self.line, self.col(), "'*' without a preceding factor"));
                }
                self.pos += 1;
            }
            let name = match self.peek() {
                Some(Tok::Ident(name)) => *name,
                Some(Tok::Int(_)) => {
                    return Err(err(self.line, self.col(), "coefficient must lead the term"))
                }
                _ if starred => {
                    return Err(err(self.line, self.col(), "expected a variable after '*'"))
                }
                _ => break,
            };
            let var_col = self.col();
            let index = self
                .ring
                .variable_index(name)
                .ok_or_else(|| err(self.line, var_col, format!("unknown variable '{name}'")))?;
            self.pos += 1;
            let mut e = 1u16;
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                let col = self.col();
                e = match self.peek() {
                    Some(Tok::Int(d)) => {
                        d.parse::<u16>().ok().filter(|&e| e > 0).ok_or_else(|| {
                            err(self.line, col, format!("malformed exponent '{d}'"))
                        })?
                    }
                    _ => return Err(err(self.line, col, "malformed exponent")),
                };
                self.pos += 1;
            }
            exps[index] = exps[index]
                .checked_add(e)
                .ok_or_else(|| err(self.line, var_col, "exponent overflow"))?;
            factors += 1;
        }
        if coeff.is_none() && factors == 0 {
            return Err(err(self.line, start, "empty term"));
        }
        Ok((coeff.unwrap_or(Scalar::ONE), Monomial::new(exps)))
    }
}

/// Parses one polynomial written over `ring`; `line` is used for errors.
pub fn parse_polynomial(
    text: &str,
    ring: &RingContext,
    line: usize,
) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(text, line)?;
    if tokens.is_empty() {
        return Err(err(line, 1, "empty polynomial"));
    }
    let mut parser = PolyParser {
        tokens,
        pos: 0,
        line,
        end_col: text.chars().count() + 1,
        ring,
    };
    parser.polynomial()
}

/// Parses a whole system: a `ring` header, then one polynomial per line.
/// Blank lines and lines starting with `#` are skipped everywhere.
pub fn parse_system(text: &str) -> Result<SystemDocument, ParseError> {
    let mut ring = None;
    let mut polynomials = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match &ring {
            None => ring = Some(parse_header(raw, line)?),
            Some(r) => {
                polynomials.push(parse_polynomial(raw, r, line)?);
                lines.push(line);
            }
        }
    }
    let ring = ring.ok_or_else(|| err(text.lines().count().max(1), 1, "missing 'ring' header"))?;
    Ok(SystemDocument {
        ring,
        polynomials,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str =
        "ring 32003 x y z t degrevlex\nx^2*y - z^2*t\nx*z^2 - y^2*t\ny*z^3 - x^2*t^2";

    #[test]
    fn example_system() {
        let doc = parse_system(EXAMPLE).unwrap();
        assert_eq!(doc.ring.modulus().value(), 32003);
        assert_eq!(doc.ring.var_names(), ["x", "y", "z", "t"]);
        assert_eq!(doc.polynomials.len(), 3);
        assert_eq!(doc.lines, [2, 3, 4]);
        let f = &doc.polynomials[0];
        let r = &doc.ring;
        assert_eq!(f.len(), 2);
        assert_eq!(
            f.coefficient(&r.monomial(&[("x", 2), ("y", 1)]), r).value(),
            1
        );
        assert_eq!(
            f.coefficient(&r.monomial(&[("z", 2), ("t", 1)]), r).value(),
            32002
        );
    }

    #[test]
    fn canonical_coefficients() {
        let doc = parse_system("ring 32003 x y degrevlex\n-1*x + y\n32004x - 64006").unwrap();
        let r = &doc.ring;
        let f = &doc.polynomials[0];
        assert_eq!(f.coefficient(&r.monomial(&[("x", 1)]), r).value(), 32002);
        assert_eq!(f.coefficient(&r.monomial(&[("y", 1)]), r).value(), 1);
        let g = &doc.polynomials[1];
        assert_eq!(g.len(), 1);
        assert_eq!(g.coefficient(&r.monomial(&[("x", 1)]), r).value(), 1);
    }

    #[test]
    fn optional_star_and_spacing() {
        let a = parse_system("ring 7 x y degrevlex\n3 x y^2 + x*x").unwrap();
        let b = parse_system("ring 7 x y degrevlex\n3*x*y^2+x^2").unwrap();
        assert_eq!(a.polynomials, b.polynomials);
    }

    #[test]
    fn comments_and_blank_lines() {
        let doc = parse_system("# header comment\n\nring 5 a degrevlex\n# c\n\na^2 - 1\n").unwrap();
        assert_eq!(doc.polynomials.len(), 1);
        assert_eq!(doc.lines, [6]);
    }

    fn fails(text: &str) -> (usize, usize) {
        let e = parse_system(text).unwrap_err();
        (e.line, e.col)
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(fails("ring 32003 x degrevlex\nx^^2"), (2, 3));
        assert_eq!(fails("ring 32003 x degrevlex\nx + w"), (2, 5));
        assert_eq!(fails("ring 32003 x degrevlex\nx +"), (2, 4));
        assert_eq!(fails("ring 32003 x degrevlex\nx^0"), (2, 3));
        assert_eq!(fails("ring 32003 x lex"), (1, 14));
        assert_eq!(fails("ring 32001 x degrevlex"), (1, 6));
        assert_eq!(fails("ring 32003 x x degrevlex"), (1, 14));
        assert_eq!(fails("x + y"), (1, 1));
        assert_eq!(fails("ring 32003 x degrevlex\nx*2"), (2, 3));
        assert_eq!(fails("ring 32003 x degrevlex\n*x"), (2, 1));
        assert_eq!(fails("ring 32003 x degrevlex\nx ! 2"), (2, 3));
    }

    #[test]
    fn missing_header() {
        assert!(parse_system("").is_err());
        assert!(parse_system("# only a comment").is_err());
    }
}
