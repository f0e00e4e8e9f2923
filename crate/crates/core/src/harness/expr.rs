//! Form expressions: rational-coefficient expressions over the coordinates,
//! with `d<coord>` differentials. `^` followed by an integer is a power,
//! otherwise it is a wedge. `*` multiplies, which for forms means wedge.

use num::BigInt;

use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::scalar::RationalFunction;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, col });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    out.push(Token {
        tok: Tok::End,
        col: col0 + chars.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    coords: &'a [String],
    line: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn col(&self) -> usize {
        self.toks[self.pos].col
    }

    fn err<T>(&self, col: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            column: col,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn dim(&self) -> usize {
        self.coords.len()
    }

    fn expr(&mut self) -> Result<Form> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                -self.term()?
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Form> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.wedge(&self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    let col = self.col();
                    let den = self.unary()?;
                    if den.max_degree().unwrap_or(0) > 0 {
                        return self.err(col, "cannot divide by a form of positive degree");
                    }
                    let den = den.function_part();
                    if den.is_zero() {
                        return self.err(col, "division by zero");
                    }
                    let inv = den.recip().expect("nonzero");
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Form> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.wedge_chain()
    }

    fn wedge_chain(&mut self) -> Result<Form> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::Caret {
            let caret_col = self.col();
            self.bump();
            let negative = *self.peek() == Tok::Minus
                && matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Int(_)));
            if negative {
                self.bump();
            }
            if let Tok::Int(k) = self.peek().clone() {
                let col = self.col();
                self.bump();
                let k: i32 = match i32::try_from(&k) {
                    Ok(k) if k <= 64 => k,
                    _ => return self.err(col, "exponent too large"),
                };
                let k = if negative { -k } else { k };
                if acc.max_degree().unwrap_or(0) > 0 {
                    if k == 1 {
                        continue;
                    }
                    return self.err(caret_col, "powers apply to functions only");
                }
                let base = acc.function_part();
                match base.pow(k) {
                    Ok(p) => acc = Form::function(self.dim(), p),
                    Err(_) => return self.err(col, "division by zero"),
                }
            } else if negative {
                return self.err(caret_col, "malformed exponent");
            } else {
                let rhs = self.atom()?;
                acc = acc.wedge(&rhs);
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Form> {
        let col = self.col();
        match self.bump() {
            Tok::Int(k) => Ok(Form::function(
                self.dim(),
                RationalFunction::from_rational(num::BigRational::from_integer(k)),
            )),
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err(self.col(), "expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Tok::Ident(name) => self.identifier(&name, col),
            Tok::End => self.err(col, "unexpected end of expression"),
            t => self.err(col, format!("unexpected token {}", describe(&t))),
        }
    }

    fn identifier(&self, name: &str, col: usize) -> Result<Form> {
        let n = self.dim();
        if let Some(i) = self.coords.iter().position(|c| c == name) {
            return Ok(Form::function(n, RationalFunction::var(i)));
        }
        if let Some(rest) = name.strip_prefix('d') {
            if let Some(i) = self.coords.iter().position(|c| c == rest) {
                return Ok(Form::dx(n, i));
            }
            if !rest.is_empty() {
                return self.err(col, format!("unknown coordinate '{rest}' in differential '{name}'"));
            }
        }
        self.err(col, format!("unknown coordinate '{name}'"))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(k) => k.to_string(),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses a form expression, reporting positions relative to `line` and
/// starting column `col0` (both 1-based).
pub fn parse_form_at(text: &str, coords: &[String], line: usize, col0: usize) -> Result<Form> {
    let mut p = Parser {
        toks: lex(text, line, col0)?,
        pos: 0,
        coords,
        line,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        let t = p.peek().clone();
        return p.err(p.col(), format!("unexpected token {}", describe(&t)));
    }
    Ok(out)
}

/// Parses a form expression over the given coordinates.
pub fn parse_form_expr(text: &str, coords: &[String]) -> Result<Form> {
    parse_form_at(text, coords, 1, 1)
}

/// Parses a scalar expression; differentials are rejected.
pub fn parse_scalar_at(text: &str, coords: &[String], line: usize, col0: usize) -> Result<RationalFunction> {
    let f = parse_form_at(text, coords, line, col0)?;
    if f.max_degree().unwrap_or(0) > 0 {
        return Err(Error::Parse {
            line,
            column: col0,
            message: "expected a function, found a form of positive degree".into(),
        });
    }
    Ok(f.function_part())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn examples() {
        let c = xy();
        let x = RationalFunction::var(0);
        assert_eq!(parse_form_expr("x*dx^dy", &c).unwrap(), Form::monomial(2, &[0, 1], x.clone()));
        let f = parse_form_expr("1/(1+x^2)", &c).unwrap();
        let expected = (RationalFunction::one() + &x * &x).recip().unwrap();
        assert_eq!(f, Form::function(2, expected));
        assert!(parse_form_expr("dx^dx", &c).unwrap().is_zero());
        assert_eq!(parse_form_expr("dy^dx", &c).unwrap(), -Form::monomial(2, &[0, 1], RationalFunction::one()));
        assert_eq!(parse_form_expr("x^-1", &c).unwrap(), Form::function(2, x.recip().unwrap()));
        assert_eq!(parse_form_expr("-2*x^2*y + 3/2", &c).unwrap().function_part(), {
            let y = RationalFunction::var(1);
            RationalFunction::from_int(-2) * &x * &x * y + RationalFunction::from_ratio(3, 2)
        });
        assert_eq!(parse_form_expr("(x+1)^dy", &c).unwrap(), Form::dx(2, 1).scale(&(x + RationalFunction::one())));
    }

    #[test]
    fn errors_carry_positions() {
        let c = xy();
        match parse_form_expr("x + dz", &c) {
            Err(Error::Parse { column, message, .. }) => {
                assert_eq!(column, 5);
                assert!(message.contains("unknown coordinate"));
            }
            other => panic!("{other:?}"),
        }
        match parse_form_expr("x / (y - y)", &c) {
            Err(Error::Parse { column, message, .. }) => {
                assert_eq!(column, 5);
                assert!(message.contains("division by zero"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_form_expr("x $ y", &c), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_form_expr("(x + y", &c), Err(Error::Parse { column: 7, .. })));
        assert!(matches!(parse_form_expr("x y", &c), Err(Error::Parse { column: 3, .. })));
        assert!(parse_scalar_at("dx", &c, 1, 1).is_err());
    }
}
