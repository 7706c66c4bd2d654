//! Recursive-descent parser for the q-series DSL.

use crate::error::{Error, Result};
use crate::scalar::Rational;

use super::{Expr, BUILDER_NAMES};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(Rational),
    Name(String),
    Dollar,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Int(v) => write!(f, "integer `{v}`"),
            Tok::Name(n) => write!(f, "name `{n}`"),
            Tok::Dollar => write!(f, "`$`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = match c {
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    bump(&mut chars);
                }
                Tok::Int(digits.parse().expect("digits are a valid integer"))
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut name = String::new();
                while let Some(d) = chars
                    .peek()
                    .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
                {
                    name.push(*d);
                    bump(&mut chars);
                }
                Tok::Name(name)
            }
            '$' => {
                bump(&mut chars);
                Tok::Dollar
            }
            '+' => {
                bump(&mut chars);
                Tok::Plus
            }
            '-' => {
                bump(&mut chars);
                Tok::Minus
            }
            '*' => {
                bump(&mut chars);
                Tok::Star
            }
            '/' => {
                bump(&mut chars);
                Tok::Slash
            }
            '^' => {
                bump(&mut chars);
                Tok::Caret
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            ';' => {
                bump(&mut chars);
                Tok::Semi
            }
            other => {
                return Err(Error::Syntax {
                    line: tline,
                    column: tcol,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Token {
            tok,
            line: tline,
            column: tcol,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &str) -> Error {
        let t = self.peek();
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: format!("expected {expected}, found {}", t.tok),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<()> {
        if self.peek().tok == tok {
            self.next();
            Ok(())
        } else {
            Err(self.err(expected))
        }
    }

    fn param_name(&mut self) -> Result<String> {
        self.expect(Tok::Dollar, "`$`")?;
        if let Tok::Name(n) = self.peek().tok.clone() {
            self.next();
            Ok(n)
        } else {
            Err(self.err("a parameter name after `$`"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = Expr::Add(acc.into(), self.term()?.into());
                }
                Tok::Minus => {
                    self.next();
                    acc = Expr::Sub(acc.into(), self.term()?.into());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                    acc = Expr::Mul(acc.into(), self.factor()?.into());
                }
                Tok::Slash => {
                    self.next();
                    acc = Expr::Div(acc.into(), self.factor()?.into());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek().tok.clone() {
            Tok::Minus => {
                self.next();
                // fold literal negation so `-5` is a literal, not Neg(5)
                match self.factor()? {
                    Expr::Rat(r) => Ok(Expr::Rat(-r)),
                    other => Ok(Expr::Neg(other.into())),
                }
            }
            Tok::Name(n) if n == "D" => {
                self.next();
                self.expect(Tok::LParen, "`(` after `D`")?;
                let param = self.param_name()?;
                self.expect(Tok::RParen, "`)` after the derivative parameter")?;
                let body = self.factor()?;
                Ok(Expr::Deriv {
                    param,
                    body: body.into(),
                })
            }
            _ => {
                let base = self.atom()?;
                if self.peek().tok == Tok::Caret {
                    self.next();
                    let exp = self.exponent()?;
                    Ok(Expr::Pow(base.into(), exp.into()))
                } else {
                    Ok(base)
                }
            }
        }
    }

    /// Exponents are atoms: an integer, a `$name`, or a parenthesized
    /// expression (evaluated later in integer context).
    fn exponent(&mut self) -> Result<Expr> {
        match self.peek().tok.clone() {
            Tok::Int(v) => {
                self.next();
                Ok(Expr::Rat(v))
            }
            Tok::Minus => {
                self.next();
                match self.exponent()? {
                    Expr::Rat(r) => Ok(Expr::Rat(-r)),
                    other => Ok(Expr::Neg(other.into())),
                }
            }
            Tok::Dollar => Ok(Expr::ParamRef(self.param_name()?)),
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.err("an exponent (integer, `$name`, or parenthesized expression)")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().tok.clone() {
            Tok::Int(v) => {
                self.next();
                Ok(Expr::Rat(v))
            }
            Tok::Dollar => Ok(Expr::ParamRef(self.param_name()?)),
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Name(name) => {
                if self.tokens[self.pos + 1].tok == Tok::LParen {
                    self.next();
                    return self.call(name);
                }
                match name.as_str() {
                    "q" => {
                        self.next();
                        Ok(Expr::Q)
                    }
                    "n" => {
                        self.next();
                        Ok(Expr::WeightVar)
                    }
                    _ => Err(self.err("`q`, `n`, or a builder call")),
                }
            }
            _ => Err(self.err("an expression")),
        }
    }

    fn call(&mut self, name: String) -> Result<Expr> {
        self.expect(Tok::LParen, "`(`")?;
        match name.as_str() {
            "Sum" => {
                let index = self.param_name()?;
                self.expect(Tok::Comma, "`,`")?;
                let lo = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let hi = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let body = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Sum {
                    index,
                    lo: lo.into(),
                    hi: hi.into(),
                    body: body.into(),
                })
            }
            "EvenPart" | "OddPart" | "NegQ" => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(match name.as_str() {
                    "EvenPart" => Expr::EvenPart(e.into()),
                    "OddPart" => Expr::OddPart(e.into()),
                    _ => Expr::NegQ(e.into()),
                })
            }
            "SubstQPow" | "Shift" => {
                let e = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let k = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(if name == "Shift" {
                    Expr::Shift(e.into(), k.into())
                } else {
                    Expr::SubstQPow(e.into(), k.into())
                })
            }
            _ => {
                if !BUILDER_NAMES.contains(&name.as_str()) {
                    return Err(Error::UnknownBuilder(name));
                }
                let mut args = vec![self.expr()?];
                while self.peek().tok == Tok::Comma {
                    self.next();
                    args.push(self.expr()?);
                }
                let base = if self.peek().tok == Tok::Semi {
                    self.next();
                    Some(Box::new(self.base_annotation()?))
                } else {
                    None
                };
                self.expect(Tok::RParen, "`)` or `,`")?;
                Ok(Expr::Call { name, args, base })
            }
        }
    }

    /// The `; q^b` tail of a builder call.
    fn base_annotation(&mut self) -> Result<Expr> {
        match self.peek().tok.clone() {
            Tok::Name(n) if n == "q" => {
                self.next();
                if self.peek().tok == Tok::Caret {
                    self.next();
                    let e = self.exponent()?;
                    Ok(Expr::Pow(Box::new(Expr::Q), e.into()))
                } else {
                    Ok(Expr::Q)
                }
            }
            _ => Err(self.err("a base annotation `q` or `q^b`")),
        }
    }
}

/// Parse one DSL expression. Syntax errors report line and column and the
/// token that was expected; unknown builder names are their own error.
pub fn parse(src: &str) -> Result<Expr> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.err("end of input"));
    }
    Ok(e)
}
