//! A small expression language over q-series.
//!
//! This is the lingua franca of the identity catalog and the CLI: every
//! displayed series family has a one-line spelling here, with builder calls
//! reading the way the families are usually written (base annotations after
//! a semicolon, as in `A(q, q, q^2, -q; q^2)`).
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := factor (("*" | "/") factor)*
//! factor  := "-" factor
//!          | "D" "(" "$" name ")" factor          derivative marker
//!          | atom ("^" exponent)?
//! atom    := integer | "q" | "$" name | "n"
//!          | NAME "(" expr ("," expr)* (";" base)? ")"
//!          | "(" expr ")"
//! exponent:= integer | "$" name | "(" expr ")" | "-" exponent
//! base    := "q" ("^" exponent)?
//! ```
//!
//! Builder names: `L`, `Lstar`, `A`, `Poch`, `PochN`, `Bilin`, `OrdDouble`,
//! `WL`, `Y`, `X`, `G`, `H`, `f1`, `f3`, `SigmaGF`, plus the structural
//! operators `EvenPart`, `OddPart`, `NegQ`, `SubstQPow`, `Shift` and the
//! finite sum `Sum($j, lo, hi, body)`.
//!
//! `$name` refers to a bound parameter (a monomial c·q^e) or a bound
//! integer; bare `n` is only meaningful inside the weight argument of `WL`
//! and `OrdDouble`. Arguments in builder-parameter positions must evaluate
//! to monomials; exponents, `Sum` bounds and the index fields of `Shift`,
//! `SubstQPow`, `PochN`, `SigmaGF`, `Bilin` and `OrdDouble` must evaluate to
//! integers. Rationals are written `p/r` (parsed as an exact division).

pub mod eval;
pub mod parse;

pub use eval::{eval, Bindings};
pub use parse::parse;

use std::fmt;

use crate::scalar::Rational;

/// AST of the q-series DSL.
#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    /// Integer (or, programmatically, rational) literal.
    Rat(Rational),
    /// The series variable q.
    Q,
    /// `$name`: a parameter reference resolved through the bindings.
    ParamRef(String),
    /// `n` inside a weight-polynomial argument.
    WeightVar,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    EvenPart(Box<Expr>),
    OddPart(Box<Expr>),
    NegQ(Box<Expr>),
    SubstQPow(Box<Expr>, Box<Expr>),
    Shift(Box<Expr>, Box<Expr>),
    /// `Sum($j, lo, hi, body)`: ∑_{j=lo}^{hi} body, empty when hi < lo.
    Sum {
        index: String,
        lo: Box<Expr>,
        hi: Box<Expr>,
        body: Box<Expr>,
    },
    /// `D($x) body`: evaluate `body` over dual scalars with ∂/∂c_x marked,
    /// yielding the derivative part.
    Deriv { param: String, body: Box<Expr> },
    /// Builder call; `base` holds the optional `; q^b` annotation.
    Call {
        name: String,
        args: Vec<Expr>,
        base: Option<Box<Expr>>,
    },
}

/// Builder names the parser accepts in call position.
pub const BUILDER_NAMES: &[&str] = &[
    "L", "Lstar", "A", "Poch", "PochN", "Bilin", "OrdDouble", "WL", "Y", "X", "G", "H", "f1",
    "f3", "SigmaGF",
];

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Rat(Rational::from_int(v))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) | Expr::Deriv { .. } => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < parent;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Expr::Rat(r) => write!(f, "{r}")?,
            Expr::Q => write!(f, "q")?,
            Expr::ParamRef(n) => write!(f, "${n}")?,
            Expr::WeightVar => write!(f, "n")?,
            Expr::Add(l, r) => {
                l.write(f, 1)?;
                write!(f, " + ")?;
                r.write(f, 2)?;
            }
            Expr::Sub(l, r) => {
                l.write(f, 1)?;
                write!(f, " - ")?;
                r.write(f, 2)?;
            }
            Expr::Mul(l, r) => {
                l.write(f, 2)?;
                write!(f, "*")?;
                r.write(f, 3)?;
            }
            Expr::Div(l, r) => {
                l.write(f, 2)?;
                write!(f, "/")?;
                r.write(f, 3)?;
            }
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.write(f, 3)?;
            }
            Expr::Pow(b, e) => {
                // a negative or fractional literal does not lex as one atom
                let literal_parens = matches!(
                    b.as_ref(),
                    Expr::Rat(r) if r.is_negative() || !r.is_integer()
                );
                if literal_parens {
                    write!(f, "(")?;
                    b.write(f, 0)?;
                    write!(f, ")")?;
                } else {
                    b.write(f, 5)?;
                }
                write!(f, "^")?;
                // exponents reparse as atoms: parenthesize anything compound
                match e.as_ref() {
                    Expr::Rat(r) if !r.is_negative() => write!(f, "{r}")?,
                    Expr::ParamRef(n) => write!(f, "${n}")?,
                    other => {
                        write!(f, "(")?;
                        other.write(f, 0)?;
                        write!(f, ")")?;
                    }
                }
            }
            Expr::EvenPart(e) => Self::write_unary(f, "EvenPart", e)?,
            Expr::OddPart(e) => Self::write_unary(f, "OddPart", e)?,
            Expr::NegQ(e) => Self::write_unary(f, "NegQ", e)?,
            Expr::SubstQPow(e, b) => {
                write!(f, "SubstQPow(")?;
                e.write(f, 0)?;
                write!(f, ", ")?;
                b.write(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Shift(e, s) => {
                write!(f, "Shift(")?;
                e.write(f, 0)?;
                write!(f, ", ")?;
                s.write(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Sum {
                index,
                lo,
                hi,
                body,
            } => {
                write!(f, "Sum(${index}, ")?;
                lo.write(f, 0)?;
                write!(f, ", ")?;
                hi.write(f, 0)?;
                write!(f, ", ")?;
                body.write(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Deriv { param, body } => {
                write!(f, "D(${param}) ")?;
                body.write(f, 3)?;
            }
            Expr::Call { name, args, base } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    a.write(f, 0)?;
                }
                if let Some(b) = base {
                    write!(f, "; ")?;
                    b.write(f, 0)?;
                }
                write!(f, ")")?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }

    fn write_unary(f: &mut fmt::Formatter<'_>, name: &str, e: &Expr) -> fmt::Result {
        write!(f, "{name}(")?;
        e.write(f, 0)?;
        write!(f, ")")
    }
}

/// The printer round-trips: `parse(&expr.to_string())` is structurally equal
/// to `expr` for every parser-producible tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}
