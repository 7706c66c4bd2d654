//! Compositional evaluator: an [`Expr`] plus a truncation degree and
//! parameter bindings yields an exact [`QSeries`].
//!
//! Builder arguments are interpreted by position: monomial positions fold
//! the sub-expression down to a `c·q^e` parameter, integer positions to an
//! `i64`, and the first argument of `WL`/`OrdDouble` to a weight polynomial
//! in `n`. A `D($x)` marker re-runs the marked subtree over dual scalars and
//! returns the derivative part, so derivative-mode evaluation reuses every
//! builder unchanged.

use std::collections::BTreeMap;

use crate::builders::{
    build_a, build_bilinear, build_l, build_lstar, build_ordered_double, build_poch,
    build_special, build_weighted_l, BilinearSpec, OrderedDoubleSpec, PochOrder, Special,
};
use crate::error::{Error, Result};
use crate::param::{Param, WeightPoly};
use crate::scalar::{DualRational, Rational, Scalar};
use crate::series::QSeries;

use super::Expr;

/// Values a `$name` can resolve to.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    /// Monomial parameters c·q^e.
    pub params: BTreeMap<String, Param<Rational>>,
    /// Integer parameters (family indices such as N).
    pub ints: BTreeMap<String, i64>,
}

impl Bindings {
    pub fn with_param(mut self, name: &str, c: Rational, exp: usize) -> Self {
        self.params.insert(name.to_string(), Param::new(c, exp));
        self
    }

    pub fn with_int(mut self, name: &str, v: i64) -> Self {
        self.ints.insert(name.to_string(), v);
        self
    }
}

/// Scalars the evaluator can instantiate, with the lift from the rational
/// bindings. `marked` is true for the parameter a `D($x)` marker targets.
trait EvalScalar: Scalar {
    const IS_DUAL: bool;
    fn lift(p: &Param<Rational>, marked: bool) -> Param<Self>;
}

impl EvalScalar for Rational {
    const IS_DUAL: bool = false;
    fn lift(p: &Param<Rational>, _marked: bool) -> Param<Rational> {
        p.clone()
    }
}

impl EvalScalar for DualRational {
    const IS_DUAL: bool = true;
    fn lift(p: &Param<Rational>, marked: bool) -> Param<DualRational> {
        let coeff = if marked {
            DualRational::variable(p.coeff.clone())
        } else {
            DualRational::constant(p.coeff.clone())
        };
        Param::new(coeff, p.exp)
    }
}

struct Env<'a> {
    bindings: &'a Bindings,
    /// Sum indices currently in scope; they shadow outer integer bindings.
    locals: BTreeMap<String, i64>,
    /// The parameter a surrounding `D($x)` differentiates with respect to.
    dual_of: Option<String>,
}

impl<'a> Env<'a> {
    fn lookup_int(&self, name: &str) -> Option<i64> {
        if let Some(v) = self.locals.get(name) {
            return Some(*v);
        }
        if let Some(v) = self.bindings.ints.get(name) {
            return Some(*v);
        }
        // an integral monomial binding with e = 0 doubles as an integer
        self.bindings
            .params
            .get(name)
            .filter(|p| p.exp == 0)
            .and_then(|p| p.coeff.to_i64())
    }
}

fn eval_err(path: &Expr, message: impl Into<String>) -> Error {
    Error::Eval {
        path: path.to_string(),
        message: message.into(),
    }
}

fn wrap(path: &Expr) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Eval { .. } => e,
        other => eval_err(path, other.to_string()),
    }
}

/// Evaluate in integer context.
fn as_int(e: &Expr, env: &Env) -> Result<i64> {
    let fail = |msg: &str| Err(eval_err(e, msg));
    match e {
        Expr::Rat(r) => r
            .to_i64()
            .ok_or_else(|| eval_err(e, "expected an integer, found a non-integral rational")),
        Expr::ParamRef(name) => {
            if env.dual_of.as_deref() == Some(name) {
                return fail("the derivative parameter cannot appear in an integer position");
            }
            env.lookup_int(name)
                .ok_or_else(|| Error::UnboundParam(name.clone()))
        }
        Expr::Add(l, r) => as_int(l, env)?
            .checked_add(as_int(r, env)?)
            .ok_or_else(|| eval_err(e, "integer overflow")),
        Expr::Sub(l, r) => as_int(l, env)?
            .checked_sub(as_int(r, env)?)
            .ok_or_else(|| eval_err(e, "integer overflow")),
        Expr::Mul(l, r) => as_int(l, env)?
            .checked_mul(as_int(r, env)?)
            .ok_or_else(|| eval_err(e, "integer overflow")),
        Expr::Div(l, r) => {
            let (a, b) = (as_int(l, env)?, as_int(r, env)?);
            if b == 0 || a % b != 0 {
                return fail("integer division must be exact");
            }
            Ok(a / b)
        }
        Expr::Neg(x) => Ok(-as_int(x, env)?),
        Expr::Pow(b, k) => {
            let base = as_int(b, env)?;
            let k = as_int(k, env)?;
            if !(0..=62).contains(&k) {
                return fail("integer exponent out of range");
            }
            base.checked_pow(k as u32)
                .ok_or_else(|| eval_err(e, "integer overflow"))
        }
        _ => fail("expected an integer expression"),
    }
}

/// Evaluate in monomial-parameter context: the argument must reduce to c·q^e.
fn as_monomial<S: EvalScalar>(e: &Expr, env: &Env) -> Result<Param<S>> {
    match e {
        Expr::Rat(r) => Ok(Param::new(S::from_rational(r), 0)),
        Expr::Q => Ok(Param::q()),
        Expr::ParamRef(name) => {
            if let Some(p) = env.bindings.params.get(name) {
                let marked = env.dual_of.as_deref() == Some(name.as_str());
                return Ok(S::lift(p, marked));
            }
            if let Some(v) = env.lookup_int(name) {
                return Ok(Param::new(S::from_rational(&Rational::from_int(v)), 0));
            }
            Err(Error::UnboundParam(name.clone()))
        }
        Expr::Mul(l, r) => Ok(as_monomial::<S>(l, env)?.mul(&as_monomial(r, env)?)),
        Expr::Div(l, r) => as_monomial::<S>(l, env)?
            .div(&as_monomial(r, env)?)
            .map_err(wrap(e)),
        Expr::Neg(x) => Ok(as_monomial::<S>(x, env)?.neg()),
        Expr::Pow(b, k) => {
            let base = as_monomial::<S>(b, env)?;
            let k = as_int(k, env)?;
            base.pow(k).map_err(wrap(e))
        }
        _ => Err(eval_err(
            e,
            "builder parameters must reduce to monomials c*q^e",
        )),
    }
}

/// Evaluate in weight-polynomial context (`n` is the summation variable).
fn as_weight(e: &Expr, env: &Env) -> Result<WeightPoly> {
    match e {
        Expr::WeightVar => Ok(WeightPoly::var()),
        Expr::Rat(r) => Ok(WeightPoly::constant(r.clone())),
        Expr::ParamRef(name) => env
            .lookup_int(name)
            .map(|v| WeightPoly::constant(Rational::from_int(v)))
            .ok_or_else(|| Error::UnboundParam(name.clone())),
        Expr::Add(l, r) => Ok(as_weight(l, env)?.add(&as_weight(r, env)?)),
        Expr::Sub(l, r) => Ok(as_weight(l, env)?.sub(&as_weight(r, env)?)),
        Expr::Mul(l, r) => Ok(as_weight(l, env)?.mul(&as_weight(r, env)?)),
        Expr::Neg(x) => Ok(as_weight(x, env)?.neg()),
        Expr::Pow(b, k) => {
            let base = as_weight(b, env)?;
            let k = as_int(k, env)?;
            if k < 0 {
                return Err(eval_err(e, "weight polynomials take nonnegative powers"));
            }
            Ok(base.pow(k as u64))
        }
        Expr::Div(l, r) => {
            let num = as_weight(l, env)?;
            let den = as_weight(r, env)?;
            match den.constant_value() {
                Some(c) if !c.is_zero() => Ok(num.scalar_mul(&c.checked_inv()?)),
                _ => Err(eval_err(e, "weights may only be divided by nonzero constants")),
            }
        }
        _ => Err(eval_err(e, "expected a weight polynomial in n")),
    }
}

fn eval_base(base: Option<&Expr>, env: &Env) -> Result<u32> {
    let Some(b) = base else { return Ok(1) };
    let m: Param<Rational> = as_monomial(b, env)?;
    if m.coeff.is_one() && m.exp >= 1 {
        Ok(m.exp as u32)
    } else {
        Err(eval_err(b, "a base annotation must be q or q^b with b >= 1"))
    }
}

fn arity(e: &Expr, name: &str, args: &[Expr], want: usize) -> Result<()> {
    if args.len() != want {
        return Err(eval_err(
            e,
            format!("{name} takes {want} argument(s), found {}", args.len()),
        ));
    }
    Ok(())
}

fn eval_s<S: EvalScalar>(e: &Expr, degree: usize, env: &mut Env) -> Result<QSeries<S>> {
    match e {
        Expr::Rat(r) => Ok(QSeries::constant(S::from_rational(r), degree)),
        Expr::Q => Ok(QSeries::monomial(S::one(), 1, degree)),
        Expr::ParamRef(name) => {
            if let Some(p) = env.bindings.params.get(name) {
                let marked = env.dual_of.as_deref() == Some(name.as_str());
                let p = S::lift(p, marked);
                return Ok(QSeries::monomial(p.coeff, p.exp, degree));
            }
            if let Some(v) = env.lookup_int(name) {
                return Ok(QSeries::constant(
                    S::from_rational(&Rational::from_int(v)),
                    degree,
                ));
            }
            Err(Error::UnboundParam(name.clone()))
        }
        Expr::WeightVar => Err(eval_err(e, "`n` is only meaningful in a weight position")),
        Expr::Add(l, r) => Ok(&eval_s(l, degree, env)? + &eval_s(r, degree, env)?),
        Expr::Sub(l, r) => Ok(&eval_s(l, degree, env)? - &eval_s(r, degree, env)?),
        Expr::Mul(l, r) => Ok(&eval_s(l, degree, env)? * &eval_s(r, degree, env)?),
        Expr::Div(l, r) => {
            let num = eval_s::<S>(l, degree, env)?;
            let den = eval_s::<S>(r, degree, env)?;
            num.div_unit(&den).map_err(wrap(e))
        }
        Expr::Neg(x) => Ok(-&eval_s::<S>(x, degree, env)?),
        Expr::Pow(b, k) => {
            let k = as_int(k, env)?;
            if k < 0 {
                return Err(eval_err(e, "series take nonnegative powers; use 1/(...) instead"));
            }
            Ok(eval_s::<S>(b, degree, env)?.pow(k as u64))
        }
        Expr::EvenPart(x) => Ok(eval_s::<S>(x, degree, env)?.even_part()),
        Expr::OddPart(x) => Ok(eval_s::<S>(x, degree, env)?.odd_part()),
        Expr::NegQ(x) => Ok(eval_s::<S>(x, degree, env)?.subst_neg_q()),
        Expr::SubstQPow(x, b) => {
            let b = as_int(b, env)?;
            if b < 1 {
                return Err(eval_err(e, "SubstQPow requires b >= 1"));
            }
            eval_s::<S>(x, degree, env)?
                .subst_q_pow(b as usize)
                .map_err(wrap(e))
        }
        Expr::Shift(x, s) => {
            let s = as_int(s, env)?;
            eval_s::<S>(x, degree, env)?.shift(s).map_err(wrap(e))
        }
        Expr::Sum {
            index,
            lo,
            hi,
            body,
        } => {
            let lo = as_int(lo, env)?;
            let hi = as_int(hi, env)?;
            let mut acc = QSeries::zero(degree);
            if hi < lo {
                return Ok(acc); // empty sum
            }
            let saved = env.locals.get(index).copied();
            for j in lo..=hi {
                env.locals.insert(index.clone(), j);
                let term = eval_s::<S>(body, degree, env);
                // restore before propagating errors
                match saved {
                    Some(v) => env.locals.insert(index.clone(), v),
                    None => env.locals.remove(index),
                };
                acc = &acc + &term?;
            }
            Ok(acc)
        }
        Expr::Deriv { param, body } => {
            if S::IS_DUAL {
                return Err(eval_err(e, "derivative markers cannot be nested"));
            }
            if !env.bindings.params.contains_key(param) {
                return Err(Error::UnboundParam(param.clone()));
            }
            let mut inner = Env {
                bindings: env.bindings,
                locals: env.locals.clone(),
                dual_of: Some(param.clone()),
            };
            let dual = eval_s::<DualRational>(body, degree, &mut inner)?;
            Ok(dual.deriv_part().map(|r| S::from_rational(r)))
        }
        Expr::Call { name, args, base } => eval_call(e, name, args, base.as_deref(), degree, env),
    }
}

fn eval_call<S: EvalScalar>(
    e: &Expr,
    name: &str,
    args: &[Expr],
    base: Option<&Expr>,
    degree: usize,
    env: &mut Env,
) -> Result<QSeries<S>> {
    let no_base = |e: &Expr| -> Result<()> {
        if base.is_some() {
            return Err(eval_err(e, format!("{name} takes no base annotation")));
        }
        Ok(())
    };
    match name {
        "L" => {
            if args.len() < 2 {
                return Err(eval_err(e, "L takes x and at least one y parameter"));
            }
            let b = eval_base(base, env)?;
            let x: Param<S> = as_monomial(&args[0], env)?;
            let ys = args[1..]
                .iter()
                .map(|a| as_monomial(a, env))
                .collect::<Result<Vec<_>>>()?;
            build_l(&x, &ys, b, degree).map_err(wrap(e))
        }
        "Lstar" => {
            arity(e, name, args, 2)?;
            let b = eval_base(base, env)?;
            let x: Param<S> = as_monomial(&args[0], env)?;
            let y = as_monomial(&args[1], env)?;
            build_lstar(&x, &y, b, degree).map_err(wrap(e))
        }
        "A" => {
            arity(e, name, args, 4)?;
            let b = eval_base(base, env)?;
            let ps = args
                .iter()
                .map(|a| as_monomial::<S>(a, env))
                .collect::<Result<Vec<_>>>()?;
            build_a(&ps[0], &ps[1], &ps[2], &ps[3], b, degree).map_err(wrap(e))
        }
        "Poch" => {
            arity(e, name, args, 1)?;
            let b = eval_base(base, env)?;
            let a: Param<S> = as_monomial(&args[0], env)?;
            build_poch(&a, b, PochOrder::Infinite, degree).map_err(wrap(e))
        }
        "PochN" => {
            arity(e, name, args, 2)?;
            let b = eval_base(base, env)?;
            let a: Param<S> = as_monomial(&args[0], env)?;
            let n = as_int(&args[1], env)?;
            if n < 0 {
                return Err(eval_err(e, "PochN requires n >= 0"));
            }
            build_poch(&a, b, PochOrder::Finite(n as u64), degree).map_err(wrap(e))
        }
        "WL" => {
            if args.len() < 4 {
                return Err(eval_err(
                    e,
                    "WL takes a weight, a lower bound, x, and at least one y parameter",
                ));
            }
            let b = eval_base(base, env)?;
            let w = as_weight(&args[0], env)?;
            let n0 = as_int(&args[1], env)?;
            if n0 < 0 {
                return Err(eval_err(e, "WL requires a lower bound n0 >= 0"));
            }
            let x: Param<S> = as_monomial(&args[2], env)?;
            let ys = args[3..]
                .iter()
                .map(|a| as_monomial(a, env))
                .collect::<Result<Vec<_>>>()?;
            build_weighted_l(&w, n0 as u64, &x, &ys, b, degree).map_err(wrap(e))
        }
        "OrdDouble" => {
            no_base(e)?;
            arity(e, name, args, 3)?;
            let weight = as_weight(&args[0], env)?;
            let u = as_int(&args[1], env)?;
            let v = as_int(&args[2], env)?;
            if u < 1 || v < 1 {
                return Err(eval_err(e, "OrdDouble requires u, v >= 1"));
            }
            let spec = OrderedDoubleSpec {
                weight,
                u: u as u64,
                v: v as u64,
            };
            build_ordered_double(&spec, degree).map_err(wrap(e))
        }
        "Bilin" => {
            no_base(e)?;
            arity(e, name, args, 13)?;
            let spec = BilinearSpec {
                sigma: as_int(&args[0], env)?,
                alpha: as_int(&args[1], env)?,
                beta: as_int(&args[2], env)?,
                gamma: as_int(&args[3], env)?,
                delta: as_int(&args[4], env)?,
                x: as_monomial::<S>(&args[5], env)?,
                z: as_monomial(&args[6], env)?,
                u: as_monomial(&args[7], env)?,
                a: as_int(&args[8], env)?,
                a0: as_int(&args[9], env)?,
                v: as_monomial(&args[10], env)?,
                b: as_int(&args[11], env)?,
                b0: as_int(&args[12], env)?,
            };
            build_bilinear(&spec, degree).map_err(wrap(e))
        }
        "SigmaGF" => {
            no_base(e)?;
            arity(e, name, args, 2)?;
            let k = as_int(&args[0], env)?;
            let s = as_int(&args[1], env)?;
            if k < 0 || s < 1 {
                return Err(eval_err(e, "SigmaGF requires k >= 0 and stride >= 1"));
            }
            let series = build_special(
                Special::SigmaGf {
                    k: k as u32,
                    stride: s as u32,
                },
                degree,
            )
            .map_err(wrap(e))?;
            Ok(series.map(|r| S::from_rational(r)))
        }
        "Y" | "X" | "G" | "H" | "f1" | "f3" => {
            no_base(e)?;
            arity(e, name, args, 1)?;
            if args[0] != Expr::Q {
                return Err(eval_err(e, format!("{name} takes the literal argument q")));
            }
            let which = match name {
                "Y" => Special::Y,
                "X" => Special::X,
                "G" => Special::G,
                "H" => Special::H,
                "f1" => Special::F1,
                _ => Special::F3,
            };
            let series = build_special(which, degree).map_err(wrap(e))?;
            Ok(series.map(|r| S::from_rational(r)))
        }
        other => Err(Error::UnknownBuilder(other.to_string())),
    }
}

/// Evaluate an expression to a rational q-series at the given truncation
/// degree. A `D($x)` marker inside switches that subtree to dual scalars and
/// substitutes its derivative part.
pub fn eval(e: &Expr, degree: usize, bindings: &Bindings) -> Result<QSeries<Rational>> {
    let mut env = Env {
        bindings,
        locals: BTreeMap::new(),
        dual_of: None,
    };
    eval_s::<Rational>(e, degree, &mut env)
}

/// Evaluate an expression in integer context (family indices, strides).
pub fn eval_int(e: &Expr, bindings: &Bindings) -> Result<i64> {
    let env = Env {
        bindings,
        locals: BTreeMap::new(),
        dual_of: None,
    };
    as_int(e, &env)
}

/// Free `$name` references of an expression. `Sum` indices are bound inside
/// their body; the parameter of a `D($x)` marker counts as free (it must be
/// bound for evaluation).
pub fn free_params(e: &Expr) -> std::collections::BTreeSet<String> {
    fn walk(e: &Expr, bound: &mut Vec<String>, out: &mut std::collections::BTreeSet<String>) {
        match e {
            Expr::ParamRef(n) => {
                if !bound.iter().any(|b| b == n) {
                    out.insert(n.clone());
                }
            }
            Expr::Sum {
                index,
                lo,
                hi,
                body,
            } => {
                walk(lo, bound, out);
                walk(hi, bound, out);
                bound.push(index.clone());
                walk(body, bound, out);
                bound.pop();
            }
            Expr::Deriv { param, body } => {
                if !bound.iter().any(|b| b == param) {
                    out.insert(param.clone());
                }
                walk(body, bound, out);
            }
            Expr::Add(l, r)
            | Expr::Sub(l, r)
            | Expr::Mul(l, r)
            | Expr::Div(l, r)
            | Expr::Pow(l, r)
            | Expr::SubstQPow(l, r)
            | Expr::Shift(l, r) => {
                walk(l, bound, out);
                walk(r, bound, out);
            }
            Expr::Neg(x) | Expr::EvenPart(x) | Expr::OddPart(x) | Expr::NegQ(x) => {
                walk(x, bound, out)
            }
            Expr::Call { args, base, .. } => {
                for a in args {
                    walk(a, bound, out);
                }
                if let Some(b) = base {
                    walk(b, bound, out);
                }
            }
            Expr::Rat(_) | Expr::Q | Expr::WeightVar => {}
        }
    }
    let mut out = std::collections::BTreeSet::new();
    walk(e, &mut Vec::new(), &mut out);
    out
}
