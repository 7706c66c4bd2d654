//! Constructors for every Lambert-type series family the engine knows,
//! as exact truncations from monomial parameters.
//!
//! The common scheme: an infinite outer sum is split at the index past which
//! every inner factor is ≡ 1 modulo q^{D+1}. Whatever remains along an
//! e = 0 direction is a geometric tail with a rational closed form, added
//! exactly:
//!
//! * single sums: ∑_{n>N} c^n = c^{N+1}/(1−c) lands on the q^0 coefficient;
//! * the ordered double sum gains a per-row tail ∑_{m>M} c_y^m and, when both
//!   outer directions sit at e = 0, the corner tail
//!   (c_x c_y)^{N+1}/((1−c_y)(1−c_x c_y)).
//!
//! Directions with e ≥ 1 terminate by valuation and need no tail.
//! Configurations that would need a non-geometric tail (a non-constant
//! weight on an e = 0 direction) are rejected outright.

use crate::error::{Error, Result};
use crate::numtheory::sigma;
use crate::param::{Param, WeightPoly};
use crate::scalar::{Rational, Scalar};
use crate::series::QSeries;

/// Order of a q-shifted factorial product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochOrder {
    Finite(u64),
    Infinite,
}

fn check_base(base: u32) -> Result<()> {
    if base == 0 {
        return Err(Error::domain("base", "base must be >= 1"));
    }
    Ok(())
}

/// 1 − c must be invertible wherever it becomes a tail or n = 0 denominator.
fn not_one<S: Scalar>(c: &S, name: &str) -> Result<S> {
    (S::one() - c.clone()).inv().map_err(|_| {
        Error::domain(
            name,
            "coefficient 1 (or value part 1) makes a 1 - c denominator vanish",
        )
    })
}

// ---------------------------------------------------------------------------
// Single Lambert sums
// ---------------------------------------------------------------------------

/// Shared core of [`build_l`] and [`build_weighted_l`]:
/// ∑_{n≥n0} w(n)·x^n / ∏_i (1 − y_i q^{b·n}), truncated at `degree`.
fn l_core<S: Scalar>(
    weight: Option<&WeightPoly>,
    n0: u64,
    x: &Param<S>,
    ys: &[Param<S>],
    base: u32,
    degree: usize,
) -> Result<QSeries<S>> {
    check_base(base)?;
    let d = degree;
    let b = base as usize;

    let const_weight = match weight {
        None => Some(Rational::one()),
        Some(w) => w.constant_value(),
    };
    if let Some(w0) = &const_weight {
        if w0.is_zero() {
            return Ok(QSeries::zero(d));
        }
    }

    // n = 0 in range puts every e = 0 factor at its 1 - c value.
    if n0 == 0 {
        for (i, y) in ys.iter().enumerate() {
            if y.exp == 0 && !y.coeff.is_zero() {
                not_one(&y.coeff, &format!("y{}", i + 1))?;
            }
        }
    }

    let mut acc = QSeries::zero(d);

    // Zero x: only the n = 0 term (0^0 = 1) can survive.
    if x.coeff.is_zero() {
        if n0 == 0 {
            let w0 = match weight {
                None => Rational::one(),
                Some(w) => w.eval(0),
            };
            let mut term = QSeries::constant(S::from_rational(&w0), d);
            for y in ys {
                if !y.coeff.is_zero() && y.exp <= d {
                    term = term.div_one_minus(&y.coeff, y.exp)?;
                }
            }
            acc = &acc + &term;
        }
        return Ok(acc);
    }

    let needs_tail = x.exp == 0;
    if needs_tail && const_weight.is_none() {
        return Err(Error::domain(
            "x",
            "a non-constant weight requires x with a positive q-exponent",
        ));
    }

    // Enumeration bound: valuation cutoff when e_x >= 1; otherwise the index
    // past which every inner factor collapses to 1.
    let n_hi: u64 = if x.exp >= 1 {
        (d / x.exp) as u64
    } else {
        ys.iter()
            .filter(|y| !y.coeff.is_zero() && y.exp <= d)
            .map(|y| ((d - y.exp) / b) as u64)
            .max()
            .unwrap_or(0)
    };

    let mut cx_pow = x.coeff.pow_u(n0);
    for n in n0..=n_hi {
        let base_exp = x.exp * (n as usize);
        if base_exp > d {
            break;
        }
        let mut scalar = cx_pow.clone();
        if let Some(w) = weight {
            scalar = scalar * S::from_rational(&w.eval(n));
        }
        if !scalar.is_zero() {
            let mut term = QSeries::monomial(scalar, base_exp, d);
            for y in ys {
                let step = y.exp + b * (n as usize);
                if !y.coeff.is_zero() && step <= d {
                    term = term.div_one_minus(&y.coeff, step)?;
                }
            }
            acc = &acc + &term;
        }
        cx_pow = cx_pow * x.coeff.clone();
    }

    if needs_tail {
        // ∑_{n >= lo} c^n = c^lo/(1−c), every inner factor already ≡ 1.
        let lo = (n_hi + 1).max(n0);
        let inv_1mx = not_one(&x.coeff, "x")?;
        let w0 = const_weight.expect("checked above");
        let tail = x.coeff.pow_u(lo) * inv_1mx * S::from_rational(&w0);
        acc.add_to_coeff(0, tail);
    }

    Ok(acc)
}

/// L(x, y_1, …, y_k; q^b) = ∑_{n≥0} x^n / ∏_i (1 − y_i q^{b·n}).
pub fn build_l<S: Scalar>(
    x: &Param<S>,
    ys: &[Param<S>],
    base: u32,
    degree: usize,
) -> Result<QSeries<S>> {
    l_core(None, 0, x, ys, base, degree)
}

/// ∑_{n≥n0} w(n)·x^n / ∏_i (1 − y_i q^{b·n}).
///
/// Non-constant weights require e_x ≥ 1 so the outer sum terminates by
/// valuation; a constant weight delegates to the plain Lambert sum with its
/// geometric tail.
pub fn build_weighted_l<S: Scalar>(
    weight: &WeightPoly,
    n0: u64,
    x: &Param<S>,
    ys: &[Param<S>],
    base: u32,
    degree: usize,
) -> Result<QSeries<S>> {
    l_core(Some(weight), n0, x, ys, base, degree)
}

// ---------------------------------------------------------------------------
// Bilateral Lambert sum
// ---------------------------------------------------------------------------

/// L*(x, y; q^b) = ∑_{n∈ℤ} x^n / (1 − y q^{b·n}).
///
/// The positive half is the ordinary Lambert sum. For n = −m < 0 the factor
/// is expanded as −∑_{j≥1} c_y^{−j} q^{j(bm−e_y)} once bm > e_y, and as an
/// ordinary geometric factor while bm ≤ e_y; only terms of q-valuation ≤ D
/// exist, so the negative half is finite.
pub fn build_lstar<S: Scalar>(
    x: &Param<S>,
    y: &Param<S>,
    base: u32,
    degree: usize,
) -> Result<QSeries<S>> {
    check_base(base)?;
    if x.exp >= 1 {
        return Err(Error::domain(
            "x",
            "bilateral sum requires e_x = 0 (a pure coefficient)",
        ));
    }
    if x.coeff.is_zero() {
        return Err(Error::domain(
            "x",
            "bilateral sum requires a nonzero coefficient (negative powers of x occur)",
        ));
    }
    if y.coeff.is_zero() {
        return Err(Error::domain(
            "y",
            "bilateral sum requires a nonzero y (the negative-index expansion divides by it)",
        ));
    }

    let d = degree;
    let b = base as usize;
    let mut acc = l_core(None, 0, x, std::slice::from_ref(y), base, d)?;

    let cx_inv = x.coeff.inv()?;
    let cy_inv = y.coeff.inv()?;
    let mut cxi_pow = cx_inv.clone();
    let mut m = 1usize;
    loop {
        let s = (b * m) as i64 - y.exp as i64;
        if s > d as i64 {
            break;
        }
        if s >= 1 {
            let step = s as usize;
            let mut cyi_pow = cy_inv.clone();
            let mut j = 1usize;
            while j * step <= d {
                let val = cxi_pow.clone() * cyi_pow.clone();
                acc.add_to_coeff(j * step, -val);
                cyi_pow = cyi_pow * cy_inv.clone();
                j += 1;
            }
        } else if s == 0 {
            let inv = not_one(&y.coeff, "y")?;
            acc.add_to_coeff(0, cxi_pow.clone() * inv);
        } else {
            // bm < e_y: a plain geometric factor with step e_y - bm.
            let step = (-s) as usize;
            let term = QSeries::constant(cxi_pow.clone(), d).div_one_minus(&y.coeff, step)?;
            acc = &acc + &term;
        }
        cxi_pow = cxi_pow * cx_inv.clone();
        m += 1;
    }

    Ok(acc)
}

// ---------------------------------------------------------------------------
// The ordered double Lambert sum A(x, y, z, w)
// ---------------------------------------------------------------------------

/// A(x, y, z, w; q^b) = ∑_{n≥0} ∑_{m≥n} x^n y^m / ((1 − w q^{b·n})(1 − z q^{b·m})).
pub fn build_a<S: Scalar>(
    x: &Param<S>,
    y: &Param<S>,
    z: &Param<S>,
    w: &Param<S>,
    base: u32,
    degree: usize,
) -> Result<QSeries<S>> {
    check_base(base)?;
    let d = degree;
    let b = base as usize;

    if w.exp == 0 && !w.coeff.is_zero() {
        not_one(&w.coeff, "w")?;
    }
    if z.exp == 0 && !z.coeff.is_zero() {
        not_one(&z.coeff, "z")?;
    }
    if y.exp == 0 && !y.coeff.is_zero() {
        not_one(&y.coeff, "y")?;
        not_one(&(x.coeff.clone() * y.coeff.clone()), "x*y")?;
    }

    // Zero y: only (n, m) = (0, 0) survives (0^0 = 1).
    if y.coeff.is_zero() {
        let mut term = QSeries::one(d);
        if !w.coeff.is_zero() && w.exp <= d {
            term = term.div_one_minus(&w.coeff, w.exp)?;
        }
        if !z.coeff.is_zero() && z.exp <= d {
            term = term.div_one_minus(&z.coeff, z.exp)?;
        }
        return Ok(term);
    }

    // Zero x: the n = 0 row is an ordinary Lambert sum in m.
    if x.coeff.is_zero() {
        let mut row = l_core(None, 0, y, std::slice::from_ref(z), base, d)?;
        if !w.coeff.is_zero() && w.exp <= d {
            row = row.div_one_minus(&w.coeff, w.exp)?;
        }
        return Ok(row);
    }

    let fw_bound: usize = if w.coeff.is_zero() || w.exp > d {
        0
    } else {
        (d - w.exp) / b
    };
    let fz_bound: usize = if z.coeff.is_zero() || z.exp > d {
        0
    } else {
        (d - z.exp) / b
    };

    let exy = x.exp + y.exp;
    let corner_tail = x.exp == 0 && y.exp == 0;
    let n_hi = if corner_tail {
        // beyond this, both inner factors are ≡ 1 for every m ≥ n
        fw_bound.max(fz_bound)
    } else {
        d / exy
    };

    let row_tail = y.exp == 0; // c_y != 0 here
    let inv_1my = if row_tail {
        Some(not_one(&y.coeff, "y")?)
    } else {
        None
    };

    let mut acc = QSeries::zero(d);
    let mut cx_pow = S::one();
    for n in 0..=n_hi {
        let x_exp = x.exp * n;
        if x_exp > d {
            break;
        }
        let w_step = w.exp + b * n;
        let apply_w = !w.coeff.is_zero() && w_step <= d;

        let m_hi = if y.exp >= 1 {
            (d - x_exp) / y.exp
        } else {
            fz_bound
        };

        // zone (i): both factors may differ from 1; direct enumeration
        let mut cy_pow = y.coeff.pow_u(n as u64);
        for m in n..=m_hi {
            let e = x_exp + y.exp * m;
            if e > d {
                break;
            }
            let scalar = cx_pow.clone() * cy_pow.clone();
            let mut term = QSeries::monomial(scalar, e, d);
            if apply_w {
                term = term.div_one_minus(&w.coeff, w_step)?;
            }
            let z_step = z.exp + b * m;
            if !z.coeff.is_zero() && z_step <= d {
                term = term.div_one_minus(&z.coeff, z_step)?;
            }
            acc = &acc + &term;
            cy_pow = cy_pow * y.coeff.clone();
        }

        // zone (ii): m past its bound, z-factor ≡ 1: geometric tail in y
        if let Some(inv) = &inv_1my {
            let lo = n.max(m_hi + 1) as u64;
            let tail = y.coeff.pow_u(lo) * inv.clone();
            let mut term = QSeries::monomial(cx_pow.clone() * tail, x_exp, d);
            if apply_w {
                term = term.div_one_minus(&w.coeff, w_step)?;
            }
            acc = &acc + &term;
        }

        cx_pow = cx_pow * x.coeff.clone();
    }

    // zone (iii): n past its bound, both factors ≡ 1: closed corner tail
    if corner_tail {
        let s = x.coeff.clone() * y.coeff.clone();
        let inv_1my = inv_1my.expect("y.exp == 0 here");
        let inv_1ms = not_one(&s, "x*y")?;
        let tail = s.pow_u(n_hi as u64 + 1) * inv_1my * inv_1ms;
        acc.add_to_coeff(0, tail);
    }

    Ok(acc)
}

// ---------------------------------------------------------------------------
// Hyperbola-bounded double sums
// ---------------------------------------------------------------------------

/// ∑_{m,n≥1} σ^m · x^n z^m · q^{αmn+βm+γn+δ} / ((1 − u q^{a·n+a0})(1 − v q^{b·m+b0})).
#[derive(Clone, Debug)]
pub struct BilinearSpec<S> {
    /// σ ∈ {+1, −1}, applied as σ^m.
    pub sigma: i64,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub x: Param<S>,
    pub z: Param<S>,
    pub u: Param<S>,
    pub a: i64,
    pub a0: i64,
    pub v: Param<S>,
    pub b: i64,
    pub b0: i64,
}

pub fn build_bilinear<S: Scalar>(spec: &BilinearSpec<S>, degree: usize) -> Result<QSeries<S>> {
    let d = degree as i64;
    if spec.sigma != 1 && spec.sigma != -1 {
        return Err(Error::domain("sigma", "sign must be +1 or -1"));
    }
    if spec.alpha == 0 {
        return Err(Error::domain(
            "alpha",
            "alpha = 0 is not hyperbola-bounded (use OrdDouble instead)",
        ));
    }
    if spec.alpha < 0 {
        return Err(Error::domain("alpha", "alpha must be >= 1"));
    }
    // effective linear terms after folding in the parameter exponents
    let beta_eff = spec.beta + spec.z.exp as i64;
    let gamma_eff = spec.gamma + spec.x.exp as i64;
    let expo = |m: i64, n: i64| spec.alpha * m * n + beta_eff * m + gamma_eff * n + spec.delta;
    if spec.alpha + beta_eff < 1 || spec.alpha + gamma_eff < 1 || expo(1, 1) < 0 {
        return Err(Error::domain(
            "numerator",
            "exponent alpha*m*n + beta*m + gamma*n + delta must be nonnegative and increasing for m, n >= 1",
        ));
    }
    for (name, p, lin, off) in [("u", &spec.u, spec.a, spec.a0), ("v", &spec.v, spec.b, spec.b0)] {
        if lin < 0 || p.exp as i64 + lin + off < 1 {
            return Err(Error::domain(
                name,
                "denominator exponent must be >= 1 at every index",
            ));
        }
    }

    let mut acc = QSeries::zero(degree);
    if spec.x.coeff.is_zero() || spec.z.coeff.is_zero() {
        return Ok(acc); // every term carries x^n z^m with m, n >= 1
    }

    let mut cz_pow = spec.z.coeff.clone();
    let mut m = 1i64;
    while expo(m, 1) <= d {
        let v_step = spec.v.exp as i64 + spec.b * m + spec.b0;
        let sign_neg = spec.sigma == -1 && m % 2 == 1;
        let mut cx_pow = spec.x.coeff.clone();
        let mut n = 1i64;
        while expo(m, n) <= d {
            let e = expo(m, n) as usize;
            let mut scalar = cx_pow.clone() * cz_pow.clone();
            if sign_neg {
                scalar = -scalar;
            }
            let mut term = QSeries::monomial(scalar, e, degree);
            let u_step = spec.u.exp as i64 + spec.a * n + spec.a0;
            if !spec.u.coeff.is_zero() && u_step <= d {
                term = term.div_one_minus(&spec.u.coeff, u_step as usize)?;
            }
            if !spec.v.coeff.is_zero() && v_step <= d {
                term = term.div_one_minus(&spec.v.coeff, v_step as usize)?;
            }
            acc = &acc + &term;
            cx_pow = cx_pow * spec.x.coeff.clone();
            n += 1;
        }
        cz_pow = cz_pow * spec.z.coeff.clone();
        m += 1;
    }
    Ok(acc)
}

/// ∑_{1≤n<m} w(n) · q^{u·n+v·m} / ((1 − q^n)(1 − q^m)).
#[derive(Clone, Debug)]
pub struct OrderedDoubleSpec {
    pub weight: WeightPoly,
    pub u: u64,
    pub v: u64,
}

pub fn build_ordered_double<S: Scalar>(
    spec: &OrderedDoubleSpec,
    degree: usize,
) -> Result<QSeries<S>> {
    if spec.u < 1 || spec.v < 1 {
        return Err(Error::domain(
            "numerator",
            "both numerator exponents must be >= 1 so the sum terminates",
        ));
    }
    let d = degree as u64;
    let mut acc = QSeries::zero(degree);
    if spec.weight.is_zero() {
        return Ok(acc);
    }
    let one = S::one();
    let mut n = 1u64;
    while spec.u * n + spec.v * (n + 1) <= d {
        let wn = S::from_rational(&spec.weight.eval(n));
        if !wn.is_zero() {
            let mut m = n + 1;
            while spec.u * n + spec.v * m <= d {
                let e = (spec.u * n + spec.v * m) as usize;
                let mut term = QSeries::monomial(wn.clone(), e, degree);
                if n as usize <= degree {
                    term = term.div_one_minus(&one, n as usize)?;
                }
                if m as usize <= degree {
                    term = term.div_one_minus(&one, m as usize)?;
                }
                acc = &acc + &term;
                m += 1;
            }
        }
        n += 1;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// q-shifted factorials
// ---------------------------------------------------------------------------

/// (a; q^b)_n = ∏_{k<n} (1 − a q^{b·k}); `PochOrder::Infinite` truncates the
/// product where remaining factors are ≡ 1 modulo q^{D+1}.
pub fn build_poch<S: Scalar>(
    a: &Param<S>,
    base: u32,
    order: PochOrder,
    degree: usize,
) -> Result<QSeries<S>> {
    check_base(base)?;
    let d = degree;
    let b = base as usize;
    let mut acc = QSeries::one(d);
    if a.coeff.is_zero() {
        return Ok(acc);
    }
    let k_hi: u64 = match order {
        PochOrder::Finite(n) => n,
        PochOrder::Infinite => {
            if a.exp > d {
                0
            } else {
                ((d - a.exp) / b) as u64 + 1
            }
        }
    };
    for k in 0..k_hi {
        let step = a.exp + b * (k as usize);
        if step > d {
            break; // remaining factors are 1 mod q^{D+1}
        }
        acc = acc.mul_one_minus(&a.coeff, step);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Named series
// ---------------------------------------------------------------------------

/// The handful of closed families that appear by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Special {
    /// ∑_{n,m≥1} (−1)^m q^{2mn+m} / ((1+q^n)(1−q^{2m−1}))
    Y,
    /// ∑_{n≥0} (n+1) q^n / (1 + q^{2n+3})
    X,
    /// ∑_{k≥1} q^k / (1 − q^k)
    G,
    /// ∑_{k≥1} q^{2k} / (1 − q^k)^2
    H,
    /// ∑_{k≥1} ( k(k−1) q^k/(1−q^k) − 2k q^{2k}/(1−q^k)^2 )
    F1,
    /// ∑_{1≤k<l} 2k q^{k+l} / ((1−q^k)(1−q^l))
    F3,
    /// ∑_{n≥1} σ_k(n) q^{s·n}
    SigmaGf { k: u32, stride: u32 },
}

pub fn build_special(which: Special, degree: usize) -> Result<QSeries<Rational>> {
    let d = degree;
    let one = || Param::<Rational>::one();
    let q = || Param::<Rational>::q();
    let mono = |c: i64, e: usize| Param::new(Rational::from_int(c), e);
    match which {
        Special::G => build_l(&q(), &[q()], 1, d)?.shift(1),
        Special::H => build_l(&mono(1, 2), &[q(), q()], 1, d)?.shift(2),
        Special::Y => build_bilinear(
            &BilinearSpec {
                sigma: -1,
                alpha: 2,
                beta: 1,
                gamma: 0,
                delta: 0,
                x: one(),
                z: one(),
                u: mono(-1, 0),
                a: 1,
                a0: 0,
                v: one(),
                b: 2,
                b0: -1,
            },
            d,
        ),
        Special::X => {
            let w = WeightPoly::var().add(&WeightPoly::constant(Rational::one()));
            build_weighted_l(&w, 0, &q(), &[mono(-1, 3)], 2, d)
        }
        Special::F1 => {
            let n = WeightPoly::var();
            let w1 = n.mul(&n).sub(&n); // k(k-1)
            let first = build_weighted_l(&w1, 1, &q(), &[one()], 1, d)?;
            let w2 = n.scalar_mul(&Rational::from_int(2)); // 2k
            let second = build_weighted_l(&w2, 1, &mono(1, 2), &[one(), one()], 1, d)?;
            Ok(&first - &second)
        }
        Special::F3 => build_ordered_double(
            &OrderedDoubleSpec {
                weight: WeightPoly::var().scalar_mul(&Rational::from_int(2)),
                u: 1,
                v: 1,
            },
            d,
        ),
        Special::SigmaGf { k, stride } => {
            if stride < 1 {
                return Err(Error::domain("stride", "stride must be >= 1"));
            }
            let mut acc = QSeries::zero(d);
            let s = stride as usize;
            let mut n = 1usize;
            while n * s <= d {
                acc.set_coeff(n * s, Rational::from_bigint(sigma(k, n as u64)));
                n += 1;
            }
            Ok(acc)
        }
    }
}
