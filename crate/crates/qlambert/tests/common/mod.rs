//! Independent brute-force oracles for the series builders.
//!
//! Everything here is naive on purpose: dense coefficient vectors, explicit
//! index loops, schoolbook polynomial products, and enumeration out to the
//! coarse bound n ≤ D (beyond which every inner factor is 1 mod q^{D+1}).
//! The only closed forms are the scalar geometric tails that exactness
//! forces along e = 0 directions. None of the production shortcuts
//! (divide-by-binomial recurrences, per-direction bounds, zone splitting)
//! are used, so agreement with the builders checks real content.

#![allow(dead_code)]

use qlambert::builders::{BilinearSpec, OrderedDoubleSpec, PochOrder};
use qlambert::param::WeightPoly;
use qlambert::scalar::{Rational, Scalar};
use qlambert::series::QSeries;
use qlambert::verify::SplitMix64;
use qlambert::Param;

pub type Dense<S> = Vec<S>;

pub fn zero<S: Scalar>(degree: usize) -> Dense<S> {
    vec![S::zero(); degree + 1]
}

pub fn mono<S: Scalar>(c: S, e: usize, degree: usize) -> Dense<S> {
    let mut v = zero(degree);
    if e <= degree {
        v[e] = c;
    }
    v
}

pub fn add_assign<S: Scalar>(acc: &mut Dense<S>, t: &Dense<S>) {
    for (a, b) in acc.iter_mut().zip(t.iter()) {
        *a = a.clone() + b.clone();
    }
}

/// Schoolbook product, truncated.
pub fn mul_naive<S: Scalar>(a: &Dense<S>, b: &Dense<S>) -> Dense<S> {
    let d = a.len().min(b.len()) - 1;
    let mut out: Dense<S> = zero(d);
    for i in 0..=d {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=(d - i) {
            if b[j].is_zero() {
                continue;
            }
            out[i + j] = out[i + j].clone() + a[i].clone() * b[j].clone();
        }
    }
    out
}

/// 1/(1 − c·q^step) as an explicit geometric series, step ≥ 1.
pub fn geom<S: Scalar>(c: &S, step: usize, degree: usize) -> Dense<S> {
    assert!(step >= 1);
    let mut v = zero(degree);
    let mut pow = S::one();
    let mut e = 0usize;
    while e <= degree {
        v[e] = pow.clone();
        pow = pow * c.clone();
        e += step;
    }
    v
}

fn inv_one_minus<S: Scalar>(c: &S) -> S {
    (S::one() - c.clone()).inv().expect("oracle: 1 - c invertible")
}

pub fn to_series<S: Scalar>(v: Dense<S>) -> QSeries<S> {
    QSeries::from_coeffs(v)
}

/// Apply one inner factor 1/(1 − c q^s) to a dense term.
fn apply_factor<S: Scalar>(term: Dense<S>, c: &S, s: usize, degree: usize) -> Dense<S> {
    if c.is_zero() || s > degree {
        return term;
    }
    if s == 0 {
        let u = inv_one_minus(c);
        return term.into_iter().map(|a| a * u.clone()).collect();
    }
    mul_naive(&term, &geom(c, s, degree))
}

/// ∑_{n≥n0} w(n)·x^n / ∏ (1 − y_i q^{bn}) by enumeration to n = D plus the
/// scalar tail along e_x = 0 (constant weight only there).
pub fn oracle_weighted_l<S: Scalar>(
    weight: Option<&WeightPoly>,
    n0: u64,
    x: &Param<S>,
    ys: &[Param<S>],
    base: u32,
    degree: usize,
) -> Dense<S> {
    let b = base as usize;
    let mut acc = zero(degree);
    for n in n0..=degree as u64 {
        let coeff = {
            let mut c = x.coeff.pow_u(n);
            if let Some(w) = weight {
                c = c * S::from_rational(&w.eval(n));
            }
            c
        };
        if coeff.is_zero() {
            continue;
        }
        let e = x.exp * n as usize;
        if e > degree {
            continue;
        }
        let mut term = mono(coeff, e, degree);
        for y in ys {
            term = apply_factor(term, &y.coeff, y.exp + b * n as usize, degree);
        }
        add_assign(&mut acc, &term);
    }
    if x.exp == 0 && !x.coeff.is_zero() {
        // n > D: every factor is 1 mod q^{D+1}
        let w0 = match weight {
            None => Rational::one(),
            Some(w) => w
                .constant_value()
                .expect("oracle: tailed sums have constant weights"),
        };
        let lo = (degree as u64 + 1).max(n0);
        let tail = x.coeff.pow_u(lo) * inv_one_minus(&x.coeff) * S::from_rational(&w0);
        acc[0] = acc[0].clone() + tail;
    }
    acc
}

pub fn oracle_l<S: Scalar>(
    x: &Param<S>,
    ys: &[Param<S>],
    base: u32,
    degree: usize,
) -> Dense<S> {
    oracle_weighted_l(None, 0, x, ys, base, degree)
}

/// A(x,y,z,w) by double enumeration to (D, D) plus the two geometric tails.
pub fn oracle_a<S: Scalar>(
    x: &Param<S>,
    y: &Param<S>,
    z: &Param<S>,
    w: &Param<S>,
    base: u32,
    degree: usize,
) -> Dense<S> {
    let b = base as usize;
    let d = degree;
    let mut acc = zero(d);
    for n in 0..=d {
        let cx = x.coeff.pow_u(n as u64);
        if cx.is_zero() && n > 0 {
            break;
        }
        let ex = x.exp * n;
        if ex > d {
            break;
        }
        let w_step = w.exp + b * n;
        for m in n..=d {
            let cy = y.coeff.pow_u(m as u64);
            if cy.is_zero() && m > 0 {
                break;
            }
            let e = ex + y.exp * m;
            if e > d {
                break;
            }
            let mut term = mono(cx.clone() * cy, e, d);
            term = apply_factor(term, &w.coeff, w_step, d);
            term = apply_factor(term, &z.coeff, z.exp + b * m, d);
            add_assign(&mut acc, &term);
        }
        // tail over m > D at this n: the z-factor is 1 there
        if y.exp == 0 && !y.coeff.is_zero() {
            let tail = y.coeff.pow_u(d as u64 + 1) * inv_one_minus(&y.coeff);
            let mut term = mono(cx * tail, ex, d);
            term = apply_factor(term, &w.coeff, w_step, d);
            add_assign(&mut acc, &term);
        }
    }
    // tail over n > D: both factors are 1, ∑_{n>D} (c_x c_y)^n / (1 - c_y)
    if x.exp == 0 && y.exp == 0 && !x.coeff.is_zero() && !y.coeff.is_zero() {
        let s = x.coeff.clone() * y.coeff.clone();
        let tail = s.pow_u(d as u64 + 1) * inv_one_minus(&y.coeff) * inv_one_minus(&s);
        acc[0] = acc[0].clone() + tail;
    }
    acc
}

/// Bilateral sum: the positive half via [`oracle_l`], the negative half by
/// expanding each n = −m term directly.
pub fn oracle_lstar<S: Scalar>(
    x: &Param<S>,
    y: &Param<S>,
    base: u32,
    degree: usize,
) -> Dense<S> {
    assert_eq!(x.exp, 0);
    let b = base as usize;
    let d = degree;
    let mut acc = oracle_l(x, std::slice::from_ref(y), base, d);
    let cx_inv = x.coeff.inv().expect("oracle: c_x != 0");
    let cy_inv = y.coeff.inv().expect("oracle: c_y != 0");
    let mut m = 1usize;
    loop {
        let s = (b * m) as i64 - y.exp as i64;
        if s > d as i64 {
            break;
        }
        let cmx = cx_inv.pow_u(m as u64);
        if s >= 1 {
            // 1/(1 - c_y q^{-s}) = -∑_{j≥1} c_y^{-j} q^{js}
            let step = s as usize;
            let mut j = 1usize;
            while j * step <= d {
                let v = cmx.clone() * cy_inv.pow_u(j as u64);
                acc[j * step] = acc[j * step].clone() - v;
                j += 1;
            }
        } else if s == 0 {
            acc[0] = acc[0].clone() + cmx * inv_one_minus(&y.coeff);
        } else {
            let term = apply_factor(mono(cmx, 0, d), &y.coeff, (-s) as usize, d);
            add_assign(&mut acc, &term);
        }
        m += 1;
    }
    acc
}

pub fn oracle_bilinear<S: Scalar>(spec: &BilinearSpec<S>, degree: usize) -> Dense<S> {
    let d = degree as i64;
    let beta_eff = spec.beta + spec.z.exp as i64;
    let gamma_eff = spec.gamma + spec.x.exp as i64;
    let expo = |m: i64, n: i64| spec.alpha * m * n + beta_eff * m + gamma_eff * n + spec.delta;
    let mut acc = zero(degree);
    let mut m = 1i64;
    while expo(m, 1) <= d {
        let mut n = 1i64;
        while expo(m, n) <= d {
            let mut c = spec.x.coeff.pow_u(n as u64) * spec.z.coeff.pow_u(m as u64);
            if spec.sigma == -1 && m % 2 == 1 {
                c = -c;
            }
            if !c.is_zero() {
                let mut term = mono(c, expo(m, n) as usize, degree);
                let su = spec.u.exp as i64 + spec.a * n + spec.a0;
                if su >= 0 {
                    term = apply_factor(term, &spec.u.coeff, su as usize, degree);
                }
                let sv = spec.v.exp as i64 + spec.b * m + spec.b0;
                if sv >= 0 {
                    term = apply_factor(term, &spec.v.coeff, sv as usize, degree);
                }
                add_assign(&mut acc, &term);
            }
            n += 1;
        }
        m += 1;
    }
    acc
}

pub fn oracle_ordered_double<S: Scalar>(
    spec: &OrderedDoubleSpec,
    degree: usize,
) -> Dense<S> {
    let d = degree as u64;
    let mut acc: Dense<S> = zero(degree);
    let mut n = 1u64;
    while spec.u * n + spec.v * (n + 1) <= d {
        let wn = S::from_rational(&spec.weight.eval(n));
        let mut m = n + 1;
        while spec.u * n + spec.v * m <= d {
            if !wn.is_zero() {
                let e = (spec.u * n + spec.v * m) as usize;
                let mut term = mono(wn.clone(), e, degree);
                term = apply_factor(term, &S::one(), n as usize, degree);
                term = apply_factor(term, &S::one(), m as usize, degree);
                add_assign(&mut acc, &term);
            }
            m += 1;
        }
        n += 1;
    }
    acc
}

pub fn oracle_poch<S: Scalar>(
    a: &Param<S>,
    base: u32,
    order: PochOrder,
    degree: usize,
) -> Dense<S> {
    let b = base as usize;
    let mut acc: Dense<S> = mono(S::one(), 0, degree);
    if a.coeff.is_zero() {
        return acc;
    }
    let hi = match order {
        PochOrder::Finite(n) => n,
        PochOrder::Infinite => degree as u64 + 1,
    };
    for k in 0..hi {
        let step = a.exp + b * k as usize;
        if step > degree {
            break;
        }
        let mut factor = mono(S::one(), 0, degree);
        factor[step] = factor[step].clone() - a.coeff.clone();
        acc = mul_naive(&acc, &factor);
    }
    acc
}

// ---------------------------------------------------------------------------
// Randomized parameter configurations
// ---------------------------------------------------------------------------

/// Deterministic config generator for the oracle-equivalence matrix.
pub struct ConfigGen {
    rng: SplitMix64,
}

impl ConfigGen {
    pub fn new(seed: u64) -> Self {
        ConfigGen {
            rng: SplitMix64::new(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.rng.next_u64() % (hi - lo + 1) as u64) as i64
    }

    /// |c| < 1; zero allowed.
    pub fn coeff(&mut self) -> Rational {
        let r = self.int(2, 9);
        let p = self.int(-(r - 1), r - 1);
        Rational::ratio(p, r)
    }

    pub fn coeff_nonzero(&mut self) -> Rational {
        loop {
            let c = self.coeff();
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn param(&mut self, exp_lo: i64, exp_hi: i64) -> Param<Rational> {
        Param::new(self.coeff(), self.int(exp_lo, exp_hi) as usize)
    }

    pub fn param_nonzero(&mut self, exp_lo: i64, exp_hi: i64) -> Param<Rational> {
        Param::new(self.coeff_nonzero(), self.int(exp_lo, exp_hi) as usize)
    }

    pub fn weight(&mut self) -> WeightPoly {
        let deg = self.int(0, 2);
        let coeffs = (0..=deg)
            .map(|_| Rational::from_int(self.int(-3, 3)))
            .collect();
        WeightPoly::from_coeffs(coeffs)
    }
}
