//! Differentiating a series family with respect to a parameter coefficient
//! by running the unchanged builders over dual numbers.
//!
//! The example differentiates both sides of the single-sum reduction of
//! x·A(x, q, q², q) and recovers the identity f1 = f3 between a weighted
//! single sum and an ordered double sum.
//!
//!     cargo run --example derivative_mode

use qlambert::dsl::{eval, parse, Bindings};
use qlambert::scalar::{DualRational, Rational};
use qlambert::{build_l, build_special, Param, Special};

fn main() {
    let degree = 30;

    // Derivatives at the scalar level: evaluating over value+deriv pairs
    // applies the product/quotient rule everywhere.
    let x = Param::new(DualRational::variable(Rational::ratio(1, 2)), 0);
    let y = Param::new(DualRational::constant(Rational::ratio(1, 3)), 0);
    let l = build_l(&x, &[y], 1, 6).unwrap();
    println!("L(x, 1/3) at x = 1/2 + eps, truncated at q^6:");
    println!("  value part = {}", l.value_part());
    println!("  deriv part = {}\n", l.deriv_part());

    // The same mechanism through the DSL: D($x) marks the parameter.
    let record_lhs = parse("D($x) (2*q^2*$x*A($x, q, q^2, q))").unwrap();
    let record_rhs =
        parse("D($x) ($x^2*(L(q^2, $x, $x) - L($x, q)^2) + 2*q*$x*(L($x, q)*L(q, q) - L($x*q, q, q)))")
            .unwrap();
    let at_q = Bindings::default().with_param("x", Rational::one(), 1);
    let lhs = eval(&record_lhs, degree, &at_q).unwrap();
    let rhs = eval(&record_rhs, degree, &at_q).unwrap();

    let f3 = build_special(Special::F3, degree).unwrap();
    let f1 = build_special(Special::F1, degree).unwrap();
    assert_eq!(lhs, f3);
    assert_eq!(rhs, f1);
    assert_eq!(f1, f3);

    println!("derivative of the lhs at x = q  = {}", lhs.truncated(12));
    println!("ordered double sum f3           = {}", f3.truncated(12));
    println!("derivative of the rhs at x = q  = {}", rhs.truncated(12));
    println!("weighted single sum f1          = {}", f1.truncated(12));
    println!("\nf1 = f3 recovered through q^{degree} by differentiation");
}
