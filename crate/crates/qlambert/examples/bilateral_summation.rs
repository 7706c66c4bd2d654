//! The bilateral Lambert sum L*(x, y) = ∑_{n∈ℤ} x^n/(1 − y q^n) equals a
//! quotient of infinite products. This example evaluates both routes at a
//! few exact rational points and compares them coefficient by coefficient.
//!
//!     cargo run --example bilateral_summation

use qlambert::builders::{build_lstar, build_poch, PochOrder};
use qlambert::scalar::Rational;
use qlambert::series::QSeries;
use qlambert::Param;

fn product_side(x: &Param<Rational>, y: &Param<Rational>, degree: usize) -> QSeries<Rational> {
    let poch = |p: &Param<Rational>| build_poch(p, 1, PochOrder::Infinite, degree).unwrap();
    let q = Param::new(Rational::one(), 1);
    let xy = x.mul(y);
    let num = &(&poch(&q) * &poch(&q)) * &(&poch(&xy) * &poch(&q.div(&xy).unwrap()));
    let den = &(&poch(x) * &poch(&q.div(x).unwrap())) * &(&poch(y) * &poch(&q.div(y).unwrap()));
    num.div_unit(&den).unwrap()
}

fn main() {
    let degree = 24;
    let points = [
        (Rational::ratio(1, 2), Rational::ratio(1, 3)),
        (Rational::ratio(-2, 5), Rational::ratio(3, 7)),
        (Rational::ratio(3, 4), Rational::ratio(-5, 6)),
    ];
    for (cx, cy) in points {
        let x = Param::new(cx.clone(), 0);
        let y = Param::new(cy.clone(), 0);
        let sum = build_lstar(&x, &y, 1, degree).unwrap();
        let product = product_side(&x, &y, degree);
        assert_eq!(sum, product);
        println!("x = {cx}, y = {cy}");
        println!("  bilateral sum  = {}", sum.truncated(6));
        println!("  product form   = {}", product.truncated(6));
        println!("  equal through q^{degree}\n");
    }
    println!("hand checks at x = 1/2, y = 1/3:");
    let s = build_lstar(
        &Param::new(Rational::ratio(1, 2), 0),
        &Param::new(Rational::ratio(1, 3), 0),
        1,
        5,
    )
    .unwrap();
    println!("  [q^0] = {} (expected 5/2)", s.coeff(0));
    println!("  [q^1] = {} (expected -35/6)", s.coeff(1));
}
