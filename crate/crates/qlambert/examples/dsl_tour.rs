//! A tour of the expression DSL: parsing, printing, evaluation with bound
//! parameters, finite sums with integer indices, and error reporting.
//!
//!     cargo run --example dsl_tour

use qlambert::dsl::{eval, parse, Bindings};
use qlambert::scalar::Rational;

fn main() {
    // parse → print round-trips structurally
    let src = "2*A(q, q, q^2, -q; q^2) - X(q) - NegQ(X(q))";
    let ast = parse(src).unwrap();
    println!("input:    {src}");
    println!("printed:  {ast}");
    assert_eq!(parse(&ast.to_string()).unwrap(), ast);

    // that expression is an identity: it evaluates to the zero series
    let zero = eval(&ast, 40, &Bindings::default()).unwrap();
    println!("evaluates to: {zero}  (an identity)\n");

    // free parameters come from bindings
    let expr = parse("L($x*q, -$z*q; q^2)").unwrap();
    let bindings = Bindings::default()
        .with_param("x", Rational::ratio(1, 2), 0)
        .with_param("z", Rational::ratio(-1, 3), 0);
    let series = eval(&expr, 8, &bindings).unwrap();
    println!("L($x*q, -$z*q; q^2) at x=1/2, z=-1/3:");
    println!("  {series}\n");

    // finite sums bind an integer index
    let sum = parse("Sum($j, 1, $N, q^$j/(1 - q^$j))").unwrap();
    let n4 = Bindings::default().with_int("N", 4);
    println!("Sum($j, 1, 4, q^$j/(1 - q^$j)) = {}", eval(&sum, 10, &n4).unwrap());

    // errors carry positions and expression paths
    println!("\nerror reporting:");
    println!("  {}", parse("L(q, (").unwrap_err());
    println!("  {}", parse("Zeta(q)").unwrap_err());
    let bad = parse("L(q, 1; q)").unwrap();
    println!("  {}", eval(&bad, 8, &Bindings::default()).unwrap_err());
}
