//! Build the named series families and print their exact expansions.
//!
//!     cargo run --example expand_series

use qlambert::{build_special, Special};

fn main() {
    let degree = 16;
    let families = [
        ("G(q)  divisor count", Special::G),
        ("H(q)  sigma minus divisor count", Special::H),
        ("Y(q)  alternating double sum", Special::Y),
        ("X(q)  weighted auxiliary sum", Special::X),
        ("f1(q) weighted single sum", Special::F1),
        ("f3(q) ordered double sum", Special::F3),
        ("sigma_1 at stride 2", Special::SigmaGf { k: 1, stride: 2 }),
    ];
    for (label, which) in families {
        let series = build_special(which, degree).expect("named families build");
        println!("{label}\n    = {series}\n");
    }
}
