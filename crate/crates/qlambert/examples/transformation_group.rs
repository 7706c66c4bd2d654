//! Enumerate the order-24 group generated by
//! S(x,y,z,w) = (z/w, w, xy, y) and T(x,y,z,w) = (y, x, w, z),
//! print each element with a shortest generator word, and check the
//! defining relations.
//!
//!     cargo run --example transformation_group

use qlambert::group::{closure, Monomial4};

fn main() {
    let elements = closure();
    println!("group order: {}", elements.len());
    println!("{:<14} image of (x, y, z, w)", "word");
    for e in &elements {
        let word = if e.word.is_empty() { "I" } else { &e.word };
        println!("{word:<14} {}", e.element);
    }

    let s = Monomial4::s();
    let t = Monomial4::t();
    println!();
    println!("S^2 = I: {}", s.compose(&s).is_identity());
    println!("T^2 = I: {}", t.compose(&t).is_identity());
    println!("order of ST: {:?}", s.compose(&t).order(24));
    println!(
        "every element unimodular: {}",
        elements
            .iter()
            .all(|e| e.element.determinant().abs() == 1)
    );
}
