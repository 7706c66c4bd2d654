//! Lambert series aggregate arithmetic functions: this example ties the
//! series engine to direct divisor enumeration.
//!
//!     cargo run --example divisor_sums

use qlambert::numtheory::{divisors, sigma, weighted_divisor_sum};
use qlambert::scalar::Rational;
use qlambert::{build_special, Special};

fn main() {
    let degree = 20;
    let g = build_special(Special::G, degree).unwrap();
    let h = build_special(Special::H, degree).unwrap();

    println!("n   divisors           d(n) = [q^n]G   sigma_1(n) - d(n) = [q^n]H");
    for n in 1..=12u64 {
        let ds = divisors(n);
        let d_n = ds.len() as i64;
        let s1 = sigma(1, n);
        assert_eq!(g.coeff(n as usize), &Rational::from_int(d_n));
        assert_eq!(
            h.coeff(n as usize),
            &(Rational::from_bigint(s1.clone()) - Rational::from_int(d_n))
        );
        println!(
            "{n:<3} {:<18} {d_n:<15} {}",
            format!("{ds:?}"),
            Rational::from_bigint(s1) - Rational::from_int(d_n)
        );
    }

    // weighted divisor sums interpolate: at z = 1 they collapse to sigma_1
    println!("\nweighted divisor sums sum(d | n) d*z^d at z = 1/2:");
    for n in 1..=8u64 {
        println!("  n = {n}: {}", weighted_divisor_sum(n, &Rational::ratio(1, 2)));
    }

    // the sigma generating function at stride 2 places sigma_1(n) at q^(2n)
    let gf = build_special(Special::SigmaGf { k: 1, stride: 2 }, 12).unwrap();
    println!("\nsigma_1 generating function at stride 2 = {gf}");
}
