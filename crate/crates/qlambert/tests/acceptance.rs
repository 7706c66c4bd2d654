//! Acceptance suite: one test per criterion, each printing a pass line.
//! Every comparison is exact; there are no tolerances anywhere.

mod common;

use common::*;

use qlambert::builders::{
    build_a, build_bilinear, build_l, build_lstar, build_ordered_double, build_poch,
    build_special, build_weighted_l, BilinearSpec, OrderedDoubleSpec, PochOrder, Special,
};
use qlambert::catalog::{builtin_catalog, IdentityRecord};
use qlambert::dsl::{self, Bindings};
use qlambert::group::{self, Generator, Monomial4};
use qlambert::numtheory::sigma;
use qlambert::param::WeightPoly;
use qlambert::report;
use qlambert::scalar::{DualRational, Rational};
use qlambert::series::QSeries;
use qlambert::verify::{verify_all, verify_record, Status, VerifyOptions};
use qlambert::Param;

fn rec(id: &str) -> IdentityRecord {
    builtin_catalog()
        .into_iter()
        .find(|r| r.id == id)
        .unwrap_or_else(|| panic!("catalog record `{id}`"))
}

fn assert_passes(id: &str) {
    let record = rec(id);
    let report = verify_record(&record, &VerifyOptions::default());
    assert_eq!(
        report.status,
        Status::Pass,
        "{id} failed: {:?}",
        report.failures
    );
}

fn eval_at(src: &str, degree: usize, bindings: &Bindings) -> QSeries<Rational> {
    dsl::eval(&dsl::parse(src).unwrap(), degree, bindings).unwrap()
}

fn rat(p: i64, r: i64) -> Rational {
    Rational::ratio(p, r)
}

fn int(v: i64) -> Rational {
    Rational::from_int(v)
}

#[test]
fn accept_01_oracle_equivalence() {
    const D: usize = 16;
    const TRIALS: usize = 25;

    let mut g = ConfigGen::new(0x5eed_0001);
    for i in 0..TRIALS {
        let base = g.int(1, 2) as u32;

        // L
        let x = g.param(0, 2);
        let ys: Vec<_> = (0..g.int(1, 3)).map(|_| g.param(0, 2)).collect();
        let got = build_l(&x, &ys, base, D).unwrap();
        assert_eq!(got, to_series(oracle_l(&x, &ys, base, D)), "L config {i}");

        // L over dual scalars, differentiating in the x coefficient
        let xd = Param::new(DualRational::variable(x.coeff.clone()), x.exp);
        let ysd: Vec<_> = ys
            .iter()
            .map(|y| Param::new(DualRational::constant(y.coeff.clone()), y.exp))
            .collect();
        let got = build_l(&xd, &ysd, base, D).unwrap();
        assert_eq!(
            got,
            to_series(oracle_l(&xd, &ysd, base, D)),
            "dual L config {i}"
        );

        // Lstar
        let x = Param::new(g.coeff_nonzero(), 0);
        let y = g.param_nonzero(0, 2);
        let got = build_lstar(&x, &y, base, D).unwrap();
        assert_eq!(
            got,
            to_series(oracle_lstar(&x, &y, base, D)),
            "Lstar config {i}"
        );

        // A
        let (x, y) = (g.param(0, 2), g.param(0, 2));
        let (z, w) = (g.param(0, 2), g.param(0, 2));
        let got = build_a(&x, &y, &z, &w, base, D).unwrap();
        assert_eq!(
            got,
            to_series(oracle_a(&x, &y, &z, &w, base, D)),
            "A config {i}: x={x} y={y} z={z} w={w} base={base}"
        );

        // A over duals, differentiating in the y coefficient
        let dual = |p: &Param<Rational>| Param::new(DualRational::constant(p.coeff.clone()), p.exp);
        let yd = Param::new(DualRational::variable(y.coeff.clone()), y.exp);
        let got = build_a(&dual(&x), &yd, &dual(&z), &dual(&w), base, D).unwrap();
        assert_eq!(
            got,
            to_series(oracle_a(&dual(&x), &yd, &dual(&z), &dual(&w), base, D)),
            "dual A config {i}"
        );

        // Bilin
        let (xb, zb) = (g.param(0, 1), g.param(0, 1));
        let u = g.param_nonzero(0, 1);
        let v = g.param_nonzero(0, 1);
        let a = g.int(1, 2);
        let b = g.int(1, 2);
        let a0 = g.int((1 - u.exp as i64 - a).max(-1), 1);
        let b0 = g.int((1 - v.exp as i64 - b).max(-1), 1);
        let spec = BilinearSpec {
            sigma: if g.int(0, 1) == 0 { 1 } else { -1 },
            alpha: g.int(1, 3),
            beta: g.int(0, 2),
            gamma: g.int(0, 2),
            delta: g.int(-1, 1),
            x: xb,
            z: zb,
            u,
            a,
            a0,
            v,
            b,
            b0,
        };
        let got = build_bilinear(&spec, D).unwrap();
        assert_eq!(got, to_series(oracle_bilinear(&spec, D)), "Bilin config {i}");

        // OrdDouble
        let spec = OrderedDoubleSpec {
            weight: g.weight(),
            u: g.int(1, 2) as u64,
            v: g.int(1, 2) as u64,
        };
        let got: QSeries<Rational> = build_ordered_double(&spec, D).unwrap();
        assert_eq!(
            got,
            to_series(oracle_ordered_double(&spec, D)),
            "OrdDouble config {i}"
        );

        // WL
        let weight = g.weight();
        let n0 = g.int(0, 2) as u64;
        let x = if weight.is_constant() {
            g.param(0, 2)
        } else {
            g.param(1, 2)
        };
        let ys: Vec<_> = (0..g.int(1, 2)).map(|_| g.param(0, 2)).collect();
        let got = build_weighted_l(&weight, n0, &x, &ys, base, D).unwrap();
        assert_eq!(
            got,
            to_series(oracle_weighted_l(Some(&weight), n0, &x, &ys, base, D)),
            "WL config {i}"
        );

        // Poch
        let a = if i % 3 == 0 {
            Param::new(int(g.int(-1, 1)), g.int(0, 2) as usize)
        } else {
            g.param(0, 2)
        };
        let order = if g.int(0, 1) == 0 {
            PochOrder::Finite(g.int(0, 5) as u64)
        } else {
            PochOrder::Infinite
        };
        let got = build_poch(&a, base, order, D).unwrap();
        assert_eq!(
            got,
            to_series(oracle_poch(&a, base, order, D)),
            "Poch config {i}"
        );
    }
    println!("criterion 1 (builders match brute-force oracles, D=16, 25 configs each): PASS");
}

#[test]
fn accept_02_bilateral_summation() {
    assert_passes("psi11");

    // hand-checkable anchors at x = 1/2, y = 1/3
    let s = build_lstar(
        &Param::new(rat(1, 2), 0),
        &Param::new(rat(1, 3), 0),
        1,
        5,
    )
    .unwrap();
    assert_eq!(s.coeff(0), &rat(5, 2));
    assert_eq!(s.coeff(1), &rat(-35, 6));
    println!("criterion 2 (bilateral sum equals its product form at D=30, with exact anchors): PASS");
}

#[test]
fn accept_03_transformation_and_lifting_identities() {
    for id in [
        "prop21-m1",
        "prop21-m2",
        "prop22-w",
        "prop22-z",
        "prop22-y",
        "prop22-x",
    ] {
        assert_passes(id);
    }

    // degenerate anchor: the T-relation at x = y = 0 collapses to the
    // constant 2/((1-w)(1-z))
    let m2 = rec("prop21-m2");
    let bindings = Bindings::default()
        .with_param("x", int(0), 0)
        .with_param("y", int(0), 0)
        .with_param("z", rat(1, 3), 0)
        .with_param("w", rat(1, 5), 0);
    let lhs = dsl::eval(&m2.lhs, 8, &bindings).unwrap();
    let rhs = dsl::eval(&m2.rhs, 8, &bindings).unwrap();
    let want = QSeries::constant(rat(15, 4), 8);
    assert_eq!(lhs, want);
    assert_eq!(rhs, want);

    // degenerate anchor: the z-lifting relation at y = 0 collapses to
    // A(x,0,z,w) = L(0,z,w)
    let py = rec("prop22-y");
    let bindings = Bindings::default()
        .with_param("x", rat(1, 2), 0)
        .with_param("y", int(0), 0)
        .with_param("z", rat(1, 3), 0)
        .with_param("w", rat(1, 5), 0);
    let lhs = dsl::eval(&py.lhs, 8, &bindings).unwrap();
    let rhs = dsl::eval(&py.rhs, 8, &bindings).unwrap();
    let want = QSeries::constant(rat(15, 8), 8);
    assert_eq!(lhs, want);
    assert_eq!(rhs, want);
    println!("criterion 3 (S/T transformations and all four q-liftings at D=40, with degenerate anchors): PASS");
}

#[test]
fn accept_04_symmetric_square_and_corollaries() {
    assert_passes("xxyy");
    assert_passes("a002133");
    assert_passes("neg-q-corollary");

    // [q^3..q^30] of the ordered double sum against the brute-force oracle
    let spec = OrderedDoubleSpec {
        weight: WeightPoly::constant(Rational::one()),
        u: 1,
        v: 1,
    };
    let series: QSeries<Rational> = build_ordered_double(&spec, 30).unwrap();
    let oracle = to_series(oracle_ordered_double::<Rational>(&spec, 30));
    for k in 3..=30 {
        assert_eq!(series.coeff(k), oracle.coeff(k), "A002133 at q^{k}");
    }
    assert_eq!(series.coeff(3), &int(1));
    assert_eq!(series.coeff(4), &int(2));
    assert_eq!(series.coeff(5), &int(5));

    // the alternating corollary's single-sum side, built two distinct ways
    let via_l = eval_at("q^2*L(q^4, q^2, q^2; q^4)", 60, &Bindings::default());
    let mut direct = zero::<Rational>(60);
    let mut n = 1usize;
    while 4 * n - 2 <= 60 {
        let e = 4 * n - 2;
        let sq = geom(&Rational::one(), e, 60);
        let term = mul_naive(&mono(Rational::one(), e, 60), &mul_naive(&sq, &sq));
        add_assign(&mut direct, &term);
        n += 1;
    }
    assert_eq!(via_l, to_series(direct));
    println!("criterion 4 (symmetric-square identity, ordered-double corollary, alternating corollary): PASS");
}

#[test]
fn accept_05_odd_function_family() {
    assert_passes("adsy-general");
    assert_passes("adsy-eqid");
    assert_passes("y-product");
    assert_passes("y-odd");

    let y = build_special(Special::Y, 60).unwrap();
    for k in (0..=60).step_by(2) {
        assert!(y.coeff(k).is_zero(), "even coefficient q^{k} of Y nonzero");
    }
    assert_eq!(y.coeff(3), &int(-1));
    assert_eq!(y.coeff(5), &int(-2));

    // at x = z = 1 the two-parameter reduction specializes to Y itself
    let general = rec("adsy-general");
    let at_one = Bindings::default()
        .with_param("x", Rational::one(), 0)
        .with_param("z", Rational::one(), 0);
    let lhs = dsl::eval(&general.lhs, 60, &at_one).unwrap();
    let rhs = dsl::eval(&general.rhs, 60, &at_one).unwrap();
    assert_eq!(lhs, y);
    assert_eq!(rhs, y);
    println!("criterion 5 (two-parameter reduction, its indexed family N=1..8, Y's product form and oddness): PASS");
}

#[test]
fn accept_06_divisor_sum_family() {
    assert_passes("aab1-general");
    assert_passes("aab1-corollary");
    assert_passes("aab1-equiv");
    assert_passes("aab1-predicate");

    // anchor: at a = 1 the predicate series has [q^4] = sigma_1(2) = 3
    let bindings = Bindings::default().with_int("a", 1);
    let lhs = dsl::eval(&rec("aab1-predicate").lhs, 8, &bindings).unwrap();
    assert_eq!(lhs.coeff(4), &int(3));
    assert_eq!(sigma(1, 2), 3.into());
    println!("criterion 6 (divisor-sum reduction, weighted-divisor corollary, power-of-two predicate a=1..3): PASS");
}

#[test]
fn accept_07_even_coefficient_family() {
    assert_passes("prop3");
    assert_passes("aab2-equiv");
    assert_passes("aab2-predicate");
    assert_passes("x-closed-form");
    assert_passes("denom-zero");

    // anchors: [q^0] = 2 and [q^2] = 6 on both sides of the equivalence
    let r = rec("aab2-equiv");
    let bindings = Bindings::default();
    let lhs = dsl::eval(&r.lhs, 8, &bindings).unwrap();
    let rhs = dsl::eval(&r.rhs, 8, &bindings).unwrap();
    for side in [&lhs, &rhs] {
        assert_eq!(side.coeff(0), &int(2));
        assert_eq!(side.coeff(2), &int(6));
    }

    // anchor: [q^2] = 1 on both sides of the even-coefficient predicate
    let p = rec("aab2-predicate");
    let lhs = dsl::eval(&p.lhs, 8, &bindings).unwrap();
    let rhs = dsl::eval(&p.rhs, 8, &bindings).unwrap();
    assert_eq!(lhs.coeff(2), &int(1));
    assert_eq!(rhs.coeff(2), &int(1));
    println!("criterion 7 (bilateral reduction, even-coefficient equivalence and predicate, X closed form, denominator cancellation): PASS");
}

#[test]
fn accept_08_derivative_route() {
    assert_passes("f3-lemma");
    assert_passes("f3-lemma-eqid2");
    assert_passes("f1-eq-f3");
    assert_passes("f1-eq-f3-derivative");

    let f1 = build_special(Special::F1, 60).unwrap();
    let f3 = build_special(Special::F3, 60).unwrap();
    assert_eq!(f1, f3);
    assert_eq!(f1.coeff(3), &int(2));
    assert_eq!(f3.coeff(3), &int(2));

    // the dual-number route at x = q: the derivative parts of the two sides
    // of the (2q^2-scaled) lemma are exactly f3 and f1
    let d = 50;
    let record = rec("f1-eq-f3-derivative");
    let at_q = Bindings::default().with_param("x", Rational::one(), 1);
    let lhs = dsl::eval(&record.lhs, d, &at_q).unwrap();
    let rhs = dsl::eval(&record.rhs, d, &at_q).unwrap();
    assert_eq!(lhs, build_special(Special::F3, d).unwrap());
    assert_eq!(rhs, build_special(Special::F1, d).unwrap());
    println!("criterion 8 (single-sum lemma, its indexed family N=2..8, f1 = f3, and the dual-number derivative route): PASS");
}

#[test]
fn accept_09_group_structure() {
    let elements = group::closure();
    assert_eq!(elements.len(), 24);
    let s = Monomial4::s();
    let t = Monomial4::t();
    assert!(s.compose(&s).is_identity());
    assert!(t.compose(&t).is_identity());
    assert_eq!(s.compose(&t).order(24), Some(12));

    // semantic spot-check: the exponent matrices act on parameter
    // quadruples exactly as the series transformations do
    let apply_matrix = |m: &Monomial4, vals: &[Param<Rational>; 4]| -> Vec<Param<Rational>> {
        (0..4)
            .map(|i| {
                let row = m.row(i);
                let mut acc = Param::new(Rational::one(), 0);
                for (v, &e) in vals.iter().zip(row.iter()) {
                    acc = acc.mul(&v.pow(e).unwrap());
                }
                acc
            })
            .collect()
    };
    let mut g = ConfigGen::new(0x5eed_0009);
    for _ in 0..5 {
        let quad = [
            Param::new(g.coeff_nonzero(), 0),
            Param::new(g.coeff_nonzero(), 0),
            Param::new(g.coeff_nonzero(), 0),
            Param::new(g.coeff_nonzero(), 0),
        ];
        let d = 32;
        let a = build_a(&quad[0], &quad[1], &quad[2], &quad[3], 1, d).unwrap();

        // S-relation: A is invariant under S
        let sq = apply_matrix(&group::apply(Generator::S, &Monomial4::identity()), &quad);
        let a_s = build_a(&sq[0], &sq[1], &sq[2], &sq[3], 1, d).unwrap();
        assert_eq!(a, a_s);

        // T-relation: A + A∘T = L(x,w)L(y,z) + L(xy,z,w)
        let tq = apply_matrix(&group::apply(Generator::T, &Monomial4::identity()), &quad);
        let a_t = build_a(&tq[0], &tq[1], &tq[2], &tq[3], 1, d).unwrap();
        let l1 = build_l(&quad[0], std::slice::from_ref(&quad[3]), 1, d).unwrap();
        let l2 = build_l(&quad[1], std::slice::from_ref(&quad[2]), 1, d).unwrap();
        let xy = quad[0].mul(&quad[1]);
        let l3 = build_l(&xy, &[quad[2].clone(), quad[3].clone()], 1, d).unwrap();
        assert_eq!(&a + &a_t, &(&l1 * &l2) + &l3);
    }
    println!("criterion 9 (group order 24, S^2 = T^2 = I, ST of order exactly 12, semantic action): PASS");
}

#[test]
fn accept_10_harness_integrity() {
    // a perturbed identity must fail at exactly the perturbed exponent
    let sentinel_text = "id: sentinel\nlhs: G(q)\nrhs: G(q) + q^5\nmode: equal\ndegree: 12\n";
    let sentinel = qlambert::catalog::parse_catalog(sentinel_text)
        .unwrap()
        .pop()
        .unwrap();
    let report = verify_record(&sentinel, &VerifyOptions::default());
    assert_eq!(report.status, Status::Fail);
    assert_eq!(report.failures[0].k, 5);
    assert_eq!(report.failures[0].lhs, "2");
    assert_eq!(report.failures[0].rhs, "3");

    // reports are byte-deterministic under fixed (degree, trials, seed);
    // wall-time fields are masked, everything else must be identical
    let subset: Vec<IdentityRecord> = ["psi11", "y-odd", "adsy-eqid", "aab1-predicate"]
        .iter()
        .map(|id| rec(id))
        .collect();
    let opts = VerifyOptions {
        degree: Some(24),
        trials: 3,
        seed: 42,
    };
    let first = verify_all(&subset, &opts);
    let second = verify_all(&subset, &opts);
    assert_eq!(
        report::to_json_stable(&first),
        report::to_json_stable(&second)
    );
    assert!(first.iter().all(|r| r.status == Status::Pass));
    println!("criterion 10 (sentinel fails at the perturbed exponent; reports are byte-deterministic): PASS");
}
