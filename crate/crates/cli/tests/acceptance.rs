//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use homore_core::coefficients::rational;
use homore_core::deformation::DEFAULT_ORDER;
use homore_core::{
    alpha_t, associator, bracket, certify, certify_weak_unit, check_deformation, eval_str, extend_alpha,
    hom_associator, monomial_grid, ore_mul, parse, pi, AlgebraPreset, BasePoly, DeformationCheck, DeformedStructure,
    EvalConfig, Identity, OrePoly, ParamScalar, PresetName, ProductHandle, ProductMode, Rational,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

const PRESETS: [PresetName; 2] = [PresetName::QuantumPlane, PresetName::Enveloping];

fn preset(name: PresetName) -> AlgebraPreset {
    AlgebraPreset::symbolic(name)
}

fn handle(name: PresetName, mode: ProductMode) -> ProductHandle {
    ProductHandle::new(preset(name), mode)
}

fn q() -> ParamScalar {
    ParamScalar::q()
}

fn k() -> ParamScalar {
    ParamScalar::k()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn basis_grid(bound: u32) -> Vec<OrePoly> {
    monomial_grid(bound).into_iter().map(OrePoly::basis).collect()
}

fn c1_quantum_plane_associator() -> Outcome {
    let h = handle(PresetName::QuantumPlane, ProductMode::Star);
    let got = associator(&OrePoly::x(), &OrePoly::y(), &OrePoly::y(), &h);
    let coeff = (k() - ParamScalar::one()) * k().pow(3) * q().pow(2);
    let expected = OrePoly::monomial(coeff, 2, 1);
    ensure(got == expected, || format!("got {got}, expected {expected}"))?;
    Ok(got.to_string())
}

fn c2_enveloping_associator() -> Outcome {
    let h = handle(PresetName::Enveloping, ProductMode::Star);
    let got = associator(&OrePoly::x(), &OrePoly::y(), &OrePoly::y(), &h);
    let coeff = (k() - ParamScalar::one()) * k().pow(3);
    let y2_x_plus_2 = OrePoly::monomial(ParamScalar::one(), 2, 1) + OrePoly::monomial(ParamScalar::from_int(2), 2, 0);
    let expected = y2_x_plus_2.scale(&coeff);
    ensure(got == expected, || format!("got {got}, expected {expected}"))?;
    Ok(got.to_string())
}

fn c3_commutation_relations() -> Outcome {
    let (x, y) = (OrePoly::x(), OrePoly::y());
    let qp = preset(PresetName::QuantumPlane);
    let env = preset(PresetName::Enveloping);

    let rel = ore_mul(&x, &y, &qp) - ore_mul(&y, &x, &qp).scale(&q());
    ensure(rel.is_zero(), || format!("quantum plane x.y - q y.x = {rel}"))?;
    let rel = ore_mul(&x, &y, &env) - ore_mul(&y, &x, &env) - y.clone();
    ensure(rel.is_zero(), || format!("enveloping x.y - y.x - y = {rel}"))?;
    let h = handle(PresetName::Enveloping, ProductMode::Star);
    let rel = bracket(&x, &y, &h) - y.scale(&k());
    ensure(rel.is_zero(), || format!("enveloping x*y - y*x - k*y = {rel}"))?;

    // The same relations through the expression front end.
    for (name, mode, src) in [
        (PresetName::QuantumPlane, ProductMode::Assoc, "x*y - q*y*x"),
        (PresetName::Enveloping, ProductMode::Assoc, "x*y - y*x - y"),
        (PresetName::Enveloping, ProductMode::Star, "x*y - y*x - k*y"),
    ] {
        let v = eval_str(src, &EvalConfig::symbolic(name, mode)).map_err(|e| e.to_string())?;
        ensure(v.value.is_zero(), || format!("{src} in {name} {mode} = {}", v.value))?;
    }
    Ok("x.y = q y.x, x.y - y.x = y, x*y - y*x = k y".into())
}

fn c4_hom_assoc() -> Outcome {
    let mut notes = Vec::new();
    for name in PRESETS {
        let report = certify(Identity::HomAssoc, &handle(name, ProductMode::Star), 3);
        ensure(report.passed, || report.to_string())?;
        notes.push(format!("{name}: {} triples", monomial_grid(3).len().pow(3)));
    }
    Ok(notes.join(", "))
}

fn c5_hom_jacobi() -> Outcome {
    for name in PRESETS {
        let report = certify(Identity::HomJacobi, &handle(name, ProductMode::Star), 2);
        ensure(report.passed, || report.to_string())?;
    }
    Ok("both presets, degree <= 2".into())
}

fn c6_associative_iff_k_one() -> Outcome {
    let one = Rational::from_integer(1.into());
    let grid = basis_grid(3);
    let mut coefficients = 0usize;
    for name in PRESETS {
        let h = handle(name, ProductMode::Star);
        for a in &grid {
            for b in &grid {
                for c in &grid {
                    let assoc = associator(a, b, c, &h);
                    for (d, coeff) in assoc.terms() {
                        coefficients += 1;
                        let at_one = coeff.specialize(None, Some(&one)).map_err(|e| e.to_string())?;
                        ensure(at_one.is_zero(), || {
                            format!("({a}, {b}, {c}) in {name}: coefficient {coeff} of {d} is {at_one} at k = 1")
                        })?;
                    }
                }
            }
        }
    }
    let h = handle(PresetName::QuantumPlane, ProductMode::Star);
    let witness = associator(&OrePoly::x(), &OrePoly::y(), &OrePoly::y(), &h).coeff(2, 1);
    ensure(!witness.is_zero(), || "the (x, y, y) coefficient vanishes".into())?;
    let at_two = witness
        .evaluate(&rational(1, 1), &rational(2, 1), &rational(0, 1))
        .map_err(|e| e.to_string())?;
    ensure(at_two == rational(8, 1), || {
        format!("(x, y, y) coefficient at q = 1, k = 2 is {at_two}")
    })?;
    Ok(format!(
        "{coefficients} coefficients vanish at k = 1; (x, y, y) coefficient {witness}"
    ))
}

fn c7_weak_unit() -> Outcome {
    for name in PRESETS {
        let h = handle(name, ProductMode::Star);
        let report = certify_weak_unit(&OrePoly::one(), &h, 4);
        ensure(report.passed, || report.to_string())?;
        for b in basis_grid(4) {
            let alpha_b = extend_alpha(h.preset(), &b);
            let (left, right) = (h.mul(&OrePoly::one(), &b), h.mul(&b, &OrePoly::one()));
            ensure(left == alpha_b && right == alpha_b, || {
                format!("{name}: 1*{b} = {left}, {b}*1 = {right}, alpha = {alpha_b}")
            })?;
        }
    }
    Ok("e = 1, both presets, degree <= 4".into())
}

/// sigma and delta written out directly on coefficients of `y^j`.
fn oracle_sigma(name: PresetName, p: &BasePoly) -> BasePoly {
    match name {
        PresetName::QuantumPlane => {
            BasePoly::from_terms(p.terms().map(|(j, c)| (j, c * &ParamScalar::monomial(j as i32, 0, 0))))
        }
        PresetName::Enveloping => p.clone(),
    }
}

fn oracle_delta(name: PresetName, p: &BasePoly) -> BasePoly {
    match name {
        PresetName::QuantumPlane => BasePoly::zero(),
        PresetName::Enveloping => {
            BasePoly::from_terms(p.terms().map(|(j, c)| (j, c * &ParamScalar::from_int(j as i64))))
        }
    }
}

/// Sum over all words in sigma and delta of length `m` with exactly `i`
/// sigmas, each word applied right to left.
fn oracle_pi(name: PresetName, i: u32, m: u32, b: &BasePoly) -> BasePoly {
    let mut total = BasePoly::zero();
    for word in 0u32..(1 << m) {
        if word.count_ones() != i {
            continue;
        }
        let mut v = b.clone();
        for pos in 0..m {
            v = if word & (1 << pos) != 0 {
                oracle_sigma(name, &v)
            } else {
                oracle_delta(name, &v)
            };
        }
        total = &total + &v;
    }
    total
}

fn c8_pi_oracle() -> Outcome {
    let mut compared = 0;
    for name in PRESETS {
        let p = preset(name);
        for m in 0..=6 {
            for i in 0..=m {
                for j in 0..=4 {
                    let b = BasePoly::y_pow(j);
                    let got = pi(i as i64, m, &p, &b);
                    let want = oracle_pi(name, i, m, &b);
                    ensure(got == want, || {
                        format!("{name}: pi_{i}^{m}(y^{j}) = {got}, words give {want}")
                    })?;
                    compared += 1;
                }
            }
        }
        for j in 0..=4 {
            let b = BasePoly::y_pow(j);
            let s = |v: &BasePoly| oracle_sigma(name, v);
            let d = |v: &BasePoly| oracle_delta(name, v);
            let literal = &(&s(&s(&d(&b))) + &s(&d(&s(&b)))) + &d(&s(&s(&b)));
            let got = pi(2, 3, &p, &b);
            ensure(got == literal, || {
                format!("{name}: pi_2^3(y^{j}) = {got}, literal sum {literal}")
            })?;
        }
    }
    Ok(format!("{compared} values of pi_i^m(y^j) plus pi_2^3"))
}

fn c9_bridge() -> Outcome {
    for name in PRESETS {
        for order in 0..=DEFAULT_ORDER {
            let report =
                check_deformation(&preset(name), DeformationCheck::Bridge, 3, order).map_err(|e| e.to_string())?;
            ensure(report.passed, || report.to_string())?;
        }
    }
    let y2 = OrePoly::monomial(ParamScalar::one(), 2, 0);
    let series = alpha_t(&y2, DEFAULT_ORDER).map_err(|e| e.to_string())?;
    for i in 0..=DEFAULT_ORDER {
        let binom = [1, 2, 1].get(i as usize).copied().unwrap_or(0);
        let want = y2.scale(&ParamScalar::from_int(binom));
        ensure(series.layer(i) == want, || {
            format!("t^{i} layer of alpha_t(y^2) is {}", series.layer(i))
        })?;
    }
    ensure(series.to_string() == "y^2 + 2*y^2*t + y^2*t^2", || {
        format!("alpha_t(y^2) = {series}")
    })?;
    Ok(format!(
        "degree <= 3, orders 0..={DEFAULT_ORDER}; alpha_t(y^2) = {series}"
    ))
}

fn c10_deformed_structures() -> Outcome {
    for name in PRESETS {
        for which in [DeformationCheck::HomAssocDeform, DeformationCheck::HomLieDeform] {
            let report = check_deformation(&preset(name), which, 2, DEFAULT_ORDER).map_err(|e| e.to_string())?;
            ensure(report.passed, || report.to_string())?;
        }
        let d = DeformedStructure::new(&preset(name), DEFAULT_ORDER).map_err(|e| e.to_string())?;
        let base = d.base();
        let grid = basis_grid(2);
        for a in &grid {
            for b in &grid {
                let (la, lb) = (d.lift(a).unwrap(), d.lift(b).unwrap());
                let product = d.product_t(&la, &lb).map_err(|e| e.to_string())?.layer(0);
                ensure(product == ore_mul(a, b, base), || {
                    format!("{name}: t^0 of {a} ._t {b} is {product}")
                })?;
                let br = d.bracket_t(&la, &lb).map_err(|e| e.to_string())?.layer(0);
                let commutator = ore_mul(a, b, base) - ore_mul(b, a, base);
                ensure(br == commutator, || format!("{name}: t^0 of [{a}, {b}]_t is {br}"))?;
            }
        }
    }
    // Layer 0 of the enveloping bracket is the Lie bracket [x, y] = y.
    let d = DeformedStructure::new(&preset(PresetName::Enveloping), DEFAULT_ORDER).map_err(|e| e.to_string())?;
    let (x, y) = (d.lift(&OrePoly::x()).unwrap(), d.lift(&OrePoly::y()).unwrap());
    let xy = d.bracket_t(&x, &y).map_err(|e| e.to_string())?;
    ensure(xy.layer(0) == OrePoly::y(), || format!("[x, y]_t = {xy}"))?;
    Ok(format!(
        "degree <= 2, order {DEFAULT_ORDER}; enveloping [x, y]_t = {xy}"
    ))
}

fn small_scalar() -> impl Strategy<Value = ParamScalar> {
    prop::collection::vec(((-2i32..=2), (0u32..=2), (-4i64..=4), (1i64..=3)), 0..3).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(eq, ek, n, d)| ParamScalar::monomial(eq, ek, 0).scale(&rational(n, d)))
            .fold(ParamScalar::zero(), |acc, s| acc + s)
    })
}

fn small_poly() -> impl Strategy<Value = OrePoly> {
    prop::collection::vec(((0u32..=2), (0u32..=2), small_scalar()), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(m, n, c)| OrePoly::monomial(c, m, n))
            .fold(OrePoly::zero(), |acc, p| acc + p)
    })
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn c11_properties() -> Outcome {
    const CASES: u32 = 1000;
    for name in PRESETS {
        let h = handle(name, ProductMode::Star);
        let strategy = (small_poly(), small_poly(), small_poly(), small_scalar(), small_scalar());
        runner(CASES)
            .run(&strategy, |(a, b, c, s, u)| {
                let combo = a.scale(&s) + b.scale(&u);
                let left = bracket(&combo, &c, &h);
                prop_assert_eq!(left, bracket(&a, &c, &h).scale(&s) + bracket(&b, &c, &h).scale(&u));
                let right = bracket(&c, &combo, &h);
                prop_assert_eq!(right, bracket(&c, &a, &h).scale(&s) + bracket(&c, &b, &h).scale(&u));
                prop_assert!(bracket(&a, &a, &h).is_zero());
                prop_assert!((bracket(&a, &b, &h) + bracket(&b, &a, &h)).is_zero());
                Ok(())
            })
            .map_err(|e| format!("{name} bracket: {e}"))?;

        runner(CASES / 4)
            .run(&(small_poly(), small_poly()), |(a, b)| {
                let p = h.preset();
                prop_assert_eq!(
                    extend_alpha(p, &ore_mul(&a, &b, p)),
                    ore_mul(&extend_alpha(p, &a), &extend_alpha(p, &b), p)
                );
                prop_assert_eq!(h.alpha(&h.mul(&a, &b)), h.mul(&h.alpha(&a), &h.alpha(&b)));
                Ok(())
            })
            .map_err(|e| format!("{name} alpha multiplicativity: {e}"))?;

        let cfg = EvalConfig::symbolic(name, ProductMode::Assoc);
        runner(CASES)
            .run(&small_poly(), |a| {
                let text = a.to_string();
                let back = eval_str(&text, &cfg).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
                prop_assert_eq!(&back.value, &a, "rendered as {}", text);
                let expr = parse(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
                prop_assert_eq!(parse(&expr.to_string()).ok(), Some(expr));
                Ok(())
            })
            .map_err(|e| format!("{name} round trip: {e}"))?;
    }
    // hom-associator of random elements, as a cross-check on the grid certificate
    let h = handle(PresetName::Enveloping, ProductMode::Star);
    runner(CASES / 10)
        .run(&(small_poly(), small_poly(), small_poly()), |(a, b, c)| {
            prop_assert!(hom_associator(&a, &b, &c, &h).is_zero());
            Ok(())
        })
        .map_err(|e| format!("hom-associator: {e}"))?;
    Ok(format!("{CASES} bracket instances per preset"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "quantum-plane associator", c1_quantum_plane_associator),
        (2, "enveloping associator", c2_enveloping_associator),
        (3, "commutation relations", c3_commutation_relations),
        (4, "hom-associativity, degree <= 3", c4_hom_assoc),
        (5, "hom-Jacobi, degree <= 2", c5_hom_jacobi),
        (6, "associative iff k = 1", c6_associative_iff_k_one),
        (7, "weak unit", c7_weak_unit),
        (8, "pi against word enumeration", c8_pi_oracle),
        (9, "deformation bridge", c9_bridge),
        (10, "deformed hom-structures", c10_deformed_structures),
        (11, "property suites", c11_properties),
    ];
    let mut failures = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {title} ({elapsed:.2}s): {detail}"),
            Err(why) => {
                failures += 1;
                println!("criterion {id:>2} FAIL  {title} ({elapsed:.2}s): {why}");
            }
        }
    }
    if failures == 0 {
        println!("acceptance: all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of 11 criteria failed");
        ExitCode::FAILURE
    }
}
