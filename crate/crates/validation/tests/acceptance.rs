//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so every criterion is reported
//! even when an earlier one fails. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pivotlab_validation::{random_set, random_sorted_set, rel, rng, to_exact, to_exact_integers};
use rand::Rng;

use pivotlab::oracle::{
    decade_schedule, expand_multiplicities, fit_expanded, verify_convergence, verify_pivot_invariance, Verdict,
};
use pivotlab::pseudopivot::{conjecture_range_check, iterate, Termination};
use pivotlab::region::{four_point_region_sweep, hull_bound_check, three_point_line_check, SIGN_TOL};
use pivotlab::{
    fit_weighted_line, parse_rational, pivot_point, transform_t, Label, Multiplicities, PointSet, PseudopivotStateQ,
    Rational, Scalar,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn pivot_invariance() -> Outcome {
    let mut r = rng(1);
    let (mut checked, mut skipped, mut failed) = (0, 0, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = r.gen_range(2..=8);
        let s = random_set(&mut r, n);
        let label = Label(r.gen_range(1..=n));
        let rep = verify_pivot_invariance(&s, label, 50, 1e-9).expect("valid set");
        match rep.verdict {
            Verdict::Pass => checked += 1,
            Verdict::Fail => failed += 1,
            Verdict::NotApplicable => skipped += 1,
        }
        if rep.scale > 0.0 {
            worst = worst.max(rep.max_distance / rep.scale);
        }
    }
    Outcome {
        passed: failed == 0,
        detail: format!(
            "{checked} pass, {failed} fail, {skipped} at infinity; worst distance/scale {worst:.2e} (tol 1e-9)"
        ),
    }
}

fn oracle_equivalence() -> Outcome {
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    let mut failed = 0;
    for _ in 0..1000 {
        let n = r.gen_range(2..=8);
        let s = random_set(&mut r, n);
        let delta: Vec<u64> = (0..n).map(|_| r.gen_range(1..=20)).collect();
        let d = Multiplicities::new(delta).expect("positive");
        let fast = fit_weighted_line(&s, &d).expect("fit");
        let (scaled, factor) = to_exact_integers(&s);
        let exact = fit_expanded(&expand_multiplicities(&scaled, &d).expect("shape")).expect("fit");
        let intercept = exact.intercept / factor;
        let e = rel(fast.slope, exact.slope.to_f64_lossy()).max(rel(fast.intercept, intercept.to_f64_lossy()));
        worst = worst.max(e);
        if e > 1e-12 {
            failed += 1;
        }
    }
    Outcome {
        passed: failed == 0,
        detail: format!("{failed}/1000 above 1e-12; worst relative error {worst:.2e}"),
    }
}

fn convergence_limit() -> Outcome {
    let mut r = rng(3);
    let (mut failed, mut rate_failed) = (0, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = r.gen_range(3..=8);
        let s = random_set(&mut r, n);
        let rl = r.gen_range(1..=n);
        let il = loop {
            let i = r.gen_range(1..=n);
            if i != rl {
                break i;
            }
        };
        let rep = verify_convergence(&s, Label(rl), Label(il), &decade_schedule()).expect("valid");
        if !rep.limit_ok {
            failed += 1;
        }
        if !rep.rate_ok {
            rate_failed += 1;
        }
        if let Some(d) = rep.final_distance() {
            worst = worst.max(d / rep.scale);
        }
    }
    Outcome {
        passed: failed == 0,
        detail: format!(
            "{failed}/100 farther than 1e-5*scale at k=1e6 (worst {worst:.2e}); {rate_failed}/100 off the C/k envelope"
        ),
    }
}

fn region_sweep() -> Outcome {
    let mut r = rng(4);
    let mut sets = vec![PointSet::from_pairs([(0.0, 0.0), (1.0, 3.0), (2.0, 1.0), (3.0, 2.0)]).unwrap()];
    sets.extend((0..20).map(|_| random_sorted_set(&mut r, 4)));
    let (mut violations, mut records, mut at_inf) = (0, 0, 0);
    for s in &sets {
        let rep = four_point_region_sweep(s, 12, SIGN_TOL).expect("sweep");
        violations += rep.violation_count();
        records += rep.records.len();
        at_inf += s.labels().map(|l| rep.at_infinity(l)).sum::<usize>();
    }
    Outcome {
        passed: violations == 0 && records == sets.len() * 28_561 * 4,
        detail: format!(
            "{} sets, {records} records, {at_inf} at infinity, {violations} violations",
            sets.len()
        ),
    }
}

fn three_point() -> Outcome {
    let mut r = rng(5);
    let (mut violations, mut records) = (0, 0);
    for _ in 0..100 {
        let s = random_sorted_set(&mut r, 3);
        let rep = three_point_line_check(&s, 5, SIGN_TOL).expect("check");
        violations += rep.violation_count();
        records += rep.records.len();
    }
    Outcome {
        passed: violations == 0,
        detail: format!("{records} records, {violations} violations"),
    }
}

fn hull_bound() -> Outcome {
    let mut r = rng(6);
    let (mut violations, mut records) = (0, 0);
    for _ in 0..100 {
        let n = r.gen_range(4..=7);
        let s = random_set(&mut r, n);
        let rep = hull_bound_check(&s, 3, SIGN_TOL).expect("check");
        violations += rep.violation_count();
        records += rep.records.len();
    }
    Outcome {
        passed: violations == 0,
        detail: format!("{records} records, {violations} violations"),
    }
}

fn demo_triple() -> PseudopivotStateQ {
    let v = ["-1", "0.01", "1"].map(|x| parse_rational(x).unwrap());
    let [a, b, c] = v;
    PseudopivotStateQ::new(a, b, c)
}

fn pseudopivot_reproduction() -> Outcome {
    let t = iterate(&demo_triple(), 8);
    let q = |s: &str| parse_rational(s).unwrap();
    let step1 = [q("2.0101") / q("3.01"), q("-100"), q("-1.9901") / q("2.99")];
    let step_ok = t.states.get(1).is_some_and(|s| s.values == step1);
    let original_max = t.states[0].max_label();
    let maxima: String = t.states[1..].iter().map(|s| s.max_label().symbol()).collect();
    let regain_ok = t.len() == 9
        && (1..=7).all(|n| t.states[n].max_label() != original_max)
        && t.states[8].max_label() == original_max;
    Outcome {
        passed: step_ok && regain_ok,
        detail: format!("step 1 exact: {step_ok}; max label for n=1..8: {maxima} (original max {original_max})"),
    }
}

fn conjecture() -> Outcome {
    let demo = conjecture_range_check(&demo_triple(), 15);
    let demo_ok = demo.holds_up_to >= 15 && demo.first_violation.is_none();
    let mut r = rng(8);
    let (mut violations, mut steps, mut diverged) = (Vec::new(), 0, 0);
    for i in 0..50 {
        let mut v = || Rational::new(r.gen_range(-200i64..=200).into(), r.gen_range(1i64..=50).into());
        let s = PseudopivotStateQ::new(v(), v(), v());
        let rep = conjecture_range_check(&s, 10);
        steps += rep.holds_up_to;
        if let Some(step) = rep.first_violation {
            violations.push(format!("triple {i} step {step}"));
        }
        if matches!(rep.termination, Termination::Diverged { .. }) {
            diverged += 1;
        }
    }
    Outcome {
        passed: demo_ok && violations.is_empty(),
        detail: format!(
            "demo grows for {} steps ({:?}); random: {steps} growing steps, {diverged} diverged, violations {violations:?}",
            demo.holds_up_to, demo.termination
        ),
    }
}

/// Product `T(pivot abscissa) · T(0)` for a set already centred on `S_1`.
fn inversion_product<T: Scalar>(s: &PointSet<T>) -> Option<T> {
    let p = s.points();
    let (c2, c3) = (p[1].x.clone(), p[2].x.clone());
    let pivot = pivot_point(s, Label(1)).ok()?.finite()?.clone();
    let t_pivot = transform_t(&pivot.x, &c2, &c3).ok()?;
    let t_anchor = transform_t(&T::zero(), &c2, &c3).ok()?;
    Some(t_pivot * t_anchor)
}

fn negative_inversion() -> Outcome {
    let mut r = rng(9);
    let minus_one = -Rational::from_integer(1.into());
    let (mut tested, mut exact_failures, mut float_worst) = (0, 0, 0.0f64);
    while tested < 1000 {
        let s = random_set(&mut r, 3);
        let o = s.points()[0].clone();
        let centred = s.translate(&-o.x, &-o.y);
        // denominators of T and of the pivot must be nonzero
        let Some(exact) = inversion_product(&to_exact(&centred)) else {
            continue;
        };
        tested += 1;
        if exact != minus_one {
            exact_failures += 1;
        }
        if let Some(f) = inversion_product(&centred) {
            float_worst = float_worst.max((f + 1.0).abs());
        }
    }
    Outcome {
        passed: exact_failures == 0,
        detail: format!(
            "{tested} configurations, {exact_failures} exact products differ from -1; f64 worst |product + 1| {float_worst:.2e}"
        ),
    }
}

/// Name, check and time budget.
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("pivot invariance", pivot_invariance, Duration::from_secs(5)),
        ("oracle equivalence", oracle_equivalence, Duration::from_secs(2)),
        (
            "convergence to the repeated point",
            convergence_limit,
            Duration::from_secs(2),
        ),
        ("four-point region sweep", region_sweep, Duration::from_secs(60)),
        ("three-point segment case", three_point, Duration::from_secs(5)),
        ("convex hull bound", hull_bound, Duration::from_secs(30)),
        (
            "pseudopivot reproduction",
            pseudopivot_reproduction,
            Duration::from_secs(1),
        ),
        ("range growth probe", conjecture, Duration::from_secs(30)),
        ("negative inversion", negative_inversion, Duration::from_secs(1)),
    ];
    let mut failures = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.passed && elapsed < budget;
        println!(
            "{} {name}: {} [{:.2}s / {}s]",
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if !ok {
            failures.push(name);
        }
    }
    if failures.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} failing: {}", failures.len(), failures.join(", "));
        ExitCode::FAILURE
    }
}
