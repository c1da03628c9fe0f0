use pivotlab::oracle::{expand_multiplicities, fit_expanded};
use pivotlab::pseudopivot::{iterate, Termination};
use pivotlab::region::{four_point_region_sweep, three_point_line_check, SIGN_TOL};
use pivotlab::{
    fit_weighted_line, parse_rational, pivot_point, pivot_point_weighted, Label, Multiplicities, PivotResult, PointSet,
    PointSetQ, PseudopivotStateQ, Rational, Scalar,
};

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn three<T: Scalar>() -> PointSet<T> {
    let v = |s: &str| T::parse_literal(s).unwrap();
    PointSet::from_pairs([(v("0"), v("0")), (v("1"), v("1")), (v("2"), v("0"))]).unwrap()
}

fn demo_four() -> PointSetQ {
    PointSet::from_pairs([(q("0"), q("0")), (q("1"), q("3")), (q("2"), q("1")), (q("3"), q("2"))]).unwrap()
}

#[test]
fn same_pivots_in_every_scalar() {
    let exact = pivot_point(&three::<Rational>(), Label(1)).unwrap();
    assert_eq!(
        exact.finite().map(|p| (p.x.clone(), p.y.clone())),
        Some((q("5/3"), q("1/3")))
    );
    let f64p = pivot_point(&three::<f64>(), Label(1))
        .unwrap()
        .finite()
        .unwrap()
        .clone();
    let f32p = pivot_point(&three::<f32>(), Label(1))
        .unwrap()
        .finite()
        .unwrap()
        .clone();
    assert!((f64p.x - 5.0 / 3.0).abs() < 1e-14 && (f64p.y - 1.0 / 3.0).abs() < 1e-14);
    assert!((f32p.x - 5.0 / 3.0).abs() < 1e-5 && (f32p.y - 1.0 / 3.0).abs() < 1e-5);
    assert!(pivot_point(&three::<f32>(), Label(2)).unwrap().is_at_infinity());
}

#[test]
fn repeating_a_point_turns_the_line_about_each_pivot() {
    let s = demo_four();
    for label in s.labels() {
        let p = match pivot_point(&s, label).unwrap() {
            PivotResult::Finite(p) => p,
            PivotResult::AtInfinity => continue,
        };
        for k in 0..6 {
            let d = Multiplicities::repeat_one(4, label, k);
            let line = fit_weighted_line(&s, &d).unwrap();
            assert_eq!(line.eval(&p.x), p.y, "label {label} k {k}");
        }
    }
}

#[test]
fn weighted_fit_matches_repeated_rows() {
    let s = demo_four();
    let d = Multiplicities::new(vec![3, 1, 4, 2]).unwrap();
    let weighted = fit_weighted_line(&s, &d).unwrap();
    let brute = fit_expanded(&expand_multiplicities(&s, &d).unwrap()).unwrap();
    assert_eq!(
        (weighted.slope.clone(), weighted.intercept.clone()),
        (brute.slope.clone(), brute.intercept.clone())
    );
    assert_eq!(weighted.sse, brute.sse);

    let pw = pivot_point_weighted(&s, Label(1), &d).unwrap();
    let extra = Multiplicities::new(vec![13, 1, 4, 2]).unwrap();
    let line = fit_weighted_line(&s, &extra).unwrap();
    let p = pw.finite().unwrap();
    assert_eq!(line.eval(&p.x), p.y);
}

#[test]
fn exact_and_float_sweeps_agree_on_the_demo() {
    let exact = four_point_region_sweep(&demo_four(), 5, SIGN_TOL).unwrap();
    let float = four_point_region_sweep(&demo_four().map_scalar(|v| v.to_f64_lossy()).unwrap(), 5, SIGN_TOL).unwrap();
    assert_eq!(exact.records.len(), float.records.len());
    assert_eq!(exact.violation_count(), 0);
    assert_eq!(float.violation_count(), 0);
    assert_eq!(exact.tally(), float.tally());
}

#[test]
fn middle_pivot_of_three_points_stays_outside_the_segment() {
    let r = three_point_line_check(&three::<Rational>(), 6, SIGN_TOL).unwrap();
    assert_eq!(r.violation_count(), 0);
    assert_eq!(r.records.len(), 3 * 7usize.pow(3));
}

#[test]
fn pseudopivot_first_step_is_exact() {
    let t = iterate(&PseudopivotStateQ::new(q("0"), q("1"), q("3")), 1);
    assert_eq!(t.termination, Termination::Completed);
    assert_eq!(t.states[1].values, [q("5/2"), q("6"), q("2/5")]);
}
