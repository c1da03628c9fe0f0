//! Iterated pseudopivots of collinear data.
//!
//! When every point lies on one horizontal line the pivot formulas still
//! produce abscissae. For a triple `{a, b, c}` the map is
//!
//! ```text
//! a ↦ (b² + c² − a(b + c)) / (b + c − 2a)
//! ```
//!
//! and cyclically for `b` and `c`. The map is rational, so rational input
//! stays rational and [`BigRational`] iteration is exact; that mode is the
//! reference for every claim about the dynamics. A value equal to the mean of
//! the other two sends its image to infinity (the bifurcation threshold).

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative tolerance for threshold and vanishing-denominator tests in
/// floating mode.
pub const THRESHOLD_TOL: f64 = 1e-12;

/// Exact iteration stops once a numerator or denominator exceeds this size.
pub const MAX_RATIONAL_BITS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TripleLabel {
    A,
    B,
    C,
}

impl TripleLabel {
    pub const ALL: [TripleLabel; 3] = [TripleLabel::A, TripleLabel::B, TripleLabel::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            TripleLabel::A => 'a',
            TripleLabel::B => 'b',
            TripleLabel::C => 'c',
        }
    }
}

impl fmt::Display for TripleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Floating,
    Exact,
}

impl Mode {
    pub fn of<T: Scalar>() -> Self {
        if T::EXACT {
            Mode::Exact
        } else {
            Mode::Floating
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Floating => "float",
            Mode::Exact => "exact",
        }
    }
}

/// Labelled triple `(a, b, c)`; labels follow the values through iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudopivotState<T> {
    pub values: [T; 3],
}

impl<T: Scalar> PseudopivotState<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        PseudopivotState { values: [a, b, c] }
    }

    pub fn get(&self, label: TripleLabel) -> &T {
        &self.values[label.index()]
    }

    pub fn mode(&self) -> Mode {
        Mode::of::<T>()
    }

    /// Labels by ascending value; ties keep label order.
    pub fn order(&self) -> [TripleLabel; 3] {
        let mut labels = TripleLabel::ALL;
        labels.sort_by(|x, y| self.get(*x).compare(self.get(*y)).then(x.cmp(y)));
        labels
    }

    pub fn min_label(&self) -> TripleLabel {
        self.order()[0]
    }

    pub fn max_label(&self) -> TripleLabel {
        self.order()[2]
    }

    pub fn range(&self) -> T {
        let [lo, _, hi] = self.order();
        self.get(hi).clone() - self.get(lo).clone()
    }

    pub fn translate(&self, t: &T) -> Self {
        PseudopivotState {
            values: self.values.clone().map(|v| v + t.clone()),
        }
    }

    pub fn scale(&self, f: &T) -> Self {
        PseudopivotState {
            values: self.values.clone().map(|v| v * f.clone()),
        }
    }

    pub fn max_bits(&self) -> u64 {
        self.values.iter().map(Scalar::bit_size).max().unwrap_or(0)
    }

    pub fn to_f64(&self) -> PseudopivotState<f64> {
        PseudopivotState {
            values: self.values.clone().map(|v| v.to_f64_lossy()),
        }
    }
}

impl PseudopivotState<f64> {
    pub fn to_exact(&self) -> Option<PseudopivotState<BigRational>> {
        let [a, b, c] = self.values.map(BigRational::from_float);
        Some(PseudopivotState::new(a?, b?, c?))
    }
}

/// The labels whose pseudopivot went to infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diverged {
    pub labels: Vec<TripleLabel>,
}

pub fn pseudopivot_step<T: Scalar>(s: &PseudopivotState<T>) -> Result<PseudopivotState<T>, Diverged> {
    let images = T::pseudopivot_images(&s.values, THRESHOLD_TOL);
    let diverged: Vec<TripleLabel> = TripleLabel::ALL
        .into_iter()
        .filter(|l| images[l.index()].is_none())
        .collect();
    if !diverged.is_empty() {
        return Err(Diverged { labels: diverged });
    }
    Ok(PseudopivotState {
        values: images.map(|v| v.expect("checked above")),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Termination {
    Completed,
    /// Step `step` (1-based) would have sent `labels` to infinity.
    Diverged {
        step: usize,
        labels: Vec<TripleLabel>,
    },
    /// Step `step` produced a rational wider than [`MAX_RATIONAL_BITS`].
    DigitsExceeded {
        step: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<T> {
    /// `states[0]` is the input.
    pub states: Vec<PseudopivotState<T>>,
    pub orders: Vec<[TripleLabel; 3]>,
    pub ranges: Vec<T>,
    pub termination: Termination,
}

impl<T: Scalar> IterationTrace<T> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn mode(&self) -> Mode {
        Mode::of::<T>()
    }
}

/// Applies [`pseudopivot_step`] up to `n` times.
pub fn iterate<T: Scalar>(s: &PseudopivotState<T>, n: usize) -> IterationTrace<T> {
    iterate_with_limit(s, n, MAX_RATIONAL_BITS)
}

/// [`iterate`] with a custom digit guard.
pub fn iterate_with_limit<T: Scalar>(s: &PseudopivotState<T>, n: usize, max_bits: u64) -> IterationTrace<T> {
    let mut states = vec![s.clone()];
    let mut termination = Termination::Completed;
    for step in 1..=n {
        let current = states.last().expect("trace is never empty");
        match pseudopivot_step(current) {
            Ok(next) if next.max_bits() > max_bits => {
                termination = Termination::DigitsExceeded { step };
                break;
            }
            Ok(next) => states.push(next),
            Err(Diverged { labels }) => {
                termination = Termination::Diverged { step, labels };
                break;
            }
        }
    }
    let orders = states.iter().map(PseudopivotState::order).collect();
    let ranges = states.iter().map(PseudopivotState::range).collect();
    IterationTrace {
        states,
        orders,
        ranges,
        termination,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bifurcation {
    /// Inner value above the mean of the outer two: its image is the next minimum.
    NextMin,
    /// Inner value below that mean: its image is the next maximum.
    NextMax,
    AtThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BifurcationClass {
    pub inner: TripleLabel,
    pub kind: Bifurcation,
}

pub fn classify_bifurcation<T: Scalar>(s: &PseudopivotState<T>) -> Result<BifurcationClass> {
    let [lo, mid, hi] = s.order();
    let (lo_v, mid_v, hi_v) = (s.get(lo).clone(), s.get(mid).clone(), s.get(hi).clone());
    if lo_v == mid_v || mid_v == hi_v {
        return Err(Error::DegenerateState);
    }
    let two = T::one() + T::one();
    // compare 2·inner with lo + hi to stay exact
    let gap = mid_v * two.clone() - (lo_v.clone() + hi_v.clone());
    let kind = if gap.is_zero() || T::is_negligible(&gap, &((hi_v - lo_v) * two), THRESHOLD_TOL) {
        Bifurcation::AtThreshold
    } else if gap.gt_zero() {
        Bifurcation::NextMin
    } else {
        Bifurcation::NextMax
    };
    Ok(BifurcationClass { inner: mid, kind })
}

/// Ascending label order of every state in the trace.
pub fn permutation_sequence<T: Scalar>(t: &IterationTrace<T>) -> Vec<[TripleLabel; 3]> {
    t.orders.clone()
}

/// `"bca"` for `b < c < a`.
pub fn format_order(order: &[TripleLabel; 3]) -> String {
    order.iter().map(|l| l.symbol()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    /// Number of leading steps over which the range strictly grew.
    pub holds_up_to: usize,
    /// First step whose range failed to exceed its predecessor's.
    pub first_violation: Option<usize>,
    pub termination: Termination,
}

/// Checks `range(trace[k+1]) > range(trace[k])` for every step of an
/// `n`-step iteration, stopping early on divergence or digit overflow.
pub fn conjecture_range_check<T: Scalar>(s: &PseudopivotState<T>, n: usize) -> ConjectureReport {
    range_report(&iterate(s, n))
}

fn range_report<T: Scalar>(t: &IterationTrace<T>) -> ConjectureReport {
    let first_violation = t
        .ranges
        .windows(2)
        .position(|w| w[1].compare(&w[0]).is_le())
        .map(|i| i + 1);
    let holds_up_to = first_violation.map_or(t.len() - 1, |v| v - 1);
    ConjectureReport {
        holds_up_to,
        first_violation,
        termination: t.termination.clone(),
    }
}

/// Exact and floating runs of the same rational start.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeComparison {
    pub exact: ConjectureReport,
    pub floating: ConjectureReport,
    /// First step at which the two modes order the labels differently or
    /// disagree on whether the range grew.
    pub first_disagreement: Option<usize>,
}

impl ModeComparison {
    pub fn disagree(&self) -> bool {
        self.first_disagreement.is_some()
    }

    /// The exact result, which wins whenever the modes disagree.
    pub fn authoritative(&self) -> &ConjectureReport {
        &self.exact
    }
}

pub fn compare_modes(s: &PseudopivotState<BigRational>, n: usize) -> ModeComparison {
    let exact = iterate(s, n);
    let floating = iterate(&s.to_f64(), n);
    let common = exact.len().min(floating.len());
    fn grew<T: Scalar>(r: &[T], i: usize) -> bool {
        i > 0 && r[i].compare(&r[i - 1]).is_gt()
    }
    let mut first_disagreement = (0..common)
        .find(|&i| exact.orders[i] != floating.orders[i] || grew(&exact.ranges, i) != grew(&floating.ranges, i));
    if first_disagreement.is_none() && exact.len() != floating.len() {
        first_disagreement = Some(common);
    }
    ModeComparison {
        exact: range_report(&exact),
        floating: range_report(&floating),
        first_disagreement,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{pivot_point, Label, PivotResult, PointSet};
    use crate::scalar::parse_rational;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn qs(a: &str, b: &str, c: &str) -> PseudopivotState<Q> {
        PseudopivotState::new(
            parse_rational(a).unwrap(),
            parse_rational(b).unwrap(),
            parse_rational(c).unwrap(),
        )
    }

    use TripleLabel::{A, B, C};

    #[test]
    fn step_examples() {
        let next = pseudopivot_step(&qs("-1", "0.01", "1")).unwrap();
        assert_eq!(next.values, [q(20101, 30100), q(-100, 1), q(-19901, 29900)]);

        let f = pseudopivot_step(&PseudopivotState::new(-1.0f64, 0.01, 1.0)).unwrap();
        assert!((f.values[0] - 0.667808).abs() < 1e-6);
        assert!((f.values[1] + 100.0).abs() < 1e-9);
        assert!((f.values[2] + 0.665585).abs() < 1e-6);

        let err = pseudopivot_step(&qs("0", "1", "2")).unwrap_err();
        assert_eq!(err.labels, vec![B]);

        let next = pseudopivot_step(&qs("0", "1", "3")).unwrap();
        assert_eq!(next.values, [q(5, 2), q(6, 1), q(2, 5)]);
    }

    #[test]
    fn iterate_examples() {
        let t = iterate(&qs("-1", "0.01", "1"), 6);
        assert_eq!(t.len(), 7);
        assert_eq!(t.termination, Termination::Completed);
        assert!(t.ranges.windows(2).all(|w| w[1] > w[0]));

        let t = iterate(&qs("-1", "0.01", "1"), 8);
        for n in 1..=7 {
            assert_ne!(t.states[n].max_label(), C, "n={n}");
        }
        assert_eq!(t.states[8].max_label(), C);

        let s = qs("3", "-2", "7");
        let t = iterate(&s, 0);
        assert_eq!(t.states, vec![s]);
    }

    #[test]
    fn threshold_start_diverges_immediately() {
        let t = iterate(&qs("0", "1.5", "3"), 5);
        assert_eq!(
            t.termination,
            Termination::Diverged {
                step: 1,
                labels: vec![B]
            }
        );
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn digit_guard_stops_exact_iteration() {
        let t = iterate_with_limit(&qs("-1", "0.01", "1"), 40, 2000);
        assert_eq!(t.termination, Termination::DigitsExceeded { step: 8 });
        assert_eq!(t.len(), 8);
        assert!(t.states.iter().all(|s| s.max_bits() <= 2000));
    }

    #[test]
    fn classify_examples() {
        let c = classify_bifurcation(&qs("0", "2", "3")).unwrap();
        assert_eq!(
            c,
            BifurcationClass {
                inner: B,
                kind: Bifurcation::NextMin
            }
        );
        assert_eq!(pseudopivot_step(&qs("0", "2", "3")).unwrap().min_label(), B);
        assert_eq!(
            pseudopivot_step(&qs("0", "2", "3")).unwrap().values,
            [q(13, 5), q(-3, 1), q(1, 2)]
        );

        let c = classify_bifurcation(&qs("0", "1", "3")).unwrap();
        assert_eq!(c.kind, Bifurcation::NextMax);

        assert_eq!(
            classify_bifurcation(&qs("0", "1.5", "3")).unwrap().kind,
            Bifurcation::AtThreshold
        );
        assert_eq!(
            classify_bifurcation(&PseudopivotState::new(0.0, 1.5, 3.0))
                .unwrap()
                .kind,
            Bifurcation::AtThreshold
        );
        assert_eq!(classify_bifurcation(&qs("1", "1", "3")), Err(Error::DegenerateState));
    }

    #[test]
    fn permutation_examples() {
        let seq = permutation_sequence(&iterate(&qs("0", "1", "3"), 1));
        assert_eq!(seq, vec![[A, B, C], [C, A, B]]);
        let seq = permutation_sequence(&iterate(&qs("0", "2", "3"), 1));
        assert_eq!(seq, vec![[A, B, C], [B, C, A]]);
        assert_eq!(format_order(&seq[1]), "bca");
    }

    #[test]
    fn conjecture_examples() {
        let r = conjecture_range_check(&qs("-1", "0.01", "1"), 6);
        assert_eq!((r.holds_up_to, r.first_violation), (6, None));

        let r = conjecture_range_check(&qs("0", "1.5", "3"), 4);
        assert_eq!((r.holds_up_to, r.first_violation), (0, None));
        assert!(matches!(r.termination, Termination::Diverged { step: 1, .. }));

        let cmp = compare_modes(&qs("0", "1", "3"), 10);
        assert_eq!(cmp.authoritative().holds_up_to, 10);
        assert!(!cmp.disagree(), "{cmp:?}");
    }

    #[test]
    fn flat_range_is_a_violation() {
        let t = IterationTrace {
            states: vec![qs("0", "1", "3"); 2],
            orders: vec![[A, B, C]; 2],
            ranges: vec![q(3, 1), q(3, 1)],
            termination: Termination::Completed,
        };
        let r = range_report(&t);
        assert_eq!((r.holds_up_to, r.first_violation), (0, Some(1)));
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-60i64..=60, 1i64..=12).prop_map(|(n, d)| q(n, d))
    }

    fn triple() -> impl Strategy<Value = PseudopivotState<Q>> {
        (small_q(), small_q(), small_q())
            .prop_filter("distinct", |(a, b, c)| a != b && b != c && a != c)
            .prop_map(|(a, b, c)| PseudopivotState::new(a, b, c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn float_step_tracks_exact(s in triple()) {
            let exact = iterate(&s, 5);
            let float = iterate(&s.to_f64(), 5);
            for (e, f) in exact.states.iter().zip(&float.states) {
                for (ev, fv) in e.values.iter().zip(&f.values) {
                    let ev = ev.to_f64_lossy();
                    prop_assert!((ev - fv).abs() <= 1e-9 * ev.abs().max(1.0), "{ev} vs {fv}");
                }
            }
        }

        #[test]
        fn translation_equivariance(s in triple(), t in small_q()) {
            match (pseudopivot_step(&s), pseudopivot_step(&s.translate(&t))) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.translate(&t), b),
                (Err(a), Err(b)) => prop_assert_eq!(a, b),
                other => prop_assert!(false, "{:?}", other),
            }
        }

        #[test]
        fn scale_equivariance(s in triple(), f in small_q()) {
            prop_assume!(!num_traits::Zero::is_zero(&f));
            match (pseudopivot_step(&s), pseudopivot_step(&s.scale(&f))) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.scale(&f), b),
                (Err(a), Err(b)) => prop_assert_eq!(a, b),
                other => prop_assert!(false, "{:?}", other),
            }
        }

        #[test]
        fn bifurcation_predicts_inner_destination(s in triple()) {
            let class = classify_bifurcation(&s).unwrap();
            let next = pseudopivot_step(&s);
            match class.kind {
                Bifurcation::AtThreshold => prop_assert!(next.is_err()),
                Bifurcation::NextMin => prop_assert_eq!(next.unwrap().min_label(), class.inner),
                Bifurcation::NextMax => prop_assert_eq!(next.unwrap().max_label(), class.inner),
            }
        }

        #[test]
        fn consecutive_orders_differ(s in triple()) {
            let t = iterate(&s, 10);
            for w in permutation_sequence(&t).windows(2) {
                prop_assert_ne!(w[0], w[1]);
            }
        }

        #[test]
        fn matches_pivot_formula_on_a_horizontal_line(s in triple(), y in small_q()) {
            let set = PointSet::from_pairs(s.values.iter().map(|v| (v.clone(), y.clone()))).unwrap();
            let step = pseudopivot_step(&s);
            for l in TripleLabel::ALL {
                let pivot = pivot_point(&set, Label(l.index() + 1)).unwrap();
                match (&step, pivot) {
                    (Ok(next), PivotResult::Finite(p)) => {
                        prop_assert_eq!(&p.x, next.get(l));
                        prop_assert_eq!(&p.y, &y);
                    }
                    (Err(d), PivotResult::AtInfinity) => prop_assert!(d.labels.contains(&l)),
                    (Err(d), PivotResult::Finite(_)) => prop_assert!(!d.labels.contains(&l)),
                    (Ok(_), PivotResult::AtInfinity) => prop_assert!(false, "pivot at infinity but step finite"),
                }
            }
        }
    }
}
