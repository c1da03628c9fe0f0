//! Locale-independent number formatting shared by every CSV writer.

/// Fixed notation with up to 10 decimals (trailing zeros dropped) for
/// moderate magnitudes, otherwise scientific with 10 significant digits.
///
/// The output re-parses to an `f64` that formats back to the same string, so
/// CSV files round-trip exactly.
pub fn format_num(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = v.abs();
    let s = if a == 0.0 || (1e-4..1e5).contains(&a) {
        trim_fraction(&format!("{v:.10}"))
    } else {
        let s = format!("{v:.9e}");
        let (mantissa, exp) = s.split_once('e').expect("scientific format has an exponent");
        format!("{}e{exp}", trim_fraction(mantissa))
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Parses a number written by [`format_num`].
pub fn parse_num(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok()
}

/// Value after one format/parse cycle.
pub fn quantize(v: f64) -> f64 {
    parse_num(&format_num(v)).expect("formatted numbers parse")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(format_num(5.0 / 3.0), "1.6666666667");
        assert_eq!(format_num(1.0 / 3.0), "0.3333333333");
        assert_eq!(format_num(1.5), "1.5");
        assert_eq!(format_num(-100.0), "-100");
        assert_eq!(format_num(0.0), "0");
        assert_eq!(format_num(-0.0), "0");
        assert_eq!(format_num(-1e-12), "-1e-12");
        assert_eq!(format_num(123456.0), "1.23456e5");
        assert_eq!(format_num(1.0 / 30000.0), "3.333333333e-5");
        assert_eq!(format_num(f64::INFINITY), "inf");
    }

    proptest! {
        #[test]
        fn format_is_stable(v in prop::num::f64::NORMAL | prop::num::f64::ZERO) {
            let s = format_num(v);
            prop_assert_eq!(format_num(parse_num(&s).unwrap()), s);
        }

        #[test]
        fn moderate_values_stay_close(v in -1e5f64..1e5) {
            prop_assert!((quantize(v) - v).abs() <= 5e-11 + 1e-9 * v.abs());
        }
    }
}
