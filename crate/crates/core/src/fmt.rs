//! Number formatting shared by the text writers.

/// Formats `x` with 17 significant digits, like C's `%.17g`.
///
/// Uses fixed notation for decimal exponents in `-5..17` and scientific
/// notation otherwise; trailing zeros in the fraction are dropped.  Every
/// finite `f64` round-trips through this representation.
pub fn g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_fraction(format!("{:.*}", decimals, x))
    } else {
        let m = trim_fraction(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", m, sign, exp.abs())
    }
}

fn trim_fraction(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_like_printf_g17() {
        assert_eq!(g17(0.0), "0");
        assert_eq!(g17(1.0), "1");
        assert_eq!(g17(-2.5), "-2.5");
        assert_eq!(g17(0.1), "0.10000000000000001");
        assert_eq!(g17(std::f64::consts::SQRT_2), "1.4142135623730951");
        assert_eq!(g17(1e-7), "9.9999999999999995e-08");
        assert_eq!(g17(1e20), "1e+20");
        assert_eq!(g17(123456.0), "123456");
    }

    #[test]
    fn round_trips() {
        for &x in &[
            0.1,
            1.0 / 3.0,
            6.123233995736766e-17,
            1e300,
            -4.9e-324,
            12345.678,
        ] {
            assert_eq!(g17(x).parse::<f64>().unwrap(), x);
        }
    }
}
