//! Drawing-angle literals: decimal radians or multiples of π.

use std::f64::consts::PI;

/// Parses `1.0471975511965976`, `pi`, `pi/2`, `2pi/12`, `2*pi/12`, `π/3`,
/// `-pi/4` and similar.  The result is not range-checked.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let s: String = text
        .trim()
        .to_lowercase()
        .replace('π', "pi")
        .replace(' ', "");
    if s.is_empty() {
        return Err("empty angle".into());
    }
    let value = match s.find("pi") {
        None => s
            .parse::<f64>()
            .map_err(|_| format!("invalid angle {text:?}"))?,
        Some(at) => {
            let coef = s[..at].trim_end_matches('*');
            let coef = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c
                    .parse::<f64>()
                    .map_err(|_| format!("invalid coefficient in angle {text:?}"))?,
            };
            let rest = &s[at + 2..];
            let den = if rest.is_empty() {
                1.0
            } else {
                let d = rest
                    .strip_prefix('/')
                    .ok_or_else(|| format!("expected '/k' after pi in angle {text:?}"))?;
                d.parse::<f64>()
                    .map_err(|_| format!("invalid denominator in angle {text:?}"))?
            };
            if den == 0.0 {
                return Err(format!("zero denominator in angle {text:?}"));
            }
            pi_fraction(coef, den)
        }
    };
    if !value.is_finite() {
        return Err(format!("angle {text:?} is not finite"));
    }
    Ok(value)
}

/// `π` minus its nearest double.
const PI_LO: f64 = 1.2246467991473532e-16;

/// `coef·π/den`, carrying the low word of `π` and the rounding errors of the
/// product and quotient, so that `pi/3` equals [`std::f64::consts::FRAC_PI_3`].
fn pi_fraction(coef: f64, den: f64) -> f64 {
    let hi = coef * PI;
    let lo = coef.mul_add(PI, -hi) + coef * PI_LO;
    let q = hi / den;
    let r = (-q).mul_add(den, hi) + lo;
    q + r / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8};

    #[test]
    fn literals() {
        assert_eq!(parse_angle("pi/2"), Ok(FRAC_PI_2));
        assert_eq!(parse_angle("π/3"), Ok(FRAC_PI_3));
        assert_eq!(parse_angle("2pi/12"), Ok(FRAC_PI_6));
        assert_eq!(parse_angle("2*pi/12"), Ok(FRAC_PI_6));
        assert_eq!(parse_angle("PI"), Ok(PI));
        assert_eq!(parse_angle("-pi/4"), Ok(-PI / 4.0));
        assert_eq!(parse_angle("0"), Ok(0.0));
        assert_eq!(parse_angle(" 0.25 "), Ok(0.25));
        assert_eq!(parse_angle("pi/4"), Ok(FRAC_PI_4));
        assert_eq!(parse_angle("pi/6"), Ok(FRAC_PI_6));
        assert_eq!(parse_angle("pi/8"), Ok(FRAC_PI_8));
        assert_eq!(parse_angle("2pi/3"), Ok(2.0943951023931957));
        assert_eq!(parse_angle("9pi/20"), Ok(1.413716694115407));
        assert_eq!(parse_angle("3pi/7"), Ok(1.3463968515384828));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "pie", "pi/0", "pi/x", "x", "nan", "inf", "pi2", "1/2"] {
            assert!(parse_angle(bad).is_err(), "{bad}");
        }
    }
}
