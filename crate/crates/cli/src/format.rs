//! Fixed-precision number formatting shared by every text output.

/// Formats `v` like C's `%.12g`: 12 significant digits, trailing zeros
/// dropped, exponent form outside `1e-4 ≤ |v| < 1e12`.
pub fn sig12(v: f64) -> String {
    sig(v, 12)
}

pub fn sig(v: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if v == 0.0 {
        return if v.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig12(0.25), "0.25");
        assert_eq!(sig12(4.0 / 13.0), "0.307692307692");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(std::f64::consts::FRAC_PI_2), "1.57079632679");
        assert_eq!(sig12(6.123233995736766e-17), "6.12323399574e-17");
        assert_eq!(sig12(-2.5e-5), "-2.5e-05");
        assert_eq!(sig12(1.0e-4), "0.0001");
        assert_eq!(sig12(123456789012.0), "123456789012");
        assert_eq!(sig12(1234567890123.0), "1.23456789012e+12");
        assert_eq!(sig12(0.999999999999999), "1");
        assert_eq!(sig12(-1.0 / 3.0), "-0.333333333333");
    }
}
