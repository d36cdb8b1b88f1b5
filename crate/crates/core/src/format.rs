//! Fixed-precision rendering of numbers for tables, CSV and command output.

use num_complex::Complex64;

/// `x` with 15 significant digits and trailing zeros trimmed, like C's `%.15g`.
pub fn sig15(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent is always present");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if !(-5..15).contains(&exp) {
        return format!("{}e{exp}", trim(mantissa));
    }
    trim(&format!("{:.*}", (14 - exp) as usize, x)).to_string()
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `a+bi` with both parts at 15 significant digits.
pub fn complex15(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", sig15(z.re), sig15(z.im.abs()))
}
