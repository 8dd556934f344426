//! Number formatting for terminal output.

use psiset_core::a4::GInterval;
use psiset_core::Interval;

/// `%.17g` with trailing zeros removed.
pub fn g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-4..17).contains(&exp) {
        let m = trim(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    trim(&format!("{:.*}", decimals, x)).to_string()
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn interval(x: &Interval) -> String {
    format!("[{}, {}]", g17(x.lo()), g17(x.hi()))
}

/// Proper pairs print as intervals, improper ones as `(a, b)`.
pub fn ginterval(x: &GInterval) -> String {
    if x.is_proper() {
        format!("[{}, {}]", g17(x.a), g17(x.b))
    } else {
        format!("({}, {})", g17(x.a), g17(x.b))
    }
}
