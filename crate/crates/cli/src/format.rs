//! Decimal strings for doubles and the column rules used for the theta error table.
//!
//! Table columns follow the printed table: A and D in scientific notation with
//! two significant figures (D carries an explicit sign), B fixed with three
//! significant figures, C fixed with two decimals.

use certgamma::ExtReal;

/// Shortest decimal string that parses back to the same double.
pub fn num(x: f64) -> String {
    if x == 0.0 || (x.abs() >= 1e-4 && x.abs() < 1e16) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// `mantissa e exponent` with `sig` significant figures, e.g. "4.4e14".
pub fn sci(x: &ExtReal, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let s = x.to_sci_string(sig);
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (s.clone(), 0),
    };
    // normalize "12e0"-style output to one leading digit
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = mant.trim_start_matches('-').find('.').unwrap_or(mant.trim_start_matches('-').len());
    let lead = digits.trim_start_matches('0');
    let zeros = digits.len() - lead.len();
    let exp = exp + point as i64 - 1 - zeros as i64;
    let mut body: String = lead.chars().take(sig).collect();
    while body.len() < sig {
        body.push('0');
    }
    let m = if sig > 1 { format!("{}.{}", &body[..1], &body[1..]) } else { body };
    format!("{}{m}e{exp}", if neg { "-" } else { "" })
}

fn signed(s: String) -> String {
    if s.starts_with('-') || s == "0" {
        s
    } else {
        format!("+{s}")
    }
}

pub fn column_a(x: &ExtReal) -> String {
    sci(x, 2)
}

pub fn column_b(x: &ExtReal) -> String {
    let v = x.to_f64();
    let mag = v.abs().log10().floor() as i32;
    let decimals = (2 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn column_c(x: &ExtReal) -> String {
    format!("{:.2}", x.to_f64())
}

pub fn column_d(x: &ExtReal) -> String {
    signed(sci(x, 2))
}
