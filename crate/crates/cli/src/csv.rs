//! CSV output with locale-independent fixed notation.

use std::fmt::Write as _;
use std::path::Path;

use crate::config::CliError;

/// Fixed notation with 10 significant digits.
pub fn fmt_sig10(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let mut decimals = (9 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit (9.9999999999 -> 10.000000000)
    let digits = s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').count();
    if digits > 10 && decimals > 0 {
        decimals -= 1;
        return format!("{x:.decimals$}");
    }
    s
}

/// Renders a header line and rows of numbers.
pub fn render(header: &str, rows: &[Vec<f64>]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(header);
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(|&v| fmt_sig10(v)).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    out
}

pub fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(fmt_sig10(0.8535533905932737), "0.8535533906");
        assert_eq!(fmt_sig10(1.0), "1.000000000");
        assert_eq!(fmt_sig10(0.0), "0.000000000");
        assert_eq!(fmt_sig10(-0.5), "-0.5000000000");
        assert_eq!(fmt_sig10(std::f64::consts::FRAC_PI_2), "1.570796327");
        assert_eq!(fmt_sig10(1.234e-5), "0.00001234000000");
        assert_eq!(fmt_sig10(9.99999999996), "10.00000000");
        assert_eq!(fmt_sig10(123456.0), "123456.0000");
    }

    #[test]
    fn renders_header_and_rows() {
        let s = render("a,b", &[vec![1.0, 0.5], vec![0.25, 2.0]]);
        assert_eq!(s, "a,b\n1.000000000,0.5000000000\n0.2500000000,2.000000000\n");
    }
}
