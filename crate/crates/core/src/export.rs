//! CSV export of solution profiles.
//!
//! Header `eta,f,df,d2f`, one row per node, numbers in `%.12g` style, `\n`
//! line endings. Output depends only on the profile, so identical solves give
//! byte-identical files.

use std::io::{self, Write};

use crate::transform::SolutionProfile;

pub const CSV_HEADER: &str = "eta,f,df,d2f";

/// Significant digits written per value.
pub const CSV_DIGITS: usize = 12;

pub fn write_profile_csv<W: Write>(profile: &SolutionProfile, mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for (eta, y) in profile.iter() {
        writeln!(
            out,
            "{},{},{},{}",
            format_significant(eta, CSV_DIGITS),
            format_significant(y[0], CSV_DIGITS),
            format_significant(y[1], CSV_DIGITS),
            format_significant(y[2], CSV_DIGITS),
        )?;
    }
    out.flush()
}

pub fn profile_csv_string(profile: &SolutionProfile) -> String {
    let mut buf = Vec::new();
    write_profile_csv(profile, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Formats `x` like C's `%.{digits}g`: fixed notation for decimal exponents
/// in `[-5, digits)`, scientific otherwise, trailing zeros removed.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits > 0);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // Round once in scientific form so the exponent accounts for carries
    // such as 9.99…→10.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::Frame;

    #[test]
    fn significant_formatting_matches_printf() {
        // Expected strings from C printf("%.12g").
        let cases = [
            (0.0, "0"),
            (-0.0, "0"),
            (1.0, "1"),
            (0.001, "0.001"),
            (10.0, "10"),
            (0.332057336215196, "0.332057336215"),
            (2.08540917643790, "2.08540917644"),
            (-0.485806591830256, "-0.48580659183"),
            (1.0e-5, "1e-05"),
            (1.23456789012345e-5, "1.23456789012e-05"),
            (0.0001, "0.0001"),
            (123456789012.4, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (9.9999999999999, "10"),
            (1.9055567124764124e-18, "1.90555671248e-18"),
        ];
        for (x, expected) in cases {
            assert_eq!(format_significant(x, 12), expected, "x = {x:e}");
        }
    }

    #[test]
    fn csv_layout() {
        let profile = SolutionProfile::from_nodes(
            Frame::Starred,
            vec![
                (0.0, [0.0, 0.0, 1.0].into()),
                (0.5, [0.125, 0.5, 0.75].into()),
            ],
        )
        .unwrap();
        assert_eq!(
            profile_csv_string(&profile),
            "eta,f,df,d2f\n0,0,0,1\n0.5,0.125,0.5,0.75\n"
        );
    }
}
