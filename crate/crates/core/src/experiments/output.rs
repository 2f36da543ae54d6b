use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const SWEEP_HEADER: &str = "method,n,seed,sum_secrecy_rate_bps_hz,rounds,converged";
pub const CONVERGENCE_HEADER: &str = "iteration,sum_secrecy_rate_bps_hz";

/// Formats a real like C's `%.17g`: 17 significant digits, trailing zeros
/// dropped, exponent form outside `[1e-4, 1e17)`. Parses back to the same
/// bits.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();

    if !(-4..17).contains(&exp) {
        let m = format!("{}.{}", &digits[..1], &digits[1..]);
        let m = trim_fraction(&m);
        let esign = if exp < 0 { '-' } else { '+' };
        return format!("{sign}{m}e{esign}{:02}", exp.abs());
    }
    let fixed = if exp >= 0 {
        let split = exp as usize + 1;
        format!("{}.{}", &digits[..split], &digits[split..])
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };
    format!("{sign}{}", trim_fraction(&fixed))
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_convergence_csv<W: Write>(series: &[(usize, f64)], mut out: W) -> io::Result<()> {
    writeln!(out, "{CONVERGENCE_HEADER}")?;
    for (iteration, rate) in series {
        writeln!(out, "{iteration},{}", format_real(*rate))?;
    }
    Ok(())
}

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
