//! Complex literals on the command line: `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
//! Tuples are written either as separate arguments or comma-separated.

use num_complex::Complex64;

fn real(s: &str, whole: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("bad complex literal {whole:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite value in {whole:?}"))
    }
}

fn imaginary(s: &str, whole: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(s, whole),
    }
}

pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(&s, text)?, 0.0));
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(real(&body[..k], text)?, imaginary(&body[k..], text)?)),
        None => Ok(Complex64::new(0.0, imaginary(body, text)?)),
    }
}

/// Exactly `N` complex values from arguments that may contain commas.
pub fn parse_tuple<const N: usize>(args: &[String]) -> Result<[Complex64; N], String> {
    let values: Vec<Complex64> = args
        .iter()
        .flat_map(|a| a.split(','))
        .filter(|p| !p.trim().is_empty())
        .map(parse_complex)
        .collect::<Result<_, _>>()?;
    values
        .try_into()
        .map_err(|v: Vec<Complex64>| format!("expected {N} values, got {}", v.len()))
}
