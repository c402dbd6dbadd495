//! Complex literals: `a`, `a+bi`, `a-bi`, `bi`, `rho@theta` (radians).

use num_complex::Complex64;

fn real(s: &str, whole: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|_| format!("bad complex literal {whole:?}"))
}

fn imag(s: &str, whole: &str) -> Result<f64, String> {
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
    if let Some((rho, theta)) = s.split_once('@') {
        return Ok(Complex64::from_polar(real(rho, text)?, real(theta, text)?));
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(real(&s, text)?, 0.0));
    };
    // Split at the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    match split {
        Some(p) => Ok(Complex64::new(real(&body[..p], text)?, imag(&body[p..], text)?)),
        None => Ok(Complex64::new(0.0, imag(body, text)?)),
    }
}

pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_complex).collect()
}

pub fn format_complex(z: Complex64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{:.15}-{:.15}i", z.re, -z.im)
    } else {
        format!("{:.15}+{:.15}i", z.re, z.im)
    }
}
