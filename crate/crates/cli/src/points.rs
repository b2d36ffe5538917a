//! Points of `H^r` for numerical checks.
//!
//! File format: one point per line, `r` complex numbers separated by
//! whitespace, each written `re,im`. Blank lines and lines starting with `#`
//! are ignored.

use num_complex::Complex64;
use theta_forge::hilbert_eval::HilbertPoint;

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("`{s}`: expected `re,im`"))?;
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(Complex64::new(f(re)?, f(im)?))
}

pub fn parse(text: &str) -> Result<Vec<HilbertPoint>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(parse_complex)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("line {}: {e}", i + 1))?;
        out.push(HilbertPoint::new(coords).map_err(|e| format!("line {}: {e}", i + 1))?);
    }
    if out.is_empty() {
        return Err("no points".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_points() {
        let pts = parse("# two points\n0,1 0,1.3\n\n0.2,1.1 -0.3,1\n").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].coords()[1], Complex64::new(-0.3, 1.0));
        assert!(parse("0,-1\n").is_err());
        assert!(parse("1\n").is_err());
        assert!(parse("# nothing\n").is_err());
    }
}
