//! Flag parsers that reject out-of-range values at parse time (exit 2).

use causalreg::testfn::Shape;

pub fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be a positive finite number, got {s}"))
    }
}

pub fn nonnegative(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be a nonnegative finite number, got {s}"))
    }
}

pub fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be finite, got {s}"))
    }
}

pub fn grid_size(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n >= 8 && n.is_power_of_two() && n <= 1024 {
        Ok(n)
    } else {
        Err(format!("must be a power of two in [8, 1024], got {s}"))
    }
}

pub fn shape(s: &str) -> Result<Shape, String> {
    s.parse::<Shape>().map_err(|e| e.to_string())
}

/// `a,b,c` list of positive numbers.
/// `i,j` pair of integers.
pub fn mode(s: &str) -> Result<(i64, i64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected two integers `i,j`, got {s}"));
    }
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{e}"));
    Ok((p(parts[0])?, p(parts[1])?))
}

/// `01=1`: an index pair and its value.
pub fn field_component(item: &str) -> Result<(usize, usize, f64), String> {
    let (idx, val) = item
        .split_once('=')
        .ok_or_else(|| format!("expected `ab=value`, got {item}"))?;
    let digits: Vec<usize> = idx
        .trim()
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| format!("bad index pair {idx}"))?;
    if digits.len() != 2 || digits[0] == digits[1] {
        return Err(format!("index pair must be two distinct digits, got {idx}"));
    }
    Ok((digits[0], digits[1], finite(val.trim())?))
}
