//! Parsing of grid, list and modulus arguments.

use std::str::FromStr;

use hquad_core::HModulus;

/// Values of one grid axis, in the order given.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// A comma-separated list of parsed items.
#[derive(Debug, Clone, PartialEq)]
pub struct List<T>(pub Vec<T>);

/// Parses a decimal number or a fraction `n/d`.
pub fn parse_value(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| format!("bad number '{s}'"))?;
            let d: f64 = d.trim().parse().map_err(|_| format!("bad number '{s}'"))?;
            n / d
        }
        None => s.parse().map_err(|_| format!("bad number '{s}'"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not a finite number"))
    }
}

/// `v1,v2,...` or `start:stop:count` (inclusive, evenly spaced).
pub fn parse_grid(s: &str) -> Result<Grid, String> {
    if s.trim().is_empty() {
        return Err("grid is empty".into());
    }
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let lo = parse_value(parts[0])?;
        let hi = parse_value(parts[1])?;
        let n: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("bad count in '{s}'"))?;
        return match n {
            0 => Err("grid is empty".into()),
            1 => Ok(Grid(vec![lo])),
            _ => Ok(Grid(
                (0..n)
                    .map(|i| {
                        if i + 1 == n {
                            hi
                        } else {
                            lo + (hi - lo) * i as f64 / (n - 1) as f64
                        }
                    })
                    .collect(),
            )),
        };
    }
    s.split(',').map(parse_value).collect::<Result<_, _>>().map(Grid)
}

pub fn parse_list<T>(s: &str) -> Result<List<T>, String>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    let items = s
        .split(',')
        .map(|t| t.trim().parse::<T>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if items.is_empty() {
        return Err("list is empty".into());
    }
    Ok(List(items))
}

/// Maps `t`, `t^s`, `1`, `1/t` to a modulus; `s` fills in `t^s`.
pub fn parse_modulus(name: &str, s: f64) -> Result<HModulus, String> {
    match name.trim() {
        "t" => Ok(HModulus::Identity),
        "t^s" => HModulus::power(s).map_err(|e| e.to_string()),
        "1" => Ok(HModulus::Constant),
        "1/t" => Ok(HModulus::Reciprocal),
        other => Err(format!("unknown modulus '{other}', expected t, t^s, 1 or 1/t")),
    }
}
