//! Text formats accepted on the command line and in function-spec files.
//!
//! Function-spec grammar, one directive per line, `#` to end of line is a
//! comment:
//!
//! ```text
//! principal <re> <im>
//! coef <n> <re> <im>              # n >= 1, coefficient of z^(n-1)
//! builtin <name> key=value ...
//! ```
//!
//! Builtins are `pole` (key `N`, default 0) and `extremal` (keys `alpha`,
//! `lambda`, `N`; `lambda` defaults to 0 and `N` to 64). A builtin cannot be
//! mixed with other directives.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::bml_operator::DEFAULT_ORDER;
use crate::classes::extremal_function;
use crate::laurent::SigmaSeries;
use crate::{Error, Result};

/// Largest coefficient index or order accepted from text.
pub const MAX_ORDER: usize = 1 << 16;

fn parse_finite(token: &str, line: usize, what: &str) -> Result<f64> {
    let v: f64 = token
        .parse()
        .map_err(|_| Error::parse(line, format!("{what}: `{token}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::parse(
            line,
            format!("{what}: `{token}` is not finite"),
        ));
    }
    Ok(v)
}

fn parse_order(token: &str, line: usize, what: &str) -> Result<usize> {
    let n: usize = token.parse().map_err(|_| {
        Error::parse(
            line,
            format!("{what}: `{token}` is not a nonnegative integer"),
        )
    })?;
    if n > MAX_ORDER {
        return Err(Error::parse(
            line,
            format!("{what}: {n} exceeds {MAX_ORDER}"),
        ));
    }
    Ok(n)
}

/// Complex number written `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| Error::parse(1, format!("expected `re,im`, got `{text}`")))?;
    Ok(Complex64::new(
        parse_finite(re.trim(), 1, "real part")?,
        parse_finite(im.trim(), 1, "imaginary part")?,
    ))
}

/// Comma-separated complex list with entries `re` or `re:im`.
pub fn parse_coeff_list(text: &str) -> Result<Vec<Complex64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(i, entry)| {
            let what = format!("entry {}", i + 1);
            match entry.split_once(':') {
                Some((re, im)) => Ok(Complex64::new(
                    parse_finite(re.trim(), 1, &what)?,
                    parse_finite(im.trim(), 1, &what)?,
                )),
                None => Ok(Complex64::new(parse_finite(entry.trim(), 1, &what)?, 0.0)),
            }
        })
        .collect()
}

fn parse_builtin(line: usize, tokens: &[&str]) -> Result<SigmaSeries> {
    let (name, rest) = tokens
        .split_first()
        .ok_or_else(|| Error::parse(line, "builtin needs a name"))?;
    let allowed: &[&str] = match *name {
        "pole" => &["N"],
        "extremal" => &["alpha", "lambda", "N"],
        other => return Err(Error::parse(line, format!("unknown builtin `{other}`"))),
    };
    let mut keys = BTreeMap::new();
    for token in rest {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| Error::parse(line, format!("expected key=value, got `{token}`")))?;
        if !allowed.contains(&key) {
            return Err(Error::parse(
                line,
                format!("unknown key `{key}` for builtin `{name}`"),
            ));
        }
        if keys.insert(key, value).is_some() {
            return Err(Error::parse(line, format!("duplicate key `{key}`")));
        }
    }
    let order = match keys.get("N") {
        Some(v) => parse_order(v, line, "N")?,
        None if *name == "pole" => 0,
        None => DEFAULT_ORDER,
    };
    match *name {
        "pole" => Ok(SigmaSeries::pole().with_order(order)),
        _ => {
            let alpha = keys
                .get("alpha")
                .ok_or_else(|| Error::parse(line, "builtin extremal needs alpha"))?;
            let alpha = parse_finite(alpha, line, "alpha")?;
            let lambda = match keys.get("lambda") {
                Some(v) => parse_finite(v, line, "lambda")?,
                None => 0.0,
            };
            extremal_function(alpha, lambda, order).map_err(|e| Error::parse(line, e.to_string()))
        }
    }
}

/// Parses a function-spec text into a [`SigmaSeries`].
///
/// The principal part defaults to 1 and missing coefficients below the
/// largest index are zero.
pub fn parse_function_spec(text: &str) -> Result<SigmaSeries> {
    let mut principal: Option<Complex64> = None;
    let mut coeffs: BTreeMap<usize, Complex64> = BTreeMap::new();
    let mut builtin: Option<(usize, SigmaSeries)> = None;
    let mut explicit_line: Option<usize> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, args)) = tokens.split_first() else {
            continue;
        };
        if builtin.is_some() {
            return Err(Error::parse(
                line,
                "a builtin cannot be combined with other directives",
            ));
        }
        match head {
            "principal" => {
                let [re, im] = args else {
                    return Err(Error::parse(line, "expected `principal <re> <im>`"));
                };
                if principal.is_some() {
                    return Err(Error::parse(line, "duplicate principal directive"));
                }
                principal = Some(Complex64::new(
                    parse_finite(re, line, "principal")?,
                    parse_finite(im, line, "principal")?,
                ));
                explicit_line.get_or_insert(line);
            }
            "coef" => {
                let [n, re, im] = args else {
                    return Err(Error::parse(line, "expected `coef <n> <re> <im>`"));
                };
                let n = parse_order(n, line, "coefficient index")?;
                if n == 0 {
                    return Err(Error::parse(line, "coefficient index must be at least 1"));
                }
                let value = Complex64::new(
                    parse_finite(re, line, "coefficient")?,
                    parse_finite(im, line, "coefficient")?,
                );
                if coeffs.insert(n, value).is_some() {
                    return Err(Error::parse(
                        line,
                        format!("duplicate coefficient index {n}"),
                    ));
                }
                explicit_line.get_or_insert(line);
            }
            "builtin" => {
                if explicit_line.is_some() {
                    return Err(Error::parse(
                        line,
                        "a builtin cannot be combined with other directives",
                    ));
                }
                builtin = Some((line, parse_builtin(line, args)?));
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }

    if let Some((_, f)) = builtin {
        return Ok(f);
    }
    let order = coeffs.keys().next_back().copied().unwrap_or(0);
    let mut tail = vec![Complex64::new(0.0, 0.0); order];
    for (n, v) in coeffs {
        tail[n - 1] = v;
    }
    Ok(SigmaSeries::new(
        principal.unwrap_or(Complex64::new(1.0, 0.0)),
        tail,
    ))
}

/// Writes `f` in the explicit function-spec grammar with 17 significant
/// digits, so [`parse_function_spec`] recovers it exactly.
pub fn format_function_spec(f: &SigmaSeries) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "principal {:.16e} {:.16e}",
        f.principal.re, f.principal.im
    );
    for (i, c) in f.tail.iter().enumerate() {
        let _ = writeln!(out, "coef {} {:.16e} {:.16e}", i + 1, c.re, c.im);
    }
    out
}
