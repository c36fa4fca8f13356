//! Foliation descriptions on the command line:
//!
//! * `rational(f1, f2; r, s)`
//! * `log(f1, ..., fk; l1, ..., lk)`
//! * `exact(P)`
//! * `form(<one-form>)`

use folia_core::exactalg::Scalar;
use folia_core::foliations::FoliationSpec;

use crate::parse::{parse_form, parse_poly, parse_scalar, ParseError};

/// Splits `text` at top-level occurrences of `sep`, returning each piece with
/// its byte offset.
fn split_top(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

fn items(group: (usize, &str), base: usize) -> Result<Vec<(usize, &str)>, ParseError> {
    split_top(group.1, ',')
        .into_iter()
        .map(|(off, s)| {
            let at = base + group.0 + off;
            if s.trim().is_empty() {
                Err(ParseError {
                    offset: at,
                    message: "empty argument".into(),
                })
            } else {
                Ok((at, s))
            }
        })
        .collect()
}

pub fn parse_foliation(text: &str, vars: &[String]) -> Result<FoliationSpec, ParseError> {
    let open = text.find('(').ok_or_else(|| ParseError {
        offset: 0,
        message: "expected rational(...), log(...), exact(...) or form(...)".into(),
    })?;
    let head = text[..open].trim();
    let close = text.trim_end().len();
    if !text[..close].ends_with(')') || close <= open + 1 {
        return Err(ParseError {
            offset: close,
            message: "expected a closing ')'".into(),
        });
    }
    let inner = &text[open + 1..close - 1];
    let base = open + 1;
    let invalid = |e: folia_core::Error| ParseError {
        offset: 0,
        message: e.to_string(),
    };
    let groups = split_top(inner, ';');
    match head {
        "rational" | "log" | "logarithmic" => {
            if groups.len() != 2 {
                return Err(ParseError {
                    offset: base,
                    message: format!("{head}(...) takes polynomials, then ';', then scalars"),
                });
            }
            let polys = items(groups[0], base)?
                .into_iter()
                .map(|(at, s)| parse_poly(s, vars).map_err(|e| e.shifted(at)))
                .collect::<Result<Vec<_>, _>>()?;
            let scalars = items(groups[1], base)?
                .into_iter()
                .map(|(at, s)| parse_scalar(s, vars).map_err(|e| e.shifted(at)))
                .collect::<Result<Vec<Scalar>, _>>()?;
            if head == "rational" {
                let ([f1, f2], [r, s]) = (
                    <[_; 2]>::try_from(polys).map_err(|_| ParseError {
                        offset: base,
                        message: "rational(...) takes two polynomials".into(),
                    })?,
                    <[_; 2]>::try_from(scalars).map_err(|_| ParseError {
                        offset: base + groups[1].0,
                        message: "rational(...) takes two scalars r, s".into(),
                    })?,
                );
                FoliationSpec::rational(f1, f2, r, s).map_err(invalid)
            } else {
                FoliationSpec::logarithmic(polys, scalars).map_err(invalid)
            }
        }
        "exact" => {
            let p = parse_poly(inner, vars).map_err(|e| e.shifted(base))?;
            FoliationSpec::exact(p).map_err(invalid)
        }
        "form" | "raw" => {
            let w = parse_form(inner, vars).map_err(|e| e.shifted(base))?;
            FoliationSpec::raw(w).map_err(invalid)
        }
        other => Err(ParseError {
            offset: 0,
            message: format!("unknown foliation kind '{other}'"),
        }),
    }
}

/// Canonical text of a foliation; `parse_foliation` reads it back.
pub fn render_foliation(spec: &FoliationSpec, vars: &[String]) -> String {
    let join_polys = |ps: &[folia_core::exactalg::Poly]| {
        ps.iter().map(|p| p.render(vars)).collect::<Vec<_>>().join(", ")
    };
    let join_scalars = |cs: &[Scalar]| cs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    match spec {
        FoliationSpec::AffineRational { f1, f2, r, s } => format!(
            "rational({}; {})",
            join_polys(&[f1.clone(), f2.clone()]),
            join_scalars(&[r.clone(), s.clone()])
        ),
        FoliationSpec::AffineLogarithmic { factors, lambda } => {
            format!("log({}; {})", join_polys(factors), join_scalars(lambda))
        }
        FoliationSpec::Exact { p } => format!("exact({})", p.render(vars)),
        FoliationSpec::Raw { omega } => format!("form({})", omega.render(vars)),
    }
}
