//! Functional files for the construction engine: scalar assignments per
//! basis-monomial key, one per line.
//!
//! ```text
//! # step 2: rows 0 (projection) and 1 (kernel direction), plus the companion
//! step2.p.0 x = 1
//! step2.p.1 y = 1
//! step2.q x = 1
//! step3.p x^2 = 1
//! step5.phi x^4 = 1
//! step5.phi y^2 = -1
//! ```
//!
//! Rows default to index 0 when omitted (`step3.p` is `step3.p.0`). Steps
//! absent from the file run with the engine defaults.

use std::collections::BTreeMap;
use std::sync::Arc;

use nilfilt::construct::{FunctionalSpec, Functionals, StepFunctionals};
use nilfilt::{Monomial, Ring, Scalar};

use crate::lex::{tokenize, Cursor, LexError, Tok};
use crate::session::parse_polynomial;

#[derive(Default)]
struct RawStep {
    p_rows: BTreeMap<usize, BTreeMap<Monomial, Scalar>>,
    q_row: Option<BTreeMap<Monomial, Scalar>>,
    phi_row: Option<BTreeMap<Monomial, Scalar>>,
}

fn parse_value(cur: &mut Cursor, ring: &Arc<Ring>) -> Result<Scalar, LexError> {
    let field = ring.field();
    let negate = cur.eat_punct('-');
    let digits = cur.expect_int()?;
    let mut value = field.parse(&digits).map_err(|e| cur.error(e.to_string()))?;
    if cur.eat_punct('/') {
        let den_digits = cur.expect_int()?;
        let den = field
            .parse(&den_digits)
            .map_err(|e| cur.error(e.to_string()))?;
        if den.is_zero() {
            return Err(cur.error("zero denominator"));
        }
        value = field
            .div(&value, &den)
            .map_err(|e| cur.error(e.to_string()))?;
    }
    Ok(if negate { field.neg(&value) } else { value })
}

fn parse_monomial_key(cur: &mut Cursor, ring: &Arc<Ring>) -> Result<Monomial, LexError> {
    let poly = parse_polynomial(cur, ring)?;
    if poly.terms().len() != 1 || !poly.terms()[0].1.is_one() {
        return Err(cur.error("basis keys must be plain monomials"));
    }
    Ok(poly.terms()[0].0.clone())
}

/// Parses a functional file against a construction ring.
pub fn parse_functionals(text: &str, ring: &Arc<Ring>) -> Result<Functionals, LexError> {
    let mut raw: BTreeMap<u32, RawStep> = BTreeMap::new();

    for (lineno, line) in text.lines().enumerate() {
        let stripped = match line.find('#') {
            Some(idx) => &line[..idx],
            None => line,
        };
        if stripped.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(tokenize(stripped).map_err(|mut e| {
            e.line = lineno + 1;
            e
        })?);
        let with_line = |mut e: LexError| {
            e.line = lineno + 1;
            e
        };

        // key: step<k>[.p[.row] | .q | .phi]
        let head = cur.expect_ident().map_err(with_line)?;
        let Some(level_str) = head.strip_prefix("step") else {
            return Err(with_line(cur.error(format!(
                "expected a step key like `step3.p`, found `{head}`"
            ))));
        };
        let level: u32 = level_str
            .parse()
            .map_err(|_| with_line(cur.error(format!("invalid step number `{level_str}`"))))?;

        let mut kind = "p".to_string();
        let mut row_idx = 0usize;
        if cur.eat_punct('.') {
            kind = cur.expect_ident().map_err(with_line)?;
            if cur.eat_punct('.') {
                let digits = cur.expect_int().map_err(with_line)?;
                row_idx = digits
                    .parse()
                    .map_err(|_| with_line(cur.error("invalid row index")))?;
            }
        }

        let mono = parse_monomial_key(&mut cur, ring).map_err(with_line)?;
        cur.expect_punct('=').map_err(with_line)?;
        let value = parse_value(&mut cur, ring).map_err(with_line)?;
        if cur.peek().tok != Tok::Eof {
            return Err(with_line(cur.error("unexpected trailing input")));
        }

        let entry = raw.entry(level).or_default();
        match kind.as_str() {
            "p" => {
                entry.p_rows.entry(row_idx).or_default().insert(mono, value);
            }
            "q" => {
                entry
                    .q_row
                    .get_or_insert_with(BTreeMap::new)
                    .insert(mono, value);
            }
            "phi" => {
                entry
                    .phi_row
                    .get_or_insert_with(BTreeMap::new)
                    .insert(mono, value);
            }
            other => {
                return Err(with_line(
                    cur.error(format!("unknown functional kind `{other}` (p, q or phi)")),
                ))
            }
        }
    }

    let mut out = Functionals::default();
    for (level, step) in raw {
        let spec = if let Some(phi) = step.phi_row {
            StepFunctionals::P {
                p: FunctionalSpec::single(phi),
            }
        } else if let Some(q) = step.q_row {
            let rows = assemble_rows(step.p_rows, level)?;
            StepFunctionals::Step2 {
                p: FunctionalSpec { rows },
                q: FunctionalSpec::single(q),
            }
        } else {
            let rows = assemble_rows(step.p_rows, level)?;
            StepFunctionals::P {
                p: FunctionalSpec { rows },
            }
        };
        out.steps.insert(level, spec);
    }
    Ok(out)
}

fn assemble_rows(
    rows: BTreeMap<usize, BTreeMap<Monomial, Scalar>>,
    level: u32,
) -> Result<Vec<BTreeMap<Monomial, Scalar>>, LexError> {
    if rows.is_empty() {
        return Err(LexError {
            line: 0,
            col: 0,
            message: format!("step {level} has no functional rows"),
        });
    }
    let max = *rows.keys().max().expect("nonempty");
    let mut out = Vec::with_capacity(max + 1);
    for idx in 0..=max {
        match rows.get(&idx) {
            Some(row) => out.push(row.clone()),
            None => {
                return Err(LexError {
                    line: 0,
                    col: 0,
                    message: format!("step {level} is missing row {idx}"),
                })
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nilfilt::construct::construct_init;
    use nilfilt::filtration::CuspidalType;

    #[test]
    fn parses_and_runs() {
        let state = construct_init(CuspidalType::C2, 4, 0).unwrap();
        let ring = state.ring().clone();
        let text = "\n# defaults except the final sign\nstep5.phi x^4 = 1\nstep5.phi y^2 = -2\n";
        let funcs = parse_functionals(text, &ring).unwrap();
        let (j, report, _) = nilfilt::construct::construct_run(
            CuspidalType::C2,
            4,
            0,
            Some(&funcs),
            &nilfilt::Limits::default(),
        )
        .unwrap();
        let expected = nilfilt::Ideal::parse(&ring, &["y^2 + 2*x^4", "x*y"]).unwrap();
        assert!(j.equals(&expected).unwrap());
        assert!(report.all_pass());
    }

    #[test]
    fn bad_keys_are_rejected() {
        let ring = construct_init(CuspidalType::C2, 4, 0)
            .unwrap()
            .ring()
            .clone();
        assert!(parse_functionals("nonsense x = 1", &ring).is_err());
        assert!(parse_functionals("step2.w x = 1", &ring).is_err());
        assert!(parse_functionals("step2.p x + y = 1", &ring).is_err());
        assert!(parse_functionals("step2.p.1 y = 1", &ring).is_err()); // missing row 0
    }
}
