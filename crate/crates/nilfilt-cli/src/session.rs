//! The session input language: one ring declaration followed by named
//! ideal definitions.
//!
//! ```text
//! ring QQ[x,y,z]            # or GF(7)[...], optional `order lex`
//! ideal J = y^2 + x^3, x*y, z
//! ideal I = x, y, z
//! ```

use std::sync::Arc;

use nilfilt::{Field, Ideal, Monomial, MonomialOrder, Polynomial, Ring, Scalar};

use crate::lex::{tokenize, Cursor, LexError, Tok};

#[derive(Debug, Clone)]
pub struct Session {
    pub ring: Arc<Ring>,
    pub ideals: Vec<(String, Ideal)>,
}

impl Session {
    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    /// Canonical text form: the ring line and each ideal printed through its
    /// reduced basis.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let field = match self.ring.field() {
            Field::Rationals => "QQ".to_string(),
            Field::Prime(p) => format!("GF({p})"),
        };
        let order = match self.ring.order() {
            MonomialOrder::Lex => "lex",
            _ => "degrevlex",
        };
        out.push_str(&format!(
            "ring {field}[{}] order {order}\n",
            self.ring.vars().join(",")
        ));
        for (name, ideal) in &self.ideals {
            out.push_str(&format!(
                "ideal {name} = {}\n",
                ideal.canonical_gens().join(", ")
            ));
        }
        out
    }
}

const KEYWORDS: &[&str] = &["ring", "ideal", "order", "QQ", "GF", "lex", "degrevlex"];

fn parse_u64(cur: &Cursor, digits: &str) -> Result<u64, LexError> {
    digits
        .parse::<u64>()
        .map_err(|_| cur.error(format!("number `{digits}` is too large")))
}

/// poly := [sign] term (sign term)*; the polynomial ends at `,`, a keyword
/// or end of input.
pub fn parse_polynomial(cur: &mut Cursor, ring: &Arc<Ring>) -> Result<Polynomial, LexError> {
    let field = ring.field();
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let mut negate = false;
    if cur.eat_punct('-') {
        negate = true;
    } else {
        let _ = cur.eat_punct('+');
    }
    loop {
        let (m, c) = parse_term(cur, ring)?;
        terms.push((m, if negate { field.neg(&c) } else { c }));
        if cur.eat_punct('+') {
            negate = false;
        } else if cur.eat_punct('-') {
            negate = true;
        } else {
            break;
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn parse_scalar(cur: &mut Cursor, ring: &Arc<Ring>) -> Result<Scalar, LexError> {
    let field = ring.field();
    let digits = cur.expect_int()?;
    let num = field.parse(&digits).map_err(|e| cur.error(e.to_string()))?;
    if cur.eat_punct('/') {
        let den_digits = cur.expect_int()?;
        let den = field
            .parse(&den_digits)
            .map_err(|e| cur.error(e.to_string()))?;
        if den.is_zero() {
            return Err(cur.error("zero denominator"));
        }
        return field.div(&num, &den).map_err(|e| cur.error(e.to_string()));
    }
    Ok(num)
}

fn parse_factor(cur: &mut Cursor, ring: &Arc<Ring>, mono: &mut Monomial) -> Result<(), LexError> {
    let name = cur.expect_ident()?;
    let Some(index) = ring.var_index(&name) else {
        return Err(cur.error(format!("unknown variable `{name}`")));
    };
    let exp = if cur.eat_punct('^') {
        let digits = cur.expect_int()?;
        parse_u64(cur, &digits)? as u32
    } else {
        1
    };
    mono.0[index] += exp;
    Ok(())
}

fn parse_term(cur: &mut Cursor, ring: &Arc<Ring>) -> Result<(Monomial, Scalar), LexError> {
    let mut mono = Monomial::one(ring.arity());
    match cur.peek().tok.clone() {
        Tok::Int(_) => {
            let coef = parse_scalar(cur, ring)?;
            if cur.eat_punct('*') {
                loop {
                    parse_factor(cur, ring, &mut mono)?;
                    if !cur.eat_punct('*') {
                        break;
                    }
                }
            }
            Ok((mono, coef))
        }
        Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
            loop {
                parse_factor(cur, ring, &mut mono)?;
                if !cur.eat_punct('*') {
                    break;
                }
            }
            Ok((mono, ring.field().one()))
        }
        other => Err(cur.error(format!("expected a term, found {other}"))),
    }
}

fn parse_ring_decl(cur: &mut Cursor) -> Result<Arc<Ring>, LexError> {
    if !cur.at_ident("ring") {
        return Err(cur.error("a session must start with a `ring` declaration"));
    }
    cur.bump();
    let field = match cur.expect_ident()?.as_str() {
        "QQ" => Field::Rationals,
        "GF" => {
            cur.expect_punct('(')?;
            let digits = cur.expect_int()?;
            let p = parse_u64(cur, &digits)?;
            cur.expect_punct(')')?;
            Field::Prime(p)
        }
        other => {
            return Err(cur.error(format!("unknown coefficient field `{other}` (QQ or GF(p))")))
        }
    };
    cur.expect_punct('[')?;
    let mut vars = vec![cur.expect_ident()?];
    while cur.eat_punct(',') {
        vars.push(cur.expect_ident()?);
    }
    cur.expect_punct(']')?;
    let order = if cur.at_ident("order") {
        cur.bump();
        match cur.expect_ident()?.as_str() {
            "lex" => MonomialOrder::Lex,
            "degrevlex" => MonomialOrder::DegRevLex,
            other => return Err(cur.error(format!("unknown order `{other}`"))),
        }
    } else {
        MonomialOrder::DegRevLex
    };
    for v in &vars {
        if KEYWORDS.contains(&v.as_str()) {
            return Err(cur.error(format!("`{v}` is reserved and cannot name a variable")));
        }
    }
    Ring::new(vars, field, order).map_err(|e| cur.error(e.to_string()))
}

pub fn parse_session(text: &str) -> Result<Session, LexError> {
    let mut cur = Cursor::new(tokenize(text)?);
    let ring = parse_ring_decl(&mut cur)?;
    let mut ideals: Vec<(String, Ideal)> = Vec::new();
    loop {
        match cur.peek().tok.clone() {
            Tok::Eof => break,
            Tok::Ident(kw) if kw == "ideal" => {
                cur.bump();
                let name = cur.expect_ident()?;
                if KEYWORDS.contains(&name.as_str()) {
                    return Err(cur.error(format!("`{name}` is reserved and cannot name an ideal")));
                }
                if ideals.iter().any(|(n, _)| *n == name) {
                    return Err(cur.error(format!("duplicate ideal name `{name}`")));
                }
                cur.expect_punct('=')?;
                let mut gens = vec![parse_polynomial(&mut cur, &ring)?];
                while cur.eat_punct(',') {
                    gens.push(parse_polynomial(&mut cur, &ring)?);
                }
                let ideal = Ideal::new(&ring, gens).map_err(|e| cur.error(e.to_string()))?;
                ideals.push((name, ideal));
            }
            other => return Err(cur.error(format!("expected an `ideal` statement, found {other}"))),
        }
    }
    Ok(Session { ring, ideals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_small_session() {
        let s = parse_session("ring QQ[x,y,z]\nideal J = y^2 + x^3, x*y, z\nideal I = x, y, z\n")
            .unwrap();
        assert_eq!(s.ideals.len(), 2);
        assert_eq!(s.ring.arity(), 3);
        assert!(s.ideal("J").is_some());
        assert!(s.ideal("nope").is_none());
    }

    #[test]
    fn dangling_operator_is_a_syntax_error() {
        let err = parse_session("ring QQ[x]\nideal J = x +").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn unknown_variable_is_reported() {
        let err = parse_session("ring QQ[x]\nideal J = y").unwrap_err();
        assert!(err.message.contains("unknown variable"), "{}", err.message);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(parse_session("ring QQ[x]\nideal J = x\nideal J = x^2").is_err());
        assert!(parse_session("ring QQ[x,x]\nideal J = x").is_err());
    }

    #[test]
    fn comments_and_whitespace_are_ignored() {
        let s = parse_session(
            "# header\nring QQ[x,y]   # inline\n  ideal J =\n    x^2 , x*y # trailing\n",
        )
        .unwrap();
        assert_eq!(s.ideals.len(), 1);
    }

    #[test]
    fn round_trip_on_canonical_text() {
        let original = parse_session(
            "ring QQ[x,y,z] order degrevlex\nideal J = y^2 + x^3, x*y, z\nideal K = x - 1/2*y\n",
        )
        .unwrap();
        let printed = original.to_text();
        let reparsed = parse_session(&printed).unwrap();
        assert_eq!(printed, reparsed.to_text());
        for ((n1, i1), (n2, i2)) in original.ideals.iter().zip(&reparsed.ideals) {
            assert_eq!(n1, n2);
            assert!(i1.equals(i2).unwrap());
        }
    }

    #[test]
    fn gf_sessions_parse() {
        let s = parse_session("ring GF(7)[x,y]\nideal J = 3*x + 5, y^2").unwrap();
        assert_eq!(s.ring.field(), &Field::Prime(7));
        assert!(parse_session("ring GF(6)[x]\nideal J = x").is_err());
    }
}
