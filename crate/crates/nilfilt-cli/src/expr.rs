//! Ideal-calculus expressions over the named ideals of a session:
//! `colon(J, power(I, 2))`, `saturate(sum(A, B), I)`, ...

use nilfilt::{Ideal, Limits};

use crate::lex::{tokenize, Cursor, LexError, Tok};
use crate::session::Session;

fn parse_expr(cur: &mut Cursor, session: &Session, limits: &Limits) -> Result<Ideal, LexError> {
    let name = cur.expect_ident()?;
    let is_call = cur.at_punct('(');
    if !is_call {
        return session
            .ideal(&name)
            .cloned()
            .ok_or_else(|| cur.error(format!("unknown ideal `{name}`")));
    }
    cur.expect_punct('(')?;
    let first = parse_expr(cur, session, limits)?;
    let result = match name.as_str() {
        "power" => {
            cur.expect_punct(',')?;
            let digits = cur.expect_int()?;
            let k: u32 = digits
                .parse()
                .map_err(|_| cur.error(format!("exponent `{digits}` is too large")))?;
            first.power(k)
        }
        "sum" | "product" | "intersect" | "colon" | "saturate" => {
            cur.expect_punct(',')?;
            let second = parse_expr(cur, session, limits)?;
            match name.as_str() {
                "sum" => first.sum(&second),
                "product" => first.product(&second),
                "intersect" => first.intersect(&second),
                "colon" => first.colon(&second),
                "saturate" => first.saturate(&second, limits),
                _ => unreachable!(),
            }
        }
        other => return Err(cur.error(format!("unknown operation `{other}`"))),
    };
    cur.expect_punct(')')?;
    result.map_err(|e| cur.error(e.to_string()))
}

/// Evaluates one expression against a session.
pub fn eval_expr(session: &Session, text: &str, limits: &Limits) -> Result<Ideal, LexError> {
    let mut cur = Cursor::new(tokenize(text)?);
    let ideal = parse_expr(&mut cur, session, limits)?;
    if cur.peek().tok != Tok::Eof {
        return Err(cur.error(format!("unexpected trailing input {}", cur.peek().tok)));
    }
    Ok(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::parse_session;

    fn session() -> Session {
        parse_session("ring QQ[x,y,z]\nideal J = y^2 + x^3, x*y, z\nideal I = x, y, z\n").unwrap()
    }

    #[test]
    fn colon_table_row() {
        let s = session();
        let lim = Limits::default();
        let out = eval_expr(&s, "colon(J, I)", &lim).unwrap();
        let expected = nilfilt::Ideal::parse(&s.ring, &["x^3", "x*y", "y^2", "z"]).unwrap();
        assert!(out.equals(&expected).unwrap());
    }

    #[test]
    fn power_zero_is_unit() {
        let s = session();
        let out = eval_expr(&s, "power(I, 0)", &Limits::default()).unwrap();
        assert!(out.is_unit());
        assert_eq!(out.canonical_string(), "(1)");
    }

    #[test]
    fn counterexample_double_colon() {
        let s = parse_session("ring QQ[x,y]\nideal J = x^3, x*y, y^4\nideal I = x, y\n").unwrap();
        let out = eval_expr(&s, "colon(J, power(I, 2))", &Limits::default()).unwrap();
        let expected = nilfilt::Ideal::parse(&s.ring, &["x", "y^2"]).unwrap();
        assert!(out.equals(&expected).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let s = session();
        assert!(eval_expr(&s, "colon(J)", &Limits::default()).is_err());
        assert!(eval_expr(&s, "colon(J, K)", &Limits::default()).is_err());
        assert!(eval_expr(&s, "warp(J, I)", &Limits::default()).is_err());
        assert!(eval_expr(&s, "J I", &Limits::default()).is_err());
    }
}
