//! Sparse multivariate polynomials in canonical form.
//!
//! A polynomial is a list of (monomial, nonzero coefficient) pairs sorted
//! strictly descending under the ring order. The zero polynomial is the
//! empty list.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Monomial, Ring};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.arity()), c)],
        }
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(index, ring.arity()), ring.field().one())],
        }
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.arity(), ring.arity(), "monomial arity mismatch");
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Builds a canonical polynomial from unsorted terms: merges duplicate
    /// monomials, drops zero coefficients, sorts descending.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, Scalar)>) -> Self {
        let field = ring.field();
        let mut map: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.arity(), ring.arity(), "monomial arity mismatch");
            match map.get_mut(&m) {
                Some(acc) => *acc = field.add(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut out: Vec<(Monomial, Scalar)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &Scalar)> {
        self.terms
            .first()
            .map(|(m, c)| (m, c))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        Ok(self.leading_term()?.0)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        // Merge two descending term lists.
        let field = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.ring.cmp(&self.terms[i].0, &other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = field.add(&self.terms[i].1, &other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let mut map: HashMap<Monomial, Scalar> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = field.add(acc, &c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let mut out: Vec<(Monomial, Scalar)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| self.ring.cmp(&b.0, &a.0));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    /// Multiplication by a single term; keeps sortedness without re-sorting.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), field.mul(tc, c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.arity()), c)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Polynomial> {
        let (_, lc) = self.leading_term()?;
        let inv = self.ring.field().inv(lc)?;
        Ok(self.scale(&inv))
    }

    /// Exact division by `divisor`; errors unless the remainder is zero.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let field = self.ring.field();
        let (dlm, dlc) = divisor.leading_term()?;
        let dlm = dlm.clone();
        let dlc = dlc.clone();
        let mut rem = self.clone();
        let mut quot_terms = Vec::new();
        while let Some((lm, lc)) = rem.terms.first().cloned() {
            let Some(q) = dlm.div_into(&lm) else {
                return Err(Error::InexactDivision);
            };
            let qc = field.div(&lc, &dlc)?;
            quot_terms.push((q.clone(), qc.clone()));
            rem = rem.sub(&divisor.mul_term(&q, &qc))?;
        }
        Ok(Polynomial::from_terms(&self.ring, quot_terms))
    }

    /// Substitutes x_i -> a * x_i (a nonzero).
    pub fn scale_var(&self, index: usize, a: &Scalar) -> Polynomial {
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), field.mul(c, &field.pow(a, m.0[index]))))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Reorders exponents by `perm` (new index i takes old index perm[i]).
    pub fn permute_vars(&self, ring: &Arc<Ring>, perm: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e: Vec<u32> = perm.iter().map(|&j| m.0[j]).collect();
                (Monomial(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Transports the polynomial into a ring with the same variables and
    /// field but a different order (terms are re-sorted).
    pub fn reorder(&self, ring: &Arc<Ring>) -> Polynomial {
        debug_assert_eq!(ring.vars(), self.ring.vars());
        Polynomial::from_terms(ring, self.terms.clone())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{}*{}", mag, self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| (*b as char).is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        let first = self.src.get(self.pos).map(|&b| b as char);
        if !matches!(first, Some(c) if c.is_ascii_alphabetic() || c == '_') {
            return self.err("expected an identifier");
        }
        self.pos += 1;
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| (*b as char).is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn coefficient(&mut self) -> Result<Scalar> {
        let field = self.ring.field();
        let n = self.number()?;
        let num = field.parse(&n)?;
        if self.eat('/') {
            let d = self.number()?;
            let den = field.parse(&d)?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            return field.div(&num, &den).map_err(|e| Error::Parse {
                offset: self.pos,
                message: e.to_string(),
            });
        }
        Ok(num)
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        let name = self.ident()?;
        let Some(index) = self.ring.var_index(&name) else {
            return Err(Error::Parse {
                offset: self.pos,
                message: format!("unknown variable `{name}`"),
            });
        };
        let exp = if self.eat('^') {
            let n = self.number()?;
            n.parse::<u32>().map_err(|_| Error::Parse {
                offset: self.pos,
                message: format!("exponent `{n}` too large"),
            })?
        } else {
            1
        };
        Ok((index, exp))
    }

    /// term := coefficient ["*" factor ("*" factor)*] | factor ("*" factor)*
    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let field = self.ring.field();
        let mut coef = field.one();
        let mut mono = Monomial::one(self.ring.arity());
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coef = self.coefficient()?;
                if self.eat('*') {
                    loop {
                        let (i, e) = self.factor()?;
                        mono.0[i] += e;
                        if !self.eat('*') {
                            break;
                        }
                    }
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => loop {
                let (i, e) = self.factor()?;
                mono.0[i] += e;
                if !self.eat('*') {
                    break;
                }
            },
            _ => return self.err("expected a term"),
        }
        Ok((mono, coef))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        let mut sign_neg = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            let c = if sign_neg { field.neg(&c) } else { c };
            terms.push((m, c));
            match self.peek() {
                Some('+') => {
                    self.bump();
                    sign_neg = false;
                }
                Some('-') => {
                    self.bump();
                    sign_neg = true;
                }
                _ => break,
            }
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

impl Polynomial {
    /// Parses a single polynomial. The whole input must be consumed.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            ring,
        };
        let poly = p.poly()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return p.err(format!(
                "unexpected input `{}`",
                &text[p.pos..text.len().min(p.pos + 12)]
            ));
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn ring2() -> Arc<Ring> {
        Ring::rational(&["x", "y"]).unwrap()
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn addition_cancels() {
        let r = ring2();
        let sum = p(&r, "x + y").add(&p(&r, "x - y")).unwrap();
        assert_eq!(sum, p(&r, "2*x"));
        let f = p(&r, "x^2*y - 3");
        assert_eq!(f.add(&Polynomial::zero(&r)).unwrap(), f);
        assert_eq!(
            p(&r, "y^2 + x^3").add(&p(&r, "-y^2")).unwrap(),
            p(&r, "x^3")
        );
    }

    #[test]
    fn multiplication() {
        let r = ring2();
        assert_eq!(p(&r, "x").mul(&p(&r, "y")).unwrap(), p(&r, "x*y"));
        assert_eq!(
            p(&r, "x + y").mul(&p(&r, "x - y")).unwrap(),
            p(&r, "x^2 - y^2")
        );
        let f = p(&r, "2*x^2 - 1/3*y");
        assert_eq!(f.mul(&Polynomial::one(&r)).unwrap(), f);
    }

    #[test]
    fn leading_terms_follow_the_order() {
        let r = ring2();
        // degrevlex: x^3 beats y^2
        let f = p(&r, "y^2 + x^3");
        assert_eq!(r.format_monomial(f.leading_monomial().unwrap()), "x^3");
        // tie at degree 2 broken toward x^2
        let g = p(&r, "x^2 + x*y");
        assert_eq!(r.format_monomial(g.leading_monomial().unwrap()), "x^2");
        assert!(Polynomial::zero(&r).leading_term().is_err());

        let lex = r.with_order(crate::ring::MonomialOrder::Lex).unwrap();
        let h = Polynomial::parse(&lex, "y^2 + x^3").unwrap();
        assert_eq!(lex.format_monomial(h.leading_monomial().unwrap()), "x^3");
    }

    #[test]
    fn print_parse_round_trip() {
        let r = ring2();
        for s in ["x^3 + y^2", "x*y", "-x + 1/2", "2*x^2*y - 3*y + 1", "0"] {
            let f = p(&r, s);
            assert_eq!(Polynomial::parse(&r, &f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn exact_division() {
        let r = ring2();
        let h = p(&r, "x^2 - y^2");
        let q = h.div_exact(&p(&r, "x - y")).unwrap();
        assert_eq!(q, p(&r, "x + y"));
        assert!(p(&r, "x^2 + y").div_exact(&p(&r, "x - y")).is_err());
    }

    #[test]
    fn ring_mismatch_detected() {
        let r = ring2();
        let s = Ring::rational(&["x", "y", "z"]).unwrap();
        let f = p(&r, "x");
        let g = Polynomial::parse(&s, "x").unwrap();
        assert!(f.add(&g).is_err());
    }

    #[test]
    fn gf_coefficients() {
        let r = Ring::new(
            vec!["x".into(), "y".into()],
            Field::Prime(7),
            crate::ring::MonomialOrder::DegRevLex,
        )
        .unwrap();
        let f = Polynomial::parse(&r, "5*x + 4").unwrap();
        let g = Polynomial::parse(&r, "3*x + 3").unwrap();
        let sum = f.add(&g).unwrap();
        assert_eq!(sum, Polynomial::parse(&r, "x").unwrap());
        // 1/3 = 5 mod 7
        let h = Polynomial::parse(&r, "1/3").unwrap();
        assert_eq!(h, Polynomial::parse(&r, "5").unwrap());
    }
}
