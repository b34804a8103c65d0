//! Rings, monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// A monomial as an exponent vector. The length must match the arity of the
/// ring it is used in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(index: usize, arity: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, when self divides other.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// True when the supports are disjoint, i.e. lcm = product.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Some(i) when the monomial is a positive power of the single variable i.
    pub fn pure_power(&self) -> Option<usize> {
        let mut support = self.0.iter().enumerate().filter(|(_, e)| **e > 0);
        match (support.next(), support.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }
}

/// A monomial order. Block orders compare the first `split` exponents under
/// the outer order and break ties with the remaining exponents under the
/// inner order; they are used to eliminate the leading block of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    Block {
        split: usize,
        outer: Box<MonomialOrder>,
        inner: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    pub fn validate(&self, arity: usize) -> Result<()> {
        match self {
            MonomialOrder::Lex | MonomialOrder::DegRevLex => Ok(()),
            MonomialOrder::Block {
                split,
                outer,
                inner,
            } => {
                if *split == 0 || *split >= arity {
                    return Err(Error::InvalidRing(format!(
                        "block split {split} out of range for arity {arity}"
                    )));
                }
                outer.validate(*split)?;
                inner.validate(arity - split)
            }
        }
    }

    fn cmp_slices(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.iter().zip(b) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::DegRevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Ties: a > b iff the last nonzero entry of a - b is negative.
                for (x, y) in a.iter().zip(b).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block {
                split,
                outer,
                inner,
            } => match outer.cmp_slices(&a[..*split], &b[..*split]) {
                Ordering::Equal => inner.cmp_slices(&a[*split..], &b[*split..]),
                ord => ord,
            },
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Block {
                split,
                outer,
                inner,
            } => {
                write!(f, "block({split}, {outer}, {inner})")
            }
        }
    }
}

/// Compares two monomials of equal arity under the given order.
pub fn cmp_monomials(a: &Monomial, b: &Monomial, order: &MonomialOrder) -> Result<Ordering> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            got: b.arity(),
        });
    }
    Ok(order.cmp_slices(&a.0, &b.0))
}

/// A polynomial ring descriptor: ordered variable names, coefficient field
/// and monomial order. Rings are immutable and shared behind `Arc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(vars: Vec<String>, field: Field, order: MonomialOrder) -> Result<Arc<Ring>> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable required".into()));
        }
        for v in &vars {
            let mut chars = v.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
        }
        let mut sorted = vars.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(Error::InvalidRing("duplicate variable names".into()));
        }
        field.validate()?;
        order.validate(vars.len())?;
        Ok(Arc::new(Ring { vars, field, order }))
    }

    /// QQ[vars] with degrevlex, the default everywhere in this crate.
    pub fn rational(vars: &[&str]) -> Result<Arc<Ring>> {
        Ring::new(
            vars.iter().map(|s| s.to_string()).collect(),
            Field::Rationals,
            MonomialOrder::DegRevLex,
        )
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.arity(), self.arity());
        debug_assert_eq!(b.arity(), self.arity());
        self.order.cmp_slices(&a.0, &b.0)
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::new(self.vars.clone(), self.field.clone(), order)
    }

    /// Extends the ring by one fresh variable in front, ordered to eliminate
    /// it (block order with the fresh variable alone in the outer block).
    pub fn extend_for_elimination(&self) -> Arc<Ring> {
        let mut name = "t".to_string();
        let mut i = 0u32;
        while self.vars.contains(&name) {
            name = format!("t{i}");
            i += 1;
        }
        let mut vars = vec![name];
        vars.extend(self.vars.iter().cloned());
        let order = MonomialOrder::Block {
            split: 1,
            outer: Box::new(MonomialOrder::Lex),
            inner: Box::new(self.order.clone()),
        };
        Ring::new(vars, self.field.clone(), order).expect("extension of a valid ring is valid")
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 1 {
                parts.push(self.vars[i].clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.vars[i], e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] {}", self.field, self.vars.join(","), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn lex_prefers_leading_variable() {
        // x vs y^2 under lex(x > y)
        let ord = MonomialOrder::Lex;
        assert_eq!(
            cmp_monomials(&m(&[1, 0]), &m(&[0, 2]), &ord).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn degrevlex_total_degree_first() {
        let ord = MonomialOrder::DegRevLex;
        // x^3 vs y^2
        assert_eq!(
            cmp_monomials(&m(&[3, 0]), &m(&[0, 2]), &ord).unwrap(),
            Ordering::Greater
        );
        // x^2 vs x*y: difference (1, -1), last nonzero negative => greater
        assert_eq!(
            cmp_monomials(&m(&[2, 0]), &m(&[1, 1]), &ord).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn block_order_eliminates_first_variable() {
        let ord = MonomialOrder::Block {
            split: 1,
            outer: Box::new(MonomialOrder::Lex),
            inner: Box::new(MonomialOrder::DegRevLex),
        };
        // t beats any t-free monomial
        assert_eq!(
            cmp_monomials(&m(&[1, 0, 0]), &m(&[0, 5, 5]), &ord).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert!(cmp_monomials(&m(&[1]), &m(&[1, 0]), &MonomialOrder::Lex).is_err());
    }

    #[test]
    fn ring_rejects_duplicates() {
        assert!(Ring::rational(&["x", "x"]).is_err());
        assert!(Ring::rational(&[]).is_err());
        assert!(Ring::rational(&["x", "y"]).is_ok());
    }

    #[test]
    fn elimination_ring_avoids_name_clash() {
        let r = Ring::rational(&["t", "x"]).unwrap();
        let ext = r.extend_for_elimination();
        assert_eq!(ext.vars()[0], "t0");
        assert_eq!(ext.arity(), 3);
    }
}
