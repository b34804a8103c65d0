//! Normal forms and reduced Groebner bases.
//!
//! The reduced basis is the canonical witness for every ideal identity in
//! this crate: two ideals are equal iff their reduced bases agree as lists.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};

/// A reduced Groebner basis: monic elements, no term of any element
/// divisible by the leading monomial of another, sorted ascending by
/// leading monomial. Canonical for the ideal and the ring order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().expect("basis elements are nonzero"))
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.elements)
    }
}

/// Fully reduces `f` against `basis`: repeatedly replaces the largest
/// reducible term using the first basis element whose leading monomial
/// divides it. Deterministic given the basis order.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    let ring = f.ring().clone();
    for g in basis {
        if g.ring() != &ring {
            return Err(Error::RingMismatch);
        }
    }
    let field = ring.field();
    let leads: Vec<(&Monomial, &crate::scalar::Scalar)> = basis
        .iter()
        .map(|g| g.leading_term())
        .collect::<Result<_>>()?;
    let mut rem = f.clone();
    'outer: loop {
        for (mono, coef) in rem.terms().iter() {
            for (g, (glm, glc)) in basis.iter().zip(&leads) {
                if let Some(q) = glm.div_into(mono) {
                    let factor = field.div(coef, glc)?;
                    rem = rem.sub(&g.mul_term(&q, &factor))?;
                    continue 'outer;
                }
            }
        }
        return Ok(rem);
    }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let field = f.ring().field();
    let (flm, flc) = f.leading_term()?;
    let (glm, glc) = g.leading_term()?;
    let lcm = flm.lcm(glm);
    let mf = flm.div_into(&lcm).expect("lcm is divisible by both");
    let mg = glm.div_into(&lcm).expect("lcm is divisible by both");
    let a = f.mul_term(&mf, &field.inv(flc)?);
    let b = g.mul_term(&mg, &field.inv(glc)?);
    a.sub(&b)
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// degree first) and the product and chain criteria, followed by
/// minimalization and full inter-reduction.
pub fn buchberger(ring: &Arc<Ring>, generators: &[Polynomial]) -> Result<GroebnerBasis> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    for g in generators {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
    }
    let mut basis: Vec<Polynomial> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    if basis.is_empty() {
        return Ok(GroebnerBasis {
            ring: ring.clone(),
            elements: Vec::new(),
        });
    }

    let lm = |p: &Polynomial| p.leading_monomial().expect("nonzero").clone();

    // Normal strategy through a min-heap keyed by (lcm degree, lcm, pair);
    // the exponent-vector tie-break keeps runs reproducible.
    let mut pairs: BinaryHeap<Reverse<(u32, Monomial, usize, usize)>> = BinaryHeap::new();
    let push_pairs = |pairs: &mut BinaryHeap<Reverse<(u32, Monomial, usize, usize)>>,
                      basis: &[Polynomial],
                      upto: usize| {
        let new_lm = lm(&basis[upto]);
        for (i, g) in basis.iter().enumerate().take(upto) {
            let l = lm(g).lcm(&new_lm);
            pairs.push(Reverse((l.total_degree(), l, i, upto)));
        }
    };
    for j in 1..basis.len() {
        push_pairs(&mut pairs, &basis, j);
    }
    let mut treated: HashSet<(usize, usize)> = HashSet::new();

    while let Some(Reverse((_, lcm, i, j))) = pairs.pop() {
        treated.insert((i, j));
        // Two single terms subtract to zero after normalization.
        if basis[i].terms().len() == 1 && basis[j].terms().len() == 1 {
            continue;
        }
        // Product criterion: coprime leading monomials reduce to zero.
        if lm(&basis[i]).coprime(&lm(&basis[j])) {
            continue;
        }
        // Chain criterion: some k with lm_k | lcm and both (i,k), (k,j)
        // already treated makes this pair redundant.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&lcm)
                && treated.contains(&norm_pair(i, k))
                && treated.contains(&norm_pair(k, j))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j])?;
        let rem = normal_form(&s, &basis)?;
        if !rem.is_zero() {
            basis.push(rem.monic()?);
            push_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by the
    // leading monomial of another kept element.
    basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in &basis {
        let glm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(glm))
        {
            minimal.push(g.monic()?);
        }
    }

    // Inter-reduce tails: rotate through the list until a full round leaves
    // every element fixed.
    let mut since_change = 0usize;
    while !minimal.is_empty() && since_change < minimal.len() {
        let g = minimal.remove(0);
        let reduced = normal_form(&g, &minimal)?;
        let unchanged = reduced == g;
        if !reduced.is_zero() {
            minimal.push(reduced.monic()?);
        }
        if unchanged {
            since_change += 1;
        } else {
            since_change = 0;
        }
    }
    minimal.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    Ok(GroebnerBasis {
        ring: ring.clone(),
        elements: minimal,
    })
}

fn norm_pair(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}
