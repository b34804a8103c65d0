//! Shared helpers for the integration suites: a naive S-polynomial fixpoint
//! (the independent Groebner oracle) and seeded random generators.
#![allow(dead_code)] // each test binary uses a different subset

use std::sync::Arc;

use nilfilt::{Ideal, Monomial, Polynomial, Ring, Scalar};
use rand::Rng;

/// Fully reduces `f` against `basis` by leading terms only, scanning all
/// terms. Independent of the engine's normal-form routine.
pub fn naive_reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut rem = f.clone();
    'outer: loop {
        for (mono, coef) in rem.terms().to_vec() {
            for g in basis {
                if g.is_zero() {
                    continue;
                }
                let (glm, glc) = g.leading_term().unwrap();
                if let Some(q) = glm.div_into(&mono) {
                    let factor = field.div(&coef, glc).unwrap();
                    rem = rem.sub(&g.mul_term(&q, &factor)).unwrap();
                    continue 'outer;
                }
            }
        }
        return rem;
    }
}

/// The plainest possible Buchberger loop: all pairs, no criteria, then
/// minimalization and inter-reduction. Used as the fixpoint oracle.
pub fn naive_groebner(ring: &Arc<Ring>, gens: &[Polynomial]) -> Vec<Polynomial> {
    let field = ring.field();
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    loop {
        let mut additions = Vec::new();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let (flm, flc) = basis[i].leading_term().unwrap();
                let (glm, glc) = basis[j].leading_term().unwrap();
                let l = flm.lcm(glm);
                let a = basis[i].mul_term(&flm.div_into(&l).unwrap(), &field.inv(flc).unwrap());
                let b = basis[j].mul_term(&glm.div_into(&l).unwrap(), &field.inv(glc).unwrap());
                let s = a.sub(&b).unwrap();
                let rem = naive_reduce(&s, &basis);
                if !rem.is_zero() {
                    additions.push(rem);
                }
            }
        }
        if additions.is_empty() {
            break;
        }
        for a in additions {
            let rem = naive_reduce(&a, &basis);
            if !rem.is_zero() {
                basis.push(rem.monic().unwrap());
            }
        }
    }
    // minimalize
    basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in &basis {
        let glm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(glm))
        {
            minimal.push(g.monic().unwrap());
        }
    }
    // inter-reduce
    loop {
        let mut changed = false;
        for idx in 0..minimal.len() {
            let g = minimal[idx].clone();
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .map(|(_, h)| h.clone())
                .collect();
            let red = naive_reduce(&g, &others);
            if red != g {
                changed = true;
                if red.is_zero() {
                    minimal.remove(idx);
                } else {
                    minimal[idx] = red.monic().unwrap();
                }
                break;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    minimal
}

pub fn random_monomial<R: Rng>(rng: &mut R, arity: usize, max_deg: u32) -> Monomial {
    loop {
        let exps: Vec<u32> = (0..arity).map(|_| rng.gen_range(0..=max_deg)).collect();
        if exps.iter().sum::<u32>() <= max_deg + 1 {
            return Monomial(exps);
        }
    }
}

pub fn random_scalar<R: Rng>(rng: &mut R, ring: &Arc<Ring>) -> Scalar {
    let field = ring.field();
    field
        .ratio(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=4))
        .unwrap()
}

pub fn random_poly<R: Rng>(
    rng: &mut R,
    ring: &Arc<Ring>,
    max_terms: usize,
    max_deg: u32,
) -> Polynomial {
    let nterms = rng.gen_range(1..=max_terms);
    let terms: Vec<(Monomial, Scalar)> = (0..nterms)
        .map(|_| {
            (
                random_monomial(rng, ring.arity(), max_deg),
                random_scalar(rng, ring),
            )
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

pub fn random_poly_ideal<R: Rng>(
    rng: &mut R,
    ring: &Arc<Ring>,
    max_gens: usize,
    max_deg: u32,
) -> Ideal {
    let ngens = rng.gen_range(1..=max_gens);
    let gens = (0..ngens)
        .map(|_| random_poly(rng, ring, 3, max_deg))
        .collect();
    Ideal::new(ring, gens).unwrap()
}

pub fn random_mono_exponents<R: Rng>(
    rng: &mut R,
    arity: usize,
    max_deg: u32,
    max_gens: usize,
) -> Vec<Vec<u32>> {
    let ngens = rng.gen_range(1..=max_gens);
    (0..ngens)
        .map(|_| {
            (0..arity)
                .map(|_| rng.gen_range(0..=max_deg))
                .collect::<Vec<u32>>()
        })
        .filter(|g| g.iter().any(|&e| e > 0))
        .collect()
}
