//! Exhaustive divisibility-based arithmetic for monomial ideals.
//!
//! This is the independent cross-check for the Groebner-backed ideal
//! calculus: every operation here is computed straight from the definitions
//! by enumerating exponent vectors, with no normal forms and no bases. It
//! deliberately shares nothing with the `groebner`/`ideal` code paths.

use crate::ring::Monomial;

/// A monomial ideal given by generators as exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoIdeal {
    arity: usize,
    gens: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

impl MonoIdeal {
    pub fn new(arity: usize, gens: Vec<Vec<u32>>) -> MonoIdeal {
        let mut ideal = MonoIdeal { arity, gens };
        ideal.minimalize();
        ideal
    }

    pub fn unit(arity: usize) -> MonoIdeal {
        MonoIdeal::new(arity, vec![vec![0; arity]])
    }

    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    fn minimalize(&mut self) {
        let mut kept: Vec<Vec<u32>> = Vec::new();
        let mut gens = self.gens.clone();
        gens.sort();
        gens.dedup();
        for g in gens {
            if !kept.iter().any(|h| divides(h, &g)) {
                kept.retain(|h| !divides(&g, h));
                kept.push(g);
            }
        }
        kept.sort();
        self.gens = kept;
    }

    pub fn contains_monomial(&self, m: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, m))
    }

    pub fn contains(&self, other: &MonoIdeal) -> bool {
        other.gens.iter().all(|g| self.contains_monomial(g))
    }

    pub fn equals(&self, other: &MonoIdeal) -> bool {
        self.gens == other.gens
    }

    pub fn sum(&self, other: &MonoIdeal) -> MonoIdeal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonoIdeal::new(self.arity, gens)
    }

    pub fn product(&self, other: &MonoIdeal) -> MonoIdeal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        MonoIdeal::new(self.arity, gens)
    }

    pub fn intersect(&self, other: &MonoIdeal) -> MonoIdeal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(lcm(a, b));
            }
        }
        MonoIdeal::new(self.arity, gens)
    }

    /// Colon by a single monomial: generated by g / gcd(g, m).
    pub fn colon_monomial(&self, m: &[u32]) -> MonoIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| g.iter().zip(m).map(|(e, d)| e.saturating_sub(*d)).collect())
            .collect();
        MonoIdeal::new(self.arity, gens)
    }

    pub fn colon(&self, other: &MonoIdeal) -> MonoIdeal {
        let mut acc: Option<MonoIdeal> = None;
        for g in &other.gens {
            let part = self.colon_monomial(g);
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect(&part),
            });
        }
        acc.expect("colon by the zero ideal")
    }

    pub fn saturate(&self, other: &MonoIdeal) -> MonoIdeal {
        let mut current = self.clone();
        loop {
            let next = current.colon(other);
            if next.equals(&current) {
                return current;
            }
            current = next;
        }
    }

    /// Counts the monomials outside the ideal; None when infinite.
    pub fn standard_count(&self) -> Option<usize> {
        if self.is_unit() {
            return Some(0);
        }
        let mut bounds = vec![None; self.arity];
        for g in &self.gens {
            let support: Vec<usize> = (0..self.arity).filter(|&i| g[i] > 0).collect();
            if support.len() == 1 {
                let i = support[0];
                if bounds[i].is_none_or(|b| g[i] < b) {
                    bounds[i] = Some(g[i]);
                }
            }
        }
        let bounds: Option<Vec<u32>> = bounds.into_iter().collect();
        let bounds = bounds?;
        let mut count = 0usize;
        let mut current = vec![0u32; self.arity];
        loop {
            if !self.contains_monomial(&current) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == self.arity {
                    return Some(count);
                }
                if bounds[i] == 0 {
                    i += 1;
                    continue;
                }
                current[i] += 1;
                if current[i] < bounds[i] {
                    break;
                }
                current[i] = 0;
                i += 1;
            }
        }
    }

    /// Generators as `Monomial` values, for handing to the engine.
    pub fn monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| Monomial(g.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_generators() {
        let i = MonoIdeal::new(2, vec![vec![2, 0], vec![3, 0], vec![1, 1], vec![2, 1]]);
        assert_eq!(i.gens(), &[vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn colon_and_saturation() {
        // (x^2, xy) : y = (x)
        let i = MonoIdeal::new(2, vec![vec![2, 0], vec![1, 1]]);
        let sat = i.saturate(&MonoIdeal::new(2, vec![vec![0, 1]]));
        assert_eq!(sat.gens(), &[vec![1, 0]]);
        let unit = i.saturate(&MonoIdeal::new(2, vec![vec![1, 0]]));
        assert!(unit.is_unit());
    }

    #[test]
    fn standard_counts() {
        let i = MonoIdeal::new(2, vec![vec![3, 0], vec![1, 1], vec![0, 4]]);
        assert_eq!(i.standard_count(), Some(6));
        let not_finite = MonoIdeal::new(2, vec![vec![1, 0]]);
        assert_eq!(not_finite.standard_count(), None);
    }
}
