//! The ideal calculus: sum, product, power, intersection, colon, saturation,
//! equality, containment, and linear algebra on zero-dimensional quotients.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, normal_form, GroebnerBasis};
use crate::poly::Polynomial;
use crate::ring::{Monomial, MonomialOrder, Ring};
use crate::scalar::Scalar;

/// Iteration caps for the open-ended loops (saturation, multiplicity
/// search). Overridable from the CLI through `NILFILT_MAX_ITER`.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_iter: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_iter: 64 }
    }
}

/// A finitely generated ideal with a lazily computed canonical reduced
/// Groebner basis. Clones share the basis cache.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    gb: Arc<OnceLock<GroebnerBasis>>,
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            gb: Arc::new(OnceLock::new()),
        })
    }

    /// Parses generators from strings; convenience for tests and the CLI.
    pub fn parse(ring: &Arc<Ring>, gens: &[&str]) -> Result<Ideal> {
        let polys = gens
            .iter()
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("zero ideal")
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("unit ideal")
    }

    /// The maximal ideal generated by all variables.
    pub fn maximal(ring: &Arc<Ring>) -> Ideal {
        let gens = (0..ring.arity())
            .map(|i| Polynomial::var(ring, i))
            .collect();
        Ideal::new(ring, gens).expect("variable ideal")
    }

    fn from_gb(ring: &Arc<Ring>, gb: GroebnerBasis) -> Ideal {
        let cell = OnceLock::new();
        let gens = gb.elements().to_vec();
        let _ = cell.set(gb);
        Ideal {
            ring: ring.clone(),
            gens,
            gb: Arc::new(cell),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The canonical reduced Groebner basis, computed once and cached.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb
            .get_or_init(|| buchberger(&self.ring, &self.gens).expect("generators share the ring"))
    }

    pub fn is_zero(&self) -> bool {
        self.gb().is_zero_ideal()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit_ideal()
    }

    pub fn is_member(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.gb().normal_form(f)?.is_zero())
    }

    /// Every generator of `other` is a member of `self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        if other.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        for g in &other.gens {
            if !self.is_member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality through identical reduced bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if other.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.gb() == other.gb())
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal {
            ring: self.ring.clone(),
            gens: inter_reduce(&self.ring, gens)?,
            gb: Arc::new(OnceLock::new()),
        })
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ok(Ideal {
            ring: self.ring.clone(),
            gens: inter_reduce(&self.ring, gens)?,
            gb: Arc::new(OnceLock::new()),
        })
    }

    pub fn power(&self, k: u32) -> Result<Ideal> {
        if k == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Intersection through a fresh elimination variable t:
    /// I cap J = (t*I + (1-t)*J) cap R.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let ext = self.ring.extend_for_elimination();
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = Polynomial::one(&ext).sub(&t)?;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(t.mul(&lift(&ext, g))?);
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&lift(&ext, g))?);
        }
        let gb = buchberger(&ext, &gens)?;
        let kept: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|g| g.leading_monomial().map(|m| m.0[0] == 0).unwrap_or(false))
            .map(|g| project(&self.ring, g))
            .collect::<Result<Vec<_>>>()?;
        // The t-free part of the elimination basis is itself a reduced basis
        // for the intersection under the inner (ring) order.
        let inner = buchberger(&self.ring, &kept)?;
        Ok(Ideal::from_gb(&self.ring, inner))
    }

    /// Colon by a single polynomial: I : g = (1/g) (I cap <g>).
    pub fn colon_element(&self, g: &Polynomial) -> Result<Ideal> {
        if g.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Err(Error::ColonByZero);
        }
        let principal = Ideal::new(&self.ring, vec![g.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|h| h.div_exact(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal {
            ring: self.ring.clone(),
            gens: inter_reduce(&self.ring, gens)?,
            gb: Arc::new(OnceLock::new()),
        })
    }

    /// Ideal quotient I : J as the intersection of the colons by the
    /// generators of J.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let divisors: Vec<&Polynomial> = other.gens.iter().filter(|g| !g.is_zero()).collect();
        if divisors.is_empty() {
            return Err(Error::ColonByZero);
        }
        let mut acc: Option<Ideal> = None;
        for g in divisors {
            let part = self.colon_element(g)?;
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect(&part)?,
            });
        }
        Ok(acc.expect("at least one divisor"))
    }

    /// Saturation I : J^infinity by iterating the colon until stable.
    pub fn saturate(&self, other: &Ideal, limits: &Limits) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut current = self.clone();
        for _ in 0..limits.max_iter {
            let next = current.colon(other)?;
            if next.equals(&current)? {
                return Ok(current);
            }
            current = next;
        }
        Err(Error::CapExceeded {
            what: "saturation",
            cap: limits.max_iter,
        })
    }

    /// Leading monomials of the reduced basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb().leading_monomials().into_iter().cloned().collect()
    }

    fn zero_dim_bounds(&self) -> Result<Vec<u32>> {
        let gb = self.gb();
        if gb.is_unit_ideal() {
            return Ok(vec![0; self.ring.arity()]);
        }
        let leads = gb.leading_monomials();
        let mut bounds = vec![None; self.ring.arity()];
        for m in &leads {
            if let Some(i) = m.pure_power() {
                let d = m.0[i];
                if bounds[i].is_none_or(|b| d < b) {
                    bounds[i] = Some(d);
                }
            }
        }
        bounds
            .into_iter()
            .enumerate()
            .map(|(i, b)| {
                b.ok_or_else(|| Error::NotZeroDimensional {
                    var: self.ring.vars()[i].clone(),
                })
            })
            .collect()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.zero_dim_bounds().is_ok()
    }

    /// Standard monomials (those outside the leading-term ideal), sorted
    /// ascending. Defined only for zero-dimensional quotients.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let bounds = self.zero_dim_bounds()?;
        let leads: Vec<Monomial> = self.leading_monomials();
        let arity = self.ring.arity();
        let mut out = Vec::new();
        let mut current = vec![0u32; arity];
        loop {
            let m = Monomial(current.clone());
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            // odometer over the box [0, bounds)
            let mut i = 0;
            loop {
                if i == arity {
                    out.sort_by(|a, b| self.ring.cmp(a, b));
                    return Ok(out);
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

    /// dim_k R/I for zero-dimensional I.
    pub fn quotient_dim(&self) -> Result<usize> {
        Ok(self.standard_monomials()?.len())
    }

    pub fn quotient_basis(&self) -> Result<QuotientBasis> {
        let monomials = self.standard_monomials()?;
        Ok(QuotientBasis {
            ideal: self.clone(),
            monomials,
        })
    }

    /// Canonical printed form of the reduced basis, one string per element.
    pub fn canonical_gens(&self) -> Vec<String> {
        let gb = self.gb();
        if gb.is_zero_ideal() {
            return vec!["0".to_string()];
        }
        gb.elements().iter().map(|g| g.to_string()).collect()
    }

    pub fn canonical_string(&self) -> String {
        format!("({})", self.canonical_gens().join(", "))
    }
}

fn lift(ext: &Arc<Ring>, f: &Polynomial) -> Polynomial {
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut e = vec![0u32];
            e.extend_from_slice(&m.0);
            (Monomial(e), c.clone())
        })
        .collect();
    Polynomial::from_terms(ext, terms)
}

fn project(ring: &Arc<Ring>, f: &Polynomial) -> Result<Polynomial> {
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| {
            debug_assert_eq!(m.0[0], 0, "projected element must be free of t");
            (Monomial(m.0[1..].to_vec()), c.clone())
        })
        .collect();
    Ok(Polynomial::from_terms(ring, terms))
}

/// Reduces every generator against the others until stable; drops zeros.
/// Controls generator growth after sums, products and powers. Sets of pure
/// terms (the common case along the chains) are minimalized directly by
/// divisibility.
fn inter_reduce(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let mut list: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    let sort = |list: &mut Vec<Polynomial>| {
        list.sort_by(|a: &Polynomial, b: &Polynomial| {
            ring.cmp(
                a.leading_monomial().expect("nonzero"),
                b.leading_monomial().expect("nonzero"),
            )
        })
    };

    if list.iter().all(|g| g.terms().len() == 1) {
        let mut monos: Vec<Monomial> = list.iter().map(|g| g.terms()[0].0.clone()).collect();
        monos.sort_by_key(|m| m.total_degree());
        let mut kept: Vec<Monomial> = Vec::new();
        for m in monos {
            if !kept.iter().any(|k| k.divides(&m)) {
                kept.push(m);
            }
        }
        let mut out: Vec<Polynomial> = kept
            .into_iter()
            .map(|m| Polynomial::term(ring, m, ring.field().one()))
            .collect();
        sort(&mut out);
        return Ok(out);
    }

    // General case: cycle through the list, reducing each element against
    // the rest, until a full round leaves everything fixed.
    let mut since_change = 0usize;
    while !list.is_empty() && since_change < list.len() {
        let g = list.remove(0);
        let reduced = normal_form(&g, &list)?;
        let unchanged = reduced == g;
        if !reduced.is_zero() {
            list.push(reduced);
        }
        if unchanged {
            since_change += 1;
        } else {
            since_change = 0;
        }
    }
    sort(&mut list);
    Ok(list)
}

/// dim_k A/B for B contained in A, both with zero-dimensional quotients.
/// The containment is checked; a violation is an error, not a negative.
pub fn subquotient_dim(big: &Ideal, small: &Ideal) -> Result<usize> {
    if !big.contains(small)? {
        return Err(Error::ContainmentFailed(format!(
            "{} does not contain {}",
            big.canonical_string(),
            small.canonical_string()
        )));
    }
    let d_small = small.quotient_dim()?;
    let d_big = big.quotient_dim()?;
    Ok(d_small - d_big)
}

/// Standard-monomial basis of a zero-dimensional quotient R/I with exact
/// coordinate extraction.
#[derive(Debug, Clone)]
pub struct QuotientBasis {
    ideal: Ideal,
    monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Coordinates of the class of `f` in the standard-monomial basis.
    pub fn coordinates(&self, f: &Polynomial) -> Result<Vec<Scalar>> {
        let nf = self.ideal.gb().normal_form(f)?;
        let field = self.ideal.ring.field();
        let mut coords = vec![field.zero(); self.monomials.len()];
        for (m, c) in nf.terms() {
            let idx = self
                .monomials
                .iter()
                .position(|b| b == m)
                .expect("normal form is supported on standard monomials");
            coords[idx] = c.clone();
        }
        Ok(coords)
    }
}

/// A basis of the subquotient A/B (for B contained in A) indexed by
/// monomials: the standard monomials of B that are not standard for A. The
/// representative attached to the index monomial s is s - NF(s, A), an
/// element of A whose class has coordinate 1 at s and 0 at every other
/// index monomial.
#[derive(Debug, Clone)]
pub struct SubquotientBasis {
    big: Ideal,
    small: Ideal,
    monomials: Vec<Monomial>,
    reps: Vec<Polynomial>,
}

impl SubquotientBasis {
    pub fn new(big: &Ideal, small: &Ideal) -> Result<SubquotientBasis> {
        if !big.contains(small)? {
            return Err(Error::ContainmentFailed(format!(
                "{} does not contain {}",
                big.canonical_string(),
                small.canonical_string()
            )));
        }
        let std_small = small.standard_monomials()?;
        let std_big = big.standard_monomials()?;
        let monomials: Vec<Monomial> = std_small
            .iter()
            .filter(|m| !std_big.contains(m))
            .cloned()
            .collect();
        let ring = big.ring().clone();
        let reps = monomials
            .iter()
            .map(|m| {
                let mono = Polynomial::term(&ring, m.clone(), ring.field().one());
                let tail = big.gb().normal_form(&mono)?;
                mono.sub(&tail)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SubquotientBasis {
            big: big.clone(),
            small: small.clone(),
            monomials,
            reps,
        })
    }

    pub fn big(&self) -> &Ideal {
        &self.big
    }

    pub fn small(&self) -> &Ideal {
        &self.small
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn representative(&self, idx: usize) -> &Polynomial {
        &self.reps[idx]
    }

    /// Coordinates of the class of `a` (a member of A) with respect to this
    /// basis: the coefficients of NF(a, B) at the index monomials.
    pub fn coordinates(&self, a: &Polynomial) -> Result<Vec<Scalar>> {
        if !self.big.is_member(a)? {
            return Err(Error::NotAMember(a.to_string()));
        }
        let nf = self.small.gb().normal_form(a)?;
        let field = self.big.ring().field();
        let mut coords = vec![field.zero(); self.monomials.len()];
        for (m, c) in nf.terms() {
            if let Some(idx) = self.monomials.iter().position(|b| b == m) {
                coords[idx] = c.clone();
            }
        }
        Ok(coords)
    }

    /// Lifts a coordinate vector to an actual element of A through the
    /// stored representatives.
    pub fn lift(&self, coords: &[Scalar]) -> Result<Polynomial> {
        let ring = self.big.ring();
        let mut acc = Polynomial::zero(ring);
        for (c, rep) in coords.iter().zip(&self.reps) {
            if !c.is_zero() {
                acc = acc.add(&rep.scale(c))?;
            }
        }
        Ok(acc)
    }
}

/// Recomputes both ideals under another monomial order; used by the
/// order-independence tests.
pub fn reorder_ideal(ideal: &Ideal, order: MonomialOrder) -> Result<Ideal> {
    let ring = ideal.ring().with_order(order)?;
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.reorder(&ring))
        .collect::<Vec<_>>();
    Ideal::new(&ring, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::rational(vars).unwrap()
    }

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
        Ideal::parse(r, gens).unwrap()
    }

    fn rat(n: i64) -> Scalar {
        crate::scalar::Field::Rationals.from_i64(n)
    }

    #[test]
    fn sum_product_power() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, &["x", "y"]);
        assert!(i
            .power(2)
            .unwrap()
            .equals(&ideal(&r, &["x^2", "x*y", "y^2"]))
            .unwrap());
        assert!(ideal(&r, &["x"])
            .sum(&ideal(&r, &["y"]))
            .unwrap()
            .equals(&ideal(&r, &["x", "y"]))
            .unwrap());
        let p = i.product(&ideal(&r, &["x^2", "x*y", "y^2", "z"])).unwrap();
        let expected = ideal(&r, &["x^3", "x^2*y", "x*y^2", "y^3", "x*z", "y*z"]);
        assert!(p.equals(&expected).unwrap());
        assert!(i.power(0).unwrap().is_unit());
    }

    #[test]
    fn intersection_examples() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, &["x^2", "y"]);
        let b = ideal(&r, &["x", "y^3"]);
        assert!(a
            .intersect(&b)
            .unwrap()
            .equals(&ideal(&r, &["x^2", "x*y", "y^3"]))
            .unwrap());
        let i = ideal(&r, &["x^2", "x*y"]);
        assert!(i.intersect(&i).unwrap().equals(&i).unwrap());
        assert!(ideal(&r, &["x"])
            .intersect(&ideal(&r, &["y"]))
            .unwrap()
            .equals(&ideal(&r, &["x*y"]))
            .unwrap());
    }

    #[test]
    fn colon_examples() {
        let r3 = ring(&["x", "y", "z"]);
        let j = ideal(&r3, &["y^2 + x^3", "x*y", "z"]);
        let i = Ideal::maximal(&r3);
        let q = j.colon(&i).unwrap();
        assert!(q.equals(&ideal(&r3, &["x^3", "x*y", "y^2", "z"])).unwrap());

        let r2 = ring(&["x", "y"]);
        let j2 = ideal(&r2, &["x^3", "x*y", "y^4"]);
        let q2 = j2.colon(&ideal(&r2, &["x", "y"])).unwrap();
        assert!(q2.equals(&ideal(&r2, &["x^2", "x*y", "y^3"])).unwrap());

        let any = ideal(&r2, &["x^2 - y"]);
        assert!(any.colon(&Ideal::unit(&r2)).unwrap().equals(&any).unwrap());
        assert!(any.colon(&Ideal::zero(&r2)).is_err());
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x", "y"]);
        let lim = Limits::default();
        let i = ideal(&r, &["x^2", "x*y"]);
        assert!(i
            .saturate(&ideal(&r, &["y"]), &lim)
            .unwrap()
            .equals(&ideal(&r, &["x"]))
            .unwrap());
        assert!(i.saturate(&ideal(&r, &["x"]), &lim).unwrap().is_unit());
        assert!(i
            .saturate(&Ideal::unit(&r), &lim)
            .unwrap()
            .equals(&i)
            .unwrap());
        // an exhausted cap is a diagnosable error
        let tight = Limits { max_iter: 1 };
        assert!(matches!(
            i.saturate(&ideal(&r, &["y"]), &tight),
            Err(crate::error::Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn ideals_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Ideal>();
        assert_send_sync::<Polynomial>();
        assert_send_sync::<crate::groebner::GroebnerBasis>();
        assert_send_sync::<QuotientBasis>();

        // racing basis computations resolve to one canonical value
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["y^2 + x^3", "x*y"]);
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let shared = i.clone();
                std::thread::spawn(move || shared.gb().elements().len())
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), 3);
        }
    }

    #[test]
    fn equality_and_containment() {
        let r = ring(&["x", "y"]);
        assert!(ideal(&r, &["x", "y"])
            .equals(&ideal(&r, &["y", "x"]))
            .unwrap());
        assert!(ideal(&r, &["x", "y^2"])
            .contains(&ideal(&r, &["x^2", "x*y", "y^2"]))
            .unwrap());
        assert!(!ideal(&r, &["x^2", "x*y", "y^2"])
            .contains(&ideal(&r, &["x", "y^2"]))
            .unwrap());
        assert!(ideal(&r, &["x"]).is_member(&Polynomial::zero(&r)).unwrap());
        // x^2 is standard for (x^3, x*y, y^4), hence not a member
        assert!(!ideal(&r, &["x^3", "x*y", "y^4"])
            .is_member(&Polynomial::parse(&r, "x^2").unwrap())
            .unwrap());
    }

    #[test]
    fn quotient_dimensions() {
        let r = ring(&["x", "y"]);
        assert_eq!(ideal(&r, &["x^3", "x*y", "y^4"]).quotient_dim().unwrap(), 6);
        assert_eq!(ideal(&r, &["y^2 + x^3", "x*y"]).quotient_dim().unwrap(), 5);
        assert_eq!(ideal(&r, &["x", "y"]).quotient_dim().unwrap(), 1);
        assert!(ideal(&r, &["x"]).quotient_dim().is_err());
        assert_eq!(Ideal::unit(&r).quotient_dim().unwrap(), 0);
    }

    #[test]
    fn subquotient_dimensions() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, &["x", "y"]);
        let b = ideal(&r, &["x^2", "x*y", "y^2"]);
        assert_eq!(subquotient_dim(&a, &b).unwrap(), 2);
        assert_eq!(subquotient_dim(&a, &a).unwrap(), 0);
        let a2 = ideal(&r, &["x", "y^2"]);
        assert_eq!(subquotient_dim(&a2, &b).unwrap(), 1);
        // containment violation is an error
        assert!(subquotient_dim(&b, &a).is_err());
    }

    #[test]
    fn quotient_basis_coordinates() {
        let r = ring(&["x", "y"]);
        let q = ideal(&r, &["x^2", "x*y", "y^2"]).quotient_basis().unwrap();
        assert_eq!(q.dim(), 3);
        let f = Polynomial::parse(&r, "3*x + 2").unwrap();
        let coords = q.coordinates(&f).unwrap();
        let names: Vec<String> = q.monomials().iter().map(|m| r.format_monomial(m)).collect();
        let at = |n: &str| coords[names.iter().position(|s| s == n).unwrap()].clone();
        assert_eq!(at("1"), rat(2));
        assert_eq!(at("x"), rat(3));
        assert_eq!(at("y"), rat(0));

        let q2 = ideal(&r, &["y^2 + x^3", "x*y"]).quotient_basis().unwrap();
        assert_eq!(q2.dim(), 5);
        let c = q2
            .coordinates(&Polynomial::parse(&r, "y^2").unwrap())
            .unwrap();
        let names2: Vec<String> = q2
            .monomials()
            .iter()
            .map(|m| r.format_monomial(m))
            .collect();
        for (name, val) in names2.iter().zip(&c) {
            if name == "y^2" {
                assert!(val.is_one());
            } else {
                assert!(val.is_zero());
            }
        }
        let zero_coords = q2.coordinates(&Polynomial::zero(&r)).unwrap();
        assert!(zero_coords.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn subquotient_basis_reps() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, &["x", "y"]);
        let b = ideal(&r, &["x^2", "x*y", "y^2"]);
        let sq = SubquotientBasis::new(&a, &b).unwrap();
        assert_eq!(sq.dim(), 2);
        // index monomials are x and y themselves
        let names: Vec<String> = sq
            .monomials()
            .iter()
            .map(|m| r.format_monomial(m))
            .collect();
        assert!(names.contains(&"x".to_string()) && names.contains(&"y".to_string()));
        // coordinates of x + 2y
        let f = Polynomial::parse(&r, "x + 2*y").unwrap();
        let coords = sq.coordinates(&f).unwrap();
        let lifted = sq.lift(&coords).unwrap();
        // lift - f lies in B
        assert!(b.is_member(&lifted.sub(&f).unwrap()).unwrap());
        // non-members are rejected
        assert!(sq.coordinates(&Polynomial::one(&r)).is_err());
    }
}
