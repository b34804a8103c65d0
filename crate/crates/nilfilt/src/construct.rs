//! Step-by-step synthesis of cuspidal ideals from functional choices.
//!
//! Working over R = k[x, y, z1..zr] with the maximal ideal I, the engine
//! builds a descending chain J2 ⊃ J3 ⊃ ... ⊃ J_(n+1) (and the companion
//! chain I2, I3, ...) where every step passes to the kernel of a chosen
//! functional on a finite-dimensional subquotient such as J_(l-1)/I*J_(l-1).
//! In this local trivialization every bundle is free, so a functional is a
//! row (or two rows) of scalars indexed by the standard-monomial basis of
//! its source. Each step validates the surjectivity, retract and
//! commuting-diagram constraints before committing, and the run ends by
//! checking the resulting ideal against the expected chain tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filtration::{
    cuspidal_model, verify_against, CuspidalType, FiltrationReport, LocalModel,
};
use crate::ideal::{subquotient_dim, Ideal, Limits, SubquotientBasis};
use crate::linalg;
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};
use crate::scalar::Scalar;

/// Scalar rows indexed by basis monomials of the source subquotient. The
/// number of rows is the rank of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalSpec {
    pub rows: Vec<BTreeMap<Monomial, Scalar>>,
}

impl FunctionalSpec {
    pub fn single(row: BTreeMap<Monomial, Scalar>) -> FunctionalSpec {
        FunctionalSpec { rows: vec![row] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn row_vector(
        &self,
        row: usize,
        basis: &SubquotientBasis,
        ring: &Arc<Ring>,
    ) -> Result<Vec<Scalar>> {
        let field = ring.field();
        let mut v = vec![field.zero(); basis.dim()];
        for (m, c) in &self.rows[row] {
            let Some(idx) = basis.monomials().iter().position(|b| b == m) else {
                return Err(Error::OutOfRange(format!(
                    "`{}` is not a basis monomial of the source quotient (basis: {})",
                    ring.format_monomial(m),
                    format_basis(basis, ring)
                )));
            };
            v[idx] = c.clone();
        }
        Ok(v)
    }

    fn matrix(&self, basis: &SubquotientBasis, ring: &Arc<Ring>) -> Result<Vec<Vec<Scalar>>> {
        (0..self.rows.len())
            .map(|r| self.row_vector(r, basis, ring))
            .collect()
    }
}

/// Per-step functional data used by `construct_run`.
#[derive(Debug, Clone)]
pub enum StepFunctionals {
    /// Step 2 carries the rank-two functional and its rank-one companion.
    Step2 {
        p: FunctionalSpec,
        q: FunctionalSpec,
    },
    /// Every later step carries a single functional.
    P { p: FunctionalSpec },
}

/// Functional overrides keyed by step level; missing levels use defaults.
#[derive(Debug, Clone, Default)]
pub struct Functionals {
    pub steps: BTreeMap<u32, StepFunctionals>,
}

/// What produced each chain entry; part of the reproducible run report.
#[derive(Debug, Clone)]
pub struct StepLog {
    pub level: u32,
    pub stage: &'static str,
    pub basis: Vec<String>,
    pub rows: Vec<String>,
    pub j_ideal: String,
    pub i_ideal: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Step2,
    /// Rank-one target on both sides.
    Middle,
    /// The rank-two F target in degree two (third type only). When the
    /// companion chain also drops by two (n = 4) the flag is set.
    FStep {
        merged: bool,
    },
    /// The rank-two companion target in degree n-1 (third type only).
    FPrime,
    /// The step identifying both chains: J_n = I_n.
    StepN {
        with_diagram: bool,
    },
    Final,
}

fn step_shape(mtype: CuspidalType, n: u32, level: u32) -> Result<Shape> {
    if level < 2 || level > n + 1 {
        return Err(Error::OutOfRange(format!(
            "step level {level} outside 2..={}",
            n + 1
        )));
    }
    if level == 2 {
        return Ok(Shape::Step2);
    }
    if level == n + 1 {
        return Ok(Shape::Final);
    }
    Ok(match mtype {
        CuspidalType::C2 => {
            if level == n {
                Shape::StepN {
                    with_diagram: n == 3,
                }
            } else {
                Shape::Middle
            }
        }
        CuspidalType::C3 => {
            if level == 3 {
                Shape::FStep { merged: n == 4 }
            } else if level == n {
                Shape::StepN {
                    with_diagram: false,
                }
            } else if level == n - 1 {
                Shape::FPrime
            } else {
                Shape::Middle
            }
        }
    })
}

/// The chain state threaded through the steps.
#[derive(Debug, Clone)]
pub struct ConstructionState {
    mtype: CuspidalType,
    n: u32,
    r: u32,
    ring: Arc<Ring>,
    support: Ideal,
    /// j_chain[k] = J_(k+2)
    j_chain: Vec<Ideal>,
    /// i_chain[k] = I_(k+2)
    i_chain: Vec<Ideal>,
    level: u32,
    pub log: Vec<StepLog>,
}

impl ConstructionState {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn support(&self) -> &Ideal {
        &self.support
    }

    pub fn mtype(&self) -> CuspidalType {
        self.mtype
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// The level of the next pending step (2 ..= n+1; n+2 when finished).
    pub fn next_level(&self) -> u32 {
        self.level
    }

    pub fn j_at(&self, level: u32) -> Option<&Ideal> {
        if level == 1 {
            return Some(&self.support);
        }
        self.j_chain.get((level as usize).checked_sub(2)?)
    }

    pub fn i_at(&self, level: u32) -> Option<&Ideal> {
        if level == 1 {
            return Some(&self.support);
        }
        self.i_chain.get((level as usize).checked_sub(2)?)
    }

    fn err(&self, stage: &'static str, reason: impl Into<String>) -> Error {
        Error::Step {
            level: self.level,
            stage,
            reason: reason.into(),
        }
    }

    fn x_power(&self, e: u32) -> Polynomial {
        let mut exp = vec![0u32; self.ring.arity()];
        exp[0] = e;
        Polynomial::term(&self.ring, Monomial(exp), self.ring.field().one())
    }

    fn y_power(&self, e: u32) -> Polynomial {
        let mut exp = vec![0u32; self.ring.arity()];
        exp[1] = e;
        Polynomial::term(&self.ring, Monomial(exp), self.ring.field().one())
    }
}

pub fn construct_init(mtype: CuspidalType, n: u32, r: u32) -> Result<ConstructionState> {
    if n < mtype.min_n() {
        return Err(Error::OutOfRange(format!(
            "n = {n} is below the admissible range (n >= {})",
            mtype.min_n()
        )));
    }
    let mut names: Vec<String> = vec!["x".into(), "y".into()];
    for k in 1..=r {
        names.push(format!("z{k}"));
    }
    let ring = Ring::new(
        names,
        crate::scalar::Field::Rationals,
        crate::ring::MonomialOrder::DegRevLex,
    )?;
    let support = Ideal::maximal(&ring);
    Ok(ConstructionState {
        mtype,
        n,
        r,
        ring,
        support,
        j_chain: Vec::new(),
        i_chain: Vec::new(),
        level: 2,
        log: Vec::new(),
    })
}

/// The default functionals: a unit on the designated power class, the sign
/// on the final step chosen so the run terminates in y^t + x^n exactly.
pub fn default_functionals(
    mtype: CuspidalType,
    n: u32,
    level: u32,
    ring: &Arc<Ring>,
) -> Result<StepFunctionals> {
    let one = ring.field().one();
    let minus_one = ring.field().neg(&one);
    let mono = |a: u32, b: u32| {
        let mut e = vec![0u32; ring.arity()];
        e[0] = a;
        e[1] = b;
        Monomial(e)
    };
    let shape = step_shape(mtype, n, level)?;
    Ok(match shape {
        Shape::Step2 => {
            let mut l_row = BTreeMap::new();
            l_row.insert(mono(1, 0), one.clone());
            let mut k_row = BTreeMap::new();
            k_row.insert(mono(0, 1), one.clone());
            let q = FunctionalSpec::single(l_row.clone());
            StepFunctionals::Step2 {
                p: FunctionalSpec {
                    rows: vec![l_row, k_row],
                },
                q,
            }
        }
        Shape::FStep { .. } => {
            let mut l_row = BTreeMap::new();
            l_row.insert(mono(2, 0), one.clone());
            let mut k_row = BTreeMap::new();
            k_row.insert(mono(0, 2), one.clone());
            StepFunctionals::P {
                p: FunctionalSpec {
                    rows: vec![l_row, k_row],
                },
            }
        }
        Shape::Middle | Shape::FPrime | Shape::StepN { .. } => {
            let mut row = BTreeMap::new();
            row.insert(mono(level - 1, 0), one.clone());
            StepFunctionals::P {
                p: FunctionalSpec::single(row),
            }
        }
        Shape::Final => {
            let mut row = BTreeMap::new();
            row.insert(mono(n, 0), one.clone());
            row.insert(mono(0, mtype.y_exponent()), minus_one);
            StepFunctionals::P {
                p: FunctionalSpec::single(row),
            }
        }
    })
}

struct KernelStep {
    ideal: Ideal,
    kernel_dim: usize,
}

/// B + the lifts of ker(rows) through the subquotient basis.
fn kernel_ideal(
    basis: &SubquotientBasis,
    rows: &[Vec<Scalar>],
    ring: &Arc<Ring>,
) -> Result<KernelStep> {
    let field = ring.field();
    let kernel = linalg::kernel_basis(field, rows, basis.dim());
    let mut gens = basis.small().gens().to_vec();
    for v in &kernel {
        let lift = basis.lift(v)?;
        if !lift.is_zero() {
            gens.push(lift);
        }
    }
    Ok(KernelStep {
        ideal: Ideal::new(ring, gens)?,
        kernel_dim: kernel.len(),
    })
}

/// Rows of the canonical map A/B -> A'/B' expressed per source basis
/// vector: entry s is the coordinate vector of the class of the
/// representative of s.
fn canonical_rows(
    source: &SubquotientBasis,
    target: &SubquotientBasis,
) -> Result<Vec<Vec<Scalar>>> {
    (0..source.dim())
        .map(|s| target.coordinates(source.representative(s)))
        .collect()
}

fn kernel_of_canonical(
    per_source: &[Vec<Scalar>],
    source_dim: usize,
    target_dim: usize,
    field: &crate::scalar::Field,
) -> Vec<Vec<Scalar>> {
    // transpose: matrix with target_dim rows, source_dim columns
    let mut rows = vec![vec![field.zero(); source_dim]; target_dim];
    for (s, coords) in per_source.iter().enumerate() {
        for (t, c) in coords.iter().enumerate() {
            rows[t][s] = c.clone();
        }
    }
    linalg::kernel_basis(field, &rows, source_dim)
}

fn dot(field: &crate::scalar::Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        acc = field.add(&acc, &field.mul(x, y));
    }
    acc
}

fn format_basis(basis: &SubquotientBasis, ring: &Arc<Ring>) -> String {
    basis
        .monomials()
        .iter()
        .map(|m| ring.format_monomial(m))
        .collect::<Vec<_>>()
        .join(", ")
}

fn format_rows(rows: &[Vec<Scalar>], basis: &SubquotientBasis, ring: &Arc<Ring>) -> Vec<String> {
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(basis.monomials())
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| format!("{} -> {}", ring.format_monomial(m), c))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect()
}

impl ConstructionState {
    fn source_quotient(&self, a: &Ideal) -> Result<SubquotientBasis> {
        let b = self.support.product(a)?;
        SubquotientBasis::new(a, &b)
    }

    /// Validates and applies step 2: J2 and I2 as kernels of the rank-two
    /// functional and its rank-one companion on I/I^2. The companion must be
    /// the first row of the rank-two functional (the commuting square).
    pub fn step2(&mut self, p: &FunctionalSpec, q: &FunctionalSpec) -> Result<()> {
        if self.level != 2 {
            return Err(self.err("step2", format!("next pending step is {}", self.level)));
        }
        if p.rank() != 2 || q.rank() != 1 {
            return Err(self.err(
                "step2",
                "expected a rank-two functional and a rank-one companion",
            ));
        }
        let basis = self.source_quotient(&self.support)?;
        let p_rows = p
            .matrix(&basis, &self.ring)
            .map_err(|e| self.err("step2", e.to_string()))?;
        let q_rows = q
            .matrix(&basis, &self.ring)
            .map_err(|e| self.err("step2", e.to_string()))?;
        let field = self.ring.field();
        if linalg::rank(field, &p_rows) != 2 {
            return Err(self.err("step2", "the rank-two functional is not surjective"));
        }
        if q_rows[0] != p_rows[0] {
            return Err(self.err(
                "step2",
                "the companion functional does not factor through the projection (it must equal the first row)",
            ));
        }
        let j2 = kernel_ideal(&basis, &p_rows, &self.ring)?;
        let i2 = kernel_ideal(&basis, &q_rows, &self.ring)?;

        let dj = subquotient_dim(&self.support, &j2.ideal)?;
        let di = subquotient_dim(&self.support, &i2.ideal)?;
        if dj != 2 || di != 1 {
            return Err(self.err(
                "step2",
                format!("dimension drops (J: {dj}, I: {di}) differ from (2, 1)"),
            ));
        }
        let dk = subquotient_dim(&i2.ideal, &j2.ideal)
            .map_err(|e| self.err("step2", format!("kernel-piece witness failed: {e}")))?;
        if dk != 1 {
            return Err(self.err(
                "step2",
                format!("kernel piece has dimension {dk}, expected 1"),
            ));
        }

        self.log.push(StepLog {
            level: 2,
            stage: "step2",
            basis: basis
                .monomials()
                .iter()
                .map(|m| self.ring.format_monomial(m))
                .collect(),
            rows: format_rows(&p_rows, &basis, &self.ring),
            j_ideal: j2.ideal.canonical_string(),
            i_ideal: Some(i2.ideal.canonical_string()),
        });
        self.j_chain.push(j2.ideal);
        self.i_chain.push(i2.ideal);
        self.level = 3;
        Ok(())
    }

    /// Applies one intermediate step (levels 3..=n-1). The single functional
    /// acts on J_(l-1)/I*J_(l-1); the companion functional on the I-chain is
    /// derived by solving the commuting diagram, with zeros on the free
    /// coordinates and, at the rank-two companion steps, the canonical
    /// projection to I_(l-1)/(J_(l-1)+I*I_(l-1)) as second row.
    pub fn step_middle(&mut self, p: &FunctionalSpec) -> Result<()> {
        let shape = step_shape(self.mtype, self.n, self.level)?;
        match shape {
            Shape::Middle => self.apply_rank1(p, "middle retract", true, false),
            Shape::FStep { merged } => self.apply_fstep(p, merged),
            Shape::FPrime => self.apply_rank1(p, "companion extension", true, true),
            _ => Err(self.err(
                "middle retract",
                format!("step {} is not an intermediate step", self.level),
            )),
        }
    }

    /// Runs step n (the identification J_n = I_n) and step n+1 (the final
    /// retract), returning the constructed ideal. `p_n` defaults when absent.
    pub fn step_final(
        &mut self,
        p_n: Option<&FunctionalSpec>,
        phi: &FunctionalSpec,
    ) -> Result<Ideal> {
        let expected_n = self.n;
        if self.level != expected_n {
            return Err(self.err(
                "final retract",
                format!("next pending step is {}, expected {expected_n}", self.level),
            ));
        }
        let default;
        let p_n = match p_n {
            Some(p) => p,
            None => {
                default = match default_functionals(self.mtype, self.n, self.level, &self.ring)? {
                    StepFunctionals::P { p } => p,
                    StepFunctionals::Step2 { .. } => {
                        unreachable!("step n takes a single functional")
                    }
                };
                &default
            }
        };
        self.apply_step_n(p_n)?;
        self.apply_final(phi)
    }

    fn apply_rank1(
        &mut self,
        p: &FunctionalSpec,
        stage: &'static str,
        with_diagram: bool,
        rank2_companion: bool,
    ) -> Result<()> {
        let level = self.level;
        if p.rank() != 1 {
            return Err(self.err(stage, "expected a single functional row"));
        }
        let j_prev = self
            .j_at(level - 1)
            .ok_or_else(|| self.err(stage, "missing previous chain entry"))?
            .clone();
        let i_prev = self
            .i_at(level - 1)
            .ok_or_else(|| self.err(stage, "missing previous companion entry"))?
            .clone();
        let basis = self.source_quotient(&j_prev)?;
        let p_rows = p
            .matrix(&basis, &self.ring)
            .map_err(|e| self.err(stage, e.to_string()))?;
        let field = self.ring.field().clone();

        // retract condition: the class of x^(level-1) maps to a unit
        let xpow = self.x_power(level - 1);
        if !j_prev.is_member(&xpow)? {
            return Err(self.err(stage, "the required power of x is not in the chain entry"));
        }
        let xclass = basis.coordinates(&xpow)?;
        if dot(&field, &p_rows[0], &xclass).is_zero() {
            return Err(self.err(
                stage,
                "retract condition fails: the power class does not map to a unit",
            ));
        }

        let target = self.source_quotient(&i_prev)?;
        let canon = canonical_rows(&basis, &target)?;
        if with_diagram {
            for v in kernel_of_canonical(&canon, basis.dim(), target.dim(), &field) {
                if !dot(&field, &p_rows[0], &v).is_zero() {
                    return Err(self.err(
                        stage,
                        "commuting diagram fails: the functional does not vanish on the kernel of the canonical map",
                    ));
                }
            }
        }

        // derive the companion row: q . canonical = p, free coordinates zero
        let b: Vec<Scalar> = (0..basis.dim()).map(|s| p_rows[0][s].clone()).collect();
        let Some(q_row) = linalg::solve(&field, &canon, &b) else {
            return Err(self.err(
                stage,
                "commuting diagram fails: the functional does not factor through the companion quotient",
            ));
        };
        let mut q_rows = vec![q_row];
        if rank2_companion {
            q_rows.push(self.kernel_piece_row(&i_prev, &j_prev, &target, stage)?);
            if linalg::rank(&field, &q_rows) != 2 {
                return Err(self.err(
                    stage,
                    "companion functional is not surjective onto rank two",
                ));
            }
        }

        let j_new = kernel_ideal(&basis, &p_rows, &self.ring)?;
        let i_new = kernel_ideal(&target, &q_rows, &self.ring)?;
        let dj = subquotient_dim(&j_prev, &j_new.ideal)?;
        if dj != 1 {
            return Err(self.err(stage, format!("chain drop is {dj}, expected 1")));
        }
        let di = subquotient_dim(&i_prev, &i_new.ideal)?;
        let expected_di = if rank2_companion { 2 } else { 1 };
        if di != expected_di {
            return Err(self.err(
                stage,
                format!("companion drop is {di}, expected {expected_di}"),
            ));
        }
        if !i_new.ideal.contains(&j_new.ideal)? {
            return Err(self.err(stage, "chain entry escapes its companion"));
        }
        let _ = j_new.kernel_dim;

        self.log.push(StepLog {
            level,
            stage,
            basis: basis
                .monomials()
                .iter()
                .map(|m| self.ring.format_monomial(m))
                .collect(),
            rows: format_rows(&p_rows, &basis, &self.ring),
            j_ideal: j_new.ideal.canonical_string(),
            i_ideal: Some(i_new.ideal.canonical_string()),
        });
        self.j_chain.push(j_new.ideal);
        self.i_chain.push(i_new.ideal);
        self.level += 1;
        Ok(())
    }

    /// The canonical rank-one row onto I_(l-1)/(J_(l-1) + I*I_(l-1)).
    fn kernel_piece_row(
        &self,
        i_prev: &Ideal,
        j_prev: &Ideal,
        target: &SubquotientBasis,
        stage: &'static str,
    ) -> Result<Vec<Scalar>> {
        let ii = self.support.product(i_prev)?;
        let denom = j_prev.sum(&ii)?;
        let piece = SubquotientBasis::new(i_prev, &denom)?;
        if piece.dim() != 1 {
            return Err(self.err(
                stage,
                format!(
                    "kernel piece I/(J + I*I) has dimension {}, expected 1",
                    piece.dim()
                ),
            ));
        }
        let mut row = Vec::with_capacity(target.dim());
        for s in 0..target.dim() {
            let coords = piece.coordinates(target.representative(s))?;
            row.push(coords[0].clone());
        }
        Ok(row)
    }

    fn apply_fstep(&mut self, p: &FunctionalSpec, merged: bool) -> Result<()> {
        let stage: &'static str = "degree-two extension";
        let level = self.level;
        if p.rank() != 2 {
            return Err(self.err(stage, "expected two functional rows (rank-two target)"));
        }
        let j2 = self
            .j_at(level - 1)
            .ok_or_else(|| self.err(stage, "missing previous chain entry"))?
            .clone();
        let i2 = self
            .i_at(level - 1)
            .ok_or_else(|| self.err(stage, "missing previous companion entry"))?
            .clone();
        let basis = self.source_quotient(&j2)?;
        let p_rows = p
            .matrix(&basis, &self.ring)
            .map_err(|e| self.err(stage, e.to_string()))?;
        let field = self.ring.field().clone();

        if linalg::rank(&field, &p_rows) != 2 {
            return Err(self.err(stage, "functional is not surjective onto rank two"));
        }

        // first row: unit on the x^2 class, vanishing on the kernel of the
        // canonical map (the commuting square with the companion)
        let xclass = basis.coordinates(&self.x_power(2))?;
        if dot(&field, &p_rows[0], &xclass).is_zero() {
            return Err(self.err(stage, "first row must be a unit on the x^2 class"));
        }
        let target = self.source_quotient(&i2)?;
        let canon = canonical_rows(&basis, &target)?;
        for v in kernel_of_canonical(&canon, basis.dim(), target.dim(), &field) {
            if !dot(&field, &p_rows[0], &v).is_zero() {
                return Err(self.err(
                    stage,
                    "commuting diagram fails: the first row does not vanish on the kernel of the canonical map",
                ));
            }
        }

        // second row: the squared-kernel inclusion lands on the y^2 class
        let ysq = self.y_power(2);
        if !j2.is_member(&ysq)? {
            return Err(self.err(stage, "y^2 is not in the chain entry"));
        }
        let yclass = basis.coordinates(&ysq)?;
        if !dot(&field, &p_rows[0], &yclass).is_zero() {
            return Err(self.err(
                stage,
                "the squared-kernel class must map into the kernel of the projection (first row zero on y^2)",
            ));
        }
        if dot(&field, &p_rows[1], &yclass).is_zero() {
            return Err(self.err(
                stage,
                "the squared-kernel inclusion fails: second row must be a unit on the y^2 class",
            ));
        }

        // companion: solve the square for the rank-one row; in the merged
        // case the canonical projection row is appended.
        let b: Vec<Scalar> = (0..basis.dim()).map(|s| p_rows[0][s].clone()).collect();
        let Some(q_row) = linalg::solve(&field, &canon, &b) else {
            return Err(self.err(stage, "commuting diagram fails on the companion side"));
        };
        let mut q_rows = vec![q_row];
        if merged {
            q_rows.push(self.kernel_piece_row(&i2, &j2, &target, stage)?);
            if linalg::rank(&field, &q_rows) != 2 {
                return Err(self.err(
                    stage,
                    "companion functional is not surjective onto rank two",
                ));
            }
        }

        let j_new = kernel_ideal(&basis, &p_rows, &self.ring)?;
        let i_new = kernel_ideal(&target, &q_rows, &self.ring)?;
        let dj = subquotient_dim(&j2, &j_new.ideal)?;
        if dj != 2 {
            return Err(self.err(stage, format!("chain drop is {dj}, expected 2")));
        }
        let di = subquotient_dim(&i2, &i_new.ideal)?;
        let expected_di = if merged { 2 } else { 1 };
        if di != expected_di {
            return Err(self.err(
                stage,
                format!("companion drop is {di}, expected {expected_di}"),
            ));
        }
        if !i_new.ideal.contains(&j_new.ideal)? {
            return Err(self.err(stage, "chain entry escapes its companion"));
        }

        self.log.push(StepLog {
            level,
            stage,
            basis: basis
                .monomials()
                .iter()
                .map(|m| self.ring.format_monomial(m))
                .collect(),
            rows: format_rows(&p_rows, &basis, &self.ring),
            j_ideal: j_new.ideal.canonical_string(),
            i_ideal: Some(i_new.ideal.canonical_string()),
        });
        self.j_chain.push(j_new.ideal);
        self.i_chain.push(i_new.ideal);
        self.level += 1;
        Ok(())
    }

    fn apply_step_n(&mut self, p: &FunctionalSpec) -> Result<()> {
        let stage: &'static str = "chain identification";
        let level = self.level;
        let Shape::StepN { with_diagram } = step_shape(self.mtype, self.n, level)? else {
            return Err(self.err(
                stage,
                format!("step {level} is not the identification step"),
            ));
        };
        if p.rank() != 1 {
            return Err(self.err(stage, "expected a single functional row"));
        }
        let j_prev = self
            .j_at(level - 1)
            .ok_or_else(|| self.err(stage, "missing previous chain entry"))?
            .clone();
        let basis = self.source_quotient(&j_prev)?;
        let p_rows = p
            .matrix(&basis, &self.ring)
            .map_err(|e| self.err(stage, e.to_string()))?;
        let field = self.ring.field().clone();

        let xpow = self.x_power(level - 1);
        if !j_prev.is_member(&xpow)? {
            return Err(self.err(stage, "the required power of x is not in the chain entry"));
        }
        let xclass = basis.coordinates(&xpow)?;
        if dot(&field, &p_rows[0], &xclass).is_zero() {
            return Err(self.err(
                stage,
                "retract condition fails: the power class does not map to a unit",
            ));
        }
        if with_diagram {
            let i_prev = self
                .i_at(level - 1)
                .ok_or_else(|| self.err(stage, "missing previous companion entry"))?
                .clone();
            let target = self.source_quotient(&i_prev)?;
            let canon = canonical_rows(&basis, &target)?;
            for v in kernel_of_canonical(&canon, basis.dim(), target.dim(), &field) {
                if !dot(&field, &p_rows[0], &v).is_zero() {
                    return Err(self.err(
                        stage,
                        "commuting diagram fails: the functional does not vanish on the kernel of the canonical map",
                    ));
                }
            }
        }

        let j_new = kernel_ideal(&basis, &p_rows, &self.ring)?;
        let dj = subquotient_dim(&j_prev, &j_new.ideal)?;
        if dj != 1 {
            return Err(self.err(stage, format!("chain drop is {dj}, expected 1")));
        }
        if let Some(i_prev) = self.i_at(level - 1) {
            let de = subquotient_dim(i_prev, &j_new.ideal)
                .map_err(|e| self.err(stage, format!("rank-two cokernel witness failed: {e}")))?;
            if de != 2 {
                return Err(self.err(
                    stage,
                    format!("rank-two cokernel witness is {de}, expected 2"),
                ));
            }
        }

        self.log.push(StepLog {
            level,
            stage,
            basis: basis
                .monomials()
                .iter()
                .map(|m| self.ring.format_monomial(m))
                .collect(),
            rows: format_rows(&p_rows, &basis, &self.ring),
            j_ideal: j_new.ideal.canonical_string(),
            i_ideal: Some(j_new.ideal.canonical_string()),
        });
        // both chains receive the same entry
        self.j_chain.push(j_new.ideal.clone());
        self.i_chain.push(j_new.ideal);
        self.level += 1;
        Ok(())
    }

    fn apply_final(&mut self, phi: &FunctionalSpec) -> Result<Ideal> {
        let stage: &'static str = "final retract";
        let level = self.level;
        if step_shape(self.mtype, self.n, level)? != Shape::Final {
            return Err(self.err(stage, format!("step {level} is not the final step")));
        }
        if phi.rank() != 1 {
            return Err(self.err(stage, "expected a single functional row"));
        }
        let i_n = self
            .i_at(level - 1)
            .ok_or_else(|| self.err(stage, "missing previous companion entry"))?
            .clone();
        let basis = self.source_quotient(&i_n)?;
        let rows = phi
            .matrix(&basis, &self.ring)
            .map_err(|e| self.err(stage, e.to_string()))?;
        let field = self.ring.field().clone();

        let t = self.mtype.y_exponent();
        let xpow = self.x_power(self.n);
        let ypow = self.y_power(t);
        let x_mono = xpow.terms()[0].0.clone();
        let y_mono = ypow.terms()[0].0.clone();
        let x_idx = basis.monomials().iter().position(|m| *m == x_mono);
        let y_idx = basis.monomials().iter().position(|m| *m == y_mono);
        let (Some(x_idx), Some(y_idx)) = (x_idx, y_idx) else {
            return Err(self.err(
                stage,
                "the power classes x^n and y^t are not basis monomials of the source quotient",
            ));
        };
        let u = rows[0][x_idx].clone();
        let v = rows[0][y_idx].clone();
        if u.is_zero() {
            return Err(self.err(
                stage,
                "retract of the top power inclusion fails: zero value on the x^n class",
            ));
        }
        if v.is_zero() {
            return Err(self.err(
                stage,
                "retract of the squared-kernel inclusion fails: zero value on the y-power class",
            ));
        }
        for (idx, c) in rows[0].iter().enumerate() {
            if idx != x_idx && idx != y_idx && !c.is_zero() {
                return Err(self.err(
                    stage,
                    format!(
                        "mixed class `{}` must map to zero",
                        self.ring.format_monomial(&basis.monomials()[idx])
                    ),
                ));
            }
        }

        let j_final = kernel_ideal(&basis, &rows, &self.ring)?.ideal;

        // the kernel of (u, v) on span{x^n, y^t} is spanned by y^t + c x^n
        // with c = -v/u
        let c = field.neg(&field.div(&v, &u)?);
        let mut expected_gens = vec![ypow.add(&xpow.scale(&c))?, {
            let mut e = vec![0u32; self.ring.arity()];
            e[0] = 1;
            e[1] = 1;
            Polynomial::term(&self.ring, Monomial(e), field.one())
        }];
        for i in 2..self.ring.arity() {
            expected_gens.push(Polynomial::var(&self.ring, i));
        }
        let expected = Ideal::new(&self.ring, expected_gens)?;
        if !j_final.equals(&expected)? {
            return Err(self.err(
                stage,
                format!(
                    "constructed ideal {} is not of the expected shape {}",
                    j_final.canonical_string(),
                    expected.canonical_string()
                ),
            ));
        }

        self.log.push(StepLog {
            level,
            stage,
            basis: basis
                .monomials()
                .iter()
                .map(|m| self.ring.format_monomial(m))
                .collect(),
            rows: format_rows(&rows, &basis, &self.ring),
            j_ideal: j_final.canonical_string(),
            i_ideal: None,
        });
        self.j_chain.push(j_final.clone());
        self.level += 1;
        Ok(j_final)
    }
}

/// Runs the whole construction with defaults where no functional is given,
/// then verifies the result against the expected chain tables of its family.
pub fn construct_run(
    mtype: CuspidalType,
    n: u32,
    r: u32,
    functionals: Option<&Functionals>,
    limits: &Limits,
) -> Result<(Ideal, FiltrationReport, Vec<StepLog>)> {
    let mut state = construct_init(mtype, n, r)?;
    let mut final_ideal = None;
    while state.next_level() <= n + 1 {
        let level = state.next_level();
        let provided = functionals.and_then(|f| f.steps.get(&level));
        let shape = step_shape(mtype, n, level)?;
        match shape {
            Shape::Step2 => {
                let (p, q) = match provided {
                    Some(StepFunctionals::Step2 { p, q }) => (p.clone(), q.clone()),
                    // commutation forces the companion to be the first row
                    Some(StepFunctionals::P { p }) if p.rank() == 2 => {
                        (p.clone(), FunctionalSpec::single(p.rows[0].clone()))
                    }
                    Some(StepFunctionals::P { .. }) => {
                        return Err(Error::Step {
                            level,
                            stage: "step2",
                            reason: "step 2 takes a rank-two functional".into(),
                        })
                    }
                    None => match default_functionals(mtype, n, level, state.ring())? {
                        StepFunctionals::Step2 { p, q } => (p, q),
                        _ => unreachable!(),
                    },
                };
                state.step2(&p, &q)?;
            }
            Shape::Middle | Shape::FStep { .. } | Shape::FPrime => {
                let p = match provided {
                    Some(StepFunctionals::P { p }) => p.clone(),
                    Some(StepFunctionals::Step2 { .. }) => {
                        return Err(Error::Step {
                            level,
                            stage: "middle retract",
                            reason: "intermediate steps take a single functional".into(),
                        })
                    }
                    None => match default_functionals(mtype, n, level, state.ring())? {
                        StepFunctionals::P { p } => p,
                        _ => unreachable!(),
                    },
                };
                state.step_middle(&p)?;
            }
            Shape::StepN { .. } => {
                let p_n = match provided {
                    Some(StepFunctionals::P { p }) => Some(p.clone()),
                    Some(StepFunctionals::Step2 { .. }) => {
                        return Err(Error::Step {
                            level,
                            stage: "chain identification",
                            reason: "this step takes a single functional".into(),
                        })
                    }
                    None => None,
                };
                let phi_level = n + 1;
                let phi = match functionals.and_then(|f| f.steps.get(&phi_level)) {
                    Some(StepFunctionals::P { p }) => p.clone(),
                    Some(StepFunctionals::Step2 { .. }) => {
                        return Err(Error::Step {
                            level: phi_level,
                            stage: "final retract",
                            reason: "the final step takes a single functional".into(),
                        })
                    }
                    None => match default_functionals(mtype, n, phi_level, state.ring())? {
                        StepFunctionals::P { p } => p,
                        _ => unreachable!(),
                    },
                };
                final_ideal = Some(state.step_final(p_n.as_ref(), &phi)?);
            }
            Shape::Final => unreachable!("consumed by the identification step"),
        }
    }
    let j = final_ideal.expect("the loop ends with the final step");

    // Verify the constructed ideal against the family tables. The monomial
    // table entries do not depend on the top-coefficient choice, so the
    // expected chain ends are replaced by the constructed ideal itself.
    let (_, mut expected) = cuspidal_model(mtype, n, r)?;
    let model = LocalModel::new(state.ring(), state.support().clone(), j.clone())?;
    let last = expected.xs.len() - 1;
    expected.xs[last] = j.clone();
    expected.ys[last] = j.clone();
    let report = verify_against(&model, &expected, limits)?;
    Ok((j, report, state.log))
}
