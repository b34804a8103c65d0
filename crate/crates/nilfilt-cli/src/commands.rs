//! Command implementations shared by the binary and the test suites.

use std::time::Instant;

use nilfilt::construct::{construct_run, Functionals, StepLog};
use nilfilt::filtration::{
    analyze, cuspidal_model, verify_against, Check, CuspidalType, ExpectedTables, LocalModel,
};
use nilfilt::{Error, Field, Ideal, Limits};

use crate::report::{Report, SweepReport};
use crate::session::Session;

/// Exit-code contract: 0 all checks pass, 1 a check failed, 2 input or
/// usage error.
pub fn exit_code(pass: bool) -> i32 {
    if pass {
        0
    } else {
        1
    }
}

/// The iteration caps, overridable through NILFILT_MAX_ITER.
pub fn limits_from_env() -> Limits {
    let mut limits = Limits::default();
    if let Ok(text) = std::env::var("NILFILT_MAX_ITER") {
        if let Ok(v) = text.trim().parse::<u32>() {
            if v > 0 {
                limits.max_iter = v;
            }
        }
    }
    limits
}

pub fn warn_if_prime_field(session: &Session) {
    if let Field::Prime(p) = session.ring.field() {
        eprintln!(
            "warning: coefficient field GF({p}) selected; the verified identities are stated in characteristic zero"
        );
    }
}

pub fn run_cuspidal(mtype: u8, n: u32, r: u32, limits: &Limits) -> Result<Report, Error> {
    let mtype = CuspidalType::from_u8(mtype)?;
    let (model, expected) = cuspidal_model(mtype, n, r)?;
    Ok(cuspidal_report(&model, &expected, limits))
}

/// The verification path behind `cuspidal`, parameterized by the expected
/// tables so the suites can exercise mismatch behaviour.
pub fn cuspidal_report(model: &LocalModel, expected: &ExpectedTables, limits: &Limits) -> Report {
    let start = Instant::now();
    let fr = verify_against(model, expected, limits)
        .expect("verification of a valid model does not error");
    Report::from_filtration(
        format!(
            "cuspidal --type {} --n {} --r {}",
            expected.mtype.y_exponent(),
            expected.n,
            model.ring().arity() - 2
        ),
        model.ring(),
        &fr,
        &[],
        start.elapsed().as_millis() as u64,
    )
}

pub fn run_analyze(
    session: &Session,
    support_name: &str,
    structure_name: &str,
    limits: &Limits,
) -> Result<Report, Error> {
    let start = Instant::now();
    let support = session
        .ideal(support_name)
        .ok_or_else(|| Error::OutOfRange(format!("no ideal named `{support_name}`")))?;
    let structure = session
        .ideal(structure_name)
        .ok_or_else(|| Error::OutOfRange(format!("no ideal named `{structure_name}`")))?;
    let model = LocalModel::new(&session.ring, support.clone(), structure.clone())?;
    let fr = analyze(&model, limits)?;
    Ok(Report::from_filtration(
        format!("analyze --I {support_name} --J {structure_name}"),
        &session.ring,
        &fr,
        &[],
        start.elapsed().as_millis() as u64,
    ))
}

pub fn run_sweep(
    mtype: u8,
    n_min: u32,
    n_max: u32,
    r_max: u32,
    limits: &Limits,
) -> Result<SweepReport, Error> {
    let start = Instant::now();
    let t = CuspidalType::from_u8(mtype)?;
    if n_min < t.min_n() || n_min > n_max {
        return Err(Error::OutOfRange(format!(
            "sweep range {n_min}..={n_max} invalid for this family (n >= {})",
            t.min_n()
        )));
    }
    let mut cases = Vec::new();
    for n in n_min..=n_max {
        for r in 0..=r_max {
            cases.push(run_cuspidal(mtype, n, r, limits)?);
        }
    }
    cases.sort_by(|a, b| a.command.cmp(&b.command));
    let pass = cases.iter().all(|c| c.pass);
    Ok(SweepReport {
        command: format!("sweep --type {mtype} --n-min {n_min} --n-max {n_max} --r-max {r_max}"),
        cases,
        pass,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run_construct(
    mtype: u8,
    n: u32,
    r: u32,
    functionals: Option<&Functionals>,
    limits: &Limits,
) -> Result<(Report, Ideal), Error> {
    let start = Instant::now();
    let t = CuspidalType::from_u8(mtype)?;
    let (ideal, fr, log) = construct_run(t, n, r, functionals, limits)?;
    let step_checks: Vec<Check> = log.iter().map(step_check).collect();
    let ring = ideal.ring().clone();
    let report = Report::from_filtration(
        format!("construct --type {mtype} --n {n} --r {r}"),
        &ring,
        &fr,
        &step_checks,
        start.elapsed().as_millis() as u64,
    );
    Ok((report, ideal))
}

fn step_check(log: &StepLog) -> Check {
    Check {
        name: format!("step{}", log.level),
        pass: true,
        detail: format!(
            "{}: basis {{{}}}; rows [{}]; J = {}{}",
            log.stage,
            log.basis.join(", "),
            log.rows.join(" | "),
            log.j_ideal,
            match &log.i_ideal {
                Some(i) => format!("; companion = {i}"),
                None => String::new(),
            }
        ),
        informational: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::parse_session;

    #[test]
    fn cuspidal_reports_pass() {
        let lim = Limits::default();
        let report = run_cuspidal(2, 4, 1, &lim).unwrap();
        assert!(report.pass);
        assert_eq!(report.m, 4);
        assert_eq!(exit_code(report.pass), 0);
        assert!(run_cuspidal(3, 3, 0, &lim).is_err());
        assert!(run_cuspidal(4, 5, 0, &lim).is_err());
    }

    #[test]
    fn corrupted_expected_table_flips_the_verdict() {
        let lim = Limits::default();
        let (model, mut expected) = cuspidal_model(CuspidalType::C2, 5, 1).unwrap();
        expected.ys[3] = Ideal::parse(model.ring(), &["x^3", "x*y", "y^2"]).unwrap();
        let report = cuspidal_report(&model, &expected, &lim);
        assert!(!report.pass);
        assert_eq!(exit_code(report.pass), 1);
    }

    #[test]
    fn analyze_counterexample_is_informational() {
        let lim = Limits::default();
        let session =
            parse_session("ring QQ[x,y]\nideal I = x, y\nideal J = x^3, x*y, y^4\n").unwrap();
        let report = run_analyze(&session, "I", "J", &lim).unwrap();
        assert!(report.pass, "analysis verdict covers required checks only");
        assert_eq!(report.m, 3);
        assert_eq!(report.fingerprint.label, "unknown");
        let duality = report.checks.iter().find(|c| c.name == "duality").unwrap();
        assert!(!duality.pass);
        // precondition violation is an input error, not a report
        assert!(run_analyze(&session, "J", "I", &lim).is_err());
    }

    #[test]
    fn sweep_is_sorted_and_aggregated() {
        let lim = Limits::default();
        let sweep = run_sweep(2, 3, 4, 1, &lim).unwrap();
        assert_eq!(sweep.cases.len(), 4);
        assert!(sweep.pass);
        let mut sorted = sweep
            .cases
            .iter()
            .map(|c| c.command.clone())
            .collect::<Vec<_>>();
        sorted.sort();
        assert_eq!(
            sorted,
            sweep
                .cases
                .iter()
                .map(|c| c.command.clone())
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn construct_report_carries_steps() {
        let lim = Limits::default();
        let (report, ideal) = run_construct(2, 4, 0, None, &lim).unwrap();
        assert!(report.pass);
        assert!(report.checks.iter().any(|c| c.name == "step2"));
        assert!(report.checks.iter().any(|c| c.name == "step5"));
        assert_eq!(ideal.canonical_string(), "(x*y, y^3, x^4 + y^2)");
    }
}
