use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nilfilt_cli::commands::{
    exit_code, limits_from_env, run_analyze, run_construct, run_cuspidal, run_sweep,
    warn_if_prime_field,
};
use nilfilt_cli::expr::eval_expr;
use nilfilt_cli::functionals::parse_functionals;
use nilfilt_cli::session::parse_session;

/// Exact colon-ideal filtrations of nilpotent point structures: analysis,
/// family verification and step-by-step construction.
#[derive(Parser)]
#[command(name = "nilfilt", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the three chains, rank profiles and checks for a session pair.
    Analyze {
        /// Session file declaring the ring and the named ideals.
        file: PathBuf,
        /// Name of the reduced support ideal.
        #[arg(long = "I")]
        support: String,
        /// Name of the structure ideal.
        #[arg(long = "J")]
        structure: String,
        #[arg(long)]
        json: bool,
    },
    /// Verify one cuspidal family member against its chain tables.
    Cuspidal {
        /// Family type: 2 for (y^2+x^n, xy, z), 3 for (y^3+x^n, xy, z).
        #[arg(long = "type")]
        mtype: u8,
        #[arg(long)]
        n: u32,
        /// Number of trailing z-variables.
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long)]
        json: bool,
    },
    /// Verify a grid of family members.
    Sweep {
        #[arg(long = "type")]
        mtype: u8,
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 0)]
        r_max: u32,
        #[arg(long)]
        json: bool,
    },
    /// Build a cuspidal ideal step by step from functional choices.
    Construct {
        #[arg(long = "type")]
        mtype: u8,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        /// Functional file; omitted steps use the defaults.
        #[arg(long)]
        functionals: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate an ideal-calculus expression over a session.
    Eval {
        file: PathBuf,
        /// Expression such as `colon(J, power(I, 2))`.
        #[arg(long)]
        expr: String,
    },
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn run() -> Result<i32, String> {
    let cli = Cli::parse();
    let limits = limits_from_env();
    match cli.cmd {
        Cmd::Analyze {
            file,
            support,
            structure,
            json,
        } => {
            let text = read_file(&file)?;
            let session = parse_session(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            warn_if_prime_field(&session);
            let report =
                run_analyze(&session, &support, &structure, &limits).map_err(|e| e.to_string())?;
            print!(
                "{}",
                if json {
                    report.to_json() + "\n"
                } else {
                    report.to_text()
                }
            );
            Ok(exit_code(report.pass))
        }
        Cmd::Cuspidal { mtype, n, r, json } => {
            let report = run_cuspidal(mtype, n, r, &limits).map_err(|e| e.to_string())?;
            print!(
                "{}",
                if json {
                    report.to_json() + "\n"
                } else {
                    report.to_text()
                }
            );
            Ok(exit_code(report.pass))
        }
        Cmd::Sweep {
            mtype,
            n_min,
            n_max,
            r_max,
            json,
        } => {
            let report =
                run_sweep(mtype, n_min, n_max, r_max, &limits).map_err(|e| e.to_string())?;
            print!(
                "{}",
                if json {
                    report.to_json() + "\n"
                } else {
                    report.to_text()
                }
            );
            Ok(exit_code(report.pass))
        }
        Cmd::Construct {
            mtype,
            n,
            r,
            functionals,
            json,
        } => {
            let funcs = match &functionals {
                Some(path) => {
                    let text = read_file(path)?;
                    let t = nilfilt::filtration::CuspidalType::from_u8(mtype)
                        .map_err(|e| e.to_string())?;
                    let state =
                        nilfilt::construct::construct_init(t, n, r).map_err(|e| e.to_string())?;
                    Some(
                        parse_functionals(&text, state.ring())
                            .map_err(|e| format!("{}: {e}", path.display()))?,
                    )
                }
                None => None,
            };
            match run_construct(mtype, n, r, funcs.as_ref(), &limits) {
                Ok((report, _)) => {
                    print!(
                        "{}",
                        if json {
                            report.to_json() + "\n"
                        } else {
                            report.to_text()
                        }
                    );
                    Ok(exit_code(report.pass))
                }
                Err(e @ nilfilt::Error::Step { .. }) => {
                    // a violated step constraint is a check failure
                    eprintln!("construction aborted: {e}");
                    Ok(1)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Cmd::Eval { file, expr } => {
            let text = read_file(&file)?;
            let session = parse_session(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            warn_if_prime_field(&session);
            let ideal = eval_expr(&session, &expr, &limits).map_err(|e| format!("{expr}: {e}"))?;
            println!("{}", ideal.canonical_string());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
