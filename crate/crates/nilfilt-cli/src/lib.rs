//! Input-language parser, command surface and report emitters for the
//! `nilfilt` ideal-filtration toolkit.

pub mod commands;
pub mod expr;
pub mod functionals;
pub mod lex;
pub mod report;
pub mod session;

pub use commands::{
    cuspidal_report, exit_code, limits_from_env, run_analyze, run_construct, run_cuspidal,
    run_sweep,
};
pub use report::{Report, SweepReport};
pub use session::{parse_session, Session};
