//! Command-line front end: reads a JSON instance, runs the requested solver,
//! feasibility check, or enumeration oracle, and prints a JSON document.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 violated
//! problem precondition, 4 enumeration capacity exceeded, 5 internal or
//! verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invmat::{
    check_feasible, oracle_delta, solve_instance, solve_instance_counted, validate_instance,
    verify_solution, Error, ExistsMethod, ProblemInstance, Variant,
};
use invmat_cli::schema;

#[derive(Parser)]
#[command(
    name = "invmat",
    version,
    about = "Inverse matroid optimization: exact solvers, feasibility checks, \
             and brute-force oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Problem tag (im, im-exists, im-all, im-only, im-not-exists,
    /// relaxed-not-exists, im-not-all, im-not-only); overrides the
    /// instance file's `variant` field.
    #[arg(long, value_name = "TAG")]
    problem: Option<String>,

    /// Path to the instance document.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,

    /// Demand integral output even if the file does not request it.
    #[arg(long)]
    integral: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Binary,
    Reduction,
}

impl From<MethodArg> for ExistsMethod {
    fn from(arg: MethodArg) -> ExistsMethod {
        match arg {
            MethodArg::Binary => ExistsMethod::Binary,
            MethodArg::Reduction => ExistsMethod::Reduction,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the instance and print a solution document.
    Solve {
        #[command(flatten)]
        common: Common,

        /// Re-run the feasibility checker and certificate checks on the
        /// output and record the result in `verified`.
        #[arg(long)]
        verify: bool,

        /// Search strategy for the existence solver.
        #[arg(long, value_enum, default_value = "binary")]
        method: MethodArg,

        /// Count independence-oracle queries and report the tally.
        #[arg(long)]
        count_oracle_calls: bool,
    },
    /// Evaluate the feasibility checker on the weights as given.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Run the basis-enumeration oracle instead of the solver.
    Oracle {
        #[command(flatten)]
        common: Common,

        /// Largest ground-set size the oracle will enumerate.
        #[arg(long, value_name = "N", default_value_t = invmat::DEFAULT_ENUM_BOUND)]
        max_enum: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        let code = match err {
            Error::MalformedInput(_) => 2,
            Error::Precondition(_) => 3,
            Error::Capacity { .. } => 4,
            Error::Internal(_) => 5,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Solve {
            common,
            verify,
            method,
            count_oracle_calls,
        } => {
            let (instance, names) = load(&common)?;
            let (solution, calls) = if count_oracle_calls {
                let (solution, calls) = solve_instance_counted(&instance, method.into())?;
                (solution, Some(calls))
            } else {
                (solve_instance(&instance, method.into())?, None)
            };
            let verified = if verify {
                match verify_solution(&instance, &solution) {
                    Ok(true) => Some(true),
                    Ok(false) => {
                        return Err(Failure {
                            code: 5,
                            message: "output failed re-verification".to_string(),
                        })
                    }
                    Err(err) => {
                        return Err(Failure {
                            code: 5,
                            message: format!("output failed re-verification: {err}"),
                        })
                    }
                }
            } else {
                None
            };
            let document = schema::solution_file(&names, &solution, verified, calls);
            emit(&document)
        }
        Command::Check { common } => {
            let (instance, _) = load(&common)?;
            let feasible = check_feasible(
                &instance.matroid,
                &instance.s0,
                &instance.weights,
                instance.variant,
            )?;
            emit(&schema::CheckFile {
                schema: schema::SCHEMA_VERSION,
                variant: instance.variant.tag().to_string(),
                feasible,
            })
        }
        Command::Oracle { common, max_enum } => {
            let (instance, _) = load(&common)?;
            let delta = oracle_delta(&instance, max_enum)?;
            emit(&schema::OracleFile {
                schema: schema::SCHEMA_VERSION,
                variant: instance.variant.tag().to_string(),
                delta_star: invmat::format_rational(&delta),
            })
        }
    }
}

/// Reads, parses, resolves, and validates the instance named by `common`.
fn load(common: &Common) -> Result<(ProblemInstance, Vec<String>), Failure> {
    let text = std::fs::read_to_string(&common.input).map_err(|err| Failure {
        code: 2,
        message: format!("cannot read {}: {err}", common.input.display()),
    })?;
    let file: schema::InstanceFile = serde_json::from_str(&text).map_err(|err| Failure {
        code: 2,
        message: format!("{}: {err}", common.input.display()),
    })?;
    let named = file.resolve()?;
    let variant = match (&common.problem, named.variant) {
        (Some(tag), _) => Variant::from_tag(tag)?,
        (None, Some(variant)) => variant,
        (None, None) => {
            return Err(Failure {
                code: 2,
                message: "no problem tag: pass --problem or set `variant` in the instance"
                    .to_string(),
            })
        }
    };
    let instance = ProblemInstance {
        matroid: named.matroid,
        s0: named.s0,
        weights: named.weights,
        variant,
        integral: named.integral || common.integral,
    };
    validate_instance(&instance)?;
    Ok((instance, named.names))
}

fn emit<T: serde::Serialize>(document: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(document).map_err(|err| Failure {
        code: 5,
        message: format!("cannot serialize output: {err}"),
    })?;
    println!("{text}");
    Ok(())
}
