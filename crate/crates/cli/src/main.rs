use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use folia_cli::input::parse_foliation;
use folia_cli::parse::{parse_form, parse_poly, parse_vars, ParseError};
use folia_cli::{run, Command, Invocation, Status, Theorem};

#[derive(Parser)]
#[command(name = "folia", version, about = "Exact deformation spaces of homogeneous foliations")]
struct Cli {
    /// Comma-separated variable names, in order.
    #[arg(long, global = true, default_value = "x,y,z")]
    vars: String,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Sampling {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 64)]
    trials: u32,
}

#[derive(Subcommand)]
enum Sub {
    /// Integrability, integrating factor, mu and genericity of a foliation.
    Check {
        spec: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Kernel of eta -> omega^d(eta) + d(omega)^eta in a given degree.
    Deform {
        spec: String,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, overrides_with = "no_quotient")]
        quotient: bool,
        #[arg(long, overrides_with = "quotient")]
        no_quotient: bool,
    },
    /// Kernel of the relative cohomology operator and the different-degree solutions.
    Relcohom {
        spec: String,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Lift a foliation to one more variable so that it descends.
    Projectivize { spec: String },
    /// Check one structure theorem on an instance.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        spec: Option<String>,
        /// The perturbation for the dicritical check.
        #[arg(long)]
        eta: Option<String>,
        /// Comma-separated factors for the integration lemma.
        #[arg(long)]
        factors: Option<String>,
        /// Comma-separated multiplicities, one per factor.
        #[arg(long)]
        mult: Option<String>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Integration lemma: write a closed form as sum lambda_i df_i/f_i + d(g/F').
    Decompose {
        #[arg(long)]
        form: String,
        #[arg(long)]
        factors: String,
        #[arg(long)]
        mult: Option<String>,
        /// Integrating factor c*prod f_i^n_i; the form is divided by it first.
        #[arg(long)]
        factor: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    Rational,
    Logarithmic,
    Exact,
    Coro1,
    AffineDef,
    Dicritical,
    Identities,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Rational => Theorem::Rational,
            TheoremArg::Logarithmic => Theorem::Logarithmic,
            TheoremArg::Exact => Theorem::Exact,
            TheoremArg::Coro1 => Theorem::Coro1,
            TheoremArg::AffineDef => Theorem::AffineDef,
            TheoremArg::Dicritical => Theorem::Dicritical,
            TheoremArg::Identities => Theorem::Identities,
        }
    }
}

fn located(what: &str, text: &str, e: ParseError) -> String {
    format!("cannot parse {what} {text:?} {e}")
}

fn poly_list(text: &str, vars: &[String]) -> Result<Vec<folia_core::exactalg::Poly>, String> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        out.push(parse_poly(piece, vars).map_err(|e| located("factor list", text, e.shifted(offset)))?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

fn mult_list(text: Option<&str>) -> Result<Vec<u32>, String> {
    let Some(text) = text else { return Ok(Vec::new()) };
    text.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| format!("bad multiplicity {s:?}")))
        .collect()
}

fn build(cli: &Cli) -> Result<Invocation, String> {
    let vars = parse_vars(&cli.vars).map_err(|e| located("variable list", &cli.vars, e))?;
    let spec = |t: &str| parse_foliation(t, &vars).map_err(|e| located("foliation", t, e));
    let command = match &cli.command {
        Sub::Check { spec: s, sampling } => Command::Check {
            spec: spec(s)?,
            seed: sampling.seed,
            trials: sampling.trials,
        },
        Sub::Deform {
            spec: s,
            degree,
            quotient,
            no_quotient,
        } => Command::Deform {
            spec: spec(s)?,
            degree: *degree,
            quotient: match (quotient, no_quotient) {
                (true, _) => Some(true),
                (_, true) => Some(false),
                _ => None,
            },
        },
        Sub::Relcohom { spec: s, degree } => Command::RelCohom {
            spec: spec(s)?,
            degree: *degree,
        },
        Sub::Projectivize { spec: s } => Command::Projectivize { spec: spec(s)? },
        Sub::Verify {
            theorem,
            spec: s,
            eta,
            factors,
            mult,
            sampling,
        } => Command::Verify {
            theorem: (*theorem).into(),
            spec: s.as_deref().map(spec).transpose()?,
            eta: eta
                .as_deref()
                .map(|t| parse_form(t, &vars).map_err(|e| located("form", t, e)))
                .transpose()?,
            factors: factors.as_deref().map(|t| poly_list(t, &vars)).transpose()?.unwrap_or_default(),
            mult: mult_list(mult.as_deref())?,
            seed: sampling.seed,
            trials: sampling.trials,
        },
        Sub::Decompose {
            form,
            factors,
            mult,
            factor,
        } => Command::Decompose {
            form: parse_form(form, &vars).map_err(|e| located("form", form, e))?,
            factors: poly_list(factors, &vars)?,
            mult: mult_list(mult.as_deref())?,
            factor: factor
                .as_deref()
                .map(|t| parse_poly(t, &vars).map_err(|e| located("factor", t, e)))
                .transpose()?,
        },
    };
    Ok(Invocation { vars, command })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let inv = match build(&cli) {
        Ok(inv) => inv,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(Status::InputError.code() as u8);
        }
    };
    let outcome = run(&inv);
    let text = outcome.report.render();
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Status::InputError.code() as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.status.code() as u8)
}
