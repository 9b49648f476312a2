use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toric_bgg::cli::{self, Command, JobSpec, Options, RingSpec};
use toric_bgg::{Error, FieldSpec};

#[derive(Parser)]
#[command(name = "toric-bgg", version, about = "Differential modules and BGG functors over Cox rings")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Free flag resolution of a differential module
    ResDm(JobArgs),
    /// Cancel unit entries of a free differential module
    MinimizeDm(JobArgs),
    /// Minimal free flag resolution (Z-graded, degree-0 differential)
    ResMinFlag(JobArgs),
    /// The functor L on a graded E-module
    ToricLl(JobArgs),
    /// The functor R on an S-module, over a window of degrees
    ToricRr(JobArgs),
    /// Strongly linear strand of a module generated in one degree
    LinearStrand(JobArgs),
    /// Minimal free resolution
    FreeRes(JobArgs),
    /// Ext^i(M, S(c))
    Ext(JobArgs),
    /// Bases of graded pieces
    GradedPiece(JobArgs),
    /// Run a job file
    Run {
        job: PathBuf,
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct JobArgs {
    /// Ring description (JSON)
    #[arg(long, conflicts_with = "builtin")]
    ring: Option<PathBuf>,
    /// hirzebruch A | weighted-projective W.. | standard N
    #[arg(long, num_args = 1.., value_name = "NAME ARGS")]
    builtin: Option<Vec<String>>,
    /// QQ or a prime, for builtin rings
    #[arg(long, default_value = "QQ")]
    field: String,
    #[arg(long)]
    module: Option<PathBuf>,
    #[arg(long)]
    dm: Option<PathBuf>,
    #[arg(long)]
    degree_list: Option<PathBuf>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    /// Homological index for ext
    #[arg(long)]
    index: Option<usize>,
    /// Twist c for ext, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    twist: Option<Vec<i64>>,
    #[arg(long, default_value = "both")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn field(s: &str) -> Result<FieldSpec, Error> {
    if s == "QQ" {
        return Ok(FieldSpec::Rationals);
    }
    let p = s.parse().map_err(|_| Error::Schema {
        pointer: "--field".into(),
        message: format!("expected QQ or a prime, found {s:?}"),
    })?;
    FieldSpec::prime(p)
}

fn job(command: Command, a: &JobArgs) -> Result<JobSpec, Error> {
    let ring = match (&a.ring, &a.builtin) {
        (Some(path), _) => RingSpec::Json(cli::read_json(path)?),
        (None, Some(b)) => {
            let params = b[1..]
                .iter()
                .map(|s| {
                    s.parse().map_err(|_| Error::Schema {
                        pointer: "--builtin".into(),
                        message: format!("expected an integer, found {s:?}"),
                    })
                })
                .collect::<Result<_, _>>()?;
            RingSpec::Builtin {
                name: b[0].clone(),
                params,
                field: field(&a.field)?,
            }
        }
        (None, None) => {
            return Err(Error::Schema {
                pointer: "--ring".into(),
                message: "give --ring FILE or --builtin NAME ARGS".into(),
            })
        }
    };
    let read = |p: &Option<PathBuf>| p.as_deref().map(cli::read_json).transpose();
    Ok(JobSpec {
        command,
        ring,
        module: read(&a.module)?,
        dm: read(&a.dm)?,
        options: Options {
            max_iter: a.max_iter,
            iterations: a.iterations,
            degree_list: read(&a.degree_list)?,
            index: a.index,
            twist: a.twist.clone(),
            format: a.format.parse()?,
        },
    })
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let (spec, out) = match args.command {
        Sub::Run { job, format, out } => {
            let spec = cli::read_json(&job).and_then(|v| cli::job_from_json(&v)).and_then(|mut s| {
                if let Some(f) = format {
                    s.options.format = f.parse()?;
                }
                Ok(s)
            });
            (spec, out)
        }
        sub => {
            let (command, a) = match sub {
                Sub::ResDm(a) => (Command::ResDm, a),
                Sub::MinimizeDm(a) => (Command::MinimizeDm, a),
                Sub::ResMinFlag(a) => (Command::ResMinFlag, a),
                Sub::ToricLl(a) => (Command::ToricLl, a),
                Sub::ToricRr(a) => (Command::ToricRr, a),
                Sub::LinearStrand(a) => (Command::LinearStrand, a),
                Sub::FreeRes(a) => (Command::FreeRes, a),
                Sub::Ext(a) => (Command::Ext, a),
                Sub::GradedPiece(a) => (Command::GradedPiece, a),
                Sub::Run { .. } => unreachable!(),
            };
            (job(command, &a), a.out)
        }
    };
    let result = spec.and_then(|s| cli::run_job(&s).map(|o| (o, s.options.format)));
    match result {
        Ok((output, format)) => {
            let text = output.render(format);
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            if !output.complete {
                eprintln!("warning: iteration budget exhausted; result is partial");
            }
            ExitCode::from(output.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
