use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qcb::canonical::{a_path, a_vector, canonical_matrix, global_column, marsh_path, weights_of};
use qcb::check::{check_kind, check_shape, dominant_weights_up_to, Report};
use qcb::crystal::{component_bfs, crystal_edges};
use qcb::shapes::{enumerate_columns, is_admissible, Column, Shape, Tabloid};
use qcb::{AlgebraKind, DominantWeight, Error, Family, Weight};

mod render;

const EXIT_DOMAIN: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "qcb", version, about = "Canonical bases of irreducible U_q(so_N)-modules")]
struct Cli {
    /// Lie type, B or D
    #[arg(long = "type", global = true)]
    family: Option<Family>,

    #[arg(long, global = true)]
    rank: Option<usize>,

    /// Accept D2, for which no result is guaranteed
    #[arg(long, global = true)]
    experimental: bool,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Tex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the columns of one height, marking the admissible ones
    Columns {
        #[arg(long)]
        height: usize,
        #[arg(long)]
        admissible_only: bool,
    },
    /// Crystal graph of V(λ) as an edge list of readings
    Crystal {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Global basis vector G(C) of an admissible column
    Marsh {
        /// Letters top to bottom, e.g. 0,0,0,0 or 2,-3
        #[arg(long, allow_hyphen_values = true)]
        column: String,
    },
    /// The A(T) path and expansion of an orthogonal tableau
    Apath {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Columns separated by `/`, e.g. 2,0,0/2,-3/3, with an optional leading s:... spin column
        #[arg(long, allow_hyphen_values = true)]
        tableau: String,
        /// Read --tableau as rows instead of columns
        #[arg(long)]
        rows: bool,
    },
    /// Matrix of the canonical basis on the tabloid basis
    Canonical {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// ε-coordinates of one weight, `a/2` allowed; all weight spaces when omitted
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run the invariant suite
    Check {
        #[arg(long, default_value_t = 3)]
        b_max: usize,
        #[arg(long, default_value_t = 3)]
        d_max: usize,
        /// Highest weights with Σλ_i up to this level
        #[arg(long, default_value_t = 2)]
        level: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
    Io(io::Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn kind_of(cli: &Cli) -> Result<AlgebraKind, Failure> {
    let family = cli.family.ok_or_else(|| Failure::Usage("--type is required".into()))?;
    let rank = cli.rank.ok_or_else(|| Failure::Usage("--rank is required".into()))?;
    let kind =
        if cli.experimental { AlgebraKind::new_experimental(family, rank) } else { AlgebraKind::new(family, rank) };
    Ok(kind?)
}

fn shape_of(kind: AlgebraKind, lambda: &str) -> Result<Shape, Failure> {
    let lambda = DominantWeight::parse(lambda, kind.rank)?;
    Ok(Shape::new(&lambda, kind)?)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| Failure::Io(io::Error::other(e)))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Columns { height, admissible_only } => {
            let kind = kind_of(cli)?;
            if *height == 0 || *height > kind.rank {
                return Err(Failure::Domain(Error::InvalidColumn(format!("height {height} for rank {}", kind.rank))));
            }
            let rows: Vec<(Column, bool)> = enumerate_columns(kind, *height, *admissible_only)
                .into_iter()
                .map(|c| {
                    let adm = is_admissible(kind, &c);
                    (c, adm)
                })
                .collect();
            Ok(render::columns(fmt, kind, *height, &rows))
        }
        Command::Crystal { lambda } => {
            let kind = kind_of(cli)?;
            let shape = shape_of(kind, lambda)?;
            let vertices = component_bfs(&shape.highest_tabloid().reading(kind));
            let edges = crystal_edges(&vertices);
            Ok(render::crystal(fmt, &shape, &vertices, &edges))
        }
        Command::Marsh { column } => {
            let kind = kind_of(cli)?;
            let c = Column::parse(kind, column)?;
            let path = marsh_path(kind, &c)?;
            let g = global_column(kind, &c)?;
            Ok(render::marsh(fmt, kind, &c, &path, &g))
        }
        Command::Apath { lambda, tableau, rows } => {
            let kind = kind_of(cli)?;
            let shape = shape_of(kind, lambda)?;
            let t = if *rows { Tabloid::parse_rows(kind, tableau)? } else { Tabloid::parse(kind, tableau)? };
            let path = a_path(&shape, &t)?;
            let a = a_vector(&shape, &t)?;
            Ok(render::apath(fmt, &shape, &t, &path, &a))
        }
        Command::Canonical { lambda, weight, jobs } => {
            let kind = kind_of(cli)?;
            let shape = shape_of(kind, lambda)?;
            let weights: Vec<Weight> = match weight {
                Some(w) => vec![Weight::parse_eps(w, kind.rank)?],
                None => weights_of(&shape),
            };
            let matrices = pool(*jobs)?
                .install(|| weights.par_iter().map(|mu| canonical_matrix(&shape, mu)).collect::<Result<Vec<_>, _>>())?;
            Ok(render::canonical(fmt, &matrices, weight.is_some()))
        }
        Command::Check { b_max, d_max, level, jobs } => {
            let mut kinds: Vec<AlgebraKind> =
                (2..=*b_max).map(|n| AlgebraKind::new(Family::B, n)).collect::<Result<_, _>>()?;
            kinds.extend((3..=*d_max).map(|n| AlgebraKind::new(Family::D, n)).collect::<Result<Vec<_>, _>>()?);
            let mut tasks: Vec<Shape> = Vec::new();
            for &kind in &kinds {
                for lambda in dominant_weights_up_to(kind, *level) {
                    tasks.push(Shape::new(&lambda, kind)?);
                }
            }
            let reports: Vec<Report> = pool(*jobs)?.install(|| {
                let mut out: Vec<Report> = kinds.par_iter().map(|&k| check_kind(k)).collect();
                out.extend(tasks.par_iter().map(check_shape).collect::<Vec<_>>());
                out
            });
            let mut report = Report::default();
            for r in reports {
                report.merge(r);
            }
            let text = render::check(fmt, &report);
            if report.all_passed() {
                Ok(text)
            } else {
                emit(cli, &text)?;
                Err(Failure::Checks)
            }
        }
    }
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|text| emit(&cli, &text).map_err(Failure::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { EXIT_INTERNAL } else { EXIT_DOMAIN })
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Checks) => {
            eprintln!("error: invariant checks failed");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
