//! `boundrank`: command-line front end for bounded-rank spaces of symmetric
//! and alternating matrices over prime fields.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use boundrank::congruence::{congruence_test, invariant_profile, Congruence};
use boundrank::models::{build_model, catalog, ModelName};
use boundrank::rangecompat::enumerate_rc_maps;
use boundrank::search::{bounded_rank_search, flanders_scan, generation_check};
use boundrank::space::format;
use boundrank::verify::{run_suite, Suite, VerifyConfig, DEFAULT_SEED};
use boundrank::{AffineMatrixSpace, AmbientKind, Budget, Error, FieldSpec, Hyperplane, Matrix, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Worker threads for parallel searches and the verification runner.
const THREADS_ENV: &str = "BOUNDRANK_THREADS";

#[derive(Parser)]
#[command(name = "boundrank", version, about = "Bounded-rank affine spaces of symmetric and alternating matrices over GF(q)")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Largest space (in members) enumerated exhaustively.
    #[arg(long, global = true, default_value_t = Budget::default().members)]
    member_budget: u64,
    /// Largest number of GL_n elements scanned for congruence.
    #[arg(long, global = true, default_value_t = Budget::default().group)]
    group_budget: u64,
    /// Largest number of affine subspaces covered by a search.
    #[arg(long, global = true, default_value_t = Budget::default().spaces)]
    space_budget: u64,
    /// Largest number of linear maps enumerated by `rc-maps`.
    #[arg(long, global = true, default_value_t = Budget::default().maps)]
    map_budget: u64,
    /// Seed for the randomized checks of `verify`.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl GlobalOpts {
    fn budget(&self) -> Budget {
        Budget { members: self.member_budget, group: self.group_budget, spaces: self.space_budget, maps: self.map_budget }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Named model spaces.
    #[command(subcommand)]
    Models(ModelsCommand),
    /// Rank of a matrix given as `[[a,b],[c,d]]`.
    Rank {
        matrix: String,
        #[arg(long)]
        q: u32,
    },
    /// Upper-rank (maximal member rank) of a space file.
    Urk { file: PathBuf },
    /// Congruence invariants of a space file, one per line.
    Invariants { file: PathBuf },
    /// Exit 0 with a witness P (P A P^T = B) or 1 with the first differing
    /// invariant.
    Congruent { a: PathBuf, b: PathBuf },
    /// Exhaustive search for affine subspaces of bounded upper-rank.
    Search(SearchArgs),
    /// Bounded-rank search on rectangular matrices with the equality
    /// conditions evaluated on each survivor.
    Flanders {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        dim: usize,
    },
    /// Range-compatible linear maps on a full symmetric or alternating space.
    RcMaps {
        #[arg(long, value_enum)]
        ambient: SquareKind,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: u32,
    },
    /// Whether the members of rank greater than R affinely generate the space.
    Generation {
        file: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Minimal dim S_H over hyperplanes H for the translation space.
    HyperplaneScan { file: PathBuf },
    /// Run the verification catalog.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Random instances per field for each matrix-lemma check.
        #[arg(long, default_value_t = VerifyConfig::default().random_cases)]
        cases: usize,
        /// Random spaces per ambient for the key-lemma check.
        #[arg(long, default_value_t = VerifyConfig::default().random_spaces)]
        spaces: usize,
    },
}

#[derive(Subcommand)]
enum ModelsCommand {
    /// Print the catalog of model tags with their parameter constraints.
    List,
    /// Build a model and write it in the space file format.
    Build {
        tag: String,
        #[arg(long)]
        n: usize,
        /// Rank parameter (block size for `Z`); unused by Y1-Y3 and U.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        q: u32,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    ambient: AmbientArg,
    #[arg(long)]
    n: usize,
    /// Column count for `--ambient full`.
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    dim: usize,
    /// Group survivors by congruence and match them against the models.
    #[arg(long)]
    classify: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AmbientArg {
    Sym,
    Alt,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum SquareKind {
    Sym,
    Alt,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Models,
    Lemmas,
    Theorems,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Models => Suite::Models,
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::Theorems => Suite::Theorems,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Text for stdout and the exit status.
struct Outcome {
    text: String,
    status: u8,
    note: Option<String>,
}

impl Outcome {
    fn ok(text: impl Into<String>) -> Self {
        Outcome { text: text.into(), status: 0, note: None }
    }
}

fn field(q: u32) -> Result<FieldSpec> {
    FieldSpec::new(q)
}

fn read_space(path: &Path) -> Result<AffineMatrixSpace> {
    let text = fs::read_to_string(path).map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))?;
    format::parse(&text)
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::usage(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Outcome> {
    let budget = cli.global.budget();
    match cli.command {
        Command::Models(ModelsCommand::List) => {
            let mut out = String::from("tag\tparameter\tambient\tconstraint\n");
            for e in catalog() {
                out.push_str(&format!("{}\t{}\t{}\t{}\n", e.tag, e.parameter, e.ambient, e.constraint));
            }
            Ok(Outcome::ok(out))
        }
        Command::Models(ModelsCommand::Build { tag, n, r, q, out }) => {
            let name = ModelName::from_tag(&tag, r)?;
            let text = format::to_text(&build_model(name, n, field(q)?)?);
            match out {
                Some(path) => {
                    write_out(&path, &text)?;
                    Ok(Outcome::ok(""))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Rank { matrix, q } => {
            let m = Matrix::parse(field(q)?, &matrix)?;
            Ok(Outcome::ok(format!("{}\n", m.rank())))
        }
        Command::Urk { file } => {
            let s = read_space(&file)?;
            Ok(Outcome::ok(format!("{}\n", s.upper_rank(&budget)?)))
        }
        Command::Invariants { file } => {
            let s = read_space(&file)?;
            Ok(Outcome::ok(invariant_profile(&s, &budget)?.to_lines()))
        }
        Command::Congruent { a, b } => {
            let (a, b) = (read_space(&a)?, read_space(&b)?);
            Ok(match congruence_test(&a, &b, &budget)? {
                Congruence::Congruent(p) => Outcome::ok(format!("congruent\nwitness {p}\n")),
                Congruence::DifferentInvariant { field, left, right } => Outcome {
                    text: format!("not congruent\ninvariant {field}\nleft {left}\nright {right}\n"),
                    status: 1,
                    note: None,
                },
                Congruence::NoWitness => Outcome {
                    text: "not congruent\ninvariant none (profiles agree; no element of GL_n maps one to the other)\n".into(),
                    status: 1,
                    note: None,
                },
            })
        }
        Command::Search(args) => {
            let ambient = match args.ambient {
                AmbientArg::Sym => AmbientKind::Symmetric(args.n),
                AmbientArg::Alt => AmbientKind::Alternating(args.n),
                AmbientArg::Full => AmbientKind::Full {
                    n: args.n,
                    p: args.p.ok_or_else(|| Error::usage("--ambient full needs --p"))?,
                },
            };
            let report = bounded_rank_search(ambient, field(args.q)?, args.r, args.dim, args.classify, &budget)?;
            let text = report.to_text();
            match args.out {
                Some(path) => {
                    write_out(&path, &text)?;
                    Ok(Outcome::ok(""))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Flanders { n, p, r, q, dim } => {
            Ok(Outcome::ok(flanders_scan(n, p, r, field(q)?, dim, &budget)?.to_text()))
        }
        Command::RcMaps { ambient, p, q } => {
            let amb = match ambient {
                SquareKind::Sym => AmbientKind::Symmetric(p),
                SquareKind::Alt => AmbientKind::Alternating(p),
            };
            let e = enumerate_rc_maps(amb, field(q)?, &budget)?;
            let (local, delta, other) = e.counts();
            let mut text = format!(
                "ambient {amb}\nq {q}\nmaps_tested {}\nrange_compatible {}\nlocal {local}\nlocal_plus_delta {delta}\nother {other}\n",
                e.maps_tested,
                e.maps.len()
            );
            for (_, label) in &e.maps {
                text.push_str(&format!("map {label}\n"));
            }
            Ok(Outcome::ok(text))
        }
        Command::Generation { file, r } => {
            let s = read_space(&file)?;
            Ok(Outcome::ok(format!("generated {}\n", generation_check(&s, r, &budget)?)))
        }
        Command::HyperplaneScan { file } => {
            let s = read_space(&file)?.translation_space();
            let (dim, h) = s.hyperplane_scan(&budget)?;
            let mut text = format!("min_dim {dim}\nhyperplane {}\n", normal_text(&h));
            if s.field().is_char2() && matches!(s.ambient(), AmbientKind::Symmetric(_)) {
                let adapted = Hyperplane::all(s.field(), s.ambient().rows())
                    .map(|h| s.is_adapted(&h).map(|a| a.then_some(h)))
                    .find_map(|r| r.transpose());
                match adapted.transpose()? {
                    Some(h) => text.push_str(&format!("adapted {}\n", normal_text(&h))),
                    None => text.push_str("adapted none\n"),
                }
            }
            Ok(Outcome::ok(text))
        }
        Command::Verify { suite, cases, spaces } => {
            let config = VerifyConfig { seed: cli.global.seed, budget, random_cases: cases, random_spaces: spaces };
            let report = run_suite(suite.into(), &config);
            let note = report.first_failure().map(|c| format!("first failing check: {}", c.id));
            Ok(Outcome { text: report.to_text(), status: u8::from(!report.passed()), note })
        }
    }
}

fn normal_text(h: &Hyperplane) -> String {
    let parts: Vec<String> = h.normal().iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let threads: usize =
        value.parse().map_err(|_| Error::usage(format!("{THREADS_ENV} must be a positive integer, got `{value}`")))?;
    if threads == 0 {
        return Err(Error::usage(format!("{THREADS_ENV} must be positive")));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::usage(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.text.as_bytes());
            let _ = stdout.flush();
            if let Some(note) = outcome.note {
                eprintln!("{note}");
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
