use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use brinv_core::complex::{betti, k_y, SliceOptions};
use brinv_core::gamma::{classify, gamma, star_witness};
use brinv_core::pushing::{choose_edge, evaluate_chain};
use brinv_core::text;
use brinv_core::{DyadicBox, GroupElement};
use brinv_verify::{run_suite, SuiteOptions, VerifyError};
use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "brinv", version, about = "Patterns, contraction graphs and pushing maps for 2V and 3V")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        s: Option<u8>,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
        /// Number of random cases for the randomized part.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Homology of the slice below a pattern.
    Homology {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        box_only: bool,
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Pushing map of a chain with its certificate.
    Push {
        #[arg(long)]
        chain: PathBuf,
    },
    /// The contraction graph of a below-set.
    Gamma {
        /// Base pattern.
        #[arg(long)]
        base: PathBuf,
        /// Below-set over the same base.
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Group operations on elements given as `dom -> ran` files.
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
}

#[derive(Subcommand)]
enum GroupOp {
    /// `g` then `h`.
    Compose { g: PathBuf, h: PathBuf },
    Inverse { g: PathBuf },
    Equal { g: PathBuf, h: PathBuf },
    /// Image of a box, e.g. `01:e`.
    Apply {
        g: PathBuf,
        #[arg(long = "box")]
        target: String,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: brinv_core::Error,
    },
    #[error(transparent)]
    Core(#[from] brinv_core::Error),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if !is_budget(e) => 1,
            _ => 2,
        }
    }
}

fn is_budget(e: &brinv_core::Error) -> bool {
    matches!(
        e,
        brinv_core::Error::BudgetExceeded(_) | brinv_core::Error::StarSearchBudgetExceeded(_)
    )
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse<T>(path: &Path, f: impl Fn(&str) -> brinv_core::Result<T>) -> Result<T, CliError> {
    f(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn verify(
    suite: &str,
    opts: SuiteOptions,
    json_out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let report = run_suite(suite, &opts)?;
    println!("{}", report.summary());
    for (k, v) in &report.stats {
        println!("  {k}: {v}");
    }
    for f in report.failures.iter().take(5) {
        println!("--- failure [{}]\n{}", f.check, f.input.trim_end());
    }
    if let Some(path) = json_out {
        write(path, &report.to_json())?;
    }
    Ok(if report.budget_exceeded.is_some() {
        ExitCode::from(2)
    } else if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn homology(
    pattern: &Path,
    box_only: bool,
    max_dim: usize,
    budget: usize,
    json_out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let start = Instant::now();
    let y = Arc::new(parse(pattern, text::parse_pattern)?);
    let slice = k_y(&y, SliceOptions { box_only, budget })?;
    let cx = slice.order_complex(max_dim + 1, budget.saturating_mul(20), |_| true)?;
    let h = betti(&cx, max_dim)?;
    let torsion: Vec<Vec<String>> = h
        .torsion
        .iter()
        .map(|t| t.iter().map(|x| x.to_string()).collect())
        .collect();
    let report = json!({
        "vertices": slice.len(),
        "simplices_by_dim": cx.counts(),
        "betti": h.betti,
        "torsion": torsion,
        "elapsed": start.elapsed().as_secs_f64(),
    });
    println!("vertices: {}", slice.len());
    println!("simplices by dimension: {:?}", cx.counts());
    println!("betti: {:?}", h.betti);
    if let Some(path) = json_out {
        write(path, &serde_json::to_string_pretty(&report).expect("json"))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn push(chain: &Path) -> Result<ExitCode, CliError> {
    let chain = parse(chain, text::parse_chain)?;
    let report = evaluate_chain(&chain)?;
    print!("{}", text::write_below_set(&report.m));
    let cert = json!({
        "t": report.t,
        "involves": report.involves,
        "bound": report.bound,
        "ok": report.ok(),
    });
    println!("{cert}");
    if let Some(why) = report.describe_failure() {
        eprintln!("certificate violation: {why}");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn show_gamma(base: &Path, target: &Path, dot: bool) -> Result<ExitCode, CliError> {
    let y = parse(base, text::parse_pattern)?;
    let a = parse(target, text::parse_below_set)?;
    if **a.base() != y {
        return Err(CliError::Usage("the target is not over the given base".into()));
    }
    let g = gamma(&a);
    if dot {
        print!("{}", g.to_dot());
        return Ok(ExitCode::SUCCESS);
    }
    print!("{}", g.to_edge_list());
    for comp in g.components().into_iter().filter(|c| !c.edges.is_empty()) {
        let boxes: Vec<String> = comp.vertices.iter().map(|v| a.leaf_box(*v).to_string()).collect();
        let star = star_witness(&a, &comp)?.is_some();
        println!(
            "# component {{{}}}: {}{}",
            boxes.join(", "),
            classify(&comp).name(),
            if star { ", star-connected" } else { "" }
        );
    }
    if !a.is_top() && (a.s() == 2 || a.s() == 3) {
        match choose_edge(&a) {
            Ok(c) => println!(
                "# chosen: {} <-> {} : {}",
                a.leaf_box(c.edge.i),
                a.leaf_box(c.edge.j),
                c.edge.colour
            ),
            Err(e) => println!("# chosen: none ({e})"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn element(path: &Path) -> Result<GroupElement, CliError> {
    parse(path, text::parse_element)
}

fn group(op: &GroupOp) -> Result<ExitCode, CliError> {
    match op {
        GroupOp::Compose { g, h } => print!("{}", text::write_element(&element(g)?.compose(&element(h)?)?)),
        GroupOp::Inverse { g } => print!("{}", text::write_element(&element(g)?.inverse())),
        GroupOp::Equal { g, h } => println!("{}", element(g)?.equal(&element(h)?)?),
        GroupOp::Apply { g, target } => {
            let fields: Vec<&str> = target.split(':').collect();
            let b = DyadicBox::from_fields(&fields)
                .ok_or_else(|| CliError::Usage(format!("bad box `{target}`")))?;
            println!("{}", element(g)?.apply_box(&b)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify {
            suite,
            s,
            max_size,
            seed,
            budget,
            samples,
            json,
        } => verify(
            &suite,
            SuiteOptions {
                s,
                max_size,
                seed,
                budget,
                samples,
            },
            json.as_deref(),
        ),
        Command::Homology {
            pattern,
            box_only,
            max_dim,
            budget,
            json,
        } => homology(&pattern, box_only, max_dim, budget, json.as_deref()),
        Command::Push { chain } => push(&chain),
        Command::Gamma { base, target, dot } => show_gamma(&base, &target, dot),
        Command::Group { op } => group(&op),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
