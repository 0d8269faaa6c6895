use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use roofcalc::suite::{run_suite, SuiteConfig};
use roofcalc::{expr, json, nlist, text};
use roofcalc_core::bundles::cohomology_table;
use roofcalc_core::bwb::{cohomology, BundleFactor};
use roofcalc_core::hodge::middle_decomposition;
use roofcalc_core::koszul::{family_dimension, koszul_page, restricted_cohomology};
use roofcalc_core::motivic::l_equivalence_certificate;
use roofcalc_core::pluecker::{compound, probe_trial, ProbeReport};
use roofcalc_core::symfunc::{dimension_gap, find_witness, plethysm_wedge, PlethysmBudget};
use roofcalc_core::Partition;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "roofcalc",
    version,
    about = "Exact computations on G(n, 2n+1) and its roof"
)]
struct Cli {
    /// Compact JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest n·|λ| for plethysm computations.
    #[arg(long, global = true)]
    budget_degree: Option<u64>,
    /// One value, a list `2,3` or a range `2-5`.
    #[arg(long, global = true)]
    n: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology of one homogeneous bundle S^u U^∨ ⊗ S^q Q ⊗ O(t).
    Bwb {
        /// Partition for Q, e.g. `2,1,1`.
        #[arg(long, default_value = "")]
        q: String,
        /// Partition for U^∨.
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
    },
    /// Irreducible summands and cohomology of an expression.
    Decompose {
        #[arg(long)]
        expr: String,
    },
    #[command(subcommand)]
    Koszul(KoszulCmd),
    #[command(subcommand)]
    Motivic(MotivicCmd),
    #[command(subcommand)]
    Hodge(HodgeCmd),
    #[command(subcommand)]
    Plethysm(PlethysmCmd),
    #[command(subcommand)]
    Pluecker(PlueckerCmd),
    /// Runs the verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum KoszulCmd {
    /// Cohomology of the restriction to Y.
    Restrict {
        #[arg(long)]
        expr: String,
    },
    /// h^1(Y, T_Y).
    FamilyDim,
}

#[derive(Subcommand)]
enum MotivicCmd {
    Certificate,
}

#[derive(Subcommand)]
enum HodgeCmd {
    Middle,
}

#[derive(Subcommand)]
enum PlethysmCmd {
    /// Schur expansion of s_λ[e_n].
    Expand {
        #[arg(long)]
        lambda: String,
        /// Number of variables, default 2n+1.
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// First λ with determinant multiplicity at least two.
    Witness {
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
    Gap,
}

#[derive(Subcommand)]
enum PlueckerCmd {
    /// k-th compound of a matrix read from JSON (`-` for stdin).
    Compound {
        #[arg(long)]
        k: usize,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Randomized search for S ψ(A) = ψ(A) S^T.
    Probe {
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    paper_suite: bool,
    /// Include wall time in the report.
    #[arg(long)]
    timing: bool,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Cli {
    fn n_values(&self) -> Result<Option<Vec<usize>>> {
        self.n
            .as_deref()
            .map(nlist::parse)
            .transpose()
            .context("--n")
    }

    fn single_n(&self) -> Result<usize> {
        match self.n_values()?.as_deref() {
            Some([n]) if *n >= 1 => Ok(*n),
            Some([_]) => bail!("--n must be at least 1"),
            Some(_) => bail!("this command takes a single --n"),
            None => bail!("--n is required"),
        }
    }

    fn budget(&self) -> PlethysmBudget {
        self.budget_degree
            .map(PlethysmBudget::new)
            .unwrap_or_default()
    }

    fn emit(&self, v: &Value) {
        let v = json::with_schema(v.clone());
        if self.json {
            println!("{}", v);
        } else {
            print!("{}", text::render(&v));
        }
    }
}

fn partition_arg(s: &str) -> Result<Partition> {
    let s = s.trim();
    let mut parts = Vec::new();
    if !s.is_empty() {
        for x in s.split(',') {
            parts.push(
                x.trim()
                    .parse::<u32>()
                    .with_context(|| format!("bad partition entry `{}`", x))?,
            );
        }
    }
    parts.retain(|&p| p != 0);
    Ok(Partition::new(parts)?)
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Bwb { q, u, twist } => {
            let n = cli.single_n()?;
            let f = BundleFactor::new(n, partition_arg(u)?, partition_arg(q)?, *twist)?;
            let mut v = json::cohomology_result(&cohomology(&f));
            v["bundle"] = json!(f.to_string());
            cli.emit(&v);
        }
        Command::Decompose { expr: src } => {
            let n = cli.single_n()?;
            let e = expr::parse(src, n)?;
            let mut v = json::expr(&e);
            v["cohomology"] = json::table(&cohomology_table(&e));
            cli.emit(&v);
        }
        Command::Koszul(KoszulCmd::Restrict { expr: src }) => {
            let n = cli.single_n()?;
            let e = expr::parse(src, n)?;
            let v = json!({
                "bundle": json::expr(&e),
                "page": json::page(&koszul_page(&e, n)?),
                "restriction": json::restriction(&restricted_cohomology(&e, n)?),
            });
            cli.emit(&v);
        }
        Command::Koszul(KoszulCmd::FamilyDim) => {
            let n = cli.single_n()?;
            cli.emit(&json::family_dimension(n, &family_dimension(n)?));
        }
        Command::Motivic(MotivicCmd::Certificate) => {
            let n = cli.single_n()?;
            cli.emit(&json::certificate(&l_equivalence_certificate(n)));
        }
        Command::Hodge(HodgeCmd::Middle) => {
            let n = cli.single_n()?;
            cli.emit(&json::middle(&middle_decomposition(n)?));
        }
        Command::Plethysm(PlethysmCmd::Expand { lambda, nvars }) => {
            let n = cli.single_n()?;
            let lam = partition_arg(lambda)?;
            let nvars = nvars.unwrap_or(2 * n + 1);
            let e = plethysm_wedge(&lam, n, nvars, &cli.budget())?;
            let mut v = json::schur_expansion(&e);
            v["lambda"] = json::partition(&lam);
            v["n"] = json!(n);
            cli.emit(&v);
        }
        Command::Plethysm(PlethysmCmd::Witness { bound }) => {
            let n = cli.single_n()?;
            let w = find_witness(n, *bound, &cli.budget())?;
            let mut v = json::witness(w.as_ref());
            v["n"] = json!(n);
            v["bound"] = json!(bound);
            cli.emit(&v);
        }
        Command::Plethysm(PlethysmCmd::Gap) => {
            let n = cli.single_n()?;
            cli.emit(&json::gap(n, &dimension_gap(n)?));
        }
        Command::Pluecker(PlueckerCmd::Compound { k, input }) => {
            let raw: Value = serde_json::from_str(&read_input(input)?).context("matrix JSON")?;
            let m = json::parse_matrix(&raw)?;
            cli.emit(&json!({ "k": k, "matrix": json::matrix(&compound(&m, *k)?) }));
        }
        Command::Pluecker(PlueckerCmd::Probe { trials }) => {
            let n = cli.single_n()?;
            let hits: Vec<Option<u64>> = (0..*trials)
                .into_par_iter()
                .map(|t| probe_trial(n, cli.seed, t).map(|hit| hit.then_some(t)))
                .collect::<roofcalc_core::Result<_>>()?;
            let r = ProbeReport {
                n,
                trials: *trials,
                seed: cli.seed,
                incidences: hits.into_iter().flatten().collect(),
            };
            cli.emit(&json::probe(&r));
        }
        Command::Verify(args) => {
            if !args.paper_suite {
                bail!("nothing to verify; pass --paper-suite");
            }
            let cfg = SuiteConfig {
                n_values: cli
                    .n_values()?
                    .unwrap_or_else(|| SuiteConfig::default().n_values),
                budget: cli.budget(),
                seed: cli.seed,
            };
            if let Some(&bad) = cfg.n_values.iter().find(|&&n| n < 1) {
                bail!("n = {} is out of range", bad);
            }
            let start = Instant::now();
            let mut report = run_suite(&cfg);
            if args.timing {
                report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            let v = serde_json::to_value(&report)?;
            if let Some(path) = &args.out {
                std::fs::write(path, format!("{}\n", v))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            cli.emit(&v);
            if report.has_failure() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
