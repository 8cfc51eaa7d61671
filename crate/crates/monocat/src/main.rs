use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand};
use monocat::config::{input_error, AlgebraSource, RunConfig};
use monocat::formats::AlgebraSpec;
use monocat::report::{exit_code_for, to_json, ErrorReport};
use monocat::{run_enumerate, run_suite, Context, ObjectClass, Suite};
use monocat_core::Budget;

#[derive(Parser)]
#[command(name = "monocat", version, about = "Monomorphism categories and their exact structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List indecomposable modules, objects of the monomorphism category, or Γ-modules.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// modules | s | gamma
        #[arg(long, default_value = "s")]
        objects: String,
    },
    /// Run a verification suite and report pass/fail per claim.
    Verify {
        #[command(flatten)]
        common: Common,
        /// axioms | classify | psi | counting | hereditary | frobenius | ar
        #[arg(long)]
        suite: String,
    },
    /// Write the JSON presentation of an algebra, e.g. one of the builders.
    Dump {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// nilpotent:N | preprojective:M | semisimple:N | path to an algebra JSON file
    #[arg(long)]
    algebra: String,
    /// `all` or a comma separated list of generator module files
    #[arg(long, default_value = "all")]
    subcat: String,
    #[arg(long)]
    p: Option<u32>,
    /// Dimension bound for modules of the subcategory (default: dim of the algebra)
    #[arg(long)]
    bound: Option<usize>,
    /// Bound on dim A + dim B for objects of the monomorphism category (default: three times --bound)
    #[arg(long)]
    object_bound: Option<usize>,
    /// canonical | cw | scw | all, or a comma separated list
    #[arg(long, default_value = "all")]
    kind: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Global budget in milliseconds
    #[arg(long, env = "MONOCAT_BUDGET_MS")]
    budget_ms: Option<u64>,
}

impl Common {
    fn context(&self) -> Result<Context> {
        let mut config = RunConfig::new(&self.algebra, &self.subcat, self.p, self.bound, &self.kind)?;
        if self.object_bound == Some(0) {
            return Err(input_error("--object-bound must be positive"));
        }
        config.object_bound = self.object_bound;
        let mut budget = Budget::unlimited();
        if let Some(ms) = self.budget_ms {
            let deadline = Instant::now() + Duration::from_millis(ms);
            budget = budget.with_stop(move || Instant::now() >= deadline);
        }
        Context::new(&config, &self.subcat, budget)
    }
}

fn write(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Enumerate { common, objects } => {
            let class: ObjectClass = objects.parse()?;
            let ctx = common.context()?;
            let listing = run_enumerate(&ctx, class)?;
            write(common.out.as_ref(), &to_json(&listing))?;
            Ok(0)
        }
        Command::Verify { common, suite } => {
            let suite: Suite = suite.parse()?;
            let ctx = common.context()?;
            let report = run_suite(&ctx, suite)?;
            write(common.out.as_ref(), &to_json(&report))?;
            Ok(report.exit_code())
        }
        Command::Dump { algebra, p, out } => {
            let alg = AlgebraSource::parse(&algebra)?.load(p)?;
            write(out.as_ref(), &to_json(&AlgebraSpec::from_algebra(&alg)))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let out = match &cli.command {
        Command::Enumerate { common, .. } | Command::Verify { common, .. } => common.out.clone(),
        Command::Dump { out, .. } => out.clone(),
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code_for(&e);
            eprintln!("monocat: {e:#}");
            let doc = ErrorReport {
                status: if code == 2 { "inconclusive" } else { "error" },
                exit_code: code,
                error: format!("{e:#}"),
            };
            if let Some(path) = out {
                let _ = std::fs::write(path, to_json(&doc));
            }
            code
        }
    };
    ExitCode::from(code as u8)
}
