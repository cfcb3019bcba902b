mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fusionsharp::hlim::DEFAULT_DEGREES;
use fusionsharp::mackey::TruncationReading;
use fusionsharp::sharp::ModuleMode;
use fusionsharp::{Error, Result};
use serde_json::{json, Value};

use commands::Outcome;
use config::{Profile, RunConfig, SourceArgs};

const SCHEMA: &str = "fusionsharp.report/1";

#[derive(Parser)]
#[command(name = "fusionsharp", version, about = "Fusion systems, simple Mackey functors and sharpness checks over F_p")]
struct Cli {
    /// Write the JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Fraction of scan tuples to evaluate.
    #[arg(long, global = true)]
    sample: Option<f64>,
    /// Worker threads (reports do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, env = "FUSIONSHARP_PROFILE", default_value_t = Profile::Desk)]
    profile: Profile,
    /// Stop scans after this many tuple positions.
    #[arg(long, global = true)]
    max_tuples: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Group(GroupCommand),
    #[command(subcommand)]
    Fusion(FusionCommand),
    #[command(subcommand)]
    Mackey(MackeyCommand),
    #[command(subcommand)]
    Sharp(SharpCommand),
    #[command(subcommand)]
    Hlim(HlimCommand),
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Order, central series and maximal-class data.
    Inspect(SourceArgs),
}

#[derive(Subcommand)]
enum FusionCommand {
    /// Build the fusion system and check saturation.
    Build(SourceArgs),
    /// List centric class representatives.
    Centrics(SourceArgs),
    /// List essential subgroups and check the order constraint.
    Essentials(SourceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Collection {
    All,
    Centric,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    RCapXq,
    QCapXr,
}

#[derive(Subcommand)]
enum MackeyCommand {
    /// Check the Mackey axioms for every simple functor.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = Collection::All)]
        collection: Collection,
        #[arg(long, value_enum, default_value_t = Reading::RCapXq)]
        reading: Reading,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Modules {
    Simple,
    Regular,
}

#[derive(Subcommand)]
enum SharpCommand {
    /// Evaluate the composite through every non-centric intersection.
    Scan {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = Modules::Simple)]
        modules: Modules,
        /// List every evaluated tuple.
        #[arg(long)]
        list_all: bool,
    },
    /// Run the structural property checks.
    Lemmas(SourceArgs),
}

#[derive(Subcommand)]
enum HlimCommand {
    /// Higher limits over the centric orbit category.
    Compute {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = DEFAULT_DEGREES)]
        degrees: usize,
        /// Also report functors attached to centric subgroups.
        #[arg(long)]
        include_centric: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) => 2,
        Error::Resource { .. } => 3,
        Error::Certificate(_) | Error::Internal(_) => 4,
    }
}

fn run(cli: &Cli) -> Result<(RunConfig, Outcome)> {
    let mut budgets = cli.profile.budgets();
    budgets.max_tuples = cli.max_tuples.or(budgets.max_tuples);
    let sample = cli.sample.or(cli.profile.default_sample());
    let (name, source, options): (&str, &SourceArgs, Value) = match &cli.command {
        Command::Group(GroupCommand::Inspect(s)) => ("group inspect", s, json!({})),
        Command::Fusion(FusionCommand::Build(s)) => ("fusion build", s, json!({})),
        Command::Fusion(FusionCommand::Centrics(s)) => ("fusion centrics", s, json!({})),
        Command::Fusion(FusionCommand::Essentials(s)) => ("fusion essentials", s, json!({})),
        Command::Mackey(MackeyCommand::Verify { source, collection, reading }) => (
            "mackey verify",
            source,
            json!({
                "collection": match collection { Collection::All => "all", Collection::Centric => "centric" },
                "reading": match reading { Reading::RCapXq => "r_cap_xq", Reading::QCapXr => "q_cap_xr" },
            }),
        ),
        Command::Sharp(SharpCommand::Scan { source, modules, list_all }) => (
            "sharp scan",
            source,
            json!({ "modules": match modules { Modules::Simple => "simple", Modules::Regular => "regular" }, "list_all": list_all }),
        ),
        Command::Sharp(SharpCommand::Lemmas(s)) => ("sharp lemmas", s, json!({})),
        Command::Hlim(HlimCommand::Compute { source, degrees, include_centric }) => {
            ("hlim compute", source, json!({ "degrees": degrees, "include_centric": include_centric }))
        }
    };
    let loaded = source.load(&budgets)?;
    let f = &loaded.fusion;
    let config = RunConfig {
        command: name.to_string(),
        prime: f.group().prime(),
        group: loaded.group_label.clone(),
        mode: source.mode,
        ambient: source.ambient.clone(),
        fusion_file: source.fusion_file.as_ref().map(|p| p.display().to_string()),
        profile: cli.profile,
        budgets: budgets.clone(),
        seed: cli.seed,
        sample,
        options,
    };
    let scan_config = |modules, list_all| commands::scan_config(&budgets, cli.seed, sample, modules, list_all);
    let outcome = match &cli.command {
        Command::Group(_) => commands::group_inspect(f, &budgets)?,
        Command::Fusion(FusionCommand::Build(_)) => commands::fusion_build(f, &budgets)?,
        Command::Fusion(FusionCommand::Centrics(_)) => commands::fusion_centrics(f, &budgets)?,
        Command::Fusion(FusionCommand::Essentials(_)) => commands::fusion_essentials(f, &budgets)?,
        Command::Mackey(MackeyCommand::Verify { collection, reading, .. }) => {
            let reading = match reading {
                Reading::RCapXq => TruncationReading::RCapXq,
                Reading::QCapXr => TruncationReading::QCapXr,
            };
            commands::mackey_verify(f, &budgets, cli.seed, matches!(collection, Collection::Centric), reading)?
        }
        Command::Sharp(SharpCommand::Scan { modules, list_all, .. }) => {
            let modules = match modules {
                Modules::Simple => ModuleMode::Simple,
                Modules::Regular => ModuleMode::Regular,
            };
            commands::sharp_scan(f, &scan_config(modules, *list_all))?
        }
        Command::Sharp(SharpCommand::Lemmas(_)) => commands::sharp_lemmas(f, &budgets, cli.seed, &scan_config(ModuleMode::Simple, false))?,
        Command::Hlim(HlimCommand::Compute { degrees, include_centric, .. }) => {
            commands::hlim_compute(f, &budgets, cli.seed, *degrees, *include_centric, &scan_config(ModuleMode::Simple, false))?
        }
    };
    Ok((config, outcome))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("error: cannot start {n} worker threads");
            return ExitCode::from(2);
        }
    }
    let (config, outcome) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    for line in &outcome.summary {
        println!("{line}");
    }
    println!("{}", if outcome.passed { "pass" } else { "FAIL" });
    if let Some(path) = &cli.out {
        let report = json!({
            "schema": SCHEMA,
            "version": env!("CARGO_PKG_VERSION"),
            "config": config,
            "passed": outcome.passed,
            "result": outcome.result,
        });
        let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
