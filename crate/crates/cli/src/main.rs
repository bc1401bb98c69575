mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Report;

#[derive(Parser, Debug)]
#[command(
    name = "kl",
    version,
    about = "Kripke-Lewis frames, update and revision axioms, and proof checking"
)]
struct Cli {
    /// Master seed for every sampled or generated object.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truth of a formula at a state of a model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        state: usize,
        #[arg(long)]
        formula: String,
    },
    /// The set of states of a model where a formula is true.
    TruthSet {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Validate a frame file and check frame properties or schemas on it.
    FrameCheck {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long = "property")]
        properties: Vec<String>,
        /// Schema or rule id, e.g. A_star_4.
        #[arg(long = "axiom")]
        axioms: Vec<String>,
    },
    /// List every frame on a small number of states.
    FrameEnum {
        #[arg(long)]
        states: usize,
        /// Keep only frames with this property.
        #[arg(long = "property")]
        properties: Vec<String>,
        #[arg(long)]
        limit: Option<usize>,
        /// Report only the number of frames.
        #[arg(long)]
        count: bool,
    },
    /// Check the update axioms on a model by truth sets.
    CheckKm {
        #[arg(long)]
        model: PathBuf,
        /// Defaults to every state.
        #[arg(long)]
        state: Option<usize>,
        /// Defaults to every axiom.
        #[arg(long = "axiom")]
        axioms: Vec<String>,
        /// Also check over characteristic formulas and compare.
        #[arg(long)]
        formula_level: bool,
    },
    /// Compare schema validity with the corresponding frame property.
    Correspond {
        #[arg(long)]
        states: usize,
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// Number of seeded frames to draw.
        #[arg(long)]
        sample: Option<usize>,
        /// `all` or schema ids.
        #[arg(long = "pair", default_value = "all")]
        pairs: Vec<String>,
    },
    /// Lifting lemmas over per-world update families.
    Worlds {
        #[command(subcommand)]
        command: WorldsCommand,
    },
    /// Same as `worlds check-lemma`.
    WorldsCheck(LemmaArgs),
    /// Hilbert proof checking.
    Prove {
        #[command(subcommand)]
        command: ProveCommand,
    },
    /// Same as `prove check`.
    ProveCheck(ProveArgs),
    /// Account for every update axiom inside a logic.
    VerifyContainment {
        #[arg(long, default_value = "AGM")]
        logic: String,
        /// Remove an axiom or rule from the logic first.
        #[arg(long = "without")]
        without: Vec<String>,
    },
    /// Run the acceptance battery.
    Suite {
        /// Criterion ids to run, e.g. 1,6a. Defaults to all.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = 10_000)]
        sampled_frames: usize,
        #[arg(long, default_value_t = 1_000)]
        families: usize,
        #[arg(long, default_value_t = 1_000)]
        formulas: usize,
    },
}

#[derive(Subcommand, Debug)]
enum WorldsCommand {
    /// Check a lifted lemma on one family or on many.
    CheckLemma(LemmaArgs),
    /// Emit a seeded family.
    Generate {
        #[arg(long, default_value_t = 2)]
        atoms: usize,
        #[arg(long, value_enum, default_value_t = ConstraintArg::K7)]
        constraint: ConstraintArg,
    },
}

#[derive(Args, Debug)]
struct LemmaArgs {
    #[arg(value_enum)]
    lemma: LemmaArg,
    /// A family file. Without it, families are enumerated (one atom) or
    /// generated (more atoms).
    #[arg(long, conflicts_with = "atoms")]
    family: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    atoms: usize,
    /// Generated families when `--atoms` exceeds one.
    #[arg(long, default_value_t = 1_000)]
    count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LemmaArg {
    K7s,
    K9s,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstraintArg {
    K7,
    K9,
    None,
}

#[derive(Subcommand, Debug)]
enum ProveCommand {
    /// Check scripts from a file or `builtin:ID`.
    Check(ProveArgs),
    /// List the builtin scripts.
    List,
    /// Print a builtin script in the file format.
    Show { id: String },
}

#[derive(Args, Debug)]
struct ProveArgs {
    /// A script file, or `builtin:ID`.
    target: String,
    /// Defaults to the logic each script names.
    #[arg(long)]
    logic: Option<String>,
    /// Remove an axiom or rule from the logic first.
    #[arg(long = "without")]
    without: Vec<String>,
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Eval {
            model,
            state,
            formula,
        } => commands::eval(model, *state, formula),
        Command::TruthSet { model, formula } => commands::truth_set(model, formula),
        Command::FrameCheck {
            frame,
            properties,
            axioms,
        } => commands::frame_check(frame, properties, axioms),
        Command::FrameEnum {
            states,
            properties,
            limit,
            count,
        } => commands::frame_enum(*states, properties, *limit, *count),
        Command::CheckKm {
            model,
            state,
            axioms,
            formula_level,
        } => commands::check_km(model, *state, axioms, *formula_level),
        Command::Correspond {
            states,
            exhaustive,
            sample,
            pairs,
        } => commands::correspond(*states, *exhaustive, *sample, pairs, cli.seed),
        Command::Worlds {
            command: WorldsCommand::CheckLemma(args),
        }
        | Command::WorldsCheck(args) => check_lemma(args, cli.seed),
        Command::Worlds {
            command: WorldsCommand::Generate { atoms, constraint },
        } => commands::worlds_generate(*atoms, constraint_of(*constraint), cli.seed),
        Command::Prove {
            command: ProveCommand::Check(args),
        }
        | Command::ProveCheck(args) => {
            commands::prove_check(&args.target, args.logic.as_deref(), &args.without)
        }
        Command::Prove {
            command: ProveCommand::List,
        } => Ok(commands::prove_list()),
        Command::Prove {
            command: ProveCommand::Show { id },
        } => commands::prove_show(id),
        Command::VerifyContainment { logic, without } => {
            commands::verify_containment(logic, without)
        }
        Command::Suite {
            only,
            sampled_frames,
            families,
            formulas,
        } => {
            let config = kl_core::suite::SuiteConfig {
                seed: cli.seed,
                sampled_frames: *sampled_frames,
                families: *families,
                formulas: *formulas,
            };
            commands::suite(&config, only)
        }
    }
}

fn constraint_of(c: ConstraintArg) -> kl_core::worlds::Constraint {
    use kl_core::worlds::Constraint;
    match c {
        ConstraintArg::K7 => Constraint::K7,
        ConstraintArg::K9 => Constraint::K9,
        ConstraintArg::None => Constraint::None,
    }
}

fn check_lemma(args: &LemmaArgs, seed: u64) -> anyhow::Result<Report> {
    let k9 = args.lemma == LemmaArg::K9s;
    match &args.family {
        Some(path) => commands::lemma_on_file(path, k9),
        None => commands::lemma_sweep(args.atoms, args.count, k9, seed),
    }
}

fn emit(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    let mut body = match cli.format {
        Format::Text => report.text.clone(),
        Format::Json => serde_json::to_string_pretty(&report.json)?,
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.out {
        Some(path) => fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|report| emit(&cli, &report).map(|()| report.holds));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
