//! `folkb` — well-founded and answer-set reasoning over FOL-programs.
//!
//! Exit codes: 0 success (consistent result), 1 usage/parse/semantic error,
//! 2 inconsistent well-founded fixpoint, 3 resource cap exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use folkb::{
    parse, parse_formula_str, parse_literal_list, render_json, render_text, render_trace_text,
    Engine, Error, Interpretation, Limits, Result,
};

#[derive(Parser)]
#[command(
    name = "folkb",
    version,
    about = "Well-founded and answer-set reasoning over rules combined with a first-order theory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Knowledge-base file (.folkb)
    file: PathBuf,

    /// Cap on unassigned shared atoms per extension check (2^N completions)
    #[arg(long, value_name = "N", default_value_t = 20)]
    max_extension_atoms: usize,

    /// Cap on atoms per subset enumeration (answer sets, up-to checks)
    #[arg(long, value_name = "N", default_value_t = 16)]
    max_enum_atoms: usize,

    /// Dump every CNF sent to the SAT core as numbered DIMACS files
    /// PREFIX-0000.cnf, PREFIX-0001.cnf, …
    #[arg(long, value_name = "PREFIX")]
    dump_cnf: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the well-founded semantics of the knowledge base
    Wfs {
        #[command(flatten)]
        common: Common,

        /// Emit the result as JSON (includes the iteration trace)
        #[arg(long)]
        json: bool,

        /// Print every iteration state before the summary
        #[arg(long)]
        trace: bool,
    },

    /// Enumerate well-supported answer sets, or verify one with --check
    Answersets {
        #[command(flatten)]
        common: Common,

        /// Emit the result as JSON
        #[arg(long)]
        json: bool,

        /// Comma-separated atoms naming the interpretation to verify
        /// instead of enumerating (the empty string names the empty one)
        #[arg(long, value_name = "ATOMS")]
        check: Option<String>,
    },

    /// Decide whether the theory plus assumed literals entails a formula
    Entail {
        #[command(flatten)]
        common: Common,

        /// Formula to decide, e.g. "~A(a)" or "forall X. (B(X) -> A(X))"
        formula: String,

        /// Comma-separated literals (`~` negates); only their
        /// shared-predicate projection is asserted alongside the theory
        #[arg(long, value_name = "LITERALS", default_value = "")]
        assume: String,

        /// Emit the result as JSON
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Wfs { common, .. }
            | Command::Answersets { common, .. }
            | Command::Entail { common, .. } => common,
        }
    }
}

fn build_engine(common: &Common) -> Result<Engine> {
    let text = fs::read_to_string(&common.file)?;
    let kb = parse(&text)?;
    for p in kb.unused_rule_predicates() {
        eprintln!("warning: declared rule predicate `{p}` does not occur in the knowledge base");
    }
    let mut engine = Engine::with_limits(
        &kb,
        Limits {
            max_extension_atoms: common.max_extension_atoms,
            max_enum_atoms: common.max_enum_atoms,
        },
    )?;
    if let Some(prefix) = &common.dump_cnf {
        engine.set_dump(prefix.clone())?;
    }
    Ok(engine)
}

fn run(command: &Command) -> Result<u8> {
    let engine = build_engine(command.common())?;
    match command {
        Command::Wfs { json, trace, .. } => {
            let result = engine.well_founded_semantics()?;
            if *json {
                println!("{}", render_json(&result));
            } else {
                if *trace {
                    print!("{}", render_trace_text(&result));
                }
                println!("{}", render_text(&result));
            }
            Ok(if result.inconsistent { 2 } else { 0 })
        }
        Command::Answersets { json, check, .. } => {
            if let Some(atoms_text) = check {
                let lits = parse_literal_list(atoms_text, &engine.kb().signature)?;
                if !lits.negatives().is_empty() {
                    return Err(Error::Formula(
                        "an interpretation is a set of atoms; `~` literals are not allowed here"
                            .into(),
                    ));
                }
                let i = Interpretation::new(lits.positives().clone());
                let is_answer_set = engine.is_well_supported_answer_set(&i)?;
                if *json {
                    println!("{}", serde_json::json!({ "answer_set": is_answer_set }));
                } else if is_answer_set {
                    println!("answer set");
                } else {
                    println!("not an answer set");
                }
            } else {
                let sets = engine.enumerate_answer_sets()?;
                if *json {
                    let arr: Vec<Vec<String>> = sets
                        .iter()
                        .map(|i| i.atoms.iter().map(|a| a.to_string()).collect())
                        .collect();
                    println!("{}", serde_json::json!({ "answer_sets": arr }));
                } else if sets.is_empty() {
                    println!("no answer sets");
                } else {
                    for s in &sets {
                        println!("{s}");
                    }
                }
            }
            Ok(0)
        }
        Command::Entail {
            formula,
            assume,
            json,
            ..
        } => {
            let sig = &engine.kb().signature;
            let phi = parse_formula_str(formula, sig)?;
            let premises = parse_literal_list(assume, sig)?.project_omega(sig);
            let entailed = engine.entails(&premises, &phi)?;
            if *json {
                println!("{}", serde_json::json!({ "entailed": entailed }));
            } else {
                println!("{}", if entailed { "true" } else { "false" });
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}: {e}", cli.command.common().file.display());
            match e {
                Error::Resource { .. } => ExitCode::from(3),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
