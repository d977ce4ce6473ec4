//! Command-line surface over the ontology algebra.
//!
//! Boolean commands print `true`/`false` and exit with 0/1; ontology
//! producing commands print the serialized result (or write it to `--out`);
//! usage, parse and validation errors exit with 2 and a message on stderr.

use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ontolite::algebra::{self, RenamingMap};
use ontolite::graph::ConstraintGraph;
use ontolite::io::{
    export_dot, export_table, parse_constraint, parse_document, parse_name, parse_rename_pairs,
    serialize_ontology, ParsedDocument,
};
use ontolite::minimize::minimize_constraints;
use ontolite::reason::{all_consequences, empty_descriptions, equivalent_theories, implies};
use ontolite::{Inclusion, Name, Ontology};

#[derive(Parser)]
#[command(
    name = "ontolite",
    version,
    about = "An algebra of lightweight ontologies: implication checking, constraint minimization, projection, union, intersection and difference over a plain text format"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether an ontology logically implies a constraint
    Implies {
        /// Ontology file (`-` for stdin)
        file: String,
        /// Constraint in the file syntax, e.g. "mo:Label sub foaf:Agent ."
        constraint: String,
    },
    /// Check whether two ontologies have the same theory
    Equiv { a: String, b: String },
    /// List every consequence over the occurring descriptions
    Consequences {
        file: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List descriptions that are empty in every model
    Empty { file: String },
    /// Minimize the constraint set
    Minimize {
        file: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Project onto part of the vocabulary, keeping derived constraints
    Project {
        file: String,
        /// Names to keep (comma or space separated)
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        keep: Vec<String>,
        /// File with one name per line to keep
        #[arg(long)]
        keep_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Union of two ontologies
    Union {
        a: String,
        b: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constraints implied by both ontologies
    Intersect {
        a: String,
        b: String,
        /// Renaming applied to the second ontology (lines "old -> new")
        #[arg(long)]
        rename: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constraints implied by the first ontology but not the second
    Diff {
        a: String,
        b: String,
        /// Renaming applied to the second ontology (lines "old -> new")
        #[arg(long)]
        rename: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove the constraints listed in a file, then minimize
    Deprecate {
        file: String,
        /// File whose constraints are dropped
        #[arg(long)]
        drop: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Projection plus emptiness constraints for every dropped name
    Closed {
        file: String,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        keep: Vec<String>,
        #[arg(long)]
        keep_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the tagged constraint graph as Graphviz DOT
    Graph {
        file: String,
        /// Output path (`-` for stdout)
        #[arg(long)]
        dot: String,
    },
    /// Print the two-column constraint table (tab separated)
    Table { file: String },
}

struct CliError(String);

impl CliError {
    fn new(msg: impl Into<String>) -> Self {
        CliError(msg.into())
    }
}

impl From<ontolite::algebra::AlgebraError> for CliError {
    fn from(e: ontolite::algebra::AlgebraError) -> Self {
        CliError(e.to_string())
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::new(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::new(format!("{path}: {e}")))
    }
}

fn load(path: &str) -> Result<ParsedDocument, CliError> {
    let text = read_input(path)?;
    parse_document(&text).map_err(|e| CliError::new(format!("{path}:{e}")))
}

fn load_renamed(path: &str, rename: Option<&Path>) -> Result<ParsedDocument, CliError> {
    let doc = load(path)?;
    let Some(map_path) = rename else {
        return Ok(doc);
    };
    let text = fs::read_to_string(map_path)
        .map_err(|e| CliError::new(format!("{}: {e}", map_path.display())))?;
    let pairs = parse_rename_pairs(&text, &doc.prefixes)
        .map_err(|e| CliError::new(format!("{}:{e}", map_path.display())))?;
    let map = RenamingMap::new(pairs)?;
    let ontology = algebra::rename(&doc.ontology, &map)?;
    Ok(ParsedDocument {
        ontology,
        prefixes: doc.prefixes,
    })
}

fn keep_set(
    doc: &ParsedDocument,
    keep: &[String],
    keep_file: Option<&Path>,
) -> Result<BTreeSet<Name>, CliError> {
    let mut names = BTreeSet::new();
    for word in keep {
        names.insert(
            parse_name(word, &doc.prefixes).map_err(|e| CliError::new(format!("--keep {e}")))?,
        );
    }
    if let Some(path) = keep_file {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::new(format!("{}: {e}", path.display())))?;
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            names.insert(parse_name(line, &doc.prefixes).map_err(|e| {
                CliError::new(format!("{}:{}: {}", path.display(), idx + 1, e.message))
            })?);
        }
    }
    if names.is_empty() {
        return Err(CliError::new("nothing to keep: pass --keep or --keep-file"));
    }
    Ok(names)
}

fn emit(ontology: &Ontology, out: Option<&Path>) -> Result<(), CliError> {
    let text = serialize_ontology(ontology);
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::new(format!("{}: {e}", path.display()))),
    }
}

fn print_bool(value: bool) -> bool {
    println!("{value}");
    value
}

/// Runs a command; `Ok(false)` is the boolean-false outcome (exit code 1).
fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Implies { file, constraint } => {
            let doc = load(&file)?;
            let queries: Vec<Inclusion> = parse_constraint(&constraint, &doc.prefixes)
                .map_err(|e| CliError::new(format!("constraint {e}")))?;
            let result = queries
                .iter()
                .all(|q| implies(doc.ontology.constraints(), q));
            Ok(print_bool(result))
        }
        Command::Equiv { a, b } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let result = equivalent_theories(a.ontology.constraints(), b.ontology.constraints());
            Ok(print_bool(result))
        }
        Command::Consequences { file, out } => {
            let doc = load(&file)?;
            let consequences = all_consequences(doc.ontology.constraints());
            let ontology = Ontology::new(doc.ontology.vocabulary().clone(), consequences)
                .map_err(|e| CliError::new(e.to_string()))?;
            emit(&ontology, out.as_deref())?;
            Ok(true)
        }
        Command::Empty { file } => {
            let doc = load(&file)?;
            for concept in empty_descriptions(doc.ontology.constraints()) {
                println!("{concept}");
            }
            Ok(true)
        }
        Command::Minimize { file, out } => {
            let doc = load(&file)?;
            let minimized = Ontology::new(
                doc.ontology.vocabulary().clone(),
                minimize_constraints(doc.ontology.constraints()),
            )
            .map_err(|e| CliError::new(e.to_string()))?;
            emit(&minimized, out.as_deref())?;
            Ok(true)
        }
        Command::Project {
            file,
            keep,
            keep_file,
            out,
        } => {
            let doc = load(&file)?;
            let names = keep_set(&doc, &keep, keep_file.as_deref())?;
            let projected = algebra::project(&doc.ontology, &names)?;
            emit(&projected, out.as_deref())?;
            Ok(true)
        }
        Command::Union { a, b, out } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let united = algebra::union(&a.ontology, &b.ontology)?;
            emit(&united, out.as_deref())?;
            Ok(true)
        }
        Command::Intersect { a, b, rename, out } => {
            let first = load(&a)?;
            let second = load_renamed(&b, rename.as_deref())?;
            let result = algebra::intersect(&first.ontology, &second.ontology)?;
            emit(&result, out.as_deref())?;
            Ok(true)
        }
        Command::Diff { a, b, rename, out } => {
            let first = load(&a)?;
            let second = load_renamed(&b, rename.as_deref())?;
            let result = algebra::difference(&first.ontology, &second.ontology);
            emit(&result, out.as_deref())?;
            Ok(true)
        }
        Command::Deprecate { file, drop, out } => {
            let doc = load(&file)?;
            let drop_doc = load(&drop)?;
            let outcome = algebra::deprecate(&doc.ontology, drop_doc.ontology.constraints());
            for ignored in &outcome.ignored {
                eprintln!("warning: constraint not present, ignored: {ignored} .");
            }
            emit(&outcome.ontology, out.as_deref())?;
            Ok(true)
        }
        Command::Closed {
            file,
            keep,
            keep_file,
            out,
        } => {
            let doc = load(&file)?;
            let names = keep_set(&doc, &keep, keep_file.as_deref())?;
            let closed = algebra::closed_fragment(&doc.ontology, &names)?;
            emit(&closed, out.as_deref())?;
            Ok(true)
        }
        Command::Graph { file, dot } => {
            let doc = load(&file)?;
            let graph = ConstraintGraph::build(doc.ontology.constraints(), &BTreeSet::new());
            let text = export_dot(&graph);
            if dot == "-" {
                print!("{text}");
            } else {
                fs::write(&dot, text).map_err(|e| CliError::new(format!("{dot}: {e}")))?;
            }
            Ok(true)
        }
        Command::Table { file } => {
            let doc = load(&file)?;
            print!("{}", export_table(&doc.ontology));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version exit 0, usage errors exit 2
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
