//! Command-line front end: `validate`, `oracle`, `translate` and `analyze`.
//!
//! Exit codes: 0 valid (or success), 1 invalid, 2 any error. Errors are
//! printed to stderr as one line, `ERROR <code>: <message>`.

pub mod report;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use shaperec::rdf::{parse_ntriples, parse_turtle_subset};
use shaperec::semantics::{
    brute_force_validate_with, validate_with, DEFAULT_MAX_PAIRS, DEFAULT_ORACLE_MAX_PAIRS,
};
use shaperec::{
    read_document_with, render, translate, vocabulary_report, Document, Graph, ReaderOptions, SemanticsMode,
    ValidationError,
};

use report::ReportDocument;

pub const EXIT_VALID: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "shaperec",
    version,
    about = "Validate RDF graphs against SHACL shapes, including recursive ones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a data graph with the SCC-pruned engine.
    Validate(ValidateArgs),
    /// Validate by enumerating every assignment.
    Oracle(OracleArgs),
    /// Print the SCL sentence of a shapes graph.
    Translate(TranslateArgs),
    /// Report recursion, dependency edges and fragment letters.
    Analyze(AnalyzeArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Data graph, Turtle or N-Triples (by `.nt` extension).
    #[arg(long)]
    data: PathBuf,
    #[command(flatten)]
    shapes: ShapesArgs,
    #[arg(long, default_value = "standard", value_parser = parse_mode)]
    semantics: SemanticsMode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ShapesArgs {
    /// Shapes graph, Turtle or N-Triples.
    #[arg(long)]
    shapes: PathBuf,
    /// Warn about unsupported `sh:` predicates instead of failing.
    #[arg(long)]
    allow_unknown: bool,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Limit on guessed (node, shape) pairs.
    #[arg(long, env = "SHAPEREC_MAX_PAIRS", default_value_t = DEFAULT_MAX_PAIRS)]
    max_pairs: usize,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Limit on enumerated (node, shape) pairs.
    #[arg(long, default_value_t = DEFAULT_ORACLE_MAX_PAIRS)]
    max_pairs: usize,
}

#[derive(Args, Debug)]
struct TranslateArgs {
    #[command(flatten)]
    shapes: ShapesArgs,
    /// Output file, or `-` for stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    shapes: ShapesArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_mode(s: &str) -> Result<SemanticsMode, String> {
    s.parse()
}

#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    fn new(code: &'static str, message: impl fmt::Display) -> Self {
        CliError {
            code,
            message: message.to_string().replace('\n', " "),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ERROR {}: {}", self.code, self.message)
    }
}

impl From<ValidationError> for CliError {
    fn from(e: ValidationError) -> Self {
        let code = match e {
            ValidationError::Recursion { .. } => "recursion",
            ValidationError::SearchBudgetExceeded { .. } | ValidationError::OracleBudgetExceeded { .. } => {
                "budget"
            }
        };
        CliError::new(code, e)
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_VALID;
            }
            // clap's message without the usage block, on one line
            let text = e.to_string();
            let message: Vec<&str> = text
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with("For more information"))
                .collect();
            let message = message.join(" ");
            let _ = writeln!(
                stderr,
                "{}",
                CliError::new("usage", message.trim_start_matches("error: "))
            );
            return EXIT_ERROR;
        }
    };
    let result = match cli.command {
        Command::Validate(a) => cmd_validate(&a, stdout, stderr),
        Command::Oracle(a) => cmd_oracle(&a, stdout, stderr),
        Command::Translate(a) => cmd_translate(&a, stdout, stderr),
        Command::Analyze(a) => cmd_analyze(&a, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            EXIT_ERROR
        }
    }
}

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))?;
    let parsed = if path.extension().is_some_and(|e| e == "nt") {
        parse_ntriples(&text)
    } else {
        parse_turtle_subset(&text)
    };
    parsed.map_err(|e| CliError::new("parse", format!("{}: {e}", path.display())))
}

fn load_document(args: &ShapesArgs, stderr: &mut dyn Write) -> Result<Document, CliError> {
    let g = load_graph(&args.shapes)?;
    let options = ReaderOptions {
        allow_unknown: args.allow_unknown,
    };
    let outcome = read_document_with(&g, &options)
        .map_err(|e| CliError::new("shapes", format!("{}: {e}", args.shapes.display())))?;
    for w in &outcome.warnings {
        let _ = writeln!(stderr, "WARNING: {w}");
    }
    Ok(outcome.document)
}

fn emit_report(
    result: &shaperec::ValidationResult,
    format: Format,
    stdout: &mut dyn Write,
) -> Result<i32, CliError> {
    let doc = ReportDocument::from(result);
    let text = match format {
        Format::Text => doc.to_text(),
        Format::Json => format!("{}\n", doc.to_json()),
    };
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::new("io", e))?;
    Ok(if result.valid { EXIT_VALID } else { EXIT_INVALID })
}

fn cmd_validate(a: &ValidateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_graph(&a.input.data)?;
    let d = load_document(&a.input.shapes, stderr)?;
    let result = validate_with(&g, &d, a.input.semantics, a.max_pairs)?;
    emit_report(&result, a.input.format, stdout)
}

fn cmd_oracle(a: &OracleArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_graph(&a.input.data)?;
    let d = load_document(&a.input.shapes, stderr)?;
    let result = brute_force_validate_with(&g, &d, a.input.semantics, a.max_pairs)?;
    emit_report(&result, a.input.format, stdout)
}

fn cmd_translate(a: &TranslateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let d = load_document(&a.shapes, stderr)?;
    let text = render(&translate(&d));
    if a.out == "-" {
        stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::new("io", e))?;
    } else {
        std::fs::write(&a.out, text).map_err(|e| CliError::new("io", format!("{}: {e}", a.out)))?;
    }
    Ok(EXIT_VALID)
}

#[derive(Serialize)]
struct Analysis {
    recursive: bool,
    fragment: String,
    shapes: Vec<ShapeAnalysis>,
    edges: Vec<[String; 2]>,
    vocabulary: Vec<VocabularyEntry>,
}

#[derive(Serialize)]
struct ShapeAnalysis {
    name: String,
    recursive: bool,
    targets: usize,
}

#[derive(Serialize)]
struct VocabularyEntry {
    predicate: String,
    supported: bool,
}

fn cmd_analyze(a: &AnalyzeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let shapes_graph = load_graph(&a.shapes.shapes)?;
    let d = load_document(&a.shapes, stderr)?;
    let report = d.recursion();
    let analysis = Analysis {
        recursive: report.recursive,
        fragment: d.fragment_letters().to_string(),
        shapes: d
            .shapes()
            .map(|s| ShapeAnalysis {
                name: s.name.to_string(),
                recursive: report.shapes.get(&s.name).copied().unwrap_or(false),
                targets: s.targets.len(),
            })
            .collect(),
        edges: d
            .dependency_graph()
            .edges()
            .into_iter()
            .map(|(from, to)| [from.to_string(), to.to_string()])
            .collect(),
        vocabulary: vocabulary_report(&shapes_graph)
            .into_iter()
            .map(|(p, supported)| VocabularyEntry {
                predicate: p.to_string(),
                supported,
            })
            .collect(),
    };
    let text = match a.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&analysis).expect("analysis serializes")
        ),
        Format::Text => {
            let mut out = format!(
                "recursive: {}\nfragment: {}\nshapes: {}\n",
                analysis.recursive,
                analysis.fragment,
                analysis.shapes.len()
            );
            for s in &analysis.shapes {
                let flag = if s.recursive { "recursive" } else { "non-recursive" };
                out.push_str(&format!("  {} {flag} targets={}\n", s.name, s.targets));
            }
            out.push_str(&format!("edges: {}\n", analysis.edges.len()));
            for [from, to] in &analysis.edges {
                out.push_str(&format!("  {from} -> {to}\n"));
            }
            out.push_str("vocabulary:\n");
            for v in &analysis.vocabulary {
                let flag = if v.supported { "supported" } else { "unsupported" };
                out.push_str(&format!("  {} {flag}\n", v.predicate));
            }
            out
        }
    };
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::new("io", e))?;
    Ok(EXIT_VALID)
}
