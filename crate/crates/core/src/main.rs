use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crossweight::certify::upper_bound_drawing;
use crossweight::graph::VertexId;
use crossweight::io::{
    export_dot, export_drawing, export_multigraph_dot, parse_graph, CertificateDocument, GraphDocument,
    HypothesisDto, IoError,
};
use crossweight::synth::{synthesize_with_rounds, SynthError};
use crossweight::validate::validate_hypotheses;

const EXIT_REJECTED: u8 = 2;
const EXIT_NOT_CERTIFIED: u8 = 3;
const EXIT_BAD_INPUT: u8 = 4;

/// Synthesize and check weightings that make a near-planar graph
/// crossing-critical.
#[derive(Parser)]
#[command(name = "crossweight", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the hypotheses for a graph document with a designated edge.
    Validate(Io),
    /// Build a certificate document for a graph document.
    Synthesize(SynthesizeArgs),
    /// Recompute every report stored in a certificate document.
    Certify(Io),
    /// Render a graph or certificate document.
    Export(ExportArgs),
}

#[derive(Args)]
struct Io {
    #[arg(long)]
    input: PathBuf,
    /// Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SynthesizeArgs {
    #[command(flatten)]
    io: Io,
    /// Relabel vertex i to the i-th entry of this comma-separated permutation
    /// before synthesis. The certificate is written in the new labels.
    #[arg(long, value_delimiter = ',')]
    seed_order: Option<Vec<VertexId>>,
    #[arg(long, default_value_t = crossweight::balance::DEFAULT_PERTURB_ROUNDS)]
    max_perturb_rounds: usize,
    #[arg(long, value_enum, default_value_t = Format::Native)]
    format: Format,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Native,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Failure {
        Failure { code, message: message.to_string() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Failure {
        Failure::new(EXIT_BAD_INPUT, e)
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_BAD_INPUT, format!("{}: {e}", path.display())))
}

fn write(io: &Io, text: &str) -> Result<(), Failure> {
    match &io.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::new(1, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn validate(io: &Io) -> Result<(), Failure> {
    let doc = parse_graph(&read(&io.input)?)?;
    let uv = doc.designated_edge()?;
    let report = validate_hypotheses(&doc.graph, uv).map_err(|e| Failure::new(EXIT_BAD_INPUT, e))?;
    write(io, &HypothesisDto::from_report(&report).to_json())?;
    if report.accepted() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_REJECTED, "hypotheses rejected"))
    }
}

fn seed_relabel(doc: GraphDocument, perm: &[VertexId]) -> Result<GraphDocument, Failure> {
    let n = doc.graph.vertex_count();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
        return Err(IoError::Schema {
            field: "seed-order".into(),
            message: format!("not a permutation of 0..{n}"),
        }
        .into());
    }
    let graph = doc.graph.relabel(perm).map_err(|e| Failure::new(EXIT_BAD_INPUT, e))?;
    Ok(GraphDocument { graph, uv: doc.uv.map(|e| e.map(|x| perm[x])), weights: None, multiplicities: None })
}

fn synthesize(args: &SynthesizeArgs) -> Result<(), Failure> {
    let mut doc = parse_graph(&read(&args.io.input)?)?;
    if let Some(perm) = &args.seed_order {
        doc = seed_relabel(doc, perm)?;
    }
    let uv = doc.designated_edge()?;
    let cert = synthesize_with_rounds(&doc.graph, uv, args.max_perturb_rounds).map_err(|e| match e {
        SynthError::Hypotheses(vs) => Failure::new(
            EXIT_REJECTED,
            vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
        ),
        other => Failure::new(EXIT_NOT_CERTIFIED, other),
    })?;
    let out = CertificateDocument::new(&cert)?;
    match args.format {
        Format::Native => write(&args.io, &out.to_json())?,
        Format::Dot => write(&args.io, &export_dot(&cert.graph, Some(&cert.omega)))?,
    }
    if !out.conditions.failing.is_empty() {
        return Err(Failure::new(EXIT_NOT_CERTIFIED, format!("conditions {:?} failed", out.conditions.failing)));
    }
    if out.criticality.is_none() {
        return Err(Failure::new(EXIT_NOT_CERTIFIED, "criticality could not be certified"));
    }
    Ok(())
}

#[derive(Serialize)]
struct CertifySummary {
    conditions_match: bool,
    criticality_match: bool,
    failing_conditions: Vec<u8>,
    cr_value: Option<String>,
    edges_certified: usize,
    all_strict: bool,
}

fn certify(io: &Io) -> Result<(), Failure> {
    let doc = CertificateDocument::parse(&read(&io.input)?)?;
    let replay = doc.replay()?;
    let crit = replay.criticality.as_ref();
    let summary = CertifySummary {
        conditions_match: replay.conditions_match,
        criticality_match: replay.criticality_match,
        failing_conditions: replay.conditions.failing.clone(),
        cr_value: crit.map(|c| c.cr_value.clone()),
        edges_certified: crit.map_or(0, |c| c.witnesses.iter().filter(|w| w.strict).count()),
        all_strict: crit.is_some_and(|c| c.witnesses.iter().all(|w| w.strict)),
    };
    write(io, &json(&summary))?;
    if !replay.matches() {
        Err(Failure::new(EXIT_NOT_CERTIFIED, "stored reports differ from the recomputed ones"))
    } else if !replay.certified() || !summary.all_strict {
        Err(Failure::new(EXIT_NOT_CERTIFIED, "certificate does not establish criticality"))
    } else {
        Ok(())
    }
}

/// Graph documents export as DOT or normalized JSON; certificate documents
/// as the weighted graph in DOT or the upper-bound drawing.
fn export(args: &ExportArgs) -> Result<(), Failure> {
    let text = read(&args.io.input)?;
    let is_certificate = serde_json::from_str::<serde_json::Value>(&text)
        .ok()
        .is_some_and(|v| v.get("certificate").is_some());
    let out = if is_certificate {
        let cert = CertificateDocument::parse(&text)?.certificate()?;
        match args.format {
            Format::Dot => export_dot(&cert.graph, Some(&cert.omega)),
            Format::Native => {
                let d = upper_bound_drawing(&cert).map_err(|e| Failure::new(EXIT_NOT_CERTIFIED, e))?;
                export_drawing(&d, &cert.omega)?
            }
        }
    } else {
        let doc = parse_graph(&text)?;
        match (args.format, &doc.multiplicities) {
            (Format::Dot, Some(m)) => export_multigraph_dot(m)?,
            (Format::Dot, None) => export_dot(&doc.graph, doc.weights.as_ref()),
            (Format::Native, _) => doc.to_json(),
        }
    };
    write(&args.io, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(io) => validate(io),
        Command::Synthesize(args) => synthesize(args),
        Command::Certify(io) => certify(io),
        Command::Export(args) => export(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crossweight::families;
    use crossweight::graph::Edge;

    #[test]
    fn seed_relabel_rejects_non_permutations() {
        let doc = GraphDocument { uv: Some(Edge::new(0, 1)), ..GraphDocument::new(families::complete(3)) };
        assert!(seed_relabel(doc.clone(), &[0, 0, 1]).is_err());
        assert!(seed_relabel(doc.clone(), &[0, 1]).is_err());
        let moved = seed_relabel(doc, &[2, 0, 1]).unwrap();
        assert_eq!(moved.uv, Some(Edge::new(2, 0)));
    }
}
