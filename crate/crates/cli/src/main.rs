//! Command-line surface: parse inputs, run the invariant computations and
//! classifications, and emit reports with citation chains.
//!
//! Exit codes: 0 on success, 2 on input errors (syntax, unreadable files),
//! 3 on context errors (impossible embedding data, out-of-range table
//! lookups), 1 on an internal rule contradiction.

mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use integrability::classify::{
    homotopy_classes, stiefel_pi, ClassifyError, EmbeddingContext, FrameKind,
};
use integrability::diagram::LinkDiagram;
use integrability::dual_graph::{alternating_orientation, AlternationOutcome, DualGraph};
use integrability::invariants;
use integrability::manifold::parse_expr;
use integrability::rules;
use integrability::verdict::Verdict;
use integrability::TriState;

use report::{
    collect_citations, verdict_rows, Citation, ComponentClasses, InputEcho, Invariants,
    PropertyReport, Report,
};

/// Integrability analyzer for links and embedded manifolds.
#[derive(Parser)]
#[command(name = "integrability", version, about)]
struct Cli {
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads to fan out over multiple inputs.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze link diagrams: invariants plus integrability verdicts.
    ///
    /// Each INPUT is read as a file when a file of that name exists, and as
    /// inline signed Gauss code otherwise.
    Link {
        #[arg(required = true, value_name = "INPUT")]
        inputs: Vec<String>,
    },

    /// Classify a manifold embedded in Euclidean n-space.
    Classify {
        /// Manifold expression, e.g. "S3", "L(4,1)", "T2 x S3", "#_3 T3",
        /// or "custom(dim; betti...; compact; connected; parallelizable)".
        expr: String,

        /// Ambient dimension n.
        #[arg(short = 'n', long = "dim-ambient", value_name = "N")]
        dim_ambient: u32,

        /// Declare every component of the manifold non-compact.
        #[arg(long)]
        open: bool,

        /// Assert outside knowledge about normal-bundle triviality.
        #[arg(long, value_name = "yes|no|unknown")]
        nb_trivial: Option<TriState>,

        /// Gauss-code file for the embedding of a closed curve in 3-space.
        #[arg(long, value_name = "FILE")]
        diagram: Option<String>,
    },

    /// Look up frame-field homotopy tables.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },

    /// Orient the tiles of a dual graph alternately, or report an odd
    /// cycle obstruction.
    ///
    /// Each INPUT is read as a file when a file of that name exists, and as
    /// inline edge-list text otherwise: first line the vertex count, then
    /// one "j k" pair per line.
    Graph {
        #[arg(required = true, value_name = "INPUT")]
        inputs: Vec<String>,
    },
}

#[derive(Subcommand)]
enum TableKind {
    /// k-th homotopy group of the Stiefel manifold of (n-k)-frames.
    Stiefel {
        #[arg(short)]
        k: u32,
        #[arg(short)]
        n: u32,
    },

    /// Homotopy classes of tangent or normal frame fields along a
    /// k-manifold with r compact components in n-space.
    Homotopy {
        #[arg(short)]
        k: u32,
        #[arg(short)]
        n: u32,
        /// Which frame bundle the fields trivialize.
        #[arg(long, value_enum)]
        frame: FrameArg,
        /// Number of compact components.
        #[arg(short, default_value_t = 1)]
        r: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameArg {
    Tangent,
    Normal,
}

impl FrameArg {
    fn kind(self) -> FrameKind {
        match self {
            FrameArg::Tangent => FrameKind::TangentFrame,
            FrameArg::Normal => FrameKind::NormalFrame,
        }
    }
}

/// An error destined for stderr together with its process exit code.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

/// Context problems exit 3; a rule contradiction exits 1.
fn classify_error(e: ClassifyError) -> CliError {
    let code = match e {
        ClassifyError::Contradiction(_) => 1,
        _ => 3,
    };
    CliError {
        code,
        message: e.to_string(),
    }
}

/// A finished report plus, per verdict row and chain entry, the facts each
/// rule consumed (shown only in the text rendering).
type Built = (Report, Vec<Vec<Vec<String>>>);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Link { inputs } => run_many(cli, inputs, build_link_report),
        Command::Graph { inputs } => run_many(cli, inputs, build_graph_report),
        Command::Classify {
            expr,
            dim_ambient,
            open,
            nb_trivial,
            diagram,
        } => {
            let built = build_classify_report(
                expr,
                *dim_ambient,
                *open,
                *nb_trivial,
                diagram.as_deref(),
            )?;
            emit(cli, &[built]);
            Ok(())
        }
        Command::Table { kind } => {
            let built = build_table_report(kind)?;
            emit(cli, &[built]);
            Ok(())
        }
    }
}

/// Builds a report per input — in parallel when --jobs allows — then prints
/// them in input order. Output is byte-identical for every job count: all
/// builders are pure, and printing stops at the first failed input exactly
/// as sequential processing would.
fn run_many(
    cli: &Cli,
    inputs: &[String],
    build: fn(&str) -> Result<Built, CliError>,
) -> Result<(), CliError> {
    let jobs = (cli.jobs as usize).min(inputs.len()).max(1);
    let mut slots: Vec<Option<Result<Built, CliError>>> = Vec::new();
    slots.resize_with(inputs.len(), || None);

    if jobs == 1 {
        for (slot, input) in slots.iter_mut().zip(inputs) {
            *slot = Some(build(input));
        }
    } else {
        let chunk = inputs.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            for (input_chunk, slot_chunk) in inputs.chunks(chunk).zip(slots.chunks_mut(chunk)) {
                scope.spawn(move || {
                    for (slot, input) in slot_chunk.iter_mut().zip(input_chunk) {
                        *slot = Some(build(input));
                    }
                });
            }
        });
    }

    let mut done = Vec::with_capacity(slots.len());
    for slot in slots {
        done.push(slot.expect("every input was processed")?);
    }
    emit(cli, &done);
    Ok(())
}

/// Writes the documents to stdout. A broken pipe (e.g. the consumer was
/// `head`) quietly ends the process with success, Unix-style.
fn emit(cli: &Cli, docs: &[Built]) {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (i, (report, facts)) in docs.iter().enumerate() {
        let text = if cli.json {
            report.to_json()
        } else if i > 0 {
            format!("\n{}", report.to_text(facts))
        } else {
            report.to_text(facts)
        };
        if let Err(e) = out.write_all(text.as_bytes()) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            eprintln!("error: cannot write report: {e}");
            std::process::exit(2);
        }
    }
}

/// Resolves an argument to (text, source label): file contents when a file
/// of that name exists, the argument itself otherwise.
fn read_input(raw: &str) -> Result<(String, String), CliError> {
    let path = Path::new(raw);
    if path.is_file() {
        match std::fs::read_to_string(path) {
            Ok(contents) => Ok((contents.trim().to_string(), raw.to_string())),
            Err(e) => Err(CliError::input(format!("cannot read {raw}: {e}"))),
        }
    } else {
        Ok((raw.trim().to_string(), "inline".to_string()))
    }
}

/// Per-row, per-chain-entry facts consumed by the rules, for text output.
fn verdict_facts(v: &Verdict) -> Vec<Vec<Vec<String>>> {
    v.properties()
        .iter()
        .map(|(_, p)| p.chain.iter().map(|a| a.inputs.clone()).collect())
        .collect()
}

fn build_link_report(raw: &str) -> Result<Built, CliError> {
    let (text, source) = read_input(raw)?;
    let d = LinkDiagram::parse_gauss(&text).map_err(|e| CliError::input(e.to_string()))?;

    let r = d.component_count();
    let lk = invariants::linking_matrix(&d);
    let mut whitney = Vec::with_capacity(r);
    let mut classes = Vec::with_capacity(r);
    for i in 0..r {
        let component_error = |e: invariants::ComponentIndexError| CliError::input(e.to_string());
        whitney.push(invariants::whitney_number(&d, i).map_err(component_error)?);
        classes.push(ComponentClasses {
            component: i,
            curvatura_integra: invariants::curvatura_integra_mod2(&d, i)
                .map_err(component_error)?
                .value,
            relative_class: invariants::relative_class(&d, i).map_err(component_error)?,
            normal_class: invariants::seifert_normal_class(&d, i)
                .map_err(component_error)?
                .value,
        });
    }

    let verdict = invariants::si_link_verdict(&d);
    let rows = verdict_rows(&verdict);
    let citations = collect_citations(&rows);
    let facts = verdict_facts(&verdict);

    let mut options = BTreeMap::new();
    options.insert("source".to_string(), source);
    options.insert("canonical".to_string(), d.to_gauss());

    let report = Report {
        input: InputEcho {
            command: "link".to_string(),
            text,
            options,
        },
        invariants: Invariants {
            linking_matrix: Some(lk.rows().to_vec()),
            whitney_numbers: Some(whitney),
            seifert_circles: Some(invariants::seifert_circles(&d).circle_count()),
            component_classes: Some(classes),
            ..Invariants::default()
        },
        verdicts: rows,
        citations,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    Ok((report, facts))
}

fn build_classify_report(
    expr: &str,
    n: u32,
    open: bool,
    nb_trivial: Option<TriState>,
    diagram: Option<&str>,
) -> Result<Built, CliError> {
    let m = parse_expr(expr).map_err(|e| CliError::input(e.to_string()))?;

    let mut options = BTreeMap::new();
    options.insert("k".to_string(), m.dim().to_string());
    options.insert("n".to_string(), n.to_string());
    if open {
        options.insert("open".to_string(), "true".to_string());
    }
    if let Some(t) = nb_trivial {
        options.insert("nb-trivial".to_string(), t.to_string());
    }

    let mut ctx = EmbeddingContext::new(m, n).map_err(classify_error)?;
    if open {
        ctx = ctx.with_open(true);
    }
    if let Some(t) = nb_trivial {
        ctx = ctx.with_normal_override(t);
    }
    if let Some(path) = diagram {
        let contents = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {path}: {e}")))?;
        let d = LinkDiagram::parse_gauss(contents.trim())
            .map_err(|e| CliError::input(e.to_string()))?;
        options.insert("diagram".to_string(), path.to_string());
        ctx = ctx.with_diagram(d);
    }
    ctx.validate().map_err(classify_error)?;

    let verdict = integrability::classify(&ctx).map_err(classify_error)?;
    let rows = verdict_rows(&verdict);
    let citations = collect_citations(&rows);
    let facts = verdict_facts(&verdict);

    let mut inv = Invariants::default();
    if let Ok(betti) = ctx.manifold.z2_betti() {
        inv.betti = Some(betti);
    }
    if ctx.compact {
        if let Ok(chi) = ctx.manifold.euler_characteristic() {
            inv.euler_characteristic = Some(chi);
        }
        if ctx.k % 2 == 1 {
            if let Ok(s) = ctx.manifold.semicharacteristic() {
                inv.semicharacteristic = Some(s);
            }
        }
    }

    let report = Report {
        input: InputEcho {
            command: "classify".to_string(),
            text: expr.to_string(),
            options,
        },
        invariants: inv,
        verdicts: rows,
        citations,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    Ok((report, facts))
}

fn build_table_report(kind: &TableKind) -> Result<Built, CliError> {
    let (text, options, group, rule) = match kind {
        TableKind::Stiefel { k, n } => {
            let group = stiefel_pi(*k, *n).map_err(classify_error)?;
            let mut options = BTreeMap::new();
            options.insert("k".to_string(), k.to_string());
            options.insert("n".to_string(), n.to_string());
            (
                format!("stiefel k={k} n={n}"),
                options,
                group,
                &rules::STIEFEL_TABLE,
            )
        }
        TableKind::Homotopy { k, n, frame, r } => {
            let group = homotopy_classes(*r, *k, *n, frame.kind()).map_err(classify_error)?;
            let frame_name = match frame {
                FrameArg::Tangent => "tangent",
                FrameArg::Normal => "normal",
            };
            let mut options = BTreeMap::new();
            options.insert("k".to_string(), k.to_string());
            options.insert("n".to_string(), n.to_string());
            options.insert("frame".to_string(), frame_name.to_string());
            options.insert("r".to_string(), r.to_string());
            let rule = match frame {
                FrameArg::Tangent => &rules::HOMOTOPY_TANGENT,
                FrameArg::Normal => &rules::HOMOTOPY_NORMAL,
            };
            (
                format!("homotopy k={k} n={n} frame={frame_name} r={r}"),
                options,
                group,
                rule,
            )
        }
    };

    let citation = Citation::of(rule);
    let report = Report {
        input: InputEcho {
            command: "table".to_string(),
            text,
            options,
        },
        invariants: Invariants {
            group: Some(group.to_string()),
            ..Invariants::default()
        },
        verdicts: Vec::new(),
        citations: vec![citation],
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    Ok((report, Vec::new()))
}

fn build_graph_report(raw: &str) -> Result<Built, CliError> {
    let (text, source) = read_input(raw)?;
    let g = DualGraph::parse(&text).map_err(|e| CliError::input(e.to_string()))?;

    let mut inv = Invariants::default();
    let alternating = match alternating_orientation(&g) {
        AlternationOutcome::Alternating(signs) => {
            inv.orientation = Some(signs);
            "true"
        }
        AlternationOutcome::OddCycle(cycle) => {
            inv.odd_cycle = Some(cycle);
            "false"
        }
    };
    let citation = Citation::of(&rules::GRAPH_ALTERNATING);
    let rows = vec![PropertyReport {
        property: "alternating_orientation".to_string(),
        value: alternating.to_string(),
        chain: vec![citation.clone()],
    }];

    let mut options = BTreeMap::new();
    options.insert("source".to_string(), source);
    options.insert("vertices".to_string(), g.vertex_count().to_string());
    options.insert("edges".to_string(), g.edges().len().to_string());

    let report = Report {
        input: InputEcho {
            command: "graph".to_string(),
            text,
            options,
        },
        invariants: inv,
        verdicts: rows,
        citations: vec![citation],
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    Ok((report, vec![vec![vec![format!(
        "{} vertices, {} edges",
        g.vertex_count(),
        g.edges().len()
    )]]]))
}
