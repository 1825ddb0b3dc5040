//! The `plumbcalc` command line.
//!
//! Results go to stdout (JSON unless `--format` says otherwise), diagnostics
//! to stderr. Exit status is 0 on success, 1 on a domain error or a survey
//! with counterexamples, 2 on a usage error.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bnp::{bnp_descriptor, compare, BnpError};
use crate::cusp::{cusp_graph, cusp_reverse_orientation, cusp_word_of_graph, is_cusp_graph, monodromy, CuspError, CuspWord};
use crate::cycles::{anti_degrees, fundamental_cycle, CycleError};
use crate::format::{graph_from_json, graph_to_dot, graph_to_json, graph_to_json_value, FormatError};
use crate::graph::{intersection_matrix, is_negative_definite, shape_classify, GraphError, PlumbingGraph, Shape, VertexId};
use crate::lens::{graph_to_lens_both, is_lens_graph, lens_graph, lens_reverse_orientation, neg_cont_frac, LensError, LensParams};
use crate::resolution::{blow_down, blow_up, central_vertices, pi_tilde, BlowUpSite, ResolutionError};
use crate::survey::{survey_cusp, survey_lens, SurveyReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lens(#[from] LensError),
    #[error(transparent)]
    Cusp(#[from] CuspError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Bnp(#[from] BnpError),
    #[error("format {0} is not available for this command")]
    UnsupportedFormat(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Dot,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "plumbcalc", version, about = "Plumbing graph calculus for Hirzebruch-Jung and cusp singularities")]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Extra diagnostics on stderr.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

/// Graph arguments are a path to a `plumbing-graph/v1` JSON file, or
/// `lens:p,q`, or `cusp:b1,b2,...`.
#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal plumbing chain of the lens space L(p,q).
    Lens { p: i64, q: i64 },
    /// Negative continued fraction of p/q.
    Contfrac { p: i64, q: i64 },
    /// Orientation reversal of a lens space or a cusp cycle.
    Reverse {
        #[arg(long, num_args = 2, value_names = ["P", "Q"], conflicts_with = "cusp", required_unless_present = "cusp")]
        lens: Option<Vec<i64>>,
        #[arg(long, value_name = "GRAPH")]
        cusp: Option<String>,
    },
    /// Fundamental cycle by Laufer's algorithm, with k_i = -(Z . E_i).
    FundamentalCycle { graph: String },
    /// The graph decorated with k_i arrows from its fundamental cycle.
    Arrows { graph: String },
    /// Blow up an edge point or a free point.
    Blowup {
        graph: String,
        #[arg(long, value_name = "A,B", conflicts_with = "vertex", required_unless_present = "vertex")]
        edge: Option<String>,
        #[arg(long, value_name = "A")]
        vertex: Option<VertexId>,
    },
    /// Blow down a (-1)-vertex of valency at most 2.
    Blowdown {
        graph: String,
        #[arg(long, value_name = "A")]
        vertex: VertexId,
    },
    /// Blow up the middle edge of every even string.
    Pitilde { graph: String },
    /// Inner bilipschitz descriptor.
    Bnp { graph: String },
    /// Topological and bilipschitz comparison of two graphs.
    Compare { first: String, second: String },
    /// Recognize a cusp cycle.
    CuspCheck { graph: String },
    /// Torus-bundle monodromy of a cusp cycle.
    Monodromy { graph: String },
    /// Check descriptor separation over all lens spaces with p <= pmax.
    SurveyLens {
        #[arg(long, default_value_t = 200)]
        pmax: i64,
    },
    /// Check descriptor separation over cusp words up to length kmax.
    SurveyCusp {
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        #[arg(long, default_value_t = 5)]
        bmax: i64,
    },
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the exit status.
pub fn run_command<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e @ (CliError::Usage(_) | CliError::UnsupportedFormat(_))) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn load_graph(arg: &str) -> Result<PlumbingGraph, CliError> {
    if let Some(rest) = arg.strip_prefix("lens:") {
        let nums = parse_ints(rest)?;
        let [p, q] = nums[..] else {
            return Err(CliError::Usage(format!("expected lens:p,q, got {arg:?}")));
        };
        return Ok(lens_graph(LensParams::new(p, q)?));
    }
    if let Some(rest) = arg.strip_prefix("cusp:") {
        let terms = parse_ints(rest)?;
        if let Some(&b) = terms.iter().find(|&&b| b < 1) {
            return Err(CliError::Usage(format!("cusp terms must be positive, got {b}")));
        }
        let eulers: Vec<i64> = terms.iter().map(|b| -b).collect();
        return Ok(PlumbingGraph::cycle(&eulers)?);
    }
    let text = std::fs::read_to_string(arg).map_err(|source| CliError::Io { path: arg.to_string(), source })?;
    Ok(graph_from_json(&text)?)
}

fn parse_ints(list: &str) -> Result<Vec<i64>, CliError> {
    list.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("not an integer: {t:?}"))))
        .collect()
}

fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Vertex order for display: chains from the end with the smaller id,
/// cycles from the smallest id towards its smaller neighbour.
fn display_order(graph: &PlumbingGraph) -> (Shape, Vec<VertexId>) {
    let shape = shape_classify(graph);
    let order = match &shape {
        Shape::Chain(o) => {
            let mut o = o.clone();
            if o.first() > o.last() {
                o.reverse();
            }
            o
        }
        Shape::Cycle(o) => {
            let start = o.iter().position(|&id| id == *o.iter().min().unwrap()).unwrap();
            let mut o = o.clone();
            o.rotate_left(start);
            if o.len() > 2 && o[1] > o[o.len() - 1] {
                o[1..].reverse();
            }
            o
        }
        Shape::Other => graph.ids().collect(),
    };
    (shape, order)
}

pub fn graph_text(graph: &PlumbingGraph) -> String {
    let (shape, order) = display_order(graph);
    let eulers: Vec<String> = order.iter().map(|&id| graph.vertex(id).unwrap().euler.to_string()).collect();
    let mut line = match shape {
        Shape::Chain(_) | Shape::Cycle(_) => format!("{shape}: {}", eulers.join(" ")),
        Shape::Other => {
            let edges: Vec<String> = graph.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
            format!("graph: {} | edges {}", eulers.join(" "), edges.join(" "))
        }
    };
    if graph.vertices().iter().any(|v| v.arrows > 0) {
        let arrows: Vec<String> = order.iter().map(|&id| graph.vertex(id).unwrap().arrows.to_string()).collect();
        line.push_str(&format!(" | arrows: {}", arrows.join(" ")));
    }
    line
}

fn emit_graph(graph: &PlumbingGraph, format: OutputFormat, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => writeln!(out, "{}", graph_to_json(graph)),
        OutputFormat::Dot => write!(out, "{}", graph_to_dot(graph)),
        OutputFormat::Text => writeln!(out, "{}", graph_text(graph)),
    }
}

/// Serializes in declaration order rather than through `Value`.
fn emit_struct<T: serde::Serialize>(value: &T, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(value).expect("plain data serializes"))
}

fn emit_json(value: &Value, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{value}")
}

fn emit_survey(report: &SurveyReport, format: OutputFormat, out: &mut dyn Write) -> Result<i32, CliError> {
    match format {
        OutputFormat::Json => emit_struct(report, out),
        OutputFormat::Text => {
            let params: Vec<String> = report.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(
                out,
                "survey {} ({}): pairs={} oriented_homeo={} unoriented_only={} bilipschitz_distinct={} rate_twins={} skipped={} counterexamples={}",
                report.survey,
                params.join(" "),
                report.pairs,
                report.oriented_homeo,
                report.unoriented_only,
                report.bilipschitz_distinct,
                report.rate_twins,
                report.skipped,
                report.counterexamples.len()
            )
            .and_then(|_| report.counterexamples.iter().try_for_each(|c| writeln!(out, "counterexample: {c}")))
        }
        OutputFormat::Dot => return Err(CliError::UnsupportedFormat("dot")),
    }
    .map_err(io_err)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn io_err(source: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let fmt = cli.format;
    let no_dot = |f: OutputFormat| if f == OutputFormat::Dot { Err(CliError::UnsupportedFormat("dot")) } else { Ok(()) };
    match &cli.command {
        Command::Lens { p, q } => {
            let params = LensParams::new(*p, *q)?;
            let g = lens_graph(params);
            if cli.verbose {
                let _ = writeln!(err, "{params}: continued fraction {}", neg_cont_frac(params));
            }
            emit_graph(&g, fmt, out).map_err(io_err)?;
        }
        Command::Contfrac { p, q } => {
            no_dot(fmt)?;
            let params = LensParams::new(*p, *q)?;
            let cf = neg_cont_frac(params);
            match fmt {
                OutputFormat::Text => writeln!(out, "{p}/{q} = {cf}"),
                _ => emit_json(&json!({"p": p, "q": q, "terms": cf.terms()}), out),
            }
            .map_err(io_err)?;
        }
        Command::Reverse { lens, cusp } => match (lens, cusp) {
            (Some(pq), _) => {
                let params = LensParams::new(pq[0], pq[1])?;
                let rev = lens_reverse_orientation(params);
                let cf = neg_cont_frac(rev);
                match fmt {
                    OutputFormat::Json => emit_json(
                        &json!({"p": rev.p(), "q": rev.q(), "terms": cf.terms(), "graph": graph_to_json_value(&lens_graph(rev))}),
                        out,
                    ),
                    _ => emit_graph(&lens_graph(rev), fmt, out),
                }
                .map_err(io_err)?;
            }
            (None, Some(arg)) => {
                let word = cusp_word_of_graph(&load_graph(arg)?)?;
                let dual = cusp_reverse_orientation(&word)?;
                if cli.verbose {
                    let _ = writeln!(err, "{word} reverses to {dual}");
                }
                emit_graph(&cusp_graph(&dual), fmt, out).map_err(io_err)?;
            }
            (None, None) => return Err(CliError::Usage("reverse needs --lens P Q or --cusp GRAPH".into())),
        },
        Command::FundamentalCycle { graph } => {
            no_dot(fmt)?;
            let g = load_graph(graph)?;
            let z = fundamental_cycle(&g)?;
            let k = anti_degrees(&g, &z);
            match fmt {
                OutputFormat::Text => {
                    let (_, order) = display_order(&g);
                    let zs: Vec<String> = z.along(&order).iter().map(u64::to_string).collect();
                    let ks: Vec<String> = order.iter().map(|id| k[id].to_string()).collect();
                    writeln!(out, "z: {} | k: {} | reduced: {}", zs.join(" "), ks.join(" "), z.is_reduced())
                }
                _ => emit_json(&json!({"z_min": z, "k": k, "reduced": z.is_reduced()}), out),
            }
            .map_err(io_err)?;
        }
        Command::Arrows { graph } => {
            let g = load_graph(graph)?;
            let z = fundamental_cycle(&g)?;
            let k = anti_degrees(&g, &z);
            let decorated = g.with_arrows(|id| k[&id] as u32);
            emit_graph(&decorated, fmt, out).map_err(io_err)?;
        }
        Command::Blowup { graph, edge, vertex } => {
            let g = load_graph(graph)?;
            let site = match (edge, vertex) {
                (Some(e), _) => {
                    let ids = parse_ints(e)?;
                    let [a, b] = ids[..] else {
                        return Err(CliError::Usage(format!("expected --edge A,B, got {e:?}")));
                    };
                    let id = |x: i64| VertexId::try_from(x).map_err(|_| CliError::Usage(format!("bad vertex id {x}")));
                    BlowUpSite::EdgePoint(id(a)?, id(b)?)
                }
                (None, Some(a)) => BlowUpSite::FreePoint(*a),
                (None, None) => return Err(CliError::Usage("blowup needs --edge A,B or --vertex A".into())),
            };
            emit_graph(&blow_up(&g, site)?, fmt, out).map_err(io_err)?;
        }
        Command::Blowdown { graph, vertex } => {
            let g = load_graph(graph)?;
            emit_graph(&blow_down(&g, *vertex)?, fmt, out).map_err(io_err)?;
        }
        Command::Pitilde { graph } => {
            let g = load_graph(graph)?;
            let t = pi_tilde(&g)?;
            let centers = central_vertices(&t)?;
            match fmt {
                OutputFormat::Json => {
                    emit_json(&json!({"graph": graph_to_json_value(&t), "central_vertices": centers}), out)
                }
                OutputFormat::Text => {
                    let c: Vec<String> = centers.iter().map(VertexId::to_string).collect();
                    writeln!(out, "{} | P-nodes: {}", graph_text(&t), c.join(" "))
                }
                OutputFormat::Dot => emit_graph(&t, fmt, out),
            }
            .map_err(io_err)?;
        }
        Command::Bnp { graph } => {
            no_dot(fmt)?;
            let g = load_graph(graph)?;
            if cli.verbose && is_lens_graph(&g) {
                let _ = writeln!(err, "lens reading: {}", lens_readings_text(&g)?);
            }
            let d = bnp_descriptor(&g)?;
            match fmt {
                OutputFormat::Text => writeln!(out, "{}: {}", serde_json::to_value(d.shape).unwrap().as_str().unwrap(), d.word()),
                _ => emit_struct(&d, out),
            }
            .map_err(io_err)?;
        }
        Command::Compare { first, second } => {
            no_dot(fmt)?;
            let (g1, g2) = (load_graph(first)?, load_graph(second)?);
            let c = compare(&g1, &g2)?;
            if cli.verbose {
                let _ = writeln!(err, "first:  {}", bnp_descriptor(&g1)?.word());
                let _ = writeln!(err, "second: {}", bnp_descriptor(&g2)?.word());
                for g in [&g1, &g2].into_iter().filter(|g| is_lens_graph(g)) {
                    let _ = writeln!(err, "lens reading: {}", lens_readings_text(g)?);
                }
            }
            match fmt {
                OutputFormat::Text => {
                    let mut line = format!("{:?} {:?}", c.topology, c.bilipschitz);
                    if let Some(w) = c.witness {
                        line.push_str(&format!(" (witness: reflected={} rotation={})", w.reflected, w.rotation));
                    }
                    writeln!(out, "{line}")
                }
                _ => emit_struct(&c, out),
            }
            .map_err(io_err)?;
        }
        Command::CuspCheck { graph } => {
            no_dot(fmt)?;
            let g = load_graph(graph)?;
            let cusp = is_cusp_graph(&g);
            let nd = is_negative_definite(&intersection_matrix(&g));
            let word = cusp_word_of_graph(&g).ok();
            match fmt {
                OutputFormat::Text => writeln!(
                    out,
                    "cusp: {cusp} | negative definite: {nd}{}",
                    word.as_ref().map(|w| format!(" | word: {w}")).unwrap_or_default()
                ),
                _ => emit_json(
                    &json!({"cusp": cusp, "negative_definite": nd, "word": word.as_ref().map(CuspWord::terms)}),
                    out,
                ),
            }
            .map_err(io_err)?;
        }
        Command::Monodromy { graph } => {
            no_dot(fmt)?;
            let word = cusp_word_of_graph(&load_graph(graph)?)?;
            let m = monodromy(&word);
            let trace = m.trace();
            let ok = trace >= BigInt::from(3);
            match fmt {
                OutputFormat::Text => writeln!(out, "word: {word} | monodromy: {m} | trace: {trace} | trace >= 3: {ok}"),
                _ => {
                    let e = m.entries();
                    emit_json(
                        &json!({
                            "word": word.terms(),
                            "matrix": [[big_json(&e[0][0]), big_json(&e[0][1])], [big_json(&e[1][0]), big_json(&e[1][1])]],
                            "trace": big_json(&trace),
                            "determinant": big_json(&m.determinant()),
                            "trace_condition": ok,
                        }),
                        out,
                    )
                }
            }
            .map_err(io_err)?;
        }
        Command::SurveyLens { pmax } => {
            if *pmax < 2 {
                return Err(CliError::Usage("--pmax must be at least 2".into()));
            }
            return emit_survey(&survey_lens(*pmax), fmt, out);
        }
        Command::SurveyCusp { kmax, bmax } => {
            if *kmax < 2 || *bmax < 3 {
                return Err(CliError::Usage("--kmax must be at least 2 and --bmax at least 3".into()));
            }
            return emit_survey(&survey_cusp(*kmax, *bmax), fmt, out);
        }
    }
    Ok(0)
}

/// A lens chain read in both directions.
fn lens_readings_text(graph: &PlumbingGraph) -> Result<String, CliError> {
    let r = graph_to_lens_both(graph)?;
    Ok(format!("{} (reversed reading {})", r.forward, r.reversed))
}
