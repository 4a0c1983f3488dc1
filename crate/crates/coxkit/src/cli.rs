//! Command-line surface: one process, one graph, one subcommand, reproducible
//! output.
//!
//! Exit status 0 on success, 1 on domain errors (single-line diagnostic on
//! stderr, nothing on stdout), 2 on usage errors.

use std::collections::BTreeSet;
use std::io::Read;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::artin;
use crate::coxeter::{CoxeterSystem, GroupEl};
use crate::decomp;
use crate::graph::{preset_from_strings, CoxeterGraph, EmitFormat, GraphError};
use crate::hat;
use crate::va;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Engine(#[from] crate::coxeter::EngineError),
    #[error("{0}")]
    Hat(#[from] hat::HatError),
    #[error("{0}")]
    Artin(#[from] artin::ArtinError),
    #[error("{0}")]
    Va(#[from] va::VaError),
    #[error("{0}")]
    Decomp(#[from] decomp::DecompError),
    #[error("cannot read graph file: {0}")]
    Io(#[from] std::io::Error),
    #[error("format {0:?} is not supported by this subcommand")]
    UnsupportedFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "coxkit",
    about = "Exact computations with Coxeter groups, Artin words, and virtual Artin words",
    version,
    group(ArgGroup::new("source").required(true).args(["preset", "graph", "inline"]))
)]
pub struct Cli {
    /// Standard graph family and parameter, e.g. `--preset A 2`.
    #[arg(long, num_args = 2, value_names = ["FAMILY", "PARAM"])]
    preset: Option<Vec<String>>,

    /// Read the graph from a file (text or JSON format).
    #[arg(long, value_name = "FILE")]
    graph: Option<std::path::PathBuf>,

    /// Inline graph document.
    #[arg(long, value_name = "TEXT")]
    inline: Option<String>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,

    /// Word-length bound for sweeps over non-spherical graphs.
    #[arg(long, global = true)]
    depth: Option<usize>,

    /// Enumeration cap (default 20000; the COXKIT_BOUND environment variable
    /// overrides the default).
    #[arg(long, global = true)]
    bound: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Components, infinity-connectivity, and spherical classification.
    Analyze,
    /// Enumerate the root system.
    Roots,
    /// Build the Coxeter graph on the root system.
    Hat,
    /// Filtration ordering of positive roots with prefix verification.
    Filtration,
    /// Longest element of a spherical graph.
    W0,
    /// Canonical reduced word of a Coxeter word.
    Reduce { word: Vec<String> },
    /// Support of a Coxeter word.
    Support { word: Vec<String> },
    /// Center and quasi-center by brute force.
    Qz,
    /// Retraction of an Artin word onto a standard parabolic.
    Retract {
        /// Comma-separated vertex names of the parabolic subset X.
        #[arg(long, value_name = "X")]
        sub: String,
        word: Vec<String>,
    },
    /// Coxeter image of an Artin word.
    Omega { word: Vec<String> },
    /// Positive Artin word lifting a Coxeter word.
    Section { word: Vec<String> },
    /// Semidirect normal pair of a virtual Artin word.
    VaNormal {
        #[arg(long, value_name = "K|P", default_value = "K")]
        kind: String,
        word: Vec<String>,
    },
    /// Resolve the mixed relation for a generator pair.
    Va3 { s: String, t: String },
    /// Split a virtual Artin word over the graph's connected components.
    Split { word: Vec<String> },
    /// Remak decompositions of the finite Coxeter group.
    Remak,
    /// Compare decomposability against the classification.
    VerifyDecompw,
    /// Emit the graph itself in the chosen format.
    Emit,
}

fn words_or_stdin(args: &[String]) -> Result<Vec<String>, CliError> {
    if !args.is_empty() {
        return Ok(args.to_vec());
    }
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf)?;
    let toks: Vec<String> = buf.split_whitespace().map(|s| s.to_string()).collect();
    Ok(toks)
}

fn load_graph(cli: &Cli) -> Result<CoxeterGraph, CliError> {
    if let Some(p) = &cli.preset {
        return Ok(preset_from_strings(&p[0], &p[1])?);
    }
    if let Some(path) = &cli.graph {
        let text = std::fs::read_to_string(path)?;
        return Ok(CoxeterGraph::parse(&text)?);
    }
    Ok(CoxeterGraph::parse(cli.inline.as_deref().unwrap_or(""))?)
}

fn bound_of(cli: &Cli) -> usize {
    cli.bound.unwrap_or_else(|| {
        std::env::var("COXKIT_BOUND")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(20_000)
    })
}

fn emit_format(f: FormatArg) -> EmitFormat {
    match f {
        FormatArg::Text => EmitFormat::Text,
        FormatArg::Json => EmitFormat::Json,
        FormatArg::Dot => EmitFormat::Dot,
    }
}

fn no_dot(f: FormatArg) -> Result<(), CliError> {
    if f == FormatArg::Dot {
        return Err(CliError::UnsupportedFormat("dot".into()));
    }
    Ok(())
}

fn word_or_identity(sys: &CoxeterSystem, el: &GroupEl) -> String {
    let w = sys.reduced_word(el);
    if w.is_empty() {
        "(id)".to_string()
    } else {
        sys.format_word(&w)
    }
}

/// Run a parsed request and return the output document.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let graph = load_graph(cli)?;
    let bound = bound_of(cli);
    match &cli.cmd {
        Cmd::Analyze => {
            no_dot(cli.format)?;
            let report = graph.analyze();
            if cli.format == FormatArg::Json {
                return Ok(format!("{:#}\n", report.to_json()));
            }
            let mut out = String::new();
            for (i, c) in report.components.iter().enumerate() {
                out.push_str(&format!(
                    "component {}: {} | spherical: {} | infty-connected: {}\n",
                    i + 1,
                    c.vertices.join(" "),
                    c.spherical.as_deref().unwrap_or("non-spherical"),
                    if c.infty_connected { "yes" } else { "no" },
                ));
            }
            Ok(out)
        }
        Cmd::Roots => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let rs = sys.enumerate_roots(cli.depth)?;
            if cli.format == FormatArg::Json {
                let roots: Vec<serde_json::Value> = rs
                    .roots()
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        json!({
                            "coords": r.to_json(),
                            "display": r.to_string(),
                            "sign": match rs.sign(i) {
                                crate::coxeter::RootSign::Positive => "+",
                                crate::coxeter::RootSign::Negative => "-",
                            },
                        })
                    })
                    .collect();
                return Ok(format!(
                    "{:#}\n",
                    json!({"count": rs.len(), "complete": rs.complete(), "roots": roots})
                ));
            }
            let mut out = format!(
                "roots {} ({})\n",
                rs.len(),
                if rs.complete() {
                    "complete"
                } else {
                    "truncated"
                }
            );
            for (i, r) in rs.roots().iter().enumerate() {
                let sign = match rs.sign(i) {
                    crate::coxeter::RootSign::Positive => '+',
                    crate::coxeter::RootSign::Negative => '-',
                };
                out.push_str(&format!("{sign} {r}\n"));
            }
            Ok(out)
        }
        Cmd::Hat => {
            let sys = CoxeterSystem::new(graph);
            let h = hat::build_hat(&sys, cli.depth, bound)?;
            match cli.format {
                FormatArg::Dot => Ok(h.graph().emit_dot()),
                FormatArg::Text => {
                    let mut out = String::new();
                    if h.truncated() {
                        out.push_str("# truncated: unwitnessed pairs are unknown\n");
                        for &(i, j) in h.unknown_pairs() {
                            out.push_str(&format!(
                                "# unknown {} {}\n",
                                h.roots().roots()[i],
                                h.roots().roots()[j]
                            ));
                        }
                    }
                    out.push_str(&h.graph().emit_text());
                    Ok(out)
                }
                FormatArg::Json => {
                    let mut value: serde_json::Value =
                        serde_json::from_str(&h.graph().emit_json()).expect("emitted JSON");
                    value["truncated"] = json!(h.truncated());
                    value["unknown_pairs"] = json!(h
                        .unknown_pairs()
                        .iter()
                        .map(|&(i, j)| json!([
                            h.roots().roots()[i].to_string(),
                            h.roots().roots()[j].to_string()
                        ]))
                        .collect::<Vec<_>>());
                    Ok(format!("{value:#}\n"))
                }
            }
        }
        Cmd::Filtration => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let h = hat::build_hat(&sys, cli.depth, bound)?;
            let f = hat::filtration_order(&h)?;
            let report = hat::verify_filtration(&h, &f)?;
            if cli.format == FormatArg::Json {
                return Ok(format!(
                    "{:#}\n",
                    json!({
                        "order": f.order.iter().map(|&r| h.roots().roots()[r].to_string()).collect::<Vec<_>>(),
                        "prefixes": report.prefixes.iter().map(|&(c, i)| json!({
                            "connected": c, "infty_connected": i,
                        })).collect::<Vec<_>>(),
                        "all_pass": report.all_pass(),
                    })
                ));
            }
            let mut out = String::new();
            for (i, &r) in f.order.iter().enumerate() {
                out.push_str(&format!("{}: {}\n", i + 1, h.roots().roots()[r]));
            }
            out.push_str(&format!(
                "verified: {}\n",
                if report.all_pass() {
                    "all prefixes connected and infty-connected"
                } else {
                    "FAILED"
                }
            ));
            Ok(out)
        }
        Cmd::W0 => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let (w0, central) = sys.longest_element()?;
            let word = sys.reduced_word(&w0);
            if cli.format == FormatArg::Json {
                return Ok(format!(
                    "{:#}\n",
                    json!({
                        "word": sys.format_word(&word),
                        "length": word.len(),
                        "central": central,
                    })
                ));
            }
            Ok(format!(
                "word: {}\nlength: {}\ncentral: {}\n",
                sys.format_word(&word),
                word.len(),
                central
            ))
        }
        Cmd::Reduce { word } => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let w = sys.parse_word(&words_or_stdin(word)?)?;
            let el = sys.element_of(&w);
            let reduced = sys.reduced_word(&el);
            if cli.format == FormatArg::Json {
                return Ok(format!(
                    "{:#}\n",
                    json!({"word": sys.format_word(&reduced), "length": reduced.len()})
                ));
            }
            Ok(format!("{}\n", word_or_identity(&sys, &el)))
        }
        Cmd::Support { word } => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let w = sys.parse_word(&words_or_stdin(word)?)?;
            let el = sys.element_of(&w);
            let supp: Vec<String> = sys
                .support(&el)
                .into_iter()
                .map(|s| sys.graph().vertices()[s].clone())
                .collect();
            if cli.format == FormatArg::Json {
                return Ok(format!("{:#}\n", json!({ "support": supp })));
            }
            if supp.is_empty() {
                Ok("(empty)\n".to_string())
            } else {
                Ok(format!("{}\n", supp.join(" ")))
            }
        }
        Cmd::Qz => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let (z, qz) = sys.center_and_quasi_center(bound)?;
            let zw: Vec<String> = z.iter().map(|e| word_or_identity(&sys, e)).collect();
            let qzw: Vec<String> = qz.iter().map(|e| word_or_identity(&sys, e)).collect();
            if cli.format == FormatArg::Json {
                return Ok(format!(
                    "{:#}\n",
                    json!({"center": zw, "quasi_center": qzw})
                ));
            }
            Ok(format!("Z: {}\nQZ: {}\n", zw.join(", "), qzw.join(", ")))
        }
        Cmd::Retract { sub, word } => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let names: Vec<String> = sub
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            let x: BTreeSet<usize> = sys.vertex_set(&names)?;
            let w = artin::parse_artin_word(&sys, &words_or_stdin(word)?)?;
            let (out, trace) = artin::retract_px(&sys, &w, &x);
            if cli.format == FormatArg::Json {
                return Ok(format!(
                    "{:#}\n",
                    json!({
                        "word": artin::format_artin_word(&sys, &out),
                        "trace": artin::trace_json(&sys, &trace),
                    })
                ));
            }
            if out.is_empty() {
                Ok("(empty)\n".to_string())
            } else {
                Ok(format!("{}\n", artin::format_artin_word(&sys, &out)))
            }
        }
        Cmd::Omega { word } => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let w = artin::parse_artin_word(&sys, &words_or_stdin(word)?)?;
            let el = artin::omega(&sys, &w);
            if cli.format == FormatArg::Json {
                return Ok(format!(
                    "{:#}\n",
                    json!({"word": sys.format_word(&sys.reduced_word(&el))})
                ));
            }
            Ok(format!("{}\n", word_or_identity(&sys, &el)))
        }
        Cmd::Section { word } => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let w = sys.parse_word(&words_or_stdin(word)?)?;
            let el = sys.element_of(&w);
            let sec = artin::section_sigma(&sys, &el);
            if cli.format == FormatArg::Json {
                return Ok(format!(
                    "{:#}\n",
                    json!({"word": artin::format_artin_word(&sys, &sec)})
                ));
            }
            if sec.is_empty() {
                Ok("(empty)\n".to_string())
            } else {
                Ok(format!("{}\n", artin::format_artin_word(&sys, &sec)))
            }
        }
        Cmd::VaNormal { kind, word } => {
            no_dot(cli.format)?;
            let kind = match kind.as_str() {
                "K" | "k" => va::PairKind::K,
                "P" | "p" => va::PairKind::P,
                other => {
                    return Err(CliError::UnsupportedFormat(format!(
                        "va-normal kind {other:?} (expected K or P)"
                    )))
                }
            };
            let sys = CoxeterSystem::new(graph);
            let roots = sys.enumerate_roots(cli.depth)?;
            let ctx = va::VaContext::new(&sys, &roots);
            let w = va::parse_va_word(&sys, &words_or_stdin(word)?)?;
            let pair = ctx.normal_pair(&w, kind)?;
            if cli.format == FormatArg::Json {
                return Ok(format!("{:#}\n", ctx.pair_json(&pair)));
            }
            let deltas: Vec<String> = pair
                .kernel
                .letters
                .iter()
                .map(|&(ri, e)| {
                    let root = roots.roots()[ri].to_string();
                    if e >= 0 {
                        root
                    } else {
                        format!("{root}^-1")
                    }
                })
                .collect();
            Ok(format!(
                "deltas: {}\nw: {}\n",
                if deltas.is_empty() {
                    "(empty)".to_string()
                } else {
                    deltas.join(" ")
                },
                word_or_identity(&sys, &pair.coxeter)
            ))
        }
        Cmd::Va3 { s, t } => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let si = sys.graph().vertex_index(s)?;
            let ti = sys.graph().vertex_index(t)?;
            let rel = va::va3_resolve(&sys, si, ti)?;
            let r_name = sys.graph().vertices()[rel.r].clone();
            if cli.format == FormatArg::Json {
                return Ok(format!(
                    "{:#}\n",
                    json!({
                        "r": r_name,
                        "lhs": va::format_va_word(&sys, &rel.lhs),
                        "rhs": va::format_va_word(&sys, &rel.rhs),
                    })
                ));
            }
            Ok(format!(
                "r = {}\nlhs = {}\nrhs = {}\n",
                r_name,
                va::format_va_word(&sys, &rel.lhs),
                va::format_va_word(&sys, &rel.rhs)
            ))
        }
        Cmd::Split { word } => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let w = va::parse_va_word(&sys, &words_or_stdin(word)?)?;
            let parts = va::split_components(&w, sys.graph());
            let comps = sys.graph().components();
            if cli.format == FormatArg::Json {
                return Ok(format!(
                    "{:#}\n",
                    json!(parts
                        .iter()
                        .zip(&comps)
                        .map(|(p, c)| json!({
                            "component": c.iter().map(|&v| sys.graph().vertices()[v].clone()).collect::<Vec<_>>(),
                            "word": va::format_va_word(&sys, p),
                        }))
                        .collect::<Vec<_>>())
                ));
            }
            let mut out = String::new();
            for (i, p) in parts.iter().enumerate() {
                out.push_str(&format!(
                    "component {}: {}\n",
                    i + 1,
                    if p.is_empty() {
                        "(empty)".to_string()
                    } else {
                        va::format_va_word(&sys, p)
                    }
                ));
            }
            Ok(out)
        }
        Cmd::Remak => {
            no_dot(cli.format)?;
            let sys = CoxeterSystem::new(graph);
            let table = decomp::build_table(&sys, bound)?;
            let decomps = decomp::remak_decompose(&table)?;
            let center = table.center();
            let decomposable = decomps.iter().any(|d| d.factors.len() > 1);
            let factors = decomps[0].factor_orders();
            if cli.format == FormatArg::Json {
                return Ok(format!(
                    "{:#}\n",
                    json!({
                        "order": table.order(),
                        "center_order": center.len(),
                        "decomposable": decomposable,
                        "factors": factors,
                        "decomposition_count": decomps.len(),
                    })
                ));
            }
            Ok(format!(
                "order: {}\ncenter order: {}\ndecomposable: {}\nfactors: {:?}\ndecompositions: {}\n",
                table.order(),
                center.len(),
                decomposable,
                factors,
                decomps.len()
            ))
        }
        Cmd::VerifyDecompw => {
            no_dot(cli.format)?;
            let report = decomp::verify_decomp_classification(&graph, bound)?;
            if cli.format == FormatArg::Json {
                return Ok(format!("{:#}\n", report.to_json()));
            }
            Ok(format!(
                "name: {}\norder: {}\ncenter order: {}\ndecomposable: {}\nfactors: {:?}\nconsistent with classification: {}\n",
                report.name,
                report.order,
                report.center_order,
                report.decomposable,
                report.factors,
                report.consistent_with_classification
            ))
        }
        Cmd::Emit => Ok(graph.emit(emit_format(cli.format))),
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors and 0 for --help/--version
            e.exit();
        }
    };
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<String, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("coxkit").chain(args.iter().copied()))
            .expect("argument parse");
        run(&cli)
    }

    #[test]
    fn roots_listing() {
        let out = run_args(&["--preset", "A", "2", "roots"]).unwrap();
        assert!(out.starts_with("roots 6 (complete)\n"));
        assert_eq!(out.lines().count(), 7);
    }

    #[test]
    fn remak_json() {
        let out = run_args(&["--preset", "I2", "6", "remak", "--format", "json"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["decomposable"], serde_json::json!(true));
        assert_eq!(v["factors"], serde_json::json!([2, 6]));
    }

    #[test]
    fn va3_resolution() {
        let out = run_args(&["--preset", "A", "2", "va3", "s1", "s2"]).unwrap();
        assert!(out.contains("r = s1"));
        assert!(out.contains("lhs = t:s2 t:s1 s2"));
        assert!(out.contains("rhs = s1 t:s2 t:s1"));
    }

    #[test]
    fn determinism() {
        let a = run_args(&["--preset", "B", "3", "filtration"]).unwrap();
        let b = run_args(&["--preset", "B", "3", "filtration"]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn domain_errors_are_errors() {
        assert!(run_args(&["--inline", "vertices s t\nedge s t inf\n", "w0"]).is_err());
        assert!(run_args(&["--preset", "A", "2", "reduce", "zz"]).is_err());
    }

    #[test]
    fn inline_and_emit() {
        let out = run_args(&[
            "--inline",
            "vertices a b\nedge a b 5\n",
            "emit",
            "--format",
            "dot",
        ])
        .unwrap();
        assert!(out.contains("[label=\"5\"]"));
    }

    #[test]
    fn reduce_word() {
        let out = run_args(&["--preset", "A", "2", "reduce", "s1", "s1", "s2"]).unwrap();
        assert_eq!(out, "s2\n");
        let out = run_args(&["--preset", "A", "2", "reduce", "s1", "s1"]).unwrap();
        assert_eq!(out, "(id)\n");
    }

    #[test]
    fn retract_hand_case() {
        let out = run_args(&[
            "--preset", "A", "2", "retract", "--sub", "s1", "s1", "s2", "s1^-1",
        ])
        .unwrap();
        assert_eq!(out, "s1\n");
        let out = run_args(&["--preset", "A", "2", "retract", "--sub", "s1", "s2"]).unwrap();
        assert_eq!(out, "(empty)\n");
    }
}
