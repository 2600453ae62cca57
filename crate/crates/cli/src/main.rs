use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use loopchord::diagram::MAX_CHORDS;
use loopchord::verify::{verify_igc, verify_kernel};
use loopchord::{
    build_primitive, cycle_rank_classify, emit_report, graph_class_key, graph_kernel_check,
    intersection_graph, BasisCache, ChordDiagram, DiagramCombo, Format, PrimitiveSpec, SuiteConfig,
    SuiteReport, WeightEvaluator, Workspace, DEFAULT_DEGREE_LIMIT,
};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "loopchord",
    version,
    about = "Chord diagrams modulo the 4-term relation"
)]
struct Cli {
    /// Degree, for subcommands that take one and were not given it positionally.
    #[arg(short = 'n', long = "degree", global = true)]
    degree: Option<usize>,
    /// Work modulo 4T only.
    #[arg(long = "no-1t", global = true)]
    no_1t: bool,
    /// Worker threads; all cores when omitted.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Directory for cached relation bases.
    #[arg(long, global = true, env = "LOOPCHORD_CACHE")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    /// Cycle rank bound for `igc`.
    #[arg(long, global = true)]
    betti_max: Option<usize>,
    /// Highest degree for the weight identities in `verify-paper`.
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Allow degrees above the default limit.
    #[arg(long, global = true)]
    override_limits: bool,
    /// Report every elapsed time as zero.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the canonical diagrams of a degree.
    Enum { n: Option<usize> },
    /// Print the intersection graph of a diagram.
    Graph { word: String },
    /// Dimension of the quotient in one degree.
    Dims { n: Option<usize> },
    /// Decide whether two diagrams are equal in the quotient.
    Equiv { left: String, right: String },
    /// Check that diagrams with isomorphic intersection graphs are equivalent.
    Igc { n: Option<usize> },
    /// Compare the quotient with its image on intersection graphs.
    Kernel { n: Option<usize> },
    /// Weight of a diagram, or of a combination given as `@file.json`.
    Weight { input: String },
    /// Build `p_n` or `p_{n,k}`.
    Primitive {
        #[command(subcommand)]
        spec: PrimitiveArg,
        /// Also print the weight.
        #[arg(long, global = true)]
        weight: bool,
    },
    /// Run the full verification suite.
    VerifyPaper,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum PrimitiveArg {
    /// Path on `n` vertices.
    Pn { n: usize },
    /// Cycle of length `k` with a pendant path, `n` vertices in all.
    Pnk { n: usize, k: usize },
}

struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn limit(cli: &Cli) -> usize {
    if cli.override_limits {
        MAX_CHORDS
    } else {
        DEFAULT_DEGREE_LIMIT
    }
}

fn guard(cli: &Cli, n: usize) -> Result<()> {
    if n > limit(cli) {
        bail!(
            "degree {n} exceeds the limit {}; pass --override-limits to proceed",
            limit(cli)
        );
    }
    Ok(())
}

fn degree(cli: &Cli, positional: Option<usize>) -> Result<usize> {
    let n = positional
        .or(cli.degree)
        .context("a degree is required, positionally or with --degree")?;
    guard(cli, n)?;
    Ok(n)
}

fn parse_word(cli: &Cli, w: &str) -> Result<ChordDiagram> {
    let d = ChordDiagram::parse(w).with_context(|| format!("malformed diagram word {w:?}"))?;
    guard(cli, d.degree())?;
    Ok(d)
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn report(cli: &Cli, checks: Vec<loopchord::CheckReport>) -> Output {
    let mut r = SuiteReport::new(checks);
    if cli.no_timing {
        r = r.without_timing();
    }
    Output {
        ok: r.all_passed(),
        text: emit_report(&r, cli.format),
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let cache = BasisCache::from_option_or_env(cli.cache_dir.as_deref());
    let ws = Workspace::new(limit(cli), cache);
    let with_1t = !cli.no_1t;
    let out = match &cli.command {
        Command::Enum { n } => {
            let n = degree(cli, *n)?;
            let ds = loopchord::enumerate_diagrams_with_limit(n, ws.limit())?;
            let words: Vec<String> = ds.iter().map(ToString::to_string).collect();
            Output::ok(match cli.format {
                Format::Json => {
                    json_text(&json!({ "degree": n, "count": words.len(), "diagrams": words }))
                }
                Format::Csv => format!(
                    "word\n{}",
                    words.iter().map(|w| format!("{w}\n")).collect::<String>()
                ),
                Format::Text => words.iter().map(|w| format!("{w}\n")).collect(),
            })
        }
        Command::Graph { word } => {
            let d = parse_word(cli, word)?;
            let g = intersection_graph(&d);
            let rank = cycle_rank_classify(&g);
            let key = graph_class_key(&g)?;
            let edges: Vec<[usize; 2]> =
                g.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect();
            let class = format!("{:?}", rank.class).to_lowercase();
            Output::ok(match cli.format {
                Format::Json => json_text(&json!({
                    "word": d.to_string(),
                    "vertices": g.vertex_count(),
                    "edges": edges,
                    "betti": rank.betti,
                    "class": class,
                    "key": key.to_string(),
                })),
                Format::Csv => {
                    format!(
                        "u,v\n{}",
                        edges
                            .iter()
                            .map(|[u, v]| format!("{u},{v}\n"))
                            .collect::<String>()
                    )
                }
                Format::Text => {
                    let list: Vec<String> = edges.iter().map(|[u, v]| format!("{u}-{v}")).collect();
                    format!(
                        "diagram {d}\nvertices {}\nedges {}\nbetti {} ({class})\nkey {key}\n",
                        g.vertex_count(),
                        list.join(" "),
                        rank.betti
                    )
                }
            })
        }
        Command::Dims { n } => {
            let n = degree(cli, *n)?;
            let b = ws.basis(n, with_1t)?;
            Output::ok(match cli.format {
                Format::Json => json_text(&json!({
                    "degree": n,
                    "with1T": with_1t,
                    "diagrams": b.diagram_count(),
                    "rank": b.rank(),
                    "dimension": b.quotient_dim(),
                })),
                Format::Csv => format!(
                    "degree,with1T,diagrams,rank,dimension\n{n},{with_1t},{},{},{}\n",
                    b.diagram_count(),
                    b.rank(),
                    b.quotient_dim()
                ),
                Format::Text => format!("{}\n", b.quotient_dim()),
            })
        }
        Command::Equiv { left, right } => {
            let (a, b) = (parse_word(cli, left)?, parse_word(cli, right)?);
            let same_class = graph_class_key(&intersection_graph(&a))?
                == graph_class_key(&intersection_graph(&b))?;
            let equivalent =
                a.degree() == b.degree() && ws.basis(a.degree(), with_1t)?.equivalent(&a, &b)?;
            Output::ok(match cli.format {
                Format::Json => json_text(&json!({
                    "left": a.to_string(),
                    "right": b.to_string(),
                    "with1T": with_1t,
                    "equivalent": equivalent,
                    "sameGraphClass": same_class,
                })),
                Format::Csv => format!(
                    "left,right,with1T,equivalent,sameGraphClass\n{a},{b},{with_1t},{equivalent},{same_class}\n"
                ),
                Format::Text => {
                    let verdict = if equivalent { "equivalent" } else { "not equivalent" };
                    let graphs = if same_class { "same intersection graph" } else { "different intersection graphs" };
                    format!("{verdict} ({graphs})\n")
                }
            })
        }
        Command::Igc { n } => {
            let n = degree(cli, *n)?;
            report(cli, vec![verify_igc(&ws, n, cli.betti_max)])
        }
        Command::Kernel { n } => {
            let n = degree(cli, *n)?;
            if with_1t {
                report(cli, vec![verify_kernel(&ws, n)])
            } else {
                let k = graph_kernel_check(&*ws.basis(n, false)?)?;
                let text = match cli.format {
                    Format::Json => json_text(&serde_json::to_value(k)?),
                    Format::Csv => format!(
                        "degree,with1T,diagramDim,graphDim,kernelTrivial\n{},{},{},{},{}\n",
                        k.degree, k.with_1t, k.diagram_dim, k.graph_dim, k.kernel_trivial
                    ),
                    Format::Text => format!(
                        "degree {}: quotient {} graph quotient {} kernel {}\n",
                        k.degree,
                        k.diagram_dim,
                        k.graph_dim,
                        if k.kernel_trivial {
                            "trivial"
                        } else {
                            "nontrivial"
                        }
                    ),
                };
                Output {
                    text,
                    ok: k.kernel_trivial,
                }
            }
        }
        Command::Weight { input } => {
            let combo = match input.strip_prefix('@') {
                Some(path) => {
                    let text =
                        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
                    DiagramCombo::from_json(&serde_json::from_str(&text)?)?
                }
                None => DiagramCombo::from_diagram(&parse_word(cli, input)?),
            };
            guard(cli, combo.degree())?;
            let w = WeightEvaluator::new().eval_combo(&combo);
            Output::ok(match cli.format {
                Format::Json => json_text(&json!({ "input": combo.to_json(), "weight": w })),
                Format::Csv => format!(
                    "cx,cy,coeff\n{}",
                    w.json_terms()
                        .iter()
                        .map(|t| format!("{},{},{}\n", t.cx, t.cy, t.coeff))
                        .collect::<String>()
                ),
                Format::Text => format!("{w}\n"),
            })
        }
        Command::Primitive { spec, weight } => {
            let spec = match *spec {
                PrimitiveArg::Pn { n } => PrimitiveSpec::Path { n },
                PrimitiveArg::Pnk { n, k } => PrimitiveSpec::Tadpole { n, k },
            };
            guard(cli, spec.degree())?;
            let combo = build_primitive(spec)?;
            let w = weight.then(|| WeightEvaluator::new().eval_combo(&combo));
            Output::ok(match cli.format {
                Format::Json => {
                    let mut v = json!({ "spec": spec.to_string(), "combo": combo.to_json() });
                    if let Some(w) = &w {
                        v["weight"] = serde_json::to_value(w)?;
                    }
                    json_text(&v)
                }
                Format::Csv => {
                    let mut s = String::from("coeff,word\n");
                    for (d, q) in combo.terms() {
                        s.push_str(&format!("{q},{d}\n"));
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("{spec} = {combo}\n");
                    if let Some(w) = &w {
                        s.push_str(&format!("W({spec}) = {w}\n"));
                    }
                    s
                }
            })
        }
        Command::VerifyPaper => {
            let mut cfg = SuiteConfig::default();
            if let Some(n) = cli.nmax {
                guard(cli, n)?;
                cfg.lemmas = n;
            }
            if let Some(n) = cli.degree {
                guard(cli, n)?;
                cfg.igc = n;
            }
            report(cli, loopchord::run_suite(&ws, cfg))
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.jobs.map_or(0, |j| j as usize);
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
