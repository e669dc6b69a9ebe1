//! Command-line surface: build/analyze/compare shifts, run the
//! construction verifiers, and emit JSON or DOT reports.
//!
//! Exit codes: 0 success, 1 a verified quantitative bound failed,
//! 2 usage, parse, or cap errors.  Reports are deterministic for a fixed
//! configuration and seed.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use dbarlab::constructions::coded::{
    coded_connect, coded_levels, coded_min_t, coded_minimality_witness, coded_shadow_next,
    CodedError, CodedParams, MinTMode, CODED_ENUMERATION_CAP,
};
use dbarlab::constructions::oxtoby::{oxtoby_prefix, oxtoby_verify, OxtobyError, OxtobyScale};
use dbarlab::constructions::proximal::{
    proximal_graph, proximal_intersection, proximal_noninclusion_witnesses,
    proximal_random_point, proximal_zeroing_shadow, ProximalError, ProximalParams,
};
use dbarlab::constructions::tower::{
    canonical_enumeration, tower_build, tower_verify, TowerError, TowerParams,
};
use dbarlab::io::{graph_from_json_str, graph_to_dot, graph_to_json, rational_to_json};
use dbarlab::words::{rat_usize, Alphabet, Rational, Word};
use dbarlab::{LabeledGraph, SoficShift};

#[derive(Parser)]
#[command(name = "dbarlab", version, about = "symbolic dynamics toolkit")]
struct Cli {
    /// Cap on enumerated language/word counts.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_words: usize,
    /// Cap on product/presentation vertex counts.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_vertices: usize,
    /// Seed for all randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Horizon for language/entropy computations.
    #[arg(long, global = true, default_value_t = 8)]
    horizon: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report on a labeled graph presentation.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Couple two or more presentations and report the product's shape.
    Couple { graphs: Vec<PathBuf> },
    Oxtoby {
        #[command(subcommand)]
        cmd: OxtobyCmd,
    },
    Tower {
        #[command(subcommand)]
        cmd: TowerCmd,
    },
    Proximal {
        #[command(subcommand)]
        cmd: ProximalCmd,
    },
    Coded {
        #[command(subcommand)]
        cmd: CodedCmd,
    },
}

#[derive(Subcommand)]
enum OxtobyCmd {
    /// Materialize a prefix of the sequence.
    Gen {
        /// Comma-separated scale, e.g. 1,100,10000.
        #[arg(long)]
        scale: String,
        #[arg(long)]
        len: usize,
    },
    /// Verify the frequency and transport bounds at horizons p_2..p_{k+1}.
    Verify {
        #[arg(long)]
        scale: String,
        /// Tolerance, e.g. 1/10.
        #[arg(long)]
        delta: String,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum TowerCmd {
    Build {
        #[arg(long)]
        depth: usize,
        /// Comma-separated tolerances; default (1/4)^k.
        #[arg(long)]
        deltas: Option<String>,
    },
    Verify {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        deltas: Option<String>,
    },
}

#[derive(Subcommand)]
enum ProximalCmd {
    /// Emit the level-n presentation.
    Build {
        #[arg(long)]
        n: usize,
    },
    /// Couple levels 1..=n and report mixing flags plus non-inclusion
    /// witnesses against level n+1.
    Intersect {
        #[arg(long)]
        n: usize,
    },
    /// Zero the level-(n+1) windows out of a random point of Y_n.
    Shadow {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        len: usize,
    },
}

#[derive(Subcommand)]
enum CodedCmd {
    /// Exact level statistics.
    Stats {
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Comma-separated multiplicities t(1),t(2),...
        #[arg(long, default_value = "4,2")]
        t: String,
    },
    /// Least multiplicity satisfying the selected inequalities.
    MinT {
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long, value_enum, default_value_t = MinTModeArg::Structural)]
        mode: MinTModeArg,
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long, default_value = "4,2")]
        t: String,
    },
    /// A member of B_level, of exact length when --len is given.
    Sample {
        #[arg(long, default_value_t = 2)]
        level: usize,
        #[arg(long)]
        len: Option<usize>,
        #[arg(long, default_value = "4,2")]
        t: String,
    },
    /// Shadow a random block stream into the next level.
    Shadow {
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long, default_value_t = 10_000)]
        blocks: usize,
        #[arg(long, default_value = "4,2")]
        t: String,
    },
    /// A connecting word of exact length m with its certificate.
    Connect {
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "4,2")]
        t: String,
    },
    /// Syndetic-occurrence witness two levels up.
    Witness {
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long)]
        u: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value = "4,2")]
        t: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MinTModeArg {
    Structural,
    Cauchy,
    MixingBase,
    MixingLength,
    All,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn bound(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

/// Write to stdout, tolerating a closed pipe (e.g. `dbarlab ... | head`).
fn emit(output: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{output}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            emit(&output);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("dbarlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn envelope(cli: &Cli, command: &str, args: Value, body: Value) -> Value {
    json!({
        "tool": { "name": "dbarlab", "version": env!("CARGO_PKG_VERSION") },
        "config": {
            "command": command,
            "args": args,
            "max_words": cli.max_words,
            "max_vertices": cli.max_vertices,
            "seed": cli.seed,
            "horizon": cli.horizon,
        },
        "report": body,
    })
}

fn render(cli: &Cli, value: &Value) -> Result<String, Failure> {
    match cli.format {
        Format::Json => Ok(value.to_string()),
        Format::Text => serde_json::to_string_pretty(value)
            .map_err(|e| usage(format!("render failed: {e}"))),
        Format::Dot => Err(usage("--format dot applies only to graph outputs")),
    }
}

fn render_graph(cli: &Cli, graph: &LabeledGraph, report: Value) -> Result<String, Failure> {
    if cli.format == Format::Dot {
        Ok(graph_to_dot(graph))
    } else {
        render(cli, &report)
    }
}

fn read_graph(path: &PathBuf) -> Result<LabeledGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    graph_from_json_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_rational(s: &str) -> Result<Rational, Failure> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num = BigInt::from_str(num.trim()).map_err(|_| usage(format!("bad rational {s:?}")))?;
    let den = BigInt::from_str(den.trim()).map_err(|_| usage(format!("bad rational {s:?}")))?;
    if den == BigInt::from(0) {
        return Err(usage(format!("bad rational {s:?}: zero denominator")));
    }
    Ok(Rational::new(num, den))
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<T>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("bad {what} list {s:?}")))
}

fn coded_setup(t: &str, depth: usize) -> Result<dbarlab::constructions::coded::CodedLevels, Failure> {
    let t: Vec<u64> = parse_list(t, "t")?;
    let params = CodedParams::new(
        vec!["0".parse().unwrap(), "11".parse().unwrap()],
        t,
    )
    .map_err(|e| usage(e.to_string()))?;
    coded_levels(&params, depth, CODED_ENUMERATION_CAP).map_err(|e| usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Analyze { graph } => {
            let g = read_graph(graph)?;
            let shift = SoficShift::new(g).map_err(|e| usage(e.to_string()))?;
            let (lower, upper) = shift
                .presentation()
                .entropy_bounds(cli.horizon, cli.max_words)
                .map_err(|e| usage(e.to_string()))?;
            let report = envelope(
                cli,
                "analyze",
                json!({ "graph": graph.display().to_string() }),
                json!({
                    "connected": shift.strongly_connected(),
                    "period": shift.period(),
                    "safe_symbols": shift.safe_symbols().iter().collect::<Vec<_>>(),
                    "mixing": shift.is_mixing_presentation(),
                    "entropy_bounds": { "lower": lower, "upper": upper },
                    "vertices": shift.presentation().vertex_count(),
                    "edges": shift.presentation().edges().len(),
                }),
            );
            render_graph(cli, shift.presentation(), report)
        }
        Command::Couple { graphs } => {
            if graphs.len() < 2 {
                return Err(usage("couple needs at least two graph files"));
            }
            let loaded: Vec<LabeledGraph> =
                graphs.iter().map(read_graph).collect::<Result<_, _>>()?;
            let refs: Vec<&LabeledGraph> = loaded.iter().collect();
            let args =
                json!({ "graphs": graphs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>() });
            // An empty product is a valid answer (the factor languages do
            // not synchronize), not a usage error.
            let product = match LabeledGraph::couple(&refs, cli.max_vertices) {
                Ok(product) => product,
                Err(dbarlab::sofic::GraphError::EmptyShift) => {
                    let report = envelope(
                        cli,
                        "couple",
                        args,
                        json!({
                            "n": graphs.len(),
                            "vertices": 0,
                            "edges": 0,
                            "strongly_connected": false,
                            "period": 0,
                        }),
                    );
                    return if cli.format == Format::Dot {
                        Ok(format!(
                            "digraph shift {{\n  graph [alphabet_size={}, vertices=0];\n}}\n",
                            loaded[0].alphabet().size()
                        ))
                    } else {
                        render(cli, &report)
                    };
                }
                Err(e) => return Err(usage(e.to_string())),
            };
            let connected = product.is_strongly_connected();
            let period = if connected {
                product.period().map_err(|e| usage(e.to_string()))?
            } else {
                0
            };
            let report = envelope(
                cli,
                "couple",
                args,
                json!({
                    "n": graphs.len(),
                    "vertices": product.vertex_count(),
                    "edges": product.edges().len(),
                    "strongly_connected": connected,
                    "period": period,
                }),
            );
            render_graph(cli, &product, report)
        }
        Command::Oxtoby { cmd } => run_oxtoby(cli, cmd),
        Command::Tower { cmd } => run_tower(cli, cmd),
        Command::Proximal { cmd } => run_proximal(cli, cmd),
        Command::Coded { cmd } => run_coded(cli, cmd),
    }
}

fn oxtoby_scale(spec: &str) -> Result<OxtobyScale, Failure> {
    OxtobyScale::new(parse_list(spec, "scale")?).map_err(|e| usage(e.to_string()))
}

fn run_oxtoby(cli: &Cli, cmd: &OxtobyCmd) -> Result<String, Failure> {
    match cmd {
        OxtobyCmd::Gen { scale, len } => {
            let s = oxtoby_scale(scale)?;
            let word = oxtoby_prefix(&s, *len).map_err(|e| usage(e.to_string()))?;
            let report = envelope(
                cli,
                "oxtoby gen",
                json!({ "scale": scale, "len": len }),
                json!({ "word": word.to_string() }),
            );
            render(cli, &report)
        }
        OxtobyCmd::Verify { scale, delta, k } => {
            let s = oxtoby_scale(scale)?;
            let d = parse_rational(delta)?;
            let rep = oxtoby_verify(&s, &d, *k).map_err(|e| match e {
                OxtobyError::ScaleCondition { .. } => bound(e.to_string()),
                other => usage(other.to_string()),
            })?;
            let rows: Vec<Value> = rep
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "horizon": r.horizon,
                        "majority_symbol": r.majority_symbol,
                        "majority_freq": rational_to_json(&r.majority_freq),
                        "majority_lower_bound": rational_to_json(&r.majority_lower_bound),
                        "mismatch_vs_zero": rational_to_json(&r.mismatch_vs_zero),
                        "mismatch_vs_one": rational_to_json(&r.mismatch_vs_one),
                        "minority_mismatch": rational_to_json(&r.minority_mismatch),
                        "minority_mismatch_required_above": rational_to_json(
                            &(Rational::from_integer(1.into()) - d.clone()),
                        ),
                        "transport_to_majority": rational_to_json(&r.transport_to_majority),
                        "transport_required_below": rational_to_json(&d),
                    })
                })
                .collect();
            let report = envelope(
                cli,
                "oxtoby verify",
                json!({ "scale": scale, "delta": delta, "k": k }),
                json!({
                    "scale_condition_sum": rational_to_json(&rep.scale_condition_sum),
                    "rows": rows,
                    "all_bounds_hold": rep.all_bounds_hold,
                }),
            );
            let out = render(cli, &report)?;
            if rep.all_bounds_hold {
                Ok(out)
            } else {
                emit(&out);
                Err(bound("an oxtoby horizon bound failed"))
            }
        }
    }
}

fn tower_params(depth: usize, deltas: &Option<String>) -> Result<TowerParams, Failure> {
    let deltas = match deltas {
        Some(spec) => spec
            .split(',')
            .map(|d| parse_rational(d.trim()))
            .collect::<Result<Vec<_>, _>>()?,
        None => (1..=depth).map(|k| {
            let q = rat_usize(1, 4);
            let mut acc = Rational::from_integer(1.into());
            for _ in 0..k {
                acc *= q.clone();
            }
            acc
        }).collect(),
    };
    let words = canonical_enumeration(Alphabet::binary(), depth + 1);
    TowerParams::new(words, deltas).map_err(|e| usage(e.to_string()))
}

fn run_tower(cli: &Cli, cmd: &TowerCmd) -> Result<String, Failure> {
    match cmd {
        TowerCmd::Build { depth, deltas } => {
            let params = tower_params(*depth, deltas)?;
            let tower = tower_build(&params, *depth).map_err(|e| usage(e.to_string()))?;
            let levels: Vec<Value> = tower
                .levels
                .iter()
                .enumerate()
                .map(|(k, lvl)| {
                    json!({
                        "k": k,
                        "len": lvl.v.len(),
                        "a": lvl.a,
                        "b": lvl.b,
                        "word": if lvl.v.len() <= 100_000 {
                            Value::String(lvl.v.to_string())
                        } else {
                            Value::Null
                        },
                    })
                })
                .collect();
            let report = envelope(
                cli,
                "tower build",
                json!({ "depth": depth, "deltas": deltas }),
                json!({ "levels": levels, "truncated": tower.truncated }),
            );
            render(cli, &report)
        }
        TowerCmd::Verify { depth, deltas } => {
            let params = tower_params(*depth, deltas)?;
            let tower = tower_build(&params, *depth).map_err(|e| usage(e.to_string()))?;
            let rep = tower_verify(&tower).map_err(|e| match e {
                TowerError::DbarBound { .. } | TowerError::CylinderBound { .. } => {
                    bound(e.to_string())
                }
                other => usage(other.to_string()),
            })?;
            let checks = |cs: &[dbarlab::constructions::tower::TowerCheck]| -> Vec<Value> {
                cs.iter()
                    .map(|c| {
                        json!({
                            "check": c.label,
                            "lhs": rational_to_json(&c.lhs),
                            "rhs": rational_to_json(&c.rhs),
                        })
                    })
                    .collect()
            };
            let report = envelope(
                cli,
                "tower verify",
                json!({ "depth": depth, "deltas": deltas }),
                json!({
                    "dbar_checks": checks(&rep.dbar_checks),
                    "cylinder_checks": checks(&rep.cylinder_checks),
                    "delta_partial_sums": rep
                        .delta_partial_sums
                        .iter()
                        .map(rational_to_json)
                        .collect::<Vec<_>>(),
                }),
            );
            render(cli, &report)
        }
    }
}

fn run_proximal(cli: &Cli, cmd: &ProximalCmd) -> Result<String, Failure> {
    let depth = match cmd {
        ProximalCmd::Build { n } | ProximalCmd::Intersect { n } => *n + 1,
        ProximalCmd::Shadow { n, .. } => *n + 1,
    };
    let params = ProximalParams::new(10, 2, depth.max(1)).map_err(|e| usage(e.to_string()))?;
    match cmd {
        ProximalCmd::Build { n } => {
            let g = proximal_graph(&params, *n).map_err(|e| usage(e.to_string()))?;
            let report = envelope(
                cli,
                "proximal build",
                json!({ "n": n }),
                json!({
                    "graph": graph_to_json(&g),
                    "period": g.period().map_err(|e| usage(e.to_string()))?,
                    "safe_symbols": g.safe_symbols().iter().collect::<Vec<_>>(),
                }),
            );
            render_graph(cli, &g, report)
        }
        ProximalCmd::Intersect { n } => {
            let shift = proximal_intersection(&params, *n, cli.max_vertices)
                .map_err(|e| usage(e.to_string()))?;
            let (deeper, shallower) = proximal_noninclusion_witnesses(&params, *n)
                .map_err(|e| bound(e.to_string()))?;
            let report = envelope(
                cli,
                "proximal intersect",
                json!({ "n": n }),
                json!({
                    "vertices": shift.presentation().vertex_count(),
                    "edges": shift.presentation().edges().len(),
                    "strongly_connected": shift.strongly_connected(),
                    "period": shift.period(),
                    "witness_in_next_not_this": deeper.to_string(),
                    "witness_in_this_not_next": shallower.to_string(),
                }),
            );
            render_graph(cli, shift.presentation(), report)
        }
        ProximalCmd::Shadow { n, len } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let x = proximal_random_point(&params, *n, *len, cli.max_vertices, &mut rng)
                .map_err(|e| usage(e.to_string()))?;
            let shadow = proximal_zeroing_shadow(&params, *n, &x, 0).map_err(|e| match e {
                ProximalError::ShadowRejected(_) => bound(e.to_string()),
                other => usage(other.to_string()),
            })?;
            let report = envelope(
                cli,
                "proximal shadow",
                json!({ "n": n, "len": len }),
                json!({
                    "changed": shadow.changed,
                    "density": rational_to_json(&shadow.density),
                    "bound": rational_to_json(&shadow.bound),
                    "bound_holds": shadow.bound_holds,
                    "word": if *len <= 10_000 {
                        Value::String(shadow.y.to_string())
                    } else {
                        Value::Null
                    },
                }),
            );
            let out = render(cli, &report)?;
            if shadow.bound_holds {
                Ok(out)
            } else {
                emit(&out);
                Err(bound("zeroing density exceeded the level bound"))
            }
        }
    }
}

fn run_coded(cli: &Cli, cmd: &CodedCmd) -> Result<String, Failure> {
    match cmd {
        CodedCmd::Stats { depth, t } => {
            let levels = coded_setup(t, *depth)?;
            let rows: Vec<Value> = (1..=levels.depth())
                .map(|n| {
                    let st = levels.stats(n).expect("level in range");
                    json!({
                        "n": n,
                        "k": st.k.to_string(),
                        "s": st.s.to_string(),
                        "ell": st.ell.to_string(),
                        "tau_len": st.tau_len.to_string(),
                        "enumerated": levels.words(n).is_some(),
                    })
                })
                .collect();
            let report = envelope(
                cli,
                "coded stats",
                json!({ "depth": depth, "t": t }),
                json!({ "levels": rows, "enumeration_complete": levels.enumeration_complete }),
            );
            render(cli, &report)
        }
        CodedCmd::MinT { level, mode, eps, t } => {
            let levels = coded_setup(t, (*level).max(1))?;
            let eps_r = parse_rational(eps)?;
            let mode_value = match mode {
                MinTModeArg::Structural => MinTMode::Structural,
                MinTModeArg::Cauchy => MinTMode::Cauchy { eps: eps_r.clone() },
                MinTModeArg::MixingBase => MinTMode::MixingBase,
                MinTModeArg::MixingLength => MinTMode::MixingLength,
                MinTModeArg::All => MinTMode::All { eps: eps_r.clone() },
            };
            let st = levels.stats(*level).map_err(|e| usage(e.to_string()))?;
            let value = coded_min_t(st, &mode_value).map_err(|e| usage(e.to_string()))?;
            let mode_name = match mode {
                MinTModeArg::Structural => "structural",
                MinTModeArg::Cauchy => "cauchy",
                MinTModeArg::MixingBase => "mixing-base",
                MinTModeArg::MixingLength => "mixing-length",
                MinTModeArg::All => "all",
            };
            let report = envelope(
                cli,
                "coded min-t",
                json!({ "level": level, "mode": mode_name, "eps": eps, "t": t }),
                json!({ "min_t": value }),
            );
            render(cli, &report)
        }
        CodedCmd::Sample { level, len, t } => {
            let levels = coded_setup(t, *level)?;
            let word = match len {
                Some(len) => levels
                    .word_of_length(*level, *len)
                    .map_err(|e| usage(e.to_string()))?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    levels
                        .random_member(*level, &mut rng)
                        .map_err(|e| usage(e.to_string()))?
                }
            };
            let report = envelope(
                cli,
                "coded sample",
                json!({ "level": level, "len": len, "t": t }),
                json!({ "word": word.to_string(), "len": word.len() }),
            );
            render(cli, &report)
        }
        CodedCmd::Shadow { level, blocks, t } => {
            let levels = coded_setup(t, *level + 1)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let stream: Result<Vec<Word>, _> = (0..*blocks)
                .map(|_| levels.random_member(*level, &mut rng))
                .collect();
            let stream = stream.map_err(|e| usage(e.to_string()))?;
            let shadow = coded_shadow_next(&levels, *level, &stream).map_err(|e| match e {
                CodedError::ShadowBound { .. } => bound(e.to_string()),
                other => usage(other.to_string()),
            })?;
            let report = envelope(
                cli,
                "coded shadow",
                json!({ "level": level, "blocks": blocks, "t": t }),
                json!({
                    "rounds": shadow.rounds,
                    "consumed_len": shadow.consumed_len,
                    "mismatches": shadow.mismatches,
                    "density": rational_to_json(&shadow.density),
                    "bound": rational_to_json(&shadow.bound),
                    "z_blocks": shadow.z_blocks.len(),
                }),
            );
            render(cli, &report)
        }
        CodedCmd::Connect { level, m, t } => {
            let levels = coded_setup(t, *level + 2)?;
            let st = levels.stats(*level).map_err(|e| usage(e.to_string()))?;
            let s = num::ToPrimitive::to_usize(&st.s).ok_or_else(|| usage("level too deep"))?;
            let ell =
                num::ToPrimitive::to_usize(&st.ell).ok_or_else(|| usage("level too deep"))?;
            let u = levels.word_of_length(*level, ell).map_err(|e| usage(e.to_string()))?;
            let v = levels.word_of_length(*level, s).map_err(|e| usage(e.to_string()))?;
            let rep = coded_connect(&levels, *level, &u, &v, *m)
                .map_err(|e| usage(e.to_string()))?;
            let report = envelope(
                cli,
                "coded connect",
                json!({ "level": level, "m": m, "t": t }),
                json!({
                    "u": u.to_string(),
                    "v": v.to_string(),
                    "w": rep.w.to_string(),
                    "case": rep.case_used,
                    "certificate_level": rep.level,
                    "certificate": rep
                        .certificate
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>(),
                }),
            );
            render(cli, &report)
        }
        CodedCmd::Witness { level, u, samples, t } => {
            let levels = coded_setup(t, *level + 2)?;
            let u: Word = u.parse().map_err(|e: dbarlab::words::WordError| {
                usage(e.to_string())
            })?;
            let rep = coded_minimality_witness(&levels, *level, &u, *samples, cli.seed)
                .map_err(|e| usage(e.to_string()))?;
            let report = envelope(
                cli,
                "coded witness",
                json!({ "level": level, "u": u.to_string(), "samples": samples, "t": t }),
                json!({
                    "holds": rep.holds,
                    "exhaustive": rep.exhaustive,
                    "checked": rep.checked,
                    "precondition_met": rep.precondition_met,
                    "seed": rep.seed,
                }),
            );
            let out = render(cli, &report)?;
            if rep.holds {
                Ok(out)
            } else {
                emit(&out);
                Err(bound("witness word missed a sampled member"))
            }
        }
    }
}
