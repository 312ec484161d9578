mod config;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cascadelab::cascades::{
    build_window, chromatic_probe, clique_probe, rainbow_color, verify_rainbow, ChromaticMode,
};
use cascadelab::decorations::{
    brute_force_cascade_lists, brute_force_edge, brute_force_hypergraph, brute_force_ironic,
    brute_force_total, brute_force_vertex, hypergraph_sums, kalkowski_total, verify_cool,
    verify_hypergraph_cool,
};
use cascadelab::graph::{load_graph, load_hypergraph};
use cascadelab::multiplicative::{balance_profile, build_coloring, is_divine, polya_scan, CsvRows};
use cascadelab::nullstellensatz::{
    build_bipartite_vertex_polynomial, build_edge_polynomial_capped, decorate_from_lists,
    find_certificate, orientation_certificate,
};
use cascadelab::rejmer::{diff_signs, pre_repair_signs, rejmer_run, stability_check, SignString};
use cascadelab::seeds::{construct_seed, enumerate_seeds, extend_seed, scan_cascades, Seed};
use cascadelab::sieve::{liouville_table, SpfTable};
use cascadelab::{
    Certificate, Decoration, Error, Graph, ListMode, SearchOutcome, SignRule, Vertex,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use config::{Overrides, RunConfig};

#[derive(Parser)]
#[command(
    name = "cascadelab",
    version,
    about = "Cool decorations, multiplicative colorings and cascade experiments"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// `key = value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every randomized choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel kernels (default 1).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format: json, csv, signs or edgelist (per command).
    #[arg(long, global = true)]
    emit: Option<String>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Maximum search grid size for exhaustive searches.
    #[arg(long, global = true)]
    grid_budget: Option<u128>,
    /// Maximum live monomials during polynomial expansion.
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    /// Maximum number of edges (factors) to expand.
    #[arg(long, global = true)]
    max_factors: Option<usize>,
    /// Largest window the exact chromatic solver accepts.
    #[arg(long, global = true)]
    exact_cap: Option<usize>,
    /// Branch-and-bound node limit for the exact chromatic solver.
    #[arg(long, global = true)]
    node_budget: Option<u64>,
    /// Largest prime count accepted by seed enumeration.
    #[arg(long, global = true)]
    prime_budget: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Cool decorations of graphs and hypergraphs.
    #[command(subcommand)]
    Decorate(DecorateCmd),
    /// Polynomial certificates for list decorations.
    #[command(subcommand)]
    Cn(CnCmd),
    /// Completely multiplicative ±1 colorings.
    #[command(subcommand)]
    Mult(MultCmd),
    /// Golden seeds.
    #[command(subcommand)]
    Seeds(SeedsCmd),
    /// Rejmer's greedy sequence.
    #[command(subcommand)]
    Rejmer(RejmerCmd),
    /// Rainbow colorings of cascades.
    #[command(subcommand)]
    Cascade(CascadeCmd),
    /// Windows of the arithmetic graph B_k.
    #[command(subcommand)]
    Arith(ArithCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Natural,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum BruteKind {
    Edge,
    Vertex,
    Total,
    Ironic,
    Cascade,
    Hyper,
}

#[derive(Subcommand)]
enum DecorateCmd {
    /// Total decoration from {1,2} on vertices and {1,2,3} on edges.
    Kalkowski {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "natural")]
        order: Order,
    },
    /// Exhaustive search over a value grid.
    Brute {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: BruteKind,
        /// Edge values (edge, total) or vertex values (vertex), comma-separated.
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
        /// Vertex values for the total kind.
        #[arg(long, value_delimiter = ',')]
        vertex_values: Vec<f64>,
        /// Palette size for ironic and cascade kinds.
        #[arg(long)]
        k: Option<u32>,
        /// Palette size for hypergraphs.
        #[arg(long)]
        c: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CnMode {
    Edge,
    Bipartite,
}

#[derive(Args)]
struct CnArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "edge")]
    mode: CnMode,
    /// Exponent cap per variable (lists of size cap + 1).
    #[arg(long, default_value_t = 2)]
    caps: u8,
}

#[derive(Subcommand)]
enum CnCmd {
    /// Expand the polynomial, keeping monomials within the caps.
    Expand {
        #[command(flatten)]
        args: CnArgs,
        /// Expand without pruning.
        #[arg(long)]
        uncapped: bool,
    },
    /// Find a certificate monomial.
    Certify {
        #[command(flatten)]
        args: CnArgs,
    },
    /// Certify, then decorate from lists.
    Decorate {
        #[command(flatten)]
        args: CnArgs,
        /// One list per line (edges in input order, or vertices 1..=n).
        #[arg(long, conflicts_with = "random_lists")]
        lists: Option<PathBuf>,
        /// Draw lists of distinct integers in 1..=100 from `--seed`.
        #[arg(long)]
        random_lists: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleName {
    Liouville,
    Mod3,
    Residue,
    File,
}

#[derive(Args)]
struct RuleArgs {
    #[arg(long, value_enum, default_value = "liouville")]
    rule: RuleName,
    /// Odd prime for the residue rule.
    #[arg(long)]
    modulus: Option<u64>,
    /// `p sign` lines (and optional `default sign`) for the file rule.
    #[arg(long)]
    signs: Option<PathBuf>,
}

#[derive(Subcommand)]
enum MultCmd {
    /// Values and prefix sums up to N.
    Sieve {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long)]
        n: u32,
    },
    /// First n >= 2 with a positive Liouville prefix sum.
    Polya {
        #[arg(long)]
        n: u64,
    },
    /// Whether an increasing set is divinely colored.
    Divine {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Tail {
    Minus,
    Plus,
    Mod3,
}

#[derive(Subcommand)]
enum SeedsCmd {
    /// All range-multiplicative strings of length K.
    Enum {
        #[arg(long)]
        k: usize,
    },
    /// One golden seed of length K.
    Construct {
        #[arg(long)]
        k: usize,
    },
    /// Extend a seed multiplicatively to N and scan its cascades.
    Extend {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u32,
        /// Seed string to extend instead of the constructed one.
        #[arg(long)]
        with: Option<String>,
        #[arg(long, value_enum, default_value = "minus")]
        tail: Tail,
    },
}

#[derive(Subcommand)]
enum RejmerCmd {
    /// Run the sequence for J steps.
    Run {
        #[arg(long)]
        steps: u64,
    },
    /// Compare R(1..J) with the Liouville function.
    DiffLiouville {
        #[arg(long)]
        steps: u64,
    },
}

#[derive(Subcommand)]
enum CascadeCmd {
    /// Rainbow coloring of 1..=N for an odd prime P.
    Rainbow {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        /// Check every cascade of length p - 1 instead of listing colors.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand)]
enum ArithCmd {
    /// Vertices and edges of the window [lo, hi].
    Window {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        lo: u64,
        #[arg(long)]
        hi: u64,
    },
    /// Search the window for a clique of a given size.
    Clique {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long)]
        size: usize,
    },
    /// Chromatic number bounds for the window.
    Chi {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long)]
        exact: bool,
    },
}

/// Exit 2: the request itself is malformed. Exit 1: a structured negative
/// outcome (none-found, halt, refusal) or a failed check.
enum Failure {
    Usage(String),
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::InvalidArgument(_)
            | Error::NotBipartition(_)
            | Error::OutOfHorizon { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Negative(e.to_string()),
        }
    }
}

/// Rendered output plus whether it reports a negative outcome.
struct Emitted {
    text: String,
    negative: bool,
}

impl Emitted {
    fn ok(text: String) -> Self {
        Emitted {
            text,
            negative: false,
        }
    }

    fn json(value: &impl Serialize) -> Self {
        Emitted::ok(to_json(value))
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Emit {
    Json,
    Csv,
    Signs,
    Edgelist,
}

fn emit_format(cfg: &RunConfig, allowed: &[Emit], default: Emit) -> Result<Emit, Failure> {
    let Some(name) = cfg.emit.as_deref() else {
        return Ok(default);
    };
    let chosen = match name {
        "json" => Emit::Json,
        "csv" => Emit::Csv,
        "signs" => Emit::Signs,
        "edgelist" => Emit::Edgelist,
        other => return Err(Failure::Usage(format!("unknown emit format {other:?}"))),
    };
    if allowed.contains(&chosen) {
        Ok(chosen)
    } else {
        Err(Failure::Usage(format!(
            "emit format {name:?} is not available here"
        )))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn graph_from(path: &Path) -> Result<Graph, Failure> {
    Ok(load_graph(&read(path)?)?)
}

fn outcome_json<T>(
    outcome: SearchOutcome<T>,
    found: impl FnOnce(T) -> Result<serde_json::Value, Failure>,
) -> Result<Emitted, Failure> {
    match outcome {
        SearchOutcome::Found { witness } => {
            let mut body = found(witness)?;
            body.as_object_mut()
                .expect("object body")
                .insert("outcome".into(), json!("found"));
            Ok(Emitted::json(&body))
        }
        SearchOutcome::NoneFound => Ok(Emitted {
            text: to_json(&json!({ "outcome": "none-found" })),
            negative: true,
        }),
        SearchOutcome::Refused { grid, budget } => Ok(Emitted {
            text: to_json(&json!({ "outcome": "refused", "grid": grid, "budget": budget })),
            negative: true,
        }),
    }
}

fn decoration_body(g: &Graph, d: Decoration) -> Result<serde_json::Value, Failure> {
    let report = verify_cool(g, &d)?;
    Ok(json!({ "decoration": d, "sums": report.sums, "cool": report.cool }))
}

fn decorate(cmd: DecorateCmd, cfg: &RunConfig) -> Result<Emitted, Failure> {
    emit_format(cfg, &[Emit::Json], Emit::Json)?;
    match cmd {
        DecorateCmd::Kalkowski { file, order } => {
            let g = graph_from(&file)?;
            let order: Option<Vec<Vertex>> = match order {
                Order::Natural => None,
                Order::Random => {
                    let mut o: Vec<Vertex> = g.vertices().collect();
                    o.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));
                    Some(o)
                }
            };
            let d = kalkowski_total(&g, order.as_deref())?;
            let body = decoration_body(&g, d)?;
            Ok(Emitted::json(&body))
        }
        DecorateCmd::Brute {
            file,
            kind,
            values,
            vertex_values,
            k,
            c,
        } => {
            let need = |name: &str, v: Option<u32>| {
                v.ok_or_else(|| Failure::Usage(format!("--kind needs --{name}")))
            };
            if let BruteKind::Hyper = kind {
                let h = load_hypergraph(&read(&file)?)?;
                let c = need("c", c)?;
                let out = brute_force_hypergraph(&h, c, cfg.grid_budget)?;
                return outcome_json(out, |f| {
                    let cool = verify_hypergraph_cool(&h, &f);
                    Ok(json!({ "values": f, "sums": hypergraph_sums(&h, &f), "cool": cool }))
                });
            }
            let g = graph_from(&file)?;
            let out = match kind {
                BruteKind::Edge => brute_force_edge(&g, &values, cfg.grid_budget)?,
                BruteKind::Vertex => {
                    let lists = vec![values; g.vertex_count() as usize];
                    brute_force_vertex(&g, &lists, cfg.grid_budget)?
                }
                BruteKind::Total => {
                    brute_force_total(&g, &vertex_values, &values, cfg.grid_budget)?
                }
                BruteKind::Ironic => brute_force_ironic(&g, need("k", k)?, cfg.grid_budget)?,
                BruteKind::Cascade => {
                    let out = brute_force_cascade_lists(&g, need("k", k)?, cfg.grid_budget)?;
                    return outcome_json(out, |w| {
                        let report = verify_cool(&g, &w.ironic)?;
                        Ok(
                            json!({ "colors": w.colors, "decoration": w.ironic, "cool": report.cool }),
                        )
                    });
                }
                BruteKind::Hyper => unreachable!("handled above"),
            };
            outcome_json(out, |d| decoration_body(&g, d))
        }
    }
}

fn bipartition(g: &Graph) -> Result<(Vec<Vertex>, Vec<Vertex>), Failure> {
    g.bipartition()
        .ok_or_else(|| Failure::Usage("graph is not bipartite".into()))
}

fn certify(
    g: &Graph,
    args: &CnArgs,
    cfg: &RunConfig,
) -> Result<(ListMode, Option<Certificate>), Failure> {
    match args.mode {
        CnMode::Edge => {
            let caps = vec![args.caps; g.edge_count()];
            let p = build_edge_polynomial_capped(g, Some(&caps), cfg.expansion)?;
            Ok((ListMode::Edge, find_certificate(&p, &caps)?))
        }
        CnMode::Bipartite => {
            let (xs, ys) = bipartition(g)?;
            let cert = match orientation_certificate(g, &xs, &ys) {
                Ok(c) if c.exponents().iter().all(|&e| e <= args.caps) => Some(c),
                _ => {
                    let p = build_bipartite_vertex_polynomial(g, &xs, &ys, cfg.expansion)?;
                    find_certificate(&p, &vec![args.caps; g.vertex_count() as usize])?
                }
            };
            Ok((ListMode::BipartiteVertex { xs, ys }, cert))
        }
    }
}

fn parse_lists(text: &str) -> Result<Vec<Vec<f64>>, Failure> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<f64>().map_err(|_| {
                        Failure::Usage(format!("lists line {}: bad value {t:?}", i + 1))
                    })
                })
                .collect()
        })
        .collect()
}

fn cn(cmd: CnCmd, cfg: &RunConfig) -> Result<Emitted, Failure> {
    match cmd {
        CnCmd::Expand { args, uncapped } => {
            let format = emit_format(cfg, &[Emit::Json, Emit::Csv], Emit::Json)?;
            let g = graph_from(&args.file)?;
            let p = match args.mode {
                CnMode::Edge => {
                    let caps = vec![args.caps; g.edge_count()];
                    build_edge_polynomial_capped(
                        &g,
                        (!uncapped).then_some(&caps[..]),
                        cfg.expansion,
                    )?
                }
                CnMode::Bipartite => {
                    let (xs, ys) = bipartition(&g)?;
                    // the full expansion is filtered below; there is no capped variant
                    build_bipartite_vertex_polynomial(&g, &xs, &ys, cfg.expansion)?
                }
            };
            let terms: Vec<(&Vec<u8>, i64)> = p
                .terms()
                .filter(|(e, _)| uncapped || e.iter().all(|&k| k <= args.caps))
                .collect();
            match format {
                Emit::Csv => {
                    let mut out = String::from("coefficient,exponents\n");
                    for (e, c) in terms {
                        let exps: Vec<String> = e.iter().map(u8::to_string).collect();
                        writeln!(out, "{c},{}", exps.join(" ")).expect("string write");
                    }
                    Ok(Emitted::ok(out))
                }
                _ => {
                    let rows: Vec<_> = terms
                        .iter()
                        .map(|(e, c)| json!({ "exponents": e, "coefficient": c }))
                        .collect();
                    Ok(Emitted::json(&json!({
                        "variables": p.var_count(),
                        "degree": p.degree(),
                        "terms": rows,
                    })))
                }
            }
        }
        CnCmd::Certify { args } => {
            emit_format(cfg, &[Emit::Json], Emit::Json)?;
            let g = graph_from(&args.file)?;
            match certify(&g, &args, cfg)?.1 {
                Some(cert) => Ok(Emitted::json(&json!({
                    "outcome": "found",
                    "exponents": cert.exponents(),
                    "coefficient": cert.coefficient(),
                    "list_sizes": cert.list_sizes(),
                }))),
                None => Ok(Emitted {
                    text: to_json(&json!({ "outcome": "none-found" })),
                    negative: true,
                }),
            }
        }
        CnCmd::Decorate {
            args,
            lists,
            random_lists,
        } => {
            emit_format(cfg, &[Emit::Json], Emit::Json)?;
            let g = graph_from(&args.file)?;
            let (mode, cert) = certify(&g, &args, cfg)?;
            let Some(cert) = cert else {
                return Ok(Emitted {
                    text: to_json(&json!({ "outcome": "none-found", "reason": "no certificate" })),
                    negative: true,
                });
            };
            let lists = match (lists, random_lists) {
                (Some(path), _) => parse_lists(&read(&path)?)?,
                (None, true) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                    cert.list_sizes()
                        .iter()
                        .map(|&need| {
                            let mut pool: Vec<u32> = (1..=100).collect();
                            pool.shuffle(&mut rng);
                            pool[..need].iter().map(|&x| f64::from(x)).collect()
                        })
                        .collect()
                }
                (None, false) => {
                    return Err(Failure::Usage("give --lists FILE or --random-lists".into()))
                }
            };
            let out = decorate_from_lists(&g, &mode, &lists, &cert, cfg.grid_budget)?;
            outcome_json(out, |d| {
                let mut body = decoration_body(&g, d)?;
                body["lists"] = json!(lists);
                Ok(body)
            })
        }
    }
}

fn rule_from(args: &RuleArgs) -> Result<SignRule, Failure> {
    Ok(match args.rule {
        RuleName::Liouville => SignRule::Liouville,
        RuleName::Mod3 => SignRule::Mod3Character,
        RuleName::Residue => {
            let p = args
                .modulus
                .ok_or_else(|| Failure::Usage("--rule residue needs --modulus".into()))?;
            SignRule::residue_split(p)?
        }
        RuleName::File => {
            let path = args
                .signs
                .as_ref()
                .ok_or_else(|| Failure::Usage("--rule file needs --signs".into()))?;
            SignRule::parse_explicit(&read(path)?)?
        }
    })
}

fn mult(cmd: MultCmd, cfg: &RunConfig) -> Result<Emitted, Failure> {
    match cmd {
        MultCmd::Sieve { rule, n } => {
            let format = emit_format(cfg, &[Emit::Csv, Emit::Json], Emit::Csv)?;
            let f = build_coloring(&rule_from(&rule)?, n)?;
            let profile = balance_profile(&f, n)?;
            let values = f.values();
            match format {
                Emit::Csv => Ok(Emitted::ok(CsvRows::new(&values, &profile).to_string())),
                _ => {
                    let max_balance = (1..=n as u64).map(|i| profile.balance(i)).max();
                    Ok(Emitted::json(&json!({
                        "n": n,
                        "prefix": profile.prefix(n as u64),
                        "max_balance": max_balance,
                        "values": &values[1..],
                    })))
                }
            }
        }
        MultCmd::Polya { n } => {
            emit_format(cfg, &[Emit::Signs], Emit::Signs)?;
            Ok(match polya_scan(n) {
                Some(first) => Emitted::ok(format!("first-positive {first}\n")),
                None => Emitted {
                    text: "none-found\n".into(),
                    negative: true,
                },
            })
        }
        MultCmd::Divine { rule, set } => {
            emit_format(cfg, &[Emit::Json], Emit::Json)?;
            let top = set.iter().copied().max().unwrap_or(1);
            let horizon =
                u32::try_from(top).map_err(|_| Failure::Usage("set element too large".into()))?;
            let f = build_coloring(&rule_from(&rule)?, horizon.max(1))?;
            let colors: Vec<i8> = set.iter().map(|&a| f.eval(a)).collect::<Result<_, _>>()?;
            let divine = is_divine(&f, &set)?;
            Ok(Emitted::json(
                &json!({ "set": set, "colors": colors, "divine": divine }),
            ))
        }
    }
}

fn seeds(cmd: SeedsCmd, cfg: &RunConfig) -> Result<Emitted, Failure> {
    match cmd {
        SeedsCmd::Enum { k } => {
            let format = emit_format(cfg, &[Emit::Signs, Emit::Csv, Emit::Json], Emit::Signs)?;
            let rows = enumerate_seeds(k, cfg.prime_budget)?;
            Ok(match format {
                Emit::Json => Emitted::json(&rows),
                Emit::Csv => {
                    let mut out = String::from("seed,sum,golden\n");
                    for r in &rows {
                        writeln!(out, "{},{},{}", r.seed, r.seed.sum(), r.golden)
                            .expect("string write");
                    }
                    Emitted::ok(out)
                }
                _ => {
                    let mut out = String::new();
                    for r in &rows {
                        let tag = if r.golden { " golden" } else { "" };
                        writeln!(out, "{}{tag}", r.seed).expect("string write");
                    }
                    Emitted::ok(out)
                }
            })
        }
        SeedsCmd::Construct { k } => {
            let format = emit_format(cfg, &[Emit::Signs, Emit::Json], Emit::Signs)?;
            let c = construct_seed(k, cfg.prime_budget)?;
            Ok(match format {
                Emit::Json => Emitted::json(&c),
                _ => Emitted::ok(format!("{}\n", c.seed)),
            })
        }
        SeedsCmd::Extend { k, n, with, tail } => {
            let format = emit_format(cfg, &[Emit::Json, Emit::Csv], Emit::Json)?;
            let seed: Seed = match with {
                Some(s) => s.parse()?,
                None => construct_seed(k, cfg.prime_budget)?.seed,
            };
            if seed.len() != k {
                return Err(Failure::Usage(format!(
                    "seed {seed} does not have length {k}"
                )));
            }
            let tail_sign = move |p: u64| -> i8 {
                match tail {
                    Tail::Minus => -1,
                    Tail::Plus => 1,
                    Tail::Mod3 => SignRule::Mod3Character.sign_of(p).expect("total rule"),
                }
            };
            let f = extend_seed(&seed, n, tail_sign)?;
            let scan = scan_cascades(&f, k as u64)?;
            let balanced = scan.max_balance <= 1;
            let mut emitted = match format {
                Emit::Csv => {
                    let profile = balance_profile(&f, n)?;
                    Emitted::ok(CsvRows::new(&f.values(), &profile).to_string())
                }
                _ => Emitted::json(&json!({
                    "seed": seed,
                    "golden": seed.is_golden(),
                    "scan": scan,
                    "balanced": balanced,
                })),
            };
            emitted.negative = !balanced;
            Ok(emitted)
        }
    }
}

fn rejmer(cmd: RejmerCmd, cfg: &RunConfig) -> Result<Emitted, Failure> {
    match cmd {
        RejmerCmd::Run { steps } => {
            let format = emit_format(cfg, &[Emit::Csv, Emit::Signs, Emit::Json], Emit::Csv)?;
            let run = rejmer_run(steps)?;
            let mut out = String::new();
            match format {
                Emit::Signs => {
                    let last = run.switches.last().filter(|s| s.step == steps);
                    if let Some(s) = last {
                        let pre = pre_repair_signs(steps)?;
                        writeln!(out, "{}", SignString(&pre)).expect("string write");
                        writeln!(out, "switched {}", s.prime).expect("string write");
                    }
                    writeln!(out, "{}", SignString(&run.signs)).expect("string write");
                }
                Emit::Json => out = to_json(&run),
                _ => {
                    out.push_str("n,R(n),prefix\n");
                    let mut prefix = 0i64;
                    for (i, &s) in run.signs.iter().enumerate() {
                        prefix += s as i64;
                        writeln!(out, "{},{s},{prefix}", i + 1).expect("string write");
                    }
                    out.push_str("\nstep,prime,old_sign\n");
                    for s in &run.switches {
                        writeln!(out, "{},{},{}", s.step, s.prime, s.old_sign)
                            .expect("string write");
                    }
                }
            }
            if let Some(h) = run.halt {
                writeln!(out, "halt at step {} with sum {}", h.step, h.sum).expect("string write");
            }
            Ok(Emitted {
                text: out,
                negative: run.halt.is_some(),
            })
        }
        RejmerCmd::DiffLiouville { steps } => {
            emit_format(cfg, &[Emit::Json], Emit::Json)?;
            let run = rejmer_run(steps)?;
            let horizon =
                u32::try_from(steps).map_err(|_| Failure::Usage("too many steps".into()))?;
            let lambda = liouville_table(&SpfTable::new(horizon));
            let (first, count) = diff_signs(&run.signs, &lambda[1..]);
            let violation = stability_check(&run.switches);
            Ok(Emitted {
                text: to_json(&json!({
                    "steps": steps,
                    "stable_through": steps / 2,
                    "first_difference": first,
                    "differences": count,
                    "switches": run.switches.len(),
                    "stability_violation": violation,
                    "halt": run.halt,
                })),
                negative: run.halt.is_some(),
            })
        }
    }
}

fn cascade(cmd: CascadeCmd, cfg: &RunConfig) -> Result<Emitted, Failure> {
    let CascadeCmd::Rainbow { p, n, verify } = cmd;
    if verify {
        emit_format(cfg, &[Emit::Json], Emit::Json)?;
        let report = verify_rainbow(p, n)?;
        return Ok(Emitted {
            text: to_json(&report),
            negative: !report.rainbow,
        });
    }
    emit_format(cfg, &[Emit::Csv], Emit::Csv)?;
    let mut out = String::from("n,color\n");
    for i in 1..=n {
        writeln!(out, "{i},{}", rainbow_color(p, i)?).expect("string write");
    }
    Ok(Emitted::ok(out))
}

fn arith(cmd: ArithCmd, cfg: &RunConfig) -> Result<Emitted, Failure> {
    match cmd {
        ArithCmd::Window { k, lo, hi } => {
            let format = emit_format(cfg, &[Emit::Edgelist, Emit::Json], Emit::Edgelist)?;
            let w = build_window(k, lo, hi)?;
            Ok(match format {
                Emit::Json => {
                    Emitted::json(&json!({ "k": k, "lo": lo, "hi": hi, "edges": w.edges() }))
                }
                _ => Emitted::ok(w.to_edge_list()),
            })
        }
        ArithCmd::Clique { k, lo, hi, size } => {
            emit_format(cfg, &[Emit::Json], Emit::Json)?;
            let w = build_window(k, lo, hi)?;
            Ok(match clique_probe(&w, size) {
                Some(c) => Emitted::json(&json!({ "outcome": "found", "clique": c })),
                None => Emitted {
                    text: to_json(&json!({ "outcome": "none-found" })),
                    negative: true,
                },
            })
        }
        ArithCmd::Chi { k, lo, hi, exact } => {
            emit_format(cfg, &[Emit::Json], Emit::Json)?;
            let w = build_window(k, lo, hi)?;
            let mode = if exact {
                ChromaticMode::Exact
            } else {
                ChromaticMode::Greedy
            };
            let report = chromatic_probe(&w, mode, cfg.exact_cap, cfg.node_budget)?;
            Ok(Emitted::json(&report))
        }
    }
}

fn run(cli: Cli) -> Result<Emitted, Failure> {
    let g = cli.global;
    let flags = Overrides {
        grid_budget: g.grid_budget,
        max_terms: g.max_terms,
        max_factors: g.max_factors,
        exact_cap: g.exact_cap,
        node_budget: g.node_budget,
        prime_budget: g.prime_budget,
        seed: g.seed,
        threads: g.threads,
        emit: g.emit,
        output: g.output,
    };
    let file = match &g.config {
        Some(path) => Overrides::parse(&read(path)?).map_err(Failure::Usage)?,
        None => Overrides::default(),
    };
    let cfg = RunConfig::resolve(flags.over(file)).map_err(Failure::Usage)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build_global()
        .map_err(|e| Failure::Negative(e.to_string()))?;

    let emitted = match cli.command {
        Command::Decorate(c) => decorate(c, &cfg),
        Command::Cn(c) => cn(c, &cfg),
        Command::Mult(c) => mult(c, &cfg),
        Command::Seeds(c) => seeds(c, &cfg),
        Command::Rejmer(c) => rejmer(c, &cfg),
        Command::Cascade(c) => cascade(c, &cfg),
        Command::Arith(c) => arith(c, &cfg),
    }?;
    match &cfg.output {
        Some(path) => fs::write(path, &emitted.text)
            .map_err(|e| Failure::Negative(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(emitted.text.as_bytes());
        }
    }
    Ok(emitted)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(e) if e.negative => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Negative(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
