//! Command-line workbench for finite ordered polyhedra.
//!
//! Every run prints a JSON envelope `{"meta": .., "result": ..}` (or plain
//! text with `--plain` where a complex list is the natural output). Exit
//! codes: 0 definitive positive / value produced, 1 definitive negative,
//! 2 usage or input error, 3 resource limit or unknown.

use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use polyhedra::complex::{enumerate_class, FiniteOrderedComplex};
use polyhedra::embed::{enumerate_copies, enumerate_embeddings, Embedding, EmbeddingMode};
use polyhedra::format::{complex_from_str, oracle_from_spec};
use polyhedra::fraisse::{
    amalgamate, build_limit_with_bound, check_extension_property_scoped,
    check_ultrahomogeneity_truncated, verify_class_axioms,
};
use polyhedra::oracle::{depth, ComplexOracle, Depth};
use polyhedra::ramsey::{
    arrow_check, arrow_search_min, export_cnf, pigeonhole_step, space_ramsey_check,
    space_ramsey_search_min, Ambient, ArrowQuery, SearchMode,
};
use polyhedra::randgen::{embedding_coverage_test_mode, GenParams};
use polyhedra::rng::mix;
use polyhedra::{ClassSpec, Error, Guards};

#[derive(Parser)]
#[command(
    name = "polyhedra",
    version,
    about = "Workbench for finite ordered polyhedra: approximation calculus, arrow relations, Fraisse classes, random generation"
)]
struct Cli {
    /// Write the result to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,

    /// Print complexes in the one-line text format instead of JSON
    #[arg(long, global = true)]
    plain: bool,

    /// Backtracking node budget (env POLYHEDRA_NODE_BUDGET)
    #[arg(long, global = true)]
    node_budget: Option<u64>,

    /// Truncation horizon in vertices (env POLYHEDRA_HORIZON)
    #[arg(long, global = true)]
    horizon: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Weak,
    Strong,
}

impl From<ModeArg> for EmbeddingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Weak => EmbeddingMode::Weak,
            ModeArg::Strong => EmbeddingMode::Strong,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchArg {
    Adversarial,
    Exhaustive,
}

impl From<SearchArg> for SearchMode {
    fn from(s: SearchArg) -> Self {
        match s {
            SearchArg::Adversarial => SearchMode::Adversarial,
            SearchArg::Exhaustive => SearchMode::Exhaustive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AmbientArg {
    Set,
    Graph,
    Simplex,
}

impl AmbientArg {
    fn ambient(self) -> Ambient {
        match self {
            AmbientArg::Set => Ambient::PureSet,
            AmbientArg::Graph => Ambient::CompleteGraph,
            AmbientArg::Simplex => Ambient::FullSimplex,
        }
    }

    fn member(self, n: usize) -> FiniteOrderedComplex {
        self.ambient().complex(n)
    }
}

#[derive(Args)]
struct ArrowArgs {
    /// Complex A (inline JSON/text, @file, or - for stdin)
    #[arg(long)]
    a: String,
    /// Complex B
    #[arg(long)]
    b: String,
    /// Ambient complex C
    #[arg(long)]
    c: String,
    #[arg(long)]
    colors: u32,
    #[arg(long, value_enum, default_value = "strong")]
    mode: ModeArg,
}

#[derive(Subcommand)]
enum Command {
    /// All canonical class members on n vertices
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Face-size bound; 0 = unbounded
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Restriction of a complex to a vertex subset
    Restrict {
        #[arg(long)]
        complex: String,
        /// Comma-separated vertex labels to keep
        #[arg(long)]
        keep: String,
        #[arg(long)]
        canonicalize: bool,
    },
    /// The nth approximation of a complex or oracle
    Approx {
        #[arg(long, conflicts_with = "oracle")]
        complex: Option<String>,
        #[arg(long)]
        oracle: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        canonicalize: bool,
    },
    /// Depth of an approximation inside an oracle
    Depth {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        oracle: String,
    },
    /// Order-preserving embeddings of A into B
    Embed {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value = "strong")]
        mode: ModeArg,
        /// Report only the count
        #[arg(long)]
        count_only: bool,
    },
    /// Copies of A inside B
    Copies {
        #[arg(long)]
        b: String,
        #[arg(long)]
        a: String,
        #[arg(long, value_enum, default_value = "strong")]
        mode: ModeArg,
    },
    /// Decide an arrow relation C -> (B)^A_r
    Arrow {
        #[command(flatten)]
        query: ArrowArgs,
        #[arg(long, value_enum, default_value = "adversarial")]
        search: SearchArg,
    },
    /// Least ambient size N for which the arrow holds
    ArrowMin {
        #[arg(long, value_enum)]
        class: AmbientArg,
        #[arg(long, conflicts_with = "a")]
        a_size: Option<usize>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long, conflicts_with = "b")]
        b_size: Option<usize>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        colors: u32,
        #[arg(long, value_enum, default_value = "strong")]
        mode: ModeArg,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "adversarial")]
        search: SearchArg,
    },
    /// DIMACS encoding of an arrow query (satisfiable iff the arrow fails)
    ExportCnf {
        #[command(flatten)]
        query: ArrowArgs,
    },
    /// One constructive pigeonhole step over an oracle
    Pigeonhole {
        #[arg(long)]
        a: String,
        #[arg(long)]
        oracle: String,
        /// constant:0|1, parity, member:1,3,5, or hash:SEED
        #[arg(long)]
        coloring: String,
        #[arg(long, default_value_t = 50)]
        step_horizon: usize,
    },
    /// Finite Ramsey statement for sub-pairs of a truncation
    SpaceRamsey {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        colors: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "adversarial")]
        search: SearchArg,
    },
    /// Least truncation depth m at which the statement holds
    SpaceRamseyMin {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        colors: u32,
        #[arg(long, default_value_t = 12)]
        m_max: usize,
        #[arg(long, value_enum, default_value = "adversarial")]
        search: SearchArg,
    },
    /// Verify the Fraisse class axioms at bounded size
    Axioms {
        /// Face-size bound; 0 = unbounded
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Free amalgam of B1 and B2 over A
    Amalgamate {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b1: String,
        #[arg(long)]
        b2: String,
        /// Strong embedding A -> B1 as `s:t,s:t` pairs
        #[arg(long)]
        f1: String,
        /// Strong embedding A -> B2
        #[arg(long)]
        f2: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Build a truncation chain of the Fraisse limit
    FraisseBuild {
        /// Face-size bound; 0 = unbounded
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        pattern_bound: usize,
    },
    /// Extension-property sweep over a complex
    ExtCheck {
        #[arg(long)]
        complex: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Pattern size bound (3 distinguishes triangle faces from hollow
        /// triangles)
        #[arg(long, default_value_t = 3)]
        s: usize,
        /// Restrict pattern images to these labels (comma-separated)
        #[arg(long)]
        scope: Option<String>,
        /// Check one-step extendability of partial isomorphisms instead
        #[arg(long)]
        ultra: bool,
    },
    /// Generate one random polyhedron
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// 0 = unbounded, k >= 2 = face bound
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Empirical embedding coverage over random samples
    Coverage {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, value_enum, default_value = "strong")]
        mode: ModeArg,
    },
}

#[derive(Serialize)]
struct Meta {
    version: &'static str,
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    guards: GuardsMeta,
}

#[derive(Serialize)]
struct GuardsMeta {
    node_budget: u64,
    horizon: usize,
}

struct Output {
    meta: Meta,
    result: Value,
    /// Plain-text alternative (one complex per line), if the result is a
    /// complex list
    plain: Option<Vec<String>>,
    /// Raw body overrides the JSON envelope entirely (DIMACS export)
    raw: Option<String>,
    exit: u8,
}

fn read_arg(spec: &str) -> anyhow::Result<String> {
    if spec == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else if let Some(path) = spec.strip_prefix('@') {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    } else {
        Ok(spec.to_string())
    }
}

fn parse_complex(spec: &str) -> anyhow::Result<FiniteOrderedComplex> {
    Ok(complex_from_str(&read_arg(spec)?)?)
}

fn parse_oracle(spec: &str) -> anyhow::Result<ComplexOracle> {
    Ok(oracle_from_spec(&read_arg(spec)?)?)
}

fn parse_labels(spec: &str) -> anyhow::Result<Vec<u32>> {
    spec.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u32>().map_err(|e| anyhow!("bad label `{t}`: {e}")))
        .collect()
}

fn parse_map(spec: &str, mode: EmbeddingMode) -> anyhow::Result<Embedding> {
    let text = read_arg(spec)?;
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return Ok(serde_json::from_str(trimmed)?);
    }
    let pairs: Vec<(u32, u32)> = trimmed
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (s, d) = t
                .split_once(':')
                .ok_or_else(|| anyhow!("expected `source:target` in `{t}`"))?;
            Ok((s.trim().parse::<u32>()?, d.trim().parse::<u32>()?))
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(Embedding::new(pairs, mode)?)
}

type ExtensionColoring = Box<dyn Fn(u32, &FiniteOrderedComplex) -> u8>;

fn parse_coloring(spec: &str) -> anyhow::Result<ExtensionColoring> {
    if let Some(rest) = spec.strip_prefix("constant:") {
        let c: u8 = rest.parse()?;
        if c > 1 {
            return Err(anyhow!("constant coloring must be 0 or 1"));
        }
        return Ok(Box::new(move |_, _| c));
    }
    if spec == "parity" {
        return Ok(Box::new(|m, _| (m % 2) as u8));
    }
    if let Some(rest) = spec.strip_prefix("member:") {
        let set = parse_labels(rest)?;
        return Ok(Box::new(move |m, _| u8::from(set.contains(&m))));
    }
    if let Some(rest) = spec.strip_prefix("hash:") {
        let seed: u64 = rest.parse()?;
        return Ok(Box::new(move |m, _| (mix(seed ^ u64::from(m)) & 1) as u8));
    }
    Err(anyhow!(
        "unknown coloring `{spec}` (expected constant:0|1, parity, member:LIST, hash:SEED)"
    ))
}

fn complexes_value(list: &[FiniteOrderedComplex]) -> (Value, Vec<String>) {
    (
        serde_json::to_value(list).expect("serializable"),
        list.iter().map(|c| c.to_string()).collect(),
    )
}

fn run(cli: &Cli, guards: &Guards) -> anyhow::Result<Output> {
    let command_name = command_name(&cli.command);
    let mut seed_used: Option<u64> = None;
    let mut plain: Option<Vec<String>> = None;
    let mut raw: Option<String> = None;
    let mut exit = 0u8;

    let result: Value = match &cli.command {
        Command::Enumerate { n, k } => {
            let list = enumerate_class(*n, &ClassSpec::from_k(*k), guards)?;
            let (value, lines) = complexes_value(&list);
            plain = Some(lines);
            json!({ "count": list.len(), "complexes": value })
        }
        Command::Restrict {
            complex,
            keep,
            canonicalize,
        } => {
            let c = parse_complex(complex)?;
            let mut r = c.restrict(&parse_labels(keep)?)?;
            if *canonicalize {
                r = r.canonicalize();
            }
            plain = Some(vec![r.to_string()]);
            serde_json::to_value(&r)?
        }
        Command::Approx {
            complex,
            oracle,
            n,
            canonicalize,
        } => {
            let mut r = match (complex, oracle) {
                (Some(c), None) => parse_complex(c)?.approx(*n)?,
                (None, Some(o)) => parse_oracle(o)?.truncate(*n)?,
                _ => return Err(anyhow!("exactly one of --complex or --oracle is required")),
            };
            if *canonicalize {
                r = r.canonicalize();
            }
            plain = Some(vec![r.to_string()]);
            serde_json::to_value(&r)?
        }
        Command::Depth { complex, oracle } => {
            let a = parse_complex(complex)?;
            let o = parse_oracle(oracle)?;
            match depth(&a, &o, guards.horizon)? {
                Depth::Defined(n) => json!({ "depth": n }),
                Depth::Undefined { horizon_limited } => {
                    exit = if horizon_limited { 3 } else { 1 };
                    json!({ "depth": null, "horizon_limited": horizon_limited })
                }
            }
        }
        Command::Embed {
            a,
            b,
            mode,
            count_only,
        } => {
            let a = parse_complex(a)?;
            let b = parse_complex(b)?;
            let embs = enumerate_embeddings(&a, &b, (*mode).into(), guards)?;
            if *count_only {
                json!({ "count": embs.len() })
            } else {
                json!({ "count": embs.len(), "embeddings": serde_json::to_value(&embs)? })
            }
        }
        Command::Copies { b, a, mode } => {
            let a = parse_complex(a)?;
            let b = parse_complex(b)?;
            let copies = enumerate_copies(&b, &a, (*mode).into(), guards)?;
            let (value, lines) = complexes_value(&copies);
            plain = Some(lines);
            json!({ "count": copies.len(), "copies": value })
        }
        Command::Arrow { query, search } => {
            let q = ArrowQuery {
                a: parse_complex(&query.a)?,
                b: parse_complex(&query.b)?,
                c: parse_complex(&query.c)?,
                colors: query.colors,
                mode: query.mode.into(),
            };
            let res = arrow_check(&q, (*search).into(), guards)?;
            if !res.holds {
                exit = 1;
            }
            serde_json::to_value(&res)?
        }
        Command::ArrowMin {
            class,
            a_size,
            a,
            b_size,
            b,
            colors,
            mode,
            n_max,
            search,
        } => {
            let a = match (a_size, a) {
                (Some(n), None) => class.member(*n),
                (None, Some(spec)) => parse_complex(spec)?,
                _ => return Err(anyhow!("exactly one of --a-size or --a is required")),
            };
            let b = match (b_size, b) {
                (Some(n), None) => class.member(*n),
                (None, Some(spec)) => parse_complex(spec)?,
                _ => return Err(anyhow!("exactly one of --b-size or --b is required")),
            };
            match arrow_search_min(
                &a,
                &b,
                *colors,
                (*mode).into(),
                class.ambient(),
                *n_max,
                (*search).into(),
                guards,
            )? {
                Some((n, res)) => json!({ "n": n, "result": serde_json::to_value(&res)? }),
                None => {
                    exit = 3;
                    json!({ "n": null, "n_max": n_max })
                }
            }
        }
        Command::ExportCnf { query } => {
            let q = ArrowQuery {
                a: parse_complex(&query.a)?,
                b: parse_complex(&query.b)?,
                c: parse_complex(&query.c)?,
                colors: query.colors,
                mode: query.mode.into(),
            };
            let cnf = export_cnf(&q, guards)?;
            raw = Some(cnf.to_dimacs());
            Value::Null
        }
        Command::Pigeonhole {
            a,
            oracle,
            coloring,
            step_horizon,
        } => {
            let a = parse_complex(a)?;
            let o = parse_oracle(oracle)?;
            let color = parse_coloring(coloring)?;
            let result = pigeonhole_step(&a, &o, |m, ext| color(m, ext), *step_horizon)?;
            plain = Some(vec![result.to_string()]);
            serde_json::to_value(&result)?
        }
        Command::SpaceRamsey {
            oracle,
            k,
            n,
            colors,
            m,
            search,
        } => {
            let o = parse_oracle(oracle)?;
            let res = space_ramsey_check(&o, *k, *n, *colors, *m, (*search).into(), guards)?;
            if !res.holds {
                exit = 1;
            }
            serde_json::to_value(&res)?
        }
        Command::SpaceRamseyMin {
            oracle,
            k,
            n,
            colors,
            m_max,
            search,
        } => {
            let o = parse_oracle(oracle)?;
            match space_ramsey_search_min(&o, *k, *n, *colors, *m_max, (*search).into(), guards)? {
                Some((m, res)) => json!({ "m": m, "result": serde_json::to_value(&res)? }),
                None => {
                    exit = 3;
                    json!({ "m": null, "m_max": m_max })
                }
            }
        }
        Command::Axioms { k, n_max } => {
            let report = verify_class_axioms(&ClassSpec::from_k(*k), *n_max, guards)?;
            if !report.passed {
                exit = 1;
            }
            serde_json::to_value(&report)?
        }
        Command::Amalgamate {
            a,
            b1,
            b2,
            f1,
            f2,
            k,
        } => {
            let a = parse_complex(a)?;
            let b1 = parse_complex(b1)?;
            let b2 = parse_complex(b2)?;
            let f1 = parse_map(f1, EmbeddingMode::Strong)?;
            let f2 = parse_map(f2, EmbeddingMode::Strong)?;
            let res = amalgamate(&a, &b1, &b2, &f1, &f2, &ClassSpec::from_k(*k))?;
            plain = Some(vec![res.complex.to_string()]);
            json!({
                "complex": serde_json::to_value(&res.complex)?,
                "g1": serde_json::to_value(&res.g1)?,
                "g2": serde_json::to_value(&res.g2)?,
            })
        }
        Command::FraisseBuild {
            k,
            steps,
            seed,
            pattern_bound,
        } => {
            seed_used = Some(*seed);
            let out = build_limit_with_bound(
                &ClassSpec::from_k(*k),
                *steps,
                *seed,
                *pattern_bound,
                guards,
            )?;
            json!({
                "steps_done": out.steps_done,
                "queue_drained": out.queue_drained,
                "saturated_birth": out.saturated_birth,
                "keys": out.keys,
                "snapshots": serde_json::to_value(&out.snapshots)?,
                "snapshot_ids": out.snapshot_ids,
                "demand_log": serde_json::to_value(&out.demand_log)?,
            })
        }
        Command::ExtCheck {
            complex,
            k,
            s,
            scope,
            ultra,
        } => {
            let c = parse_complex(complex)?;
            let class = ClassSpec::from_k(*k);
            if *ultra {
                let report = check_ultrahomogeneity_truncated(&c, &class, *s, guards)?;
                if !report.all_passed() {
                    exit = 1;
                }
                serde_json::to_value(&report)?
            } else {
                let scope_labels = scope.as_deref().map(parse_labels).transpose()?;
                let report = check_extension_property_scoped(
                    &c,
                    &class,
                    *s,
                    scope_labels.as_deref(),
                    guards,
                )?;
                if !report.all_passed() {
                    exit = 1;
                }
                serde_json::to_value(&report)?
            }
        }
        Command::Random { n, p, k, seed } => {
            seed_used = Some(*seed);
            let c = polyhedra::randgen::random_polyhedron(&GenParams {
                n: *n,
                p: *p,
                k: *k,
                seed: *seed,
            })?;
            plain = Some(vec![c.to_string()]);
            serde_json::to_value(&c)?
        }
        Command::Coverage {
            n,
            p,
            k,
            seed,
            s,
            samples,
            mode,
        } => {
            seed_used = Some(*seed);
            let report = embedding_coverage_test_mode(
                &GenParams {
                    n: *n,
                    p: *p,
                    k: *k,
                    seed: *seed,
                },
                *s,
                *samples,
                (*mode).into(),
                guards,
            )?;
            serde_json::to_value(&report)?
        }
    };

    Ok(Output {
        meta: Meta {
            version: env!("CARGO_PKG_VERSION"),
            command: command_name,
            seed: seed_used,
            guards: GuardsMeta {
                node_budget: guards.node_budget,
                horizon: guards.horizon,
            },
        },
        result,
        plain,
        raw,
        exit,
    })
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Enumerate { .. } => "enumerate",
        Command::Restrict { .. } => "restrict",
        Command::Approx { .. } => "approx",
        Command::Depth { .. } => "depth",
        Command::Embed { .. } => "embed",
        Command::Copies { .. } => "copies",
        Command::Arrow { .. } => "arrow",
        Command::ArrowMin { .. } => "arrow-min",
        Command::ExportCnf { .. } => "export-cnf",
        Command::Pigeonhole { .. } => "pigeonhole",
        Command::SpaceRamsey { .. } => "space-ramsey",
        Command::SpaceRamseyMin { .. } => "space-ramsey-min",
        Command::Axioms { .. } => "axioms",
        Command::Amalgamate { .. } => "amalgamate",
        Command::FraisseBuild { .. } => "fraisse-build",
        Command::ExtCheck { .. } => "ext-check",
        Command::Random { .. } => "random",
        Command::Coverage { .. } => "coverage",
    }
    .to_string()
}

fn guards_from(cli: &Cli) -> anyhow::Result<Guards> {
    let mut g = Guards::default();
    if let Ok(v) = std::env::var("POLYHEDRA_NODE_BUDGET") {
        g.node_budget = v.parse().context("POLYHEDRA_NODE_BUDGET")?;
    }
    if let Ok(v) = std::env::var("POLYHEDRA_HORIZON") {
        g.horizon = v.parse().context("POLYHEDRA_HORIZON")?;
    }
    if let Some(v) = cli.node_budget {
        g.node_budget = v;
    }
    if let Some(v) = cli.horizon {
        g.horizon = v;
    }
    Ok(g)
}

fn emit(cli: &Cli, out: Output) -> anyhow::Result<u8> {
    let body = if let Some(raw) = out.raw {
        raw
    } else if cli.plain {
        match out.plain {
            Some(lines) => {
                let mut s = lines.join("\n");
                s.push('\n');
                s
            }
            None => {
                let mut s = serde_json::to_string_pretty(&out.result)?;
                s.push('\n');
                s
            }
        }
    } else {
        let envelope = json!({
            "meta": serde_json::to_value(&out.meta)?,
            "result": out.result,
        });
        let mut s = serde_json::to_string_pretty(&envelope)?;
        s.push('\n');
        s
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {path}"))?,
        None => print!("{body}"),
    }
    Ok(out.exit)
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ResourceLimit(_)) => 3,
        Some(Error::NoCandidates(_)) => 1,
        Some(Error::InvalidInput(_)) | Some(Error::Format(_)) => 2,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guards = match guards_from(&cli) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match run(&cli, &guards).and_then(|out| emit(&cli, out)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
