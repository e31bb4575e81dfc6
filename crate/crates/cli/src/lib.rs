//! Command-line front end: parses arguments, runs one engine operation and
//! renders a single deterministic report.

mod parse;

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use coxwalls::algebra::{CoxeterMatrix, CoxeterSystem, Root};
use coxwalls::chains::{
    check_ladder, classify_chain, classify_dihedral_pair, constant_l, constants_report, estimate_epsilon, make_chain,
    ChainContext,
};
use coxwalls::cubes::{
    bound_a, check_deep_cube_affine, co_hopf, constant_k, enumerate_2spherical_classes, VertexSpace,
};
use coxwalls::roots::{constant_kappa, constant_lambda_fin, RootInventory};
use coxwalls::walls::{classify_wall_pair, WallPairClass, WallSpace, DEFAULT_CHAMBER_CAP};
use coxwalls::{Error, Result};

pub use parse::{parse_root, parse_roots};

#[derive(Parser, Debug)]
#[command(name = "coxwalls", version, about = "Exact wall combinatorics for Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Coxeter matrix file: {"rank": n, "matrix": [[...]]}, 0 meaning ∞.
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    pub max_roots: usize,
    #[arg(long, default_value_t = DEFAULT_CHAMBER_CAP)]
    pub max_chambers: usize,
    #[arg(long, default_value_t = 2_000_000)]
    pub max_cubes: usize,
    /// Wall-clock budget in seconds, checked between stages.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Decimal places in text output.
    #[arg(long, default_value_t = 15)]
    pub precision: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots up to a depth.
    Roots {
        #[command(flatten)]
        cfg: RunConfig,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// κ, λ_fin, λ_max, ε̂, the r-table, L, K and the deep-cube bound.
    Constants {
        #[command(flatten)]
        cfg: RunConfig,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Classify a chain of nested half-spaces.
    ChainCheck {
        #[command(flatten)]
        cfg: RunConfig,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// e.g. "[0,1],[1,2],[2,3]" or "0@1;1.0@1".
        #[arg(long)]
        roots: String,
    },
    /// Find a wall separating two parallel walls.
    Separate {
        #[command(flatten)]
        cfg: RunConfig,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Check the hypotheses and conclusion of a ladder of walls.
    LadderCheck {
        #[command(flatten)]
        cfg: RunConfig,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        mu_prime: String,
        #[arg(long)]
        walls: String,
    },
    /// Classify the group generated by two reflections.
    DihedralPair {
        #[command(flatten)]
        cfg: RunConfig,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Vertices and cubes of the cube complex near the identity.
    Cubes {
        #[command(flatten)]
        cfg: RunConfig,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long)]
        count_orbits: bool,
        /// Report the cubical chamber of this Cayley vertex (a word, e.g. "0.1").
        #[arg(long)]
        chamber: Option<String>,
        /// Check every cube whose walls meet at least this far from the
        /// Cayley graph.
        #[arg(long)]
        deep_check: Option<usize>,
    },
    /// 2-spherical reflection subgroups up to conjugacy.
    Classes {
        #[command(flatten)]
        cfg: RunConfig,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Co-Hopf decision for 2-spherical groups.
    Cohopf {
        #[command(flatten)]
        cfg: RunConfig,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Roots { .. } => "roots",
            Command::Constants { .. } => "constants",
            Command::ChainCheck { .. } => "chain-check",
            Command::Separate { .. } => "separate",
            Command::LadderCheck { .. } => "ladder-check",
            Command::DihedralPair { .. } => "dihedral-pair",
            Command::Cubes { .. } => "cubes",
            Command::Classes { .. } => "classes",
            Command::Cohopf { .. } => "cohopf",
        }
    }

    fn cfg(&self) -> &RunConfig {
        match self {
            Command::Roots { cfg, .. }
            | Command::Constants { cfg, .. }
            | Command::ChainCheck { cfg, .. }
            | Command::Separate { cfg, .. }
            | Command::LadderCheck { cfg, .. }
            | Command::DihedralPair { cfg, .. }
            | Command::Cubes { cfg, .. }
            | Command::Classes { cfg, .. }
            | Command::Cohopf { cfg } => cfg,
        }
    }

    /// Depth or radius limits, for the report.
    fn limits(&self) -> Value {
        match self {
            Command::Roots { depth, .. }
            | Command::Constants { depth, .. }
            | Command::ChainCheck { depth, .. }
            | Command::Separate { depth, .. }
            | Command::LadderCheck { depth, .. }
            | Command::DihedralPair { depth, .. }
            | Command::Classes { depth, .. } => json!({ "depth": depth }),
            Command::Cubes { radius, deep_check, .. } => json!({ "radius": radius, "deep_check": deep_check }),
            Command::Cohopf { .. } => json!({}),
        }
    }
}

/// Outcome of one invocation: exit code and the rendered report.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub output: Option<PathBuf>,
}

fn threads() -> std::result::Result<usize, Error> {
    match std::env::var("COXWALLS_THREADS") {
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Invalid(format!("COXWALLS_THREADS must be a positive integer, got {v:?}"))),
        Err(_) => Ok(1),
    }
}

fn matrix_hash(m: &CoxeterMatrix) -> String {
    Sha256::digest(m.to_json().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

struct Budget {
    start: Instant,
    secs: Option<u64>,
}

impl Budget {
    fn check(&self, stage: &str) -> Result<()> {
        match self.secs {
            Some(s) if self.start.elapsed().as_secs_f64() > s as f64 => {
                Err(Error::ResourceLimit(format!("wall-clock budget of {s} s exceeded after {stage}")))
            }
            _ => Ok(()),
        }
    }
}

fn space(cfg: &RunConfig, m: &CoxeterMatrix, depth: usize) -> Result<WallSpace> {
    WallSpace::with_limits(m, depth, cfg.max_roots, cfg.max_chambers)
}

fn run(cmd: &Command, m: &CoxeterMatrix, budget: &Budget) -> Result<Value> {
    let cfg = cmd.cfg();
    let sys = Arc::new(CoxeterSystem::new(m.clone()));
    match cmd {
        Command::Roots { depth, .. } => {
            let inv = RootInventory::build(sys, *depth, cfg.max_roots)?;
            let roots: Vec<Value> =
                (0..inv.len()).map(|i| json!({ "root": to_value(inv.root(i)), "depth": inv.depth_of(i) })).collect();
            Ok(json!({
                "positive_roots": inv.len(),
                "complete": inv.is_complete(),
                "roots": roots,
            }))
        }
        Command::Constants { depth, .. } => {
            let sp = space(cfg, m, *depth)?;
            budget.check("inventory")?;
            let report = constants_report(m, &sp)?;
            budget.check("constants")?;
            let n_hat = sp.max_crossing_clique(*depth).len();
            let k =
                constant_k(m.rank(), &report.kappa.value, &report.lambda_max.value, report.epsilon_hat.value.as_ref());
            let (k_value, a_bound) = match &k {
                Ok(k) => (to_value(k), to_value(&bound_a(k.value, n_hat))),
                Err(e) => (json!({ "undefined": e.to_string() }), Value::Null),
            };
            let mut v = to_value(&report);
            v["n_hat"] = json!(n_hat);
            v["k"] = k_value;
            v["a_bound"] = a_bound;
            Ok(v)
        }
        Command::ChainCheck { depth, roots, .. } => {
            let sp = space(cfg, m, *depth)?;
            let roots = parse_roots(&sys, roots)?;
            let chain = make_chain(&sp, &roots)?;
            let eps = estimate_epsilon(&sp);
            let ctx = ChainContext { kappa: constant_kappa(m).value, epsilon: eps.value.clone() };
            let verdict = classify_chain(&sp, &ctx, &chain)?;
            Ok(json!({ "chain": to_value(&chain), "epsilon_hat": to_value(&eps), "verdict": to_value(&verdict) }))
        }
        Command::Separate { depth, a, b, .. } => {
            let sp = space(cfg, m, *depth)?;
            let (a, b) = (parse_root(&sys, a)?, parse_root(&sys, b)?);
            let class = classify_wall_pair(sp.inventory(), &a, &b)?;
            if class == WallPairClass::Cross {
                return Ok(
                    json!({ "pair_class": to_value(&class), "distance": null, "separator": null, "certificate": null }),
                );
            }
            let s = sp.find_separating_wall(&a, &b)?;
            Ok(json!({
                "pair_class": to_value(&class),
                "facing_away": [to_value(&s.a), to_value(&s.b)],
                "distance": s.distance.distance,
                "separator": to_value(&s.separator),
                "certificate": { "x": to_value(&s.distance.x), "y": to_value(&s.distance.y) },
            }))
        }
        Command::LadderCheck { depth, mu, mu_prime, walls, .. } => {
            let sp = space(cfg, m, *depth)?;
            let (mu, mu2) = (parse_root(&sys, mu)?, parse_root(&sys, mu_prime)?);
            let walls = parse_roots(&sys, walls)?;
            let eps = estimate_epsilon(&sp);
            let l = match &eps.value {
                Some(e) => Some(constant_l(&constant_kappa(m).value, &constant_lambda_fin(m).value, e)?),
                None => None,
            };
            let report = check_ladder(&sp, l.as_ref(), &mu, &mu2, &walls)?;
            Ok(json!({ "epsilon_hat": to_value(&eps), "report": to_value(&report) }))
        }
        Command::DihedralPair { depth, a, b, .. } => {
            let sp = space(cfg, m, *depth)?;
            let (a, b) = (parse_root(&sys, a)?, parse_root(&sys, b)?);
            let eps = estimate_epsilon(&sp);
            let kind = classify_dihedral_pair(&sp, &eps, &a, &b)?;
            Ok(json!({ "value": to_value(&sys.form(&a, &b)), "kind": to_value(&kind), "epsilon_hat": to_value(&eps) }))
        }
        Command::Cubes { radius, count_orbits, chamber, deep_check, .. } => {
            cubes_report(cfg, m, &sys, *radius, *count_orbits, chamber.as_deref(), *deep_check, budget)
        }
        Command::Classes { depth, .. } => Ok(to_value(&enumerate_2spherical_classes(m, *depth)?)),
        Command::Cohopf { .. } => Ok(to_value(&co_hopf(m)?)),
    }
}

#[allow(clippy::too_many_arguments)]
fn cubes_report(
    cfg: &RunConfig,
    m: &CoxeterMatrix,
    sys: &CoxeterSystem,
    radius: usize,
    count_orbits: bool,
    chamber: Option<&str>,
    deep_check: Option<usize>,
    budget: &Budget,
) -> Result<Value> {
    let vs = VertexSpace::with_limits(m, radius, cfg.max_roots, cfg.max_chambers)?;
    budget.check("wall space")?;
    let vertices = vs.vertices()?;
    let cubes = vs.cubes(&vertices)?;
    if vertices.len() + cubes.len() > cfg.max_cubes {
        return Err(Error::ResourceLimit(format!("more than {} cells", cfg.max_cubes)));
    }
    budget.check("cube enumeration")?;
    let dim = cubes.iter().map(|c| c.walls.len()).max().unwrap_or(0);
    let mut by_dim = vec![vertices.len()];
    by_dim.extend((1..=dim).map(|k| cubes.iter().filter(|c| c.walls.len() == k).count()));
    let mut out = json!({
        "vertices": vertices.len(),
        "cubes_by_dim": by_dim,
        "inventory_depth": vs.space().depth(),
        "orbit_counts": null,
        "chamber": null,
        "deep": null,
    });
    if let Some(top) = cubes.iter().find(|c| c.walls.len() == dim) {
        out["witnesses"] = json!({ "max_cube": to_value(&vs.cube(top)) });
    }
    if count_orbits {
        out["orbit_counts"] = json!({ "vertices": vs.vertex_orbits(&vertices)?, "cubes": vs.cube_orbits(&cubes)? });
        budget.check("orbit counts")?;
    }
    if let Some(word) = chamber {
        let w = sys.element_from_word(&parse::parse_word(word)?)?;
        let inside = vs.chamber_vertices(&vertices);
        let sizes: Vec<usize> = (0..=radius).map(|k| inside.iter().filter(|d| d.count_ones(..) <= k).count()).collect();
        let mut moved = Vec::new();
        for d in &inside {
            moved.push(vs.roots_of(&vs.translate(&w, d)?));
        }
        out["chamber"] = json!({ "v0": to_value(&w), "sizes_by_radius": sizes, "vertices": to_value(&moved) });
    }
    if let Some(threshold) = deep_check {
        let mut seen = std::collections::BTreeSet::new();
        let (mut checked, mut failures) = (0usize, Vec::new());
        for c in &cubes {
            if !seen.insert(c.walls.clone()) {
                continue;
            }
            let r = check_deep_cube_affine(&vs, &c.walls, threshold)?;
            if r.claimed {
                checked += 1;
                if r.affine_rank3 != Some(true) {
                    failures.push(to_value(&r));
                }
            }
        }
        out["deep"] =
            json!({ "threshold": threshold, "wall_sets": seen.len(), "checked": checked, "failures": failures });
    }
    Ok(out)
}

fn error_doc(e: &Error) -> Value {
    json!({ "kind": format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or(""), "message": e.to_string(), "exit_code": e.exit_code() })
}

/// Text rendering: one `path = value` line per leaf.
fn flatten(prefix: &str, v: &Value, precision: usize, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            if let (Some(Value::String(a)), Some(ex)) = (map.get("approx"), map.get("exact")) {
                let approx = a.parse::<f64>().map(|x| format!("{x:.precision$}")).unwrap_or_else(|_| a.clone());
                out.push(format!("{prefix} = {approx} (exact {ex})"));
                return;
            }
            for (k, x) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, precision, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, precision, out);
            }
            if items.is_empty() {
                out.push(format!("{prefix} = []"));
            }
        }
        x => out.push(format!("{prefix} = {x}")),
    }
}

fn render(doc: &Value, format: Format, precision: usize) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("valid json") + "\n",
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", doc, precision, &mut lines);
            lines.join("\n") + "\n"
        }
    }
}

/// Runs one command. Never panics on bad input; the exit code is 0 on
/// success, 2 on invalid input, 3 on resource limits and 4 on an internal
/// invariant violation, in which case a reproduction bundle is written next
/// to the report.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, report: e.to_string(), output: None };
        }
    };
    let cmd = &cli.command;
    let cfg = cmd.cfg();
    let budget = Budget { start: Instant::now(), secs: cfg.budget };
    let mut doc = json!({
        "tool": "coxwalls",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cmd.name(),
    });
    let matrix = std::fs::read_to_string(&cfg.matrix)
        .map_err(|e| Error::Invalid(format!("{}: {e}", cfg.matrix.display())))
        .and_then(|t| CoxeterMatrix::from_json(&t));
    let result = threads().and_then(|n| {
        let m = matrix?;
        doc["matrix"] = json!({ "rank": m.rank(), "matrix": m.rows(), "sha256": matrix_hash(&m) });
        doc["limits"] = json!({
            "max_roots": cfg.max_roots,
            "max_chambers": cfg.max_chambers,
            "max_cubes": cfg.max_cubes,
            "budget_seconds": cfg.budget,
            "threads": n,
            "run": cmd.limits(),
        });
        run(cmd, &m, &budget)
    });
    let code = match result {
        Ok(v) => {
            doc["result"] = v;
            0
        }
        Err(e) => {
            doc["error"] = error_doc(&e);
            if e.exit_code() == 4 {
                write_bundle(&argv, cfg, &doc);
            }
            e.exit_code()
        }
    };
    Outcome { code, report: render(&doc, cfg.format, cfg.precision), output: cfg.output.clone() }
}

fn write_bundle(argv: &[std::ffi::OsString], cfg: &RunConfig, doc: &Value) {
    let bundle = json!({
        "argv": argv.iter().map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>(),
        "matrix_file": std::fs::read_to_string(&cfg.matrix).unwrap_or_default(),
        "report": doc,
    });
    let dir = cfg.output.as_ref().and_then(|p| p.parent().map(|d| d.to_path_buf())).unwrap_or_default();
    let path = dir.join("coxwalls-repro.json");
    if let Err(e) = std::fs::write(&path, serde_json::to_string_pretty(&bundle).expect("valid json")) {
        eprintln!("could not write reproduction bundle {}: {e}", path.display());
    } else {
        eprintln!("reproduction bundle written to {}", path.display());
    }
}

/// Roots of a system from the inventory, for tests and callers that already
/// hold roots.
pub fn root_strings(roots: &[Root]) -> String {
    roots.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}
