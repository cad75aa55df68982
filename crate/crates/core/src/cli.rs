//! The `orient3` command line tool.
//!
//! Every artifact carries the crate version, the full configuration and the
//! seed: JSON output wraps the result in an envelope, CSV output starts with
//! `#` comment lines and DOT output with `//` comment lines.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chain_fixed::{run_trajectory, FixedChain};
use crate::chain_flip::{FlipState, FlipStateJson};
use crate::dyck::{dyck_to_orientation, enumerate_dyck_pairs, orientation_to_dyck, pair_count, DyckPair, DyckPath};
use crate::oracle::{
    self, build_transition_matrix, enumerate_reachable, gadget_bottleneck, mixing_time,
    write_conductance_csv, write_enumeration_csv, write_tv_csv, ChainSpec, CrChain, DkChain, EfChain, OracleError,
    TrChain, TransitionMatrix,
};
use crate::orientation::{Orientation3, SchnyderWood};
use crate::triangulation::{build_slow_gadget, Triangulation, TriangulationJson};
use crate::{rng, VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    SampleFixed,
    SampleFlip,
    Enumerate,
    TvCurve,
    Gadget,
    Dyck,
    Bottleneck,
    ExportDot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DyckAction {
    Convert,
    RoundTrip,
    Enumerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Tr,
    Cr,
    Ef,
    Dk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Dot,
}

/// Everything that determines a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<DyckAction>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub chain: Option<ChainKind>,
    pub n: Option<usize>,
    pub t: Option<usize>,
    pub steps: u64,
    pub seed: u64,
    pub eps: f64,
    pub tmax: usize,
    pub format: Option<Format>,
    pub cap: usize,
}

#[derive(Debug, Parser)]
#[command(name = "orient3", version, about = "Samplers and exact analysis for 3-orientations of planar triangulations")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run M_TR or M_CR on a given triangulation.
    SampleFixed(Opts),
    /// Run M_EF (or M_DK) on states with n internal vertices.
    SampleFlip(Opts),
    /// Enumerate a state space and report counts and diameter.
    Enumerate(Opts),
    /// Exact total variation curve.
    TvCurve(Opts),
    /// Emit the slow-mixing gadget for parameter t.
    Gadget(Opts),
    /// Convert, round-trip or enumerate Dyck path pairs.
    Dyck {
        #[arg(value_enum)]
        action: DyckAction,
        #[command(flatten)]
        opts: Opts,
    },
    /// Conductance report for the gadget.
    Bottleneck(Opts),
    /// Graphviz rendering of a triangulation or state.
    ExportDot(Opts),
}

#[derive(Debug, clap::Args)]
struct Opts {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    chain: Option<ChainKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    steps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    #[arg(long, default_value_t = 1000)]
    tmax: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Largest state space to enumerate.
    #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
    cap: usize,
}

impl RunConfig {
    /// Parses command line arguments (including the program name).
    pub fn parse_from<I, T>(args: I) -> Result<RunConfig, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let args = Args::try_parse_from(args)?;
        let (command, action, o) = match args.command {
            Cmd::SampleFixed(o) => (CommandKind::SampleFixed, None, o),
            Cmd::SampleFlip(o) => (CommandKind::SampleFlip, None, o),
            Cmd::Enumerate(o) => (CommandKind::Enumerate, None, o),
            Cmd::TvCurve(o) => (CommandKind::TvCurve, None, o),
            Cmd::Gadget(o) => (CommandKind::Gadget, None, o),
            Cmd::Dyck { action, opts } => (CommandKind::Dyck, Some(action), opts),
            Cmd::Bottleneck(o) => (CommandKind::Bottleneck, None, o),
            Cmd::ExportDot(o) => (CommandKind::ExportDot, None, o),
        };
        Ok(RunConfig {
            command,
            action,
            input: o.input,
            output: o.output,
            chain: o.chain,
            n: o.n,
            t: o.t,
            steps: o.steps,
            seed: o.seed,
            eps: o.eps,
            tmax: o.tmax,
            format: o.format,
            cap: o.cap,
        })
    }
}

/// A failed run, printed as one JSON object on stderr.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub message: String,
}

impl CliError {
    fn invalid(field: &str, message: impl ToString) -> CliError {
        CliError { code: EXIT_VALIDATION, kind: "validation", field: Some(field.to_string()), message: message.to_string() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("error records serialize")
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> CliError {
        match e {
            OracleError::CapExceeded { .. } => {
                CliError { code: EXIT_CAP, kind: "cap_exceeded", field: Some("cap".into()), message: e.to_string() }
            }
            _ => CliError { code: EXIT_VALIDATION, kind: "oracle", field: None, message: e.to_string() },
        }
    }
}

/// Runs the tool on `args` and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return EXIT_OK;
        }
        Err(e) => {
            let field = e.get(clap::error::ContextKind::InvalidArg).map(|v| v.to_string());
            let message = e.kind().as_str().unwrap_or("usage error").to_string();
            eprintln!("{}", CliError { code: EXIT_VALIDATION, kind: "usage", field, message }.to_json());
            return EXIT_VALIDATION;
        }
    };
    match run_command(&cfg) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.code
        }
    }
}

/// Runs one command and writes its artifact to `--output` or stdout.
pub fn run_command(cfg: &RunConfig) -> Result<(), CliError> {
    let text = render(cfg)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::invalid("output", e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// The artifact a run produces, as text.
pub fn render(cfg: &RunConfig) -> Result<String, CliError> {
    match cfg.command {
        CommandKind::SampleFixed => sample_fixed(cfg),
        CommandKind::SampleFlip => sample_flip(cfg),
        CommandKind::Enumerate => enumerate(cfg),
        CommandKind::TvCurve => tv_curve(cfg),
        CommandKind::Gadget => gadget(cfg),
        CommandKind::Dyck => dyck(cfg),
        CommandKind::Bottleneck => bottleneck(cfg),
        CommandKind::ExportDot => export_dot(cfg),
    }
}

fn envelope(cfg: &RunConfig, result: Value) -> String {
    let doc = json!({ "tool": "orient3", "version": VERSION, "seed": cfg.seed, "config": cfg, "result": result });
    let mut s = serde_json::to_string_pretty(&doc).expect("values serialize");
    s.push('\n');
    s
}

fn header(cfg: &RunConfig, comment: &str) -> String {
    format!(
        "{comment} orient3 {VERSION}\n{comment} seed {}\n{comment} config {}\n",
        cfg.seed,
        serde_json::to_string(cfg).expect("config serializes")
    )
}

fn format_of(cfg: &RunConfig, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = cfg.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(CliError::invalid("format", format!("{f:?} is not available for this command")));
    }
    Ok(f)
}

fn require<T: Copy>(v: Option<T>, field: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::invalid(field, format!("--{field} is required")))
}

/// Whatever a JSON input file may hold.
#[derive(Deserialize)]
#[serde(untagged)]
enum InputDoc {
    State(FlipStateJson),
    Triangulation(TriangulationJson),
    Pair(DyckPair),
}

fn read_input(cfg: &RunConfig) -> Result<InputDoc, CliError> {
    let path = cfg.input.as_ref().ok_or_else(|| CliError::invalid("input", "--input is required"))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid("input", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::invalid("input", format!("{}: {e}", path.display())))
}

/// A triangulation with an orientation: as given, or the initial one.
fn read_state(cfg: &RunConfig) -> Result<FlipState, CliError> {
    match read_input(cfg)? {
        InputDoc::State(j) => FlipState::from_json(&j).map_err(|e| CliError::invalid("input", e)),
        InputDoc::Triangulation(j) => {
            let tri = j.build().map_err(|e| CliError::invalid("input", e))?;
            FlipState::initial(tri).map_err(|e| CliError::invalid("input", e))
        }
        InputDoc::Pair(p) => dyck_to_orientation(&p).map_err(|e| CliError::invalid("input", e)),
    }
}

fn chain_of(cfg: &RunConfig, default: ChainKind, allowed: &[ChainKind]) -> Result<ChainKind, CliError> {
    let c = cfg.chain.unwrap_or(default);
    if !allowed.contains(&c) {
        return Err(CliError::invalid("chain", format!("{c:?} does not apply to this command")));
    }
    Ok(c)
}

/// The pair `+^n -^n` over `(+-)^n`.
fn start_pair(n: usize) -> Result<DyckPair, CliError> {
    if n == 0 {
        return Err(CliError::invalid("n", "n must be at least 1"));
    }
    let top = DyckPath::new([vec![1; n], vec![-1; n]].concat()).expect("valid path");
    let bottom = DyckPath::new((0..2 * n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()).expect("valid path");
    Ok(DyckPair::new(top, bottom).expect("top dominates"))
}

fn sample_fixed(cfg: &RunConfig) -> Result<String, CliError> {
    format_of(cfg, Format::Json, &[Format::Json])?;
    let chain_kind = chain_of(cfg, ChainKind::Tr, &[ChainKind::Tr, ChainKind::Cr])?;
    let start = read_state(cfg)?;
    let chain = FixedChain::new(start.tri.clone());
    let mut o = start.wood.orientation.clone();
    let mut r = rng::stream(cfg.seed, 0);
    let log = run_trajectory(&chain, &mut o, cfg.steps, chain_kind == ChainKind::Cr, &mut r);
    let wood = SchnyderWood::derive(&start.tri, &o).expect("moves keep a 3-orientation");
    let state = FlipState { tri: start.tri, wood };
    let result = json!({
        "chain": chain_kind,
        "steps": cfg.steps,
        "accepted": log.len(),
        "log": log.iter().map(|m| m.log_line()).collect::<Vec<_>>(),
        "state": state.to_json(),
    });
    Ok(envelope(cfg, result))
}

fn sample_flip(cfg: &RunConfig) -> Result<String, CliError> {
    format_of(cfg, Format::Json, &[Format::Json])?;
    let chain_kind = chain_of(cfg, ChainKind::Ef, &[ChainKind::Ef, ChainKind::Dk])?;
    let start = match (&cfg.input, cfg.n) {
        (Some(_), _) => read_state(cfg)?,
        (None, n) => {
            dyck_to_orientation(&start_pair(require(n, "n")?)?).map_err(|e| CliError::invalid("n", e))?
        }
    };
    let mut r = rng::stream(cfg.seed, 0);
    let mut accepted = 0u64;
    let state = match chain_kind {
        ChainKind::Ef => {
            let mut s = start;
            for _ in 0..cfg.steps {
                accepted += s.mef_step(&mut r).is_some() as u64;
            }
            s
        }
        _ => {
            let mut p = orientation_to_dyck(&start);
            for _ in 0..cfg.steps {
                accepted += p.mdk_step(&mut r) as u64;
            }
            dyck_to_orientation(&p).expect("M_DK stays on valid pairs")
        }
    };
    let result = json!({
        "chain": chain_kind,
        "n": state.n(),
        "steps": cfg.steps,
        "accepted": accepted,
        "pair": orientation_to_dyck(&state).key(),
        "state": state.to_json(),
    });
    Ok(envelope(cfg, result))
}

/// Enumerated space and exact matrix for the configured chain.
struct Analysis {
    chain: ChainKind,
    n: usize,
    states: usize,
    matrix: TransitionMatrix,
}

fn analyse<C: ChainSpec>(chain: &C, start: C::State, cap: usize) -> Result<(usize, TransitionMatrix), CliError> {
    let space = enumerate_reachable(chain, start, cap)?;
    let p = build_transition_matrix(chain, &space)?;
    Ok((space.len(), p))
}

fn analysis(cfg: &RunConfig) -> Result<Analysis, CliError> {
    if cfg.input.is_some() {
        let chain_kind = chain_of(cfg, ChainKind::Tr, &[ChainKind::Tr, ChainKind::Cr])?;
        let s = read_state(cfg)?;
        let n = s.n();
        let fc = FixedChain::new(s.tri);
        let o = s.wood.orientation;
        let (states, matrix) = match chain_kind {
            ChainKind::Tr => analyse(&TrChain(&fc), o, cfg.cap)?,
            _ => analyse(&CrChain(&fc), o, cfg.cap)?,
        };
        return Ok(Analysis { chain: chain_kind, n, states, matrix });
    }
    let n = require(cfg.n, "n")?;
    let chain_kind = chain_of(cfg, ChainKind::Ef, &[ChainKind::Ef, ChainKind::Dk])?;
    let pair = start_pair(n)?;
    let (states, matrix) = match chain_kind {
        ChainKind::Ef => analyse(&EfChain, dyck_to_orientation(&pair).map_err(|e| CliError::invalid("n", e))?, cfg.cap)?,
        _ => analyse(&DkChain, pair, cfg.cap)?,
    };
    Ok(Analysis { chain: chain_kind, n, states, matrix })
}

fn enumerate(cfg: &RunConfig) -> Result<String, CliError> {
    let format = format_of(cfg, Format::Json, &[Format::Json, Format::Csv])?;
    let a = analysis(cfg)?;
    let diameter = a.matrix.diameter();
    if format == Format::Csv {
        let mut buf = header(cfg, "#").into_bytes();
        write_enumeration_csv(&mut buf, &[(a.n, a.states, diameter)]).expect("writing to memory");
        return Ok(String::from_utf8(buf).expect("utf8"));
    }
    let fixed = matches!(a.chain, ChainKind::Tr | ChainKind::Cr);
    let mut result = json!({
        "chain": a.chain,
        "n": a.n,
        "states": a.states,
        "diameter": diameter,
        "symmetric": a.matrix.is_symmetric(),
        "uniform_stationary": a.matrix.is_uniform_stationary(),
    });
    if fixed {
        let n = a.n as u32;
        result["diameter_bound"] = json!((2 * n + 1).pow(2) as f64 / 2.0);
        result["count_bound"] = json!(3u128.pow(2 * n + 1).to_string());
    } else {
        result["expected_states"] = json!(pair_count(a.n as u64).to_string());
    }
    Ok(envelope(cfg, result))
}

fn tv_curve(cfg: &RunConfig) -> Result<String, CliError> {
    let format = format_of(cfg, Format::Csv, &[Format::Json, Format::Csv])?;
    let a = analysis(cfg)?;
    let curve = a.matrix.worst_tv_curve(cfg.tmax);
    if format == Format::Csv {
        let mut buf = header(cfg, "#").into_bytes();
        write_tv_csv(&mut buf, &curve).expect("writing to memory");
        return Ok(String::from_utf8(buf).expect("utf8"));
    }
    let tau = mixing_time(&curve, cfg.eps).ok();
    let result = json!({
        "chain": a.chain,
        "n": a.n,
        "states": a.states,
        "worst_case_over_starts": a.states <= oracle::WORST_CASE_LIMIT,
        "tau": tau,
        "tv": curve,
    });
    Ok(envelope(cfg, result))
}

fn gadget(cfg: &RunConfig) -> Result<String, CliError> {
    let format = format_of(cfg, Format::Json, &[Format::Json, Format::Dot])?;
    let t = require(cfg.t, "t")?;
    let (tri, labels) = build_slow_gadget(t).map_err(|e| CliError::invalid("t", e))?;
    if format == Format::Dot {
        return Ok(header(cfg, "//") + &tri.to_dot());
    }
    let result = json!({
        "t": t,
        "n": tri.n_internal(),
        "labels": labels.v.iter().map(|(k, v)| (format!("v{k}"), *v)).collect::<std::collections::BTreeMap<_, _>>(),
        "triangulation": tri.to_json(),
    });
    Ok(envelope(cfg, result))
}

fn dyck(cfg: &RunConfig) -> Result<String, CliError> {
    format_of(cfg, Format::Json, &[Format::Json])?;
    let result = match cfg.action.expect("dyck always has an action") {
        DyckAction::Convert => match read_input(cfg)? {
            InputDoc::Pair(p) => {
                let s = dyck_to_orientation(&p).map_err(|e| CliError::invalid("input", e))?;
                json!({ "pair": p, "state": s.to_json() })
            }
            _ => {
                let s = read_state(cfg)?;
                json!({ "pair": orientation_to_dyck(&s), "key": orientation_to_dyck(&s).key() })
            }
        },
        DyckAction::RoundTrip => {
            let n = require(cfg.n, "n")?;
            let pairs = enumerate_dyck_pairs(n);
            let mut failures = Vec::new();
            for p in &pairs {
                let ok = dyck_to_orientation(p).map(|s| orientation_to_dyck(&s) == *p).unwrap_or(false);
                if !ok {
                    failures.push(p.key());
                }
            }
            json!({ "n": n, "pairs": pairs.len(), "failures": failures })
        }
        DyckAction::Enumerate => {
            let n = require(cfg.n, "n")?;
            let pairs = enumerate_dyck_pairs(n);
            json!({
                "n": n,
                "pairs": pairs.len(),
                "formula": pair_count(n as u64).to_string(),
                "keys": pairs.iter().map(|p| p.key()).collect::<Vec<_>>(),
            })
        }
    };
    Ok(envelope(cfg, result))
}

fn bottleneck(cfg: &RunConfig) -> Result<String, CliError> {
    let format = format_of(cfg, Format::Json, &[Format::Json, Format::Csv])?;
    let t = require(cfg.t, "t")?;
    if t < 2 {
        return Err(CliError::invalid("t", "t must be at least 2"));
    }
    let r = gadget_bottleneck(t, cfg.cap, cfg.tmax)?;
    if format == Format::Csv {
        let mut buf = header(cfg, "#").into_bytes();
        write_conductance_csv(&mut buf, &[("D".to_string(), r.phi.clone(), r.phi_bound)]).expect("writing to memory");
        return Ok(String::from_utf8(buf).expect("utf8"));
    }
    Ok(envelope(cfg, serde_json::to_value(&r).expect("report serializes")))
}

fn export_dot(cfg: &RunConfig) -> Result<String, CliError> {
    format_of(cfg, Format::Dot, &[Format::Dot])?;
    let body = match read_input(cfg)? {
        InputDoc::Triangulation(j) => j.build().map_err(|e| CliError::invalid("input", e))?.to_dot(),
        _ => state_dot(&read_state(cfg)?),
    };
    Ok(header(cfg, "//") + &body)
}

/// Directed, coloured rendering of a Schnyder wood.
pub fn state_dot(s: &FlipState) -> String {
    let t: &Triangulation = &s.tri;
    let [r, g, b] = t.external();
    let mut out = String::from("digraph wood {\n");
    for v in 0..t.n_vertices() {
        let attrs = match v {
            _ if v == r => "shape=box, color=red, label=\"s_red\"".to_string(),
            _ if v == g => "shape=box, color=green, label=\"s_green\"".to_string(),
            _ if v == b => "shape=box, color=blue, label=\"s_blue\"".to_string(),
            _ => format!("label=\"{v}\""),
        };
        let _ = writeln!(out, "  {v} [{attrs}];");
    }
    for (u, v) in [(r, g), (g, b), (b, r)] {
        let _ = writeln!(out, "  {u} -> {v} [dir=none, style=bold];");
    }
    let o: &Orientation3 = s.orientation();
    for e in 0..t.n_internal_edges() {
        let (u, v) = o.arc(t, e);
        let c = s.wood.color(t, u, v).expect("internal edge");
        let _ = writeln!(out, "  {u} -> {v} [color={}];", c.name());
    }
    out.push_str("}\n");
    out
}
