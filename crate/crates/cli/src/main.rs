//! Command line front end: JSON in, JSON (or DOT/SVG) out.
//!
//! Every subcommand reads one map from a positional file argument or from
//! standard input when the argument is `-` or absent, so invocations chain
//! over pipes. Exit codes: 64 for usage errors, 65 for inputs that fail
//! validation, 70 for internal assertion failures (the offending input is
//! echoed to standard error as a reproducer). Decision subcommands use
//! small exit codes to report their verdict instead.

mod draw;
mod json;

use std::collections::BTreeMap;
use std::fs;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use triforest::assignment::{one_assignment, two_assignment, zero_assignment, OneVariant};
use triforest::decompose::{four_connected, general, hamiltonian, HamCycle};
use triforest::generate::{generate, FamilySpec};
use triforest::oracle::{brute_decide, check_decomposition, DecisionSpec, Status, ThirdPart};
use triforest::planemap::MapKind;
use triforest::tightness::{
    pair_with_vertices, special_forced, stack_along_cycle, stack_every_face,
    threshold_certificates,
};
use triforest::whitney::whitney_color;
use triforest::{Error, PlaneMap};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }

    fn with_reproducer(mut self, raw: &str) -> Self {
        if self.code == EXIT_INTERNAL {
            self.message = format!("{}\nreproducer input:\n{}", self.message, raw.trim_end());
        }
        self
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::internal(e.to_string()),
            _ => Failure::data(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "triforest", version, about = "Tree decompositions of planar triangulations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a map against the structural invariants of its kind.
    Validate(ValidateArgs),
    /// Split a triangulation's edges into two trees and a spanning tree.
    Decompose(DecomposeArgs),
    /// Color a stacked disk's edges black, red and blue from three corners.
    Whitney(WhitneyArgs),
    /// Assign every filled triangle to one of its vertices within capacity.
    Assign(AssignArgs),
    /// Check a decomposition's claims against a map; exit 0 iff clean.
    Verify(VerifyArgs),
    /// Exhaustively decide a decomposition family; exit 0 SAT, 1 UNSAT, 2 UNKNOWN.
    Brute(BruteArgs),
    /// Build or check stacked pairs that rule out stronger decompositions.
    Tight(TightArgs),
    /// Generate a triangulation from a named family.
    Gen(GenArgs),
    /// Render a map as DOT or SVG, parts colored when a decomposition is given.
    Draw(DrawArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Check inner faces only, allowing any simple outer cycle.
    #[arg(long)]
    disk: bool,
    #[arg(value_name = "IN.json")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// No separating triangles; spanning tree of degree at most 2.
    #[value(name = "4c")]
    FourConnected,
    /// Along a Hamiltonian cycle; degree at most 3.
    Ham,
    /// Any triangulation; degree at most 4.
    Any,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Hamiltonian cycle file (JSON array of vertices); required for mode ham.
    #[arg(long, value_name = "CYCLE.json")]
    cycle: Option<PathBuf>,
    #[arg(value_name = "IN.json")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct WhitneyArgs {
    /// First outer corner.
    #[arg(long)]
    x: usize,
    /// Second outer corner, counterclockwise from x.
    #[arg(long)]
    y: usize,
    /// Third outer corner, counterclockwise from y.
    #[arg(long)]
    z: usize,
    #[arg(value_name = "IN.json")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    /// Path covers every vertex; both endpoints bounded.
    I,
    /// Path covers every vertex; only the middle corner is ever chosen.
    Ii,
    /// Path skips the middle corner entirely.
    Iii,
}

#[derive(Args)]
struct AssignArgs {
    /// Capacity: how often a non-outer vertex may be chosen.
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
    k: u8,
    #[arg(long, value_enum, default_value = "i")]
    variant: VariantArg,
    /// Hamiltonian path file (JSON array of vertices); required for --k 1.
    #[arg(long, value_name = "PATH.json")]
    cycle: Option<PathBuf>,
    #[arg(value_name = "IN.json")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Decomposition file to check against the input map.
    #[arg(long, value_name = "D.json")]
    claims: PathBuf,
    #[arg(value_name = "IN.json")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThirdArg {
    Any,
    Forest,
    Connected,
    Tree,
}

#[derive(Args)]
struct BruteArgs {
    /// Maximum degree of the third part.
    #[arg(long)]
    d: usize,
    /// What the third part must be besides the degree bound.
    #[arg(long, value_enum)]
    third: ThirdArg,
    /// Sub-triangulation file (vertex array or pair JSON); restricts the
    /// third part to stay acyclic strictly inside each destroyed face.
    #[arg(long, value_name = "SUB.json")]
    special: Option<PathBuf>,
    /// Search node budget before giving up with UNKNOWN.
    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,
    #[arg(value_name = "IN.json")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct TightArgs {
    /// Stack into alternate faces along a Hamiltonian cycle.
    #[arg(long)]
    g2: bool,
    /// Stack one vertex into every face, the outer one included.
    #[arg(long)]
    g3: bool,
    /// Recompute a stored pair and report which families it rules out.
    #[arg(long)]
    check: bool,
    /// Hamiltonian cycle file for --g2; defaults to the input's own cycle.
    #[arg(long, value_name = "CYCLE.json")]
    cycle: Option<PathBuf>,
    #[arg(value_name = "IN.json")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// triangle, k4, octahedron, icosahedron, doublewheel, apollonian,
    /// polygon_ham or flipwalk.
    #[arg(long)]
    family: String,
    /// Family parameter as NAME=VALUE (doublewheel: c; apollonian: t;
    /// polygon_ham: n; flipwalk: n, steps).
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Svg,
}

#[derive(Args)]
struct DrawArgs {
    #[arg(long, value_enum)]
    format: FormatArg,
    /// Decomposition file; its parts color the edges black, red and blue.
    #[arg(long, value_name = "D.json")]
    decomposition: Option<PathBuf>,
    #[arg(value_name = "IN.json")]
    input: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::data(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut raw = String::new();
            std::io::stdin()
                .read_to_string(&mut raw)
                .map_err(|e| Failure::data(format!("cannot read standard input: {e}")))?;
            Ok(raw)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::data(format!("cannot read {}: {e}", path.display())))
}

fn parse_map(raw: &str, kind: MapKind) -> Result<PlaneMap, Failure> {
    let mj: json::MapJson = serde_json::from_str(raw)
        .map_err(|e| Failure::data(format!("input is not a map: {e}")))?;
    let map = mj.to_map();
    let bad = map.validate(kind);
    if bad.is_empty() {
        Ok(map)
    } else {
        Err(Failure::data(format!("invalid map: {}", bad.join("; "))))
    }
}

/// Writes to standard output, leaving quietly when the reading end of a
/// pipe has gone away. Panicking there would wreck every `... | head` use.
fn write_out(text: &str) -> Result<(), Failure> {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(Failure::internal(format!("writing output: {e}"))),
    }
}

fn emit<T: serde::Serialize>(value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::internal(format!("serializing output: {e}")))?;
    text.push('\n');
    write_out(&text)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Validate(a) => {
            let raw = read_input(&a.input)?;
            let mj: json::MapJson = serde_json::from_str(&raw)
                .map_err(|e| Failure::data(format!("input is not a map: {e}")))?;
            let kind = if a.disk {
                MapKind::InnerDisk
            } else {
                MapKind::Triangulation
            };
            let violations = mj.to_map().validate(kind);
            let valid = violations.is_empty();
            emit(&json::ValidationJson { valid, violations })?;
            Ok(if valid { 0 } else { 1 })
        }
        Cmd::Decompose(a) => {
            let raw = read_input(&a.input)?;
            let body = |raw: &str| -> Result<u8, Failure> {
                let map = parse_map(raw, MapKind::Triangulation)?;
                let dec = match a.mode {
                    Mode::FourConnected => four_connected(&map)?,
                    Mode::Any => general(&map)?,
                    Mode::Ham => {
                        let path = a.cycle.as_ref().ok_or_else(|| {
                            Failure::usage("decompose --mode ham needs --cycle")
                        })?;
                        let cyc = json::parse_cycle(&read_file(path)?).map_err(Failure::data)?;
                        hamiltonian(&map, &HamCycle::new(cyc))?
                    }
                };
                emit(&json::DecompositionJson::from_decomposition(&dec))?;
                Ok(0)
            };
            body(&raw).map_err(|f| f.with_reproducer(&raw))
        }
        Cmd::Whitney(a) => {
            let raw = read_input(&a.input)?;
            let body = |raw: &str| -> Result<u8, Failure> {
                let map = parse_map(raw, MapKind::InnerDisk)?;
                let coloring = whitney_color(&map, a.x, a.y, a.z)?;
                emit(&json::coloring_json(&coloring))?;
                Ok(0)
            };
            body(&raw).map_err(|f| f.with_reproducer(&raw))
        }
        Cmd::Assign(a) => {
            let raw = read_input(&a.input)?;
            let body = |raw: &str| -> Result<u8, Failure> {
                let map = parse_map(raw, MapKind::Triangulation)?;
                let assignment = match a.k {
                    0 => zero_assignment(&map, map.outer[0])?,
                    2 => two_assignment(&map, map.outer[0])?,
                    _ => {
                        let path = a.cycle.as_ref().ok_or_else(|| {
                            Failure::usage("assign --k 1 needs --cycle with the Hamiltonian path")
                        })?;
                        let seq = json::parse_cycle(&read_file(path)?).map_err(Failure::data)?;
                        let variant = match a.variant {
                            VariantArg::I => OneVariant::EndsBounded,
                            VariantArg::Ii => OneVariant::MiddleOnly,
                            VariantArg::Iii => OneVariant::SkipMiddle,
                        };
                        one_assignment(&map, variant, &seq)?
                    }
                };
                emit(&json::AssignmentJson::from_assignment(&assignment))?;
                Ok(0)
            };
            body(&raw).map_err(|f| f.with_reproducer(&raw))
        }
        Cmd::Verify(a) => {
            let raw = read_input(&a.input)?;
            let body = |raw: &str| -> Result<u8, Failure> {
                let map = parse_map(raw, MapKind::Triangulation)?;
                let dj: json::DecompositionJson = serde_json::from_str(&read_file(&a.claims)?)
                    .map_err(|e| Failure::data(format!("claims file is not a decomposition: {e}")))?;
                let violations = check_decomposition(&map, &dj.to_decomposition());
                let clean = violations.is_empty();
                emit(&json::ReportJson { clean, violations })?;
                Ok(if clean { 0 } else { 1 })
            };
            body(&raw).map_err(|f| f.with_reproducer(&raw))
        }
        Cmd::Brute(a) => {
            let raw = read_input(&a.input)?;
            let body = |raw: &str| -> Result<u8, Failure> {
                let map = parse_map(raw, MapKind::Triangulation)?;
                let special_wrt = match &a.special {
                    None => None,
                    Some(path) => {
                        let sub_raw = read_file(path)?;
                        let (verts, stored) =
                            json::parse_vertex_set(&sub_raw).map_err(Failure::data)?;
                        if let Some(gj) = stored {
                            if gj.to_map().canonical() != map.canonical() {
                                return Err(Failure::data(
                                    "the pair's big map differs from the input map",
                                ));
                            }
                        }
                        let pair = pair_with_vertices(&map, &verts)?;
                        Some(pair.bounded_faces_gone())
                    }
                };
                let third = match a.third {
                    ThirdArg::Any => ThirdPart::Arbitrary,
                    ThirdArg::Forest => ThirdPart::Forest,
                    ThirdArg::Connected => ThirdPart::Connected,
                    ThirdArg::Tree => ThirdPart::Tree,
                };
                let spec = DecisionSpec {
                    d: a.d,
                    third,
                    special_wrt,
                };
                let verdict = brute_decide(&map, &spec, a.budget)?;
                emit(&json::VerdictJson::from_verdict(&verdict))?;
                Ok(match verdict.status {
                    Status::Sat(_) => 0,
                    Status::Unsat => 1,
                    Status::Unknown => 2,
                })
            };
            body(&raw).map_err(|f| f.with_reproducer(&raw))
        }
        Cmd::Tight(a) => {
            match (a.g2, a.g3, a.check) {
                (true, false, false) | (false, true, false) | (false, false, true) => {}
                _ => {
                    return Err(Failure::usage(
                        "tight needs exactly one of --g2, --g3, --check",
                    ))
                }
            }
            let raw = read_input(&a.input)?;
            let body = |raw: &str| -> Result<u8, Failure> {
                if a.check {
                    let pj: json::PairJson = serde_json::from_str(raw)
                        .map_err(|e| Failure::data(format!("input is not a pair: {e}")))?;
                    let map = pj.g.to_map();
                    let bad = map.validate(MapKind::Triangulation);
                    if !bad.is_empty() {
                        return Err(Failure::data(format!("invalid map: {}", bad.join("; "))));
                    }
                    let pair = pair_with_vertices(&map, &pj.gprime_vertices)?;
                    if let Some(k) = pj.k {
                        if k != pair.k {
                            return Err(Failure::data(format!(
                                "pair claims k = {k} but recomputation gives k = {}",
                                pair.k
                            )));
                        }
                    }
                    if let Some(n) = pj.n {
                        if n != pair.n {
                            return Err(Failure::data(format!(
                                "pair claims n = {n} but recomputation gives n = {}",
                                pair.n
                            )));
                        }
                    }
                    let check = json::PairCheckJson {
                        k: pair.k,
                        n: pair.n,
                        special_forced: special_forced(&pair),
                        ruled_out: threshold_certificates(&pair).iter().map(Into::into).collect(),
                    };
                    emit(&check)?;
                    return Ok(0);
                }
                let mj: json::MapJson = serde_json::from_str(raw)
                    .map_err(|e| Failure::data(format!("input is not a map: {e}")))?;
                let map = mj.to_map();
                let bad = map.validate(MapKind::Triangulation);
                if !bad.is_empty() {
                    return Err(Failure::data(format!("invalid map: {}", bad.join("; "))));
                }
                let pair_json = if a.g2 {
                    let cyc = match (&a.cycle, &mj.cycle) {
                        (Some(path), _) => {
                            json::parse_cycle(&read_file(path)?).map_err(Failure::data)?
                        }
                        (None, Some(c)) => c.clone(),
                        (None, None) => {
                            return Err(Failure::usage(
                                "tight --g2 needs --cycle when the input map carries none",
                            ))
                        }
                    };
                    let (_, rerouted, pair) = stack_along_cycle(&map, &HamCycle::new(cyc))?;
                    json::PairJson {
                        g: json::MapJson::from_map(&pair.g),
                        gprime_vertices: pair.sub,
                        k: Some(pair.k),
                        n: Some(pair.n),
                        cycle: Some(rerouted.vertices),
                    }
                } else {
                    let (_, pair) = stack_every_face(&map)?;
                    json::PairJson {
                        g: json::MapJson::from_map(&pair.g),
                        gprime_vertices: pair.sub,
                        k: Some(pair.k),
                        n: Some(pair.n),
                        cycle: None,
                    }
                };
                emit(&pair_json)?;
                Ok(0)
            };
            body(&raw).map_err(|f| f.with_reproducer(&raw))
        }
        Cmd::Gen(a) => {
            let spec = family_spec(&a)?;
            let g = generate(&spec)?;
            let mut mj = json::MapJson::from_map(&g.map);
            mj.cycle = g.cycle;
            mj.four_connected = g.four_connected;
            emit(&mj)?;
            Ok(0)
        }
        Cmd::Draw(a) => {
            let raw = read_input(&a.input)?;
            let body = |raw: &str| -> Result<u8, Failure> {
                let kind = match a.format {
                    FormatArg::Dot => MapKind::InnerDisk,
                    FormatArg::Svg => MapKind::Triangulation,
                };
                let map = parse_map(raw, kind)?;
                let dec = match &a.decomposition {
                    None => None,
                    Some(path) => {
                        let dj: json::DecompositionJson =
                            serde_json::from_str(&read_file(path)?).map_err(|e| {
                                Failure::data(format!("decomposition file: {e}"))
                            })?;
                        Some(dj.to_decomposition())
                    }
                };
                match a.format {
                    FormatArg::Dot => write_out(&draw::dot(&map, dec.as_ref()))?,
                    FormatArg::Svg => write_out(&draw::svg(&map, dec.as_ref())?)?,
                }
                Ok(0)
            };
            body(&raw).map_err(|f| f.with_reproducer(&raw))
        }
    }
}

fn family_spec(a: &GenArgs) -> Result<FamilySpec, Failure> {
    let mut params: BTreeMap<String, usize> = BTreeMap::new();
    for p in &a.params {
        let (name, value) = p
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("--param {p} is not NAME=VALUE")))?;
        let value: usize = value
            .parse()
            .map_err(|_| Failure::usage(format!("--param {p} has a non-numeric value")))?;
        if params.insert(name.to_string(), value).is_some() {
            return Err(Failure::usage(format!("--param {name} given twice")));
        }
    }
    let mut take = |name: &str| {
        params
            .remove(name)
            .ok_or_else(|| Failure::usage(format!("family {} needs --param {name}=...", a.family)))
    };
    let spec = match a.family.as_str() {
        "triangle" => FamilySpec::Triangle,
        "k4" => FamilySpec::K4,
        "octahedron" => FamilySpec::Octahedron,
        "icosahedron" => FamilySpec::Icosahedron,
        "doublewheel" => FamilySpec::Doublewheel { c: take("c")? },
        "apollonian" => FamilySpec::Apollonian {
            t: take("t")?,
            seed: a.seed,
        },
        "polygon_ham" => FamilySpec::PolygonHam {
            n: take("n")?,
            seed: a.seed,
        },
        "flipwalk" => FamilySpec::Flipwalk {
            n: take("n")?,
            steps: take("steps")?,
            seed: a.seed,
        },
        other => {
            return Err(Failure::usage(format!(
                "unknown family {other}; known: triangle, k4, octahedron, icosahedron, \
                 doublewheel, apollonian, polygon_ham, flipwalk"
            )))
        }
    };
    if let Some(name) = params.keys().next() {
        return Err(Failure::usage(format!(
            "family {} does not take --param {name}",
            a.family
        )));
    }
    Ok(spec)
}
