//! Command implementations behind the `horoforge` binary.
//!
//! Each command returns `Ok(())` or a [`CliError`] whose
//! [`exit_code`](CliError::exit_code) is what the process exits with.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use horoforge_analysis::{
    close_successors_exact, close_successors_oracle, horocyclic_oracle, horosphere_points, rips_edges_oracle,
    Closeness, OracleError,
};
use horoforge_core::{word_distance, DefiningGraph, RaySpec, Word};
use horoforge_divergence::{classify_states, generate_divergence_graph, DivergenceError, DivergenceOptions};
use horoforge_machines::{
    build_geo_suffix_machine, build_geodesic_machine, build_horocyclic_machines, build_shortlex_machine,
    build_suffix_machine, describe_set, state_count_report, MachineError,
};
use horoforge_rips::{generate_rips_graph_with, GraphKind, HorosphereGraph, RipsOptions};

pub mod export;
pub mod input;
pub mod stats;

pub use export::{ExportBundle, Format, Params};
pub use input::{parse_graph, parse_graph_file, LoadError, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("oracle mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Io { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<MachineError> for CliError {
    fn from(e: MachineError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<horoforge_fsm::FsmError> for CliError {
    fn from(e: horoforge_fsm::FsmError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<DivergenceError> for CliError {
    fn from(e: DivergenceError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Internal(e.to_string())
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| io_err(path, e))
}

/// Parses `A,B` into a ray.
pub fn parse_ray(g: &DefiningGraph, s: &str) -> Result<RaySpec, CliError> {
    let usage = |m: String| CliError::Usage(format!("--ray {s}: {m}"));
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| usage("expected two vertex names `A,B`".into()))?;
    let letter = |n: &str| {
        g.letter(n.trim())
            .ok_or_else(|| usage(format!("unknown vertex `{}`", n.trim())))
    };
    RaySpec::new(g, letter(a)?, letter(b)?).map_err(|e| usage(e.to_string()))
}

/// Runs `f` on a pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Internal(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

pub fn cmd_validate(path: &Path) -> Result<String, CliError> {
    let g = input::read_graph_file(path)?;
    let report = horoforge_core::validate_defining_graph(&g);
    let text = format!(
        "{} vertices, {} edges, max clique {}\n{}",
        g.len(),
        g.edges().len(),
        g.max_clique_size(),
        report.describe(&g)
    );
    if report.is_valid() {
        Ok(text)
    } else {
        Err(CliError::Validation(text))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MachineKind {
    Geodesic,
    Shortlex,
    Suffix,
    Geosuffix,
    HoroOdd,
    HoroEven,
}

#[derive(Clone, Debug)]
pub struct FsmArgs {
    pub graph: PathBuf,
    pub machine: MachineKind,
    pub ray: Option<String>,
    pub dump: Option<PathBuf>,
    pub stats: bool,
}

pub fn cmd_fsm(a: &FsmArgs) -> Result<String, CliError> {
    let (g, _) = parse_graph_file(&a.graph)?;
    let ray = || -> Result<RaySpec, CliError> {
        let s = a
            .ray
            .as_deref()
            .ok_or_else(|| CliError::Usage("this machine needs --ray".into()))?;
        parse_ray(&g, s)
    };
    let name = |x: horoforge_core::Letter| g.name(x).to_string();
    let (states, dump) = match a.machine {
        MachineKind::Geodesic | MachineKind::Shortlex => {
            let m = if a.machine == MachineKind::Geodesic {
                build_geodesic_machine(&g)
            } else {
                build_shortlex_machine(&g)
            }?;
            (m.num_states(), m.dump(name, |p| describe_set(&g, *p)))
        }
        MachineKind::Suffix | MachineKind::Geosuffix => {
            let m = if a.machine == MachineKind::Suffix {
                build_suffix_machine(&g, ray()?)?
            } else {
                build_geo_suffix_machine(&g, ray()?)?
            };
            let d = m.dump(name, |p| {
                format!(
                    "word={} pending={}",
                    describe_set(&g, p.word),
                    describe_set(&g, p.pending)
                )
            });
            (m.num_states(), d)
        }
        MachineKind::HoroOdd | MachineKind::HoroEven => {
            let h = build_horocyclic_machines(&g, ray()?)?;
            let m = if a.machine == MachineKind::HoroOdd {
                &h.odd
            } else {
                &h.even
            };
            (m.num_states(), m.dump(name, |p| p.clone()))
        }
    };
    if let Some(p) = &a.dump {
        write_file(p, &dump)?;
    }
    let mut out = format!("states {states}\n");
    if a.stats {
        let lex = build_shortlex_machine(&g)?;
        let c = classify_states(&lex)?;
        out.push_str(&format!(
            "shortlex growth rate {:.6}; large {} prelarge {} small {}\n",
            c.max_radius,
            c.count(horoforge_divergence::StateClass::Large),
            c.count(horoforge_divergence::StateClass::Prelarge),
            c.count(horoforge_divergence::StateClass::Small)
        ));
        if let Some(s) = &a.ray {
            for (m, n) in state_count_report(&g, parse_ray(&g, s)?)? {
                out.push_str(&format!("  {m:<14} {n}\n"));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct GenerateArgs {
    pub graph: PathBuf,
    pub ray: String,
    pub busemann: i64,
    pub max_suffix: usize,
    pub threads: Option<usize>,
    pub vertex_cap: Option<usize>,
    pub allow_small_states: bool,
}

/// Builds the graph of `kind`; warnings go to the log.
pub fn generate(kind: GraphKind, a: &GenerateArgs) -> Result<(DefiningGraph, HorosphereGraph, Params), CliError> {
    let (g, _) = parse_graph_file(&a.graph)?;
    let ray = parse_ray(&g, &a.ray)?;
    let params = Params {
        allow_small_states: a.allow_small_states,
        vertex_cap: a.vertex_cap,
    };
    let h = match kind {
        GraphKind::Rips2 => {
            let opts = RipsOptions {
                vertex_cap: a.vertex_cap,
            };
            with_threads(a.threads, || {
                generate_rips_graph_with(&g, ray, a.busemann, a.max_suffix, opts)
            })??
        }
        GraphKind::Divergence => {
            if a.vertex_cap.is_some() {
                return Err(CliError::Usage("--vertex-cap applies to rips graphs only".into()));
            }
            let opts = DivergenceOptions {
                allow_small_states: a.allow_small_states,
            };
            let (h, report) = with_threads(a.threads, || {
                generate_divergence_graph(&g, ray, a.busemann, a.max_suffix, opts)
            })??;
            if report.small_states > 0 {
                let action = if a.allow_small_states { "kept" } else { "dropped" };
                log::warn!(
                    "shortlex machine has {} small states; {} vertices {action}",
                    report.small_states,
                    report.dropped_vertices
                );
            }
            h
        }
    };
    Ok((g, h, params))
}

/// Generates and writes the export; returns a one-line summary.
pub fn cmd_generate(kind: GraphKind, a: &GenerateArgs, out: &Path, format: Format) -> Result<String, CliError> {
    let (g, h, params) = generate(kind, a)?;
    let bundle = ExportBundle::new(&g, &h, params);
    write_file(out, &export::render(&bundle, format))?;
    Ok(format!(
        "{} graph: {} vertices, {} edges -> {}\n",
        kind.as_str(),
        h.num_vertices(),
        h.num_edges(),
        out.display()
    ))
}

pub fn load_export(path: &Path) -> Result<(DefiningGraph, HorosphereGraph), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let bundle = export::from_json(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    bundle
        .to_graph()
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

#[derive(Clone, Debug)]
pub struct StatsArgs {
    pub input: PathBuf,
    pub tables: stats::Tables,
    pub csv: Option<PathBuf>,
    pub seed: u64,
}

/// Fails with an internal error when a distortion row breaks `d ≤ c·d_H`.
pub fn cmd_stats(a: &StatsArgs) -> Result<String, CliError> {
    let (g, h) = load_export(&a.input)?;
    let tables = if a.tables.any() {
        a.tables
    } else {
        stats::Tables {
            growth: true,
            distortion: true,
            connectivity: true,
        }
    };
    let report = stats::compute(&g, &h, a.seed);
    if let Some(dir) = &a.csv {
        stats::write_csv(&g, &h, &report, tables, dir).map_err(|e| io_err(dir, e))?;
    }
    let text = stats::summary(&h, &report, tables);
    if report.violations > 0 {
        return Err(CliError::Internal(format!(
            "{text}distortion rows exceed the edge-length bound"
        )));
    }
    Ok(text)
}

#[derive(Clone, Debug)]
pub struct OracleArgs {
    pub graph: PathBuf,
    pub ray: String,
    pub busemann: i64,
    pub max_suffix: usize,
    pub kind: GraphKind,
    pub depth: usize,
    pub exact: bool,
    pub allow_small_states: bool,
    pub ceiling: usize,
}

/// Findings of an oracle comparison.
#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub vertices: usize,
    pub edges: usize,
    pub pairs_checked: usize,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    fn mismatch(&mut self, m: String) {
        if self.mismatches.len() < 50 {
            self.mismatches.push(m);
        }
    }
}

fn fmt_pair(g: &DefiningGraph, a: &Word, b: &Word) -> String {
    let f = |w: &Word| {
        if w.is_empty() {
            "ε".to_string()
        } else {
            g.format_word(w)
        }
    };
    format!("{}~{}", f(a), f(b))
}

pub fn oracle_check(a: &OracleArgs) -> Result<OracleReport, CliError> {
    let gen = GenerateArgs {
        graph: a.graph.clone(),
        ray: a.ray.clone(),
        busemann: a.busemann,
        max_suffix: a.max_suffix,
        threads: None,
        vertex_cap: None,
        allow_small_states: a.allow_small_states,
    };
    let (g, h, _) = generate(a.kind, &gen)?;
    let ray = h.ray;
    let mut r = OracleReport {
        vertices: h.num_vertices(),
        edges: h.num_edges(),
        ..Default::default()
    };
    let points = horosphere_points(&g, ray, a.busemann, a.max_suffix, a.ceiling)?;
    let ours: BTreeSet<(Word, Word)> = h.edge_words().map(|(x, y)| (x.clone(), y.clone())).collect();
    match a.kind {
        GraphKind::Rips2 => {
            let labels: BTreeSet<Word> = points.into_iter().map(|p| p.suffix).collect();
            if labels != h.vertices.iter().cloned().collect() {
                r.mismatch(format!(
                    "vertex sets differ: oracle {} generated {}",
                    labels.len(),
                    h.num_vertices()
                ));
            }
            let oracle = rips_edges_oracle(&g, ray, a.busemann, a.max_suffix, a.ceiling)?;
            r.pairs_checked = oracle.len();
            for (x, y) in ours.difference(&oracle) {
                r.mismatch(format!("extra edge {}", fmt_pair(&g, x, y)));
            }
            for (x, y) in oracle.difference(&ours) {
                r.mismatch(format!("missing edge {}", fmt_pair(&g, x, y)));
            }
        }
        GraphKind::Divergence => {
            let labels: BTreeSet<Word> = points
                .iter()
                .map(|p| horocyclic_oracle(&g, ray, &p.word).map(|s| s.word()))
                .collect::<Result<_, _>>()?;
            for v in &h.vertices {
                if !labels.contains(v) {
                    r.mismatch(format!("vertex {} is not a horocyclic suffix", fmt_pair(&g, v, v)));
                }
            }
            if a.allow_small_states && labels.len() != h.num_vertices() {
                r.mismatch(format!(
                    "vertex sets differ: oracle {} generated {}",
                    labels.len(),
                    h.num_vertices()
                ));
            }
            let bound = 2 * g.max_clique_size().max(2) - 2;
            let words: Vec<Word> = (0..h.num_vertices()).map(|i| h.full_word(&g, i)).collect();
            for i in 0..words.len() {
                for j in i + 1..words.len() {
                    r.pairs_checked += 1;
                    let (x, y) = (&h.vertices[i], &h.vertices[j]);
                    let edge = ours.contains(&(x.clone(), y.clone()));
                    if edge && word_distance(&g, &words[i], &words[j]) > bound {
                        r.mismatch(format!("edge {} is longer than {bound}", fmt_pair(&g, x, y)));
                    }
                    if a.exact {
                        let close = close_successors_exact(&g, ray, &words[i], &words[j], bound, a.ceiling)?;
                        if close != edge {
                            let what = if edge { "extra" } else { "missing" };
                            r.mismatch(format!("{what} edge {}", fmt_pair(&g, x, y)));
                        }
                    } else if edge {
                        let c = close_successors_oracle(&g, ray, &words[i], &words[j], a.depth, bound, a.ceiling)?;
                        if let Closeness::DivergedAt(m) = c {
                            r.mismatch(format!("edge {} diverges at depth {m}", fmt_pair(&g, x, y)));
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

pub fn cmd_oracle_check(a: &OracleArgs) -> Result<String, CliError> {
    let r = oracle_check(a)?;
    let mut text = format!(
        "{} vertices, {} edges, {} pairs checked, {} mismatches\n",
        r.vertices,
        r.edges,
        r.pairs_checked,
        r.mismatches.len()
    );
    for m in &r.mismatches {
        text.push_str(&format!("  {m}\n"));
    }
    if r.mismatches.is_empty() {
        Ok(text)
    } else {
        Err(CliError::Mismatch(text))
    }
}
