// SPDX-License-Identifier: Apache-2.0

//! Exhaustive surveys: every labelled connected graph on `n` vertices (or a
//! graph6 stream) is classified, checked for equilibrium, and run against
//! the structural claims about sum basic equilibria.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::equilibrium::{first_improving_deviation, Deviation};
use crate::graph::{reachable_from, Distance, Graph, VertexSet};
use crate::io::{encode_graph6, parse_graph6, Graph6Error, ReportDocument, ReportKind};
use crate::structure::{decompose, Decomposition, GraphClass};
use crate::theory::{self, Component};
use crate::Rational;

pub const MIN_ENUMERATION_N: usize = 3;
/// Largest `n` enumerated without the explicit large-run flag.
pub const MAX_DEFAULT_N: usize = 7;
pub const MAX_ENUMERATION_N: usize = 8;
pub const MAX_CANONICAL_N: usize = 8;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("n = {0} is out of range ({MIN_ENUMERATION_N}..={MAX_ENUMERATION_N})")]
    NOutOfRange(usize),
    #[error("n = 8 enumerates 2^28 edge masks and must be requested explicitly")]
    LargeRunNotEnabled,
    #[error("at least one worker is required")]
    NoWorkers,
    #[error("no claims selected")]
    NoClaims,
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("canonical forms are limited to {MAX_CANONICAL_N} vertices, got {0}")]
    CanonicalTooLarge(usize),
    #[error("graph6 stream line {line}: {source}")]
    Graph6 { line: usize, source: Graph6Error },
    #[error("failed to start worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Tree equilibria are stars.
    TreeStar,
    /// Bipartite equilibria are complete bipartite.
    BipartiteKrs,
    /// Block-graph equilibria have diameter at most 2.
    BlockDiam2,
    /// Cactus equilibria have diameter at most 2.
    CactusDiam2,
    /// In an equilibrium every bridge has a leaf endpoint.
    BridgeDegree,
    /// In a non-tree equilibrium each 2-edge-connected component has at most one nontrivial pendant world.
    SinglePendant,
    /// In an equilibrium adjacent cut vertices of a block do not both carry nontrivial worlds.
    AdjacentCut,
    /// Cactus equilibria: cycles of length at most 5, balanced worlds on 4- and 5-cycles, at most one long cycle.
    CycleBounds,
    /// Bipartite graphs with a 2-edge-connected component have `Δ_w <= 0` for every observer, equilibrium or not.
    DeltaNonpos,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::TreeStar,
        Claim::BipartiteKrs,
        Claim::BlockDiam2,
        Claim::CactusDiam2,
        Claim::BridgeDegree,
        Claim::SinglePendant,
        Claim::AdjacentCut,
        Claim::CycleBounds,
        Claim::DeltaNonpos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::TreeStar => "tree_star",
            Claim::BipartiteKrs => "bipartite_krs",
            Claim::BlockDiam2 => "block_diam2",
            Claim::CactusDiam2 => "cactus_diam2",
            Claim::BridgeDegree => "bridge_degree",
            Claim::SinglePendant => "single_pendant",
            Claim::AdjacentCut => "adjacent_cut",
            Claim::CycleBounds => "cycle_bounds",
            Claim::DeltaNonpos => "delta_nonpos",
        }
    }

    pub fn needs_equilibrium(self) -> bool {
        self != Claim::DeltaNonpos
    }

    /// Parses a comma separated list; `all` selects every claim.
    pub fn parse_list(list: &str) -> Result<Vec<Claim>, SurveyError> {
        let mut claims = BTreeSet::new();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "all" {
                claims.extend(Claim::ALL);
            } else {
                claims.insert(item.parse()?);
            }
        }
        Ok(claims.into_iter().collect())
    }
}

impl FromStr for Claim {
    type Err = SurveyError;

    fn from_str(s: &str) -> Result<Self, SurveyError> {
        Claim::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| SurveyError::UnknownClaim(s.to_owned()))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimOutcome {
    Holds,
    NotApplicable,
    Violated { witness: String },
}

impl ClaimOutcome {
    fn check(holds: bool, witness: impl FnOnce() -> String) -> ClaimOutcome {
        if holds {
            ClaimOutcome::Holds
        } else {
            ClaimOutcome::Violated { witness: witness() }
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, ClaimOutcome::Violated { .. })
    }
}

/// Evaluates `claims` on a connected graph given its equilibrium status.
pub fn verify_claims(g: &Graph, is_equilibrium: bool, claims: &[Claim]) -> Vec<(Claim, ClaimOutcome)> {
    let decomposition = decompose(g).expect("claims are evaluated on connected graphs");
    let class = GraphClass::of(g, &decomposition);
    let facts = Facts { g, decomposition: &decomposition, class: &class, diameter: g.diameter() };
    claims.iter().map(|&c| (c, facts.evaluate(c, is_equilibrium))).collect()
}

struct Facts<'a> {
    g: &'a Graph,
    decomposition: &'a Decomposition,
    class: &'a GraphClass,
    diameter: Distance,
}

impl Facts<'_> {
    fn diameter_at_most_two(&self) -> ClaimOutcome {
        ClaimOutcome::check(self.diameter <= Distance::finite(2), || format!("diameter {}", self.diameter))
    }

    fn evaluate(&self, claim: Claim, eq: bool) -> ClaimOutcome {
        let (g, d, c) = (self.g, self.decomposition, self.class);
        let na = ClaimOutcome::NotApplicable;
        match claim {
            Claim::TreeStar if c.tree && eq => {
                ClaimOutcome::check(c.star, || format!("tree of diameter {}", self.diameter))
            }
            Claim::BipartiteKrs if c.bipartite && eq => {
                ClaimOutcome::check(c.complete_bipartite.is_some(), || "bipartite but not complete bipartite".into())
            }
            Claim::BlockDiam2 if c.block_graph && eq => self.diameter_at_most_two(),
            Claim::CactusDiam2 if c.cactus && eq => self.diameter_at_most_two(),
            Claim::BridgeDegree if eq => {
                let check = theory::bridge_degree_in(g, d);
                ClaimOutcome::check(check.holds, || {
                    let (u, v) = check.violating_bridge.unwrap();
                    format!("bridge {u}-{v}")
                })
            }
            Claim::SinglePendant if eq && !c.tree => {
                let check = theory::single_pendant_in(g, d).expect("non-tree has a nontrivial component");
                ClaimOutcome::check(check.holds, || {
                    let (h, anchors) = check.violating.unwrap();
                    format!("component {:?} anchors {:?}", h, anchors)
                })
            }
            Claim::AdjacentCut if eq => {
                let check = theory::adjacent_cut_in(g, d);
                ClaimOutcome::check(check.holds, || {
                    let (u, v) = check.violating_pair.unwrap();
                    format!("cut vertices {u}-{v}")
                })
            }
            Claim::CycleBounds if eq && c.cactus => {
                let report = theory::cactus_cycles_in(g, d).expect("cactus");
                ClaimOutcome::check(report.all_ok(), || {
                    format!(
                        "cycle lengths {:?} max_ok={} balance_ok={} long_count_ok={}",
                        report.cycle_lengths,
                        report.max_cycle_len_ok,
                        report.world_balance_ok,
                        report.long_cycle_count_ok
                    )
                })
            }
            Claim::DeltaNonpos if c.bipartite && !d.nontrivial_teccs().is_empty() => {
                let offending = Component::from_decomposition(g, d).iter().find_map(|h| {
                    let agg = h.aggregate::<Rational>();
                    agg.per_observer
                        .iter()
                        .enumerate()
                        .find(|(_, delta)| **delta > Rational::from_integer(0))
                        .map(|(w, delta)| format!("component {:?} observer {w} delta {delta}", h.members()))
                });
                match offending {
                    None => ClaimOutcome::Holds,
                    Some(witness) => ClaimOutcome::Violated { witness },
                }
            }
            _ => na,
        }
    }
}

/// The graph whose edge set is `mask` in graph6 pair order (bit `i` is pair `i`).
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    Graph::from_rows(rows_from_mask(n, mask))
}

fn rows_from_mask(n: usize, mask: u64) -> Vec<u64> {
    let mut rows = vec![0u64; n];
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> bit & 1 == 1 {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
            bit += 1;
        }
    }
    rows
}

fn check_enumeration_n(n: usize) -> Result<(), SurveyError> {
    if (MIN_ENUMERATION_N..=MAX_ENUMERATION_N).contains(&n) {
        Ok(())
    } else {
        Err(SurveyError::NOutOfRange(n))
    }
}

/// Every connected labelled graph on `0..n`, by ascending edge mask.
pub fn enumerate_labeled_connected(n: usize) -> Result<impl Iterator<Item = Graph>, SurveyError> {
    check_enumeration_n(n)?;
    Ok(connected_in_range(n, 0..1u64 << (n * (n - 1) / 2)))
}

fn connected_in_range(n: usize, masks: std::ops::Range<u64>) -> impl Iterator<Item = Graph> {
    let full = VertexSet::full(n).bits();
    masks.filter_map(move |mask| {
        let rows = rows_from_mask(n, mask);
        (reachable_from(&rows, 0) == full).then(|| Graph::from_rows(rows))
    })
}

/// Minimum edge bit string over all vertex relabellings.
///
/// Bits follow graph6 pair order with the first pair most significant, so
/// comparing forms as integers compares the strings lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u64,
}

impl CanonicalForm {
    pub fn to_graph(self) -> Graph {
        let pairs = self.n * (self.n - 1) / 2;
        let mut mask = 0u64;
        for i in 0..pairs {
            if self.bits >> (pairs - 1 - i) & 1 == 1 {
                mask |= 1 << i;
            }
        }
        graph_from_mask(self.n, mask)
    }

    pub fn graph6(self) -> String {
        encode_graph6(&self.to_graph()).expect("canonical forms are small")
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, SurveyError> {
    let n = g.n();
    if n > MAX_CANONICAL_N {
        return Err(SurveyError::CanonicalTooLarge(n));
    }
    let rows = g.rows();
    let relabelled = |perm: &[usize]| {
        let mut bits = 0u64;
        for v in 1..n {
            let row = rows[perm[v]];
            for &pu in &perm[..v] {
                bits = bits << 1 | (row >> pu & 1);
            }
        }
        bits
    };
    // Heap's algorithm over all n! permutations.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = relabelled(&perm);
    let mut counters = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(j, i);
            best = best.min(relabelled(&perm));
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(CanonicalForm { n, bits: best })
}

#[derive(Debug, Clone)]
pub enum SurveyInput {
    Enumerate { n: usize },
    Graph6Lines(Vec<String>),
    Graph6File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordScope {
    All,
    Equilibria,
    Violations,
}

impl FromStr for RecordScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(RecordScope::All),
            "equilibria" => Ok(RecordScope::Equilibria),
            "violations" => Ok(RecordScope::Violations),
            other => Err(format!("unknown record scope {other:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SurveyConfig {
    pub input: SurveyInput,
    pub claims: Vec<Claim>,
    pub dedup: bool,
    pub workers: usize,
    /// Which per-graph records are kept; the summary always covers every graph.
    pub records: RecordScope,
    /// Permits `n = 8`.
    pub allow_large: bool,
    pub progress: bool,
}

impl SurveyConfig {
    pub fn enumerate(n: usize) -> Self {
        SurveyConfig {
            input: SurveyInput::Enumerate { n },
            claims: Claim::ALL.to_vec(),
            dedup: false,
            workers: 1,
            records: RecordScope::All,
            allow_large: false,
            progress: false,
        }
    }

    pub fn validate(&self) -> Result<(), SurveyError> {
        if self.workers == 0 {
            return Err(SurveyError::NoWorkers);
        }
        if self.claims.is_empty() {
            return Err(SurveyError::NoClaims);
        }
        if let SurveyInput::Enumerate { n } = self.input {
            check_enumeration_n(n)?;
            if n > MAX_DEFAULT_N && !self.allow_large {
                return Err(SurveyError::LargeRunNotEnabled);
            }
        }
        Ok(())
    }

    /// Configuration echo for reports. Worker count is left out so output does not depend on it.
    pub fn to_json(&self) -> Value {
        let input = match &self.input {
            SurveyInput::Enumerate { n } => json!({"enumerate": n}),
            SurveyInput::Graph6Lines(lines) => json!({"graph6_lines": lines.len()}),
            SurveyInput::Graph6File(path) => json!({"graph6_file": path.display().to_string()}),
        };
        json!({
            "input": input,
            "claims": self.claims.iter().map(|c| c.name()).collect::<Vec<_>>(),
            "dedup": self.dedup,
            "records": self.records,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub class: Option<GraphClass>,
    /// `None` when no selected claim needed the equilibrium check.
    pub equilibrium: Option<bool>,
    pub witness: Option<(Deviation, i64)>,
    pub diameter: Distance,
    pub claims: Vec<(Claim, ClaimOutcome)>,
}

impl SurveyRecord {
    pub fn violations(&self) -> impl Iterator<Item = &(Claim, ClaimOutcome)> {
        self.claims.iter().filter(|(_, o)| o.is_violated())
    }

    pub fn to_json(&self) -> Value {
        let flag = |f: fn(&GraphClass) -> bool| self.class.as_ref().map(f);
        let claims: BTreeMap<&str, &ClaimOutcome> = self.claims.iter().map(|(c, o)| (c.name(), o)).collect();
        json!({
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "connected": self.connected,
            "bipartite": flag(|c| c.bipartite),
            "tree": flag(|c| c.tree),
            "star": flag(|c| c.star),
            "block": flag(|c| c.block_graph),
            "cactus": flag(|c| c.cactus),
            "complete_bipartite": self.class.and_then(|c| c.complete_bipartite),
            "equilibrium": self.equilibrium,
            "diameter": self.diameter,
            "witness_deviation": self.witness.map(|(d, _)| d.to_string()),
            "witness_delta": self.witness.map(|(_, delta)| delta),
            "claim_violations": self.violations().map(|(c, _)| c.name()).collect::<Vec<_>>(),
            "claims": claims,
        })
    }
}

/// Evaluates one graph; `graph6` is the text recorded for it.
pub fn survey_graph(g: &Graph, graph6: String, claims: &[Claim]) -> SurveyRecord {
    let base = SurveyRecord {
        graph6,
        n: g.n(),
        m: g.edge_count(),
        connected: g.is_connected(),
        class: None,
        equilibrium: None,
        witness: None,
        diameter: g.diameter(),
        claims: Vec::new(),
    };
    if !base.connected {
        let claims = claims.iter().map(|&c| (c, ClaimOutcome::NotApplicable)).collect();
        return SurveyRecord { claims, ..base };
    }
    let decomposition = decompose(g).expect("connected");
    let class = GraphClass::of(g, &decomposition);
    let (equilibrium, witness) = if claims.iter().any(|c| c.needs_equilibrium()) {
        let first = first_improving_deviation(g).expect("connected");
        let witness = first.map(|(d, delta)| match delta {
            crate::CostDelta::Finite(v) => (d, v),
            crate::CostDelta::Infinite => unreachable!("improving deviations are finite"),
        });
        (Some(first.is_none()), witness)
    } else {
        (None, None)
    };
    let facts = Facts { g, decomposition: &decomposition, class: &class, diameter: base.diameter };
    let results = claims.iter().map(|&c| (c, facts.evaluate(c, equilibrium.unwrap_or(false)))).collect();
    SurveyRecord { class: Some(class), equilibrium, witness, claims: results, ..base }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClaimTally {
    pub holds: usize,
    pub violated: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriumClass {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub diameter: Distance,
    pub labelings: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveySummary {
    pub graphs: usize,
    pub connected: usize,
    pub equilibria: usize,
    pub per_n: BTreeMap<usize, usize>,
    pub claims: BTreeMap<Claim, ClaimTally>,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equilibrium_classes: Option<Vec<EquilibriumClass>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyReport {
    pub records: Vec<SurveyRecord>,
    pub summary: SurveySummary,
}

impl SurveyReport {
    pub fn to_document(&self, config: &SurveyConfig) -> ReportDocument {
        let mut doc = ReportDocument::new(ReportKind::Survey, config.to_json());
        doc.records = self.records.iter().map(SurveyRecord::to_json).collect();
        doc.summary = Some(serde_json::to_value(&self.summary).expect("summary serialises"));
        doc
    }
}

#[derive(Default)]
struct Partial {
    records: Vec<SurveyRecord>,
    graphs: usize,
    connected: usize,
    equilibria: usize,
    per_n: BTreeMap<usize, usize>,
    claims: BTreeMap<Claim, ClaimTally>,
    violations: usize,
    classes: BTreeMap<CanonicalForm, (usize, Distance)>,
}

impl Partial {
    fn add(&mut self, record: SurveyRecord, config: &SurveyConfig) -> Result<(), SurveyError> {
        self.graphs += 1;
        *self.per_n.entry(record.n).or_default() += 1;
        self.connected += record.connected as usize;
        let is_eq = record.equilibrium == Some(true);
        self.equilibria += is_eq as usize;
        let mut violated = false;
        for (claim, outcome) in &record.claims {
            let tally = self.claims.entry(*claim).or_default();
            match outcome {
                ClaimOutcome::Holds => tally.holds += 1,
                ClaimOutcome::NotApplicable => tally.not_applicable += 1,
                ClaimOutcome::Violated { .. } => {
                    tally.violated += 1;
                    violated = true;
                }
            }
        }
        self.violations += violated as usize;
        if config.dedup && is_eq {
            let graph = parse_graph6(&record.graph6).expect("recorded graph6 is valid");
            let form = canonical_form(&graph)?;
            self.classes.entry(form).or_insert((0, record.diameter)).0 += 1;
        }
        let keep = match config.records {
            RecordScope::All => true,
            RecordScope::Equilibria => is_eq,
            RecordScope::Violations => violated,
        };
        if keep {
            self.records.push(record);
        }
        Ok(())
    }

    fn merge(&mut self, other: Partial) {
        self.records.extend(other.records);
        self.graphs += other.graphs;
        self.connected += other.connected;
        self.equilibria += other.equilibria;
        for (n, k) in other.per_n {
            *self.per_n.entry(n).or_default() += k;
        }
        for (claim, t) in other.claims {
            let tally = self.claims.entry(claim).or_default();
            tally.holds += t.holds;
            tally.violated += t.violated;
            tally.not_applicable += t.not_applicable;
        }
        self.violations += other.violations;
        for (form, (count, diameter)) in other.classes {
            self.classes.entry(form).or_insert((0, diameter)).0 += count;
        }
    }

    fn finish(self, config: &SurveyConfig) -> SurveyReport {
        let equilibrium_classes = config.dedup.then(|| {
            self.classes
                .into_iter()
                .map(|(form, (labelings, diameter))| {
                    let g = form.to_graph();
                    EquilibriumClass { graph6: form.graph6(), n: g.n(), m: g.edge_count(), diameter, labelings }
                })
                .collect()
        });
        SurveyReport {
            records: self.records,
            summary: SurveySummary {
                graphs: self.graphs,
                connected: self.connected,
                equilibria: self.equilibria,
                per_n: self.per_n,
                claims: self.claims,
                violations: self.violations,
                equilibrium_classes,
            },
        }
    }
}

const MASK_CHUNK_BITS: u32 = 14;
const LINE_CHUNK: usize = 512;

pub fn run_survey(config: &SurveyConfig) -> Result<SurveyReport, SurveyError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| SurveyError::Pool(e.to_string()))?;
    let partials: Vec<Partial> = match &config.input {
        SurveyInput::Enumerate { n } => {
            let pairs = (n * (n - 1) / 2) as u32;
            let chunk_bits = MASK_CHUNK_BITS.min(pairs);
            let chunks = 1u64 << (pairs - chunk_bits);
            let done = AtomicUsize::new(0);
            pool.install(|| {
                (0..chunks)
                    .into_par_iter()
                    .map(|c| {
                        let masks = c << chunk_bits..(c + 1) << chunk_bits;
                        let mut partial = Partial::default();
                        for g in connected_in_range(*n, masks) {
                            let g6 = encode_graph6(&g).expect("small graph");
                            partial.add(survey_graph(&g, g6, &config.claims), config)?;
                        }
                        if config.progress {
                            let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                            eprintln!("survey n={n}: chunk {finished}/{chunks}");
                        }
                        Ok(partial)
                    })
                    .collect::<Result<Vec<_>, SurveyError>>()
            })?
        }
        SurveyInput::Graph6Lines(lines) => survey_lines(&pool, lines, config)?,
        SurveyInput::Graph6File(path) => {
            let text = std::fs::read_to_string(path)?;
            let lines: Vec<String> = text.lines().map(str::to_owned).collect();
            survey_lines(&pool, &lines, config)?
        }
    };
    let mut total = Partial::default();
    for p in partials {
        total.merge(p);
    }
    Ok(total.finish(config))
}

fn survey_lines(
    pool: &rayon::ThreadPool,
    lines: &[String],
    config: &SurveyConfig,
) -> Result<Vec<Partial>, SurveyError> {
    let numbered: Vec<(usize, &str)> =
        lines.iter().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
    pool.install(|| {
        numbered
            .par_chunks(LINE_CHUNK)
            .map(|chunk| {
                let mut partial = Partial::default();
                for &(line, text) in chunk {
                    let g = parse_graph6(text).map_err(|source| SurveyError::Graph6 { line, source })?;
                    let g6 = text.strip_prefix(">>graph6<<").unwrap_or(text).to_owned();
                    partial.add(survey_graph(&g, g6, &config.claims), config)?;
                }
                Ok(partial)
            })
            .collect()
    })
}
