//! Report types printed by the subcommands. Every report serializes to JSON
//! and parses back unchanged; the text form is for people.

use std::collections::BTreeMap;
use std::fmt::Write;

use bnsep::dynamics::ClassificationReport;
use bnsep::ensemble::{
    CensusReport, EnsembleError, GraphVerdict, RobustReport, SearchReport,
};
use bnsep::graph::{
    enumerate_cycles, full_positive_switch, is_embedded, EmbeddingWitness, GraphError,
    HypothesisReport, Motif, Theorem,
};
use bnsep::{Property, Sign, SignedDigraph};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcReport {
    pub from: usize,
    pub to: usize,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    /// Vertices in order, 1-based, without repeating the first. Arc `k`
    /// leaves `vertices[k]` with sign `signs[k]`.
    pub vertices: Vec<usize>,
    pub signs: Vec<Sign>,
    pub sign: Sign,
}

/// Structure of one signed digraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSection {
    pub n: usize,
    pub encoding: String,
    pub arcs: Vec<ArcReport>,
    pub strong: bool,
    /// Strongly connected components, 1-based.
    pub components: Vec<Vec<usize>>,
    pub cycles: Vec<CycleReport>,
    pub hypotheses: HypothesisReport,
}

impl GraphSection {
    pub fn build(g: &SignedDigraph, cycle_cap: usize, search_budget: u64) -> Result<Self, GraphError> {
        let cycles = enumerate_cycles(g, cycle_cap)?;
        let hypotheses = bnsep::graph::hyp_evaluate(g, cycle_cap, search_budget)?;
        Ok(GraphSection {
            n: g.n(),
            encoding: g.encoding(),
            arcs: g
                .arcs()
                .into_iter()
                .map(|(j, i, sign)| ArcReport { from: j + 1, to: i + 1, sign })
                .collect(),
            strong: g.is_strong(),
            components: g
                .strong_components()
                .into_iter()
                .map(|c| c.vertices.iter().map(|v| v + 1).collect())
                .collect(),
            cycles: cycles
                .iter()
                .map(|c| CycleReport {
                    vertices: c.vertices.iter().map(|v| v + 1).collect(),
                    signs: c.signs.clone(),
                    sign: c.sign(),
                })
                .collect(),
            hypotheses,
        })
    }

    fn render(&self, out: &mut String, names: &[String]) {
        let name = |v: usize| names.get(v - 1).cloned().unwrap_or_else(|| v.to_string());
        writeln!(out, "interaction graph ({}):", self.encoding).unwrap();
        for a in &self.arcs {
            writeln!(out, "  {} -> {} {}", name(a.from), name(a.to), a.sign).unwrap();
        }
        if self.arcs.is_empty() {
            out.push_str("  (no arcs)\n");
        }
        writeln!(out, "strongly connected: {}", yes(self.strong)).unwrap();
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|&v| name(v)).collect::<Vec<_>>().join(",")))
            .collect();
        writeln!(out, "strong components: {}", comps.join(" ")).unwrap();
        let h = &self.hypotheses;
        writeln!(
            out,
            "cycles: {} ({} positive, {} negative)",
            h.cycles, h.positive_cycles, h.negative_cycles
        )
        .unwrap();
        for c in &self.cycles {
            let mut path = String::new();
            for (&v, s) in c.vertices.iter().zip(&c.signs) {
                write!(path, "{} -({s})-> ", name(v)).unwrap();
            }
            path.push_str(&name(c.vertices[0]));
            writeln!(out, "  ({}) {path}", c.sign).unwrap();
        }
        writeln!(
            out,
            "feedback numbers: all {}, positive {}, negative {}",
            h.feedback_number, h.positive_feedback_number, h.negative_feedback_number
        )
        .unwrap();
        writeln!(out, "linear cut: {}", yes(h.linear_cut)).unwrap();
        if let Some(e) = h.h2_embedded {
            writeln!(out, "H2 embedded: {}", yes(e)).unwrap();
        }
        out.push_str("structural conditions:\n");
        for t in Theorem::ALL {
            writeln!(out, "  {:<36} {}", t.id(), yes(h.holds(t))).unwrap();
        }
        let predicted: Vec<&str> = h.predicted.iter().map(|p| p.id()).collect();
        writeln!(
            out,
            "predicted for every network on this graph: {}",
            if predicted.is_empty() { "nothing".to_string() } else { predicted.join(", ") }
        )
        .unwrap();
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub components: Vec<String>,
    pub classification: ClassificationReport,
    pub graph: GraphSection,
}

impl AnalyzeReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "components: {}", self.components.join(" ")).unwrap();
        let c = &self.classification;
        writeln!(out, "attractors: {}", c.attractors.len()).unwrap();
        for (k, a) in c.attractors.iter().enumerate() {
            writeln!(
                out,
                "  A{}: {{{}}}  [A] = {}  <A> = {}",
                k + 1,
                a.states.join(","),
                a.subspace,
                a.trap_space
            )
            .unwrap();
        }
        out.push_str("properties:\n");
        for p in Property::ALL {
            writeln!(out, "  {:<16} {}", p.id(), yes(c.flags.get(p))).unwrap();
        }
        self.graph.render(&mut out, &self.components);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub motif: String,
    /// Host vertex of each motif vertex, 1-based.
    pub phi: Option<Vec<usize>>,
    /// One path per motif arc, e.g. `1 -> 3 -> 2 (+)`.
    pub paths: Vec<String>,
}

impl EmbeddingReport {
    fn build(motif: &Motif, g: &SignedDigraph, budget: u64) -> Result<Self, GraphError> {
        let w: Option<EmbeddingWitness> = is_embedded(&motif.graph, g, budget)?;
        Ok(EmbeddingReport {
            motif: motif.name.to_string(),
            phi: w.as_ref().map(|w| w.phi.iter().map(|v| v + 1).collect()),
            paths: w
                .map(|w| {
                    w.paths
                        .iter()
                        .map(|(_, p)| {
                            let vs: Vec<String> = p.vertices.iter().map(|v| (v + 1).to_string()).collect();
                            format!("{} ({})", vs.join(" -> "), p.sign())
                        })
                        .collect()
                })
                .unwrap_or_default(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub graph: GraphSection,
    /// Vertices to switch so that every arc becomes positive, 1-based.
    pub full_positive_switch: Option<Vec<usize>>,
    /// Why no such switch exists.
    pub not_switchable: Option<String>,
    pub embeddings: Vec<EmbeddingReport>,
}

impl GraphReport {
    pub fn build(g: &SignedDigraph, cycle_cap: usize, search_budget: u64) -> Result<Self, GraphError> {
        let (switch, reason) = match full_positive_switch(g) {
            Ok(mask) => (Some((0..g.n()).filter(|v| mask >> v & 1 == 1).map(|v| v + 1).collect()), None),
            Err(e) => (None, Some(e.to_string())),
        };
        Ok(GraphReport {
            graph: GraphSection::build(g, cycle_cap, search_budget)?,
            full_positive_switch: switch,
            not_switchable: reason,
            embeddings: vec![
                EmbeddingReport::build(&Motif::h2(), g, search_budget)?,
                EmbeddingReport::build(&Motif::k2_pm(), g, search_budget)?,
            ],
        })
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        self.graph.render(&mut out, &crate::dot::numbered(self.graph.n));
        match (&self.full_positive_switch, &self.not_switchable) {
            (Some(s), _) => writeln!(out, "full-positive after switching: {s:?}").unwrap(),
            (None, Some(why)) => writeln!(out, "no switch makes every arc positive: {why}").unwrap(),
            (None, None) => {}
        }
        for e in &self.embeddings {
            match &e.phi {
                Some(phi) => {
                    writeln!(out, "{} embedded with phi = {phi:?}", e.motif).unwrap();
                    for p in &e.paths {
                        writeln!(out, "  {p}").unwrap();
                    }
                }
                None => writeln!(out, "{} not embedded", e.motif).unwrap(),
            }
        }
        out
    }
}

pub fn graph_verdict_text(v: &GraphVerdict) -> String {
    let mut out = String::new();
    writeln!(out, "graph {}: |F(G)| = {}", v.graph, v.networks).unwrap();
    if v.networks == 0 {
        out.push_str("no network has this interaction graph; every property holds vacuously\n");
    }
    for p in Property::ALL {
        writeln!(out, "  {:<16} {}", p.id(), if v.holds(p) { "holds" } else { "fails" }).unwrap();
        if let Some(w) = v.witness(p) {
            for line in w.lines() {
                writeln!(out, "      {line}").unwrap();
            }
        }
    }
    out
}

pub fn census_text(r: &CensusReport) -> String {
    let mut out = String::new();
    writeln!(out, "census n={}: {} networks, {} graphs", r.n, r.networks, r.graphs).unwrap();
    for p in Property::ALL {
        writeln!(
            out,
            "  {:<16} {} networks, {} graphs",
            p.id(),
            r.property_counts.get(&p).copied().unwrap_or(0),
            r.graph_property_counts.get(&p).copied().unwrap_or(0)
        )
        .unwrap();
    }
    writeln!(out, "implication chain violations: {}", r.chain_violations).unwrap();
    writeln!(
        out,
        "non-separating: {} networks, graphs: {}",
        r.nonseparating_networks,
        r.nonseparating_graphs.len()
    )
    .unwrap();
    out.push_str("structural results (applicable / verified / counterexamples):\n");
    for (t, tally) in &r.theorems {
        writeln!(
            out,
            "  {:<36} {} / {} / {}",
            t.id(),
            tally.applicable,
            tally.verified,
            tally.counterexamples
        )
        .unwrap();
    }
    for c in &r.counterexamples {
        writeln!(out, "COUNTEREXAMPLE {} on {}", c.theorem.id(), c.graph).unwrap();
    }
    out
}

pub fn search_text(r: &SearchReport) -> String {
    let mut out = String::new();
    writeln!(out, "conjecture {} on n={}", r.conjecture, r.n).unwrap();
    let rows: [(&str, u64); 7] = [
        ("graphs", r.graphs),
        ("empty ensembles", r.empty_ensembles),
        ("filtered", r.filtered),
        ("conclusion holds", r.conclusion_holds),
        ("excluded by a known result", r.excluded_by_theorem),
        ("hypothesis fails", r.hypothesis_fails),
        ("undecided", r.undecided),
    ];
    for (k, v) in rows {
        writeln!(out, "  {k:<28} {v}").unwrap();
    }
    writeln!(out, "  {:<28} {}", "violations", r.violations.len()).unwrap();
    for v in &r.violations {
        writeln!(out, "VIOLATION on {}: {}", v.graph, v.reason).unwrap();
    }
    out
}

/// Outcome of checking one conjecture on one given graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleGraphReport {
    pub conjecture: String,
    pub graph: String,
    pub outcome: bnsep::ensemble::GraphOutcome,
}

pub fn robust_text(r: &RobustReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "robustly {} on {}: pool of {} networks, {} families checked ({:?}, seed {})",
        r.property, r.graph, r.pool_size, r.families_checked, r.mode, r.seed
    )
    .unwrap();
    match &r.counterexample {
        None => out.push_str("no counterexample found (this is not a proof)\n"),
        Some(fam) => {
            writeln!(out, "family of {} networks whose union lacks the property:", fam.len()).unwrap();
            for (k, f) in fam.iter().enumerate() {
                writeln!(out, "  network {}:", k + 1).unwrap();
                for line in f.lines() {
                    writeln!(out, "    {line}").unwrap();
                }
            }
        }
    }
    out
}

/// One replayed fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub summary: String,
    pub checks: BTreeMap<String, bool>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&b| b)
    }
}

pub fn fixtures_text(all: &[FixtureOutcome]) -> String {
    let mut out = String::new();
    for f in all {
        writeln!(out, "{} {}: {}", if f.passed() { "ok  " } else { "FAIL" }, f.name, f.summary).unwrap();
        for (what, ok) in &f.checks {
            if !ok {
                writeln!(out, "       mismatch: {what}").unwrap();
            }
        }
    }
    out
}

/// Errors that stop a command, by exit code. Invariant failures (exit 3)
/// are reported through a finished command's output instead.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Budget(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Budget(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::CycleBudgetExceeded { .. } | GraphError::SearchBudgetExceeded { .. } => {
                Failure::Budget(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<EnsembleError> for Failure {
    fn from(e: EnsembleError) -> Self {
        match e {
            EnsembleError::Graph(g) => g.into(),
            other => Failure::Budget(other.to_string()),
        }
    }
}
