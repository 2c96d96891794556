//! Perfection verdicts for named groups, and the table of expected answers.

use std::fmt;
use std::time::Instant;

use crate::cg::{build_graph, build_reduced, collapse_twins, CommGraph};
use crate::cli::cache::GraphCache;
use crate::error::{Error, Result};
use crate::grp::{Element, Group};
use crate::named::{self, GroupSpec};
use crate::perf::{
    find_odd_antihole, find_odd_hole, is_berge, max_clique, BergeOptions, Budget, CertTag, HoleSearch, Outcome,
    Verdict, WitnessKind, CLIQUE_GUARD, DEFAULT_BUDGET,
};
use crate::wit::{ElementTuple, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Perfect,
    NotPerfect,
    Untabled,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Perfect => "Perfect",
            Expected::NotPerfect => "NotPerfect",
            Expected::Untabled => "Untabled",
        })
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Analyze the commuting graph on all of G instead of G ∖ Z(G).
    pub include_center: bool,
    /// Drop elements with abelian centralizers (ignored with `include_center`).
    pub reduce: bool,
    pub collapse: bool,
    pub max_len: Option<usize>,
    pub budget: u64,
    /// Hole-length bound for the search run alongside a grid certificate.
    pub cross_check_len: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            include_center: false,
            reduce: true,
            collapse: true,
            max_len: None,
            budget: DEFAULT_BUDGET,
            cross_check_len: 13,
        }
    }
}

impl AnalyzeOptions {
    /// Which graph variant these options analyze, as (include_center, reduced, collapsed).
    pub fn variant(&self) -> (bool, bool, bool) {
        (self.include_center, self.reduce && !self.include_center, self.collapse)
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub spec: String,
    pub order: usize,
    pub center: usize,
    pub quasisimple: bool,
    pub ac_group: bool,
    /// Vertices before twin collapse (after reduction, if any).
    pub vertices: usize,
    /// Vertices actually searched.
    pub collapsed_vertices: usize,
    pub verdict: Verdict,
    /// For `NotBerge`: the forbidden subgraph as group elements.
    pub witness: Option<ElementTuple>,
    pub notes: Vec<String>,
    pub seconds: f64,
    pub expected: Expected,
}

impl Report {
    pub fn actual(&self) -> &'static str {
        match self.verdict.outcome {
            Outcome::Berge(_) => "Perfect",
            Outcome::NotBerge(_) => "NotPerfect",
            Outcome::Unknown { .. } => "Unknown",
        }
    }

    /// Exact match against the table; untabled specs and Unknown never match.
    pub fn matches(&self) -> bool {
        matches!(
            (self.expected, &self.verdict.outcome),
            (Expected::Perfect, Outcome::Berge(_)) | (Expected::NotPerfect, Outcome::NotBerge(_))
        )
    }

    /// Equality of everything except wall time.
    pub fn same_as(&self, o: &Report) -> bool {
        self.spec == o.spec
            && self.order == o.order
            && self.center == o.center
            && self.quasisimple == o.quasisimple
            && self.ac_group == o.ac_group
            && self.vertices == o.vertices
            && self.collapsed_vertices == o.collapsed_vertices
            && self.verdict == o.verdict
            && self.witness == o.witness
            && self.notes == o.notes
            && self.expected == o.expected
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group        {}", self.spec)?;
        writeln!(f, "order        {}", self.order)?;
        writeln!(f, "center       {}", self.center)?;
        writeln!(f, "quasisimple  {}", self.quasisimple)?;
        writeln!(f, "ac-group     {}", self.ac_group)?;
        writeln!(f, "vertices     {} -> {}", self.vertices, self.collapsed_vertices)?;
        writeln!(f, "verdict      {}", self.verdict.outcome)?;
        writeln!(f, "steps        {}", self.verdict.steps)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness      {} {}", w.pattern, w.elements.iter().map(element_text).collect::<Vec<_>>().join(" "))?;
        }
        for n in &self.notes {
            writeln!(f, "note         {n}")?;
        }
        writeln!(f, "expected     {}", self.expected)?;
        write!(f, "seconds      {:.2}", self.seconds)
    }
}

fn element_text(e: &Element) -> String {
    crate::cli::cert::encode_element(e)
}

/// Expected verdict from the classification, for the families it covers.
pub fn expected_verdict(spec: &GroupSpec) -> Expected {
    use Expected::*;
    use GroupSpec::*;
    let b = |p: bool| if p { Perfect } else { NotPerfect };
    match spec {
        Sym(n) => b(*n <= 4),
        Alt(n) => b(*n <= 6),
        // every subgroup of GL₂(q) has abelian centralizers
        Sl(2, _) | Gl(1 | 2, _) => Perfect,
        Psl(2, q) => b(q % 2 == 0 || *q <= 9),
        Pgl2(q) => b(q % 2 == 0 || *q <= 3),
        Sl(3, q) | Psl(3, q) | Gl(3, q) => b(*q == 2 || *q == 4),
        Su3(q) | Psu3(q) if *q > 2 => NotPerfect,
        Sp4(_) | Psp4(_) => NotPerfect,
        Sz(_) => Perfect,
        AutSl2_8 => NotPerfect,
        ThreeA6 => Perfect,
        Prod(parts) if parts.len() >= 3 && parts.iter().all(nonabelian) => NotPerfect,
        Fib(a, b) if **a == ThreeA6 && **b == Sl(2, 9) => Perfect,
        _ => Untabled,
    }
}

fn nonabelian(s: &GroupSpec) -> bool {
    use GroupSpec::*;
    match s {
        Sym(n) => *n >= 3,
        Alt(n) => *n >= 4,
        Gl(1, _) | Sl(1, _) | Psl(1, _) => false,
        Prod(p) => p.iter().any(nonabelian),
        Cq(_) => false,
        _ => true,
    }
}

fn graph_for(g: &Group, opts: &AnalyzeOptions) -> Result<CommGraph> {
    let (include_center, reduced, collapsed) = opts.variant();
    let base = if reduced { build_reduced(g)? } else { build_graph(g, include_center)? };
    Ok(if collapsed { collapse_twins(&base) } else { base })
}

/// Builds the group, its commuting graph (reduced and twin-collapsed by
/// default) and decides whether the graph is Berge.
pub fn analyze(spec: &GroupSpec, opts: &AnalyzeOptions, cache: Option<&GraphCache>) -> Result<Report> {
    let start = Instant::now();
    let g = named::build(spec)?;
    let name = spec.render();
    let graph = match cache {
        Some(c) => c.get_or_build(&g, &name, opts.variant(), || graph_for(&g, opts))?,
        None => graph_for(&g, opts)?,
    };
    let mut notes = graph.report.notes.clone();
    let labels = graph.flag_labels();
    let bopts = BergeOptions { budget: opts.budget, max_len: opts.max_len, labels: labels.clone(), simplify: true };
    let verdict = is_berge(graph.adj(), &bopts);
    let mut witness = None;
    match &verdict.outcome {
        Outcome::NotBerge(w) => {
            let els = graph.vertex_elements().ok_or_else(|| Error::Precondition("graph lost its elements".into()))?;
            let tuple = ElementTuple {
                group: name.clone(),
                elements: w.vertices.iter().map(|&v| els[v].clone()).collect(),
                pattern: match w.kind {
                    WitnessKind::OddHole => Pattern::Hole(w.len()),
                    WitnessKind::OddAntihole => Pattern::Antihole(w.len()),
                },
            };
            tuple.verify_in(&g)?;
            witness = Some(tuple);
        }
        Outcome::Berge(CertTag::Grid) => notes.push(grid_cross_check(&graph, opts)?),
        _ => {}
    }
    let (vertices, collapsed_vertices) = if graph.collapsed {
        (graph.report.class_sizes.iter().sum(), graph.n())
    } else {
        (graph.n(), graph.n())
    };
    Ok(Report {
        spec: name,
        order: g.order(),
        center: g.center().len(),
        quasisimple: g.is_quasisimple(),
        ac_group: g.is_ac_group(),
        vertices,
        collapsed_vertices,
        verdict,
        witness,
        notes,
        seconds: start.elapsed().as_secs_f64(),
        expected: expected_verdict(spec),
    })
}

/// Search run next to a grid certificate. An antihole of length k has
/// clique number (k − 1)/2, so lengths up to 2ω + 1 cover every antihole
/// and that half is complete; holes are searched up to `cross_check_len`.
fn grid_cross_check(graph: &CommGraph, opts: &AnalyzeOptions) -> Result<String> {
    let adj = graph.adj();
    if adj.n() > CLIQUE_GUARD {
        return Ok("grid certificate; cross-check skipped (graph too large)".into());
    }
    let omega = max_clique(adj)?.len();
    let anti_top = 2 * omega + 1;
    let mut budget = Budget::new(opts.budget);
    let found = |kind: &str, vs: Vec<usize>| Error::WitnessFailed(format!("grid-certified graph has an odd {kind} {vs:?}"));
    let anti = match find_odd_antihole(adj, 7, anti_top, &mut budget) {
        HoleSearch::Found(vs) => return Err(found("antihole", vs)),
        HoleSearch::Absent | HoleSearch::AbsentUpTo(_) => format!("no odd antihole (all lengths; omega = {omega})"),
        HoleSearch::Budget(l) => format!("no odd antihole shorter than {l} (budget)"),
    };
    let holes = match find_odd_hole(adj, 5, opts.cross_check_len, &mut budget) {
        HoleSearch::Found(vs) => return Err(found("hole", vs)),
        HoleSearch::Absent => "no odd hole (all lengths)".to_string(),
        HoleSearch::AbsentUpTo(l) => format!("no odd hole of length <= {l}"),
        HoleSearch::Budget(l) => format!("no odd hole shorter than {l} (budget)"),
    };
    Ok(format!("grid certificate cross-check: {anti}; {holes}"))
}

/// Acceptance table: spec and expected verdict.
pub const SUITE: &[(&str, Expected)] = &[
    ("alt:5", Expected::Perfect),
    ("alt:6", Expected::Perfect),
    ("sl:2:4", Expected::Perfect),
    ("sl:2:5", Expected::Perfect),
    ("sl:2:7", Expected::Perfect),
    ("sl:2:8", Expected::Perfect),
    ("sl:2:9", Expected::Perfect),
    ("sl:2:11", Expected::Perfect),
    ("sl:2:13", Expected::Perfect),
    ("sl:3:2", Expected::Perfect),
    ("sl:3:4", Expected::Perfect),
    ("psl:3:4", Expected::Perfect),
    ("3a6", Expected::Perfect),
    ("sz:8", Expected::Perfect),
    ("fib(3a6,sl:2:9)", Expected::Perfect),
    ("sym:5", Expected::NotPerfect),
    ("sym:6", Expected::NotPerfect),
    ("alt:7", Expected::NotPerfect),
    ("alt:8", Expected::NotPerfect),
    ("pgl:2:5", Expected::NotPerfect),
    ("pgl:2:7", Expected::NotPerfect),
    ("pgl:2:9", Expected::NotPerfect),
    ("psl:2:11", Expected::NotPerfect),
    ("psl:2:13", Expected::NotPerfect),
    ("psl:2:17", Expected::NotPerfect),
    ("sl:3:3", Expected::NotPerfect),
    ("psl:3:3", Expected::NotPerfect),
    ("su:3:3", Expected::NotPerfect),
    ("psu:3:3", Expected::NotPerfect),
    ("sp:4:3", Expected::NotPerfect),
    ("psp:4:3", Expected::NotPerfect),
    ("aut-sl2-8", Expected::NotPerfect),
    ("prod(sym:3,sym:3,sym:3)", Expected::NotPerfect),
];

#[derive(Clone, Debug)]
pub struct SuiteRow {
    pub spec: String,
    pub expected: Expected,
    pub report: std::result::Result<Report, String>,
}

impl SuiteRow {
    pub fn pass(&self) -> bool {
        matches!(&self.report, Ok(r) if r.expected == self.expected && r.matches())
    }
    /// `<spec> <expected> <actual> <seconds> <PASS|FAIL>`
    pub fn line(&self) -> String {
        let (actual, secs) = match &self.report {
            Ok(r) => (r.actual().to_string(), r.seconds),
            Err(_) => ("Error".to_string(), 0.0),
        };
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        format!("{} {} {} {:.2} {}", self.spec, self.expected, actual, secs, verdict)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteSummary {
    pub rows: Vec<SuiteRow>,
}

impl SuiteSummary {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.pass()).count()
    }
    pub fn all_pass(&self) -> bool {
        self.passed() == self.rows.len()
    }
    pub fn totals(&self) -> String {
        format!("{} rows, {} passed, {} failed", self.rows.len(), self.passed(), self.rows.len() - self.passed())
    }
}

/// Runs every suite row whose spec contains `filter`, calling `each` as rows finish.
pub fn run_suite(
    filter: &str,
    opts: &AnalyzeOptions,
    cache: Option<&GraphCache>,
    mut each: impl FnMut(&SuiteRow),
) -> SuiteSummary {
    let mut out = SuiteSummary::default();
    for &(spec, expected) in SUITE.iter().filter(|(s, _)| s.contains(filter)) {
        let report = GroupSpec::parse(spec).and_then(|s| analyze(&s, opts, cache)).map_err(|e| e.to_string());
        let row = SuiteRow { spec: spec.to_string(), expected, report };
        each(&row);
        out.rows.push(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(s: &str) -> Expected {
        expected_verdict(&GroupSpec::parse(s).unwrap())
    }

    #[test]
    fn table_agrees_with_rules() {
        for &(s, e) in SUITE {
            assert_eq!(exp(s), e, "{s}");
        }
        assert_eq!(exp("sl:2:13"), Expected::Perfect);
        assert_eq!(exp("sym:4"), Expected::Perfect);
        assert_eq!(exp("prod(sym:3,sym:3)"), Expected::Untabled);
        assert_eq!(exp("su:3:2"), Expected::Untabled);
    }

    #[test]
    fn small_verdicts() {
        let o = AnalyzeOptions::default();
        let r = analyze(&GroupSpec::parse("sym:5").unwrap(), &o, None).unwrap();
        assert!(r.matches());
        assert_eq!(r.witness.as_ref().unwrap().pattern, Pattern::Hole(5));
        let r = analyze(&GroupSpec::parse("alt:6").unwrap(), &o, None).unwrap();
        assert!(r.matches());
        assert_eq!(r.vertices, 45);
    }

    #[test]
    fn filters() {
        let o = AnalyzeOptions::default();
        assert_eq!(run_suite("sz", &o, None, |_| {}).rows.len(), 1);
        let empty = run_suite("no-such-group", &o, None, |_| {});
        assert!(empty.rows.is_empty() && empty.all_pass());
    }
}
