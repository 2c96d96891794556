//! Berge testing with certificates.
//!
//! A graph is perfect exactly when it has no odd hole and no odd antihole.
//! [`is_berge`] first tries cheap structural certificates, then searches
//! for forbidden subgraphs exhaustively; every negative answer carries a
//! [`Witness`] that [`verify_witness`] can re-check from scratch.

mod holes;
mod solvers;

use std::fmt;

pub use holes::{find_odd_antihole, find_odd_hole, Budget, HoleSearch};
pub use solvers::{
    chromatic_number, clique_number, is_perfect_bruteforce, max_clique, BRUTEFORCE_GUARD, CHROMATIC_GUARD, CLIQUE_GUARD,
};

use crate::bits::AdjMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    OddHole,
    OddAntihole,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::OddHole => "odd-hole",
            WitnessKind::OddAntihole => "odd-antihole",
        }
    }
}

/// A forbidden induced subgraph, vertices in cycle order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub vertices: Vec<usize>,
}

impl Witness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Why a graph was declared Berge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertTag {
    /// Holes and antiholes of every odd length were ruled out by search.
    Exhausted,
    UnionOfCliques,
    /// Line graph of a bipartite multigraph, via row/column labels.
    Grid,
    Bipartite,
}

impl CertTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CertTag::Exhausted => "exhausted",
            CertTag::UnionOfCliques => "union-of-cliques",
            CertTag::Grid => "grid",
            CertTag::Bipartite => "bipartite",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Berge(CertTag),
    NotBerge(Witness),
    /// The search stopped early; odd lengths below `ruled_out_below` were excluded.
    Unknown { ruled_out_below: usize },
}

impl Outcome {
    pub fn is_berge(&self) -> Option<bool> {
        match self {
            Outcome::Berge(_) => Some(true),
            Outcome::NotBerge(_) => Some(false),
            Outcome::Unknown { .. } => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Berge(t) => write!(f, "Berge ({})", t.as_str()),
            Outcome::NotBerge(w) => write!(f, "NotBerge ({} of length {})", w.kind.as_str(), w.len()),
            Outcome::Unknown { ruled_out_below } => write!(f, "Unknown (lengths < {ruled_out_below} ruled out)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Path-extension steps spent.
    pub steps: u64,
}

#[derive(Clone, Debug)]
pub struct BergeOptions {
    pub budget: u64,
    /// Largest hole/antihole length searched; `None` means unbounded.
    pub max_len: Option<usize>,
    /// Row/column labels for the grid certificate.
    pub labels: Option<(Vec<usize>, Vec<usize>)>,
    /// Strip simplicial vertices and twins before searching.
    pub simplify: bool,
}

impl Default for BergeOptions {
    fn default() -> Self {
        BergeOptions { budget: DEFAULT_BUDGET, max_len: None, labels: None, simplify: true }
    }
}

/// Every connected component is complete.
pub fn union_of_cliques_certificate(adj: &AdjMatrix) -> bool {
    (0..adj.n()).all(|u| {
        adj.neighbors(u).all(|v| {
            let (ru, rv) = (adj.row(u), adj.row(v));
            ru.iter().zip(rv).enumerate().all(|(i, (&a, &b))| {
                let mut a = a;
                let mut b = b;
                if u >> 6 == i {
                    a |= 1 << (u & 63);
                    b |= 1 << (u & 63);
                }
                if v >> 6 == i {
                    a |= 1 << (v & 63);
                    b |= 1 << (v & 63);
                }
                a == b
            })
        })
    })
}

/// Adjacency is exactly "same row or same column", with no two vertices
/// sharing both labels. Such a graph is the line graph of the bipartite
/// graph whose edges are the `(row, column)` pairs, and line graphs of
/// bipartite graphs are perfect (König's edge-colouring theorem).
pub fn grid_certificate(adj: &AdjMatrix, rows: &[usize], cols: &[usize]) -> Result<bool> {
    let n = adj.n();
    if rows.len() != n || cols.len() != n {
        return Err(Error::Precondition("one row and one column label per vertex".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for v in 0..n {
        if !seen.insert((rows[v], cols[v])) {
            return Err(Error::DuplicateLabel);
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if adj.has(u, v) != (rows[u] == rows[v] || cols[u] == cols[v]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn bipartite_certificate(adj: &AdjMatrix) -> bool {
    let n = adj.n();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in adj.neighbors(u) {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    stack.push(v);
                } else if side[v] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Re-checks a witness against `adj` from scratch.
pub fn verify_witness(adj: &AdjMatrix, w: &Witness) -> bool {
    let k = w.vertices.len();
    if k < 5 || k.is_multiple_of(2) || w.vertices.iter().any(|&v| v >= adj.n()) {
        return false;
    }
    let mut sorted = w.vertices.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return false;
    }
    let want_edge_between_neighbours = w.kind == WitnessKind::OddHole;
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            let edge = adj.has(w.vertices[i], w.vertices[j]);
            if edge != (consecutive == want_edge_between_neighbours) {
                return false;
            }
        }
    }
    true
}

/// Repeatedly deletes simplicial vertices and all but the smallest member
/// of each twin class. Neither step changes whether the graph is Berge.
/// Returns the surviving vertices, ascending.
pub fn simplify(adj: &AdjMatrix) -> Vec<usize> {
    let mut alive: Vec<usize> = (0..adj.n()).collect();
    loop {
        let sub = adj.induced(&alive);
        let m = sub.n();
        let closed_row = |v: usize| {
            let mut r = sub.row(v).to_vec();
            r[v >> 6] |= 1 << (v & 63);
            r
        };
        // simplicial: N[v] is contained in N[a] for each neighbour a
        let mut drop: Vec<bool> = (0..m)
            .map(|v| {
                let cv = closed_row(v);
                sub.neighbors(v).all(|a| {
                    let ra = sub.row(a);
                    cv.iter().zip(ra).enumerate().all(|(i, (&x, &y))| {
                        let y = if a >> 6 == i { y | 1 << (a & 63) } else { y };
                        x & !y == 0
                    })
                })
            })
            .collect();
        if !drop.iter().any(|&d| d) {
            let mut open = rustc_hash::FxHashMap::default();
            for v in 0..m {
                if open.insert(sub.row(v).to_vec(), v).is_some() {
                    drop[v] = true;
                }
            }
        }
        if !drop.iter().any(|&d| d) {
            let mut closed = rustc_hash::FxHashMap::default();
            for v in 0..m {
                if closed.insert(closed_row(v), v).is_some() {
                    drop[v] = true;
                }
            }
        }
        if !drop.iter().any(|&d| d) {
            return alive;
        }
        alive = alive.iter().zip(&drop).filter(|(_, &d)| !d).map(|(&v, _)| v).collect();
    }
}

/// Decides whether `adj` is Berge.
///
/// Order: union of cliques, grid (when labels are given), bipartite; then,
/// after optional simplification, odd holes by increasing length in each
/// connected component, then odd antiholes the same way. A component is
/// searched on its own since every hole and antihole is connected.
pub fn is_berge(adj: &AdjMatrix, opts: &BergeOptions) -> Verdict {
    let done = |outcome| Verdict { outcome, steps: 0 };
    if union_of_cliques_certificate(adj) {
        return done(Outcome::Berge(CertTag::UnionOfCliques));
    }
    if let Some((r, c)) = &opts.labels {
        if grid_certificate(adj, r, c) == Ok(true) {
            return done(Outcome::Berge(CertTag::Grid));
        }
    }
    if bipartite_certificate(adj) {
        return done(Outcome::Berge(CertTag::Bipartite));
    }
    let keep = if opts.simplify { simplify(adj) } else { (0..adj.n()).collect() };
    let core = adj.induced(&keep);
    let comps: Vec<Vec<usize>> = core.components().into_iter().filter(|c| c.len() >= 5).collect();
    let subs: Vec<AdjMatrix> = comps.iter().map(|c| core.induced(c)).collect();
    let max_len = opts.max_len.unwrap_or(usize::MAX);
    let mut budget = Budget::new(opts.budget);
    let mut bounded: Option<usize> = None;
    for kind in [WitnessKind::OddHole, WitnessKind::OddAntihole] {
        for (comp, sub) in comps.iter().zip(&subs) {
            let res = match kind {
                WitnessKind::OddHole => find_odd_hole(sub, 5, max_len, &mut budget),
                WitnessKind::OddAntihole => find_odd_antihole(sub, 7, max_len, &mut budget),
            };
            match res {
                HoleSearch::Found(vs) => {
                    let w = Witness { kind, vertices: vs.into_iter().map(|v| keep[comp[v]]).collect() };
                    debug_assert!(verify_witness(adj, &w));
                    return Verdict { outcome: Outcome::NotBerge(w), steps: budget.used };
                }
                HoleSearch::Absent => {}
                HoleSearch::AbsentUpTo(m) => bounded = Some(bounded.map_or(m + 2, |b: usize| b.min(m + 2))),
                HoleSearch::Budget(l) => {
                    return Verdict { outcome: Outcome::Unknown { ruled_out_below: l }, steps: budget.used };
                }
            }
        }
    }
    let outcome = match bounded {
        Some(l) => Outcome::Unknown { ruled_out_below: l },
        None => Outcome::Berge(CertTag::Exhausted),
    };
    Verdict { outcome, steps: budget.used }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> AdjMatrix {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        AdjMatrix::from_edges(n, &edges)
    }

    #[test]
    fn certificates() {
        let tri2 = AdjMatrix::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(union_of_cliques_certificate(&tri2));
        assert!(!union_of_cliques_certificate(&AdjMatrix::from_edges(3, &[(0, 1), (1, 2)])));
        assert!(union_of_cliques_certificate(&AdjMatrix::new(4)));
        assert!(bipartite_certificate(&cycle(6)));
        assert!(!bipartite_certificate(&cycle(5)));
        let k5 = AdjMatrix::new(5).complement();
        assert_eq!(grid_certificate(&k5, &[0; 5], &[0, 1, 2, 3, 4]), Ok(true));
        assert_eq!(grid_certificate(&k5, &[0; 5], &[0; 5]), Err(Error::DuplicateLabel));
    }

    /// Set partitions of 0..n as restricted growth strings.
    fn partitions(n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    let top = p.iter().max().map_or(0, |m| m + 1);
                    (0..=top).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn c5_has_no_grid_labelling() {
        let c5 = cycle(5);
        let parts = partitions(5);
        assert_eq!(parts.len(), 52);
        for r in &parts {
            for c in &parts {
                assert_ne!(grid_certificate(&c5, r, c), Ok(true));
            }
        }
    }

    #[test]
    fn verdicts() {
        let v = is_berge(&cycle(5), &BergeOptions::default());
        assert!(matches!(&v.outcome, Outcome::NotBerge(w) if w.kind == WitnessKind::OddHole && w.len() == 5));
        let c7c = cycle(7).complement();
        let v = is_berge(&c7c, &BergeOptions::default());
        assert!(matches!(&v.outcome, Outcome::NotBerge(w) if w.kind == WitnessKind::OddAntihole && w.len() == 7));
        let v = is_berge(&cycle(8), &BergeOptions::default());
        assert_eq!(v.outcome, Outcome::Berge(CertTag::Bipartite));
        // a 6-cycle with a triangle hung on one edge
        let p = AdjMatrix::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (1, 6)]);
        assert_eq!(is_berge(&p, &BergeOptions::default()).outcome, Outcome::Berge(CertTag::Exhausted));
    }

    #[test]
    fn witness_checks() {
        let c5 = cycle(5);
        let w = Witness { kind: WitnessKind::OddHole, vertices: vec![0, 1, 2, 3, 4] };
        assert!(verify_witness(&c5, &w));
        assert!(!verify_witness(&c5, &Witness { vertices: vec![0, 2, 1, 3, 4], ..w.clone() }));
        let c6 = cycle(6);
        assert!(!verify_witness(&c6, &Witness { kind: WitnessKind::OddHole, vertices: (0..6).collect() }));
    }

    #[test]
    fn simplify_strips_chordal_graphs() {
        let mut g = cycle(6);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        g.add_edge(0, 4);
        assert!(simplify(&g).len() <= 1);
        assert_eq!(simplify(&cycle(5)), vec![0, 1, 2, 3, 4]);
    }
}
