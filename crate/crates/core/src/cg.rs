//! Commuting graphs and the reductions that preserve Berge-ness.

use rustc_hash::FxHashMap;

use crate::bits::AdjMatrix;
use crate::error::{Error, Result};
use crate::grp::{Element, Group, Matrix};

/// Largest vertex count `build_graph` / `build_reduced` will materialize.
pub const VERTEX_GUARD: usize = 30_000;

/// What the reductions removed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionReport {
    pub group_order: usize,
    pub center_size: usize,
    /// Non-central elements dropped because their centralizer is abelian.
    pub removed_abelian: usize,
    /// Vertices merged away by twin collapse.
    pub removed_twins: usize,
    /// For each vertex, how many vertices of the uncollapsed graph it stands for.
    pub class_sizes: Vec<usize>,
    pub notes: Vec<String>,
}

/// A graph on group elements (or on bare indices after a DIMACS import).
#[derive(Clone, Debug)]
pub struct CommGraph {
    spec: String,
    /// Group element index of each vertex; `None` once provenance is dropped.
    elements: Option<Vec<u32>>,
    encodings: Option<Vec<Element>>,
    adj: AdjMatrix,
    pub includes_center: bool,
    pub reduced: bool,
    pub collapsed: bool,
    pub report: ReductionReport,
}

impl CommGraph {
    /// A graph without group provenance.
    pub fn from_adj(name: impl Into<String>, adj: AdjMatrix) -> CommGraph {
        let n = adj.n();
        CommGraph {
            spec: name.into(),
            elements: None,
            encodings: None,
            adj,
            includes_center: false,
            reduced: false,
            collapsed: false,
            report: ReductionReport { class_sizes: vec![1; n], ..Default::default() },
        }
    }

    /// Reassembles a graph whose vertices are the given group elements.
    pub fn from_parts(
        spec: impl Into<String>,
        elements: Vec<u32>,
        encodings: Vec<Element>,
        adj: AdjMatrix,
        report: ReductionReport,
    ) -> Result<CommGraph> {
        if elements.len() != adj.n() || encodings.len() != adj.n() || report.class_sizes.len() != adj.n() {
            return Err(Error::Precondition("vertex data does not match the graph size".into()));
        }
        Ok(CommGraph {
            spec: spec.into(),
            elements: Some(elements),
            encodings: Some(encodings),
            adj,
            includes_center: false,
            reduced: false,
            collapsed: false,
            report,
        })
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }
    pub fn n(&self) -> usize {
        self.adj.n()
    }
    pub fn adj(&self) -> &AdjMatrix {
        &self.adj
    }
    pub fn has(&self, u: usize, v: usize) -> bool {
        self.adj.has(u, v)
    }
    pub fn degree(&self, v: usize) -> usize {
        self.adj.degree(v)
    }
    pub fn edge_count(&self) -> usize {
        self.adj.edge_count()
    }
    /// Group element index behind each vertex, if the graph still has provenance.
    pub fn element_indices(&self) -> Option<&[u32]> {
        self.elements.as_deref()
    }
    /// Group element behind each vertex, if the graph still has provenance.
    pub fn vertex_elements(&self) -> Option<&[Element]> {
        self.encodings.as_deref()
    }

    pub fn vertex_of_element(&self, e: u32) -> Option<usize> {
        self.elements.as_ref()?.iter().position(|&x| x == e)
    }

    /// DIMACS edge format: `p edge n m` then `e u v` with `u < v`, 1-based, ascending.
    pub fn to_dimacs(&self) -> String {
        write_dimacs(&self.adj)
    }
}

pub fn write_dimacs(adj: &AdjMatrix) -> String {
    let edges = adj.edges();
    let mut s = format!("p edge {} {}\n", adj.n(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    s
}

/// Reads the DIMACS edge format; comment lines (`c …`) are skipped.
pub fn read_dimacs(text: &str) -> Result<AdjMatrix> {
    let mut adj: Option<AdjMatrix> = None;
    for (no, line) in text.lines().enumerate() {
        let t: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Format(format!("line {}: {line:?}", no + 1));
        match t.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if t.len() != 4 || t[1] != "edge" || adj.is_some() {
                    return Err(bad());
                }
                adj = Some(AdjMatrix::new(t[2].parse().map_err(|_| bad())?));
            }
            Some("e") => {
                let a = adj.as_mut().ok_or_else(bad)?;
                if t.len() != 3 {
                    return Err(bad());
                }
                let u: usize = t[1].parse().map_err(|_| bad())?;
                let v: usize = t[2].parse().map_err(|_| bad())?;
                if u == 0 || v == 0 || u > a.n() || v > a.n() || u == v {
                    return Err(bad());
                }
                a.add_edge(u - 1, v - 1);
            }
            _ => return Err(bad()),
        }
    }
    adj.ok_or_else(|| Error::Format("missing `p edge` header".into()))
}

fn graph_on(g: &Group, verts: Vec<u32>) -> Result<CommGraph> {
    if verts.len() > VERTEX_GUARD {
        return Err(Error::GraphGuard(format!("{} vertices (limit {VERTEX_GUARD})", verts.len())));
    }
    let n = verts.len();
    let mut pos: FxHashMap<u32, usize> = FxHashMap::default();
    for (i, &v) in verts.iter().enumerate() {
        pos.insert(v, i);
    }
    let mut adj = AdjMatrix::new(n);
    for (i, &v) in verts.iter().enumerate() {
        for h in g.centralizer(v) {
            if let Some(&j) = pos.get(&h) {
                if j != i {
                    adj.set(i, j);
                }
            }
        }
    }
    let encodings = verts.iter().map(|&v| g.element(v).clone()).collect();
    Ok(CommGraph {
        spec: g.name().to_string(),
        elements: Some(verts),
        encodings: Some(encodings),
        adj,
        includes_center: false,
        reduced: false,
        collapsed: false,
        report: ReductionReport {
            group_order: g.order(),
            center_size: g.center().len(),
            class_sizes: vec![1; n],
            ..Default::default()
        },
    })
}

/// The commuting graph on `G ∖ Z(G)`, or on all of `G` with `include_center`.
pub fn build_graph(g: &Group, include_center: bool) -> Result<CommGraph> {
    let verts: Vec<u32> = (0..g.order() as u32).filter(|&x| include_center || !g.is_central(x)).collect();
    let mut cg = graph_on(g, verts)?;
    cg.includes_center = include_center;
    Ok(cg)
}

/// The commuting graph on non-central elements whose centralizer is not
/// abelian. An element with abelian centralizer has a clique as its
/// neighbourhood, so it lies on no odd hole or antihole.
pub fn build_reduced(g: &Group) -> Result<CommGraph> {
    let noncentral = g.order() - g.center().len();
    let verts: Vec<u32> =
        (0..g.order() as u32).filter(|&x| !g.is_central(x) && !g.centralizer_is_abelian(x)).collect();
    let removed = noncentral - verts.len();
    let mut cg = graph_on(g, verts)?;
    cg.reduced = true;
    cg.report.removed_abelian = removed;
    cg.report.notes.push(format!("dropped {removed} non-central elements with abelian centralizers"));
    Ok(cg)
}

impl CommGraph {
    fn keep(&self, verts: &[usize]) -> CommGraph {
        CommGraph {
            spec: self.spec.clone(),
            elements: self.elements.as_ref().map(|e| verts.iter().map(|&v| e[v]).collect()),
            encodings: self.encodings.as_ref().map(|e| verts.iter().map(|&v| e[v].clone()).collect()),
            adj: self.adj.induced(verts),
            includes_center: self.includes_center,
            reduced: self.reduced,
            collapsed: self.collapsed,
            report: ReductionReport {
                class_sizes: verts.iter().map(|&v| self.report.class_sizes[v]).collect(),
                ..self.report.clone()
            },
        }
    }

    /// Induced subgraph on `verts` (in that order).
    pub fn induced(&self, verts: &[usize]) -> Result<CommGraph> {
        let mut seen = vec![false; self.n()];
        for &v in verts {
            if v >= self.n() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotSubset);
            }
        }
        Ok(self.keep(verts))
    }

    /// Complement graph; group provenance is dropped.
    pub fn complement(&self) -> CommGraph {
        let mut c = CommGraph::from_adj(format!("complement({})", self.spec), self.adj.complement());
        c.report.class_sizes = self.report.class_sizes.clone();
        c
    }
}

/// Merges twins until none remain: first vertices with equal open
/// neighbourhoods, then equal closed neighbourhoods, repeated to a fixpoint.
/// The smallest vertex of each class is kept. Two twins never lie together
/// on a hole or antihole of length at least 5, and a forbidden subgraph
/// through a dropped twin can be rerouted through the kept one.
pub fn collapse_twins(g: &CommGraph) -> CommGraph {
    let mut cur = g.clone();
    let before = g.n();
    loop {
        let mut changed = false;
        for closed in [false, true] {
            let (kept, sizes) = twin_classes(&cur, closed);
            if kept.len() < cur.n() {
                let mut next = cur.keep(&kept);
                next.report.class_sizes = sizes;
                cur = next;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    cur.collapsed = true;
    cur.report.removed_twins += before - cur.n();
    cur.report.notes.push(format!(
        "twin collapse (open, then closed neighbourhoods, to a fixpoint): {before} -> {} vertices",
        cur.n()
    ));
    cur
}

fn twin_classes(g: &CommGraph, closed: bool) -> (Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut first: FxHashMap<Vec<u64>, usize> = FxHashMap::default();
    let mut sizes = vec![0usize; n];
    let mut kept = Vec::new();
    for v in 0..n {
        let mut row = g.adj.row(v).to_vec();
        if closed {
            row[v >> 6] |= 1 << (v & 63);
        }
        let rep = *first.entry(row).or_insert(v);
        if rep == v {
            kept.push(v);
        }
        sizes[rep] += g.report.class_sizes[v];
    }
    let sizes = kept.iter().map(|&v| sizes[v]).collect();
    (kept, sizes)
}

/// Normalized `(row, column)` with `λM − I = column · rowᵀ` for some scalar
/// `λ`, when `M` is a scalar multiple of a transvection. The row spans the
/// fixed hyperplane's annihilator and the column spans the centre line.
pub fn transvection_flag(m: &Matrix) -> Option<(Vec<u16>, Vec<u16>)> {
    let f = m.field();
    let n = m.n();
    let id = Matrix::identity(f, n);
    for lam in 1..f.order() as u16 {
        let nm = m.scale(lam).sub(&id);
        if nm.rank() != 1 || !nm.mul(&nm).entries().iter().all(|&e| e == 0) {
            continue;
        }
        let normalize = |v: Vec<u16>| {
            let lead = *v.iter().find(|&&x| x != 0).unwrap();
            let inv = f.inv(lead).unwrap();
            v.into_iter().map(|x| f.mul(x, inv)).collect::<Vec<u16>>()
        };
        let i = (0..n).find(|&i| (0..n).any(|j| nm.get(i, j) != 0))?;
        let j = (0..n).find(|&j| (0..n).any(|i| nm.get(i, j) != 0))?;
        let row = normalize((0..n).map(|c| nm.get(i, c)).collect());
        let col = normalize((0..n).map(|r| nm.get(r, j)).collect());
        return Some((row, col));
    }
    None
}

impl CommGraph {
    /// Row/column labels from transvection flags, when every vertex is a
    /// scalar multiple of a transvection.
    pub fn flag_labels(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let els = self.encodings.as_ref()?;
        let mut rows: FxHashMap<Vec<u16>, usize> = FxHashMap::default();
        let mut cols: FxHashMap<Vec<u16>, usize> = FxHashMap::default();
        let mut r = Vec::with_capacity(els.len());
        let mut c = Vec::with_capacity(els.len());
        for e in els {
            let m = match e {
                Element::Mat(m) => m,
                Element::Coset(rep, _) => match rep.as_ref() {
                    Element::Mat(m) => m,
                    _ => return None,
                },
                _ => return None,
            };
            let (h, l) = transvection_flag(m)?;
            let k = rows.len();
            r.push(*rows.entry(h).or_insert(k));
            let k = cols.len();
            c.push(*cols.entry(l).or_insert(k));
        }
        Some((r, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> CommGraph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        CommGraph::from_adj(format!("C{n}"), AdjMatrix::from_edges(n, &edges))
    }

    #[test]
    fn dimacs_round_trip() {
        let c = cycle(5);
        let text = c.to_dimacs();
        assert_eq!(text, "p edge 5 5\ne 1 2\ne 1 5\ne 2 3\ne 3 4\ne 4 5\n");
        assert_eq!(read_dimacs(&text).unwrap(), *c.adj());
        assert!(read_dimacs("e 1 2\n").is_err());
        assert!(read_dimacs("p edge 2 1\ne 1 3\n").is_err());
    }

    #[test]
    fn twins() {
        assert_eq!(collapse_twins(&cycle(5)).n(), 5);
        let k4 = CommGraph::from_adj("K4", AdjMatrix::new(4).complement());
        let c = collapse_twins(&k4);
        assert_eq!(c.n(), 1);
        assert_eq!(c.report.class_sizes, vec![4]);
        // K_{2,3}: open twins on each side
        let k23 = AdjMatrix::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        let c = collapse_twins(&CommGraph::from_adj("K23", k23));
        assert_eq!(c.n(), 1);
        assert_eq!(c.report.class_sizes, vec![5]);
    }

    #[test]
    fn complement_and_induced() {
        let c5 = cycle(5);
        let cc = c5.complement();
        assert_eq!(cc.edge_count(), 5);
        assert_eq!(cc.complement().adj(), c5.adj());
        assert!(c5.induced(&[0, 5]).is_err());
        assert!(c5.induced(&[1, 1]).is_err());
        assert_eq!(c5.induced(&[0, 1, 2]).unwrap().edge_count(), 2);
    }
}
