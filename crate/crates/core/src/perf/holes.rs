//! Odd-hole search by depth-first extension of chordless paths.

use crate::bits::{iter_words, words_for, AdjMatrix};

/// Result of a bounded hole search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HoleSearch {
    /// A hole, in cycle order, starting at its smallest vertex.
    Found(Vec<usize>),
    /// There is no odd hole of any length `≥ min_len`.
    Absent,
    /// No odd hole with length in `[min_len, max_len]`; longer ones were not ruled out.
    AbsentUpTo(usize),
    /// The step budget ran out; holes shorter than the given length were ruled out.
    Budget(usize),
}

pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: 0 }
    }
    #[inline]
    fn spend(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    adj: &'a AdjMatrix,
    w: usize,
    len: usize,
    path: Vec<usize>,
    /// `blocked[k]`: vertices that may not be appended after `path[k]`.
    blocked: Vec<Vec<u64>>,
    dist: Vec<u32>,
    cut: bool,
}

impl Search<'_> {
    fn extend(&mut self, k: usize, budget: &mut Budget) -> Step {
        let s = self.path[0];
        let head = self.path[k];
        let w = self.w;
        let closing = k + 2 == self.len;
        let mut cand = vec![0u64; w];
        let (hrow, srow, blk) = (self.adj.row(head), self.adj.row(s), &self.blocked[k]);
        let mut longer = false;
        for i in 0..w {
            let open = hrow[i] & !blk[i];
            if closing {
                cand[i] = open & srow[i];
                longer |= open & !srow[i] != 0;
            } else if k == 0 {
                cand[i] = open;
            } else {
                cand[i] = open & !srow[i];
            }
        }
        if longer {
            self.cut = true;
        }
        let remaining = (self.len - k - 1) as u32;
        for v in iter_words(&cand) {
            if !budget.spend() {
                return Step::OutOfBudget;
            }
            if closing {
                if v > self.path[1] {
                    self.path.push(v);
                    return Step::Found;
                }
                continue;
            }
            // after v, `remaining` edges must lead back to s
            if self.dist[v] > remaining {
                self.cut = true;
                continue;
            }
            self.path.push(v);
            let mut next = self.blocked[k].clone();
            if k > 0 {
                let hr = self.adj.row(head);
                for i in 0..w {
                    next[i] |= hr[i];
                }
                next[head >> 6] |= 1 << (head & 63);
            }
            next[v >> 6] |= 1 << (v & 63);
            if self.blocked.len() <= k + 1 {
                self.blocked.push(next);
            } else {
                self.blocked[k + 1] = next;
            }
            match self.extend(k + 1, budget) {
                Step::Exhausted => {
                    self.path.pop();
                }
                other => return other,
            }
        }
        Step::Exhausted
    }
}

/// BFS distances from `s` inside the subgraph on vertices `≥ s`.
fn distances_from(adj: &AdjMatrix, s: usize) -> Vec<u32> {
    let n = adj.n();
    let mut dist = vec![u32::MAX; n];
    dist[s] = 0;
    let mut queue = vec![s];
    let mut i = 0;
    while i < queue.len() {
        let u = queue[i];
        i += 1;
        for v in adj.neighbors(u) {
            if v > s && dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push(v);
            }
        }
    }
    dist
}

/// Searches for an induced cycle of exactly `len` vertices.
/// Returns `(found, cut, out_of_budget)`, where `cut` records whether some
/// path was abandoned only because of the length bound.
fn holes_of_length(adj: &AdjMatrix, len: usize, budget: &mut Budget) -> (Option<Vec<usize>>, bool, bool) {
    let n = adj.n();
    let w = words_for(n);
    let mut cut = false;
    for s in 0..n {
        if adj.degree(s) < 2 {
            continue;
        }
        let dist = distances_from(adj, s);
        let mut base = vec![0u64; w];
        for v in 0..=s {
            base[v >> 6] |= 1 << (v & 63);
        }
        let mut search = Search { adj, w, len, path: vec![s], blocked: vec![base], dist, cut: false };
        let step = search.extend(0, budget);
        cut |= search.cut;
        match step {
            Step::Found => return (Some(search.path), cut, false),
            Step::OutOfBudget => return (None, cut, true),
            Step::Exhausted => {}
        }
    }
    (None, cut, false)
}

/// Odd holes with `min_len ≤ length ≤ max_len`, shortest first.
pub fn find_odd_hole(adj: &AdjMatrix, min_len: usize, max_len: usize, budget: &mut Budget) -> HoleSearch {
    let mut len = min_len.max(5) | 1;
    let top = max_len.min(adj.n());
    while len <= top {
        let (found, cut, oob) = holes_of_length(adj, len, budget);
        if let Some(h) = found {
            return HoleSearch::Found(h);
        }
        if oob {
            return HoleSearch::Budget(len);
        }
        if !cut {
            return HoleSearch::Absent;
        }
        len += 2;
    }
    if top >= adj.n() || max_len >= adj.n() {
        HoleSearch::Absent
    } else {
        HoleSearch::AbsentUpTo(max_len)
    }
}

/// Odd antiholes, found as holes of the complement; lengths start at 7
/// since a 5-antihole is a 5-hole.
pub fn find_odd_antihole(adj: &AdjMatrix, min_len: usize, max_len: usize, budget: &mut Budget) -> HoleSearch {
    find_odd_hole(&adj.complement(), min_len.max(7), max_len, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> AdjMatrix {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        AdjMatrix::from_edges(n, &edges)
    }

    #[test]
    fn finds_cycles() {
        let mut b = Budget::new(1 << 30);
        assert_eq!(find_odd_hole(&cycle(5), 5, 99, &mut b), HoleSearch::Found(vec![0, 1, 2, 3, 4]));
        assert_eq!(find_odd_hole(&cycle(9), 5, 99, &mut b), HoleSearch::Found((0..9).collect()));
        assert_eq!(find_odd_hole(&cycle(6), 5, 99, &mut b), HoleSearch::Absent);
        assert_eq!(find_odd_hole(&cycle(9), 5, 7, &mut b), HoleSearch::AbsentUpTo(7));
        let c7 = cycle(7).complement();
        assert!(matches!(find_odd_antihole(&c7, 7, 99, &mut b), HoleSearch::Found(v) if v.len() == 7));
        assert_eq!(find_odd_antihole(&cycle(5), 7, 99, &mut b), HoleSearch::Absent);
    }

    #[test]
    fn budget_is_reported() {
        let mut b = Budget::new(3);
        assert_eq!(find_odd_hole(&cycle(11), 5, 99, &mut b), HoleSearch::Budget(5));
    }

    #[test]
    fn chorded_cycle_is_not_a_hole() {
        let mut g = cycle(7);
        g.add_edge(0, 3);
        let mut b = Budget::new(1 << 30);
        // 0-3-4-5-6 is a 5-hole
        assert_eq!(find_odd_hole(&g, 5, 99, &mut b), HoleSearch::Found(vec![0, 3, 4, 5, 6]));
    }
}
