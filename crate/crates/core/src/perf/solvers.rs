//! Exact clique and colouring numbers for small graphs.

use crate::bits::AdjMatrix;
use crate::error::{Error, Result};

pub const CLIQUE_GUARD: usize = 2000;
pub const CHROMATIC_GUARD: usize = 200;
pub const BRUTEFORCE_GUARD: usize = 14;

fn first(s: &[u64]) -> Option<usize> {
    s.iter().position(|&w| w != 0).map(|i| i * 64 + s[i].trailing_zeros() as usize)
}

fn popcount(s: &[u64]) -> usize {
    s.iter().map(|w| w.count_ones() as usize).sum()
}

/// Greedy colouring of `cand`; returns vertices in colour-class order with
/// their colour numbers (1-based), used as the branch-and-bound estimate.
fn colour_order(adj: &AdjMatrix, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let mut left = cand.to_vec();
    let mut order = Vec::with_capacity(popcount(cand));
    let mut colours = Vec::with_capacity(order.capacity());
    let mut c = 0;
    while popcount(&left) > 0 {
        c += 1;
        let mut q = left.clone();
        while let Some(v) = first(&q) {
            order.push(v);
            colours.push(c);
            left[v >> 6] &= !(1 << (v & 63));
            q[v >> 6] &= !(1 << (v & 63));
            for (x, r) in q.iter_mut().zip(adj.row(v)) {
                *x &= !r;
            }
        }
    }
    (order, colours)
}

fn expand(adj: &AdjMatrix, cur: &mut Vec<usize>, cand: Vec<u64>, best: &mut Vec<usize>) {
    let (order, colours) = colour_order(adj, &cand);
    let mut cand = cand;
    for i in (0..order.len()).rev() {
        if cur.len() + colours[i] <= best.len() {
            return;
        }
        let v = order[i];
        cur.push(v);
        let next: Vec<u64> = cand.iter().zip(adj.row(v)).map(|(a, b)| a & b).collect();
        if popcount(&next) == 0 {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            expand(adj, cur, next, best);
        }
        cur.pop();
        cand[v >> 6] &= !(1 << (v & 63));
    }
}

/// A maximum clique, found by branch and bound with colouring bounds.
pub fn max_clique(adj: &AdjMatrix) -> Result<Vec<usize>> {
    let n = adj.n();
    if n > CLIQUE_GUARD {
        return Err(Error::GraphGuard(format!("clique number needs at most {CLIQUE_GUARD} vertices, got {n}")));
    }
    let mut all = vec![0u64; adj.words_per_row()];
    for v in 0..n {
        all[v >> 6] |= 1 << (v & 63);
    }
    let mut best = Vec::new();
    if n > 0 {
        expand(adj, &mut Vec::new(), all, &mut best);
    }
    best.sort_unstable();
    Ok(best)
}

pub fn clique_number(adj: &AdjMatrix) -> Result<usize> {
    Ok(max_clique(adj)?.len())
}

fn dsatur(adj: &AdjMatrix) -> Vec<usize> {
    let n = adj.n();
    let mut colour = vec![usize::MAX; n];
    let mut sat: Vec<rustc_hash::FxHashSet<usize>> = vec![Default::default(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v] == usize::MAX)
            .max_by_key(|&v| (sat[v].len(), adj.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..).find(|c| !sat[v].contains(c)).unwrap();
        colour[v] = c;
        for u in adj.neighbors(v) {
            sat[u].insert(c);
        }
    }
    colour
}

fn colourable(adj: &AdjMatrix, order: &[usize], k: usize, colour: &mut [usize], i: usize) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    let used = order[..i].iter().map(|&u| colour[u]).max().map_or(0, |m| m + 1);
    // symmetry break: never open more than one new colour
    for c in 0..k.min(used + 1) {
        if adj.neighbors(v).all(|u| colour[u] != c) {
            colour[v] = c;
            if colourable(adj, order, k, colour, i + 1) {
                return true;
            }
        }
    }
    colour[v] = usize::MAX;
    false
}

/// Exact chromatic number: ω and DSATUR give the bracket, backtracking closes it.
pub fn chromatic_number(adj: &AdjMatrix) -> Result<usize> {
    let n = adj.n();
    if n > CHROMATIC_GUARD {
        return Err(Error::GraphGuard(format!("chromatic number needs at most {CHROMATIC_GUARD} vertices, got {n}")));
    }
    if n == 0 {
        return Ok(0);
    }
    let clique = max_clique(adj)?;
    let upper = dsatur(adj).into_iter().max().unwrap() + 1;
    // clique first, then by decreasing degree
    let mut order = clique.clone();
    let mut rest: Vec<usize> = (0..n).filter(|v| !clique.contains(v)).collect();
    rest.sort_by_key(|&v| (std::cmp::Reverse(adj.degree(v)), v));
    order.extend(rest);
    for k in clique.len()..upper {
        let mut colour = vec![usize::MAX; n];
        if colourable(adj, &order, k, &mut colour, 0) {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Perfection straight from the definition: ω = χ on every induced subgraph.
/// Only for tiny graphs; used to cross-check [`super::is_berge`].
pub fn is_perfect_bruteforce(adj: &AdjMatrix) -> Result<bool> {
    let n = adj.n();
    if n > BRUTEFORCE_GUARD {
        return Err(Error::GraphGuard(format!("brute force needs at most {BRUTEFORCE_GUARD} vertices, got {n}")));
    }
    let full = 1usize << n;
    let nb: Vec<usize> = (0..n).map(|v| adj.neighbors(v).fold(0, |m, u| m | 1 << u)).collect();
    // omega[S] by DP: drop the lowest vertex or take it with its neighbours
    let mut omega = vec![0u8; full];
    let mut independent = vec![false; full];
    independent[0] = true;
    for s in 1..full {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        omega[s] = omega[rest].max(1 + omega[rest & nb[v]]);
        independent[s] = independent[rest] && rest & nb[v] == 0;
    }
    // chi[S] = 1 + min over independent I ∋ lowest(S) of chi[S \ I]
    let mut chi = vec![0u8; full];
    for s in 1..full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut best = u8::MAX;
        let mut t = rest;
        loop {
            let i = t | low;
            if independent[i] {
                best = best.min(1 + chi[s ^ i]);
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        chi[s] = best;
        if chi[s] != omega[s] {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> AdjMatrix {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        AdjMatrix::from_edges(n, &edges)
    }

    #[test]
    fn cycles() {
        assert_eq!(clique_number(&cycle(5)).unwrap(), 2);
        assert_eq!(chromatic_number(&cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(6)).unwrap(), 2);
        assert_eq!(clique_number(&cycle(7).complement()).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(7).complement()).unwrap(), 4);
        assert!(!is_perfect_bruteforce(&cycle(5)).unwrap());
        assert!(is_perfect_bruteforce(&cycle(6)).unwrap());
    }

    #[test]
    fn petersen() {
        let mut e = vec![];
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        let p = AdjMatrix::from_edges(10, &e);
        assert_eq!(clique_number(&p).unwrap(), 2);
        assert_eq!(chromatic_number(&p).unwrap(), 3);
        assert_eq!(chromatic_number(&p.complement()).unwrap(), 5);
        assert!(!is_perfect_bruteforce(&p).unwrap());
    }

    #[test]
    fn guards() {
        assert!(chromatic_number(&AdjMatrix::new(201)).is_err());
        assert!(is_perfect_bruteforce(&AdjMatrix::new(15)).is_err());
        assert_eq!(clique_number(&AdjMatrix::new(0)).unwrap(), 0);
        assert_eq!(chromatic_number(&AdjMatrix::new(3)).unwrap(), 1);
    }
}
