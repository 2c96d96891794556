use super::products::check_iso;
use super::Group;

pub const DEFAULT_ALIGN_BUDGET: u64 = 10_000_000;

/// Searches for an isomorphism `q1 → q2`, returned as a map on indices.
///
/// A two-element generating set `(x, y)` of `q1` is chosen; `x` is sent to
/// one representative of each class with matching (order, class size) and
/// `y` to every element with matching fingerprint. Each candidate is
/// extended along a breadth-first word tree and then checked exhaustively.
/// `budget` bounds the total number of extension steps.
pub fn quotient_align(q1: &Group, q2: &Group, budget: u64) -> Option<Vec<u32>> {
    let n = q1.order();
    if n != q2.order() || q1.fingerprint() != q2.fingerprint() {
        return None;
    }
    if n == 1 {
        return Some(vec![0]);
    }
    let (x, y) = two_generators(q1)?;
    let key = |g: &Group, e: u32| (g.element_order(e), g.classes().size(g.classes().class_of(e)));
    let (kx, ky) = (key(q1, x), key(q1, y));
    let c2 = q2.classes();
    let xs: Vec<u32> = (0..c2.len()).map(|c| c2.rep(c)).filter(|&r| key(q2, r) == kx).collect();
    let ys: Vec<u32> = (0..n as u32).filter(|&e| key(q2, e) == ky).collect();
    let mut steps = 0u64;
    for &x2 in &xs {
        for &y2 in &ys {
            match extend(q1, q2, [x, y], [x2, y2], &mut steps, budget) {
                Extension::Found(map) => {
                    if check_iso(q1, q2, &map).is_ok() {
                        return Some(map);
                    }
                }
                Extension::Failed => {}
                Extension::OutOfBudget => return None,
            }
        }
    }
    None
}

enum Extension {
    Found(Vec<u32>),
    Failed,
    OutOfBudget,
}

fn extend(q1: &Group, q2: &Group, src: [u32; 2], dst: [u32; 2], steps: &mut u64, budget: u64) -> Extension {
    let n = q1.order();
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        i += 1;
        for k in 0..2 {
            *steps += 1;
            if *steps > budget {
                return Extension::OutOfBudget;
            }
            let b = q1.mul(a, src[k]);
            let img = q2.mul(map[a as usize], dst[k]);
            match map[b as usize] {
                u32::MAX => {
                    if used[img as usize] {
                        return Extension::Failed;
                    }
                    map[b as usize] = img;
                    used[img as usize] = true;
                    queue.push(b);
                }
                m if m != img => return Extension::Failed,
                _ => {}
            }
        }
    }
    if queue.len() == n {
        Extension::Found(map)
    } else {
        Extension::Failed
    }
}

/// First pair, in a fixed order, that generates the whole group. The first
/// element runs over class representatives of largest order first.
fn two_generators(g: &Group) -> Option<(u32, u32)> {
    let n = g.order();
    let cl = g.classes();
    let mut reps: Vec<u32> = (0..cl.len()).map(|c| cl.rep(c)).filter(|&r| r != 0).collect();
    reps.sort_by_key(|&r| (std::cmp::Reverse(g.element_order(r)), r));
    for &x in &reps {
        for y in 1..n as u32 {
            if g.subgroup_mask(&[x, y]).iter().filter(|&&b| b).count() == n {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{Element, Perm, DEFAULT_CAP};

    fn perm_group(n: usize, cycles: &[&[&[u16]]]) -> Group {
        let gens: Vec<Element> =
            cycles.iter().map(|c| Element::Perm(Perm::from_cycles(n, c).unwrap())).collect();
        Group::generate(&gens, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn a5_with_itself() {
        let a = perm_group(5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]]);
        let b = perm_group(5, &[&[&[1, 2], &[3, 4]], &[&[1, 3, 5]]]);
        let iso = quotient_align(&a, &b, DEFAULT_ALIGN_BUDGET).unwrap();
        assert!(check_iso(&a, &b, &iso).is_ok());
    }

    #[test]
    fn a5_vs_cyclic() {
        let a = perm_group(5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]]);
        // C60 inside S12 as a product of disjoint 3-, 4- and 5-cycles
        let c = perm_group(12, &[&[&[1, 2, 3], &[4, 5, 6, 7], &[8, 9, 10, 11, 12]]]);
        assert_eq!(c.order(), 60);
        assert!(quotient_align(&a, &c, DEFAULT_ALIGN_BUDGET).is_none());
    }
}
