//! Fully enumerated finite groups.
//!
//! A [`Group`] stores every element together with the right-regular action
//! of its generators. All later queries (products, inverses, conjugation,
//! centralizers, classes) run on integer indices and never touch the
//! underlying matrices or permutations again.

mod align;
mod element;
mod products;

use std::sync::OnceLock;

use rustc_hash::FxHashMap;

pub use align::{quotient_align, DEFAULT_ALIGN_BUDGET};
pub use element::{CosetContext, Element, Matrix, Perm};
pub use products::{central_quotient, direct_product, fiber_product, Quotient};

use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 2_000_000;

/// Groups at most this large get a dense multiplication table.
pub const DENSE_LIMIT: usize = 2048;

/// Conjugacy classes of a group, with a conjugator for every element.
pub struct Classes {
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
    /// `conj[g] = x` with `g = x⁻¹ · rep · x`.
    conj: Vec<u32>,
    cent: Vec<OnceLock<Vec<u32>>>,
    abelian: Vec<OnceLock<bool>>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    /// Members of each class; the first member is the representative.
    pub fn members(&self) -> &[Vec<u32>] {
        &self.members
    }
    pub fn class_of(&self, g: u32) -> usize {
        self.class_of[g as usize] as usize
    }
    pub fn rep(&self, c: usize) -> u32 {
        self.members[c][0]
    }
    pub fn size(&self, c: usize) -> usize {
        self.members[c].len()
    }
    pub fn conjugator(&self, g: u32) -> u32 {
        self.conj[g as usize]
    }
}

pub struct Group {
    name: String,
    elements: Vec<Element>,
    index: FxHashMap<Box<[u8]>, u32>,
    gens: Vec<Element>,
    /// `right[x * ngens + s]` = index of `x · gen_s`.
    right: Vec<u32>,
    /// `left_inv[x * ngens + s]` = index of `gen_s⁻¹ · x`.
    left_inv: Vec<u32>,
    parent: Vec<u32>,
    pgen: Vec<u8>,
    inv: Vec<u32>,
    table: Option<Vec<u32>>,
    center: Vec<u32>,
    classes: OnceLock<Classes>,
}

impl Group {
    /// Breadth-first closure of `gens`, with generators sorted by encoding
    /// and right multiplication in generator order.
    pub fn generate(gens: &[Element], cap: usize) -> Result<Group> {
        let first = gens.first().ok_or_else(|| Error::Incompatible("no generators".into()))?;
        if let Some(bad) = gens.iter().find(|g| !g.compatible(first)) {
            return Err(Error::Incompatible(format!("{first:?} and {bad:?}")));
        }
        let mut keyed: Vec<(Vec<u8>, Element)> = gens.iter().map(|g| (g.encode(), g.clone())).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        keyed.retain(|(_, g)| !g.is_identity());
        if keyed.len() > 255 {
            return Err(Error::Incompatible("more than 255 generators".into()));
        }
        let gens: Vec<Element> = keyed.into_iter().map(|(_, g)| g).collect();
        let ng = gens.len();

        let id = first.identity_like();
        let mut elements = vec![id.clone()];
        let mut index = FxHashMap::default();
        index.insert(id.encode().into_boxed_slice(), 0u32);
        let mut parent = vec![u32::MAX];
        let mut pgen = vec![0u8];
        let mut right = Vec::new();
        let mut buf = Vec::with_capacity(64);
        let mut head = 0;
        while head < elements.len() {
            for (s, gen) in gens.iter().enumerate() {
                let h = elements[head].mul(gen);
                buf.clear();
                h.encode_into(&mut buf);
                let j = match index.get(buf.as_slice()) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len() as u32;
                        if elements.len() >= cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        index.insert(buf.clone().into_boxed_slice(), j);
                        elements.push(h);
                        parent.push(head as u32);
                        pgen.push(s as u8);
                        j
                    }
                };
                right.push(j);
            }
            head += 1;
        }

        let n = elements.len();
        let lookup = |e: &Element| -> u32 { index[e.encode().as_slice()] };
        let mut left_inv = vec![0u32; n * ng];
        for (s, gen) in gens.iter().enumerate() {
            left_inv[s] = lookup(&gen.inverse());
        }
        for j in 1..n {
            let (k, t) = (parent[j] as usize, pgen[j] as usize);
            for s in 0..ng {
                left_inv[j * ng + s] = right[left_inv[k * ng + s] as usize * ng + t];
            }
        }
        let mut inv = vec![0u32; n];
        for j in 1..n {
            let (k, t) = (parent[j] as usize, pgen[j] as usize);
            inv[j] = left_inv[inv[k] as usize * ng + t];
        }

        let mut g = Group {
            name: String::new(),
            elements,
            index,
            gens,
            right,
            left_inv,
            parent,
            pgen,
            inv,
            table: None,
            center: Vec::new(),
            classes: OnceLock::new(),
        };
        if n <= DENSE_LIMIT {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                t[i * n] = i as u32;
                for j in 1..n {
                    let k = g.parent[j] as usize;
                    t[i * n + j] = g.right[t[i * n + k] as usize * ng + g.pgen[j] as usize];
                }
            }
            g.table = Some(t);
        }
        g.center = (0..n as u32).filter(|&x| (0..ng).all(|s| g.conj_gen(x, s) == x)).collect();
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Group {
        self.name = name.into();
        self
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }
    pub fn element(&self, i: u32) -> &Element {
        &self.elements[i as usize]
    }
    pub fn generators(&self) -> &[Element] {
        &self.gens
    }
    pub fn generator_indices(&self) -> Vec<u32> {
        (0..self.gens.len()).map(|s| self.right[s]).collect()
    }
    pub fn has_dense_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn index_of(&self, e: &Element) -> Option<u32> {
        self.index.get(e.encode().as_slice()).copied()
    }

    pub fn try_index(&self, e: &Element) -> Result<u32> {
        self.index_of(e).ok_or(Error::NotInGroup)
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        if let Some(t) = &self.table {
            return t[i as usize * self.elements.len() + j as usize];
        }
        let mut word = [0u8; 512];
        let mut len = 0;
        let mut x = j as usize;
        while x != 0 {
            if len == word.len() {
                return self.index[self.elements[i as usize].mul(&self.elements[j as usize]).encode().as_slice()];
            }
            word[len] = self.pgen[x];
            len += 1;
            x = self.parent[x] as usize;
        }
        let ng = self.gens.len();
        let mut r = i as usize;
        for &s in word[..len].iter().rev() {
            r = self.right[r * ng + s as usize] as usize;
        }
        r as u32
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    /// `gen_s⁻¹ · x · gen_s`.
    #[inline]
    fn conj_gen(&self, x: u32, s: usize) -> u32 {
        let ng = self.gens.len();
        self.left_inv[self.right[x as usize * ng + s] as usize * ng + s]
    }

    /// `x⁻¹ · g · x`.
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.inv(x), self.mul(g, x))
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, g: u32) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn center(&self) -> &[u32] {
        &self.center
    }

    pub fn is_central(&self, g: u32) -> bool {
        self.center.binary_search(&g).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.center.len() == self.elements.len()
    }

    pub fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> Classes {
        let n = self.elements.len();
        let ng = self.gens.len();
        let mut class_of = vec![u32::MAX; n];
        let mut conj = vec![0u32; n];
        let mut members = Vec::new();
        for r in 0..n {
            if class_of[r] != u32::MAX {
                continue;
            }
            let c = members.len() as u32;
            class_of[r] = c;
            let mut orbit = vec![r as u32];
            let mut i = 0;
            while i < orbit.len() {
                let e = orbit[i];
                let x = conj[e as usize];
                for s in 0..ng {
                    let f = self.conj_gen(e, s);
                    if class_of[f as usize] == u32::MAX {
                        class_of[f as usize] = c;
                        conj[f as usize] = self.right[x as usize * ng + s];
                        orbit.push(f);
                    }
                }
                i += 1;
            }
            members.push(orbit);
        }
        let k = members.len();
        Classes {
            class_of,
            members,
            conj,
            cent: (0..k).map(|_| OnceLock::new()).collect(),
            abelian: (0..k).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Centralizer of a class representative, ascending.
    pub fn rep_centralizer(&self, c: usize) -> &[u32] {
        let cl = self.classes();
        cl.cent[c].get_or_init(|| {
            let r = cl.rep(c);
            (0..self.elements.len() as u32).filter(|&h| self.commute(r, h)).collect()
        })
    }

    /// Centralizer of `g`, ascending.
    pub fn centralizer(&self, g: u32) -> Vec<u32> {
        let cl = self.classes();
        let x = cl.conjugator(g);
        let mut out: Vec<u32> = self.rep_centralizer(cl.class_of(g)).iter().map(|&c| self.conj(c, x)).collect();
        out.sort_unstable();
        out
    }

    pub fn centralizer_of(&self, e: &Element) -> Result<Vec<u32>> {
        Ok(self.centralizer(self.try_index(e)?))
    }

    /// Whether `Cent(g)` is abelian; cached per conjugacy class.
    pub fn centralizer_is_abelian(&self, g: u32) -> bool {
        let cl = self.classes();
        let c = cl.class_of(g);
        *cl.abelian[c].get_or_init(|| {
            let cent = self.rep_centralizer(c);
            let gens = self.subgroup_generators(cent);
            gens.iter().enumerate().all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commute(a, b)))
        })
    }

    /// Greedy generating set of the subgroup whose elements are `members`.
    pub fn subgroup_generators(&self, members: &[u32]) -> Vec<u32> {
        let n = self.elements.len();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut sub = vec![0u32];
        let mut gens = Vec::new();
        for &m in members {
            if inside[m as usize] {
                continue;
            }
            gens.push(m);
            let mut i = 0;
            while i < sub.len() {
                let x = sub[i];
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        sub.push(y);
                    }
                }
                i += 1;
            }
        }
        gens
    }

    /// Subgroup generated by `gens`, as a membership mask.
    pub fn subgroup_mask(&self, gens: &[u32]) -> Vec<bool> {
        let mut inside = vec![false; self.elements.len()];
        inside[0] = true;
        let mut sub = vec![0u32];
        let mut i = 0;
        while i < sub.len() {
            let x = sub[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    sub.push(y);
                }
            }
            i += 1;
        }
        inside
    }

    /// Size of the normal closure of `seeds`. Stops early once the closure is
    /// known to be the whole group (any subgroup of index < 2).
    pub fn normal_closure_size(&self, seeds: &[u32]) -> usize {
        let n = self.elements.len();
        let ng = self.gens.len();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0u32];
        let mut gens: Vec<u32> = Vec::new();
        let mut pending: Vec<u32> = seeds.to_vec();
        loop {
            let before = gens.len();
            for c in pending.drain(..) {
                if !inside[c as usize] && !gens.contains(&c) {
                    gens.push(c);
                }
            }
            if gens.len() == before {
                return members.len();
            }
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        members.push(y);
                    }
                }
                i += 1;
                if 2 * members.len() > n {
                    return n;
                }
            }
            for &m in &members {
                for s in 0..ng {
                    let c = self.conj_gen(m, s);
                    if !inside[c as usize] {
                        pending.push(c);
                    }
                }
            }
            pending.sort_unstable();
            pending.dedup();
        }
    }

    pub fn is_perfect(&self) -> bool {
        let g = self.generator_indices();
        let mut comms = Vec::new();
        for (i, &a) in g.iter().enumerate() {
            for &b in &g[i + 1..] {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        self.normal_closure_size(&comms) == self.order()
    }

    pub fn is_simple(&self) -> bool {
        if self.order() == 1 {
            return false;
        }
        let cl = self.classes();
        (1..cl.len()).all(|c| self.normal_closure_size(&[cl.rep(c)]) == self.order())
    }

    /// Perfect, and every non-central element normally generates the group
    /// modulo the center, i.e. `G/Z(G)` is simple.
    pub fn is_quasisimple(&self) -> bool {
        if self.is_abelian() || !self.is_perfect() {
            return false;
        }
        let cl = self.classes();
        (0..cl.len()).all(|c| {
            let r = cl.rep(c);
            if self.is_central(r) {
                return true;
            }
            let mut seeds = vec![r];
            seeds.extend_from_slice(&self.center);
            self.normal_closure_size(&seeds) == self.order()
        })
    }

    /// Every non-central element has an abelian centralizer.
    pub fn is_ac_group(&self) -> bool {
        let cl = self.classes();
        (0..cl.len()).all(|c| {
            let r = cl.rep(c);
            self.is_central(r) || self.centralizer_is_abelian(r)
        })
    }

    /// Multiset of `(element order, class size)` over all elements, sorted.
    pub fn fingerprint(&self) -> Vec<(usize, usize)> {
        let cl = self.classes();
        let mut out = Vec::with_capacity(self.order());
        for c in 0..cl.len() {
            let f = (self.element_order(cl.rep(c)), cl.size(c));
            out.extend(std::iter::repeat_n(f, cl.size(c)));
        }
        out.sort_unstable();
        out
    }
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group({:?}, order {})", self.name, self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Group {
        let cyc: Vec<u16> = (1..=n as u16).collect();
        Group::generate(
            &[
                Element::Perm(Perm::from_cycles(n, &[&[1, 2]]).unwrap()),
                Element::Perm(Perm::from_cycles(n, &[&cyc]).unwrap()),
            ],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    #[test]
    fn sym5_basics() {
        let g = sym(5);
        assert_eq!(g.order(), 120);
        assert_eq!(g.center(), &[0]);
        assert_eq!(g.classes().len(), 7);
        assert!(!g.is_perfect());
        assert!(!g.is_ac_group());
        for i in 0..120 {
            assert_eq!(g.mul(i, g.inv(i)), 0);
        }
    }

    #[test]
    fn walk_agrees_with_elements() {
        let g = sym(7);
        assert!(!g.has_dense_table());
        for (i, j) in [(5u32, 17u32), (4000, 123), (5039, 5039), (0, 77)] {
            let e = g.element(i).mul(g.element(j));
            assert_eq!(g.mul(i, j), g.index_of(&e).unwrap());
        }
    }

    #[test]
    fn cap_exceeded() {
        let gens = sym(5).generators().to_vec();
        assert_eq!(Group::generate(&gens, 100).unwrap_err(), Error::CapExceeded(100));
    }

    #[test]
    fn class_equation_and_centralizers() {
        let g = sym(5);
        let cl = g.classes();
        assert_eq!(cl.members().iter().map(Vec::len).sum::<usize>(), 120);
        for i in 0..120u32 {
            let c = g.centralizer(i);
            assert_eq!(c.len() * cl.size(cl.class_of(i)), 120);
            assert!(c.iter().all(|&h| g.commute(i, h)));
            let x = cl.conjugator(i);
            assert_eq!(g.conj(cl.rep(cl.class_of(i)), x), i);
        }
        assert_eq!(g.centralizer(0).len(), 120);
    }
}
