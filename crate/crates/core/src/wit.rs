//! Explicit forbidden subgraphs and 4-chains, as tuples of group elements.
//!
//! Every constructor returns an [`ElementTuple`]; [`ElementTuple::verify`]
//! rebuilds the owning group and checks the claimed pattern from scratch.

use std::fmt;
use std::sync::Arc;

use crate::bits::AdjMatrix;
use crate::cg::CommGraph;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::grp::{Element, Group, Matrix, Perm};
use crate::named::classical::{Symplectic, Unitary};
use crate::named::{self, GroupSpec};
use crate::perf::{verify_witness, Witness, WitnessKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    Hole(usize),
    Antihole(usize),
    Chain4,
}

impl Pattern {
    pub fn len(self) -> usize {
        match self {
            Pattern::Hole(k) | Pattern::Antihole(k) => k,
            Pattern::Chain4 => 4,
        }
    }
    pub fn is_empty(self) -> bool {
        false
    }
    /// Certificate `kind` keyword.
    pub fn kind(self) -> &'static str {
        match self {
            Pattern::Hole(_) => "odd-hole",
            Pattern::Antihole(_) => "odd-antihole",
            Pattern::Chain4 => "four-chain",
        }
    }
    pub fn from_kind(kind: &str, len: usize) -> Result<Pattern> {
        match (kind, len) {
            ("odd-hole", k) => Ok(Pattern::Hole(k)),
            ("odd-antihole", k) => Ok(Pattern::Antihole(k)),
            ("four-chain", 4) => Ok(Pattern::Chain4),
            _ => Err(Error::Format(format!("unknown pattern {kind} of length {len}"))),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Hole(k) => write!(f, "hole-{k}"),
            Pattern::Antihole(k) => write!(f, "antihole-{k}"),
            Pattern::Chain4 => write!(f, "chain-4"),
        }
    }
}

/// Ordered elements of a named group with the induced subgraph they claim to form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementTuple {
    pub group: String,
    pub elements: Vec<Element>,
    pub pattern: Pattern,
}

/// Checks that the commutation graph `adj` on a tuple has shape `pattern`.
pub fn check_pattern(adj: &AdjMatrix, pattern: Pattern) -> bool {
    let n = adj.n();
    if n != pattern.len() {
        return false;
    }
    match pattern {
        Pattern::Hole(_) => verify_witness(adj, &Witness { kind: WitnessKind::OddHole, vertices: (0..n).collect() }),
        Pattern::Antihole(_) => {
            verify_witness(adj, &Witness { kind: WitnessKind::OddAntihole, vertices: (0..n).collect() })
        }
        Pattern::Chain4 => (0..4).all(|i| (i + 1..4).all(|j| adj.has(i, j) == (j == i + 1))),
    }
}

impl ElementTuple {
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Commutation graph on the tuple, by element arithmetic.
    pub fn commutation(&self) -> Result<AdjMatrix> {
        let n = self.elements.len();
        let mut adj = AdjMatrix::new(n);
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&self.elements[i], &self.elements[j]);
                if !a.compatible(b) {
                    return Err(Error::Incompatible(format!("{} and {}", a.kind(), b.kind())));
                }
                if a.commutes_with(b) {
                    adj.add_edge(i, j);
                }
            }
        }
        Ok(adj)
    }

    /// Checks membership, non-centrality, distinctness and the pattern
    /// inside an already built group.
    pub fn verify_in(&self, g: &Group) -> Result<()> {
        let fail = |why: String| Err(Error::WitnessFailed(format!("{} in {}: {why}", self.pattern, self.group)));
        let mut idx = Vec::with_capacity(self.len());
        for (i, e) in self.elements.iter().enumerate() {
            let Some(x) = g.index_of(e) else { return fail(format!("element {i} is not in the group")) };
            if g.is_central(x) {
                return fail(format!("element {i} is central"));
            }
            if idx.contains(&x) {
                return fail(format!("element {i} is repeated"));
            }
            idx.push(x);
        }
        let n = idx.len();
        let mut adj = AdjMatrix::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if g.commute(idx[i], idx[j]) {
                    adj.add_edge(i, j);
                }
            }
        }
        if !check_pattern(&adj, self.pattern) {
            return fail("commutation pattern does not match".into());
        }
        Ok(())
    }

    /// Rebuilds the owning group and runs [`Self::verify_in`]. Groups past
    /// the construction guards are handled only for `sl:n:q` and `sp:4:q`,
    /// where membership is a determinant or form check and the center is
    /// the scalars.
    pub fn verify(&self) -> Result<()> {
        let spec = GroupSpec::parse(&self.group)?;
        match named::check_guards(&spec) {
            Ok(()) => self.verify_in(&named::build(&spec)?),
            Err(guard) => self.verify_linear(&spec).map_err(|e| match e {
                Error::Precondition(_) => guard,
                e => e,
            }),
        }
    }

    fn verify_linear(&self, spec: &GroupSpec) -> Result<()> {
        let member: Box<dyn Fn(&Matrix) -> bool> = match *spec {
            GroupSpec::Sl(n, q) => Box::new(move |m: &Matrix| {
                m.n() == n as usize && m.field().order() == q && m.det() == 1
            }),
            GroupSpec::Sp4(q) => {
                let s = Symplectic::new(q)?;
                Box::new(move |m: &Matrix| m.n() == 4 && m.field().order() == q && s.preserves_form(m))
            }
            _ => return Err(Error::Precondition("no membership test".into())),
        };
        let fail = |why: String| Err(Error::WitnessFailed(format!("{} in {}: {why}", self.pattern, self.group)));
        for (i, e) in self.elements.iter().enumerate() {
            let Some(m) = e.as_matrix() else { return fail(format!("element {i} is not a matrix")) };
            if !member(m) {
                return fail(format!("element {i} is not in the group"));
            }
            if m.is_scalar() {
                return fail(format!("element {i} is central"));
            }
            if self.elements[..i].contains(e) {
                return fail(format!("element {i} is repeated"));
            }
        }
        if !check_pattern(&self.commutation()?, self.pattern) {
            return fail("commutation pattern does not match".into());
        }
        Ok(())
    }
}

const SYM5_CYCLE: [[u16; 2]; 5] = [[1, 5], [2, 3], [4, 5], [2, 1], [3, 4]];

fn perm(n: usize, cycles: &[&[u16]]) -> Element {
    Element::Perm(Perm::from_cycles(n, cycles).expect("valid cycle"))
}

fn mat(f: &Arc<FieldSpec>, rows: &[&[u16]]) -> Element {
    Element::Mat(Matrix::from_rows(f, rows).expect("valid matrix"))
}

fn field(q: u32) -> Result<Arc<FieldSpec>> {
    Ok(Arc::new(FieldSpec::of_order(q)?))
}

/// The transpositions (1 5), (2 1), (2 3), (3 4), (4 5) of Sym₅, listed in
/// cycle order: disjoint transpositions commute.
pub fn witness_sym5() -> ElementTuple {
    let elements = SYM5_CYCLE.iter().map(|c| perm(5, &[c])).collect();
    ElementTuple { group: "sym:5".into(), elements, pattern: Pattern::Hole(5) }
}

/// Seven 3-cycles of Aₙ, n ≥ 7, inducing a 7-hole.
pub fn witness_alt_3cycles(n: usize) -> Result<ElementTuple> {
    if n < 7 {
        return Err(Error::Precondition(format!("needs n >= 7, got {n}")));
    }
    let cycles: [[u16; 3]; 7] = [[1, 2, 3], [4, 5, 6], [1, 2, 7], [3, 4, 5], [1, 6, 7], [2, 3, 4], [5, 6, 7]];
    let elements = cycles.iter().map(|c| perm(n, &[c])).collect();
    Ok(ElementTuple { group: format!("alt:{n}"), elements, pattern: Pattern::Hole(7) })
}

/// Four elementary matrices and `diag(α, β, β)` in SL₃(q); `α`, `β` are field codes.
pub fn witness_sl3(q: u32, alpha: u16, beta: u16) -> Result<ElementTuple> {
    if q == 2 || q == 4 {
        return Err(Error::Precondition(format!("αβ² = 1 has no solution with α ≠ β over GF({q})")));
    }
    let f = field(q)?;
    let o = f.order() as u16;
    if alpha == 0 || beta == 0 || alpha >= o || beta >= o || alpha == beta {
        return Err(Error::Precondition("α and β must be distinct nonzero field elements".into()));
    }
    if f.mul(alpha, f.mul(beta, beta)) != 1 {
        return Err(Error::Precondition(format!("αβ² = {} but must be 1", f.mul(alpha, f.mul(beta, beta)))));
    }
    let elements = vec![
        mat(&f, &[&[1, 0, 0], &[0, 1, 0], &[0, 1, 1]]),
        mat(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
        mat(&f, &[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]),
        mat(&f, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]),
        mat(&f, &[&[alpha, 0, 0], &[0, beta, 0], &[0, 0, beta]]),
    ];
    Ok(ElementTuple { group: format!("sl:3:{q}"), elements, pattern: Pattern::Hole(5) })
}

/// The element of SU₃(q) attached to the line through `v`: a scaled
/// dilatation (scalar `a` on the line, `b` on its perpendicular) when the
/// line is non-singular, a transvection when it is singular.
pub fn unitary_line_element(u: &Unitary, v: &[u16]) -> Matrix {
    let f = &*u.field;
    let fv = u.form(v, v);
    if fv == 0 {
        return u.transvection(v, u.trace_zero()[0]);
    }
    let (a, b) = if u.q % 2 == 1 {
        (1, f.neg(1))
    } else {
        // b of norm 1 and order q + 1, a = b⁻²
        let b = f.pow(f.primitive(), u.q as i64 - 1);
        (f.pow(b, -2), b)
    };
    // b·I + (a − b)·v·(J v̄)ᵀ / F(v, v)
    let c = f.div(f.sub(a, b), fv).unwrap();
    let p = u.transvection(v, c);
    let mut m = p.sub(&Matrix::identity(&u.field, 3));
    for i in 0..3 {
        m.set(i, i, f.add(m.get(i, i), b));
    }
    m
}

/// Lines through v₁, v₂, v₁+v₂, v₁−v₃, v₃ under the form `J11 = J23 = J32 = 1`.
pub fn witness_su3(q: u32) -> Result<ElementTuple> {
    if !(3..=4).contains(&q) {
        return Err(Error::Precondition(format!("su3 witness needs q in 3..=4, got {q}")));
    }
    let u = Unitary::new(q)?;
    let f = &*u.field;
    let m1 = f.neg(1);
    let lines: [[u16; 3]; 5] = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 0, m1], [0, 0, 1]];
    let elements = lines.iter().map(|v| Element::Mat(unitary_line_element(&u, v))).collect();
    Ok(ElementTuple { group: format!("su:3:{q}"), elements, pattern: Pattern::Hole(5) })
}

/// Transvections at e₁, e₂, f₁, f₁+f₂, e₁−e₂+f₂ in Sp₄(q), basis order (e₁, f₁, e₂, f₂).
pub fn witness_sp4(q: u32) -> Result<ElementTuple> {
    if q.is_multiple_of(2) || q > 5 {
        return Err(Error::Precondition(format!("sp4 witness needs odd q <= 5, got {q}")));
    }
    let s = Symplectic::new(q)?;
    let m1 = s.field.neg(1);
    let vs: [[u16; 4]; 5] = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 1, 0, 1], [1, 0, m1, 1]];
    let elements = vs.iter().map(|v| Element::Mat(s.transvection(v, 1))).collect();
    Ok(ElementTuple { group: format!("sp:4:{q}"), elements, pattern: Pattern::Hole(5) })
}

fn sorted_by_encoding(g: &Group, idx: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut v: Vec<u32> = idx.collect();
    v.sort_by(|&a, &b| g.element(a).cmp(g.element(b)));
    v
}

/// An involution `t` and `g` of order (q+1)/2 with `[t, tᵍ] = 1` whose
/// conjugates `t, tᵍ, t^(g²), …` form a hole, searched over one involution
/// times one generator per cyclic subgroup of order (q+1)/2.
pub fn witness_psl2(q: u32) -> Result<ElementTuple> {
    if q.is_multiple_of(2) || q <= 9 || q % 4 != 1 {
        return Err(Error::Precondition(format!("psl2 witness needs odd q > 9 with q = 1 mod 4, got {q}")));
    }
    let spec = format!("psl:2:{q}");
    let g = named::build_str(&spec)?;
    let m = (q as usize).div_ceil(2);
    let n = g.order() as u32;
    let t = sorted_by_encoding(&g, (1..n).filter(|&x| g.element_order(x) == 2))[0];
    let mut seen = vec![false; n as usize];
    for x in sorted_by_encoding(&g, (1..n).filter(|&x| g.element_order(x) == m)) {
        if seen[x as usize] {
            continue;
        }
        let mut p = x;
        for k in 1..m {
            if crate::gf::gcd(k as u32, m as u32) == 1 {
                seen[p as usize] = true;
            }
            p = g.mul(p, x);
        }
        if !g.commute(t, g.conj(t, x)) {
            continue;
        }
        let mut orbit = vec![t];
        for _ in 1..m {
            orbit.push(g.conj(*orbit.last().unwrap(), x));
        }
        let tuple = ElementTuple {
            group: spec.clone(),
            elements: orbit.iter().map(|&i| g.element(i).clone()).collect(),
            pattern: Pattern::Hole(m),
        };
        if tuple.verify_in(&g).is_ok() {
            return Ok(tuple);
        }
    }
    Err(Error::WitnessFailed(format!("no involution/order-{m} pair gives a hole in {spec}")))
}

/// `Fˣ, Jˣ, J, F, K, Kʸ, Fʸ` in Aut(SL₂(8)), with `F` the Frobenius map.
pub fn witness_ree3() -> Result<ElementTuple> {
    let f = field(8)?;
    let a = (1..8u16).find(|&a| f.add(f.pow(a, 3), a) == 1).expect("GF(8) has a root of x³+x+1");
    let p = |e: i64| f.pow(a, e);
    let semi = |rows: &[&[u16]]| Element::Semilinear(Matrix::from_rows(&f, rows).unwrap(), 0);
    let j = semi(&[&[1, 0], &[1, 1]]);
    let k = semi(&[&[1, 1], &[0, 1]]);
    let x = semi(&[&[a, 0], &[p(6), p(6)]]);
    let y = semi(&[&[p(4), a], &[0, p(3)]]);
    let frob = Element::Semilinear(Matrix::identity(&f, 2), 1);
    let elements = vec![frob.conj_by(&x), j.conj_by(&x), j.clone(), frob.clone(), k.clone(), k.conj_by(&y), frob.conj_by(&y)];
    Ok(ElementTuple { group: "aut-sl2-8".into(), elements, pattern: Pattern::Hole(7) })
}

/// First non-commuting pair in ascending encoding order.
pub fn noncommuting_pair(g: &Group) -> Option<(u32, u32)> {
    let els = sorted_by_encoding(g, 0..g.order() as u32);
    for (i, &a) in els.iter().enumerate() {
        if let Some(&b) = els[i + 1..].iter().find(|&&b| !g.commute(a, b)) {
            return Some((a, b));
        }
    }
    None
}

fn need_pair(g: &Group) -> Result<(Element, Element)> {
    let (a, b) = noncommuting_pair(g).ok_or_else(|| Error::Precondition(format!("{} is abelian", g.name())))?;
    Ok((g.element(a).clone(), g.element(b).clone()))
}

/// `(1,l,m), (k′,1,1), (1,l′,1), (k,1,m′), (k,l,1)` in K × L × M.
pub fn witness_product(kg: &Group, lg: &Group, mg: &Group) -> Result<ElementTuple> {
    let (k, k2) = need_pair(kg)?;
    let (l, l2) = need_pair(lg)?;
    let (m, m2) = need_pair(mg)?;
    let (ik, il, im) = (k.identity_like(), l.identity_like(), m.identity_like());
    let t = |a: &Element, b: &Element, c: &Element| Element::pair(Element::pair(a.clone(), b.clone()), c.clone());
    let elements = vec![t(&ik, &l, &m), t(&k2, &il, &im), t(&ik, &l2, &im), t(&k, &il, &m2), t(&k, &l, &im)];
    let group = format!("prod({},{},{})", kg.name(), lg.name(), mg.name());
    Ok(ElementTuple { group, elements, pattern: Pattern::Hole(5) })
}

/// Checks that `chain` is an induced path of non-central elements in Γ₁(K).
pub fn verify_chain(kg: &Group, chain: &[Element]) -> Result<()> {
    let t = ElementTuple { group: kg.name().to_string(), elements: chain.to_vec(), pattern: Pattern::Chain4 };
    t.verify_in(kg)
}

/// `k₁, k₂ℓ, k₃ℓ, k₄, ℓ′` in K × L for a 4-chain `k₁ k₂ k₃ k₄` of K.
pub fn witness_chain_product(kg: &Group, chain: &[Element], lg: &Group) -> Result<ElementTuple> {
    if chain.len() != 4 {
        return Err(Error::Precondition("a 4-chain has four elements".into()));
    }
    verify_chain(kg, chain)?;
    let (l, l2) = need_pair(lg)?;
    let (ik, il) = (chain[0].identity_like(), l.identity_like());
    let p = |a: &Element, b: &Element| Element::pair(a.clone(), b.clone());
    let elements = vec![p(&chain[0], &il), p(&chain[1], &l), p(&chain[2], &l), p(&chain[3], &il), p(&ik, &l2)];
    let group = format!("prod({},{})", kg.name(), lg.name());
    Ok(ElementTuple { group, elements, pattern: Pattern::Hole(5) })
}

/// (1 5)(3 4), (1 5)(2 6), (1 2)(5 6), (1 2)(3 4) in A₆.
pub fn a6_chain() -> Vec<Element> {
    vec![
        perm(6, &[&[1, 5], &[3, 4]]),
        perm(6, &[&[1, 5], &[2, 6]]),
        perm(6, &[&[1, 2], &[5, 6]]),
        perm(6, &[&[1, 2], &[3, 4]]),
    ]
}

/// A 4-chain of involutions in SL₃(2), also usable inside SL₃(4).
pub fn sl32_chain(q: u32) -> Result<Vec<Element>> {
    let f = field(q)?;
    Ok(vec![
        mat(&f, &[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]),
        mat(&f, &[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]),
        mat(&f, &[&[1, 1, 1], &[0, 1, 0], &[0, 0, 1]]),
        mat(&f, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
    ])
}

/// First induced path `a–b–c–d` in ascending order of `(b, c, a, d)`.
pub fn find_4chain(g: &CommGraph) -> Option<[usize; 4]> {
    let adj = g.adj();
    let n = adj.n();
    let w = adj.words_per_row();
    for b in 0..n {
        let rb = adj.row(b);
        for c in adj.neighbors(b) {
            let rc = adj.row(c);
            // a ~ b, a ≁ c, a ≠ c
            let mut aset: Vec<u64> = (0..w).map(|i| rb[i] & !rc[i]).collect();
            aset[c >> 6] &= !(1 << (c & 63));
            for a in crate::bits::iter_words(&aset) {
                let ra = adj.row(a);
                let mut dset: Vec<u64> = (0..w).map(|i| rc[i] & !rb[i] & !ra[i]).collect();
                dset[b >> 6] &= !(1 << (b & 63));
                dset[a >> 6] &= !(1 << (a & 63));
                let d = crate::bits::iter_words(&dset).next();
                if let Some(d) = d {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// The alternating-form labelling behind the 5-cycle for covers of PSL₃(4):
/// on GF(4)² with `B(x, y) = x₁y₂ − x₂y₁` and hyperbolic pair `s, t`, the
/// vectors `s, αs, α⁻¹s + α⁻¹t, αt, t` have consecutive labels in {0, 1} and
/// all other labels in {α, α²}.
pub fn check_l34_label_model() -> bool {
    l34_label_model(false)
}

pub(crate) fn l34_label_model(swap: bool) -> bool {
    let f = FieldSpec::of_order(4).unwrap();
    let a = f.primitive();
    let ai = f.inv(a).unwrap();
    let form = |x: [u16; 2], y: [u16; 2]| f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
    let (mut s, mut t) = ([1u16, 0], [0u16, 1]);
    if swap {
        std::mem::swap(&mut s, &mut t);
    }
    if form(s, t) != 1 && form(t, s) != 1 {
        return false;
    }
    let sc = |c: u16, v: [u16; 2]| [f.mul(c, v[0]), f.mul(c, v[1])];
    let add = |u: [u16; 2], v: [u16; 2]| [f.add(u[0], v[0]), f.add(u[1], v[1])];
    let vs = [s, sc(a, s), add(sc(ai, s), sc(ai, t)), sc(a, t), t];
    let a2 = f.mul(a, a);
    (0..5).all(|i| {
        (i + 1..5).all(|j| {
            let b = form(vs[i], vs[j]);
            if j == i + 1 || (i == 0 && j == 4) {
                b == 0 || b == 1
            } else {
                b == a || b == a2
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym5_and_reversal() {
        let w = witness_sym5();
        w.verify().unwrap();
        let mut r = w.clone();
        r.elements.reverse();
        r.verify().unwrap();
        let mut s = w.clone();
        s.elements.swap(0, 1);
        assert!(s.verify().is_err());
    }

    #[test]
    fn sym5_inside_sym6() {
        let mut w = witness_sym5();
        w.group = "sym:6".into();
        w.elements = SYM5_CYCLE.iter().map(|c| perm(6, &[c])).collect();
        w.verify().unwrap();
    }

    #[test]
    fn preconditions() {
        assert!(witness_alt_3cycles(6).is_err());
        assert!(witness_sl3(4, 1, 2).is_err());
        assert!(witness_sl3(3, 1, 1).is_err());
        assert!(witness_sl3(5, 1, 2).is_err());
        assert!(witness_su3(2).is_err());
        assert!(witness_sp4(2).is_err());
        assert!(witness_psl2(11).is_err());
    }

    #[test]
    fn label_model() {
        assert!(check_l34_label_model());
        assert!(l34_label_model(true));
    }

    #[test]
    fn unitary_line_elements_are_special_unitary() {
        for q in [3, 4] {
            let u = Unitary::new(q).unwrap();
            for v in [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]] {
                let m = unitary_line_element(&u, &v);
                assert!(u.preserves_form(&m) && m.det() == 1 && !m.is_scalar(), "q={q} v={v:?}");
            }
        }
    }
}
