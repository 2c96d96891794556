use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{same_field, FieldSpec};

/// Square matrix over a small finite field; entries are field codes, row-major.
#[derive(Clone)]
pub struct Matrix {
    field: Arc<FieldSpec>,
    n: usize,
    entries: Vec<u16>,
}

impl Matrix {
    pub fn new(field: &Arc<FieldSpec>, n: usize, entries: Vec<u16>) -> Result<Matrix> {
        if entries.len() != n * n || entries.iter().any(|&e| e as u32 >= field.order()) {
            return Err(Error::Format(format!("bad {n}x{n} matrix over GF({})", field.order())));
        }
        Ok(Matrix { field: field.clone(), n, entries })
    }

    pub fn from_rows(field: &Arc<FieldSpec>, rows: &[&[u16]]) -> Result<Matrix> {
        let n = rows.len();
        Self::new(field, n, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn identity(field: &Arc<FieldSpec>, n: usize) -> Matrix {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Matrix { field: field.clone(), n, entries }
    }

    pub fn scalar(field: &Arc<FieldSpec>, n: usize, c: u16) -> Matrix {
        let mut m = Self::identity(field, n);
        for i in 0..n {
            m.entries[i * n + i] = c;
        }
        m
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn entries(&self) -> &[u16] {
        &self.entries
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.entries[i * self.n + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: u16) {
        self.entries[i * self.n + j] = v;
    }

    fn compatible(&self, o: &Matrix) -> bool {
        self.n == o.n && same_field(&self.field, &o.field)
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let (n, f) = (self.n, &*self.field);
        let mut e = vec![0u16; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = o.entries[k * n + j];
                    if b != 0 {
                        e[i * n + j] = f.add(e[i * n + j], f.mul(a, b));
                    }
                }
            }
        }
        Matrix { field: self.field.clone(), n, entries: e }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        let f = &*self.field;
        let entries = self.entries.iter().zip(&o.entries).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: self.field.clone(), n: self.n, entries }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        let f = &*self.field;
        let entries = self.entries.iter().zip(&o.entries).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { field: self.field.clone(), n: self.n, entries }
    }

    pub fn scale(&self, c: u16) -> Matrix {
        let f = &*self.field;
        let entries = self.entries.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { field: self.field.clone(), n: self.n, entries }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut e = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                e[j * n + i] = self.entries[i * n + j];
            }
        }
        Matrix { field: self.field.clone(), n, entries: e }
    }

    /// Entrywise `x ↦ x^(p^i)`.
    pub fn frob_pow(&self, i: u32) -> Matrix {
        if i.is_multiple_of(self.field.k()) {
            return self.clone();
        }
        let f = &*self.field;
        let entries = self.entries.iter().map(|&a| f.frob_pow(a, i)).collect();
        Matrix { field: self.field.clone(), n: self.n, entries }
    }

    /// Entrywise `x ↦ x^e`.
    pub fn map_pow(&self, e: i64) -> Matrix {
        let f = &*self.field;
        let entries = self.entries.iter().map(|&a| f.pow(a, e)).collect();
        Matrix { field: self.field.clone(), n: self.n, entries }
    }

    /// Gaussian elimination; returns `(rank, determinant)`.
    fn eliminate(&self) -> (usize, u16) {
        let (n, f) = (self.n, &*self.field);
        let mut a = self.entries.clone();
        let mut det = 1u16;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    a.swap(piv * n + j, rank * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[rank * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).unwrap();
            for r in rank + 1..n {
                let c = f.mul(a[r * n + col], pinv);
                if c != 0 {
                    for j in col..n {
                        a[r * n + j] = f.sub(a[r * n + j], f.mul(c, a[rank * n + j]));
                    }
                }
            }
            rank += 1;
        }
        (rank, if rank < n { 0 } else { det })
    }

    pub fn det(&self) -> u16 {
        self.eliminate().1
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let (n, f) = (self.n, &*self.field);
        let mut a = self.entries.clone();
        let mut inv = Self::identity(&self.field, n).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0).ok_or(Error::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let pinv = f.inv(a[col * n + col]).unwrap();
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                inv[col * n + j] = f.mul(inv[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let c = a[r * n + col];
                if c != 0 {
                    for j in 0..n {
                        a[r * n + j] = f.sub(a[r * n + j], f.mul(c, a[col * n + j]));
                        inv[r * n + j] = f.sub(inv[r * n + j], f.mul(c, inv[col * n + j]));
                    }
                }
            }
        }
        Ok(Matrix { field: self.field.clone(), n, entries: inv })
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        (0..n * n).all(|i| self.entries[i] == u16::from(i / n == i % n))
    }

    pub fn is_scalar(&self) -> bool {
        let n = self.n;
        let d = self.entries[0];
        (0..n * n).all(|i| self.entries[i] == if i / n == i % n { d } else { 0 })
    }

    pub fn apply(&self, v: &[u16]) -> Vec<u16> {
        let (n, f) = (self.n, &*self.field);
        (0..n)
            .map(|i| (0..n).fold(0, |acc, j| f.add(acc, f.mul(self.entries[i * n + j], v[j]))))
            .collect()
    }
}

impl PartialEq for Matrix {
    fn eq(&self, o: &Self) -> bool {
        self.compatible(o) && self.entries == o.entries
    }
}
impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Permutation of `{0, …, n-1}`; composition is right-to-left:
/// `(g·h)(x) = g(h(x))`.
#[derive(Clone, PartialEq, Eq)]
pub struct Perm(Vec<u16>);

impl Perm {
    /// From 0-based images.
    pub fn new(images: Vec<u16>) -> Result<Perm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= seen.len() || seen[i] {
                return Err(Error::Format(format!("not a bijection: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-based images.
    pub fn from_images1(images: &[u16]) -> Result<Perm> {
        if images.contains(&0) {
            return Err(Error::Format("images are 1-based".into()));
        }
        Self::new(images.iter().map(|&i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u16).collect())
    }

    /// Product of disjoint or overlapping cycles on 1-based points,
    /// composed right-to-left.
    pub fn from_cycles(n: usize, cycles: &[&[u16]]) -> Result<Perm> {
        let mut p = Perm::identity(n);
        for c in cycles.iter().rev() {
            let mut img: Vec<u16> = (0..n as u16).collect();
            for (i, &a) in c.iter().enumerate() {
                let b = c[(i + 1) % c.len()];
                if a == 0 || a as usize > n || b as usize > n {
                    return Err(Error::Format(format!("cycle point out of range in {c:?}")));
                }
                img[a as usize - 1] = b - 1;
            }
            let cyc = Perm::new(img)?;
            p = cyc.compose(&p);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
    pub fn images(&self) -> &[u16] {
        &self.0
    }
    pub fn images1(&self) -> Vec<u16> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn compose(&self, h: &Perm) -> Perm {
        Perm(h.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        let mut transpositions = 0;
        for s in 0..self.0.len() {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push((x + 1).to_string());
                x = self.0[x] as usize;
            }
            write!(f, "({})", cyc.join(" "))?;
            any = true;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// The central subgroup a coset is taken modulo.
pub struct CosetContext {
    pub(crate) id: u32,
    pub(crate) members: Vec<Element>,
}

impl CosetContext {
    pub fn new(members: Vec<Element>) -> Arc<CosetContext> {
        Arc::new(CosetContext { id: members.len() as u32, members })
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    /// Coset member with the smallest canonical encoding.
    pub fn canonical(&self, g: &Element) -> Element {
        let mut best: Option<(Vec<u8>, Element)> = None;
        for z in &self.members {
            let c = g.compose(z).expect("central elements are compatible");
            let enc = c.encode();
            if best.as_ref().is_none_or(|(b, _)| enc < *b) {
                best = Some((enc, c));
            }
        }
        best.map(|(_, e)| e).unwrap_or_else(|| g.clone())
    }
}

/// A group element. Equality and hashing go through the canonical encoding,
/// so two values are equal exactly when they denote the same element.
#[derive(Clone)]
pub enum Element {
    Perm(Perm),
    Mat(Matrix),
    /// `(A, i)` acting as `v ↦ A·φ^i(v)` with φ the Frobenius map.
    Semilinear(Matrix, u32),
    Pair(Box<Element>, Box<Element>),
    Coset(Box<Element>, Arc<CosetContext>),
}

impl Element {
    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn coset(rep: &Element, ctx: &Arc<CosetContext>) -> Element {
        Element::Coset(Box::new(ctx.canonical(rep)), ctx.clone())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Element::Perm(_) => "perm",
            Element::Mat(_) => "mat",
            Element::Semilinear(..) => "semi",
            Element::Pair(..) => "pair",
            Element::Coset(..) => "coset",
        }
    }

    /// Same variant and payload shape (degree, dimension, field).
    pub fn compatible(&self, o: &Element) -> bool {
        match (self, o) {
            (Element::Perm(a), Element::Perm(b)) => a.degree() == b.degree(),
            (Element::Mat(a), Element::Mat(b)) => a.compatible(b),
            (Element::Semilinear(a, _), Element::Semilinear(b, _)) => a.compatible(b),
            (Element::Pair(a1, a2), Element::Pair(b1, b2)) => a1.compatible(b1) && a2.compatible(b2),
            (Element::Coset(a, ca), Element::Coset(b, cb)) => Arc::ptr_eq(ca, cb) && a.compatible(b),
            _ => false,
        }
    }

    pub fn compose(&self, o: &Element) -> Result<Element> {
        Ok(match (self, o) {
            (Element::Perm(a), Element::Perm(b)) if a.degree() == b.degree() => Element::Perm(a.compose(b)),
            (Element::Mat(a), Element::Mat(b)) if a.compatible(b) => Element::Mat(a.mul(b)),
            (Element::Semilinear(a, i), Element::Semilinear(b, j)) if a.compatible(b) => {
                let k = a.field().k();
                Element::Semilinear(a.mul(&b.frob_pow(*i)), (i + j) % k)
            }
            (Element::Pair(a1, a2), Element::Pair(b1, b2)) => Element::pair(a1.compose(b1)?, a2.compose(b2)?),
            (Element::Coset(a, ca), Element::Coset(b, cb)) if Arc::ptr_eq(ca, cb) => {
                Element::Coset(Box::new(ca.canonical(&a.compose(b)?)), ca.clone())
            }
            _ => return Err(Error::Incompatible(format!("{} · {}", self.kind(), o.kind()))),
        })
    }

    /// Product of two elements known to be compatible.
    pub(crate) fn mul(&self, o: &Element) -> Element {
        self.compose(o).expect("elements of one group are compatible")
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::Perm(p) => Element::Perm(p.inverse()),
            Element::Mat(m) => Element::Mat(m.inverse().expect("group matrices are invertible")),
            Element::Semilinear(a, i) => {
                let k = a.field().k();
                let back = (k - i % k) % k;
                let ai = a.inverse().expect("group matrices are invertible");
                Element::Semilinear(ai.frob_pow(back), back)
            }
            Element::Pair(a, b) => Element::pair(a.inverse(), b.inverse()),
            Element::Coset(a, c) => Element::Coset(Box::new(c.canonical(&a.inverse())), c.clone()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Perm(p) => p.is_identity(),
            Element::Mat(m) => m.is_identity(),
            Element::Semilinear(m, i) => *i == 0 && m.is_identity(),
            Element::Pair(a, b) => a.is_identity() && b.is_identity(),
            Element::Coset(a, c) => c.members.iter().any(|z| z == a.as_ref()),
        }
    }

    /// The identity of the group this element lives in.
    pub fn identity_like(&self) -> Element {
        match self {
            Element::Perm(p) => Element::Perm(Perm::identity(p.degree())),
            Element::Mat(m) => Element::Mat(Matrix::identity(m.field(), m.n())),
            Element::Semilinear(m, _) => Element::Semilinear(Matrix::identity(m.field(), m.n()), 0),
            Element::Pair(a, b) => Element::pair(a.identity_like(), b.identity_like()),
            Element::Coset(a, c) => Element::coset(&a.identity_like(), c),
        }
    }

    /// `x⁻¹ · self · x`.
    pub fn conj_by(&self, x: &Element) -> Element {
        x.inverse().mul(self).mul(x)
    }

    pub fn commutes_with(&self, o: &Element) -> bool {
        self.mul(o) == o.mul(self)
    }

    pub fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// Canonical byte encoding: a tag byte followed by a fixed-width,
    /// big-endian payload, so byte order agrees with numeric order.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(32);
        self.encode_into(&mut out);
        out
    }

    pub fn encode_into(&self, out: &mut Vec<u8>) {
        match self {
            Element::Perm(p) => {
                out.push(1);
                out.extend_from_slice(&(p.degree() as u16).to_be_bytes());
                for &i in p.images() {
                    out.extend_from_slice(&i.to_be_bytes());
                }
            }
            Element::Mat(m) => encode_matrix(m, 2, out),
            Element::Semilinear(m, i) => {
                out.push(3);
                out.push(*i as u8);
                encode_matrix(m, 2, out);
            }
            Element::Pair(a, b) => {
                out.push(4);
                let at = out.len();
                out.extend_from_slice(&[0; 4]);
                a.encode_into(out);
                let len = (out.len() - at - 4) as u32;
                out[at..at + 4].copy_from_slice(&len.to_be_bytes());
                b.encode_into(out);
            }
            Element::Coset(a, c) => {
                out.push(5);
                out.extend_from_slice(&c.id.to_be_bytes());
                a.encode_into(out);
            }
        }
    }

    pub fn as_matrix(&self) -> Option<&Matrix> {
        match self {
            Element::Mat(m) | Element::Semilinear(m, _) => Some(m),
            Element::Coset(rep, _) => rep.as_matrix(),
            _ => None,
        }
    }
}

fn encode_matrix(m: &Matrix, tag: u8, out: &mut Vec<u8>) {
    out.push(tag);
    out.extend_from_slice(&m.field().order().to_be_bytes());
    out.push(m.n() as u8);
    for &e in m.entries() {
        out.extend_from_slice(&e.to_be_bytes());
    }
}

impl PartialEq for Element {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Element::Perm(a), Element::Perm(b)) => a == b,
            (Element::Mat(a), Element::Mat(b)) => a == b,
            (Element::Semilinear(a, i), Element::Semilinear(b, j)) => i == j && a == b,
            (Element::Pair(a1, a2), Element::Pair(b1, b2)) => a1 == b1 && a2 == b2,
            (Element::Coset(a, _), Element::Coset(b, _)) => a == b,
            _ => false,
        }
    }
}
impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.encode().hash(state);
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.encode().cmp(&other.encode())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "{p:?}"),
            Element::Mat(m) => write!(f, "{m:?}"),
            Element::Semilinear(m, i) => write!(f, "({m:?}, φ^{i})"),
            Element::Pair(a, b) => write!(f, "({a:?}, {b:?})"),
            Element::Coset(a, _) => write!(f, "{a:?}Z"),
        }
    }
}
