//! Generating sets for the matrix groups.

use std::sync::Arc;

use crate::gf::FieldSpec;
use crate::grp::{Element, Matrix};

/// An additive basis of GF(q) over GF(p): `1, x, …, x^(k-1)`.
pub fn additive_basis(f: &FieldSpec) -> Vec<u16> {
    (0..f.k()).map(|i| f.pow(if f.k() == 1 { 1 } else { f.x() }, i as i64)).collect()
}

/// `I + a·E_ij`.
pub fn elementary(f: &Arc<FieldSpec>, n: usize, i: usize, j: usize, a: u16) -> Matrix {
    let mut m = Matrix::identity(f, n);
    m.set(i, j, a);
    m
}

pub fn sl_generators(f: &Arc<FieldSpec>, n: usize) -> Vec<Element> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for &a in &additive_basis(f) {
                    out.push(Element::Mat(elementary(f, n, i, j, a)));
                }
            }
        }
    }
    out
}

pub fn gl_generators(f: &Arc<FieldSpec>, n: usize) -> Vec<Element> {
    let mut out = sl_generators(f, n);
    let mut d = Matrix::identity(f, n);
    d.set(0, 0, f.primitive());
    out.push(Element::Mat(d));
    out
}

/// `q^(n(n-1)/2) · Π_{i=2..n} (q^i − 1)`.
pub fn sl_order(n: u32, q: u64) -> u64 {
    let mut o = q.pow(n * (n - 1) / 2);
    for i in 2..=n {
        o *= q.pow(i) - 1;
    }
    o
}

/// Hermitian geometry on GF(q²)³ with Gram matrix `J11 = J23 = J32 = 1`.
pub struct Unitary {
    pub field: Arc<FieldSpec>,
    pub q: u32,
    /// `x ↦ x^q` is `frob_pow(x, qexp)`.
    qexp: u32,
}

impl Unitary {
    pub fn new(q: u32) -> crate::Result<Unitary> {
        let field = Arc::new(FieldSpec::of_order(q * q)?);
        let qexp = field.k() / 2;
        Ok(Unitary { field, q, qexp })
    }

    pub fn bar(&self, x: u16) -> u16 {
        self.field.frob_pow(x, self.qexp)
    }

    pub fn gram(&self) -> Matrix {
        Matrix::from_rows(&self.field, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]).unwrap()
    }

    /// `F(u, v) = uᵀ J v̄`.
    pub fn form(&self, u: &[u16], v: &[u16]) -> u16 {
        let f = &*self.field;
        let jv: Vec<u16> = self.gram().apply(&v.iter().map(|&x| self.bar(x)).collect::<Vec<_>>());
        u.iter().zip(&jv).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// `Aᵀ J Ā = J`.
    pub fn preserves_form(&self, a: &Matrix) -> bool {
        let abar = a.frob_pow(self.qexp);
        a.transpose().mul(&self.gram()).mul(&abar) == self.gram()
    }

    /// Nonzero `c` with `c + c̄ = 0`.
    pub fn trace_zero(&self) -> Vec<u16> {
        let f = &*self.field;
        (1..f.order() as u16).filter(|&c| f.add(c, self.bar(c)) == 0).collect()
    }

    /// `x ↦ x + c·F(x, v)·v`, matrix `I + c·v·(J v̄)ᵀ`.
    pub fn transvection(&self, v: &[u16], c: u16) -> Matrix {
        let f = &*self.field;
        let w = self.gram().apply(&v.iter().map(|&x| self.bar(x)).collect::<Vec<_>>());
        let mut m = Matrix::identity(&self.field, 3);
        for i in 0..3 {
            for j in 0..3 {
                let e = f.add(m.get(i, j), f.mul(c, f.mul(v[i], w[j])));
                m.set(i, j, e);
            }
        }
        m
    }

    /// `diag(ω^(q−1), ω, ω^(−q))` for a primitive `ω`.
    pub fn torus(&self) -> Matrix {
        let f = &*self.field;
        let w = f.primitive();
        let q = self.q as i64;
        let mut m = Matrix::identity(&self.field, 3);
        m.set(0, 0, f.pow(w, q - 1));
        m.set(1, 1, w);
        m.set(2, 2, f.pow(w, -q));
        m
    }

    pub fn generators(&self) -> Vec<Element> {
        let f = &*self.field;
        let mut points: Vec<Vec<u16>> = vec![vec![0, 1, 0], vec![0, 0, 1]];
        // isotropic (a, b, 1): N(a) + b + b̄ = 0
        for a in 1..f.order() as u16 {
            let norm = f.mul(a, self.bar(a));
            if let Some(b) = (0..f.order() as u16).find(|&b| f.add(norm, f.add(b, self.bar(b))) == 0) {
                points.push(vec![a, b, 1]);
                break;
            }
        }
        let cs = self.trace_zero();
        let mut out = Vec::new();
        for v in &points {
            for &c in &cs {
                out.push(Element::Mat(self.transvection(v, c)));
            }
        }
        out.push(Element::Mat(self.torus()));
        out.push(Element::Mat(self.weyl()));
        for t in additive_basis(f) {
            let norm = f.mul(t, self.bar(t));
            if let Some(r) = (0..f.order() as u16).find(|&r| f.add(norm, f.add(r, self.bar(r))) == 0) {
                out.push(Element::Mat(self.unipotent(t, r)));
            }
        }
        out
    }

    /// Fixes `e2`, sends `e1 ↦ e1 − t̄·e2` and `e3 ↦ e3 + t·e1 + r·e2`;
    /// unitary when `N(t) + r + r̄ = 0`.
    pub fn unipotent(&self, t: u16, r: u16) -> Matrix {
        let s = self.field.neg(self.bar(t));
        Matrix::from_rows(&self.field, &[&[1, 0, t], &[s, 1, r], &[0, 0, 1]]).unwrap()
    }

    /// `e1 ↦ −e1, e2 ↔ e3`.
    pub fn weyl(&self) -> Matrix {
        let m1 = self.field.neg(1);
        Matrix::from_rows(&self.field, &[&[m1, 0, 0], &[0, 0, 1], &[0, 1, 0]]).unwrap()
    }

    pub fn order(q: u64) -> u64 {
        q.pow(3) * (q.pow(3) + 1) * (q * q - 1)
    }
}

/// Symplectic geometry on GF(q)⁴ with hyperbolic basis `(e1, f1, e2, f2)`.
pub struct Symplectic {
    pub field: Arc<FieldSpec>,
}

impl Symplectic {
    pub fn new(q: u32) -> crate::Result<Symplectic> {
        Ok(Symplectic { field: Arc::new(FieldSpec::of_order(q)?) })
    }

    /// `Ω` with `F(e_i, f_i) = 1 = −F(f_i, e_i)`.
    pub fn gram(&self) -> Matrix {
        let m1 = self.field.neg(1);
        Matrix::from_rows(&self.field, &[&[0, 1, 0, 0], &[m1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, m1, 0]]).unwrap()
    }

    pub fn form(&self, u: &[u16], v: &[u16]) -> u16 {
        let f = &*self.field;
        let ov = self.gram().apply(v);
        u.iter().zip(&ov).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    pub fn preserves_form(&self, a: &Matrix) -> bool {
        a.transpose().mul(&self.gram()).mul(a) == self.gram()
    }

    /// `T_v: x ↦ x + c·F(x, v)·v`, matrix `I + c·v·(Ω v)ᵀ`.
    pub fn transvection(&self, v: &[u16], c: u16) -> Matrix {
        let f = &*self.field;
        let w = self.gram().apply(v);
        let mut m = Matrix::identity(&self.field, 4);
        for i in 0..4 {
            for j in 0..4 {
                let e = f.add(m.get(i, j), f.mul(c, f.mul(v[i], w[j])));
                m.set(i, j, e);
            }
        }
        m
    }

    /// Transvections at every nonzero 0/1 vector, for each basis scalar.
    pub fn generators(&self) -> Vec<Element> {
        let mut out = Vec::new();
        for bits in 1u16..16 {
            let v: Vec<u16> = (0..4).map(|i| (bits >> i) & 1).collect();
            for &c in &additive_basis(&self.field) {
                out.push(Element::Mat(self.transvection(&v, c)));
            }
        }
        out
    }

    pub fn order(q: u64) -> u64 {
        q.pow(4) * (q.pow(4) - 1) * (q * q - 1)
    }
}

/// Suzuki group over GF(q), `q = 2^(2a+1)`, with `θ: x ↦ x^(2^(a+1))`.
pub struct Suzuki {
    pub field: Arc<FieldSpec>,
    theta_exp: u32,
}

impl Suzuki {
    pub fn new(q: u32) -> crate::Result<Suzuki> {
        let field = Arc::new(FieldSpec::of_order(q)?);
        let a = (field.k() - 1) / 2;
        Ok(Suzuki { field, theta_exp: a + 1 })
    }

    pub fn theta(&self, x: u16) -> u16 {
        self.field.frob_pow(x, self.theta_exp)
    }

    /// Lower unitriangular `S(a, b)`.
    pub fn s(&self, a: u16, b: u16) -> Matrix {
        let f = &*self.field;
        let at = self.theta(a);
        let r3c0 = f.add(f.add(f.mul(f.mul(a, a), at), f.mul(a, b)), self.theta(b));
        let r3c1 = f.add(f.mul(a, at), b);
        Matrix::from_rows(&self.field, &[&[1, 0, 0, 0], &[a, 1, 0, 0], &[b, at, 1, 0], &[r3c0, r3c1, a, 1]]).unwrap()
    }

    /// `diag(λ^(1+2^a), λ^(2^a), λ^(−2^a), λ^(−1−2^a))`.
    pub fn d(&self, l: u16) -> Matrix {
        let f = &*self.field;
        let t = 1i64 << (self.theta_exp - 1);
        let mut m = Matrix::identity(&self.field, 4);
        for (i, e) in [1 + t, t, -t, -1 - t].into_iter().enumerate() {
            m.set(i, i, f.pow(l, e));
        }
        m
    }

    pub fn w(&self) -> Matrix {
        Matrix::from_rows(&self.field, &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]).unwrap()
    }

    pub fn generators(&self) -> Vec<Element> {
        let mut out: Vec<Element> = additive_basis(&self.field).into_iter().map(|a| Element::Mat(self.s(a, 0))).collect();
        out.push(Element::Mat(self.d(self.field.primitive())));
        out.push(Element::Mat(self.w()));
        out
    }

    pub fn order(q: u64) -> u64 {
        q * q * (q * q + 1) * (q - 1)
    }
}

/// `SL₂(8) ⋊ ⟨φ⟩` as semilinear maps.
pub fn aut_sl2_8_generators() -> Vec<Element> {
    let f = Arc::new(FieldSpec::of_order(8).unwrap());
    let mut out: Vec<Element> = sl_generators(&f, 2)
        .into_iter()
        .map(|g| match g {
            Element::Mat(m) => Element::Semilinear(m, 0),
            _ => unreachable!(),
        })
        .collect();
    out.push(Element::Semilinear(Matrix::identity(&f, 2), 1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_transvections_preserve_form() {
        for q in [2, 3, 4] {
            let u = Unitary::new(q).unwrap();
            for g in u.generators() {
                let m = g.as_matrix().unwrap();
                assert!(u.preserves_form(m), "q={q} {m:?}");
                assert_eq!(m.det(), 1);
            }
            assert_eq!(u.trace_zero().len(), q as usize - 1);
        }
    }

    #[test]
    fn symplectic_transvections_preserve_form() {
        for q in [2, 3, 5] {
            let s = Symplectic::new(q).unwrap();
            for g in s.generators() {
                assert!(s.preserves_form(g.as_matrix().unwrap()));
            }
        }
    }

    #[test]
    fn suzuki_parametrization_is_closed() {
        let sz = Suzuki::new(8).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                for (c, d) in [(1, 0), (2, 3), (7, 7)] {
                    let p = sz.s(a, b).mul(&sz.s(c, d));
                    assert_eq!(p, sz.s(p.get(1, 0), p.get(2, 0)));
                }
            }
        }
    }

    #[test]
    fn orders() {
        assert_eq!(sl_order(2, 4), 60);
        assert_eq!(sl_order(3, 4), 60480);
        assert_eq!(Unitary::order(3), 6048);
        assert_eq!(Symplectic::order(3), 51840);
        assert_eq!(Suzuki::order(8), 29120);
    }
}
