//! Arithmetic in small finite fields GF(p^k).
//!
//! Elements are stored as integer codes `Σ c_i p^i` over the polynomial basis
//! `1, x, …, x^(k-1)` modulo a fixed monic irreducible polynomial. The code is
//! also the text encoding used in certificates.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest admissible field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Coefficients of the monic modulus, constant term first, length k+1.
    modulus: Vec<u32>,
    exp: Vec<u16>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.p, self.k, poly_string(&self.modulus))
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into `(p, k)`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn check_size(p: u32, k: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::BadModulus(0));
    }
    let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_ORDER);
    q.map(|q| q as u32).ok_or(Error::FieldTooLarge { p, k })
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| (a as u64 * x as u64) % p as u64 == 1).expect("nonzero residue")
}

/// Remainder of `a` modulo a monic-or-not nonzero polynomial `b` over GF(p).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * b[i] as u64) % p as u64) as u32;
        }
        r = trim(r);
        if dr == 0 {
            break;
        }
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
    let k = modulus.len() - 1;
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(k, 0);
    r
}

/// Irreducibility by trial division over every monic divisor of degree ≤ k/2.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = trim(modulus.to_vec());
    let k = (m.len() - 1) as u32;
    if k == 0 || m[k as usize] != 1 {
        return false;
    }
    for d in 1..=k / 2 {
        for low in 0..p.pow(d) {
            let mut div = digits(low, p, d);
            div.push(1);
            let r = poly_rem(&m, &div, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

fn poly_string(c: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &v) in c.iter().enumerate().rev() {
        if v == 0 {
            continue;
        }
        let coef = if v == 1 && i > 0 { String::new() } else { v.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl FieldSpec {
    /// GF(p^k) with the default modulus: the monic irreducible of degree k
    /// whose code `Σ c_i p^i` is smallest. For GF(8) this is x³+x+1.
    pub fn new(p: u32, k: u32) -> Result<FieldSpec> {
        let q = check_size(p, k)?;
        let modulus = (0..q)
            .map(|low| {
                let mut m = digits(low, p, k);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists");
        Self::with_modulus(p, k, modulus)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u32) -> Result<FieldSpec> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrime(q))?;
        Self::new(p, k)
    }

    pub fn with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Result<FieldSpec> {
        let q = check_size(p, k)?;
        if modulus.len() != k as usize + 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus(k));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::BadModulus(k));
        }
        let mut f = FieldSpec {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add: None,
            neg: Vec::new(),
        };
        f.neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, k).into_iter().map(|c| (p - c) % p).collect();
                undigits(&d, p) as u16
            })
            .collect();
        if p != 2 && q <= 256 {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = f.add_slow(a, b) as u16;
                }
            }
            f.add = Some(t);
        }
        f.build_log_tables();
        Ok(f)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (digits(a, self.p, self.k), digits(b, self.p, self.k));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        undigits(&s, self.p)
    }

    fn build_log_tables(&mut self) {
        let (p, k, q) = (self.p, self.k, self.q);
        if q == 2 {
            self.exp = vec![1];
            self.log = vec![0, 0];
            return;
        }
        for g in 2..q.max(3) {
            let gd = digits(g, p, k);
            let mut cur = digits(1, p, k);
            let mut exp = Vec::with_capacity(q as usize - 1);
            loop {
                exp.push(undigits(&cur, p) as u16);
                cur = poly_mulmod(&cur, &gd, &self.modulus, p);
                if undigits(&cur, p) == 1 {
                    break;
                }
                if exp.len() >= q as usize - 1 {
                    break;
                }
            }
            if exp.len() == q as usize - 1 {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        // GF(3): the loop range starts at 2 which is the generator.
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Generator of the multiplicative group used for the log tables.
    pub fn primitive(&self) -> u16 {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    /// The residue class of `x`, i.e. code `p` (or the integer `x` when k = 1).
    pub fn x(&self) -> u16 {
        if self.k == 1 {
            0
        } else {
            self.p as u16
        }
    }

    pub fn coeffs(&self, a: u16) -> Vec<u32> {
        digits(a as u32, self.p, self.k)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> u16 {
        let mut v = c.to_vec();
        v.resize(self.k as usize, 0);
        undigits(&v.iter().map(|x| x % self.p).collect::<Vec<_>>(), self.p) as u16
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u16 {
        n.rem_euclid(self.p as i64) as u16
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add {
            t[a as usize * self.q as usize + b as usize]
        } else {
            self.add_slow(a as u32, b as u32) as u16
        }
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = self.log[a as usize] + self.log[b as usize];
        self.exp[(if e >= n { e - n } else { e }) as usize]
    }

    pub fn inv(&self, a: u16) -> Option<u16> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u16, b: u16) -> Option<u16> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: u16, e: i64) -> u16 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as i64;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[l as usize]
    }

    /// `a^(p^i)`.
    pub fn frob_pow(&self, a: u16, i: u32) -> u16 {
        let i = i % self.k;
        self.pow(a, (self.p as i64).pow(i))
    }

    pub fn frob(&self, a: u16) -> u16 {
        self.frob_pow(a, 1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u16) -> u32 {
        let n = self.q - 1;
        let l = self.log[a as usize];
        n / gcd(n, l)
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A field element tagged with its field.
#[derive(Clone)]
pub struct Fel {
    field: Arc<FieldSpec>,
    code: u16,
}

impl fmt::Debug for Fel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl PartialEq for Fel {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && same_field(&self.field, &other.field)
    }
}
impl Eq for Fel {}

pub fn same_field(a: &Arc<FieldSpec>, b: &Arc<FieldSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Fel {
    pub fn new(field: &Arc<FieldSpec>, code: u16) -> Result<Fel> {
        if code as u32 >= field.q {
            return Err(Error::Format(format!("code {code} out of range for {field:?}")));
        }
        Ok(Fel { field: field.clone(), code })
    }

    pub fn zero(field: &Arc<FieldSpec>) -> Fel {
        Fel { field: field.clone(), code: 0 }
    }

    pub fn one(field: &Arc<FieldSpec>) -> Fel {
        Fel { field: field.clone(), code: 1 }
    }

    /// The class of `x` in the polynomial basis.
    pub fn generator(field: &Arc<FieldSpec>) -> Fel {
        Fel { field: field.clone(), code: field.x() }
    }

    pub fn code(&self) -> u16 {
        self.code
    }
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.code)
    }
    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &Fel) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn with(&self, code: u16) -> Fel {
        Fel { field: self.field.clone(), code }
    }

    pub fn add(&self, o: &Fel) -> Result<Fel> {
        self.check(o)?;
        Ok(self.with(self.field.add(self.code, o.code)))
    }
    pub fn sub(&self, o: &Fel) -> Result<Fel> {
        self.check(o)?;
        Ok(self.with(self.field.sub(self.code, o.code)))
    }
    pub fn mul(&self, o: &Fel) -> Result<Fel> {
        self.check(o)?;
        Ok(self.with(self.field.mul(self.code, o.code)))
    }
    pub fn neg(&self) -> Fel {
        self.with(self.field.neg(self.code))
    }
    pub fn inv(&self) -> Result<Fel> {
        self.field.inv(self.code).map(|c| self.with(c)).ok_or(Error::ZeroInverse)
    }
    pub fn pow(&self, e: i64) -> Fel {
        self.with(self.field.pow(self.code, e))
    }
    pub fn frobenius(&self) -> Fel {
        self.with(self.field.frob(self.code))
    }
}

impl fmt::Display for Fel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(f: &Arc<FieldSpec>) -> Vec<Fel> {
        (0..f.order()).map(|c| Fel::new(f, c as u16).unwrap()).collect()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(FieldSpec::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldSpec::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldSpec::new(3, 2).unwrap(), FieldSpec::new(3, 2).unwrap());
    }

    #[test]
    fn gf8_alpha_cubed_plus_alpha_is_one() {
        let f = Arc::new(FieldSpec::new(2, 3).unwrap());
        let a = Fel::generator(&f);
        assert_eq!(a.pow(3).add(&a).unwrap(), Fel::one(&f));
        assert_eq!(a.pow(3).code(), a.add(&Fel::one(&f)).unwrap().code());
        // α+1 encodes as 3
        assert_eq!(a.add(&Fel::one(&f)).unwrap().to_string(), "3");
    }

    #[test]
    fn gf4_inverse_of_alpha() {
        let f = Arc::new(FieldSpec::new(2, 2).unwrap());
        let a = Fel::generator(&f);
        let a1 = a.add(&Fel::one(&f)).unwrap();
        assert_eq!(a.mul(&a).unwrap(), a1);
        assert_eq!(a.inv().unwrap(), a1);
    }

    #[test]
    fn gf9_every_element_fixed_by_q_power() {
        let f = Arc::new(FieldSpec::new(3, 2).unwrap());
        for x in all(&f) {
            assert_eq!(x.pow(9), x);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (13, 1)] {
            let f = Arc::new(FieldSpec::new(p, k).unwrap());
            let els = all(&f);
            let one = Fel::one(&f);
            for a in &els {
                assert_eq!(a.pow(f.order() as i64), *a);
                if !a.is_zero() {
                    assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
                }
                for b in &els {
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    assert_eq!(a.add(b).unwrap().frobenius(), a.frobenius().add(&b.frobenius()).unwrap());
                    assert_eq!(a.mul(b).unwrap().frobenius(), a.frobenius().mul(&b.frobenius()).unwrap());
                    assert_eq!(a.sub(b).unwrap().add(b).unwrap(), *a);
                    for c in &els {
                        let l = a.mul(&b.add(c).unwrap()).unwrap();
                        let r = a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap();
                        assert_eq!(l, r);
                        assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
                        assert_eq!(a.add(b).unwrap().add(c).unwrap(), a.add(&b.add(c).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn sampled_large_field() {
        let f = Arc::new(FieldSpec::new(2, 16).unwrap());
        let one = Fel::one(&f);
        for c in (1..65535u32).step_by(997) {
            let a = Fel::new(&f, c as u16).unwrap();
            assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
            assert_eq!(a.pow(65536), a);
        }
        let g = Arc::new(FieldSpec::new(3, 5).unwrap());
        let a = Fel::new(&g, 100).unwrap();
        assert_eq!(a.pow(243), a);
    }

    #[test]
    fn errors() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldSpec::new(2, 17), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(FieldSpec::new(257, 2), Err(Error::FieldTooLarge { .. })));
        assert!(FieldSpec::with_modulus(2, 2, vec![1, 0, 1]).is_err());
        let f4 = Arc::new(FieldSpec::new(2, 2).unwrap());
        let f8 = Arc::new(FieldSpec::new(2, 3).unwrap());
        let a = Fel::one(&f4);
        let b = Fel::one(&f8);
        assert_eq!(a.add(&b).unwrap_err(), Error::MixedFields);
        assert_eq!(Fel::zero(&f4).inv().unwrap_err(), Error::ZeroInverse);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(13), Some((13, 1)));
    }
}
