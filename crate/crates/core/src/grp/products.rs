use std::sync::Arc;

use super::element::{CosetContext, Element};
use super::{Group, DEFAULT_CAP};
use crate::error::{Error, Result};

/// A central quotient together with its projection map.
pub struct Quotient {
    pub group: Group,
    /// `proj[g]` = index in `group` of the coset of `g`.
    pub proj: Vec<u32>,
    /// Indices (in the parent group) of the subgroup factored out.
    pub kernel: Vec<u32>,
}

/// `G / Z0` for a central subgroup `Z0` given by indices into `g`.
pub fn central_quotient(g: &Group, z0: &[u32]) -> Result<Quotient> {
    let mut z: Vec<u32> = z0.to_vec();
    z.sort_unstable();
    z.dedup();
    if !z.contains(&0) {
        return Err(Error::NotCentral("subgroup must contain the identity".into()));
    }
    if let Some(&bad) = z.iter().find(|&&x| !g.is_central(x)) {
        return Err(Error::NotCentral(format!("{:?} is not central", g.element(bad))));
    }
    for &a in &z {
        for &b in &z {
            if z.binary_search(&g.mul(a, b)).is_err() {
                return Err(Error::NotCentral("not closed under multiplication".into()));
            }
        }
    }
    let ctx = CosetContext::new(z.iter().map(|&i| g.element(i).clone()).collect());
    let gens: Vec<Element> = if g.generators().is_empty() {
        vec![Element::coset(g.element(0), &ctx)]
    } else {
        g.generators().iter().map(|s| Element::coset(s, &ctx)).collect()
    };
    let q = Group::generate(&gens, DEFAULT_CAP)?;
    if q.order() * z.len() != g.order() {
        return Err(Error::NotCentral(format!("|G| = {}, |Z0| = {}, |Q| = {}", g.order(), z.len(), q.order())));
    }
    let proj = g
        .elements()
        .iter()
        .map(|e| q.try_index(&Element::coset(e, &ctx)))
        .collect::<Result<Vec<u32>>>()?;
    Ok(Quotient { group: q.with_name(format!("cq({})", g.name())), proj, kernel: z })
}

pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let (ea, eb) = (a.element(0), b.element(0));
    let mut gens: Vec<Element> = a.generators().iter().map(|x| Element::pair(x.clone(), eb.clone())).collect();
    gens.extend(b.generators().iter().map(|y| Element::pair(ea.clone(), y.clone())));
    if gens.is_empty() {
        gens.push(Element::pair(ea.clone(), eb.clone()));
    }
    let g = Group::generate(&gens, DEFAULT_CAP)?;
    debug_assert_eq!(g.order(), a.order() * b.order());
    Ok(g.with_name(format!("prod({},{})", a.name(), b.name())))
}

/// Checks that `iso` (indices of `q1` → indices of `q2`) is a bijective
/// homomorphism. Homomorphism is checked on all `(x, generator)` pairs,
/// which covers every product since each element is a word in generators.
pub(crate) fn check_iso(q1: &Group, q2: &Group, iso: &[u32]) -> Result<()> {
    if iso.len() != q1.order() || q1.order() != q2.order() {
        return Err(Error::BadAlignment("orders differ".into()));
    }
    let mut hit = vec![false; q2.order()];
    for &y in iso {
        if y as usize >= hit.len() || std::mem::replace(&mut hit[y as usize], true) {
            return Err(Error::BadAlignment("not a bijection".into()));
        }
    }
    let gens = q1.generator_indices();
    for x in 0..q1.order() as u32 {
        for &s in &gens {
            if iso[q1.mul(x, s) as usize] != q2.mul(iso[x as usize], iso[s as usize]) {
                return Err(Error::BadAlignment("not a homomorphism".into()));
            }
        }
    }
    Ok(())
}

/// Pairs `(a, b)` with `iso(qa(a)) = qb(b)`. The result is generated by lifts
/// of the generators of `a` together with `1 × ker qb`.
pub fn fiber_product(a: &Group, b: &Group, qa: &Quotient, qb: &Quotient, iso: &[u32]) -> Result<Group> {
    if qa.proj.len() != a.order() || qb.proj.len() != b.order() {
        return Err(Error::BadAlignment("quotient maps do not match their groups".into()));
    }
    check_iso(&qa.group, &qb.group, iso)?;
    let mut lift = vec![u32::MAX; qb.group.order()];
    for (bi, &img) in qb.proj.iter().enumerate() {
        if lift[img as usize] == u32::MAX {
            lift[img as usize] = bi as u32;
        }
    }
    let eb = b.element(0);
    let mut gens = Vec::new();
    for (s, x) in a.generators().iter().enumerate() {
        let ai = a.generator_indices()[s];
        let bi = lift[iso[qa.proj[ai as usize] as usize] as usize];
        gens.push(Element::pair(x.clone(), b.element(bi).clone()));
    }
    for &z in &qb.kernel {
        if z != 0 {
            gens.push(Element::pair(a.element(0).clone(), b.element(z).clone()));
        }
    }
    if gens.is_empty() {
        gens.push(Element::pair(a.element(0).clone(), eb.clone()));
    }
    let g = Group::generate(&gens, DEFAULT_CAP)?;
    let expect = a.order() * qb.kernel.len();
    if g.order() != expect {
        return Err(Error::BadAlignment(format!("fiber product has order {}, expected {expect}", g.order())));
    }
    Ok(g.with_name(format!("fib({},{})", a.name(), b.name())))
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<Group>();
    check::<Arc<CosetContext>>();
}
