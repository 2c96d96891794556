//! Named groups: the spec grammar and validated constructors.

pub mod classical;
mod spec;

use std::sync::Arc;

pub use spec::GroupSpec;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::grp::{
    central_quotient, direct_product, fiber_product, quotient_align, Element, Group, Matrix, Perm, DEFAULT_ALIGN_BUDGET,
    DEFAULT_CAP,
};
use classical::{aut_sl2_8_generators, gl_generators, sl_generators, sl_order, Suzuki, Symplectic, Unitary};

/// Two elements of SL₃(4) generating a perfect subgroup of order 1080 with
/// center of order 3, whose image in PSL₃(4) is isomorphic to A₆. Entries are
/// GF(4) codes, row-major (0, 1, α = 2, α + 1 = 3).
pub const THREE_A6_GENERATORS: [[u16; 9]; 2] = [[1, 2, 1, 0, 1, 0, 0, 0, 1], [0, 0, 3, 3, 0, 3, 1, 3, 1]];

/// Rejects parameters outside the construction limits.
pub fn check_guards(spec: &GroupSpec) -> Result<()> {
    use GroupSpec::*;
    let ok = match spec {
        Sym(n) => (1..=9).contains(n),
        Alt(n) => (3..=9).contains(n),
        Sl(n, q) | Psl(n, q) => match n {
            2 => *q <= 32,
            3 => *q <= 5,
            _ => false,
        },
        Gl(n, q) => match n {
            1 | 2 => *q <= 9,
            3 => *q <= 3,
            _ => false,
        },
        Pgl2(q) => *q <= 9,
        Su3(q) | Psu3(q) => *q <= 4,
        Sp4(q) | Psp4(q) => *q <= 3,
        Sz(q) => *q == 8,
        AutSl2_8 | ThreeA6 => true,
        Prod(parts) => return parts.iter().try_for_each(check_guards),
        Fib(a, b) => {
            check_guards(a)?;
            return check_guards(b);
        }
        Cq(a) => return check_guards(a),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Guard(spec.render()))
    }
}

fn validation(spec: &GroupSpec, reason: impl Into<String>) -> Error {
    Error::Validation { spec: spec.render(), reason: reason.into() }
}

fn expect_order(spec: &GroupSpec, g: &Group, order: u64) -> Result<()> {
    if g.order() as u64 != order {
        return Err(validation(spec, format!("order {} but expected {order}", g.order())));
    }
    Ok(())
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

fn field(q: u32) -> Result<Arc<FieldSpec>> {
    Ok(Arc::new(FieldSpec::of_order(q)?))
}

fn gen(gens: &[Element]) -> Result<Group> {
    Group::generate(gens, DEFAULT_CAP)
}

fn quotient_by_center(g: &Group) -> Result<Group> {
    Ok(central_quotient(g, g.center())?.group)
}

/// Builds and validates the group named by `spec`.
pub fn build(spec: &GroupSpec) -> Result<Group> {
    check_guards(spec)?;
    Ok(build_inner(spec)?.with_name(spec.render()))
}

pub fn build_str(spec: &str) -> Result<Group> {
    build(&GroupSpec::parse(spec)?)
}

fn build_inner(spec: &GroupSpec) -> Result<Group> {
    use GroupSpec::*;
    let g = match spec {
        Sym(n) => {
            let n = *n as usize;
            if n == 1 {
                return gen(&[Element::Perm(Perm::identity(1))]);
            }
            let cyc: Vec<u16> = (1..=n as u16).collect();
            let g = gen(&[
                Element::Perm(Perm::from_cycles(n, &[&[1, 2]])?),
                Element::Perm(Perm::from_cycles(n, &[&cyc])?),
            ])?;
            expect_order(spec, &g, factorial(n as u32))?;
            g
        }
        Alt(n) => {
            let n = *n as usize;
            let long: Vec<u16> = if n % 2 == 1 { (1..=n as u16).collect() } else { (2..=n as u16).collect() };
            let mut gens = vec![Element::Perm(Perm::from_cycles(n, &[&[1, 2, 3]])?)];
            if n > 3 {
                gens.push(Element::Perm(Perm::from_cycles(n, &[&long])?));
            }
            let g = gen(&gens)?;
            expect_order(spec, &g, factorial(n as u32) / 2)?;
            g
        }
        Sl(n, q) => {
            let g = gen(&sl_generators(&field(*q)?, *n as usize))?;
            expect_order(spec, &g, sl_order(*n, *q as u64))?;
            g
        }
        Gl(n, q) => {
            let g = gen(&gl_generators(&field(*q)?, *n as usize))?;
            expect_order(spec, &g, sl_order(*n, *q as u64) * (*q as u64 - 1))?;
            g
        }
        Psl(n, q) => {
            let cover = build_inner(&Sl(*n, *q))?;
            let z = cover.center().len() as u64;
            let g = quotient_by_center(&cover)?;
            expect_order(spec, &g, sl_order(*n, *q as u64) / z)?;
            g
        }
        Pgl2(q) => {
            let gl = build_inner(&Gl(2, *q))?;
            let g = quotient_by_center(&gl)?;
            expect_order(spec, &g, sl_order(2, *q as u64))?;
            g
        }
        Su3(q) => {
            let u = Unitary::new(*q)?;
            let gens = u.generators();
            for g in &gens {
                let m = g.as_matrix().unwrap();
                if !u.preserves_form(m) || m.det() != 1 {
                    return Err(validation(spec, "generator is not special unitary"));
                }
            }
            let g = gen(&gens)?;
            expect_order(spec, &g, Unitary::order(*q as u64))?;
            g
        }
        Psu3(q) => {
            if *q == 2 {
                return Err(Error::NotQuasisimple("psu:3:2 is not quasisimple (PSU₃(2) is solvable)".into()));
            }
            let cover = build_inner(&Su3(*q))?;
            let z = cover.center().len() as u64;
            let g = quotient_by_center(&cover)?;
            expect_order(spec, &g, Unitary::order(*q as u64) / z)?;
            g
        }
        Sp4(q) => {
            let s = Symplectic::new(*q)?;
            let g = gen(&s.generators())?;
            expect_order(spec, &g, Symplectic::order(*q as u64))?;
            g
        }
        Psp4(q) => {
            let cover = build_inner(&Sp4(*q))?;
            let z = cover.center().len() as u64;
            let g = quotient_by_center(&cover)?;
            expect_order(spec, &g, Symplectic::order(*q as u64) / z)?;
            g
        }
        Sz(q) => {
            let sz = Suzuki::new(*q)?;
            let g = gen(&sz.generators())?;
            expect_order(spec, &g, Suzuki::order(*q as u64))?;
            validate_suzuki(spec, &g, *q)?;
            g
        }
        AutSl2_8 => {
            let g = gen(&aut_sl2_8_generators())?;
            expect_order(spec, &g, 1512)?;
            let slice = g.elements().iter().filter(|e| matches!(e, Element::Semilinear(_, 0))).count();
            if slice != 504 {
                return Err(validation(spec, format!("frobenius-free slice has {slice} elements")));
            }
            g
        }
        ThreeA6 => {
            let g = gen(&three_a6_generators())?;
            expect_order(spec, &g, 1080)?;
            if g.center().len() != 3 || !g.is_perfect() {
                return Err(validation(spec, "expected a perfect group with center of order 3"));
            }
            g
        }
        Prod(parts) => {
            let mut acc = build_inner(&parts[0])?;
            for p in &parts[1..] {
                acc = direct_product(&acc, &build_inner(p)?)?;
            }
            acc
        }
        Fib(a, b) => {
            let (ga, gb) = (build_inner(a)?, build_inner(b)?);
            let qa = central_quotient(&ga, ga.center())?;
            let qb = central_quotient(&gb, gb.center())?;
            let iso = quotient_align(&qa.group, &qb.group, DEFAULT_ALIGN_BUDGET)
                .ok_or_else(|| validation(spec, "central quotients are not isomorphic (or the search budget ran out)"))?;
            fiber_product(&ga, &gb, &qa, &qb, &iso)?
        }
        Cq(a) => quotient_by_center(&build_inner(a)?)?,
    };
    Ok(g)
}

pub fn three_a6_generators() -> Vec<Element> {
    let f = field(4).unwrap();
    THREE_A6_GENERATORS.iter().map(|e| Element::Mat(Matrix::new(&f, 3, e.to_vec()).unwrap())).collect()
}

fn validate_suzuki(spec: &GroupSpec, g: &Group, q: u32) -> Result<()> {
    if !g.is_simple() {
        return Err(validation(spec, "not simple"));
    }
    let cl = g.classes();
    let involution_classes = (0..cl.len()).filter(|&c| g.element_order(cl.rep(c)) == 2).count();
    if involution_classes != 1 {
        return Err(validation(spec, format!("{involution_classes} involution classes")));
    }
    let r = (2.0 * q as f64).sqrt().round() as usize;
    let q = q as usize;
    let allowed = [4, q - 1, q + r + 1, q - r + 1];
    for c in 0..cl.len() {
        let o = g.element_order(cl.rep(c));
        if !allowed.iter().any(|&m| m % o == 0) {
            return Err(validation(spec, format!("element of order {o}")));
        }
    }
    Ok(())
}
