use pcg::grp::{central_quotient, fiber_product, quotient_align, Element, Group, Perm, DEFAULT_ALIGN_BUDGET};
use pcg::named::build_str;

fn perm(n: usize, cycles: &[&[u16]]) -> Element {
    Element::Perm(Perm::from_cycles(n, cycles).unwrap())
}

/// Dihedral of order 2m: non-abelian, generated by two involutions.
fn is_dihedral(g: &Group, members: &[u32]) -> bool {
    let m = members.len() / 2;
    let cyclic = members.iter().any(|&x| g.element_order(x) == m);
    let involutions = members.iter().filter(|&&x| g.element_order(x) == 2).count();
    cyclic && involutions == m + if m.is_multiple_of(2) { 1 } else { 0 }
}

#[test]
fn orders_of_large_groups() {
    for (s, o, z) in [
        ("sl:3:4", 60480, 3),
        ("psl:3:4", 20160, 1),
        ("su:3:3", 6048, 1),
        ("su:3:4", 62400, 1),
        ("psu:3:3", 6048, 1),
        ("sp:4:3", 51840, 2),
        ("psp:4:3", 25920, 1),
        ("sz:8", 29120, 1),
        ("sl:2:32", 32736, 1),
        ("aut-sl2-8", 1512, 1),
        ("3a6", 1080, 3),
        ("pgl:2:9", 720, 1),
    ] {
        let g = build_str(s).unwrap();
        assert_eq!((g.order(), g.center().len()), (o, z), "{s}");
    }
}

#[test]
fn suzuki_has_one_involution_class() {
    let g = build_str("sz:8").unwrap();
    let cl = g.classes();
    let inv: Vec<usize> = (0..cl.len()).filter(|&c| g.element_order(cl.rep(c)) == 2).collect();
    assert_eq!(inv.len(), 1);
    // 29120 / |C(t)| with C(t) the Sylow 2-subgroup of order 64
    assert_eq!(cl.size(inv[0]), 455);
    assert!(!g.is_ac_group());
}

#[test]
fn psl34_is_simple() {
    assert!(build_str("psl:3:4").unwrap().is_simple());
}

#[test]
fn a6_involution_centralizer_is_d8() {
    let g = build_str("alt:6").unwrap();
    let t = g.try_index(&perm(6, &[&[1, 2], &[3, 4]])).unwrap();
    let c = g.centralizer(t);
    assert_eq!(c.len(), 8);
    assert!(!g.centralizer_is_abelian(t));
    assert!(is_dihedral(&g, &c));
    let cl = g.classes();
    assert_eq!(cl.size(cl.class_of(t)), 45);
}

#[test]
fn psl2_13_involution_centralizer_is_d12() {
    let g = build_str("psl:2:13").unwrap();
    let t = (1..g.order() as u32).find(|&x| g.element_order(x) == 2).unwrap();
    let c = g.centralizer(t);
    assert_eq!(c.len(), 12);
    assert!(is_dihedral(&g, &c));
}

#[test]
fn class_counts() {
    let g = build_str("sym:5").unwrap();
    assert_eq!(g.classes().len(), 7);
    let cq = build_str("sl:3:4").unwrap();
    let sizes: usize = cq.classes().members().iter().map(Vec::len).sum();
    assert_eq!(sizes, 60480);
}

#[test]
fn quotients() {
    let sl = build_str("sl:2:9").unwrap();
    let q = central_quotient(&sl, sl.center()).unwrap();
    assert_eq!(q.group.order(), 360);
    let triv = central_quotient(&sl, &[0]).unwrap();
    assert_eq!(triv.group.order(), 720);
    let a5 = build_str("alt:5").unwrap();
    assert!(central_quotient(&a5, &[0, 1]).is_err());
}

#[test]
fn psl2_9_aligns_with_a6() {
    let a6 = build_str("alt:6").unwrap();
    let p = build_str("psl:2:9").unwrap();
    assert!(quotient_align(&p, &a6, DEFAULT_ALIGN_BUDGET).is_some());
    assert!(quotient_align(&a6, &build_str("alt:5").unwrap(), DEFAULT_ALIGN_BUDGET).is_none());
}

#[test]
fn fiber_of_sl25_with_itself() {
    let a = build_str("sl:2:5").unwrap();
    let q = central_quotient(&a, a.center()).unwrap();
    let id: Vec<u32> = (0..q.group.order() as u32).collect();
    let f = fiber_product(&a, &a, &q, &q, &id).unwrap();
    assert_eq!(f.order(), 240);
    assert_eq!(f.center().len(), 4);
}

#[test]
fn fiber_over_trivial_quotient_is_direct_product() {
    let a = build_str("alt:3").unwrap();
    let b = build_str("sym:2").unwrap();
    let all_a: Vec<u32> = (0..3).collect();
    let qa = central_quotient(&a, &all_a).unwrap();
    let qb = central_quotient(&b, &[0, 1]).unwrap();
    assert_eq!(qa.group.order(), 1);
    let f = fiber_product(&a, &b, &qa, &qb, &[0]).unwrap();
    assert_eq!(f.order(), 6);
    assert!(f.is_abelian());
}

#[test]
fn six_a6() {
    let g = build_str("fib(3a6,sl:2:9)").unwrap();
    assert_eq!(g.order(), 2160);
    let z = g.center();
    assert_eq!(z.len(), 6);
    assert!(z.iter().any(|&x| g.element_order(x) == 6));
    assert!(g.is_perfect());
    assert!(g.is_quasisimple());
    assert!(g.is_ac_group());
}

#[test]
fn quasisimplicity_table() {
    for (s, qs) in [
        ("alt:5", true),
        ("alt:6", true),
        ("sl:2:9", true),
        ("sl:3:2", true),
        ("3a6", true),
        ("sz:8", true),
        ("psl:2:11", true),
        ("sym:5", false),
        ("pgl:2:5", false),
        ("aut-sl2-8", false),
        ("prod(sym:3,sym:3,sym:3)", false),
        ("sl:2:3", false),
    ] {
        assert_eq!(build_str(s).unwrap().is_quasisimple(), qs, "{s}");
    }
}

#[test]
fn ac_groups() {
    for (s, ac) in [("sl:2:9", true), ("sl:2:8", true), ("alt:6", false), ("3a6", false), ("sl:3:2", false)] {
        assert_eq!(build_str(s).unwrap().is_ac_group(), ac, "{s}");
    }
}

#[test]
fn regeneration_is_deterministic() {
    let a = build_str("psl:2:11").unwrap();
    let b = build_str("psl:2:11").unwrap();
    assert!(a.elements().iter().zip(b.elements()).all(|(x, y)| x.encode() == y.encode()));
}
