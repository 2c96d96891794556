use pcg::bits::AdjMatrix;
use pcg::cg::{build_graph, build_reduced, collapse_twins, read_dimacs, write_dimacs, CommGraph};
use pcg::classify::{analyze, AnalyzeOptions, SUITE};
use pcg::cli::cache::GraphCache;
use pcg::grp::Group;
use pcg::named::{build_str, GroupSpec};
use pcg::perf::{is_berge, BergeOptions, Outcome};

fn verdict(g: &CommGraph) -> Option<bool> {
    let opts = BergeOptions { labels: g.flag_labels(), ..Default::default() };
    is_berge(g.adj(), &opts).outcome.is_berge()
}

fn suite_groups(max_order: usize) -> Vec<(String, Group)> {
    SUITE
        .iter()
        .map(|(s, _)| (s.to_string(), build_str(s).unwrap()))
        .filter(|(_, g)| g.order() <= max_order)
        .collect()
}

/// Centralizer sizes counted with element arithmetic, independent of the
/// index tables the graph is built from.
fn centralizer_size(g: &Group, i: u32) -> usize {
    let x = g.element(i);
    g.elements().iter().filter(|y| x.compose(y).unwrap() == y.compose(x).unwrap()).count()
}

#[test]
fn degree_identity() {
    for (name, g) in suite_groups(2000) {
        let cg = build_graph(&g, false).unwrap();
        let els = cg.element_indices().unwrap();
        let z = g.center().len();
        assert_eq!(cg.n(), g.order() - z, "{name}");
        let step = (cg.n() / 60).max(1);
        for v in (0..cg.n()).step_by(step) {
            assert_eq!(cg.degree(v), centralizer_size(&g, els[v]) - z - 1, "{name} vertex {v}");
        }
    }
}

#[test]
fn reduction_soundness() {
    let groups = suite_groups(400);
    assert!(groups.len() >= 8);
    for (name, g) in groups {
        let full = verdict(&build_graph(&g, false).unwrap());
        let with_center = verdict(&build_graph(&g, true).unwrap());
        let reduced = build_reduced(&g).unwrap();
        let collapsed = collapse_twins(&reduced);
        assert!(full.is_some(), "{name}");
        assert_eq!(full, with_center, "{name}: center");
        assert_eq!(full, verdict(&reduced), "{name}: reduced");
        assert_eq!(full, verdict(&collapsed), "{name}: collapsed");
    }
}

#[test]
fn a6_involutions() {
    let g = build_str("alt:6").unwrap();
    let full = build_graph(&g, false).unwrap();
    assert_eq!(full.n(), 359);
    let r = build_reduced(&g).unwrap();
    assert_eq!(r.n(), 45);
    for &e in r.element_indices().unwrap() {
        assert_eq!(g.element_order(e), 2);
        assert_eq!(centralizer_size(&g, e), 8);
    }
    let with_center = build_graph(&g, true).unwrap();
    assert_eq!(with_center.n(), 360);
    let id = with_center.element_indices().unwrap().iter().position(|&e| g.element(e).is_identity()).unwrap();
    assert_eq!(with_center.degree(id), 359);
    assert_eq!(build_reduced(&build_str("sl:2:9").unwrap()).unwrap().n(), 0);
    assert_eq!(build_graph(&build_str("sym:5").unwrap(), false).unwrap().n(), 119);
}

fn bfs_spheres(adj: &AdjMatrix, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.n()];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for v in adj.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let top = dist.iter().filter(|&&d| d != usize::MAX).max().copied().unwrap_or(0);
    (0..=top).map(|d| dist.iter().filter(|&&x| x == d).count()).collect()
}

#[test]
fn psl2_13_involution_graph() {
    let (q, eps) = (13usize, 1usize);
    let g = build_str("psl:2:13").unwrap();
    let r = build_reduced(&g).unwrap();
    assert_eq!(r.n(), q * (q + eps) / 2);
    let adj = r.adj();
    for v in 0..r.n() {
        assert_eq!(adj.degree(v), (q - eps) / 2);
    }
    // no 4-cycle as a subgraph: two vertices share at most one neighbour
    for u in 0..r.n() {
        for v in u + 1..r.n() {
            let common = adj.neighbors(u).filter(|&w| adj.has(v, w)).count();
            assert!(common <= 1, "{u} {v}");
        }
    }
    for t in 0..r.n() {
        let s = bfs_spheres(adj, t);
        assert_eq!(s[1], (q - eps) / 2);
        assert_eq!(s[2], (q - eps) * (q - eps - 4) / 4);
    }
}

#[test]
fn psl3_4_transvection_graph() {
    for (spec, before) in [("psl:3:4", 315), ("sl:3:4", 945)] {
        let g = build_str(spec).unwrap();
        let r = build_reduced(&g).unwrap();
        assert_eq!(r.n(), before, "{spec}");
        let c = collapse_twins(&r);
        assert_eq!(c.n(), 105, "{spec}");
        assert!(c.report.class_sizes.iter().all(|&s| s == before / 105));
    }
}

#[test]
fn suzuki_involutions() {
    let g = build_str("sz:8").unwrap();
    assert_eq!(g.order(), 29120);
    let classes: Vec<usize> =
        (0..g.classes().len()).filter(|&c| g.element_order(g.classes().rep(c)) == 2).collect();
    assert_eq!(classes.len(), 1);
    assert_eq!(g.classes().size(classes[0]), 455);
    let r = build_reduced(&g).unwrap();
    assert_eq!(r.n(), 455);
    assert!(!g.is_ac_group());
}

#[test]
fn dimacs_round_trip_and_determinism() {
    for spec in ["alt:6", "psl:2:13", "sl:3:3"] {
        let a = build_reduced(&build_str(spec).unwrap()).unwrap();
        let b = build_reduced(&build_str(spec).unwrap()).unwrap();
        let text = write_dimacs(a.adj());
        assert_eq!(text, write_dimacs(b.adj()));
        assert_eq!(&read_dimacs(&text).unwrap(), a.adj());
    }
}

#[test]
fn warm_cache_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let cache = GraphCache::new(dir.path());
    let opts = AnalyzeOptions::default();
    for spec in ["sym:5", "psl:3:4", "prod(sym:3,sym:3,sym:3)", "psu:3:3"] {
        let s = GroupSpec::parse(spec).unwrap();
        let cold = analyze(&s, &opts, None).unwrap();
        let first = analyze(&s, &opts, Some(&cache)).unwrap();
        assert!(cache.path_for(spec, opts.variant()).exists());
        let warm = analyze(&s, &opts, Some(&cache)).unwrap();
        assert!(cold.same_as(&first) && cold.same_as(&warm), "{spec}");
    }
    // a corrupt file is rebuilt
    let path = cache.path_for("sym:5", opts.variant());
    std::fs::write(&path, "garbage").unwrap();
    let s = GroupSpec::parse("sym:5").unwrap();
    assert!(analyze(&s, &opts, Some(&cache)).unwrap().matches());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("c pcg-cache 1"));
}

#[test]
fn analysis_is_deterministic() {
    let opts = AnalyzeOptions::default();
    for spec in ["alt:7", "sp:4:3", "aut-sl2-8"] {
        let s = GroupSpec::parse(spec).unwrap();
        let a = analyze(&s, &opts, None).unwrap();
        let b = analyze(&s, &opts, None).unwrap();
        assert!(a.same_as(&b), "{spec}");
        assert!(matches!(a.verdict.outcome, Outcome::NotBerge(_)));
    }
}
