use std::fs;

use pcg::cli::run;

fn pcg(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("pcg").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn analyze_writes_a_certificate_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("s5.cert");
    let (code, out, _) = pcg(&["analyze", "sym:5", "--certificate", cert.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict      NotBerge"), "{out}");
    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.starts_with("pcg-certificate 1\ngroup sym:5\nkind odd-hole\nlength 5\n"));
    let (code, out, _) = pcg(&["verify", cert.to_str().unwrap()]);
    assert_eq!((code, out.trim()), (0, "valid odd-hole 5 in sym:5"));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.cert");
    assert_eq!(pcg(&["witness", "sym5", "--certificate", cert.to_str().unwrap()]).0, 0);
    let text = fs::read_to_string(&cert).unwrap().replacen("perm:5,2,3,4,1", "perm:2,1,3,4,5", 1);
    fs::write(&cert, text).unwrap();
    let (code, _, err) = pcg(&["verify", cert.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn witnesses() {
    for args in [
        &["witness", "sym5"][..],
        &["witness", "alt3cycles", "7"],
        &["witness", "sl3", "3", "1", "2"],
        &["witness", "su3", "3"],
        &["witness", "ree3"],
        &["witness", "product", "sym:3", "sym:3", "sym:3"],
        &["witness", "chain", "a6", "sym:3"],
        &["witness", "l34"],
    ] {
        let (code, out, err) = pcg(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(!out.is_empty());
    }
    assert_eq!(pcg(&["witness", "sl3", "4", "1", "1"]).0, 1);
    assert_eq!(pcg(&["witness", "nope"]).0, 1);
}

#[test]
fn dimacs_tools() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = dir.path().join("c5.col");
    fs::write(&c5, "c five-cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
    let (code, out, _) = pcg(&["bruteforce", c5.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("omega    2") && out.contains("chi      3") && out.contains("perfect  false"), "{out}");
    let (code, out, _) = pcg(&["berge", c5.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("NotBerge"), "{out}");

    let big = dir.path().join("k15.col");
    let edges: String = (1..=15).flat_map(|i| (i + 1..=15).map(move |j| format!("e {i} {j}\n"))).collect();
    fs::write(&big, format!("p edge 15 105\n{edges}")).unwrap();
    let (code, _, err) = pcg(&["bruteforce", big.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("guard"), "{err}");
}

#[test]
fn export_round_trips_through_berge() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("a7.col");
    let (code, _, _) = pcg(&["export", "alt:7", "--reduced", "--collapsed", "-o", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (_, stdout_copy, _) = pcg(&["export", "alt:7", "--reduced", "--collapsed"]);
    assert_eq!(fs::read_to_string(&file).unwrap(), stdout_copy);
    let (code, out, _) = pcg(&["berge", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("NotBerge"));
    assert_eq!(pcg(&["export", "alt:7", "--format", "graphml"]).0, 1);
}

#[test]
fn unknown_verdict_exits_with_two() {
    let (code, out, _) = pcg(&["analyze", "alt:7", "--budget", "1"]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("Unknown"), "{out}");
}

#[test]
fn suite_filter_and_errors() {
    let (code, out, _) = pcg(&["suite", "--filter", "sz"]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("{}\n1 rows, 1 passed, 0 failed\n", out.lines().next().unwrap()));
    assert!(out.starts_with("sz:8 Perfect Perfect "));
    let (code, out, _) = pcg(&["suite", "--filter", "zzz"]);
    assert_eq!((code, out.as_str()), (0, "0 rows, 0 passed, 0 failed\n"));
    assert_eq!(pcg(&["analyze", "sym:99"]).0, 1);
    assert_eq!(pcg(&["analyze", "bogus"]).0, 1);
    assert_eq!(pcg(&["frobnicate"]).0, 1);
    assert_eq!(pcg(&["--help"]).0, 0);
}
