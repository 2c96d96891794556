//! On-disk cache of commuting graphs.
//!
//! One file per (spec, variant): DIMACS edges plus a vertex-to-element table.
//! Files are written to a temporary name and renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::bits::AdjMatrix;
use crate::cg::{read_dimacs, write_dimacs, CommGraph, ReductionReport};
use crate::cli::cert::{decode_element, encode_element};
use crate::error::{Error, Result};
use crate::grp::Group;

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "PCG_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct GraphCache {
    dir: PathBuf,
}

impl GraphCache {
    pub fn new(dir: impl Into<PathBuf>) -> GraphCache {
        GraphCache { dir: dir.into() }
    }

    /// `PCG_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> Option<GraphCache> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(GraphCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, spec: &str, variant: (bool, bool, bool)) -> PathBuf {
        let hex: String = spec.bytes().map(|b| format!("{b:02x}")).collect();
        let flag = |b: bool| if b { '1' } else { '0' };
        self.dir.join(format!(
            "v{CACHE_VERSION}-{hex}-{}{}{}.graph",
            flag(variant.0),
            flag(variant.1),
            flag(variant.2)
        ))
    }

    pub fn get_or_build(
        &self,
        g: &Group,
        spec: &str,
        variant: (bool, bool, bool),
        build: impl FnOnce() -> Result<CommGraph>,
    ) -> Result<CommGraph> {
        let path = self.path_for(spec, variant);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(graph) = parse(&text, g, spec, variant) {
                return Ok(graph);
            }
        }
        let graph = build()?;
        self.store(&path, &render(&graph, spec, variant)?)?;
        Ok(graph)
    }

    fn store(&self, path: &Path, text: &str) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile_in(&self.dir)?;
        tmp.1.write_all(text.as_bytes())?;
        tmp.1.sync_all()?;
        drop(tmp.1);
        fs::rename(&tmp.0, path)?;
        Ok(())
    }
}

fn tempfile_in(dir: &Path) -> Result<(PathBuf, fs::File)> {
    for i in 0u32.. {
        let p = dir.join(format!(".tmp-{}-{i}", std::process::id()));
        match fs::OpenOptions::new().write(true).create_new(true).open(&p) {
            Ok(f) => return Ok((p, f)),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e.into()),
        }
    }
    unreachable!()
}

fn render(graph: &CommGraph, spec: &str, variant: (bool, bool, bool)) -> Result<String> {
    let els = graph.vertex_elements().ok_or_else(|| Error::Precondition("graph has no elements".into()))?;
    let r = &graph.report;
    let mut s = format!("c pcg-cache {CACHE_VERSION}\nc spec {spec}\n");
    s += &format!("c variant {} {} {}\n", variant.0 as u8, variant.1 as u8, variant.2 as u8);
    s += &format!("c report {} {} {} {}\n", r.group_order, r.center_size, r.removed_abelian, r.removed_twins);
    s += &format!("c sizes {}\n", r.class_sizes.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    for n in &r.notes {
        s += &format!("c note {n}\n");
    }
    s += &write_dimacs(graph.adj());
    for (i, e) in els.iter().enumerate() {
        s += &format!("v {} {}\n", i + 1, encode_element(e));
    }
    Ok(s)
}

fn parse(text: &str, g: &Group, spec: &str, variant: (bool, bool, bool)) -> Result<CommGraph> {
    let bad = |why: &str| Error::Format(format!("cache file: {why}"));
    let mut dimacs = String::new();
    let mut report = ReductionReport::default();
    let mut verts = Vec::new();
    let mut header_ok = [false; 3];
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("c ") {
            let (key, val) = rest.split_once(' ').unwrap_or((rest, ""));
            match key {
                "pcg-cache" => header_ok[0] = val == CACHE_VERSION.to_string(),
                "spec" => header_ok[1] = val == spec,
                "variant" => {
                    header_ok[2] = val == format!("{} {} {}", variant.0 as u8, variant.1 as u8, variant.2 as u8)
                }
                "report" => {
                    let v: Vec<usize> = val.split(' ').map(|x| x.parse().map_err(|_| bad("report"))).collect::<Result<_>>()?;
                    let [o, z, a, t] = v[..] else { return Err(bad("report")) };
                    (report.group_order, report.center_size, report.removed_abelian, report.removed_twins) = (o, z, a, t);
                }
                "sizes" => {
                    report.class_sizes =
                        val.split_whitespace().map(|x| x.parse().map_err(|_| bad("sizes"))).collect::<Result<_>>()?
                }
                "note" => report.notes.push(val.to_string()),
                _ => return Err(bad("unknown header")),
            }
        } else if let Some(rest) = line.strip_prefix("v ") {
            let (_, enc) = rest.split_once(' ').ok_or_else(|| bad("vertex line"))?;
            verts.push(enc.to_string());
        } else {
            dimacs.push_str(line);
            dimacs.push('\n');
        }
    }
    if header_ok.iter().any(|ok| !ok) {
        return Err(bad("stale header"));
    }
    let adj: AdjMatrix = read_dimacs(&dimacs)?;
    let template = g.element(0);
    let encodings = verts.iter().map(|e| decode_element(e, Some(template))).collect::<Result<Vec<_>>>()?;
    let elements = encodings.iter().map(|e| g.try_index(e)).collect::<Result<Vec<_>>>()?;
    let mut graph = CommGraph::from_parts(g.name(), elements, encodings, adj, report)?;
    graph.includes_center = variant.0;
    graph.reduced = variant.1;
    graph.collapsed = variant.2;
    Ok(graph)
}
