//! The `pcg` command line.

pub mod cache;
pub mod cert;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::cg::{build_graph, build_reduced, collapse_twins, read_dimacs};
use crate::classify::{analyze, run_suite, AnalyzeOptions};
use crate::error::{Error, Result};
use crate::named::{self, GroupSpec};
use crate::perf::{chromatic_number, clique_number, is_berge, is_perfect_bruteforce, BergeOptions, Outcome, DEFAULT_BUDGET};
use crate::wit::{self, ElementTuple};
use cache::GraphCache;
use cert::Certificate;

#[derive(Parser, Debug)]
#[command(name = "pcg", version, about = "Perfect commuting graphs of finite groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide whether the commuting graph of a group is perfect.
    Analyze {
        spec: String,
        /// Use the graph on all of G rather than G minus its center.
        #[arg(long)]
        include_center: bool,
        /// Skip the abelian-centralizer reduction.
        #[arg(long)]
        no_reduce: bool,
        /// Skip twin collapse.
        #[arg(long)]
        no_collapse: bool,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write a certificate for a forbidden subgraph here.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Graph cache directory (default: $PCG_CACHE_DIR).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Build and verify one of the explicit witness constructions.
    Witness {
        /// sym5, alt3cycles, sl3, su3, sp4, psl2, ree3, product, chain, l34
        name: String,
        params: Vec<String>,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Write the commuting graph as DIMACS.
    Export {
        spec: String,
        #[arg(long, default_value = "dimacs")]
        format: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        include_center: bool,
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        collapsed: bool,
    },
    /// Run the table of groups with known answers.
    Suite {
        #[arg(long, default_value = "")]
        filter: String,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// ω, χ and perfection of every induced subgraph for a small DIMACS graph.
    Bruteforce { file: PathBuf },
    /// Berge test of a DIMACS graph.
    Berge {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Check a certificate file.
    Verify { file: PathBuf },
}

/// Runs the command line; returns the exit code (0 definitive, 1 error, 2 unknown).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn cache_from(dir: Option<PathBuf>) -> Option<GraphCache> {
    dir.map(GraphCache::new).or_else(GraphCache::from_env)
}

fn write_certificate(path: &PathBuf, t: &ElementTuple) -> Result<()> {
    fs::write(path, Certificate::from_tuple(t).render())?;
    Ok(())
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Cmd::Analyze { spec, include_center, no_reduce, no_collapse, max_len, budget, certificate, cache_dir } => {
            let spec = GroupSpec::parse(&spec)?;
            let opts = AnalyzeOptions {
                include_center,
                reduce: !no_reduce,
                collapse: !no_collapse,
                max_len,
                budget,
                ..Default::default()
            };
            let cache = cache_from(cache_dir);
            let r = analyze(&spec, &opts, cache.as_ref())?;
            writeln!(out, "{r}")?;
            if let (Some(path), Some(t)) = (&certificate, &r.witness) {
                write_certificate(path, t)?;
            }
            Ok(match r.verdict.outcome {
                Outcome::Unknown { .. } => 2,
                _ => 0,
            })
        }
        Cmd::Witness { name, params, certificate } => {
            if name == "l34" {
                let ok = wit::check_l34_label_model();
                writeln!(out, "l34 label model: {}", if ok { "no 4-chain" } else { "4-chain found" })?;
                return Ok(if ok { 0 } else { 1 });
            }
            let t = build_witness(&name, &params)?;
            t.verify()?;
            writeln!(out, "{} {} verified", t.group, t.pattern)?;
            for e in &t.elements {
                writeln!(out, "  {}", cert::encode_element(e))?;
            }
            if let Some(path) = &certificate {
                write_certificate(path, &t)?;
            }
            Ok(0)
        }
        Cmd::Export { spec, format, output, include_center, reduced, collapsed } => {
            if format != "dimacs" {
                return Err(Error::Format(format!("unknown export format {format:?}")));
            }
            let g = named::build_str(&spec)?;
            let base = if reduced { build_reduced(&g)? } else { build_graph(&g, include_center)? };
            let graph = if collapsed { collapse_twins(&base) } else { base };
            let text = graph.to_dimacs();
            match output {
                Some(p) => fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Cmd::Suite { filter, cache_dir } => {
            let cache = cache_from(cache_dir);
            let mut io = Ok(());
            let s = run_suite(&filter, &AnalyzeOptions::default(), cache.as_ref(), |row| {
                if io.is_ok() {
                    io = writeln!(out, "{}", row.line()).and_then(|_| out.flush());
                }
            });
            io?;
            writeln!(out, "{}", s.totals())?;
            Ok(if s.all_pass() { 0 } else { 1 })
        }
        Cmd::Bruteforce { file } => {
            let adj = read_dimacs(&fs::read_to_string(file)?)?;
            writeln!(out, "vertices {}", adj.n())?;
            writeln!(out, "omega    {}", clique_number(&adj)?)?;
            writeln!(out, "chi      {}", chromatic_number(&adj)?)?;
            writeln!(out, "perfect  {}", is_perfect_bruteforce(&adj)?)?;
            Ok(0)
        }
        Cmd::Berge { file, budget, max_len } => {
            let adj = read_dimacs(&fs::read_to_string(file)?)?;
            let v = is_berge(&adj, &BergeOptions { budget, max_len, ..Default::default() });
            writeln!(out, "{}", v.outcome)?;
            Ok(match v.outcome {
                Outcome::Unknown { .. } => 2,
                _ => 0,
            })
        }
        Cmd::Verify { file } => {
            let c = Certificate::parse(&fs::read_to_string(file)?)?;
            c.verify()?;
            writeln!(out, "valid {} {} in {}", c.pattern.kind(), c.elements.len(), c.group)?;
            Ok(0)
        }
    }
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> Result<T> {
    let s = params.get(i).ok_or_else(|| Error::Format(format!("missing parameter {what}")))?;
    s.parse().map_err(|_| Error::Format(format!("bad parameter {what}: {s:?}")))
}

fn build_witness(name: &str, p: &[String]) -> Result<ElementTuple> {
    match name {
        "sym5" => Ok(wit::witness_sym5()),
        "alt3cycles" => wit::witness_alt_3cycles(param(p, 0, "n")?),
        "sl3" => wit::witness_sl3(param(p, 0, "q")?, param(p, 1, "alpha")?, param(p, 2, "beta")?),
        "su3" => wit::witness_su3(param(p, 0, "q")?),
        "sp4" => wit::witness_sp4(param(p, 0, "q")?),
        "psl2" => wit::witness_psl2(param(p, 0, "q")?),
        "ree3" => wit::witness_ree3(),
        "product" => {
            let gs = (0..3)
                .map(|i| param::<String>(p, i, "group").and_then(|s| named::build_str(&s)))
                .collect::<Result<Vec<_>>>()?;
            wit::witness_product(&gs[0], &gs[1], &gs[2])
        }
        "chain" => {
            let which: String = param(p, 0, "chain")?;
            let lg = named::build_str(&param::<String>(p, 1, "group")?)?;
            let (kg, chain) = match which.as_str() {
                "a6" => (named::build_str("alt:6")?, wit::a6_chain()),
                "sl32" => (named::build_str("sl:3:2")?, wit::sl32_chain(2)?),
                "sl34" => (named::build_str("sl:3:4")?, wit::sl32_chain(4)?),
                _ => return Err(Error::Format(format!("unknown chain {which:?}"))),
            };
            wit::witness_chain_product(&kg, &chain, &lg)
        }
        _ => Err(Error::Format(format!("unknown witness {name:?}"))),
    }
}
