use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use qsym::boxalg::MultiplicityTable;
use qsym::graph::graph6::parse_graph6;
use qsym::graph::{FamilySpec, Graph, Provenance};
use qsym::symmetry::{automorphism_group, OrbitIndex};

use crate::config::JobFile;

/// A named family with parameters, or a graph6 file.
#[derive(Args, Clone, Default)]
pub struct GraphArgs {
    /// Family name: complete, disjoint-complete, pentagon, cycle, path, hamming,
    /// o6minus, vo, vo+, vo-, higman-sims, mclaughlin; prefix co- for the complement.
    #[arg(long)]
    pub family: Option<String>,
    /// Family parameter, repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// `+` or `-` for the vo family.
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<String>,
    /// Level `k` of the vo family.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Read the graph from a graph6 file instead.
    #[arg(long, visible_alias = "graph", conflicts_with = "family", value_name = "FILE")]
    pub graph6: Option<PathBuf>,
}

impl GraphArgs {
    pub fn is_given(&self, cfg: &JobFile) -> bool {
        self.family.is_some()
            || self.graph6.is_some()
            || matches!(cfg.get::<String>("family"), Ok(Some(_)))
            || matches!(cfg.get::<String>("graph6"), Ok(Some(_)))
    }

    fn family_params(&self, cfg: &JobFile) -> Result<BTreeMap<String, String>> {
        let mut params = BTreeMap::new();
        let shortcuts = [
            ("q", self.q.map(|v| v.to_string())),
            ("n", self.n.map(|v| v.to_string())),
            ("m", self.m.map(|v| v.to_string())),
            ("sign", self.sign.clone()),
            ("dim", self.dim.map(|v| v.to_string())),
        ];
        for (key, flag) in shortcuts {
            if let Some(v) = cfg.pick(flag, key)? {
                params.insert(if key == "dim" { "k".to_string() } else { key.to_string() }, v);
            }
        }
        for p in &self.params {
            let Some((k, v)) = p.split_once('=') else {
                bail!("--param expects KEY=VALUE, got {p:?}");
            };
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(params)
    }
}

pub fn load_graph(args: &GraphArgs, cfg: &JobFile) -> Result<Graph> {
    let (family, graph6) = if args.family.is_some() || args.graph6.is_some() {
        (args.family.clone(), args.graph6.clone())
    } else {
        (cfg.get::<String>("family")?, cfg.get::<PathBuf>("graph6")?)
    };
    match (family, graph6) {
        (Some(_), Some(_)) => bail!("give either a family or a graph6 file, not both"),
        (Some(name), None) => {
            let spec = FamilySpec::from_name(&name, &args.family_params(cfg)?)?;
            Ok(spec.build()?)
        }
        (None, Some(path)) => {
            let bytes = std::fs::read(&path).with_context(|| format!("reading {}", path.display()))?;
            let g = parse_graph6(&bytes).with_context(|| format!("parsing {}", path.display()))?;
            Ok(g.with_provenance(Provenance::Ingested { source: path.display().to_string() }))
        }
        (None, None) => bail!("no graph given: use --family or --graph6"),
    }
}

/// Orbit index on `k`-tuples, read from and written to the cache when one is set.
pub fn orbit_index(g: &Graph, k: usize, cache: Option<&Path>) -> Result<OrbitIndex> {
    let path = cache.map(|d| d.join(format!("{}.k{k}.orbits", g.adjacency_hash().to_hex())));
    if let Some(p) = path.as_ref().filter(|p| p.exists()) {
        match OrbitIndex::load(p, g) {
            Ok(index) => return Ok(index),
            Err(e) => eprintln!("ignoring orbit cache {}: {e}", p.display()),
        }
    }
    let index = OrbitIndex::build(g, &automorphism_group(g), k)?;
    if let Some(p) = &path {
        index.save(p).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(index)
}

pub fn multiplicity_table(index: &OrbitIndex, cache: Option<&Path>) -> Result<MultiplicityTable> {
    let path = cache.map(|d| d.join(format!("{}.mult", index.graph_hash().to_hex())));
    if let Some(p) = path.as_ref().filter(|p| p.exists()) {
        match MultiplicityTable::load(p, index) {
            Ok(t) => return Ok(t),
            Err(e) => eprintln!("ignoring table cache {}: {e}", p.display()),
        }
    }
    let table = MultiplicityTable::build(index);
    if let Some(p) = &path {
        table.save(p).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(table)
}
