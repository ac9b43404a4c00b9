//! Constructors for the graph families of the 3-transitive classification,
//! plus a few small helpers used as test inputs.

use std::collections::BTreeMap;
use std::fmt;

use super::cayley::{self, Sign};
use super::field::PrimeField;
use super::graph6;
use super::quadratic::{default_irreducible, BinaryCoeffs, ProjectivePoint, QuadraticForm};
use super::{Graph, GraphError, Provenance};

const HIGMAN_SIMS_G6: &[u8] = include_bytes!("../../data/higman_sims.g6");
const MCLAUGHLIN_G6: &[u8] = include_bytes!("../../data/mclaughlin.g6");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Complete { n: usize },
    /// `m` disjoint copies of `K_n`.
    DisjointComplete { m: usize, n: usize },
    Pentagon,
    Cycle { n: usize },
    Path { n: usize },
    /// The rook's graph `H(2, m)` on `m x m` cells.
    Hamming { m: usize },
    OrthogonalPolar { q: u32 },
    AffinePolar { sign: Sign, k: usize },
    HigmanSims,
    McLaughlin,
    Complement(Box<FamilySpec>),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete { n } => write!(f, "complete(n={n})"),
            FamilySpec::DisjointComplete { m, n } => write!(f, "disjoint-complete(m={m},n={n})"),
            FamilySpec::Pentagon => write!(f, "pentagon"),
            FamilySpec::Cycle { n } => write!(f, "cycle(n={n})"),
            FamilySpec::Path { n } => write!(f, "path(n={n})"),
            FamilySpec::Hamming { m } => write!(f, "hamming(m={m})"),
            FamilySpec::OrthogonalPolar { q } => write!(f, "o6minus(q={q})"),
            FamilySpec::AffinePolar { sign, k } => write!(f, "vo(sign={sign},k={k})"),
            FamilySpec::HigmanSims => write!(f, "higman-sims"),
            FamilySpec::McLaughlin => write!(f, "mclaughlin"),
            FamilySpec::Complement(inner) => write!(f, "complement({inner})"),
        }
    }
}

fn param<T: std::str::FromStr>(params: &BTreeMap<String, String>, key: &str) -> Result<T, GraphError> {
    let raw = params
        .get(key)
        .ok_or_else(|| GraphError::InvalidParameters(format!("missing parameter {key}")))?;
    raw.parse()
        .map_err(|_| GraphError::InvalidParameters(format!("cannot parse {key}={raw}")))
}

impl FamilySpec {
    /// Family names accepted by [`FamilySpec::from_name`].
    pub const NAMES: &'static [&'static str] = &[
        "complete",
        "disjoint-complete",
        "pentagon",
        "cycle",
        "path",
        "hamming",
        "o6minus",
        "vo",
        "higman-sims",
        "mclaughlin",
    ];

    /// Builds a spec from a family name and `key -> value` parameters.
    /// A leading `co-` on the name wraps the family in a complement.
    pub fn from_name(name: &str, params: &BTreeMap<String, String>) -> Result<Self, GraphError> {
        if let Some(inner) = name.strip_prefix("co-") {
            return Ok(FamilySpec::Complement(Box::new(Self::from_name(inner, params)?)));
        }
        let spec = match name {
            "complete" | "k" => FamilySpec::Complete { n: param(params, "n")? },
            "disjoint-complete" => FamilySpec::DisjointComplete { m: param(params, "m")?, n: param(params, "n")? },
            "pentagon" => FamilySpec::Pentagon,
            "cycle" => FamilySpec::Cycle { n: param(params, "n")? },
            "path" => FamilySpec::Path { n: param(params, "n")? },
            "hamming" => FamilySpec::Hamming { m: param(params, "m")? },
            "o6minus" => FamilySpec::OrthogonalPolar { q: param(params, "q")? },
            "vo" | "vo+" | "vo-" => {
                let sign = match name {
                    "vo+" => Sign::Plus,
                    "vo-" => Sign::Minus,
                    _ => param(params, "sign")?,
                };
                FamilySpec::AffinePolar { sign, k: param(params, "k")? }
            }
            "higman-sims" => FamilySpec::HigmanSims,
            "mclaughlin" => FamilySpec::McLaughlin,
            other => return Err(GraphError::InvalidParameters(format!("unknown family {other}"))),
        };
        Ok(spec)
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        let g = match *self {
            FamilySpec::Complete { n } => complete(n)?,
            FamilySpec::DisjointComplete { m, n } => disjoint_complete(m, n)?,
            FamilySpec::Pentagon => cycle(5)?.with_provenance(family("pentagon", vec![])),
            FamilySpec::Cycle { n } => cycle(n)?,
            FamilySpec::Path { n } => path(n)?,
            FamilySpec::Hamming { m } => hamming(m)?,
            FamilySpec::OrthogonalPolar { q } => build_orthogonal_polar(q)?,
            FamilySpec::AffinePolar { sign, k } => build_affine_polar(sign, k)?,
            FamilySpec::HigmanSims => ingest_bundled("higman-sims", HIGMAN_SIMS_G6)?,
            FamilySpec::McLaughlin => ingest_bundled("mclaughlin", MCLAUGHLIN_G6)?,
            FamilySpec::Complement(ref inner) => inner.build()?.complement(),
        };
        assert!(g.is_symmetric_loop_free(), "constructor produced an invalid graph");
        Ok(g)
    }
}

fn family(name: &str, params: Vec<(&str, String)>) -> Provenance {
    Provenance::Family {
        name: name.into(),
        params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    }
}

fn positive(name: &str, value: usize) -> Result<(), GraphError> {
    if value == 0 {
        Err(GraphError::InvalidParameters(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

fn ingest_bundled(name: &str, bytes: &[u8]) -> Result<Graph, GraphError> {
    let g = graph6::parse_graph6(bytes).map_err(|e| GraphError::InvalidParameters(format!("bundled {name}: {e}")))?;
    Ok(g.with_provenance(Provenance::Ingested { source: format!("bundled:{name}.g6") }))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    positive("n", n)?;
    Ok(Graph::from_fn(n, family("complete", vec![("n", n.to_string())]), |_, _| true))
}

pub fn disjoint_complete(m: usize, n: usize) -> Result<Graph, GraphError> {
    positive("m", m)?;
    positive("n", n)?;
    let prov = family("disjoint-complete", vec![("m", m.to_string()), ("n", n.to_string())]);
    Ok(Graph::from_fn(m * n, prov, |u, v| u / n == v / n))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameters("a cycle needs at least 3 vertices".into()));
    }
    let prov = family("cycle", vec![("n", n.to_string())]);
    Ok(Graph::from_fn(n, prov, |u, v| (v - u) == 1 || (v - u) == n - 1))
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    positive("n", n)?;
    Ok(Graph::from_fn(n, family("path", vec![("n", n.to_string())]), |u, v| v - u == 1))
}

pub fn hamming(m: usize) -> Result<Graph, GraphError> {
    positive("m", m)?;
    let prov = family("hamming", vec![("m", m.to_string())]);
    Ok(Graph::from_fn(m * m, prov, |u, v| (u / m == v / m) != (u % m == v % m)))
}

/// Isotropic projective points of `Q`, in lexicographic order.
pub fn orthogonal_polar_points(field: PrimeField, qe: BinaryCoeffs) -> Result<Vec<ProjectivePoint>, GraphError> {
    let form = QuadraticForm::o6(field, qe)?;
    Ok(ProjectivePoint::enumerate(field, 6)
        .into_iter()
        .filter(|pt| form.eval(pt.coords()) == 0)
        .collect())
}

/// `O^-(6, q)` with the default anisotropic form.
pub fn build_orthogonal_polar(q: u32) -> Result<Graph, GraphError> {
    let field = PrimeField::new(q)?;
    build_orthogonal_polar_with(q, default_irreducible(field))
}

/// `O^-(6, q)` with an explicit anisotropic binary form on the last two coordinates.
pub fn build_orthogonal_polar_with(q: u32, qe: BinaryCoeffs) -> Result<Graph, GraphError> {
    let field = PrimeField::new(q)?;
    let form = QuadraticForm::o6(field, qe)?;
    let points = orthogonal_polar_points(field, qe)?;
    let prov = family("o6minus", vec![("q", q.to_string()), ("qe", format!("{},{},{}", qe.0, qe.1, qe.2))]);
    let mut sum = [0u32; 6];
    let g = Graph::from_fn(points.len(), prov, |u, v| {
        let (a, b) = (points[u].coords(), points[v].coords());
        for i in 0..6 {
            sum[i] = field.add(a[i], b[i]);
        }
        form.eval(&sum) == 0
    });
    Ok(g)
}

/// `VO^{sign}(2k, 2)`: the Cayley graph of F_2^{2k} with connection set `Y^h_k` or `Y^e_k`.
pub fn build_affine_polar(sign: Sign, k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::InvalidParameters("k must be at least 1".into()));
    }
    if k > 12 {
        return Err(GraphError::InvalidParameters("k above 12 gives more than 2^24 vertices".into()));
    }
    let y = cayley::CayleySet::y(sign, k);
    let prov = family("vo", vec![("sign", sign.to_string()), ("k", k.to_string())]);
    Ok(Graph::from_fn(1 << (2 * k), prov, |u, v| y.contains(u ^ v)))
}
