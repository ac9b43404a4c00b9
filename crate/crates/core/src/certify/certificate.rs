use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{parse_rational, rational_to_string, CertifyError, SCHEMA_VERSION};
use crate::boxalg::{self, MultiplicityTable};
use crate::diagram::coeff_vector;
use crate::graph::graph6::{emit_graph6_string, parse_graph6};
use crate::graph::{AdjacencyHash, Graph, Provenance};
use crate::symmetry::{automorphism_group, OrbitIndex, OrbitSummary};
use crate::vector::{CoefficientVector, Derivation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub graph6: String,
    pub hash: AdjacencyHash,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub element: usize,
    /// `numerator/denominator` in lowest terms.
    pub value: String,
}

/// A self-contained proof that the flip lies in the span of the listed
/// elements: recomputing every element from its derivation and summing with
/// the coefficients gives the flip's value on every 4-orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub graph: GraphRecord,
    pub orbits: OrbitSummary,
    /// In dependency order: derivations refer only to earlier entries.
    pub elements: Vec<Derivation>,
    pub coefficients: Vec<CoefficientEntry>,
}

fn parents(d: &Derivation) -> Vec<usize> {
    match *d {
        Derivation::Product { left, right } => vec![left, right],
        Derivation::Rot { of } | Derivation::InvRot { of } => vec![of],
        _ => vec![],
    }
}

fn renumber(d: &Derivation, map: &[usize]) -> Derivation {
    match d {
        Derivation::Product { left, right } => Derivation::Product { left: map[*left], right: map[*right] },
        Derivation::Rot { of } => Derivation::Rot { of: map[*of] },
        Derivation::InvRot { of } => Derivation::InvRot { of: map[*of] },
        other => other.clone(),
    }
}

impl Certificate {
    /// Keeps only the elements with a nonzero coefficient and their ancestors.
    pub(super) fn assemble(
        g: &Graph,
        index: &OrbitIndex,
        elements: &[CoefficientVector],
        coeffs: &[BigRational],
    ) -> Result<Certificate, CertifyError> {
        let mut needed: BTreeSet<usize> = BTreeSet::new();
        let mut stack: Vec<usize> = (0..coeffs.len()).filter(|&i| !coeffs[i].is_zero()).collect();
        while let Some(i) = stack.pop() {
            if needed.insert(i) {
                stack.extend(parents(&elements[i].derivation));
            }
        }
        let mut map = vec![usize::MAX; elements.len()];
        for (new, &old) in needed.iter().enumerate() {
            map[old] = new;
        }
        let list: Vec<Derivation> = needed.iter().map(|&i| renumber(&elements[i].derivation, &map)).collect();
        let coefficients = (0..coeffs.len())
            .filter(|&i| !coeffs[i].is_zero())
            .map(|i| CoefficientEntry { element: map[i], value: rational_to_string(&coeffs[i]) })
            .collect();
        Ok(Certificate {
            schema_version: SCHEMA_VERSION,
            graph: GraphRecord {
                graph6: emit_graph6_string(g)?,
                hash: g.adjacency_hash(),
                provenance: g.provenance().clone(),
            },
            orbits: index.summary(),
            elements: list,
            coefficients,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, CertifyError> {
        serde_json::from_str(s).map_err(|e| CertifyError::Malformed(e.to_string()))
    }
}

/// Why a certificate failed, with the first orbit where the sum and the flip
/// differ when the failure is numerical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub reason: String,
    pub orbit: Option<usize>,
    pub representative: Option<Vec<usize>>,
    pub expected: Option<String>,
    pub found: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VerifyOutcome {
    Valid,
    Invalid(Witness),
}

impl VerifyOutcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, VerifyOutcome::Valid)
    }
}

fn invalid(reason: impl Into<String>) -> VerifyOutcome {
    VerifyOutcome::Invalid(Witness { reason: reason.into(), orbit: None, representative: None, expected: None, found: None })
}

/// Recomputes the graph, its orbits, every element and the combination from
/// scratch, and compares with the flip on every orbit.
pub fn verify_certificate(cert: &Certificate) -> Result<VerifyOutcome, CertifyError> {
    if cert.schema_version != SCHEMA_VERSION {
        return Ok(invalid(format!("schema version {}", cert.schema_version)));
    }
    let g = parse_graph6(cert.graph.graph6.as_bytes())?.with_provenance(cert.graph.provenance.clone());
    if g.adjacency_hash() != cert.graph.hash {
        return Ok(invalid("graph6 does not match the recorded adjacency hash"));
    }
    let group = automorphism_group(&g);
    let index = OrbitIndex::build(&g, &group, 4)?;
    if index.summary() != cert.orbits {
        return Ok(invalid("orbit representatives differ from a fresh computation"));
    }
    let needs_table = cert.elements.iter().any(|d| matches!(d, Derivation::Product { .. }));
    let table = needs_table.then(|| MultiplicityTable::build(&index));
    let mut values: Vec<CoefficientVector> = Vec::with_capacity(cert.elements.len());
    for (i, d) in cert.elements.iter().enumerate() {
        if parents(d).iter().any(|&p| p >= i) {
            return Ok(invalid(format!("element {i} refers forward")));
        }
        let v = match d {
            Derivation::Base { diagram } => match coeff_vector(&g, &index, diagram) {
                Ok(v) => v,
                Err(e) => return Ok(invalid(format!("element {i}: {e}"))),
            },
            Derivation::Product { left, right } => {
                boxalg::box_product(&values[*left], &values[*right], table.as_ref().unwrap(), d.clone())?
            }
            Derivation::Rot { of } => boxalg::rot(&values[*of], &index, d.clone()),
            Derivation::InvRot { of } => boxalg::invrot(&values[*of], &index, d.clone()),
            Derivation::Flip | Derivation::Literal => {
                return Ok(invalid(format!("element {i} is not derived from diagrams")));
            }
        };
        values.push(v);
    }
    let mut sum = vec![BigRational::zero(); index.len()];
    for entry in &cert.coefficients {
        let c = parse_rational(&entry.value)?;
        let Some(v) = values.get(entry.element) else {
            return Ok(invalid(format!("coefficient for missing element {}", entry.element)));
        };
        for (s, x) in sum.iter_mut().zip(&v.values) {
            *s += &c * x;
        }
    }
    let flip = boxalg::flip(&g, &index);
    for (orbit, (s, f)) in sum.iter().zip(&flip.values).enumerate() {
        if s != f {
            return Ok(VerifyOutcome::Invalid(Witness {
                reason: "combination differs from the flip".into(),
                orbit: Some(orbit),
                representative: Some(index.representative(orbit).to_vec()),
                expected: Some(rational_to_string(f)),
                found: Some(rational_to_string(s)),
            }));
        }
    }
    Ok(VerifyOutcome::Valid)
}
