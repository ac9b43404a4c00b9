use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{parse_rational, rational_to_string, CertifyConfig, CertifyError, Cursor, RankEvent, Session, SCHEMA_VERSION};
use crate::boxalg::MultiplicityTable;
use crate::diagram::EnumerationBudget;
use crate::graph::{AdjacencyHash, Graph};
use crate::symmetry::OrbitIndex;
use crate::vector::{CoefficientVector, Derivation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredElement {
    pub derivation: Derivation,
    pub values: Vec<String>,
}

/// Everything needed to continue a stopped run: the independent elements
/// found so far with their values, the search cursor and the rank history.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub schema_version: u32,
    pub graph_hash: AdjacencyHash,
    pub omega: usize,
    pub enumeration: EnumerationBudget,
    pub max_products: usize,
    pub catalog_len: usize,
    pub elements: Vec<StoredElement>,
    pub cursor: Cursor,
    pub tried: usize,
    pub history: Vec<RankEvent>,
}

impl Checkpoint {
    pub fn rank(&self) -> usize {
        self.elements.len()
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec_pretty(self).expect("checkpoint serializes"))?;
        std::fs::rename(tmp, path)
    }

    pub fn load(path: &Path) -> Result<Self, CertifyError> {
        let bytes = std::fs::read(path).map_err(|e| CertifyError::Checkpoint(e.to_string()))?;
        serde_json::from_slice(&bytes).map_err(|e| CertifyError::Checkpoint(e.to_string()))
    }
}

impl<'a> Session<'a> {
    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            schema_version: SCHEMA_VERSION,
            graph_hash: self.index.graph_hash(),
            omega: self.omega(),
            enumeration: self.config.enumeration,
            max_products: self.config.max_products,
            catalog_len: self.catalog.len(),
            elements: self
                .elements
                .iter()
                .map(|e| StoredElement {
                    derivation: e.derivation.clone(),
                    values: e.values.iter().map(rational_to_string).collect(),
                })
                .collect(),
            cursor: self.cursor.clone(),
            tried: self.tried,
            history: self.history.clone(),
        }
    }

    /// Continues from a checkpoint. The enumeration budget is taken from the
    /// checkpoint; the product budget, deadline and cancel flag from `config`.
    pub fn resume(
        g: &'a Graph,
        index: &'a OrbitIndex,
        table: &'a MultiplicityTable,
        config: CertifyConfig,
        cp: &Checkpoint,
    ) -> Result<Self, CertifyError> {
        let bad = |m: &str| Err(CertifyError::Checkpoint(m.to_string()));
        if cp.schema_version != SCHEMA_VERSION {
            return bad("schema version");
        }
        if cp.graph_hash != index.graph_hash() || cp.omega != index.len() {
            return bad("checkpoint belongs to another graph");
        }
        let config = CertifyConfig { enumeration: cp.enumeration, ..config };
        let mut s = Session::new(g, index, table, config)?;
        if s.catalog.len() != cp.catalog_len || cp.cursor.next_diagram > s.catalog.len() {
            return bad("diagram catalog differs");
        }
        for (id, e) in cp.elements.iter().enumerate() {
            let values = e.values.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>, _>>()?;
            if values.len() != index.len() {
                return bad("element length");
            }
            if !s.basis.insert(id, &values) {
                return bad("stored elements are not independent");
            }
            s.elements.push(CoefficientVector {
                graph_hash: index.graph_hash(),
                k: 4,
                values,
                derivation: e.derivation.clone(),
            });
        }
        if cp.cursor.closure_queue.iter().any(|&i| i >= s.elements.len()) {
            return bad("cursor refers to missing elements");
        }
        s.cursor = cp.cursor.clone();
        s.tried = cp.tried;
        s.history = cp.history.clone();
        Ok(s)
    }
}
