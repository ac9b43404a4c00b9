//! Search for an exact linear combination of diagram elements, their
//! rotations and their products that equals the flip.
//!
//! Work proceeds in small units (one diagram, the rotations of one element,
//! or one product), in a fixed order, so a run stopped between units can be
//! resumed from a [`Checkpoint`] and reaches the same result.

mod certificate;
mod checkpoint;

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boxalg::{self, BoxError, MultiplicityTable};
use crate::diagram::{coeff_vector, enumerate_diagrams, Diagram, DiagramError, EnumerationBudget};
use crate::graph::graph6::Graph6Error;
use crate::graph::Graph;
use crate::linalg::SpanBasis;
use crate::symmetry::{OrbitIndex, SymmetryError};
use crate::vector::{CoefficientVector, Derivation};

pub use certificate::{verify_certificate, Certificate, CoefficientEntry, GraphRecord, VerifyOutcome, Witness};
pub use checkpoint::{Checkpoint, StoredElement};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Box(#[from] BoxError),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

/// Limits of one certification run.
#[derive(Clone, Debug)]
pub struct CertifyConfig {
    pub enumeration: EnumerationBudget,
    pub max_products: usize,
    pub deadline: Option<Instant>,
    /// Checked between units; when set the run stops with a checkpoint.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl CertifyConfig {
    pub fn new(max_internal: usize, max_edges: usize, max_products: usize) -> Self {
        CertifyConfig {
            enumeration: EnumerationBudget { max_internal, max_edges },
            max_products,
            deadline: None,
            cancel: None,
        }
    }
}

/// Position of the search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cursor {
    pub next_diagram: usize,
    /// Elements whose rotation and inverse rotation are still to be tried.
    pub closure_queue: VecDeque<usize>,
    /// Products `(i, j)` with `max(i, j) < product_level` are done.
    pub product_level: usize,
    /// Position within the pairs of the current level.
    pub product_step: usize,
    pub products_tried: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEvent {
    pub tried: usize,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// Every pair of elements was multiplied without producing anything new:
    /// the span is closed under products and rotations.
    Closed,
    ProductBudget,
}

/// Span rank against the orbit count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationReport {
    pub rank: usize,
    pub omega: usize,
    pub saturated: bool,
    pub flip_in_span: bool,
    pub tried: usize,
    pub reason: Option<StopReason>,
    pub history: Vec<RankEvent>,
}

#[derive(Clone, Debug)]
pub enum CertifyOutcome {
    Certificate(Box<Certificate>),
    NotInSpanAtBudget(SaturationReport),
    ResourceBudgetExceeded(Box<Checkpoint>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Diagrams,
    Rotations,
    Products,
}

#[derive(Clone, Copy, Debug)]
pub struct Progress {
    pub phase: Phase,
    pub rank: usize,
    pub omega: usize,
    pub tried: usize,
}

enum Step {
    Continue,
    Found,
    Exhausted(StopReason),
}

/// A running certification on one graph.
pub struct Session<'a> {
    g: &'a Graph,
    index: &'a OrbitIndex,
    table: &'a MultiplicityTable,
    config: CertifyConfig,
    catalog: Vec<Diagram>,
    elements: Vec<CoefficientVector>,
    basis: SpanBasis,
    flip: CoefficientVector,
    cursor: Cursor,
    tried: usize,
    history: Vec<RankEvent>,
}

impl<'a> Session<'a> {
    pub fn new(
        g: &'a Graph,
        index: &'a OrbitIndex,
        table: &'a MultiplicityTable,
        config: CertifyConfig,
    ) -> Result<Self, CertifyError> {
        if index.k() != 4 {
            return Err(DiagramError::ArityMismatch { diagram: 4, index: index.k() }.into());
        }
        if g.adjacency_hash() != index.graph_hash() || table.graph_hash != index.graph_hash() {
            return Err(DiagramError::HashMismatch.into());
        }
        if table.len() != index.len() {
            return Err(BoxError::ShapeMismatch { expected: index.len(), k: 4, found: table.len() }.into());
        }
        let flip = boxalg::flip(g, index);
        let mut basis = SpanBasis::new(index.len());
        basis.track(&flip.values);
        Ok(Session {
            g,
            index,
            table,
            catalog: enumerate_diagrams(4, config.enumeration),
            config,
            elements: Vec::new(),
            basis,
            flip,
            cursor: Cursor::default(),
            tried: 0,
            history: Vec::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn omega(&self) -> usize {
        self.index.len()
    }

    pub fn catalog_len(&self) -> usize {
        self.catalog.len()
    }

    pub fn history(&self) -> &[RankEvent] {
        &self.history
    }

    pub fn elements(&self) -> &[CoefficientVector] {
        &self.elements
    }

    pub fn report(&self, reason: Option<StopReason>) -> SaturationReport {
        SaturationReport {
            rank: self.rank(),
            omega: self.omega(),
            saturated: self.rank() == self.omega(),
            flip_in_span: self.basis.tracked_in_span(),
            tried: self.tried,
            reason,
            history: self.history.clone(),
        }
    }

    fn out_of_time(&self) -> bool {
        self.config.deadline.is_some_and(|d| Instant::now() >= d)
            || self.config.cancel.as_ref().is_some_and(|c| c.load(Ordering::SeqCst))
    }

    /// Runs until a certificate is found, the search space is exhausted, or
    /// the deadline or cancellation flag stops it.
    pub fn run(&mut self, progress: &mut dyn FnMut(&Progress)) -> Result<CertifyOutcome, CertifyError> {
        if self.basis.tracked_in_span() {
            return Ok(CertifyOutcome::Certificate(Box::new(self.certificate()?)));
        }
        loop {
            if self.out_of_time() {
                return Ok(CertifyOutcome::ResourceBudgetExceeded(Box::new(self.checkpoint())));
            }
            let before = self.rank();
            let (phase, step) = self.step()?;
            if self.rank() != before {
                progress(&Progress { phase, rank: self.rank(), omega: self.omega(), tried: self.tried });
            }
            match step {
                Step::Continue => {}
                Step::Found => return Ok(CertifyOutcome::Certificate(Box::new(self.certificate()?))),
                Step::Exhausted(r) => return Ok(CertifyOutcome::NotInSpanAtBudget(self.report(Some(r)))),
            }
        }
    }

    fn offer(&mut self, v: CoefficientVector) -> Step {
        self.tried += 1;
        let id = self.elements.len();
        if self.basis.insert(id, &v.values) {
            self.elements.push(v);
            self.cursor.closure_queue.push_back(id);
            self.history.push(RankEvent { tried: self.tried, rank: self.rank() });
            if self.basis.tracked_in_span() {
                return Step::Found;
            }
        }
        Step::Continue
    }

    fn step(&mut self) -> Result<(Phase, Step), CertifyError> {
        if let Some(&id) = self.cursor.closure_queue.front() {
            let r = boxalg::rot(&self.elements[id], self.index, Derivation::Rot { of: id });
            let i = boxalg::invrot(&self.elements[id], self.index, Derivation::InvRot { of: id });
            self.cursor.closure_queue.pop_front();
            for v in [r, i] {
                if let Step::Found = self.offer(v) {
                    return Ok((Phase::Rotations, Step::Found));
                }
            }
            return Ok((Phase::Rotations, Step::Continue));
        }
        if self.cursor.next_diagram < self.catalog.len() {
            let d = &self.catalog[self.cursor.next_diagram];
            let v = coeff_vector(self.g, self.index, d)?;
            self.cursor.next_diagram += 1;
            return Ok((Phase::Diagrams, self.offer(v)));
        }
        let m = self.cursor.product_level;
        if m >= self.elements.len() {
            return Ok((Phase::Products, Step::Exhausted(StopReason::Closed)));
        }
        if self.cursor.products_tried >= self.config.max_products {
            return Ok((Phase::Products, Step::Exhausted(StopReason::ProductBudget)));
        }
        // pairs with larger index m: (0,m), (m,0), (1,m), (m,1), ..., (m,m)
        let s = self.cursor.product_step;
        let i = s / 2;
        let (l, r) = if s.is_multiple_of(2) { (i, m) } else { (m, i) };
        let v = boxalg::box_product(
            &self.elements[l],
            &self.elements[r],
            self.table,
            Derivation::Product { left: l, right: r },
        )?;
        self.cursor.products_tried += 1;
        if s >= 2 * m {
            self.cursor.product_level += 1;
            self.cursor.product_step = 0;
        } else {
            self.cursor.product_step += 1;
        }
        Ok((Phase::Products, self.offer(v)))
    }

    /// Certificate from the current span, which must contain the flip.
    fn certificate(&self) -> Result<Certificate, CertifyError> {
        let coeffs = self
            .basis
            .solve(&self.flip.values)
            .ok_or_else(|| CertifyError::Malformed("flip is not in the span".into()))?;
        // members are inserted with their element ids, in order
        debug_assert!(self.basis.members().iter().enumerate().all(|(i, &m)| i == m));
        Certificate::assemble(self.g, self.index, &self.elements, &coeffs)
    }
}

/// Builds the index and table for `g` and runs a session with no progress output.
pub fn certify(g: &Graph, config: CertifyConfig) -> Result<CertifyOutcome, CertifyError> {
    let group = crate::symmetry::automorphism_group(g);
    let index = OrbitIndex::build(g, &group, 4)?;
    let table = MultiplicityTable::build(&index);
    Session::new(g, &index, &table, config)?.run(&mut |_| {})
}

pub(crate) fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, CertifyError> {
    let (n, d) = s.split_once('/').ok_or_else(|| CertifyError::Malformed(format!("rational {s:?}")))?;
    let n = n.parse().map_err(|_| CertifyError::Malformed(format!("rational {s:?}")))?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| CertifyError::Malformed(format!("rational {s:?}")))?;
    if d <= num_bigint::BigInt::from(0) {
        return Err(CertifyError::Malformed(format!("non-positive denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}
