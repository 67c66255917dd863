//! Layer orderings certifying that a local flat folding can be realized
//! without self-intersection. A layering gives one above/below bit per pair
//! of faces whose images overlap; validity is checked per overlay cell and
//! along crease images (taco conditions).

mod cells;
mod plan;
mod search;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sheet::FoldedSheet;

pub use cells::{build_constraints, overlay_cells, Cell, Constraint, Constraints};
pub use plan::{plan_to_layering, FoldPlan, FoldStep, Sign};
pub use search::{search_layering, SearchOutcome, DEFAULT_FACE_LIMIT};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LayerError {
    #[error("layering has no order for overlapping faces {0} and {1}")]
    MissingPair(usize, usize),
    #[error("{faces} faces exceed the search limit of {limit}")]
    TooManyFaces { faces: usize, limit: usize },
    #[error("plan step {step}: {reason}")]
    PlanConflict { step: usize, reason: String },
}

/// Pairwise stacking order. `(a, b)` in `below` means face `a` lies under
/// face `b` wherever their images overlap.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layering {
    pub below: BTreeSet<(usize, usize)>,
}

impl Layering {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_below(&mut self, a: usize, b: usize) {
        self.below.remove(&(b, a));
        self.below.insert((a, b));
    }

    pub fn is_below(&self, a: usize, b: usize) -> Option<bool> {
        if self.below.contains(&(a, b)) {
            Some(true)
        } else if self.below.contains(&(b, a)) {
            Some(false)
        } else {
            None
        }
    }

    /// Restrict a total bottom-to-top order to the given pairs.
    pub fn from_stack(stack: &[usize], pairs: &BTreeSet<(usize, usize)>) -> Self {
        let mut pos = vec![usize::MAX; stack.iter().max().map_or(0, |m| m + 1)];
        for (i, &f) in stack.iter().enumerate() {
            pos[f] = i;
        }
        let mut l = Layering::new();
        for &(a, b) in pairs {
            if pos.get(a).copied().unwrap_or(usize::MAX) < pos.get(b).copied().unwrap_or(usize::MAX) {
                l.set_below(a, b);
            } else {
                l.set_below(b, a);
            }
        }
        l
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LayerViolation {
    Cycle { faces: [usize; 3] },
    TacoTortilla { crease: usize, face: usize },
    TacoTaco { creases: [usize; 2] },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayeringReport {
    pub pairs: usize,
    pub constraints: usize,
    pub violations: Vec<LayerViolation>,
}

impl LayeringReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_layering(sheet: &FoldedSheet, l: &Layering) -> Result<LayeringReport, LayerError> {
    let cons = build_constraints(sheet);
    validate_against(&cons, l)
}

pub(crate) fn validate_against(cons: &Constraints, l: &Layering) -> Result<LayeringReport, LayerError> {
    for &(a, b) in &cons.pairs {
        if l.is_below(a, b).is_none() {
            return Err(LayerError::MissingPair(a, b));
        }
    }
    let below = |a: usize, b: usize| l.is_below(a, b);
    let violations = cons
        .list
        .iter()
        .filter(|c| c.eval(&below) == Some(false))
        .map(Constraint::violation)
        .collect();
    Ok(LayeringReport {
        pairs: cons.pairs.len(),
        constraints: cons.list.len(),
        violations,
    })
}
