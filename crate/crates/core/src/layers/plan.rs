use serde::{Deserialize, Serialize};

use super::{build_constraints, validate_against, LayerError, Layering};
use crate::sheet::FoldedSheet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Mountain,
    Valley,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Mountain => Sign::Valley,
            Sign::Valley => Sign::Mountain,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "lowercase")]
pub enum FoldStep {
    /// Fold the stack holding `mover` onto the face across `crease`. A
    /// valley fold puts it on the viewer's side of that face.
    Fold { crease: usize, mover: usize, sign: Sign },
    /// Fold a chain of creases in order, each carrying the next face along.
    Pleat { creases: Vec<(usize, Sign)> },
    /// Like `Fold`, but the moving stack lands outside everything already
    /// stacked on that side of the host, as a rigid fold of thick paper does.
    Wrap { crease: usize, mover: usize, sign: Sign },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub steps: Vec<FoldStep>,
}

impl FoldPlan {
    pub fn push_fold(&mut self, crease: usize, mover: usize, sign: Sign) {
        self.steps.push(FoldStep::Fold { crease, mover, sign });
    }

    pub fn push_wrap(&mut self, crease: usize, mover: usize, sign: Sign) {
        self.steps.push(FoldStep::Wrap { crease, mover, sign });
    }
}

struct Stacks<'a> {
    sheet: &'a FoldedSheet,
    unit_of: Vec<usize>,
    units: Vec<Vec<usize>>,
}

impl Stacks<'_> {
    fn fold(
        &mut self,
        step: usize,
        crease: usize,
        mover: usize,
        sign: Sign,
        outside: bool,
    ) -> Result<(), LayerError> {
        let conflict = |reason: String| LayerError::PlanConflict { step, reason };
        let (a, b) = self
            .sheet
            .creases
            .get(crease)
            .ok_or_else(|| conflict(format!("unknown crease {crease}")))?
            .faces;
        let host = if mover == a {
            b
        } else if mover == b {
            a
        } else {
            return Err(conflict(format!("face {mover} is not beside crease {crease}")));
        };
        let (mu, hu) = (self.unit_of[mover], self.unit_of[host]);
        if mu == hu {
            return Err(conflict(format!("crease {crease} folds a stack onto itself")));
        }
        let above = (sign == Sign::Valley) != self.sheet.reversed(host);
        let moved = std::mem::take(&mut self.units[mu]);
        let host_stack = std::mem::take(&mut self.units[hu]);
        // the moved block lands right next to its hinge face, or outermost
        let at = host_stack.iter().position(|&f| f == host).expect("host in its unit");
        let cut = match (outside, above) {
            (true, true) => host_stack.len(),
            (true, false) => 0,
            (false, true) => at + 1,
            (false, false) => at,
        };
        let mut merged = host_stack;
        merged.splice(cut..cut, moved);
        for &f in &merged {
            self.unit_of[f] = hu;
        }
        self.units[hu] = merged;
        Ok(())
    }

    fn pleat(&mut self, step: usize, creases: &[(usize, Sign)]) -> Result<(), LayerError> {
        let faces = |c: usize| {
            self.sheet.creases.get(c).map(|x| x.faces).ok_or(LayerError::PlanConflict {
                step,
                reason: format!("unknown crease {c}"),
            })
        };
        let Some(&(c0, _)) = creases.first() else {
            return Ok(());
        };
        let (a, b) = faces(c0)?;
        let mut host = a;
        if let Some(&(c1, _)) = creases.get(1) {
            let (p, q) = faces(c1)?;
            if a == p || a == q {
                host = b;
            }
        }
        for &(c, sign) in creases {
            let (a, b) = faces(c)?;
            let cur = self.unit_of[host];
            let mover = if self.unit_of[a] == cur {
                b
            } else if self.unit_of[b] == cur {
                a
            } else {
                return Err(LayerError::PlanConflict {
                    step,
                    reason: format!("pleat crease {c} is not next to the folded chain"),
                });
            };
            self.fold(step, c, mover, sign, false)?;
        }
        Ok(())
    }
}

/// Execute the plan: each fold inserts the moving stack directly above or
/// below the face it is hinged to. The resulting total order is restricted
/// to overlapping pairs and checked.
pub fn plan_to_layering(plan: &FoldPlan, sheet: &FoldedSheet) -> Result<Layering, LayerError> {
    let n = sheet.faces.len();
    let mut st = Stacks {
        sheet,
        unit_of: (0..n).collect(),
        units: (0..n).map(|f| vec![f]).collect(),
    };
    for (i, step) in plan.steps.iter().enumerate() {
        match step {
            FoldStep::Fold { crease, mover, sign } | FoldStep::Wrap { crease, mover, sign } => {
                if *mover >= n {
                    return Err(LayerError::PlanConflict {
                        step: i,
                        reason: format!("unknown face {mover}"),
                    });
                }
                let outside = matches!(step, FoldStep::Wrap { .. });
                st.fold(i, *crease, *mover, *sign, outside)?
            }
            FoldStep::Pleat { creases } => st.pleat(i, creases)?,
        }
    }
    let stack: Vec<usize> = st.units.concat();
    let cons = build_constraints(sheet);
    let layering = Layering::from_stack(&stack, &cons.pairs);
    let report = validate_against(&cons, &layering)?;
    if let Some(v) = report.violations.first() {
        return Err(LayerError::PlanConflict {
            step: plan.steps.len(),
            reason: format!("resulting order violates {v:?}"),
        });
    }
    Ok(layering)
}
