use std::collections::BTreeMap;

use super::{build_constraints, Constraints, LayerError, Layering};
use crate::sheet::FoldedSheet;

pub const DEFAULT_FACE_LIMIT: usize = 14;

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Found(Layering),
    NoneFound,
}

impl SearchOutcome {
    pub fn layering(&self) -> Option<&Layering> {
        match self {
            SearchOutcome::Found(l) => Some(l),
            SearchOutcome::NoneFound => None,
        }
    }
}

struct Solver<'a> {
    cons: &'a Constraints,
    vars: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    var_cons: Vec<Vec<usize>>,
    con_vars: Vec<Vec<usize>>,
    assign: Vec<Option<bool>>,
    trail: Vec<usize>,
}

impl<'a> Solver<'a> {
    fn new(cons: &'a Constraints) -> Self {
        let vars: Vec<(usize, usize)> = cons.pairs.iter().copied().collect();
        let index: BTreeMap<_, _> = vars.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut var_cons = vec![vec![]; vars.len()];
        let mut con_vars = vec![];
        for (ci, c) in cons.list.iter().enumerate() {
            let mut vs: Vec<usize> = c.pairs().iter().map(|p| index[p]).collect();
            vs.sort_unstable();
            vs.dedup();
            for &v in &vs {
                var_cons[v].push(ci);
            }
            con_vars.push(vs);
        }
        Solver {
            cons,
            assign: vec![None; vars.len()],
            vars,
            index,
            var_cons,
            con_vars,
            trail: vec![],
        }
    }

    fn eval(&self, ci: usize) -> Option<bool> {
        let below = |a: usize, b: usize| {
            let v = self.assign[*self.index.get(&(a.min(b), a.max(b)))?]?;
            Some(if a < b { v } else { !v })
        };
        self.cons.list[ci].eval(&below)
    }

    fn set(&mut self, v: usize, val: bool) {
        self.assign[v] = Some(val);
        self.trail.push(v);
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let v = self.trail.pop().expect("trail not empty");
            self.assign[v] = None;
        }
    }

    /// Unit propagation from freshly assigned `v`. False on conflict.
    fn propagate(&mut self, v: usize) -> bool {
        let mut queue = vec![v];
        while let Some(x) = queue.pop() {
            for k in 0..self.var_cons[x].len() {
                let ci = self.var_cons[x][k];
                match self.eval(ci) {
                    Some(false) => return false,
                    Some(true) => continue,
                    None => {}
                }
                let open: Vec<usize> = self.con_vars[ci]
                    .iter()
                    .copied()
                    .filter(|&u| self.assign[u].is_none())
                    .collect();
                if open.len() != 1 {
                    continue;
                }
                let u = open[0];
                self.assign[u] = Some(true);
                let t_ok = self.eval(ci) != Some(false);
                self.assign[u] = Some(false);
                let f_ok = self.eval(ci) != Some(false);
                self.assign[u] = None;
                match (t_ok, f_ok) {
                    (false, false) => return false,
                    (true, false) => self.set(u, true),
                    (false, true) => self.set(u, false),
                    (true, true) => continue,
                }
                queue.push(u);
            }
        }
        true
    }

    /// Unassigned pair touching the most already-decided constraint slots.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..self.vars.len() {
            if self.assign[v].is_some() {
                continue;
            }
            let mut score = 0;
            for &ci in &self.var_cons[v] {
                score += self.con_vars[ci].iter().filter(|&&u| self.assign[u].is_some()).count();
            }
            let key = (score, self.var_cons[v].len(), usize::MAX - v);
            if best.map_or(true, |b| key > b) {
                best = Some(key);
            }
        }
        best.map(|(_, _, nv)| usize::MAX - nv)
    }

    fn dfs(&mut self, first: bool) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        // flipping the whole stack preserves validity, so the first
        // decision needs only one branch
        let values: &[bool] = if first { &[true] } else { &[true, false] };
        for &val in values {
            let mark = self.trail.len();
            self.set(v, val);
            if self.propagate(v) && self.dfs(false) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Backtracking search over pairwise orders with unit propagation.
pub fn search_layering(sheet: &FoldedSheet, limit: usize) -> Result<SearchOutcome, LayerError> {
    if sheet.faces.len() > limit {
        return Err(LayerError::TooManyFaces {
            faces: sheet.faces.len(),
            limit,
        });
    }
    let cons = build_constraints(sheet);
    let mut s = Solver::new(&cons);
    if !s.dfs(true) {
        return Ok(SearchOutcome::NoneFound);
    }
    let mut l = Layering::new();
    for (i, &(a, b)) in s.vars.iter().enumerate() {
        if s.assign[i] == Some(true) {
            l.set_below(a, b);
        } else {
            l.set_below(b, a);
        }
    }
    Ok(SearchOutcome::Found(l))
}
