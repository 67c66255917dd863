use serde::Serialize;

use super::{OuterError, OuterPattern, Region};
use crate::graph::MultiGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpineInfo {
    pub vertices: Vec<usize>,
    pub leaves: usize,
}

/// The tree minus its degree-one vertices. Trees with one or two vertices
/// have no spine in that sense; they count as their own spine with one
/// leaf per vertex.
pub fn spine(t: &MultiGraph) -> SpineInfo {
    if t.n <= 2 {
        return SpineInfo {
            vertices: (0..t.n).collect(),
            leaves: t.n,
        };
    }
    let deg: Vec<usize> = (0..t.n).map(|v| t.degree(v)).collect();
    let vertices: Vec<usize> = (0..t.n).filter(|&v| deg[v] > 1).collect();
    if vertices.len() == 1 {
        return SpineInfo { vertices, leaves: 1 };
    }
    let leaves = vertices
        .iter()
        .filter(|&&v| {
            t.adjacency()[v]
                .iter()
                .filter(|(w, _)| deg[*w] > 1)
                .count()
                == 1
        })
        .count();
    SpineInfo { vertices, leaves }
}

const INF: usize = usize::MAX / 4;

/// Where a vertex sits inside the boundary interval of its subtree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ends {
    Both,
    Left,
    Right,
    Neither,
}

/// Costs per subtree: consecutive tree-adjacent pairs inside the interval
/// when the subtree root is at both ends, at one end, or at neither.
#[derive(Clone, Copy, Debug)]
struct Cost {
    both: usize,
    one: usize,
    neither: usize,
}

impl Cost {
    fn best(&self) -> usize {
        self.both.min(self.one).min(self.neither)
    }

    /// Cost when the interval touches the parent at one end.
    fn touching(&self) -> usize {
        (self.both + 1).min(self.one).min(self.neither)
    }

    fn delta(&self) -> usize {
        self.touching() - self.best()
    }

    /// State achieving `touching`, with the parent on the right.
    fn touching_state(&self) -> Ends {
        let t = self.touching();
        if self.one == t {
            Ends::Left
        } else if self.neither == t {
            Ends::Neither
        } else {
            Ends::Both
        }
    }

    fn best_state(&self) -> Ends {
        let b = self.best();
        if self.one == b {
            Ends::Left
        } else if self.neither == b {
            Ends::Neither
        } else {
            Ends::Both
        }
    }
}

struct Layout {
    children: Vec<Vec<usize>>,
    cost: Vec<Cost>,
}

impl Layout {
    fn new(t: &MultiGraph, root: usize) -> Layout {
        let adj = t.adjacency();
        let mut children = vec![vec![]; t.n];
        let mut order = vec![root];
        let mut seen = vec![false; t.n];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    children[v].push(w);
                    order.push(w);
                }
            }
            i += 1;
        }
        let mut cost = vec![Cost { both: 0, one: INF, neither: INF }; t.n];
        for &v in order.iter().rev() {
            let kids = &children[v];
            if kids.is_empty() {
                continue;
            }
            let sum: usize = kids.iter().map(|&c| cost[c].best()).sum();
            let mut deltas: Vec<usize> = kids.iter().map(|&c| cost[c].delta()).collect();
            deltas.sort_unstable();
            cost[v] = Cost {
                both: INF,
                one: sum + deltas[0],
                neither: if kids.len() >= 2 { sum + deltas[0] + deltas[1] } else { INF },
            };
        }
        Layout { children, cost }
    }

    fn by_delta(&self, v: usize) -> Vec<usize> {
        let mut kids = self.children[v].clone();
        kids.sort_by_key(|&c| (self.cost[c].delta(), c));
        kids
    }

    /// Boundary order of the subtree of `v` in state `s`.
    fn build(&self, v: usize, s: Ends) -> Vec<usize> {
        match s {
            Ends::Both => vec![v],
            Ends::Left => {
                let mut out = self.build(v, Ends::Right);
                out.reverse();
                out
            }
            Ends::Right => {
                // all children on the left, the cheapest one next to `v`
                let kids = self.by_delta(v);
                let mut out = vec![];
                for &c in kids[1..].iter() {
                    out.extend(self.build(c, self.cost[c].best_state()));
                }
                out.extend(self.build(kids[0], self.cost[kids[0]].touching_state()));
                out.push(v);
                out
            }
            Ends::Neither => {
                let kids = self.by_delta(v);
                let mut out = vec![];
                for &c in kids[2..].iter() {
                    out.extend(self.build(c, self.cost[c].best_state()));
                }
                out.extend(self.build(kids[0], self.cost[kids[0]].touching_state()));
                out.push(v);
                let mut right = self.build(kids[1], self.cost[kids[1]].touching_state());
                right.reverse();
                out.extend(right);
                out
            }
        }
    }

    /// Cyclic boundary order starting at the root.
    fn cyclic(&self, root: usize) -> Vec<usize> {
        let kids = self.by_delta(root);
        match kids.len() {
            0 => vec![root],
            1 => {
                let c = self.cost[kids[0]];
                let s = [(c.both + 2, Ends::Both), (c.one + 1, Ends::Left), (c.neither, Ends::Neither)]
                    .into_iter()
                    .min_by_key(|x| x.0)
                    .unwrap()
                    .1;
                let mut out = vec![root];
                out.extend(self.build(kids[0], s));
                out
            }
            _ => {
                let mut out = vec![root];
                let mut first = self.build(kids[1], self.cost[kids[1]].touching_state());
                first.reverse();
                out.extend(first);
                for &c in kids[2..].iter() {
                    out.extend(self.build(c, self.cost[c].best_state()));
                }
                out.extend(self.build(kids[0], self.cost[kids[0]].touching_state()));
                out
            }
        }
    }
}

fn adjacent(t: &MultiGraph, a: usize, b: usize) -> bool {
    t.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
}

/// A non-crossing cyclic boundary order of the tree cut into the fewest
/// runs of pairwise non-adjacent vertices. Each run can share one polygon
/// side, so the run count is the number of sides the tree needs.
fn boundary_runs(t: &MultiGraph) -> Vec<Vec<usize>> {
    if t.n == 0 {
        return vec![];
    }
    let order = Layout::new(t, 0).cyclic(0);
    let n = order.len();
    let cuts: Vec<usize> = (0..n)
        .filter(|&i| adjacent(t, order[i], order[(i + 1) % n]))
        .collect();
    let Some(&last) = cuts.last() else {
        return vec![order];
    };
    let rotated: Vec<usize> = (0..n).map(|i| order[(last + 1 + i) % n]).collect();
    let mut runs = vec![vec![]];
    for i in 0..n {
        runs.last_mut().unwrap().push(rotated[i]);
        if i + 1 < n && adjacent(t, rotated[i], rotated[i + 1]) {
            runs.push(vec![]);
        }
    }
    runs
}

/// Fewest polygon sides on which the tree can be drawn as an outer
/// folding (no folding point at a corner).
pub fn min_sides(t: &MultiGraph) -> Result<usize, OuterError> {
    if !t.is_tree() {
        return Err(OuterError::NotATree);
    }
    Ok(boundary_runs(t).len())
}

/// Draw a tree as non-crossing chords on a convex polygon. Vertex `i`
/// becomes point `i`; every run of the boundary order gets its own side,
/// with points spread evenly away from the corners.
pub fn realize_tree_on_polygon(t: &MultiGraph, region: &Region) -> Result<OuterPattern, OuterError> {
    let Region::Polygon { corners } = region else {
        return Err(OuterError::WrongRegion("polygon"));
    };
    if !t.is_tree() {
        return Err(OuterError::NotATree);
    }
    let runs = boundary_runs(t);
    let k = corners.len();
    if runs.len() > k {
        return Err(OuterError::TooFewSides { needed: runs.len(), sides: k });
    }
    let mut p = OuterPattern::new(region.clone());
    for (j, run) in runs.iter().enumerate() {
        let (a, b) = (corners[j], corners[(j + 1) % k]);
        for (i, &v) in run.iter().enumerate() {
            let s = (i + 1) as f64 / (run.len() + 1) as f64;
            p.points.insert(v, a.lerp(b, s));
        }
    }
    p.chords = t.edges.clone();
    Ok(p)
}

/// Draw a tree on the unit square, refusing trees whose spine has more
/// than four leaves.
pub fn realize_tree_on_square(t: &MultiGraph) -> Result<OuterPattern, OuterError> {
    if !t.is_tree() {
        return Err(OuterError::NotATree);
    }
    let leaves = spine(t).leaves;
    if leaves > 4 {
        return Err(OuterError::SpineLeaves(leaves));
    }
    realize_tree_on_polygon(t, &Region::unit_square())
}

/// A tree folds on a square iff its spine has at most four leaves.
pub fn square_tree_realizable(t: &MultiGraph) -> bool {
    t.is_tree() && spine(t).leaves <= 4
}
