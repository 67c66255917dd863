//! Connectivity of folding graphs: vertex and edge connectivity with
//! witnesses, articulation at infinity and small vertex separators.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::graph::MultiGraph;
use crate::pattern::{folding_graph, CreasePattern, FoldingGraph, Node, PatternError, VertexId};
use crate::treefold::{realize_tree, PlaneTree, TreeError, TreeRealization};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConnError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertex at infinity")]
    NoInfinity,
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Unit-capacity flow network on directed arcs.
struct Flow {
    head: Vec<usize>,
    cap: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow { head: vec![], cap: vec![], adj: vec![vec![]; n] }
    }

    /// Arc `u -> v` with capacity `c`; its reverse arc is the next index.
    fn arc(&mut self, u: usize, v: usize, c: i32) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(c);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize, bound: usize) -> usize {
        let mut flow = 0;
        while flow < bound {
            let mut prev = vec![usize::MAX; self.adj.len()];
            prev[s] = usize::MAX - 1;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &a in &self.adj[u] {
                    let v = self.head[a];
                    if self.cap[a] > 0 && prev[v] == usize::MAX {
                        prev[v] = a;
                        q.push_back(v);
                    }
                }
            }
            if prev[t] == usize::MAX {
                break;
            }
            let mut v = t;
            while v != s {
                let a = prev[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Nodes reachable from `s` in the residual network.
    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let v = self.head[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
        seen
    }
}

/// Minimum edge cut of a connected multigraph: its size and edge ids.
/// `None` for graphs with fewer than two nodes.
pub fn edge_connectivity(g: &MultiGraph) -> Option<(usize, Vec<usize>)> {
    if g.n < 2 {
        return None;
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for t in 1..g.n {
        let mut f = Flow::new(g.n);
        for &(a, b) in &g.edges {
            if a != b {
                f.arc(a, b, 1);
                f.arc(b, a, 1);
            }
        }
        let bound = best.as_ref().map_or(usize::MAX, |b| b.0);
        let k = f.max_flow(0, t, bound);
        if k < bound {
            let side = f.reachable(0);
            let cut = (0..g.edges.len())
                .filter(|&e| {
                    let (a, b) = g.edges[e];
                    side[a] != side[b]
                })
                .collect();
            best = Some((k, cut));
        }
    }
    best
}

/// Minimum vertex separator of a connected multigraph. `None` when no set
/// of vertices separates the graph (every pair adjacent), in which case
/// the graph counts as k-connected for every k.
pub fn vertex_connectivity(g: &MultiGraph) -> Option<(usize, Vec<usize>)> {
    let adjacent = {
        let mut m = vec![vec![false; g.n]; g.n];
        for &(a, b) in &g.edges {
            m[a][b] = true;
            m[b][a] = true;
        }
        m
    };
    let mut best: Option<(usize, Vec<usize>)> = None;
    for s in 0..g.n {
        for t in s + 1..g.n {
            if adjacent[s][t] {
                continue;
            }
            // v_in = 2v, v_out = 2v + 1
            let mut f = Flow::new(2 * g.n);
            for v in 0..g.n {
                let c = if v == s || v == t { g.n as i32 } else { 1 };
                f.arc(2 * v, 2 * v + 1, c);
            }
            for &(a, b) in &g.edges {
                if a != b {
                    f.arc(2 * a + 1, 2 * b, g.n as i32);
                    f.arc(2 * b + 1, 2 * a, g.n as i32);
                }
            }
            let bound = best.as_ref().map_or(usize::MAX, |b| b.0);
            let k = f.max_flow(2 * s + 1, 2 * t, bound);
            if k < bound {
                let side = f.reachable(2 * s + 1);
                let cut = (0..g.n).filter(|&v| side[2 * v] && !side[2 * v + 1]).collect();
                best = Some((k, cut));
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnReport {
    /// `None` when no vertex set separates the graph.
    pub vertex_connectivity: Option<usize>,
    /// `None` for a single node.
    pub edge_connectivity: Option<usize>,
    /// Whether removing infinity disconnects the graph (`None` without it).
    pub infinity_articulation: Option<bool>,
    pub min_vertex_cut: Vec<Node>,
    /// Crease ids of a minimum edge cut.
    pub min_edge_cut: Vec<usize>,
    pub min_degree: usize,
}

impl ConnReport {
    pub fn is_k_vertex_connected(&self, k: usize) -> bool {
        self.vertex_connectivity.map_or(true, |c| c >= k)
    }

    pub fn is_k_edge_connected(&self, k: usize) -> bool {
        self.edge_connectivity.map_or(true, |c| c >= k)
    }
}

pub fn connectivity(fg: &FoldingGraph) -> Result<ConnReport, ConnError> {
    let g = &fg.graph;
    if !g.is_connected() {
        return Err(ConnError::Disconnected);
    }
    let vc = vertex_connectivity(g);
    let ec = edge_connectivity(g);
    Ok(ConnReport {
        vertex_connectivity: vc.as_ref().map(|c| c.0),
        edge_connectivity: ec.as_ref().map(|c| c.0),
        infinity_articulation: infinity_not_articulation(fg).ok().map(|ok| !ok),
        min_vertex_cut: vc.map_or(vec![], |c| c.1.into_iter().map(|i| fg.nodes[i]).collect()),
        min_edge_cut: ec.map_or(vec![], |c| c.1),
        min_degree: (0..g.n).map(|v| g.degree(v)).min().unwrap_or(0),
    })
}

/// Whether the graph stays connected once infinity is removed.
pub fn infinity_not_articulation(fg: &FoldingGraph) -> Result<bool, ConnError> {
    let inf = fg.infinity().ok_or(ConnError::NoInfinity)?;
    Ok(fg.graph.components_without(&[inf], &[]) <= 1)
}

/// Brute force over sets of at most three vertex points whose removal
/// disconnects the folding graph. Returns the first such set.
pub fn three_point_separator_search(p: &CreasePattern) -> Result<Option<Vec<VertexId>>, ConnError> {
    let fg = folding_graph(p)?;
    let points: Vec<(usize, VertexId)> = fg
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(i, n)| match n {
            Node::Vertex(v) => Some((i, *v)),
            Node::Infinity => None,
        })
        .collect();
    let m = points.len();
    let splits = |set: &[usize]| {
        let removed: Vec<usize> = set.iter().map(|&k| points[k].0).collect();
        fg.graph.components_without(&removed, &[]) > 1
    };
    let ids = |set: &[usize]| set.iter().map(|&k| points[k].1).collect::<Vec<_>>();
    for a in 0..m {
        if splits(&[a]) {
            return Ok(Some(ids(&[a])));
        }
    }
    for a in 0..m {
        for b in a + 1..m {
            if splits(&[a, b]) {
                return Ok(Some(ids(&[a, b])));
            }
        }
    }
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                if splits(&[a, b, c]) {
                    return Ok(Some(ids(&[a, b, c])));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct TightnessWitness {
    pub name: &'static str,
    pub tree: PlaneTree,
    pub realization: TreeRealization,
    pub report: ConnReport,
}

/// Two tree realizations showing the connectivity bounds are tight: a path
/// of three degree-4 nodes (vertex connectivity exactly 2) and the 4-star
/// (edge connectivity exactly 4).
pub fn tightness_witnesses() -> Result<(TightnessWitness, TightnessWitness), ConnError> {
    let make = |name, tree: PlaneTree| -> Result<TightnessWitness, ConnError> {
        let realization = realize_tree(&tree)?;
        let report = connectivity(&folding_graph(&realization.pattern)?)?;
        Ok(TightnessWitness { name, tree, realization, report })
    };
    let path = PlaneTree::from_children(&[
        vec![1, 2, 3, 4],
        vec![5, 6, 7],
        vec![],
        vec![8, 9, 10],
        vec![],
        vec![],
        vec![],
        vec![],
        vec![],
        vec![],
        vec![],
    ]);
    Ok((make("degree-4 path", path)?, make("4-star", PlaneTree::star(4))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Point2, TurnAngle};

    #[test]
    fn one_vertex_pattern() {
        // {v, inf} with four parallel edges
        let g = MultiGraph::with_edges(2, vec![(0, 1); 4]);
        assert_eq!(edge_connectivity(&g).unwrap().0, 4);
        assert_eq!(vertex_connectivity(&g), None);
    }

    #[test]
    fn path_tree_graph() {
        // v1 v2 v3 inf
        let mut edges = vec![(0, 1), (1, 2)];
        edges.extend([(0, 3); 3]);
        edges.extend([(1, 3); 2]);
        edges.extend([(2, 3); 3]);
        let g = MultiGraph::with_edges(4, edges);
        let (k, cut) = vertex_connectivity(&g).unwrap();
        assert_eq!(k, 2);
        assert_eq!(cut, vec![1, 3]);
        let (l, ecut) = edge_connectivity(&g).unwrap();
        assert_eq!(l, 4);
        assert_eq!(g.components_without(&[], &ecut), 2);
    }

    #[test]
    fn tightness() {
        let (kappa, lambda) = tightness_witnesses().unwrap();
        assert_eq!(kappa.report.vertex_connectivity, Some(2));
        assert_eq!(kappa.report.edge_connectivity, Some(4));
        assert_eq!(lambda.report.edge_connectivity, Some(4));
        assert_eq!(kappa.report.infinity_articulation, Some(false));
        let cut = &kappa.report.min_vertex_cut;
        assert!(cut.contains(&Node::Infinity) && cut.len() == 2);
    }

    #[test]
    fn separator_search_discriminates() {
        let star = realize_tree(&PlaneTree::star(4)).unwrap();
        assert_eq!(three_point_separator_search(&star.pattern).unwrap(), None);
        // triangle of segments enclosing a vertex tied only to its corners
        let mut p = CreasePattern::new();
        let c = p.add_vertex(Point2::ORIGIN);
        let corners: Vec<_> = (0..3)
            .map(|k| p.add_vertex(Point2::unit(TurnAngle::turns(k, 3)).scale(2.0)))
            .collect();
        for k in 0..3 {
            p.add_segment(corners[k], corners[(k + 1) % 3]);
            p.add_segment(c, corners[k]);
        }
        for k in 0..3 {
            p.add_ray(corners[k], TurnAngle::turns(k as i64, 3));
        }
        let sep = three_point_separator_search(&p).unwrap().unwrap();
        assert_eq!(sep, corners);
    }
}
