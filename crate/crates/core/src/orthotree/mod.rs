//! Wheel replacement on plane multigraphs and its realization by folding
//! the paper over a corner. Repeating it from the two-vertex, four-edge
//! multigraph generates the dual orthotrees.

mod fold;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::foldcheck::FoldError;
use crate::pattern::{FoldingGraph, Node, PatternError};

pub use fold::{
    asymptotic_image_wedge, quarter_fold, realize_dual_orthotree, same_labelled, wheel_replace_fold,
    wheel_replace_fold_at, OrthoRealization,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrthoError {
    #[error("node {0} does not exist")]
    UnknownNode(Node),
    #[error("node {node} has degree {degree}; wheel replacement needs at least 3")]
    Degree { node: Node, degree: usize },
    #[error("node {0} has a loop")]
    Loop(Node),
    #[error("no safe chord distance around {0}")]
    NoSafeDelta(Node),
    #[error("folded image is not inside a wedge narrower than half a turn")]
    NotInWedge,
    #[error("node {0} is not the hub of a wheel")]
    NotAWheel(Node),
    #[error("realized graph does not match the replayed graph")]
    GraphMismatch,
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Fold(#[from] FoldError),
}

/// Replace `target` by a wheel. Cycle vertex `k` takes over the `k`-th edge
/// of the target's rotation; the hub keeps the target's id and cycle
/// vertices get fresh ids in that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelStep {
    pub target: Node,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualOrthotreeSpec {
    pub steps: Vec<WheelStep>,
}

impl DualOrthotreeSpec {
    pub fn new(targets: &[Node]) -> Self {
        DualOrthotreeSpec {
            steps: targets.iter().map(|&target| WheelStep { target }).collect(),
        }
    }

    /// The Dalí cross: a column of four cubes below the top face (infinity)
    /// with four arms on the second cube. Each step glues a cube onto the
    /// face of the target vertex.
    pub fn dali_cross() -> Self {
        let v = Node::Vertex;
        DualOrthotreeSpec::new(&[v(0), v(0), v(0), v(0), v(5), v(6), v(7), v(8)])
    }
}

fn next_vertex_id(g: &FoldingGraph) -> usize {
    g.nodes
        .iter()
        .filter_map(|n| match n {
            Node::Vertex(v) => Some(v + 1),
            Node::Infinity => None,
        })
        .max()
        .unwrap_or(0)
}

pub fn wheel_replace_graph(g: &FoldingGraph, step: &WheelStep) -> Result<FoldingGraph, OrthoError> {
    let t = g.index_of(step.target).ok_or(OrthoError::UnknownNode(step.target))?;
    let old = g.rotation[t].clone();
    let d = old.len();
    if d < 3 {
        return Err(OrthoError::Degree { node: step.target, degree: d });
    }
    let mut out = g.clone();
    let first = next_vertex_id(g);
    let cycle: Vec<usize> = (0..d)
        .map(|k| {
            out.nodes.push(Node::Vertex(first + k));
            out.graph.n += 1;
            out.rotation.push(vec![]);
            out.nodes.len() - 1
        })
        .collect();
    for (k, &e) in old.iter().enumerate() {
        let (a, b) = out.graph.edges[e];
        if a == b {
            return Err(OrthoError::Loop(step.target));
        }
        out.graph.edges[e] = if a == t { (cycle[k], b) } else { (a, cycle[k]) };
    }
    let cyc: Vec<usize> = (0..d)
        .map(|k| out.graph.add_edge(cycle[k], cycle[(k + 1) % d]))
        .collect();
    let hub: Vec<usize> = (0..d).map(|k| out.graph.add_edge(t, cycle[k])).collect();
    // rotations at infinity are listed as seen from the finite plane, which
    // mirrors the order around the new cycle vertices
    let mirrored = step.target == Node::Infinity;
    for k in 0..d {
        let prev = cyc[(k + d - 1) % d];
        out.rotation[cycle[k]] = if mirrored {
            vec![old[k], prev, hub[k], cyc[k]]
        } else {
            vec![old[k], cyc[k], hub[k], prev]
        };
    }
    out.rotation[t] = hub;
    Ok(out)
}

/// Undo a wheel replacement at `hub`.
pub fn contract_wheel(g: &FoldingGraph, hub: Node) -> Result<FoldingGraph, OrthoError> {
    let t = g.index_of(hub).ok_or(OrthoError::UnknownNode(hub))?;
    let other = |e: usize, x: usize| {
        let (a, b) = g.graph.edges[e];
        if a == x {
            b
        } else {
            a
        }
    };
    let cycle: Vec<usize> = g.rotation[t].iter().map(|&e| other(e, t)).collect();
    let mut outer = vec![];
    let mut dropped = vec![false; g.graph.edges.len()];
    for &c in &cycle {
        if g.rotation[c].len() != 4 {
            return Err(OrthoError::NotAWheel(hub));
        }
        let mut out_edges = vec![];
        for &e in &g.rotation[c] {
            let w = other(e, c);
            if w == t || cycle.contains(&w) {
                dropped[e] = true;
            } else {
                out_edges.push(e);
            }
        }
        if out_edges.len() != 1 {
            return Err(OrthoError::NotAWheel(hub));
        }
        outer.push(out_edges[0]);
    }
    let keep_node: Vec<bool> = (0..g.nodes.len()).map(|i| !cycle.contains(&i)).collect();
    let mut node_map = vec![usize::MAX; g.nodes.len()];
    let mut out = FoldingGraph {
        nodes: vec![],
        graph: crate::graph::MultiGraph::new(0),
        rotation: vec![],
    };
    for i in 0..g.nodes.len() {
        if keep_node[i] {
            node_map[i] = out.nodes.len();
            out.nodes.push(g.nodes[i]);
        }
    }
    out.graph.n = out.nodes.len();
    let mut edge_map = vec![usize::MAX; g.graph.edges.len()];
    for (e, &(a, b)) in g.graph.edges.iter().enumerate() {
        if dropped[e] {
            continue;
        }
        let a = if cycle.contains(&a) { t } else { a };
        let b = if cycle.contains(&b) { t } else { b };
        edge_map[e] = out.graph.add_edge(node_map[a], node_map[b]);
    }
    out.rotation = (0..g.nodes.len())
        .filter(|&i| keep_node[i])
        .map(|i| {
            let src = if i == t { &outer } else { &g.rotation[i] };
            src.iter().map(|&e| edge_map[e]).collect()
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests;
