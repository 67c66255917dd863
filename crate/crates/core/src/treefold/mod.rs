//! Realizing plane trees as truncated graphs of flat foldings. Every
//! internal node needs even degree at least four; the construction starts
//! from a star and grows one internal vertex at a time inside the protected
//! wedge of the ray it replaces.

mod enumerate;
mod plan;
mod realize;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::foldcheck::FoldError;
use crate::graph::{MultiGraph, PlaneTreeShape};
use crate::layers::LayerError;
use crate::pattern::PatternError;

pub use enumerate::{enumerate_foldable_trees, enumerate_plane_trees};
pub use realize::{
    realize_base_star, realize_tree, verify_realization, RealizationReport, TreeRealization,
    WedgeCert,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TreeError {
    #[error("tree is empty")]
    Empty,
    #[error("rotation system does not describe a tree: {0}")]
    NotATree(String),
    #[error("tree has no internal node")]
    NoInternalNode,
    #[error("node {node} has degree {degree}; internal nodes need even degree of at least 4")]
    BadDegree { node: usize, degree: usize },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Fold(#[from] FoldError),
    #[error(transparent)]
    Layer(#[from] LayerError),
    #[error("wedge certificate broken: {0}")]
    Certificate(String),
}

/// A tree with a counter-clockwise neighbour order at every node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneTree {
    pub rotation: Vec<Vec<usize>>,
}

impl PlaneTree {
    pub fn new(rotation: Vec<Vec<usize>>) -> Result<Self, TreeError> {
        let t = PlaneTree { rotation };
        let n = t.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        for (v, nbrs) in t.rotation.iter().enumerate() {
            for &w in nbrs {
                if w >= n || w == v {
                    return Err(TreeError::NotATree(format!("bad neighbour {w} of {v}")));
                }
                if t.rotation[w].iter().filter(|&&x| x == v).count() != 1 {
                    return Err(TreeError::NotATree(format!("edge {v}-{w} is not symmetric")));
                }
            }
        }
        if !t.graph().is_tree() {
            return Err(TreeError::NotATree("not connected or has a cycle".into()));
        }
        Ok(t)
    }

    /// Star with `d` leaves around node 0.
    pub fn star(d: usize) -> Self {
        let mut rotation = vec![(1..=d).collect::<Vec<_>>()];
        rotation.extend((0..d).map(|_| vec![0]));
        PlaneTree { rotation }
    }

    /// Path on `n` nodes.
    pub fn path(n: usize) -> Self {
        let rotation = (0..n)
            .map(|v| {
                let mut r = vec![];
                if v > 0 {
                    r.push(v - 1);
                }
                if v + 1 < n {
                    r.push(v + 1);
                }
                r
            })
            .collect();
        PlaneTree { rotation }
    }

    /// Ordered rooted tree given as child lists; node 0 is the root.
    pub fn from_children(children: &[Vec<usize>]) -> Self {
        let mut rotation = vec![vec![]; children.len()];
        for (v, cs) in children.iter().enumerate() {
            for &c in cs {
                rotation[c].insert(0, v);
                rotation[v].push(c);
            }
        }
        PlaneTree { rotation }
    }

    pub fn len(&self) -> usize {
        self.rotation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotation.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn internal_nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.degree(v) >= 2).collect()
    }

    pub fn graph(&self) -> MultiGraph {
        let mut g = MultiGraph::new(self.len());
        for (v, nbrs) in self.rotation.iter().enumerate() {
            for &w in nbrs {
                if v < w {
                    g.add_edge(v, w);
                }
            }
        }
        g
    }

    pub fn shape(&self) -> PlaneTreeShape {
        PlaneTreeShape {
            rotation: self.rotation.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeCheck {
    pub foldable: bool,
    /// First internal node with an odd degree or degree two.
    pub witness: Option<usize>,
}

pub fn check_tree_foldable(t: &PlaneTree) -> TreeCheck {
    let witness = t
        .internal_nodes()
        .into_iter()
        .find(|&v| t.degree(v) % 2 == 1 || t.degree(v) < 4);
    TreeCheck {
        foldable: witness.is_none(),
        witness,
    }
}

#[cfg(test)]
mod tests;
