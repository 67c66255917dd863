use std::collections::BTreeSet;

use super::PlaneTree;

struct Gen<'a> {
    children: Vec<Vec<usize>>,
    stack: Vec<usize>,
    keep_degree: &'a dyn Fn(usize) -> bool,
    seen: BTreeSet<String>,
    out: Vec<PlaneTree>,
}

impl Gen<'_> {
    fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(v != 0)
    }

    fn run(&mut self, left: usize) {
        let Some(&top) = self.stack.last() else {
            if left == 0 {
                let t = PlaneTree::from_children(&self.children);
                if self.seen.insert(t.shape().canonical()) {
                    self.out.push(t);
                }
            }
            return;
        };
        if left > 0 {
            let v = self.children.len();
            self.children[top].push(v);
            self.children.push(vec![]);
            self.stack.push(v);
            self.run(left - 1);
            self.stack.pop();
            self.children.pop();
            self.children[top].pop();
        }
        // close the top node once its degree is final
        if (top != 0 || left == 0) && (self.keep_degree)(self.degree(top)) {
            self.stack.pop();
            self.run(left);
            self.stack.push(top);
        }
    }
}

fn enumerate(max_edges: usize, keep_degree: &dyn Fn(usize) -> bool) -> Vec<PlaneTree> {
    let mut g = Gen {
        children: vec![],
        stack: vec![],
        keep_degree,
        seen: BTreeSet::new(),
        out: vec![],
    };
    for edges in 0..=max_edges {
        g.children = vec![vec![]];
        g.stack = vec![0];
        g.run(edges);
    }
    g.out
}

/// All plane trees with at most `max_edges` edges, one per class up to
/// relabelling and rotation (mirror images count as distinct).
pub fn enumerate_plane_trees(max_edges: usize) -> Vec<PlaneTree> {
    enumerate(max_edges, &|_| true)
}

/// Plane trees with at least one internal node, all of even degree >= 4.
pub fn enumerate_foldable_trees(max_edges: usize) -> Vec<PlaneTree> {
    enumerate(max_edges, &|d| d == 1 || (d >= 4 && d % 2 == 0))
        .into_iter()
        .filter(|t| t.len() > 2)
        .collect()
}
