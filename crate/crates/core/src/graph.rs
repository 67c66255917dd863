//! Small multigraph utilities: connectivity queries, isomorphism of small
//! graphs and canonical forms for plane trees.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// An undirected multigraph on nodes `0..n`. Edge `i` joins `edges[i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph { n, edges: vec![] }
    }

    pub fn with_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        MultiGraph { n, edges }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        self.edges.push((u, v));
        self.edges.len() - 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Neighbour lists as `(neighbour, edge index)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![vec![]; self.n];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, i));
            if a != b {
                adj[b].push((a, i));
            }
        }
        adj
    }

    /// Number of connected components among nodes not in `removed`, ignoring
    /// edges in `removed_edges`.
    pub fn components_without(&self, removed: &[usize], removed_edges: &[usize]) -> usize {
        let gone: BTreeSet<usize> = removed.iter().copied().collect();
        let gone_e: BTreeSet<usize> = removed_edges.iter().copied().collect();
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] || gone.contains(&s) {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, e) in &adj[u] {
                    if !seen[w] && !gone.contains(&w) && !gone_e.contains(&e) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&[], &[]) <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Edge multiplicities keyed by sorted endpoint pair.
    pub fn edge_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for &(a, b) in &self.edges {
            *m.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        m
    }

    /// Relabel nodes by `perm[old] = new`.
    pub fn relabeled(&self, perm: &[usize]) -> MultiGraph {
        MultiGraph {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect(),
        }
    }

    /// Whether two multigraphs are isomorphic (backtracking; meant for
    /// graphs of a few dozen nodes at most).
    pub fn is_isomorphic(&self, other: &MultiGraph) -> bool {
        self.isomorphism(other).is_some()
    }

    /// An isomorphism `map[self_node] = other_node`, if one exists.
    pub fn isomorphism(&self, other: &MultiGraph) -> Option<Vec<usize>> {
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return None;
        }
        let ca = self.edge_counts();
        let cb = other.edge_counts();
        let deg_a: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let deg_b: Vec<usize> = (0..other.n).map(|v| other.degree(v)).collect();
        let mut sa = deg_a.clone();
        let mut sb = deg_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
        let mult = |c: &BTreeMap<(usize, usize), usize>, a: usize, b: usize| {
            c.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
        };
        // order nodes by BFS so each new node tends to have mapped neighbours
        let adj = self.adjacency();
        let mut order = vec![];
        let mut seen = vec![false; self.n];
        let mut starts: Vec<usize> = (0..self.n).collect();
        starts.sort_by_key(|&v| std::cmp::Reverse(deg_a[v]));
        for s in starts {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                order.push(u);
                for &(w, _) in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; other.n];

        fn go(
            k: usize,
            order: &[usize],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            deg_a: &[usize],
            deg_b: &[usize],
            ok: &dyn Fn(usize, usize, &[usize]) -> bool,
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let u = order[k];
            for w in 0..deg_b.len() {
                if used[w] || deg_b[w] != deg_a[u] || !ok(u, w, map) {
                    continue;
                }
                map[u] = w;
                used[w] = true;
                if go(k + 1, order, map, used, deg_a, deg_b, ok) {
                    return true;
                }
                used[w] = false;
                map[u] = usize::MAX;
            }
            false
        }

        let ok = |u: usize, w: usize, map: &[usize]| {
            if mult(&ca, u, u) != mult(&cb, w, w) {
                return false;
            }
            (0..self.n).all(|x| map[x] == usize::MAX || mult(&ca, u, x) == mult(&cb, w, map[x]))
        };
        go(0, &order, &mut map, &mut used, &deg_a, &deg_b, &ok).then_some(map)
    }
}

/// A tree with a cyclic order of neighbours at every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneTreeShape {
    /// `rotation[v]` lists the neighbours of `v` in counter-clockwise order.
    pub rotation: Vec<Vec<usize>>,
}

impl PlaneTreeShape {
    /// Canonical string of the plane tree, invariant under relabelling and
    /// under cyclic shifts of the rotations (but not under mirroring).
    pub fn canonical(&self) -> String {
        let n = self.rotation.len();
        if n <= 1 {
            return "()".into();
        }
        let mut best: Option<String> = None;
        for root in 0..n {
            for start in 0..self.rotation[root].len() {
                let mut s = String::new();
                s.push('(');
                let deg = self.rotation[root].len();
                for k in 0..deg {
                    let child = self.rotation[root][(start + k) % deg];
                    self.encode(child, root, &mut s);
                }
                s.push(')');
                if best.as_ref().map_or(true, |b| s < *b) {
                    best = Some(s);
                }
            }
        }
        best.unwrap_or_default()
    }

    fn encode(&self, v: usize, parent: usize, out: &mut String) {
        out.push('(');
        let rot = &self.rotation[v];
        let pos = rot.iter().position(|&w| w == parent).unwrap_or(0);
        for k in 1..rot.len() {
            let child = rot[(pos + k) % rot.len()];
            self.encode(child, v, out);
        }
        out.push(')');
    }
}

/// Canonical string of a free tree: the smallest rooted encoding over all
/// roots, children sorted.
pub fn tree_canonical(t: &MultiGraph) -> String {
    fn enc(adj: &[Vec<(usize, usize)>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|&&(w, _)| w != parent)
            .map(|&(w, _)| enc(adj, w, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    let adj = t.adjacency();
    (0..t.n).map(|r| enc(&adj, r, usize::MAX)).min().unwrap_or_default()
}

/// All free trees with exactly `n` vertices, one per isomorphism class.
pub fn free_trees(n: usize) -> Vec<MultiGraph> {
    if n == 0 {
        return vec![];
    }
    let mut level = vec![MultiGraph::new(1)];
    for k in 1..n {
        let mut seen = BTreeSet::new();
        let mut next = vec![];
        for t in &level {
            for v in 0..k {
                let mut g = t.clone();
                g.n += 1;
                g.add_edge(v, k);
                if seen.insert(tree_canonical(&g)) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    level
}
