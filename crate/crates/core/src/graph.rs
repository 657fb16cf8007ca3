//! Small dense-index directed graphs.
//!
//! Nodes are `0..n`. Edge lists are kept sorted and free of duplicates so
//! degree counts are exact.

use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    adj: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(
            u < self.adj.len() && v < self.adj.len(),
            "edge out of range"
        );
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&v| (u, v)))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.adj.len()];
        for (_, v) in self.edges() {
            deg[v] += 1;
        }
        deg
    }

    /// Same graph with every self-loop removed.
    pub fn without_loops(&self) -> Self {
        Self::from_edges(self.node_count(), self.edges().filter(|(u, v)| u != v))
    }

    pub fn reversed(&self) -> Self {
        Self::from_edges(self.node_count(), self.edges().map(|(u, v)| (v, u)))
    }

    /// Strongly connected components (Kosaraju, iterative), as a component
    /// id per node. Ids are assigned in topological order of the
    /// condensation.
    pub fn scc(&self) -> (usize, Vec<usize>) {
        let n = self.node_count();
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some(&mut (u, ref mut next)) = stack.last_mut() {
                if let Some(&v) = self.adj[u].get(*next) {
                    *next += 1;
                    if !visited[v] {
                        visited[v] = true;
                        stack.push((v, 0));
                    }
                } else {
                    order.push(u);
                    stack.pop();
                }
            }
        }

        let rev = self.reversed();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for &root in order.iter().rev() {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = count;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for &v in rev.successors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.node_count() > 0 && self.scc().0 == 1
    }

    /// Period of a strongly connected graph: gcd of `level(u) + 1 - level(v)`
    /// over all edges, with BFS levels from node 0. Returns `None` when the
    /// graph is not strongly connected or has no edges.
    pub fn period(&self) -> Option<usize> {
        if !self.is_strongly_connected() {
            return None;
        }
        let levels = self.bfs_levels(0);
        let mut g = 0usize;
        for (u, v) in self.edges() {
            let (lu, lv) = (levels[u]?, levels[v]?);
            let d = (lu + 1).abs_diff(lv);
            g = gcd(g, d);
        }
        (g > 0).then_some(g)
    }

    pub fn bfs_levels(&self, source: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.node_count()];
        level[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = level[u].map(|l| l + 1);
            for &v in self.successors(u) {
                if level[v].is_none() {
                    level[v] = next;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    /// Nodes reachable from the out-neighbours of `start` along walks whose
    /// intermediate nodes all satisfy `!blocked`. Blocked nodes can be
    /// reached but are not expanded. `start` itself is included only if it
    /// is reached again through such a walk.
    pub fn reach_avoiding(&self, start: usize, blocked: impl Fn(usize) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut stack: Vec<usize> = Vec::new();
        for &v in self.successors(start) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
        while let Some(u) = stack.pop() {
            if blocked(u) {
                continue;
            }
            for &v in self.successors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// True iff every node has in- and out-degree exactly one and the graph is
/// strongly connected. The two-node graph with both directed edges is a ring.
pub fn is_directed_ring(g: &Digraph) -> bool {
    let n = g.node_count();
    n > 0
        && (0..n).all(|u| g.out_degree(u) == 1)
        && g.in_degrees().iter().all(|&d| d == 1)
        && g.is_strongly_connected()
}
