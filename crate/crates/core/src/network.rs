//! Validated influence networks and their centrality.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::Digraph;

/// Tolerance on row sums accepted by [`InfluenceNetwork::new`].
pub const ROW_SUM_TOL: f64 = 1e-9;

/// A row-stochastic, irreducible and aperiodic matrix of relative
/// interpersonal weights, together with its graph and centrality vector.
#[derive(Debug, Clone)]
pub struct InfluenceNetwork {
    p: DMatrix<f64>,
    graph: Digraph,
    centrality: DVector<f64>,
}

impl InfluenceNetwork {
    /// Validates `p` and computes its centrality vector.
    ///
    /// Edge `(i, j)` exists iff `p[(i, j)] > 0` exactly; there is no
    /// thresholding of small weights.
    pub fn new(p: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = p.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows < 2 {
            return Err(Error::TooSmall { n: rows });
        }
        for i in 0..rows {
            let row = p.row(i);
            if let Some(bad) = row
                .iter()
                .find(|v| !v.is_finite() || **v < 0.0 || **v > 1.0)
            {
                return Err(Error::NotStochastic {
                    row: i,
                    reason: format!("entry {bad} is not in [0, 1]"),
                });
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::NotStochastic {
                    row: i,
                    reason: format!("row sums to {sum}"),
                });
            }
        }

        let graph = Digraph::from_edges(
            rows,
            (0..rows)
                .flat_map(|i| (0..rows).map(move |j| (i, j)))
                .filter(|&(i, j)| p[(i, j)] > 0.0),
        );
        let (components, _) = graph.scc();
        if components != 1 {
            return Err(Error::NotStronglyConnected { components });
        }
        match graph.period() {
            Some(1) => {}
            Some(period) => return Err(Error::NotAperiodic { period }),
            None => unreachable!("strongly connected graph with edges has a period"),
        }

        let centrality = solve_stationary(&p)?;
        Ok(Self {
            p,
            graph,
            centrality,
        })
    }

    /// Convenience constructor from row-major rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn n(&self) -> usize {
        self.p.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// Centrality vector π: the positive left eigenvector of `P` with unit sum.
    pub fn centrality(&self) -> &DVector<f64> {
        &self.centrality
    }

    /// `G_P[S]`: edge `(i, j)` for `i != j` in `S` iff some path of `G_P`
    /// leads from `i` to `j` without visiting another node of `S` in between.
    /// The result has no self-loops.
    pub fn restricted_graph(&self, s: &NodeSet) -> RestrictedGraph {
        let nodes: Vec<usize> = s.iter().collect();
        let mut local = vec![None; self.n()];
        for (k, &v) in nodes.iter().enumerate() {
            local[v] = Some(k);
        }
        let mut g = Digraph::new(nodes.len());
        for (k, &i) in nodes.iter().enumerate() {
            let seen = self.graph.reach_avoiding(i, |v| s.contains(v));
            for (j, _) in seen.iter().enumerate().filter(|(_, &r)| r) {
                if let Some(kj) = local[j].filter(|&kj| kj != k) {
                    g.add_edge(k, kj);
                }
            }
        }
        RestrictedGraph { nodes, graph: g }
    }
}

/// Solves `(P' - I) π = 0` with the last equation replaced by `1'π = 1`.
fn solve_stationary(p: &DMatrix<f64>) -> Result<DVector<f64>> {
    let n = p.nrows();
    let mut a = p.transpose() - DMatrix::<f64>::identity(n, n);
    a.row_mut(n - 1).fill(1.0);
    let mut rhs = DVector::zeros(n);
    rhs[n - 1] = 1.0;
    let pi = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::SolverFailure("stationary system is singular".into()))?;
    if pi.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(Error::SolverFailure(format!(
            "stationary vector is not positive: {:?}",
            pi.as_slice()
        )));
    }
    // Normalise away the round-off in the sum constraint.
    let sum = pi.sum();
    Ok(pi / sum)
}

/// A subset of the agents `0..n`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodeSet {
    members: BTreeSet<usize>,
}

impl NodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.members.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.members.remove(&v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self {
            members: iter.into_iter().collect(),
        }
    }
}

/// The graph `G_P[S]`, with local node ids mapped back to agents.
#[derive(Debug, Clone)]
pub struct RestrictedGraph {
    nodes: Vec<usize>,
    graph: Digraph,
}

impl RestrictedGraph {
    /// Agents of `S`, in increasing order; local node `k` is `nodes()[k]`.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// Edges labelled by agent index.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .map(|(u, v)| (self.nodes[u], self.nodes[v]))
            .collect()
    }
}
