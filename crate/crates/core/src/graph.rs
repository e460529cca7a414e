//! Finite partially directed multigraphs and the matrices of the zeta formula.
//!
//! A graph has undirected edges (self-loops allowed) and directed arrows,
//! both stored as counted pair multisets so that every derived matrix is
//! deterministic. Nodes are 0-based.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiallyDirectedGraph {
    node_count: usize,
    /// Keys are `(i, j)` with `i <= j`.
    edges: BTreeMap<(usize, usize), usize>,
    arrows: BTreeMap<(usize, usize), usize>,
}

/// The `A`, `P`, `Q` matrices and the exponent `nodes - edges` of the
/// `(1 - z^2)` prefactor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixBundle {
    pub a: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub exponent: i64,
}

/// Extremes of the total degree (undirected degree with loops counted twice,
/// plus arrow in- and out-degree).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub min: usize,
    pub max: usize,
    pub regular: bool,
}

/// Extremes of the number of non-backtracking continuations of a dart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Branching {
    pub min: usize,
    pub max: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Black,
    White,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::Black => Side::White,
            Side::White => Side::Black,
        }
    }
}

/// On-disk form: `{"nodes": n, "edges": [[i, j], ...], "arrows": [[i, j], ...]}`.
/// Repeated pairs encode multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub nodes: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub arrows: Vec<[usize; 2]>,
}

impl PartiallyDirectedGraph {
    pub fn new(node_count: usize) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one node".into()));
        }
        Ok(PartiallyDirectedGraph {
            node_count,
            edges: BTreeMap::new(),
            arrows: BTreeMap::new(),
        })
    }

    pub fn from_pairs(
        node_count: usize,
        edges: &[(usize, usize)],
        arrows: &[(usize, usize)],
    ) -> Result<Self> {
        let mut g = Self::new(node_count)?;
        for &(i, j) in edges {
            g.add_edges(i, j, 1)?;
        }
        for &(i, j) in arrows {
            g.add_arrows(i, j, 1)?;
        }
        Ok(g)
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i >= self.node_count {
            return Err(Error::InvalidGraph(format!(
                "node {i} out of range for {} nodes",
                self.node_count
            )));
        }
        Ok(())
    }

    pub fn add_edges(&mut self, i: usize, j: usize, count: usize) -> Result<()> {
        self.check_node(i)?;
        self.check_node(j)?;
        if count > 0 {
            *self.edges.entry((i.min(j), i.max(j))).or_default() += count;
        }
        Ok(())
    }

    pub fn add_arrows(&mut self, from: usize, to: usize, count: usize) -> Result<()> {
        self.check_node(from)?;
        self.check_node(to)?;
        if count > 0 {
            *self.arrows.entry((from, to)).or_default() += count;
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Number of undirected edges, loops included.
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.values().sum()
    }

    /// `(i, j, multiplicity)` with `i <= j`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    /// `(from, to, multiplicity)` in sorted order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.arrows.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn is_undirected(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_fully_directed(&self) -> bool {
        self.edges.is_empty()
    }

    /// Turns arrow self-loops into loop edges and reciprocal arrow pairs into
    /// edges. Edges are kept as they are.
    pub fn normalize(&self) -> Self {
        let mut g = PartiallyDirectedGraph {
            node_count: self.node_count,
            edges: self.edges.clone(),
            arrows: BTreeMap::new(),
        };
        for (&(i, j), &c) in &self.arrows {
            if i == j {
                *g.edges.entry((i, i)).or_default() += c;
            } else if i < j {
                let back = self.arrows.get(&(j, i)).copied().unwrap_or(0);
                let paired = c.min(back);
                if paired > 0 {
                    *g.edges.entry((i, j)).or_default() += paired;
                }
                if c > paired {
                    g.arrows.insert((i, j), c - paired);
                }
                if back > paired {
                    g.arrows.insert((j, i), back - paired);
                }
            } else if !self.arrows.contains_key(&(j, i)) {
                g.arrows.insert((i, j), c);
            }
        }
        g
    }

    pub fn is_normalized(&self) -> bool {
        self.arrows
            .keys()
            .all(|&(i, j)| i != j && !self.arrows.contains_key(&(j, i)))
    }

    fn require_normalized(&self) -> Result<()> {
        if let Some(&(i, j)) = self
            .arrows
            .keys()
            .find(|&&(i, j)| i == j || self.arrows.contains_key(&(j, i)))
        {
            let what = if i == j {
                format!("arrow self-loop at node {i}")
            } else {
                format!("reciprocal arrows between nodes {i} and {j}")
            };
            return Err(Error::NotNormalized(what));
        }
        Ok(())
    }

    /// Undirected degree of every node, loops counting twice.
    pub fn undirected_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count];
        for (&(i, j), &c) in &self.edges {
            deg[i] += c;
            deg[j] += c;
        }
        deg
    }

    fn arrow_degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut out = vec![0; self.node_count];
        let mut inn = vec![0; self.node_count];
        for (&(i, j), &c) in &self.arrows {
            out[i] += c;
            inn[j] += c;
        }
        (out, inn)
    }

    /// Number of length-one walks leaving each node: the row sums of `A`.
    pub fn out_valencies(&self) -> Vec<usize> {
        let (out, _) = self.arrow_degrees();
        self.undirected_degrees()
            .into_iter()
            .zip(out)
            .map(|(u, o)| u + o)
            .collect()
    }

    pub fn total_degrees(&self) -> Vec<usize> {
        let (out, inn) = self.arrow_degrees();
        self.undirected_degrees()
            .into_iter()
            .zip(out.into_iter().zip(inn))
            .map(|(u, (o, i))| u + o + i)
            .collect()
    }

    pub fn matrices(&self) -> Result<MatrixBundle> {
        self.require_normalized()?;
        let n = self.node_count;
        let mut a = IntMatrix::zeros(n);
        let mut p = IntMatrix::zeros(n);
        let mut q = IntMatrix::zeros(n);
        for (&(i, j), &c) in &self.edges {
            let c = c as i64;
            if i == j {
                a.add_to(i, i, 2 * c);
            } else {
                a.add_to(i, j, c);
                a.add_to(j, i, c);
            }
        }
        for (&(i, j), &c) in &self.arrows {
            a.add_to(i, j, c as i64);
            p.add_to(i, j, c as i64);
        }
        for (i, d) in self.undirected_degrees().into_iter().enumerate() {
            q.set(i, i, d as i64 - 1);
        }
        let exponent = n as i64 - self.edge_count() as i64;
        debug_assert_eq!(2 * exponent, -(q.trace() - n as i64));
        Ok(MatrixBundle { a, p, q, exponent })
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let deg = self.total_degrees();
        let min = deg.iter().copied().min().unwrap_or(0);
        let max = deg.iter().copied().max().unwrap_or(0);
        DegreeProfile {
            min,
            max,
            regular: min == max,
        }
    }

    /// Each dart entering node `v` can continue along `out_valency(v)` darts,
    /// one fewer when it has an inverse (that continuation would backtrack).
    /// `None` when the graph has no darts at all.
    pub fn branching(&self) -> Option<Branching> {
        let out = self.out_valencies();
        let und = self.undirected_degrees();
        let (_, inn) = self.arrow_degrees();
        let mut values = Vec::new();
        for v in 0..self.node_count {
            if inn[v] > 0 {
                values.push(out[v]);
            }
            if und[v] > 0 {
                values.push(out[v] - 1);
            }
        }
        Some(Branching {
            min: *values.iter().min()?,
            max: *values.iter().max()?,
        })
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for &(i, j) in self.edges.keys().chain(self.arrows.keys()) {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// Whether the undirected support (edges and arrows alike) is connected.
    pub fn is_connected(&self) -> bool {
        let adj = self.neighbours();
        let mut seen = vec![false; self.node_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.node_count
    }

    /// Two-colouring of the undirected support, if one exists. A loop is an
    /// odd cycle.
    pub fn bipartition(&self) -> Option<Vec<Side>> {
        let adj = self.neighbours();
        let mut side: Vec<Option<Side>> = vec![None; self.node_count];
        for start in 0..self.node_count {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(Side::Black);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let s = side[v]?;
                for &w in &adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(s.other());
                            queue.push_back(w);
                        }
                        Some(t) if t == s => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        side.into_iter().collect()
    }

    pub fn to_file(&self) -> GraphFile {
        let mut file = GraphFile {
            nodes: self.node_count,
            ..GraphFile::default()
        };
        for (&(i, j), &c) in &self.edges {
            file.edges.extend(std::iter::repeat_n([i, j], c));
        }
        for (&(i, j), &c) in &self.arrows {
            file.arrows.extend(std::iter::repeat_n([i, j], c));
        }
        file
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let mut g = Self::new(file.nodes)?;
        for &[i, j] in &file.edges {
            g.add_edges(i, j, 1)?;
        }
        for &[i, j] in &file.arrows {
            g.add_arrows(i, j, 1)?;
        }
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "graph file".into(),
            msg: e.to_string(),
        })?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph file serializes")
    }
}
