//! Labelled simple graphs and the named graph families used throughout the crate.
//!
//! Vertices are `0..n`. Bipartite generators put the A side first
//! (`0..|A|`) and record it in `bipartition_a`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("edge ({0}, {1}) does not cross the bipartition")]
    EdgeWithinPart(usize, usize),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("graph has {n} vertices, exact search is capped at {max}")]
    TooLarge { n: usize, max: usize },
    #[error("coloring is not proper: {0}")]
    ImproperColoring(String),
}

/// Default cap for [`exact_chromatic_small`].
pub const EXACT_CHROMATIC_MAX_N: usize = 16;

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bipartition_a: Option<Vec<usize>>,
}

/// A labelled simple graph on vertices `0..n`, optionally with a stored bipartition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    bipartition_a: Option<BTreeSet<usize>>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        let g = Graph::new(j.n, j.edges.iter().map(|e| (e[0], e[1])))?;
        match j.bipartition_a {
            Some(a) => g.with_bipartition(a),
            None => Ok(g),
        }
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
            bipartition_a: g.bipartition_a.map(|a| a.into_iter().collect()),
        }
    }
}

impl Graph {
    /// Builds a graph, normalising each edge to `u < v`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { v, n });
                }
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Graph {
            n,
            edges: set,
            bipartition_a: None,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
            bipartition_a: None,
        }
    }

    /// Attaches an A side; every edge must cross it.
    pub fn with_bipartition<I>(mut self, a_side: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = usize>,
    {
        let a: BTreeSet<usize> = a_side.into_iter().collect();
        if let Some(&v) = a.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        for &(u, v) in &self.edges {
            if a.contains(&u) == a.contains(&v) {
                return Err(GraphError::EdgeWithinPart(u, v));
            }
        }
        self.bipartition_a = Some(a);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn stored_bipartition(&self) -> Option<&BTreeSet<usize>> {
        self.bipartition_a.as_ref()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// BFS 2-colouring; `true` marks the side containing the smallest vertex of each component.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(true);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// `(A, B)` from the stored bipartition, or from a BFS 2-colouring.
    pub fn bipartition(&self) -> Result<(Vec<usize>, Vec<usize>), GraphError> {
        let in_a: Vec<bool> = match &self.bipartition_a {
            Some(a) => (0..self.n).map(|v| a.contains(&v)).collect(),
            None => self.two_coloring().ok_or(GraphError::NotBipartite)?,
        };
        let a = (0..self.n).filter(|&v| in_a[v]).collect();
        let b = (0..self.n).filter(|&v| !in_a[v]).collect();
        Ok((a, b))
    }

    pub fn complement(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.insert((u, v));
                }
            }
        }
        Graph {
            n: self.n,
            edges,
            bipartition_a: None,
        }
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut edges = BTreeSet::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.insert((i, j));
                }
            }
        }
        Graph {
            n: vertices.len(),
            edges,
            bipartition_a: None,
        }
    }

    /// Bit `k` set iff the `k`-th pair in lexicographic order `(0,1), (0,2), ...` is an edge.
    pub fn to_mask(&self) -> u64 {
        assert!(pair_count(self.n) <= 64, "mask encoding needs C(n,2) <= 64");
        self.edges
            .iter()
            .fold(0u64, |m, &(u, v)| m | (1u64 << pair_index(self.n, u, v)))
    }

    pub fn from_mask(n: usize, mask: u64) -> Graph {
        let mut edges = BTreeSet::new();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> k & 1 == 1 {
                    edges.insert((u, v));
                }
                k += 1;
            }
        }
        Graph {
            n,
            edges,
            bipartition_a: None,
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        Graph {
            n: self.n,
            edges,
            bipartition_a: self
                .bipartition_a
                .as_ref()
                .map(|a| a.iter().map(|&v| perm[v]).collect()),
        }
    }

    /// Checks that `classes` partition the vertex set into independent sets.
    pub fn check_coloring(&self, classes: &[Vec<usize>]) -> Result<(), GraphError> {
        let mut color = vec![usize::MAX; self.n];
        for (c, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(GraphError::ImproperColoring(format!("class {c} is empty")));
            }
            for &v in class {
                if v >= self.n {
                    return Err(GraphError::VertexOutOfRange { v, n: self.n });
                }
                if color[v] != usize::MAX {
                    return Err(GraphError::ImproperColoring(format!(
                        "vertex {v} appears in more than one class"
                    )));
                }
                color[v] = c;
            }
        }
        if let Some(v) = color.iter().position(|&c| c == usize::MAX) {
            return Err(GraphError::ImproperColoring(format!(
                "vertex {v} is uncolored"
            )));
        }
        if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| color[u] == color[v]) {
            return Err(GraphError::ImproperColoring(format!(
                "edge ({u}, {v}) joins two vertices of class {}",
                color[u]
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialises")
    }

    pub fn from_json(s: &str) -> Result<Graph, serde_json::Error> {
        serde_json::from_str(s)
    }
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of `(u, v)`, `u < v`, in the lexicographic list of pairs of `0..n`.
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

fn bipartite_from(a: usize, b: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::new(a + b, edges)
        .and_then(|g| g.with_bipartition(0..a))
        .expect("generator produces a valid bipartite graph")
}

/// `K_{d,d}` minus the matching `(a_i, b_i)`, `i = 4..d` (1-based).
pub fn make_kprime(d: usize) -> Result<Graph, GraphError> {
    if d < 4 {
        return Err(GraphError::BadParameter(format!(
            "kprime needs d >= 4, got {d}"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i == j && i >= 3 {
                continue;
            }
            edges.push((i, d + j));
        }
    }
    Ok(bipartite_from(d, d, edges))
}

/// Edges `(a_i, b_j)` with `i > j` or `i <= 3` (1-based), parts of size `d`.
pub fn make_kdoubleprime(d: usize) -> Result<Graph, GraphError> {
    if d < 4 {
        return Err(GraphError::BadParameter(format!(
            "kdoubleprime needs d >= 4, got {d}"
        )));
    }
    let mut edges = Vec::new();
    for i in 1..=d {
        for j in 1..=d {
            if i > j || i <= 3 {
                edges.push((i - 1, d + j - 1));
            }
        }
    }
    Ok(bipartite_from(d, d, edges))
}

/// Edges `(a_i, b_j)` with `i >= j`, parts of size `d + 2`.
pub fn make_remark_graph(d: usize) -> Result<Graph, GraphError> {
    if d < 1 {
        return Err(GraphError::BadParameter("remark graph needs d >= 1".into()));
    }
    let p = d + 2;
    let mut edges = Vec::new();
    for i in 0..p {
        for j in 0..=i {
            edges.push((i, p + j));
        }
    }
    Ok(bipartite_from(p, p, edges))
}

/// Complete multipartite graph; parts are consecutive vertex ranges.
pub fn make_complete_multipartite(sizes: &[usize]) -> Result<Graph, GraphError> {
    if sizes.is_empty() {
        return Err(GraphError::BadParameter("no parts given".into()));
    }
    if sizes.contains(&0) {
        return Err(GraphError::BadParameter("part sizes must be >= 1".into()));
    }
    let mut part = Vec::new();
    for (p, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(p, s));
    }
    let n = part.len();
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| part[u] != part[v]);
    let g = Graph::new(n, edges).expect("valid edges");
    if sizes.len() == 2 {
        Ok(g.with_bipartition(0..sizes[0]).expect("two parts cross"))
    } else {
        Ok(g)
    }
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid edges")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    bipartite_from(
        a,
        b,
        (0..a)
            .flat_map(|u| (0..b).map(move |v| (u, a + v)))
            .collect(),
    )
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::BadParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid edges")
}

pub fn star(leaves: usize) -> Graph {
    bipartite_from(1, leaves, (0..leaves).map(|i| (0, 1 + i)).collect())
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::new(10, edges).expect("valid edges")
}

/// Greedy colouring in order of decreasing degree (ties by label).
pub fn greedy_coloring(g: &Graph) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut color = vec![usize::MAX; g.n()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in order {
        let used: BTreeSet<usize> = adj[v].iter().map(|&w| color[w]).collect();
        let c = (0..).find(|c| !used.contains(c)).unwrap();
        color[v] = c;
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(v);
    }
    for class in &mut classes {
        class.sort_unstable();
    }
    classes
}

/// An optimal colouring by exhaustive search, for graphs with at most `max_n` vertices.
pub fn exact_coloring_small(g: &Graph, max_n: usize) -> Result<Vec<Vec<usize>>, GraphError> {
    if g.n() > max_n {
        return Err(GraphError::TooLarge {
            n: g.n(),
            max: max_n,
        });
    }
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let greedy = greedy_coloring(g);
    let adj = g.adjacency();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    for k in 1..greedy.len() {
        let mut color = vec![usize::MAX; g.n()];
        if color_backtrack(&adj, &order, 0, k, 0, &mut color) {
            let mut classes = vec![Vec::new(); k];
            for (v, &c) in color.iter().enumerate() {
                classes[c].push(v);
            }
            return Ok(classes);
        }
    }
    Ok(greedy)
}

fn color_backtrack(
    adj: &[Vec<usize>],
    order: &[usize],
    pos: usize,
    k: usize,
    used: usize,
    color: &mut [usize],
) -> bool {
    let Some(&v) = order.get(pos) else {
        return true;
    };
    // a fresh colour is only tried once: colours are interchangeable
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if adj[v].iter().all(|&w| color[w] != c) {
            color[v] = c;
            if color_backtrack(adj, order, pos + 1, k, used.max(c + 1), color) {
                return true;
            }
            color[v] = usize::MAX;
        }
    }
    false
}

/// Chromatic number by exhaustive search, for graphs with at most `max_n` vertices.
pub fn exact_chromatic_small(g: &Graph, max_n: usize) -> Result<usize, GraphError> {
    exact_coloring_small(g, max_n).map(|c| c.len())
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let adj = g.adjacency();
    let mut best: Option<usize> = None;
    for s in 0..g.n() {
        let mut dist = vec![usize::MAX; g.n()];
        let mut parent = vec![usize::MAX; g.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}
