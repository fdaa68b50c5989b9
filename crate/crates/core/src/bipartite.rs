//! Maximum-cardinality bipartite matching (Hopcroft-Karp) and Hall
//! deficiency certificates.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({left}, {right}) leaves the right side of size {right_count}")]
    RightOutOfRange { left: usize, right: usize, right_count: usize },
    #[error("adjacency has {got} rows, expected {expected}")]
    RowCount { got: usize, expected: usize },
    #[error("({left}, {right}) is not an edge of the graph")]
    NotAnEdge { left: usize, right: usize },
    #[error("vertex used twice in matching: {0}")]
    NotAMatching(String),
}

/// Bipartite graph stored as sorted left-to-right adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    right_count: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Sorts and deduplicates every adjacency row.
    pub fn new(left_count: usize, right_count: usize, mut adj: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        if adj.len() != left_count {
            return Err(GraphError::RowCount { got: adj.len(), expected: left_count });
        }
        for (u, row) in adj.iter_mut().enumerate() {
            if let Some(&v) = row.iter().find(|&&v| v >= right_count) {
                return Err(GraphError::RightOutOfRange { left: u, right: v, right_count });
            }
            row.sort_unstable();
            row.dedup();
        }
        Ok(BipartiteGraph { right_count, adj })
    }

    pub fn left_count(&self) -> usize {
        self.adj.len()
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|row| row.binary_search(&v).is_ok())
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

/// A matching stored as mate arrays on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    left_mate: Vec<Option<usize>>,
    right_mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(left_count: usize, right_count: usize) -> Self {
        Matching { left_mate: vec![None; left_count], right_mate: vec![None; right_count] }
    }

    /// Checks that every pair is an edge and no vertex repeats.
    pub fn from_pairs(graph: &BipartiteGraph, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut m = Matching::empty(graph.left_count(), graph.right_count());
        for &(u, v) in pairs {
            if !graph.has_edge(u, v) {
                return Err(GraphError::NotAnEdge { left: u, right: v });
            }
            if m.left_mate[u].is_some() {
                return Err(GraphError::NotAMatching(format!("left {u}")));
            }
            if m.right_mate[v].is_some() {
                return Err(GraphError::NotAMatching(format!("right {v}")));
            }
            m.left_mate[u] = Some(v);
            m.right_mate[v] = Some(u);
        }
        Ok(m)
    }

    pub fn left_mate(&self, u: usize) -> Option<usize> {
        self.left_mate[u]
    }

    pub fn right_mate(&self, v: usize) -> Option<usize> {
        self.right_mate[v]
    }

    pub fn len(&self) -> usize {
        self.left_mate.iter().filter(|m| m.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.left_mate.get(u) == Some(&Some(v))
    }

    /// Pairs sorted by left vertex.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left_mate.iter().enumerate().filter_map(|(u, m)| m.map(|v| (u, v))).collect()
    }

    pub fn left_count(&self) -> usize {
        self.left_mate.len()
    }

    pub fn right_count(&self) -> usize {
        self.right_mate.len()
    }

    pub(crate) fn link(&mut self, u: usize, v: usize) {
        self.left_mate[u] = Some(v);
        self.right_mate[v] = Some(u);
    }
}

const UNREACHED: u32 = u32::MAX;

/// Hopcroft-Karp. Vertices and edges are visited in ascending index order,
/// so the result is a function of the graph alone.
pub fn max_matching(graph: &BipartiteGraph) -> Matching {
    let n = graph.left_count();
    let mut m = Matching::empty(n, graph.right_count());
    let mut dist = vec![UNREACHED; n];
    let mut next_edge = vec![0usize; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut stack = Vec::new();

    loop {
        // Layer left vertices by alternating distance from the free ones.
        queue.clear();
        for u in 0..n {
            if m.left_mate[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = UNREACHED;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in graph.neighbors(u) {
                match m.right_mate[v] {
                    None => found = true,
                    Some(w) if dist[w] == UNREACHED => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }

        next_edge.iter_mut().for_each(|e| *e = 0);
        for root in 0..n {
            if m.left_mate[root].is_some() {
                continue;
            }
            stack.clear();
            stack.push(root);
            while let Some(&u) = stack.last() {
                let row = graph.neighbors(u);
                if next_edge[u] == row.len() {
                    dist[u] = UNREACHED;
                    stack.pop();
                    continue;
                }
                let v = row[next_edge[u]];
                next_edge[u] += 1;
                match m.right_mate[v] {
                    None => {
                        // Each stacked vertex takes the edge it last advanced along.
                        for &w in &stack {
                            let target = graph.neighbors(w)[next_edge[w] - 1];
                            m.left_mate[w] = Some(target);
                            m.right_mate[target] = Some(w);
                        }
                        break;
                    }
                    Some(w) if dist[w] == dist[u] + 1 => stack.push(w),
                    Some(_) => {}
                }
            }
        }
    }
    m
}

pub fn uncovered_left(graph: &BipartiteGraph, matching: &Matching) -> Vec<usize> {
    (0..graph.left_count()).filter(|&u| matching.left_mate(u).is_none()).collect()
}

/// A set of left vertices whose joint neighborhood is strictly smaller than
/// itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficiencyCertificate {
    pub subset: Vec<usize>,
    pub neighborhood: Vec<usize>,
}

impl DeficiencyCertificate {
    /// Recomputes the neighborhood from the graph and checks the deficiency.
    pub fn verify(&self, graph: &BipartiteGraph) -> bool {
        if self.subset.iter().any(|&u| u >= graph.left_count()) {
            return false;
        }
        let mut seen = vec![false; graph.right_count()];
        let mut count = 0;
        for &u in &self.subset {
            for &v in graph.neighbors(u) {
                if !std::mem::replace(&mut seen[v], true) {
                    count += 1;
                }
            }
        }
        let mut subset = self.subset.clone();
        subset.sort_unstable();
        subset.dedup();
        count < subset.len()
    }
}

/// If no matching covers every vertex of `required`, returns the required
/// vertices reachable by alternating paths from the first uncovered one,
/// together with their neighborhood.
pub fn deficiency_certificate(graph: &BipartiteGraph, required: &[usize]) -> Option<DeficiencyCertificate> {
    let mut req = required.to_vec();
    req.sort_unstable();
    req.dedup();
    let sub = BipartiteGraph {
        right_count: graph.right_count(),
        adj: req.iter().map(|&u| graph.neighbors(u).to_vec()).collect(),
    };
    let m = max_matching(&sub);
    let start = (0..req.len()).find(|&i| m.left_mate(i).is_none())?;

    let mut left_seen = vec![false; req.len()];
    let mut right_seen = vec![false; sub.right_count()];
    let mut queue = VecDeque::from([start]);
    left_seen[start] = true;
    while let Some(u) = queue.pop_front() {
        for &v in sub.neighbors(u) {
            if std::mem::replace(&mut right_seen[v], true) {
                continue;
            }
            let w = m.right_mate(v).expect("maximum matching leaves no augmenting path");
            if !std::mem::replace(&mut left_seen[w], true) {
                queue.push_back(w);
            }
        }
    }
    Some(DeficiencyCertificate {
        subset: (0..req.len()).filter(|&i| left_seen[i]).map(|i| req[i]).collect(),
        neighborhood: (0..sub.right_count()).filter(|&v| right_seen[v]).collect(),
    })
}
