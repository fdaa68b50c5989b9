//! Independent decision procedure via maximum-weight perfect matching.
//!
//! Each girl-boy pair gets weight 2 if they list each other, 1 if exactly
//! one listed person is satisfied by the pair while the other person holds
//! no list, and 0 otherwise. The weight of a pair is the number of listed
//! endpoints it satisfies, so the optimum reaches `|G_L| + |B_L|` exactly
//! when the instance is solvable.

use crate::instance::{Assignment, Side, SmpInstance};

/// Square `{0,1,2}` weight matrix; rows are girls, columns boys, padded
/// with zero rows or columns to a common size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBipartiteGraph {
    n: usize,
    weights: Vec<u8>,
    girls: usize,
    boys: usize,
}

impl WeightedBipartiteGraph {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn weight(&self, row: usize, col: usize) -> u8 {
        self.weights[row * self.n + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.weights.chunks(self.n.max(1)).take(self.n)
    }
}

pub fn pair_weight(inst: &SmpInstance, g: usize, b: usize) -> u8 {
    let g_listed = inst.girl_has_list(g);
    let b_listed = inst.boy_has_list(b);
    let g_ok = g_listed && inst.girl_lists_boy(g, b);
    let b_ok = b_listed && inst.boy_lists_girl(b, g);
    if g_ok && b_ok {
        2
    } else if (g_ok && !b_listed) || (b_ok && !g_listed) {
        1
    } else {
        0
    }
}

pub fn build_weighted(inst: &SmpInstance) -> WeightedBipartiteGraph {
    let (girls, boys) = (inst.num_girls(), inst.num_boys());
    let n = girls.max(boys);
    let mut weights = vec![0u8; n * n];
    for g in 0..girls {
        for b in 0..boys {
            weights[g * n + b] = pair_weight(inst, g, b);
        }
    }
    WeightedBipartiteGraph { n, weights, girls, boys }
}

/// Optimal perfect matching of the padded matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMatching {
    pub total_weight: u64,
    /// `row_to_col[r]` is the column matched to row `r`.
    pub row_to_col: Vec<usize>,
}

/// Hungarian method with row/column potentials, O(n^3), integer arithmetic.
pub fn hungarian_max_weight(graph: &WeightedBipartiteGraph) -> WeightedMatching {
    let n = graph.n;
    if n == 0 {
        return WeightedMatching { total_weight: 0, row_to_col: Vec::new() };
    }
    // Minimise cost = 2 - weight. Arrays are 1-based; index 0 is a sentinel
    // column that holds the row currently being inserted.
    let cost = |r: usize, c: usize| 2 - i64::from(graph.weight(r, c));
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut col_row = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        col_row[0] = row;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = col_row[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[col_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if col_row[j0] == 0 {
                break;
            }
        }
        while j0 != 0 {
            let j1 = way[j0];
            col_row[j0] = col_row[j1];
            j0 = j1;
        }
    }
    let mut row_to_col = vec![0; n];
    for j in 1..=n {
        row_to_col[col_row[j] - 1] = j - 1;
    }
    let total_weight = row_to_col.iter().enumerate().map(|(r, &c)| u64::from(graph.weight(r, c))).sum();
    WeightedMatching { total_weight, row_to_col }
}

/// Outcome of the weight-threshold test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightCheck {
    pub total_weight: u64,
    /// `|G_L| + |B_L|`.
    pub threshold: u64,
    /// Positive-weight matched pairs between real girls and boys.
    pub positive_pairs: Assignment,
}

impl WeightCheck {
    pub fn solvable(&self) -> bool {
        self.total_weight == self.threshold
    }
}

pub fn weight_check(inst: &SmpInstance) -> WeightCheck {
    let graph = build_weighted(inst);
    let best = hungarian_max_weight(&graph);
    let threshold = (inst.listed(Side::Girls).len() + inst.listed(Side::Boys).len()) as u64;
    assert!(best.total_weight <= threshold, "every edge weight counts distinct listed endpoints");
    let pairs = best
        .row_to_col
        .iter()
        .enumerate()
        .filter(|&(r, &c)| r < graph.girls && c < graph.boys && graph.weight(r, c) > 0)
        .map(|(r, &c)| (r, c))
        .collect();
    WeightCheck { total_weight: best.total_weight, threshold, positive_pairs: Assignment::new(pairs) }
}

pub fn solvable_via_weight(inst: &SmpInstance) -> bool {
    weight_check(inst).solvable()
}
