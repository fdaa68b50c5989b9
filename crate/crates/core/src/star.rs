//! Constructive SMP solver.
//!
//! The instance is turned into a bipartite graph with four node groups:
//! one node per girl and per boy, plus a list node `L_g` for every listed
//! girl and `L_b` for every listed boy. Left vertices are girls and girl
//! list nodes, right vertices are boys and boy list nodes. Edges:
//!
//! * `(g, b)` when `g` lists `b` and `b` holds no list, or `b` lists `g` and
//!   `g` holds no list;
//! * `(g, L_b)` and `(L_g, b)` together, when `g` and `b` list each other.
//!
//! Listed girls and listed boys form a vertex cover in which every edge
//! touches exactly one cover vertex, so a matching of size `|G_L| + |B_L|`
//! is maximum and covers every listed person. Such a matching is a solution
//! once every `(g, L_b)` edge is paired with its partner `(L_g, b)`; the
//! repair step enforces that by swapping edges along alternating chains.

use thiserror::Error;

use crate::bipartite::{deficiency_certificate, max_matching, BipartiteGraph, GraphError, Matching};
use crate::hall::HallViolator;
use crate::instance::{cmp_subproblems, Assignment, Side, SmpInstance, SubProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LeftNode {
    Girl(usize),
    /// `L_g` for a listed girl.
    GirlList(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RightNode {
    Boy(usize),
    /// `L_b` for a listed boy.
    BoyList(usize),
}

/// An edge of the star graph, named by the people it involves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StarEdge {
    Direct { girl: usize, boy: usize },
    /// `(g, L_b)`.
    GirlToBoyList { girl: usize, boy: usize },
    /// `(b, L_g)`.
    BoyToGirlList { boy: usize, girl: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {0:?} is not in the star graph")]
    NotAnEdge(StarEdge),
    #[error("matching has size {got}, expected {expected}")]
    WrongSize { got: usize, expected: usize },
    #[error("listed {side} {index} is not covered by the matching")]
    Uncovered { side: Side, index: usize },
    #[error("{0} mismatched edges remain")]
    MismatchesRemain(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarGraph {
    num_girls: usize,
    num_boys: usize,
    /// Left vertex of `L_g`, per girl.
    girl_list_node: Vec<Option<usize>>,
    /// Right vertex of `L_b`, per boy.
    boy_list_node: Vec<Option<usize>>,
    listed_girls: Vec<usize>,
    listed_boys: Vec<usize>,
    graph: BipartiteGraph,
}

pub fn build_star_graph(inst: &SmpInstance) -> StarGraph {
    let (ng, nb) = (inst.num_girls(), inst.num_boys());
    let listed_girls = inst.listed(Side::Girls);
    let listed_boys = inst.listed(Side::Boys);
    let mut girl_list_node = vec![None; ng];
    for (k, &g) in listed_girls.iter().enumerate() {
        girl_list_node[g] = Some(ng + k);
    }
    let mut boy_list_node = vec![None; nb];
    for (k, &b) in listed_boys.iter().enumerate() {
        boy_list_node[b] = Some(nb + k);
    }

    let mut adj = vec![Vec::new(); ng + listed_girls.len()];
    for &g in &listed_girls {
        for &b in inst.girl_list(g) {
            match boy_list_node[b] {
                None => adj[g].push(b),
                Some(lb) if inst.boy_lists_girl(b, g) => {
                    adj[g].push(lb);
                    adj[girl_list_node[g].unwrap()].push(b);
                }
                Some(_) => {}
            }
        }
    }
    for &b in &listed_boys {
        for &g in inst.boy_list(b) {
            if girl_list_node[g].is_none() {
                adj[g].push(b);
            }
        }
    }
    let graph = BipartiteGraph::new(adj.len(), nb + listed_boys.len(), adj).expect("star edges stay in range");
    StarGraph { num_girls: ng, num_boys: nb, girl_list_node, boy_list_node, listed_girls, listed_boys, graph }
}

impl StarGraph {
    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn num_girls(&self) -> usize {
        self.num_girls
    }

    pub fn num_boys(&self) -> usize {
        self.num_boys
    }

    pub fn listed_girls(&self) -> &[usize] {
        &self.listed_girls
    }

    pub fn listed_boys(&self) -> &[usize] {
        &self.listed_boys
    }

    /// `|G_L| + |B_L|`, the size of the listed-person vertex cover.
    pub fn cover_size(&self) -> usize {
        self.listed_girls.len() + self.listed_boys.len()
    }

    pub fn left_node(&self, v: usize) -> LeftNode {
        if v < self.num_girls {
            LeftNode::Girl(v)
        } else {
            LeftNode::GirlList(self.listed_girls[v - self.num_girls])
        }
    }

    pub fn right_node(&self, v: usize) -> RightNode {
        if v < self.num_boys {
            RightNode::Boy(v)
        } else {
            RightNode::BoyList(self.listed_boys[v - self.num_boys])
        }
    }

    pub fn left_id(&self, node: LeftNode) -> Option<usize> {
        match node {
            LeftNode::Girl(g) => (g < self.num_girls).then_some(g),
            LeftNode::GirlList(g) => self.girl_list_node.get(g).copied().flatten(),
        }
    }

    pub fn right_id(&self, node: RightNode) -> Option<usize> {
        match node {
            RightNode::Boy(b) => (b < self.num_boys).then_some(b),
            RightNode::BoyList(b) => self.boy_list_node.get(b).copied().flatten(),
        }
    }

    fn edge_of(&self, u: usize, v: usize) -> StarEdge {
        match (self.left_node(u), self.right_node(v)) {
            (LeftNode::Girl(girl), RightNode::Boy(boy)) => StarEdge::Direct { girl, boy },
            (LeftNode::Girl(girl), RightNode::BoyList(boy)) => StarEdge::GirlToBoyList { girl, boy },
            (LeftNode::GirlList(girl), RightNode::Boy(boy)) => StarEdge::BoyToGirlList { boy, girl },
            (LeftNode::GirlList(_), RightNode::BoyList(_)) => unreachable!("list nodes are never adjacent"),
        }
    }

    fn endpoints(&self, e: StarEdge) -> Option<(usize, usize)> {
        match e {
            StarEdge::Direct { girl, boy } => Some((self.left_id(LeftNode::Girl(girl))?, self.right_id(RightNode::Boy(boy))?)),
            StarEdge::GirlToBoyList { girl, boy } => {
                Some((self.left_id(LeftNode::Girl(girl))?, self.right_id(RightNode::BoyList(boy))?))
            }
            StarEdge::BoyToGirlList { boy, girl } => {
                Some((self.left_id(LeftNode::GirlList(girl))?, self.right_id(RightNode::Boy(boy))?))
            }
        }
    }

    /// All edges, sorted.
    pub fn edges(&self) -> Vec<StarEdge> {
        let mut out: Vec<StarEdge> = (0..self.graph.left_count())
            .flat_map(|u| self.graph.neighbors(u).iter().map(move |&v| (u, v)))
            .map(|(u, v)| self.edge_of(u, v))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn matching_from_edges(&self, edges: &[StarEdge]) -> Result<Matching, StarError> {
        let pairs = edges
            .iter()
            .map(|&e| self.endpoints(e).ok_or(StarError::NotAnEdge(e)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matching::from_pairs(&self.graph, &pairs)?)
    }

    pub fn matching_edges(&self, m: &Matching) -> Vec<StarEdge> {
        let mut out: Vec<StarEdge> = m.pairs().into_iter().map(|(u, v)| self.edge_of(u, v)).collect();
        out.sort_unstable();
        out
    }
}

/// A matched list-node edge whose partner edge is not matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mismatch {
    /// `(g, L_b)` matched without `(b, L_g)`.
    GirlToBoyList { girl: usize, boy: usize },
    /// `(b, L_g)` matched without `(g, L_b)`.
    BoyToGirlList { boy: usize, girl: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MismatchReport {
    /// Sorted: girl-side mismatches by (girl, boy), then boy-side ones by
    /// (boy, girl).
    pub mismatched: Vec<Mismatch>,
}

impl MismatchReport {
    pub fn count(&self) -> usize {
        self.mismatched.len()
    }
}

pub fn find_mismatches(star: &StarGraph, m: &Matching) -> MismatchReport {
    let state = ListState::from_matching(star, m);
    MismatchReport { mismatched: state.mismatches() }
}

/// One side's view of a star-graph matching, by person index.
#[derive(Debug, Clone)]
struct Half {
    /// `p -> q` when the person node `p` is matched to the list node `L_q`.
    to_list: Vec<Option<usize>>,
    /// `p -> q` when the list node `L_p` is matched to the person node `q`.
    list_mate: Vec<Option<usize>>,
    /// `p -> q` for a direct person-to-person edge.
    direct: Vec<Option<usize>>,
}

impl Half {
    fn new(n: usize) -> Self {
        Half { to_list: vec![None; n], list_mate: vec![None; n], direct: vec![None; n] }
    }

    fn mismatched(&self, other: &Half, p: usize) -> Option<usize> {
        self.to_list[p].filter(|&q| other.to_list[q] != Some(p))
    }
}

fn set_to_list(a: &mut Half, b: &mut Half, p: usize, q: usize) {
    a.to_list[p] = Some(q);
    b.list_mate[q] = Some(p);
}

fn clear_to_list(a: &mut Half, b: &mut Half, p: usize) {
    if let Some(q) = a.to_list[p].take() {
        b.list_mate[q] = None;
    }
}

/// Frees the person node `p`, whatever it is matched to.
fn clear_person(a: &mut Half, b: &mut Half, p: usize) {
    clear_to_list(a, b, p);
    if let Some(q) = a.direct[p].take() {
        b.direct[q] = None;
    }
}

#[derive(Debug, Clone)]
struct ListState {
    girls: Half,
    boys: Half,
}

impl ListState {
    fn from_matching(star: &StarGraph, m: &Matching) -> Self {
        let mut girls = Half::new(star.num_girls);
        let mut boys = Half::new(star.num_boys);
        for (u, v) in m.pairs() {
            match star.edge_of(u, v) {
                StarEdge::Direct { girl, boy } => {
                    girls.direct[girl] = Some(boy);
                    boys.direct[boy] = Some(girl);
                }
                StarEdge::GirlToBoyList { girl, boy } => set_to_list(&mut girls, &mut boys, girl, boy),
                StarEdge::BoyToGirlList { boy, girl } => set_to_list(&mut boys, &mut girls, boy, girl),
            }
        }
        ListState { girls, boys }
    }

    fn to_matching(&self, star: &StarGraph) -> Matching {
        let mut m = Matching::empty(star.graph.left_count(), star.graph.right_count());
        for g in 0..star.num_girls {
            if let Some(b) = self.girls.direct[g] {
                m.link(g, b);
            }
            if let Some(b) = self.girls.to_list[g] {
                m.link(g, star.boy_list_node[b].expect("listed boy"));
            }
        }
        for b in 0..star.num_boys {
            if let Some(g) = self.boys.to_list[b] {
                m.link(star.girl_list_node[g].expect("listed girl"), b);
            }
        }
        m
    }

    fn mismatches(&self) -> Vec<Mismatch> {
        let girl_side = (0..self.girls.to_list.len())
            .filter_map(|g| self.girls.mismatched(&self.boys, g).map(|boy| Mismatch::GirlToBoyList { girl: g, boy }));
        let boy_side = (0..self.boys.to_list.len())
            .filter_map(|b| self.boys.mismatched(&self.girls, b).map(|girl| Mismatch::BoyToGirlList { boy: b, girl }));
        girl_side.chain(boy_side).collect()
    }

    fn first_mismatch(&self) -> Option<Mismatch> {
        (0..self.girls.to_list.len())
            .find_map(|g| self.girls.mismatched(&self.boys, g).map(|boy| Mismatch::GirlToBoyList { girl: g, boy }))
            .or_else(|| {
                (0..self.boys.to_list.len()).find_map(|b| {
                    self.boys.mismatched(&self.girls, b).map(|girl| Mismatch::BoyToGirlList { boy: b, girl })
                })
            })
    }
}

/// How a chain repair ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainEnd {
    /// The list node of the last person on the starting side was free.
    FreeListNode,
    /// The list node of the last person on the opposite side was free.
    FreeOppositeListNode,
    /// The chain closed on its first opposite-side person.
    Cycle,
}

/// Chases the alternating chain that starts at the mismatched edge
/// `(p1, L_q1)` in `a` and swaps edges so that every mismatch along it is
/// paired. Returns the chain length and how it ended.
///
/// The chain is `p_i -> L_{q_i}` and `q_{i+1} -> L_{p_i}`; matching partners
/// are unique, so every person on it is distinct.
fn repair_chain(a: &mut Half, b: &mut Half, p1: usize) -> (usize, ChainEnd) {
    let q1 = a.to_list[p1].expect("chain starts on a matched list edge");
    let mut ps = vec![p1];
    let mut qs = vec![q1];
    loop {
        let k = ps.len();
        let pk = ps[k - 1];
        match a.list_mate[pk] {
            None => {
                // L_{p_k} is free: shift every q_{i+1} -> L_{p_i} to q_i -> L_{p_i}
                // and drop whatever q1 was matched to.
                clear_person(b, a, q1);
                for &q in &qs[1..] {
                    clear_to_list(b, a, q);
                }
                for (&q, &p) in qs.iter().zip(&ps) {
                    set_to_list(b, a, q, p);
                }
                return (k, ChainEnd::FreeListNode);
            }
            Some(r) if r == q1 => {
                for &q in &qs {
                    clear_to_list(b, a, q);
                }
                for (&q, &p) in qs.iter().zip(&ps) {
                    set_to_list(b, a, q, p);
                }
                return (k, ChainEnd::Cycle);
            }
            Some(r) => {
                debug_assert!(!qs.contains(&r));
                qs.push(r);
                match b.list_mate[r] {
                    None => {
                        // L_{q_{k+1}} is free: move every p_i from L_{q_i} to L_{q_{i+1}}.
                        for &p in &ps {
                            clear_to_list(a, b, p);
                        }
                        for (&p, &q) in ps.iter().zip(&qs[1..]) {
                            set_to_list(a, b, p, q);
                        }
                        return (k, ChainEnd::FreeOppositeListNode);
                    }
                    Some(s) => {
                        debug_assert!(!ps.contains(&s));
                        ps.push(s);
                    }
                }
            }
        }
    }
}

/// Counters from a repair run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepairStats {
    pub initial_mismatches: usize,
    /// Outer iterations, one chain each.
    pub iterations: usize,
    /// Mismatch count after each iteration.
    pub history: Vec<usize>,
    pub chain_ends: Vec<ChainEnd>,
}

fn check_full_cover(star: &StarGraph, m: &Matching) -> Result<(), StarError> {
    if m.left_count() != star.graph.left_count() || m.right_count() != star.graph.right_count() {
        return Err(StarError::Graph(GraphError::RowCount { got: m.left_count(), expected: star.graph.left_count() }));
    }
    Matching::from_pairs(&star.graph, &m.pairs())?;
    if m.len() != star.cover_size() {
        return Err(StarError::WrongSize { got: m.len(), expected: star.cover_size() });
    }
    if let Some(&g) = star.listed_girls.iter().find(|&&g| m.left_mate(g).is_none()) {
        return Err(StarError::Uncovered { side: Side::Girls, index: g });
    }
    if let Some(&b) = star.listed_boys.iter().find(|&&b| m.right_mate(b).is_none()) {
        return Err(StarError::Uncovered { side: Side::Boys, index: b });
    }
    Ok(())
}

/// Removes every mismatched edge from a matching of size `|G_L| + |B_L|`
/// without changing its size or which listed people it covers.
pub fn repair_mismatches(star: &StarGraph, m: &Matching) -> Result<Matching, StarError> {
    check_full_cover(star, m)?;
    let mut state = ListState::from_matching(star, m);
    let ListState { girls, boys } = &mut state;
    // A chain repair never unpairs an edge, so one sweep per side suffices.
    for g in 0..star.num_girls {
        while girls.mismatched(boys, g).is_some() {
            repair_chain(girls, boys, g);
        }
    }
    for b in 0..star.num_boys {
        while boys.mismatched(girls, b).is_some() {
            repair_chain(boys, girls, b);
        }
    }
    Ok(state.to_matching(star))
}

/// Same result as [`repair_mismatches`], recounting all mismatches after
/// every chain. Panics if a chain fails to lower the count.
pub fn repair_mismatches_instrumented(star: &StarGraph, m: &Matching) -> Result<(Matching, RepairStats), StarError> {
    check_full_cover(star, m)?;
    let mut state = ListState::from_matching(star, m);
    let mut count = state.mismatches().len();
    let mut stats = RepairStats { initial_mismatches: count, ..Default::default() };
    while let Some(start) = state.first_mismatch() {
        let ListState { girls, boys } = &mut state;
        let (_, end) = match start {
            Mismatch::GirlToBoyList { girl, .. } => repair_chain(girls, boys, girl),
            Mismatch::BoyToGirlList { boy, .. } => repair_chain(boys, girls, boy),
        };
        let next = state.mismatches().len();
        assert!(next < count, "chain repair must remove at least one mismatch");
        count = next;
        stats.iterations += 1;
        stats.history.push(count);
        stats.chain_ends.push(end);
    }
    Ok((state.to_matching(star), stats))
}

/// Reads the solution off a repaired matching: `g -> b` for every direct
/// edge and every paired `(g, L_b)`, `(b, L_g)`.
pub fn extract_assignment(star: &StarGraph, m: &Matching) -> Result<Assignment, StarError> {
    check_full_cover(star, m)?;
    let remaining = find_mismatches(star, m).count();
    if remaining > 0 {
        return Err(StarError::MismatchesRemain(remaining));
    }
    let pairs = (0..star.num_girls)
        .filter_map(|g| {
            m.left_mate(g).map(|v| match star.right_node(v) {
                RightNode::Boy(b) | RightNode::BoyList(b) => (g, b),
            })
        })
        .collect();
    Ok(Assignment::new(pairs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(Assignment),
    /// Carries a violator of the failing one-sided problem, stated over
    /// pared lists.
    Unsolvable(HallViolator),
}

impl SolveOutcome {
    pub fn is_solved(&self) -> bool {
        matches!(self, SolveOutcome::Solved(_))
    }

    pub fn assignment(&self) -> Option<&Assignment> {
        match self {
            SolveOutcome::Solved(a) => Some(a),
            SolveOutcome::Unsolvable(_) => None,
        }
    }

    pub fn violator(&self) -> Option<&HallViolator> {
        match self {
            SolveOutcome::Solved(_) => None,
            SolveOutcome::Unsolvable(v) => Some(v),
        }
    }
}

fn subproblem_certificate(sub: &SubProblem) -> Option<HallViolator> {
    let graph = sub.graph();
    let all: Vec<usize> = (0..sub.members.len()).collect();
    deficiency_certificate(&graph, &all).map(|cert| HallViolator {
        side: sub.side,
        members: cert.subset.iter().map(|&i| sub.members[i]).collect(),
        union_size: cert.neighborhood.len(),
    })
}

/// Hall violator of the girls' one-sided problem, or else of the boys',
/// found by alternating reachability. `None` when both are solvable.
pub fn unsolvable_certificate(inst: &SmpInstance) -> Option<HallViolator> {
    let (girls, boys) = cmp_subproblems(inst);
    subproblem_certificate(&girls).or_else(|| subproblem_certificate(&boys))
}

/// Solves with a single maximum matching of the star graph.
pub fn solve(inst: &SmpInstance) -> SolveOutcome {
    let star = build_star_graph(inst);
    let m = max_matching(star.graph());
    if m.len() < star.cover_size() {
        let violator = unsolvable_certificate(inst).expect("a deficient star matching implies a deficient one-sided problem");
        return SolveOutcome::Unsolvable(violator);
    }
    let repaired = repair_mismatches(&star, &m).expect("full matching satisfies the repair precondition");
    SolveOutcome::Solved(extract_assignment(&star, &repaired).expect("repair leaves no mismatches"))
}

/// Solves the girls' and boys' one-sided problems as two vertex-disjoint
/// matchings inside the star graph, then combines and repairs them.
pub fn solve_via_subproblems(inst: &SmpInstance) -> SolveOutcome {
    let star = build_star_graph(inst);
    let g = star.graph();

    // Girls' problem: listed girl nodes against their star neighbors.
    let girl_adj: Vec<Vec<usize>> = star.listed_girls.iter().map(|&u| g.neighbors(u).to_vec()).collect();
    let girl_graph = BipartiteGraph::new(girl_adj.len(), g.right_count(), girl_adj).expect("star rows");

    // Boys' problem: listed boy nodes against the left vertices adjacent to them.
    let mut boy_row = vec![None; star.num_boys];
    for (k, &b) in star.listed_boys.iter().enumerate() {
        boy_row[b] = Some(k);
    }
    let mut boy_adj = vec![Vec::new(); star.listed_boys.len()];
    for u in 0..g.left_count() {
        for &v in g.neighbors(u) {
            if let Some(k) = boy_row.get(v).copied().flatten() {
                boy_adj[k].push(u);
            }
        }
    }
    let boy_graph = BipartiteGraph::new(boy_adj.len(), g.left_count(), boy_adj).expect("star columns");

    let (sub_girls, sub_boys) = cmp_subproblems(inst);
    let girl_match = max_matching(&girl_graph);
    if girl_match.len() < star.listed_girls.len() {
        return SolveOutcome::Unsolvable(subproblem_certificate(&sub_girls).expect("deficient girls' problem"));
    }
    let boy_match = max_matching(&boy_graph);
    if boy_match.len() < star.listed_boys.len() {
        return SolveOutcome::Unsolvable(subproblem_certificate(&sub_boys).expect("deficient boys' problem"));
    }

    let mut pairs: Vec<(usize, usize)> =
        girl_match.pairs().into_iter().map(|(k, v)| (star.listed_girls[k], v)).collect();
    pairs.extend(boy_match.pairs().into_iter().map(|(k, u)| (u, star.listed_boys[k])));
    let combined = Matching::from_pairs(g, &pairs).expect("the two matchings are vertex-disjoint");
    let repaired = repair_mismatches(&star, &combined).expect("combined matching covers every listed person");
    SolveOutcome::Solved(extract_assignment(&star, &repaired).expect("repair leaves no mismatches"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::validate_assignment;
    use StarEdge::*;

    fn i1() -> SmpInstance {
        SmpInstance::from_indices(vec![vec![0, 1], vec![]], vec![vec![1], vec![]]).unwrap()
    }

    fn i3() -> SmpInstance {
        SmpInstance::from_indices(vec![vec![0, 1]; 2], vec![vec![0, 1]; 2]).unwrap()
    }

    #[test]
    fn star_graph_i1() {
        let star = build_star_graph(&i1());
        assert_eq!(star.edges(), vec![Direct { girl: 0, boy: 1 }, Direct { girl: 1, boy: 0 }]);
        // L_g1 and L_b1 exist but are isolated.
        let lg = star.left_id(LeftNode::GirlList(0)).unwrap();
        let lb = star.right_id(RightNode::BoyList(0)).unwrap();
        assert!(star.graph().neighbors(lg).is_empty());
        assert!((0..star.graph().left_count()).all(|u| !star.graph().has_edge(u, lb)));
    }

    #[test]
    fn star_graph_i3() {
        let star = build_star_graph(&i3());
        let mut expected = Vec::new();
        for g in 0..2 {
            for b in 0..2 {
                expected.push(GirlToBoyList { girl: g, boy: b });
                expected.push(BoyToGirlList { boy: b, girl: g });
            }
        }
        expected.sort();
        assert_eq!(star.edges(), expected);
    }

    #[test]
    fn star_graph_no_lists() {
        let inst = SmpInstance::from_indices(vec![vec![]; 3], vec![vec![]; 2]).unwrap();
        let star = build_star_graph(&inst);
        assert!(star.edges().is_empty());
        assert_eq!(star.cover_size(), 0);
    }

    #[test]
    fn star_graph_one_sided_not_compatible() {
        // g1 lists b1 but b1 lists only g2: no edge between g1 and b1 at all.
        let inst = SmpInstance::from_indices(vec![vec![0], vec![]], vec![vec![1]]).unwrap();
        let star = build_star_graph(&inst);
        assert_eq!(star.edges(), vec![Direct { girl: 1, boy: 0 }]);
    }

    #[test]
    fn mismatch_counts() {
        let star = build_star_graph(&i1());
        let m = star.matching_from_edges(&[Direct { girl: 0, boy: 1 }, Direct { girl: 1, boy: 0 }]).unwrap();
        assert_eq!(find_mismatches(&star, &m).count(), 0);

        let star = build_star_graph(&i3());
        let crossed = star
            .matching_from_edges(&[
                GirlToBoyList { girl: 0, boy: 0 },
                GirlToBoyList { girl: 1, boy: 1 },
                BoyToGirlList { boy: 0, girl: 1 },
                BoyToGirlList { boy: 1, girl: 0 },
            ])
            .unwrap();
        let report = find_mismatches(&star, &crossed);
        assert_eq!(report.count(), 4);
        assert_eq!(report.mismatched[0], Mismatch::GirlToBoyList { girl: 0, boy: 0 });

        let paired = star
            .matching_from_edges(&[
                GirlToBoyList { girl: 0, boy: 0 },
                BoyToGirlList { boy: 0, girl: 0 },
                GirlToBoyList { girl: 1, boy: 1 },
                BoyToGirlList { boy: 1, girl: 1 },
            ])
            .unwrap();
        assert_eq!(find_mismatches(&star, &paired).count(), 0);
    }

    #[test]
    fn repair_identity() {
        let star = build_star_graph(&i3());
        let paired = star
            .matching_from_edges(&[
                GirlToBoyList { girl: 0, boy: 0 },
                BoyToGirlList { boy: 0, girl: 0 },
                GirlToBoyList { girl: 1, boy: 1 },
                BoyToGirlList { boy: 1, girl: 1 },
            ])
            .unwrap();
        let (out, stats) = repair_mismatches_instrumented(&star, &paired).unwrap();
        assert_eq!(out, paired);
        assert_eq!(stats.iterations, 0);
    }

    #[test]
    fn repair_cycle_case() {
        let star = build_star_graph(&i3());
        let crossed = star
            .matching_from_edges(&[
                GirlToBoyList { girl: 0, boy: 0 },
                GirlToBoyList { girl: 1, boy: 1 },
                BoyToGirlList { boy: 0, girl: 1 },
                BoyToGirlList { boy: 1, girl: 0 },
            ])
            .unwrap();
        let (out, stats) = repair_mismatches_instrumented(&star, &crossed).unwrap();
        // Chain g1 -> L_g1 held by b2 -> L_b2 held by g2 -> L_g2 held by b1 closes.
        assert_eq!(stats.chain_ends, vec![ChainEnd::Cycle]);
        assert_eq!(stats.initial_mismatches, 4);
        assert_eq!(
            star.matching_edges(&out),
            vec![
                GirlToBoyList { girl: 0, boy: 0 },
                GirlToBoyList { girl: 1, boy: 1 },
                BoyToGirlList { boy: 0, girl: 0 },
                BoyToGirlList { boy: 1, girl: 1 },
            ]
        );
        assert_eq!(extract_assignment(&star, &out).unwrap(), Assignment::new(vec![(0, 0), (1, 1)]));
    }

    #[test]
    fn repair_chain_case() {
        // G={g1,g2}, B={b1,b2}, both girls list both boys, b1 lists both
        // girls, b2 holds no list.
        let inst = SmpInstance::from_indices(vec![vec![0, 1]; 2], vec![vec![0, 1], vec![]]).unwrap();
        let star = build_star_graph(&inst);
        let m = star
            .matching_from_edges(&[
                GirlToBoyList { girl: 0, boy: 0 },
                Direct { girl: 1, boy: 1 },
                BoyToGirlList { boy: 0, girl: 1 },
            ])
            .unwrap();
        let (out, stats) = repair_mismatches_instrumented(&star, &m).unwrap();
        assert_eq!(stats.initial_mismatches, 2);
        assert!(stats.iterations <= stats.initial_mismatches);
        assert_eq!(out.len(), 3);
        let a = extract_assignment(&star, &out).unwrap();
        assert!(validate_assignment(&inst, &a).is_empty());
    }

    #[test]
    fn repair_frees_direct_partner() {
        // g1 -> L_b1 is mismatched because b1 is held directly by unlisted g2;
        // L_g1 is free, so b1 moves over to it and g2 is released.
        let inst = SmpInstance::from_indices(vec![vec![0], vec![]], vec![vec![0, 1]]).unwrap();
        let star = build_star_graph(&inst);
        let m = star
            .matching_from_edges(&[GirlToBoyList { girl: 0, boy: 0 }, Direct { girl: 1, boy: 0 }])
            .unwrap();
        let (out, stats) = repair_mismatches_instrumented(&star, &m).unwrap();
        assert_eq!(stats.chain_ends, vec![ChainEnd::FreeListNode]);
        assert_eq!(extract_assignment(&star, &out).unwrap(), Assignment::new(vec![(0, 0)]));
    }

    #[test]
    fn repair_starting_on_boy_side() {
        // Only (b1, L_g1) is matched on the list edges; g1 is held directly.
        let inst = SmpInstance::from_indices(vec![vec![0, 1]], vec![vec![0], vec![]]).unwrap();
        let star = build_star_graph(&inst);
        let m = star
            .matching_from_edges(&[Direct { girl: 0, boy: 1 }, BoyToGirlList { boy: 0, girl: 0 }])
            .unwrap();
        let report = find_mismatches(&star, &m);
        assert_eq!(report.mismatched, vec![Mismatch::BoyToGirlList { boy: 0, girl: 0 }]);
        let out = repair_mismatches(&star, &m).unwrap();
        assert_eq!(extract_assignment(&star, &out).unwrap(), Assignment::new(vec![(0, 0)]));
    }

    #[test]
    fn plain_and_instrumented_repair_agree() {
        let star = build_star_graph(&i3());
        let crossed = star
            .matching_from_edges(&[
                GirlToBoyList { girl: 0, boy: 0 },
                GirlToBoyList { girl: 1, boy: 1 },
                BoyToGirlList { boy: 0, girl: 1 },
                BoyToGirlList { boy: 1, girl: 0 },
            ])
            .unwrap();
        let plain = repair_mismatches(&star, &crossed).unwrap();
        let (instrumented, _) = repair_mismatches_instrumented(&star, &crossed).unwrap();
        assert_eq!(plain, instrumented);
    }

    #[test]
    fn repair_rejects_short_matching() {
        let star = build_star_graph(&i3());
        let m = star.matching_from_edges(&[GirlToBoyList { girl: 0, boy: 0 }]).unwrap();
        assert!(matches!(repair_mismatches(&star, &m), Err(StarError::WrongSize { .. })));
        assert!(matches!(extract_assignment(&star, &m), Err(StarError::WrongSize { .. })));
    }

    #[test]
    fn extract_rejects_mismatches() {
        let star = build_star_graph(&i3());
        let crossed = star
            .matching_from_edges(&[
                GirlToBoyList { girl: 0, boy: 0 },
                GirlToBoyList { girl: 1, boy: 1 },
                BoyToGirlList { boy: 0, girl: 1 },
                BoyToGirlList { boy: 1, girl: 0 },
            ])
            .unwrap();
        assert_eq!(extract_assignment(&star, &crossed), Err(StarError::MismatchesRemain(4)));
    }

    #[test]
    fn extract_empty() {
        let inst = SmpInstance::from_indices(vec![vec![]], vec![vec![]]).unwrap();
        let star = build_star_graph(&inst);
        assert_eq!(extract_assignment(&star, &Matching::empty(1, 1)).unwrap(), Assignment::default());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&i1()), SolveOutcome::Solved(Assignment::new(vec![(0, 1), (1, 0)])));
        let a = solve(&i3());
        let a = a.assignment().unwrap();
        assert!(*a == Assignment::new(vec![(0, 0), (1, 1)]) || *a == Assignment::new(vec![(0, 1), (1, 0)]));
        assert_eq!(solve(&i3()), solve(&i3()));

        let two_one = SmpInstance::from_indices(vec![vec![0], vec![0]], vec![vec![]]).unwrap();
        assert_eq!(
            solve(&two_one),
            SolveOutcome::Unsolvable(HallViolator { side: Side::Girls, members: vec![0, 1], union_size: 1 })
        );
    }

    #[test]
    fn subproblem_path_examples() {
        assert_eq!(solve_via_subproblems(&i1()), solve(&i1()));
        let a = solve_via_subproblems(&i3());
        assert!(validate_assignment(&i3(), a.assignment().unwrap()).is_empty());
        let two_one = SmpInstance::from_indices(vec![vec![0], vec![0]], vec![vec![]]).unwrap();
        assert_eq!(solve_via_subproblems(&two_one).violator().unwrap().side, Side::Girls);
    }

    #[test]
    fn boys_side_violator() {
        let inst = SmpInstance::from_indices(vec![vec![]], vec![vec![0], vec![0]]).unwrap();
        let v = solve(&inst);
        let v = v.violator().unwrap();
        assert_eq!(v.side, Side::Boys);
        assert!(v.verify(&inst));
    }
}
