//! Instance model for the symmetric marriage problem (SMP) and the classical
//! one-sided marriage problem (CMP).
//!
//! Identifiers are opaque strings at the boundary and dense indices inside.
//! A person whose list is empty holds no list: they accept anyone who lists
//! them, or nobody at all. Refusal to marry is only expressible on
//! [`RawInstance`] and is resolved by [`preprocess_refusals`].

use std::collections::{HashMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bipartite::BipartiteGraph;

/// One side of the bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Girls,
    Boys,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Girls => Side::Boys,
            Side::Boys => Side::Girls,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Girls => "girls",
            Side::Boys => "boys",
        }
    }

    fn singular(self) -> &'static str {
        match self {
            Side::Girls => "girl",
            Side::Boys => "boy",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A structural problem found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Duplicate { side: Side, id: String },
    /// A list names someone who is not on the opposite side.
    UnknownMember { side: Side, id: String, owner: String },
    /// A list is keyed by someone who is not on that side.
    UnknownListOwner { side: Side, id: String },
    DuplicateListEntry { owner: String, id: String },
    UnknownRefuser { id: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Duplicate { side, id } => write!(f, "duplicate {} {id}", side.singular()),
            Violation::UnknownMember { side, id, owner } => {
                write!(f, "unknown {} {id} in list of {owner}", side.singular())
            }
            Violation::UnknownListOwner { side, id } => {
                write!(f, "list given for unknown {} {id}", side.singular())
            }
            Violation::DuplicateListEntry { owner, id } => {
                write!(f, "{id} appears twice in list of {owner}")
            }
            Violation::UnknownRefuser { id } => write!(f, "unknown refuser {id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("invalid instance: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    /// Removing refusers emptied the list of this member.
    #[error("infeasible: every partner acceptable to {0} refuses to marry")]
    Infeasible(String),
    #[error("{side} index {index} out of range")]
    IndexOutOfRange { side: Side, index: usize },
    #[error("{0} has no list; compatibility is only defined between listed members")]
    NotListed(String),
    #[error("list of {0} is empty")]
    EmptyCmpList(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// String-level instance, possibly malformed, possibly with refusers.
///
/// A member missing from `girl_lists`/`boy_lists` (or mapped to an empty
/// vector) holds no list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawInstance {
    pub girls: Vec<String>,
    pub boys: Vec<String>,
    pub girl_lists: IndexMap<String, Vec<String>>,
    pub boy_lists: IndexMap<String, Vec<String>>,
    pub refusers: Vec<String>,
}

/// Returns every structural violation of `raw`; empty means well formed.
pub fn validate(raw: &RawInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    let girls = collect_side(&raw.girls, Side::Girls, &mut out);
    let boys = collect_side(&raw.boys, Side::Boys, &mut out);
    check_lists(&raw.girl_lists, Side::Girls, &girls, &boys, &mut out);
    check_lists(&raw.boy_lists, Side::Boys, &boys, &girls, &mut out);
    for r in &raw.refusers {
        if !girls.contains(r.as_str()) && !boys.contains(r.as_str()) {
            out.push(Violation::UnknownRefuser { id: r.clone() });
        }
    }
    out
}

fn collect_side<'a>(ids: &'a [String], side: Side, out: &mut Vec<Violation>) -> HashSet<&'a str> {
    let mut seen = HashSet::with_capacity(ids.len());
    for id in ids {
        if !seen.insert(id.as_str()) {
            out.push(Violation::Duplicate { side, id: id.clone() });
        }
    }
    seen
}

fn check_lists(
    lists: &IndexMap<String, Vec<String>>,
    side: Side,
    own: &HashSet<&str>,
    other: &HashSet<&str>,
    out: &mut Vec<Violation>,
) {
    for (owner, list) in lists {
        if !own.contains(owner.as_str()) {
            out.push(Violation::UnknownListOwner { side, id: owner.clone() });
        }
        let mut seen = HashSet::new();
        for id in list {
            if !other.contains(id.as_str()) {
                out.push(Violation::UnknownMember {
                    side: side.opposite(),
                    id: id.clone(),
                    owner: owner.clone(),
                });
            } else if !seen.insert(id.as_str()) {
                out.push(Violation::DuplicateListEntry { owner: owner.clone(), id: id.clone() });
            }
        }
    }
}

/// A validated SMP instance with dense indices.
///
/// Lists are stored sorted by index, so every set iterates in the order the
/// members were declared. An empty list means "no list".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmpInstance {
    girls: Vec<String>,
    boys: Vec<String>,
    girl_lists: Vec<Vec<usize>>,
    boy_lists: Vec<Vec<usize>>,
}

impl SmpInstance {
    /// Builds an instance from names and index lists. Lists are deduplicated
    /// and sorted; out-of-range indices are rejected.
    pub fn from_lists(
        girls: Vec<String>,
        boys: Vec<String>,
        girl_lists: Vec<Vec<usize>>,
        boy_lists: Vec<Vec<usize>>,
    ) -> Result<Self, InstanceError> {
        let mut violations = Vec::new();
        collect_side(&girls, Side::Girls, &mut violations);
        collect_side(&boys, Side::Boys, &mut violations);
        if !violations.is_empty() {
            return Err(InstanceError::Invalid(violations));
        }
        if girl_lists.len() != girls.len() {
            return Err(InstanceError::IndexOutOfRange { side: Side::Girls, index: girl_lists.len() });
        }
        if boy_lists.len() != boys.len() {
            return Err(InstanceError::IndexOutOfRange { side: Side::Boys, index: boy_lists.len() });
        }
        let girl_lists = normalize_lists(girl_lists, boys.len(), Side::Boys)?;
        let boy_lists = normalize_lists(boy_lists, girls.len(), Side::Girls)?;
        Ok(SmpInstance { girls, boys, girl_lists, boy_lists })
    }

    /// Like [`SmpInstance::from_lists`] with generated names `g1..`, `b1..`.
    pub fn from_indices(girl_lists: Vec<Vec<usize>>, boy_lists: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        let girls = (1..=girl_lists.len()).map(|i| format!("g{i}")).collect();
        let boys = (1..=boy_lists.len()).map(|i| format!("b{i}")).collect();
        Self::from_lists(girls, boys, girl_lists, boy_lists)
    }

    pub fn num_girls(&self) -> usize {
        self.girls.len()
    }

    pub fn num_boys(&self) -> usize {
        self.boys.len()
    }

    pub fn girls(&self) -> &[String] {
        &self.girls
    }

    pub fn boys(&self) -> &[String] {
        &self.boys
    }

    pub fn girl_name(&self, g: usize) -> &str {
        &self.girls[g]
    }

    pub fn boy_name(&self, b: usize) -> &str {
        &self.boys[b]
    }

    pub fn name(&self, side: Side, idx: usize) -> &str {
        match side {
            Side::Girls => &self.girls[idx],
            Side::Boys => &self.boys[idx],
        }
    }

    pub fn girl_list(&self, g: usize) -> &[usize] {
        &self.girl_lists[g]
    }

    pub fn boy_list(&self, b: usize) -> &[usize] {
        &self.boy_lists[b]
    }

    /// List of a member of `side`; indices refer to the opposite side.
    pub fn list(&self, side: Side, idx: usize) -> &[usize] {
        match side {
            Side::Girls => &self.girl_lists[idx],
            Side::Boys => &self.boy_lists[idx],
        }
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::Girls => self.girls.len(),
            Side::Boys => self.boys.len(),
        }
    }

    pub fn girl_has_list(&self, g: usize) -> bool {
        !self.girl_lists[g].is_empty()
    }

    pub fn boy_has_list(&self, b: usize) -> bool {
        !self.boy_lists[b].is_empty()
    }

    pub fn has_list(&self, side: Side, idx: usize) -> bool {
        !self.list(side, idx).is_empty()
    }

    pub fn girl_lists_boy(&self, g: usize, b: usize) -> bool {
        self.girl_lists[g].binary_search(&b).is_ok()
    }

    pub fn boy_lists_girl(&self, b: usize, g: usize) -> bool {
        self.boy_lists[b].binary_search(&g).is_ok()
    }

    /// Both members list each other. Unlisted members are never compatible.
    pub fn compatible(&self, g: usize, b: usize) -> bool {
        self.girl_lists_boy(g, b) && self.boy_lists_girl(b, g)
    }

    pub fn listed(&self, side: Side) -> Vec<usize> {
        (0..self.side_len(side)).filter(|&i| self.has_list(side, i)).collect()
    }

    pub fn girl_index(&self, name: &str) -> Option<usize> {
        self.girls.iter().position(|g| g == name)
    }

    pub fn boy_index(&self, name: &str) -> Option<usize> {
        self.boys.iter().position(|b| b == name)
    }

    /// Converts back to the string-level form; wildcards are omitted keys.
    pub fn to_raw(&self) -> RawInstance {
        let named = |lists: &[Vec<usize>], own: &[String], other: &[String]| {
            lists
                .iter()
                .enumerate()
                .filter(|(_, l)| !l.is_empty())
                .map(|(i, l)| (own[i].clone(), l.iter().map(|&j| other[j].clone()).collect()))
                .collect()
        };
        RawInstance {
            girls: self.girls.clone(),
            boys: self.boys.clone(),
            girl_lists: named(&self.girl_lists, &self.girls, &self.boys),
            boy_lists: named(&self.boy_lists, &self.boys, &self.girls),
            refusers: Vec::new(),
        }
    }
}

fn normalize_lists(lists: Vec<Vec<usize>>, bound: usize, target: Side) -> Result<Vec<Vec<usize>>, InstanceError> {
    lists
        .into_iter()
        .map(|mut l| {
            if let Some(&bad) = l.iter().find(|&&x| x >= bound) {
                return Err(InstanceError::IndexOutOfRange { side: target, index: bad });
            }
            l.sort_unstable();
            l.dedup();
            Ok(l)
        })
        .collect()
}

impl TryFrom<&RawInstance> for SmpInstance {
    type Error = InstanceError;

    /// Validates and indexes `raw`. Refusers must be empty; use
    /// [`preprocess_refusals`] otherwise.
    fn try_from(raw: &RawInstance) -> Result<Self, Self::Error> {
        let violations = validate(raw);
        if !violations.is_empty() {
            return Err(InstanceError::Invalid(violations));
        }
        if !raw.refusers.is_empty() {
            return preprocess_refusals(raw);
        }
        let gi: HashMap<&str, usize> = raw.girls.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let bi: HashMap<&str, usize> = raw.boys.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut girl_lists = vec![Vec::new(); raw.girls.len()];
        for (owner, list) in &raw.girl_lists {
            girl_lists[gi[owner.as_str()]] = list.iter().map(|b| bi[b.as_str()]).collect();
        }
        let mut boy_lists = vec![Vec::new(); raw.boys.len()];
        for (owner, list) in &raw.boy_lists {
            boy_lists[bi[owner.as_str()]] = list.iter().map(|g| gi[g.as_str()]).collect();
        }
        SmpInstance::from_lists(raw.girls.clone(), raw.boys.clone(), girl_lists, boy_lists)
    }
}

/// Removes refusers from both sides and from every list.
///
/// A member whose list was nonempty and becomes empty cannot be satisfied;
/// the first such member (girls before boys, declaration order) is reported
/// as [`InstanceError::Infeasible`]. Lists that were empty to begin with stay
/// wildcards.
pub fn preprocess_refusals(raw: &RawInstance) -> Result<SmpInstance, InstanceError> {
    let violations = validate(raw);
    if !violations.is_empty() {
        return Err(InstanceError::Invalid(violations));
    }
    let refusers: HashSet<&str> = raw.refusers.iter().map(String::as_str).collect();
    let keep = |ids: &[String]| -> Vec<String> {
        ids.iter().filter(|s| !refusers.contains(s.as_str())).cloned().collect()
    };
    let strip = |lists: &IndexMap<String, Vec<String>>,
                 own: &[String]|
     -> Result<IndexMap<String, Vec<String>>, InstanceError> {
        let mut out = IndexMap::new();
        for id in own {
            let Some(list) = lists.get(id) else { continue };
            if list.is_empty() {
                continue;
            }
            let kept: Vec<String> = list.iter().filter(|s| !refusers.contains(s.as_str())).cloned().collect();
            if kept.is_empty() {
                return Err(InstanceError::Infeasible(id.clone()));
            }
            out.insert(id.clone(), kept);
        }
        Ok(out)
    };
    let girls = keep(&raw.girls);
    let boys = keep(&raw.boys);
    let stripped = RawInstance {
        girl_lists: strip(&raw.girl_lists, &girls)?,
        boy_lists: strip(&raw.boy_lists, &boys)?,
        girls,
        boys,
        refusers: Vec::new(),
    };
    SmpInstance::try_from(&stripped)
}

/// Members holding a list on each side (`G_L`, `B_L`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListedSets {
    pub girls: Vec<usize>,
    pub boys: Vec<usize>,
}

pub fn listed_sets(inst: &SmpInstance) -> ListedSets {
    ListedSets { girls: inst.listed(Side::Girls), boys: inst.listed(Side::Boys) }
}

pub fn is_list_compatible(inst: &SmpInstance, g: usize, b: usize) -> Result<bool, InstanceError> {
    if g >= inst.num_girls() {
        return Err(InstanceError::IndexOutOfRange { side: Side::Girls, index: g });
    }
    if b >= inst.num_boys() {
        return Err(InstanceError::IndexOutOfRange { side: Side::Boys, index: b });
    }
    if !inst.girl_has_list(g) {
        return Err(InstanceError::NotListed(inst.girl_name(g).to_owned()));
    }
    if !inst.boy_has_list(b) {
        return Err(InstanceError::NotListed(inst.boy_name(b).to_owned()));
    }
    Ok(inst.compatible(g, b))
}

/// Pared list of a listed member: drops partners who hold a list that does
/// not name them back.
pub fn pared_list(inst: &SmpInstance, side: Side, idx: usize) -> Vec<usize> {
    let other = side.opposite();
    inst.list(side, idx)
        .iter()
        .copied()
        .filter(|&j| !inst.has_list(other, j) || inst.list(other, j).binary_search(&idx).is_ok())
        .collect()
}

/// Pared lists for every listed member, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParedLists {
    pub girls: Vec<(usize, Vec<usize>)>,
    pub boys: Vec<(usize, Vec<usize>)>,
}

impl ParedLists {
    pub fn side(&self, side: Side) -> &[(usize, Vec<usize>)] {
        match side {
            Side::Girls => &self.girls,
            Side::Boys => &self.boys,
        }
    }
}

pub fn pare_lists(inst: &SmpInstance) -> ParedLists {
    let pare = |side| {
        inst.listed(side).into_iter().map(|i| (i, pared_list(inst, side, i))).collect()
    };
    ParedLists { girls: pare(Side::Girls), boys: pare(Side::Boys) }
}

/// One of the two one-sided problems an SMP splits into: the listed members
/// of `side` against the whole opposite side, with pared lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubProblem {
    pub side: Side,
    /// Listed members of `side` (the CMP index set).
    pub members: Vec<usize>,
    /// Pared list per member, aligned with `members`.
    pub lists: Vec<Vec<usize>>,
    /// Size of the opposite side (the CMP ground set).
    pub ground_size: usize,
}

impl SubProblem {
    /// First member whose pared list is empty, if any; such a subproblem has
    /// no solution.
    pub fn empty_list_member(&self) -> Option<usize> {
        self.members.iter().zip(&self.lists).find(|(_, l)| l.is_empty()).map(|(&m, _)| m)
    }

    pub fn is_trivially_unsolvable(&self) -> bool {
        self.empty_list_member().is_some()
    }

    /// Left vertices are positions in `members`, right vertices indices of
    /// the opposite side.
    pub fn graph(&self) -> BipartiteGraph {
        BipartiteGraph::new(self.lists.len(), self.ground_size, self.lists.clone())
            .expect("pared lists stay within the opposite side")
    }

    pub fn to_cmp(&self, inst: &SmpInstance) -> Result<CmpInstance, InstanceError> {
        let other = self.side.opposite();
        CmpInstance::new(
            self.members.iter().map(|&m| inst.name(self.side, m).to_owned()).collect(),
            (0..self.ground_size).map(|j| inst.name(other, j).to_owned()).collect(),
            self.lists.clone(),
        )
    }
}

/// Splits an SMP into the girls' and boys' one-sided problems.
pub fn cmp_subproblems(inst: &SmpInstance) -> (SubProblem, SubProblem) {
    let pared = pare_lists(inst);
    let build = |side: Side, entries: Vec<(usize, Vec<usize>)>| {
        let (members, lists) = entries.into_iter().unzip();
        SubProblem { side, members, lists, ground_size: inst.side_len(side.opposite()) }
    };
    (build(Side::Girls, pared.girls), build(Side::Boys, pared.boys))
}

/// A one-sided marriage problem: every left member lists acceptable right
/// members and every list is nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CmpInstance {
    left: Vec<String>,
    right: Vec<String>,
    lists: Vec<Vec<usize>>,
}

impl CmpInstance {
    pub fn new(left: Vec<String>, right: Vec<String>, lists: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        let mut violations = Vec::new();
        collect_side(&left, Side::Girls, &mut violations);
        collect_side(&right, Side::Boys, &mut violations);
        if !violations.is_empty() {
            return Err(InstanceError::Invalid(violations));
        }
        if lists.len() != left.len() {
            return Err(InstanceError::IndexOutOfRange { side: Side::Girls, index: lists.len() });
        }
        let lists = normalize_lists(lists, right.len(), Side::Boys)?;
        if let Some(i) = lists.iter().position(Vec::is_empty) {
            return Err(InstanceError::EmptyCmpList(left[i].clone()));
        }
        Ok(CmpInstance { left, right, lists })
    }

    pub fn left(&self) -> &[String] {
        &self.left
    }

    pub fn right(&self) -> &[String] {
        &self.right
    }

    pub fn lists(&self) -> &[Vec<usize>] {
        &self.lists
    }

    pub fn list(&self, i: usize) -> &[usize] {
        &self.lists[i]
    }

    pub fn graph(&self) -> BipartiteGraph {
        BipartiteGraph::new(self.left.len(), self.right.len(), self.lists.clone())
            .expect("CMP lists are validated against the right side")
    }
}

/// Why an SMP is not a Baby SMP.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotBaby {
    #[error("{0} has no list")]
    EmptyList(String),
    #[error("side sizes differ: {girls} girls, {boys} boys")]
    SizeMismatch { girls: usize, boys: usize },
    #[error("{girl} and {boy} do not list each other symmetrically")]
    Asymmetric { girl: String, boy: String },
}

/// Reframes a Baby SMP (all lists nonempty, equal sides, symmetric
/// introductions) as the CMP of the girls' lists.
pub fn baby_to_cmp(inst: &SmpInstance) -> Result<CmpInstance, NotBaby> {
    for side in [Side::Girls, Side::Boys] {
        if let Some(i) = (0..inst.side_len(side)).find(|&i| !inst.has_list(side, i)) {
            return Err(NotBaby::EmptyList(inst.name(side, i).to_owned()));
        }
    }
    if inst.num_girls() != inst.num_boys() {
        return Err(NotBaby::SizeMismatch { girls: inst.num_girls(), boys: inst.num_boys() });
    }
    for g in 0..inst.num_girls() {
        for b in 0..inst.num_boys() {
            if inst.girl_lists_boy(g, b) != inst.boy_lists_girl(b, g) {
                return Err(NotBaby::Asymmetric {
                    girl: inst.girl_name(g).to_owned(),
                    boy: inst.boy_name(b).to_owned(),
                });
            }
        }
    }
    Ok(CmpInstance::new(inst.girls.clone(), inst.boys.clone(), inst.girl_lists.clone())
        .expect("nonempty in-range lists"))
}

/// Embeds a CMP as an SMP in which no boy holds a list.
pub fn cmp_to_smp(cmp: &CmpInstance) -> SmpInstance {
    SmpInstance::from_lists(
        cmp.left.clone(),
        cmp.right.clone(),
        cmp.lists.clone(),
        vec![Vec::new(); cmp.right.len()],
    )
    .expect("a valid CMP embeds as a valid SMP")
}

/// An injective partial function from girls to boys, as `(girl, boy)` index
/// pairs sorted by girl.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    pairs: Vec<(usize, usize)>,
}

impl Assignment {
    /// Sorts the pairs by girl. Injectivity is not checked here; see
    /// [`validate_assignment`].
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Assignment { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn boy_of(&self, g: usize) -> Option<usize> {
        self.pairs.binary_search_by_key(&g, |&(x, _)| x).ok().map(|i| self.pairs[i].1)
    }

    pub fn named(&self, inst: &SmpInstance) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|&(g, b)| (inst.girl_name(g).to_owned(), inst.boy_name(b).to_owned()))
            .collect()
    }
}

/// Checks the SMP solution contract directly from the lists: injective,
/// every listed girl and boy covered, and every pair acceptable to each
/// listed partner. Returns human-readable problems; empty means valid.
pub fn validate_assignment(inst: &SmpInstance, assignment: &Assignment) -> Vec<String> {
    let mut problems = Vec::new();
    let mut girl_seen = vec![false; inst.num_girls()];
    let mut boy_seen = vec![false; inst.num_boys()];
    for &(g, b) in assignment.pairs() {
        if g >= inst.num_girls() || b >= inst.num_boys() {
            problems.push(format!("pair ({g}, {b}) out of range"));
            continue;
        }
        let (gn, bn) = (inst.girl_name(g), inst.boy_name(b));
        if std::mem::replace(&mut girl_seen[g], true) {
            problems.push(format!("girl {gn} assigned twice"));
        }
        if std::mem::replace(&mut boy_seen[b], true) {
            problems.push(format!("boy {bn} assigned twice"));
        }
        if inst.girl_has_list(g) && !inst.girl_lists_boy(g, b) {
            problems.push(format!("{bn} is not on the list of {gn}"));
        }
        if inst.boy_has_list(b) && !inst.boy_lists_girl(b, g) {
            problems.push(format!("{gn} is not on the list of {bn}"));
        }
    }
    for g in 0..inst.num_girls() {
        if inst.girl_has_list(g) && !girl_seen[g] {
            problems.push(format!("listed girl {} is unassigned", inst.girl_name(g)));
        }
    }
    for b in 0..inst.num_boys() {
        if inst.boy_has_list(b) && !boy_seen[b] {
            problems.push(format!("listed boy {} is unassigned", inst.boy_name(b)));
        }
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    fn lists(v: &[(&str, &[&str])]) -> IndexMap<String, Vec<String>> {
        v.iter().map(|(k, l)| (k.to_string(), s(l))).collect()
    }

    /// G={g1,g2}, B={b1,b2}, B_g1={b1,b2}, G_b1={g2}.
    pub(crate) fn i1() -> SmpInstance {
        SmpInstance::from_indices(vec![vec![0, 1], vec![]], vec![vec![1], vec![]]).unwrap()
    }

    fn i3() -> SmpInstance {
        SmpInstance::from_indices(vec![vec![0, 1], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let ok = RawInstance {
            girls: s(&["g1"]),
            boys: s(&["b1"]),
            girl_lists: lists(&[("g1", &["b1"])]),
            ..Default::default()
        };
        assert!(validate(&ok).is_empty());

        let dangling = RawInstance {
            girls: s(&["g1"]),
            boys: s(&["b1"]),
            girl_lists: lists(&[("g1", &["b2"])]),
            ..Default::default()
        };
        let v = validate(&dangling);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "unknown boy b2 in list of g1");

        let dup = RawInstance { girls: s(&["g1", "g1"]), ..Default::default() };
        assert_eq!(validate(&dup)[0].to_string(), "duplicate girl g1");
    }

    #[test]
    fn validate_reports_all_violations() {
        let raw = RawInstance {
            girls: s(&["g1", "g1"]),
            boys: s(&["b1"]),
            girl_lists: lists(&[("g9", &["b1"]), ("g1", &["b1", "b1", "b7"])]),
            refusers: s(&["x"]),
            ..Default::default()
        };
        assert_eq!(validate(&raw).len(), 5);
        assert!(matches!(SmpInstance::try_from(&raw), Err(InstanceError::Invalid(_))));
    }

    #[test]
    fn refusals_identity() {
        let raw = i1().to_raw();
        assert_eq!(preprocess_refusals(&raw).unwrap(), i1());
    }

    #[test]
    fn refusals_infeasible() {
        let raw = RawInstance {
            girls: s(&["g1"]),
            boys: s(&["b1"]),
            girl_lists: lists(&[("g1", &["b1"])]),
            refusers: s(&["b1"]),
            ..Default::default()
        };
        assert_eq!(preprocess_refusals(&raw), Err(InstanceError::Infeasible("g1".into())));
    }

    #[test]
    fn refusals_shrink() {
        let raw = RawInstance {
            girls: s(&["g1", "g2"]),
            boys: s(&["b1", "b2"]),
            girl_lists: lists(&[("g1", &["b1", "b2"])]),
            refusers: s(&["b1"]),
            ..Default::default()
        };
        let inst = preprocess_refusals(&raw).unwrap();
        assert_eq!(inst.boys(), &s(&["b2"])[..]);
        assert_eq!(inst.girl_list(0), &[0]);
        assert!(!inst.girl_has_list(1));
        assert!(validate(&inst.to_raw()).is_empty());
    }

    #[test]
    fn refusals_keep_original_wildcards() {
        // g2 had no list to begin with; removing b1 must not make it infeasible.
        let raw = RawInstance {
            girls: s(&["g1", "g2"]),
            boys: s(&["b1", "b2"]),
            girl_lists: lists(&[("g1", &["b2"])]),
            boy_lists: lists(&[("b2", &["g1", "g2"])]),
            refusers: s(&["b1", "g2"]),
        };
        let inst = preprocess_refusals(&raw).unwrap();
        assert_eq!(inst.girls(), &s(&["g1"])[..]);
        assert_eq!(inst.boy_list(0), &[0]);
    }

    #[test]
    fn listed_sets_examples() {
        let empty = SmpInstance::from_indices(vec![vec![]; 2], vec![vec![]; 3]).unwrap();
        assert_eq!(listed_sets(&empty), ListedSets { girls: vec![], boys: vec![] });
        let cmp = SmpInstance::from_indices(vec![vec![0], vec![1]], vec![vec![]; 2]).unwrap();
        assert_eq!(listed_sets(&cmp), ListedSets { girls: vec![0, 1], boys: vec![] });
        assert_eq!(listed_sets(&i1()), ListedSets { girls: vec![0], boys: vec![0] });
    }

    #[test]
    fn compatibility() {
        let inst = SmpInstance::from_indices(vec![vec![0], vec![]], vec![vec![0]]).unwrap();
        assert_eq!(is_list_compatible(&inst, 0, 0), Ok(true));
        assert!(matches!(is_list_compatible(&inst, 1, 0), Err(InstanceError::NotListed(_))));
        let other = SmpInstance::from_indices(vec![vec![0], vec![0]], vec![vec![1]]).unwrap();
        assert_eq!(is_list_compatible(&other, 0, 0), Ok(false));
        let i3 = i3();
        for g in 0..2 {
            for b in 0..2 {
                assert_eq!(is_list_compatible(&i3, g, b), Ok(true));
            }
        }
    }

    #[test]
    fn pare_examples() {
        let p = pare_lists(&i1());
        assert_eq!(p.girls, vec![(0, vec![1])]);
        assert_eq!(p.boys, vec![(0, vec![1])]);

        let cmp = SmpInstance::from_indices(vec![vec![0, 1], vec![1]], vec![vec![]; 2]).unwrap();
        let p = pare_lists(&cmp);
        assert_eq!(p.girls, vec![(0, vec![0, 1]), (1, vec![1])]);

        let p = pare_lists(&i3());
        assert_eq!(p.girls, vec![(0, vec![0, 1]), (1, vec![0, 1])]);
        assert_eq!(p.boys, vec![(0, vec![0, 1]), (1, vec![0, 1])]);
    }

    #[test]
    fn subproblem_examples() {
        let (cg, cb) = cmp_subproblems(&i1());
        assert_eq!(cg.members, vec![0]);
        assert_eq!(cg.lists, vec![vec![1]]);
        assert_eq!(cb.members, vec![0]);
        assert_eq!(cb.lists, vec![vec![1]]);
        let c = cg.to_cmp(&i1()).unwrap();
        assert_eq!(c.left(), &s(&["g1"])[..]);
        assert_eq!(c.right(), &s(&["b1", "b2"])[..]);

        let empty = SmpInstance::from_indices(vec![vec![]], vec![vec![]]).unwrap();
        let (cg, cb) = cmp_subproblems(&empty);
        assert!(cg.members.is_empty() && cb.members.is_empty());

        // B_g1={b1}, G_b1={g2}: g1's pared list empties.
        let inst = SmpInstance::from_indices(vec![vec![0], vec![]], vec![vec![1]]).unwrap();
        let (cg, cb) = cmp_subproblems(&inst);
        assert_eq!(cg.empty_list_member(), Some(0));
        assert!(cg.to_cmp(&inst).is_err());
        assert!(!cb.is_trivially_unsolvable());
    }

    #[test]
    fn baby_examples() {
        let inst = SmpInstance::from_indices(vec![vec![0]], vec![vec![0]]).unwrap();
        let cmp = baby_to_cmp(&inst).unwrap();
        assert_eq!(cmp.lists(), &[vec![0]]);
        assert_eq!(baby_to_cmp(&i1()), Err(NotBaby::EmptyList("g2".into())));
        let half = SmpInstance::from_indices(vec![vec![0]], vec![vec![]]).unwrap();
        assert_eq!(baby_to_cmp(&half), Err(NotBaby::EmptyList("b1".into())));
        let asym = SmpInstance::from_indices(vec![vec![0, 1], vec![1]], vec![vec![0], vec![1]]).unwrap();
        assert!(matches!(baby_to_cmp(&asym), Err(NotBaby::Asymmetric { .. })));
        let sizes = SmpInstance::from_indices(vec![vec![0], vec![0]], vec![vec![0, 1]]).unwrap();
        assert!(matches!(baby_to_cmp(&sizes), Err(NotBaby::SizeMismatch { .. })));
    }

    #[test]
    fn cmp_embedding() {
        let cmp = CmpInstance::new(s(&["g1"]), s(&["b1"]), vec![vec![0]]).unwrap();
        let smp = cmp_to_smp(&cmp);
        assert_eq!(smp.girl_list(0), &[0]);
        assert!(!smp.boy_has_list(0));
        assert_eq!(listed_sets(&smp), ListedSets { girls: vec![0], boys: vec![] });
        let (cg, cb) = cmp_subproblems(&smp);
        assert_eq!(cg.to_cmp(&smp).unwrap(), cmp);
        assert!(cb.members.is_empty());
    }

    #[test]
    fn cmp_rejects_empty_list() {
        assert_eq!(
            CmpInstance::new(s(&["a"]), s(&["x"]), vec![vec![]]),
            Err(InstanceError::EmptyCmpList("a".into()))
        );
    }

    #[test]
    fn assignment_validation() {
        let inst = i1();
        assert!(validate_assignment(&inst, &Assignment::new(vec![(0, 1), (1, 0)])).is_empty());
        let bad = validate_assignment(&inst, &Assignment::new(vec![(0, 0), (1, 1)]));
        assert!(bad.iter().any(|p| p.contains("not on the list of g1") || p.contains("not on the list of b1")));
        assert!(!validate_assignment(&inst, &Assignment::new(vec![(0, 1)])).is_empty());
        assert!(!validate_assignment(&inst, &Assignment::new(vec![(0, 1), (1, 1)])).is_empty());
    }
}
