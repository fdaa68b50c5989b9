//! Exponential-time ground truth: Hall's condition by subset enumeration,
//! the two-sided Hall criteria for the SMP, and a backtracking solver.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{cmp_subproblems, pared_list, Assignment, CmpInstance, Side, SmpInstance, SubProblem};

/// Largest index set the subset enumeration accepts.
pub const MAX_HALL_SUBSET: usize = 20;
/// Largest side the backtracking solver accepts.
pub const MAX_ORACLE_SIDE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{what} has size {size}, above the limit of {limit}")]
pub struct SizeLimit {
    pub what: &'static str,
    pub size: usize,
    pub limit: usize,
}

/// Listed members of one side whose pared lists jointly name fewer people
/// than there are members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallViolator {
    pub side: Side,
    pub members: Vec<usize>,
    pub union_size: usize,
}

impl HallViolator {
    /// Recomputes the union of pared lists from `inst` and checks both the
    /// stored size and the deficiency.
    pub fn verify(&self, inst: &SmpInstance) -> bool {
        let n = inst.side_len(self.side);
        if self.members.is_empty() || self.members.iter().any(|&m| m >= n || !inst.has_list(self.side, m)) {
            return false;
        }
        let mut members = self.members.clone();
        members.sort_unstable();
        members.dedup();
        let union = pared_union_size(inst, self.side, &members);
        union == self.union_size && union < members.len()
    }

    pub fn member_names(&self, inst: &SmpInstance) -> Vec<String> {
        self.members.iter().map(|&m| inst.name(self.side, m).to_owned()).collect()
    }
}

pub fn pared_union_size(inst: &SmpInstance, side: Side, members: &[usize]) -> usize {
    let mut seen = vec![false; inst.side_len(side.opposite())];
    members
        .iter()
        .flat_map(|&m| pared_list(inst, side, m))
        .filter(|&j| !std::mem::replace(&mut seen[j], true))
        .count()
}

struct BitSet(Vec<u64>);

impl BitSet {
    fn from_indices(len: usize, idx: &[usize]) -> Self {
        let mut words = vec![0u64; len.div_ceil(64).max(1)];
        for &i in idx {
            words[i / 64] |= 1 << (i % 64);
        }
        BitSet(words)
    }
}

/// First index subset, by size then lexicographically, whose sets have a
/// union smaller than the subset. Returns `(subset positions, union size)`.
fn first_violator(ground: usize, sets: &[Vec<usize>]) -> Option<(Vec<usize>, usize)> {
    let bits: Vec<BitSet> = sets.iter().map(|s| BitSet::from_indices(ground, s)).collect();
    let n = sets.len();
    let words = bits.first().map_or(1, |b| b.0.len());
    let mut acc = vec![0u64; words];
    for k in 1..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            acc.iter_mut().for_each(|w| *w = 0);
            for &i in &combo {
                for (a, w) in acc.iter_mut().zip(&bits[i].0) {
                    *a |= w;
                }
            }
            let union: usize = acc.iter().map(|w| w.count_ones() as usize).sum();
            if union < k {
                return Some((combo, union));
            }
            // Advance to the next k-combination in lexicographic order.
            let Some(pos) = (0..k).rev().find(|&i| combo[i] < n - k + i) else { break };
            combo[pos] += 1;
            for i in pos + 1..k {
                combo[i] = combo[i - 1] + 1;
            }
        }
    }
    None
}

/// Hall's condition for a CMP. The violator's side is reported as
/// [`Side::Girls`] and its members are left indices of `cmp`.
pub fn hall_condition_cmp(cmp: &CmpInstance) -> Result<Option<HallViolator>, SizeLimit> {
    let n = cmp.left().len();
    if n > MAX_HALL_SUBSET {
        return Err(SizeLimit { what: "CMP index set", size: n, limit: MAX_HALL_SUBSET });
    }
    Ok(first_violator(cmp.right().len(), cmp.lists())
        .map(|(members, union_size)| HallViolator { side: Side::Girls, members, union_size }))
}

fn subproblem_violator(sub: &SubProblem) -> Option<HallViolator> {
    first_violator(sub.ground_size, &sub.lists).map(|(pos, union_size)| HallViolator {
        side: sub.side,
        members: pos.into_iter().map(|i| sub.members[i]).collect(),
        union_size,
    })
}

/// Two-sided Hall criteria over pared lists: every set of listed boys and
/// every set of listed girls must be at least matched in size by the union
/// of their pared lists. Girls are checked first; the first violator found
/// is returned.
pub fn hall_bicriteria(inst: &SmpInstance) -> Result<Option<HallViolator>, SizeLimit> {
    let (girls, boys) = cmp_subproblems(inst);
    for sub in [&girls, &boys] {
        if sub.members.len() > MAX_HALL_SUBSET {
            return Err(SizeLimit {
                what: match sub.side {
                    Side::Girls => "listed girls",
                    Side::Boys => "listed boys",
                },
                size: sub.members.len(),
                limit: MAX_HALL_SUBSET,
            });
        }
    }
    Ok(subproblem_violator(&girls).or_else(|| subproblem_violator(&boys)))
}

/// Exhaustive search for an SMP solution. Girls are decided in order; each
/// tries boys in order and then staying single. Pairs between two unlisted
/// people are never needed and never tried.
pub fn oracle_solve(inst: &SmpInstance) -> Result<Option<Assignment>, SizeLimit> {
    for (what, size) in [("girls", inst.num_girls()), ("boys", inst.num_boys())] {
        if size > MAX_ORACLE_SIDE {
            return Err(SizeLimit { what, size, limit: MAX_ORACLE_SIDE });
        }
    }
    let options: Vec<Vec<usize>> = (0..inst.num_girls())
        .map(|g| {
            (0..inst.num_boys())
                .filter(|&b| {
                    let ok_g = if inst.girl_has_list(g) { inst.girl_lists_boy(g, b) } else { inst.boy_has_list(b) };
                    ok_g && (!inst.boy_has_list(b) || inst.boy_lists_girl(b, g))
                })
                .collect()
        })
        .collect();
    let mut search = Search {
        inst,
        options: &options,
        boy_taken: vec![false; inst.num_boys()],
        chosen: Vec::with_capacity(inst.num_girls()),
    };
    Ok(search.run(0).then(|| {
        Assignment::new(search.chosen.iter().enumerate().filter_map(|(g, b)| b.map(|b| (g, b))).collect())
    }))
}

struct Search<'a> {
    inst: &'a SmpInstance,
    options: &'a [Vec<usize>],
    boy_taken: Vec<bool>,
    chosen: Vec<Option<usize>>,
}

impl Search<'_> {
    fn run(&mut self, g: usize) -> bool {
        if g == self.inst.num_girls() {
            return (0..self.inst.num_boys()).all(|b| !self.inst.boy_has_list(b) || self.boy_taken[b]);
        }
        // Every listed boy still free needs a later girl who may take him.
        for b in 0..self.inst.num_boys() {
            if self.inst.boy_has_list(b)
                && !self.boy_taken[b]
                && !self.inst.boy_list(b).iter().any(|&h| h >= g && self.options[h].contains(&b))
            {
                return false;
            }
        }
        for &b in &self.options[g] {
            if self.boy_taken[b] {
                continue;
            }
            self.boy_taken[b] = true;
            self.chosen.push(Some(b));
            if self.run(g + 1) {
                return true;
            }
            self.chosen.pop();
            self.boy_taken[b] = false;
        }
        if !self.inst.girl_has_list(g) {
            self.chosen.push(None);
            if self.run(g + 1) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::validate_assignment;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn i1() -> SmpInstance {
        SmpInstance::from_indices(vec![vec![0, 1], vec![]], vec![vec![1], vec![]]).unwrap()
    }

    fn i3() -> SmpInstance {
        SmpInstance::from_indices(vec![vec![0, 1]; 2], vec![vec![0, 1]; 2]).unwrap()
    }

    fn two_girls_one_boy() -> SmpInstance {
        SmpInstance::from_indices(vec![vec![0], vec![0]], vec![vec![]]).unwrap()
    }

    #[test]
    fn cmp_shared_neighbor() {
        let cmp = CmpInstance::new(names("l", 2), names("r", 1), vec![vec![0], vec![0]]).unwrap();
        let v = hall_condition_cmp(&cmp).unwrap().unwrap();
        assert_eq!(v.members, vec![0, 1]);
        assert_eq!(v.union_size, 1);
    }

    #[test]
    fn cmp_disjoint_lists() {
        let cmp = CmpInstance::new(names("l", 3), names("r", 5), vec![vec![0], vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(hall_condition_cmp(&cmp).unwrap(), None);
    }

    #[test]
    fn cmp_guard() {
        let cmp = CmpInstance::new(names("l", 21), names("r", 1), vec![vec![0]; 21]).unwrap();
        assert!(hall_condition_cmp(&cmp).is_err());
    }

    #[test]
    fn violator_order_is_size_then_lex() {
        // {0,1} and {2,3} both violate; pairs come before triples and {0,1}
        // precedes {2,3}.
        let cmp =
            CmpInstance::new(names("l", 4), names("r", 2), vec![vec![0], vec![0], vec![1], vec![1]]).unwrap();
        assert_eq!(hall_condition_cmp(&cmp).unwrap().unwrap().members, vec![0, 1]);
        let cmp = CmpInstance::new(names("l", 3), names("r", 3), vec![vec![0, 1], vec![2], vec![2]]).unwrap();
        assert_eq!(hall_condition_cmp(&cmp).unwrap().unwrap().members, vec![1, 2]);
    }

    #[test]
    fn bicriteria_examples() {
        assert_eq!(hall_bicriteria(&i1()).unwrap(), None);
        assert_eq!(hall_bicriteria(&i3()).unwrap(), None);
        let v = hall_bicriteria(&two_girls_one_boy()).unwrap().unwrap();
        assert_eq!(v, HallViolator { side: Side::Girls, members: vec![0, 1], union_size: 1 });
        assert!(v.verify(&two_girls_one_boy()));
    }

    #[test]
    fn bicriteria_guard() {
        let inst = SmpInstance::from_indices(vec![vec![0]; 25], vec![vec![]]).unwrap();
        assert!(hall_bicriteria(&inst).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_solve(&i1()).unwrap(), Some(Assignment::new(vec![(0, 1), (1, 0)])));
        assert_eq!(oracle_solve(&two_girls_one_boy()).unwrap(), None);
        let empty = SmpInstance::from_indices(vec![], vec![]).unwrap();
        assert_eq!(oracle_solve(&empty).unwrap(), Some(Assignment::default()));
        let a = oracle_solve(&i3()).unwrap().unwrap();
        assert!(validate_assignment(&i3(), &a).is_empty());
        let big = SmpInstance::from_indices(vec![vec![]; 9], vec![vec![]]).unwrap();
        assert!(oracle_solve(&big).is_err());
    }

    #[test]
    fn violator_verify_rejects_wrong_claims() {
        let inst = two_girls_one_boy();
        assert!(!HallViolator { side: Side::Girls, members: vec![0], union_size: 1 }.verify(&inst));
        assert!(!HallViolator { side: Side::Girls, members: vec![0, 1], union_size: 2 }.verify(&inst));
        assert!(!HallViolator { side: Side::Boys, members: vec![0], union_size: 0 }.verify(&inst));
    }
}
