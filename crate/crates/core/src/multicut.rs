//! Multicut instances, exhaustive reference solvers, shadows and solution predicates.

use std::collections::BTreeSet;

use crate::combinatorics::{for_each_subset_up_to, subsets_up_to};
use crate::digraph::{coreach_mask, reach_mask, shortest_path, weighted_cut_value, Digraph, VertexId, VertexSet};
use crate::error::{input, Error, Result};
use crate::flownet::INF;

#[derive(Clone, Debug)]
pub struct DmcInstance {
    pub g: Digraph,
    pub pairs: [(VertexId, VertexId); 3],
    pub k: usize,
    pub undeletable: VertexSet,
}

impl DmcInstance {
    /// Builds an instance; terminals and vertices flagged undeletable in `g` join V∞,
    /// and the graph's deletable flags are aligned with V∞.
    pub fn new(mut g: Digraph, pairs: [(VertexId, VertexId); 3], k: usize, undeletable: VertexSet) -> Result<Self> {
        let mut vinf = undeletable;
        for &(s, t) in &pairs {
            g.check(s)?;
            g.check(t)?;
            if s == t {
                return input(format!("terminal pair ({0}, {0}) can never be separated", g.name(s)));
            }
            vinf.insert(s);
            vinf.insert(t);
        }
        for &v in &vinf {
            g.check(v)?;
        }
        let flagged: Vec<VertexId> = g.vertices().filter(|&v| !g.is_deletable(v)).collect();
        vinf.extend(flagged);
        let all: Vec<VertexId> = g.vertices().collect();
        for v in all {
            g.set_deletable(v, !vinf.contains(&v));
        }
        Ok(DmcInstance {
            g,
            pairs,
            k,
            undeletable: vinf,
        })
    }

    pub fn sources(&self) -> Vec<VertexId> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    pub fn terminals(&self) -> VertexSet {
        self.pairs.iter().flat_map(|&(s, t)| [s, t]).collect()
    }

    pub fn deletable(&self) -> Vec<VertexId> {
        self.g.vertices().filter(|v| !self.undeletable.contains(v)).collect()
    }

    pub fn is_undeletable(&self, v: VertexId) -> bool {
        self.undeletable.contains(&v)
    }
}

#[derive(Clone, Debug)]
pub struct WdmcInstance {
    pub g: Digraph,
    pub pairs: [(VertexId, VertexId); 2],
    pub k: usize,
    pub budget: u64,
}

impl WdmcInstance {
    /// Terminals and undeletable vertices get weight `budget + 1`; any vertex heavier
    /// than the budget is treated as undeletable.
    pub fn new(mut g: Digraph, pairs: [(VertexId, VertexId); 2], k: usize, budget: u64) -> Result<Self> {
        for &(s, t) in &pairs {
            g.check(s)?;
            g.check(t)?;
            if s == t {
                return input("terminal pair with equal endpoints");
            }
            g.set_deletable(s, false);
            g.set_deletable(t, false);
        }
        let all: Vec<VertexId> = g.vertices().collect();
        for v in all {
            if !g.is_deletable(v) {
                g.set_weight(v, budget.saturating_add(1));
            } else if g.weight(v) > budget {
                g.set_deletable(v, false);
            }
        }
        Ok(WdmcInstance { g, pairs, k, budget })
    }

    pub fn weight_of(&self, s: &VertexSet) -> u64 {
        s.iter().map(|&v| self.g.weight(v)).sum()
    }

    pub fn is_solution(&self, s: &VertexSet) -> Result<bool> {
        for &v in s {
            self.g.check(v)?;
        }
        if s.len() > self.k || s.iter().any(|&v| !self.g.is_deletable(v)) {
            return Ok(false);
        }
        if self.weight_of(s) > self.budget {
            return Ok(false);
        }
        Ok(pairs_separated(&self.g, &self.pairs, &self.g.mask(s)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ShadowReport {
    pub forward: VertexSet,
    pub reverse: VertexSet,
}

impl ShadowReport {
    pub fn union(&self) -> VertexSet {
        self.forward.union(&self.reverse).copied().collect()
    }
}

/// Limits for the exhaustive solvers.
#[derive(Clone, Copy, Debug)]
pub struct Guard {
    pub max_deletable: usize,
    pub max_k: usize,
    /// Search nodes allowed to the weighted branch and bound.
    pub max_nodes: u64,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_deletable: 20,
            max_k: 4,
            max_nodes: 20_000_000,
        }
    }
}

impl Guard {
    pub fn unlimited() -> Self {
        Guard {
            max_deletable: usize::MAX,
            max_k: usize::MAX,
            max_nodes: u64::MAX,
        }
    }

    fn check_subsets(&self, deletable: usize, k: usize) -> Result<()> {
        if deletable > self.max_deletable {
            return Err(Error::Capacity {
                what: "deletable vertices",
                size: deletable as u128,
                limit: self.max_deletable as u128,
            });
        }
        if k.min(deletable) > self.max_k {
            return Err(Error::Capacity {
                what: "budget k",
                size: k as u128,
                limit: self.max_k as u128,
            });
        }
        Ok(())
    }
}

pub(crate) fn pairs_separated(g: &Digraph, pairs: &[(VertexId, VertexId)], removed: &[bool]) -> bool {
    pairs.iter().all(|&(s, t)| {
        if removed[s.index()] {
            return true;
        }
        !reach_mask(g, [s], removed)[t.index()]
    })
}

pub fn is_solution(inst: &DmcInstance, s: &VertexSet) -> Result<bool> {
    for &v in s {
        inst.g.check(v)?;
    }
    if s.len() > inst.k || s.iter().any(|v| inst.undeletable.contains(v)) {
        return Ok(false);
    }
    Ok(pairs_separated(&inst.g, &inst.pairs, &inst.g.mask(s)))
}

/// A minimum-cardinality solution, the lexicographically first among those of least size.
pub fn brute_force_dmc(inst: &DmcInstance) -> Result<Option<VertexSet>> {
    brute_force_dmc_guarded(inst, &Guard::default())
}

pub fn brute_force_dmc_guarded(inst: &DmcInstance, guard: &Guard) -> Result<Option<VertexSet>> {
    let del = inst.deletable();
    guard.check_subsets(del.len(), inst.k)?;
    let mut found = None;
    let mut removed = inst.g.dead_mask();
    for_each_subset_up_to(del.len(), inst.k, |idx| {
        for &i in idx {
            removed[del[i].index()] = true;
        }
        let ok = pairs_separated(&inst.g, &inst.pairs, &removed);
        for &i in idx {
            removed[del[i].index()] = false;
        }
        if ok {
            found = Some(idx.iter().map(|&i| del[i]).collect());
        }
        !ok
    });
    Ok(found)
}

/// Every solution of size at most k, in enumeration order.
pub fn enumerate_solutions(inst: &DmcInstance, guard: &Guard) -> Result<Vec<VertexSet>> {
    let del = inst.deletable();
    guard.check_subsets(del.len(), inst.k)?;
    let mut out = Vec::new();
    let mut removed = inst.g.dead_mask();
    for_each_subset_up_to(del.len(), inst.k, |idx| {
        for &i in idx {
            removed[del[i].index()] = true;
        }
        if pairs_separated(&inst.g, &inst.pairs, &removed) {
            out.push(idx.iter().map(|&i| del[i]).collect());
        }
        for &i in idx {
            removed[del[i].index()] = false;
        }
        true
    });
    Ok(out)
}

/// Inclusion-minimal solutions of size at most k.
pub fn enumerate_minimal_solutions(inst: &DmcInstance, guard: &Guard) -> Result<Vec<VertexSet>> {
    let all = enumerate_solutions(inst, guard)?;
    let set: BTreeSet<&VertexSet> = all.iter().collect();
    Ok(all
        .iter()
        .filter(|s| {
            s.iter().all(|v| {
                let mut smaller = (*s).clone();
                smaller.remove(v);
                !set.contains(&smaller)
            })
        })
        .cloned()
        .collect())
}

pub fn shadows(inst: &DmcInstance, x: &VertexSet) -> Result<ShadowReport> {
    for &v in x {
        inst.g.check(v)?;
        if inst.undeletable.contains(&v) {
            return input(format!("`{}` is undeletable", inst.g.name(v)));
        }
    }
    Ok(shadow_report(inst, &inst.g.mask(x)))
}

pub(crate) fn shadow_report(inst: &DmcInstance, removed: &[bool]) -> ShadowReport {
    let fwd = reach_mask(&inst.g, inst.sources(), removed);
    let bwd = coreach_mask(&inst.g, inst.sinks(), removed);
    let mut report = ShadowReport::default();
    for v in inst.g.vertices() {
        if removed[v.index()] || inst.undeletable.contains(&v) {
            continue;
        }
        if !fwd[v.index()] {
            report.forward.insert(v);
        }
        if !bwd[v.index()] {
            report.reverse.insert(v);
        }
    }
    report
}

pub fn is_shadowless(inst: &DmcInstance, s: &VertexSet) -> Result<bool> {
    let r = shadows(inst, s)?;
    Ok(r.forward.is_empty() && r.reverse.is_empty())
}

pub fn enumerate_shadowless_solutions(inst: &DmcInstance) -> Result<Vec<VertexSet>> {
    enumerate_shadowless_solutions_guarded(inst, &Guard::default())
}

pub fn enumerate_shadowless_solutions_guarded(inst: &DmcInstance, guard: &Guard) -> Result<Vec<VertexSet>> {
    let sols = enumerate_solutions(inst, guard)?;
    let mut out = Vec::new();
    for s in sols {
        if is_shadowless(inst, &s)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Number of subsets the exhaustive solvers would visit.
pub fn search_space(inst: &DmcInstance) -> u128 {
    subsets_up_to(inst.deletable().len(), inst.k)
}

pub fn brute_force_wdmc(inst: &WdmcInstance) -> Result<Option<VertexSet>> {
    brute_force_wdmc_guarded(inst, &Guard::default())
}

/// Exact weighted solver: branches on the deletable vertices of a surviving terminal
/// path (earlier ones frozen, so branches are disjoint) and prunes with a lower bound
/// obtained from per-pair weighted cuts, each vertex's weight split between the pairs
/// whose paths it lies on. The returned set minimises weight, then size, then is
/// lexicographically first.
pub fn brute_force_wdmc_guarded(inst: &WdmcInstance, guard: &Guard) -> Result<Option<VertexSet>> {
    let g = &inst.g;
    let mut bnb = Bnb {
        g,
        pairs: inst.pairs,
        k: inst.k,
        budget: inst.budget as i64,
        wt: (0..g.id_bound())
            .map(|i| {
                let v = VertexId(i as u32);
                if g.contains(v) && g.is_deletable(v) {
                    g.weight(v) as i64
                } else {
                    INF
                }
            })
            .collect(),
        best: None,
        nodes: 0,
        max_nodes: guard.max_nodes,
        removed: g.dead_mask(),
        frozen: vec![false; g.id_bound()],
        chosen: Vec::new(),
    };
    bnb.search(0)?;
    Ok(bnb.best.map(|(_, _, s)| s.into_iter().collect()))
}

struct Bnb<'a> {
    g: &'a Digraph,
    pairs: [(VertexId, VertexId); 2],
    k: usize,
    budget: i64,
    wt: Vec<i64>,
    best: Option<(i64, usize, Vec<VertexId>)>,
    nodes: u64,
    max_nodes: u64,
    removed: Vec<bool>,
    frozen: Vec<bool>,
    chosen: Vec<VertexId>,
}

impl Bnb<'_> {
    fn bound(&self) -> i64 {
        self.best.as_ref().map(|b| b.0.min(self.budget)).unwrap_or(self.budget)
    }

    fn search(&mut self, weight: i64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::Capacity {
                what: "branch and bound nodes",
                size: self.nodes as u128,
                limit: self.max_nodes as u128,
            });
        }
        if weight > self.bound() {
            return Ok(());
        }
        let mut violated = None;
        for &(s, t) in &self.pairs {
            let mut target = vec![false; self.g.id_bound()];
            target[t.index()] = true;
            if let Some(p) = shortest_path(self.g, &[s], &target, &self.removed) {
                violated = Some(p);
                break;
            }
        }
        let path = match violated {
            None => {
                let mut sorted = self.chosen.clone();
                sorted.sort();
                let key = (weight, sorted.len(), sorted);
                if self.best.as_ref().map(|b| key < *b).unwrap_or(true) {
                    self.best = Some(key);
                }
                return Ok(());
            }
            Some(p) => p,
        };
        if self.chosen.len() >= self.k {
            return Ok(());
        }
        if weight + self.lower_bound() > self.bound() {
            return Ok(());
        }
        let candidates: Vec<VertexId> = path
            .into_iter()
            .filter(|v| self.wt[v.index()] < INF && !self.frozen[v.index()])
            .collect();
        let mut frozen_here = Vec::new();
        for v in candidates {
            self.removed[v.index()] = true;
            self.chosen.push(v);
            let r = self.search(weight + self.wt[v.index()]);
            self.chosen.pop();
            self.removed[v.index()] = false;
            r?;
            self.frozen[v.index()] = true;
            frozen_here.push(v);
        }
        for v in frozen_here {
            self.frozen[v.index()] = false;
        }
        Ok(())
    }

    /// Half the sum of per-pair weighted cuts under doubled weights: a vertex relevant to
    /// one pair gives that pair its full doubled weight, a shared vertex gives each pair
    /// its plain weight.
    fn lower_bound(&self) -> i64 {
        let n = self.g.id_bound();
        let relevant: Vec<Vec<bool>> = self
            .pairs
            .iter()
            .map(|&(s, t)| {
                let f = reach_mask(self.g, [s], &self.removed);
                let b = coreach_mask(self.g, [t], &self.removed);
                (0..n).map(|i| f[i] && b[i]).collect()
            })
            .collect();
        let cap = 2 * (self.bound() + 1);
        let mut total = 0i64;
        for (i, &(s, t)) in self.pairs.iter().enumerate() {
            let w: Vec<i64> = (0..n)
                .map(|v| {
                    if self.frozen[v] || self.wt[v] >= INF {
                        INF
                    } else if relevant[1 - i][v] {
                        self.wt[v]
                    } else {
                        2 * self.wt[v]
                    }
                })
                .collect();
            total += weighted_cut_value(self.g, &[s], &[t], &self.removed, &w, cap);
            if total >= cap {
                break;
            }
        }
        (total + 1) / 2
    }
}
