//! Shadow removal: covering families of vertex sets and the bypass driver that turns
//! an instance into instances where some solution is shadowless.

use rand::Rng;

use crate::digraph::{bypass, coreach_mask, enumerate_important_separators, Digraph, VertexSet};
use crate::error::Result;
use crate::gen;
use crate::multicut::{enumerate_minimal_solutions, shadow_report, DmcInstance, Guard};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Oracle,
    Randomized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringFamily {
    pub sets: Vec<VertexSet>,
    pub strategy: Strategy,
    pub seed: Option<u64>,
}

/// Rounds drawn by the randomized strategy when no schedule is given.
pub const DEFAULT_ROUNDS: usize = 24;

/// True when no vertex of `w` loses its route to `terminals_t` because of the others.
pub fn is_thin(g: &Digraph, terminals_t: &VertexSet, w: &VertexSet) -> bool {
    w.iter().all(|v| {
        let mut others = w.clone();
        others.remove(v);
        let mut removed = g.dead_mask();
        for u in &others {
            removed[u.index()] = true;
        }
        coreach_mask(g, terminals_t.iter().copied(), &removed)[v.index()]
    })
}

pub fn covering_family(inst: &DmcInstance, strategy: Strategy, seed: u64) -> Result<CoveringFamily> {
    match strategy {
        Strategy::Oracle => oracle_family(inst, &Guard::default()),
        Strategy::Randomized => Ok(randomized_family(inst, seed, DEFAULT_ROUNDS)),
    }
}

/// Picks a best shadow-maximal minimal solution and returns its shadow as the only set.
/// Without any solution the family is just the empty set.
pub fn oracle_family(inst: &DmcInstance, guard: &Guard) -> Result<CoveringFamily> {
    let minimal = enumerate_minimal_solutions(inst, guard)?;
    let mut best: Option<(usize, usize, &VertexSet, VertexSet)> = None;
    for s in &minimal {
        let report = shadow_report(inst, &inst.g.mask(s));
        let shadow = report.union();
        let covered = shadow.len() + s.len();
        let better = match &best {
            None => true,
            Some((c, r, bs, _)) => {
                (covered, report.reverse.len()) > (*c, *r) || ((covered, report.reverse.len()) == (*c, *r) && s < *bs)
            }
        };
        if better {
            best = Some((covered, report.reverse.len(), s, shadow));
        }
    }
    Ok(CoveringFamily {
        sets: vec![best.map(|b| b.3).unwrap_or_default()],
        strategy: Strategy::Oracle,
        seed: None,
    })
}

/// Each round keeps every important separator X (from a single deletable vertex towards
/// the sinks) with probability 4^-|X| and collects the vertices cut off from the sinks;
/// a second pass on the reversed graph, with those vertices frozen, collects vertices
/// cut off from the sources. Round zero always contributes the empty set.
pub fn randomized_family(inst: &DmcInstance, seed: u64, rounds: usize) -> CoveringFamily {
    let mut rng = gen::rng(seed);
    let sinks: VertexSet = inst.sinks().into_iter().collect();
    let sources: VertexSet = inst.sources().into_iter().collect();
    let forward_pool = separator_pool(&inst.g, &inst.undeletable, &sinks, inst.k);
    let reversed = inst.g.reversed();
    let mut sets: Vec<VertexSet> = vec![VertexSet::new()];
    for _ in 1..rounds.max(1) {
        let mut guessed = VertexSet::new();
        let z_r = sample_shadow(
            &inst.g,
            &forward_pool,
            &sinks,
            &inst.undeletable,
            &mut guessed,
            &mut rng,
        );
        let frozen: VertexSet = inst.undeletable.union(&z_r).copied().collect();
        let backward_pool = separator_pool(&reversed, &frozen, &sources, inst.k);
        let z_f = sample_shadow(&reversed, &backward_pool, &sources, &frozen, &mut guessed, &mut rng);
        let z: VertexSet = z_r
            .union(&z_f)
            .filter(|v| !guessed.contains(v) && !inst.undeletable.contains(v))
            .copied()
            .collect();
        if !sets.contains(&z) {
            sets.push(z);
        }
    }
    CoveringFamily {
        sets,
        strategy: Strategy::Randomized,
        seed: Some(seed),
    }
}

fn separator_pool(g: &Digraph, frozen: &VertexSet, targets: &VertexSet, k: usize) -> Vec<VertexSet> {
    let mut h = g.clone();
    for &v in frozen {
        h.set_deletable(v, false);
    }
    let mut pool: Vec<VertexSet> = Vec::new();
    for v in h.vertices() {
        if frozen.contains(&v) || targets.contains(&v) {
            continue;
        }
        let from: VertexSet = [v].into_iter().collect();
        if let Ok(seps) = enumerate_important_separators(&h, &from, targets, k) {
            for s in seps {
                if !pool.contains(&s) {
                    pool.push(s);
                }
            }
        }
    }
    pool
}

fn sample_shadow(
    g: &Digraph,
    pool: &[VertexSet],
    targets: &VertexSet,
    frozen: &VertexSet,
    guessed: &mut VertexSet,
    rng: &mut impl Rng,
) -> VertexSet {
    let mut z = VertexSet::new();
    for x in pool {
        if !rng.gen_bool(0.25f64.powi(x.len() as i32)) {
            continue;
        }
        let mut removed = g.dead_mask();
        for v in x {
            removed[v.index()] = true;
        }
        let co = coreach_mask(g, targets.iter().copied(), &removed);
        for v in g.vertices() {
            if !removed[v.index()] && !co[v.index()] && !frozen.contains(&v) {
                z.insert(v);
            }
        }
        guessed.extend(x.iter().copied());
    }
    z.retain(|v| !guessed.contains(v));
    z
}

/// One bypassed instance per covering set. V∞ is untouched since covering sets avoid it.
pub fn shadow_removal(inst: &DmcInstance, strategy: Strategy, seed: u64) -> Result<Vec<DmcInstance>> {
    let family = covering_family(inst, strategy, seed)?;
    apply_family(inst, &family)
}

pub fn apply_family(inst: &DmcInstance, family: &CoveringFamily) -> Result<Vec<DmcInstance>> {
    family
        .sets
        .iter()
        .map(|z| {
            Ok(DmcInstance {
                g: bypass(&inst.g, z)?,
                pairs: inst.pairs,
                k: inst.k,
                undeletable: inst.undeletable.difference(z).copied().collect(),
            })
        })
        .collect()
}
