//! Seeded instance generators. Every generator draws from a ChaCha8 stream seeded with
//! the given 64-bit seed, so outputs are reproducible across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::collections::BTreeMap;

use crate::digraph::{Digraph, VertexId, VertexSet};
use crate::matrixgrid::ZeroOneMatrix;
use crate::multicut::DmcInstance;
use crate::permcsp::{
    Constraint, ConstraintKind, DownclosedRelation, OrderedDomain, PermCspInstance, PermutationConstraint,
};
use crate::reductions::{CliqueInstance, Label, PsiInstance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct DmcParams {
    pub n: usize,
    pub k: usize,
    pub arc_prob: f64,
    /// Chance that a non-terminal vertex is undeletable.
    pub undeletable_prob: f64,
}

impl Default for DmcParams {
    fn default() -> Self {
        DmcParams {
            n: 10,
            k: 3,
            arc_prob: 0.22,
            undeletable_prob: 0.1,
        }
    }
}

pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, arc_prob: f64, deletable_prob: f64) -> Digraph {
    let mut g = Digraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}"), rng.gen_bool(deletable_prob))
            .expect("fresh names");
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(arc_prob) {
                g.add_arc(VertexId(u as u32), VertexId(v as u32)).expect("valid arc");
            }
        }
    }
    g
}

/// A random three-pair instance. Terminals come from a small pool so pairs may share
/// endpoints and enough vertices stay deletable.
pub fn random_dmc(seed: u64, params: DmcParams) -> DmcInstance {
    let mut r = rng(seed);
    let n = params.n.max(2);
    let g = random_digraph(&mut r, n, params.arc_prob, 1.0);
    let pool_size = r.gen_range(2..=6.min(n));
    let mut ids: Vec<VertexId> = g.vertices().collect();
    ids.shuffle(&mut r);
    let pool = &ids[..pool_size];
    let mut pair = || loop {
        let s = pool[r.gen_range(0..pool.len())];
        let t = pool[r.gen_range(0..pool.len())];
        if s != t {
            return (s, t);
        }
    };
    let pairs = [pair(), pair(), pair()];
    let mut undeletable = VertexSet::new();
    for &v in &ids[pool_size..] {
        if r.gen_bool(params.undeletable_prob) {
            undeletable.insert(v);
        }
    }
    DmcInstance::new(g, pairs, params.k, undeletable).expect("generated instance is valid")
}

/// Pairs 1 and 2 route through the same `m` vertices in two random orders, pair 3 through
/// one of them or a private vertex; a few extra arcs among the shared vertices. Flow
/// paths of such instances cross, which is where the irrelevant-vertex rule applies.
pub fn random_crossing_dmc(seed: u64, m: usize, extra_arcs: usize, k: usize) -> DmcInstance {
    let mut r = rng(seed);
    let mut g = Digraph::new();
    let term: Vec<VertexId> = ["s1", "t1", "s2", "t2", "s3", "t3"]
        .iter()
        .map(|n| g.add_vertex(*n, false).expect("fresh name"))
        .collect();
    let shared: Vec<VertexId> = (0..m.max(1))
        .map(|i| g.add_vertex(format!("c{i}"), true).expect("fresh name"))
        .collect();
    let private = g.add_vertex("e", true).expect("fresh name");
    let mut order = shared.clone();
    for pair in 0..2 {
        if pair == 1 {
            order.shuffle(&mut r);
        }
        let route: Vec<VertexId> = std::iter::once(term[2 * pair])
            .chain(order.iter().copied())
            .chain(std::iter::once(term[2 * pair + 1]))
            .collect();
        for w in route.windows(2) {
            g.add_arc(w[0], w[1]).expect("live vertices");
        }
    }
    for _ in 0..extra_arcs {
        let (u, v) = (
            shared[r.gen_range(0..shared.len())],
            shared[r.gen_range(0..shared.len())],
        );
        if u != v {
            g.add_arc(u, v).expect("live vertices");
        }
    }
    let via = if r.gen_bool(0.5) {
        shared[r.gen_range(0..shared.len())]
    } else {
        private
    };
    g.add_arc(term[4], via).expect("live vertices");
    g.add_arc(via, term[5]).expect("live vertices");
    let pairs = [(term[0], term[1]), (term[2], term[3]), (term[4], term[5])];
    DmcInstance::new(g, pairs, k, VertexSet::new()).expect("generated instance is valid")
}

/// Pattern on 2 or 3 vertices without isolated vertices, parts of size at most
/// `max_n` (sizes may differ, exercising padding), host cross edges with probability
/// `edge_prob`.
pub fn random_psi(seed: u64, max_n: usize, edge_prob: f64) -> PsiInstance {
    let mut r = rng(seed);
    let h: u64 = r.gen_range(2..=3);
    let pattern_edges: Vec<(u64, u64)> = if h == 2 {
        vec![(1, 2)]
    } else {
        let all = [(1, 2), (1, 3), (2, 3)];
        match r.gen_range(0..4) {
            3 => all.to_vec(),
            skip => all
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &e)| e)
                .collect(),
        }
    };
    let parts: BTreeMap<u64, Vec<Label>> = (1..=h)
        .map(|i| {
            let size = r.gen_range(1..=max_n.max(1));
            (i, (1..=size).map(|a| Label(format!("v{i}.{a}"))).collect())
        })
        .collect();
    let mut host_edges = Vec::new();
    for &(i, j) in &pattern_edges {
        for u in &parts[&i] {
            for v in &parts[&j] {
                if r.gen_bool(edge_prob) {
                    host_edges.push((u.clone(), v.clone()));
                }
            }
        }
    }
    PsiInstance {
        pattern_edges,
        parts,
        host_edges,
    }
}

pub fn random_clique(seed: u64, k: usize, n: usize, edge_prob: f64) -> CliqueInstance {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for a in 0..n {
                for b in 0..n {
                    if r.gen_bool(edge_prob) {
                        edges.push(((i, a), (j, b)));
                    }
                }
            }
        }
    }
    CliqueInstance { k, n, edges }
}

pub fn random_matrix(seed: u64, rows: usize, cols: usize, density: f64) -> ZeroOneMatrix {
    let mut r = rng(seed);
    let mut m = ZeroOneMatrix::zeros(rows.max(1), cols.max(1)).expect("positive size");
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            m.set(i, j, r.gen_bool(density));
        }
    }
    m
}

/// Random non-increasing frontier over `height` x `width` positions.
pub fn random_downclosed(rng: &mut ChaCha8Rng, height: usize, width: usize) -> DownclosedRelation {
    let mut frontier: Vec<Option<usize>> = (0..height)
        .map(|_| {
            let b = rng.gen_range(0..=width);
            b.checked_sub(1)
        })
        .collect();
    frontier.sort_by(|a, b| b.cmp(a));
    DownclosedRelation::from_frontier(frontier, width).expect("sorted frontier")
}

/// Up to `max_vars` variables with domains of 1..=`max_dom` values and up to
/// `max_cons` constraints, each downclosed or a random partial bijection.
pub fn random_csp(seed: u64, max_vars: usize, max_dom: usize, max_cons: usize) -> PermCspInstance {
    let mut r = rng(seed);
    let vars = r.gen_range(2..=max_vars.max(2));
    let domains: Vec<OrderedDomain> = (0..vars)
        .map(|i| {
            let size = r.gen_range(1..=max_dom.max(1));
            let mut values: Vec<u64> = (0..size as u64).map(|v| 100 * i as u64 + v).collect();
            values.shuffle(&mut r);
            OrderedDomain::new(values).expect("distinct values")
        })
        .collect();
    let mut inst = PermCspInstance::new(domains);
    for _ in 0..r.gen_range(0..=max_cons) {
        let i = r.gen_range(0..vars);
        let mut j = r.gen_range(0..vars - 1);
        if j >= i {
            j += 1;
        }
        let (h, w) = (inst.domains[i].len(), inst.domains[j].len());
        let kind = if r.gen_bool(0.5) {
            ConstraintKind::Downclosed(random_downclosed(&mut r, h, w))
        } else {
            let mut cols: Vec<usize> = (0..w).collect();
            cols.shuffle(&mut r);
            let pairs: Vec<(usize, usize)> = (0..h.min(w))
                .filter(|_| r.gen_bool(0.8))
                .map(|a| (a, cols[a]))
                .collect();
            ConstraintKind::Permutation(PermutationConstraint::from_positions(&pairs, h, w).expect("partial bijection"))
        };
        inst.push(Constraint { i, j, kind }).expect("sizes match");
    }
    inst
}
