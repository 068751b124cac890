//! Directed graphs with deletable vertices and arcs, reachability, vertex-capacitated
//! flows, separator enumeration and vertex bypassing.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{input, Error, Result};
use crate::flownet::{FlowNet, INF};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

/// A digraph whose vertex ids stay valid when vertices are removed: removal leaves a
/// tombstone, so sets computed on a derived graph can be read back on the original.
#[derive(Clone, Debug, Default)]
pub struct Digraph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    alive: Vec<bool>,
    deletable: Vec<bool>,
    weight: Vec<u64>,
    succ: Vec<BTreeSet<VertexId>>,
    pred: Vec<BTreeSet<VertexId>>,
    undeletable_arcs: BTreeSet<(VertexId, VertexId)>,
}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, deletable: bool) -> Result<VertexId> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return input(format!("duplicate vertex `{name}`"));
        }
        let id = VertexId(self.names.len() as u32);
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.alive.push(true);
        self.deletable.push(deletable);
        self.weight.push(1);
        self.succ.push(BTreeSet::new());
        self.pred.push(BTreeSet::new());
        Ok(id)
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied().filter(|v| self.alive[v.index()])
    }

    pub fn require(&self, name: &str) -> Result<VertexId> {
        self.vertex(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn check(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.alive.get(v.index()).copied().unwrap_or(false)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn is_deletable(&self, v: VertexId) -> bool {
        self.deletable[v.index()]
    }

    pub fn set_deletable(&mut self, v: VertexId, deletable: bool) {
        self.deletable[v.index()] = deletable;
    }

    pub fn weight(&self, v: VertexId) -> u64 {
        self.weight[v.index()]
    }

    pub fn set_weight(&mut self, v: VertexId, w: u64) {
        self.weight[v.index()] = w;
    }

    /// Number of ids ever issued, tombstones included.
    pub fn id_bound(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len())
            .filter(|&i| self.alive[i])
            .map(|i| VertexId(i as u32))
    }

    pub fn deletable_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_deletable(v)).collect()
    }

    pub fn add_arc(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        self.add_arc_with(u, v, true)
    }

    /// Returns whether the arc is new. Self-loops are rejected.
    pub fn add_arc_with(&mut self, u: VertexId, v: VertexId, deletable: bool) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return input(format!("self-loop on `{}`", self.name(u)));
        }
        let fresh = self.succ[u.index()].insert(v);
        self.pred[v.index()].insert(u);
        if fresh && !deletable {
            self.undeletable_arcs.insert((u, v));
        }
        Ok(fresh)
    }

    pub fn remove_arc(&mut self, u: VertexId, v: VertexId) {
        self.succ[u.index()].remove(&v);
        self.pred[v.index()].remove(&u);
        self.undeletable_arcs.remove(&(u, v));
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if !self.contains(v) {
            return;
        }
        for w in std::mem::take(&mut self.succ[v.index()]) {
            self.pred[w.index()].remove(&v);
            self.undeletable_arcs.remove(&(v, w));
        }
        for u in std::mem::take(&mut self.pred[v.index()]) {
            self.succ[u.index()].remove(&v);
            self.undeletable_arcs.remove(&(u, v));
        }
        self.alive[v.index()] = false;
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.succ.get(u.index()).map(|s| s.contains(&v)).unwrap_or(false)
    }

    pub fn arc_deletable(&self, u: VertexId, v: VertexId) -> bool {
        !self.undeletable_arcs.contains(&(u, v))
    }

    pub fn succ(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.succ[v.index()].iter().copied()
    }

    pub fn pred(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.pred[v.index()].iter().copied()
    }

    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        self.vertices()
            .flat_map(|u| self.succ(u).map(move |v| (u, v)))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().map(|s| s.len()).sum()
    }

    /// Same vertices and ids, every arc flipped.
    pub fn reversed(&self) -> Digraph {
        let mut r = self.clone();
        std::mem::swap(&mut r.succ, &mut r.pred);
        r.undeletable_arcs = self.undeletable_arcs.iter().map(|&(u, v)| (v, u)).collect();
        r
    }

    /// `g + A`; the added arcs are undeletable.
    pub fn with_arcs(&self, extra: &[(VertexId, VertexId)]) -> Result<Digraph> {
        let mut g = self.clone();
        for &(u, v) in extra {
            g.add_arc_with(u, v, false)?;
        }
        Ok(g)
    }

    pub fn without(&self, removed: &VertexSet) -> Digraph {
        let mut g = self.clone();
        for &v in removed {
            g.remove_vertex(v);
        }
        g
    }

    pub(crate) fn mask(&self, set: &VertexSet) -> Vec<bool> {
        let mut m = vec![false; self.id_bound()];
        for v in set {
            if v.index() < m.len() {
                m[v.index()] = true;
            }
        }
        m
    }

    pub(crate) fn dead_mask(&self) -> Vec<bool> {
        self.alive.iter().map(|a| !a).collect()
    }
}

/// A sequence of distinct vertices joined by arcs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<VertexId>);

impl Path {
    pub fn new(g: &Digraph, vertices: Vec<VertexId>) -> Result<Path> {
        let walk = Walk::new(g, vertices)?;
        let distinct: BTreeSet<_> = walk.0.iter().collect();
        if distinct.len() != walk.0.len() {
            return input("path repeats a vertex");
        }
        Ok(Path(walk.0))
    }

    pub(crate) fn from_raw(vertices: Vec<VertexId>) -> Path {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn first(&self) -> VertexId {
        self.0[0]
    }

    pub fn last(&self) -> VertexId {
        self.0[self.0.len() - 1]
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.0.iter().position(|&w| w == v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A vertex sequence joined by arcs; repetitions allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk(Vec<VertexId>);

impl Walk {
    pub fn new(g: &Digraph, vertices: Vec<VertexId>) -> Result<Walk> {
        if vertices.is_empty() {
            return input("empty walk");
        }
        for &v in &vertices {
            g.check(v)?;
        }
        for w in vertices.windows(2) {
            if !g.has_arc(w[0], w[1]) {
                return input(format!("no arc `{}` -> `{}`", g.name(w[0]), g.name(w[1])));
            }
        }
        Ok(Walk(vertices))
    }

    pub(crate) fn from_raw(vertices: Vec<VertexId>) -> Walk {
        Walk(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn first(&self) -> VertexId {
        self.0[0]
    }

    pub fn last(&self) -> VertexId {
        self.0[self.0.len() - 1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlowValue {
    Finite(usize),
    Infinite,
}

impl FlowValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            FlowValue::Finite(n) => Some(n),
            FlowValue::Infinite => None,
        }
    }

    pub fn exceeds(self, k: usize) -> bool {
        match self {
            FlowValue::Finite(n) => n > k,
            FlowValue::Infinite => true,
        }
    }
}

impl fmt::Display for FlowValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowValue::Finite(n) => write!(f, "{n}"),
            FlowValue::Infinite => write!(f, "inf"),
        }
    }
}

/// A maximum family of paths that pairwise share no deletable vertex. When the value is
/// infinite, `paths` holds one path made of undeletable vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFlow {
    pub value: FlowValue,
    pub paths: Vec<Path>,
}

pub fn reach(g: &Digraph, sources: &VertexSet, removed: &VertexSet) -> Result<VertexSet> {
    for &v in sources.iter().chain(removed) {
        g.check(v)?;
    }
    if let Some(v) = sources.intersection(removed).next() {
        return input(format!("source `{}` is also removed", g.name(*v)));
    }
    let m = reach_mask(g, sources.iter().copied(), &g.mask(removed));
    Ok(mask_to_set(&m))
}

pub(crate) fn mask_to_set(m: &[bool]) -> VertexSet {
    m.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| VertexId(i as u32))
        .collect()
}

/// Forward reachability avoiding `removed`; sources that are removed are skipped.
pub(crate) fn reach_mask(g: &Digraph, sources: impl IntoIterator<Item = VertexId>, removed: &[bool]) -> Vec<bool> {
    search(g, sources, removed, false)
}

/// Vertices that reach one of `targets` while avoiding `removed`.
pub(crate) fn coreach_mask(g: &Digraph, targets: impl IntoIterator<Item = VertexId>, removed: &[bool]) -> Vec<bool> {
    search(g, targets, removed, true)
}

fn search(g: &Digraph, start: impl IntoIterator<Item = VertexId>, removed: &[bool], backwards: bool) -> Vec<bool> {
    let mut seen = vec![false; g.id_bound()];
    let mut stack = Vec::new();
    for v in start {
        if g.contains(v) && !removed[v.index()] && !seen[v.index()] {
            seen[v.index()] = true;
            stack.push(v);
        }
    }
    while let Some(v) = stack.pop() {
        let next = if backwards {
            &g.pred[v.index()]
        } else {
            &g.succ[v.index()]
        };
        for &w in next {
            if !seen[w.index()] && !removed[w.index()] {
                seen[w.index()] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Shortest path from any source to any target avoiding `removed`, ties broken by the
/// smallest id in breadth-first order.
pub(crate) fn shortest_path(
    g: &Digraph,
    sources: &[VertexId],
    targets: &[bool],
    removed: &[bool],
) -> Option<Vec<VertexId>> {
    let mut prev: Vec<Option<VertexId>> = vec![None; g.id_bound()];
    let mut seen = vec![false; g.id_bound()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if g.contains(s) && !removed[s.index()] && !seen[s.index()] {
            seen[s.index()] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if targets[v.index()] {
            let mut path = vec![v];
            let mut cur = v;
            while let Some(p) = prev[cur.index()] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for w in g.succ(v) {
            if !seen[w.index()] && !removed[w.index()] {
                seen[w.index()] = true;
                prev[w.index()] = Some(v);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Vertex-split network: `v_in = 2v`, `v_out = 2v + 1`, super source and sink last.
struct SplitNet {
    net: FlowNet,
    source: usize,
    sink: usize,
}

/// Vertices in `frozen` (and all undeletable ones) get infinite split capacity;
/// `weights` replaces the unit capacity of deletable vertices when given.
fn split_net(
    g: &Digraph,
    sources: &[VertexId],
    targets: &[VertexId],
    removed: &[bool],
    frozen: &[bool],
    weights: Option<&[i64]>,
) -> SplitNet {
    let n = g.id_bound();
    let mut net = FlowNet::new(2 * n + 2);
    let source = 2 * n;
    let sink = 2 * n + 1;
    for v in g.vertices() {
        if removed[v.index()] {
            continue;
        }
        let c = if !g.is_deletable(v) || frozen[v.index()] {
            INF
        } else {
            weights.map(|w| w[v.index()]).unwrap_or(1)
        };
        net.add_edge(2 * v.index(), 2 * v.index() + 1, c);
    }
    for (u, v) in g.arcs() {
        if !removed[u.index()] && !removed[v.index()] {
            net.add_edge(2 * u.index() + 1, 2 * v.index(), INF);
        }
    }
    for &s in sources {
        if !removed[s.index()] {
            net.add_edge(source, 2 * s.index() + 1, INF);
        }
    }
    for &t in targets {
        if !removed[t.index()] {
            net.add_edge(2 * t.index(), sink, INF);
        }
    }
    SplitNet { net, source, sink }
}

fn frozen_mask(g: &Digraph, a: &[VertexId], b: &[VertexId]) -> Vec<bool> {
    let mut m = vec![false; g.id_bound()];
    for v in a.iter().chain(b) {
        m[v.index()] = true;
    }
    m
}

/// Whether some source reaches some target through undeletable, non-removed vertices only.
fn undeletable_connection(
    g: &Digraph,
    sources: &[VertexId],
    targets: &[VertexId],
    removed: &[bool],
) -> Option<Vec<VertexId>> {
    let frozen = frozen_mask(g, sources, targets);
    let mut blocked = removed.to_vec();
    for v in g.vertices() {
        if g.is_deletable(v) && !frozen[v.index()] {
            blocked[v.index()] = true;
        }
    }
    let mut tmask = vec![false; g.id_bound()];
    for t in targets {
        tmask[t.index()] = true;
    }
    shortest_path(g, sources, &tmask, &blocked)
}

/// Maximum number of source-target paths that share no deletable vertex, with sources
/// and targets never counted as deletable. Capped at `limit` when given.
pub(crate) fn set_flow_value(
    g: &Digraph,
    sources: &[VertexId],
    targets: &[VertexId],
    removed: &[bool],
    limit: Option<usize>,
) -> FlowValue {
    if sources.iter().any(|s| targets.contains(s) && !removed[s.index()]) {
        return FlowValue::Infinite;
    }
    if undeletable_connection(g, sources, targets, removed).is_some() {
        return FlowValue::Infinite;
    }
    let frozen = frozen_mask(g, sources, targets);
    let mut sn = split_net(g, sources, targets, removed, &frozen, None);
    let cap = limit.map(|l| l as i64 + 1).unwrap_or(INF);
    FlowValue::Finite(sn.net.max_flow(sn.source, sn.sink, cap) as usize)
}

pub fn max_vertex_flow(g: &Digraph, s: VertexId, t: VertexId) -> Result<VertexFlow> {
    g.check(s)?;
    g.check(t)?;
    if s == t {
        return input("source equals sink");
    }
    if g.is_deletable(s) || g.is_deletable(t) {
        return input("flow terminals must be undeletable");
    }
    let removed = g.dead_mask();
    if let Some(p) = undeletable_connection(g, &[s], &[t], &removed) {
        return Ok(VertexFlow {
            value: FlowValue::Infinite,
            paths: vec![Path(p)],
        });
    }
    let frozen = vec![false; g.id_bound()];
    let mut sn = split_net(g, &[s], &[t], &removed, &frozen, None);
    let src = 2 * s.index() + 1;
    let snk = 2 * t.index();
    let value = sn.net.max_flow(src, snk, INF);
    let _ = (sn.source, sn.sink);
    let mut paths: Vec<Path> = sn
        .net
        .decompose(src, snk, value)
        .into_iter()
        .map(|nodes| {
            let mut vs: Vec<VertexId> = Vec::new();
            for node in nodes {
                let v = VertexId((node / 2) as u32);
                if vs.last() != Some(&v) {
                    vs.push(v);
                }
            }
            Path(vs)
        })
        .collect();
    paths.sort();
    Ok(VertexFlow {
        value: FlowValue::Finite(value as usize),
        paths,
    })
}

/// Weighted minimum vertex cut between two vertex sets, with `weights` indexed by id.
pub(crate) fn weighted_cut_value(
    g: &Digraph,
    sources: &[VertexId],
    targets: &[VertexId],
    removed: &[bool],
    weights: &[i64],
    limit: i64,
) -> i64 {
    let frozen = frozen_mask(g, sources, targets);
    let mut sn = split_net(g, sources, targets, removed, &frozen, Some(weights));
    sn.net.max_flow(sn.source, sn.sink, limit)
}

pub fn is_separator(g: &Digraph, s: VertexId, t: VertexId, z: &VertexSet) -> bool {
    separates(g, &[s], &[t], z)
}

pub(crate) fn separates(g: &Digraph, a: &[VertexId], b: &[VertexId], z: &VertexSet) -> bool {
    if a.iter().chain(b).any(|v| z.contains(v)) {
        return false;
    }
    let mut removed = g.dead_mask();
    for v in z {
        removed[v.index()] = true;
    }
    let r = reach_mask(g, a.iter().copied(), &removed);
    !b.iter().any(|t| r[t.index()])
}

fn is_minimal_separator(g: &Digraph, a: &[VertexId], b: &[VertexId], z: &VertexSet) -> bool {
    separates(g, a, b, z)
        && z.iter().all(|v| {
            let mut smaller = z.clone();
            smaller.remove(v);
            !separates(g, a, b, &smaller)
        })
}

fn sort_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    sets.dedup();
    sets
}

/// All inclusion-minimal st-separators of size at most `k`, smallest first.
pub fn enumerate_minimal_separators(g: &Digraph, s: VertexId, t: VertexId, k: usize) -> Result<Vec<VertexSet>> {
    g.check(s)?;
    g.check(t)?;
    if s == t {
        return input("source equals sink");
    }
    Ok(minimal_set_separators(g, &[s], &[t], k))
}

pub(crate) fn minimal_set_separators(g: &Digraph, a: &[VertexId], b: &[VertexId], k: usize) -> Vec<VertexSet> {
    if a.iter().any(|v| b.contains(v)) {
        return Vec::new();
    }
    let mut frozen = frozen_mask(g, a, b);
    let mut removed = g.dead_mask();
    let mut target = vec![false; g.id_bound()];
    for v in b {
        target[v.index()] = true;
    }
    let mut leaves = Vec::new();
    let mut current = Vec::new();
    branch_on_paths(
        g,
        a,
        b,
        &target,
        &mut removed,
        &mut frozen,
        k,
        &mut current,
        &mut leaves,
    );
    let minimal = leaves
        .into_iter()
        .filter(|z| is_minimal_separator(g, a, b, z))
        .collect();
    sort_sets(minimal)
}

/// Picks a surviving path and branches on which of its deletable vertices joins the
/// separator; vertices tried earlier are frozen so the branches partition the search.
#[allow(clippy::too_many_arguments)]
fn branch_on_paths(
    g: &Digraph,
    a: &[VertexId],
    b: &[VertexId],
    target: &[bool],
    removed: &mut Vec<bool>,
    frozen: &mut Vec<bool>,
    budget: usize,
    current: &mut Vec<VertexId>,
    out: &mut Vec<VertexSet>,
) {
    let path = match shortest_path(g, a, target, removed) {
        None => {
            out.push(current.iter().copied().collect());
            return;
        }
        Some(p) => p,
    };
    if budget == 0 {
        return;
    }
    match set_flow_value(g, a, b, removed, Some(budget)) {
        FlowValue::Finite(f) if f <= budget => {}
        _ => return,
    }
    let candidates: Vec<VertexId> = path
        .into_iter()
        .filter(|v| g.is_deletable(*v) && !frozen[v.index()])
        .collect();
    let mut newly_frozen = Vec::new();
    for v in candidates {
        removed[v.index()] = true;
        current.push(v);
        branch_on_paths(g, a, b, target, removed, frozen, budget - 1, current, out);
        current.pop();
        removed[v.index()] = false;
        frozen[v.index()] = true;
        newly_frozen.push(v);
    }
    for v in newly_frozen {
        frozen[v.index()] = false;
    }
}

/// Furthest minimum separator: returns the flow value, the vertices on the source side
/// and the separator itself.
fn furthest_min_cut(
    g: &Digraph,
    a: &[VertexId],
    b: &[VertexId],
    removed: &[bool],
    limit: usize,
) -> Option<(usize, Vec<bool>, Vec<VertexId>)> {
    match set_flow_value(g, a, b, removed, Some(limit)) {
        FlowValue::Finite(f) if f <= limit => {}
        _ => return None,
    }
    let frozen = frozen_mask(g, a, b);
    let mut sn = split_net(g, a, b, removed, &frozen, None);
    let value = sn.net.max_flow(sn.source, sn.sink, INF) as usize;
    let co = sn.net.residual_coreach(sn.sink);
    let sep: Vec<VertexId> = g
        .vertices()
        .filter(|v| !removed[v.index()] && !co[2 * v.index()] && co[2 * v.index() + 1])
        .collect();
    let mut cut = removed.to_vec();
    for v in &sep {
        cut[v.index()] = true;
    }
    let side = reach_mask(g, a.iter().copied(), &cut);
    Some((value, side, sep))
}

/// Important (A,B)-separators of size at most `k`: minimal separators whose source-side
/// reach cannot be enlarged without growing the separator.
pub fn enumerate_important_separators(g: &Digraph, a: &VertexSet, b: &VertexSet, k: usize) -> Result<Vec<VertexSet>> {
    for v in a.iter().chain(b) {
        g.check(*v)?;
    }
    if a.intersection(b).next().is_some() {
        return input("A and B intersect");
    }
    let av: Vec<VertexId> = a.iter().copied().collect();
    let bv: Vec<VertexId> = b.iter().copied().collect();
    let mut candidates = Vec::new();
    let mut removed = g.dead_mask();
    let mut current = Vec::new();
    important_branch(g, av.clone(), &bv, &mut removed, k, &mut current, &mut candidates);
    let candidates = sort_sets(candidates);
    let minimal = minimal_set_separators(g, &av, &bv, k);
    let side = |z: &VertexSet| {
        let mut rem = g.dead_mask();
        for v in z {
            rem[v.index()] = true;
        }
        reach_mask(g, av.iter().copied(), &rem)
    };
    let sides: Vec<Vec<bool>> = minimal.iter().map(side).collect();
    let mut out = Vec::new();
    for z in candidates {
        if !is_minimal_separator(g, &av, &bv, &z) {
            continue;
        }
        let rz = side(&z);
        let dominated = minimal
            .iter()
            .zip(&sides)
            .any(|(other, ro)| other.len() <= z.len() && ro != &rz && rz.iter().zip(ro).all(|(&x, &y)| !x || y));
        if !dominated {
            out.push(z);
        }
    }
    Ok(out)
}

fn important_branch(
    g: &Digraph,
    a: Vec<VertexId>,
    b: &[VertexId],
    removed: &mut Vec<bool>,
    k: usize,
    current: &mut Vec<VertexId>,
    out: &mut Vec<VertexSet>,
) {
    let (value, side, sep) = match furthest_min_cut(g, &a, b, removed, k) {
        None => return,
        Some(x) => x,
    };
    if value == 0 {
        out.push(current.iter().copied().collect());
        return;
    }
    let v = sep[0];
    let side_vertices: Vec<VertexId> = g.vertices().filter(|w| side[w.index()]).collect();
    removed[v.index()] = true;
    current.push(v);
    important_branch(g, side_vertices.clone(), b, removed, k - 1, current, out);
    current.pop();
    removed[v.index()] = false;
    let mut grown = side_vertices;
    grown.push(v);
    important_branch(g, grown, b, removed, k, current, out);
}

/// Removes every vertex of `x`, joining each in-neighbour to each out-neighbour.
/// The result does not depend on the order in which vertices are processed.
pub fn bypass(g: &Digraph, x: &VertexSet) -> Result<Digraph> {
    for &v in x {
        g.check(v)?;
    }
    let mut h = g.clone();
    for &v in x {
        let ins: Vec<VertexId> = h.pred(v).collect();
        let outs: Vec<VertexId> = h.succ(v).collect();
        h.remove_vertex(v);
        for &u in &ins {
            for &w in &outs {
                if u != w {
                    h.add_arc(u, w)?;
                }
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(names: &[&str], undeletable: &[&str], arcs: &[(&str, &str)]) -> Digraph {
        let mut g = Digraph::new();
        for n in names {
            g.add_vertex(*n, !undeletable.contains(n)).unwrap();
        }
        for (u, v) in arcs {
            let (u, v) = (g.require(u).unwrap(), g.require(v).unwrap());
            g.add_arc(u, v).unwrap();
        }
        g
    }

    fn set(g: &Digraph, names: &[&str]) -> VertexSet {
        names.iter().map(|n| g.require(n).unwrap()).collect()
    }

    #[test]
    fn reach_on_a_path_stops_at_removed() {
        let g = graph(&["a", "b", "c"], &[], &[("a", "b"), ("b", "c")]);
        assert_eq!(
            reach(&g, &set(&g, &["a"]), &VertexSet::new()).unwrap(),
            set(&g, &["a", "b", "c"])
        );
        assert_eq!(reach(&g, &set(&g, &["a"]), &set(&g, &["b"])).unwrap(), set(&g, &["a"]));
        assert!(reach(&g, &set(&g, &["a"]), &set(&g, &["a"])).is_err());
    }

    #[test]
    fn flow_through_two_disjoint_paths() {
        let g = graph(
            &["s", "a", "b", "t"],
            &["s", "t"],
            &[("s", "a"), ("a", "t"), ("s", "b"), ("b", "t")],
        );
        let f = max_vertex_flow(&g, g.require("s").unwrap(), g.require("t").unwrap()).unwrap();
        assert_eq!(f.value, FlowValue::Finite(2));
        assert_eq!(f.paths.len(), 2);
    }

    #[test]
    fn undeletable_route_gives_infinite_flow() {
        let g = graph(&["s", "u", "t"], &["s", "u", "t"], &[("s", "u"), ("u", "t")]);
        let f = max_vertex_flow(&g, g.require("s").unwrap(), g.require("t").unwrap()).unwrap();
        assert_eq!(f.value, FlowValue::Infinite);
        assert_eq!(f.paths[0].vertices().len(), 3);
    }

    #[test]
    fn flow_paths_may_share_undeletable_vertices() {
        let g = graph(
            &["s", "a", "b", "m", "c", "d", "t"],
            &["s", "m", "t"],
            &[
                ("s", "a"),
                ("s", "b"),
                ("a", "m"),
                ("b", "m"),
                ("m", "c"),
                ("m", "d"),
                ("c", "t"),
                ("d", "t"),
            ],
        );
        let f = max_vertex_flow(&g, g.require("s").unwrap(), g.require("t").unwrap()).unwrap();
        assert_eq!(f.value, FlowValue::Finite(2));
        let m = g.require("m").unwrap();
        assert!(f.paths.iter().all(|p| p.contains(m)));
    }

    #[test]
    fn minimal_separators_of_a_path() {
        let g = graph(
            &["s", "a", "b", "t"],
            &["s", "t"],
            &[("s", "a"), ("a", "b"), ("b", "t")],
        );
        let seps = enumerate_minimal_separators(&g, g.require("s").unwrap(), g.require("t").unwrap(), 2).unwrap();
        assert_eq!(seps, vec![set(&g, &["a"]), set(&g, &["b"])]);
    }

    #[test]
    fn important_separator_is_closest_to_target() {
        let g = graph(
            &["s", "a", "b", "t"],
            &["s", "t"],
            &[("s", "a"), ("a", "b"), ("b", "t")],
        );
        let imp = enumerate_important_separators(&g, &set(&g, &["s"]), &set(&g, &["t"]), 1).unwrap();
        assert_eq!(imp, vec![set(&g, &["b"])]);
    }

    #[test]
    fn bypass_joins_neighbours_and_drops_loops() {
        let g = graph(&["a", "b", "c"], &[], &[("a", "b"), ("b", "c"), ("b", "a")]);
        let h = bypass(&g, &set(&g, &["b"])).unwrap();
        let (a, c) = (g.require("a").unwrap(), g.require("c").unwrap());
        assert_eq!(h.arcs(), vec![(a, c)]);
        assert!(!h.contains(g.require("b").unwrap()));
    }
}
