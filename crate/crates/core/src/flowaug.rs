//! Flow augmentation: compatibility, star and core cuts, witnessing flows, conversions
//! between the vertex and arc regimes, interlaced sets, soybeans, and an exhaustive
//! augmenter that meets the augmentation contract for every small minimal separator.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::combinatorics::for_each_combination;
use crate::digraph::{
    coreach_mask, enumerate_minimal_separators, is_separator, max_vertex_flow, reach_mask, set_flow_value, Digraph,
    FlowValue, Path, VertexFlow, VertexId, VertexSet, Walk,
};
use crate::error::{input, Error, Result};
use crate::flownet::{FlowNet, INF};

pub type Arc = (VertexId, VertexId);
pub type ArcSet = BTreeSet<Arc>;

/// A vertex or an arc of a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(VertexId),
    Arc(VertexId, VertexId),
}

impl Element {
    fn entry(self) -> VertexId {
        match self {
            Element::Vertex(v) => v,
            Element::Arc(u, _) => u,
        }
    }

    fn exit(self) -> VertexId {
        match self {
            Element::Vertex(v) => v,
            Element::Arc(_, v) => v,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AugmentParams {
    pub k: usize,
    /// Interlaced-set size checked by the soybean verification.
    pub q: usize,
    /// Number of disjoint soybeans demanded per interlaced pair.
    pub p: usize,
    /// Optional bound on the number of blocks; recorded, not enforced.
    pub c_cap: Option<usize>,
}

impl AugmentParams {
    pub fn new(k: usize) -> Self {
        AugmentParams {
            k,
            q: 2,
            p: 1,
            c_cap: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    pub added_arcs: Vec<Arc>,
    pub flow: VertexFlow,
    /// Blocks of consecutive deletable flow vertices, each inside one flow path.
    pub partition: Vec<Vec<VertexId>>,
    pub params: AugmentParams,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Soybean {
    pub first: Walk,
    pub second: Walk,
}

/// The s-reachable set of `g - z` is unchanged by adding `a`.
pub fn is_compatible_vertex(g: &Digraph, a: &[Arc], z: &VertexSet, s: VertexId, t: VertexId) -> Result<bool> {
    g.check(s)?;
    g.check(t)?;
    if z.contains(&s) || z.contains(&t) {
        return input("separator contains a terminal");
    }
    let before = reach_mask(g, [s], &g.mask(z));
    let h = g.with_arcs(a)?;
    let after = reach_mask(&h, [s], &h.mask(z));
    Ok(before == after)
}

fn without_arcs(g: &Digraph, z: &ArcSet) -> Digraph {
    let mut h = g.clone();
    for &(u, v) in z {
        h.remove_arc(u, v);
    }
    h
}

/// Every arc of `z` leaves the s-side of `g - z` and enters a vertex off it; `z` must
/// also separate s from t.
pub fn is_star_cut(g: &Digraph, z: &ArcSet, s: VertexId, t: VertexId) -> bool {
    let h = without_arcs(g, z);
    let r = reach_mask(&h, [s], &h.dead_mask());
    !r[t.index()] && z.iter().all(|&(u, v)| r[u.index()] && !r[v.index()])
}

/// The arcs of `z` whose head still reaches t in `g - z`.
pub fn corecut(g: &Digraph, z: &ArcSet, t: VertexId) -> ArcSet {
    let h = without_arcs(g, z);
    let co = coreach_mask(&h, [t], &h.dead_mask());
    z.iter().copied().filter(|&(_, v)| co[v.index()]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcFlow {
    pub value: FlowValue,
    pub paths: Vec<Path>,
}

/// Maximum number of s-t paths sharing no deletable arc.
pub fn max_arc_flow(g: &Digraph, s: VertexId, t: VertexId) -> Result<ArcFlow> {
    g.check(s)?;
    g.check(t)?;
    if s == t {
        return input("source equals sink");
    }
    let n = g.id_bound();
    let mut net = FlowNet::new(n);
    let mut undeletable_only = g.clone();
    for (u, v) in g.arcs() {
        let c = if g.arc_deletable(u, v) { 1 } else { INF };
        net.add_edge(u.index(), v.index(), c);
        if g.arc_deletable(u, v) {
            undeletable_only.remove_arc(u, v);
        }
    }
    let mut target = vec![false; n];
    target[t.index()] = true;
    if let Some(p) = crate::digraph::shortest_path(&undeletable_only, &[s], &target, &g.dead_mask()) {
        return Ok(ArcFlow {
            value: FlowValue::Infinite,
            paths: vec![Path::from_raw(p)],
        });
    }
    let value = net.max_flow(s.index(), t.index(), INF);
    let mut paths: Vec<Path> = net
        .decompose(s.index(), t.index(), value)
        .into_iter()
        .map(|nodes| Path::from_raw(nodes.into_iter().map(|i| VertexId(i as u32)).collect()))
        .collect();
    paths.sort();
    Ok(ArcFlow {
        value: FlowValue::Finite(value as usize),
        paths,
    })
}

fn path_arcs(p: &Path) -> impl Iterator<Item = Arc> + '_ {
    p.vertices().windows(2).map(|w| (w[0], w[1]))
}

/// `flow` is an st-maxflow whose arcs meet `z` exactly in the core cut. Fails when the
/// core cut is not a minimum cut.
pub fn is_witnessing_flow(g: &Digraph, z: &ArcSet, s: VertexId, t: VertexId, flow: &ArcFlow) -> Result<bool> {
    let core = corecut(g, z, t);
    let lambda = max_arc_flow(g, s, t)?.value;
    let h = without_arcs(g, &core);
    let separated = !reach_mask(&h, [s], &h.dead_mask())[t.index()];
    if !separated || lambda != FlowValue::Finite(core.len()) {
        return Err(Error::Precondition("core cut is not a minimum cut".into()));
    }
    if flow.value != lambda || flow.paths.len() != core.len() {
        return Ok(false);
    }
    let mut used = ArcSet::new();
    for p in &flow.paths {
        if Path::new(g, p.vertices().to_vec()).is_err() || p.first() != s || p.last() != t {
            return Ok(false);
        }
        for a in path_arcs(p) {
            if g.arc_deletable(a.0, a.1) && !used.insert(a) {
                return Ok(false);
            }
        }
    }
    let hit: ArcSet = flow
        .paths
        .iter()
        .flat_map(|p| path_arcs(p).collect::<Vec<_>>())
        .filter(|a| z.contains(a))
        .collect();
    Ok(hit == core)
}

/// Vertex `v` of the vertex regime becomes `v~in -> v~out`.
#[derive(Clone, Debug)]
pub struct SplitMap {
    inn: Vec<Option<VertexId>>,
    out: Vec<Option<VertexId>>,
    origin: Vec<VertexId>,
}

impl SplitMap {
    pub fn in_copy(&self, v: VertexId) -> VertexId {
        self.inn[v.index()].expect("vertex present when split")
    }

    pub fn out_copy(&self, v: VertexId) -> VertexId {
        self.out[v.index()].expect("vertex present when split")
    }

    pub fn origin(&self, copy: VertexId) -> VertexId {
        self.origin[copy.index()]
    }

    pub fn separator_to_cut(&self, z: &VertexSet) -> ArcSet {
        z.iter().map(|&v| (self.in_copy(v), self.out_copy(v))).collect()
    }

    /// Inverse of `separator_to_cut`; None when some arc is not a split arc.
    pub fn cut_to_separator(&self, cut: &ArcSet) -> Option<VertexSet> {
        cut.iter()
            .map(|&(a, b)| {
                let v = self.origin(a);
                (self.origin(b) == v && self.in_copy(v) == a && self.out_copy(v) == b).then_some(v)
            })
            .collect()
    }
}

/// Arc-regime copy of a vertex-regime graph. Every vertex is undeletable; the split arc
/// is deletable exactly when the vertex was (terminals are undeletable by convention).
pub fn edgeize(g: &Digraph) -> (Digraph, SplitMap) {
    let mut h = Digraph::new();
    let mut map = SplitMap {
        inn: vec![None; g.id_bound()],
        out: vec![None; g.id_bound()],
        origin: Vec::new(),
    };
    for v in g.vertices() {
        let a = h.add_vertex(format!("{}~in", g.name(v)), false).expect("fresh name");
        let b = h.add_vertex(format!("{}~out", g.name(v)), false).expect("fresh name");
        map.inn[v.index()] = Some(a);
        map.out[v.index()] = Some(b);
        map.origin.push(v);
        map.origin.push(v);
        h.add_arc_with(a, b, g.is_deletable(v)).expect("split arc");
    }
    for (u, v) in g.arcs() {
        h.add_arc_with(map.out_copy(u), map.in_copy(v), false)
            .expect("copied arc");
    }
    (h, map)
}

/// Arc `(u, v)` of the arc regime becomes a vertex `u->v`.
#[derive(Clone, Debug)]
pub struct SubdivisionMap {
    arc_vertex: std::collections::BTreeMap<Arc, VertexId>,
    vertex_arc: std::collections::BTreeMap<VertexId, Arc>,
    copy: Vec<Option<VertexId>>,
}

impl SubdivisionMap {
    pub fn copy_of(&self, v: VertexId) -> VertexId {
        self.copy[v.index()].expect("vertex present when subdivided")
    }

    pub fn cut_to_separator(&self, cut: &ArcSet) -> VertexSet {
        cut.iter().map(|a| self.arc_vertex[a]).collect()
    }

    pub fn separator_to_cut(&self, z: &VertexSet) -> Option<ArcSet> {
        z.iter().map(|v| self.vertex_arc.get(v).copied()).collect()
    }
}

/// Vertex-regime copy of an arc-regime graph: original vertices become undeletable and
/// each arc is subdivided by a vertex that is deletable exactly when the arc was.
pub fn vertexize(g: &Digraph) -> (Digraph, SubdivisionMap) {
    let mut h = Digraph::new();
    let mut map = SubdivisionMap {
        arc_vertex: Default::default(),
        vertex_arc: Default::default(),
        copy: vec![None; g.id_bound()],
    };
    for v in g.vertices() {
        map.copy[v.index()] = Some(h.add_vertex(g.name(v), false).expect("fresh name"));
    }
    for (u, v) in g.arcs() {
        let m = h
            .add_vertex(format!("{}->{}", g.name(u), g.name(v)), g.arc_deletable(u, v))
            .expect("fresh name");
        h.add_arc(map.copy_of(u), m).expect("arc");
        h.add_arc(m, map.copy_of(v)).expect("arc");
        map.arc_vertex.insert((u, v), m);
        map.vertex_arc.insert(m, (u, v));
    }
    (h, map)
}

/// Minimal st-cuts of deletable arcs with at most `k` arcs.
pub fn enumerate_minimal_cuts(g: &Digraph, s: VertexId, t: VertexId, k: usize) -> Result<Vec<ArcSet>> {
    let (h, map) = vertexize(g);
    let seps = enumerate_minimal_separators(&h, map.copy_of(s), map.copy_of(t), k)?;
    Ok(seps
        .iter()
        .map(|z| map.separator_to_cut(z).expect("subdivision vertices only"))
        .collect())
}

fn element_position(p: &Path, e: Element) -> Option<usize> {
    match e {
        Element::Vertex(v) => p.position(v).map(|i| 2 * i),
        Element::Arc(u, v) => {
            let i = p.position(u)?;
            (p.vertices().get(i + 1) == Some(&v)).then_some(2 * i + 1)
        }
    }
}

/// `c` and `d` have equal size and alternate along `p`, starting with an element of `c`.
pub fn interlaced(p: &Path, c: &[Element], d: &[Element]) -> Result<bool> {
    let mut tagged = Vec::new();
    for (side, set) in [(0u8, c), (1u8, d)] {
        for &e in set {
            let pos = element_position(p, e).ok_or_else(|| Error::Input(format!("{e:?} is not on the path")))?;
            tagged.push((pos, side));
        }
    }
    tagged.sort();
    if tagged.windows(2).any(|w| w[0].0 == w[1].0) {
        return input("c and d overlap");
    }
    if c.len() != d.len() {
        return Ok(false);
    }
    Ok(tagged.iter().enumerate().all(|(i, &(_, side))| side as usize == i % 2))
}

fn bfs_path(g: &Digraph, from: VertexId, to: VertexId, blocked: &[bool]) -> Option<Vec<VertexId>> {
    if blocked[from.index()] || blocked[to.index()] {
        return None;
    }
    let mut target = vec![false; g.id_bound()];
    target[to.index()] = true;
    crate::digraph::shortest_path(g, &[from], &target, blocked)
}

fn join(parts: &[Vec<VertexId>]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = Vec::new();
    for part in parts {
        for &v in part {
            if out.last() != Some(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// Walk `x -> e -> y` through element `e`, shortest pieces, avoiding `blocked`.
fn walk_through(g: &Digraph, x: VertexId, e: Element, y: VertexId, blocked: &[bool]) -> Option<Vec<VertexId>> {
    let head = bfs_path(g, x, e.entry(), blocked)?;
    if let Element::Arc(u, v) = e {
        if !g.has_arc(u, v) {
            return None;
        }
    }
    let tail = bfs_path(g, e.exit(), y, blocked)?;
    Some(join(&[head, tail]))
}

/// Smallest-footprint soybean pairing `c` with `d`, avoiding `blocked`.
fn cheapest_soybean(g: &Digraph, c: Element, d: Element, blocked: &[bool]) -> Option<(Soybean, Vec<VertexId>)> {
    let anc_c = coreach_mask(g, [c.entry()], blocked);
    let anc_d = coreach_mask(g, [d.entry()], blocked);
    let desc_c = reach_mask(g, [c.exit()], blocked);
    let desc_d = reach_mask(g, [d.exit()], blocked);
    let starts: Vec<VertexId> = g.vertices().filter(|v| anc_c[v.index()] && anc_d[v.index()]).collect();
    let ends: Vec<VertexId> = g
        .vertices()
        .filter(|v| desc_c[v.index()] && desc_d[v.index()])
        .collect();
    let mut best: Option<(usize, Soybean, Vec<VertexId>)> = None;
    for &x in &starts {
        for &y in &ends {
            let (w1, w2) = match (walk_through(g, x, c, y, blocked), walk_through(g, x, d, y, blocked)) {
                (Some(a), Some(b)) => (a, b),
                _ => continue,
            };
            let footprint: BTreeSet<VertexId> = w1.iter().chain(&w2).copied().collect();
            if best.as_ref().map(|b| footprint.len() < b.0).unwrap_or(true) {
                let fp: Vec<VertexId> = footprint.into_iter().collect();
                best = Some((
                    fp.len(),
                    Soybean {
                        first: Walk::from_raw(w1),
                        second: Walk::from_raw(w2),
                    },
                    fp,
                ));
            }
        }
    }
    best.map(|b| (b.1, b.2))
}

/// `p` pairwise vertex-disjoint soybeans in `g`, each with one walk through an element of
/// `c` and the other through an element of `d`. For `p = 1` the answer is exact; for
/// larger `p` the search backtracks over the cheapest soybean of every (c, d) choice,
/// so a negative answer is exhaustive only over those candidates.
pub fn find_soybeans(g: &Digraph, c: &[Element], d: &[Element], p: usize) -> Option<Vec<Soybean>> {
    let mut blocked = g.dead_mask();
    let mut out = Vec::new();
    let mut budget = 200_000usize;
    if soybean_search(g, c, d, p, &mut blocked, &mut out, &mut budget) {
        Some(out)
    } else {
        None
    }
}

fn soybean_search(
    g: &Digraph,
    c: &[Element],
    d: &[Element],
    p: usize,
    blocked: &mut Vec<bool>,
    out: &mut Vec<Soybean>,
    budget: &mut usize,
) -> bool {
    if p == 0 {
        return true;
    }
    for &ce in c {
        for &de in d {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            let (bean, fp) = match cheapest_soybean(g, ce, de, blocked) {
                Some(x) => x,
                None => continue,
            };
            for v in &fp {
                blocked[v.index()] = true;
            }
            out.push(bean);
            if soybean_search(g, c, d, p - 1, blocked, out, budget) {
                return true;
            }
            out.pop();
            for v in &fp {
                blocked[v.index()] = false;
            }
        }
    }
    false
}

/// Checks one block: every interlaced pair of `q`-sets drawn from the block's vertices
/// in path order has `p` disjoint soybeans in `g`.
pub(crate) fn block_has_soybeans(g: &Digraph, ordered: &[VertexId], q: usize, p: usize) -> bool {
    if q == 0 || ordered.len() < 2 * q {
        return true;
    }
    for_each_combination(ordered.len(), 2 * q, |idx| {
        let c: Vec<Element> = idx.iter().step_by(2).map(|&i| Element::Vertex(ordered[i])).collect();
        let d: Vec<Element> = idx
            .iter()
            .skip(1)
            .step_by(2)
            .map(|&i| Element::Vertex(ordered[i]))
            .collect();
        find_soybeans(g, &c, &d, p).is_some()
    })
}

/// Every block lies on one flow path and passes the soybean check.
pub fn verify_soybean_partition(g: &Digraph, aug: &Augmentation, q: usize, p: usize) -> bool {
    aug.partition.iter().all(|block| {
        let path = aug
            .flow
            .paths
            .iter()
            .find(|path| block.iter().all(|v| path.contains(*v)));
        match path {
            None => false,
            Some(path) => {
                let mut ordered = block.clone();
                ordered.sort_by_key(|v| path.position(*v));
                block_has_soybeans(g, &ordered, q, p)
            }
        }
    })
}

pub fn recurrence_eval(p: u64, i: usize) -> BigUint {
    let two_p = BigUint::from(2 * p);
    let mut q = two_p.clone();
    for _ in 0..i {
        q = BigUint::from(1u32) + &two_p * q;
    }
    q
}

/// `q_0 = 2p`, `q_{i+1} = 1 + 2p q_i`, tabulated up to depth `h_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceTable {
    pub p: u64,
    pub h_max: usize,
    values: Vec<BigUint>,
}

impl RecurrenceTable {
    pub fn new(p: u64, h_max: usize) -> Self {
        let mut values = vec![BigUint::from(2 * p)];
        for i in 0..h_max {
            let next = BigUint::from(1u32) + BigUint::from(2 * p) * &values[i];
            values.push(next);
        }
        RecurrenceTable { p, h_max, values }
    }

    pub fn q(&self, i: usize) -> &BigUint {
        &self.values[i]
    }

    pub fn value(&self) -> &BigUint {
        &self.values[self.h_max]
    }
}

/// One augmentation for every minimal st-separator of size at most `k`.
pub fn augment_exhaustive(
    g: &Digraph,
    s: VertexId,
    t: VertexId,
    params: AugmentParams,
) -> Result<Vec<(VertexSet, Augmentation)>> {
    g.check(s)?;
    g.check(t)?;
    if g.is_deletable(s) || g.is_deletable(t) {
        return input("flow terminals must be undeletable");
    }
    if g.vertex_count() > 64 || params.k > 4 {
        return Err(Error::Capacity {
            what: "augmenter input (vertices, k)",
            size: g.vertex_count().max(params.k) as u128,
            limit: 64,
        });
    }
    let seps = enumerate_minimal_separators(g, s, t, params.k)?;
    seps.into_iter()
        .map(|z| {
            let aug = augment_for(g, s, t, &z, params)?;
            Ok((z, aug))
        })
        .collect()
}

fn flow_value(g: &Digraph, s: VertexId, t: VertexId) -> usize {
    set_flow_value(g, &[s], &[t], &g.dead_mask(), None)
        .finite()
        .unwrap_or(usize::MAX)
}

/// Greedy augmentation for one separator `z`: only arcs whose head lies in `z` or on the
/// s-side of `g - z` are tried, which keeps the s-side fixed; falls back to `s -> v -> t`
/// shortcuts through vertices of `z`.
pub fn augment_for(
    g: &Digraph,
    s: VertexId,
    t: VertexId,
    z: &VertexSet,
    params: AugmentParams,
) -> Result<Augmentation> {
    let side = reach_mask(g, [s], &g.mask(z));
    if side[t.index()] {
        return input("z does not separate s from t");
    }
    let mut h = g.clone();
    let mut added: Vec<Arc> = Vec::new();
    let mut lambda = flow_value(&h, s, t);
    let target = z.len();
    if lambda < target {
        let mut candidates: Vec<(bool, Arc)> = Vec::new();
        for u in g.vertices() {
            if u == t {
                continue;
            }
            for v in g.vertices() {
                if u == v || v == s || g.has_arc(u, v) {
                    continue;
                }
                if z.contains(&v) || side[v.index()] {
                    let touches_terminal = [u, v].iter().any(|x| *x == s || *x == t);
                    candidates.push((touches_terminal, (u, v)));
                }
            }
        }
        candidates.sort();
        for (_, (u, v)) in candidates {
            if lambda >= target {
                break;
            }
            h.add_arc_with(u, v, false)?;
            let next = flow_value(&h, s, t);
            if next > lambda {
                lambda = next;
                added.push((u, v));
            } else {
                h.remove_arc(u, v);
            }
        }
        for &v in z {
            if lambda >= target {
                break;
            }
            for arc in [(s, v), (v, t)] {
                if !h.has_arc(arc.0, arc.1) {
                    h.add_arc_with(arc.0, arc.1, false)?;
                    added.push(arc);
                }
            }
            lambda = flow_value(&h, s, t);
        }
    }
    let flow = max_vertex_flow(&h, s, t)?;
    let partition = build_partition(g, &flow, params);
    Ok(Augmentation {
        added_arcs: added,
        flow,
        partition,
        params,
    })
}

/// Starts from singletons and merges neighbouring blocks of a path while the merged
/// block still passes the soybean check.
fn build_partition(g: &Digraph, flow: &VertexFlow, params: AugmentParams) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    for path in &flow.paths {
        let vs = path.vertices();
        let inner = if vs.len() > 2 { &vs[1..vs.len() - 1] } else { &[][..] };
        let mut current: Vec<VertexId> = Vec::new();
        for &v in inner {
            if !g.is_deletable(v) {
                continue;
            }
            current.push(v);
            if !block_has_soybeans(g, &current, params.q, params.p) {
                current.pop();
                out.push(std::mem::take(&mut current));
                current.push(v);
            }
        }
        if !current.is_empty() {
            out.push(current);
        }
    }
    out
}

/// Check of a bare claim `(z, a)`: `a` keeps the s-side of `g - z` and lifts the flow
/// to `|z|`. Every maximum flow path then meets `z` exactly once.
pub fn verify_claimed_arcs(
    g: &Digraph,
    s: VertexId,
    t: VertexId,
    z: &VertexSet,
    a: &[Arc],
) -> Result<std::result::Result<(), String>> {
    if !is_separator(g, s, t, z) {
        return Ok(Err("z does not separate s from t".into()));
    }
    if !is_compatible_vertex(g, a, z, s, t)? {
        return Ok(Err("added arcs change the s-side of g - z".into()));
    }
    let h = g.with_arcs(a)?;
    let lambda = flow_value(&h, s, t);
    if lambda != z.len() {
        return Ok(Err(format!("flow value {} but |z| = {}", lambda, z.len())));
    }
    Ok(Ok(()))
}

/// Full contract check for one augmentation of separator `z`.
pub fn verify_augmentation(
    g: &Digraph,
    s: VertexId,
    t: VertexId,
    z: &VertexSet,
    aug: &Augmentation,
) -> Result<std::result::Result<(), String>> {
    if !is_compatible_vertex(g, &aug.added_arcs, z, s, t)? {
        return Ok(Err("added arcs change the s-side of g - z".into()));
    }
    let h = g.with_arcs(&aug.added_arcs)?;
    let lambda = set_flow_value(&h, &[s], &[t], &h.dead_mask(), None);
    if lambda != FlowValue::Finite(z.len()) || aug.flow.value != lambda {
        return Ok(Err(format!("flow value {} but |z| = {}", lambda, z.len())));
    }
    let mut used = VertexSet::new();
    for p in &aug.flow.paths {
        if Path::new(&h, p.vertices().to_vec()).is_err() || p.first() != s || p.last() != t {
            return Ok(Err("flow path is not an s-t path of g + A".into()));
        }
        for &v in p.vertices() {
            if h.is_deletable(v) && !used.insert(v) {
                return Ok(Err("flow paths share a deletable vertex".into()));
            }
        }
        if p.vertices().iter().filter(|v| z.contains(v)).count() != 1 {
            return Ok(Err("a flow path does not meet z exactly once".into()));
        }
    }
    if aug.flow.paths.len() != z.len() {
        return Ok(Err("wrong number of flow paths".into()));
    }
    let covered: Vec<VertexId> = aug.partition.iter().flatten().copied().collect();
    let covered_set: VertexSet = covered.iter().copied().collect();
    if covered.len() != covered_set.len() || covered_set != used {
        return Ok(Err(
            "partition does not cover the deletable flow vertices exactly".into()
        ));
    }
    if !verify_soybean_partition(g, aug, aug.params.q, aug.params.p) {
        return Ok(Err("a block fails the soybean check".into()));
    }
    Ok(Ok(()))
}
