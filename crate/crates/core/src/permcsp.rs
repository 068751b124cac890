//! Permutation CSPs: ordered domains, downclosed relations and bijections between
//! variable pairs. Includes a propagating backtracking solver, an exhaustive oracle and
//! the colored ordered graph that encodes an instance.

use std::collections::BTreeMap;

use crate::error::{input, Error, Result};
use crate::matrixgrid::ZeroOneMatrix;

pub type Value = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedDomain {
    values: Vec<Value>,
    pos: BTreeMap<Value, usize>,
}

impl OrderedDomain {
    pub fn new(values: Vec<Value>) -> Result<Self> {
        let pos: BTreeMap<Value, usize> = values.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if pos.len() != values.len() {
            return input("domain repeats a value");
        }
        Ok(OrderedDomain { values, pos })
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn position(&self, v: Value) -> Option<usize> {
        self.pos.get(&v).copied()
    }

    fn require(&self, v: Value) -> Result<usize> {
        self.position(v)
            .ok_or_else(|| Error::Input(format!("value {v} not in domain")))
    }
}

/// R = {(a, b) : b <= g(a)} with `g` non-increasing. Stored over domain positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownclosedRelation {
    frontier: Vec<Option<usize>>,
    width: usize,
}

impl DownclosedRelation {
    /// `frontier[a]` is the largest position b with (a, b) in R, if any.
    pub fn from_frontier(frontier: Vec<Option<usize>>, width: usize) -> Result<Self> {
        if frontier.iter().flatten().any(|&b| b >= width) {
            return input("frontier points outside the second domain");
        }
        let rank = |g: &Option<usize>| g.map_or(0, |b| b + 1);
        if frontier.windows(2).any(|w| rank(&w[1]) > rank(&w[0])) {
            return input("frontier must be non-increasing");
        }
        Ok(DownclosedRelation { frontier, width })
    }

    /// Downward closure of arbitrary position pairs.
    pub fn closure_of(pairs: &[(usize, usize)], height: usize, width: usize) -> Result<Self> {
        let mut frontier: Vec<Option<usize>> = vec![None; height];
        for &(a, b) in pairs {
            if a >= height || b >= width {
                return input("pair outside the domains");
            }
            frontier[a] = frontier[a].max(Some(b));
        }
        for a in (0..height.saturating_sub(1)).rev() {
            frontier[a] = frontier[a].max(frontier[a + 1]);
        }
        Self::from_frontier(frontier, width)
    }

    pub fn from_value_pairs(di: &OrderedDomain, dj: &OrderedDomain, pairs: &[(Value, Value)]) -> Result<Self> {
        let pos: Result<Vec<(usize, usize)>> = pairs
            .iter()
            .map(|&(a, b)| Ok((di.require(a)?, dj.require(b)?)))
            .collect();
        Self::closure_of(&pos?, di.len(), dj.len())
    }

    pub fn full(height: usize, width: usize) -> Self {
        DownclosedRelation {
            frontier: vec![width.checked_sub(1); height],
            width,
        }
    }

    pub fn frontier(&self) -> &[Option<usize>] {
        &self.frontier
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.frontier.get(a).copied().flatten().is_some_and(|g| b <= g)
    }

    /// Pairs (a, g(a)) not dominated by another pair of R in both coordinates.
    pub fn boundary(&self) -> Vec<(usize, usize)> {
        (0..self.frontier.len())
            .filter_map(|a| {
                let g = self.frontier[a]?;
                let next = self.frontier.get(a + 1).copied().flatten();
                next.is_none_or(|h| h < g).then_some((a, g))
            })
            .collect()
    }
}

/// Bijection between a subset of the first domain and a subset of the second, by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationConstraint {
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl PermutationConstraint {
    pub fn from_positions(pairs: &[(usize, usize)], height: usize, width: usize) -> Result<Self> {
        let mut forward = vec![None; height];
        let mut backward = vec![None; width];
        for &(a, b) in pairs {
            if a >= height || b >= width {
                return input("pair outside the domains");
            }
            if forward[a].is_some() || backward[b].is_some() {
                return input("permutation constraint is not a bijection");
            }
            forward[a] = Some(b);
            backward[b] = Some(a);
        }
        Ok(PermutationConstraint { forward, backward })
    }

    pub fn from_value_pairs(di: &OrderedDomain, dj: &OrderedDomain, pairs: &[(Value, Value)]) -> Result<Self> {
        let pos: Result<Vec<(usize, usize)>> = pairs
            .iter()
            .map(|&(a, b)| Ok((di.require(a)?, dj.require(b)?)))
            .collect();
        Self::from_positions(&pos?, di.len(), dj.len())
    }

    pub fn image(&self, a: usize) -> Option<usize> {
        self.forward.get(a).copied().flatten()
    }

    pub fn preimage(&self, b: usize) -> Option<usize> {
        self.backward.get(b).copied().flatten()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.forward
            .iter()
            .enumerate()
            .filter_map(|(a, b)| b.map(|b| (a, b)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    Downclosed(DownclosedRelation),
    Permutation(PermutationConstraint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub i: usize,
    pub j: usize,
    pub kind: ConstraintKind,
}

impl Constraint {
    fn allows(&self, a: usize, b: usize) -> bool {
        match &self.kind {
            ConstraintKind::Downclosed(r) => r.contains(a, b),
            ConstraintKind::Permutation(p) => p.image(a) == Some(b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermCspInstance {
    pub names: Vec<String>,
    pub domains: Vec<OrderedDomain>,
    pub constraints: Vec<Constraint>,
}

pub type Valuation = Vec<Value>;

impl PermCspInstance {
    pub fn new(domains: Vec<OrderedDomain>) -> Self {
        PermCspInstance {
            names: (0..domains.len()).map(|i| format!("x{}", i + 1)).collect(),
            domains,
            constraints: Vec::new(),
        }
    }

    pub fn variable_count(&self) -> usize {
        self.domains.len()
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i == j || i >= self.domains.len() || j >= self.domains.len() {
            return input(format!("invalid variable pair ({i}, {j})"));
        }
        Ok(())
    }

    pub fn add_downclosed(&mut self, i: usize, j: usize, pairs: &[(Value, Value)]) -> Result<()> {
        self.check_pair(i, j)?;
        let r = DownclosedRelation::from_value_pairs(&self.domains[i], &self.domains[j], pairs)?;
        self.constraints.push(Constraint {
            i,
            j,
            kind: ConstraintKind::Downclosed(r),
        });
        Ok(())
    }

    pub fn add_permutation(&mut self, i: usize, j: usize, pairs: &[(Value, Value)]) -> Result<()> {
        self.check_pair(i, j)?;
        let p = PermutationConstraint::from_value_pairs(&self.domains[i], &self.domains[j], pairs)?;
        self.constraints.push(Constraint {
            i,
            j,
            kind: ConstraintKind::Permutation(p),
        });
        Ok(())
    }

    /// Adds a constraint given in position space; sizes must match the domains.
    pub fn push(&mut self, c: Constraint) -> Result<()> {
        self.check_pair(c.i, c.j)?;
        let (h, w) = (self.domains[c.i].len(), self.domains[c.j].len());
        let ok = match &c.kind {
            ConstraintKind::Downclosed(r) => r.frontier.len() == h && r.width == w,
            ConstraintKind::Permutation(p) => p.forward.len() == h && p.backward.len() == w,
        };
        if !ok {
            return input("constraint does not match the variable domains");
        }
        self.constraints.push(c);
        Ok(())
    }

    /// Drops every value `v` of variable `i` with `!keep(i, v)`. Downclosed frontiers
    /// snap to the largest surviving value; permutation pairs lose dropped endpoints.
    pub fn restrict(&self, keep: impl Fn(usize, Value) -> bool) -> PermCspInstance {
        let kept: Vec<Vec<usize>> = self
            .domains
            .iter()
            .enumerate()
            .map(|(i, d)| (0..d.len()).filter(|&p| keep(i, d.values[p])).collect())
            .collect();
        // old position -> new position, per variable
        let remap: Vec<Vec<Option<usize>>> = self
            .domains
            .iter()
            .zip(&kept)
            .map(|(d, k)| {
                let mut m = vec![None; d.len()];
                for (new, &old) in k.iter().enumerate() {
                    m[old] = Some(new);
                }
                m
            })
            .collect();
        let domains: Vec<OrderedDomain> = self
            .domains
            .iter()
            .zip(&kept)
            .map(|(d, k)| OrderedDomain::new(k.iter().map(|&p| d.values[p]).collect()).expect("subset of a domain"))
            .collect();
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let kind = match &c.kind {
                    ConstraintKind::Downclosed(r) => {
                        let frontier = kept[c.i]
                            .iter()
                            .map(|&a| r.frontier[a].and_then(|g| kept[c.j].iter().rposition(|&b| b <= g)))
                            .collect();
                        ConstraintKind::Downclosed(DownclosedRelation {
                            frontier,
                            width: kept[c.j].len(),
                        })
                    }
                    ConstraintKind::Permutation(p) => {
                        let pairs: Vec<(usize, usize)> = p
                            .pairs()
                            .into_iter()
                            .filter_map(|(a, b)| Some((remap[c.i][a]?, remap[c.j][b]?)))
                            .collect();
                        ConstraintKind::Permutation(
                            PermutationConstraint::from_positions(&pairs, kept[c.i].len(), kept[c.j].len())
                                .expect("restriction of a bijection"),
                        )
                    }
                };
                Constraint { i: c.i, j: c.j, kind }
            })
            .collect();
        PermCspInstance {
            names: self.names.clone(),
            domains,
            constraints,
        }
    }

    fn positions(&self, alpha: &[Value]) -> Result<Vec<usize>> {
        if alpha.len() != self.domains.len() {
            return input(format!(
                "valuation assigns {} of {} variables",
                alpha.len(),
                self.domains.len()
            ));
        }
        alpha.iter().zip(&self.domains).map(|(&v, d)| d.require(v)).collect()
    }
}

pub fn is_satisfied(inst: &PermCspInstance, alpha: &[Value]) -> Result<bool> {
    let pos = inst.positions(alpha)?;
    Ok(inst.constraints.iter().all(|c| c.allows(pos[c.i], pos[c.j])))
}

type Domains = Vec<Vec<bool>>;

fn first_live(d: &[bool]) -> Option<usize> {
    d.iter().position(|&b| b)
}

/// Prunes to arc consistency. Returns false once some domain empties.
fn propagate(inst: &PermCspInstance, doms: &mut Domains) -> bool {
    loop {
        let mut changed = false;
        for c in &inst.constraints {
            match &c.kind {
                ConstraintKind::Downclosed(r) => {
                    // b needs some a with g(a) >= b; the smallest live a has the largest g
                    let cap = first_live(&doms[c.i]).and_then(|a| r.frontier[a]);
                    for (b, live) in doms[c.j].iter_mut().enumerate() {
                        if *live && cap.is_none_or(|g| b > g) {
                            *live = false;
                            changed = true;
                        }
                    }
                    let floor = first_live(&doms[c.j]);
                    for (a, live) in doms[c.i].iter_mut().enumerate() {
                        if *live && !matches!((r.frontier[a], floor), (Some(g), Some(f)) if g >= f) {
                            *live = false;
                            changed = true;
                        }
                    }
                }
                ConstraintKind::Permutation(p) => {
                    for a in 0..doms[c.i].len() {
                        if doms[c.i][a] && !p.image(a).is_some_and(|b| doms[c.j][b]) {
                            doms[c.i][a] = false;
                            changed = true;
                        }
                    }
                    for b in 0..doms[c.j].len() {
                        if doms[c.j][b] && !p.preimage(b).is_some_and(|a| doms[c.i][a]) {
                            doms[c.j][b] = false;
                            changed = true;
                        }
                    }
                }
            }
            if doms.iter().any(|d| first_live(d).is_none()) {
                return false;
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(inst: &PermCspInstance, mut doms: Domains, f: &mut dyn FnMut(&[Value]) -> bool) -> bool {
    if !propagate(inst, &mut doms) {
        return true;
    }
    let branch = (0..doms.len())
        .map(|i| (doms[i].iter().filter(|&&b| b).count(), i))
        .filter(|&(n, _)| n > 1)
        .min();
    match branch {
        None => {
            let pos: Vec<usize> = doms.iter().map(|d| first_live(d).expect("live")).collect();
            let alpha: Vec<Value> = pos.iter().zip(&inst.domains).map(|(&p, d)| d.values[p]).collect();
            f(&alpha)
        }
        Some((_, i)) => {
            for v in 0..doms[i].len() {
                if !doms[i][v] {
                    continue;
                }
                let mut next = doms.clone();
                next[i].iter_mut().enumerate().for_each(|(w, b)| *b = w == v);
                if !search(inst, next, f) {
                    return false;
                }
            }
            true
        }
    }
}

/// Calls `f` on every satisfying valuation in search order until it returns false.
pub fn for_each_solution(inst: &PermCspInstance, mut f: impl FnMut(&[Value]) -> bool) {
    let doms: Domains = inst.domains.iter().map(|d| vec![true; d.len()]).collect();
    if doms.iter().any(|d| d.is_empty()) {
        return;
    }
    search(inst, doms, &mut f);
}

/// Smallest-domain-first backtracking with arc-consistency propagation.
pub fn solve(inst: &PermCspInstance) -> Option<Valuation> {
    let mut out = None;
    for_each_solution(inst, |a| {
        out = Some(a.to_vec());
        false
    });
    out
}

const BRUTE_LIMIT: u128 = 20_000_000;

/// Lexicographically first satisfying valuation over the Cartesian product of domains.
pub fn brute_force_csp(inst: &PermCspInstance) -> Result<Option<Valuation>> {
    let size = inst
        .domains
        .iter()
        .try_fold(1u128, |acc, d| acc.checked_mul(d.len() as u128))
        .unwrap_or(u128::MAX);
    if size > BRUTE_LIMIT {
        return Err(Error::Capacity {
            what: "csp valuations",
            size,
            limit: BRUTE_LIMIT,
        });
    }
    if inst.domains.iter().any(|d| d.is_empty()) {
        return Ok(None);
    }
    let k = inst.domains.len();
    let mut pos = vec![0usize; k];
    loop {
        if inst.constraints.iter().all(|c| c.allows(pos[c.i], pos[c.j])) {
            return Ok(Some(pos.iter().zip(&inst.domains).map(|(&p, d)| d.values[p]).collect()));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < inst.domains[i].len() {
                break;
            }
            pos[i] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoredEdge {
    /// Index of the constraint the edge encodes.
    pub color: usize,
    pub u: usize,
    pub v: usize,
}

/// Vertices are all (variable, value) pairs ordered by variable, then domain order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredOrderedGraph {
    pub vertices: Vec<(usize, Value)>,
    pub offsets: Vec<usize>,
    pub edges: Vec<ColoredEdge>,
}

impl ColoredOrderedGraph {
    pub fn edges_of(&self, color: usize) -> impl Iterator<Item = &ColoredEdge> {
        self.edges.iter().filter(move |e| e.color == color)
    }

    /// Ordered adjacency matrix of one color restricted to variables `i` (rows) and `j`.
    pub fn block(&self, color: usize, i: usize, j: usize) -> Result<ZeroOneMatrix> {
        let (ri, rj) = (self.range(i), self.range(j));
        let mut m = ZeroOneMatrix::zeros(ri.len(), rj.len())?;
        for e in self.edges_of(color) {
            for (x, y) in [(e.u, e.v), (e.v, e.u)] {
                if ri.contains(&x) && rj.contains(&y) {
                    m.set(x - ri.start, y - rj.start, true);
                }
            }
        }
        Ok(m)
    }

    /// Ordered adjacency matrix of one color over all vertices.
    pub fn adjacency(&self, color: usize) -> Result<ZeroOneMatrix> {
        let n = self.vertices.len();
        let mut m = ZeroOneMatrix::zeros(n, n)?;
        for e in self.edges_of(color) {
            m.set(e.u, e.v, true);
            m.set(e.v, e.u, true);
        }
        Ok(m)
    }

    fn range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Rebuilds a downclosed relation from its boundary edges: (a, b) is in R iff some
    /// boundary edge (a', b') has a' >= a and b' >= b.
    pub fn decode_downclosed(&self, inst: &PermCspInstance, color: usize) -> Result<DownclosedRelation> {
        let c = inst
            .constraints
            .get(color)
            .ok_or_else(|| Error::Input(format!("no constraint {color}")))?;
        let (ri, rj) = (self.range(c.i), self.range(c.j));
        let pairs: Vec<(usize, usize)> = self
            .edges_of(color)
            .map(|e| {
                let (x, y) = if ri.contains(&e.u) { (e.u, e.v) } else { (e.v, e.u) };
                (x - ri.start, y - rj.start)
            })
            .collect();
        DownclosedRelation::closure_of(&pairs, ri.len(), rj.len())
    }
}

pub fn build_fo_encoding(inst: &PermCspInstance) -> ColoredOrderedGraph {
    let mut vertices = Vec::new();
    let mut offsets = vec![0];
    for (i, d) in inst.domains.iter().enumerate() {
        vertices.extend(d.values.iter().map(|&v| (i, v)));
        offsets.push(vertices.len());
    }
    let mut edges = Vec::new();
    for (color, c) in inst.constraints.iter().enumerate() {
        let pairs = match &c.kind {
            ConstraintKind::Downclosed(r) => r.boundary(),
            ConstraintKind::Permutation(p) => p.pairs(),
        };
        edges.extend(pairs.into_iter().map(|(a, b)| ColoredEdge {
            color,
            u: offsets[c.i] + a,
            v: offsets[c.j] + b,
        }));
    }
    ColoredOrderedGraph {
        vertices,
        offsets,
        edges,
    }
}
