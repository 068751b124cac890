//! End-to-end solver for three-pair directed multicut: shadow removal, flow
//! augmentation per pair, the two permutation CSPs built from the augmented flows,
//! the irrelevant-vertex rule and a final validation of every candidate.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::combinatorics::for_each_set_partition;
use crate::digraph::{coreach_mask, reach_mask, Digraph, Path, VertexId, VertexSet};
use crate::error::{input, Error, Result};
use crate::flowaug::{augment_exhaustive, AugmentParams, Augmentation};
use crate::matrixgrid::{find_grid_minor, ZeroOneMatrix};
use crate::multicut::{enumerate_shadowless_solutions_guarded, is_solution, DmcInstance, Guard};
use crate::permcsp::{
    for_each_solution, Constraint, ConstraintKind, DownclosedRelation, OrderedDomain, PermCspInstance,
    PermutationConstraint, Value,
};
use crate::shadowrm::{apply_family, oracle_family, randomized_family, Strategy, DEFAULT_ROUNDS};

/// Flow paths of one terminal pair in the instance graph plus its augmenting arcs.
#[derive(Clone, Debug)]
pub struct PairFlow {
    pub s: VertexId,
    pub t: VertexId,
    pub graph: Digraph,
    pub paths: Vec<Path>,
    /// Blocks of consecutive deletable path vertices.
    pub blocks: Vec<Vec<VertexId>>,
}

impl PairFlow {
    pub fn from_augmentation(g: &Digraph, s: VertexId, t: VertexId, aug: &Augmentation) -> Result<Self> {
        Ok(PairFlow {
            s,
            t,
            graph: g.with_arcs(&aug.added_arcs)?,
            paths: aug.flow.paths.clone(),
            blocks: aug.partition.clone(),
        })
    }
}

/// A flow path's forward variable and its reverse-ordered copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlowVariable {
    pub pair: usize,
    pub path: usize,
    pub forward: usize,
    pub reverse: usize,
}

#[derive(Clone, Debug)]
pub struct CspEncoding {
    pub csp: PermCspInstance,
    pub vars: Vec<FlowVariable>,
    /// Full vertex sequence of each flow variable's path.
    pub paths: Vec<Vec<VertexId>>,
    /// Identity constraints between forward variables of one part: (var, var, constraint).
    pub consistency: Vec<(usize, usize, usize)>,
}

impl CspEncoding {
    /// Forward domain of flow variable `f` as vertices in path order.
    pub fn domain(&self, f: usize) -> Vec<VertexId> {
        self.csp.domains[self.vars[f].forward]
            .values()
            .iter()
            .map(|&v| VertexId(v as u32))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub enum C1Outcome {
    Built(CspEncoding),
    /// The flow of `pair` needs more than `k` paths, so no solution fits this branch.
    FlowOverflow {
        pair: usize,
        value: usize,
    },
}

fn value_of(v: VertexId) -> Value {
    v.0 as Value
}

/// Pairs (u, v) of flow-path vertices joined by a path whose inner vertices avoid every
/// flow path; includes u = v.
fn q_links(flow: &PairFlow) -> BTreeMap<VertexId, VertexSet> {
    let on_flow: VertexSet = flow.paths.iter().flat_map(|p| p.vertices().iter().copied()).collect();
    let mut links = BTreeMap::new();
    for &u in &on_flow {
        let mut out: VertexSet = [u].into_iter().collect();
        let mut seen = VertexSet::new();
        let mut queue = VecDeque::from([u]);
        while let Some(w) = queue.pop_front() {
            for x in flow.graph.succ(w) {
                if on_flow.contains(&x) {
                    out.insert(x);
                } else if seen.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        links.insert(u, out);
    }
    links
}

/// Variables x and x' per flow path, identity constraints tying them, and a downclosed
/// relation per ordered path pair forbidding cuts that leave an s-prefix, a link and a
/// t-suffix intact.
pub fn build_csp_c1(inst: &DmcInstance, flows: &[PairFlow]) -> Result<C1Outcome> {
    if flows.len() != inst.pairs.len() {
        return input("one flow per terminal pair expected");
    }
    for (i, f) in flows.iter().enumerate() {
        if f.paths.len() > inst.k {
            return Ok(C1Outcome::FlowOverflow {
                pair: i,
                value: f.paths.len(),
            });
        }
    }
    let mut csp = PermCspInstance::new(Vec::new());
    let mut vars = Vec::new();
    let mut paths = Vec::new();
    for (i, flow) in flows.iter().enumerate() {
        let first = vars.len();
        for (j, p) in flow.paths.iter().enumerate() {
            let dom: Vec<Value> = p
                .vertices()
                .iter()
                .filter(|&&v| v != flow.s && v != flow.t && !inst.is_undeletable(v) && inst.g.is_deletable(v))
                .map(|&v| value_of(v))
                .collect();
            let forward = csp.domains.len();
            csp.domains.push(OrderedDomain::new(dom.clone())?);
            csp.names.push(format!("x{}.{}", i + 1, j + 1));
            csp.domains
                .push(OrderedDomain::new(dom.iter().rev().copied().collect())?);
            csp.names.push(format!("x{}.{}'", i + 1, j + 1));
            let identity: Vec<(Value, Value)> = dom.iter().map(|&v| (v, v)).collect();
            csp.add_permutation(forward, forward + 1, &identity)?;
            vars.push(FlowVariable {
                pair: i,
                path: j,
                forward,
                reverse: forward + 1,
            });
            paths.push(p.vertices().to_vec());
        }
        let links = q_links(flow);
        for a in first..vars.len() {
            for b in first..vars.len() {
                let rel = link_relation(&csp, &vars[a], &vars[b], &paths[a], &paths[b], &links);
                csp.push(Constraint {
                    i: vars[a].forward,
                    j: vars[b].reverse,
                    kind: ConstraintKind::Downclosed(rel),
                })?;
            }
        }
    }
    Ok(C1Outcome::Built(CspEncoding {
        csp,
        vars,
        paths,
        consistency: Vec::new(),
    }))
}

fn link_relation(
    csp: &PermCspInstance,
    xa: &FlowVariable,
    xb: &FlowVariable,
    pa: &[VertexId],
    pb: &[VertexId],
    links: &BTreeMap<VertexId, VertexSet>,
) -> DownclosedRelation {
    let pos = |p: &[VertexId], v: Value| {
        p.iter()
            .position(|w| value_of(*w) == v)
            .expect("domain value lies on its path")
    };
    let mut bans: Vec<(usize, usize)> = Vec::new();
    for (pu, u) in pa.iter().enumerate() {
        for v in &links[u] {
            if let Some(pv) = pb.iter().position(|w| w == v) {
                bans.push((pu, pv));
            }
        }
    }
    let da = csp.domains[xa.forward].values();
    let db = csp.domains[xb.reverse].values();
    let mut kept = Vec::new();
    for (a, &x) in da.iter().enumerate() {
        let px = pos(pa, x);
        for (b, &y) in db.iter().enumerate() {
            let py = pos(pb, y);
            if !bans.iter().any(|&(pu, pv)| pu < px && pv > py) {
                kept.push((a, b));
            }
        }
    }
    let rel = DownclosedRelation::closure_of(&kept, da.len(), db.len()).expect("positions in range");
    debug_assert_eq!(
        kept.len(),
        (0..da.len())
            .map(|a| (0..db.len()).filter(|&b| rel.contains(a, b)).count())
            .sum::<usize>()
    );
    rel
}

/// Parts of flow-variable indices, each part sorted, parts sorted by first element.
pub type ConsistencyPartition = Vec<Vec<usize>>;

/// Partitions with no more than `k` blocks, each of 1 to 3 elements and no block holding two
/// variables of the same pair. Coarser partitions come first, then in restricted-growth
/// order.
pub fn enumerate_consistency_partitions(pair_of: &[usize], k: usize) -> Vec<ConsistencyPartition> {
    let n = pair_of.len();
    let mut out: Vec<ConsistencyPartition> = Vec::new();
    if n > 3 * k {
        return out;
    }
    for_each_set_partition(n, |rgs| {
        let parts = rgs.iter().max().map_or(0, |m| m + 1);
        if parts > k {
            return true;
        }
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); parts];
        for (x, &b) in rgs.iter().enumerate() {
            blocks[b].push(x);
        }
        let ok = blocks
            .iter()
            .all(|b| b.len() <= 3 && b.iter().map(|&x| pair_of[x]).collect::<BTreeSet<_>>().len() == b.len());
        if ok {
            out.push(blocks);
        }
        true
    });
    out.sort_by_key(|p| p.len());
    out
}

/// Groups flow variables by the vertex of `z[pair]` on their path. None when some path
/// does not meet its pair's set in exactly one vertex.
pub fn complying_partition(enc: &CspEncoding, z: &[VertexSet]) -> Option<ConsistencyPartition> {
    let mut groups: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (f, var) in enc.vars.iter().enumerate() {
        let hits: Vec<VertexId> = enc.paths[f]
            .iter()
            .filter(|v| z[var.pair].contains(v))
            .copied()
            .collect();
        if hits.len() != 1 {
            return None;
        }
        groups.entry(hits[0]).or_default().push(f);
    }
    let mut parts: Vec<Vec<usize>> = groups.into_values().collect();
    parts.sort();
    Some(parts)
}

/// Restricts each part to the vertices shared by all its paths' domains and ties the
/// forward variables of a part together with identity constraints.
pub fn build_csp_c2(c1: &CspEncoding, partition: &ConsistencyPartition) -> Result<CspEncoding> {
    let mut owner = vec![usize::MAX; c1.csp.variable_count()];
    let mut shared: Vec<BTreeSet<Value>> = Vec::new();
    for (p, part) in partition.iter().enumerate() {
        let mut common: Option<BTreeSet<Value>> = None;
        for &f in part {
            let var = c1
                .vars
                .get(f)
                .ok_or_else(|| Error::Input(format!("partition names unknown variable {f}")))?;
            owner[var.forward] = p;
            owner[var.reverse] = p;
            let dom: BTreeSet<Value> = c1.csp.domains[var.forward].values().iter().copied().collect();
            common = Some(match common {
                None => dom,
                Some(c) => c.intersection(&dom).copied().collect(),
            });
        }
        shared.push(common.unwrap_or_default());
    }
    if owner.contains(&usize::MAX) {
        return input("partition does not cover every flow variable");
    }
    let mut csp = c1.csp.restrict(|x, v| shared[owner[x]].contains(&v));
    let mut consistency = Vec::new();
    for (p, part) in partition.iter().enumerate() {
        let identity: Vec<(Value, Value)> = shared[p].iter().map(|&v| (v, v)).collect();
        for (n, &a) in part.iter().enumerate() {
            for &b in &part[n + 1..] {
                let (i, j) = (c1.vars[a].forward, c1.vars[b].forward);
                let pc = PermutationConstraint::from_value_pairs(&csp.domains[i], &csp.domains[j], &identity)?;
                consistency.push((a, b, csp.constraints.len()));
                csp.push(Constraint {
                    i,
                    j,
                    kind: ConstraintKind::Permutation(pc),
                })?;
            }
        }
    }
    Ok(CspEncoding {
        csp,
        vars: c1.vars.clone(),
        paths: c1.paths.clone(),
        consistency,
    })
}

/// Vertices assigned to the forward variables.
pub fn extract_solution(enc: &CspEncoding, valuation: &[Value]) -> VertexSet {
    enc.vars.iter().map(|v| VertexId(valuation[v.forward] as u32)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IrrelevantVertexConfig {
    /// Half the side of the monochromatic division.
    pub zeta: usize,
    /// Side of the grid minor searched first.
    pub rho: usize,
    /// Only fire when exhaustive search confirms the vertex is irrelevant.
    pub brute_check: bool,
}

impl Default for IrrelevantVertexConfig {
    fn default() -> Self {
        IrrelevantVertexConfig {
            zeta: 2,
            rho: 8,
            brute_check: true,
        }
    }
}

/// One side of a consistency constraint.
#[derive(Clone, Copy, Debug)]
pub struct ConstraintSide<'a> {
    pub pair: usize,
    pub path: &'a [VertexId],
    pub domain: &'a [VertexId],
    pub blocks: &'a [Vec<VertexId>],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateReason {
    /// No rho-grid minor in the constraint matrix.
    NoGridMinor,
    /// A rho-grid minor exists but no monochromatic coarsening was found.
    NoMonochromaticDivision,
    /// The candidate vertex failed the exhaustive irrelevance check.
    CheckFailed(VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridRankCertificate {
    pub rho: usize,
    pub reason: CertificateReason,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irrelevance {
    Certificate(GridRankCertificate),
    Vertex(VertexId),
}

/// Rows follow side `a`'s domain, columns side `b`'s; 1 where both name the same vertex.
pub fn constraint_matrix(a: &ConstraintSide, b: &ConstraintSide) -> Result<ZeroOneMatrix> {
    let mut m = ZeroOneMatrix::zeros(a.domain.len(), b.domain.len())?;
    for (i, x) in a.domain.iter().enumerate() {
        if let Some(j) = b.domain.iter().position(|y| y == x) {
            m.set(i, j, true);
        }
    }
    Ok(m)
}

fn block_of(blocks: &[Vec<VertexId>], v: VertexId) -> usize {
    blocks.iter().position(|b| b.contains(&v)).unwrap_or(usize::MAX)
}

/// Looks for a rho-grid minor, colors each cell by the block pairs of its entries and
/// searches a monochromatic (2 zeta)-coarsening; the vertex of the (zeta, zeta) cell is
/// the candidate.
pub fn irrelevant_vertex(
    inst: &DmcInstance,
    a: &ConstraintSide,
    b: &ConstraintSide,
    cfg: &IrrelevantVertexConfig,
    guard: &Guard,
) -> Result<Irrelevance> {
    if cfg.zeta == 0 || cfg.rho < 2 * cfg.zeta {
        return input("need rho >= 2 zeta >= 2");
    }
    let certificate = |reason| Ok(Irrelevance::Certificate(GridRankCertificate { rho: cfg.rho, reason }));
    if a.domain.is_empty() || b.domain.is_empty() || cfg.rho > a.domain.len().min(b.domain.len()) {
        return certificate(CertificateReason::NoGridMinor);
    }
    let m = constraint_matrix(a, b)?;
    let Some(div) = find_grid_minor(&m, cfg.rho)? else {
        return certificate(CertificateReason::NoGridMinor);
    };
    // colors of each cell: block pairs of its 1-entries, with the first entry per color
    let mut cells: Vec<Vec<BTreeMap<(usize, usize), VertexId>>> = vec![vec![BTreeMap::new(); cfg.rho]; cfg.rho];
    for (p, row) in cells.iter_mut().enumerate() {
        for (q, cell) in row.iter_mut().enumerate() {
            for i in div.row_range(p) {
                for j in div.col_range(q) {
                    if m.get(i, j) {
                        let v = a.domain[i];
                        cell.entry((block_of(a.blocks, v), block_of(b.blocks, v))).or_insert(v);
                    }
                }
            }
        }
    }
    let colors: BTreeSet<(usize, usize)> = cells.iter().flatten().flat_map(|c| c.keys().copied()).collect();
    let side = 2 * cfg.zeta;
    for color in colors {
        let mut pick: Option<(Vec<usize>, Vec<usize>)> = None;
        crate::combinatorics::for_each_combination(cfg.rho, side, |rows| {
            let cols: Vec<usize> = (0..cfg.rho)
                .filter(|&q| rows.iter().all(|&p| cells[p][q].contains_key(&color)))
                .take(side)
                .collect();
            if cols.len() == side {
                pick = Some((rows.to_vec(), cols));
                return false;
            }
            true
        });
        if let Some((rows, cols)) = pick {
            let v = cells[rows[cfg.zeta - 1]][cols[cfg.zeta - 1]][&color];
            if cfg.brute_check && !check_irrelevance(inst, v, a, b, guard)? {
                return certificate(CertificateReason::CheckFailed(v));
            }
            return Ok(Irrelevance::Vertex(v));
        }
    }
    certificate(CertificateReason::NoMonochromaticDivision)
}

fn splits(g: &Digraph, s: VertexId, t: VertexId, path: &[VertexId], v: VertexId, removed: &[bool]) -> bool {
    let Some(at) = path.iter().position(|&w| w == v) else {
        return false;
    };
    let to_t = coreach_mask(g, [t], removed);
    let from_s = reach_mask(g, [s], removed);
    path[..at].iter().all(|w| removed[w.index()] || !to_t[w.index()])
        && path[at + 1..].iter().all(|w| removed[w.index()] || !from_s[w.index()])
}

/// True iff no shadowless solution contains `v` while splitting both paths at `v`:
/// vertices before `v` cannot reach the pair's sink and vertices after it cannot be
/// reached from the pair's source.
pub fn check_irrelevance(
    inst: &DmcInstance,
    v: VertexId,
    a: &ConstraintSide,
    b: &ConstraintSide,
    guard: &Guard,
) -> Result<bool> {
    if !a.path.contains(&v) || !b.path.contains(&v) {
        return Ok(true);
    }
    for s in enumerate_shadowless_solutions_guarded(inst, guard)? {
        if !s.contains(&v) {
            continue;
        }
        let removed = inst.g.mask(&s);
        let (sa, ta) = inst.pairs[a.pair];
        let (sb, tb) = inst.pairs[b.pair];
        if splits(&inst.g, sa, ta, a.path, v, &removed) && splits(&inst.g, sb, tb, b.path, v, &removed) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Applies the rule to every consistency constraint between different pairs until each
/// one yields a certificate. Returns the shrunk encoding and the removed vertices, or
/// None when a domain runs empty.
pub fn reduce_irrelevant(
    inst: &DmcInstance,
    c2: &CspEncoding,
    flows: &[PairFlow],
    cfg: &IrrelevantVertexConfig,
    guard: &Guard,
) -> Result<Option<(CspEncoding, Vec<VertexId>)>> {
    let mut enc = c2.clone();
    let mut removed = Vec::new();
    for &(fa, fb, _) in &c2.consistency {
        let (pa, pb) = (enc.vars[fa].pair, enc.vars[fb].pair);
        if pa == pb {
            continue;
        }
        loop {
            let (da, db) = (enc.domain(fa), enc.domain(fb));
            if da.is_empty() || db.is_empty() {
                return Ok(None);
            }
            let side_a = ConstraintSide {
                pair: pa,
                path: &enc.paths[fa],
                domain: &da,
                blocks: &flows[pa].blocks,
            };
            let side_b = ConstraintSide {
                pair: pb,
                path: &enc.paths[fb],
                domain: &db,
                blocks: &flows[pb].blocks,
            };
            match irrelevant_vertex(inst, &side_a, &side_b, cfg, guard)? {
                Irrelevance::Certificate(_) => break,
                Irrelevance::Vertex(v) => {
                    removed.push(v);
                    let hit: BTreeSet<usize> = [fa, fb]
                        .iter()
                        .flat_map(|&f| [enc.vars[f].forward, enc.vars[f].reverse])
                        .collect();
                    enc.csp = enc.csp.restrict(|x, val| !(hit.contains(&x) && val == value_of(v)));
                }
            }
        }
    }
    if enc.csp.domains.iter().any(|d| d.is_empty()) {
        return Ok(None);
    }
    Ok(Some((enc, removed)))
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineConfig {
    pub strategy: Strategy,
    pub rounds: usize,
    pub irrelevant: IrrelevantVertexConfig,
    pub q: usize,
    pub p: usize,
    pub guard: Guard,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            strategy: Strategy::Oracle,
            rounds: DEFAULT_ROUNDS,
            irrelevant: IrrelevantVertexConfig::default(),
            q: 2,
            p: 1,
            guard: Guard::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineReport {
    pub solution: Option<VertexSet>,
    pub bypassed_instances: usize,
    pub separator_triples: usize,
    pub partitions: usize,
    pub candidates_checked: usize,
    pub candidates_rejected: usize,
    pub irrelevant_removed: Vec<VertexId>,
    /// Branches dropped because an internal step hit a capacity limit.
    pub skipped_branches: usize,
}

pub fn solve_dmc(inst: &DmcInstance, cfg: &PipelineConfig, seed: u64) -> Result<Option<VertexSet>> {
    Ok(run_pipeline(inst, cfg, seed)?.solution)
}

/// Per-pair flows for every minimal separator of size at most k, or None when the
/// augmenter refuses the input.
pub fn pair_flows(b: &DmcInstance, pair: usize, cfg: &PipelineConfig) -> Result<Vec<(VertexSet, PairFlow)>> {
    let (s, t) = b.pairs[pair];
    let params = AugmentParams {
        q: cfg.q,
        p: cfg.p,
        ..AugmentParams::new(b.k)
    };
    augment_exhaustive(&b.g, s, t, params)?
        .into_iter()
        .map(|(z, aug)| Ok((z, PairFlow::from_augmentation(&b.g, s, t, &aug)?)))
        .collect()
}

pub fn run_pipeline(inst: &DmcInstance, cfg: &PipelineConfig, seed: u64) -> Result<PipelineReport> {
    let family = match cfg.strategy {
        Strategy::Oracle => oracle_family(inst, &cfg.guard)?,
        Strategy::Randomized => randomized_family(inst, seed, cfg.rounds),
    };
    let mut report = PipelineReport::default();
    for b in apply_family(inst, &family)? {
        report.bypassed_instances += 1;
        let mut per_pair = Vec::new();
        for i in 0..3 {
            match pair_flows(&b, i, cfg) {
                Ok(f) => per_pair.push(f),
                Err(Error::Capacity { .. }) => {
                    report.skipped_branches += 1;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if per_pair.len() < 3 {
            continue;
        }
        for x in 0..per_pair[0].len() {
            for y in 0..per_pair[1].len() {
                for z in 0..per_pair[2].len() {
                    let picks = [&per_pair[0][x], &per_pair[1][y], &per_pair[2][z]];
                    let union: VertexSet = picks.iter().flat_map(|p| p.0.iter().copied()).collect();
                    if union.len() > inst.k {
                        continue;
                    }
                    report.separator_triples += 1;
                    let flows: Vec<PairFlow> = picks.iter().map(|p| p.1.clone()).collect();
                    match solve_triple(inst, &b, &flows, cfg, &mut report) {
                        Ok(Some(s)) => {
                            report.solution = Some(s);
                            return Ok(report);
                        }
                        Ok(None) => {}
                        Err(Error::Capacity { .. }) => report.skipped_branches += 1,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(report)
}

fn solve_triple(
    inst: &DmcInstance,
    b: &DmcInstance,
    flows: &[PairFlow],
    cfg: &PipelineConfig,
    report: &mut PipelineReport,
) -> Result<Option<VertexSet>> {
    let c1 = match build_csp_c1(b, flows)? {
        C1Outcome::Built(c1) => c1,
        C1Outcome::FlowOverflow { .. } => return Ok(None),
    };
    let pair_of: Vec<usize> = c1.vars.iter().map(|v| v.pair).collect();
    for partition in enumerate_consistency_partitions(&pair_of, inst.k) {
        report.partitions += 1;
        let c2 = build_csp_c2(&c1, &partition)?;
        if c2.csp.domains.iter().any(|d| d.is_empty()) {
            continue;
        }
        let Some((reduced, removed)) = reduce_irrelevant(b, &c2, flows, &cfg.irrelevant, &cfg.guard)? else {
            continue;
        };
        report.irrelevant_removed.extend(removed);
        let mut found = None;
        let mut checked = 0;
        let mut rejected = 0;
        let mut failure = None;
        for_each_solution(&reduced.csp, |alpha| {
            let s = extract_solution(&reduced, alpha);
            checked += 1;
            match is_solution(inst, &s) {
                Ok(true) if s.len() <= inst.k => {
                    found = Some(s);
                    false
                }
                Ok(_) => {
                    rejected += 1;
                    true
                }
                Err(e) => {
                    failure = Some(e);
                    false
                }
            }
        });
        report.candidates_checked += checked;
        report.candidates_rejected += rejected;
        if let Some(e) = failure {
            return Err(e);
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicut::brute_force_dmc;

    pub(crate) fn build(arcs: &[(&str, &str)], k: usize) -> DmcInstance {
        let mut g = Digraph::new();
        for n in ["s1", "t1", "s2", "t2", "s3", "t3"] {
            g.add_vertex(n, false).unwrap();
        }
        for (u, v) in arcs {
            for n in [u, v] {
                if g.vertex(n).is_none() {
                    g.add_vertex(*n, true).unwrap();
                }
            }
            let (u, v) = (g.require(u).unwrap(), g.require(v).unwrap());
            g.add_arc(u, v).unwrap();
        }
        let p = |a: &str, b: &str| (g.require(a).unwrap(), g.require(b).unwrap());
        let pairs = [p("s1", "t1"), p("s2", "t2"), p("s3", "t3")];
        DmcInstance::new(g.clone(), pairs, k, VertexSet::new()).unwrap()
    }

    fn names(inst: &DmcInstance, s: &VertexSet) -> Vec<String> {
        s.iter().map(|&v| inst.g.name(v).to_string()).collect()
    }

    #[test]
    fn disjoint_paths_need_three_vertices() {
        let inst = build(
            &[
                ("s1", "a"),
                ("a", "t1"),
                ("s2", "b"),
                ("b", "t2"),
                ("s3", "c"),
                ("c", "t3"),
            ],
            3,
        );
        let s = solve_dmc(&inst, &PipelineConfig::default(), 0).unwrap().unwrap();
        assert_eq!(names(&inst, &s), ["a", "b", "c"]);
    }

    #[test]
    fn shared_vertex_instance() {
        let inst = build(
            &[
                ("s1", "c"),
                ("c", "t1"),
                ("s2", "c"),
                ("c", "t2"),
                ("s3", "c"),
                ("c", "t3"),
            ],
            1,
        );
        let s = solve_dmc(&inst, &PipelineConfig::default(), 0).unwrap().unwrap();
        assert_eq!(names(&inst, &s), ["c"]);
        let mut two = inst.clone();
        two.k = 0;
        assert_eq!(solve_dmc(&two, &PipelineConfig::default(), 0).unwrap(), None);
    }

    #[test]
    fn single_path_relation() {
        let inst = build(&[("s1", "a"), ("a", "b"), ("b", "t1")], 2);
        let flows: Vec<PairFlow> = (0..3)
            .map(|i| {
                let mut f = pair_flows(&inst, i, &PipelineConfig::default()).unwrap();
                f.swap_remove(0).1
            })
            .collect();
        let C1Outcome::Built(c1) = build_csp_c1(&inst, &flows).unwrap() else {
            panic!("flow fits");
        };
        assert_eq!(c1.vars.len(), 1);
        let (a, b) = (
            inst.g.require("a").unwrap().0 as u64,
            inst.g.require("b").unwrap().0 as u64,
        );
        assert_eq!(c1.csp.domains[0].values(), &[a, b]);
        assert_eq!(c1.csp.domains[1].values(), &[b, a]);
        let mut sols = Vec::new();
        for_each_solution(&c1.csp, |alpha| {
            sols.push(alpha.to_vec());
            true
        });
        assert_eq!(sols.len(), 2);
        for s in sols {
            assert_eq!(s[0], s[1]);
        }
    }

    #[test]
    fn partitions_respect_pairs() {
        assert_eq!(enumerate_consistency_partitions(&[0], 1).len(), 1);
        assert_eq!(
            enumerate_consistency_partitions(&[0, 0], 2),
            vec![vec![vec![0], vec![1]]]
        );
        let triple = enumerate_consistency_partitions(&[0, 1, 2], 1);
        assert_eq!(triple, vec![vec![vec![0, 1, 2]]]);
        assert!(enumerate_consistency_partitions(&[0, 1, 2], 3).contains(&vec![vec![0, 1, 2]]));
    }

    #[test]
    fn agrees_with_brute_force_on_small_cases() {
        for seed in 0..25 {
            let inst = crate::gen::random_dmc(
                seed,
                crate::gen::DmcParams {
                    n: 8,
                    k: 2,
                    ..Default::default()
                },
            );
            let want = brute_force_dmc(&inst).unwrap().is_some();
            let got = solve_dmc(&inst, &PipelineConfig::default(), seed).unwrap();
            assert_eq!(got.is_some(), want, "seed {seed}");
            if let Some(s) = got {
                assert!(is_solution(&inst, &s).unwrap());
            }
        }
    }
}
