//! Hand-built instances shared by the test suites.

use crate::digraph::{Digraph, Path, VertexId, VertexSet};
use crate::error::Result;
use crate::multicut::DmcInstance;
use crate::pipeline::PairFlow;

/// Terminals s1..t3 (undeletable) plus every vertex named in `arcs` (deletable).
pub fn three_pair_instance(arcs: &[(&str, &str)], extra: &[&str], k: usize) -> Result<DmcInstance> {
    let mut g = Digraph::new();
    for n in ["s1", "t1", "s2", "t2", "s3", "t3"] {
        g.add_vertex(n, false)?;
    }
    for n in extra.iter().chain(arcs.iter().flat_map(|(u, v)| [u, v])) {
        if g.vertex(n).is_none() {
            g.add_vertex(*n, true)?;
        }
    }
    for (u, v) in arcs {
        let (u, v) = (g.require(u)?, g.require(v)?);
        g.add_arc(u, v)?;
    }
    let p = |a: &str, b: &str| -> Result<(VertexId, VertexId)> { Ok((g.require(a)?, g.require(b)?)) };
    let pairs = [p("s1", "t1")?, p("s2", "t2")?, p("s3", "t3")?];
    DmcInstance::new(g.clone(), pairs, k, VertexSet::new())
}

/// Two flow paths through a, b, c, d in different orders, one block each, and k = 1.
/// The constraint matrix is a 2-grid minor, vertex a lies on no solution and the only
/// solution is {d}.
pub fn firing_instance() -> Result<(DmcInstance, Vec<PairFlow>)> {
    let inst = three_pair_instance(
        &[
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("a", "c"),
            ("c", "b"),
            ("b", "d"),
            ("s1", "a"),
            ("s1", "b"),
            ("s2", "a"),
            ("d", "t1"),
            ("d", "t2"),
            ("c", "e"),
            ("e", "t3"),
        ],
        &[],
        1,
    )?;
    let g = &inst.g;
    let ids = |names: &[&str]| -> Result<Vec<VertexId>> { names.iter().map(|n| g.require(n)).collect() };
    let block = ids(&["a", "b", "c", "d"])?;
    let mut flows = Vec::new();
    for (i, route) in [["s1", "a", "b", "c", "d", "t1"], ["s2", "a", "c", "b", "d", "t2"]]
        .iter()
        .enumerate()
    {
        let (s, t) = inst.pairs[i];
        flows.push(PairFlow {
            s,
            t,
            graph: g.clone(),
            paths: vec![Path::new(g, ids(route)?)?],
            blocks: vec![block.clone()],
        });
    }
    let (s, t) = inst.pairs[2];
    flows.push(PairFlow {
        s,
        t,
        graph: g.clone(),
        paths: Vec::new(),
        blocks: Vec::new(),
    });
    Ok((inst, flows))
}

/// Vertices `u.a.b` for a, b < n: listed by (a, b) on the first path and by (b, a) on
/// the second, so the constraint matrix is the swap permutation. One block per path.
pub struct SwapFixture {
    pub inst: DmcInstance,
    pub first: Vec<VertexId>,
    pub second: Vec<VertexId>,
}

pub fn swap_fixture(n: usize) -> Result<SwapFixture> {
    let name = |a: usize, b: usize| format!("u.{a}.{b}");
    let first: Vec<String> = (0..n).flat_map(|a| (0..n).map(move |b| name(a, b))).collect();
    let second: Vec<String> = (0..n).flat_map(|b| (0..n).map(move |a| name(a, b))).collect();
    let mut arcs = Vec::new();
    for (route, s, t) in [(&first, "s1", "t1"), (&second, "s2", "t2")] {
        let mut prev = s.to_string();
        for v in route.iter().chain([&t.to_string()]) {
            arcs.push((prev.clone(), v.clone()));
            prev = v.clone();
        }
    }
    let arc_refs: Vec<(&str, &str)> = arcs.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
    let inst = three_pair_instance(&arc_refs, &[], 1)?;
    let ids = |names: &[String]| -> Result<Vec<VertexId>> { names.iter().map(|n| inst.g.require(n)).collect() };
    let (first, second) = (ids(&first)?, ids(&second)?);
    Ok(SwapFixture { inst, first, second })
}
