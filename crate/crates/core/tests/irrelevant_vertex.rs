use dmcut::digraph::VertexSet;
use dmcut::fixtures::{firing_instance, swap_fixture};
use dmcut::matrixgrid::{find_grid_minor, is_grid_minor, Division, ZeroOneMatrix};
use dmcut::multicut::{brute_force_dmc, is_solution, Guard};
use dmcut::permcsp::solve;
use dmcut::pipeline::{
    build_csp_c1, build_csp_c2, check_irrelevance, constraint_matrix, enumerate_consistency_partitions,
    extract_solution, irrelevant_vertex, reduce_irrelevant, C1Outcome, CertificateReason, ConstraintSide, Irrelevance,
    IrrelevantVertexConfig,
};

/// Every division of an r x c matrix into k x k intervals, by brute force.
fn all_divisions(rows: usize, cols: usize, k: usize) -> Vec<Division> {
    fn bounds(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![0];
        fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                let mut b = cur.clone();
                b.push(n);
                out.push(b);
                return;
            }
            for x in cur[cur.len() - 1] + 1..n {
                cur.push(x);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
        rec(n, k, &mut cur, &mut out);
        out
    }
    let rb = bounds(rows, k);
    let cb = bounds(cols, k);
    rb.iter()
        .flat_map(|r| {
            cb.iter().map(move |c| Division {
                rows: r.clone(),
                cols: c.clone(),
            })
        })
        .collect()
}

#[test]
fn swap_pattern_returns_the_corner_representative() {
    let fx = swap_fixture(4).unwrap();
    let blocks_a = vec![fx.first.clone()];
    let blocks_b = vec![fx.second.clone()];
    let a = ConstraintSide {
        pair: 0,
        path: &fx.first,
        domain: &fx.first,
        blocks: &blocks_a,
    };
    let b = ConstraintSide {
        pair: 1,
        path: &fx.second,
        domain: &fx.second,
        blocks: &blocks_b,
    };
    let m = constraint_matrix(&a, &b).unwrap();
    assert!(all_divisions(16, 16, 4).iter().any(|d| is_grid_minor(&m, d)));
    let cfg = IrrelevantVertexConfig {
        zeta: 1,
        rho: 4,
        brute_check: false,
    };
    let Irrelevance::Vertex(v) = irrelevant_vertex(&fx.inst, &a, &b, &cfg, &Guard::default()).unwrap() else {
        panic!("rule should fire on the swap pattern");
    };
    // one color everywhere, so the (1,1) cell of the first 2-coarsening is the
    // top-left cell of the grid minor, and its first entry in row-major order is taken
    let d = find_grid_minor(&m, 4).unwrap().unwrap();
    let first_entry = d
        .row_range(0)
        .flat_map(|i| d.col_range(0).map(move |j| (i, j)))
        .find(|&(i, j)| m.get(i, j))
        .unwrap();
    assert_eq!(v, fx.first[first_entry.0]);
    assert_eq!(fx.inst.g.name(v), "u.0.0");
}

#[test]
fn identity_gives_a_certificate() {
    let fx = swap_fixture(2).unwrap();
    let blocks = vec![fx.first.clone()];
    let a = ConstraintSide {
        pair: 0,
        path: &fx.first,
        domain: &fx.first,
        blocks: &blocks,
    };
    let b = ConstraintSide { pair: 1, ..a };
    let cfg = IrrelevantVertexConfig {
        zeta: 1,
        rho: 2,
        brute_check: false,
    };
    assert_eq!(constraint_matrix(&a, &b).unwrap(), ZeroOneMatrix::identity(4).unwrap());
    match irrelevant_vertex(&fx.inst, &a, &b, &cfg, &Guard::default()).unwrap() {
        Irrelevance::Certificate(c) => assert_eq!(c.reason, CertificateReason::NoGridMinor),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn firing_fixture_keeps_the_solution() {
    let (inst, flows) = firing_instance().unwrap();
    let d: VertexSet = [inst.g.require("d").unwrap()].into_iter().collect();
    assert_eq!(brute_force_dmc(&inst).unwrap(), Some(d.clone()));

    let C1Outcome::Built(c1) = build_csp_c1(&inst, &flows).unwrap() else {
        panic!("flows fit the budget");
    };
    let pair_of: Vec<usize> = c1.vars.iter().map(|v| v.pair).collect();
    let partitions = enumerate_consistency_partitions(&pair_of, inst.k);
    assert_eq!(partitions, vec![vec![vec![0, 1]]]);
    let c2 = build_csp_c2(&c1, &partitions[0]).unwrap();
    let cfg = IrrelevantVertexConfig {
        zeta: 1,
        rho: 2,
        brute_check: true,
    };
    let (reduced, removed) = reduce_irrelevant(&inst, &c2, &flows, &cfg, &Guard::default())
        .unwrap()
        .expect("domains stay nonempty");
    let a = inst.g.require("a").unwrap();
    assert_eq!(removed, vec![a]);
    for f in 0..reduced.vars.len() {
        assert!(!reduced.domain(f).contains(&a));
    }
    let side = |f: usize| (flows[f].blocks.clone(), c2.paths[f].clone(), c2.domain(f));
    let ((ba, pa, da), (bb, pb, db)) = (side(0), side(1));
    let sa = ConstraintSide {
        pair: 0,
        path: &pa,
        domain: &da,
        blocks: &ba,
    };
    let sb = ConstraintSide {
        pair: 1,
        path: &pb,
        domain: &db,
        blocks: &bb,
    };
    assert!(check_irrelevance(&inst, a, &sa, &sb, &Guard::default()).unwrap());

    let alpha = solve(&reduced.csp).expect("still satisfiable");
    let s = extract_solution(&reduced, &alpha);
    assert!(is_solution(&inst, &s).unwrap());
    assert_eq!(s, d);
}
