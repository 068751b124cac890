//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the libtest harness.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use dmcut::digraph::{enumerate_minimal_separators, is_separator, max_vertex_flow, FlowValue, VertexId, VertexSet};
use dmcut::fixtures::firing_instance;
use dmcut::flowaug::{
    augment_exhaustive, is_compatible_vertex, verify_augmentation, verify_soybean_partition, AugmentParams,
};
use dmcut::gen::{self, DmcParams};
use dmcut::matrixgrid::{
    find_grid_minor, grid_rank, gridminor_or_contraction, is_grid_minor, verify_matrix_contraction, GridOutcome,
    ZeroOneMatrix,
};
use dmcut::multicut::{
    brute_force_dmc, brute_force_wdmc_guarded, enumerate_minimal_solutions, enumerate_shadowless_solutions,
    is_solution, DmcInstance, Guard,
};
use dmcut::permcsp::{
    brute_force_csp, build_fo_encoding, for_each_solution, solve, Constraint, ConstraintKind, OrderedDomain,
    PermCspInstance, Value,
};
use dmcut::pipeline::{
    build_csp_c1, build_csp_c2, check_irrelevance, complying_partition, enumerate_consistency_partitions,
    extract_solution, irrelevant_vertex, pair_flows, reduce_irrelevant, run_pipeline, C1Outcome, ConstraintSide,
    CspEncoding, Irrelevance, IrrelevantVertexConfig, PairFlow, PipelineConfig,
};
use dmcut::reductions::{
    brute_force_clique, brute_force_psi, clique_to_permcsp, is_clique_selection, psi_to_wdmc, swap_matrix,
};
use dmcut::shadowrm::{apply_family, oracle_family};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn params(seed: u64) -> DmcParams {
    DmcParams {
        n: 5 + (seed % 6) as usize,
        k: 1 + (seed % 3) as usize,
        ..DmcParams::default()
    }
}

fn corpus(count: u64) -> impl Iterator<Item = (u64, DmcInstance)> {
    (0..count).map(|seed| (seed, gen::random_dmc(seed, params(seed))))
}

/// Instances whose pair-1 and pair-2 flows cross on shared vertices.
fn crossing(count: u64) -> impl Iterator<Item = (u64, DmcInstance)> {
    (0..count).map(|seed| {
        let inst = gen::random_crossing_dmc(
            seed,
            4 + (seed % 4) as usize,
            (seed % 3) as usize,
            2 + (seed / 4 % 2) as usize,
        );
        (1000 + seed, inst)
    })
}

fn subsets(items: &[VertexId]) -> impl Iterator<Item = VertexSet> + '_ {
    (0u32..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

fn c1_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut yes = 0;
    for (seed, inst) in corpus(200).chain(crossing(60)) {
        let want = brute_force_dmc(&inst).map_err(e)?;
        let report = run_pipeline(&inst, &PipelineConfig::default(), seed).map_err(e)?;
        check(report.solution.is_some() == want.is_some(), || {
            format!("seed {seed}: verdicts differ")
        })?;
        if let Some(s) = &report.solution {
            check(s.len() <= inst.k && is_solution(&inst, s).map_err(e)?, || {
                format!("seed {seed}: invalid solution")
            })?;
            yes += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 300.0, || format!("took {secs:.1}s"))?;
    Ok(format!("200 random + 60 crossing instances, {yes} yes"))
}

fn c2_menger() -> Outcome {
    for seed in 0..500u64 {
        let mut rng = gen::rng(seed);
        let n = 2 + (seed % 9) as usize;
        let mut g = gen::random_digraph(&mut rng, n, 0.15 + (seed % 4) as f64 * 0.1, 0.85);
        let (s, t) = (VertexId(0), VertexId(n as u32 - 1));
        g.set_deletable(s, false);
        g.set_deletable(t, false);
        let cand: Vec<VertexId> = g.deletable_vertices();
        let best = subsets(&cand)
            .filter(|z| is_separator(&g, s, t, z))
            .map(|z| z.len())
            .min();
        let flow = max_vertex_flow(&g, s, t).map_err(e)?.value;
        check(flow == best.map_or(FlowValue::Infinite, FlowValue::Finite), || {
            format!("seed {seed}: flow {flow} vs separator {best:?}")
        })?;
    }
    Ok("500 digraphs".into())
}

fn c3_shadow_removal() -> Outcome {
    let mut yes = 0;
    for (seed, inst) in corpus(200) {
        if brute_force_dmc(&inst).map_err(e)?.is_none() {
            continue;
        }
        yes += 1;
        let family = oracle_family(&inst, &Guard::default()).map_err(e)?;
        let mut covered = false;
        for b in apply_family(&inst, &family).map_err(e)? {
            if enumerate_shadowless_solutions(&b)
                .map_err(e)?
                .iter()
                .any(|s| s.len() <= b.k)
            {
                covered = true;
                break;
            }
        }
        check(covered, || {
            format!("seed {seed}: no bypassed instance has a shadowless solution")
        })?;
    }
    Ok(format!("{yes} yes-instances covered"))
}

fn c4_augmentation() -> Outcome {
    let mut count = 0;
    for (seed, inst) in corpus(120) {
        for (i, &(s, t)) in inst.pairs.iter().enumerate() {
            for (z, aug) in augment_exhaustive(&inst.g, s, t, AugmentParams::new(inst.k)).map_err(e)? {
                count += 1;
                let at = || format!("seed {seed} pair {i} z {z:?}");
                check(
                    is_compatible_vertex(&inst.g, &aug.added_arcs, &z, s, t).map_err(e)?,
                    || at() + ": incompatible",
                )?;
                check(aug.flow.value == FlowValue::Finite(z.len()), || at() + ": flow value")?;
                check(
                    aug.flow
                        .paths
                        .iter()
                        .all(|p| p.vertices().iter().filter(|v| z.contains(v)).count() == 1),
                    || at() + ": path meets z more than once",
                )?;
                check(verify_soybean_partition(&inst.g, &aug, 2, 1), || at() + ": soybeans")?;
                verify_augmentation(&inst.g, s, t, &z, &aug)
                    .map_err(e)?
                    .map_err(|m| at() + ": " + &m)?;
            }
        }
    }
    Ok(format!("{count} augmentations"))
}

/// Separators and flows of one pair, keyed by separator.
fn flows_by_separator(b: &DmcInstance, i: usize) -> dmcut::Result<BTreeMap<VertexSet, PairFlow>> {
    Ok(pair_flows(b, i, &PipelineConfig::default())?.into_iter().collect())
}

fn c1_of(b: &DmcInstance, flows: &[PairFlow]) -> dmcut::Result<Option<CspEncoding>> {
    Ok(match build_csp_c1(b, flows)? {
        C1Outcome::Built(c) => Some(c),
        C1Outcome::FlowOverflow { .. } => None,
    })
}

fn c5_encoding() -> Outcome {
    let (mut c1_solutions, mut complying, mut c2_solutions) = (0, 0, 0);
    for (seed, inst) in corpus(200).chain(crossing(60)) {
        let family = oracle_family(&inst, &Guard::default()).map_err(e)?;
        for b in apply_family(&inst, &family).map_err(e)? {
            let per_pair: Vec<BTreeMap<VertexSet, PairFlow>> = (0..3)
                .map(|i| flows_by_separator(&b, i))
                .collect::<dmcut::Result<_>>()
                .map_err(e)?;
            // (a) and (c) on every triple
            for (z0, f0) in &per_pair[0] {
                for (z1, f1) in &per_pair[1] {
                    for (z2, f2) in &per_pair[2] {
                        let flows = vec![f0.clone(), f1.clone(), f2.clone()];
                        let Some(c1) = c1_of(&b, &flows).map_err(e)? else {
                            continue;
                        };
                        let mut bad = None;
                        let mut seen = 0;
                        for_each_solution(&c1.csp, |alpha| {
                            seen += 1;
                            for (i, f) in flows.iter().enumerate() {
                                let cut: VertexSet = c1
                                    .vars
                                    .iter()
                                    .filter(|v| v.pair == i)
                                    .map(|v| VertexId(alpha[v.forward] as u32))
                                    .collect();
                                if !f.paths.is_empty() && !is_separator(&f.graph, f.s, f.t, &cut) {
                                    bad = Some(i);
                                }
                            }
                            bad.is_none() && seen < 40
                        });
                        c1_solutions += seen;
                        check(bad.is_none(), || {
                            format!("seed {seed}: C1 solution is no separator of pair {bad:?} ({z0:?} {z1:?} {z2:?})")
                        })?;
                        let pair_of: Vec<usize> = c1.vars.iter().map(|v| v.pair).collect();
                        for part in enumerate_consistency_partitions(&pair_of, b.k).iter().take(6) {
                            let c2 = build_csp_c2(&c1, part).map_err(e)?;
                            if let Some(alpha) = solve(&c2.csp) {
                                c2_solutions += 1;
                                let s = extract_solution(&c2, &alpha);
                                check(s.len() <= b.k, || format!("seed {seed}: extracted {} > k", s.len()))?;
                            }
                        }
                    }
                }
            }
            // (b) from every brute-force solution
            for sol in enumerate_minimal_solutions(&b, &Guard::default()).map_err(e)? {
                let zs: Vec<Vec<VertexSet>> = (0..3)
                    .map(|i| {
                        let (s, t) = b.pairs[i];
                        enumerate_minimal_separators(&b.g, s, t, b.k)
                            .map(|v| v.into_iter().filter(|z| z.is_subset(&sol)).collect())
                    })
                    .collect::<dmcut::Result<_>>()
                    .map_err(e)?;
                for z0 in &zs[0] {
                    for z1 in &zs[1] {
                        for z2 in &zs[2] {
                            let z = [z0.clone(), z1.clone(), z2.clone()];
                            let flows: Vec<PairFlow> = (0..3).map(|i| per_pair[i][&z[i]].clone()).collect();
                            let c1 = c1_of(&b, &flows)
                                .map_err(e)?
                                .ok_or_else(|| format!("seed {seed}: flow overflow"))?;
                            let part = complying_partition(&c1, &z)
                                .ok_or_else(|| format!("seed {seed}: no complying partition"))?;
                            let pair_of: Vec<usize> = c1.vars.iter().map(|v| v.pair).collect();
                            check(enumerate_consistency_partitions(&pair_of, b.k).contains(&part), || {
                                format!("seed {seed}: complying partition not enumerated")
                            })?;
                            let c2 = build_csp_c2(&c1, &part).map_err(e)?;
                            let alpha =
                                solve(&c2.csp).ok_or_else(|| format!("seed {seed}: C2 unsatisfiable for {sol:?}"))?;
                            check(extract_solution(&c2, &alpha).len() <= b.k, || {
                                format!("seed {seed}: extraction too large")
                            })?;
                            complying += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{c1_solutions} C1 valuations, {complying} complying partitions, {c2_solutions} C2 solutions"
    ))
}

fn exhaustive_grid_minor(m: &ZeroOneMatrix, k: usize) -> bool {
    fn bounds(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            let mut b = cur.clone();
            b.push(n);
            out.push(b);
            return;
        }
        for x in cur[cur.len() - 1] + 1..n {
            cur.push(x);
            bounds(n, k, cur, out);
            cur.pop();
        }
    }
    let (mut rows, mut cols) = (Vec::new(), Vec::new());
    bounds(m.rows(), k, &mut vec![0], &mut rows);
    bounds(m.cols(), k, &mut vec![0], &mut cols);
    rows.iter().any(|r| {
        cols.iter()
            .any(|c| (0..k).all(|a| (0..k).all(|b| m.block_has_one(r[a]..r[a + 1], c[b]..c[b + 1]))))
    })
}

fn c6_matrices() -> Outcome {
    let mut contractions = 0;
    for seed in 0..300u64 {
        let (r, c) = (1 + (seed % 12) as usize, 1 + (seed / 12 % 12) as usize);
        let m = gen::random_matrix(seed, r, c, 0.05 + (seed % 7) as f64 * 0.08);
        for k in 1..=3.min(r.min(c)) {
            let found = find_grid_minor(&m, k).map_err(e)?;
            check(found.is_some() == exhaustive_grid_minor(&m, k), || {
                format!("seed {seed} k {k}: search disagrees")
            })?;
            if let Some(d) = &found {
                check(is_grid_minor(&m, d), || format!("seed {seed}: bad division"))?;
            }
            let cbound = 1 + (seed % 3) as usize;
            match gridminor_or_contraction(&m, k, cbound).map_err(e)? {
                GridOutcome::GridMinor(d) => check(is_grid_minor(&m, &d), || format!("seed {seed}: bad minor"))?,
                GridOutcome::Contraction(seq) => {
                    contractions += 1;
                    check(seq.max_pair_load <= 4 * cbound, || format!("seed {seed}: load"))?;
                    check(
                        verify_matrix_contraction(&m, &seq, cbound).map_err(e)? == seq.width,
                        || format!("seed {seed}: width"),
                    )?;
                }
                GridOutcome::ThresholdTooLow(_) => check(found.is_none(), || {
                    format!("seed {seed}: threshold outcome despite a minor")
                })?,
            }
        }
    }
    for n in 1..=10 {
        check(
            grid_rank(&ZeroOneMatrix::ones(n, n).map_err(e)?).map_err(e)? == 1,
            || format!("ones {n}"),
        )?;
        check(
            grid_rank(&ZeroOneMatrix::identity(n).map_err(e)?).map_err(e)? == 1,
            || format!("identity {n}"),
        )?;
    }
    check(
        find_grid_minor(&swap_matrix(3).map_err(e)?, 3).map_err(e)?.is_some(),
        || "swap n=3".into(),
    )?;
    Ok(format!("300 matrices, {contractions} contraction sequences"))
}

fn c7_boundary() -> Outcome {
    let mut max = (0, 0);
    for seed in 0..100u64 {
        let mut rng = gen::rng(seed);
        let (h, w) = (1 + (seed % 9) as usize, 1 + (seed / 9 % 9) as usize);
        let r = gen::random_downclosed(&mut rng, h, w);
        let di = OrderedDomain::new((0..h as Value).collect()).map_err(e)?;
        let dj = OrderedDomain::new((0..w as Value).map(|v| 100 + v).collect()).map_err(e)?;
        let mut inst = PermCspInstance::new(vec![di, dj]);
        inst.push(Constraint {
            i: 0,
            j: 1,
            kind: ConstraintKind::Downclosed(r),
        })
        .map_err(e)?;
        let enc = build_fo_encoding(&inst);
        let cell = grid_rank(&enc.block(0, 0, 1).map_err(e)?).map_err(e)?;
        let padded = grid_rank(&enc.adjacency(0).map_err(e)?).map_err(e)?;
        check(cell <= 1 && padded <= 3, || {
            format!("seed {seed}: ranks {cell} / {padded}")
        })?;
        max = (max.0.max(cell), max.1.max(padded));
    }
    Ok(format!("100 relations, max ranks {} / {}", max.0, max.1))
}

fn c8_csp() -> Outcome {
    let mut sat = 0;
    for seed in 0..300u64 {
        let inst = gen::random_csp(seed, 6, 8, 6);
        let want = brute_force_csp(&inst).map_err(e)?;
        let got = solve(&inst);
        check(got.is_some() == want.is_some(), || {
            format!("seed {seed}: verdicts differ")
        })?;
        if let Some(a) = got {
            check(dmcut::permcsp::is_satisfied(&inst, &a).map_err(e)?, || {
                format!("seed {seed}: bad valuation")
            })?;
            sat += 1;
        }
    }
    Ok(format!("300 instances, {sat} satisfiable"))
}

fn c9_irrelevant_vertex() -> Outcome {
    let cfg = IrrelevantVertexConfig {
        zeta: 1,
        rho: 2,
        brute_check: true,
    };
    let (mut fired, mut raw) = (0, 0);
    for (seed, inst) in corpus(80).chain(crossing(60)) {
        let family = oracle_family(&inst, &Guard::default()).map_err(e)?;
        for b in apply_family(&inst, &family).map_err(e)? {
            let per_pair: Vec<Vec<(VertexSet, PairFlow)>> = (0..3)
                .map(|i| pair_flows(&b, i, &PipelineConfig::default()))
                .collect::<dmcut::Result<_>>()
                .map_err(e)?;
            for x in per_pair[0].iter().take(2) {
                for y in per_pair[1].iter().take(2) {
                    for z in per_pair[2].iter().take(2) {
                        let flows = vec![x.1.clone(), y.1.clone(), z.1.clone()];
                        let Some(c1) = c1_of(&b, &flows).map_err(e)? else {
                            continue;
                        };
                        let pair_of: Vec<usize> = c1.vars.iter().map(|v| v.pair).collect();
                        for part in enumerate_consistency_partitions(&pair_of, b.k).iter().take(4) {
                            let c2 = build_csp_c2(&c1, part).map_err(e)?;
                            for &(fa, fb, _) in &c2.consistency {
                                let (pa, pb) = (c2.vars[fa].pair, c2.vars[fb].pair);
                                if pa == pb {
                                    continue;
                                }
                                let (da, db) = (c2.domain(fa), c2.domain(fb));
                                let sa = ConstraintSide {
                                    pair: pa,
                                    path: &c2.paths[fa],
                                    domain: &da,
                                    blocks: &flows[pa].blocks,
                                };
                                let sb = ConstraintSide {
                                    pair: pb,
                                    path: &c2.paths[fb],
                                    domain: &db,
                                    blocks: &flows[pb].blocks,
                                };
                                let unchecked = IrrelevantVertexConfig {
                                    brute_check: false,
                                    ..cfg
                                };
                                if let Irrelevance::Vertex(_) =
                                    irrelevant_vertex(&b, &sa, &sb, &unchecked, &Guard::default()).map_err(e)?
                                {
                                    raw += 1;
                                }
                                if let Irrelevance::Vertex(v) =
                                    irrelevant_vertex(&b, &sa, &sb, &cfg, &Guard::default()).map_err(e)?
                                {
                                    fired += 1;
                                    check(
                                        check_irrelevance(&b, v, &sa, &sb, &Guard::default()).map_err(e)?,
                                        || format!("seed {seed}: returned vertex is relevant"),
                                    )?;
                                }
                            }
                        }
                    }
                }
            }
        }
        // satisfiability survives the rule end to end
        let pcfg = PipelineConfig {
            irrelevant: cfg,
            ..PipelineConfig::default()
        };
        let got = run_pipeline(&inst, &pcfg, seed).map_err(e)?.solution.is_some();
        check(got == brute_force_dmc(&inst).map_err(e)?.is_some(), || {
            format!("seed {seed}: verdict changed")
        })?;
    }
    // engineered fixture: the rule must fire and keep {d}
    let (inst, flows) = firing_instance().map_err(e)?;
    let c1 = c1_of(&inst, &flows).map_err(e)?.ok_or("fixture overflows")?;
    let pair_of: Vec<usize> = c1.vars.iter().map(|v| v.pair).collect();
    let part = enumerate_consistency_partitions(&pair_of, inst.k)
        .into_iter()
        .next()
        .ok_or("no partition")?;
    let c2 = build_csp_c2(&c1, &part).map_err(e)?;
    let (reduced, removed) = reduce_irrelevant(&inst, &c2, &flows, &cfg, &Guard::default())
        .map_err(e)?
        .ok_or("domains ran empty")?;
    let a = inst.g.require("a").map_err(e)?;
    check(removed == vec![a], || format!("fixture removed {removed:?}"))?;
    let alpha = solve(&reduced.csp).ok_or("fixture lost satisfiability")?;
    let s = extract_solution(&reduced, &alpha);
    check(
        is_solution(&inst, &s).map_err(e)? && s == [inst.g.require("d").map_err(e)?].into(),
        || "fixture solution".into(),
    )?;
    Ok(format!(
        "{fired} confirmed firings ({raw} unconfirmed candidates), fixture fires on a"
    ))
}

fn c10_psi() -> Outcome {
    let mut yes = 0;
    for seed in 0..100u64 {
        let psi = gen::random_psi(seed, 3, 0.4);
        let red = psi_to_wdmc(&psi).map_err(e)?;
        let phi = brute_force_psi(&psi).map_err(e)?;
        let cut = brute_force_wdmc_guarded(&red.wdmc, &Guard::unlimited()).map_err(e)?;
        check(phi.is_some() == cut.is_some(), || {
            format!("seed {seed}: verdicts differ")
        })?;
        let want_w = red.m * (2 * red.k as u64 * (red.n as u64 + 1) + red.h as u64) + red.k as u64;
        check(red.w == want_w, || format!("seed {seed}: W"))?;
        if let Some(phi) = phi {
            yes += 1;
            let s = red.map_solution(&phi).map_err(e)?;
            check(s.len() == 5 * red.k + red.h, || {
                format!("seed {seed}: |S| = {}", s.len())
            })?;
            check(red.wdmc.weight_of(&s) == red.w, || {
                format!("seed {seed}: weight {}", red.wdmc.weight_of(&s))
            })?;
            check(red.wdmc.is_solution(&s).map_err(e)?, || {
                format!("seed {seed}: mapped set is no solution")
            })?;
            check(red.extract_solution(&s).map_err(e)? == phi, || {
                format!("seed {seed}: round trip")
            })?;
        }
        if let Some(s) = cut {
            let back = red.extract_solution(&s).map_err(e)?;
            check(dmcut::reductions::is_psi_homomorphism(&psi, &back).map_err(e)?, || {
                format!("seed {seed}: extraction")
            })?;
        }
    }
    Ok(format!("100 instances, {yes} yes"))
}

fn c11_clique() -> Outcome {
    let mut count = 0;
    let mut yes = 0;
    for k in 1..=3 {
        for n in 1..=4 {
            for seed in 0..12u64 {
                let cl = gen::random_clique(seed * 31 + (k * 5 + n) as u64, k, n, 0.3 + 0.1 * (seed % 5) as f64);
                let want = brute_force_clique(&cl).map_err(e)?;
                let enc = clique_to_permcsp(&cl).map_err(e)?;
                let got = solve(&enc.csp);
                check(want.is_some() == got.is_some(), || {
                    format!("k {k} n {n} seed {seed}: verdicts differ")
                })?;
                if let Some(a) = got {
                    check(is_clique_selection(&cl, &enc.selection(&a)).map_err(e)?, || {
                        "bad selection".into()
                    })?;
                    yes += 1;
                }
                count += 1;
            }
        }
    }
    for n in 2..=3 {
        check(
            find_grid_minor(&swap_matrix(n).map_err(e)?, n).map_err(e)?.is_some(),
            || format!("swap {n}"),
        )?;
    }
    Ok(format!("{count} instances, {yes} yes, swap minors for n = 2, 3"))
}

fn run_cli(args: &[&str]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_dmcut"))
        .args(args)
        .output()
        .expect("run dmcut");
    (out.stdout, out.status.code())
}

fn c12_determinism() -> Outcome {
    let dir: PathBuf = std::env::temp_dir().join(format!("dmcut-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(e)?;
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let write = |name: &str, args: &[&str]| -> Result<(), String> {
        let (out, code) = run_cli(args);
        check(code == Some(0), || format!("{args:?} exited {code:?}"))?;
        std::fs::write(Path::new(&path(name)), out).map_err(e)
    };
    write("d.json", &["gen", "dmc", "--seed", "11"])?;
    write("p.json", &["gen", "psi", "--seed", "4"])?;
    write("c.json", &["gen", "clique", "--seed", "2"])?;
    write("q.json", &["gen", "csp", "--seed", "9"])?;
    write("m.txt", &["gen", "matrix", "--seed", "3"])?;
    let (d, p, c, q, m) = (
        path("d.json"),
        path("p.json"),
        path("c.json"),
        path("q.json"),
        path("m.txt"),
    );
    let runs: Vec<Vec<&str>> = vec![
        vec!["gen", "dmc", "--seed", "11"],
        vec!["solve", &d],
        vec!["solve", &d, "--shadow", "randomized", "--seed", "5"],
        vec!["solve", &d, "--strategy", "brute"],
        vec!["oracle", &d],
        vec!["shadowrm", &d, "--strategy", "randomized", "--seed", "7"],
        vec!["shadowrm", &d],
        vec!["reduce", "psi2wdmc", &p],
        vec!["reduce", "clique2csp", &c],
        vec!["csp", "solve", &q],
        vec![
            "matrix",
            "analyze",
            &m,
            "--grid-minor",
            "2",
            "--grid-rank",
            "--contract",
            "2",
        ],
        vec!["verify", "reduction", &p],
        vec!["gen", "matrix", "--seed", "3"],
    ];
    for args in &runs {
        let first = run_cli(args);
        let second = run_cli(args);
        check(first == second, || format!("{args:?} differs between runs"))?;
        check(matches!(first.1, Some(0) | Some(1)), || {
            format!("{args:?} exited {:?}", first.1)
        })?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} subcommand runs byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("oracle equivalence", c1_oracle_equivalence),
        ("menger", c2_menger),
        ("shadow removal", c3_shadow_removal),
        ("flow augmentation", c4_augmentation),
        ("csp encoding", c5_encoding),
        ("matrices", c6_matrices),
        ("downclosed boundary", c7_boundary),
        ("permutation csp solver", c8_csp),
        ("irrelevant vertex", c9_irrelevant_vertex),
        ("psi reduction", c10_psi),
        ("clique reduction", c11_clique),
        ("determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
