use proptest::prelude::*;

use dmcut::digraph::{
    bypass, enumerate_important_separators, enumerate_minimal_separators, is_separator, max_vertex_flow, reach,
    Digraph, FlowValue, VertexId, VertexSet,
};
use dmcut::gen;

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

/// Random digraph with undeletable terminals v0 and v{n-1}.
fn instance(seed: u64, n: usize, p: f64) -> (Digraph, VertexId, VertexId) {
    let mut rng = gen::rng(seed);
    let mut g = gen::random_digraph(&mut rng, n, p, 0.8);
    let (s, t) = (VertexId(0), VertexId(n as u32 - 1));
    g.set_deletable(s, false);
    g.set_deletable(t, false);
    (g, s, t)
}

fn candidates(g: &Digraph, s: VertexId, t: VertexId) -> Vec<VertexId> {
    g.deletable_vertices()
        .into_iter()
        .filter(|&v| v != s && v != t)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn menger(seed in any::<u64>(), n in 2usize..=9, p in 0.1f64..0.5) {
        let (g, s, t) = instance(seed, n, p);
        let cand = candidates(&g, s, t);
        let best = subsets(&cand).filter(|z| is_separator(&g, s, t, z)).map(|z| z.len()).min();
        let flow = max_vertex_flow(&g, s, t).unwrap();
        prop_assert_eq!(flow.value, best.map_or(FlowValue::Infinite, FlowValue::Finite));
        if let FlowValue::Finite(k) = flow.value {
            prop_assert_eq!(flow.paths.len(), k);
            let mut used = VertexSet::new();
            for p in &flow.paths {
                prop_assert_eq!(p.first(), s);
                prop_assert_eq!(p.last(), t);
                for &v in p.vertices() {
                    if g.is_deletable(v) {
                        prop_assert!(used.insert(v), "paths share a deletable vertex");
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_separators_match_enumeration(seed in any::<u64>(), n in 2usize..=8, p in 0.1f64..0.5, k in 0usize..=3) {
        let (g, s, t) = instance(seed, n, p);
        let cand = candidates(&g, s, t);
        let minimal = |z: &VertexSet| {
            is_separator(&g, s, t, z)
                && z.iter().all(|v| {
                    let mut y = z.clone();
                    y.remove(v);
                    !is_separator(&g, s, t, &y)
                })
        };
        let mut want: Vec<VertexSet> = subsets(&cand).filter(|z| z.len() <= k && minimal(z)).collect();
        want.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        let got = enumerate_minimal_separators(&g, s, t, k).unwrap();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn important_separators_are_minimal_and_few(seed in any::<u64>(), n in 2usize..=8, p in 0.1f64..0.5, k in 0usize..=3) {
        let (g, s, t) = instance(seed, n, p);
        let a: VertexSet = [s].into_iter().collect();
        let b: VertexSet = [t].into_iter().collect();
        let imp = enumerate_important_separators(&g, &a, &b, k).unwrap();
        let minimal = enumerate_minimal_separators(&g, s, t, k).unwrap();
        prop_assert!(imp.len() <= 4usize.pow(k as u32));
        for z in &imp {
            prop_assert!(minimal.contains(z));
            // no separator of at most the same size has a strictly larger source side
            let side = reach(&g, &a, z).unwrap();
            for y in &minimal {
                if y.len() <= z.len() && y != z {
                    let other = reach(&g, &a, y).unwrap();
                    prop_assert!(!(other.is_superset(&side) && other != side));
                }
            }
        }
    }

    #[test]
    fn bypass_preserves_reachability(seed in any::<u64>(), n in 2usize..=9, p in 0.1f64..0.5, mask in any::<u32>()) {
        let mut rng = gen::rng(seed);
        let g = gen::random_digraph(&mut rng, n, p, 1.0);
        let x: VertexSet = g.vertices().filter(|v| mask >> v.0 & 1 == 1).collect();
        let h = bypass(&g, &x).unwrap();
        for u in h.vertices() {
            let from = [u].into_iter().collect();
            let in_h = reach(&h, &from, &VertexSet::new()).unwrap();
            let in_g: VertexSet = reach(&g, &from, &VertexSet::new()).unwrap().into_iter().filter(|v| !x.contains(v)).collect();
            prop_assert_eq!(in_h, in_g);
        }
    }
}
