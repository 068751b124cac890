use proptest::prelude::*;

use dmcut::gen;
use dmcut::matrixgrid::{
    find_grid_minor, find_rank_division, grid_rank, gridminor_or_contraction, is_grid_minor, is_rank_division,
    verify_d_sequence, verify_matrix_contraction, Division, GridOutcome, Trigraph, ZeroOneMatrix,
};
use dmcut::reductions::swap_matrix;

/// All boundary vectors 0 = b_0 < ... < b_k = n.
fn bounds(n: usize, k: usize) -> Vec<Vec<usize>> {
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
    let mut out = Vec::new();
    rec(n, k, &mut vec![0], &mut out);
    out
}

fn exhaustive_grid_minor(m: &ZeroOneMatrix, k: usize) -> bool {
    let cols = bounds(m.cols(), k);
    bounds(m.rows(), k).into_iter().any(|r| {
        cols.iter()
            .any(|c| (0..k).all(|a| (0..k).all(|b| m.block_has_one(r[a]..r[a + 1], c[b]..c[b + 1]))))
    })
}

fn matrix() -> impl Strategy<Value = ZeroOneMatrix> {
    (1usize..=12, 1usize..=12, any::<u64>(), 0.05f64..0.6).prop_map(|(r, c, seed, d)| gen::random_matrix(seed, r, c, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn grid_minor_search_is_exact(m in matrix(), k in 1usize..=3) {
        let found = if k > m.rows().min(m.cols()) {
            None
        } else {
            find_grid_minor(&m, k).unwrap()
        };
        prop_assert_eq!(found.is_some(), k <= m.rows().min(m.cols()) && exhaustive_grid_minor(&m, k));
        if let Some(d) = found {
            prop_assert!(is_grid_minor(&m, &d));
            prop_assert_eq!(d.row_parts(), k);
            prop_assert_eq!(d.col_parts(), k);
        }
    }

    #[test]
    fn rank_divisions_are_grid_minors(m in matrix()) {
        let r = grid_rank(&m).unwrap();
        prop_assert!(r >= 1);
        for k in 2..=r {
            let d = find_rank_division(&m, k).unwrap().unwrap();
            prop_assert!(is_rank_division(&m, &d, k));
            prop_assert!(is_grid_minor(&m, &d));
        }
        prop_assert!(find_rank_division(&m, r + 1).unwrap().is_none());
    }

    #[test]
    fn contraction_outcomes_verify(m in matrix(), k in 1usize..=3, c in 1usize..=4) {
        prop_assume!(k <= m.rows().min(m.cols()));
        match gridminor_or_contraction(&m, k, c).unwrap() {
            GridOutcome::GridMinor(d) => {
                prop_assert!(is_grid_minor(&m, &d));
                prop_assert_eq!(d.row_parts(), k);
            }
            GridOutcome::Contraction(seq) => {
                prop_assert!(seq.max_pair_load <= 4 * c);
                prop_assert_eq!(verify_matrix_contraction(&m, &seq, c).unwrap(), seq.width);
            }
            GridOutcome::ThresholdTooLow(_) => prop_assert!(!exhaustive_grid_minor(&m, k)),
        }
    }

    #[test]
    fn cliques_contract_with_width_zero(n in 2usize..8, order in proptest::collection::vec(any::<u16>(), 7)) {
        let g = Trigraph::complete(n);
        let mut alive: Vec<usize> = (0..n).collect();
        let mut steps = Vec::new();
        for &o in order.iter().take(n - 1) {
            let j = o as usize % (alive.len() - 1) + 1;
            let v = alive.remove(j);
            steps.push((alive[0], v));
        }
        prop_assert_eq!(verify_d_sequence(&g, &steps).unwrap(), 0);
    }
}

#[test]
fn grid_rank_of_simple_matrices() {
    for n in 1..=9 {
        assert_eq!(grid_rank(&ZeroOneMatrix::ones(n, n).unwrap()).unwrap(), 1);
        assert_eq!(grid_rank(&ZeroOneMatrix::identity(n).unwrap()).unwrap(), 1);
    }
    for n in 2..=3 {
        let m = swap_matrix(n).unwrap();
        assert!(find_grid_minor(&m, n).unwrap().is_some());
    }
    assert!(find_grid_minor(&ZeroOneMatrix::identity(8).unwrap(), 2)
        .unwrap()
        .is_none());
    let d = Division {
        rows: vec![0, 1, 2],
        cols: vec![0, 1, 2],
    };
    assert!(!is_grid_minor(&ZeroOneMatrix::identity(2).unwrap(), &d));
}
