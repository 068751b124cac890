//! Deterministic enumeration helpers shared by the exhaustive searches.

/// Calls `f` on every `r`-subset of `0..n` in lexicographic order; stops early when `f`
/// returns false. Returns false when stopped early.
pub(crate) fn for_each_combination(n: usize, r: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if r > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let mut i = r;
        while i > 0 && idx[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return true;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Subsets of size at most `k`, sizes ascending, each size in lexicographic order.
pub(crate) fn for_each_subset_up_to(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    for r in 0..=k.min(n) {
        if !for_each_combination(n, r, &mut f) {
            return false;
        }
    }
    true
}

pub(crate) fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

pub(crate) fn subsets_up_to(n: usize, k: usize) -> u128 {
    (0..=k.min(n))
        .map(|r| binomial(n, r))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Set partitions of `0..n` as restricted growth strings, in lexicographic order.
pub(crate) fn for_each_set_partition(n: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(pos: usize, n: usize, blocks: usize, rgs: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if pos == n {
            return f(rgs);
        }
        for b in 0..=blocks {
            rgs.push(b);
            let more = if b == blocks { blocks + 1 } else { blocks };
            let go = rec(pos + 1, n, more, rgs, f);
            rgs.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(0, n, 0, &mut Vec::with_capacity(n), &mut f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut count = 0;
        for_each_combination(3, 0, |c| {
            assert!(c.is_empty());
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn set_partitions_count_bell_numbers() {
        for (n, bell) in [(0, 1), (1, 1), (3, 5), (5, 52)] {
            let mut count = 0;
            for_each_set_partition(n, |_| {
                count += 1;
                true
            });
            assert_eq!(count, bell);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(subsets_up_to(4, 2), 11);
    }
}
