//! Peak-type statistics on subsets and permutations, and their counts.

use super::{descent_set, IndexSet, Permutation};

/// Left endpoints of the runs of `set`, excluding 1: `{i ∈ I : i >= 2, i-1 ∉ I}`.
///
/// On a descent set this is exactly the peak set of the permutation.
pub fn peak_set_of_subset(set: &IndexSet) -> IndexSet {
    let bits = set.bits() & !(set.bits() << 1) & !1;
    IndexSet::from_bits_unchecked(set.ambient_n(), bits)
}

/// `Peak_p(π)`: the descents `i` with `i <= p-1`, or with some `i-j ∉ Des(π)`
/// for `1 <= j <= p` and `i-j >= 1`.
///
/// Equivalently, `i` is kept when the run of consecutive descents ending at
/// `i`, counted inside `Des(π) ∪ {0}`, has length at most `p`.
pub fn extended_peak_statistic(pi: &Permutation, p: usize) -> IndexSet {
    assert!(p >= 1, "p must be positive");
    let des = descent_set(pi);
    let bits = des
        .iter()
        .filter(|&i| i < p || (1..=p).any(|j| i > j && !des.contains(i - j)))
        .fold(0u64, |acc, i| acc | 1 << (i - 1));
    IndexSet::from_bits_unchecked(des.ambient_n(), bits)
}

/// Lengths of the maximal runs of consecutive integers in `set ∪ {0}`.
fn run_lengths_with_zero(set: &IndexSet) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut current = 1; // the run containing 0
    let mut prev = 0usize;
    for i in set.iter() {
        if i == prev + 1 {
            current += 1;
        } else {
            runs.push(current);
            current = 1;
        }
        prev = i;
    }
    runs.push(current);
    runs
}

/// `I ⊆_p [n-1]`: every maximal run of consecutive integers in `I ∪ {0}` has
/// length at most `p`.
pub fn is_extended_peak_set(set: &IndexSet, p: usize) -> bool {
    run_lengths_with_zero(set).into_iter().all(|len| len <= p)
}

/// All `p`-extended peak sets of `[n-1]` in reverse-lex order.
pub fn enumerate_extended_peak_sets(n: usize, p: usize) -> Vec<IndexSet> {
    IndexSet::all(n).filter(|s| is_extended_peak_set(s, p)).collect()
}

/// `s^{(p)}_n`, by the recurrence `s_n = 2^{n-1}` for `1 <= n <= p`,
/// `s_n = s_{n-1} + ... + s_{n-p-1}` for `n > p`, with `s_0 = 0`.
pub fn count_extended_peak_sets(n: usize, p: usize) -> u128 {
    assert!(p >= 1, "p must be positive");
    let mut s: Vec<u128> = Vec::with_capacity(n + 1);
    s.push(0);
    for k in 1..=n {
        let value = if k <= p {
            1u128 << (k - 1)
        } else {
            (1..=p + 1).filter(|&j| j <= k).map(|j| s[k - j]).sum()
        };
        s.push(value);
    }
    s[n]
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of `v`-element sets `V` with `V ⊆_1 [i+1, i+p]`: no two consecutive
/// members and, since `i` is adjoined as an anchor, never `i+1`. Equals
/// `C(p-v, v)`.
pub fn count_lacunar_subsets(p: usize, v: usize) -> u128 {
    if v > p {
        return 0;
    }
    binomial((p - v) as u64, v as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{canonical_permutation_with_descents, peak_set};
    use proptest::prelude::*;

    fn set(n: usize, m: &[usize]) -> IndexSet {
        IndexSet::new(n, m).unwrap()
    }

    #[test]
    fn extended_statistic_examples() {
        let pi = Permutation::from_digits("54163287").unwrap();
        assert_eq!(extended_peak_statistic(&pi, 1).members(), vec![4, 7]);
        assert_eq!(extended_peak_statistic(&pi, 2).members(), vec![1, 4, 5, 7]);
        assert_eq!(extended_peak_statistic(&pi, 3).members(), vec![1, 2, 4, 5, 7]);
    }

    #[test]
    fn extended_peak_set_examples() {
        assert!(is_extended_peak_set(&set(9, &[4, 8]), 1));
        assert!(is_extended_peak_set(&set(9, &[1, 4, 5, 8]), 2));
        assert!(is_extended_peak_set(&set(9, &[1, 2, 4, 5, 6, 8]), 3));
        assert!(!is_extended_peak_set(&set(9, &[1, 2, 4, 5, 8]), 2));
        for p in 1..5 {
            assert!(is_extended_peak_set(&IndexSet::empty(9), p));
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_extended_peak_sets(4, 1),
            vec![IndexSet::empty(4), set(4, &[2]), set(4, &[3])]
        );
        assert_eq!(enumerate_extended_peak_sets(2, 1), vec![IndexSet::empty(2)]);
        assert_eq!(enumerate_extended_peak_sets(1, 1), vec![IndexSet::empty(1)]);
        assert_eq!(
            enumerate_extended_peak_sets(3, 2),
            vec![IndexSet::empty(3), set(3, &[1]), set(3, &[2])]
        );
    }

    #[test]
    fn count_examples() {
        let fib: Vec<u128> = (1..=7).map(|n| count_extended_peak_sets(n, 1)).collect();
        assert_eq!(fib, vec![1, 1, 2, 3, 5, 8, 13]);
        assert_eq!(count_extended_peak_sets(3, 2), 3);
        assert_eq!(count_extended_peak_sets(3, 3), 4);
        assert_eq!(count_extended_peak_sets(0, 2), 0);
    }

    #[test]
    fn recurrence_matches_enumeration() {
        for p in 1..=5 {
            for n in 1..=16 {
                assert_eq!(
                    count_extended_peak_sets(n, p),
                    enumerate_extended_peak_sets(n, p).len() as u128,
                    "n = {n}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn peak_of_subset_examples() {
        assert_eq!(peak_set_of_subset(&set(4, &[2])).members(), vec![2]);
        assert!(peak_set_of_subset(&set(4, &[1, 2])).is_empty());
        assert_eq!(peak_set_of_subset(&set(4, &[1, 3])).members(), vec![3]);
    }

    #[test]
    fn peak_of_descent_set_is_peak_set() {
        for n in 0..=7 {
            for pi in Permutation::all(n) {
                assert_eq!(peak_set_of_subset(&descent_set(&pi)), peak_set(&pi), "{pi}");
            }
        }
    }

    #[test]
    fn extended_statistic_sandwich_exhaustive() {
        for n in 1..=7 {
            for pi in Permutation::all(n) {
                let peak = peak_set(&pi);
                let des = descent_set(&pi);
                assert_eq!(extended_peak_statistic(&pi, 1), peak);
                for p in 1..=n + 1 {
                    let ext = extended_peak_statistic(&pi, p);
                    assert!(peak.is_subset_of(&ext) && ext.is_subset_of(&des));
                    assert!(is_extended_peak_set(&ext, p), "{pi} p={p}");
                }
                assert_eq!(extended_peak_statistic(&pi, n), des);
            }
        }
    }

    /// Subsets of an interval of length `p` with no two consecutive members;
    /// with `anchored`, the first element is also excluded.
    fn brute_lacunar(p: usize, v: usize, anchored: bool) -> u128 {
        (0u32..1 << p)
            .filter(|&m| m.count_ones() as usize == v)
            .filter(|&m| m & (m >> 1) == 0)
            .filter(|&m| !anchored || m & 1 == 0)
            .count() as u128
    }

    #[test]
    fn lacunar_count_matches_anchored_reading() {
        assert_eq!(count_lacunar_subsets(3, 1), 2);
        assert_eq!(count_lacunar_subsets(0, 0), 1);
        assert_eq!(count_lacunar_subsets(4, 2), 1);
        let mut unanchored_disagrees = false;
        for p in 0..=8 {
            for v in 0..=p {
                assert_eq!(count_lacunar_subsets(p, v), brute_lacunar(p, v, true), "p={p} v={v}");
                unanchored_disagrees |= brute_lacunar(p, v, false) != count_lacunar_subsets(p, v);
            }
        }
        assert!(unanchored_disagrees);
    }

    proptest! {
        #[test]
        fn canonical_permutation_statistics(n in 1usize..10, bits in any::<u64>()) {
            let s = IndexSet::from_bits(n, bits & ((1u64 << (n - 1)) - 1)).unwrap();
            let pi = canonical_permutation_with_descents(n, &s).unwrap();
            prop_assert_eq!(descent_set(&pi), s);
            prop_assert_eq!(peak_set(&pi), peak_set_of_subset(&s));
        }
    }
}
