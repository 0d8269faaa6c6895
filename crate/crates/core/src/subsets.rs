//! k-subsets of `{0, …, N-1}` in lexicographic order of their sorted tuples.
//!
//! This is the one index order used for Plücker coordinates, compound
//! matrices and the letters of `e_n`.

use alloc::vec;
use alloc::vec::Vec;

/// All k-subsets of `0..n`, lexicographically ordered.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 && current[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        current[i - 1] += 1;
        for j in i..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Exact binomial coefficient in `u128`; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Position of a sorted subset in [`k_subsets`] order.
pub fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0usize;
    let mut prev = 0usize;
    for (i, &s) in subset.iter().enumerate() {
        for skipped in prev..s {
            rank += binomial((n - skipped - 1) as u64, (k - i - 1) as u64).unwrap_or(0) as usize;
        }
        prev = s + 1;
    }
    rank
}

/// Indicator vector of a subset.
pub fn indicator(n: usize, subset: &[usize]) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for &s in subset {
        v[s] = 1;
    }
    v
}
