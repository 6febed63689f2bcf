//! Small enumerators used across the crate: compositions, set partitions,
//! permutations and counting helpers.

use num_integer::binomial as nbinom;

/// All compositions of `n` (ordered tuples of positive parts summing to `n`).
/// The empty composition is the only composition of 0.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for first in 1..=rest {
            cur.push(first);
            rec(rest - first, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

/// Compositions of `n` into exactly `k` positive parts.
pub fn compositions_into(n: usize, k: usize) -> Vec<Vec<usize>> {
    compositions(n)
        .into_iter()
        .filter(|c| c.len() == k)
        .collect()
}

/// Weak compositions of `n` into exactly `k` non-negative parts.
pub fn weak_compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for first in 0..=rest {
            cur.push(first);
            rec(rest - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, &mut cur, &mut out);
    out
}

/// Set partitions of `{0..n}` as restricted growth strings: entry `i` is the
/// block index of element `i`, and block indices appear in increasing order.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, blocks: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            rec(n, blocks.max(b + 1), cur, out);
            cur.pop();
        }
    }
    rec(n, 0, &mut cur, &mut out);
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        0
    } else {
        nbinom(n, k)
    }
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Number of surjections from an `n`-set onto a `k`-set, by inclusion-exclusion.
pub fn surjections(n: u64, k: u64) -> u64 {
    let mut total: i128 = 0;
    for j in 0..=k {
        let term = i128::from(binomial(k, j)) * i128::from(k - j).pow(n as u32);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u64
}
