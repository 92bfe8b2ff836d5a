use crate::error::{Error, Result};

/// Sign of reordering graded factors `x_1 .. x_n` into `x_{p(1)} .. x_{p(n)}`.
///
/// `permutation` is one-line notation on `{1..n}`; `degrees[k-1]` is the degree of `x_k`.
pub fn koszul_sign(permutation: &[usize], degrees: &[i32]) -> Result<i32> {
    if permutation.len() != degrees.len() {
        return Err(Error::invalid("permutation and degree lengths differ"));
    }
    let n = permutation.len();
    let mut seen = vec![false; n];
    for &p in permutation {
        if p == 0 || p > n || seen[p - 1] {
            return Err(Error::invalid("not a permutation of 1..n"));
        }
        seen[p - 1] = true;
    }
    let zero_based: Vec<usize> = permutation.iter().map(|p| p - 1).collect();
    Ok(reorder_sign(&zero_based, degrees))
}

/// Zero-based variant of [`koszul_sign`] without validation.
pub fn reorder_sign(order: &[usize], degrees: &[i32]) -> i32 {
    let mut odd = 0usize;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] && degrees[order[a]] & 1 != 0 && degrees[order[b]] & 1 != 0 {
                odd += 1;
            }
        }
    }
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Parity sign of a zero-based permutation in one-line notation.
pub fn parity(order: &[usize]) -> i32 {
    let mut inv = 0usize;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sorts `items` by `key` with a stable bubble sort, reporting each adjacent swap position.
pub fn bubble_sort_by_key<T, K: Ord>(items: &mut [T], key: impl Fn(&T) -> K, mut on_swap: impl FnMut(usize)) {
    let n = items.len();
    for pass in 0..n {
        let mut swapped = false;
        for k in 0..n.saturating_sub(1 + pass) {
            if key(&items[k]) > key(&items[k + 1]) {
                items.swap(k, k + 1);
                on_swap(k);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// All subsets of `0..n` as sorted index vectors, by increasing size then lexicographically.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..(1u32 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
