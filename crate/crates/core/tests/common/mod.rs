//! Independent reference computations. Nothing here calls the library's
//! enumeration or transfer code.

#![allow(dead_code)]

/// Lower-ideal counts by size, by checking every subset against the covers.
pub fn ideal_counts(n: usize, covers: &[(usize, usize)]) -> Vec<u64> {
    assert!(n <= 22, "subset oracle is exponential");
    let mut out = vec![0u64; n + 1];
    for mask in 0u64..(1u64 << n) {
        if covers
            .iter()
            .all(|&(lo, hi)| mask >> hi & 1 == 0 || mask >> lo & 1 == 1)
        {
            out[mask.count_ones() as usize] += 1;
        }
    }
    out
}

/// Rank matrix entries of an oriented poset as coefficient vectors,
/// `[[xR in I], [xR not in I]], [[xR in, xL not in], [xR, xL not in]]`.
pub fn rank_matrix_counts(
    n: usize,
    covers: &[(usize, usize)],
    left: usize,
    right: usize,
) -> [[Vec<u64>; 2]; 2] {
    let mut m: [[Vec<u64>; 2]; 2] = Default::default();
    for row in m.iter_mut() {
        for e in row.iter_mut() {
            *e = vec![0; n + 1];
        }
    }
    for mask in 0u64..(1u64 << n) {
        if !covers
            .iter()
            .all(|&(lo, hi)| mask >> hi & 1 == 0 || mask >> lo & 1 == 1)
        {
            continue;
        }
        let size = mask.count_ones() as usize;
        let r = mask >> right & 1 == 1;
        let l = mask >> left & 1 == 1;
        if r {
            m[0][0][size] += 1;
        } else {
            m[0][1][size] += 1;
        }
        if r && !l {
            m[1][0][size] += 1;
        }
        if !r && !l {
            m[1][1][size] += 1;
        }
    }
    m
}

/// Visits every integer point of the box `prod [0, hi_i]`.
pub fn odometer(hi: &[i64], mut f: impl FnMut(&[i64])) {
    let mut x = vec![0i64; hi.len()];
    loop {
        f(&x);
        let mut i = 0;
        loop {
            if i == x.len() {
                return;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

pub fn in_chainlink(a: &[i64], l: i64, x: &[i64]) -> bool {
    let s = a.len();
    (0..s).all(|i| x[i] >= 0 && x[i] <= a[i] && x[i] - x[(i + 1) % s] <= a[i] - l)
}

/// Integer points of `CL(a, l)` grouped by coordinate sum.
pub fn chainlink_counts(a: &[i64], l: i64) -> Vec<u64> {
    let mut out = vec![0u64; a.iter().sum::<i64>() as usize + 1];
    odometer(a, |x| {
        if in_chainlink(a, l, x) {
            out[x.iter().sum::<i64>() as usize] += 1;
        }
    });
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// `#(CL^{kt}(k a, k l) ∩ Z^s)`.
pub fn dilated_section(a: &[i64], l: i64, t: i64, k: i64) -> u64 {
    let ka: Vec<i64> = a.iter().map(|v| v * k).collect();
    let mut n = 0;
    odometer(&ka, |x| {
        if x.iter().sum::<i64>() == k * t && in_chainlink(&ka, k * l, x) {
            n += 1;
        }
    });
    n
}

/// `[n choose k]_q` by summing `q^{Σ(S) - k(k-1)/2}` over `k`-subsets `S`.
pub fn gaussian_by_subsets(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return vec![];
    }
    let mut out = vec![0u64; k * (n - k) + 1];
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let sum: usize = (0..n).filter(|&i| mask >> i & 1 == 1).sum();
        out[sum - k * (k.saturating_sub(1)) / 2] += 1;
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Area of `CL((a1, a2), l)` for `2l ≤ min`: the rectangle minus two
/// corner triangles with legs `l`.
pub fn two_part_area(a1: i64, a2: i64, l: i64) -> i64 {
    a1 * a2 - l * l
}

/// Circular fence rank counts from the zigzag definition: nodes `0..n`,
/// walking the runs of `c` (up, down, up, ...) around a cycle.
pub fn circular_fence_counts(c: &[usize]) -> Vec<u64> {
    let n: usize = c.iter().sum();
    let mut covers = Vec::new();
    let mut node = 0usize;
    for (i, &run) in c.iter().enumerate() {
        for _ in 0..run {
            let next = (node + 1) % n;
            if i % 2 == 0 {
                covers.push((node, next));
            } else {
                covers.push((next, node));
            }
            node = next;
        }
    }
    let mut counts = ideal_counts(n, &covers);
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

/// Integer coefficients of a library polynomial.
pub fn coeffs_u64(p: &chainlink::QPoly) -> Vec<u64> {
    use num_traits::ToPrimitive;
    p.coeffs()
        .iter()
        .map(|c| c.to_u64().expect("nonnegative count"))
        .collect()
}
