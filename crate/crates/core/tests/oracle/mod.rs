//! Independent reference values computed without the series engine.

#![allow(dead_code)]

/// Partition counts `p(0..=n)` by enumerating partitions into parts `≤ k`.
pub fn partitions_brute(n: usize) -> Vec<u64> {
    fn count(n: usize, max_part: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).map(|k| count(n - k, k)).sum()
    }
    (0..=n).map(|m| count(m, m)).collect()
}

/// Partition counts `p(0..=n)` by the part-by-part dynamic program, used
/// where brute force gets slow.
pub fn partitions_dp(n: usize) -> Vec<u128> {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p
}

/// Coefficients of `Σ_{k∈ℤ} (-1)^k q^{k(3k-1)/2}` below `order`.
pub fn pentagonal(order: usize) -> Vec<i64> {
    let mut out = vec![0i64; order];
    let mut k: i64 = 0;
    loop {
        let mut placed = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = kk * (3 * kk - 1) / 2;
            if (e as usize) < order {
                out[e as usize] += if kk % 2 == 0 { 1 } else { -1 };
                placed = true;
            }
        }
        if !placed {
            break;
        }
        k += 1;
    }
    out
}

pub fn self_convolution(a: &[u128]) -> Vec<u128> {
    (0..a.len())
        .map(|n| (0..=n).map(|k| a[k] * a[n - k]).sum())
        .collect()
}

/// `Π_{k} (1 - q^k)^{-power}` coefficients as repeated convolutions of `p(n)`.
pub fn euler_reciprocal_power(power: usize, order: usize) -> Vec<u128> {
    let p = partitions_dp(order - 1);
    let mut acc = vec![0u128; order];
    acc[0] = 1;
    for _ in 0..power {
        acc = (0..order)
            .map(|n| (0..=n).map(|k| acc[k] * p[n - k]).sum())
            .collect();
    }
    acc
}
