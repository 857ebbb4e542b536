#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use sqdist::Partition;

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det(xI - M)` for an integer matrix `M`.
pub fn char_det_at(m: &[Vec<i64>], x: i64) -> BigInt {
    let n = m.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigInt::from(if i == j { x } else { 0 } - m[i][j]))
                .collect()
        })
        .collect();
    bareiss_det(rows)
}

/// Partitions of `n` into exactly `t` positive parts, by plain recursion.
pub fn brute_partitions(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, slots: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (1..=cap.min(rest)).rev() {
            cur.push(v);
            go(rest - v, slots - 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, t, n, &mut Vec::new(), &mut out);
    out
}

/// Every partition with at least two parts and `n <= n_max`.
pub fn partitions_up_to(n_max: usize) -> Vec<Partition> {
    (2..=n_max)
        .flat_map(|n| (2..=n).flat_map(move |t| brute_partitions(n, t)))
        .map(|parts| Partition::new(&parts).unwrap())
        .collect()
}

pub fn p(s: &str) -> Partition {
    s.parse().unwrap()
}
