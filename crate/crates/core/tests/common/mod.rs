//! Brute-force reference implementations written straight from the
//! textbook definitions. They never sort, and they return rejected
//! indices in increasing index order.

#![allow(dead_code)]

fn count_le(p: &[f64], t: f64) -> usize {
    p.iter().filter(|&&x| x <= t).count()
}

fn indices_le(p: &[f64], t: f64) -> Vec<usize> {
    (0..p.len()).filter(|&j| p[j] <= t).collect()
}

/// Step-up: the largest `u` with at least `u` p-values at or below `t_u`,
/// then every p-value at or below `t_u`.
pub fn step_up(p: &[f64], t: &[f64]) -> Vec<usize> {
    match (1..=p.len()).rev().find(|&u| count_le(p, t[u - 1]) >= u) {
        Some(u) => indices_le(p, t[u - 1]),
        None => vec![],
    }
}

/// Step-down: the largest `u` such that every `v <= u` has at least `v`
/// p-values at or below `t_v`.
pub fn step_down(p: &[f64], t: &[f64]) -> Vec<usize> {
    let u = (1..=p.len()).take_while(|&v| count_le(p, t[v - 1]) >= v).count();
    if u == 0 {
        vec![]
    } else {
        indices_le(p, t[u - 1])
    }
}

/// Benjamini-Hochberg: reject all `p_j <= k alpha / m` for the largest `k`
/// with at least `k` such p-values.
pub fn benjamini_hochberg(p: &[f64], alpha: f64) -> Vec<usize> {
    let m = p.len();
    match (1..=m).rev().find(|&k| count_le(p, alpha * k as f64 / m as f64) >= k) {
        Some(k) => indices_le(p, alpha * k as f64 / m as f64),
        None => vec![],
    }
}

pub fn bonferroni(p: &[f64], alpha: f64) -> Vec<usize> {
    indices_le(p, alpha / p.len() as f64)
}

/// Single-step k-FWER control: reject `p_j <= k alpha / m`.
pub fn hommel_hoffmann(p: &[f64], k: usize, alpha: f64) -> Vec<usize> {
    indices_le(p, alpha * k as f64 / p.len() as f64)
}

/// Holm: repeatedly reject the smallest remaining p-value while it is at
/// most alpha over the number of hypotheses still in play.
pub fn holm(p: &[f64], alpha: f64) -> Vec<usize> {
    let mut remaining: Vec<usize> = (0..p.len()).collect();
    let mut rejected = Vec::new();
    while !remaining.is_empty() {
        let (pos, &j) = remaining
            .iter()
            .enumerate()
            .min_by(|a, b| p[*a.1].total_cmp(&p[*b.1]))
            .unwrap();
        if p[j] <= alpha / remaining.len() as f64 {
            rejected.push(j);
            remaining.remove(pos);
        } else {
            break;
        }
    }
    rejected.sort_unstable();
    rejected
}

/// Lehmann-Romano FDP-exceedance critical values for `beta = num / den`:
/// `(floor(beta i) + 1) alpha / (m + floor(beta i) + 1 - i)`, the floor
/// taken in integer arithmetic.
pub fn lehmann_romano_fer(m: usize, alpha: f64, num: usize, den: usize) -> Vec<f64> {
    (1..=m)
        .map(|i| {
            let k = num * i / den + 1;
            k as f64 * alpha / (m + k - i) as f64
        })
        .collect()
}

/// Lehmann-Romano k-FWER step-down critical values.
pub fn lehmann_romano_kfwer(m: usize, k: usize, alpha: f64) -> Vec<f64> {
    (1..=m)
        .map(|i| if i <= k { k as f64 * alpha / m as f64 } else { k as f64 * alpha / (m + k - i) as f64 })
        .collect()
}

pub fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}
