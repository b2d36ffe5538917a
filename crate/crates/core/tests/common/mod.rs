//! Independent oracles for the integration tests.
//!
//! None of these go through the library's lattice bases, Gram matrices or
//! enumerators: lattice vectors are found by scanning raw power-basis
//! coefficients, and norms come from the complex embeddings.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

/// `⟨x, x⟩ = Tr(x x̄)/p` for `x = Σ a_t ζ^t`, via the `p - 1` complex embeddings.
pub fn embedding_norm(p: u32, a: &[i64]) -> f64 {
    (1..p)
        .map(|l| {
            let (mut re, mut im) = (0.0, 0.0);
            for (t, &c) in a.iter().enumerate() {
                let ang = 2.0 * PI * (l as f64) * (t as f64) / p as f64;
                re += c as f64 * ang.cos();
                im += c as f64 * ang.sin();
            }
            re * re + im * im
        })
        .sum::<f64>()
        / p as f64
}

/// Count vectors `x ∈ Z[ζ_p]^n` with `x mod (1-ζ) ∈ words` and `⟨x,x⟩ ≤ max_norm`,
/// keyed by `p·⟨x,x⟩`.
///
/// Each coordinate satisfies `⟨x_k, x_k⟩ ≥ Σ a_t² / p`, so scanning
/// `|a_t| ≤ sqrt(p · max_norm)` is exhaustive.
pub fn box_theta(p: u32, n: usize, words: &BTreeSet<Vec<u32>>, max_norm: i64) -> BTreeMap<i64, u64> {
    let w = p as usize - 1;
    let radius = ((p as i64 * max_norm) as f64).sqrt().floor() as i64;
    let limit = p as i64 * max_norm;

    // Per-coordinate table: (class, p·norm) for every coefficient vector in the box.
    let mut single: Vec<(u32, i64)> = Vec::new();
    let mut a = vec![-radius; w];
    loop {
        let s: i64 = a.iter().sum();
        let class = s.rem_euclid(p as i64) as u32;
        let scaled = (embedding_norm(p, &a) * p as f64).round() as i64;
        if scaled <= limit {
            single.push((class, scaled));
        }
        let mut k = 0;
        while k < w && a[k] == radius {
            a[k] = -radius;
            k += 1;
        }
        if k == w {
            break;
        }
        a[k] += 1;
    }

    let mut counts = BTreeMap::new();
    let mut classes = vec![0u32; n];
    fn rec(
        single: &[(u32, i64)],
        words: &BTreeSet<Vec<u32>>,
        classes: &mut Vec<u32>,
        depth: usize,
        total: i64,
        limit: i64,
        counts: &mut BTreeMap<i64, u64>,
    ) {
        if depth == classes.len() {
            if words.contains(classes) {
                *counts.entry(total).or_insert(0) += 1;
            }
            return;
        }
        for &(c, s) in single {
            if total + s <= limit {
                classes[depth] = c;
                rec(single, words, classes, depth + 1, total + s, limit, counts);
            }
        }
    }
    rec(&single, words, &mut classes, 0, 0, limit, &mut counts);
    counts
}

/// Eisenstein-integer count for `θ_j` at `p = 3`: `x = a + bζ` with
/// `a + b ≡ j (mod 3)` contributes `q^{|x|²/3}`. Keyed by `|x|²`.
pub fn eisenstein_theta(j: i64, max_abs2: i64) -> BTreeMap<i64, u64> {
    let r = (2.0 * (max_abs2 as f64).sqrt()).ceil() as i64 + 1;
    let mut out = BTreeMap::new();
    for a in -r..=r {
        for b in -r..=r {
            let m = a * a - a * b + b * b;
            if m <= max_abs2 && (a + b - j).rem_euclid(3) == 0 {
                *out.entry(m).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Coefficients of `Π_{n≥1} (1 - q^n)` through `q^order` by direct multiplication.
pub fn euler_product(order: usize) -> Vec<i64> {
    let mut c = vec![0i64; order + 1];
    c[0] = 1;
    for n in 1..=order {
        for k in (n..=order).rev() {
            c[k] -= c[k - n];
        }
    }
    c
}

/// `e_{i_1} ⋯ e_{i_k}` reduced by adjacent swaps, with `e_i² = -1` and
/// `e_i e_j = -e_j e_i`. Returns the sign and the sorted index list.
pub fn clifford_reduce(indices: &[usize]) -> (i32, Vec<usize>) {
    let mut v = indices.to_vec();
    let mut sign = 1;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < v.len() {
            if v[i] > v[i + 1] {
                v.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if v[i] == v[i + 1] {
                v.drain(i..i + 2);
                sign = -sign;
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            return (sign, v);
        }
    }
}

/// All words of `F_p^n` as digit vectors.
pub fn all_words(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..p).map(move |d| {
                    let mut x = w.clone();
                    x.push(d);
                    x
                })
            })
            .collect();
    }
    out
}

/// Dense integer matrix product.
pub fn matmul(a: &[Vec<i32>], b: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}
