//! Signed permutation groups `O_n(Z) = Σ_n ⋉ F_2^n` at small `n`: the
//! subgroup `H = A_n ⋉ (F_2^n)^{ev}`, perfectness, crossed homomorphisms into
//! `((F_2^n)^{ev})^*`, and the commutator form on even Clifford words.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cliffcode::CliffordWord;

/// Largest `n` for which groups are listed explicitly.
pub const MAX_N: usize = 6;
/// Largest group handed to the commutator closure.
pub const MAX_GROUP: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("n = {0} is outside the supported range 1..={MAX_N}")]
    SizeGuard(usize),
    #[error("group of order {0} exceeds the closure limit {MAX_GROUP}")]
    GroupTooLarge(usize),
    #[error("empty element list")]
    Empty,
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("elements of different degrees")]
    DegreeMismatch,
}

/// `(σ, s)` acting on `Z^n` by `x ↦ D_s P_σ x`, with `P_σ e_i = e_{σ(i)}`.
///
/// Products follow `(σ, s)(τ, t) = (στ, s + σ·t)` where `(σ·t)_{σ(i)} = t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    perm: Vec<u8>,
    signs: u32,
}

impl SignedPerm {
    pub fn new(perm: Vec<usize>, signs: u32) -> Result<Self, TowerError> {
        let n = perm.len();
        if n > 32 {
            return Err(TowerError::InvalidPermutation(n));
        }
        let mut seen = vec![false; n];
        for &x in &perm {
            if x >= n || seen[x] {
                return Err(TowerError::InvalidPermutation(n));
            }
            seen[x] = true;
        }
        if n < 32 && signs >> n != 0 {
            return Err(TowerError::InvalidPermutation(n));
        }
        Ok(SignedPerm { perm: perm.into_iter().map(|x| x as u8).collect(), signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n as u8).collect(), signs: 0 }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> Vec<usize> {
        self.perm.iter().map(|&x| x as usize).collect()
    }

    pub fn signs(&self) -> u32 {
        self.signs
    }

    fn act_bits(&self, t: u32) -> u32 {
        let mut out = 0;
        for (i, &s) in self.perm.iter().enumerate() {
            out |= (t >> i & 1) << s;
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        SignedPerm {
            perm: o.perm.iter().map(|&j| self.perm[j as usize]).collect(),
            signs: self.signs ^ self.act_bits(o.signs),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &s) in self.perm.iter().enumerate() {
            inv[s as usize] = i as u8;
        }
        let pinv = SignedPerm { perm: inv, signs: 0 };
        // (σ, s)^{-1} = (σ^{-1}, σ^{-1}·s)
        SignedPerm { signs: pinv.act_bits(self.signs), ..pinv }
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).mul(&self.inverse()).mul(&o.inverse())
    }

    /// `+1` for even permutations.
    pub fn perm_sign(&self) -> i32 {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parity = 0;
        for s in 0..n {
            let mut k = s;
            let mut len = 0;
            while !seen[k] {
                seen[k] = true;
                k = self.perm[k] as usize;
                len += 1;
            }
            if len > 0 {
                parity += len - 1;
            }
        }
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `(-1)^{|s|}`.
    pub fn sign_product(&self) -> i32 {
        if self.signs.count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn det(&self) -> i32 {
        self.perm_sign() * self.sign_product()
    }

    /// The matrix `D_s P_σ`.
    pub fn matrix(&self) -> Vec<Vec<i32>> {
        let n = self.n();
        let mut m = vec![vec![0; n]; n];
        for (i, &s) in self.perm.iter().enumerate() {
            m[s as usize][i] = if self.signs >> s & 1 == 1 { -1 } else { 1 };
        }
        m
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perm
            .iter()
            .enumerate()
            .map(|(i, &s)| format!("{i}->{}{s}", if self.signs >> s & 1 == 1 { "-" } else { "" }))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

fn check_n(n: usize) -> Result<(), TowerError> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(TowerError::SizeGuard(n))
    }
}

/// All of `O_n(Z)`, sorted.
pub fn full_group(n: usize) -> Result<Vec<SignedPerm>, TowerError> {
    check_n(n)?;
    let mut out = Vec::with_capacity((1 << n) * permutations(n).len());
    for p in permutations(n) {
        for s in 0..(1u32 << n) {
            out.push(SignedPerm::new(p.clone(), s)?);
        }
    }
    out.sort();
    Ok(out)
}

/// `H = A_n ⋉ (F_2^n)^{ev}`, sorted.
pub fn subgroup_h(n: usize) -> Result<Vec<SignedPerm>, TowerError> {
    Ok(full_group(n)?.into_iter().filter(|g| g.perm_sign() == 1 && g.sign_product() == 1).collect())
}

/// Subgroup generated by `gens`, by breadth-first closure.
pub fn closure(n: usize, gens: &[SignedPerm]) -> Result<Vec<SignedPerm>, TowerError> {
    if gens.iter().any(|g| g.n() != n) {
        return Err(TowerError::DegreeMismatch);
    }
    let id = SignedPerm::identity(n);
    let mut seen: HashSet<SignedPerm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if !seen.contains(&y) {
                if seen.len() >= MAX_GROUP {
                    return Err(TowerError::GroupTooLarge(seen.len() + 1));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<SignedPerm> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// A generating set picked greedily in sorted order.
pub fn generating_set(group: &[SignedPerm]) -> Result<Vec<SignedPerm>, TowerError> {
    let n = group.first().ok_or(TowerError::Empty)?.n();
    let mut gens = Vec::new();
    let mut span: HashSet<SignedPerm> = HashSet::from([SignedPerm::identity(n)]);
    for g in group {
        if !span.contains(g) {
            gens.push(g.clone());
            span = closure(n, &gens)?.into_iter().collect();
        }
        if span.len() == group.len() {
            break;
        }
    }
    Ok(gens)
}

/// The derived subgroup: normal closure of the commutators of a generating set.
pub fn derived_subgroup(group: &[SignedPerm]) -> Result<Vec<SignedPerm>, TowerError> {
    if group.len() > MAX_GROUP {
        return Err(TowerError::GroupTooLarge(group.len()));
    }
    let n = group.first().ok_or(TowerError::Empty)?.n();
    let gens = generating_set(group)?;
    let mut seeds: Vec<SignedPerm> = Vec::new();
    for a in &gens {
        for b in &gens {
            let c = a.commutator(b);
            if !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    // Normal closure: keep adding conjugates by generators until stable.
    let mut sub: BTreeSet<SignedPerm> = closure(n, &seeds)?.into_iter().collect();
    loop {
        let mut extra = Vec::new();
        for s in &seeds {
            for g in &gens {
                let c = g.mul(s).mul(&g.inverse());
                if !sub.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            break;
        }
        seeds.extend(extra);
        sub = closure(n, &seeds)?.into_iter().collect();
    }
    Ok(sub.into_iter().collect())
}

/// Whether the listed group equals its commutator subgroup.
pub fn is_perfect(group: &[SignedPerm]) -> Result<bool, TowerError> {
    Ok(derived_subgroup(group)?.len() == group.len())
}

// ---------------------------------------------------------------------------
// Linear algebra over F_2 on packed rows.

#[derive(Debug, Clone)]
struct F2Rows {
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl F2Rows {
    fn new(cols: usize) -> Self {
        F2Rows { cols, rows: Vec::new() }
    }

    fn push(&mut self, ones: &[usize]) {
        let mut r = vec![0u64; self.cols.div_ceil(64)];
        for &c in ones {
            r[c / 64] ^= 1 << (c % 64);
        }
        if r.iter().any(|&x| x != 0) {
            self.rows.push(r);
        }
    }

    fn rank(mut self) -> usize {
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, b) = (c / 64, 1u64 << (c % 64));
            let Some(piv) = (rank..self.rows.len()).find(|&i| self.rows[i][w] & b != 0) else {
                continue;
            };
            self.rows.swap(rank, piv);
            let pivot = self.rows[rank].clone();
            for i in 0..self.rows.len() {
                if i != rank && self.rows[i][w] & b != 0 {
                    for (x, y) in self.rows[i].iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// `E^* = (F_2^n)^{ev})^* ≅ F_2^n / ⟨1⟩`, coordinates `0..n-1` after
/// normalising the last coordinate to zero.
fn dual_even(n: usize, v: u32) -> u32 {
    if v >> (n - 1) & 1 == 1 {
        v ^ ((1 << n) - 1)
    } else {
        v
    }
}

/// Dimensions of crossed homomorphisms `A_n → E^*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossedHomReport {
    pub n: usize,
    pub group_order: usize,
    pub dim_e_star: usize,
    pub dim_invariants: usize,
    pub dim_crossed: usize,
    pub dim_principal: usize,
    pub h1_dim: usize,
}

/// Solve `f(gh) = f(g) + g·f(h)` for all `g` in a generating set of `A_n`
/// and all `h`, with unknowns `f(x) ∈ E^*` for every group element.
pub fn crossed_hom_space(n: usize) -> Result<CrossedHomReport, TowerError> {
    check_n(n)?;
    if n < 2 {
        return Err(TowerError::SizeGuard(n));
    }
    let d = n - 1;
    let alt: Vec<SignedPerm> = subgroup_h(n)?.into_iter().filter(|g| g.signs == 0).collect();
    let index: std::collections::HashMap<&SignedPerm, usize> = alt.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let gens = if alt.len() == 1 { Vec::new() } else { generating_set(&alt)? };
    // Matrix of g acting on E^* in the normalised basis: column j is g·e_j.
    let act = |g: &SignedPerm, v: u32| dual_even(n, g.act_bits(v));
    let unknown = |x: usize, j: usize| x * d + j;
    let mut sys = F2Rows::new(alt.len() * d);
    for g in &gens {
        let gi = index[g];
        for (hi, h) in alt.iter().enumerate() {
            let ghi = index[&g.mul(h)];
            // coordinate i of f(gh) + f(g) + g·f(h) = 0
            for i in 0..d {
                let mut ones = vec![unknown(ghi, i), unknown(gi, i)];
                for j in 0..d {
                    if act(g, 1 << j) >> i & 1 == 1 {
                        ones.push(unknown(hi, j));
                    }
                }
                // Repeated unknowns cancel.
                ones.sort_unstable();
                let mut dedup = Vec::new();
                for x in ones {
                    if dedup.last() == Some(&x) {
                        dedup.pop();
                    } else {
                        dedup.push(x);
                    }
                }
                sys.push(&dedup);
            }
        }
    }
    let dim_crossed = alt.len() * d - sys.rank();
    // Invariants: v with g·v = v for all generators.
    let mut inv = F2Rows::new(d);
    for g in &gens {
        for i in 0..d {
            let ones: Vec<usize> = (0..d).filter(|&j| (act(g, 1 << j) >> i & 1) ^ u32::from(i == j) == 1).collect();
            inv.push(&ones);
        }
    }
    let dim_invariants = d - inv.rank();
    let dim_principal = d - dim_invariants;
    Ok(CrossedHomReport {
        n,
        group_order: alt.len(),
        dim_e_star: d,
        dim_invariants,
        dim_crossed,
        dim_principal,
        h1_dim: dim_crossed - dim_principal,
    })
}

/// Commutator signs of lifted even vectors against `(-1)^{Σ_{i≠j} h_i k_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaReport {
    pub n: usize,
    pub weight_two_pairs: usize,
    pub weight_two_mismatches: usize,
    pub even_pairs: usize,
    pub even_mismatches: usize,
}

impl BetaReport {
    pub fn passed(&self) -> bool {
        self.weight_two_mismatches == 0 && self.even_mismatches == 0
    }
}

/// `Σ_{i≠j} h_i k_j mod 2`.
pub fn beta_form(h: u32, k: u32) -> u32 {
    (h.count_ones() * k.count_ones() + (h & k).count_ones()) % 2
}

pub fn beta_form_check(n: usize) -> Result<BetaReport, TowerError> {
    if !(1..=16).contains(&n) {
        return Err(TowerError::SizeGuard(n));
    }
    let lift = |s: u32| CliffordWord::new(n, false, s).expect("support fits");
    let anticommute = |h: u32, k: u32| {
        let (a, b) = (lift(h), lift(k));
        a.mul(&b) != b.mul(&a)
    };
    let evens: Vec<u32> = (0..1u32 << n).filter(|s| s.count_ones() % 2 == 0).collect();
    let pairs: Vec<u32> = evens.iter().copied().filter(|s| s.count_ones() == 2).collect();
    let mut r = BetaReport { n, weight_two_pairs: 0, weight_two_mismatches: 0, even_pairs: 0, even_mismatches: 0 };
    for &h in &pairs {
        for &k in &pairs {
            r.weight_two_pairs += 1;
            if anticommute(h, k) != (beta_form(h, k) == 1) {
                r.weight_two_mismatches += 1;
            }
        }
    }
    for &h in &evens {
        for &k in &evens {
            r.even_pairs += 1;
            if anticommute(h, k) != (beta_form(h, k) == 1) {
                r.even_mismatches += 1;
            }
        }
    }
    Ok(r)
}

/// Summary for `tower check`.
#[derive(Debug, Clone, Serialize)]
pub struct TowerReport {
    pub n: usize,
    pub order: usize,
    pub expected_order: usize,
    pub perfect: bool,
    pub derived_order: usize,
    pub h1_dim: Option<usize>,
    pub crossed: Option<CrossedHomReport>,
    pub index_two_intersection: bool,
    pub h_is_derived_subgroup_of_full_group: Option<bool>,
}

pub fn tower_check(n: usize) -> Result<TowerReport, TowerError> {
    let h = subgroup_h(n)?;
    let expected = (1..=n).product::<usize>() / if n >= 2 { 2 } else { 1 } * (1 << (n - 1));
    let derived = derived_subgroup(&h)?;
    let crossed = if n >= 2 { Some(crossed_hom_space(n)?) } else { None };
    let full = full_group(n)?;
    let inter: BTreeSet<&SignedPerm> =
        full.iter().filter(|g| g.det() == 1 && g.perm_sign() == 1 && g.sign_product() == 1).collect();
    let hs: BTreeSet<&SignedPerm> = h.iter().collect();
    let full_derived = if full.len() <= MAX_GROUP { Some(derived_subgroup(&full)? == h) } else { None };
    Ok(TowerReport {
        n,
        order: h.len(),
        expected_order: expected,
        perfect: derived.len() == h.len(),
        derived_order: derived.len(),
        h1_dim: crossed.as_ref().map(|c| c.h1_dim),
        crossed,
        index_two_intersection: inter == hs,
        h_is_derived_subgroup_of_full_group: full_derived,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: &[usize], s: u32) -> SignedPerm {
        SignedPerm::new(p.to_vec(), s).unwrap()
    }

    fn matmul(a: &[Vec<i32>], b: &[Vec<i32>]) -> Vec<Vec<i32>> {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    }

    #[test]
    fn product_matches_matrices() {
        let g = full_group(3).unwrap();
        for a in g.iter().step_by(5) {
            for b in g.iter().step_by(7) {
                assert_eq!(a.mul(b).matrix(), matmul(&a.matrix(), &b.matrix()));
            }
            assert_eq!(a.mul(&a.inverse()), SignedPerm::identity(3));
        }
    }

    #[test]
    fn orders() {
        assert_eq!(full_group(4).unwrap().len(), 16 * 24);
        assert_eq!(subgroup_h(3).unwrap().len(), 12);
        assert_eq!(subgroup_h(4).unwrap().len(), 96);
        assert_eq!(subgroup_h(5).unwrap().len(), 960);
        assert_eq!(subgroup_h(7).unwrap_err(), TowerError::SizeGuard(7));
    }

    #[test]
    fn perfectness() {
        assert!(!is_perfect(&subgroup_h(3).unwrap()).unwrap());
        assert!(!is_perfect(&subgroup_h(4).unwrap()).unwrap());
        assert!(is_perfect(&subgroup_h(5).unwrap()).unwrap());
        assert!(is_perfect(&[SignedPerm::identity(4)]).unwrap());
        assert_eq!(is_perfect(&[]).unwrap_err(), TowerError::Empty);
    }

    #[test]
    fn crossed_homs() {
        let r5 = crossed_hom_space(5).unwrap();
        assert_eq!((r5.h1_dim, r5.dim_principal, r5.dim_invariants), (0, 4, 0));
        assert_eq!(crossed_hom_space(6).unwrap().h1_dim, 0);
    }

    #[test]
    fn beta_examples() {
        let r = beta_form_check(8).unwrap();
        assert_eq!(r.weight_two_pairs, 28 * 28);
        assert!(r.passed());
        let a = CliffordWord::from_indices(8, &[0, 1]).unwrap();
        let b = CliffordWord::from_indices(8, &[1, 2]).unwrap();
        assert!(!a.commutes_with(&b));
        assert_eq!(beta_form(0b11, 0b110), 1);
        assert_eq!(beta_form(0b11, 0b1100), 0);
    }

    #[test]
    fn tower_small() {
        for n in 2..=4 {
            let r = tower_check(n).unwrap();
            assert!(r.index_two_intersection);
            assert_eq!(r.order, r.expected_order);
            assert_eq!(r.h_is_derived_subgroup_of_full_group, Some(true), "n = {n}");
        }
        let g = sp(&[1, 0], 0b01);
        assert_eq!(g.mul(&g), sp(&[0, 1], 0b11));
    }
}
