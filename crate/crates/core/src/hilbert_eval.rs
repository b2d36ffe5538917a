//! Numerical evaluation of `θ_j` and `θ_C` on products of upper half-planes.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::codelattice::{CodeLattice, LatticeError};
use crate::fpcode::{symbol_classes, Code, CodeError, WeightEnumerator, Word};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HilbertError {
    #[error("coordinate {index} has imaginary part {im}, expected > 0")]
    NotUpperHalf { index: usize, im: f64 },
    #[error("point has {found} coordinates, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
    #[error("tail estimate still above {tol:e} at norm bound {max_norm}")]
    NoConvergence { tol: f64, max_norm: u32 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `z ∈ H^r`.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertPoint {
    z: Vec<Complex64>,
}

impl HilbertPoint {
    pub fn new(z: Vec<Complex64>) -> Result<Self, HilbertError> {
        for (index, w) in z.iter().enumerate() {
            if !(w.im > 0.0) {
                return Err(HilbertError::NotUpperHalf { index, im: w.im });
            }
        }
        Ok(HilbertPoint { z })
    }

    /// `(z, …, z)` with `r` entries.
    pub fn diagonal(z: Complex64, r: usize) -> Result<Self, HilbertError> {
        Self::new(vec![z; r])
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.z
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    fn min_im(&self) -> f64 {
        self.z.iter().map(|w| w.im).fold(f64::INFINITY, f64::min)
    }

    fn permuted(&self, perm: &[usize]) -> Self {
        HilbertPoint { z: perm.iter().map(|&k| self.z[k]).collect() }
    }
}

/// Enumeration settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub tail_tol: f64,
    /// Largest norm bound the tail search may reach.
    pub max_norm: u32,
}

impl EvalConfig {
    pub fn new(tail_tol: f64) -> Self {
        EvalConfig { tail_tol, max_norm: crate::max_norm_cap() }
    }
}

/// `exp(2πi Σ_l z_l |σ_l(x)|² / p)` for flat vectors `x ∈ O^n`.
struct Weigher {
    p: usize,
    z: Vec<Complex64>,
    /// `roots[l][t] = e^{2πi (l+1) t / p}`.
    roots: Vec<Vec<Complex64>>,
}

impl Weigher {
    fn new(p: u32, point: &HilbertPoint) -> Self {
        let r = (p as usize - 1) / 2;
        let roots = (1..=r)
            .map(|l| {
                (0..p as usize - 1).map(|t| Complex64::from_polar(1.0, 2.0 * PI * (l * t) as f64 / p as f64)).collect()
            })
            .collect();
        Weigher { p: p as usize, z: point.z.clone(), roots }
    }

    fn term(&self, flat: &[i64]) -> Complex64 {
        let step = self.p - 1;
        let mut exponent = Complex64::zero();
        for (l, zl) in self.z.iter().enumerate() {
            let mut s = 0.0;
            for chunk in flat.chunks(step) {
                let v: Complex64 = chunk.iter().zip(&self.roots[l]).map(|(&a, w)| w * a as f64).sum();
                s += v.norm_sqr();
            }
            exponent += zl * s;
        }
        (Complex64::new(0.0, 2.0 * PI / self.p as f64) * exponent).exp()
    }
}

fn check_point(p: u32, z: &HilbertPoint) -> Result<(), HilbertError> {
    let r = symbol_classes(p);
    if z.dim() != r {
        return Err(HilbertError::Dimension { expected: r, found: z.dim() });
    }
    Ok(())
}

/// Norm bound `B` for truncating the coset sum.
///
/// Each term of norm `N` has modulus at most `exp(-π m N)`, `m = min Im z_l`.
/// Counts are enumerated to a probe bound; `B` is the least even bound whose
/// enumerated tail up to the probe is below `tol / 20`, and the probe is raised
/// until the worst case over its last window of width 8 is below `tol / 20`
/// as well (a single shell can be empty, so one shell is not a reliable
/// indicator).
fn choose_bound(
    lattice: &CodeLattice,
    shift: Option<&Word>,
    min_im: f64,
    cfg: &EvalConfig,
) -> Result<u32, HilbertError> {
    const WINDOW: u32 = 8;
    if !(cfg.tail_tol > 0.0) {
        return Err(HilbertError::Tolerance(cfg.tail_tol));
    }
    let weight = |norm: f64| (-PI * min_im * norm).exp();
    let mut probe = (2 * WINDOW).min(cfg.max_norm);
    loop {
        let counts: Vec<(f64, u64)> = lattice
            .norm_counts(shift, &BigRational::from_integer(probe.into()))?
            .into_iter()
            .map(|(k, c)| (k.to_f64().unwrap_or(f64::INFINITY), c))
            .collect();
        let edge = probe.saturating_sub(WINDOW) as f64;
        let beyond: f64 = counts.iter().filter(|(k, _)| *k > edge).map(|(_, c)| *c as f64).sum::<f64>() * weight(edge);
        if beyond < cfg.tail_tol / 20.0 {
            let mut b = 0u32;
            while b < probe {
                let tail: f64 = counts.iter().filter(|(k, _)| *k > b as f64).map(|(k, c)| *c as f64 * weight(*k)).sum();
                if tail < cfg.tail_tol / 20.0 {
                    return Ok(b);
                }
                b += 2;
            }
            return Ok(probe);
        }
        if probe >= cfg.max_norm {
            return Err(HilbertError::NoConvergence { tol: cfg.tail_tol, max_norm: cfg.max_norm });
        }
        probe = (probe * 2).min(cfg.max_norm);
    }
}

fn coset_sum(
    lattice: &CodeLattice,
    shift: Option<&Word>,
    point: &HilbertPoint,
    cfg: &EvalConfig,
) -> Result<Complex64, HilbertError> {
    let bound = choose_bound(lattice, shift, point.min_im(), cfg)?;
    let weigh = Weigher::new(lattice.p(), point);
    // Sort terms by norm for a reproducible summation order.
    let mut terms: Vec<(BigRational, Vec<i64>)> = Vec::new();
    lattice.for_each_vector(shift, &BigRational::from_integer(bound.into()), &mut |v, norm| {
        terms.push((norm.clone(), v.to_vec()))
    })?;
    terms.sort();
    Ok(terms.iter().rev().map(|(_, v)| weigh.term(v)).sum())
}

/// `θ_j(z) = Σ_{x ∈ P + j} exp(2πi Σ_l z_l σ_l(x x̄)/p)`.
pub fn theta_j_eval(p: u32, j: u32, z: &HilbertPoint, tail_tol: f64) -> Result<Complex64, HilbertError> {
    theta_j_eval_with(p, j, z, &EvalConfig::new(tail_tol))
}

pub fn theta_j_eval_with(p: u32, j: u32, z: &HilbertPoint, cfg: &EvalConfig) -> Result<Complex64, HilbertError> {
    let lattice = CodeLattice::zero_code(p, 1)?;
    check_point(p, z)?;
    let shift = Word::new(p, vec![j % p])?;
    coset_sum(&lattice, Some(&shift), z, cfg)
}

/// `θ_C(z)` as the direct lattice sum over `ρ^{-1}(C)`, one coset of `P^n`
/// per word.
pub fn theta_code_eval(c: &Code, z: &HilbertPoint, tail_tol: f64) -> Result<Complex64, HilbertError> {
    if !(tail_tol > 0.0) {
        return Err(HilbertError::Tolerance(tail_tol));
    }
    check_point(c.p(), z)?;
    if c.is_empty() {
        return Ok(Complex64::zero());
    }
    let lattice = CodeLattice::zero_code(c.p(), c.n())?;
    let cfg = EvalConfig::new(tail_tol / c.len() as f64);
    c.words().map(|w| coset_sum(&lattice, Some(w), z, &cfg)).sum()
}

/// `W_C` at complex arguments.
pub fn eval_enumerator(w: &WeightEnumerator, x: &[Complex64]) -> Complex64 {
    w.coefficients
        .iter()
        .map(|(e, &c)| e.iter().zip(x).map(|(&k, v)| v.powu(k)).product::<Complex64>() * c as f64)
        .sum()
}

/// `(θ_0(z), …, θ_r(z))`.
pub fn theta_vector(p: u32, z: &HilbertPoint, tail_tol: f64) -> Result<Vec<Complex64>, HilbertError> {
    (0..=symbol_classes(p) as u32).map(|j| theta_j_eval(p, j, z, tail_tol)).collect()
}

/// Permutations of the real embeddings induced by `ζ ↦ ζ^a`.
pub fn galois_permutations(p: u32) -> Vec<Vec<usize>> {
    let r = symbol_classes(p) as u32;
    let fold = |x: u32| if x > r { p - x } else { x };
    let mut out: Vec<Vec<usize>> = (1..=r).map(|a| (1..=r).map(|l| (fold(a * l % p) - 1) as usize).collect()).collect();
    out.sort();
    out.dedup();
    out
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Debug, Clone, Serialize)]
pub struct PointResult {
    pub point: Vec<[f64; 2]>,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GaloisResult {
    pub point: Vec<[f64; 2]>,
    pub permutation: Vec<usize>,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlpbachReport {
    pub p: u32,
    pub words: usize,
    pub tol: f64,
    pub points: Vec<PointResult>,
    pub galois: Vec<GaloisResult>,
    pub passed: bool,
}

/// Compare `θ_C(z)` with `W_C(θ_0(z), …, θ_r(z))` at each point, and check
/// that Galois permutations of `z` leave the right side unchanged.
pub fn verify_alpbach(c: &Code, points: &[HilbertPoint], tol: f64) -> Result<AlpbachReport, HilbertError> {
    if !(tol > 0.0) {
        return Err(HilbertError::Tolerance(tol));
    }
    let p = c.p();
    let we = c.weight_enumerator();
    let tail = tol / 100.0;
    let mut out = Vec::new();
    let mut galois = Vec::new();
    for z in points {
        let lhs = theta_code_eval(c, z, tail)?;
        let rhs = eval_enumerator(&we, &theta_vector(p, z, tail / (c.len().max(1) * c.n().max(1)) as f64)?);
        let residual = (lhs - rhs).norm();
        let coords: Vec<[f64; 2]> = z.z.iter().map(|&w| pair(w)).collect();
        out.push(PointResult { point: coords.clone(), lhs: pair(lhs), rhs: pair(rhs), residual, pass: residual < tol });
        for perm in galois_permutations(p) {
            if perm.iter().enumerate().all(|(i, &k)| i == k) {
                continue;
            }
            let moved = eval_enumerator(&we, &theta_vector(p, &z.permuted(&perm), tail)?);
            let residual = (moved - rhs).norm();
            galois.push(GaloisResult { point: coords.clone(), permutation: perm, residual, pass: residual < tol });
        }
    }
    let passed = out.iter().all(|r| r.pass) && galois.iter().all(|g| g.pass);
    Ok(AlpbachReport { p, words: c.len(), tol, points: out, galois, passed })
}

#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sl2Report {
    pub z: [f64; 2],
    pub tol: f64,
    pub checks: Vec<Residual>,
    pub passed: bool,
}

/// `(-1 - 2ζ)/3` with `ζ = e^{2πi/3}`.
pub fn s_constant() -> Complex64 {
    let zeta = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    (Complex64::new(-1.0, 0.0) - zeta * 2.0) / 3.0
}

fn theta01(z: Complex64, tail: f64) -> Result<[Complex64; 2], HilbertError> {
    let pt = HilbertPoint::new(vec![z])?;
    Ok([theta_j_eval(3, 0, &pt, tail)?, theta_j_eval(3, 1, &pt, tail)?])
}

/// `z·c·M·(θ_0, θ_1)` with `M = [[1, 2], [1, -1]]`.
fn s_image(z: Complex64, t: [Complex64; 2]) -> [Complex64; 2] {
    let k = z * s_constant();
    [k * (t[0] + t[1] * 2.0), k * (t[0] - t[1])]
}

/// Residuals of the `S` and `T` transformation formulas of `θ_0, θ_1` for `p = 3`.
pub fn verify_sl2f3_action(z: Complex64, tol: f64) -> Result<Sl2Report, HilbertError> {
    if !(tol > 0.0) {
        return Err(HilbertError::Tolerance(tol));
    }
    if !(z.im > 0.0) {
        return Err(HilbertError::NotUpperHalf { index: 0, im: z.im });
    }
    let tail = tol / 1000.0;
    let zeta = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let w = -z.inv();
    let at_z = theta01(z, tail)?;
    let at_w = theta01(w, tail)?;
    let at_t = theta01(z + 1.0, tail)?;
    let s = s_image(z, at_z);
    let mut checks = vec![
        ("S_theta0", (at_w[0] - s[0]).norm()),
        ("S_theta1", (at_w[1] - s[1]).norm()),
        ("T_theta0", (at_t[0] - at_z[0]).norm()),
        ("T_theta1", (at_t[1] - zeta * at_z[1]).norm()),
    ];
    // θ(z) = θ(-1/w) from the evaluated θ(w), and the matrix identity S² = 1.
    let back = s_image(w, at_w);
    checks.push(("SS_theta0", (back[0] - at_z[0]).norm()));
    checks.push(("SS_theta1", (back[1] - at_z[1]).norm()));
    let twice = s_image(w, s);
    checks.push(("SS_matrix", (twice[0] - at_z[0]).norm().max((twice[1] - at_z[1]).norm())));
    let checks: Vec<Residual> = checks
        .into_iter()
        .map(|(name, residual)| Residual { name: name.into(), residual, pass: residual < tol })
        .collect();
    let passed = checks.iter().all(|c| c.pass);
    Ok(Sl2Report { z: pair(z), tol, checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpcode::tetracode;

    fn i() -> Complex64 {
        Complex64::new(0.0, 1.0)
    }

    #[test]
    fn large_imaginary_part() {
        for p in [3, 5, 7] {
            let r = symbol_classes(p);
            let z = HilbertPoint::diagonal(Complex64::new(0.2, 40.0), r).unwrap();
            let v = theta_j_eval(p, 0, &z, 1e-12).unwrap();
            assert!((v - 1.0).norm() < 1e-12, "p = {p}: {v}");
        }
    }

    #[test]
    fn symmetric_in_j() {
        let z = HilbertPoint::new(vec![Complex64::new(0.3, 0.9)]).unwrap();
        let a = theta_j_eval(3, 1, &z, 1e-12).unwrap();
        let b = theta_j_eval(3, 2, &z, 1e-12).unwrap();
        assert!((a - b).norm() < 1e-12);
        let z5 = HilbertPoint::new(vec![Complex64::new(0.1, 1.0), Complex64::new(-0.2, 1.3)]).unwrap();
        let a = theta_j_eval(5, 2, &z5, 1e-12).unwrap();
        let b = theta_j_eval(5, 3, &z5, 1e-12).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn empty_and_zero_codes() {
        let z = HilbertPoint::new(vec![i()]).unwrap();
        let empty = Code::from_words(3, 2, vec![]).unwrap();
        assert_eq!(theta_code_eval(&empty, &z, 1e-10).unwrap(), Complex64::zero());
        let zero = Code::zero(3, 1).unwrap();
        let a = theta_code_eval(&zero, &z, 1e-12).unwrap();
        let b = theta_j_eval(3, 0, &z, 1e-12).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(HilbertPoint::new(vec![Complex64::new(1.0, 0.0)]), Err(HilbertError::NotUpperHalf { .. })));
        let z = HilbertPoint::new(vec![i()]).unwrap();
        assert!(matches!(theta_j_eval(5, 0, &z, 1e-8), Err(HilbertError::Dimension { expected: 2, found: 1 })));
        assert_eq!(theta_j_eval(3, 0, &z, 0.0).unwrap_err(), HilbertError::Tolerance(0.0));
        let cfg = EvalConfig { tail_tol: 1e-300, max_norm: 4 };
        assert!(matches!(theta_j_eval_with(3, 0, &z, &cfg), Err(HilbertError::NoConvergence { .. })));
    }

    #[test]
    fn galois_perms() {
        assert_eq!(galois_permutations(3), vec![vec![0]]);
        assert_eq!(galois_permutations(5), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(galois_permutations(7).len(), 3);
    }

    #[test]
    fn single_word_code() {
        let c = Code::from_words(5, 2, vec![Word::new(5, vec![1, 3]).unwrap()]).unwrap();
        let z = HilbertPoint::new(vec![Complex64::new(0.1, 1.0), Complex64::new(0.0, 1.2)]).unwrap();
        let rep = verify_alpbach(&c, &[z], 1e-10).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn tetracode_p3() {
        let z = HilbertPoint::new(vec![i()]).unwrap();
        let rep = verify_alpbach(&tetracode(), &[z], 1e-10).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn sl2_at_i() {
        let rep = verify_sl2f3_action(i(), 1e-8).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!((s_constant() - Complex64::new(0.0, -1.0 / 3f64.sqrt())).norm() < 1e-15);
    }
}
