//! Even lattices `Γ_C = ρ^{-1}(C) ⊂ O^n` attached to self-orthogonal codes.
//!
//! Vectors of `O^n` are handled internally as flat integer coefficient
//! vectors of length `n(p-1)`: coordinate `k` occupies the slots
//! `k(p-1) .. (k+1)(p-1)` in the power basis. On one coordinate the pairing
//! reads `⟨x, y⟩ = Σ a_j b_j - (Σ a_j)(Σ b_j)/p`.

mod enumerate;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{check_odd_prime, CycError, CycInt, CycRat};
use crate::fpcode::symbol_classes;
use crate::fpcode::{Code, CodeError, Word};
use crate::qexp::{compose_enumerator, QError, QSeries, TermJson};
use enumerate::Decomposition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
    #[error("lattice construction needs a linear code")]
    NotLinear,
    #[error("code is not self-orthogonal: {0}")]
    NotSelfOrthogonal(String),
    #[error("shift has length {found}, lattice has n = {expected}")]
    ShiftLength { expected: usize, found: usize },
    #[error("shift is over F_{found}, lattice is over F_{expected}")]
    ShiftPrime { expected: u32, found: u32 },
    #[error("negative bound")]
    NegativeBound,
    #[error(transparent)]
    Series(#[from] QError),
}

/// Flat coefficient vector of `x ∈ O^n`.
pub(crate) type Flat = Vec<i64>;

pub(crate) fn pair_flat(p: u32, x: &[i64], y: &[i64]) -> BigRational {
    BigRational::new(BigInt::from(pair_flat_scaled(p, x, y)), BigInt::from(p))
}

/// `p · ⟨x, y⟩`, an integer.
pub(crate) fn pair_flat_scaled(p: u32, x: &[i64], y: &[i64]) -> i128 {
    let w = p as usize - 1;
    x.chunks(w)
        .zip(y.chunks(w))
        .map(|(a, b)| {
            let dot: i128 = a.iter().zip(b).map(|(&s, &t)| s as i128 * t as i128).sum();
            let sa: i128 = a.iter().map(|&s| s as i128).sum();
            let sb: i128 = b.iter().map(|&t| t as i128).sum();
            p as i128 * dot - sa * sb
        })
        .sum()
}

/// Integer lift of a word: digit `d` at coordinate `k` becomes `d·ζ^0`.
pub(crate) fn lift_flat(w: &Word) -> Flat {
    let step = w.p() as usize - 1;
    let mut v = vec![0i64; w.len() * step];
    for k in 0..w.len() {
        v[k * step] = w.get(k) as i64;
    }
    v
}

fn flat_to_coords(p: u32, v: &[i64]) -> Vec<CycInt> {
    v.chunks(p as usize - 1).map(|c| CycInt::new(p, c.to_vec()).expect("odd prime checked at construction")).collect()
}

fn coords_to_flat(coords: &[CycInt]) -> Flat {
    coords.iter().flat_map(|c| c.coeffs().iter().map(|a| a.to_i64().expect("basis coordinates are small"))).collect()
}

/// Basis of `ρ^{-1}(C)` for any linear code `C` over an odd prime.
///
/// Per coordinate the `P`-basis `ζ^j - ζ^{j+1}` (`0 ≤ j ≤ p-2`) is used;
/// at the pivot of each echelon generator the last of these is replaced by
/// the integer lift of that generator.
pub fn code_lattice_basis(c: &Code) -> Result<Vec<Vec<CycInt>>, LatticeError> {
    Ok(flat_basis(c)?.iter().map(|v| flat_to_coords(c.p(), v)).collect())
}

fn flat_basis(c: &Code) -> Result<Vec<Flat>, LatticeError> {
    let p = c.p();
    check_odd_prime(p)?;
    let gens = c.generators().ok_or(LatticeError::NotLinear)?;
    let n = c.n();
    let step = p as usize - 1;
    let mut basis = Vec::with_capacity(n * step);
    for k in 0..n {
        let pivot_row = c.pivots().iter().position(|&pc| pc == k);
        for j in 0..step {
            if j == step - 1 {
                if let Some(t) = pivot_row {
                    basis.push(lift_flat(&gens[t]));
                    continue;
                }
            }
            let mut v = vec![0i64; n * step];
            v[k * step + j] = 1;
            if j + 1 < step {
                v[k * step + j + 1] = -1;
            } else {
                // -ζ^{p-1} = 1 + ζ + … + ζ^{p-2}
                for s in 0..step {
                    v[k * step + s] += 1;
                }
            }
            basis.push(v);
        }
    }
    Ok(basis)
}

/// A lattice vector: coordinates in `O^n` and its norm `⟨v, v⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    pub coords: Vec<CycInt>,
    pub norm: BigRational,
}

impl LatticeVector {
    /// Coordinate-wise reduction.
    pub fn rho(&self) -> Vec<u32> {
        self.coords.iter().map(CycInt::rho).collect()
    }
}

#[derive(Debug, Clone)]
pub struct CodeLattice {
    p: u32,
    n: usize,
    code: Code,
    basis: Vec<Flat>,
    gram: Vec<Vec<i64>>,
    decomposition: Decomposition,
}

/// Summary printed by `lattice --info`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeInfo {
    pub p: u32,
    pub n: usize,
    pub rank: usize,
    pub discriminant: String,
    pub even: bool,
    pub unimodular: bool,
    pub min_norm: String,
    pub min_vectors: u64,
}

impl CodeLattice {
    /// `Γ_C` for a linear self-orthogonal code over an odd prime.
    pub fn new(c: &Code) -> Result<Self, LatticeError> {
        let p = c.p();
        check_odd_prime(p)?;
        if !c.is_linear() {
            return Err(LatticeError::NotLinear);
        }
        let basis = flat_basis(c)?;
        let r = basis.len();
        let mut gram = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in i..r {
                let s = pair_flat_scaled(p, &basis[i], &basis[j]);
                if s % p as i128 != 0 {
                    return Err(LatticeError::NotSelfOrthogonal(format!(
                        "basis pairing ({i}, {j}) = {s}/{p} is not integral"
                    )));
                }
                let v = (s / p as i128) as i64;
                if i == j && v % 2 != 0 {
                    return Err(LatticeError::NotSelfOrthogonal(format!("basis vector {i} has odd norm {v}")));
                }
                gram[i][j] = v;
                gram[j][i] = v;
            }
        }
        let qgram: Vec<Vec<BigRational>> =
            gram.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        let decomposition = Decomposition::new(&qgram).expect("trace form is positive definite");
        Ok(CodeLattice { p, n: c.n(), code: c.clone(), basis, gram, decomposition })
    }

    /// `P^n = Γ_0`, the lattice of the zero code.
    pub fn zero_code(p: u32, n: usize) -> Result<Self, LatticeError> {
        Self::new(&Code::zero(p, n)?)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn basis(&self) -> Vec<Vec<CycInt>> {
        self.basis.iter().map(|v| flat_to_coords(self.p, v)).collect()
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    /// `det(gram)`.
    pub fn discriminant(&self) -> BigInt {
        bareiss_det(&self.gram)
    }

    fn check_shift(&self, shift: Option<&Word>) -> Result<Flat, LatticeError> {
        let dim = self.n * (self.p as usize - 1);
        match shift {
            None => Ok(vec![0; dim]),
            Some(w) => {
                if w.p() != self.p {
                    return Err(LatticeError::ShiftPrime { expected: self.p, found: w.p() });
                }
                if w.len() != self.n {
                    return Err(LatticeError::ShiftLength { expected: self.n, found: w.len() });
                }
                Ok(lift_flat(w))
            }
        }
    }

    /// Basis coordinates of the shift vector `s` (solving `G c = B s`).
    fn center(&self, s: &[i64]) -> Vec<BigRational> {
        let r = self.rank();
        if s.iter().all(|&x| x == 0) {
            return vec![BigRational::zero(); r];
        }
        let rhs: Vec<BigRational> = self.basis.iter().map(|b| pair_flat(self.p, b, s)).collect();
        solve(&self.gram, rhs)
    }

    /// Visit every `v ∈ Γ_C + lift(shift)` with `⟨v, v⟩ ≤ bound`, passing the
    /// flat coefficient vector and the exact norm.
    pub(crate) fn for_each_vector(
        &self,
        shift: Option<&Word>,
        bound: &BigRational,
        visit: &mut dyn FnMut(&[i64], &BigRational),
    ) -> Result<(), LatticeError> {
        if bound.is_negative() {
            return Err(LatticeError::NegativeBound);
        }
        let s = self.check_shift(shift)?;
        let center = self.center(&s);
        let mut buf = s.clone();
        enumerate::enumerate(&self.decomposition, &center, bound, &mut |u, norm| {
            buf.copy_from_slice(&s);
            for (b, &ui) in self.basis.iter().zip(u) {
                if ui != 0 {
                    for (x, &y) in buf.iter_mut().zip(b) {
                        *x += ui * y;
                    }
                }
            }
            visit(&buf, norm);
        });
        Ok(())
    }

    /// All vectors of `Γ_C + lift(shift)` of norm at most `bound`, sorted by
    /// norm and then by coordinates.
    pub fn short_vectors(&self, shift: Option<&Word>, bound: &BigRational) -> Result<Vec<LatticeVector>, LatticeError> {
        let mut raw: Vec<(BigRational, Flat)> = Vec::new();
        self.for_each_vector(shift, bound, &mut |v, norm| raw.push((norm.clone(), v.to_vec())))?;
        raw.sort();
        Ok(raw.into_iter().map(|(norm, v)| LatticeVector { coords: flat_to_coords(self.p, &v), norm }).collect())
    }

    /// Number of vectors of each norm up to `bound`.
    pub fn norm_counts(
        &self,
        shift: Option<&Word>,
        bound: &BigRational,
    ) -> Result<BTreeMap<BigRational, u64>, LatticeError> {
        if bound.is_negative() {
            return Err(LatticeError::NegativeBound);
        }
        let s = self.check_shift(shift)?;
        let center = self.center(&s);
        Ok(enumerate::count_by_value(&self.decomposition, &center, bound))
    }

    /// `Σ_{v ∈ Γ_C + lift(shift)} q^{⟨v,v⟩/2}` through exponent `order`.
    pub fn theta_series(&self, shift: Option<&Word>, order: &BigRational) -> Result<QSeries, LatticeError> {
        if order.is_negative() {
            return Err(LatticeError::NegativeBound);
        }
        let two = BigRational::from_integer(2.into());
        let counts = self.norm_counts(shift, &(order * &two))?;
        let terms = counts.into_iter().map(|(norm, k)| (norm / &two, CycRat::from_int(self.p, k))).collect();
        Ok(QSeries::from_big_terms(self.p, terms, order.clone()))
    }

    /// Smallest nonzero norm and the number of vectors attaining it.
    pub fn minimum(&self) -> (BigRational, u64) {
        let bound = self.gram.iter().enumerate().map(|(i, r)| r[i]).min().unwrap_or(0);
        let counts = self.norm_counts(None, &BigRational::from_integer(bound.into())).expect("nonnegative bound");
        counts.into_iter().find(|(k, _)| !k.is_zero()).unwrap_or((BigRational::zero(), 0))
    }

    /// Norm counts of `Γ_C` up to `bound`, found by scanning the full
    /// coefficient box `|u_i| ≤ sqrt(bound · (G^{-1})_{ii})` without pruning.
    ///
    /// Exponential in the rank; meant as a cross-check of [`Self::norm_counts`]
    /// on small lattices.
    pub fn brute_force_norm_counts(&self, bound: i64) -> Result<BTreeMap<i64, u64>, LatticeError> {
        if bound < 0 {
            return Err(LatticeError::NegativeBound);
        }
        let r = self.rank();
        let bound_q = BigRational::from_integer(bound.into());
        let radii: Vec<i64> = (0..r)
            .map(|i| {
                let mut e = vec![BigRational::zero(); r];
                e[i] = BigRational::one();
                let lim = &solve(&self.gram, e)[i] * &bound_q;
                let mut k = 0i64;
                while BigRational::from_integer(((k + 1) * (k + 1)).into()) <= lim {
                    k += 1;
                }
                k
            })
            .collect();
        let mut counts = BTreeMap::new();
        let mut partial = vec![0i64; r];
        box_scan(&self.gram, &radii, 0, 0, &mut partial, bound, &mut counts);
        Ok(counts)
    }

    pub fn info(&self) -> LatticeInfo {
        let disc = self.discriminant();
        let (min_norm, min_vectors) = self.minimum();
        LatticeInfo {
            p: self.p,
            n: self.n,
            rank: self.rank(),
            discriminant: disc.to_string(),
            even: self.is_even(),
            unimodular: disc.is_one(),
            min_norm: min_norm.to_string(),
            min_vectors,
        }
    }

    /// Pairing of two vectors of `O^n`.
    pub fn pairing(x: &[CycInt], y: &[CycInt]) -> BigRational {
        x.iter().zip(y).map(|(a, b)| a.pairing(b)).fold(BigRational::zero(), |s, t| s + t)
    }

    /// Express a vector of `O^n` as flat coefficients (for tests and tools).
    pub fn flatten(coords: &[CycInt]) -> Vec<i64> {
        coords_to_flat(coords)
    }
}

/// `θ_j = Σ_{x ∈ P + j} q^{⟨x,x⟩/2}` through exponent `order`.
pub fn theta_class(p: u32, j: u32, order: Rational64) -> Result<QSeries, LatticeError> {
    let lattice = CodeLattice::zero_code(p, 1)?;
    let shift = Word::new(p, vec![j % p])?;
    let order = BigRational::new((*order.numer()).into(), (*order.denom()).into());
    lattice.theta_series(Some(&shift), &order)
}

/// `partial[j] = Σ_{i < depth} G_{ji} u_i` for the coordinates fixed so far.
fn box_scan(
    gram: &[Vec<i64>],
    radii: &[i64],
    depth: usize,
    norm: i64,
    partial: &mut [i64],
    bound: i64,
    counts: &mut BTreeMap<i64, u64>,
) {
    if depth == radii.len() {
        if norm <= bound {
            *counts.entry(norm).or_insert(0) += 1;
        }
        return;
    }
    let g = &gram[depth];
    for v in -radii[depth]..=radii[depth] {
        let next = norm + 2 * v * partial[depth] + g[depth] * v * v;
        if v != 0 {
            for (pj, &gj) in partial.iter_mut().zip(g).skip(depth + 1) {
                *pj += gj * v;
            }
        }
        box_scan(gram, radii, depth + 1, next, partial, bound, counts);
        if v != 0 {
            for (pj, &gj) in partial.iter_mut().zip(g).skip(depth + 1) {
                *pj -= gj * v;
            }
        }
    }
}

/// `Σ_{w ∈ C} θ_{P^n + lift(w)}` through exponent `order`, summed coset by
/// coset. Works for any code, linear or not.
pub fn code_theta_series(c: &Code, order: Rational64) -> Result<QSeries, LatticeError> {
    let p = c.p();
    let base = CodeLattice::zero_code(p, c.n())?;
    let big = BigRational::new((*order.numer()).into(), (*order.denom()).into());
    let mut total = QSeries::zero(p, order);
    for w in c.words() {
        total = total.add(&base.theta_series(Some(w), &big)?)?;
    }
    Ok(total)
}

/// Exact comparison of the coset sum with `W_C(θ_0, …, θ_r)`.
#[derive(Debug, Clone, Serialize)]
pub struct ExactIdentityReport {
    pub p: u32,
    pub words: usize,
    pub order: String,
    pub lhs: Vec<TermJson>,
    pub rhs: Vec<TermJson>,
    /// Exponents at which the two sides differ.
    pub mismatches: Vec<String>,
    pub passed: bool,
}

pub fn verify_alpbach_exact(c: &Code, order: Rational64) -> Result<ExactIdentityReport, LatticeError> {
    let p = c.p();
    let lhs = code_theta_series(c, order)?;
    let thetas = (0..=symbol_classes(p) as u32).map(|j| theta_class(p, j, order)).collect::<Result<Vec<_>, _>>()?;
    let rhs = compose_enumerator(&c.weight_enumerator(), &thetas)?;
    let mut mismatches = Vec::new();
    if rhs.cutoff() < order {
        mismatches.push(format!("right side known only through {}", rhs.cutoff()));
    }
    let rhs = rhs.truncate(order);
    let exps: std::collections::BTreeSet<Rational64> = lhs.terms().chain(rhs.terms()).map(|(e, _)| *e).collect();
    for e in exps {
        if lhs.coefficient(e) != rhs.coefficient(e) {
            mismatches.push(e.to_string());
        }
    }
    Ok(ExactIdentityReport {
        p,
        words: c.len(),
        order: order.to_string(),
        lhs: lhs.to_json(),
        rhs: rhs.to_json(),
        passed: mismatches.is_empty(),
        mismatches,
    })
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn bareiss_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Solve `G x = b` over `Q` for nonsingular integer `G`.
fn solve(g: &[Vec<i64>], b: Vec<BigRational>) -> Vec<BigRational> {
    let n = g.len();
    let mut a: Vec<Vec<BigRational>> = g
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero()).expect("nonsingular");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..=n {
                    let t = &f * &a[col][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    a.into_iter().map(|mut r| r.pop().expect("augmented")).collect()
}
