//! Fano plane, Clifford words and the real spinor representations of `F_8^{ev}`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::fpcode::hamming8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("word length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("generator index {index} out of range for n = {n}")]
    BadIndex { index: usize, n: usize },
    #[error("spinor representations are defined on even words only")]
    OddWord,
    #[error("Clifford words support at most 32 generators, got {0}")]
    TooLong(usize),
}

// ---------------------------------------------------------------------------
// Fano plane

/// Lines of the right-hand numbering, where point `[a:b:c]` is `4a + 2b + c`.
const RIGHT_LINES: [[usize; 3]; 7] = [[2, 5, 7], [3, 4, 7], [1, 4, 5], [1, 6, 7], [2, 4, 6], [1, 2, 3], [3, 5, 6]];
/// Lines of the left-hand numbering.
const LEFT_LINES: [[usize; 3]; 7] = [[3, 4, 6], [1, 5, 6], [2, 6, 7], [2, 3, 5], [1, 3, 7], [4, 5, 7], [1, 2, 4]];
/// Left-hand label to right-hand label of the same point.
const LEFT_TO_RIGHT: [usize; 8] = [0, 1, 2, 6, 3, 4, 5, 7];

/// Which picture a line or point label refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Picture {
    Left,
    Right,
}

#[derive(Debug, Clone, Serialize)]
pub struct FanoData {
    /// Homogeneous coordinates of right-hand point `k` (index `k - 1`).
    pub points: Vec<[u8; 3]>,
    pub left_to_right: Vec<usize>,
    pub right_lines: Vec<[usize; 3]>,
    pub left_lines: Vec<[usize; 3]>,
    /// `b_i`: complement of left line `i`, as an `F_2^7` indicator.
    pub bvecs: Vec<[u8; 7]>,
    /// `c_i`: complement of right line `i`.
    pub cvecs: Vec<[u8; 7]>,
    /// `incidence[i][j]`: whether point `j+1` lies on line `i+1`, and in
    /// which picture.
    pub incidence: Vec<Vec<Option<Picture>>>,
}

fn complement(line: &[usize; 3]) -> [u8; 7] {
    let mut v = [1u8; 7];
    for &k in line {
        v[k - 1] = 0;
    }
    v
}

impl Default for FanoData {
    fn default() -> Self {
        Self::new()
    }
}

impl FanoData {
    pub fn new() -> Self {
        let points = (1..=7u8).map(|k| [(k >> 2) & 1, (k >> 1) & 1, k & 1]).collect();
        let incidence = (0..7)
            .map(|i| {
                (1..=7)
                    .map(|j| {
                        if RIGHT_LINES[i].contains(&j) {
                            Some(Picture::Right)
                        } else if LEFT_LINES[i].contains(&j) {
                            Some(Picture::Left)
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        FanoData {
            points,
            left_to_right: LEFT_TO_RIGHT.to_vec(),
            right_lines: RIGHT_LINES.to_vec(),
            left_lines: LEFT_LINES.to_vec(),
            bvecs: LEFT_LINES.iter().map(complement).collect(),
            cvecs: RIGHT_LINES.iter().map(complement).collect(),
            incidence,
        }
    }

    pub fn c_vectors(&self) -> &[[u8; 7]] {
        &self.cvecs
    }

    pub fn b_vectors(&self) -> &[[u8; 7]] {
        &self.bvecs
    }

    /// Whether `{i, j, k}` is a line of the given picture.
    pub fn is_line(&self, picture: Picture, mut t: [usize; 3]) -> bool {
        t.sort_unstable();
        let lines = match picture {
            Picture::Left => &self.left_lines,
            Picture::Right => &self.right_lines,
        };
        lines.iter().any(|l| {
            let mut l = *l;
            l.sort_unstable();
            l == t
        })
    }

    /// Consistency checks of the two numberings.
    pub fn checks(&self) -> BTreeMap<&'static str, bool> {
        let mut out = BTreeMap::new();
        let add = |a: &[u8; 7], b: &[u8; 7]| -> [u8; 7] { std::array::from_fn(|k| a[k] ^ b[k]) };
        // Right lines are the 2-dimensional subspaces of F_2^3.
        out.insert("right_lines_are_subspaces", self.right_lines.iter().all(|l| l[0] ^ l[1] == l[2]));
        // Relabelled left lines are lines of the right picture.
        out.insert(
            "left_numbering_is_a_relabelling",
            self.left_lines.iter().all(|l| {
                let m = l.map(|x| self.left_to_right[x]);
                m[0] ^ m[1] == m[2]
            }),
        );
        let mut per_point = true;
        for lines in [&self.left_lines, &self.right_lines] {
            for pt in 1..=7 {
                per_point &= lines.iter().filter(|l| l.contains(&pt)).count() == 3;
            }
        }
        out.insert("three_lines_per_point", per_point);
        out.insert(
            "b_plus_c_is_point_plus_all",
            (0..7).all(|i| {
                let s = add(&self.bvecs[i], &self.cvecs[i]);
                (0..7).all(|k| s[k] == u8::from(k != i))
            }),
        );
        let mut b_law = true;
        let mut c_law = true;
        for i in 0..7 {
            for j in i + 1..7 {
                for k in j + 1..7 {
                    let t = [i + 1, j + 1, k + 1];
                    let bz = add(&add(&self.bvecs[i], &self.bvecs[j]), &self.bvecs[k]) == [0; 7];
                    let cz = add(&add(&self.cvecs[i], &self.cvecs[j]), &self.cvecs[k]) == [0; 7];
                    b_law &= bz == self.is_line(Picture::Right, t);
                    c_law &= cz == self.is_line(Picture::Left, t);
                }
            }
        }
        out.insert("b_sums_follow_right_lines", b_law);
        out.insert("c_sums_follow_left_lines", c_law);
        let flip = |x: Option<Picture>| match x {
            Some(Picture::Left) => Some(Picture::Right),
            Some(Picture::Right) => Some(Picture::Left),
            None => None,
        };
        out.insert(
            "incidence_diagonal_symmetry",
            (0..7).all(|i| (0..7).all(|j| self.incidence[i][j] == flip(self.incidence[j][i]))),
        );
        // (F_2^7)^ev = B ⊕ C
        let span = |vs: &[[u8; 7]]| -> BTreeSet<[u8; 7]> {
            let mut s = BTreeSet::from([[0u8; 7]]);
            for v in vs {
                let more: Vec<_> = s.iter().map(|x| add(x, v)).collect();
                s.extend(more);
            }
            s
        };
        let bs = span(&self.bvecs);
        let cs = span(&self.cvecs);
        let mut sums = BTreeSet::new();
        for b in &bs {
            for c in &cs {
                sums.insert(add(b, c));
            }
        }
        out.insert(
            "even_part_is_b_plus_c",
            bs.len() == 8
                && cs.len() == 8
                && sums.len() == 64
                && sums.iter().all(|v| v.iter().filter(|&&x| x == 1).count() % 2 == 0),
        );
        out
    }
}

/// `(|v| mod 2, v)` as an 8-bit support mask; bit `k` is coordinate `k`.
fn parity_mask(v: &[u8; 7]) -> u32 {
    let mut m = 0u32;
    let mut w = 0;
    for (k, &x) in v.iter().enumerate() {
        if x == 1 {
            m |= 1 << (k + 1);
            w += 1;
        }
    }
    m | (w & 1)
}

// ---------------------------------------------------------------------------
// Clifford words

/// `±e_{a_1} ⋯ e_{a_k}` with `a_1 < ⋯ < a_k`, the support stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffordWord {
    n: usize,
    negative: bool,
    support: u32,
}

impl CliffordWord {
    pub fn new(n: usize, negative: bool, support: u32) -> Result<Self, CliffordError> {
        if n > 32 {
            return Err(CliffordError::TooLong(n));
        }
        if n < 32 && support >> n != 0 {
            return Err(CliffordError::BadIndex { index: 31 - support.leading_zeros() as usize, n });
        }
        Ok(CliffordWord { n, negative, support })
    }

    pub fn one(n: usize) -> Self {
        CliffordWord { n, negative: false, support: 0 }
    }

    pub fn minus_one(n: usize) -> Self {
        CliffordWord { n, negative: true, support: 0 }
    }

    pub fn generator(n: usize, i: usize) -> Result<Self, CliffordError> {
        if i >= n {
            return Err(CliffordError::BadIndex { index: i, n });
        }
        Ok(CliffordWord { n, negative: false, support: 1 << i })
    }

    /// Product `e_{i_1} e_{i_2} ⋯` of generators in the order given.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self, CliffordError> {
        indices.iter().try_fold(Self::one(n), |acc, &i| Ok(acc.mul(&Self::generator(n, i)?)))
    }

    /// `ω = e_0 ⋯ e_{n-1}`.
    pub fn omega(n: usize) -> Self {
        CliffordWord { n, negative: false, support: if n == 32 { u32::MAX } else { (1 << n) - 1 } }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn support(&self) -> u32 {
        self.support
    }

    pub fn len(&self) -> usize {
        self.support.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.support == 0
    }

    pub fn is_even(&self) -> bool {
        self.len().is_multiple_of(2)
    }

    pub fn negate(&self) -> Self {
        CliffordWord { negative: !self.negative, ..*self }
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, CliffordError> {
        if self.n != o.n {
            return Err(CliffordError::LengthMismatch(self.n, o.n));
        }
        Ok(self.mul(o))
    }

    /// Normal-ordered product: one sign per transposition and per squared
    /// generator.
    pub fn mul(&self, o: &Self) -> Self {
        let mut swaps = 0u32;
        let mut b = o.support;
        while b != 0 {
            let j = b.trailing_zeros();
            let above = if j == 31 { 0 } else { !((2u32 << j) - 1) };
            swaps += (self.support & above).count_ones();
            b &= b - 1;
        }
        swaps += (self.support & o.support).count_ones();
        CliffordWord {
            n: self.n,
            negative: self.negative ^ o.negative ^ (swaps % 2 == 1),
            support: self.support ^ o.support,
        }
    }

    pub fn inverse(&self) -> Self {
        // w w^{-1} = 1 with w^{-1} = ±w
        let sq = self.mul(self);
        if sq.negative {
            self.negate()
        } else {
            *self
        }
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        self.mul(o) == o.mul(self)
    }

    /// All `2^{n+1}` words.
    pub fn all(n: usize) -> Vec<CliffordWord> {
        let mut out = Vec::with_capacity(2 << n);
        for negative in [false, true] {
            for support in 0..(1u32 << n) {
                out.push(CliffordWord { n, negative, support });
            }
        }
        out
    }

    /// All even words.
    pub fn all_even(n: usize) -> Vec<CliffordWord> {
        Self::all(n).into_iter().filter(CliffordWord::is_even).collect()
    }

    fn indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.support >> i & 1 == 1).collect()
    }

    /// Parse `"0,1"`, `"-0,1"` or `"-"` style words (generators in order).
    pub fn parse(n: usize, s: &str) -> Result<Self, CliffordError> {
        let s = s.trim();
        let (neg, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let idx: Vec<usize> = rest
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| CliffordError::BadIndex { index: usize::MAX, n }))
            .collect::<Result<_, _>>()?;
        let w = Self::from_indices(n, &idx)?;
        Ok(if neg { w.negate() } else { w })
    }
}

impl fmt::Display for CliffordWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "+" };
        if self.support == 0 {
            return write!(f, "{sign}1");
        }
        let body: Vec<String> = self.indices().iter().map(|i| format!("e{i}")).collect();
        write!(f, "{sign}{}", body.join(""))
    }
}

// ---------------------------------------------------------------------------
// Signed permutation matrices

/// Row `r` has its single nonzero entry `signs[r]` in column `cols[r]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedMatrix {
    cols: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedMatrix {
    pub fn identity(d: usize) -> Self {
        SignedMatrix { cols: (0..d).collect(), signs: vec![1; d] }
    }

    pub fn from_rows(rows: &[(usize, i8)]) -> Self {
        SignedMatrix { cols: rows.iter().map(|r| r.0).collect(), signs: rows.iter().map(|r| r.1).collect() }
    }

    /// Parse a dense `{-1, 0, 1}` matrix; `None` unless it is a signed permutation.
    pub fn from_dense(m: &[Vec<i32>]) -> Option<Self> {
        let d = m.len();
        let mut cols = Vec::with_capacity(d);
        let mut signs = Vec::with_capacity(d);
        let mut seen = vec![false; d];
        for row in m {
            let nz: Vec<usize> = (0..d).filter(|&c| row[c] != 0).collect();
            if nz.len() != 1 || row[nz[0]].abs() != 1 || seen[nz[0]] {
                return None;
            }
            seen[nz[0]] = true;
            cols.push(nz[0]);
            signs.push(row[nz[0]] as i8);
        }
        Some(SignedMatrix { cols, signs })
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> i32 {
        if self.cols[r] == c {
            self.signs[r] as i32
        } else {
            0
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i32>> {
        (0..self.dim()).map(|r| (0..self.dim()).map(|c| self.entry(r, c)).collect()).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        SignedMatrix {
            cols: self.cols.iter().map(|&k| o.cols[k]).collect(),
            signs: self.cols.iter().zip(&self.signs).map(|(&k, &s)| s * o.signs[k]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SignedMatrix { cols: self.cols.clone(), signs: self.signs.iter().map(|s| -s).collect() }
    }

    pub fn scale(&self, s: i8) -> Self {
        if s < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim();
        let mut cols = vec![0; d];
        let mut signs = vec![0; d];
        for r in 0..d {
            cols[self.cols[r]] = r;
            signs[self.cols[r]] = self.signs[r];
        }
        SignedMatrix { cols, signs }
    }

    pub fn trace(&self) -> i32 {
        (0..self.dim()).filter(|&r| self.cols[r] == r).map(|r| self.signs[r] as i32).sum()
    }

    /// Determinant: sign of the permutation times the product of the signs.
    pub fn det(&self) -> i32 {
        let d = self.dim();
        let mut seen = vec![false; d];
        let mut parity = 0;
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut k = s;
            while !seen[k] {
                seen[k] = true;
                k = self.cols[k];
                len += 1;
            }
            parity += len - 1;
        }
        let prod: i32 = self.signs.iter().map(|&s| s as i32).product();
        if parity % 2 == 0 {
            prod
        } else {
            -prod
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(r, &c)| r == c) && self.signs.iter().all(|&s| s == 1)
    }

    pub fn is_minus_identity(&self) -> bool {
        self.neg().is_identity()
    }

    pub fn is_diagonal(&self) -> bool {
        self.cols.iter().enumerate().all(|(r, &c)| r == c)
    }

    pub fn diagonal_signs(&self) -> Option<Vec<i8>> {
        self.is_diagonal().then(|| self.signs.clone())
    }

    pub fn kron(&self, o: &Self) -> Self {
        let (a, b) = (self.dim(), o.dim());
        let mut cols = Vec::with_capacity(a * b);
        let mut signs = Vec::with_capacity(a * b);
        for r in 0..a {
            for s in 0..b {
                cols.push(self.cols[r] * b + o.cols[s]);
                signs.push(self.signs[r] * o.signs[s]);
            }
        }
        SignedMatrix { cols, signs }
    }

    /// `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let d = a.dim();
        let mut cols = a.cols.clone();
        cols.extend(b.cols.iter().map(|c| c + d));
        let mut signs = a.signs.clone();
        signs.extend_from_slice(&b.signs);
        SignedMatrix { cols, signs }
    }

    /// Whether the matrix is the permutation `r ↦ r XOR x` with all signs `+`.
    pub fn is_xor_permutation(&self, x: usize) -> bool {
        self.cols.iter().enumerate().all(|(r, &c)| c == r ^ x) && self.signs.iter().all(|&s| s == 1)
    }

    /// Decompose as `± P_1 ⊗ ⋯ ⊗ P_k` with each `P_i` a real Pauli matrix.
    pub fn pauli_decomposition(&self) -> Option<(i8, Vec<Pauli>)> {
        let d = self.dim();
        if !d.is_power_of_two() {
            return None;
        }
        let k = d.trailing_zeros() as usize;
        let x = self.cols[0];
        if self.cols.iter().enumerate().any(|(r, &c)| c != r ^ x) {
            return None;
        }
        // sign(r) = s0 · (-1)^{⟨z, r⟩}
        let s0 = self.signs[0];
        let mut z = 0usize;
        for b in 0..k {
            if self.signs[1 << b] != s0 {
                z |= 1 << b;
            }
        }
        if (0..d).any(|r| self.signs[r] != if (z & r).count_ones().is_multiple_of(2) { s0 } else { -s0 }) {
            return None;
        }
        let mut overall = s0;
        let mut factors = Vec::with_capacity(k);
        for b in (0..k).rev() {
            let f = match (x >> b & 1, z >> b & 1) {
                (0, 0) => Pauli::Id,
                (0, _) => Pauli::Z,
                (_, 0) => Pauli::X,
                _ => {
                    // J = [[0,-1],[1,0]] has sign -(-1)^r.
                    overall = -overall;
                    Pauli::J
                }
            };
            factors.push(f);
        }
        Some((overall, factors))
    }
}

/// Real Pauli matrices `σ_0, σ_1, J = σ_1σ_3, σ_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pauli {
    Id,
    X,
    J,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> SignedMatrix {
        match self {
            Pauli::Id => SignedMatrix::identity(2),
            Pauli::X => SignedMatrix::from_rows(&[(1, 1), (0, 1)]),
            Pauli::J => SignedMatrix::from_rows(&[(1, -1), (0, 1)]),
            Pauli::Z => SignedMatrix::from_rows(&[(0, 1), (1, -1)]),
        }
    }
}

pub fn kron_all(fs: &[Pauli]) -> SignedMatrix {
    fs.iter().fold(SignedMatrix::identity(1), |acc, f| acc.kron(&f.matrix()))
}

impl fmt::Display for SignedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// E-matrices and spinor representations

const E_DATA: [[(usize, i8); 8]; 7] = [
    [(1, -1), (0, 1), (3, -1), (2, 1), (5, 1), (4, -1), (7, 1), (6, -1)],
    [(2, -1), (3, 1), (0, 1), (1, -1), (6, -1), (7, 1), (4, 1), (5, -1)],
    [(3, -1), (2, -1), (1, 1), (0, 1), (7, -1), (6, -1), (5, 1), (4, 1)],
    [(4, -1), (5, -1), (6, 1), (7, 1), (0, 1), (1, 1), (2, -1), (3, -1)],
    [(5, -1), (4, 1), (7, -1), (6, 1), (1, -1), (0, 1), (3, -1), (2, 1)],
    [(6, -1), (7, -1), (4, -1), (5, -1), (2, 1), (3, 1), (0, 1), (1, 1)],
    [(7, -1), (6, 1), (5, 1), (4, -1), (3, 1), (2, -1), (1, -1), (0, 1)],
];

/// `E_1, …, E_7` (index 0 holds `E_1`).
pub fn e_matrices() -> Vec<SignedMatrix> {
    E_DATA.iter().map(|rows| SignedMatrix::from_rows(rows)).collect()
}

/// Sign choice for the two half-spin representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chirality {
    Plus,
    Minus,
}

/// `Δ^±` on even words of `F_8`, determined by `Δ^±(e_0 e_i) = ±E_i`.
///
/// Writing an even word as a product of adjacent pairs, `e_a e_b = g_a g_b`
/// for `a, b ≥ 1` and `e_0 e_b = g_b`, where `g_i = e_0 e_i`.
pub fn spinor_rep(chirality: Chirality, w: &CliffordWord) -> Result<SignedMatrix, CliffordError> {
    if w.n != 8 {
        return Err(CliffordError::LengthMismatch(w.n, 8));
    }
    if !w.is_even() {
        return Err(CliffordError::OddWord);
    }
    let e = e_matrices();
    let idx = w.indices();
    let mut m = SignedMatrix::identity(8);
    let mut gens = 0;
    for pair in idx.chunks(2) {
        for &a in pair {
            if a != 0 {
                m = m.mul(&e[a - 1]);
                gens += 1;
            }
        }
    }
    let mut sign: i8 = if w.negative { -1 } else { 1 };
    if chirality == Chirality::Minus && gens % 2 == 1 {
        sign = -sign;
    }
    Ok(m.scale(sign))
}

/// Lifts `±e_h` of the Hamming-8 codewords: the abelian group `H̃`.
pub fn h_tilde() -> Vec<CliffordWord> {
    let mut out = Vec::with_capacity(32);
    for w in hamming8().words() {
        let mask = (0..8).fold(0u32, |m, k| m | (w.get(k) << k));
        out.push(CliffordWord { n: 8, negative: false, support: mask });
        out.push(CliffordWord { n: 8, negative: true, support: mask });
    }
    out.sort();
    out
}

/// Signed lifts `±e_{b_i}` of the left-line complements, the sign chosen so
/// that `Δ^+` sends `b_i` to the permutation `r ↦ r XOR i`.
pub fn b_lifts() -> Vec<CliffordWord> {
    FanoData::new()
        .bvecs
        .iter()
        .map(|b| {
            let w = CliffordWord { n: 8, negative: false, support: parity_mask(b) };
            let m = spinor_rep(Chirality::Plus, &w).expect("even");
            if m.signs.iter().all(|&s| s < 0) {
                w.negate()
            } else {
                w
            }
        })
        .collect()
}

/// The section `H ⊂ H̃`: elements whose `Δ^+` image fixes the first basis
/// vector. `Δ^+` maps `H̃` onto the diagonal Pauli group and is induced from
/// this character.
pub fn h_section() -> Vec<CliffordWord> {
    h_tilde()
        .into_iter()
        .filter(|w| spinor_rep(Chirality::Plus, w).map(|m| m.is_diagonal() && m.entry(0, 0) == 1).unwrap_or(false))
        .collect()
}

/// The character `χ^±` on `H̃`.
pub fn chi(chirality: Chirality, w: &CliffordWord, section: &HashSet<CliffordWord>) -> i32 {
    let base = if section.contains(w) { 1 } else { -1 };
    match chirality {
        Chirality::Plus => base,
        Chirality::Minus => {
            if w.support & 1 == 1 {
                -base
            } else {
                base
            }
        }
    }
}

/// `π(e_A)`: conjugation `e_i ↦ e_A e_i e_A^{-1}` on the generators.
pub fn pi_rep(w: &CliffordWord) -> SignedMatrix {
    let rows: Vec<(usize, i8)> = (0..w.n)
        .map(|i| {
            let g = CliffordWord { n: w.n, negative: false, support: 1 << i };
            let c = w.mul(&g).mul(&w.inverse());
            (i, if c.negative { -1 } else { 1 })
        })
        .collect();
    SignedMatrix::from_rows(&rows)
}

/// The Bott representation `Δ` of `F_8` on `R^16`.
///
/// On even words it is `diag(Δ^+, Δ^-)`; `e_0` acts by `[[0, -I], [I, 0]]`.
pub fn bott_rep(w: &CliffordWord) -> SignedMatrix {
    if w.is_even() {
        let p = spinor_rep(Chirality::Plus, w).expect("even word");
        let m = spinor_rep(Chirality::Minus, w).expect("even word");
        SignedMatrix::block_diag(&p, &m)
    } else {
        let e0 = CliffordWord { n: 8, negative: false, support: 1 };
        // w = e_0 · (e_0^{-1} w)
        let rest = e0.inverse().mul(w);
        bott_e0().mul(&bott_rep(&rest))
    }
}

fn bott_e0() -> SignedMatrix {
    let mut rows = Vec::with_capacity(16);
    for r in 0..8 {
        rows.push((r + 8, -1));
    }
    for r in 0..8 {
        rows.push((r, 1));
    }
    SignedMatrix::from_rows(&rows)
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, pass, detail));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

pub fn fano_report() -> Report {
    let mut r = Report::new("fano");
    for (name, ok) in FanoData::new().checks() {
        r.push(name, ok, "");
    }
    let h7_size = {
        let fano = FanoData::new();
        let mut span = BTreeSet::from([[0u8; 7]]);
        let mut gens = fano.cvecs.clone();
        gens.push([1; 7]);
        for g in gens {
            let more: Vec<[u8; 7]> = span.iter().map(|x| std::array::from_fn(|k| x[k] ^ g[k])).collect();
            span.extend(more);
        }
        span.len()
    };
    r.push("h7_has_16_words", h7_size == 16, format!("|H_7| = {h7_size}"));
    r
}

/// Diagonal `±σ_3^a ⊗ σ_3^b ⊗ σ_3^c` for all signs and `(a, b, c)`.
pub fn pauli_hamming() -> Vec<SignedMatrix> {
    let mut out = Vec::with_capacity(16);
    for neg in [false, true] {
        for abc in 0..8usize {
            let fs: Vec<Pauli> = (0..3).rev().map(|b| if abc >> b & 1 == 1 { Pauli::Z } else { Pauli::Id }).collect();
            let m = kron_all(&fs);
            out.push(if neg { m.neg() } else { m });
        }
    }
    out
}

/// Bit pattern of a diagonal sign matrix: bit `k` is set where the entry is `-1`.
pub fn sign_bits(m: &SignedMatrix) -> Option<u32> {
    m.diagonal_signs().map(|s| s.iter().enumerate().fold(0, |acc, (k, &x)| acc | (u32::from(x < 0) << k)))
}

fn hamming_masks() -> BTreeSet<u32> {
    hamming8().words().map(|w| (0..8).fold(0u32, |m, k| m | (w.get(k) << k))).collect()
}

pub fn pauli_hamming_report() -> Report {
    let mut r = Report::new("pauli_hamming");
    let mats = pauli_hamming();
    let bits: BTreeSet<u32> = mats.iter().filter_map(sign_bits).collect();
    r.push("sixteen_distinct_diagonals", bits.len() == 16, format!("{} patterns", bits.len()));
    r.push("diagonals_are_hamming8", bits == hamming_masks(), "");
    let fano = FanoData::new();
    let from_fano: BTreeSet<u32> = {
        let mut s = BTreeSet::from([0u32]);
        let mut gens: Vec<u32> = fano.cvecs.iter().map(parity_mask).collect();
        gens.push(parity_mask(&[1; 7]));
        for g in gens {
            let more: Vec<u32> = s.iter().map(|x| x ^ g).collect();
            s.extend(more);
        }
        s
    };
    r.push("fano_construction_matches", from_fano == hamming_masks(), "");
    r
}

pub fn e_matrix_report() -> Report {
    let mut r = Report::new("e_matrices");
    let e = e_matrices();
    let minus_i = SignedMatrix::identity(8).neg();
    for (i, a) in e.iter().enumerate() {
        r.push(format!("E{}_squared_is_minus_identity", i + 1), a.mul(a) == minus_i, "");
        r.push(format!("E{}_det_is_unit", i + 1), a.det().abs() == 1, format!("det = {}", a.det()));
        for (j, b) in e.iter().enumerate().skip(i + 1) {
            r.push(format!("E{}E{}_anticommute", i + 1, j + 1), a.mul(b) == b.mul(a).neg(), "");
        }
    }
    r
}

pub fn word_group_report() -> Report {
    let mut r = Report::new("clifford_words");
    let all = CliffordWord::all(8);
    let even = CliffordWord::all_even(8);
    r.push("order_F8_is_512", all.len() == 512, format!("{}", all.len()));
    r.push("order_F8_even_is_256", even.len() == 256, format!("{}", even.len()));
    let centre: Vec<CliffordWord> = even.iter().copied().filter(|a| even.iter().all(|b| a.commutes_with(b))).collect();
    let omega = CliffordWord::omega(8);
    let expected = BTreeSet::from([CliffordWord::one(8), CliffordWord::minus_one(8), omega, omega.negate()]);
    r.push(
        "centre_is_plus_minus_one_omega",
        centre.iter().copied().collect::<BTreeSet<_>>() == expected,
        format!("{} central elements", centre.len()),
    );
    let omega_sq = omega.mul(&omega);
    r.push("omega_squared_is_one", omega_sq == CliffordWord::one(8), omega_sq.to_string());

    // F_8^ev = B ⋉ H̃
    let ht = h_tilde();
    let fano = FanoData::new();
    let mut b_words = vec![CliffordWord::one(8)];
    for b in &fano.bvecs {
        b_words.push(CliffordWord { n: 8, negative: false, support: parity_mask(b) });
    }
    let b_span: BTreeSet<u32> = {
        let mut s = BTreeSet::from([0u32]);
        for w in &b_words {
            let more: Vec<u32> = s.iter().map(|x| x ^ w.support).collect();
            s.extend(more);
        }
        s
    };
    let b_lifts: Vec<CliffordWord> =
        b_span.iter().map(|&m| CliffordWord { n: 8, negative: false, support: m }).collect();
    let products: BTreeSet<CliffordWord> = b_lifts.iter().flat_map(|b| ht.iter().map(move |h| b.mul(h))).collect();
    r.push(
        "even_words_factor_uniquely_as_b_times_h",
        b_lifts.len() == 8 && products.len() == 256 && products.iter().all(CliffordWord::is_even),
        format!("{} products", products.len()),
    );
    let action_ok = b_lifts.iter().all(|b| {
        ht.iter().all(|h| {
            let conj = b.mul(h).mul(&b.inverse());
            let odd = (b.support & h.support).count_ones() % 2 == 1;
            conj == if odd { h.negate() } else { *h }
        })
    });
    r.push("b_acts_on_h_by_pairing_sign", action_ok, "");
    let abelian = ht.iter().all(|a| ht.iter().all(|b| a.commutes_with(b)));
    r.push("h_tilde_is_abelian", abelian, "");
    let elementary = ht.iter().all(|a| a.mul(a) == CliffordWord::one(8));
    r.push("h_tilde_is_elementary_abelian", elementary, "");

    // e_0..e_7 hit distinct cosets e_i H̃.
    let cosets: BTreeSet<BTreeSet<CliffordWord>> = (0..8)
        .map(|i| {
            let g = CliffordWord::generator(8, i).expect("in range");
            ht.iter().map(|h| g.mul(h)).collect()
        })
        .collect();
    let covered: BTreeSet<CliffordWord> = cosets.iter().flatten().copied().collect();
    r.push(
        "generators_are_coset_representatives",
        cosets.len() == 8 && covered.len() == 256 && covered.iter().all(|w| !w.is_even()),
        format!("{} cosets", cosets.len()),
    );

    // Even lifts commute iff supports meet evenly.
    let law = even.iter().filter(|w| !w.negative).all(|a| {
        even.iter()
            .filter(|w| !w.negative)
            .all(|b| a.commutes_with(b) == ((a.support & b.support).count_ones() % 2 == 0))
    });
    r.push("even_commutator_law", law, "");
    r
}

pub fn spinor_report() -> Report {
    let mut r = Report::new("spinors");
    let even = CliffordWord::all_even(8);
    let e = e_matrices();
    for (i, ei) in e.iter().enumerate() {
        let g = CliffordWord::from_indices(8, &[0, i + 1]).expect("in range");
        r.push(
            format!("delta_plus_e0e{}_is_E{}", i + 1, i + 1),
            spinor_rep(Chirality::Plus, &g).ok().as_ref() == Some(ei),
            "",
        );
        r.push(
            format!("delta_minus_e0e{}_is_minus_E{}", i + 1, i + 1),
            spinor_rep(Chirality::Minus, &g).ok() == Some(ei.neg()),
            "",
        );
    }
    for chir in [Chirality::Plus, Chirality::Minus] {
        let imgs: Vec<SignedMatrix> = even.iter().map(|w| spinor_rep(chir, w).expect("even")).collect();
        let index: BTreeMap<CliffordWord, usize> = even.iter().enumerate().map(|(k, w)| (*w, k)).collect();
        let hom = even
            .iter()
            .enumerate()
            .all(|(i, a)| even.iter().enumerate().all(|(j, b)| imgs[index[&a.mul(b)]] == imgs[i].mul(&imgs[j])));
        r.push(format!("{chir:?}_is_homomorphism").to_lowercase(), hom, "all 256 x 256 pairs");
        let minus = spinor_rep(chir, &CliffordWord::minus_one(8)).expect("even");
        r.push(format!("{chir:?}_centre_faithful").to_lowercase(), minus.is_minus_identity(), "");
    }
    // B acts by the xor permutations.
    let lifts = b_lifts();
    for (i, w) in lifts.iter().enumerate() {
        let m = spinor_rep(Chirality::Plus, w).expect("even");
        r.push(format!("b{}_acts_as_xor_{}", i + 1, i + 1), m.is_xor_permutation(i + 1), format!("word {w}"));
    }
    let mut closure: BTreeSet<CliffordWord> = BTreeSet::from([CliffordWord::one(8)]);
    for g in &lifts {
        let more: Vec<CliffordWord> = closure.iter().map(|x| x.mul(g)).collect();
        closure.extend(more);
    }
    r.push("b_lifts_form_subgroup_of_order_8", closure.len() == 8, format!("{} elements", closure.len()));
    let section = h_section();
    let sec: HashSet<CliffordWord> = section.iter().copied().collect();
    r.push("h_section_has_16_elements", section.len() == 16, format!("{}", section.len()));
    let closed = section.iter().all(|a| section.iter().all(|b| sec.contains(&a.mul(b))));
    r.push("h_section_is_subgroup", closed, "");
    let images: BTreeSet<SignedMatrix> =
        h_tilde().iter().map(|h| spinor_rep(Chirality::Plus, h).expect("even")).collect();
    let paulis: BTreeSet<SignedMatrix> = pauli_hamming().into_iter().collect();
    r.push("delta_plus_maps_h_tilde_onto_pauli_group", images == paulis, format!("{} images", images.len()));
    let minus_ok = h_tilde().iter().all(|h| {
        let m = spinor_rep(Chirality::Minus, h).expect("even");
        m.is_diagonal() && m.entry(0, 0) == chi(Chirality::Minus, h, &sec)
    });
    r.push("delta_minus_first_line_is_chi_minus", minus_ok, "");
    // Induced characters.
    let ht: HashSet<CliffordWord> = h_tilde().into_iter().collect();
    for chir in [Chirality::Plus, Chirality::Minus] {
        let mut all_match = true;
        let mut at_one = 0;
        let mut at_minus_one = 0;
        for g in &even {
            let mut sum = 0i32;
            for x in &even {
                let c = x.mul(g).mul(&x.inverse());
                if ht.contains(&c) {
                    sum += chi(chir, &c, &sec);
                }
            }
            let induced = sum / ht.len() as i32;
            let tr = spinor_rep(chir, g).expect("even").trace();
            all_match &= sum % ht.len() as i32 == 0 && induced == tr;
            if *g == CliffordWord::one(8) {
                at_one = induced;
            }
            if *g == CliffordWord::minus_one(8) {
                at_minus_one = induced;
            }
        }
        let tag = format!("{chir:?}").to_lowercase();
        r.push(format!("induced_character_{tag}_matches_trace"), all_match, "256 elements");
        r.push(format!("induced_character_{tag}_dimension_8"), at_one == 8, format!("{at_one}"));
        r.push(format!("induced_character_{tag}_at_minus_one"), at_minus_one == -8, format!("{at_minus_one}"));
    }
    r
}

/// Kernels of `Δ^+`, `Δ^-` and `π` on the centre `{±1, ±ω}`.
#[derive(Debug, Clone, Serialize)]
pub struct TrialityKernels {
    pub delta_plus: Vec<String>,
    pub delta_minus: Vec<String>,
    pub pi: Vec<String>,
}

pub fn triality_kernels() -> TrialityKernels {
    let omega = CliffordWord::omega(8);
    let centre = [CliffordWord::one(8), CliffordWord::minus_one(8), omega, omega.negate()];
    let kernel = |f: &dyn Fn(&CliffordWord) -> SignedMatrix| -> Vec<String> {
        centre.iter().filter(|w| f(w).is_identity()).map(|w| w.to_string()).collect()
    };
    TrialityKernels {
        delta_plus: kernel(&|w| spinor_rep(Chirality::Plus, w).expect("even")),
        delta_minus: kernel(&|w| spinor_rep(Chirality::Minus, w).expect("even")),
        pi: kernel(&pi_rep),
    }
}

pub fn triality_report() -> Report {
    let mut r = Report::new("triality");
    let k = triality_kernels();
    let omega = CliffordWord::omega(8);
    let one = CliffordWord::one(8).to_string();
    r.push("ker_delta_plus_is_omega", k.delta_plus == vec![one.clone(), omega.to_string()], k.delta_plus.join(", "));
    r.push(
        "ker_delta_minus_is_minus_omega",
        k.delta_minus == vec![one.clone(), omega.negate().to_string()],
        k.delta_minus.join(", "),
    );
    r.push("ker_pi_is_minus_one", k.pi == vec![one, CliffordWord::minus_one(8).to_string()], k.pi.join(", "));
    // On the whole group ker π is {±1}.
    let all_ker: Vec<CliffordWord> =
        CliffordWord::all_even(8).into_iter().filter(|w| pi_rep(w).is_identity()).collect();
    r.push("ker_pi_on_even_words", all_ker.len() == 2, format!("{} elements", all_ker.len()));
    r
}

/// Rank of integer row vectors modulo the prime `2^31 - 1`.
pub fn rank_mod_prime(rows: &[Vec<i64>]) -> usize {
    const P: i64 = 2_147_483_647;
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(P)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let pow = |mut b: i64, mut e: i64| {
        let mut acc = 1i64;
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as i128 * b as i128 % P as i128) as i64;
            }
            b = (b as i128 * b as i128 % P as i128) as i64;
            e >>= 1;
        }
        acc
    };
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow(m[rank][c], P - 2);
        for x in m[rank].iter_mut() {
            *x = (*x as i128 * inv as i128 % P as i128) as i64;
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = ((m[i][j] as i128 - f as i128 * m[rank][j] as i128).rem_euclid(P as i128)) as i64;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn bott_report() -> Report {
    let mut r = Report::new("bott");
    let positive: Vec<CliffordWord> = CliffordWord::all(8).into_iter().filter(|w| !w.negative).collect();
    let imgs: Vec<SignedMatrix> = positive.iter().map(bott_rep).collect();
    let flat: Vec<Vec<i64>> =
        imgs.iter().map(|m| m.to_dense().into_iter().flatten().map(i64::from).collect()).collect();
    let rank = rank_mod_prime(&flat);
    r.push("flattened_rank_256", rank == 256, format!("rank {rank}"));
    let decomps: Vec<Option<(i8, Vec<Pauli>)>> = imgs.iter().map(SignedMatrix::pauli_decomposition).collect();
    let all_tensor = decomps.iter().all(Option::is_some);
    let distinct: BTreeSet<Vec<Pauli>> = decomps.iter().flatten().map(|(_, f)| f.clone()).collect();
    r.push(
        "images_are_pauli_tensor_products",
        all_tensor && distinct.len() == 256,
        format!("{} distinct tensor patterns", distinct.len()),
    );
    let all: Vec<CliffordWord> = CliffordWord::all(8);
    let index: BTreeMap<CliffordWord, SignedMatrix> = all.iter().map(|w| (*w, bott_rep(w))).collect();
    let hom = all.iter().all(|a| all.iter().all(|b| index[&a.mul(b)] == index[a].mul(&index[b])));
    r.push("bott_is_homomorphism_on_F8", hom, "512 x 512 pairs");
    r.push("minus_one_to_minus_identity", index[&CliffordWord::minus_one(8)].is_minus_identity(), "");
    let omega = bott_rep(&CliffordWord::omega(8));
    r.push("omega_to_sigma3_id_id_id", omega == kron_all(&[Pauli::Z, Pauli::Id, Pauli::Id, Pauli::Id]), "");
    let e1 = bott_rep(&CliffordWord::generator(8, 1).expect("in range"));
    let e1_minus = SignedMatrix::identity(2).kron(&e_matrices()[0]).neg();
    let expected_e1 = Pauli::X
        .matrix()
        .kron(&SignedMatrix::identity(8))
        .mul(&SignedMatrix::block_diag(&e_matrices()[0].neg(), &e_matrices()[0].neg()));
    r.push(
        "e1_to_sigma1_tensor_minus_E1",
        e1 == expected_e1 && expected_e1 == Pauli::X.matrix().kron(&SignedMatrix::identity(8)).mul(&e1_minus),
        "",
    );
    // res Δ = Δ+ ⊕ Δ-
    let res_ok = CliffordWord::all_even(8).iter().all(|w| {
        bott_rep(w).trace()
            == spinor_rep(Chirality::Plus, w).expect("even").trace()
                + spinor_rep(Chirality::Minus, w).expect("even").trace()
    });
    r.push("restriction_is_delta_plus_plus_delta_minus", res_ok, "");
    r
}

/// All Clifford and Fano checks.
pub fn clifford_verify() -> Vec<Report> {
    vec![
        fano_report(),
        pauli_hamming_report(),
        e_matrix_report(),
        word_group_report(),
        spinor_report(),
        triality_report(),
        bott_report(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(idx: &[usize]) -> CliffordWord {
        CliffordWord::from_indices(8, idx).unwrap()
    }

    #[test]
    fn word_products() {
        let e01 = w(&[0, 1]);
        assert_eq!(e01.mul(&e01), CliffordWord::minus_one(8));
        let omega = CliffordWord::omega(8);
        assert_eq!(omega.mul(&omega), CliffordWord::one(8));
        let rep = (0..8).fold(CliffordWord::one(8), |acc, i| acc.mul(&CliffordWord::generator(8, i).unwrap()));
        assert_eq!(rep, omega);
        let a = w(&[3, 1, 4]);
        assert_eq!(a.mul(&CliffordWord::one(8)), a);
        assert_eq!(w(&[1, 0]), w(&[0, 1]).negate());
        assert_eq!(CliffordWord::generator(3, 3).unwrap_err(), CliffordError::BadIndex { index: 3, n: 3 });
        assert_eq!(
            CliffordWord::one(3).checked_mul(&CliffordWord::one(4)).unwrap_err(),
            CliffordError::LengthMismatch(3, 4)
        );
    }

    #[test]
    fn parse_words() {
        assert_eq!(CliffordWord::parse(8, "0,1").unwrap(), w(&[0, 1]));
        assert_eq!(CliffordWord::parse(8, "-1 0").unwrap(), w(&[0, 1]));
        assert_eq!(CliffordWord::parse(8, "").unwrap(), CliffordWord::one(8));
        assert!(CliffordWord::parse(8, "9").is_err());
        assert_eq!(w(&[0, 2]).to_string(), "+e0e2");
    }

    #[test]
    fn e_matrix_examples() {
        let e = e_matrices();
        let minus = SignedMatrix::identity(8).neg();
        assert_eq!(e[0].mul(&e[0]), minus);
        let anti = e[0].mul(&e[1]).to_dense();
        let anti2 = e[1].mul(&e[0]).to_dense();
        for r in 0..8 {
            for c in 0..8 {
                assert_eq!(anti[r][c] + anti2[r][c], 0);
            }
        }
        assert!(e.iter().all(|m| m.det().abs() == 1));
        assert!(e_matrix_report().passed());
    }

    #[test]
    fn e1_matches_printed_rows() {
        let d = e_matrices()[0].to_dense();
        assert_eq!(d[0][1], -1);
        assert_eq!(d[1][0], 1);
        assert_eq!(d[4][5], 1);
        assert_eq!(d[7][6], -1);
    }

    #[test]
    fn spinor_examples() {
        assert_eq!(spinor_rep(Chirality::Plus, &w(&[0, 1])).unwrap(), e_matrices()[0]);
        let b4 = b_lifts()[3];
        assert_eq!(b4, w(&[1, 4, 6, 7]).negate());
        let m = spinor_rep(Chirality::Plus, &b4).unwrap();
        assert!(m.is_xor_permutation(4));
        assert_eq!(m, kron_all(&[Pauli::X, Pauli::Id, Pauli::Id]));
        for c in [Chirality::Plus, Chirality::Minus] {
            assert!(spinor_rep(c, &CliffordWord::one(8)).unwrap().is_identity());
        }
        assert_eq!(spinor_rep(Chirality::Plus, &w(&[1])).unwrap_err(), CliffordError::OddWord);
    }

    #[test]
    fn pauli_examples() {
        let mats = pauli_hamming();
        assert!(mats[0].is_identity());
        assert_eq!(sign_bits(&mats[0]), Some(0));
        let m111 = &mats[7];
        assert_eq!(m111.diagonal_signs().unwrap(), vec![1, -1, -1, 1, -1, 1, 1, -1]);
        assert_eq!(sign_bits(m111).unwrap().count_ones(), 4);
        assert!(pauli_hamming_report().passed());
    }

    #[test]
    fn triality_examples() {
        let omega = CliffordWord::omega(8);
        assert!(spinor_rep(Chirality::Plus, &omega).unwrap().is_identity());
        assert!(spinor_rep(Chirality::Minus, &omega.negate()).unwrap().is_identity());
        assert!(spinor_rep(Chirality::Plus, &omega.negate()).unwrap().is_minus_identity());
        assert!(triality_report().passed());
    }

    #[test]
    fn fano_examples() {
        let f = FanoData::new();
        let checks = f.checks();
        assert!(checks.values().all(|&b| b), "{checks:?}");
        assert!(fano_report().passed());
    }

    #[test]
    fn pauli_decomposition_round_trip() {
        let fs = [Pauli::J, Pauli::Z, Pauli::X, Pauli::Id];
        let m = kron_all(&fs).neg();
        assert_eq!(m.pauli_decomposition(), Some((-1, fs.to_vec())));
        assert_eq!(Pauli::J.matrix(), Pauli::X.matrix().mul(&Pauli::Z.matrix()));
    }

    #[test]
    fn full_suite() {
        for rep in clifford_verify() {
            let bad: Vec<_> = rep.failures().iter().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            assert!(bad.is_empty(), "{}: {bad:?}", rep.title);
        }
    }

    #[test]
    fn rank_helper() {
        assert_eq!(rank_mod_prime(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_mod_prime(&[vec![1, 0], vec![0, -3]]), 2);
    }
}
