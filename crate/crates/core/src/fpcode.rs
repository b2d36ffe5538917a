//! Codes over prime fields.
//!
//! A [`Code`] is a finite set of words in `F_p^n`. Linear codes additionally
//! carry a basis in reduced row echelon form, which is what duality and the
//! lattice construction work from. Arbitrary (non-linear) word sets are
//! first-class: weight enumerators and the coset theta machinery accept them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cliffcode::FanoData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("prime {0} too large for the digit representation (must be < 256)")]
    PrimeTooLarge(u32),
    #[error("entry {entry} out of range for p = {p}")]
    EntryOutOfRange { entry: u32, p: u32 },
    #[error("word has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("codes have different parameters: (p, n) = ({0}, {1}) vs ({2}, {3})")]
    ParameterMismatch(u32, usize, u32, usize),
    #[error("operation requires a linear code")]
    NotLinear,
    #[error("doubly-even is only defined for binary codes (p = {0})")]
    NotBinary(u32),
    #[error("monomial scalar at position {0} is zero")]
    ZeroScalar(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown standard code `{0}` (expected hamming8, tetracode or golay12)")]
    UnknownCode(String),
    #[error("code file parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u32) -> Result<(), CodeError> {
    if !is_prime(p) {
        return Err(CodeError::NotPrime(p));
    }
    if p >= 256 {
        return Err(CodeError::PrimeTooLarge(p));
    }
    Ok(())
}

/// Multiplicative inverse in `F_p`, `a` nonzero.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is tiny.
    let mut result = 1u64;
    let mut base = (a % p) as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// A word of `F_p^n`, stored as one digit per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    p: u32,
    entries: Vec<u8>,
}

impl Word {
    pub fn new(p: u32, entries: Vec<u32>) -> Result<Self, CodeError> {
        check_prime(p)?;
        let entries = entries
            .into_iter()
            .map(|e| if e < p { Ok(e as u8) } else { Err(CodeError::EntryOutOfRange { entry: e, p }) })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word { p, entries })
    }

    pub(crate) fn from_digits(p: u32, entries: Vec<u8>) -> Self {
        debug_assert!(entries.iter().all(|&e| (e as u32) < p));
        Word { p, entries }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        Word { p, entries: vec![0; n] }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i] as u32
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    pub fn add(&self, other: &Word) -> Word {
        let p = self.p;
        let entries =
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| ((a as u32 + b as u32) % p) as u8).collect();
        Word { p, entries }
    }

    pub fn neg(&self) -> Word {
        let p = self.p;
        let entries = self.entries.iter().map(|&a| ((p - a as u32) % p) as u8).collect();
        Word { p, entries }
    }

    pub fn scale(&self, c: u32) -> Word {
        let p = self.p;
        let entries = self.entries.iter().map(|&a| ((a as u32 * c) % p) as u8).collect();
        Word { p, entries }
    }

    /// Standard inner product `Σ a_i b_i mod p`.
    pub fn dot(&self, other: &Word) -> u32 {
        let p = self.p;
        self.entries.iter().zip(&other.entries).fold(0u32, |acc, (&a, &b)| (acc + a as u32 * b as u32) % p)
    }

    /// Symmetrized profile `(l_0, …, l_r)`: `l_0` counts zeros, `l_j` counts
    /// entries equal to `±j`. For `p = 2` the profile is `(zeros, ones)`.
    pub fn profile(&self) -> Vec<u32> {
        let r = symbol_classes(self.p);
        let mut l = vec![0u32; r + 1];
        for &e in &self.entries {
            l[symbol_class(e as u32, self.p)] += 1;
        }
        l
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Number `r` of nonzero symbol classes `{±1}, …, {±r}`.
pub fn symbol_classes(p: u32) -> usize {
    if p == 2 {
        1
    } else {
        ((p - 1) / 2) as usize
    }
}

/// Class index of a digit: `min(e, p - e)`.
pub fn symbol_class(e: u32, p: u32) -> usize {
    let e = e % p;
    e.min(p - e) as usize
}

/// Reduced row echelon basis of the span of `rows` over `F_p`, together with
/// the pivot columns.
pub(crate) fn rref(p: u32, n: usize, rows: &[Vec<u8>]) -> (Vec<Vec<u8>>, Vec<usize>) {
    let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row >= m.len() {
            break;
        }
        let Some(sel) = (row..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, sel);
        let inv = inv_mod(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != row && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..n {
                    m[i][j] = (m[i][j] + (p - f) * m[row][j]) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m.into_iter().map(|r| r.into_iter().map(|x| x as u8).collect()).collect(), pivots)
}

/// All `F_p`-combinations of `basis`.
fn span(p: u32, n: usize, basis: &[Vec<u8>]) -> BTreeSet<Word> {
    let mut words = BTreeSet::new();
    words.insert(Word::zero(p, n));
    for b in basis {
        let bw = Word::from_digits(p, b.clone());
        let mut next = BTreeSet::new();
        for w in &words {
            let mut cur = w.clone();
            for _ in 0..p {
                next.insert(cur.clone());
                cur = cur.add(&bw);
            }
        }
        words = next;
    }
    words
}

/// Where a code came from, for [`Code::new`].
#[derive(Debug, Clone)]
pub enum CodeSource {
    Words(Vec<Word>),
    Generators(Vec<Word>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    p: u32,
    n: usize,
    words: BTreeSet<Word>,
    /// Reduced row echelon basis; present iff the code is linear.
    basis: Option<Vec<Word>>,
    pivots: Vec<usize>,
}

impl Code {
    pub fn new(p: u32, n: usize, source: CodeSource) -> Result<Self, CodeError> {
        match source {
            CodeSource::Words(w) => Self::from_words(p, n, w),
            CodeSource::Generators(g) => Self::from_generators(p, n, g),
        }
    }

    fn validate(p: u32, n: usize, words: &[Word]) -> Result<(), CodeError> {
        check_prime(p)?;
        for w in words {
            if w.p != p {
                return Err(CodeError::ParameterMismatch(p, n, w.p, w.len()));
            }
            if w.len() != n {
                return Err(CodeError::LengthMismatch { expected: n, found: w.len() });
            }
        }
        Ok(())
    }

    /// Code spanned by `generators`.
    pub fn from_generators(p: u32, n: usize, generators: Vec<Word>) -> Result<Self, CodeError> {
        Self::validate(p, n, &generators)?;
        let rows: Vec<Vec<u8>> = generators.into_iter().map(|w| w.entries).collect();
        let (basis, pivots) = rref(p, n, &rows);
        let words = span(p, n, &basis);
        Ok(Code { p, n, words, basis: Some(basis.into_iter().map(|r| Word::from_digits(p, r)).collect()), pivots })
    }

    /// Code consisting of exactly the given words. Linearity is detected: if
    /// the set is a subspace, a basis is attached.
    pub fn from_words(p: u32, n: usize, words: Vec<Word>) -> Result<Self, CodeError> {
        Self::validate(p, n, &words)?;
        let words: BTreeSet<Word> = words.into_iter().collect();
        let rows: Vec<Vec<u8>> = words.iter().map(|w| w.entries.clone()).collect();
        let (basis, pivots) = rref(p, n, &rows);
        // The span has p^rank elements and contains every word, so equal
        // cardinality means the set is the span.
        let linear = (p as u128).checked_pow(basis.len() as u32) == Some(words.len() as u128);
        let (basis, pivots) = if linear {
            (Some(basis.into_iter().map(|r| Word::from_digits(p, r)).collect()), pivots)
        } else {
            (None, Vec::new())
        };
        Ok(Code { p, n, words, basis, pivots })
    }

    pub fn zero(p: u32, n: usize) -> Result<Self, CodeError> {
        Self::from_generators(p, n, Vec::new())
    }

    /// The full code `F_p^n`.
    pub fn full(p: u32, n: usize) -> Result<Self, CodeError> {
        let gens = (0..n)
            .map(|i| {
                let mut e = vec![0u8; n];
                e[i] = 1;
                Word::from_digits(p, e)
            })
            .collect();
        Self::from_generators(p, n, gens)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn is_linear(&self) -> bool {
        self.basis.is_some()
    }

    /// Reduced row echelon generators, if linear.
    pub fn generators(&self) -> Option<&[Word]> {
        self.basis.as_deref()
    }

    /// Pivot columns of the echelon basis (empty for non-linear codes).
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dimension(&self) -> Option<usize> {
        self.basis.as_ref().map(|b| b.len())
    }

    /// `C^⊥` under the standard inner product.
    pub fn dual(&self) -> Result<Code, CodeError> {
        let basis = self.basis.as_ref().ok_or(CodeError::NotLinear)?;
        let p = self.p;
        let n = self.n;
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        // For each free column f, the null vector with x_f = 1, other free
        // columns 0, and x_{pivot_i} = -row_i[f].
        let gens = free
            .iter()
            .map(|&f| {
                let mut x = vec![0u8; n];
                x[f] = 1;
                for (row, &pc) in basis.iter().zip(&self.pivots) {
                    x[pc] = ((p - row.get(f)) % p) as u8;
                }
                Word::from_digits(p, x)
            })
            .collect();
        Code::from_generators(p, n, gens)
    }

    pub fn weight_enumerator(&self) -> WeightEnumerator {
        let r = symbol_classes(self.p);
        let mut coefficients = BTreeMap::new();
        for w in &self.words {
            *coefficients.entry(w.profile()).or_insert(0u64) += 1;
        }
        WeightEnumerator { p: self.p, n: self.n, r, coefficients }
    }

    pub fn is_self_orthogonal(&self) -> Result<bool, CodeError> {
        let basis = self.basis.as_ref().ok_or(CodeError::NotLinear)?;
        Ok(basis.iter().all(|a| basis.iter().all(|b| a.dot(b) == 0)))
    }

    pub fn is_self_dual(&self) -> Result<bool, CodeError> {
        Ok(self.is_self_orthogonal()? && 2 * self.dimension().unwrap_or(0) == self.n)
    }

    pub fn is_doubly_even(&self) -> Result<bool, CodeError> {
        if self.p != 2 {
            return Err(CodeError::NotBinary(self.p));
        }
        Ok(self.words.iter().all(|w| w.weight() % 4 == 0))
    }

    /// Minimum Hamming weight over nonzero words; `None` when there are none.
    pub fn min_distance(&self) -> Option<usize> {
        self.words.iter().filter(|w| !w.is_zero()).map(Word::weight).min()
    }

    /// All predicates at once; entries that do not apply are `None`.
    pub fn predicates(&self) -> CodePredicates {
        CodePredicates {
            self_orthogonal: self.is_self_orthogonal().ok(),
            self_dual: self.is_self_dual().ok(),
            doubly_even: self.is_doubly_even().ok(),
            min_distance: self.min_distance(),
        }
    }

    /// Weight histogram `weight -> number of words`.
    pub fn weight_distribution(&self) -> BTreeMap<usize, usize> {
        let mut d = BTreeMap::new();
        for w in &self.words {
            *d.entry(w.weight()).or_insert(0) += 1;
        }
        d
    }

    pub fn apply_monomial(&self, g: &MonomialTransform) -> Result<Code, CodeError> {
        if g.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, found: g.len() });
        }
        g.check(self.p)?;
        let words: Vec<Word> = self.words.iter().map(|w| g.apply(w)).collect();
        match &self.basis {
            Some(basis) => {
                let gens = basis.iter().map(|w| g.apply(w)).collect();
                Code::from_generators(self.p, self.n, gens)
            }
            None => Code::from_words(self.p, self.n, words),
        }
    }

    /// Parse the text code format: a header line `p n`, then one word per
    /// line as `n` whitespace-separated digits. Lines starting with `#` and
    /// blank lines are ignored.
    pub fn parse(text: &str) -> Result<Code, CodeError> {
        let mut header: Option<(u32, usize)> = None;
        let mut words = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|e| CodeError::Parse { line: i + 1, msg: format!("`{t}`: {e}") }))
                .collect::<Result<_, _>>()?;
            match header {
                None => {
                    if nums.len() != 2 {
                        return Err(CodeError::Parse { line: i + 1, msg: "expected header `p n`".into() });
                    }
                    check_prime(nums[0])?;
                    header = Some((nums[0], nums[1] as usize));
                }
                Some((p, n)) => {
                    if nums.len() != n {
                        return Err(CodeError::LengthMismatch { expected: n, found: nums.len() });
                    }
                    words.push(Word::new(p, nums)?);
                }
            }
        }
        let (p, n) = header.ok_or(CodeError::Parse { line: 0, msg: "missing header".into() })?;
        Code::from_words(p, n, words)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.p, self.n);
        for w in &self.words {
            s.push_str(&w.to_string());
            s.push('\n');
        }
        s
    }
}

impl FromStr for Code {
    type Err = CodeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Code::parse(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodePredicates {
    pub self_orthogonal: Option<bool>,
    pub self_dual: Option<bool>,
    pub doubly_even: Option<bool>,
    pub min_distance: Option<usize>,
}

impl CodePredicates {
    /// Min distance at least 3.
    pub fn simply_error_correcting(&self) -> bool {
        self.min_distance.is_some_and(|d| d >= 3)
    }
}

/// Symmetrized complete weight enumerator
/// `W_C(x_0, …, x_r) = Σ_w x_0^{l_0(w)} ⋯ x_r^{l_r(w)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub p: u32,
    pub n: usize,
    pub r: usize,
    /// Exponent tuple `(l_0, …, l_r)` to number of words.
    pub coefficients: BTreeMap<Vec<u32>, u64>,
}

impl WeightEnumerator {
    pub fn total(&self) -> u64 {
        self.coefficients.values().sum()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> u64 {
        self.coefficients.get(exponents).copied().unwrap_or(0)
    }

    /// Evaluate at integer points.
    pub fn evaluate(&self, x: &[i64]) -> i128 {
        self.coefficients
            .iter()
            .map(|(e, &c)| c as i128 * e.iter().zip(x).map(|(&k, &v)| (v as i128).pow(k)).product::<i128>())
            .sum()
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (e, c) in self.coefficients.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { format!("x{j}") } else { format!("x{j}^{k}") })
                .collect();
            let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
            terms.push(if *c == 1 { mono } else { format!("{c}*{mono}") });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Monomial transformation `g: e_i ↦ c_i e_{σ^{-1}(i)}`.
///
/// Stored as `perm[i] = σ(i)` and `scalars[i] = c_i`. On words this reads
/// `g(w)_k = c_{σ(k)} · w_{σ(k)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialTransform {
    perm: Vec<usize>,
    scalars: Vec<u32>,
}

impl MonomialTransform {
    pub fn new(perm: Vec<usize>, scalars: Vec<u32>) -> Result<Self, CodeError> {
        let n = perm.len();
        if scalars.len() != n {
            return Err(CodeError::InvalidPermutation(format!("{} scalars for {} positions", scalars.len(), n)));
        }
        let mut seen = vec![false; n];
        for &s in &perm {
            if s >= n || seen[s] {
                return Err(CodeError::InvalidPermutation(format!("{perm:?}")));
            }
            seen[s] = true;
        }
        Ok(MonomialTransform { perm, scalars })
    }

    pub fn identity(n: usize) -> Self {
        MonomialTransform { perm: (0..n).collect(), scalars: vec![1; n] }
    }

    /// Pure coordinate permutation.
    pub fn permutation(perm: Vec<usize>) -> Result<Self, CodeError> {
        let n = perm.len();
        Self::new(perm, vec![1; n])
    }

    /// Pure diagonal scaling.
    pub fn scaling(scalars: Vec<u32>) -> Self {
        MonomialTransform { perm: (0..scalars.len()).collect(), scalars }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    fn check(&self, p: u32) -> Result<(), CodeError> {
        match self.scalars.iter().position(|&c| c % p == 0) {
            Some(i) => Err(CodeError::ZeroScalar(i)),
            None => Ok(()),
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        let p = w.p;
        let entries = (0..w.len())
            .map(|k| {
                let s = self.perm[k];
                ((self.scalars[s] % p) * w.get(s) % p) as u8
            })
            .collect();
        Word { p, entries }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &MonomialTransform) -> MonomialTransform {
        // (h∘g)(w)_k = c^h_{σh(k)} c^g_{σg(σh(k))} w_{σg(σh(k))}
        let n = self.len();
        let perm: Vec<usize> = (0..n).map(|k| first.perm[self.perm[k]]).collect();
        let mut scalars = vec![0u32; n];
        for k in 0..n {
            scalars[perm[k]] = self.scalars[self.perm[k]] * first.scalars[perm[k]];
        }
        MonomialTransform { perm, scalars }
    }
}

/// Names of the built-in codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardCode {
    Hamming8,
    Tetracode,
    Golay12,
}

impl FromStr for StandardCode {
    type Err = CodeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hamming8" | "h8" => Ok(StandardCode::Hamming8),
            "tetracode" => Ok(StandardCode::Tetracode),
            "golay12" | "golay" => Ok(StandardCode::Golay12),
            other => Err(CodeError::UnknownCode(other.to_string())),
        }
    }
}

/// Generator matrix `[I_6 | A]` of the extended ternary Golay code.
const GOLAY12_GENERATORS: [[u8; 12]; 6] = [
    [1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
    [0, 1, 0, 0, 0, 0, 1, 0, 1, 2, 2, 1],
    [0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 2, 2],
    [0, 0, 0, 1, 0, 0, 1, 2, 1, 0, 1, 2],
    [0, 0, 0, 0, 1, 0, 1, 2, 2, 1, 0, 1],
    [0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 1, 0],
];

pub fn standard_code(name: StandardCode) -> Code {
    match name {
        StandardCode::Hamming8 => hamming8(),
        StandardCode::Tetracode => tetracode(),
        StandardCode::Golay12 => {
            let gens = GOLAY12_GENERATORS.iter().map(|r| Word::from_digits(3, r.to_vec())).collect();
            Code::from_generators(3, 12, gens).expect("embedded Golay generators are valid")
        }
    }
}

/// Look a code up by name.
pub fn standard_code_by_name(name: &str) -> Result<Code, CodeError> {
    Ok(standard_code(name.parse()?))
}

/// `T = {(s, a, a+s, a+2s)}`.
pub fn tetracode() -> Code {
    let gens = vec![Word::from_digits(3, vec![0, 1, 1, 1]), Word::from_digits(3, vec![1, 0, 1, 2])];
    Code::from_generators(3, 4, gens).expect("tetracode generators are valid")
}

/// The (8,4) Hamming code: line complements of the Fano plane plus the all-ones
/// vector give `H_7`, and the parity map `v ↦ (|v|, v)` extends to length 8.
/// Coordinate 0 is the parity bit; coordinate `k` is Fano point `k`.
pub fn hamming8() -> Code {
    let fano = FanoData::new();
    let mut gens: Vec<Word> = fano.c_vectors().iter().map(|c| Word::from_digits(2, c.to_vec())).collect();
    gens.push(Word::from_digits(2, vec![1; 7]));
    let h7 = Code::from_generators(2, 7, gens).expect("Fano generators are valid");
    let words = h7.words().map(parity_extend).collect();
    Code::from_words(2, 8, words).expect("parity extension preserves parameters")
}

/// `v ↦ (|v| mod 2, v)`.
pub fn parity_extend(v: &Word) -> Word {
    let mut e = Vec::with_capacity(v.len() + 1);
    e.push((v.weight() % 2) as u8);
    e.extend_from_slice(v.digits());
    Word::from_digits(2, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: u32, e: &[u32]) -> Word {
        Word::new(p, e.to_vec()).unwrap()
    }

    #[test]
    fn tetracode_from_paper_generators() {
        let t = Code::from_generators(3, 4, vec![w(3, &[0, 1, 1, 2]), w(3, &[1, 0, 1, 1])]).unwrap();
        assert_eq!(t.len(), 9);
        assert!(t.is_self_dual().unwrap());
        // These generators give the image of (s, a, a+s, a+2s) under negating the last coordinate.
        let flip = MonomialTransform::scaling(vec![1, 1, 1, 2]);
        assert_eq!(t.apply_monomial(&flip).unwrap(), tetracode());
        let std = tetracode();
        for s in 0..3 {
            for a in 0..3 {
                assert!(std.contains(&w(3, &[s, a, (a + s) % 3, (a + 2 * s) % 3])));
            }
        }
    }

    #[test]
    fn zero_code_singleton() {
        let z = Code::from_words(3, 1, vec![w(3, &[0])]).unwrap();
        assert_eq!(z.len(), 1);
        assert!(z.is_linear());
        assert_eq!(z.dimension(), Some(0));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Word::new(4, vec![0]).unwrap_err(), CodeError::NotPrime(4));
        assert_eq!(Word::new(3, vec![0, 3]).unwrap_err(), CodeError::EntryOutOfRange { entry: 3, p: 3 });
        let err = Code::from_words(3, 2, vec![w(3, &[0, 1, 2])]).unwrap_err();
        assert_eq!(err, CodeError::LengthMismatch { expected: 2, found: 3 });
        assert!(matches!(Code::zero(9, 2), Err(CodeError::NotPrime(9))));
    }

    #[test]
    fn hamming8_basic() {
        let h = hamming8();
        assert_eq!(h.len(), 16);
        assert_eq!(h.n(), 8);
        assert_eq!(h.dimension(), Some(4));
        let dist = h.weight_distribution();
        assert_eq!(dist, BTreeMap::from([(0, 1), (4, 14), (8, 1)]));
        let pr = h.predicates();
        assert_eq!(pr.self_orthogonal, Some(true));
        assert_eq!(pr.self_dual, Some(true));
        assert_eq!(pr.doubly_even, Some(true));
        assert_eq!(pr.min_distance, Some(4));
        assert!(pr.simply_error_correcting());
    }

    #[test]
    fn duals() {
        assert_eq!(tetracode().dual().unwrap(), tetracode());
        assert_eq!(hamming8().dual().unwrap(), hamming8());
        assert_eq!(Code::zero(5, 3).unwrap().dual().unwrap(), Code::full(5, 3).unwrap());
        let nonlinear = Code::from_words(3, 2, vec![w(3, &[1, 0])]).unwrap();
        assert_eq!(nonlinear.dual().unwrap_err(), CodeError::NotLinear);
    }

    #[test]
    fn weight_enumerators() {
        let we = tetracode().weight_enumerator();
        assert_eq!(we.coefficients, BTreeMap::from([(vec![4, 0], 1), (vec![1, 3], 8)]));
        let wh = hamming8().weight_enumerator();
        assert_eq!(wh.coefficients, BTreeMap::from([(vec![8, 0], 1), (vec![4, 4], 14), (vec![0, 8], 1)]));
        let wz = Code::zero(5, 3).unwrap().weight_enumerator();
        assert_eq!(wz.coefficients, BTreeMap::from([(vec![3, 0, 0], 1)]));
        assert_eq!(wh.evaluate(&[1, 1]), 16);
    }

    #[test]
    fn predicates_of_tetracode_and_full_codes() {
        let pr = tetracode().predicates();
        assert_eq!(pr.self_orthogonal, Some(true));
        assert_eq!(pr.self_dual, Some(true));
        assert_eq!(pr.doubly_even, None);
        assert_eq!(pr.min_distance, Some(3));
        assert_eq!(tetracode().is_doubly_even().unwrap_err(), CodeError::NotBinary(3));

        let full = Code::full(2, 3).unwrap().predicates();
        assert_eq!(full.self_orthogonal, Some(false));
        assert_eq!(full.self_dual, Some(false));
        assert_eq!(full.doubly_even, Some(false));
        assert_eq!(full.min_distance, Some(1));

        let nonlinear = Code::from_words(3, 2, vec![w(3, &[1, 2]), w(3, &[0, 0])]).unwrap();
        assert_eq!(nonlinear.is_self_dual().unwrap_err(), CodeError::NotLinear);
    }

    #[test]
    fn golay12_is_self_dual_with_729_words() {
        let g = standard_code(StandardCode::Golay12);
        assert_eq!(g.len(), 729);
        assert_eq!(g.is_self_dual(), Ok(true));
        assert_eq!(g.min_distance(), Some(6));
        let we = g.weight_enumerator();
        assert_eq!(we.coefficient(&[12, 0]), 1);
        assert_eq!(we.coefficient(&[6, 6]), 264);
        assert_eq!(we.coefficient(&[3, 9]), 440);
        assert_eq!(we.coefficient(&[0, 12]), 24);
    }

    #[test]
    fn standard_code_names() {
        assert_eq!(standard_code_by_name("tetracode").unwrap().len(), 9);
        assert_eq!(standard_code_by_name("hamming8").unwrap().len(), 16);
        assert!(matches!(standard_code_by_name("leech"), Err(CodeError::UnknownCode(_))));
    }

    #[test]
    fn monomial_examples() {
        let t = tetracode();
        assert_eq!(t.apply_monomial(&MonomialTransform::identity(4)).unwrap(), t);
        let neg = MonomialTransform::scaling(vec![2; 4]);
        assert_eq!(t.apply_monomial(&neg).unwrap(), t);
        let z = Code::zero(3, 3).unwrap();
        let swap = MonomialTransform::permutation(vec![1, 0, 2]).unwrap();
        assert_eq!(z.apply_monomial(&swap).unwrap(), z);
        let bad = MonomialTransform::new(vec![0, 1, 2, 3], vec![1, 0, 1, 1]).unwrap();
        assert_eq!(t.apply_monomial(&bad).unwrap_err(), CodeError::ZeroScalar(1));
    }

    #[test]
    fn monomial_matches_basis_image_definition() {
        // g(e_i) = c_i e_{σ^{-1}(i)}
        let g = MonomialTransform::new(vec![2, 0, 1], vec![1, 2, 2]).unwrap();
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            let img = g.apply(&w(3, &e));
            let target = (0..3).find(|&k| g.perm[k] == i).unwrap();
            let mut expect = vec![0; 3];
            expect[target] = g.scalars[i];
            assert_eq!(img, w(3, &expect));
        }
    }

    #[test]
    fn parse_code_file() {
        let text =
            "# tetracode\n3 4\n0 0 0 0\n0 1 1 1\n0 2 2 2\n1 0 1 2\n2 0 2 1\n1 1 2 0\n2 2 1 0\n1 2 0 1\n2 1 0 2\n";
        let c: Code = text.parse().unwrap();
        assert_eq!(c, tetracode());
        assert!(c.is_linear());
        assert_eq!(Code::parse(&c.to_text()).unwrap(), c);
        assert!(matches!(Code::parse("3 2\n0 1 2\n"), Err(CodeError::LengthMismatch { .. })));
        assert!(matches!(Code::parse("4 2\n"), Err(CodeError::NotPrime(4))));
        assert!(matches!(Code::parse("3 2\n0 x\n"), Err(CodeError::Parse { line: 2, .. })));
    }

    #[test]
    fn nonlinear_detection() {
        let c = Code::from_words(3, 2, vec![w(3, &[0, 0]), w(3, &[1, 1]), w(3, &[1, 2])]).unwrap();
        assert!(!c.is_linear());
        let c = Code::from_words(3, 2, vec![w(3, &[0, 0]), w(3, &[1, 1]), w(3, &[2, 2])]).unwrap();
        assert!(c.is_linear());
    }
}
