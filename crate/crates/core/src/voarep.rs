//! Representation rings of the Eisenstein vertex algebras `V_n = V_{P^n}`.
//!
//! Irreducible `V_n`-modules are indexed by words of `F_p^n`; under the real
//! automorphisms `{±1}^n ⋊ Σ_n` a word is determined up to symmetry by its
//! profile `(l_0, …, l_r)`. Modules are handled purely through that index.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cliffcode::rank_mod_prime;
use crate::codelattice::{theta_class, CodeLattice, LatticeError};
use crate::cyclotomic::{check_odd_prime, CycError, CycRat};
use crate::fpcode::{symbol_classes, Code, CodeError, WeightEnumerator, Word};
use crate::qexp::{compose_enumerator, eta, QError, QSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("profile {profile:?} has length {found}, expected {expected}")]
    ProfileLength { profile: Vec<u32>, expected: usize, found: usize },
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("cutoff must be nonnegative")]
    NegativeCutoff,
    #[error("grade {n} exceeds the bound {max} for this check")]
    GradeTooLarge { n: u32, max: u32 },
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Series(#[from] QError),
}

/// Orbit of a word under `{±1}^n ⋊ Σ_n`, recorded by its profile.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitClass {
    p: u32,
    profile: Vec<u32>,
}

impl OrbitClass {
    pub fn new(p: u32, profile: Vec<u32>) -> Result<Self, RepError> {
        check_odd_prime(p)?;
        let expected = symbol_classes(p) + 1;
        if profile.len() != expected {
            return Err(RepError::ProfileLength { found: profile.len(), expected, profile });
        }
        Ok(OrbitClass { p, profile })
    }

    /// The orbit of the zero word of length `n`.
    pub fn zero(p: u32, n: u32) -> Result<Self, RepError> {
        let mut profile = vec![0; symbol_classes(p) + 1];
        profile[0] = n;
        Self::new(p, profile)
    }

    /// Parse `"1,3"`.
    pub fn parse(p: u32, s: &str) -> Result<Self, RepError> {
        let profile = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| CodeError::Parse { line: 1, msg: format!("bad count {t:?}") }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(p, profile)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn profile(&self) -> &[u32] {
        &self.profile
    }

    pub fn n(&self) -> u32 {
        self.profile.iter().sum()
    }

    pub fn is_zero_orbit(&self) -> bool {
        self.profile[1..].iter().all(|&l| l == 0)
    }

    /// `l_0` zeros, then `l_1` ones, `l_2` twos, and so on.
    pub fn representative(&self) -> Word {
        let digits: Vec<u32> =
            self.profile.iter().enumerate().flat_map(|(j, &l)| std::iter::repeat_n(j as u32, l as usize)).collect();
        Word::new(self.p, digits).expect("digits below p")
    }

    /// Every word in the orbit.
    pub fn words(&self) -> Vec<Word> {
        all_words(self.p, self.n() as usize).into_iter().filter(|w| orbit_of(w).as_ref() == Ok(self)).collect()
    }

    pub fn concat(&self, o: &Self) -> Result<Self, RepError> {
        if self.p != o.p {
            return Err(RepError::PrimeMismatch(self.p, o.p));
        }
        Ok(OrbitClass { p: self.p, profile: self.profile.iter().zip(&o.profile).map(|(a, b)| a + b).collect() })
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.profile.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn orbit_of(w: &Word) -> Result<OrbitClass, RepError> {
    OrbitClass::new(w.p(), w.profile())
}

fn all_words(p: u32, n: usize) -> Vec<Word> {
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut d = vec![0u32; n];
            for x in d.iter_mut().rev() {
                *x = (k % p as usize) as u32;
                k /= p as usize;
            }
            Word::new(p, d).expect("digits below p")
        })
        .collect()
}

/// All profiles of grade `n`, in lexicographic order.
pub fn orbits_of_grade(p: u32, n: u32) -> Result<Vec<OrbitClass>, RepError> {
    check_odd_prime(p)?;
    let k = symbol_classes(p) + 1;
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
    }
    let mut raw = Vec::new();
    rec(0, n, &mut cur, &mut raw);
    for profile in raw {
        out.push(OrbitClass::new(p, profile)?);
    }
    out.sort();
    Ok(out)
}

/// Orbit count of `F_p^n` under `{±1}^n ⋊ Σ_n` by breadth-first search with
/// the generators "negate coordinate 0", "swap 0 and 1" and the `n`-cycle.
pub fn brute_force_orbit_count(p: u32, n: usize) -> usize {
    let words = all_words(p, n);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut orbits = 0;
    for w in &words {
        if seen.contains(w.digits()) {
            continue;
        }
        orbits += 1;
        let mut queue = VecDeque::from([w.digits().to_vec()]);
        seen.insert(w.digits().to_vec());
        while let Some(x) = queue.pop_front() {
            let mut next = Vec::new();
            if n > 0 {
                let mut y = x.clone();
                y[0] = (p as u8 - y[0]) % p as u8;
                next.push(y);
                let mut c = x.clone();
                c.rotate_left(1);
                next.push(c);
            }
            if n > 1 {
                let mut y = x.clone();
                y.swap(0, 1);
                next.push(y);
            }
            for y in next {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    orbits
}

/// Finitely supported combination of orbit classes with coefficients in `Q(ζ_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepElement {
    p: u32,
    terms: BTreeMap<OrbitClass, CycRat>,
}

impl RepElement {
    pub fn zero(p: u32) -> Self {
        RepElement { p, terms: BTreeMap::new() }
    }

    /// The class of `V_0` itself, the unit of the ring.
    pub fn unit(p: u32) -> Result<Self, RepError> {
        Ok(Self::from_orbit(OrbitClass::zero(p, 0)?))
    }

    pub fn from_orbit(o: OrbitClass) -> Self {
        let p = o.p;
        RepElement { p, terms: BTreeMap::from([(o, CycRat::one(p))]) }
    }

    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (OrbitClass, CycRat)>) -> Result<Self, RepError> {
        let mut out = Self::zero(p);
        for (o, c) in terms {
            if o.p != p {
                return Err(RepError::PrimeMismatch(p, o.p));
            }
            out.accumulate(o, c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, o: OrbitClass, c: CycRat) {
        let slot = self.terms.entry(o).or_insert_with(|| CycRat::zero(c.numer().p()));
        *slot = &*slot + &c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OrbitClass, &CycRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, o: &OrbitClass) -> CycRat {
        self.terms.get(o).cloned().unwrap_or_else(|| CycRat::zero(self.p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Grades present in the support.
    pub fn grades(&self) -> BTreeSet<u32> {
        self.terms.keys().map(OrbitClass::n).collect()
    }

    /// Whether every coefficient is a rational integer.
    pub fn is_integer_valued(&self) -> bool {
        self.terms.values().all(|c| c.as_integer().is_some())
    }

    pub fn add(&self, o: &Self) -> Result<Self, RepError> {
        if self.p != o.p {
            return Err(RepError::PrimeMismatch(self.p, o.p));
        }
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.accumulate(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &CycRat) -> Self {
        let mut out = Self::zero(self.p);
        for (o, c) in &self.terms {
            out.accumulate(o.clone(), c * k);
        }
        out
    }

    /// Product induced by `Rep(V_n) ⊗ Rep(V_m) → Rep(V_{n+m})`.
    pub fn mul(&self, o: &Self) -> Result<Self, RepError> {
        if self.p != o.p {
            return Err(RepError::PrimeMismatch(self.p, o.p));
        }
        let mut out = Self::zero(self.p);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.accumulate(a.concat(b)?, ca * cb);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for RepElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(o, c)| format!("{c}*{o}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn rep_mul(a: &RepElement, b: &RepElement) -> Result<RepElement, RepError> {
    a.mul(b)
}

/// `M_C = Σ_{w ∈ C} [V_{P^n + w}]`.
pub fn module_of_code(c: &Code) -> Result<RepElement, RepError> {
    let mut out = RepElement::zero(c.p());
    for w in c.words() {
        out.accumulate(orbit_of(w)?, CycRat::one(c.p()));
    }
    Ok(out)
}

/// Central charge and conformal weight of `V_{P^n + w}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionMeta {
    pub central_charge: u64,
    pub conformal_weight: String,
    pub leading_exponent: String,
}

/// Coset theta series `Σ_{x ∈ P^n + w} q^{⟨x,x⟩/2}` through `cutoff`, by
/// direct enumeration of the coset.
pub fn coset_theta(o: &OrbitClass, cutoff: Rational64) -> Result<QSeries, RepError> {
    if cutoff < Rational64::zero() {
        return Err(RepError::NegativeCutoff);
    }
    if o.n() == 0 {
        return Ok(QSeries::one(o.p, cutoff));
    }
    let lattice = CodeLattice::zero_code(o.p, o.n() as usize)?;
    let order = num_rational::BigRational::new(BigInt::from(*cutoff.numer()), BigInt::from(*cutoff.denom()));
    Ok(lattice.theta_series(Some(&o.representative()), &order)?)
}

/// `Z = η^{-n(p-1)} · Σ_{x ∈ P^n + w} q^{⟨x,x⟩/2}` through `cutoff`.
pub fn partition_function(o: &OrbitClass, cutoff: Rational64) -> Result<(QSeries, PartitionMeta), RepError> {
    let d = o.n() as i64 * (o.p as i64 - 1);
    let shift = Rational64::new(d, 24);
    let theta = coset_theta(o, cutoff + shift)?;
    let eta_cut = cutoff + Rational64::new(d + 1, 24);
    let eta_inv = eta(o.p, eta_cut)?.pow(-d)?;
    let z = eta_inv.mul(&theta)?.truncate(cutoff);
    let h = theta
        .valuation()
        .ok_or(QError::CutoffTooLow { cutoff: cutoff.to_string(), leading: "conformal weight".to_string() })?;
    Ok((
        z,
        PartitionMeta {
            central_charge: d as u64,
            conformal_weight: h.to_string(),
            leading_exponent: (h - shift).to_string(),
        },
    ))
}

/// `Z([M]) = η^{n(p-1)} Z_M`, i.e. the coset theta series, extended linearly.
pub fn z_map(x: &RepElement, cutoff: Rational64) -> Result<QSeries, RepError> {
    let mut total = QSeries::zero(x.p, cutoff);
    for (o, c) in &x.terms {
        total = total.add(&coset_theta(o, cutoff)?.scale(c))?;
    }
    Ok(total)
}

/// Formal monomial `θ_0^{l_0} ⋯ θ_r^{l_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ThetaMonomial {
    pub p: u32,
    pub exponents: Vec<u32>,
}

impl ThetaMonomial {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, o: &Self) -> Result<Self, RepError> {
        if self.p != o.p {
            return Err(RepError::PrimeMismatch(self.p, o.p));
        }
        Ok(ThetaMonomial {
            p: self.p,
            exponents: self.exponents.iter().zip(&o.exponents).map(|(a, b)| a + b).collect(),
        })
    }

    /// Evaluate on `(θ_0, …, θ_r)` q-expansions.
    pub fn evaluate(&self, thetas: &[QSeries]) -> Result<QSeries, RepError> {
        let we = WeightEnumerator {
            p: self.p,
            n: self.degree() as usize,
            r: self.exponents.len() - 1,
            coefficients: BTreeMap::from([(self.exponents.clone(), 1)]),
        };
        Ok(compose_enumerator(&we, thetas)?)
    }
}

impl fmt::Display for ThetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, &k)| if k == 1 { format!("θ{j}") } else { format!("θ{j}^{k}") })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

pub fn z_tilde(o: &OrbitClass) -> ThetaMonomial {
    ThetaMonomial { p: o.p, exponents: o.profile.clone() }
}

/// `(θ_0, …, θ_r)` through `cutoff`.
pub fn theta_classes(p: u32, cutoff: Rational64) -> Result<Vec<QSeries>, RepError> {
    (0..=symbol_classes(p) as u32).map(|j| Ok(theta_class(p, j, cutoff)?)).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Grade-`n` correspondence between orbits and theta monomials.
#[derive(Debug, Clone, Serialize)]
pub struct MainTheoremReport {
    pub p: u32,
    pub n: u32,
    pub orbits: usize,
    pub monomials: u64,
    pub brute_force_orbits: Option<usize>,
    pub z_tilde_injective: bool,
    pub bijective: bool,
    /// Rank of the coefficient matrix of the coset theta series, when computed.
    pub image_rank: Option<usize>,
    pub images_independent: Option<bool>,
    pub cutoff: Option<String>,
    /// Bijectivity onto the theta-monomial basis is claimed for `p ∈ {3, 5}` only.
    pub bijectivity_asserted: bool,
    pub note: String,
    pub passed: bool,
}

/// Words are enumerated for the orbit count while `p^n` stays below this.
pub const BRUTE_FORCE_LIMIT: usize = 400_000;
/// Coset theta series are enumerated while the lattice rank stays below this.
pub const IMAGE_RANK_LIMIT: u32 = 16;

/// With `cutoff = None` only the combinatorial correspondence is checked;
/// otherwise the coset theta series of the grade-`n` orbits are also tested
/// for linear independence through `cutoff`.
pub fn main_theorem_check(p: u32, n: u32, cutoff: Option<Rational64>) -> Result<MainTheoremReport, RepError> {
    check_odd_prime(p)?;
    let r = symbol_classes(p) as u64;
    let orbits = orbits_of_grade(p, n)?;
    let monomials = binomial(n as u64 + r, r);
    let brute = (p as f64).powi(n as i32) <= BRUTE_FORCE_LIMIT as f64;
    let brute_force_orbits = brute.then(|| brute_force_orbit_count(p, n as usize));
    let images: BTreeSet<ThetaMonomial> = orbits.iter().map(z_tilde).collect();
    let z_tilde_injective = images.len() == orbits.len() && images.iter().all(|m| m.degree() == n);
    let bijective =
        z_tilde_injective && orbits.len() as u64 == monomials && brute_force_orbits.is_none_or(|b| b == orbits.len());

    let (image_rank, images_independent) = match cutoff.filter(|_| n * (p - 1) <= IMAGE_RANK_LIMIT) {
        Some(cutoff) => {
            let series: Vec<QSeries> = orbits.iter().map(|o| coset_theta(o, cutoff)).collect::<Result<_, _>>()?;
            let exps: BTreeSet<Rational64> = series.iter().flat_map(|s| s.terms().map(|(e, _)| *e)).collect();
            let rows: Vec<Vec<i64>> = series
                .iter()
                .map(|s| exps.iter().map(|e| s.int_coefficient(*e).and_then(|c| c.to_i64()).unwrap_or(0)).collect())
                .collect();
            let rank = rank_mod_prime(&rows);
            (Some(rank), Some(rank == orbits.len()))
        }
        None => (None, None),
    };
    let asserted = p == 3 || p == 5;
    let note = if asserted {
        "bases biject; bijectivity asserted".to_string()
    } else {
        "map well-defined, bijectivity onto the theta-monomial ring not asserted".to_string()
    };
    let passed = bijective && images_independent != Some(false);
    Ok(MainTheoremReport {
        p,
        n,
        orbits: orbits.len(),
        monomials,
        brute_force_orbits,
        z_tilde_injective,
        bijective,
        image_rank,
        images_independent,
        cutoff: cutoff.map(|c| c.to_string()),
        bijectivity_asserted: asserted,
        note,
        passed,
    })
}

/// For every orbit of grade at most `max_n`, whether all of its words give
/// the same coset theta series through `cutoff`.
pub fn orbit_invariance(p: u32, max_n: u32, cutoff: Rational64) -> Result<Vec<(OrbitClass, bool)>, RepError> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let lattice = if n > 0 { Some(CodeLattice::zero_code(p, n as usize)?) } else { None };
        let order = num_rational::BigRational::new(BigInt::from(*cutoff.numer()), BigInt::from(*cutoff.denom()));
        for o in orbits_of_grade(p, n)? {
            let reference = coset_theta(&o, cutoff)?;
            let mut same = true;
            if let Some(l) = &lattice {
                for w in o.words() {
                    same &= l.theta_series(Some(&w), &order)? == reference;
                }
            }
            out.push((o, same));
        }
    }
    Ok(out)
}
