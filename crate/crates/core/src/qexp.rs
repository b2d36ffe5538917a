//! Truncated series in rational powers of `q` with coefficients in `Q(ζ_p)`.
//!
//! A [`QSeries`] knows its coefficients exactly for every exponent up to and
//! including its cutoff, and nothing beyond. Every operation propagates the
//! cutoff conservatively so two series can be compared without ever touching
//! an unknown coefficient.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycError, CycRat, CycRatJson};
use crate::fpcode::WeightEnumerator;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
    #[error("series over different primes ({0} vs {1})")]
    PrimeMismatch(u32, u32),
    #[error("series has no known nonzero coefficient to invert")]
    NotInvertible,
    #[error("expected {expected} series, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("exponent {exp} has denominator not dividing p = {p}")]
    ShiftDenominator { exp: String, p: u32 },
    #[error("cutoff {cutoff} below the leading exponent {leading}")]
    CutoffTooLow { cutoff: String, leading: String },
    #[error("malformed exponent `{0}`")]
    BadExponent(String),
}

/// Parse `"k/N"` or `"k"`.
pub fn parse_exponent(s: &str) -> Result<Rational64, QError> {
    let bad = || QError::BadExponent(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(a, b))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn big_to_r64(q: &BigRational) -> Rational64 {
    Rational64::new(
        q.numer().to_i64().expect("exponent numerator fits i64"),
        q.denom().to_i64().expect("exponent denominator fits i64"),
    )
}

fn floor_steps(x: Rational64, n: i64) -> i64 {
    (x * n).floor().to_integer()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    p: u32,
    terms: BTreeMap<Rational64, CycRat>,
    cutoff: Rational64,
}

/// One serialized term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: String,
    pub coef: CycRatJson,
}

impl QSeries {
    /// The zero series, known through `cutoff`.
    pub fn zero(p: u32, cutoff: Rational64) -> Self {
        QSeries { p, terms: BTreeMap::new(), cutoff }
    }

    pub fn one(p: u32, cutoff: Rational64) -> Self {
        Self::monomial(p, Rational64::zero(), CycRat::one(p), cutoff)
    }

    pub fn monomial(p: u32, exp: Rational64, coef: CycRat, cutoff: Rational64) -> Self {
        Self::from_terms(p, vec![(exp, coef)], cutoff)
    }

    /// Terms above `cutoff` and zero coefficients are dropped; repeated
    /// exponents accumulate.
    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (Rational64, CycRat)>, cutoff: Rational64) -> Self {
        let mut map: BTreeMap<Rational64, CycRat> = BTreeMap::new();
        for (e, c) in terms {
            if e > cutoff {
                continue;
            }
            match map.get_mut(&e) {
                Some(x) => *x = &*x + &c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        QSeries { p, terms: map, cutoff }
    }

    pub(crate) fn from_big_terms(p: u32, terms: Vec<(BigRational, CycRat)>, cutoff: BigRational) -> Self {
        Self::from_terms(p, terms.into_iter().map(|(e, c)| (big_to_r64(&e), c)), big_to_r64(&cutoff))
    }

    /// Series with integer coefficients given as `(exponent, value)` pairs.
    pub fn from_integers(p: u32, terms: &[(Rational64, i64)], cutoff: Rational64) -> Self {
        Self::from_terms(p, terms.iter().map(|&(e, c)| (e, CycRat::from_int(p, c))), cutoff)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn cutoff(&self) -> Rational64 {
        self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational64, &CycRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^e`; `None` when `e` lies beyond the cutoff.
    pub fn coefficient(&self, e: Rational64) -> Option<CycRat> {
        if e > self.cutoff {
            return None;
        }
        Some(self.terms.get(&e).cloned().unwrap_or_else(|| CycRat::zero(self.p)))
    }

    /// Integer coefficient of `q^e`, if known and integral.
    pub fn int_coefficient(&self, e: Rational64) -> Option<BigInt> {
        self.coefficient(e)?.as_integer()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rational64> {
        self.terms.keys().next().copied()
    }

    /// Common exponent denominator `N`.
    pub fn denominator(&self) -> i64 {
        self.terms.keys().fold(1i64, |acc, e| acc.lcm(e.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.as_integer().is_some())
    }

    fn same_p(&self, o: &Self) -> Result<(), QError> {
        if self.p == o.p {
            Ok(())
        } else {
            Err(QError::PrimeMismatch(self.p, o.p))
        }
    }

    /// Restrict to a smaller cutoff.
    pub fn truncate(&self, cutoff: Rational64) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        QSeries { p: self.p, terms: self.terms.range(..=cutoff).map(|(e, c)| (*e, c.clone())).collect(), cutoff }
    }

    pub fn add(&self, o: &Self) -> Result<Self, QError> {
        self.same_p(o)?;
        let cutoff = self.cutoff.min(o.cutoff);
        let terms = self.terms.range(..=cutoff).chain(o.terms.range(..=cutoff)).map(|(e, c)| (*e, c.clone()));
        Ok(Self::from_terms(self.p, terms, cutoff))
    }

    pub fn neg(&self) -> Self {
        QSeries { p: self.p, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(), cutoff: self.cutoff }
    }

    pub fn sub(&self, o: &Self) -> Result<Self, QError> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &CycRat) -> Self {
        Self::from_terms(self.p, self.terms.iter().map(|(e, c)| (*e, c * k)), self.cutoff)
    }

    /// Multiply by `q^s`.
    pub fn shift_exponent(&self, s: Rational64) -> Self {
        QSeries {
            p: self.p,
            terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
            cutoff: self.cutoff + s,
        }
    }

    fn lowest_or_cutoff(&self) -> Rational64 {
        self.valuation().unwrap_or(self.cutoff)
    }

    pub fn mul(&self, o: &Self) -> Result<Self, QError> {
        self.same_p(o)?;
        let cutoff = (self.cutoff + o.lowest_or_cutoff()).min(o.cutoff + self.lowest_or_cutoff());
        let mut acc: BTreeMap<Rational64, CycRat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea + eb;
                if e > cutoff {
                    break;
                }
                let t = ca * cb;
                match acc.get_mut(&e) {
                    Some(x) => *x = &*x + &t,
                    None => {
                        acc.insert(e, t);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(QSeries { p: self.p, terms: acc, cutoff })
    }

    /// Multiplicative inverse. The result is known through
    /// `-v + (cutoff - v)` where `v` is the valuation.
    pub fn inv(&self) -> Result<Self, QError> {
        let v = self.valuation().ok_or(QError::NotInvertible)?;
        let lead_inv = self.terms[&v].inv()?;
        let n = self.denominator();
        let steps = floor_steps(self.cutoff - v, n);
        let a: Vec<CycRat> = (0..=steps)
            .map(|k| self.terms.get(&(v + Rational64::new(k, n))).cloned().unwrap_or_else(|| CycRat::zero(self.p)))
            .collect();
        let mut b: Vec<CycRat> = Vec::with_capacity(a.len());
        b.push(lead_inv.clone());
        for k in 1..=steps as usize {
            let mut s = CycRat::zero(self.p);
            for j in 1..=k {
                if !a[j].is_zero() && !b[k - j].is_zero() {
                    s = &s + &(&a[j] * &b[k - j]);
                }
            }
            b.push(-&(&s * &lead_inv));
        }
        let cutoff = -v + (self.cutoff - v);
        Ok(Self::from_terms(
            self.p,
            b.into_iter().enumerate().map(|(k, c)| (-v + Rational64::new(k as i64, n), c)),
            cutoff,
        ))
    }

    pub fn pow(&self, e: i64) -> Result<Self, QError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if e == 0 {
            return Ok(QSeries::one(self.p, self.cutoff.max(Rational64::zero())));
        }
        let mut result: Option<QSeries> = None;
        let mut base = self.clone();
        let mut k = e;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(result.expect("e > 0"))
    }

    /// `q ↦ e^{2πi} q`: the coefficient of `q^{k/N}` is multiplied by
    /// `e^{2πik/N}`, which must be a power of `ζ_p`.
    pub fn t_shift(&self) -> Result<Self, QError> {
        let p = self.p as i64;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if p % e.denom() != 0 {
                return Err(QError::ShiftDenominator { exp: e.to_string(), p: self.p });
            }
            let k = (e * p).to_integer();
            terms.push((*e, c * &CycRat::zeta_pow(self.p, k)));
        }
        Ok(Self::from_terms(self.p, terms, self.cutoff))
    }

    /// Evaluate at `q = e^{2πiz}` with `ζ ↦ e^{2πi/p}`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        self.terms
            .iter()
            .map(|(e, c)| c.to_complex() * (two_pi_i * z * (*e.numer() as f64 / *e.denom() as f64)).exp())
            .sum()
    }

    /// Terms as `{"exp": "k/N", "coef": …}` with `N` the common denominator.
    pub fn to_json(&self) -> Vec<TermJson> {
        let n = self.denominator();
        self.terms
            .iter()
            .map(|(e, c)| TermJson { exp: format!("{}/{}", e.numer() * (n / e.denom()), n), coef: c.to_json() })
            .collect()
    }

    pub fn from_json(p: u32, terms: &[TermJson], cutoff: Rational64) -> Result<Self, QError> {
        let parsed = terms
            .iter()
            .map(|t| Ok((parse_exponent(&t.exp)?, CycRat::from_json(p, &t.coef)?)))
            .collect::<Result<Vec<_>, QError>>()?;
        Ok(Self::from_terms(p, parsed, cutoff))
    }

    /// Same known coefficients on the common range.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let c = self.cutoff.min(o.cutoff);
        self.p == o.p && self.truncate(c).terms == o.truncate(c).terms
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let coef = c.to_string();
            let coef = if coef.contains(' ') { format!("({coef})") } else { coef };
            let mono = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "q".to_string()
            } else if e.is_integer() {
                format!("q^{e}")
            } else {
                format!("q^({e})")
            };
            parts.push(match (mono.is_empty(), coef.as_str()) {
                (true, _) => coef,
                (false, "1") => mono,
                (false, "-1") => format!("-{mono}"),
                _ => format!("{coef}*{mono}"),
            });
        }
        parts.push(format!("O(q^>{})", self.cutoff));
        let mut out = parts[0].clone();
        for part in &parts[1..] {
            match part.strip_prefix('-') {
                Some(rest) => out += &format!(" - {rest}"),
                None => out += &format!(" + {part}"),
            }
        }
        write!(f, "{out}")
    }
}

/// Pentagonal exponents `k(3k-1)/2` with sign `(-1)^k` up to `limit`.
fn pentagonal(limit: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(0, 1)];
    let mut k = 1i64;
    loop {
        let a = k * (3 * k - 1) / 2;
        let b = k * (3 * k + 1) / 2;
        if a > limit {
            break;
        }
        let s = if k % 2 == 0 { 1 } else { -1 };
        out.push((a, s));
        if b <= limit {
            out.push((b, s));
        }
        k += 1;
    }
    out
}

/// Dedekind eta `q^{1/24} Π_{n≥1} (1 - q^n)` through `cutoff`, with
/// coefficients carried in `Q(ζ_p)`.
pub fn eta(p: u32, cutoff: Rational64) -> Result<QSeries, QError> {
    let lead = Rational64::new(1, 24);
    if cutoff < lead {
        return Err(QError::CutoffTooLow { cutoff: cutoff.to_string(), leading: lead.to_string() });
    }
    let limit = floor_steps(cutoff - lead, 1);
    let terms = pentagonal(limit).into_iter().map(|(m, s)| (lead + m, CycRat::from_int(p, s)));
    Ok(QSeries::from_terms(p, terms, cutoff))
}

/// `W(θ_0, …, θ_r) = Σ_l c_l Π_j θ_j^{l_j}`.
pub fn compose_enumerator(w: &WeightEnumerator, thetas: &[QSeries]) -> Result<QSeries, QError> {
    if thetas.len() != w.r + 1 {
        return Err(QError::Arity { expected: w.r + 1, found: thetas.len() });
    }
    let p = thetas[0].p;
    for t in thetas {
        thetas[0].same_p(t)?;
    }
    let min_cut = thetas.iter().map(|t| t.cutoff).min().expect("nonempty");
    let mut powers: Vec<Vec<QSeries>> = thetas.iter().map(|t| vec![QSeries::one(p, t.cutoff.max(min_cut))]).collect();
    let mut total: Option<QSeries> = None;
    for (exps, &count) in &w.coefficients {
        let mut term = QSeries::one(p, min_cut.max(Rational64::zero()));
        for (j, &l) in exps.iter().enumerate() {
            while powers[j].len() <= l as usize {
                let next = powers[j].last().expect("seeded").mul(&thetas[j])?;
                powers[j].push(next);
            }
            if l > 0 {
                term = term.mul(&powers[j][l as usize])?;
            }
        }
        let term = term.scale(&CycRat::from_int(p, count));
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term)?,
        });
    }
    Ok(total.unwrap_or_else(|| QSeries::zero(p, min_cut)))
}
