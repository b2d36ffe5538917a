//! Exact arithmetic in `O = Z[ζ_p]` and its localization `O[1/p]`.
//!
//! Elements are stored in the power basis `ζ^0, …, ζ^{p-2}`; `ζ^{p-1}` is
//! always eliminated with `1 + ζ + ⋯ + ζ^{p-1} = 0`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fpcode::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("cyclotomic arithmetic needs an odd prime, got {0}")]
    BadPrime(u32),
    #[error("mismatched primes {0} and {1}")]
    PrimeMismatch(u32, u32),
    #[error("embedding index {index} out of range 1..={max}")]
    EmbeddingIndex { index: u32, max: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed serialized coefficient: {0}")]
    Malformed(String),
}

pub fn check_odd_prime(p: u32) -> Result<(), CycError> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(CycError::BadPrime(p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    /// Build from coefficients of `ζ^0, ζ^1, …` of any length; higher powers
    /// are folded with `ζ^p = 1` and then reduced.
    pub fn new<T: Into<BigInt>>(p: u32, coeffs: Vec<T>) -> Result<Self, CycError> {
        check_odd_prime(p)?;
        Ok(Self::from_cyclic(p, fold(p, coeffs.into_iter().map(Into::into))))
    }

    /// Unchecked constructor from a length-`p` vector in `Z[x]/(x^p - 1)`.
    fn from_cyclic(p: u32, mut c: Vec<BigInt>) -> Self {
        let top = c.pop().expect("length p");
        if !top.is_zero() {
            for a in c.iter_mut() {
                *a -= &top;
            }
        }
        CycInt { p, coeffs: c }
    }

    pub fn zero(p: u32) -> Self {
        CycInt { p, coeffs: vec![BigInt::zero(); p as usize - 1] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int<T: Into<BigInt>>(p: u32, a: T) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = a.into();
        z
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let k = k.rem_euclid(p as i64) as usize;
        let mut c = vec![BigInt::zero(); p as usize];
        c[k] = BigInt::one();
        Self::from_cyclic(p, c)
    }

    pub fn zeta(p: u32) -> Self {
        Self::zeta_pow(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when the element lies in `Z`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_p(&self, other: &Self) -> Result<(), CycError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(CycError::PrimeMismatch(self.p, other.p))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycError> {
        self.same_p(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.same_p(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.same_p(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    /// Galois automorphism `σ_r: ζ ↦ ζ^r`, `r` prime to `p`.
    pub fn galois(&self, r: u32) -> Self {
        let p = self.p as usize;
        let mut c = vec![BigInt::zero(); p];
        for (k, a) in self.coeffs.iter().enumerate() {
            c[(k * r as usize) % p] += a;
        }
        Self::from_cyclic(self.p, c)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(self.p - 1)
    }

    /// Absolute trace `Tr(Σ a_k ζ^k) = (p-1)a_0 - Σ_{k≥1} a_k`.
    pub fn trace(&self) -> BigInt {
        let s: BigInt = self.coeffs.iter().sum();
        &self.coeffs[0] * BigInt::from(self.p) - s
    }

    /// Reduction `ρ: O → F_p`, the coefficient sum mod `p`.
    pub fn rho(&self) -> u32 {
        let s: BigInt = self.coeffs.iter().sum();
        s.mod_floor(&BigInt::from(self.p)).to_u32().expect("residue fits")
    }

    /// `⟨x, y⟩ = Tr(x ȳ)/p`.
    pub fn pairing(&self, other: &Self) -> BigRational {
        BigRational::new((self * &other.conj()).trace(), BigInt::from(self.p))
    }

    /// `⟨x, x⟩ = Σ a_k² - (Σ a_k)²/p`.
    pub fn norm(&self) -> BigRational {
        let s: BigInt = self.coeffs.iter().sum();
        let sq: BigInt = self.coeffs.iter().map(|a| a * a).sum();
        BigRational::new(sq * BigInt::from(self.p) - &s * &s, BigInt::from(self.p))
    }

    /// Field norm `Π_r σ_r(x)`, an integer.
    pub fn field_norm(&self) -> BigInt {
        let mut acc = self.clone();
        for r in 2..self.p {
            acc = &acc * &self.galois(r);
        }
        acc.as_integer().cloned().expect("norm is rational")
    }

    /// `σ_r(x) = Σ a_k e^{2πi kr/p}` for `1 ≤ r ≤ p-1`.
    pub fn embed(&self, r: u32) -> Result<Complex64, CycError> {
        if r == 0 || r >= self.p {
            return Err(CycError::EmbeddingIndex { index: r, max: self.p - 1 });
        }
        Ok(self.embed_unchecked(r))
    }

    pub(crate) fn embed_unchecked(&self, r: u32) -> Complex64 {
        let p = self.p as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let a = a.to_f64().unwrap_or(f64::NAN);
                let t = 2.0 * PI * ((k as u64 * r as u64) % self.p as u64) as f64 / p;
                Complex64::new(a * t.cos(), a * t.sin())
            })
            .sum()
    }

    /// `σ_l(x x̄)` for `1 ≤ l ≤ (p-1)/2`; the `r` values are the Galois orbit
    /// of `x x̄` in the real subfield.
    pub fn real_embed_pair(&self, l: u32) -> Result<Complex64, CycError> {
        let r = (self.p - 1) / 2;
        if l == 0 || l > r {
            return Err(CycError::EmbeddingIndex { index: l, max: r });
        }
        Ok((self * &self.conj()).embed_unchecked(l))
    }
}

fn fold(p: u32, coeffs: impl Iterator<Item = BigInt>) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); p as usize];
    for (k, a) in coeffs.enumerate() {
        c[k % p as usize] += a;
    }
    c
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            let sign = if a.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if a.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let term = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "z".to_string(),
                (1, false) => format!("{mag}z"),
                (_, true) => format!("z^{k}"),
                (_, false) => format!("{mag}z^{k}"),
            };
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

impl<'a> Add<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn add(self, o: &CycInt) -> CycInt {
        debug_assert_eq!(self.p, o.p);
        CycInt { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn sub(self, o: &CycInt) -> CycInt {
        debug_assert_eq!(self.p, o.p);
        CycInt { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn mul(self, o: &CycInt) -> CycInt {
        debug_assert_eq!(self.p, o.p);
        let p = self.p as usize;
        let mut c = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[(i + j) % p] += a * b;
                }
            }
        }
        CycInt::from_cyclic(self.p, c)
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Add for CycInt {
    type Output = CycInt;
    fn add(self, o: CycInt) -> CycInt {
        &self + &o
    }
}

impl Sub for CycInt {
    type Output = CycInt;
    fn sub(self, o: CycInt) -> CycInt {
        &self - &o
    }
}

impl Mul for CycInt {
    type Output = CycInt;
    fn mul(self, o: CycInt) -> CycInt {
        &self * &o
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

/// Element of `Q(ζ_p)` written as `numerator / den` with `den > 0` and the
/// gcd of all numerator coefficients and `den` equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycRat {
    num: CycInt,
    den: BigInt,
}

impl CycRat {
    pub fn new(num: CycInt, den: BigInt) -> Result<Self, CycError> {
        if den.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: CycInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            num = -num;
        }
        let mut g = den.clone();
        for a in &num.coeffs {
            if g.is_one() {
                break;
            }
            g = g.gcd(a);
        }
        if num.is_zero() {
            return CycRat { num, den: BigInt::one() };
        }
        if !g.is_one() {
            for a in num.coeffs.iter_mut() {
                *a /= &g;
            }
            den /= &g;
        }
        CycRat { num, den }
    }

    pub fn zero(p: u32) -> Self {
        CycRat { num: CycInt::zero(p), den: BigInt::one() }
    }

    pub fn one(p: u32) -> Self {
        CycRat { num: CycInt::one(p), den: BigInt::one() }
    }

    pub fn from_int<T: Into<BigInt>>(p: u32, a: T) -> Self {
        CycRat { num: CycInt::from_int(p, a), den: BigInt::one() }
    }

    pub fn from_rational(p: u32, q: &BigRational) -> Self {
        Self::normalized(CycInt::from_int(p, q.numer().clone()), q.denom().clone())
    }

    pub fn zeta_pow(p: u32, k: i64) -> Self {
        CycInt::zeta_pow(p, k).into()
    }

    pub fn p(&self) -> u32 {
        self.num.p
    }

    pub fn numer(&self) -> &CycInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.as_integer().is_some_and(One::is_one)
    }

    /// Rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num.as_integer().map(|a| BigRational::new(a.clone(), self.den.clone()))
    }

    /// Integer value, if the element lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.den.is_one() {
            self.num.as_integer().cloned()
        } else {
            None
        }
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn conj(&self) -> Self {
        CycRat { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn galois(&self, r: u32) -> Self {
        CycRat { num: self.num.galois(r), den: self.den.clone() }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Self::normalized(self.num.scale(k), self.den.clone())
    }

    /// Multiplicative inverse via the product of the other conjugates.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let p = self.p();
        let mut others = CycInt::one(p);
        for r in 2..p {
            others = &others * &self.num.galois(r);
        }
        let norm = (&others * &self.num).as_integer().cloned().expect("norm is rational");
        Ok(Self::normalized(others.scale(&self.den), norm))
    }

    pub fn embed(&self, r: u32) -> Result<Complex64, CycError> {
        Ok(self.num.embed(r)? / self.den.to_f64().unwrap_or(f64::NAN))
    }

    /// Value at the principal embedding `ζ ↦ e^{2πi/p}`.
    pub fn to_complex(&self) -> Complex64 {
        self.num.embed_unchecked(1) / self.den.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> CycRatJson {
        CycRatJson { coeffs: self.num.coeffs.iter().map(|a| a.to_string()).collect(), den: self.den.to_string() }
    }

    pub fn from_json(p: u32, j: &CycRatJson) -> Result<Self, CycError> {
        let parse = |s: &str| s.parse::<BigInt>().map_err(|_| CycError::Malformed(s.to_string()));
        let coeffs = j.coeffs.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(CycInt::new(p, coeffs)?, parse(&j.den)?)
    }
}

/// Serialized form: coefficient strings in the power basis over a common
/// denominator string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycRatJson {
    pub coeffs: Vec<String>,
    pub den: String,
}

impl From<CycInt> for CycRat {
    fn from(num: CycInt) -> Self {
        CycRat { num, den: BigInt::one() }
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.as_integer().is_some() {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a CycRat> for &'a CycRat {
    type Output = CycRat;
    fn add(self, o: &CycRat) -> CycRat {
        if self.den == o.den {
            return CycRat::normalized(&self.num + &o.num, self.den.clone());
        }
        let num = &self.num.scale(&o.den) + &o.num.scale(&self.den);
        CycRat::normalized(num, &self.den * &o.den)
    }
}

impl<'a> Sub<&'a CycRat> for &'a CycRat {
    type Output = CycRat;
    fn sub(self, o: &CycRat) -> CycRat {
        self + &(-o)
    }
}

impl<'a> Mul<&'a CycRat> for &'a CycRat {
    type Output = CycRat;
    fn mul(self, o: &CycRat) -> CycRat {
        CycRat::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        CycRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        -&self
    }
}

impl Add for CycRat {
    type Output = CycRat;
    fn add(self, o: CycRat) -> CycRat {
        &self + &o
    }
}

impl Sub for CycRat {
    type Output = CycRat;
    fn sub(self, o: CycRat) -> CycRat {
        &self - &o
    }
}

impl Mul for CycRat {
    type Output = CycRat;
    fn mul(self, o: CycRat) -> CycRat {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: u32, v: &[i64]) -> CycInt {
        CycInt::new(p, v.to_vec()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn arithmetic_examples() {
        let x = c(3, &[1, -1]);
        let y = c(3, &[1, 0, -1]);
        assert_eq!(&x * &y, CycInt::from_int(3, 3));
        assert_eq!(&x + &CycInt::zero(3), x);
        for p in [3u32, 5, 7] {
            let prod = &CycInt::zeta(p) * &CycInt::zeta_pow(p, p as i64 - 2);
            let expect = CycInt::new(p, vec![-1i64; p as usize - 1]).unwrap();
            assert_eq!(prod, expect);
            assert_eq!(CycInt::zeta_pow(p, p as i64 - 1), expect);
        }
        assert_eq!(CycInt::new(4, vec![1]).unwrap_err(), CycError::BadPrime(4));
        assert_eq!(CycInt::new(2, vec![1]).unwrap_err(), CycError::BadPrime(2));
        assert_eq!(CycInt::one(3).checked_add(&CycInt::one(5)).unwrap_err(), CycError::PrimeMismatch(3, 5));
    }

    #[test]
    fn conjugation() {
        assert_eq!(CycInt::zeta(3).conj(), c(3, &[-1, -1]));
        assert_eq!(CycInt::from_int(7, 4).conj(), CycInt::from_int(7, 4));
        assert_eq!(c(5, &[1, -1]).conj(), c(5, &[2, 1, 1, 1]));
    }

    #[test]
    fn traces() {
        for p in [3u32, 5, 11] {
            assert_eq!(CycInt::one(p).trace(), BigInt::from(p - 1));
            assert_eq!(CycInt::zeta(p).trace(), BigInt::from(-1));
            assert!(CycInt::zero(p).trace().is_zero());
        }
    }

    #[test]
    fn reductions() {
        assert_eq!(c(5, &[1, -1]).rho(), 0);
        assert_eq!(CycInt::one(7).rho(), 1);
        assert_eq!(c(3, &[2, 1]).rho(), 0);
        assert_eq!(c(3, &[-2]).rho(), 1);
    }

    #[test]
    fn pairings() {
        let a = c(3, &[1, -1]);
        let b = c(3, &[0, 1, -1]);
        assert_eq!(a.pairing(&a), q(2, 1));
        assert_eq!(a.pairing(&b), q(-1, 1));
        assert!(a.pairing(&CycInt::zero(3)).is_zero());
        assert_eq!(a.norm(), a.pairing(&a));
        assert_eq!(CycInt::one(3).norm(), q(2, 3));
    }

    #[test]
    fn embeddings() {
        assert!((CycInt::one(5).embed(3).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let z = CycInt::zeta(3).embed(1).unwrap();
        assert!((z - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        let s: Complex64 = (1..5).map(|r| CycInt::zeta(5).embed(r).unwrap()).sum();
        assert!((s + 1.0).norm() < 1e-12);
        assert_eq!(CycInt::one(5).embed(5).unwrap_err(), CycError::EmbeddingIndex { index: 5, max: 4 });
        assert_eq!(CycInt::one(5).embed(0).unwrap_err(), CycError::EmbeddingIndex { index: 0, max: 4 });
    }

    #[test]
    fn real_embeddings() {
        let one = CycInt::one(5);
        assert!((one.real_embed_pair(2).unwrap() - 1.0).norm() < 1e-15);
        let x = c(5, &[1, -1]);
        let s: f64 = (1..=2).map(|l| 2.0 * x.real_embed_pair(l).unwrap().re).sum();
        let t = (&x * &x.conj()).trace().to_f64().unwrap();
        assert!((s - t).abs() < 1e-10);
        assert!(CycInt::zero(7).real_embed_pair(3).unwrap().norm() < 1e-15);
        assert!(x.real_embed_pair(3).is_err());
    }

    #[test]
    fn rational_inverse() {
        let x: CycRat = c(5, &[1, -1]).into();
        assert_eq!(x.numer().field_norm(), BigInt::from(5));
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        // c = (-1-2ζ)/3 squares to -1/3
        let cc = CycRat::new(c(3, &[-1, -2]), 3.into()).unwrap();
        assert_eq!(&cc * &cc, CycRat::from_rational(3, &q(-1, 3)));
        assert_eq!(CycRat::zero(3).inv().unwrap_err(), CycError::DivisionByZero);
    }

    #[test]
    fn rational_normal_form_and_json() {
        let a = CycRat::new(c(5, &[2, 4]), (-6).into()).unwrap();
        assert_eq!(a.denom(), &BigInt::from(3));
        assert_eq!(a.numer(), &c(5, &[-1, -2]));
        let j = a.to_json();
        assert_eq!(j.den, "3");
        assert_eq!(CycRat::from_json(5, &j).unwrap(), a);
        assert_eq!(CycRat::new(CycInt::one(3), 0.into()).unwrap_err(), CycError::DivisionByZero);
    }

    #[test]
    fn display() {
        assert_eq!(c(5, &[2, -1, 0, 3]).to_string(), "2 - z + 3z^3");
        assert_eq!(CycInt::zero(3).to_string(), "0");
        assert_eq!(CycRat::from_rational(3, &q(-1, 3)).to_string(), "-1/3");
    }
}
