//! Exact Fincke–Pohst enumeration.
//!
//! The quadratic form is decomposed once over `Q` as
//! `Q(x) = Σ d_i (x_i + Σ_{j>i} m_ij x_j)^2`, the shift is folded into
//! per-level constants, and everything is rescaled to integers. The search
//! then runs on integers only: `i128` with overflow checks first, `BigInt`
//! if any intermediate would overflow.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer arithmetic needed by the search loop.
trait SearchInt: Clone + Ord + Sized {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn zero_value() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn mul_i64(&self, k: i64) -> Option<Self>;
    fn floor_div(&self, o: &Self) -> Self;
    fn ceil_div(&self, o: &Self) -> Self;
    fn isqrt(&self) -> Self;
    fn as_i64(&self) -> Option<i64>;
    fn neg(&self) -> Self;
}

impl SearchInt for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn zero_value() -> Self {
        0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn mul_i64(&self, k: i64) -> Option<Self> {
        self.checked_mul(k as i128)
    }
    fn floor_div(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn ceil_div(&self, o: &Self) -> Self {
        -Integer::div_floor(&-self, o)
    }
    fn isqrt(&self) -> Self {
        Roots::sqrt(self)
    }
    fn as_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl SearchInt for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn zero_value() -> Self {
        <BigInt as Zero>::zero()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn mul_i64(&self, k: i64) -> Option<Self> {
        Some(self * k)
    }
    fn floor_div(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn ceil_div(&self, o: &Self) -> Self {
        -Integer::div_floor(&-self, o)
    }
    fn isqrt(&self) -> Self {
        Roots::sqrt(self)
    }
    fn as_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Rational LDL data of a positive definite Gram matrix.
#[derive(Debug, Clone)]
pub(crate) struct Decomposition {
    pub d: Vec<BigRational>,
    /// `m[i][j]` for `j > i`; other entries unused.
    pub m: Vec<Vec<BigRational>>,
}

impl Decomposition {
    /// `None` if the matrix is not positive definite.
    pub fn new(gram: &[Vec<BigRational>]) -> Option<Self> {
        let r = gram.len();
        let mut q: Vec<Vec<BigRational>> = gram.to_vec();
        for i in 0..r {
            if !q[i][i].is_positive() {
                return None;
            }
            for j in i + 1..r {
                q[j][i] = q[i][j].clone();
                q[i][j] = &q[i][j] / &q[i][i];
            }
            for k in i + 1..r {
                for l in k..r {
                    let t = &q[k][i] * &q[i][l];
                    q[k][l] -= t;
                }
            }
        }
        let d = (0..r).map(|i| q[i][i].clone()).collect();
        Some(Decomposition { d, m: q })
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }
}

/// Integer data for one search: `Σ W_i (D_i u_i + K_i + Σ_{j>i} M_ij u_j)^2 ≤ top`.
struct Scaled<T> {
    w: Vec<T>,
    dd: Vec<T>,
    k: Vec<T>,
    /// `mm[i]` lists `(j, M_ij)` for `j > i` with nonzero entries.
    mm: Vec<Vec<(usize, T)>>,
    top: T,
}

fn lcm_denoms<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigInt {
    it.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

struct ScaledBig {
    w: Vec<BigInt>,
    dd: Vec<BigInt>,
    k: Vec<BigInt>,
    mm: Vec<Vec<(usize, BigInt)>>,
    top: BigInt,
    scale: BigInt,
}

fn scale(dec: &Decomposition, center: &[BigRational], bound: &BigRational) -> ScaledBig {
    let r = dec.rank();
    let mut dd = Vec::with_capacity(r);
    let mut kappa = Vec::with_capacity(r);
    for i in 0..r {
        let mut ki = center[i].clone();
        for j in i + 1..r {
            ki += &dec.m[i][j] * &center[j];
        }
        let di = lcm_denoms((i + 1..r).map(|j| &dec.m[i][j]).chain(std::iter::once(&ki)));
        dd.push(di);
        kappa.push(ki);
    }
    let e: Vec<BigRational> = (0..r).map(|i| &dec.d[i] / BigRational::from_integer(&dd[i] * &dd[i])).collect();
    let scale = lcm_denoms(e.iter().chain(std::iter::once(bound)));
    let sc = BigRational::from_integer(scale.clone());
    let w = e.iter().map(|x| (x * &sc).to_integer()).collect();
    let top = (bound * &sc).to_integer();
    let k = (0..r).map(|i| (&kappa[i] * BigRational::from_integer(dd[i].clone())).to_integer()).collect();
    let mm = (0..r)
        .map(|i| {
            (i + 1..r)
                .filter(|&j| !dec.m[i][j].is_zero())
                .map(|j| (j, (&dec.m[i][j] * BigRational::from_integer(dd[i].clone())).to_integer()))
                .collect()
        })
        .collect();
    ScaledBig { w, dd, k, mm, top, scale }
}

impl<T: SearchInt> Scaled<T> {
    fn convert(s: &ScaledBig) -> Option<Self> {
        let conv = |v: &[BigInt]| v.iter().map(T::from_big).collect::<Option<Vec<T>>>();
        Some(Scaled {
            w: conv(&s.w)?,
            dd: conv(&s.dd)?,
            k: conv(&s.k)?,
            mm: s
                .mm
                .iter()
                .map(|row| row.iter().map(|(j, x)| Some((*j, T::from_big(x)?))).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()?,
            top: T::from_big(&s.top)?,
        })
    }

    /// Depth-first search; `visit(u, used)` receives the coordinate vector and
    /// the consumed budget `top - remaining`. Returns `None` on overflow.
    fn search(&self, visit: &mut dyn FnMut(&[i64], &T)) -> Option<()> {
        let r = self.w.len();
        if r == 0 {
            visit(&[], &T::zero_value());
            return Some(());
        }
        let mut u = vec![0i64; r];
        let mut hi = vec![0i64; r];
        let mut rem: Vec<T> = vec![T::zero_value(); r + 1];
        rem[r] = self.top.clone();
        let mut level = r - 1;
        let mut fresh = true;
        loop {
            if fresh {
                // Set up the range at `level` given u_{level+1..}.
                let mut t = self.k[level].clone();
                for (j, mij) in &self.mm[level] {
                    t = t.add(&mij.mul_i64(u[*j])?)?;
                }
                let s = rem[level + 1].floor_div(&self.w[level]).isqrt();
                let lo = s.neg().sub(&t)?.ceil_div(&self.dd[level]);
                let h = s.sub(&t)?.floor_div(&self.dd[level]);
                if lo > h {
                    fresh = false;
                    if level == r - 1 {
                        return Some(());
                    }
                    level += 1;
                    continue;
                }
                u[level] = lo.as_i64()?;
                hi[level] = h.as_i64()?;
            } else {
                if u[level] >= hi[level] {
                    if level == r - 1 {
                        return Some(());
                    }
                    level += 1;
                    continue;
                }
                u[level] += 1;
            }
            let mut t = self.k[level].clone();
            for (j, mij) in &self.mm[level] {
                t = t.add(&mij.mul_i64(u[*j])?)?;
            }
            let y = self.dd[level].mul_i64(u[level])?.add(&t)?;
            let used = self.w[level].mul(&y.mul(&y)?)?;
            rem[level] = rem[level + 1].sub(&used)?;
            if level == 0 {
                let consumed = self.top.sub(&rem[0])?;
                visit(&u, &consumed);
                fresh = false;
            } else {
                level -= 1;
                fresh = true;
            }
        }
    }
}

/// Enumerate all integer `u` with `Q(u + center) ≤ bound`. The callback
/// receives `u` and the exact value `Q(u + center)`.
pub(crate) fn enumerate(
    dec: &Decomposition,
    center: &[BigRational],
    bound: &BigRational,
    visit: &mut dyn FnMut(&[i64], &BigRational),
) {
    if bound.is_negative() {
        return;
    }
    let big = scale(dec, center, bound);
    let scale_q = big.scale.clone();
    if let Some(small) = Scaled::<i128>::convert(&big) {
        // A dry run finds overflow before any callback fires, so a fallback
        // never reports a vector twice.
        if small.search(&mut |_, _| {}).is_some() {
            small
                .search(&mut |u, c| visit(u, &BigRational::new(BigInt::from(*c), scale_q.clone())))
                .expect("second pass repeats a successful first pass");
            return;
        }
    }
    Scaled::<BigInt>::convert(&big)
        .expect("BigInt conversion is total")
        .search(&mut |u, c| visit(u, &BigRational::new(c.clone(), scale_q.clone())))
        .expect("BigInt search cannot overflow");
}

/// Count-only variant that never retries: overflow falls through to BigInt.
pub(crate) fn count_by_value(
    dec: &Decomposition,
    center: &[BigRational],
    bound: &BigRational,
) -> std::collections::BTreeMap<BigRational, u64> {
    use std::collections::BTreeMap;
    let mut out = BTreeMap::new();
    if bound.is_negative() {
        return out;
    }
    let big = scale(dec, center, bound);
    let scale_q = big.scale.clone();
    if let Some(small) = Scaled::<i128>::convert(&big) {
        let mut raw: BTreeMap<i128, u64> = BTreeMap::new();
        if small.search(&mut |_, c| *raw.entry(*c).or_insert(0) += 1).is_some() {
            for (c, k) in raw {
                *out.entry(BigRational::new(BigInt::from(c), scale_q.clone())).or_insert(0) += k;
            }
            return out;
        }
    }
    let mut raw: BTreeMap<BigInt, u64> = BTreeMap::new();
    Scaled::<BigInt>::convert(&big)
        .expect("BigInt conversion is total")
        .search(&mut |_, c| *raw.entry(c.clone()).or_insert(0) += 1)
        .expect("BigInt search cannot overflow");
    for (c, k) in raw {
        *out.entry(BigRational::new(c, scale_q.clone())).or_insert(0) += k;
    }
    out
}
