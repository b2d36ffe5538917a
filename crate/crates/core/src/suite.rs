//! The desk-scale verification suite run by `verify all --level desk`.
//!
//! Each criterion returns a [`CriterionResult`]; a criterion passes when all
//! of its checks hold and it finishes within its time budget.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cliffcode::clifford_verify;
use crate::codelattice::{theta_class, verify_alpbach_exact, CodeLattice};
use crate::cyclotomic::CycRat;
use crate::fpcode::{hamming8, standard_code, tetracode, Code, StandardCode, Word};
use crate::hilbert_eval::{verify_alpbach, verify_sl2f3_action, HilbertPoint};
use crate::octower::{beta_form_check, tower_check};
use crate::qexp::QSeries;
use crate::voarep::{
    binomial, brute_force_orbit_count, main_theorem_check, orbit_invariance, orbits_of_grade, z_map, OrbitClass,
    RepElement,
};

/// Seed for the random codes and ring elements drawn by the suite.
pub const SUITE_SEED: u64 = 0x7e7a_c0de;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

type Outcome = Result<(bool, String), String>;

struct Criterion {
    id: u8,
    name: &'static str,
    budget_seconds: f64,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "theta expansions p=3", budget_seconds: 1.0, run: theta_expansions },
    Criterion { id: 2, name: "coset sum = W_C(theta), exact", budget_seconds: 10.0, run: alpbach_exact },
    Criterion { id: 3, name: "coset sum = W_C(theta), numerical p=5", budget_seconds: 30.0, run: alpbach_numerical },
    Criterion { id: 4, name: "E8 from the tetracode", budget_seconds: 10.0, run: e8_lattice },
    Criterion { id: 5, name: "Golay lattice", budget_seconds: 300.0, run: golay_lattice },
    Criterion { id: 6, name: "Z map and graded bijection", budget_seconds: 60.0, run: z_map_checks },
    Criterion { id: 7, name: "grade-n bases at p=3", budget_seconds: 1.0, run: grade_bases },
    Criterion { id: 8, name: "SL2(F3) action", budget_seconds: 10.0, run: sl2_action },
    Criterion { id: 9, name: "Clifford and Bott suite", budget_seconds: 30.0, run: clifford_suite },
    Criterion { id: 10, name: "Hamming-8 properties", budget_seconds: 1.0, run: hamming_properties },
    Criterion { id: 11, name: "hyperoctahedral tower", budget_seconds: 120.0, run: tower_theory },
];

pub fn criterion_ids() -> Vec<u8> {
    CRITERIA.iter().map(|c| c.id).collect()
}

/// Run a single criterion; `None` for an unknown id.
pub fn run_criterion(id: u8) -> Option<CriterionResult> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let outcome = (c.run)();
    let seconds = start.elapsed().as_secs_f64();
    let (ok, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let in_time = seconds <= c.budget_seconds;
    if !in_time {
        detail = format!("{detail}; exceeded {}s budget", c.budget_seconds);
    }
    Some(CriterionResult {
        id: c.id,
        name: c.name,
        pass: ok && in_time,
        detail,
        seconds,
        budget_seconds: c.budget_seconds,
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.id)).collect()
}

fn r(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Terms of `series` that disagree with `expected` at the listed exponents;
/// exponents absent from `expected` are expected to vanish.
fn mismatches(series: &QSeries, expected: &BTreeMap<Rational64, i64>, exps: &[Rational64]) -> Vec<String> {
    exps.iter()
        .filter_map(|&e| {
            let want = expected.get(&e).copied().unwrap_or(0);
            let got = series.int_coefficient(e).and_then(|c| c.to_i64());
            (got != Some(want)).then(|| match got {
                Some(g) => format!("q^{e} expected {want} got {g}"),
                None => format!("q^{e} expected {want} got unknown"),
            })
        })
        .collect()
}

fn theta_expansions() -> Outcome {
    // 1 + 6(q + q^2 + q^4 + 2q^7) and 3q^{1/3}(1 + q + 2q^2 + 2q^4)
    let t0_expected: BTreeMap<Rational64, i64> =
        [(r(0, 1), 1), (r(1, 1), 6), (r(2, 1), 6), (r(4, 1), 6), (r(7, 1), 12)].into();
    let t1_expected: BTreeMap<Rational64, i64> = [(r(1, 3), 3), (r(4, 3), 3), (r(7, 3), 6), (r(13, 3), 6)].into();
    let t0 = theta_class(3, 0, r(7, 1)).map_err(err)?;
    let t1 = theta_class(3, 1, r(13, 3)).map_err(err)?;
    let bad0 = mismatches(&t0, &t0_expected, &(0..=7).map(|k| r(k, 1)).collect::<Vec<_>>());
    let bad1 = mismatches(&t1, &t1_expected, &(0..=4).map(|k| r(3 * k + 1, 3)).collect::<Vec<_>>());
    let pass = bad0.is_empty() && bad1.is_empty();
    let mut detail = format!("theta_0 = {t0}; theta_1 = {t1}");
    if !bad0.is_empty() {
        detail.push_str(&format!("; theta_0 mismatches: {}", bad0.join(" | ")));
    }
    if !bad1.is_empty() {
        detail.push_str(&format!("; theta_1 mismatches: {}", bad1.join(" | ")));
    }
    Ok((pass, detail))
}

/// A code of `size` distinct words in `F_p^n` drawn uniformly, redrawn until
/// it is not a subspace.
pub fn random_nonlinear_code(rng: &mut impl Rng, p: u32, n: usize, size: usize) -> Code {
    let total = (p as usize).pow(n as u32);
    assert!(size >= 2 && size < total, "size {size} leaves no non-linear code in F_{p}^{n}");
    loop {
        let words: Vec<Word> = sample(rng, total, size)
            .into_iter()
            .map(|mut idx| {
                let digits = (0..n)
                    .map(|_| {
                        let d = (idx % p as usize) as u32;
                        idx /= p as usize;
                        d
                    })
                    .collect();
                Word::new(p, digits).expect("digits reduced mod p")
            })
            .collect();
        let code = Code::from_words(p, n, words).expect("words share p and n");
        if !code.is_linear() {
            return code;
        }
    }
}

fn alpbach_exact() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let mut codes = vec![("tetracode".to_string(), tetracode())];
    for i in 0..10 {
        let n = rng.gen_range(1..=4usize);
        let size = rng.gen_range(2..3usize.pow(n as u32).min(9));
        codes.push((format!("random #{i} (n={n}, |C|={size})"), random_nonlinear_code(&mut rng, 3, n, size)));
    }
    let mut failed = Vec::new();
    for (name, c) in &codes {
        if !verify_alpbach_exact(c, r(3, 1)).map_err(err)?.passed {
            failed.push(name.clone());
        }
    }
    let detail = if failed.is_empty() {
        format!("{} codes agree through q^3", codes.len())
    } else {
        format!("disagreement for {}", failed.join(", "))
    };
    Ok((failed.is_empty(), detail))
}

/// Points of `H^2` with every imaginary part at least 1.
pub fn p5_points() -> Vec<HilbertPoint> {
    [
        [Complex64::new(0.0, 1.0), Complex64::new(0.0, 1.3)],
        [Complex64::new(0.2, 1.1), Complex64::new(-0.3, 1.0)],
        [Complex64::new(0.5, 1.5), Complex64::new(0.1, 1.2)],
    ]
    .into_iter()
    .map(|z| HilbertPoint::new(z.to_vec()).expect("points lie in the upper half plane"))
    .collect()
}

fn alpbach_numerical() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 5);
    let points = p5_points();
    let mut worst = 0.0f64;
    let mut pass = true;
    for _ in 0..5 {
        let size = rng.gen_range(2..=6usize);
        let c = random_nonlinear_code(&mut rng, 5, 2, size);
        let report = verify_alpbach(&c, &points, 1e-8).map_err(err)?;
        pass &= report.passed;
        worst = report.points.iter().map(|p| p.residual).fold(worst, f64::max);
    }
    Ok((pass, format!("5 codes, 3 points, max residual {worst:.3e}")))
}

fn e8_lattice() -> Outcome {
    let lattice = CodeLattice::new(&tetracode()).map_err(err)?;
    let disc = lattice.discriminant();
    let bound = BigInt::from(6);
    let fp: Vec<u64> = {
        let counts = lattice.norm_counts(None, &num_rational::BigRational::from_integer(bound.clone())).map_err(err)?;
        (0..=3)
            .map(|k| counts.get(&num_rational::BigRational::from_integer((2 * k).into())).copied().unwrap_or(0))
            .collect()
    };
    let brute = lattice.brute_force_norm_counts(6).map_err(err)?;
    let bf: Vec<u64> = (0..=3).map(|k| brute.get(&(2 * k)).copied().unwrap_or(0)).collect();
    let pass = lattice.is_even() && lattice.rank() == 8 && disc.is_one() && fp == bf && fp == [1, 240, 2160, 6720];
    Ok((
        pass,
        format!(
            "rank {}, even {}, disc {disc}, Fincke-Pohst {fp:?}, box scan {bf:?}",
            lattice.rank(),
            lattice.is_even()
        ),
    ))
}

fn golay_lattice() -> Outcome {
    let code = standard_code(StandardCode::Golay12);
    let lattice = CodeLattice::new(&code).map_err(err)?;
    let disc = lattice.discriminant();
    let self_dual = code.is_self_dual().map_err(err)?;
    let counts = lattice.norm_counts(None, &num_rational::BigRational::from_integer(4.into())).map_err(err)?;
    let count = |k: i64| counts.get(&num_rational::BigRational::from_integer(k.into())).copied().unwrap_or(0);
    // Norm 2 comes only from P^12 (the code has minimum weight 6): one
    // coordinate equal to a unit times (1 - ζ), giving 12 · 6 vectors.
    let pass = lattice.rank() == 24
        && lattice.is_even()
        && disc.is_one()
        && code.len() == 729
        && self_dual
        && count(0) == 1
        && count(2) == 72;
    Ok((
        pass,
        format!(
            "rank {}, even {}, disc {disc}, |C| = {}, self-dual {self_dual}, norms 0/2/4: {}/{}/{}",
            lattice.rank(),
            lattice.is_even(),
            code.len(),
            count(0),
            count(2),
            count(4)
        ),
    ))
}

fn random_element(rng: &mut impl Rng, p: u32, max_grade: u32) -> RepElement {
    let terms = rng.gen_range(1..=2);
    let mut out = Vec::new();
    for _ in 0..terms {
        let n = rng.gen_range(0..=max_grade);
        let orbits = orbits_of_grade(p, n).expect("odd prime");
        let o = orbits[rng.gen_range(0..orbits.len())].clone();
        out.push((o, CycRat::from_int(p, rng.gen_range(-3i64..=3))));
    }
    RepElement::from_terms(p, out).expect("orbits share p")
}

fn z_map_checks() -> Outcome {
    let cutoff = r(3, 1);
    let mut notes = Vec::new();
    let mut pass = true;
    for p in [3u32, 5] {
        let inv = orbit_invariance(p, 3, cutoff).map_err(err)?;
        let bad: Vec<String> = inv.iter().filter(|(_, ok)| !ok).map(|(o, _)| o.to_string()).collect();
        pass &= bad.is_empty();
        notes.push(format!(
            "p={p}: {} orbits invariant{}",
            inv.len() - bad.len(),
            if bad.is_empty() { String::new() } else { format!(", failing {}", bad.join(" ")) }
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 6);
    let mut ring_ok = 0;
    for i in 0..20 {
        let p = if i % 2 == 0 { 3 } else { 5 };
        let a = random_element(&mut rng, p, 2);
        let b = random_element(&mut rng, p, 2);
        let ab = a.mul(&b).map_err(err)?;
        let lhs = z_map(&ab, cutoff).map_err(err)?;
        let rhs = z_map(&a, cutoff).map_err(err)?.mul(&z_map(&b, cutoff).map_err(err)?).map_err(err)?;
        if rhs.cutoff() >= cutoff && lhs == rhs.truncate(cutoff) {
            ring_ok += 1;
        }
    }
    pass &= ring_ok == 20;
    notes.push(format!("ring map {ring_ok}/20"));

    let mut counts_ok = true;
    for p in [3u32, 5] {
        let rr = (p as u64 - 1) / 2;
        for n in 0..=8u32 {
            let expected = binomial(n as u64 + rr, rr);
            let orbits = orbits_of_grade(p, n).map_err(err)?;
            let profiles: BTreeSet<&[u32]> = orbits.iter().map(OrbitClass::profile).collect();
            let brute = brute_force_orbit_count(p, n as usize);
            counts_ok &= orbits.len() as u64 == expected && profiles.len() == orbits.len() && brute as u64 == expected;
        }
    }
    pass &= counts_ok;
    notes.push(format!("orbit counts C(n+r, r) for n <= 8: {counts_ok}"));
    Ok((pass, notes.join("; ")))
}

fn grade_bases() -> Outcome {
    let mut pass = true;
    let mut sizes = Vec::new();
    for n in 0..=8 {
        let report = main_theorem_check(3, n, None).map_err(err)?;
        pass &= report.passed && report.orbits as u32 == n + 1 && report.monomials == n as u64 + 1;
        sizes.push(report.orbits.to_string());
    }
    Ok((pass, format!("orbits per grade 0..8: {}", sizes.join(","))))
}

fn sl2_action() -> Outcome {
    let cutoff = r(6, 1);
    let t0 = theta_class(3, 0, cutoff).map_err(err)?;
    let t1 = theta_class(3, 1, cutoff).map_err(err)?;
    let t_exact = t0.t_shift().map_err(err)? == t0 && t1.t_shift().map_err(err)? == t1.scale(&CycRat::zeta_pow(3, 1));
    let mut worst = 0.0f64;
    let mut s_ok = true;
    for z in [Complex64::new(0.0, 1.0), Complex64::new(0.0, 2.0), Complex64::new(0.3, 1.5)] {
        let report = verify_sl2f3_action(z, 1e-7).map_err(err)?;
        for c in report.checks.iter().filter(|c| c.name.starts_with('S')) {
            s_ok &= c.pass;
            worst = worst.max(c.residual);
        }
    }
    Ok((t_exact && s_ok, format!("T exact {t_exact}; S max residual {worst:.3e}")))
}

fn clifford_suite() -> Outcome {
    let reports = clifford_verify();
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failures: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().into_iter().map(move |c| format!("{}: {}", r.title, c.name)))
        .collect();
    let detail = if failures.is_empty() {
        format!("{} reports, {total} checks", reports.len())
    } else {
        format!("failed: {}", failures.join(", "))
    };
    Ok((failures.is_empty(), detail))
}

fn hamming_properties() -> Outcome {
    let c = hamming8();
    let self_dual = c.is_self_dual().map_err(err)?;
    let doubly_even = c.is_doubly_even().map_err(err)?;
    let d = c.min_distance();
    let spectrum = c.weight_distribution();
    let expected: BTreeMap<usize, usize> = [(0, 1), (4, 14), (8, 1)].into();
    let pass = self_dual && doubly_even && d == Some(4) && spectrum == expected;
    let d = d.map_or("none".to_string(), |d| d.to_string());
    let spectrum: Vec<String> = spectrum.iter().map(|(w, c)| format!("{w}:{c}")).collect();
    Ok((pass, format!("self-dual {self_dual}, doubly even {doubly_even}, d = {d}, spectrum {}", spectrum.join(" "))))
}

fn dim(d: Option<usize>) -> String {
    d.map_or("not computed".to_string(), |d| d.to_string())
}

fn tower_theory() -> Outcome {
    let t5 = tower_check(5).map_err(err)?;
    let t4 = tower_check(4).map_err(err)?;
    let t6 = tower_check(6).map_err(err)?;
    let beta = beta_form_check(8).map_err(err)?;
    let pass = t5.perfect
        && t5.order == 960
        && !t4.perfect
        && t5.h1_dim == Some(0)
        && t6.h1_dim == Some(0)
        && beta.passed()
        && beta.weight_two_pairs > 0;
    Ok((
        pass,
        format!(
            "|H_5| = {}, perfect(5) {}, perfect(4) {}, h1(5) {}, h1(6) {}, beta pairs {} with {} mismatches",
            t5.order,
            t5.perfect,
            t4.perfect,
            dim(t5.h1_dim),
            dim(t6.h1_dim),
            beta.weight_two_pairs,
            beta.weight_two_mismatches
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_codes_are_nonlinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let c = random_nonlinear_code(&mut rng, 3, 2, 4);
            assert!(!c.is_linear());
            assert_eq!(c.len(), 4);
        }
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion(0).is_none());
        assert_eq!(criterion_ids(), (1..=11).collect::<Vec<_>>());
    }

    #[test]
    fn cheap_criteria_pass() {
        for id in [7, 10] {
            let r = run_criterion(id).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}
