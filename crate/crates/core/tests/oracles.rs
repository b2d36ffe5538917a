mod common;

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::ToPrimitive;
use theta_forge::cliffcode::CliffordWord;
use theta_forge::codelattice::{code_theta_series, theta_class, CodeLattice};
use theta_forge::fpcode::{tetracode, Code, Word};
use theta_forge::hilbert_eval::{theta_code_eval, theta_j_eval, HilbertPoint};
use theta_forge::octower::{full_group, SignedPerm};
use theta_forge::qexp::{eta, QSeries};
use theta_forge::voarep::{partition_function, OrbitClass};

use common::*;

fn r(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

fn int_terms(s: &QSeries) -> BTreeMap<Rational64, i64> {
    s.terms().map(|(e, c)| (*e, c.as_integer().expect("integral").to_i64().unwrap())).collect()
}

/// Counts keyed by `p·⟨x,x⟩` turned into `q`-exponents `⟨x,x⟩/2`.
fn as_series(p: u32, counts: &BTreeMap<i64, u64>) -> BTreeMap<Rational64, i64> {
    counts.iter().map(|(&k, &c)| (r(k, 2 * p as i64), c as i64)).collect()
}

fn word_set(c: &Code) -> BTreeSet<Vec<u32>> {
    c.words().map(|w| w.digits().iter().map(|&d| d as u32).collect()).collect()
}

#[test]
fn p3_theta_classes_match_eisenstein_sums() {
    for j in 0..3u32 {
        let series = theta_class(3, j, r(10, 1)).unwrap();
        let oracle: BTreeMap<Rational64, i64> =
            eisenstein_theta(j as i64, 30).into_iter().map(|(m, c)| (r(m, 3), c as i64)).collect();
        assert_eq!(int_terms(&series), oracle, "j = {j}");
    }
}

#[test]
fn p3_theta_values() {
    let t0 = int_terms(&theta_class(3, 0, r(7, 1)).unwrap());
    let expected: BTreeMap<_, _> = [(r(0, 1), 1), (r(1, 1), 6), (r(3, 1), 6), (r(4, 1), 6), (r(7, 1), 12)].into();
    assert_eq!(t0, expected);
    let t1 = int_terms(&theta_class(3, 1, r(13, 3)).unwrap());
    let expected: BTreeMap<_, _> = [(r(1, 3), 3), (r(4, 3), 3), (r(7, 3), 6), (r(13, 3), 6)].into();
    assert_eq!(t1, expected);
}

#[test]
fn p5_theta_classes_match_box_scan() {
    for j in 0..5u32 {
        let series = theta_class(5, j, r(3, 1)).unwrap();
        let words = BTreeSet::from([vec![j]]);
        let oracle = as_series(5, &box_theta(5, 1, &words, 6));
        assert_eq!(int_terms(&series), oracle, "j = {j}");
    }
}

#[test]
fn e8_counts_from_raw_coefficients() {
    let oracle = box_theta(3, 4, &word_set(&tetracode()), 6);
    let by_norm: Vec<u64> = (0..=3).map(|k| oracle.get(&(6 * k)).copied().unwrap_or(0)).collect();
    assert_eq!(by_norm, [1, 240, 2160, 6720]);
    assert_eq!(oracle.len(), 4, "only even norms occur");

    let lattice = CodeLattice::new(&tetracode()).unwrap();
    let series = lattice.theta_series(None, &BigRational::from_integer(3.into())).unwrap();
    assert_eq!(int_terms(&series), as_series(3, &oracle));
    let brute = lattice.brute_force_norm_counts(6).unwrap();
    assert_eq!(brute, BTreeMap::from([(0, 1), (2, 240), (4, 2160), (6, 6720)]));
}

#[test]
fn short_vector_counts() {
    let a2 = CodeLattice::zero_code(3, 1).unwrap();
    assert_eq!(a2.gram(), &[vec![2, -1], vec![-1, 2]]);
    assert_eq!(a2.short_vectors(None, &BigRational::from_integer(2.into())).unwrap().len(), 7);
    let e8 = CodeLattice::new(&tetracode()).unwrap();
    assert_eq!(e8.short_vectors(None, &BigRational::from_integer(2.into())).unwrap().len(), 241);
}

#[test]
fn nonlinear_code_theta_matches_box_scan() {
    let words = [vec![0, 1], vec![2, 2], vec![1, 0], vec![1, 1]];
    let code = Code::from_words(3, 2, words.iter().map(|w| Word::new(3, w.clone()).unwrap()).collect()).unwrap();
    assert!(!code.is_linear());
    let series = code_theta_series(&code, r(3, 1)).unwrap();
    let oracle = as_series(3, &box_theta(3, 2, &word_set(&code), 6));
    assert_eq!(int_terms(&series), oracle);
}

#[test]
fn eta_matches_euler_product() {
    let series = eta(3, r(30, 1)).unwrap();
    let product = euler_product(29);
    for (m, &c) in product.iter().enumerate() {
        let e = r(1, 24) + r(m as i64, 1);
        let got = series.int_coefficient(e).map(|x| x.to_i64().unwrap()).unwrap_or(0);
        assert_eq!(got, c, "coefficient of q^{e}");
    }
    let e24 = eta(3, r(3, 1)).unwrap().pow(24).unwrap();
    assert_eq!(e24.int_coefficient(r(1, 1)).unwrap(), 1.into());
    assert_eq!(e24.int_coefficient(r(2, 1)).unwrap(), (-24).into());
    assert_eq!(e24.int_coefficient(r(3, 1)).unwrap(), 252.into());
}

#[test]
fn partition_function_matches_direct_product() {
    let zero = OrbitClass::new(3, vec![1, 0]).unwrap();
    let (z, meta) = partition_function(&zero, r(3, 1)).unwrap();
    assert_eq!(meta.leading_exponent, "-1/12");
    // Z · η² = θ_0
    let eta2 = eta(3, r(4, 1)).unwrap().pow(2).unwrap();
    let back = z.mul(&eta2).unwrap();
    let t0 = theta_class(3, 0, back.cutoff()).unwrap();
    assert!(back.agrees_with(&t0), "{back} vs {t0}");

    let one = OrbitClass::new(3, vec![0, 1]).unwrap();
    let (_, meta) = partition_function(&one, r(2, 1)).unwrap();
    assert_eq!(meta.conformal_weight, "1/3");
    assert_eq!(meta.leading_exponent, "1/4");
}

#[test]
fn clifford_products_match_reduction() {
    let n = 5;
    let words = CliffordWord::all(n);
    let idx = |w: &CliffordWord| -> Vec<usize> { (0..n).filter(|i| w.support() >> i & 1 == 1).collect() };
    for a in &words {
        for b in &words {
            let mut seq = idx(a);
            seq.extend(idx(b));
            let (mut sign, sorted) = clifford_reduce(&seq);
            if a.is_negative() ^ b.is_negative() {
                sign = -sign;
            }
            let prod = a.mul(b);
            assert_eq!(idx(&prod), sorted);
            assert_eq!(prod.is_negative(), sign < 0, "{a} * {b}");
        }
    }
    let e01 = CliffordWord::from_indices(8, &[0, 1]).unwrap();
    assert_eq!(e01.mul(&e01), CliffordWord::minus_one(8));
    let w = CliffordWord::omega(8);
    assert_eq!(w.mul(&w), CliffordWord::one(8));
}

#[test]
fn signed_permutations_multiply_as_matrices() {
    let g = full_group(4).unwrap();
    assert_eq!(g.len(), 384);
    let step = 7;
    for a in g.iter().step_by(step) {
        for b in g.iter() {
            assert_eq!(a.mul(b).matrix(), matmul(&a.matrix(), &b.matrix()));
        }
    }
    let id = SignedPerm::identity(4);
    assert!(g.iter().all(|x| x.mul(&x.inverse()) == id));
}

#[test]
fn theta_evaluation_matches_q_expansion() {
    let z = Complex64::new(0.0, 1.0);
    let pt = HilbertPoint::new(vec![z]).unwrap();
    let series = theta_class(3, 0, r(10, 1)).unwrap();
    let numeric = theta_j_eval(3, 0, &pt, 1e-13).unwrap();
    assert!((numeric - series.eval(z)).norm() < 1e-9);
    let a = theta_j_eval(3, 1, &pt, 1e-13).unwrap();
    let b = theta_j_eval(3, 2, &pt, 1e-13).unwrap();
    assert!((a - b).norm() < 1e-12);

    let z = Complex64::new(0.1, 1.0);
    let e8 = CodeLattice::new(&tetracode()).unwrap().theta_series(None, &BigRational::from_integer(6.into())).unwrap();
    let direct = theta_code_eval(&tetracode(), &HilbertPoint::new(vec![z]).unwrap(), 1e-12).unwrap();
    assert!((direct - e8.eval(z)).norm() < 1e-8, "{direct} vs {}", e8.eval(z));
}

#[test]
fn word_oracle_enumerates_all_words() {
    assert_eq!(all_words(3, 4).len(), 81);
    let spanned = word_set(&tetracode());
    let closed = all_words(3, 4)
        .into_iter()
        .filter(|w| spanned.contains(w))
        .all(|w| spanned.contains(&w.iter().map(|&d| (3 - d) % 3).collect::<Vec<_>>()));
    assert!(closed);
}
