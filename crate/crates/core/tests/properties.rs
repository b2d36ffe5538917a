mod common;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use theta_forge::cliffcode::CliffordWord;
use theta_forge::codelattice::CodeLattice;
use theta_forge::cyclotomic::{CycInt, CycRat};
use theta_forge::fpcode::{Code, Word};
use theta_forge::octower::{full_group, SignedPerm};
use theta_forge::qexp::QSeries;
use theta_forge::voarep::{orbit_of, OrbitClass, RepElement};

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(3u32), Just(5), Just(7)]
}

fn cyc(p: u32) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-6i64..=6, p as usize - 1).prop_map(move |c| CycInt::new(p, c).unwrap())
}

fn cyc_triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
    prime().prop_flat_map(|p| (cyc(p), cyc(p), cyc(p)))
}

/// Integer series with exponents in `(1/3)Z`, starting at `q^0` with coefficient 1.
fn unit_series() -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-4i64..=4, 1..10).prop_map(|c| {
        let mut terms = vec![(Rational64::zero(), 1)];
        terms.extend(c.iter().enumerate().map(|(k, &v)| (Rational64::new(k as i64 + 1, 3), v)));
        QSeries::from_integers(3, &terms, Rational64::new(3, 1))
    })
}

fn word(p: u32, n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..p, n).prop_map(move |d| Word::new(p, d).unwrap())
}

fn clifford(n: usize) -> impl Strategy<Value = CliffordWord> {
    (any::<bool>(), 0u32..(1 << n)).prop_map(move |(s, m)| CliffordWord::new(n, s, m).unwrap())
}

fn rep_element() -> impl Strategy<Value = RepElement> {
    prop::collection::vec((prop::collection::vec(0u32..3, 0..4), -3i64..=3), 1..4).prop_map(|terms| {
        let terms = terms.into_iter().map(|(digits, c)| {
            let n = digits.len();
            (
                orbit_of(&Word::new(3, digits).unwrap()).unwrap_or(OrbitClass::zero(3, n as u32).unwrap()),
                CycRat::from_int(3, c),
            )
        });
        RepElement::from_terms(3, terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws((a, b, c) in cyc_triple()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).trace(), a.trace() + b.trace());
        prop_assert_eq!((&a * &b).field_norm(), a.field_norm() * b.field_norm());
        let p = a.p();
        prop_assert_eq!((&a * &b).rho(), a.rho() * b.rho() % p);
        prop_assert_eq!(a.pairing(&b), b.pairing(&a));
    }

    #[test]
    fn pairing_norm_matches_embeddings((a, _, _) in cyc_triple()) {
        let p = a.p();
        let coeffs: Vec<i64> = a.coeffs().iter().map(|x| x.to_i64().unwrap()).collect();
        let exact = a.norm().to_f64().unwrap();
        prop_assert!((exact - common::embedding_norm(p, &coeffs)).abs() < 1e-9);
    }

    #[test]
    fn cyclotomic_inverse((a, _, _) in cyc_triple()) {
        prop_assume!(!a.is_zero());
        let x = CycRat::from(a);
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn series_products(a in unit_series(), b in unit_series(), c in unit_series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let one = QSeries::one(3, a.cutoff());
        prop_assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
        prop_assert_eq!(a.mul(&b).unwrap().t_shift().unwrap(), a.t_shift().unwrap().mul(&b.t_shift().unwrap()).unwrap());
    }

    #[test]
    fn series_power_matches_repeated_product(a in unit_series(), k in 0i64..5) {
        let mut expected = QSeries::one(3, a.cutoff());
        for _ in 0..k {
            expected = expected.mul(&a).unwrap();
        }
        prop_assert_eq!(a.pow(k).unwrap(), expected);
        prop_assert_eq!(a.pow(-k).unwrap().mul(&a.pow(k).unwrap()).unwrap(), QSeries::one(3, a.cutoff()));
    }

    #[test]
    fn dual_of_dual(p in prime(), gens in prop::collection::vec(prop::collection::vec(0u32..7, 5), 0..4)) {
        let gens: Vec<Word> = gens.into_iter().map(|g| Word::new(p, g.into_iter().map(|d| d % p).collect()).unwrap()).collect();
        let c = Code::from_generators(p, 5, gens).unwrap();
        let d = c.dual().unwrap();
        prop_assert_eq!(c.len() * d.len(), (p as usize).pow(5));
        prop_assert_eq!(d.dual().unwrap(), c.clone());
        prop_assert_eq!(c.weight_enumerator().total(), c.len() as u64);
    }

    #[test]
    fn clifford_associative(a in clifford(8), b in clifford(8), c in clifford(8)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&a.inverse()), CliffordWord::one(8));
        let commute = a.mul(&b) == b.mul(&a);
        prop_assert_eq!(a.commutes_with(&b), commute);
    }

    #[test]
    fn rep_ring_laws(a in rep_element(), b in rep_element(), c in rep_element()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert!(a.mul(&b).unwrap().is_integer_valued());
    }

    #[test]
    fn orbit_of_respects_concatenation(x in word(5, 3), y in word(5, 2)) {
        let mut digits: Vec<u32> = x.digits().iter().map(|&d| d as u32).collect();
        digits.extend(y.digits().iter().map(|&d| d as u32));
        let joined = orbit_of(&Word::new(5, digits).unwrap()).unwrap();
        prop_assert_eq!(joined, orbit_of(&x).unwrap().concat(&orbit_of(&y).unwrap()).unwrap());
    }

    #[test]
    fn coset_norms_match_embeddings(j in 0u32..5) {
        let lattice = CodeLattice::zero_code(5, 1).unwrap();
        let shift = Word::new(5, vec![j]).unwrap();
        let vs = lattice.short_vectors(Some(&shift), &BigRational::from_integer(BigInt::from(4))).unwrap();
        prop_assert!(!vs.is_empty());
        for v in vs {
            let coeffs = CodeLattice::flatten(&v.coords);
            prop_assert_eq!(v.rho(), vec![j]);
            prop_assert!((v.norm.to_f64().unwrap() - common::embedding_norm(5, &coeffs)).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn signed_perm_group_laws(i in 0usize..384, j in 0usize..384, k in 0usize..384) {
        let g = full_group(4).unwrap();
        let (a, b, c) = (&g[i], &g[j], &g[k]);
        prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
        prop_assert_eq!(a.mul(&a.inverse()), SignedPerm::identity(4));
        prop_assert_eq!(a.mul(b).det(), a.det() * b.det());
    }
}
