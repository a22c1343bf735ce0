use std::collections::BTreeMap;

use proptest::prelude::*;

use ihowe::actions::hecke_sigma;
use ihowe::bases::{
    enumerate_theta, index_set, is_rho_label, matrix_to_tuple, omega_forget, omega_inverse, theta_count,
    tuple_to_matrix, Family, Half, Tuple, DEFAULT_SIZE_CAP,
};
use ihowe::freemod::{rank_fraction_free, rank_naive, SparseRow, SparseVector};
use ihowe::qscalar::{qbinom, qint, rat, LaurentPoly};
use ihowe::uqalg::{AlgebraWord, Gen};
use ihowe::RatScalar;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 0..4).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, rat(c));
        }
        p
    })
}

fn scalar() -> impl Strategy<Value = RatScalar> {
    (laurent(), laurent().prop_filter("nonzero", |d| !d.is_zero()))
        .prop_map(|(n, d)| RatScalar::new(n, d).unwrap())
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::I), Just(Family::J)]
}

fn gen3() -> impl Strategy<Value = Gen> {
    let simple = index_set(2);
    let all = index_set(3);
    prop_oneof![
        prop::sample::select(simple.clone()).prop_map(Gen::E),
        prop::sample::select(simple).prop_map(Gen::F),
        (prop::sample::select(all), prop_oneof![Just(1i8), Just(-1i8)]).prop_map(|(a, e)| Gen::D(a, e)),
    ]
}

fn word3() -> impl Strategy<Value = AlgebraWord> {
    prop::collection::vec((prop::collection::vec(gen3(), 0..4), -3i64..=3), 1..4).prop_map(|terms| {
        let mut w = AlgebraWord::zero(3);
        for (letters, c) in terms {
            let mut t = AlgebraWord::scalar(3, RatScalar::from_int(c));
            for g in letters {
                t = t.mul(&AlgebraWord::gen(3, g).unwrap()).unwrap();
            }
            w = w.add(&t).unwrap();
        }
        w
    })
}

fn tuple(big_m: u32, n: usize) -> impl Strategy<Value = Tuple> {
    prop::collection::vec(prop::sample::select(index_set(big_m)), n).prop_map(move |c| Tuple::new(big_m, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a - &a, RatScalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RatScalar::one());
        }
    }

    #[test]
    fn canonical_form_is_unique(n in laurent(), d in laurent().prop_filter("nonzero", |d| !d.is_zero()), k in -3i64..=3, c in 1i64..=5) {
        let a = RatScalar::new(n.clone(), d.clone()).unwrap();
        prop_assert_eq!(a.renormalized(), a.clone());
        // the same value with a common factor q^k (c + q) on both sides
        let mut f = LaurentPoly::monomial(k + 1, rat(1));
        f.add_term(k, rat(c));
        let b = RatScalar::raw(&n * &f, &d * &f).unwrap().renormalized();
        prop_assert_eq!(b, a.clone());
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn gaussian_binomials(m in 1i64..=8, r in 0i64..=8) {
        prop_assume!(r <= m);
        let b = qbinom(m, r).unwrap();
        prop_assert_eq!(&b, &qbinom(m, m - r).unwrap());
        prop_assert_eq!(b.bar(), b.clone());
        if r >= 1 && r < m {
            let up = &qbinom(m - 1, r).unwrap().shift(-r) + &qbinom(m - 1, r - 1).unwrap().shift(m - r);
            let down = &qbinom(m - 1, r).unwrap().shift(r) + &qbinom(m - 1, r - 1).unwrap().shift(r - m);
            prop_assert_eq!(&up, &b);
            prop_assert_eq!(&down, &b);
        }
        prop_assert_eq!(qbinom(m, 1).unwrap(), qint(m));
    }

    #[test]
    fn involutions(x in word3(), y in word3()) {
        prop_assert_eq!(x.sigma().sigma(), x.clone());
        prop_assert_eq!(x.omega().omega(), x.clone());
        prop_assert_eq!(x.mul(&y).unwrap().sigma(), y.sigma().mul(&x.sigma()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().omega(), x.omega().mul(&y.omega()).unwrap());
    }

    #[test]
    fn fraction_free_rank_agrees(rows in prop::collection::vec(prop::collection::btree_map(0usize..6, scalar(), 0..4), 0..6)) {
        let rows: Vec<SparseRow<RatScalar>> = rows
            .into_iter()
            .map(|r: BTreeMap<usize, RatScalar>| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        prop_assert_eq!(rank_fraction_free(&rows), rank_naive(&rows));
    }

    #[test]
    fn theta_enumeration(f in family(), m in 1u32..=2, n in 1u32..=2, d in 0u32..=3) {
        let all = enumerate_theta(f, m, n, d, DEFAULT_SIZE_CAP).unwrap();
        prop_assert_eq!(all.len() as u128, theta_count(f, m, n, d));
        for a in &all {
            prop_assert!(a.check_invariants().is_ok());
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), all.len());
    }

    #[test]
    fn lambda_round_trip((f, m, lam) in (family(), 1u32..=3, 1usize..=3)
        .prop_flat_map(|(f, m, n)| (Just(f), Just(m), tuple(f.ambient(m), n))))
    {
        let a = tuple_to_matrix(f, m, &lam).unwrap();
        prop_assert!(is_rho_label(&a));
        prop_assert!(a.check_invariants().is_ok());
        prop_assert_eq!(matrix_to_tuple(&a).unwrap(), lam);
    }

    #[test]
    fn omega_round_trip(m in 1u32..=2, n in 1u32..=2, d in 0u32..=3, k in any::<prop::sample::Index>()) {
        let all = enumerate_theta(Family::I, m, n, d, DEFAULT_SIZE_CAP).unwrap();
        let a = &all[k.index(all.len())];
        let c = omega_forget(a).unwrap();
        prop_assert_eq!(&omega_inverse(&c).unwrap(), a);
    }

    #[test]
    fn hecke_relations(t in tuple(4, 3)) {
        let v = SparseVector::basis(t);
        let s = |i: usize, v: &SparseVector| hecke_sigma(&[i], v).unwrap();
        let c = &RatScalar::q_pow(1) - &RatScalar::q_pow(-1);
        for i in 0..3 {
            // (sigma + q)(sigma - q^-1) = 0
            let sv = s(i, &v);
            prop_assert!(s(i, &sv).add(&sv.scale(&c)).sub(&v).is_zero());
        }
        prop_assert_eq!(s(1, &s(2, &s(1, &v))), s(2, &s(1, &s(2, &v))));
        prop_assert_eq!(s(0, &s(1, &s(0, &s(1, &v)))), s(1, &s(0, &s(1, &s(0, &v)))));
        prop_assert_eq!(s(0, &s(2, &v)), s(2, &s(0, &v)));
    }
}

#[test]
fn half_arithmetic() {
    assert_eq!(Half::HALF + Half::HALF, Half::ONE);
    assert_eq!(-Half(3), Half(-3));
    assert_eq!(Half::int(2).to_string(), "2");
}
