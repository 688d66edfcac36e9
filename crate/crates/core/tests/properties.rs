use num_complex::Complex64;
use pet_core::cyclotomic::euler_phi;
use pet_core::ring::rat;
use pet_core::{cyclo_ring, zeta_power, CoefficientRing, Cyclo, QSeries, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn series(trunc: i64) -> impl Strategy<Value = QSeries<Rational>> {
    prop::collection::vec(rational(), trunc as usize).prop_map(move |c| QSeries::from_rationals(&c, trunc))
}

fn unit_series(trunc: i64) -> impl Strategy<Value = QSeries<Rational>> {
    (rational().prop_filter("nonzero", |r| *r != rat(0, 1)), prop::collection::vec(rational(), trunc as usize - 1))
        .prop_map(move |(c0, rest)| {
            let mut c = vec![c0];
            c.extend(rest);
            QSeries::from_rationals(&c, trunc)
        })
}

fn cyclo(m: u64) -> impl Strategy<Value = Cyclo> {
    prop::collection::vec(rational(), euler_phi(m) as usize).prop_map(move |c| Cyclo::from_coords(m, c))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_ring_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(CoefficientRing::add(&a, &b), CoefficientRing::add(&b, &a));
        prop_assert_eq!(CoefficientRing::mul(&a, &CoefficientRing::add(&b, &c)),
            CoefficientRing::add(&CoefficientRing::mul(&a, &b), &CoefficientRing::mul(&a, &c)));
        prop_assert!(CoefficientRing::sub(&a, &a).vanishes());
    }

    #[test]
    fn cyclotomic_field_axioms(a in cyclo(5), b in cyclo(5), c in cyclo(5)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !a.vanishes() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), Cyclo::one_in(&cyclo_ring(5).unwrap()));
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism(m in prop::sample::select(vec![3u64, 4, 6, 7, 8, 12]), seed in 0u64..1000) {
        let phi = euler_phi(m) as usize;
        let coords = |s: u64| (0..phi).map(|i| rat(((s * 31 + i as u64 * 17) % 13) as i64 - 6, 1 + (i as i64 % 3))).collect::<Vec<_>>();
        let a = Cyclo::from_coords(m, coords(seed));
        let b = Cyclo::from_coords(m, coords(seed + 7));
        prop_assert!(close(a.mul(&b).to_complex(), a.to_complex() * b.to_complex()));
        prop_assert!(close(a.add(&b).to_complex(), a.to_complex() + b.to_complex()));
    }

    #[test]
    fn roots_of_unity_multiply(m in 2u64..=12, i in -20i64..20, j in -20i64..20) {
        prop_assert_eq!(zeta_power(m, i).mul(&zeta_power(m, j)), zeta_power(m, i + j));
        prop_assert_eq!(zeta_power(m, m as i64), Cyclo::one_in(&cyclo_ring(m).unwrap()));
    }

    #[test]
    fn series_product_is_commutative_and_associative(a in series(8), b in series(8), c in series(8)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series(8)) {
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), QSeries::<Rational>::one(&(), 1, 8));
    }

    #[test]
    fn exp_and_log_are_inverse(a in series(7)) {
        let a = a.sub(&QSeries::constant(&(), 1, 7, &a.coeff(0).unwrap())).unwrap();
        let e = a.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), a.clone());
        let b = a.scale_rational(&rat(-2, 3));
        prop_assert_eq!(a.add(&b).unwrap().exp().unwrap(), e.mul(&b.exp().unwrap()).unwrap());
    }

    #[test]
    fn integer_powers_agree_with_repeated_products(a in unit_series(6), e in -3i64..=4) {
        let mut want = QSeries::<Rational>::one(&(), 1, 6);
        let base = if e < 0 { a.invert().unwrap() } else { a.clone() };
        for _ in 0..e.abs() {
            want = want.mul(&base).unwrap();
        }
        prop_assert_eq!(a.pow(e).unwrap(), want);
    }

    #[test]
    fn json_round_trip(a in series(9)) {
        let back = QSeries::<Rational>::from_json(&(), &a.to_json()).unwrap();
        prop_assert_eq!(back, a);
    }
}
