use num_bigint::BigInt;
use num_complex::Complex64;
use pet_core::bivariate::{BiSeries, OuterVar};
use pet_core::crank::CrankTable;
use pet_core::eisenstein::{eisenstein, EisensteinTable};
use pet_core::jacobi::{
    theorem3_reconstruct, theta_shift_direct, torsional_g_lifted, Divisor, LiftedPoint, TorsionPoint,
};
use pet_core::lattice::{eval_qseries, modularity_spot_check, Lattice};
use pet_core::partitions::{enumerate, partition_counts};
use pet_core::ring::{factorial, int, rat};
use pet_core::{cyclo_ring, Cyclo, PartitionWeight, QSeries, Rational};

fn naive_sigma(nu: u32, n: i64) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(|d| d.pow(nu)).sum()
}

#[test]
fn eisenstein_coefficients_match_naive_divisor_sums() {
    for (w, c0) in [(4, rat(1, 120)), (6, rat(-1, 252)), (8, rat(1, 240))] {
        let g = eisenstein(w, 25).unwrap();
        assert_eq!(g.coeff(0).unwrap(), c0, "weight {w}");
        for n in 1..25 {
            assert_eq!(g.coeff(n).unwrap(), int(2 * naive_sigma(w as u32 - 1, n)), "weight {w}, q^{n}");
        }
    }
}

#[test]
fn partition_counts_match_enumeration() {
    let p = partition_counts(16);
    for k in 0..16u64 {
        let parts = enumerate(k);
        assert_eq!(BigInt::from(parts.len()), p[k as usize]);
        assert!(parts.iter().all(|l| l.size() == k));
    }
    assert_eq!(p[15], BigInt::from(176));
}

#[test]
fn crank_tables_agree() {
    let brute = CrankTable::brute_force(16).unwrap();
    let direct = CrankTable::combinatorial(16);
    let product = CrankTable::from_generating_function(16);
    for n in 0..=16 {
        for m in -(n as i64)..=n as i64 {
            assert_eq!(direct.count(m, n), brute.count(m, n), "M({m},{n})");
            if n != 1 {
                assert_eq!(product.count(m, n), brute.count(m, n), "M({m},{n})");
            }
        }
    }
    // the product assigns the single partition of 1 the signed row 1, -1, 1
    assert_eq!((product.count(-1, 1), product.count(0, 1), product.count(1, 1)), (1, -1, 1));
}

#[test]
fn low_traces() {
    let table = EisensteinTable::new(2, 10).unwrap();
    assert_eq!(table.trace(0, &PartitionWeight::PhiCrank).unwrap(), QSeries::<Rational>::one(&(), 1, 10));
    let g2 = eisenstein(2, 10).unwrap();
    assert_eq!(table.trace(1, &PartitionWeight::PhiLambda).unwrap(), g2.scale_rational(&rat(-1, 2)));
}

#[test]
fn reconstruction_for_asymmetric_divisors() {
    // three copies of a 3-torsion point, one lifted so the sum vanishes
    let ctx = cyclo_ring(3).unwrap();
    for text in ["-3@0,0;1@0,1/3;1@0,1/3;1@0,1/3+0,-1", "-3@0,0;1@1/3,0;1@1/3,0;1@1/3,0+-1,0"] {
        let d = Divisor::parse(text).unwrap();
        assert_eq!(theorem3_reconstruct::<Cyclo>(&ctx, &d, 6, 6, 0.0).unwrap(), None, "{d}");
    }
}

#[test]
fn reconstruction_for_mixed_grid_divisor() {
    let d = Divisor::parse("1@1/2,0;1@1/2,0+-1,0;-1@0,1/2;-1@0,1/2+0,-1").unwrap();
    assert_eq!(theorem3_reconstruct::<Rational>(&(), &d, 6, 6, 0.0).unwrap(), None);
}

#[test]
fn shift_expansion_needs_the_negated_point() {
    // with G_{j,x} in place of G_{j,-x} the odd coefficients flip sign
    let ctx = cyclo_ring(3).unwrap();
    let x = LiftedPoint::reduced(TorsionPoint::new(int(0), rat(1, 3)));
    let direct = theta_shift_direct::<Cyclo>(&ctx, &x, 5, 5).unwrap();
    let wrong = (1..5)
        .map(|j| {
            torsional_g_lifted::<Cyclo>(&ctx, j as u32, &x, 5)
                .map(|g| g.scale_rational(&Rational::new(BigInt::from(-1), factorial(j))))
        })
        .collect::<pet_core::Result<Vec<_>>>()
        .unwrap();
    let mut slices = vec![QSeries::zero(&ctx, 1, 5)];
    slices.extend(wrong);
    let wrong = BiSeries::from_slices(OuterVar::Z, 0, 5, slices).unwrap().exp().unwrap();
    let d = direct.first_difference(&wrong, 0.0).unwrap().expect("conventions differ");
    assert!(d.location.starts_with("Z^1"), "{}", d.location);
}

#[test]
fn absolutely_convergent_power_sums_are_stable() {
    let tau = Complex64::new(0.0, 1.0);
    let small = Lattice::new(tau, 100.0).unwrap();
    let large = Lattice::new(tau, 200.0).unwrap();
    for j in 2..=3 {
        let d = (small.power_sum(j, 0.0) - large.power_sum(j, 0.0)).norm();
        assert!(d < 1e-6, "j = {j}: {d}");
    }
}

#[test]
fn power_sums_match_eisenstein_values() {
    for tau in [Complex64::new(0.0, 1.0), Complex64::new(0.25, 1.5)] {
        let lattice = Lattice::new(tau, 200.0).unwrap();
        for k in 2..=3u64 {
            let g = eval_qseries(&eisenstein(2 * k, 40).unwrap(), tau).unwrap().value;
            let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
            let want = two_pi_i.powi(2 * k as i32) / (1..2 * k).product::<u64>() as f64 * g;
            let got = lattice.power_sum(k as u32, 0.0);
            assert!((got - want).norm() < 1e-6 * want.norm().max(1.0), "tau = {tau}, k = {k}: {got} vs {want}");
        }
    }
}

#[test]
fn modularity_at_points_with_both_coordinates() {
    let tau = Complex64::new(0.0, 2.0);
    for (k, a, b) in
        [(1, rat(1, 3), int(0)), (1, rat(1, 4), rat(1, 2)), (2, rat(1, 3), rat(1, 4)), (3, rat(1, 2), rat(1, 3))]
    {
        let x = TorsionPoint::new(a, b);
        let r = modularity_spot_check(k, &x, tau).unwrap();
        assert!(r.abs_error < 1e-6, "k = {k}, x = {x}: {r:?}");
    }
}

#[test]
fn lattice_rejects_points_near_the_real_axis() {
    assert!(Lattice::new(Complex64::new(0.0, 0.3), 10.0).is_err());
    assert!(Lattice::new(Complex64::new(0.0, -1.0), 10.0).is_err());
}
