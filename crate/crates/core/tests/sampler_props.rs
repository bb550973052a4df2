use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use regmap_core::exec::Strategy as Exec;
use regmap_core::field::{Field, Rationals};
use regmap_core::linalg::{bareiss_rank, rank};
use regmap_core::sampler::{
    float_rank, sample_check_regular, sphere_counterexample, vandermonde_rank_exact,
    witness_rank, ExampleMap, GaussianRational, Verdict,
};
use regmap_core::Error;

#[test]
fn vandermonde_has_no_violations() {
    for k in 2..=8 {
        let r = sample_check_regular(&ExampleMap::Vandermonde(k), &[k], 500, 11, Exec::Parallel).unwrap();
        assert_eq!(r.verdict, Verdict::NoViolationFound, "k = {k}");
        assert_eq!(r.exact_trials, 500);
        assert_eq!(r.determinant_confirmed, 500);
    }
}

#[test]
fn sphere_map_is_three_regular_on_samples() {
    for m in 2..=6 {
        let r = sample_check_regular(&ExampleMap::SphereOneI(m), &[3], 500, 5, Exec::Parallel).unwrap();
        assert_eq!(r.violations, 0, "m = {m}");
        assert!(r.warnings.is_empty());
    }
}

#[test]
fn too_many_sphere_points_always_violate() {
    for m in 2..=6 {
        let r = sample_check_regular(&ExampleMap::SphereOneI(m), &[m + 3], 50, 5, Exec::Parallel).unwrap();
        assert_eq!(r.violations, 50);
        let Verdict::Counterexample { witness } = &r.verdict else { panic!() };
        assert!(witness_rank(&ExampleMap::SphereOneI(m), witness) < witness.needed);
    }
}

#[test]
fn direct_sums_are_jointly_regular() {
    let map = ExampleMap::DirectSum(vec![
        ExampleMap::Vandermonde(4),
        ExampleMap::SphereOneI(3),
        ExampleMap::Vandermonde(2),
    ]);
    let r = sample_check_regular(&map, &[4, 3, 2], 300, 17, Exec::Parallel).unwrap();
    assert_eq!(r.ambient_dimension, 7 + 5 + 3);
    assert_eq!(r.violations, 0);
    // four points of the last block in R^3 break the whole tuple
    let r = sample_check_regular(&map, &[4, 3, 4], 50, 17, Exec::Parallel).unwrap();
    assert_eq!(r.violations, 50);
    assert_eq!(r.warnings.len(), 1);
}

#[test]
fn reports_are_reproducible() {
    let map = ExampleMap::DirectSum(vec![ExampleMap::Vandermonde(3), ExampleMap::SphereOneI(2)]);
    let a = sample_check_regular(&map, &[3, 5], 200, 99, Exec::Sequential).unwrap();
    let b = sample_check_regular(&map, &[3, 5], 200, 99, Exec::Parallel).unwrap();
    let c = sample_check_regular(&map, &[3, 5], 200, 99, Exec::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(b, c);
    let d = sample_check_regular(&map, &[3, 3], 200, 100, Exec::Parallel).unwrap();
    assert_ne!(a.min_singular_ratio, d.min_singular_ratio);
}

#[test]
fn great_circle_witness_has_exact_rank_three() {
    let pts = sphere_counterexample(2, 4).unwrap();
    let rows: Vec<Vec<BigRational>> = pts
        .iter()
        .map(|x| std::iter::once(Rationals.one()).chain(x.iter().cloned()).collect())
        .collect();
    assert_eq!(rank(&Rationals, 4, rows), 3);
    for x in &pts {
        let norm: BigRational = x.iter().map(|c| c * c).sum();
        assert!(Rationals.is_one(&norm));
    }
}

#[test]
fn float_rank_handles_exact_dependence() {
    let rows = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0], vec![0.0, 1.0, 0.0]];
    assert_eq!(float_rank(&rows).0, 2);
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-40i64..40, -40i64..40, 1i64..9).prop_map(|(a, b, d)| {
        GaussianRational::new(BigRational::new(a.into(), d.into()), BigRational::new(b.into(), d.into()))
    })
}

proptest! {
    #[test]
    fn k_distinct_points_give_rank_k(pts in prop::collection::vec(gaussian(), 1..8)) {
        let mut distinct: Vec<GaussianRational> = Vec::new();
        for p in pts {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        let k = distinct.len() as u32;
        prop_assert_eq!(vandermonde_rank_exact(&distinct, k).unwrap(), k as usize);
        // more coordinates never lose rank
        prop_assert_eq!(vandermonde_rank_exact(&distinct, k + 2).unwrap(), k as usize);
    }

    #[test]
    fn repeated_points_are_rejected(p in gaussian(), q in gaussian()) {
        prop_assert_eq!(vandermonde_rank_exact(&[p.clone(), q, p], 3), Err(Error::RepeatedPoints));
    }

    #[test]
    fn bareiss_agrees_with_rational_elimination(
        m in prop::collection::vec(prop::collection::vec(-4i64..5, 5), 1..7)
    ) {
        let ints = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let rats = m.iter().map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect()).collect();
        prop_assert_eq!(bareiss_rank(ints), rank(&Rationals, 5, rats));
    }
}
