use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use roofcalc_core::bundles::{cohomology_table, euler_characteristic, tensor, BundleExpr};
use roofcalc_core::bwb::{
    bott, bott_by_reflections, cohomology, serre_dual, to_weight, BundleFactor,
};
use roofcalc_core::koszul::{koszul_page, restricted_cohomology, RestrictionCohomology};
use roofcalc_core::motivic::gaussian_binomial;
use roofcalc_core::partitions::{littlewood_richardson, schur_dimension};
use roofcalc_core::pluecker::{
    compound, pluecker_embed, pulled_back_section_eval, random_invertible, random_matrix,
    random_point, random_rational, section_eval, transposition_action, trial_rng,
};
use roofcalc_core::symfunc::{plethysm_wedge, PlethysmBudget};
use roofcalc_core::{GeneralizedWeight, Partition};

fn binomial(n: usize, k: usize) -> Option<u128> {
    roofcalc_core::subsets::binomial(n as u64, k as u64)
}

fn partition(max_rows: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_rows).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn factor() -> impl Strategy<Value = BundleFactor> {
    (1usize..=4).prop_flat_map(|n| {
        (partition(n, 3), partition(n + 1, 3), -12i64..=12)
            .prop_map(move |(u, q, t)| BundleFactor::new(n, u, q, t).unwrap())
    })
}

fn factor_on(n: usize) -> impl Strategy<Value = BundleFactor> {
    (partition(n, 2), partition(n + 1, 2), -5i64..=5)
        .prop_map(move |(u, q, t)| BundleFactor::new(n, u, q, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn serre_duality_is_an_involution_pairing_degrees(b in factor()) {
        let d = serre_dual(&b);
        prop_assert_eq!(&serre_dual(&d), &b);
        let top = b.grassmannian_dim();
        let (cb, cd) = (cohomology(&b), cohomology(&d));
        match (cb.degree(), cd.degree()) {
            (Some(p), Some(q)) => prop_assert_eq!(p + q, top),
            (None, None) => {}
            other => prop_assert!(false, "{:?}", other),
        }
        prop_assert_eq!(cb.dimension(), cd.dimension());
    }

    #[test]
    fn weight_round_trip(b in factor()) {
        prop_assert_eq!(BundleFactor::from_weight(b.n(), &to_weight(&b)).unwrap(), b);
    }

    #[test]
    fn bott_algorithms_agree(w in prop::collection::vec(-9i64..=9, 1..=9)) {
        let g = GeneralizedWeight::new(w);
        prop_assert_eq!(bott(&g), bott_by_reflections(&g));
    }

    #[test]
    fn rank_and_euler_characteristic_are_additive(
        (a, b, c) in (1usize..=3).prop_flat_map(|n| (factor_on(n), factor_on(n), factor_on(n)))
    ) {
        let (ea, eb, ec) = (BundleExpr::from_factor(a), BundleExpr::from_factor(b), BundleExpr::from_factor(c));
        let t = tensor(&ea, &eb).unwrap();
        prop_assert_eq!(t.rank(), ea.rank() * eb.rank());
        let sum = t.plus(&ec).unwrap();
        prop_assert_eq!(euler_characteristic(&sum), euler_characteristic(&t) + euler_characteristic(&ec));
        prop_assert_eq!(cohomology_table(&sum).euler_characteristic(), euler_characteristic(&sum));
        prop_assert_eq!(tensor(&ea, &eb).unwrap(), tensor(&eb, &ea).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn restriction_preserves_euler_characteristic(b in (2usize..=3).prop_flat_map(factor_on)) {
        let n = b.n();
        let e = BundleExpr::from_factor(b);
        let page = koszul_page(&e, n).unwrap();
        match restricted_cohomology(&e, n).unwrap() {
            RestrictionCohomology::Determinate { table, .. } => {
                prop_assert_eq!(table.euler_characteristic(), page.euler_characteristic());
            }
            RestrictionCohomology::Indeterminate { conflicts } => prop_assert!(!conflicts.is_empty()),
        }
    }

    #[test]
    fn plethysm_is_schur_positive_with_consistent_dimension(lam in partition(4, 3), n in 1usize..=3) {
        prop_assume!(lam.weight() * n as u64 <= 12);
        let nvars = 2 * n + 1;
        let e = plethysm_wedge(&lam, n, nvars, &PlethysmBudget::default()).unwrap();
        let total: BigUint = e.terms.iter().map(|(mu, c)| {
            assert_eq!(mu.weight(), lam.weight() * n as u64);
            schur_dimension(mu, nvars) * c
        }).sum();
        let outer = binomial(nvars, n).unwrap() as usize;
        prop_assert_eq!(total, schur_dimension(&lam, outer));
    }
}

#[test]
fn lr_dimension_bilinearity() {
    for rank in [3usize, 4, 6] {
        for da in 0..=8u64 {
            for db in 0..=8 - da {
                for a in Partition::all_of(da, Some(rank), None) {
                    for b in Partition::all_of(db, Some(rank), None) {
                        let lr = littlewood_richardson(&a, &b, rank);
                        let rhs: BigUint = lr
                            .terms
                            .iter()
                            .map(|(m, c)| schur_dimension(m, rank) * *c)
                            .sum();
                        assert_eq!(
                            schur_dimension(&a, rank) * schur_dimension(&b, rank),
                            rhs,
                            "{} {} {}",
                            a,
                            b,
                            rank
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn gaussian_binomials() {
    for big in 0..=12u32 {
        for k in 0..=big {
            let g = gaussian_binomial(big, k).unwrap();
            assert_eq!(
                g.eval_at_one(),
                BigInt::from(binomial(big as usize, k as usize).unwrap())
            );
            assert!(g.is_palindromic() && g.is_nonnegative());
            assert_eq!(g.degree(), Some(k * (big - k)));
        }
    }
}

fn sylvester_exponent(n: usize, k: usize) -> u32 {
    binomial(n - 1, k - 1).unwrap() as u32
}

#[test]
fn compound_matrices_on_seeded_samples() {
    for t in 0..50u64 {
        let mut rng = trial_rng(7, t);
        let size = 3 + (t % 3) as usize;
        let k = 1 + (t % (size as u64 - 1)) as usize;
        let a = random_matrix(size, size, &mut rng);
        let b = random_matrix(size, size, &mut rng);
        let ab = compound(&a.mul(&b).unwrap(), k).unwrap();
        assert_eq!(
            ab,
            compound(&a, k)
                .unwrap()
                .mul(&compound(&b, k).unwrap())
                .unwrap(),
            "trial {}",
            t
        );
        let lhs = compound(&a, k).unwrap().det().unwrap();
        let d = a.det().unwrap();
        let mut rhs = BigRational::one();
        for _ in 0..sylvester_exponent(size, k) {
            rhs *= &d;
        }
        assert_eq!(lhs, rhs, "trial {}", t);
    }
}

#[test]
fn pluecker_equivariance_on_seeded_samples() {
    for t in 0..50u64 {
        let n = 1 + (t % 3) as usize;
        let mut rng = trial_rng(11, t);
        let a = random_invertible(2 * n + 1, &mut rng);
        let x = random_point(n, &mut rng);
        let lhs = pluecker_embed(&x.transformed(&a).unwrap()).unwrap();
        let rhs = compound(&a, n)
            .unwrap()
            .mul_vec(&pluecker_embed(&x).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "trial {}", t);
    }
}

#[test]
fn transposition_identity_on_seeded_samples() {
    for t in 0..50u64 {
        let n = 1 + (t % 2) as usize;
        let mut rng = trial_rng(13, t);
        let big = 2 * n + 1;
        let size = binomial(big, n).unwrap() as usize;
        let s = random_matrix(size, size, &mut rng);
        let m = compound(&random_invertible(big, &mut rng), n).unwrap();
        let (x, y) = (random_point(n, &mut rng), random_point(n, &mut rng));
        let acted = transposition_action(&s, &m).unwrap();
        assert_eq!(
            pulled_back_section_eval(&s, &m, &x, &y).unwrap(),
            section_eval(&acted, &x, &y).unwrap()
        );
        assert_eq!(
            section_eval(&s, &x, &y).unwrap(),
            section_eval(&s.transpose(), &y, &x).unwrap()
        );
        assert_eq!(
            transposition_action(&acted, &m.transpose()).unwrap(),
            s.clone()
        );
        // the zero locus ignores rescaling a generator
        let c = loop {
            let c = random_rational(&mut rng);
            if !c.is_zero() {
                break c;
            }
        };
        let v0 = section_eval(&s, &x, &y).unwrap();
        let v1 = section_eval(&s, &x.rescaled(0, &c).unwrap(), &y).unwrap();
        assert_eq!(v1, v0 * c);
    }
}
