mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use toric_bgg::diffmod::DifferentialModule;
use toric_bgg::{Error, FieldSpec, GradedMatrix};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn non_square_zero_rejected(seed in any::<u64>()) {
        common::check_rejects_non_square_zero(&mut StdRng::seed_from_u64(seed)).unwrap();
    }

    #[test]
    fn minimization_rank_invariant(seed in any::<u64>()) {
        common::check_minimize_invariance(&mut StdRng::seed_from_u64(seed)).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn syzygies_over_rationals(seed in any::<u64>()) {
        let ring = common::hirzebruch(FieldSpec::Rationals);
        let phi = common::random_hirzebruch_2x3(&ring, &mut StdRng::seed_from_u64(seed));
        common::check_syzygies(&ring, &phi).unwrap();
    }

    #[test]
    fn syzygies_over_f101(seed in any::<u64>()) {
        let ring = common::hirzebruch(FieldSpec::prime(101).unwrap());
        let phi = common::random_hirzebruch_2x3(&ring, &mut StdRng::seed_from_u64(seed));
        common::check_syzygies(&ring, &phi).unwrap();
    }

    #[test]
    fn inhomogeneous_entries_rejected(seed in any::<u64>()) {
        let ring = common::hirzebruch(FieldSpec::Rationals);
        let phi = common::random_hirzebruch_2x3(&ring, &mut StdRng::seed_from_u64(seed));
        let mut entries = phi.entries().to_vec();
        // x_3 has degree (0,1); no column degree minus a row twist equals it plus an entry degree of the matrix
        entries[0][0] = &entries[0][0] + &(&ring.var(3) * &ring.var(3));
        let bad = GradedMatrix::new(&ring, phi.source().clone(), phi.target().clone(), ring.zero_degree(), entries);
        prop_assert!(bad.is_err());
    }
}

#[test]
fn square_zero_example_accepted() {
    let r = common::f101_xy();
    assert!(DifferentialModule::free(&r, common::example_dm(&r).del().clone()).is_ok());
    let bad = common::square(&r, &[0, 0], 1, &[&["x", "y"], &["0", "x"]]);
    assert!(matches!(DifferentialModule::free(&r, bad), Err(Error::NotSquareZero)));
}

#[test]
fn completeness_oracle_notices_a_missing_syzygy() {
    let ring = common::hirzebruch(FieldSpec::Rationals);
    let p = |t: &str| ring.parse(t).unwrap();
    let target = toric_bgg::FreeModule::new(vec![[0, 0].into(), [1, 0].into()]);
    let source = toric_bgg::FreeModule::new(vec![[1, 0].into(), [1, 0].into(), [2, 0].into()]);
    let phi = GradedMatrix::new(
        &ring,
        source,
        target,
        ring.zero_degree(),
        vec![vec![p("x_0"), p("x_2"), p("x_0*x_2")], vec![p("0"), p("1"), p("x_0")]],
    )
    .unwrap();
    let k = toric_bgg::groebner::syzygies(&ring, &phi).unwrap();
    assert!(k.cols() > 0);
    common::check_syzygy_matrix(&ring, &phi, &k).unwrap();
    let all: Vec<usize> = (0..k.rows()).collect();
    let fewer: Vec<usize> = (0..k.cols() - 1).collect();
    assert!(common::check_syzygy_matrix(&ring, &phi, &k.submatrix(&all, &fewer)).is_err());
}
