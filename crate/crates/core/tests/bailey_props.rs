use proptest::prelude::*;
use qbailey::bailey::{
    check_multifold, lemma_eval, pairs, theorem1_lift, BaseParam, OnefoldPair, RhoSpec, Sequence,
};
use qbailey::{QSeries, Sign};

const TRUNC: usize = 15;

/// α_r a random polynomial for `r ≤ 2`, zero beyond.
fn random_alpha() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 1..=4), 3)
}

fn pair_from(alpha: Vec<Vec<i64>>, a: BaseParam) -> OnefoldPair {
    let seq = Sequence::new(move |index, trunc| match alpha.get(index[0]) {
        Some(c) => {
            let mut coeffs = c.clone();
            coeffs.resize(trunc.max(c.len()), 0);
            QSeries::from_coeffs(coeffs, 1)?.truncate(trunc)
        }
        None => QSeries::zero(1, trunc),
    });
    OnefoldPair::from_alpha("random", a, 1, seq)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lift_of_random_pair_is_a_pair(alpha in random_alpha(), shifted in any::<bool>()) {
        let a = if shifted { BaseParam::q(1) } else { BaseParam::ONE };
        let pair = pair_from(alpha, a);
        let lifted = theorem1_lift(pair.as_multifold());
        let report = check_multifold(&lifted, 3, TRUNC);
        prop_assert!(report.is_match(), "{}", report.summary());
    }

    #[test]
    fn inverse_power_equals_monomial_route(n in 0u64..=5, second in 0usize..3, which in 0usize..3) {
        let pair = [pairs::unit1(), pairs::pair_3_5(), pairs::remark_pair()][which].clone();
        let rho2 = [RhoSpec::InfinityLimit, RhoSpec::InverseQPower(2), RhoSpec::FiniteMonomial { sign: Sign::Minus, expo: 0 }][second];
        let via_power = lemma_eval(&pair, RhoSpec::InverseQPower(n), rho2, 25).unwrap();
        let via_monomial = lemma_eval(
            &pair,
            RhoSpec::FiniteMonomial { sign: Sign::Plus, expo: -(n as i64) },
            rho2,
            25,
        )
        .unwrap();
        prop_assert_eq!(&via_power.lhs, &via_monomial.lhs);
        prop_assert_eq!(&via_power.rhs, &via_monomial.rhs);
        prop_assert_eq!(via_power.lhs, via_power.rhs);
    }
}

#[test]
fn every_named_pair_satisfies_its_relation() {
    for name in pairs::PAIR_NAMES {
        let pair = pairs::by_name(name).unwrap();
        let n_max = match pair.folds {
            1 => 6,
            2 => 3,
            _ => 1,
        };
        let report = check_multifold(&pair, n_max, 20);
        if *name == "pair-3.7-literal" {
            assert!(!report.is_match());
        } else {
            assert!(report.is_match(), "{}", report.summary());
        }
    }
}
