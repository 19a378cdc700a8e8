use proptest::prelude::*;
use qbailey::qprod::{poch, poch_reciprocal, Length, PochSpec};
use qbailey::{QSeries, Sign};

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

proptest! {
    #[test]
    fn length_recurrence(s in sign(), expo in 1usize..=4, base in 1usize..=3, n in 0i64..=12, denom in 1u32..=2) {
        let trunc = 40;
        let step = poch(PochSpec::finite(s, expo, base, n + 1), denom, trunc).unwrap();
        let mut expected = poch(PochSpec::finite(s, expo, base, n), denom, trunc).unwrap();
        expected.mul_binomial(s, expo + base * n as usize);
        prop_assert_eq!(step, expected);
    }

    #[test]
    fn product_times_reciprocal(s in sign(), expo in 1usize..=4, base in 1usize..=3, n in prop::option::of(0i64..=15)) {
        let trunc = 35;
        let length = n.map_or(Length::Infinite, Length::Finite);
        let spec = PochSpec::new(s, expo, base, length).unwrap();
        let product = poch(spec, 1, trunc).unwrap().mul(&poch_reciprocal(spec, 1, trunc).unwrap()).unwrap();
        prop_assert_eq!(product, QSeries::one(1, trunc).unwrap());
    }
}
