mod props;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pick_identity(pts in props::point_sets()) {
        props::pick_identity(&pts)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_is_additive(f in props::vanishing_poly(), g in props::vanishing_poly()) {
        props::order_is_additive(&f, &g)?;
    }

    #[test]
    fn newton_polygon_of_product_is_minkowski_sum(f in props::poly(), g in props::poly()) {
        props::newton_polygon_of_product(&f, &g)?;
    }

    #[test]
    fn rank_plus_nullity(m in props::matrix()) {
        props::rank_plus_nullity(&m)?;
    }

    #[test]
    fn modular_agrees_with_fraction_free(m in props::matrix()) {
        props::modular_agrees(&m)?;
    }

    #[test]
    fn reduction_is_idempotent((s, t) in props::slope_pair()) {
        props::reduction_is_idempotent(&s, &t)?;
    }

    #[test]
    fn wpp_round_trip((a, b, c) in props::weights()) {
        props::wpp_round_trip(a, b, c)?;
    }
}
