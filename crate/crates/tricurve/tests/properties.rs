mod support;

use proptest::prelude::*;
use support::props::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms_hold(a in qomega(), b in qomega(), c in qomega()) {
        field_axioms(a, b, c)?;
    }

    #[test]
    fn resultants_multiply(f in upoly(3), g in upoly(3), h in upoly(3)) {
        resultant_is_multiplicative(f, g, h)?;
    }

    #[test]
    fn implicitization_round_trip(c in rational_curve(1..=4), t0 in qomega()) {
        implicitization_contains_the_parametrization(c, t0)?;
    }

    #[test]
    fn census_matches_the_genus(c in rational_curve(2..=5)) {
        census_accounts_for_the_genus(c)?;
    }

    #[test]
    fn census_is_precision_independent(c in rational_curve(2..=4)) {
        census_does_not_depend_on_precision(c)?;
    }
}
