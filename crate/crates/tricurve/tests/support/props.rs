//! Randomized properties shared by the property tests and the acceptance harness.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};
use tricurve::curve::{implicitize, lies_on, map_degree, ParamCurve};
use tricurve::exactnum::{Field, QOmega, Ring};
use tricurve::poly::{resultant_multimodular, MPoly, QPoly, UPoly};
use tricurve::singular::{census_self, delta_check, CensusOptions, SingularCensus, SingularError};

pub fn qomega() -> impl Strategy<Value = QOmega> {
    (-30i64..=30, 1i64..=12, -30i64..=30, 1i64..=12).prop_map(|(a, b, c, d)| QOmega::frac(a, b).add(&QOmega::omega().mul(&QOmega::frac(c, d))))
}

pub fn upoly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(qomega(), 1..=max_deg + 1).prop_map(UPoly::new)
}

fn int_poly(deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, deg + 1)
}

/// Birational integer parametrizations of the given degrees.
pub fn rational_curve(degs: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ParamCurve> {
    degs.prop_flat_map(|d| (int_poly(d), int_poly(d), int_poly(d), 1i64..=6)).prop_filter_map("degenerate parametrization", |(mut x, y, z, lead)| {
        let d = x.len() - 1;
        x[d] = lead;
        let c = ParamCurve::from_ints(&x, &y, &z, "random").ok()?;
        (c.degree() == d && map_degree(&c) == 1).then_some(c)
    })
}

pub fn field_axioms(a: QOmega, b: QOmega, c: QOmega) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(&b), b.add(&a));
    prop_assert_eq!(a.mul(&b), b.mul(&a));
    prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    prop_assert_eq!(a.add(&QOmega::int(0)), a.clone());
    prop_assert_eq!(a.mul(&QOmega::int(1)), a.clone());
    prop_assert!(a.add(&a.neg()).is_zero());
    if !a.is_zero() {
        prop_assert_eq!(a.mul(&a.inv()), QOmega::int(1));
        prop_assert_eq!(b.div(&a).mul(&a), b.clone());
    }
    let w = QOmega::omega();
    prop_assert!(w.mul(&w).add(&w).add(&QOmega::int(1)).is_zero());
    Ok(())
}

pub fn resultant_is_multiplicative(f: QPoly, g: QPoly, h: QPoly) -> Result<(), TestCaseError> {
    prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
    let lhs = f.mul(&g).resultant(&h);
    let rhs = f.resultant(&h).mul(&g.resultant(&h));
    prop_assert_eq!(&lhs, &rhs);
    // the multimodular engine agrees on constant coefficients
    let lift = |p: &QPoly| p.coeffs().iter().map(|c| MPoly::constant(c.clone())).collect::<Vec<_>>();
    let fg = f.mul(&g);
    if fg.degree().is_some_and(|d| d > 0) && h.degree().is_some_and(|d| d > 0) {
        let r = resultant_multimodular(&lift(&fg), &lift(&h), &[]);
        prop_assert_eq!(r.coeff(&[]), lhs);
    }
    Ok(())
}

pub fn implicitization_contains_the_parametrization(c: ParamCurve, t0: QOmega) -> Result<(), TestCaseError> {
    let f = implicitize(&c).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(lies_on(&f, &c));
    prop_assert_eq!(f.degree() as usize, c.degree());
    if let Ok(p) = c.eval(&t0) {
        prop_assert!(f.contains(&p));
    }
    Ok(())
}

pub fn census_accounts_for_the_genus(c: ParamCurve) -> Result<(), TestCaseError> {
    let census = match census_self(&c, &CensusOptions::with_precision(128)) {
        Err(SingularError::ImproperParametrization(_)) => return Err(TestCaseError::reject("not birational")),
        r => r.map_err(|e| TestCaseError::fail(e.to_string()))?,
    };
    let d = c.degree();
    prop_assert!(delta_check(&census, &[d]), "delta {} for degree {}", census.delta_sum, d);
    prop_assert_eq!(census.delta_sum, (d - 1) * (d - 2) / 2);
    Ok(())
}

fn same_shape(a: &SingularCensus, b: &SingularCensus) -> bool {
    let key = |c: &SingularCensus| {
        let mut v: Vec<(usize, bool, usize)> = c.entries.iter().map(|e| (e.multiplicity, e.ordinary, e.branches.len())).collect();
        v.sort();
        v
    };
    a.len() == b.len() && a.delta_sum == b.delta_sum && a.pair_count == b.pair_count && key(a) == key(b)
}

pub fn census_does_not_depend_on_precision(c: ParamCurve) -> Result<(), TestCaseError> {
    let low = census_self(&c, &CensusOptions::with_precision(128));
    let high = census_self(&c, &CensusOptions::with_precision(320));
    match (low, high) {
        (Ok(a), Ok(b)) => prop_assert!(same_shape(&a, &b)),
        // a refusal at low precision is allowed; a different answer is not
        (Err(SingularError::PrecisionExhausted(_)), Ok(_)) => {}
        (a, b) => prop_assert!(false, "{:?} / {:?}", a.map(|c| c.len()), b.map(|c| c.len())),
    }
    Ok(())
}

/// Runs every suite with `cases` cases; one (name, outcome) per suite.
#[allow(dead_code)]
pub fn run_all(cases: u32) -> Vec<(&'static str, Result<u32, String>)> {
    fn go<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<u32, String>
    where
        S::Value: std::fmt::Debug,
    {
        let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
        match runner.run(&s, f) {
            Ok(()) => Ok(cases),
            Err(TestError::Fail(why, input)) => Err(format!("{why} for {input:?}")),
            Err(TestError::Abort(why)) => Err(why.to_string()),
        }
    }
    vec![
        ("field axioms", go(cases, (qomega(), qomega(), qomega()), |(a, b, c)| field_axioms(a, b, c))),
        ("resultant multiplicativity", go(cases, (upoly(3), upoly(3), upoly(3)), |(f, g, h)| resultant_is_multiplicative(f, g, h))),
        ("implicitize of param", go(cases, (rational_curve(1..=4), qomega()), |(c, t)| implicitization_contains_the_parametrization(c, t))),
        ("census vs genus", go(cases, rational_curve(2..=5), census_accounts_for_the_genus)),
        ("precision independence", go(cases, rational_curve(2..=4), census_does_not_depend_on_precision)),
    ]
}
