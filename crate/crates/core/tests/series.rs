use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::One;
use operadlab::coeff::Coefficient;
use operadlab::random::rng_for;
use operadlab::series::binom::{binomial_int, negation_sides, summation_sides};
use operadlab::series::substitute::{substitute, VarImage};
use operadlab::series::{LogPuiseuxSeries, Monomial, VarSet};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn vars() -> Arc<VarSet> {
    VarSet::new(&["a", "b"], Some("x"))
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Coefficient {
    let r = Coefficient::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    match rng.gen_range(0..4) {
        0 => r + Coefficient::phase(Ratio::new(rng.gen_range(-5..=5), rng.gen_range(1..=6))),
        1 => r * Coefficient::lambda(),
        _ => r,
    }
}

fn random_series(rng: &mut ChaCha8Rng, order: i64, positive: bool) -> LogPuiseuxSeries {
    let vs = vars();
    let mut s = LogPuiseuxSeries::zero(vs.clone(), order);
    for _ in 0..rng.gen_range(1..5) {
        let mut m = Monomial::one(3);
        let lo = if positive { 1 } else { 0 };
        m.set_exp(0, Ratio::new(rng.gen_range(lo..=6), 2));
        m.set_exp(1, Ratio::new(rng.gen_range(0..=4), 2));
        m.set_exp(2, Ratio::from_integer(rng.gen_range(-2..=2)));
        if rng.gen_bool(0.25) {
            m.set_log(rng.gen_range(0..3), rng.gen_range(1..=2));
        }
        s.add_term(m, random_coeff(rng));
    }
    s
}

fn one_plus(h: &LogPuiseuxSeries) -> LogPuiseuxSeries {
    LogPuiseuxSeries::one(h.vars().clone(), h.order()).add(h).unwrap()
}

fn at(a: f64, b: f64, x: f64) -> [Complex64; 3] {
    [Complex64::new(a, 0.01), Complex64::new(b, -0.02), Complex64::new(x, 0.3)]
}

#[test]
fn binomial_negation_exhaustive() {
    for n in -10..=10 {
        for k in 0..=10 {
            let (l, r) = negation_sides(n, k);
            assert_eq!(l, r, "n={n} k={k}");
        }
    }
    assert_eq!(binomial_int(-2, 3), Ratio::from_integer((-4).into()));
}

#[test]
fn binomial_summation_identity() {
    for n in -5..=5 {
        for l in 0..=4 {
            let (lhs, rhs) = summation_sides(n, l, 8);
            assert_eq!(lhs, rhs, "n={n} l={l}");
        }
    }
}

#[test]
fn display_and_json_goldens() {
    let vs = vars();
    let mut s = LogPuiseuxSeries::var(vs.clone(), "a", 3).unwrap();
    s.add_term(Monomial::var(3, 2, Ratio::new(-1, 2)), Coefficient::from_ratio(-3, 4));
    let j = s.to_json_string();
    let back = LogPuiseuxSeries::from_json_str(&j).unwrap();
    assert_eq!(back, s);
    assert!(j.contains(r#""-1/2""#), "{j}");
    assert!(LogPuiseuxSeries::from_json_str(r#"{"order":1,"vars":["a"],"terms":[{"exp":{"a":"1/0"},"log":{},"coeff":{"lambda_deg":0,"coeffs":[[1,1]],"m":1}}]}"#).is_err());
}

#[test]
fn pow_needs_a_root_in_the_ring() {
    let vs = vars();
    let two = LogPuiseuxSeries::constant(vs.clone(), Coefficient::from(2), 4);
    assert!(two.pow(Ratio::new(1, 2)).is_err());
    let minus = LogPuiseuxSeries::constant(vs.clone(), Coefficient::from(-1), 4);
    let root = minus.pow(Ratio::new(1, 2)).unwrap();
    assert_eq!(root.coefficient(&Monomial::one(3)), Coefficient::phase(Ratio::new(1, 2)));
    assert!(LogPuiseuxSeries::zero(vs, 4).inv().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coefficient_field_axioms(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let (a, b, c) = (random_coeff(&mut rng), random_coeff(&mut rng), random_coeff(&mut rng));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        let ab = (&a * &b).numeric_value();
        prop_assert!((ab - a.numeric_value() * b.numeric_value()).norm() < 1e-9 * (1.0 + ab.norm()));
        if !a.is_zero() && a.lambda_degree() == 0 {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn phases_multiply(n1 in -12i64..12, d1 in 1i64..9, n2 in -12i64..12, d2 in 1i64..9) {
        let (p, q) = (Ratio::new(n1, d1), Ratio::new(n2, d2));
        prop_assert_eq!(Coefficient::phase(p) * Coefficient::phase(q), Coefficient::phase(p + q));
        let v = Coefficient::phase(p).numeric_value();
        let want = Complex64::from_polar(1.0, std::f64::consts::PI * (n1 as f64 / d1 as f64));
        prop_assert!((v - want).norm() < 1e-12);
    }

    #[test]
    fn ring_laws(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let (f, g, h) = (random_series(&mut rng, 6, false), random_series(&mut rng, 6, false), random_series(&mut rng, 6, false));
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert!(f.mul(&g).unwrap().mul(&h).unwrap().agrees_with(&f.mul(&g.mul(&h).unwrap()).unwrap()));
        let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()));
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn theta_is_a_derivation(seed in any::<u64>(), var in 0usize..3) {
        let mut rng = rng_for(seed, 0);
        let (f, g) = (random_series(&mut rng, 6, false), random_series(&mut rng, 6, false));
        let name = &vars().names()[var].clone();
        let lhs = f.mul(&g).unwrap().theta(name).unwrap();
        let rhs = f.theta(name).unwrap().mul(&g).unwrap().add(&f.mul(&g.theta(name).unwrap()).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn powers_and_inverses(seed in any::<u64>(), n in -3i64..4, d in 1i64..4) {
        let mut rng = rng_for(seed, 0);
        let u = one_plus(&random_series(&mut rng, 8, true).truncate(8));
        let k = Ratio::new(n, d);
        let uk = u.pow(k).unwrap();
        prop_assert!(uk.pow_int(d as u32).unwrap().agrees_with(&u.pow(Ratio::from_integer(n)).unwrap()));
        prop_assert!(u.inv().unwrap().mul(&u).unwrap().agrees_with(&LogPuiseuxSeries::one(vars(), 8)));
    }

    #[test]
    fn numeric_power_and_log(seed in any::<u64>(), n in -3i64..4, d in 1i64..4) {
        let mut rng = rng_for(seed, 0);
        let vs = vars();
        let mut h = LogPuiseuxSeries::zero(vs.clone(), 16);
        for i in 0..2 {
            let e = Ratio::new(rng.gen_range(2..=4), 2);
            h.add_term(Monomial::var(3, i, e), Coefficient::from_ratio(rng.gen_range(-3..=3), 2));
        }
        let p = at(0.02, 0.015, 0.7);
        let hv = h.evaluate(&p, true).unwrap();
        let k = Ratio::new(n, d);
        let got = one_plus(&h).pow(k).unwrap().evaluate(&p, true).unwrap();
        let want = (Complex64::one() + hv).powf(n as f64 / d as f64);
        prop_assert!((got - want).norm() < 1e-10, "{} vs {}", got, want);
        let log = LogPuiseuxSeries::log1p(&h, Ratio::from_integer(16)).evaluate(&p, true).unwrap();
        prop_assert!((log - (Complex64::one() + hv).ln()).norm() < 1e-10);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let s = random_series(&mut rng, 6, false);
        let back = LogPuiseuxSeries::from_json_str(&s.to_json_string()).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_json(), s.to_json());
    }

    #[test]
    fn identity_substitution(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let s = random_series(&mut rng, 6, false);
        let vs = vars();
        let out = substitute(&s, &vs, 6, |v, _| VarImage::identity(&vs, &vs.names()[v])).unwrap();
        prop_assert!(out.agrees_with(&s));
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let (f, g) = (random_series(&mut rng, 40, false), random_series(&mut rng, 40, false));
        let p = at(0.3, 0.2, 1.4);
        let fg = f.mul(&g).unwrap().evaluate(&p, true).unwrap();
        let want = f.evaluate(&p, true).unwrap() * g.evaluate(&p, true).unwrap();
        prop_assert!((fg - want).norm() < 1e-9 * (1.0 + want.norm()));
    }
}
