//! Generalized binomial coefficients and the series-level binomial
//! identities built on them.

use std::sync::Arc;

use num_rational::{BigRational, Ratio};
use num_traits::One;

use super::{LogPuiseuxSeries, Monomial, VarSet};
use crate::coeff::Coefficient;

/// `C(n, k) = n(n−1)…(n−k+1)/k!` for rational `n`.
pub fn binomial(n: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        let i = BigRational::from_integer(i.into());
        acc = acc * (n - &i) / (i + BigRational::one());
    }
    acc
}

pub fn binomial_int(n: i64, k: u32) -> BigRational {
    binomial(&BigRational::from_integer(n.into()), k)
}

/// Both sides of `C(n,k) = (−1)^k C(−n−1+k, k)`.
pub fn negation_sides(n: i64, k: u32) -> (BigRational, BigRational) {
    let sign = if k.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
    (binomial_int(n, k), sign * binomial_int(-n - 1 + k as i64, k))
}

/// Both sides of `Σ_k C(n,k) C(k,l) p^k = C(n,l) p^l (1+p)^{n−l}` as series
/// in `p` truncated at `order`.
pub fn summation_sides(n: i64, l: u32, order: i64) -> (LogPuiseuxSeries, LogPuiseuxSeries) {
    let vars: Arc<VarSet> = VarSet::new(&["p"], None);
    let pk = |k: i64| Monomial::var(1, 0, Ratio::from_integer(k));
    let mut lhs = LogPuiseuxSeries::zero(vars.clone(), order);
    for k in 0..=order.max(0) {
        let c = binomial_int(n, k as u32) * binomial_int(k, l);
        lhs.add_term(pk(k), Coefficient::from_rational(c));
    }
    let one_plus_p = LogPuiseuxSeries::from_terms(
        vars.clone(),
        order,
        [(pk(0), Coefficient::one()), (pk(1), Coefficient::one())],
    )
    .unwrap();
    let power = one_plus_p.pow(Ratio::from_integer(n - l as i64)).unwrap();
    let rhs = power.shift(&pk(l as i64)).scale(&Coefficient::from_rational(binomial_int(n, l))).with_order(order);
    (lhs, rhs)
}
