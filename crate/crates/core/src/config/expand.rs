use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::Zero;

use super::coords::CoordinateSystem;
use super::rational_fn::RationalFunction;
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::series::{binomial_unit, LogPuiseuxSeries, Monomial};

/// `e_A(f)`: each `(z_i − z_j)^k` becomes `x^k c^k M^k (1 + h)^k` with the
/// unit expanded binomially.
pub fn expand(f: &RationalFunction, cs: &CoordinateSystem, order: i64) -> Result<LogPuiseuxSeries> {
    if f.max_index() > cs.r() {
        return Err(Error::IndexOutOfRange { index: f.max_index(), max: cs.r() });
    }
    let vars = cs.vars().clone();
    let n = vars.len();
    let w = vars.weights().to_vec();
    let xi = cs.x_index();
    let ord = Ratio::from_integer(order);
    let mut planned = Vec::with_capacity(f.terms().len());
    for (factors, c) in f.terms() {
        let mut lead = Monomial::one(n);
        let mut coeff = c.clone();
        let mut xk = 0i64;
        for &((i, j), k) in factors {
            let fac = cs.factored(i, j)?;
            lead = lead.mul(&fac.mono.pow(Ratio::from_integer(k)));
            xk += k;
            if fac.sign < 0 && k % 2 != 0 {
                coeff = -coeff;
            }
        }
        lead.set_exp(xi, Ratio::from_integer(xk));
        let rel = ord - lead.degree(&w);
        if rel >= Ratio::zero() {
            planned.push((factors, coeff, lead, rel));
        }
    }
    let Some(kmax) = planned.iter().map(|p| p.3).max() else {
        return Ok(LogPuiseuxSeries::zero(vars, order));
    };
    let mut units: HashMap<((usize, usize), i64), LogPuiseuxSeries> = HashMap::new();
    let mut out = LogPuiseuxSeries::zero(vars.clone(), order);
    for (factors, coeff, lead, rel) in planned {
        let mut unit = LogPuiseuxSeries::one(vars.clone(), order);
        for &((i, j), k) in factors {
            let u = units.entry(((i, j), k)).or_insert_with(|| {
                let fac = cs.factored(i, j).expect("checked above");
                binomial_unit(&fac.h, Ratio::from_integer(k), kmax)
            });
            unit = unit.mul_trunc(u, rel);
        }
        for (m, uc) in unit.terms() {
            out.add_term(m.mul(&lead), uc * &coeff);
        }
    }
    Ok(out)
}

/// Smallest degree among the leading monomials of the terms of `f`; for a
/// single term this is the degree of `e_A(f)`.
pub fn leading_degree(f: &RationalFunction, cs: &CoordinateSystem) -> Result<Option<Ratio<i64>>> {
    let w = cs.vars().weights();
    let mut best: Option<Ratio<i64>> = None;
    for factors in f.terms().keys() {
        let mut lead = Monomial::one(cs.vars().len());
        for &((i, j), k) in factors {
            lead = lead.mul(&cs.factored(i, j)?.mono.pow(Ratio::from_integer(k)));
        }
        let d = lead.degree(w);
        best = Some(best.map_or(d, |b| b.min(d)));
    }
    Ok(best)
}

/// `e_A(log(z_i − z_j)) = log x + log c + Σ_e deg_e log ζ_e + log(1 + h)`,
/// with `log(−1) = iπ`.
pub fn expand_log(i: usize, j: usize, cs: &CoordinateSystem, order: i64) -> Result<LogPuiseuxSeries> {
    let fac = cs.factored(i, j)?;
    let vars = cs.vars().clone();
    let n = vars.len();
    let mut out = LogPuiseuxSeries::log1p(&fac.h, Ratio::from_integer(order)).with_order(order);
    let mut lx = Monomial::one(n);
    lx.set_log(cs.x_index(), 1);
    out.add_term(lx, Coefficient::one());
    if fac.sign < 0 {
        out.add_term(Monomial::one(n), Coefficient::lambda());
    }
    for k in 0..cs.edges().len() {
        let e = fac.mono.exp(k);
        if !e.is_zero() {
            let mut m = Monomial::one(n);
            m.set_log(k, 1);
            out.add_term(m, Coefficient::from(e.to_integer()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(s: &str) -> CoordinateSystem {
        CoordinateSystem::new(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn trivial_difference() {
        let c = cs("12");
        let f: RationalFunction = "(z1-z2)".parse().unwrap();
        assert_eq!(expand(&f, &c, 4).unwrap().to_string(), "x + O(deg > 4)");
    }

    #[test]
    fn log_of_single_edge_difference() {
        let c = cs("(23)((15)4)");
        let s = expand_log(3, 5, &c, 3).unwrap();
        assert_eq!(s.to_string(), "log(x) - zeta_R - (1/2)·zeta_R^2 - (1/3)·zeta_R^3 + O(deg > 3)");
        let t = expand_log(5, 3, &c, 1).unwrap();
        assert_eq!(t.to_string(), "Λ + log(x) - zeta_R + O(deg > 1)");
    }
}
