use num_rational::Ratio;

use super::coords::CoordinateSystem;
use super::expand::expand;
use super::rational_fn::RationalFunction;
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::series::binom::binomial_int;
use crate::series::LogPuiseuxSeries;

/// `Σ_{l ∈ Leaf(e)} (z_l − z_{R(d(e))}) ∂_l f`, whose expansion is
/// `ζ_e d/dζ_e` of the expansion of `f`.
pub fn edge_vector_field(f: &RationalFunction, cs: &CoordinateSystem, edge: &str) -> Result<RationalFunction> {
    let a = cs.analysis();
    let leaves = a.leaf_of_edge.get(edge).ok_or_else(|| Error::NoSuchVertex(edge.to_string()))?;
    let rr = a.right_leaf[edge];
    let r = cs.r().max(f.r());
    let f = f.with_points(r)?;
    let mut out = RationalFunction::zero(r);
    for &l in leaves {
        if l != rr {
            out = out.add(&RationalFunction::difference_power(r, l, rr, 1)?.mul(&f.partial(l))?)?;
        }
    }
    Ok(out)
}

/// `ζ_e d/dζ_e` of an expansion.
pub fn theta_edge(s: &LogPuiseuxSeries, edge: &str) -> Result<LogPuiseuxSeries> {
    s.theta(&super::coords::var_name(edge))
}

/// Which resummation identity to instantiate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resummation {
    /// `Σ_k C(n,k) C(n−k,l) X^k = C(n,l) (1+X)^{n−l}`.
    Complement,
    /// `Σ_k C(n,k) C(k,l) X^k = C(n,l) X^l (1+X)^{n−l}`.
    Selected,
}

/// Both sides of a resummation identity with
/// `X = e_A((z_s − z_r)/(z_r − z_i))`, `r` the rightmost leaf below `e0`,
/// `s` below `e0` and `i` outside; `1 + X = (z_s − z_i)/(z_r − z_i)`.
#[allow(clippy::too_many_arguments)]
pub fn resummation_sides(
    cs: &CoordinateSystem,
    kind: Resummation,
    e0: &str,
    s: usize,
    i: usize,
    n: i64,
    l: u32,
    order: i64,
) -> Result<(LogPuiseuxSeries, LogPuiseuxSeries)> {
    let a = cs.analysis();
    let leaves = a.leaf_of_edge.get(e0).ok_or_else(|| Error::NoSuchVertex(e0.to_string()))?;
    let r = a.right_leaf[e0];
    if !leaves.contains(&s) || leaves.contains(&i) || i == 0 || i > cs.r() {
        return Err(Error::Invalid(format!("need s below {e0:?} and i outside it")));
    }
    let rf = |parts: &[(usize, usize, i64)]| -> Result<RationalFunction> {
        let mut f = RationalFunction::constant(cs.r(), Coefficient::one());
        for &(p, q, k) in parts {
            if p != q {
                f = f.mul(&RationalFunction::difference_power(cs.r(), p, q, k)?)?;
            }
        }
        Ok(f)
    };
    let x = if s == r { RationalFunction::zero(cs.r()) } else { rf(&[(s, r, 1), (r, i, -1)])? };
    let xs = expand(&x, cs, order)?;
    let ord = Ratio::from_integer(order);
    let mut lhs = LogPuiseuxSeries::zero(cs.vars().clone(), order);
    let mut pw = LogPuiseuxSeries::one(cs.vars().clone(), order);
    for k in 0..=order.max(0) {
        let c = match kind {
            Resummation::Complement => binomial_int(n, k as u32) * binomial_int(n - k, l),
            Resummation::Selected => binomial_int(n, k as u32) * binomial_int(k, l),
        };
        lhs = lhs.add(&pw.scale(&Coefficient::from_rational(c)))?;
        pw = pw.mul_trunc(&xs, ord);
    }
    let nl = n - l as i64;
    let mut g = rf(&[(s, i, nl), (r, i, -nl)])?;
    if kind == Resummation::Selected {
        g = g.mul(&x.pow_u32(l)?)?;
    }
    let rhs = expand(&g, cs, order)?.scale(&Coefficient::from_rational(binomial_int(n, l)));
    Ok((lhs, rhs))
}
