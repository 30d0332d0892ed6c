//! Termwise substitution of variables by series.
//!
//! Each source variable `v` is sent to `e^{iπq_v} · M_v · u_v` with `M_v` a
//! monomial in the target variables and `u_v = 1 + h_v`, `h_v` of positive
//! degree. Then `v^s ↦ e^{iπ q_v s} M_v^s u_v^s` and
//! `log v ↦ q_v Λ + log M_v + log u_v`. The integer-or-rational `q_v` fixes
//! the branch, so `q_v = −1` and `q_v = 1` give the same value of `v` but
//! different logarithms.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

use super::{binomial_unit, LogPuiseuxSeries, Monomial, VarSet};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct VarImage {
    pub phase: Ratio<i64>,
    pub mono: Monomial,
    /// `u_v − 1`, known at least to the relative order that was requested.
    pub h: LogPuiseuxSeries,
}

impl VarImage {
    /// The target variable `name` itself.
    pub fn identity(target: &Arc<VarSet>, name: &str) -> Result<Self> {
        let i = target.index(name)?;
        Ok(VarImage {
            phase: Ratio::zero(),
            mono: Monomial::var(target.len(), i, Ratio::from_integer(1)),
            h: LogPuiseuxSeries::zero(target.clone(), i64::MAX / 4),
        })
    }

    /// Factors `s = c·M·(1+h)` and records `c = e^{iπq}` with the given `q`.
    pub fn from_series(s: &LogPuiseuxSeries, q: Ratio<i64>) -> Result<Self> {
        let (c, mono, h) = s.factor_leading()?;
        if c != Coefficient::phase(q) {
            return Err(Error::Invalid(format!("leading coefficient {c} is not e^(iπ·{q})")));
        }
        if mono.has_logs() {
            return Err(Error::NoLeadingMonomial("logarithmic leading monomial".into()));
        }
        Ok(VarImage { phase: q, mono, h })
    }
}

/// Substitutes into `s`, producing a series over `target` truncated at
/// `order`. `image(v, k)` must return the image of source variable `v`
/// with `h_v` exact to relative degree `k`.
pub fn substitute<F>(s: &LogPuiseuxSeries, target: &Arc<VarSet>, order: i64, image: F) -> Result<LogPuiseuxSeries>
where
    F: Fn(usize, Ratio<i64>) -> Result<VarImage>,
{
    let n = s.vars().len();
    let tw = target.weights().to_vec();
    let used: Vec<bool> =
        (0..n).map(|v| s.terms().keys().any(|m| !m.exp(v).is_zero() || m.log_power(v) > 0)).collect();
    let mut monos: Vec<Option<Monomial>> = vec![None; n];
    for v in 0..n {
        if used[v] {
            monos[v] = Some(image(v, Ratio::zero())?.mono);
        }
    }
    let lead = |m: &Monomial| -> Monomial {
        let mut acc = Monomial::one(target.len());
        for (v, mono) in monos.iter().enumerate() {
            if let Some(mv) = mono {
                let e = m.exp(v);
                if !e.is_zero() {
                    acc = acc.mul(&mv.pow(e));
                }
            }
        }
        acc
    };
    let ordr = Ratio::from_integer(order);
    let planned: Vec<(Monomial, Ratio<i64>)> = s
        .terms()
        .keys()
        .map(|m| {
            let lm = lead(m);
            let d = lm.degree(&tw);
            (lm, d)
        })
        .collect();
    let Some(kmax) = planned.iter().map(|(_, d)| ordr - d).filter(|k| *k >= Ratio::zero()).max() else {
        return Ok(LogPuiseuxSeries::zero(target.clone(), order));
    };
    let mut imgs: Vec<Option<VarImage>> = vec![None; n];
    for v in 0..n {
        if used[v] {
            let img = image(v, kmax)?;
            if let Some(val) = img.h.valuation() {
                if val <= Ratio::zero() {
                    return Err(Error::NoLeadingMonomial(format!(
                        "unit part of the image of {} has terms of degree {val}",
                        s.vars().names()[v]
                    )));
                }
            }
            imgs[v] = Some(img);
        }
    }
    let mut unit_cache: HashMap<(usize, Ratio<i64>), LogPuiseuxSeries> = HashMap::new();
    let mut log_cache: HashMap<(usize, u32), LogPuiseuxSeries> = HashMap::new();
    let one = LogPuiseuxSeries::one(target.clone(), order);
    let mut out = LogPuiseuxSeries::zero(target.clone(), order);

    for ((m, c), (lm, d)) in s.terms().iter().zip(&planned) {
        let k = ordr - d;
        if k < Ratio::zero() {
            continue;
        }
        let mut phase = Ratio::zero();
        let mut rest = one.clone();
        for (v, img) in imgs.iter().enumerate().take(n) {
            let e = m.exp(v);
            let l = m.log_power(v);
            if e.is_zero() && l == 0 {
                continue;
            }
            let img = img.as_ref().unwrap();
            if !e.is_zero() {
                phase += img.phase * e;
                let u = unit_cache.entry((v, e)).or_insert_with(|| binomial_unit(&img.h, e, kmax));
                rest = rest.mul_trunc(u, k);
            }
            if l > 0 {
                let lp = log_power(&mut log_cache, v, l, img, target, kmax)?;
                rest = rest.mul_trunc(&lp, k);
            }
        }
        let coeff = c * &Coefficient::phase(phase);
        for (tm, tc) in rest.terms() {
            out.add_term(tm.mul(lm), tc * &coeff);
        }
    }
    Ok(out)
}

fn log_power(
    cache: &mut HashMap<(usize, u32), LogPuiseuxSeries>,
    v: usize,
    l: u32,
    img: &VarImage,
    target: &Arc<VarSet>,
    kmax: Ratio<i64>,
) -> Result<LogPuiseuxSeries> {
    if let Some(s) = cache.get(&(v, l)) {
        return Ok(s.clone());
    }
    let val = if l == 1 {
        let korder = kmax.floor().to_integer();
        let mut s = LogPuiseuxSeries::log1p(&img.h, kmax);
        s = s.with_order(korder);
        let lam = Coefficient::lambda().scale(&BigRational::new((*img.phase.numer()).into(), (*img.phase.denom()).into()));
        s.add_term(Monomial::one(target.len()), lam);
        for w in 0..target.len() {
            let e = img.mono.exp(w);
            if !e.is_zero() {
                let mut lm = Monomial::one(target.len());
                lm.set_log(w, 1);
                let q = BigRational::new(e.numer().to_i64().unwrap().into(), (*e.denom()).into());
                s.add_term(lm, Coefficient::from_rational(q));
            }
        }
        s
    } else {
        let prev = log_power(cache, v, l - 1, img, target, kmax)?;
        let base = log_power(cache, v, 1, img, target, kmax)?;
        prev.mul_trunc(&base, kmax)
    };
    cache.insert((v, l), val.clone());
    Ok(val)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_substitution() {
        // z ↦ w/(1 − w), so z^2 ↦ w^2 (1 + 2w + 3w^2 + …).
        let src = VarSet::new(&["z"], None);
        let tgt = VarSet::new(&["w"], None);
        let s = LogPuiseuxSeries::monomial(src, Monomial::var(1, 0, Ratio::from_integer(2)), Coefficient::one(), 6);
        let out = substitute(&s, &tgt, 5, |_, k| {
            let mut h = LogPuiseuxSeries::zero(tgt.clone(), k.floor().to_integer());
            for j in 1..=k.floor().to_integer() {
                h.add_term(Monomial::var(1, 0, Ratio::from_integer(j)), Coefficient::one());
            }
            Ok(VarImage { phase: Ratio::zero(), mono: Monomial::var(1, 0, Ratio::from_integer(1)), h })
        })
        .unwrap();
        for (j, c) in [(2, 1), (3, 2), (4, 3), (5, 4)] {
            assert_eq!(out.coefficient(&Monomial::var(1, 0, Ratio::from_integer(j))), Coefficient::from(c));
        }
        assert_eq!(out.len(), 4);
    }

    #[test]
    fn phase_branch_on_logs() {
        let src = VarSet::new(&["z"], None);
        let tgt = VarSet::new(&["w"], None);
        let mut m = Monomial::var(1, 0, Ratio::new(1, 2));
        m.set_log(0, 1);
        let s = LogPuiseuxSeries::monomial(src, m, Coefficient::one(), 4);
        let img = |q: i64| {
            let tgt = tgt.clone();
            move |_: usize, _: Ratio<i64>| {
                let mut im = VarImage::identity(&tgt, "w")?;
                im.phase = Ratio::from_integer(q);
                Ok(im)
            }
        };
        let plus = substitute(&s, &tgt, 4, img(1)).unwrap();
        let minus = substitute(&s, &tgt, 4, img(-1)).unwrap();
        let mut wl = Monomial::var(1, 0, Ratio::new(1, 2));
        let w = wl.clone();
        wl.set_log(0, 1);
        assert_eq!(plus.coefficient(&wl), Coefficient::phase(Ratio::new(1, 2)));
        assert_eq!(plus.coefficient(&w), Coefficient::phase(Ratio::new(1, 2)) * Coefficient::lambda());
        assert_eq!(minus.coefficient(&w), -(Coefficient::phase(Ratio::new(-1, 2)) * Coefficient::lambda()));
    }
}
