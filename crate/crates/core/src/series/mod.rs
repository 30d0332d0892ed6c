//! Truncated log-Puiseux series.
//!
//! A series is a finite sum of terms `c · Π v^{e_v} (log v)^{k_v}` over a
//! [`VarSet`], together with a truncation order `N`: every term of weighted
//! degree at most `N` is exact, everything above is unknown. Graded variables
//! (the `ζ`s) carry positive integer weights; an optional distinguished
//! variable (the `x` of a tree chart) has weight 0 and never affects
//! truncation.

pub mod binom;
mod exponent;
mod json;
pub mod substitute;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};

pub use exponent::{Exponent, Monomial};

/// Ordered variable names with grading weights. Weight 0 marks the
/// ungraded distinguished variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<i64>,
}

impl VarSet {
    /// Graded variables of weight 1 and an optional ungraded `x`.
    pub fn new<S: AsRef<str>>(zetas: &[S], x: Option<&str>) -> Arc<VarSet> {
        let mut names: Vec<String> = zetas.iter().map(|s| s.as_ref().to_string()).collect();
        let mut weights = vec![1; names.len()];
        if let Some(x) = x {
            names.push(x.to_string());
            weights.push(0);
        }
        Arc::new(VarSet { names, weights })
    }

    pub fn with_weights(names: Vec<String>, weights: Vec<i64>) -> Result<Arc<VarSet>> {
        if names.len() != weights.len() || weights.iter().any(|&w| w < 0) {
            return Err(Error::Invalid("weights must be nonnegative, one per variable".into()));
        }
        match weights.iter().position(|&w| w == 0) {
            Some(i) if i + 1 != weights.len() => {
                return Err(Error::Invalid("the ungraded variable must come last".into()));
            }
            _ => {}
        }
        let mut seen = std::collections::HashSet::new();
        if !names.iter().all(|n| seen.insert(n)) {
            return Err(Error::Invalid("duplicate variable names".into()));
        }
        Ok(Arc::new(VarSet { names, weights }))
    }

    /// Same variables with new weights for the graded ones.
    pub fn reweighted(&self, weights: &BTreeMap<String, i64>) -> Result<Arc<VarSet>> {
        let w = self
            .names
            .iter()
            .zip(&self.weights)
            .map(|(n, &w)| if w == 0 { 0 } else { *weights.get(n).unwrap_or(&w) })
            .collect::<Vec<_>>();
        if w.iter().zip(&self.weights).any(|(&a, &b)| b != 0 && a <= 0) {
            return Err(Error::Invalid("graded weights must be positive".into()));
        }
        VarSet::with_weights(self.names.clone(), w)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn ungraded(&self) -> Option<usize> {
        self.weights.iter().position(|&w| w == 0)
    }

    pub fn is_graded(&self, i: usize) -> bool {
        self.weights[i] != 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogPuiseuxSeries {
    vars: Arc<VarSet>,
    order: i64,
    terms: BTreeMap<Monomial, Coefficient>,
}

fn floor(q: Ratio<i64>) -> i64 {
    q.floor().to_integer()
}

impl LogPuiseuxSeries {
    pub fn zero(vars: Arc<VarSet>, order: i64) -> Self {
        LogPuiseuxSeries { vars, order, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<VarSet>, c: Coefficient, order: i64) -> Self {
        let n = vars.len();
        Self::monomial(vars, Monomial::one(n), c, order)
    }

    pub fn one(vars: Arc<VarSet>, order: i64) -> Self {
        Self::constant(vars, Coefficient::one(), order)
    }

    /// A single term, dropped if its degree exceeds `order`.
    pub fn monomial(vars: Arc<VarSet>, m: Monomial, c: Coefficient, order: i64) -> Self {
        let mut s = Self::zero(vars, order);
        s.add_term(m, c);
        s
    }

    /// The variable `name` to the first power.
    pub fn var(vars: Arc<VarSet>, name: &str, order: i64) -> Result<Self> {
        let i = vars.index(name)?;
        let m = Monomial::var(vars.len(), i, Ratio::one());
        Ok(Self::monomial(vars, m, Coefficient::one(), order))
    }

    /// `log(name)`.
    pub fn log_var(vars: Arc<VarSet>, name: &str, order: i64) -> Result<Self> {
        let i = vars.index(name)?;
        let mut m = Monomial::one(vars.len());
        m.set_log(i, 1);
        Ok(Self::monomial(vars, m, Coefficient::one(), order))
    }

    pub fn from_terms(
        vars: Arc<VarSet>,
        order: i64,
        terms: impl IntoIterator<Item = (Monomial, Coefficient)>,
    ) -> Result<Self> {
        let mut s = Self::zero(vars, order);
        for (m, c) in terms {
            if m.len() != s.vars.len() {
                return Err(Error::VariableMismatch);
            }
            s.add_term(m, c);
        }
        Ok(s)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coefficient> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_of(&self, m: &Monomial) -> Ratio<i64> {
        m.degree(self.vars.weights())
    }

    /// Adds `c·m`, ignoring terms beyond the truncation order.
    pub fn add_term(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() || self.degree_of(&m) > Ratio::from_integer(self.order) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Lowest weighted degree among stored terms.
    pub fn valuation(&self) -> Option<Ratio<i64>> {
        self.terms.keys().map(|m| self.degree_of(m)).min()
    }

    /// Drops terms above `n` and lowers the order to `n` (never raises it).
    pub fn truncate(&self, n: i64) -> Self {
        let n = n.min(self.order);
        let lim = Ratio::from_integer(n);
        let terms = self.terms.iter().filter(|(m, _)| self.degree_of(m) <= lim).map(|(m, c)| (m.clone(), c.clone())).collect();
        LogPuiseuxSeries { vars: self.vars.clone(), order: n, terms }
    }

    /// Equality of the parts known to both series.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.order.min(other.order);
        self.vars == other.vars && self.truncate(n).terms == other.truncate(n).terms
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.truncate(self.order.min(other.order));
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Coefficient::from(-1))
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.order);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect();
        out
    }

    /// Multiplies by a monomial; the order shifts by its degree.
    pub fn shift(&self, m: &Monomial) -> Self {
        let d = self.degree_of(m);
        let order = floor(Ratio::from_integer(self.order) + d);
        let terms = self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect();
        LogPuiseuxSeries { vars: self.vars.clone(), order, terms }
    }

    /// Product keeping only terms of degree at most `k`; exact there when
    /// both inputs are.
    pub fn mul_trunc(&self, other: &Self, k: Ratio<i64>) -> Self {
        let w = self.vars.weights();
        let mut b: Vec<(Ratio<i64>, &Monomial, &Coefficient)> =
            other.terms.iter().map(|(m, c)| (m.degree(w), m, c)).collect();
        b.sort_by_key(|x| x.0);
        let mut acc: BTreeMap<Monomial, Coefficient> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.degree(w);
            for (db, mb, cb) in &b {
                if da + db > k {
                    break;
                }
                let c = ca * *cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => *e.get_mut() += &c,
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LogPuiseuxSeries { vars: self.vars.clone(), order: floor(k).min(i64::MAX / 4), terms: acc }
    }

    /// Product with order `min(Na, Nb, Na + v(b), Nb + v(a))`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let (na, nb) = (Ratio::from_integer(self.order), Ratio::from_integer(other.order));
        let mut n = na.min(nb);
        if let Some(vb) = other.valuation() {
            n = n.min(na + vb);
        }
        if let Some(va) = self.valuation() {
            n = n.min(nb + va);
        }
        let mut out = self.mul_trunc(other, Ratio::from_integer(floor(n)));
        out.order = floor(n);
        Ok(out)
    }

    pub fn pow_int(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.vars.clone(), self.order);
        let mut sq = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Splits `self = c · M · (1 + h)` with `h` of strictly positive degree.
    pub fn factor_leading(&self) -> Result<(Coefficient, Monomial, Self)> {
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let mut lead = self.terms.iter().filter(|(m, _)| self.degree_of(m) == v);
        let (m0, c0) = lead.next().unwrap();
        if lead.next().is_some() {
            return Err(Error::NoLeadingMonomial(format!("several terms of degree {v}")));
        }
        let cinv = c0.inv()?;
        let mut h = Self::zero(self.vars.clone(), floor(Ratio::from_integer(self.order) - v));
        for (m, c) in &self.terms {
            if m == m0 {
                continue;
            }
            let q = m.div(m0).ok_or_else(|| Error::NoLeadingMonomial("log powers do not divide".into()))?;
            h.add_term(q, c * &cinv);
        }
        Ok((c0.clone(), m0.clone(), h))
    }

    /// Principal power `self^k`. Non-integer and negative `k` need a leading
    /// term `c·M` with `M` free of logs and `c^k` inside the coefficient ring.
    pub fn pow(&self, k: Ratio<i64>) -> Result<Self> {
        if k.is_integer() && !k.is_negative() {
            return self.pow_int(k.to_integer() as u32);
        }
        let (c, m, h) = self.factor_leading()?;
        if m.has_logs() {
            return Err(Error::NoLeadingMonomial("leading monomial carries logarithms".into()));
        }
        let dm = self.degree_of(&m);
        let rel = Ratio::from_integer(self.order) - dm;
        let unit = binomial_unit(&h, k, rel);
        let lead_c = c.pow_ratio(k)?;
        let mk = m.pow(k);
        let order = floor(Ratio::from_integer(self.order) + (k - 1) * dm);
        let mut out = unit.shift(&mk).scale(&lead_c);
        out.order = order;
        Ok(out.truncate(order))
    }

    pub fn inv(&self) -> Result<Self> {
        self.pow(Ratio::from_integer(-1))
    }

    /// `log(1 + h)` for `h` of positive degree, to relative order `k`.
    pub fn log1p(h: &Self, k: Ratio<i64>) -> Self {
        let mut out = Self::zero(h.vars.clone(), floor(k));
        let Some(v) = h.valuation() else { return out };
        debug_assert!(v > Ratio::zero());
        let mut p = h.truncate(floor(k));
        let mut n = 1i64;
        while Ratio::from_integer(n) * v <= k {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            for (m, c) in &p.terms {
                out.add_term(m.clone(), c.scale(&BigRational::new(sign.into(), n.into())));
            }
            n += 1;
            p = p.mul_trunc(h, k);
        }
        out
    }

    /// `d/dv`.
    pub fn differentiate(&self, var: &str) -> Result<Self> {
        let i = self.vars.index(var)?;
        let order = self.order - self.vars.weights()[i];
        let mut out = Self::zero(self.vars.clone(), order);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            let l = m.log_power(i);
            let mut base = m.clone();
            base.set_exp(i, e - 1);
            if !e.is_zero() {
                let q = BigRational::new((*e.numer()).into(), (*e.denom()).into());
                out.add_term(base.clone(), c.scale(&q));
            }
            if l > 0 {
                let mut lm = base;
                lm.set_log(i, l - 1);
                out.add_term(lm, c.scale(&BigRational::from_integer(l.into())));
            }
        }
        Ok(out)
    }

    /// Euler operator `v d/dv`; preserves the order.
    pub fn theta(&self, var: &str) -> Result<Self> {
        let i = self.vars.index(var)?;
        let d = self.differentiate(var)?;
        let mut out = d.shift(&Monomial::var(self.vars.len(), i, Ratio::one()));
        out.order = self.order;
        Ok(out)
    }

    /// Evaluates with principal logarithms (`Arg ∈ (−π, π]`).
    pub fn evaluate(&self, point: &[Complex64], require_cut: bool) -> Result<Complex64> {
        if point.len() != self.vars.len() {
            return Err(Error::VariableMismatch);
        }
        let mut logs = Vec::with_capacity(point.len());
        for (i, &z) in point.iter().enumerate() {
            if require_cut && z.im == 0.0 && z.re <= 0.0 {
                return Err(Error::OnBranchCut(self.vars.names()[i].clone()));
            }
            logs.push(z.ln());
        }
        self.evaluate_with_logs(point, &logs)
    }

    /// Evaluates using caller-supplied logarithms for every variable, so
    /// powers follow the same branch: `v^e = exp(e · log v)`.
    pub fn evaluate_with_logs(&self, point: &[Complex64], logs: &[Complex64]) -> Result<Complex64> {
        let n = self.vars.len();
        if point.len() != n || logs.len() != n {
            return Err(Error::VariableMismatch);
        }
        let mut total = Complex64::zero();
        for (m, c) in &self.terms {
            let mut val = c.numeric_value();
            for i in 0..n {
                let e = m.exp(i);
                let l = m.log_power(i);
                if point[i] == Complex64::zero() {
                    if e.is_negative() || l > 0 {
                        return Err(Error::DivisionByZero);
                    }
                    if e.is_positive() {
                        val = Complex64::zero();
                    }
                    continue;
                }
                if !e.is_zero() {
                    let ef = e.to_f64().unwrap();
                    val *= if e.is_integer() { point[i].powi(e.to_integer() as i32) } else { (logs[i] * ef).exp() };
                }
                if l > 0 {
                    val *= logs[i].powi(l as i32);
                }
            }
            total += val;
        }
        Ok(total)
    }

    /// Evaluates at named values; unnamed variables are an error.
    pub fn evaluate_named(&self, point: &BTreeMap<String, Complex64>, require_cut: bool) -> Result<Complex64> {
        let pt = self
            .vars
            .names()
            .iter()
            .map(|n| point.get(n).copied().ok_or_else(|| Error::UnknownVariable(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.evaluate(&pt, require_cut)
    }

    /// Re-expresses the series over a superset of its variables (by name).
    pub fn embed(&self, vars: Arc<VarSet>) -> Result<Self> {
        let map = self.vars.names().iter().map(|n| vars.index(n)).collect::<Result<Vec<_>>>()?;
        for (i, &j) in map.iter().enumerate() {
            if self.vars.weights()[i] != vars.weights()[j] {
                return Err(Error::VariableMismatch);
            }
        }
        let mut out = Self::zero(vars.clone(), self.order);
        for (m, c) in &self.terms {
            let mut k = Monomial::one(vars.len());
            for (i, &j) in map.iter().enumerate() {
                k.exps[j] = m.exps[i];
                k.logs[j] = m.logs[i];
            }
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    /// Same terms under different grading weights, truncated to `order`.
    pub fn regrade(&self, vars: Arc<VarSet>, order: i64) -> Result<Self> {
        if vars.names() != self.vars.names() {
            return Err(Error::VariableMismatch);
        }
        let mut out = Self::zero(vars, order);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Sets the order without touching terms; terms above it are dropped.
    pub fn with_order(&self, order: i64) -> Self {
        let mut out = Self::zero(self.vars.clone(), order);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

/// `(1 + h)^k` to relative order `rel`, by the binomial series.
pub fn binomial_unit(h: &LogPuiseuxSeries, k: Ratio<i64>, rel: Ratio<i64>) -> LogPuiseuxSeries {
    let vars = h.vars.clone();
    let order = floor(rel);
    let mut out = LogPuiseuxSeries::one(vars, order);
    let Some(v) = h.valuation() else { return out };
    let kq = BigRational::new((*k.numer()).into(), (*k.denom()).into());
    let mut p = h.truncate(order);
    let mut n: u32 = 1;
    while Ratio::from_integer(n as i64) * v <= rel {
        let b = binom::binomial(&kq, n);
        if b.is_zero() {
            break;
        }
        let bc = Coefficient::from_rational(b);
        for (m, c) in &p.terms {
            out.add_term(m.clone(), c * &bc);
        }
        n += 1;
        p = p.mul_trunc(h, rel);
    }
    out
}

fn fmt_exp(e: Ratio<i64>) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("({e})")
    }
}

impl fmt::Display for LogPuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for (i, name) in self.vars.names().iter().enumerate() {
                let e = m.exp(i);
                if !e.is_zero() {
                    factors.push(if e.is_one() { name.clone() } else { format!("{name}^{}", fmt_exp(e)) });
                }
                let l = m.log_power(i);
                if l == 1 {
                    factors.push(format!("log({name})"));
                } else if l > 1 {
                    factors.push(format!("log({name})^{l}"));
                }
            }
            let neg = c.to_rational().is_some_and(|q| q.is_negative()) && !factors.is_empty();
            let c = &if neg { -c } else { c.clone() };
            let cs = c.to_string();
            let compound = cs.contains(' ');
            let term = if factors.is_empty() {
                if compound {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if c.is_one() {
                factors.join("·")
            } else if *c == Coefficient::from(-1) {
                format!("-{}", factors.join("·"))
            } else if compound || cs.contains('/') {
                format!("({cs})·{}", factors.join("·"))
            } else {
                format!("{cs}·{}", factors.join("·"))
            };
            parts.push(if neg { format!("-{term}") } else { term });
        }
        let mut s = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k == 0 {
                s.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        if self.order >= i64::MAX / 8 || self.order >= 1 << 40 {
            write!(f, "{s}")
        } else {
            write!(f, "{s} + O(deg > {})", self.order)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zvars() -> Arc<VarSet> {
        VarSet::new(&["z"], None)
    }

    fn poly(coeffs: &[i64], order: i64) -> LogPuiseuxSeries {
        let vars = zvars();
        let mut s = LogPuiseuxSeries::zero(vars.clone(), order);
        for (k, &c) in coeffs.iter().enumerate() {
            s.add_term(Monomial::var(1, 0, Ratio::from_integer(k as i64)), Coefficient::from(c));
        }
        s
    }

    #[test]
    fn product_of_binomials() {
        let p = poly(&[1, 1], 5).mul(&poly(&[1, -1], 5)).unwrap();
        assert_eq!(p, poly(&[1, 0, -1], 5));
    }

    #[test]
    fn geometric_inverse() {
        let s = poly(&[1, -1], 3).pow(Ratio::from_integer(-1)).unwrap();
        assert_eq!(s, poly(&[1, 1, 1, 1], 3));
    }

    #[test]
    fn half_power_squares_back() {
        let s = poly(&[4, 1], 8);
        let r = s.pow(Ratio::new(1, 2)).unwrap();
        assert_eq!(r.mul(&r).unwrap(), s);
    }

    #[test]
    fn fractional_leading_monomial() {
        let vars = zvars();
        let z = LogPuiseuxSeries::var(vars.clone(), "z", 6).unwrap();
        let s = z.mul(&poly(&[1, 1], 6)).unwrap();
        let r = s.pow(Ratio::new(-1, 2)).unwrap();
        assert_eq!(r.order(), 4);
        let lead = Monomial::var(1, 0, Ratio::new(-1, 2));
        assert!(r.coefficient(&lead).is_one());
        assert!(poly(&[0, 1, 1], 4).add(&poly(&[0, -1], 4)).unwrap().pow(Ratio::new(1, 2)).is_ok());
        assert!(matches!(poly(&[2, 1], 4).pow(Ratio::new(1, 2)), Err(Error::NotRepresentable(_))));
    }

    #[test]
    fn derivative_examples() {
        let vars = zvars();
        let mut m = Monomial::var(1, 0, Ratio::new(1, 2));
        m.set_log(0, 1);
        let s = LogPuiseuxSeries::monomial(vars.clone(), m, Coefficient::one(), 4);
        let d = s.differentiate("z").unwrap();
        let mut a = Monomial::var(1, 0, Ratio::new(-1, 2));
        let b = a.clone();
        a.set_log(0, 1);
        assert_eq!(d.coefficient(&a), Coefficient::from_ratio(1, 2));
        assert_eq!(d.coefficient(&b), Coefficient::one());
        assert_eq!(d.order(), 3);
        assert!(poly(&[7], 3).differentiate("z").unwrap().is_zero());
        let inv = LogPuiseuxSeries::monomial(vars, Monomial::var(1, 0, Ratio::from_integer(-1)), Coefficient::one(), 3);
        let d = inv.differentiate("z").unwrap();
        assert_eq!(d.coefficient(&Monomial::var(1, 0, Ratio::from_integer(-2))), Coefficient::from(-1));
    }

    #[test]
    fn evaluation_examples() {
        let vars = zvars();
        let sqrt = LogPuiseuxSeries::monomial(vars.clone(), Monomial::var(1, 0, Ratio::new(1, 2)), Coefficient::one(), 2);
        let v = sqrt.evaluate(&[Complex64::i()], true).unwrap();
        assert!((v - Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)).norm() < 1e-14);
        let log = LogPuiseuxSeries::log_var(vars.clone(), "z", 2).unwrap();
        assert!(log.evaluate(&[Complex64::one()], true).unwrap().norm() < 1e-15);
        assert!(matches!(log.evaluate(&[Complex64::new(-1.0, 0.0)], true), Err(Error::OnBranchCut(_))));
        let g = poly(&[1, -1], 20).inv().unwrap();
        let v = g.evaluate(&[Complex64::new(0.5, 0.0)], true).unwrap();
        assert!((v - 2.0).norm() < 1e-5);
    }

    #[test]
    fn log1p_series() {
        let h = poly(&[0, 1], 5);
        let l = LogPuiseuxSeries::log1p(&h, Ratio::from_integer(5));
        let expect = [(1, 1, 1), (2, -1, 2), (3, 1, 3), (4, -1, 4), (5, 1, 5)];
        for (k, n, d) in expect {
            assert_eq!(l.coefficient(&Monomial::var(1, 0, Ratio::from_integer(k))), Coefficient::from_ratio(n, d));
        }
    }

    #[test]
    fn negative_valuation_lowers_order() {
        let vars = zvars();
        let inv = LogPuiseuxSeries::monomial(vars, Monomial::var(1, 0, Ratio::from_integer(-2)), Coefficient::one(), 6);
        assert_eq!(inv.mul(&poly(&[1, 1], 6)).unwrap().order(), 4);
    }
}
