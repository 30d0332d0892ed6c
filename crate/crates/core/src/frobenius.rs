//! Power-series solutions of `θ^N ψ + Σ_{k<N} f_k θ^k ψ = g` at a regular
//! singular point, where `θ = ξ d/dξ` and every `f_k` is holomorphic at 0.
//!
//! Writing `f_k = Σ_t a_{k,t} ξ^t` (with `a_{N,t} = δ_{t,0}`) and
//! `P_t(l) = Σ_k a_{k,t} l^k`, the ansatz `ψ = ξ^h Σ_p c_p ξ^p` gives
//!
//! ```text
//! P_0(h + p) c_p = b_p − Σ_{l<p} P_{p−l}(h + l) c_l
//! ```
//!
//! with `g = ξ^h Σ_p b_p ξ^p`. The recursion is exact over rationals and
//! approximate over complex floats.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Coefficient fields the recursion runs over.
pub trait Scalar: Clone + Debug + PartialEq + Num + std::ops::Neg<Output = Self> {
    fn from_rational(q: &BigRational) -> Self;
    /// Zero for exact types; small relative to `scale` for floats.
    fn negligible(&self, scale: f64) -> bool;
    fn magnitude(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn negligible(&self, _: f64) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Scalar for Complex64 {
    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn negligible(&self, scale: f64) -> bool {
        self.norm() <= 1e-10 * scale.max(1.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// `θ^N + Σ_{k<N} f_k θ^k` with right-hand side `g`. `f[k][t]` is the
/// coefficient of `ξ^t` in `f_k`; `g[p]` that of `ξ^{h+p}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerOperator<T> {
    pub n: usize,
    pub f: Vec<Vec<T>>,
    pub g: Option<Vec<T>>,
}

impl<T: Scalar> EulerOperator<T> {
    pub fn new(n: usize, f: Vec<Vec<T>>, g: Option<Vec<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("operator order must be at least 1".into()));
        }
        if f.len() > n {
            return Err(Error::Invalid(format!("{} coefficients given for an operator of order {n}", f.len())));
        }
        let mut f = f;
        f.resize(n, Vec::new());
        Ok(EulerOperator { n, f, g })
    }

    /// `a_{k,t}`.
    pub fn a(&self, k: usize, t: usize) -> T {
        if k == self.n {
            return if t == 0 { T::one() } else { T::zero() };
        }
        self.f[k].get(t).cloned().unwrap_or_else(T::zero)
    }

    /// `P_t(l)`.
    pub fn p(&self, t: usize, l: &T) -> T {
        let mut acc = T::zero();
        for k in (0..=self.n).rev() {
            acc = acc * l.clone() + self.a(k, t);
        }
        acc
    }

    fn b(&self, p: usize) -> T {
        self.g.as_ref().and_then(|g| g.get(p).cloned()).unwrap_or_else(T::zero)
    }

    /// Number of known coefficients of the `f_k`.
    pub fn known_order(&self) -> usize {
        self.f.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// `ξ^h Σ_{l ≤ order} c_l ξ^l`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSeries<T> {
    pub h: BigRational,
    pub coeffs: Vec<T>,
}

impl<T: Scalar> FrobeniusSeries<T> {
    /// Terms `(exponent, log power, coefficient)`.
    pub fn terms(&self) -> Vec<(BigRational, u32, T)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(l, c)| (&self.h + BigRational::from_integer(BigInt::from(l)), 0, c.clone()))
            .collect()
    }
}

/// Runs the recursion up to `ξ^{h+order}`.
pub fn solve<T: Scalar>(op: &EulerOperator<T>, h: &BigRational, c0: T, order: usize) -> Result<FrobeniusSeries<T>> {
    let ht = T::from_rational(h);
    let at = |p: usize| ht.clone() + T::from_rational(&BigRational::from_integer(BigInt::from(p)));
    let p0 = op.p(0, &ht);
    let scale = (0..=op.n).map(|k| op.a(k, 0).magnitude()).fold(1.0, f64::max);
    let lhs0 = p0.clone() * c0.clone() - op.b(0);
    if !lhs0.negligible(scale * c0.magnitude().max(op.b(0).magnitude())) {
        return Err(Error::Invalid("P_0(h)·c_0 differs from the leading right-hand side coefficient".into()));
    }
    let mut c = Vec::with_capacity(order + 1);
    c.push(c0);
    for p in 1..=order {
        let d = op.p(0, &at(p));
        if d.negligible(scale * (p as f64 + h.abs().to_f64().unwrap_or(0.0)).powi(op.n as i32)) {
            return Err(Error::Resonance(p));
        }
        let mut rhs = op.b(p);
        for (l, cl) in c.iter().enumerate() {
            rhs = rhs - op.p(p - l, &at(l)) * cl.clone();
        }
        c.push(rhs / d);
    }
    Ok(FrobeniusSeries { h: h.clone(), coeffs: c })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    /// Lowest exponent with a nonvanishing residual term, if any.
    pub lowest: Option<String>,
    /// Residual terms are trusted up to and including this exponent.
    pub window: String,
}

impl Residual {
    pub fn passes(&self) -> bool {
        self.lowest.is_none()
    }
}

type Key = (BigRational, u32);

/// `θ(ξ^s log^j ξ) = s ξ^s log^j ξ + j ξ^s log^{j−1} ξ`.
fn theta<T: Scalar>(terms: &BTreeMap<Key, T>) -> BTreeMap<Key, T> {
    let mut out: BTreeMap<Key, T> = BTreeMap::new();
    for ((s, j), c) in terms {
        let e = out.entry((s.clone(), *j)).or_insert_with(T::zero);
        *e = e.clone() + T::from_rational(s) * c.clone();
        if *j > 0 {
            let e = out.entry((s.clone(), j - 1)).or_insert_with(T::zero);
            *e = e.clone() + T::from_rational(&BigRational::from_integer(BigInt::from(*j))) * c.clone();
        }
    }
    out
}

/// Applies the operator to `candidate` and reports the lowest exponent
/// whose coefficient fails to cancel. Only exponents up to
/// `min exponent + order` are compared, where both the candidate and the
/// `f_k` are known. `g` is taken relative to the lowest exponent.
pub fn verify_residual<T: Scalar>(
    op: &EulerOperator<T>,
    candidate: &[(BigRational, u32, T)],
    order: usize,
) -> Residual {
    let Some(h) = candidate.iter().map(|t| t.0.clone()).min() else {
        return Residual { lowest: None, window: "-inf".into() };
    };
    let window = &h + BigRational::from_integer(BigInt::from(order));
    let mut psi: BTreeMap<Key, T> = BTreeMap::new();
    for (s, j, c) in candidate {
        let e = psi.entry((s.clone(), *j)).or_insert_with(T::zero);
        *e = e.clone() + c.clone();
    }
    let mut sum: BTreeMap<Key, (T, f64)> = BTreeMap::new();
    let mut add = |k: Key, v: T| {
        if k.0 <= window {
            let m = v.magnitude();
            let e = sum.entry(k).or_insert_with(|| (T::zero(), 0.0));
            e.0 = e.0.clone() + v;
            e.1 = e.1.max(m);
        }
    };
    let mut th = psi;
    for k in 0..=op.n {
        for t in 0..=order {
            let a = op.a(k, t);
            if a == T::zero() {
                continue;
            }
            let shift = BigRational::from_integer(BigInt::from(t));
            for ((s, j), c) in &th {
                add((s + &shift, *j), a.clone() * c.clone());
            }
        }
        th = theta(&th);
    }
    for p in 0..=order {
        let b = op.b(p);
        if b != T::zero() {
            add((&h + BigRational::from_integer(BigInt::from(p)), 0), -b);
        }
    }
    let lowest = sum.iter().find(|(_, (v, scale))| !v.negligible(*scale)).map(|((s, j), _)| {
        if *j == 0 {
            s.to_string()
        } else {
            format!("{s} (log^{j})")
        }
    });
    Residual { lowest, window: window.to_string() }
}

/// `R / (1 + N/B)`: solutions converge absolutely for `|ξ|` below this
/// when `C` bounds every `|f_k|` and `|g|` on `|ξ| = R` and
/// `|P_0(l)| ≥ B·C·l^{N−1}` for all `l ≥ M`.
pub fn radius_bound(n: usize, r: &BigRational, b: &BigRational) -> Result<BigRational> {
    if !r.is_positive() {
        return Err(Error::Invalid(format!("radius must be positive, got {r}")));
    }
    if !b.is_positive() {
        return Err(Error::Invalid(format!("B must be positive, got {b}")));
    }
    Ok(r / (BigRational::one() + BigRational::from_integer(BigInt::from(n)) / b))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusEstimate {
    pub bound: f64,
    pub b: f64,
    pub m: usize,
    pub c: f64,
    /// `C` comes from truncated coefficient sums rather than a proof.
    pub heuristic: bool,
}

/// Chooses the best `B` from a grid of powers of two for which some
/// `M ≤ m_cap` satisfies the indicial condition, with `C` estimated as
/// `max_k Σ_t |a_{k,t}| R^t` over the known coefficients.
pub fn estimate_radius<T: Scalar>(op: &EulerOperator<T>, h: &BigRational, r: f64, m_cap: usize) -> Result<RadiusEstimate> {
    if r <= 0.0 {
        return Err(Error::Invalid(format!("radius must be positive, got {r}")));
    }
    let sum = |v: &[T]| v.iter().enumerate().map(|(t, a)| a.magnitude() * r.powi(t as i32)).sum::<f64>();
    let mut c = op.f.iter().map(|f| sum(f)).fold(0.0, f64::max);
    if let Some(g) = &op.g {
        c = c.max(sum(g));
    }
    let c = c.max(f64::MIN_POSITIVE);
    let hf = h.to_f64().unwrap_or(0.0);
    let a0: f64 = (0..op.n).map(|k| op.a(k, 0).magnitude()).sum();
    let p0 = |l: f64| op.p(0, &T::from_rational(&BigRational::from_float(l).expect("finite"))).magnitude();
    let mut best: Option<RadiusEstimate> = None;
    for e in -6..=20 {
        let b = 2f64.powi(e);
        let need = |l: usize| {
            let x = hf + l as f64;
            p0(x) >= b * c * x.abs().powi(op.n as i32 - 1)
        };
        // Beyond this point |P_0(h+l)| ≥ (|h+l| − Σ|a_{k,0}|)|h+l|^{N−1} does it.
        let tail = (b * c + a0 + hf.abs() + 1.0).ceil();
        if tail > m_cap as f64 * 4.0 {
            break;
        }
        let tail = tail as usize;
        let mut m = tail.max(1);
        while m > 1 && need(m - 1) {
            m -= 1;
        }
        if m > m_cap {
            continue;
        }
        let bound = r / (1.0 + op.n as f64 / b);
        if best.as_ref().is_none_or(|x| bound > x.bound) {
            best = Some(RadiusEstimate { bound, b, m, c, heuristic: true });
        }
    }
    best.ok_or_else(|| Error::Invalid("no B on the grid admits M within the cap".into()))
}

/// An operator read from JSON, over the rationals when every coefficient
/// is an integer or a rational string and over complex floats otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyOperator {
    Exact(EulerOperator<BigRational>),
    Numeric(EulerOperator<Complex64>),
}

enum Parsed {
    Q(BigRational),
    C(Complex64),
}

fn number(v: &Value) -> Result<Parsed> {
    match v {
        Value::String(s) => {
            s.trim().parse::<BigRational>().map(Parsed::Q).map_err(|_| Error::Json(format!("not a rational: {s:?}")))
        }
        Value::Number(n) if n.is_i64() => Ok(Parsed::Q(BigRational::from_integer(BigInt::from(n.as_i64().unwrap())))),
        Value::Number(n) => Ok(Parsed::C(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0))),
        Value::Array(a) if a.len() == 2 => {
            let f = |x: &Value| x.as_f64().ok_or_else(|| Error::Json(format!("expected a number, got {x}")));
            Ok(Parsed::C(Complex64::new(f(&a[0])?, f(&a[1])?)))
        }
        _ => Err(Error::Json(format!("expected a coefficient, got {v}"))),
    }
}

fn series(v: &Value) -> Result<Vec<Parsed>> {
    v.as_array().ok_or_else(|| Error::Json(format!("expected a coefficient array, got {v}")))?.iter().map(number).collect()
}

impl AnyOperator {
    /// `{"N": 1, "f": [["0", "-1", "-1"]], "g": null}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v.get("N").and_then(Value::as_u64).ok_or_else(|| Error::Json("missing integer N".into()))? as usize;
        let f = v
            .get("f")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing coefficient list f".into()))?
            .iter()
            .map(series)
            .collect::<Result<Vec<_>>>()?;
        let g = match v.get("g") {
            None | Some(Value::Null) => None,
            Some(x) => Some(series(x)?),
        };
        let all = f.iter().flatten().chain(g.iter().flatten());
        let exact = all.clone().all(|x| matches!(x, Parsed::Q(_)));
        if exact {
            let q = |s: Vec<Parsed>| s.into_iter().map(|x| if let Parsed::Q(q) = x { q } else { unreachable!() }).collect();
            Ok(AnyOperator::Exact(EulerOperator::new(n, f.into_iter().map(q).collect(), g.map(q))?))
        } else {
            let c = |s: Vec<Parsed>| {
                s.into_iter()
                    .map(|x| match x {
                        Parsed::Q(q) => Complex64::from_rational(&q),
                        Parsed::C(c) => c,
                    })
                    .collect()
            };
            Ok(AnyOperator::Numeric(EulerOperator::new(n, f.into_iter().map(c).collect(), g.map(c))?))
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn trivial_power() {
        let h = q(3, 2);
        let op = EulerOperator::new(1, vec![vec![-h.clone()]], None).unwrap();
        let s = solve(&op, &h, q(1, 1), 5).unwrap();
        assert_eq!(s.coeffs, [q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn indicial_polynomial() {
        let op = EulerOperator::new(2, vec![vec![q(2, 1)], vec![q(-3, 1)]], None).unwrap();
        assert_eq!(op.p(0, &q(1, 1)), q(0, 1));
        assert_eq!(op.p(0, &q(2, 1)), q(0, 1));
        assert_eq!(op.p(0, &q(3, 1)), q(2, 1));
        assert_eq!(op.p(1, &q(3, 1)), q(0, 1));
    }

    #[test]
    fn log_solution_of_theta_squared() {
        let op: EulerOperator<BigRational> = EulerOperator::new(2, vec![], None).unwrap();
        assert!(verify_residual(&op, &[(q(0, 1), 1, q(1, 1))], 10).passes());
        let r = verify_residual(&op, &[(q(0, 1), 2, q(1, 1))], 10);
        assert_eq!(r.lowest.as_deref(), Some("0"));
    }

    #[test]
    fn complex_scalars() {
        let op = EulerOperator::new(1, vec![vec![Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)]], None).unwrap();
        let s = solve(&op, &q(0, 1), Complex64::new(2.0, 1.0), 6).unwrap();
        // θψ = ξψ: ψ = c_0 e^ξ.
        let mut fact = 1.0;
        for (l, c) in s.coeffs.iter().enumerate() {
            if l > 0 {
                fact *= l as f64;
            }
            assert!((c - Complex64::new(2.0, 1.0) / fact).norm() < 1e-14);
        }
        assert!(verify_residual(&op, &s.terms(), 6).passes());
    }
}
