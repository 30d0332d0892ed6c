//! Exact coefficients: polynomials in a formal symbol `Λ` (standing for
//! `iπ`) with coefficients in a cyclotomic field `ℚ(ζ_m)`.
//!
//! `m` grows lazily: combining elements over `ℚ(ζ_a)` and `ℚ(ζ_b)` lifts
//! both to `ℚ(ζ_lcm(a,b))`. Results whose cyclotomic parts are all rational
//! are shrunk back to `m = 1`.

pub mod cyclotomic;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Coefficient {
    m: u32,
    /// `lam[k]` holds the `ℚ(ζ_m)` part multiplying `Λ^k`, each of length
    /// `φ(m)`. No trailing all-zero levels; zero is the empty vector.
    lam: Vec<Vec<BigRational>>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient { m: 1, lam: Vec::new() }
    }

    pub fn one() -> Self {
        Coefficient::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        Coefficient { m: 1, lam: vec![vec![q]] }.normalized()
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Coefficient::from_rational(BigRational::new(n.into(), d.into()))
    }

    /// The symbol `Λ = iπ`.
    pub fn lambda() -> Self {
        Coefficient { m: 1, lam: vec![vec![BigRational::zero()], vec![BigRational::one()]] }
    }

    /// `e^{iπq}`.
    pub fn phase(q: Ratio<i64>) -> Self {
        let d = *q.denom();
        let m = (2 * d) as u32;
        let k = q.numer().rem_euclid(2 * d) as u64;
        Coefficient { m, lam: vec![cyclotomic::root_power(k, m)] }.normalized()
    }

    /// `e^{iπq}` for a rational `q` with big numerator/denominator.
    pub fn phase_big(q: &BigRational) -> Result<Self> {
        let n = q.numer().to_i64();
        let d = q.denom().to_i64();
        match (n, d) {
            (Some(n), Some(d)) if d < 1 << 20 => Ok(Coefficient::phase(Ratio::new(n.rem_euclid(2 * d), d))),
            _ => Err(Error::NotRepresentable(format!("phase e^(iπ·{q})"))),
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.lam.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.m == 1 && self.lam.len() == 1 && self.lam[0][0].is_one()
    }

    /// Highest power of `Λ` present (0 for zero).
    pub fn lambda_degree(&self) -> usize {
        self.lam.len().saturating_sub(1)
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        match (self.m, self.lam.len()) {
            (_, 0) => Some(BigRational::zero()),
            (1, 1) => Some(self.lam[0][0].clone()),
            _ => None,
        }
    }

    fn normalized(mut self) -> Self {
        while self.lam.last().is_some_and(|v| v.iter().all(Zero::is_zero)) {
            self.lam.pop();
        }
        if self.lam.is_empty() {
            self.m = 1;
        } else if self.m > 1 && self.lam.iter().all(|v| v[1..].iter().all(Zero::is_zero)) {
            self.m = 1;
            for v in &mut self.lam {
                v.truncate(1);
            }
        }
        self
    }

    fn lifted(&self, n: u32) -> Vec<Vec<BigRational>> {
        self.lam.iter().map(|v| cyclotomic::lift(v, self.m, n)).collect()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Coefficient::zero();
        }
        Coefficient { m: self.m, lam: self.lam.iter().map(|v| v.iter().map(|c| c * q).collect()).collect() }
    }

    /// Multiplicative inverse; requires `Λ`-degree 0.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.lambda_degree() > 0 {
            return Err(Error::NotRepresentable(format!("inverse of {self}, which involves iπ")));
        }
        if self.m == 1 {
            return Ok(Coefficient::from_rational(self.lam[0][0].recip()));
        }
        let inv = cyclotomic::inverse(&self.lam[0], self.m).ok_or(Error::DivisionByZero)?;
        Ok(Coefficient { m: self.m, lam: vec![inv] }.normalized())
    }

    pub fn pow_i64(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Coefficient::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// If the value is a root of unity `e^{iπq}`, returns `q ∈ (−1, 1]`.
    pub fn as_phase(&self) -> Option<Ratio<i64>> {
        if self.lam.len() != 1 {
            return None;
        }
        let z = self.numeric_value();
        if (z.norm() - 1.0).abs() > 1e-9 {
            return None;
        }
        let l = self.m.lcm(&2) as i64;
        let j = (z.arg() * l as f64 / (2.0 * std::f64::consts::PI)).round() as i64;
        let q = principal(Ratio::new(2 * j, l));
        (Coefficient::phase(q) == *self).then_some(q)
    }

    /// Principal power `exp(k · Log c)` with `Arg ∈ (−π, π]`, when the result
    /// stays inside the coefficient ring.
    pub fn pow_ratio(&self, k: Ratio<i64>) -> Result<Self> {
        if k.is_integer() {
            return self.pow_i64(*k.numer());
        }
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let fail = || Error::NotRepresentable(format!("({self})^({k})"));
        if self.lambda_degree() > 0 {
            return Err(fail());
        }
        let (rho, q) = if let Some(r) = self.to_rational() {
            if r.is_negative() {
                (-r, Ratio::from_integer(1))
            } else {
                (r, Ratio::zero())
            }
        } else if let Some(q) = self.as_phase() {
            (BigRational::one(), q)
        } else {
            let nz: Vec<usize> = (0..self.lam[0].len()).filter(|&j| !self.lam[0][j].is_zero()).collect();
            if nz.len() != 1 {
                return Err(fail());
            }
            let a = &self.lam[0][nz[0]];
            let mut q = Ratio::new(2 * nz[0] as i64, self.m as i64);
            if a.is_negative() {
                q += 1;
            }
            (a.abs(), principal(q))
        };
        let root = rational_root(&rho, *k.denom() as u32).ok_or_else(fail)?;
        let modulus = Coefficient::from_rational(root).pow_i64(*k.numer())?;
        Ok(&modulus * &Coefficient::phase(q * k))
    }

    /// Floating value under `ζ_m ↦ e^{2πi/m}`, `Λ ↦ iπ`.
    pub fn numeric_value(&self) -> Complex64 {
        let mut total = Complex64::zero();
        let lam = Complex64::new(0.0, std::f64::consts::PI);
        let mut lp = Complex64::one();
        for level in &self.lam {
            let mut s = Complex64::zero();
            for (j, c) in level.iter().enumerate() {
                if !c.is_zero() {
                    let ang = 2.0 * std::f64::consts::PI * j as f64 / self.m as f64;
                    s += Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), ang);
                }
            }
            total += s * lp;
            lp *= lam;
        }
        total
    }

    /// Rational parts of the `Λ^k` level, in the power basis of `ℚ(ζ_m)`.
    pub fn level(&self, k: usize) -> Option<&[BigRational]> {
        self.lam.get(k).map(Vec::as_slice)
    }

    /// Builds a coefficient from raw levels; used by tests and JSON.
    pub fn from_levels(m: u32, levels: Vec<Vec<BigRational>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("cyclotomic order must be positive".into()));
        }
        let d = cyclotomic::phi(m);
        let mut lam = Vec::with_capacity(levels.len());
        for v in levels {
            if v.len() > d {
                lam.push(cyclotomic::reduce(v, m));
            } else {
                let mut v = v;
                v.resize(d, BigRational::zero());
                lam.push(v);
            }
        }
        Ok(Coefficient { m, lam }.normalized())
    }
}

fn principal(q: Ratio<i64>) -> Ratio<i64> {
    let two = Ratio::from_integer(2);
    let mut q = q % two;
    if q <= Ratio::from_integer(-1) {
        q += two;
    } else if q > Ratio::from_integer(1) {
        q -= two;
    }
    q
}

fn rational_root(q: &BigRational, n: u32) -> Option<BigRational> {
    let exact = |x: &BigInt| {
        let r = x.nth_root(n);
        (r.pow(n) == *x).then_some(r)
    };
    Some(BigRational::new(exact(q.numer())?, exact(q.denom())?))
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        if self.lam.len() != other.lam.len() {
            return false;
        }
        if self.m == other.m {
            return self.lam == other.lam;
        }
        let n = self.m.lcm(&other.m);
        self.lifted(n) == other.lifted(n)
    }
}

impl Eq for Coefficient {}

impl Default for Coefficient {
    fn default() -> Self {
        Coefficient::zero()
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_rational(rat(n))
    }
}

impl From<BigRational> for Coefficient {
    fn from(q: BigRational) -> Self {
        Coefficient::from_rational(q)
    }
}

fn combine(a: &Coefficient, b: &Coefficient, sign: bool) -> Coefficient {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if sign { b.clone() } else { -b };
    }
    let n = a.m.lcm(&b.m);
    let (mut x, y) = if a.m == n && b.m == n { (a.lam.clone(), b.lam.clone()) } else { (a.lifted(n), b.lifted(n)) };
    let d = cyclotomic::phi(n);
    while x.len() < y.len() {
        x.push(vec![BigRational::zero(); d]);
    }
    for (xv, yv) in x.iter_mut().zip(y) {
        for (c, e) in xv.iter_mut().zip(yv) {
            if sign {
                *c += e;
            } else {
                *c -= e;
            }
        }
    }
    Coefficient { m: n, lam: x }.normalized()
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        combine(self, rhs, true)
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        combine(&self, &rhs, true)
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        if self.m == rhs.m && self.lam.len() >= rhs.lam.len() {
            for (xv, yv) in self.lam.iter_mut().zip(&rhs.lam) {
                for (c, e) in xv.iter_mut().zip(yv) {
                    *c += e;
                }
            }
            let taken = std::mem::take(self);
            *self = taken.normalized();
        } else {
            *self = combine(self, rhs, true);
        }
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        combine(self, rhs, false)
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        combine(&self, &rhs, false)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { m: self.m, lam: self.lam.iter().map(|v| v.iter().map(|c| -c).collect()).collect() }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if self.is_zero() || rhs.is_zero() {
            return Coefficient::zero();
        }
        if self.m == 1 && rhs.m == 1 && self.lam.len() == 1 && rhs.lam.len() == 1 {
            return Coefficient { m: 1, lam: vec![vec![&self.lam[0][0] * &rhs.lam[0][0]]] };
        }
        let n = self.m.lcm(&rhs.m);
        let (x, y) = (self.lifted(n), rhs.lifted(n));
        let d = cyclotomic::phi(n);
        let mut out = vec![vec![BigRational::zero(); d]; x.len() + y.len() - 1];
        for (i, xv) in x.iter().enumerate() {
            for (j, yv) in y.iter().enumerate() {
                let p = cyclotomic::mul(xv, yv, n);
                for (c, e) in out[i + j].iter_mut().zip(p) {
                    *c += e;
                }
            }
        }
        Coefficient { m: n, lam: out }.normalized()
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, level) in self.lam.iter().enumerate() {
            for (j, c) in level.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut sym = String::new();
                if j > 0 {
                    sym.push_str(&format!("ζ{}", self.m));
                    if j > 1 {
                        sym.push_str(&format!("^{j}"));
                    }
                }
                if k > 0 {
                    if !sym.is_empty() {
                        sym.push('·');
                    }
                    sym.push('Λ');
                    if k > 1 {
                        sym.push_str(&format!("^{k}"));
                    }
                }
                let term = if sym.is_empty() {
                    fmt_rat(c)
                } else if c.is_one() {
                    sym
                } else if *c == -BigRational::one() {
                    format!("-{sym}")
                } else if c.is_integer() {
                    format!("{}{sym}", fmt_rat(c))
                } else {
                    format!("({}){sym}", fmt_rat(c))
                };
                parts.push(term);
            }
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        f.write_str(&s)
    }
}

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Json(format!("non-integer {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Json(format!("bad integer {s:?}"))),
        _ => Err(Error::Json(format!("expected integer, got {v}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct CoefficientJson {
    lambda_deg: usize,
    coeffs: Vec<[Value; 2]>,
    m: u32,
}

impl Serialize for Coefficient {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = cyclotomic::phi(self.m);
        let coeffs = if self.is_zero() {
            vec![[Value::from(0), Value::from(1)]]
        } else {
            self.lam.iter().flatten().map(|c| [int_to_json(c.numer()), int_to_json(c.denom())]).collect()
        };
        debug_assert!(self.is_zero() || coeffs.len() == d * self.lam.len());
        CoefficientJson { lambda_deg: self.lambda_degree(), coeffs, m: self.m }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CoefficientJson::deserialize(d)?;
        Coefficient::from_json_parts(j).map_err(D::Error::custom)
    }
}

impl Coefficient {
    fn from_json_parts(j: CoefficientJson) -> Result<Self> {
        if j.m == 0 {
            return Err(Error::Json("m must be positive".into()));
        }
        let d = cyclotomic::phi(j.m);
        let levels = j.lambda_deg + 1;
        let mut vals = Vec::with_capacity(j.coeffs.len());
        for [n, den] in &j.coeffs {
            let den = int_from_json(den)?;
            if den.is_zero() {
                return Err(Error::Json("zero denominator".into()));
            }
            vals.push(BigRational::new(int_from_json(n)?, den));
        }
        if vals.iter().all(Zero::is_zero) {
            return Ok(Coefficient::zero());
        }
        if vals.len() != d * levels {
            return Err(Error::Json(format!("expected {} coefficients for m={} and Λ-degree {}", d * levels, j.m, j.lambda_deg)));
        }
        let lam = vals.chunks(d).map(<[BigRational]>::to_vec).collect();
        Ok(Coefficient { m: j.m, lam }.normalized())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn phases() {
        assert!(close(Coefficient::phase(q(1, 2)).numeric_value(), Complex64::i()));
        assert_eq!(Coefficient::phase(q(1, 1)), Coefficient::from(-1));
        assert_eq!(Coefficient::phase(q(2, 1)), Coefficient::one());
        let s = Coefficient::one() + Coefficient::phase(q(2, 3)) + Coefficient::phase(q(4, 3));
        assert!(s.is_zero());
        assert_eq!(Coefficient::phase(q(1, 3)) * Coefficient::phase(q(1, 2)), Coefficient::phase(q(5, 6)));
        assert_eq!(Coefficient::phase(q(-1, 2)), Coefficient::phase(q(3, 2)));
    }

    #[test]
    fn lambda_arithmetic() {
        let c = (Coefficient::from(2) + Coefficient::lambda()) * Coefficient::lambda();
        let pi = std::f64::consts::PI;
        assert!(close(c.numeric_value(), Complex64::new(-pi * pi, 2.0 * pi)));
        assert_eq!(c.lambda_degree(), 2);
        assert!(c.inv().is_err());
    }

    #[test]
    fn inverse_in_cyclotomic_field() {
        let a = Coefficient::from(3) + Coefficient::phase(q(1, 5));
        let b = a.inv().unwrap();
        assert!((a * b).is_one());
    }

    #[test]
    fn rational_powers() {
        let k = q(1, 2);
        assert_eq!(Coefficient::from(-1).pow_ratio(k).unwrap(), Coefficient::phase(q(1, 2)));
        assert_eq!(Coefficient::from_ratio(4, 9).pow_ratio(q(3, 2)).unwrap(), Coefficient::from_ratio(8, 27));
        assert_eq!(Coefficient::phase(q(2, 3)).pow_ratio(k).unwrap(), Coefficient::phase(q(1, 3)));
        assert_eq!(Coefficient::phase(q(-2, 3)).pow_ratio(k).unwrap(), Coefficient::phase(q(-1, 3)));
        let c = Coefficient::from(-2) * Coefficient::phase(q(1, 3));
        assert_eq!(c.pow_ratio(q(1, 1)).unwrap(), c);
        assert!(Coefficient::from(2).pow_ratio(k).is_err());
        assert_eq!(Coefficient::phase(q(1, 1)).as_phase(), Some(q(1, 1)));
    }

    #[test]
    fn json_round_trip() {
        let big = BigRational::new("123456789012345678901234567890".parse().unwrap(), 7.into());
        for c in [
            Coefficient::zero(),
            Coefficient::from_ratio(-3, 4),
            Coefficient::phase(q(1, 3)) + Coefficient::lambda(),
            Coefficient::from_rational(big),
        ] {
            let s = serde_json::to_string(&c).unwrap();
            let back: Coefficient = serde_json::from_str(&s).unwrap();
            assert_eq!(back, c);
            assert_eq!(serde_json::to_string(&back).unwrap(), s);
        }
        let s = serde_json::to_string(&Coefficient::from_ratio(-3, 4)).unwrap();
        assert_eq!(s, r#"{"lambda_deg":0,"coeffs":[[-3,4]],"m":1}"#);
    }

    #[test]
    fn display() {
        let c = Coefficient::from_ratio(1, 2) - Coefficient::phase(q(1, 2)) + Coefficient::lambda();
        assert_eq!(c.to_string(), "1/2 - ζ4 + Λ");
    }
}
