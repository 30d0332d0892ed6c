use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

/// A rational exponent split as `offset + base` with `base ∈ [0, 1)`.
///
/// The base is the sector of the exponent; a series may only carry finitely
/// many of them per variable. Ordering agrees with the numeric value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    offset: i64,
    base: Ratio<i64>,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { offset: 0, base: Ratio::new_raw(0, 1) };

    pub fn new(value: Ratio<i64>) -> Self {
        let offset = value.floor().to_integer();
        Exponent { offset, base: value - offset }
    }

    pub fn int(n: i64) -> Self {
        Exponent { offset: n, base: Ratio::zero() }
    }

    pub fn value(self) -> Ratio<i64> {
        self.base + self.offset
    }

    pub fn base(self) -> Ratio<i64> {
        self.base
    }

    pub fn offset(self) -> i64 {
        self.offset
    }

    pub fn is_zero(self) -> bool {
        self.offset == 0 && self.base.is_zero()
    }

    pub fn is_integer(self) -> bool {
        self.base.is_zero()
    }
}

impl std::ops::Add for Exponent {
    type Output = Exponent;
    fn add(self, o: Exponent) -> Exponent {
        Exponent::new(self.value() + o.value())
    }
}

impl std::ops::Sub for Exponent {
    type Output = Exponent;
    fn sub(self, o: Exponent) -> Exponent {
        Exponent::new(self.value() - o.value())
    }
}

impl std::ops::Mul<Ratio<i64>> for Exponent {
    type Output = Exponent;
    fn mul(self, k: Ratio<i64>) -> Exponent {
        Exponent::new(self.value() * k)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Exponents and log powers for each variable of a [`super::VarSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub(crate) exps: Vec<Exponent>,
    pub(crate) logs: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![Exponent::ZERO; n], logs: vec![0; n] }
    }

    pub fn var(n: usize, i: usize, e: Ratio<i64>) -> Self {
        let mut m = Monomial::one(n);
        m.exps[i] = Exponent::new(e);
        m
    }

    pub fn exp(&self, i: usize) -> Ratio<i64> {
        self.exps[i].value()
    }

    pub fn exponent(&self, i: usize) -> Exponent {
        self.exps[i]
    }

    pub fn log_power(&self, i: usize) -> u32 {
        self.logs[i]
    }

    pub fn set_exp(&mut self, i: usize, e: Ratio<i64>) {
        self.exps[i] = Exponent::new(e);
    }

    pub fn set_log(&mut self, i: usize, k: u32) {
        self.logs[i] = k;
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|e| e.is_zero()) && self.logs.iter().all(|&l| l == 0)
    }

    pub fn has_logs(&self) -> bool {
        self.logs.iter().any(|&l| l > 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| *a + *b).collect(),
            logs: self.logs.iter().zip(&o.logs).map(|(a, b)| a + b).collect(),
        }
    }

    /// Exponent-wise quotient; log powers must divide.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let logs = self
            .logs
            .iter()
            .zip(&o.logs)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Monomial { exps: self.exps.iter().zip(&o.exps).map(|(a, b)| *a - *b).collect(), logs })
    }

    /// Exponents scaled by `k`; log powers must be zero.
    pub fn pow(&self, k: Ratio<i64>) -> Monomial {
        debug_assert!(!self.has_logs() || k == Ratio::one());
        Monomial { exps: self.exps.iter().map(|e| *e * k).collect(), logs: self.logs.clone() }
    }

    /// Weighted degree.
    pub fn degree(&self, weights: &[i64]) -> Ratio<i64> {
        self.exps
            .iter()
            .zip(weights)
            .filter(|(_, &w)| w != 0)
            .map(|(e, &w)| e.value() * w)
            .fold(Ratio::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sector_split() {
        let e = Exponent::new(Ratio::new(-3, 2));
        assert_eq!(e.offset(), -2);
        assert_eq!(e.base(), Ratio::new(1, 2));
        assert_eq!(e.value(), Ratio::new(-3, 2));
        assert!(Exponent::new(Ratio::new(-1, 3)) < Exponent::int(0));
        assert!(Exponent::int(1) > Exponent::new(Ratio::new(1, 2)));
    }
}
