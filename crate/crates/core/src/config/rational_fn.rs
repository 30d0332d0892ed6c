use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};

/// Exponents of `(z_i − z_j)` for `i < j`, sorted by pair.
pub type Factors = Vec<((usize, usize), i64)>;

/// A finite sum `Σ c · Π (z_i − z_j)^{k_ij}` on `r` points.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    r: usize,
    terms: BTreeMap<Factors, Coefficient>,
}

fn merge(a: &Factors, b: &Factors) -> Factors {
    let mut map: BTreeMap<(usize, usize), i64> = a.iter().copied().collect();
    for &(p, k) in b {
        *map.entry(p).or_insert(0) += k;
    }
    map.into_iter().filter(|&(_, k)| k != 0).collect()
}

impl RationalFunction {
    pub fn zero(r: usize) -> Self {
        RationalFunction { r, terms: BTreeMap::new() }
    }

    pub fn constant(r: usize, c: Coefficient) -> Self {
        let mut f = Self::zero(r);
        f.add_term(Vec::new(), c);
        f
    }

    /// `(z_i − z_j)^k`.
    pub fn difference_power(r: usize, i: usize, j: usize, k: i64) -> Result<Self> {
        for x in [i, j] {
            if x == 0 || x > r {
                return Err(Error::IndexOutOfRange { index: x, max: r });
            }
        }
        if i == j {
            return Err(Error::Invalid(format!("z{i} - z{i} vanishes identically")));
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, if k % 2 == 0 { 1 } else { -1 }) };
        let mut f = Self::zero(r);
        f.add_term(if k == 0 { Vec::new() } else { vec![((a, b), k)] }, Coefficient::from(sign));
        Ok(f)
    }

    pub fn monomial(r: usize, factors: Factors, c: Coefficient) -> Result<Self> {
        let mut f = Self::zero(r);
        for &((i, j), _) in &factors {
            if !(1 <= i && i < j && j <= r) {
                return Err(Error::Invalid(format!("bad factor (z{i} - z{j}) for r = {r}")));
            }
        }
        f.add_term(merge(&Vec::new(), &factors), c);
        Ok(f)
    }

    fn add_term(&mut self, k: Factors, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &BTreeMap<Factors, Coefficient> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.r == o.r {
            Ok(())
        } else {
            Err(Error::StrandMismatch(self.r, o.r))
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(self.r);
        for (k, d) in &self.terms {
            out.add_term(k.clone(), d * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = Self::zero(self.r);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                out.add_term(merge(ka, kb), ca * cb);
            }
        }
        Ok(out)
    }

    /// The same function regarded on `r` points.
    pub fn with_points(&self, r: usize) -> Result<Self> {
        if r < self.max_index() {
            return Err(Error::IndexOutOfRange { index: self.max_index(), max: r });
        }
        Ok(RationalFunction { r, terms: self.terms.clone() })
    }

    pub fn pow_u32(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(self.r, Coefficient::one());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Symbolic `∂/∂z_l`.
    pub fn partial(&self, l: usize) -> Self {
        let mut out = Self::zero(self.r);
        for (k, c) in &self.terms {
            for (idx, &((i, j), e)) in k.iter().enumerate() {
                let sign = if l == i {
                    1
                } else if l == j {
                    -1
                } else {
                    continue;
                };
                let mut nk = k.clone();
                nk[idx].1 -= 1;
                let nk: Factors = nk.into_iter().filter(|&(_, e)| e != 0).collect();
                out.add_term(nk, c.scale(&BigRational::from_integer((sign * e).into())));
            }
        }
        out
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.r {
            return Err(Error::StrandMismatch(z.len(), self.r));
        }
        let mut total = Complex64::zero();
        for (k, c) in &self.terms {
            let mut v = c.numeric_value();
            for &((i, j), e) in k {
                let d = z[i - 1] - z[j - 1];
                if d == Complex64::zero() && e < 0 {
                    return Err(Error::HitsDiagonal(i, j));
                }
                v *= d.powi(e as i32);
            }
            total += v;
        }
        Ok(total)
    }

    /// A random Laurent monomial with small exponents and coefficient.
    pub fn random_monomial<R: Rng + ?Sized>(r: usize, rng: &mut R) -> Self {
        let mut f = Self::constant(r, Coefficient::from_ratio(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=3)));
        if r < 2 {
            return f;
        }
        for _ in 0..rng.gen_range(1..=3) {
            let i = rng.gen_range(1..=r);
            let mut j = rng.gen_range(1..r);
            if j >= i {
                j += 1;
            }
            let mut k = rng.gen_range(-2..=2);
            if k == 0 {
                k = -1;
            }
            f = f.mul(&Self::difference_power(r, i, j, k).unwrap()).unwrap();
        }
        f
    }

    /// Largest point index used.
    pub fn max_index(&self) -> usize {
        self.terms.keys().flat_map(|k| k.iter().map(|&((_, j), _)| j)).max().unwrap_or(0)
    }

    /// Parses `"(z1-z2)^-1 * (z3-z4)^2 + 3"`; the number of points is the
    /// largest index mentioned unless `r` is given.
    pub fn parse(s: &str, r: Option<usize>) -> Result<Self> {
        let mut p = FnParser { s: s.as_bytes(), pos: 0, src: s };
        let terms = p.expr()?;
        p.ws();
        if p.pos < p.s.len() {
            return Err(Error::parse(p.pos, "trailing input"));
        }
        let max = terms.iter().flat_map(|(k, _)| k.iter().map(|&((_, j), _)| j)).max().unwrap_or(0);
        let r = match r {
            Some(r) if r < max => return Err(Error::IndexOutOfRange { index: max, max: r }),
            Some(r) => r,
            None => max,
        };
        let mut f = Self::zero(r);
        for (k, c) in terms {
            f.add_term(k, c);
        }
        Ok(f)
    }
}

struct FnParser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl FnParser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| Error::parse(start, "expected an integer"))
    }

    fn expr(&mut self) -> Result<Vec<(Factors, Coefficient)>> {
        let mut out = Vec::new();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let (k, c) = self.term()?;
            out.push((k, c * Coefficient::from(sign)));
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<(Factors, Coefficient)> {
        let mut k: Factors = Vec::new();
        let mut c = Coefficient::one();
        let mut divide = false;
        loop {
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let n = self.int()?;
                    let mut q = BigRational::from_integer(n);
                    if self.s.get(self.pos) == Some(&b'/') && self.s.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
                        self.pos += 1;
                        let d = self.int()?;
                        if d.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        q /= BigRational::from_integer(d);
                    }
                    c = &c * &Coefficient::from_rational(if divide { q.recip() } else { q });
                }
                Some(b'(') => {
                    let (pair, sign) = self.difference()?;
                    let mut e: i64 = 1;
                    if self.eat(b'^') {
                        let neg = self.eat(b'-');
                        let n = self.int()?;
                        e = i64::try_from(n).map_err(|_| Error::parse(self.pos, "exponent too large"))?;
                        if neg {
                            e = -e;
                        }
                    }
                    if divide {
                        e = -e;
                    }
                    if sign < 0 && e % 2 != 0 {
                        c = -c;
                    }
                    k = merge(&k, &vec![(pair, e)]);
                }
                Some(b'z') => {
                    return Err(Error::NotTranslationInvariant(format!(
                        "bare coordinate at byte {}; only differences (zi-zj) are allowed",
                        self.pos
                    )))
                }
                _ => return Err(Error::parse(self.pos, "expected a number or a difference (zi-zj)")),
            }
            if self.eat(b'*') {
                divide = false;
            } else if self.peek() == Some(b'/') {
                self.pos += 1;
                divide = true;
            } else {
                return Ok((k, c));
            }
        }
    }

    fn difference(&mut self) -> Result<((usize, usize), i64)> {
        let start = self.pos;
        if !self.eat(b'(') {
            return Err(Error::parse(self.pos, "expected '('"));
        }
        let mut idx = [0usize; 2];
        for (n, slot) in idx.iter_mut().enumerate() {
            if n == 1 && !self.eat(b'-') {
                return Err(Error::NotTranslationInvariant(format!("expected '-' in difference at byte {}", self.pos)));
            }
            if !self.eat(b'z') {
                return Err(Error::parse(self.pos, "expected 'z'"));
            }
            let i = self.int()?;
            *slot = usize::try_from(i).ok().filter(|&v| v > 0).ok_or_else(|| Error::parse(self.pos, "bad index"))?;
        }
        if !self.eat(b')') {
            return Err(Error::parse(self.pos, "expected ')'"));
        }
        let [i, j] = idx;
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Ok(((i, j), 1)),
            std::cmp::Ordering::Greater => Ok(((j, i), -1)),
            std::cmp::Ordering::Equal => Err(Error::parse(start, format!("(z{i}-z{i}) vanishes"))),
        }
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RationalFunction::parse(s, None)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let mut cs = c.to_string();
            let neg = c.to_rational().is_some_and(|q| q < BigRational::zero());
            if !first {
                if neg {
                    write!(f, " - ")?;
                    cs = cs[1..].to_string();
                } else {
                    write!(f, " + ")?;
                }
            }
            first = false;
            let factors: Vec<String> = k
                .iter()
                .map(|&((i, j), e)| if e == 1 { format!("(z{i}-z{j})") } else { format!("(z{i}-z{j})^{e}") })
                .collect();
            let unit = cs == "1";
            if factors.is_empty() {
                write!(f, "{cs}")?;
            } else if unit {
                write!(f, "{}", factors.join("*"))?;
            } else if cs == "-1" {
                write!(f, "-{}", factors.join("*"))?;
            } else if cs.contains(' ') {
                write!(f, "({cs})*{}", factors.join("*"))?;
            } else {
                write!(f, "{cs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::constant(0, Coefficient::one())
    }
}

impl std::ops::Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: Self) -> Self {
        RationalFunction::mul(&self, &o).expect("same number of points")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let f: RationalFunction = "(z1-z2)^-1 * (z3-z4)^2 + 3".parse().unwrap();
        assert_eq!(f.r(), 4);
        assert_eq!(f.to_string(), "3 + (z1-z2)^-1*(z3-z4)^2");
        let g: RationalFunction = "(z2-z1)^-1".parse().unwrap();
        assert_eq!(g.to_string(), "-(z1-z2)^-1");
        let h: RationalFunction = "1/2/(z1-z3) - (z1-z2)*(z1-z2)".parse().unwrap();
        assert_eq!(h.to_string(), "-(z1-z2)^2 + 1/2*(z1-z3)^-1");
        assert!(matches!("z1 + 2".parse::<RationalFunction>(), Err(Error::NotTranslationInvariant(_))));
        assert!(matches!("(z1+z2)".parse::<RationalFunction>(), Err(Error::NotTranslationInvariant(_))));
        assert!("(z1-z1)".parse::<RationalFunction>().is_err());
        assert!("(z1-z2".parse::<RationalFunction>().is_err());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let f: RationalFunction = "(z1-z2)^-2*(z1-z3) + 2*(z2-z3)^3".parse().unwrap();
        let z = [Complex64::new(1.3, 0.2), Complex64::new(0.4, -0.1), Complex64::new(-0.5, 0.3)];
        for l in 1..=3 {
            let d = f.partial(l).evaluate(&z).unwrap();
            let h = 1e-6;
            let mut zp = z;
            zp[l - 1] += h;
            let mut zm = z;
            zm[l - 1] -= h;
            let fd = (f.evaluate(&zp).unwrap() - f.evaluate(&zm).unwrap()) / (2.0 * h);
            assert!((d - fd).norm() < 1e-5, "l={l}: {d} vs {fd}");
        }
    }

    #[test]
    fn diagonal_detected() {
        let f: RationalFunction = "(z1-z2)^-1".parse().unwrap();
        assert_eq!(f.evaluate(&[Complex64::one(), Complex64::one()]), Err(Error::HitsDiagonal(1, 2)));
    }
}
