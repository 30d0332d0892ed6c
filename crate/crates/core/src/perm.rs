//! Permutations in one-line notation and the permutation operad.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1..r}` stored as the sequence `g(1), …, g(r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let r = one_line.len();
        let mut seen = vec![false; r + 1];
        for &v in &one_line {
            if v == 0 || v > r || seen[v] {
                return Err(Error::Labels(format!("{one_line:?} is not a permutation of 1..={r}")));
            }
            seen[v] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(r: usize) -> Self {
        Permutation((1..=r).collect())
    }

    pub fn random<R: Rng + ?Sized>(r: usize, rng: &mut R) -> Self {
        let mut v: Vec<usize> = (1..=r).collect();
        v.shuffle(rng);
        Permutation(v)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `g(i)` for `1 ≤ i ≤ r`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// Function composition `(self ∘ other)(i) = self(other(i))`.
    pub fn then_after(&self, other: &Permutation) -> Self {
        assert_eq!(self.size(), other.size());
        Permutation(other.0.iter().map(|&i| self.0[i - 1]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Operadic composition `g ∘_p h`: the value `p` of `g` is replaced by the
    /// block `h + (p − 1)` and larger values are shifted up by `size(h) − 1`.
    /// An empty `h` deletes the value `p`.
    pub fn compose(&self, p: usize, h: &Permutation) -> Result<Self> {
        let n = self.size();
        if p == 0 || p > n {
            return Err(Error::IndexOutOfRange { index: p, max: n });
        }
        let m = h.size();
        let mut out = Vec::with_capacity(n + m - 1);
        for &v in &self.0 {
            if v == p {
                out.extend(h.0.iter().map(|&x| x + p - 1));
            } else if v < p {
                out.push(v);
            } else {
                out.push(v + m - 1);
            }
        }
        Ok(Permutation(out))
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        for &v in &self.0 {
            if v < 10 {
                write!(f, "{v}")?;
            } else {
                write!(f, "[{v}]")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts the one-line form with single digits or bracketed labels
    /// (`"4231"`, `"[10]21…"`), or comma/space separated integers.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Permutation(Vec::new()));
        }
        let mut out = Vec::new();
        if s.contains(',') || s.contains(' ') {
            for tok in s.split([',', ' ']).filter(|t| !t.is_empty()) {
                out.push(tok.parse().map_err(|_| Error::parse(0, format!("bad entry {tok:?}")))?);
            }
        } else {
            let mut chars = s.char_indices().peekable();
            while let Some((pos, c)) = chars.next() {
                if let Some(d) = c.to_digit(10) {
                    out.push(d as usize);
                } else if c == '[' {
                    let mut num = String::new();
                    loop {
                        match chars.next() {
                            Some((_, ']')) => break,
                            Some((_, d)) if d.is_ascii_digit() => num.push(d),
                            _ => return Err(Error::parse(pos, "unterminated bracketed label")),
                        }
                    }
                    out.push(num.parse().map_err(|_| Error::parse(pos, "empty bracketed label"))?);
                } else {
                    return Err(Error::parse(pos, format!("unexpected character {c:?}")));
                }
            }
        }
        Permutation::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn block_insertion() {
        assert_eq!(p("321").compose(2, &p("12")).unwrap(), p("4231"));
        assert_eq!(p("3214").compose(2, &p("213")).unwrap(), p("532416"));
        assert_eq!(p("1").compose(1, &p("312")).unwrap(), p("312"));
        assert_eq!(p("231").compose(3, &p("∅")).unwrap(), p("21"));
    }

    #[test]
    fn inverse_and_composition() {
        let g = p("3142");
        assert!(g.then_after(&g.inverse()).is_identity());
        assert_eq!(p("231").then_after(&p("213")), p("321"));
    }

    #[test]
    fn out_of_range() {
        assert_eq!(
            p("21").compose(3, &p("1")),
            Err(Error::IndexOutOfRange { index: 3, max: 2 })
        );
    }

    #[test]
    fn display_round_trip_large() {
        let g = Permutation::new((1..=12).rev().collect()).unwrap();
        assert_eq!(g.to_string().parse::<Permutation>().unwrap(), g);
    }
}
