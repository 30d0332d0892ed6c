use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the length of free-group image words in [`artin_equal`].
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// A freely reduced word in the Artin generators of `B_r`.
///
/// `+i` is `σ_i`, `-i` is `σ_i^{-1}`. `σ_i` carries the strand at position
/// `i` over the strand at position `i + 1`. Words are read left to right,
/// from the top of the braid to the bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BraidJson", into = "BraidJson")]
pub struct BraidWord {
    r: usize,
    word: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct BraidJson {
    r: usize,
    word: Vec<i32>,
}

impl TryFrom<BraidJson> for BraidWord {
    type Error = Error;
    fn try_from(j: BraidJson) -> Result<Self> {
        BraidWord::new(j.r, j.word)
    }
}

impl From<BraidWord> for BraidJson {
    fn from(b: BraidWord) -> Self {
        BraidJson { r: b.r, word: b.word }
    }
}

fn push_reduced(out: &mut Vec<i32>, g: i32) {
    if out.last() == Some(&-g) {
        out.pop();
    } else {
        out.push(g);
    }
}

impl BraidWord {
    pub fn new(r: usize, word: Vec<i32>) -> Result<Self> {
        let mut out = Vec::with_capacity(word.len());
        for g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= r.max(1) {
                return Err(Error::IndexOutOfRange { index: i, max: r.saturating_sub(1) });
            }
            push_reduced(&mut out, g);
        }
        Ok(BraidWord { r, word: out })
    }

    pub fn identity(r: usize) -> Self {
        BraidWord { r, word: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.r
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn random<R: Rng + ?Sized>(r: usize, len: usize, rng: &mut R) -> Self {
        if r < 2 {
            return BraidWord::identity(r);
        }
        let word = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..r as i32);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        BraidWord::new(r, word).unwrap()
    }

    /// Concatenation `self · other` (first `self`, then `other`).
    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::StrandMismatch(self.r, other.r));
        }
        let mut w = self.word.clone();
        for &g in &other.word {
            push_reduced(&mut w, g);
        }
        Ok(BraidWord { r: self.r, word: w })
    }

    pub fn inverse(&self) -> Self {
        BraidWord { r: self.r, word: self.word.iter().rev().map(|g| -g).collect() }
    }

    /// Image in `S_r`: `π(i)` is the final position of the strand that
    /// starts at position `i`.
    pub fn project(&self) -> Permutation {
        let mut strand_at: Vec<usize> = (1..=self.r).collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize;
            strand_at.swap(i - 1, i);
        }
        let mut pi = vec![0; self.r];
        for (pos, &s) in strand_at.iter().enumerate() {
            pi[s - 1] = pos + 1;
        }
        Permutation::new(pi).expect("swaps preserve bijectivity")
    }

    /// Images of the free generators `x_1..x_r` under the Artin action.
    pub fn artin_images(&self, cap: usize) -> Result<Vec<Vec<i32>>> {
        let mut img: Vec<Vec<i32>> = (1..=self.r as i32).map(|j| vec![j]).collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            let (a, b) = (img[i].clone(), img[i + 1].clone());
            let (new_i, new_next) = if g > 0 {
                (free_product(&[&a, &b, &free_inverse(&a)]), a)
            } else {
                (b.clone(), free_product(&[&free_inverse(&b), &a, &b]))
            };
            if new_i.len() > cap || new_next.len() > cap {
                return Err(Error::WordTooLong(cap));
            }
            img[i] = new_i;
            img[i + 1] = new_next;
        }
        Ok(img)
    }

    /// Cables strand `p` into the `m`-strand bundle carrying `c` at the top.
    /// With `m = 0` the strand is erased.
    pub fn cable(&self, p: usize, c: &BraidWord) -> Result<BraidWord> {
        let n = self.r;
        if p == 0 || p > n {
            return Err(Error::IndexOutOfRange { index: p, max: n });
        }
        let m = c.r;
        let total = n + m - 1;
        let mut out: Vec<i32> = c.word.iter().map(|&g| g.signum() * (g.abs() + p as i32 - 1)).collect();
        let mut q = p;
        for &g in &self.word {
            let s = g.signum();
            let i = g.unsigned_abs() as usize;
            if i == q || i + 1 == q {
                let moving_right = i == q;
                q = if moving_right { i + 1 } else { i };
                if m == 0 {
                    continue;
                }
                let block: Vec<usize> = if moving_right {
                    (i..i + m).rev().collect()
                } else {
                    (i..i + m).collect()
                };
                for j in block {
                    push_reduced(&mut out, s * j as i32);
                }
            } else {
                let j = if i > q { i + m - 1 } else { i };
                push_reduced(&mut out, s * j as i32);
            }
        }
        BraidWord::new(total, out)
    }

    /// Places this braid on strands `offset+1 ..= offset+r` of `B_total`.
    pub fn embed(&self, offset: usize, total: usize) -> Result<BraidWord> {
        if offset + self.r > total {
            return Err(Error::StrandMismatch(offset + self.r, total));
        }
        BraidWord::new(total, self.word.iter().map(|&g| g.signum() * (g.abs() + offset as i32)).collect())
    }

    /// The braid in which a block of `k` strands crosses a block of `l`
    /// strands to its right, the left block passing over.
    pub fn block_crossing(k: usize, l: usize) -> BraidWord {
        if k == 0 || l == 0 {
            return BraidWord::identity(k + l);
        }
        let s = BraidWord { r: 2, word: vec![1] };
        s.cable(2, &BraidWord::identity(l))
            .and_then(|b| b.cable(1, &BraidWord::identity(k)))
            .expect("valid slots")
    }
}

fn free_inverse(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|g| -g).collect()
}

fn free_product(parts: &[&[i32]]) -> Vec<i32> {
    let mut out = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
    for p in parts {
        for &g in *p {
            push_reduced(&mut out, g);
        }
    }
    out
}

/// Decides equality in `B_r` by comparing the induced automorphisms of the
/// free group `F_r`, with image words capped at `cap` letters.
pub fn artin_equal_with_cap(b1: &BraidWord, b2: &BraidWord, cap: usize) -> Result<bool> {
    if b1.r != b2.r {
        return Err(Error::StrandMismatch(b1.r, b2.r));
    }
    if b1.word == b2.word {
        return Ok(true);
    }
    // Equal braids iff b1 · b2⁻¹ acts trivially; this keeps images short
    // when the two words are close.
    let diff = b1.concat(&b2.inverse())?;
    let img = diff.artin_images(cap)?;
    Ok(img.iter().enumerate().all(|(j, w)| w.len() == 1 && w[0] == j as i32 + 1))
}

pub fn artin_equal(b1: &BraidWord, b2: &BraidWord) -> Result<bool> {
    artin_equal_with_cap(b1, b2, DEFAULT_WORD_CAP)
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for (k, &g) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if g > 0 {
                write!(f, "s{g}")?;
            } else {
                write!(f, "s{}^-1", -g)?;
            }
        }
        Ok(())
    }
}

impl BraidWord {
    /// Parses `"s1 s2^-1 s1"` (or `"e"` / empty for the identity) on `r`
    /// strands.
    pub fn parse(r: usize, s: &str) -> Result<BraidWord> {
        let mut word = Vec::new();
        let mut offset = 0;
        for tok in s.split_whitespace() {
            let pos = s[offset..].find(tok).map_or(offset, |k| k + offset);
            offset = pos + tok.len();
            if tok == "e" {
                continue;
            }
            let body = tok
                .strip_prefix('s')
                .ok_or_else(|| Error::parse(pos, format!("generator must look like s3 or s3^-1, got {tok:?}")))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i32>().map_err(|_| Error::parse(pos, "bad exponent"))?),
                None => (body, 1),
            };
            let i: i32 = idx.parse().map_err(|_| Error::parse(pos, "bad generator index"))?;
            for _ in 0..exp.unsigned_abs() {
                word.push(i * exp.signum());
            }
        }
        BraidWord::new(r, word)
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses a word with the strand count inferred as one more than the
    /// largest generator index.
    fn from_str(s: &str) -> Result<Self> {
        let probe = BraidWord::parse(usize::MAX / 2, s)?;
        let r = probe.word.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
        BraidWord::new(r, probe.word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(r: usize, w: &[i32]) -> BraidWord {
        BraidWord::new(r, w.to_vec()).unwrap()
    }

    #[test]
    fn braid_relation_and_noncommutation() {
        assert!(artin_equal(&b(3, &[1, 2, 1]), &b(3, &[2, 1, 2])).unwrap());
        assert!(artin_equal(&b(2, &[1, -1]), &b(2, &[])).unwrap());
        assert!(!artin_equal(&b(3, &[1, 2]), &b(3, &[2, 1])).unwrap());
        assert!(artin_equal(&b(4, &[1, 3]), &b(4, &[3, 1])).unwrap());
        assert!(!artin_equal(&b(2, &[1, 1]), &b(2, &[])).unwrap());
        assert!(artin_equal(&b(3, &[1]), &b(2, &[1])).is_err());
    }

    #[test]
    fn free_reduction_on_construction() {
        assert!(b(3, &[1, 2, -2, -1]).is_empty());
    }

    #[test]
    fn projection_examples() {
        assert_eq!(b(2, &[1]).project().as_slice(), &[2, 1]);
        assert!(b(2, &[1, 1]).project().is_identity());
        assert_eq!(b(3, &[1, 2]).project().as_slice(), &[3, 1, 2]);
    }

    #[test]
    fn cabling_examples() {
        assert_eq!(b(2, &[1]).cable(1, &BraidWord::identity(2)).unwrap(), b(3, &[2, 1]));
        assert_eq!(b(2, &[1]).cable(2, &BraidWord::identity(2)).unwrap(), b(3, &[1, 2]));
        assert_eq!(b(2, &[1, 1]).cable(2, &BraidWord::identity(0)).unwrap(), b(1, &[]));
        assert_eq!(BraidWord::identity(2).cable(1, &b(3, &[1, 2])).unwrap(), b(4, &[1, 2]));
        assert_eq!(b(2, &[-1]).cable(1, &BraidWord::identity(2)).unwrap(), b(3, &[-2, -1]));
        assert_eq!(b(3, &[2, 1]).cable(2, &BraidWord::identity(0)).unwrap(), b(2, &[1]));
    }

    #[test]
    fn text_round_trip() {
        let w = b(4, &[1, -2, 3, 3]);
        assert_eq!(w.to_string(), "s1 s2^-1 s3 s3");
        assert_eq!(BraidWord::parse(4, &w.to_string()).unwrap(), w);
        assert_eq!("s1 s2^2".parse::<BraidWord>().unwrap(), b(3, &[1, 2, 2]));
        assert!(BraidWord::parse(2, "s2").is_err());
        assert!(BraidWord::parse(3, "t1").is_err());
    }

    #[test]
    fn json_shape() {
        let w = b(3, &[1, -2]);
        let j = serde_json::to_string(&w).unwrap();
        assert_eq!(j, r#"{"r":3,"word":[1,-2]}"#);
        assert_eq!(serde_json::from_str::<BraidWord>(&j).unwrap(), w);
    }

    #[test]
    fn word_cap_is_enforced() {
        let w = BraidWord::new(3, [1, 2].repeat(20)).unwrap();
        assert_eq!(artin_equal_with_cap(&w, &BraidWord::identity(3), 4), Err(Error::WordTooLong(4)));
    }
}
