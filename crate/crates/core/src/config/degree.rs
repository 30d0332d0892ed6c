use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use super::coords::CoordinateSystem;
use super::expand::expand;
use super::rational_fn::RationalFunction;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Degree {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(n) => write!(f, "{n}"),
            Degree::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeResult {
    pub degree: Degree,
    /// False when the value was read off a truncated expansion.
    pub certified: bool,
}

/// `deg_A^{e0}(f)`, the smallest exponent of `ζ_{e0}` in `e_A(f)`.
pub fn degree(f: &RationalFunction, cs: &CoordinateSystem, e0: &str, order: i64) -> Result<DegreeResult> {
    let k0 = cs.edge_index(e0)?;
    let mut levels = Vec::with_capacity(f.terms().len());
    for factors in f.terms().keys() {
        let mut d = 0i64;
        for &((i, j), k) in factors {
            d += k * cs.factored(i, j)?.mono.exp(k0).to_integer();
        }
        levels.push(d);
    }
    let Some(&min) = levels.iter().min() else {
        return Ok(DegreeResult { degree: Degree::Infinite, certified: true });
    };
    if levels.iter().filter(|&&d| d == min).count() == 1 {
        return Ok(DegreeResult { degree: Degree::Finite(min), certified: true });
    }
    let s = expand(f, cs, order)?;
    let degree = s
        .terms()
        .keys()
        .map(|m| m.exp(k0))
        .min()
        .map_or(Degree::Infinite, |e: Ratio<i64>| Degree::Finite(e.floor().to_integer()));
    Ok(DegreeResult { degree, certified: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differences_and_zero() {
        let cs = CoordinateSystem::new(&"(23)((15)4)".parse().unwrap()).unwrap();
        let d = |s: &str, e: &str| degree(&s.parse().unwrap(), &cs, e, 6).unwrap();
        assert_eq!(d("(z1-z5)", "RL").degree, Degree::Finite(1));
        assert_eq!(d("(z1-z4)", "RL").degree, Degree::Finite(0));
        assert_eq!(d("(z1-z5)^-2", "R").degree, Degree::Finite(-2));
        assert_eq!(d("0", "R"), DegreeResult { degree: Degree::Infinite, certified: true });
        let r = d("(z1-z4) - (z5-z4)", "RL");
        assert_eq!(r, DegreeResult { degree: Degree::Finite(1), certified: false });
    }
}
