use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::coords::CoordinateSystem;
use crate::error::{Error, Result};
use crate::series::Monomial;

/// One sufficient inequality `Σ |a_m| p^m < 1` read off a factored `P_ij`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inequality {
    pub lhs: String,
    pub pairs: Vec<(usize, usize)>,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub holds: bool,
}

/// A real point of the closed polydisk where some `P_ij` vanishes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub pair: (usize, usize),
    pub zeta: BTreeMap<String, f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Admissibility {
    CertifiedAdmissible { certificate: Vec<Inequality> },
    NotAdmissible { witness: Witness, certificate: Vec<Inequality> },
    Unknown { certificate: Vec<Inequality> },
}

impl Admissibility {
    pub fn status(&self) -> &'static str {
        match self {
            Admissibility::CertifiedAdmissible { .. } => "certified-admissible",
            Admissibility::NotAdmissible { .. } => "not-admissible",
            Admissibility::Unknown { .. } => "unknown",
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Admissibility::CertifiedAdmissible { .. })
    }

    pub fn certificate(&self) -> &[Inequality] {
        match self {
            Admissibility::CertifiedAdmissible { certificate }
            | Admissibility::NotAdmissible { certificate, .. }
            | Admissibility::Unknown { certificate } => certificate,
        }
    }
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Same radius on every edge.
pub fn uniform_radii(cs: &CoordinateSystem, p: &BigRational) -> BTreeMap<String, BigRational> {
    cs.edges().iter().map(|e| (e.clone(), p.clone())).collect()
}

fn show_poly(cs: &CoordinateSystem, poly: &BTreeMap<Monomial, BigRational>) -> String {
    let mut terms: Vec<(usize, String)> = poly
        .iter()
        .map(|(m, c)| {
            let mut f = Vec::new();
            let mut deg = 0;
            for (k, e) in cs.edges().iter().enumerate() {
                let x = m.exp(k).to_integer();
                deg += x as usize;
                match x {
                    0 => {}
                    1 => f.push(format!("p_{e}")),
                    _ => f.push(format!("p_{e}^{x}")),
                }
            }
            let body = f.join("·");
            (deg, if c.is_one() { body } else { format!("{c}·{body}") })
        })
        .collect();
    terms.sort();
    terms.into_iter().map(|(_, t)| t).collect::<Vec<_>>().join(" + ")
}

/// Sufficient test: with `P_ij / M_ij = c (1 + h)`, require
/// `Σ_m |h_m| Π p_e^{m_e} < 1` for every pair.
pub fn admissible(cs: &CoordinateSystem, radii: &BTreeMap<String, BigRational>) -> Result<Admissibility> {
    let mut p = Vec::with_capacity(cs.edges().len());
    for e in cs.edges() {
        let v = radii.get(e).ok_or_else(|| Error::Invalid(format!("no radius for edge {e:?}")))?;
        if !v.is_positive() {
            return Err(Error::Invalid(format!("radius for edge {e:?} must be positive")));
        }
        p.push(v.clone());
    }
    let mut by_poly: BTreeMap<BTreeMap<Monomial, BigRational>, Vec<(usize, usize)>> = BTreeMap::new();
    for (&pair, fac) in cs.factors() {
        if fac.h.is_zero() {
            continue;
        }
        let poly = fac
            .h
            .terms()
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.to_rational().ok_or_else(|| Error::NotRepresentable(c.to_string()))?.abs())))
            .collect::<Result<BTreeMap<_, _>>>()?;
        by_poly.entry(poly).or_default().push(pair);
    }
    let mut certificate = Vec::new();
    let mut failing = Vec::new();
    for (poly, pairs) in &by_poly {
        let mut value = BigRational::zero();
        for (m, c) in poly {
            let mut t = c.clone();
            for (k, pk) in p.iter().enumerate() {
                let e = m.exp(k).to_integer();
                if e > 0 {
                    t *= num_traits::pow(pk.clone(), e as usize);
                }
            }
            value += t;
        }
        let holds = value < BigRational::one();
        if !holds {
            failing.extend(pairs.iter().copied());
        }
        certificate.push(Inequality { lhs: show_poly(cs, poly), pairs: pairs.clone(), value, holds });
    }
    certificate.sort_by(|a, b| a.lhs.len().cmp(&b.lhs.len()).then_with(|| a.lhs.cmp(&b.lhs)));
    if failing.is_empty() {
        return Ok(Admissibility::CertifiedAdmissible { certificate });
    }
    let pf: Vec<f64> = p.iter().map(|q| q.to_f64().unwrap_or(f64::INFINITY)).collect();
    for pair in failing {
        if let Some(witness) = find_zero(cs, pair, &pf) {
            return Ok(Admissibility::NotAdmissible { witness, certificate });
        }
    }
    Ok(Admissibility::Unknown { certificate })
}

/// Looks for a zero of `1 + h` on real rays `ζ_e = t σ_e p_e`, `t ∈ (0, 1]`.
fn find_zero(cs: &CoordinateSystem, pair: (usize, usize), p: &[f64]) -> Option<Witness> {
    let fac = &cs.factors()[&pair];
    let used: Vec<usize> = (0..p.len()).filter(|&k| fac.h.terms().keys().any(|m| !m.exp(k).is_zero())).collect();
    if used.len() > 16 {
        return None;
    }
    let terms: Vec<(Vec<i64>, f64)> = fac
        .h
        .terms()
        .iter()
        .map(|(m, c)| ((0..p.len()).map(|k| m.exp(k).to_integer()).collect(), c.numeric_value().re))
        .collect();
    let g = |zeta: &[f64]| -> f64 {
        1.0 + terms.iter().map(|(e, c)| c * e.iter().zip(zeta).map(|(&k, z)| z.powi(k as i32)).product::<f64>()).sum::<f64>()
    };
    for mask in 0u32..(1 << used.len()) {
        let dir: Vec<f64> = (0..p.len())
            .map(|k| match used.iter().position(|&u| u == k) {
                Some(b) if mask & (1 << b) != 0 => -p[k],
                _ => p[k],
            })
            .collect();
        let at = |t: f64| g(&dir.iter().map(|d| d * t).collect::<Vec<_>>());
        if at(1.0) > 0.0 {
            continue;
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if at(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let zeta: Vec<f64> = dir.iter().map(|d| d * hi).collect();
        return Some(Witness {
            pair,
            residual: g(&zeta).abs(),
            zeta: cs.edges().iter().cloned().zip(zeta).collect(),
        });
    }
    None
}
