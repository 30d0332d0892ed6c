use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{LogPuiseuxSeries, Monomial, VarSet};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: BTreeMap<String, String>,
    log: BTreeMap<String, u32>,
    coeff: Coefficient,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: i64,
    vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    weights: BTreeMap<String, i64>,
    terms: Vec<TermJson>,
}

fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let bad = || Error::Json(format!("bad exponent {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(n.trim().parse().map_err(|_| bad())?, d))
        }
        None => Ok(Ratio::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl LogPuiseuxSeries {
    fn to_json_struct(&self) -> SeriesJson {
        let names = self.vars.names();
        let w = self.vars.weights();
        let graded: Vec<usize> = (0..names.len()).filter(|&i| w[i] != 0).collect();
        let weights = graded.iter().filter(|&&i| w[i] != 1).map(|&i| (names[i].clone(), w[i])).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exp = BTreeMap::new();
                let mut log = BTreeMap::new();
                for (i, n) in names.iter().enumerate() {
                    if !m.exp(i).is_zero() {
                        exp.insert(n.clone(), m.exp(i).to_string());
                    }
                    if m.log_power(i) > 0 {
                        log.insert(n.clone(), m.log_power(i));
                    }
                }
                TermJson { exp, log, coeff: c.clone() }
            })
            .collect();
        SeriesJson {
            order: self.order,
            vars: graded.iter().map(|&i| names[i].clone()).collect(),
            x: self.vars.ungraded().map(|i| names[i].clone()),
            weights,
            terms,
        }
    }

    fn from_json_struct(j: SeriesJson) -> Result<Self> {
        let mut names = j.vars.clone();
        let mut weights: Vec<i64> = j.vars.iter().map(|n| *j.weights.get(n).unwrap_or(&1)).collect();
        if let Some(k) = j.weights.keys().find(|k| !j.vars.contains(k)) {
            return Err(Error::UnknownVariable(k.clone()));
        }
        if weights.iter().any(|&w| w <= 0) {
            return Err(Error::Json("graded weights must be positive".into()));
        }
        if let Some(x) = &j.x {
            names.push(x.clone());
            weights.push(0);
        }
        let vars = VarSet::with_weights(names, weights)?;
        let mut out = LogPuiseuxSeries::zero(vars.clone(), j.order);
        for t in j.terms {
            let mut m = Monomial::one(vars.len());
            for (n, e) in &t.exp {
                m.set_exp(vars.index(n)?, parse_ratio(e)?);
            }
            for (n, &l) in &t.log {
                m.set_log(vars.index(n)?, l);
            }
            out.add_term(m, t.coeff);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_struct()).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        Self::from_json_struct(serde_json::from_value(v.clone())?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json_struct()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json_struct(serde_json::from_str(s)?)
    }
}

impl Serialize for LogPuiseuxSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_struct().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LogPuiseuxSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SeriesJson::deserialize(d)?;
        LogPuiseuxSeries::from_json_struct(j).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let vars = VarSet::with_weights(vec!["za".into(), "zb".into(), "x".into()], vec![1, 3, 0]).unwrap();
        let mut m = Monomial::one(3);
        m.set_exp(0, Ratio::new(3, 2));
        m.set_log(0, 1);
        m.set_exp(2, Ratio::from_integer(-1));
        let c = Coefficient::phase(Ratio::new(1, 3)) + Coefficient::lambda();
        let s = LogPuiseuxSeries::from_terms(vars.clone(), 7, [(m, c), (Monomial::var(3, 1, Ratio::from_integer(2)), Coefficient::from(5))]).unwrap();
        let text = s.to_json_string();
        let back = LogPuiseuxSeries::from_json_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json_string(), text);
        assert!(text.contains(r#""exp":{"x":"-1","za":"3/2"}"#));
    }

    #[test]
    fn rejects_unknown_variable() {
        let text = r#"{"order":2,"vars":["a"],"terms":[{"exp":{"b":"1"},"log":{},"coeff":{"lambda_deg":0,"coeffs":[[1,1]],"m":1}}]}"#;
        assert!(matches!(LogPuiseuxSeries::from_json_str(text), Err(Error::UnknownVariable(_))));
    }
}
