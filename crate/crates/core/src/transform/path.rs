use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use super::{coords_for, resolve_vertex, vertex_quantity};
use crate::config::{base_point, CoordinateSystem};
use crate::error::{Error, Result};
use crate::series::LogPuiseuxSeries;
use crate::tree::Tree;

/// A path in configuration space, parameterized by `t ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum PathSpec {
    /// Polyline through the given configurations; `n` is the initial number
    /// of steps.
    Samples { points: Vec<Vec<Complex64>>, n: usize },
    /// `γ_v` traversed `turns` times (in half-turns), from `start` or the
    /// base point of the tree.
    GammaV { vertex: String, turns: f64, start: Option<Vec<Complex64>> },
}

fn complex_of(v: &Value) -> Result<Complex64> {
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(a) if a.len() == 2 => {
            let f = |x: &Value| x.as_f64().ok_or_else(|| Error::Json(format!("expected a number, got {x}")));
            Ok(Complex64::new(f(&a[0])?, f(&a[1])?))
        }
        _ => Err(Error::Json(format!("expected a number or [re, im], got {v}"))),
    }
}

fn config_of(v: &Value) -> Result<Vec<Complex64>> {
    v.as_array().ok_or_else(|| Error::Json("configuration must be an array".into()))?.iter().map(complex_of).collect()
}

impl PathSpec {
    /// Parses `{"samples": [[z_1, …, z_r], …], "n": 64}` or
    /// `{"builtin": "gamma_v", "vertex": "46", "turns": 1, "start": [...]}`.
    /// Coordinates are numbers or `[re, im]` pairs. The optional `"tree"`
    /// field is returned alongside.
    pub fn from_json(v: &Value) -> Result<(PathSpec, Option<Tree>)> {
        let tree = match v.get("tree") {
            Some(Value::String(s)) => Some(s.parse()?),
            Some(other) => return Err(Error::Json(format!("tree must be a string, got {other}"))),
            None => None,
        };
        let n = match v.get("n") {
            Some(x) => x.as_u64().filter(|&k| k > 0).ok_or_else(|| Error::Json("n must be a positive integer".into()))?
                as usize,
            None => 64,
        };
        if let Some(s) = v.get("samples") {
            let points = s
                .as_array()
                .ok_or_else(|| Error::Json("samples must be an array".into()))?
                .iter()
                .map(config_of)
                .collect::<Result<Vec<_>>>()?;
            if points.len() < 2 {
                return Err(Error::Invalid("a sampled path needs at least two points".into()));
            }
            if points.iter().any(|p| p.len() != points[0].len()) {
                return Err(Error::Invalid("samples have different numbers of points".into()));
            }
            return Ok((PathSpec::Samples { points, n }, tree));
        }
        match v.get("builtin").and_then(Value::as_str) {
            Some("gamma_v") => {
                let vertex = v
                    .get("vertex")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Json("gamma_v needs a vertex".into()))?
                    .to_string();
                let turns = match v.get("turns") {
                    Some(t) => t.as_f64().ok_or_else(|| Error::Json("turns must be a number".into()))?,
                    None => 1.0,
                };
                let start = v.get("start").map(config_of).transpose()?;
                Ok((PathSpec::GammaV { vertex, turns, start }, tree))
            }
            Some(other) => Err(Error::Json(format!("unknown builtin path {other:?}"))),
            None => Err(Error::Json("path needs \"samples\" or \"builtin\"".into())),
        }
    }

    pub fn from_json_str(s: &str) -> Result<(PathSpec, Option<Tree>)> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

/// The point of `γ_v` at time `t`. The leaves of the two subtrees of `v`
/// move rigidly by `±(e^{iπ·turns·t} − 1)(q_{L(v)} − q_{R(v)})/2`, so at
/// `turns = 1` the two blocks have traded places by a counterclockwise
/// half-turn.
pub fn gamma_v_point(tree: &Tree, v: &str, turns: f64, start: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
    if start.len() != tree.size() {
        return Err(Error::StrandMismatch(start.len(), tree.size()));
    }
    let a = tree.analyze();
    let (ll, rr) = match (a.left_leaf.get(v), a.right_leaf.get(v)) {
        (Some(&l), Some(&r)) => (l, r),
        _ => return Err(Error::NoSuchVertex(v.to_string())),
    };
    let shift = (Complex64::from_polar(1.0, PI * turns * t) - 1.0) / 2.0 * (start[ll - 1] - start[rr - 1]);
    let (left, right) = (format!("{v}L"), format!("{v}R"));
    let mut out = start.to_vec();
    for (i, z) in out.iter_mut().enumerate() {
        let p = tree.leaf_path(i + 1).expect("label present");
        if p.starts_with(&left) {
            *z += shift;
        } else if p.starts_with(&right) {
            *z -= shift;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinueOptions {
    /// Largest number of accepted plus rejected steps.
    pub max_samples: usize,
    /// Require the start point to satisfy `|ζ_e| < radius` for every edge.
    pub radius: Option<f64>,
}

impl Default for ContinueOptions {
    fn default() -> Self {
        ContinueOptions { max_samples: 200_000, radius: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Continuation {
    /// Endpoint configuration.
    pub end: Vec<[f64; 2]>,
    /// Continued logarithm of every tracked quantity at the endpoint.
    pub logs: BTreeMap<String, [f64; 2]>,
    /// Number of full counterclockwise turns of every tracked quantity.
    pub winding: BTreeMap<String, f64>,
    /// `s` at the endpoint with the continued branches.
    pub value: [f64; 2],
    pub samples: usize,
}

impl Continuation {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value[0], self.value[1])
    }

    pub fn end(&self) -> Vec<Complex64> {
        self.end.iter().map(|p| Complex64::new(p[0], p[1])).collect()
    }
}

/// `ζ_e`, `x` and `x_v` for every non-root vertex, in that order.
fn tracked(cs: &CoordinateSystem, z: &[Complex64]) -> Result<Vec<Complex64>> {
    let p = cs.psi(z)?;
    let mut v = p.values();
    let a = cs.analysis();
    for vx in a.vertices.iter().skip(1) {
        v.push(z[a.left_leaf[vx] - 1] - z[a.right_leaf[vx] - 1]);
    }
    Ok(v)
}

type PointFn = Box<dyn Fn(f64) -> Result<Vec<Complex64>>>;

fn nearest_pair(z: &[Complex64]) -> (f64, usize, usize) {
    let mut best = (f64::INFINITY, 0, 0);
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let d = (z[i] - z[j]).norm();
            if d < best.0 {
                best = (d, i + 1, j + 1);
            }
        }
    }
    best
}

/// Continues `s`, a series in the coordinates of `tree`, along `path`.
/// Logarithms start on the principal branch and are unwrapped step by step;
/// a step is accepted when no point moves by more than half the distance
/// to the nearest diagonal and no tracked quantity turns by `π/2` or more.
pub fn continue_along_path(
    s: &LogPuiseuxSeries,
    tree: &Tree,
    path: &PathSpec,
    opts: &ContinueOptions,
) -> Result<Continuation> {
    let cs = coords_for(tree, s)?;
    let r = tree.size();
    let (point, n): (PointFn, usize) = match path {
        PathSpec::Samples { points, n } => {
            if points.iter().any(|p| p.len() != r) {
                return Err(Error::StrandMismatch(points[0].len(), r));
            }
            let segs = (points.len() - 1) as f64;
            let pts = points.clone();
            let f = move |t: f64| {
                let u = (t * segs).clamp(0.0, segs);
                let k = (u.floor() as usize).min(pts.len() - 2);
                let w = u - k as f64;
                Ok(pts[k].iter().zip(&pts[k + 1]).map(|(a, b)| a + (b - a) * w).collect())
            };
            (Box::new(f), *n)
        }
        PathSpec::GammaV { vertex, turns, start } => {
            let v = resolve_vertex(tree, vertex)?;
            let z0 = match start {
                Some(z) => z.clone(),
                None => base_point(tree)?.z.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            };
            let tr = tree.clone();
            let turns = *turns;
            let n = (64.0 * turns.abs().max(1.0)).ceil() as usize;
            (Box::new(move |t| gamma_v_point(&tr, &v, turns, &z0, t)), n)
        }
    };
    let names: Vec<String> = {
        let mut v = cs.vars().names().to_vec();
        v.extend(cs.analysis().vertices.iter().skip(1).map(|p| vertex_quantity(p)));
        v
    };
    let mut z = point(0.0)?;
    let (d0, i0, j0) = nearest_pair(&z);
    if d0 < 1e-10 {
        return Err(Error::HitsDiagonal(i0, j0));
    }
    let mut vals = tracked(&cs, &z)?;
    for (k, v) in vals.iter().enumerate().take(cs.vars().len()) {
        if v.im == 0.0 && v.re <= 0.0 {
            return Err(Error::OnBranchCut(names[k].clone()));
        }
        if let Some(rad) = opts.radius {
            if k < cs.x_index() && v.norm() >= rad {
                return Err(Error::Invalid(format!("start point has |{}| = {} ≥ {rad}", names[k], v.norm())));
            }
        }
    }
    let mut logs: Vec<Complex64> = vals.iter().map(|v| v.ln()).collect();
    let start_im: Vec<f64> = logs.iter().map(|l| l.im).collect();
    let base_dt = 1.0 / n as f64;
    let mut t = 0.0;
    let mut dt = base_dt;
    let mut samples = 0usize;
    while t < 1.0 {
        samples += 1;
        if samples > opts.max_samples {
            return Err(Error::SampleCap(opts.max_samples));
        }
        let t1 = (t + dt).min(1.0);
        let z1 = point(t1)?;
        let (d1, i1, j1) = nearest_pair(&z1);
        if d1 < 1e-10 {
            return Err(Error::HitsDiagonal(i1, j1));
        }
        let (dz, _, _) = nearest_pair(&z);
        let moved = z.iter().zip(&z1).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let vals1 = tracked(&cs, &z1)?;
        let turns: Vec<f64> = vals.iter().zip(&vals1).map(|(a, b)| (b / a).arg()).collect();
        if moved > 0.5 * dz || turns.iter().any(|a| a.abs() >= PI / 2.0) {
            dt /= 2.0;
            continue;
        }
        for ((l, b), a) in logs.iter_mut().zip(&vals1).zip(&turns) {
            *l = Complex64::new(b.norm().ln(), l.im + a);
        }
        z = z1;
        vals = vals1;
        t = t1;
        dt = (2.0 * dt).min(base_dt);
    }
    let nv = cs.vars().len();
    let value = s.evaluate_with_logs(&vals[..nv], &logs[..nv])?;
    Ok(Continuation {
        end: z.iter().map(|c| [c.re, c.im]).collect(),
        logs: names.iter().cloned().zip(logs.iter().map(|l| [l.re, l.im])).collect(),
        winding: names.iter().cloned().zip(logs.iter().zip(&start_im).map(|(l, s)| (l.im - s) / (2.0 * PI))).collect(),
        value: [value.re, value.im],
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{expand, RationalFunction};

    #[test]
    fn gamma_swaps_blocks() {
        let t: Tree = "1(2((34)(56)))".parse().unwrap();
        let z0: Vec<Complex64> = base_point(&t).unwrap().z.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let z1 = gamma_v_point(&t, "RR", 1.0, &z0, 1.0).unwrap();
        assert!((z1[2] - z0[4]).norm() < 1e-12 && (z1[3] - z0[5]).norm() < 1e-12);
        assert!((z1[5] - z0[3]).norm() < 1e-12 && (z1[0] - z0[0]).norm() < 1e-15);
        let half = gamma_v_point(&t, "RR", 1.0, &z0, 0.5).unwrap();
        assert!(half[3].im > 0.0 && half[5].im < 0.0);
        assert!(((half[3] - half[5]) - Complex64::i() * (z0[3] - z0[5])).norm() < 1e-12);
    }

    #[test]
    fn twice_around_winds_once() {
        let t: Tree = "1(2((34)(56)))".parse().unwrap();
        let cs = CoordinateSystem::new(&t).unwrap();
        let f: RationalFunction = "(z4-z6)^-1*(z3-z4)".parse().unwrap();
        let s = expand(&f, &cs, 4).unwrap();
        let path = PathSpec::GammaV { vertex: "46".into(), turns: 2.0, start: None };
        let c = continue_along_path(&s, &t, &path, &ContinueOptions::default()).unwrap();
        assert!((c.winding["x_RR"] - 1.0).abs() < 1e-9);
        assert!((c.winding["zeta_RR"] - 1.0).abs() < 1e-9);
        assert!((c.winding["zeta_RRL"] + 1.0).abs() < 1e-9);
        assert!(c.winding["zeta_R"].abs() < 1e-9);
    }

    #[test]
    fn parses_both_shapes() {
        let (p, t) = PathSpec::from_json_str(r#"{"builtin":"gamma_v","tree":"1(23)","vertex":"R"}"#).unwrap();
        assert_eq!(p, PathSpec::GammaV { vertex: "R".into(), turns: 1.0, start: None });
        assert_eq!(t.unwrap().to_string(), "1(23)");
        let (p, _) = PathSpec::from_json_str(r#"{"samples":[[1,[0,1]],[2,0]],"n":3}"#).unwrap();
        let PathSpec::Samples { points, n } = p else { panic!() };
        assert_eq!(n, 3);
        assert_eq!(points[0][1], Complex64::new(0.0, 1.0));
        assert!(PathSpec::from_json_str(r#"{"builtin":"loop"}"#).is_err());
    }
}
