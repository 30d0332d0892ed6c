//! The braid generators acting on expansions: `σ_v` with its monodromy
//! phases, the double twist, the reassociation `α_e`, and numeric analytic
//! continuation along explicit paths.

mod path;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::config::{expand, leading_degree, EXACT, CoordinateSystem, RationalFunction, X_NAME};
use crate::error::{Error, Result};
use crate::series::substitute::{substitute, VarImage};
use crate::series::LogPuiseuxSeries;
use crate::tree::Tree;

pub use path::{continue_along_path, gamma_v_point, Continuation, ContinueOptions, PathSpec};

/// Accepts a vertex path (`"RR"`, `""`) or the pair of leaves `L(v), R(v)`
/// written `"46"` or `"4,6"`.
pub fn resolve_vertex(tree: &Tree, name: &str) -> Result<String> {
    if name.chars().all(|c| c == 'L' || c == 'R') {
        return if tree.is_vertex(name) { Ok(name.to_string()) } else { Err(Error::NoSuchVertex(name.to_string())) };
    }
    let pair: Option<(usize, usize)> = if let Some((a, b)) = name.split_once(',') {
        a.trim().parse().ok().zip(b.trim().parse().ok())
    } else if name.len() == 2 && name.chars().all(|c| c.is_ascii_digit()) {
        let d: Vec<usize> = name.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
        Some((d[0], d[1]))
    } else {
        None
    };
    let a = tree.analyze();
    pair.and_then(|(l, r)| a.vertices.iter().find(|v| a.left_leaf[*v] == l && a.right_leaf[*v] == r).cloned())
        .ok_or_else(|| Error::NoSuchVertex(name.to_string()))
}

/// The chart variable `v` of `cs` as a function on configuration space:
/// `ζ_e = x_{d(e)} / x_{u(e)}`, or `x_A`.
pub fn variable_function(cs: &CoordinateSystem, v: usize) -> Result<RationalFunction> {
    let a = cs.analysis();
    let r = cs.r();
    let x = |p: &str, k: i64| RationalFunction::difference_power(r, a.left_leaf[p], a.right_leaf[p], k);
    if v == cs.x_index() {
        return x("", 1);
    }
    let (u, d) = a.edges.get(v).ok_or_else(|| Error::Invalid(format!("no variable {v}")))?;
    x(d, 1)?.mul(&x(u, -1)?)
}

fn coords_for(tree: &Tree, s: &LogPuiseuxSeries) -> Result<Arc<CoordinateSystem>> {
    let vars = s.vars();
    let mut weights = BTreeMap::new();
    for (name, &w) in vars.names().iter().zip(vars.weights()) {
        if let Some(e) = name.strip_prefix("zeta_") {
            if w != 1 {
                weights.insert(e.to_string(), w);
            }
        }
    }
    let cs = if weights.is_empty() {
        CoordinateSystem::cached(tree)?
    } else {
        Arc::new(CoordinateSystem::with_weights(tree, &weights)?)
    };
    if cs.vars().names() != vars.names() {
        return Err(Error::VariableMismatch);
    }
    Ok(cs)
}

/// Rewrites a series in the coordinates of `from` as one in the
/// coordinates of `to`, both charts of the same configuration space.
/// Variable `v` acquires the branch `e^{iπ phase(v)}` on its leading sign.
///
/// The second component is true when every variable that occurs is sent to
/// a series whose leading monomial has the variable's own degree; then
/// truncation commutes with the substitution and the result is capped at
/// the order of `s`.
pub fn change_chart(
    s: &LogPuiseuxSeries,
    from: &CoordinateSystem,
    to: &CoordinateSystem,
    order: i64,
    phase: impl Fn(usize) -> Ratio<i64>,
) -> Result<(LogPuiseuxSeries, bool)> {
    if s.vars().names() != from.vars().names() {
        return Err(Error::VariableMismatch);
    }
    let fw = from.vars().weights();
    let mut preserves = true;
    for (v, &w) in fw.iter().enumerate() {
        if s.terms().keys().any(|m| !m.exp(v).is_zero()) {
            let d = leading_degree(&variable_function(from, v)?, to)?.unwrap_or_default();
            preserves &= d == Ratio::from_integer(w);
        }
    }
    let out = substitute(s, to.vars(), order, |v, rel| {
        let g = variable_function(from, v)?;
        let dm = leading_degree(&g, to)?.unwrap_or_default();
        let n = (rel + dm).ceil().to_integer();
        let img = expand(&g, to, n)?;
        VarImage::from_series(&img, phase(v)).map_err(|e| match e {
            Error::Invalid(m) => Error::Invalid(format!("variable {}: {m}", from.vars().names()[v])),
            e => e,
        })
    })?;
    if preserves && s.order() < order {
        return Ok((out.with_order(s.order()), true));
    }
    Ok((out, preserves))
}

/// `σ_{v0}^{alg}`: from `A`-coordinates to `σ_{v0}A`-coordinates. The edge
/// with lower vertex `v0` picks up `e^{iπ}`, the edges just below `v0` pick
/// up `e^{−iπ}`, and `x_A` picks up `e^{iπ}` when `v0` is the root.
pub fn sigma_transform(s: &LogPuiseuxSeries, tree: &Tree, v0: &str, order: i64) -> Result<LogPuiseuxSeries> {
    let v0 = resolve_vertex(tree, v0)?;
    let from = coords_for(tree, s)?;
    if from.vars().weights()[..from.x_index()].iter().any(|&w| w != 1) {
        return Err(Error::Invalid("sigma_transform expects the standard grading".into()));
    }
    let to = CoordinateSystem::cached(&tree.sigma_target(&v0)?)?;
    let edges = from.analysis().edges.clone();
    let xi = from.x_index();
    let (out, preserves) = change_chart(s, &from, &to, order, |v| {
        if v == xi {
            return Ratio::from_integer(if v0.is_empty() { 1 } else { 0 });
        }
        let (u, d) = &edges[v];
        Ratio::from_integer(if *d == v0 {
            1
        } else if *u == v0 {
            -1
        } else {
            0
        })
    })?;
    debug_assert!(preserves);
    Ok(out)
}

/// `σ_{v0}²`: `x_{v0}` winds once around zero and everything else stays.
pub fn double_twist(s: &LogPuiseuxSeries, tree: &Tree, v0: &str) -> Result<LogPuiseuxSeries> {
    let v0 = resolve_vertex(tree, v0)?;
    let cs = coords_for(tree, s)?;
    let edges = cs.analysis().edges.clone();
    let vars = s.vars().clone();
    let xi = cs.x_index();
    substitute(s, &vars, s.order(), |v, _| {
        let mut img = VarImage::identity(&vars, &vars.names()[v])?;
        let q = if v == xi {
            if v0.is_empty() {
                2
            } else {
                0
            }
        } else if edges[v].1 == v0 {
            2
        } else if edges[v].0 == v0 {
            -2
        } else {
            0
        };
        img.phase = Ratio::from_integer(q);
        Ok(img)
    })
}

/// `e_A(f)` and `e_{α_e A}(f)`.
pub fn alpha_reexpand(
    f: &RationalFunction,
    tree: &Tree,
    site: &str,
    order: i64,
) -> Result<(LogPuiseuxSeries, LogPuiseuxSeries)> {
    let target = tree.alpha_target(site)?;
    let (a, b) = (CoordinateSystem::cached(tree)?, CoordinateSystem::cached(&target)?);
    Ok((expand(f, &a, order)?, expand(f, &b, order)?))
}

/// Like [`alpha_reexpand`], but in both charts the variable that stays of
/// moderate size on the overlap (the edge to `YZ` in `A`, to `XY` in
/// `α_e A`) keeps weight 1 and every other `ζ` gets weight `weight`.
pub fn alpha_reexpand_weighted(
    f: &RationalFunction,
    tree: &Tree,
    site: &str,
    order: i64,
    weight: i64,
) -> Result<(LogPuiseuxSeries, LogPuiseuxSeries)> {
    let target = tree.alpha_target(site)?;
    let chart = |t: &Tree, focus: String| -> Result<CoordinateSystem> {
        let w = t.analyze().edge_names().into_iter().filter(|e| *e != focus).map(|e| (e, weight)).collect();
        CoordinateSystem::with_weights(t, &w)
    };
    let a = chart(tree, format!("{site}R"))?;
    let b = chart(&target, format!("{site}L"))?;
    Ok((expand(f, &a, order)?, expand(f, &b, order)?))
}

/// A formally substituted series. `validity_order` is the degree up to
/// which the terms are those of the true re-expansion. It is `None` when the
/// input is truncated and some variable it uses is sent to a lower degree
/// (the overlap variable goes to degree 0), since the discarded tail then
/// contributes in every degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Substituted {
    pub series: LogPuiseuxSeries,
    pub validity_order: Option<i64>,
}

fn substituted(s: &LogPuiseuxSeries, (series, preserves): (LogPuiseuxSeries, bool), order: i64) -> Substituted {
    let validity_order = (preserves || s.order() >= EXACT).then(|| order.min(s.order()));
    Substituted { series, validity_order }
}

/// Formal `ρ(α_e)`: from `A`-coordinates to `α_e A`-coordinates.
pub fn alpha_substitute(s: &LogPuiseuxSeries, tree: &Tree, site: &str, order: i64) -> Result<Substituted> {
    let from = coords_for(tree, s)?;
    let to = CoordinateSystem::cached(&tree.alpha_target(site)?)?;
    Ok(substituted(s, change_chart(s, &from, &to, order, |_| Ratio::zero())?, order))
}

/// Formal inverse of [`alpha_substitute`]: `s` lives on `α_e A` and the
/// result on `A`.
pub fn alpha_substitute_inverse(s: &LogPuiseuxSeries, tree: &Tree, site: &str, order: i64) -> Result<Substituted> {
    let target = tree.alpha_target(site)?;
    let from = coords_for(&target, s)?;
    let to = CoordinateSystem::cached(tree)?;
    Ok(substituted(s, change_chart(s, &from, &to, order, |_| Ratio::zero())?, order))
}

/// Name of the tracked quantity `x_v`.
pub fn vertex_quantity(v: &str) -> String {
    if v.is_empty() {
        X_NAME.to_string()
    } else {
        format!("x_{v}")
    }
}
