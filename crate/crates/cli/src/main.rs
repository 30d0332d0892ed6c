use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_rational::BigRational;
use operadlab::braid::{artin_equal, coherence_check, perm_compose, BraidWord, CheckOptions, PaBMorphism};
use operadlab::config::{admissible, base_point, degree, expand, expand_log, uniform_radii, CoordinateSystem, RationalFunction};
use operadlab::frobenius::{estimate_radius, radius_bound, solve, verify_residual, AnyOperator, EulerOperator, Scalar};
use operadlab::par::Parallelism;
use operadlab::perm::Permutation;
use operadlab::random::seed_from_env;
use operadlab::series::LogPuiseuxSeries;
use operadlab::transform::{
    alpha_reexpand, alpha_substitute, alpha_substitute_inverse, continue_along_path, double_twist, resolve_vertex,
    sigma_transform, ContinueOptions, PathSpec, Substituted,
};
use operadlab::tree::Tree;
use operadlab::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "operadlab", version, about = "Parenthesized braids, tree coordinates and their expansions")]
struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Truncation order for expansions.
    #[arg(long, global = true, default_value_t = 8, allow_negative_numbers = true)]
    order: i64,
    /// Uniform polydisk radius.
    #[arg(long, global = true, default_value = "1/10")]
    radius: String,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Binary trees and the magma operad.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Braid words and the permutation operad.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Parenthesized braid morphisms.
    #[command(subcommand)]
    Pab(PabCmd),
    /// Expands a rational function (or log(z_i − z_j)) in A-coordinates.
    Expand {
        tree: String,
        function: Option<String>,
        /// Expand log(z_i − z_j) given as `i,j` instead of a function.
        #[arg(long, conflicts_with = "function")]
        log: Option<String>,
    },
    /// Vanishing order of a function along an edge.
    Degree { tree: String, function: String, edge: String },
    /// Checks admissibility of polydisk radii.
    Admissible {
        tree: String,
        /// Per-edge radii `edge=value,...`; others use --radius.
        #[arg(long)]
        radii: Option<String>,
    },
    /// The base point of a tree.
    Basepoint { tree: String },
    /// Braid generators acting on expansions.
    #[command(subcommand)]
    Transform(TransformCmd),
    /// Euler-form ODEs and Frobenius series.
    #[command(subcommand)]
    Ode(OdeCmd),
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Parses and normalizes a parenthesized word.
    Parse { word: String },
    /// `A ∘_p B`; `∅` or an empty string is the empty tree.
    Compose { a: String, p: usize, b: String },
    /// Splits a tree into its shape and leaf permutation.
    Decompose { word: String },
    /// Reassociates `X(YZ)` at a vertex path into `(XY)Z`.
    Alpha {
        word: String,
        site: String,
        /// Apply the inverse move `(XY)Z → X(YZ)`.
        #[arg(long)]
        inverse: bool,
    },
    /// Swaps the subtrees below a vertex.
    Sigma { word: String, vertex: String },
}

#[derive(Subcommand)]
enum BraidCmd {
    /// Decides equality in the braid group.
    Equal {
        a: String,
        b: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Cables strand `p` into a bundle carrying a braid.
    Cable {
        word: String,
        p: usize,
        bundle: String,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long)]
        bundle_strands: Option<usize>,
    },
    /// `g ∘_p h` in the permutation operad.
    Perm { g: String, p: usize, h: String },
}

#[derive(Subcommand)]
enum PabCmd {
    /// Operadic composite `f ∘_p g` of morphisms written `SOURCE -> TARGET : BRAID`.
    Compose { f: String, p: usize, g: String },
    /// Runs a randomized coherence suite.
    Check {
        kind: String,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 6)]
        max_leaves: usize,
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Args)]
struct SeriesInput {
    /// A rational function, expanded at --order.
    function: Option<String>,
    /// A series in JSON form (path, or `-` for stdin).
    #[arg(long, conflicts_with = "function")]
    series: Option<String>,
}

#[derive(Subcommand)]
enum TransformCmd {
    /// Re-expands across the swap at a vertex.
    Sigma {
        tree: String,
        vertex: String,
        #[command(flatten)]
        input: SeriesInput,
    },
    /// Substitutes across the reassociation at a site.
    Alpha {
        tree: String,
        site: String,
        #[command(flatten)]
        input: SeriesInput,
        /// The input lives on the reassociated tree; map it back.
        #[arg(long)]
        inverse: bool,
        /// Expand the function afresh in both charts instead.
        #[arg(long, conflicts_with_all = ["inverse", "series"])]
        reexpand: bool,
    },
    /// Winds the difference at a vertex once around zero.
    Twist {
        tree: String,
        vertex: String,
        #[command(flatten)]
        input: SeriesInput,
    },
    /// Numeric analytic continuation along a path.
    Continue {
        tree: String,
        #[command(flatten)]
        input: SeriesInput,
        /// Path JSON, inline or as a file path.
        #[arg(long)]
        path: String,
        #[arg(long, default_value_t = 200_000)]
        max_samples: usize,
    },
}

#[derive(Subcommand)]
enum OdeCmd {
    /// Frobenius recursion for a series solution.
    Solve {
        operator: String,
        #[arg(long, default_value = "0")]
        h: String,
        #[arg(long, default_value = "1")]
        c0: String,
    },
    /// Residual check of a candidate solution.
    Verify { operator: String, candidate: String },
    /// Radius of convergence: the exact bound with --b, an estimate otherwise.
    Radius {
        operator: String,
        #[arg(long, default_value = "0")]
        h: String,
        #[arg(long)]
        b: Option<String>,
        #[arg(long, default_value_t = 1000)]
        m_cap: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<(String, Value), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn tree(s: &str) -> Result<Tree, Failure> {
    Ok(Tree::parse_allow_empty(s)?)
}

fn nonempty_tree(s: &str) -> Result<Tree, Failure> {
    let t = tree(s)?;
    if t.is_empty() {
        return Err(usage("the tree must have at least one leaf"));
    }
    Ok(t)
}

fn rational(s: &str, what: &str) -> Result<BigRational, Failure> {
    s.trim().parse().map_err(|_| usage(format!("{what} must be a rational like 1/10, got {s:?}")))
}

/// Reads `s` as a file when it names one, otherwise as inline text.
fn text_or_file(s: &str) -> Result<String, Failure> {
    if s == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| usage(format!("stdin: {e}")));
    }
    match std::fs::read_to_string(s) {
        Ok(t) => Ok(t),
        Err(_) if s.trim_start().starts_with(['{', '[']) => Ok(s.to_string()),
        Err(e) => Err(usage(format!("{s}: {e}"))),
    }
}

fn function(s: &str) -> Result<RationalFunction, Failure> {
    Ok(s.parse()?)
}

fn series_input(input: &SeriesInput, t: &Tree, order: i64) -> Result<LogPuiseuxSeries, Failure> {
    match (&input.function, &input.series) {
        (Some(f), None) => {
            let cs = CoordinateSystem::cached(t)?;
            Ok(expand(&function(f)?, &cs, order)?)
        }
        (None, Some(path)) => Ok(LogPuiseuxSeries::from_json_str(&text_or_file(path)?)?),
        _ => Err(usage("give a function or --series")),
    }
}

fn series_out(s: &LogPuiseuxSeries) -> (String, Value) {
    (s.to_string(), s.to_json())
}

fn braid(s: &str, r: Option<usize>) -> Result<BraidWord, Failure> {
    Ok(match r {
        Some(r) => BraidWord::parse(r, s)?,
        None => s.parse()?,
    })
}

fn morphism(s: &str) -> Result<PaBMorphism, Failure> {
    let bad = || usage(format!("expected SOURCE -> TARGET : BRAID, got {s:?}"));
    let (src, rest) = s.split_once("->").ok_or_else(bad)?;
    let (tgt, word) = rest.split_once(':').ok_or_else(bad)?;
    let (src, tgt) = (tree(src.trim())?, tree(tgt.trim())?);
    let b = BraidWord::parse(src.size(), word)?;
    Ok(PaBMorphism::new(src, tgt, b)?)
}

fn morphism_text(m: &PaBMorphism) -> String {
    format!("{} -> {} : {}", m.source, m.target, m.braid)
}

fn run_tree(cmd: &TreeCmd) -> Out {
    match cmd {
        TreeCmd::Parse { word } => {
            let t = tree(word)?;
            let a = t.analyze();
            let v = json!({
                "tree": t, "size": t.size(), "leaves": t.leaves(),
                "vertices": a.vertices, "alpha_sites": a.alpha_sites(&t),
            });
            Ok((t.to_string(), v))
        }
        TreeCmd::Compose { a, p, b } => {
            let c = nonempty_tree(a)?.compose(*p, &tree(b)?)?;
            Ok((c.to_string(), json!({ "tree": c })))
        }
        TreeCmd::Decompose { word } => {
            let (w, g) = tree(word)?.decompose();
            Ok((format!("{w} {g}"), json!({ "shape": w, "permutation": g.as_slice() })))
        }
        TreeCmd::Alpha { word, site, inverse } => {
            let t = nonempty_tree(word)?;
            let out = if *inverse { t.alpha_source(site)? } else { t.alpha_target(site)? };
            Ok((out.to_string(), json!({ "tree": out })))
        }
        TreeCmd::Sigma { word, vertex } => {
            let t = nonempty_tree(word)?;
            let v = resolve_vertex(&t, vertex)?;
            let out = t.sigma_target(&v)?;
            Ok((out.to_string(), json!({ "tree": out, "vertex": v })))
        }
    }
}

fn run_braid(cmd: &BraidCmd) -> Out {
    match cmd {
        BraidCmd::Equal { a, b, strands } => {
            let (x, y) = (braid(a, *strands)?, braid(b, *strands)?);
            let r = strands.unwrap_or(x.strands().max(y.strands()));
            let eq = artin_equal(&BraidWord::parse(r, a)?, &BraidWord::parse(r, b)?)?;
            Ok((eq.to_string(), json!({ "equal": eq, "strands": r })))
        }
        BraidCmd::Cable { word, p, bundle, strands, bundle_strands } => {
            let out = braid(word, *strands)?.cable(*p, &braid(bundle, *bundle_strands)?)?;
            Ok((out.to_string(), json!({ "braid": out.to_string(), "strands": out.strands(), "word": out.word() })))
        }
        BraidCmd::Perm { g, p, h } => {
            let parse = |s: &str| -> Result<Permutation, Failure> {
                if s.trim().is_empty() || s.trim() == "∅" {
                    Ok(Permutation::identity(0))
                } else {
                    Ok(s.parse()?)
                }
            };
            let out = perm_compose(&parse(g)?, *p, &parse(h)?)?;
            Ok((out.to_string(), json!({ "permutation": out.as_slice() })))
        }
    }
}

fn run_pab(cmd: &PabCmd) -> Out {
    match cmd {
        PabCmd::Compose { f, p, g } => {
            let m = morphism(f)?.compose(*p, &morphism(g)?)?;
            let text = morphism_text(&m);
            Ok((text, json!({ "source": m.source, "target": m.target, "braid": m.braid.to_string() })))
        }
        PabCmd::Check { kind, instances, max_leaves, sequential } => {
            let kind = kind.parse().map_err(|e: Error| usage(e.to_string()))?;
            let mode = if *sequential { Parallelism::Sequential } else { Parallelism::Parallel };
            let opts = CheckOptions { seed: seed_from_env(0), instances: *instances, max_leaves: *max_leaves, mode };
            let report = coherence_check(kind, &opts);
            let mut text = if report.passed() { "PASS".to_string() } else { "FAIL".to_string() };
            for f in &report.failures {
                text.push('\n');
                text.push_str(f);
            }
            let v = serde_json::to_value(&report).map_err(Error::from)?;
            if report.passed() {
                Ok((text, v))
            } else {
                Err(Failure::Domain(Error::Invalid(format!("{kind} check failed: {}", text.replace('\n', "; ")))))
            }
        }
    }
}

fn radii(cs: &CoordinateSystem, uniform: &BigRational, spec: Option<&str>) -> Result<BTreeMap<String, BigRational>, Failure> {
    let mut out = uniform_radii(cs, uniform);
    for item in spec.unwrap_or("").split(',').filter(|s| !s.trim().is_empty()) {
        let (e, v) = item.split_once('=').ok_or_else(|| usage(format!("expected edge=value, got {item:?}")))?;
        let e = e.trim();
        if !out.contains_key(e) {
            return Err(Failure::Domain(Error::NoSuchVertex(e.to_string())));
        }
        out.insert(e.to_string(), rational(v, "radius")?);
    }
    Ok(out)
}

fn substituted_out(s: &Substituted) -> (String, Value) {
    let valid = match s.validity_order {
        Some(n) => format!("valid through degree {n}"),
        None => "validity: none (truncated input changes degree)".to_string(),
    };
    (format!("{}\n{valid}", s.series), json!({ "series": s.series.to_json(), "validity_order": s.validity_order }))
}

fn run_transform(cmd: &TransformCmd, order: i64) -> Out {
    match cmd {
        TransformCmd::Sigma { tree: t, vertex, input } => {
            let t = nonempty_tree(t)?;
            let s = series_input(input, &t, order)?;
            Ok(series_out(&sigma_transform(&s, &t, vertex, order)?))
        }
        TransformCmd::Alpha { tree: t, site, input, inverse, reexpand } => {
            let t = nonempty_tree(t)?;
            if *reexpand {
                let f = input.function.as_deref().ok_or_else(|| usage("--reexpand needs a function"))?;
                let (a, b) = alpha_reexpand(&function(f)?, &t, site, order)?;
                return Ok((format!("{a}\n{b}"), json!({ "source": a.to_json(), "target": b.to_json() })));
            }
            if *inverse {
                let s = series_input(input, &t.alpha_target(site)?, order)?;
                return Ok(substituted_out(&alpha_substitute_inverse(&s, &t, site, order)?));
            }
            let s = series_input(input, &t, order)?;
            Ok(substituted_out(&alpha_substitute(&s, &t, site, order)?))
        }
        TransformCmd::Twist { tree: t, vertex, input } => {
            let t = nonempty_tree(t)?;
            let s = series_input(input, &t, order)?;
            Ok(series_out(&double_twist(&s, &t, vertex)?))
        }
        TransformCmd::Continue { tree: t, input, path, max_samples } => {
            let t = nonempty_tree(t)?;
            let (spec, path_tree) = PathSpec::from_json_str(&text_or_file(path)?)?;
            if let Some(pt) = path_tree {
                if pt != t {
                    return Err(Failure::Domain(Error::Incompatible(format!("path is for {pt}, not {t}"))));
                }
            }
            let s = series_input(input, &t, order)?;
            let c = continue_along_path(&s, &t, &spec, &ContinueOptions { max_samples: *max_samples, radius: None })?;
            let mut text = format!("value {:.12} {:+.12}i", c.value[0], c.value[1]);
            for (k, w) in &c.winding {
                text.push_str(&format!("\nwinding {k} {w:.6}"));
            }
            Ok((text, serde_json::to_value(&c).map_err(Error::from)?))
        }
    }
}

fn operator(s: &str) -> Result<AnyOperator, Failure> {
    Ok(AnyOperator::from_json_str(&text_or_file(s)?)?)
}

fn complex_arg(s: &str) -> Result<Complex64, Failure> {
    if let Ok(q) = s.trim().parse::<BigRational>() {
        return Ok(Complex64::from_rational(&q));
    }
    s.trim().parse().map_err(|_| usage(format!("expected a number, got {s:?}")))
}

fn scalar_json_q(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

fn scalar_json_c(c: &Complex64) -> Value {
    json!([c.re, c.im])
}

fn solve_out<T: Scalar>(op: &EulerOperator<T>, h: &BigRational, c0: T, order: usize, show: impl Fn(&T) -> Value) -> Out {
    let s = solve(op, h, c0, order)?;
    let residual = verify_residual(op, &s.terms(), order);
    let coeffs: Vec<Value> = s.coeffs.iter().map(&show).collect();
    let text = coeffs.iter().enumerate().map(|(l, c)| format!("c{l} = {}", c.to_string().trim_matches('"'))).collect::<Vec<_>>().join("\n");
    Ok((text, json!({ "h": h.to_string(), "coeffs": coeffs, "residual": residual })))
}

/// Candidate terms `[[exponent, log power, coefficient], ...]`.
fn candidate(v: &Value) -> Result<Vec<(BigRational, u32, Value)>, Failure> {
    let bad = |x: &Value| Failure::Domain(Error::Json(format!("expected [exponent, log power, coefficient], got {x}")));
    v.as_array()
        .ok_or_else(|| bad(v))?
        .iter()
        .map(|t| {
            let a = t.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad(t))?;
            let h = match &a[0] {
                Value::String(s) => s.parse().map_err(|_| bad(t))?,
                Value::Number(n) if n.is_i64() => BigRational::from_integer(n.as_i64().unwrap().into()),
                _ => return Err(bad(t)),
            };
            let k = a[1].as_u64().ok_or_else(|| bad(t))? as u32;
            Ok((h, k, a[2].clone()))
        })
        .collect()
}

fn coeff_q(v: &Value) -> Option<BigRational> {
    match v {
        Value::String(s) => s.trim().parse().ok(),
        Value::Number(n) if n.is_i64() => Some(BigRational::from_integer(n.as_i64().unwrap().into())),
        _ => None,
    }
}

fn coeff_c(v: &Value) -> Option<Complex64> {
    match v {
        Value::Number(n) => n.as_f64().map(|x| Complex64::new(x, 0.0)),
        Value::Array(a) if a.len() == 2 => Some(Complex64::new(a[0].as_f64()?, a[1].as_f64()?)),
        _ => coeff_q(v).map(|q| Complex64::from_rational(&q)),
    }
}

fn run_ode(cmd: &OdeCmd, order: i64, radius: &str) -> Out {
    let n = usize::try_from(order).map_err(|_| usage("--order must be non-negative for ode"))?;
    match cmd {
        OdeCmd::Solve { operator: o, h, c0 } => {
            let h = rational(h, "--h")?;
            match operator(o)? {
                AnyOperator::Exact(op) => solve_out(&op, &h, rational(c0, "--c0")?, n, scalar_json_q),
                AnyOperator::Numeric(op) => solve_out(&op, &h, complex_arg(c0)?, n, scalar_json_c),
            }
        }
        OdeCmd::Verify { operator: o, candidate: c } => {
            let cand: Value = serde_json::from_str(&text_or_file(c)?).map_err(Error::from)?;
            let terms = candidate(&cand)?;
            let bad = || Failure::Domain(Error::Json("candidate coefficient does not match the operator".into()));
            let r = match operator(o)? {
                AnyOperator::Exact(op) => {
                    let t = terms.into_iter().map(|(h, k, c)| coeff_q(&c).map(|q| (h, k, q))).collect::<Option<Vec<_>>>().ok_or_else(bad)?;
                    verify_residual(&op, &t, n)
                }
                AnyOperator::Numeric(op) => {
                    let t = terms.into_iter().map(|(h, k, c)| coeff_c(&c).map(|z| (h, k, z))).collect::<Option<Vec<_>>>().ok_or_else(bad)?;
                    verify_residual(&op, &t, n)
                }
            };
            let text = match &r.lowest {
                None => format!("PASS (window {})", r.window),
                Some(e) => format!("FAIL at exponent {e} (window {})", r.window),
            };
            Ok((text, serde_json::to_value(&r).map_err(Error::from)?))
        }
        OdeCmd::Radius { operator: o, h, b, m_cap } => {
            let op = operator(o)?;
            let big_n = match &op {
                AnyOperator::Exact(op) => op.n,
                AnyOperator::Numeric(op) => op.n,
            };
            let r = rational(radius, "--radius")?;
            if let Some(b) = b {
                let bound = radius_bound(big_n, &r, &rational(b, "--b")?)?;
                return Ok((bound.to_string(), json!({ "bound": bound.to_string(), "heuristic": false })));
            }
            let h = rational(h, "--h")?;
            let rf = Complex64::from_rational(&r).re;
            let e = match &op {
                AnyOperator::Exact(op) => estimate_radius(op, &h, rf, *m_cap)?,
                AnyOperator::Numeric(op) => estimate_radius(op, &h, rf, *m_cap)?,
            };
            let text = format!("{:.6} (heuristic; B = {}, M = {}, C = {:.6})", e.bound, e.b, e.m, e.c);
            Ok((text, serde_json::to_value(&e).map_err(Error::from)?))
        }
    }
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Tree(c) => run_tree(c),
        Cmd::Braid(c) => run_braid(c),
        Cmd::Pab(c) => run_pab(c),
        Cmd::Expand { tree: t, function: f, log } => {
            let t = nonempty_tree(t)?;
            let cs = CoordinateSystem::cached(&t)?;
            let s = match (f, log) {
                (Some(f), None) => expand(&function(f)?, &cs, cli.order)?,
                (None, Some(pair)) => {
                    let (i, j) = pair
                        .split_once(',')
                        .and_then(|(i, j)| Some((i.trim().parse().ok()?, j.trim().parse().ok()?)))
                        .ok_or_else(|| usage(format!("--log expects i,j, got {pair:?}")))?;
                    expand_log(i, j, &cs, cli.order)?
                }
                _ => return Err(usage("give a function or --log i,j")),
            };
            Ok(series_out(&s))
        }
        Cmd::Degree { tree: t, function: f, edge } => {
            let cs = CoordinateSystem::cached(&nonempty_tree(t)?)?;
            let d = degree(&function(f)?, &cs, edge, cli.order)?;
            let text = if d.certified { d.degree.to_string() } else { format!("{} (uncertified)", d.degree) };
            Ok((text, serde_json::to_value(d).map_err(Error::from)?))
        }
        Cmd::Admissible { tree: t, radii: spec } => {
            let cs = CoordinateSystem::cached(&nonempty_tree(t)?)?;
            let p = radii(&cs, &rational(&cli.radius, "--radius")?, spec.as_deref())?;
            let res = admissible(&cs, &p)?;
            let mut text = res.status().to_string();
            for i in res.certificate() {
                text.push_str(&format!("\n{} = {} {} 1", i.lhs, i.value, if i.holds { "<" } else { ">=" }));
            }
            Ok((text, serde_json::to_value(&res).map_err(Error::from)?))
        }
        Cmd::Basepoint { tree: t } => {
            let b = base_point(&nonempty_tree(t)?)?;
            let mut text = b.exact.join(" ");
            if let Some(r) = &b.radius {
                text.push_str(&format!("\nradius {r}"));
            }
            Ok((text, serde_json::to_value(&b).map_err(Error::from)?))
        }
        Cmd::Transform(c) => run_transform(c, cli.order),
        Cmd::Ode(c) => run_ode(c, cli.order, &cli.radius),
    }
}

/// Writes a line to stdout, treating a closed pipe as a normal exit.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, v)) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&v).expect("values serialize"));
            } else {
                emit(&text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (status, code, msg) = match f {
                Failure::Usage(m) => (2, "E_USAGE", m),
                Failure::Domain(e) => (1, e.code(), e.to_string()),
            };
            if cli.json {
                emit(&json!({ "error": { "code": code, "message": msg } }).to_string());
            } else {
                eprintln!("error[{code}]: {msg}");
            }
            ExitCode::from(status)
        }
    }
}
