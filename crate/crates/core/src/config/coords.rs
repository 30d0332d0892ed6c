use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::series::{LogPuiseuxSeries, Monomial, VarSet};
use crate::tree::{Tree, TreeAnalysis};

/// Order used for exact polynomials.
pub(crate) const EXACT: i64 = 1 << 40;

/// `P_ij = sign · M · (1 + h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factored {
    pub sign: i32,
    pub mono: Monomial,
    pub h: LogPuiseuxSeries,
}

/// A point of `X_r` in `A`-coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub z_a: Complex64,
    pub x_a: Complex64,
    /// One value per edge, in the order of [`CoordinateSystem::edges`].
    pub zeta: Vec<Complex64>,
}

impl ChartPoint {
    /// Values in variable order: every `ζ_e`, then `x`.
    pub fn values(&self) -> Vec<Complex64> {
        let mut v = self.zeta.clone();
        v.push(self.x_a);
        v
    }
}

/// `A`-coordinates `(z_A, x_A, ζ_e)` of a tree with at least two leaves.
///
/// Every difference is `z_i − z_j = x_A · P_ij(ζ)`, with `P_ij = Q_i − Q_j`
/// and `z_i = z_A + x_A Q_i(ζ)`.
#[derive(Debug)]
pub struct CoordinateSystem {
    tree: Tree,
    analysis: TreeAnalysis,
    vars: Arc<VarSet>,
    edges: Vec<String>,
    q: Vec<LogPuiseuxSeries>,
    factors: BTreeMap<(usize, usize), Factored>,
}

pub fn var_name(edge: &str) -> String {
    format!("zeta_{edge}")
}

pub const X_NAME: &str = "x";

impl CoordinateSystem {
    pub fn new(tree: &Tree) -> Result<Self> {
        Self::with_weights(tree, &BTreeMap::new())
    }

    /// Coordinates in which `ζ_e` has grading weight `weights[e]`
    /// (default 1).
    pub fn with_weights(tree: &Tree, weights: &BTreeMap<String, i64>) -> Result<Self> {
        let r = tree.size();
        if r < 2 {
            return Err(Error::Invalid(format!("coordinates need at least two leaves, got {r}")));
        }
        let analysis = tree.analyze();
        let edges = analysis.edge_names();
        let names: Vec<String> = edges.iter().map(|e| var_name(e)).collect();
        for e in weights.keys() {
            if !edges.contains(e) {
                return Err(Error::NoSuchVertex(e.clone()));
            }
        }
        let mut all = names.clone();
        all.push(X_NAME.to_string());
        let mut w: Vec<i64> = edges.iter().map(|e| *weights.get(e).unwrap_or(&1)).collect();
        if w.iter().any(|&k| k <= 0) {
            return Err(Error::Invalid("edge weights must be positive".into()));
        }
        w.push(0);
        let vars = VarSet::with_weights(all, w)?;
        let n = vars.len();
        let mono_of = |v: &str| {
            let mut m = Monomial::one(n);
            for (k, e) in edges.iter().enumerate() {
                if v.starts_with(e.as_str()) {
                    m.set_exp(k, Ratio::one());
                }
            }
            m
        };
        let mut q = vec![LogPuiseuxSeries::zero(vars.clone(), EXACT); r];
        for label in 1..=r {
            let path = tree.leaf_path(label).expect("label present");
            for (k, c) in path.char_indices() {
                if c == 'L' {
                    q[label - 1].add_term(mono_of(&path[..k]), Coefficient::one());
                }
            }
        }
        let mut factors = BTreeMap::new();
        for i in 1..=r {
            let pi = tree.leaf_path(i).unwrap();
            for j in i + 1..=r {
                let pj = tree.leaf_path(j).unwrap();
                let lca_len = pi.bytes().zip(pj.bytes()).take_while(|(a, b)| a == b).count();
                let lca = &pi[..lca_len];
                let sign = if pi.as_bytes()[lca_len] == b'L' { 1 } else { -1 };
                let mono = mono_of(lca);
                let diff = q[i - 1].sub(&q[j - 1])?;
                let mut h = LogPuiseuxSeries::zero(vars.clone(), EXACT);
                for (m, c) in diff.terms() {
                    let d = m.div(&mono).ok_or_else(|| Error::Invalid("lca monomial does not divide".into()))?;
                    h.add_term(d, c * &Coefficient::from(sign as i64));
                }
                h.add_term(Monomial::one(n), -Coefficient::one());
                factors.insert((i, j), Factored { sign, mono, h });
            }
        }
        Ok(CoordinateSystem { tree: tree.clone(), analysis, vars, edges, q, factors })
    }

    /// Shared instance per tree.
    pub fn cached(tree: &Tree) -> Result<Arc<Self>> {
        static CACHE: OnceLock<RwLock<HashMap<Tree, Arc<CoordinateSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(cs) = cache.read().unwrap().get(tree) {
            return Ok(cs.clone());
        }
        let cs = Arc::new(Self::new(tree)?);
        cache.write().unwrap().entry(tree.clone()).or_insert_with(|| cs.clone());
        Ok(cs)
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn analysis(&self) -> &TreeAnalysis {
        &self.analysis
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn r(&self) -> usize {
        self.tree.size()
    }

    /// Edge names in variable order.
    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn edge_index(&self, edge: &str) -> Result<usize> {
        self.edges.iter().position(|e| e == edge).ok_or_else(|| Error::NoSuchVertex(edge.to_string()))
    }

    pub fn x_index(&self) -> usize {
        self.edges.len()
    }

    /// `Q_i`, so that `z_i = z_A + x_A Q_i`.
    pub fn q(&self, i: usize) -> &LogPuiseuxSeries {
        &self.q[i - 1]
    }

    /// `P_ij` with `z_i − z_j = x_A P_ij`, for any `i ≠ j`.
    pub fn p(&self, i: usize, j: usize) -> Result<LogPuiseuxSeries> {
        self.check_pair(i, j)?;
        self.q[i - 1].sub(&self.q[j - 1])
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        let r = self.r();
        for k in [i, j] {
            if k == 0 || k > r {
                return Err(Error::IndexOutOfRange { index: k, max: r });
            }
        }
        if i == j {
            return Err(Error::Invalid(format!("z{i} - z{i} vanishes identically")));
        }
        Ok(())
    }

    /// Factored form of `P_ij`; swapping `i, j` flips the sign.
    pub fn factored(&self, i: usize, j: usize) -> Result<Factored> {
        self.check_pair(i, j)?;
        let f = &self.factors[&(i.min(j), i.max(j))];
        let mut f = f.clone();
        if i > j {
            f.sign = -f.sign;
        }
        Ok(f)
    }

    pub fn factors(&self) -> &BTreeMap<(usize, usize), Factored> {
        &self.factors
    }

    /// `Ψ_A`: `z_A = z_{r_A}`, `x_A = x_root`, `ζ_e = x_{d(e)} / x_{u(e)}`.
    pub fn psi(&self, z: &[Complex64]) -> Result<ChartPoint> {
        if z.len() != self.r() {
            return Err(Error::StrandMismatch(z.len(), self.r()));
        }
        let x = |v: &str| {
            let (l, r) = (self.analysis.left_leaf[v], self.analysis.right_leaf[v]);
            let d = z[l - 1] - z[r - 1];
            if d == Complex64::zero() {
                Err(Error::HitsDiagonal(l.min(r), l.max(r)))
            } else {
                Ok(d)
            }
        };
        let zeta = self
            .analysis
            .edges
            .iter()
            .map(|(u, d)| Ok(x(d)? / x(u)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChartPoint { z_a: z[self.analysis.r_a - 1], x_a: x("")?, zeta })
    }

    /// `Ψ_A^{-1}`: `z_i = z_A + x_A Q_i(ζ)`.
    pub fn psi_inv(&self, p: &ChartPoint) -> Result<Vec<Complex64>> {
        if p.zeta.len() != self.edges.len() {
            return Err(Error::VariableMismatch);
        }
        let mut vals = p.zeta.clone();
        vals.push(Complex64::one());
        self.q
            .iter()
            .map(|qi| Ok(p.z_a + p.x_a * qi.evaluate_with_logs(&vals, &vals)?))
            .collect()
    }

    /// Values of the variables by name.
    pub fn named(&self, p: &ChartPoint) -> BTreeMap<String, Complex64> {
        self.vars.names().iter().cloned().zip(p.values()).collect()
    }
}
