use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use super::pab::PaBMorphism;
use super::word::{artin_equal, BraidWord};
use crate::error::{Error, Result};
use crate::par::{map_range, Parallelism};
use crate::random::rng_for;
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoherenceKind {
    Pentagon,
    Hexagon,
    OperadAssociativity,
    Equivariance,
}

impl FromStr for CoherenceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pentagon" => Ok(CoherenceKind::Pentagon),
            "hexagon" => Ok(CoherenceKind::Hexagon),
            "operad-associativity" | "associativity" => Ok(CoherenceKind::OperadAssociativity),
            "equivariance" => Ok(CoherenceKind::Equivariance),
            _ => Err(Error::Invalid(format!("unknown coherence kind {s:?}"))),
        }
    }
}

impl fmt::Display for CoherenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoherenceKind::Pentagon => "pentagon",
            CoherenceKind::Hexagon => "hexagon",
            CoherenceKind::OperadAssociativity => "operad-associativity",
            CoherenceKind::Equivariance => "equivariance",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub kind: CoherenceKind,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Options for the randomized checks.
#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub seed: u64,
    pub instances: usize,
    pub max_leaves: usize,
    pub mode: Parallelism,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { seed: 0, instances: 100, max_leaves: 6, mode: Parallelism::Parallel }
    }
}

pub fn coherence_check(kind: CoherenceKind, opts: &CheckOptions) -> CoherenceReport {
    let (checked, failures) = match kind {
        CoherenceKind::Pentagon => pentagon(),
        CoherenceKind::Hexagon => hexagon(),
        CoherenceKind::OperadAssociativity => collect(opts, associativity_instance),
        CoherenceKind::Equivariance => collect(opts, equivariance_instance),
    };
    CoherenceReport { kind, checked, failures }
}

fn chain(start: &Tree, steps: &[(&str, &str)]) -> Result<PaBMorphism> {
    let mut m = PaBMorphism::identity(start);
    for (op, site) in steps {
        let step = match *op {
            "alpha" => PaBMorphism::alpha(&m.target, site)?,
            "alpha-inv" => PaBMorphism::alpha_inverse(&m.target, site)?,
            "sigma" => PaBMorphism::sigma(&m.target, site)?,
            _ => unreachable!(),
        };
        m = m.then(&step)?;
    }
    Ok(m)
}

fn pentagon() -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let start: Tree = "((12)3)4".parse().unwrap();
    let end: Tree = "1(2(34))".parse().unwrap();
    let short = chain(&start, &[("alpha-inv", ""), ("alpha-inv", "")]);
    let long = chain(&start, &[("alpha-inv", "L"), ("alpha-inv", ""), ("alpha-inv", "R")]);
    match (short, long) {
        (Ok(s), Ok(l)) => {
            for (name, m) in [("two-step", &s), ("three-step", &l)] {
                if m.target != end {
                    failures.push(format!("{name} chain ends at {}", m.target));
                }
                if !m.braid.is_empty() {
                    failures.push(format!("{name} chain braid {} is not the identity", m.braid));
                }
            }
            if !matches!(artin_equal(&s.braid, &l.braid), Ok(true)) {
                failures.push("pentagon braids differ".into());
            }
        }
        (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
    }
    (1, failures)
}

fn hexagon() -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut check = |name: &str, block: Result<PaBMorphism>, path: Result<PaBMorphism>, expected: &[i32]| {
        match (block, path) {
            (Ok(b), Ok(p)) => {
                if b.source != p.source || b.target != p.target {
                    failures.push(format!("{name}: endpoints differ ({}→{} vs {}→{})", b.source, b.target, p.source, p.target));
                }
                if !matches!(artin_equal(&b.braid, &p.braid), Ok(true)) {
                    failures.push(format!("{name}: braids {} and {} differ", b.braid, p.braid));
                }
                let e = BraidWord::new(3, expected.to_vec()).unwrap();
                if !matches!(artin_equal(&b.braid, &e), Ok(true)) {
                    failures.push(format!("{name}: block crossing {} is not {}", b.braid, e));
                }
            }
            (Err(e), _) | (_, Err(e)) => failures.push(format!("{name}: {e}")),
        }
    };
    // Block {1,2} crossing over strand 3, against two single crossings.
    let a: Tree = "(12)3".parse().unwrap();
    check(
        "bundle over strand",
        PaBMorphism::sigma(&a, ""),
        chain(&a, &[("alpha-inv", ""), ("sigma", "R"), ("alpha", ""), ("sigma", "L"), ("alpha-inv", "")]),
        &[2, 1],
    );
    // Strand 1 crossing over block {2,3}.
    let b: Tree = "1(23)".parse().unwrap();
    check(
        "strand over bundle",
        PaBMorphism::sigma(&b, ""),
        chain(&b, &[("alpha", ""), ("sigma", "L"), ("alpha-inv", ""), ("sigma", "R"), ("alpha", "")]),
        &[1, 2],
    );
    (2, failures)
}

fn collect(opts: &CheckOptions, f: fn(&mut rand_chacha::ChaCha8Rng, usize) -> Option<String>) -> (usize, Vec<String>) {
    let results = map_range(opts.mode, opts.instances, |k| {
        let mut rng = rng_for(opts.seed, k as u64);
        f(&mut rng, opts.max_leaves.max(2))
    });
    (opts.instances, results.into_iter().flatten().collect())
}

/// Both associativity shapes for trees and for PaB morphisms.
fn associativity_instance(rng: &mut rand_chacha::ChaCha8Rng, max_r: usize) -> Option<String> {
    let ra = rng.gen_range(1..=max_r.min(4));
    let rb = rng.gen_range(1..=max_r.min(3));
    let rc = rng.gen_range(0..=max_r.min(3));
    let f = PaBMorphism::random(ra, 4, rng);
    let g = PaBMorphism::random(rb, 3, rng);
    let h = if rc == 0 { PaBMorphism::identity(&Tree::empty()) } else { PaBMorphism::random(rc, 3, rng) };
    let p = rng.gen_range(1..=ra);
    let fg = match f.compose(p, &g) {
        Ok(x) => x,
        Err(e) => return Some(format!("f∘g: {e}")),
    };
    let q = rng.gen_range(1..=fg.source.size());
    let lhs = match fg.compose(q, &h) {
        Ok(x) => x,
        Err(e) => return Some(format!("(f∘g)∘h: {e}")),
    };
    let rh = h.source.size();
    let rhs = if q < p {
        f.compose(q, &h).and_then(|fh| fh.compose(p + rh - 1, &g))
    } else if q < p + rb {
        g.compose(q - p + 1, &h).and_then(|gh| f.compose(p, &gh))
    } else {
        f.compose(q - rb + 1, &h).and_then(|fh| fh.compose(p, &g))
    };
    match rhs {
        Ok(r) => match lhs.equivalent(&r) {
            Ok(true) => None,
            Ok(false) => Some(format!("associativity fails for {}∘_{p}{} then ∘_{q}{}", f.source, g.source, h.source)),
            Err(e) => Some(e.to_string()),
        },
        Err(e) => Some(format!("rhs: {e}")),
    }
}

/// `decompose(A ∘_p B) = (w_A ∘_{g_A⁻¹(p)} w_B, g_A ∘_p g_B)` and
/// `(g·A) ∘_{g(p)} (h·B) = (g ∘_{g(p)} h)·(A ∘_p B)`.
fn equivariance_instance(rng: &mut rand_chacha::ChaCha8Rng, max_r: usize) -> Option<String> {
    use crate::perm::Permutation;
    let ra = rng.gen_range(1..=max_r - 1);
    let rb = rng.gen_range(0..=(max_r + 1 - ra));
    let a = Tree::random(ra, rng);
    let b = Tree::random(rb, rng);
    let p = rng.gen_range(1..=ra);
    let ab = a.compose(p, &b).ok()?;
    let (wa, ga) = a.decompose();
    let (wb, gb) = b.decompose();
    let pos = ga.inverse().apply(p);
    let w = wa.compose(pos, &wb).ok()?;
    let g = ga.compose(p, &gb).ok()?;
    if ab.decompose() != (w.clone(), g.clone()) {
        return Some(format!("decompose({a}∘_{p}{b}) = {:?}, expected ({w}, {g})", ab.decompose()));
    }
    let gg = Permutation::random(ra, rng);
    let hh = Permutation::random(rb, rng);
    let lhs = a.relabel(&gg).ok()?.compose(gg.apply(p), &b.relabel(&hh).ok()?).ok()?;
    let rhs = ab.relabel(&gg.compose(gg.apply(p), &hh).ok()?).ok()?;
    (lhs != rhs).then(|| format!("S_r equivariance fails for {a}, {b}, p={p}, g={gg}, h={hh}"))
}
