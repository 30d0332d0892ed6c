use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::admissible::{admissible, uniform_radii};
use super::coords::CoordinateSystem;
use crate::error::{Error, Result};
use crate::tree::{Node, Tree};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasePoint {
    pub z: Vec<f64>,
    /// Exact decimal coordinates.
    pub exact: Vec<String>,
    pub x: Option<f64>,
    pub zeta: BTreeMap<String, f64>,
    /// Uniform radius for which membership was certified.
    pub radius: Option<String>,
}

fn place(n: &Node, depth: u32, right: BigRational, z: &mut [BigRational]) -> BigRational {
    match n {
        Node::Leaf(l) => {
            z[*l - 1] = right.clone();
            right
        }
        Node::Branch(a, b) => {
            let left_of_b = place(b, depth + 1, right, z);
            let gap = BigRational::new(BigInt::from(1), BigInt::from(10).pow(depth));
            place(a, depth + 1, left_of_b + gap, z)
        }
    }
}

/// A real configuration ordered like the leaves of `A`: the gap between the
/// two subtrees of a vertex at depth `d` is `10^{-d}`.
pub fn base_point(tree: &Tree) -> Result<BasePoint> {
    let r = tree.size();
    let mut z = vec![BigRational::zero(); r];
    if let Some(root) = tree.root() {
        place(root, 0, BigRational::zero(), &mut z);
    }
    let zf: Vec<f64> = z.iter().map(|q| q.to_f64().unwrap()).collect();
    let exact = z.iter().map(decimal).collect();
    if r < 2 {
        return Ok(BasePoint { z: zf, exact, x: None, zeta: BTreeMap::new(), radius: None });
    }
    let cs = CoordinateSystem::cached(tree)?;
    let pt = cs.psi(&zf.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>())?;
    let mut radius = None;
    for d in [5, 8] {
        let p = BigRational::new(1.into(), d.into());
        let pf = 1.0 / d as f64;
        if pt.zeta.iter().all(|v| v.re > 0.0 && v.re < pf) && admissible(&cs, &uniform_radii(&cs, &p))?.is_certified() {
            radius = Some(p.to_string());
            break;
        }
    }
    if radius.is_none() || pt.x_a.re <= 0.0 {
        return Err(Error::Invalid(format!("base point for {tree} could not be certified")));
    }
    Ok(BasePoint {
        z: zf,
        exact,
        x: Some(pt.x_a.re),
        zeta: cs.edges().iter().cloned().zip(pt.zeta.iter().map(|v| v.re)).collect(),
        radius,
    })
}

fn decimal(q: &BigRational) -> String {
    // Denominators are powers of ten.
    let mut digits = 0usize;
    let mut d = q.denom().clone();
    let ten = BigInt::from(10);
    while d > BigInt::from(1) {
        d /= &ten;
        digits += 1;
    }
    let scaled = (q * BigRational::from_integer(ten.pow(digits as u32))).to_integer();
    if digits == 0 {
        return scaled.to_string();
    }
    let s = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
    let (a, b) = s.split_at(s.len() - digits);
    format!("{a}.{b}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_trees() {
        let b = base_point(&"12".parse().unwrap()).unwrap();
        assert_eq!(b.exact, ["1", "0"]);
        assert_eq!(b.x, Some(1.0));
        let b = base_point(&"1(23)".parse().unwrap()).unwrap();
        assert_eq!(b.exact, ["1.1", "0.1", "0"]);
        assert_eq!(base_point(&"1".parse().unwrap()).unwrap().exact, ["0"]);
        assert!(base_point(&Tree::empty()).unwrap().z.is_empty());
    }

    #[test]
    fn deep_trees_certified() {
        let mut rng = crate::random::rng_for(3, 0);
        for r in 2..=8 {
            for _ in 0..5 {
                let t = Tree::random(r, &mut rng);
                let b = base_point(&t).unwrap();
                let order: Vec<f64> = t.leaves().iter().map(|&l| b.z[l - 1]).collect();
                assert!(order.windows(2).all(|w| w[0] > w[1]), "{t}");
            }
        }
    }
}
