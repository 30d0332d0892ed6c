use serde::Serialize;

use super::word::{artin_equal, BraidWord};
use crate::error::{Error, Result};
use crate::tree::Tree;

/// A morphism of the parenthesized braid operad: a braid between two trees
/// whose underlying permutation matches the leaf labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaBMorphism {
    pub source: Tree,
    pub target: Tree,
    pub braid: BraidWord,
}

impl PaBMorphism {
    /// Validates that the strand starting under the leaf labeled `l` in
    /// `source` ends under the leaf labeled `l` in `target`, i.e.
    /// `project(braid) = g_target⁻¹ ∘ g_source`.
    pub fn new(source: Tree, target: Tree, braid: BraidWord) -> Result<Self> {
        let r = source.size();
        if target.size() != r || braid.strands() != r {
            return Err(Error::StrandMismatch(r, braid.strands().max(target.size())));
        }
        let m = PaBMorphism { source, target, braid };
        if !m.permutation_matches() {
            return Err(Error::Incompatible(format!(
                "braid {} does not carry {} to {}",
                m.braid, m.source, m.target
            )));
        }
        Ok(m)
    }

    pub fn permutation_matches(&self) -> bool {
        let (_, gs) = self.source.decompose();
        let (_, gt) = self.target.decompose();
        self.braid.project() == gt.inverse().then_after(&gs)
    }

    pub fn identity(a: &Tree) -> Self {
        PaBMorphism { source: a.clone(), target: a.clone(), braid: BraidWord::identity(a.size()) }
    }

    /// The reassociation `X(YZ) → (XY)Z` at `site`; strands do not move.
    pub fn alpha(a: &Tree, site: &str) -> Result<Self> {
        let t = a.alpha_target(site)?;
        Ok(PaBMorphism { source: a.clone(), target: t, braid: BraidWord::identity(a.size()) })
    }

    /// Inverse reassociation `(XY)Z → X(YZ)` at `site`.
    pub fn alpha_inverse(a: &Tree, site: &str) -> Result<Self> {
        let t = a.alpha_source(site)?;
        Ok(PaBMorphism { source: a.clone(), target: t, braid: BraidWord::identity(a.size()) })
    }

    /// Swaps the two subtrees at `v`, the left block passing over the right.
    pub fn sigma(a: &Tree, v: &str) -> Result<Self> {
        let t = a.sigma_target(v)?;
        let Some(crate::tree::Node::Branch(l, r)) = a.node_at(v) else {
            return Err(Error::NoSuchVertex(v.to_string()));
        };
        let (k, m) = (l.leaves().len(), r.leaves().len());
        let first = a.leaves().iter().position(|x| *x == l.leaves()[0]).unwrap();
        let braid = BraidWord::block_crossing(k, m).embed(first, a.size())?;
        PaBMorphism::new(a.clone(), t, braid)
    }

    pub fn inverse(&self) -> Self {
        PaBMorphism { source: self.target.clone(), target: self.source.clone(), braid: self.braid.inverse() }
    }

    /// Categorical composite: `self` followed by `next`.
    pub fn then(&self, next: &PaBMorphism) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::Incompatible(format!("target {} differs from source {}", self.target, next.source)));
        }
        Ok(PaBMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            braid: self.braid.concat(&next.braid)?,
        })
    }

    /// Operadic composite `self ∘_p g`: the strand under leaf `p` of the
    /// source is cabled into the braid of `g`.
    pub fn compose(&self, p: usize, g: &PaBMorphism) -> Result<Self> {
        let source = self.source.compose(p, &g.source)?;
        let target = self.target.compose(p, &g.target)?;
        let q = self.source.leaves().iter().position(|&l| l == p).unwrap() + 1;
        let braid = self.braid.cable(q, &g.braid)?;
        PaBMorphism::new(source, target, braid)
    }

    /// Same source, target and braid up to braid-group equality.
    pub fn equivalent(&self, other: &PaBMorphism) -> Result<bool> {
        Ok(self.source == other.source && self.target == other.target && artin_equal(&self.braid, &other.braid)?)
    }

    /// A random morphism out of a random tree with `r` leaves.
    pub fn random<R: rand::Rng + ?Sized>(r: usize, len: usize, rng: &mut R) -> Self {
        let source = Tree::random(r, rng);
        let braid = BraidWord::random(r, len, rng);
        let (_, gs) = source.decompose();
        let gt = gs.then_after(&braid.project().inverse());
        let target = Tree::random(r, rng).shape().relabel(&gt).unwrap();
        PaBMorphism::new(source, target, braid).expect("constructed to be consistent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    #[test]
    fn generators_are_valid() {
        let a = t("1(2((34)(56)))");
        let s = PaBMorphism::sigma(&a, "RR").unwrap();
        assert_eq!(s.target, t("1(2((56)(34)))"));
        assert_eq!(s.braid.word(), &[4, 3, 5, 4]);
        assert!(PaBMorphism::alpha(&t("1(23)"), "").unwrap().permutation_matches());
        assert!(PaBMorphism::new(t("12"), t("12"), BraidWord::new(2, vec![1]).unwrap()).is_err());
    }

    #[test]
    fn identities_compose_to_identity() {
        let c = PaBMorphism::identity(&t("2(13)")).compose(3, &PaBMorphism::identity(&t("21"))).unwrap();
        assert_eq!(c, PaBMorphism::identity(&t("2(1(43))")));
    }

    #[test]
    fn alpha_composed_with_sigma() {
        let alpha = PaBMorphism::alpha(&t("1(23)"), "").unwrap();
        let sigma = PaBMorphism::sigma(&t("12"), "").unwrap();
        let c = alpha.compose(2, &sigma).unwrap();
        assert_eq!(c.source, t("1((23)4)"));
        assert_eq!(c.target, t("(1(32))4"));
        assert_eq!(c.braid.word(), &[2]);
        assert!(c.permutation_matches());
    }

    #[test]
    fn mismatched_strands_rejected() {
        let f = PaBMorphism::identity(&t("12"));
        let bad = PaBMorphism { source: t("12"), target: t("12"), braid: BraidWord::identity(3) };
        assert!(f.compose(1, &bad).is_err());
    }
}
