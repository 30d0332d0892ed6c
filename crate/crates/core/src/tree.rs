//! Labeled binary trees, parenthesized words and the magma operad.
//!
//! Vertices are addressed by their path from the root, a string over
//! `{L, R}` (`""` is the root). An internal edge is named by the path of its
//! lower vertex, so the edge above vertex `"RL"` is `"RL"`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf(usize),
    Branch(Box<Node>, Box<Node>),
}

impl Node {
    pub fn branch(l: Node, r: Node) -> Node {
        Node::Branch(Box::new(l), Box::new(r))
    }

    fn leaves_into(&self, out: &mut Vec<usize>) {
        match self {
            Node::Leaf(l) => out.push(*l),
            Node::Branch(a, b) => {
                a.leaves_into(out);
                b.leaves_into(out);
            }
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut v = Vec::new();
        self.leaves_into(&mut v);
        v
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf(_))
    }

    pub fn rightmost_leaf(&self) -> usize {
        match self {
            Node::Leaf(l) => *l,
            Node::Branch(_, b) => b.rightmost_leaf(),
        }
    }

    fn map_labels(&self, f: &impl Fn(usize) -> usize) -> Node {
        match self {
            Node::Leaf(l) => Node::Leaf(f(*l)),
            Node::Branch(a, b) => Node::branch(a.map_labels(f), b.map_labels(f)),
        }
    }

    fn at(&self, path: &str) -> Option<&Node> {
        let mut node = self;
        for c in path.chars() {
            node = match (node, c) {
                (Node::Branch(a, _), 'L') => a,
                (Node::Branch(_, b), 'R') => b,
                _ => return None,
            };
        }
        Some(node)
    }

    fn at_mut(&mut self, path: &str) -> Option<&mut Node> {
        let mut node = self;
        for c in path.chars() {
            node = match (node, c) {
                (Node::Branch(a, _), 'L') => a,
                (Node::Branch(_, b), 'R') => b,
                _ => return None,
            };
        }
        Some(node)
    }

    fn write_word(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        match self {
            Node::Leaf(l) if *l < 10 => write!(f, "{l}"),
            Node::Leaf(l) => write!(f, "[{l}]"),
            Node::Branch(a, b) => {
                if !top {
                    write!(f, "(")?;
                }
                a.write_word(f, false)?;
                b.write_word(f, false)?;
                if !top {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

/// A binary tree whose leaves are labeled bijectively by `1..=r`.
/// `root == None` is the empty tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    root: Option<Node>,
}

impl Tree {
    pub fn empty() -> Self {
        Tree { root: None }
    }

    pub fn leaf() -> Self {
        Tree { root: Some(Node::Leaf(1)) }
    }

    pub fn from_node(node: Node) -> Result<Self> {
        let mut labels = node.leaves();
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(i, &l)| l != i + 1) {
            return Err(Error::Labels(format!(
                "leaf labels {:?} are not exactly 1..={}",
                node.leaves(),
                labels.len()
            )));
        }
        Ok(Tree { root: Some(node) })
    }

    pub fn root(&self) -> Option<&Node> {
        self.root.as_ref()
    }

    pub fn size(&self) -> usize {
        self.root.as_ref().map_or(0, |n| n.leaves().len())
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    /// Leaf labels read left to right.
    pub fn leaves(&self) -> Vec<usize> {
        self.root.as_ref().map_or_else(Vec::new, Node::leaves)
    }

    pub fn node_at(&self, path: &str) -> Option<&Node> {
        self.root.as_ref()?.at(path)
    }

    pub fn is_vertex(&self, path: &str) -> bool {
        matches!(self.node_at(path), Some(Node::Branch(..)))
    }

    /// Path to the leaf carrying `label`.
    pub fn leaf_path(&self, label: usize) -> Option<String> {
        fn go(n: &Node, label: usize, path: &mut String) -> bool {
            match n {
                Node::Leaf(l) => *l == label,
                Node::Branch(a, b) => {
                    path.push('L');
                    if go(a, label, path) {
                        return true;
                    }
                    path.pop();
                    path.push('R');
                    if go(b, label, path) {
                        return true;
                    }
                    path.pop();
                    false
                }
            }
        }
        let mut p = String::new();
        go(self.root.as_ref()?, label, &mut p).then_some(p)
    }

    /// Magma-operad composition `self ∘_p b`.
    pub fn compose(&self, p: usize, b: &Tree) -> Result<Tree> {
        let r = self.size();
        if p == 0 || p > r {
            return Err(Error::IndexOutOfRange { index: p, max: r });
        }
        let root = self.root.as_ref().expect("nonempty");
        let m = b.size();
        let inserted = b.root.as_ref().map(|n| n.map_labels(&|l| l + p - 1));
        fn replace(n: &Node, p: usize, m: usize, ins: &Option<Node>) -> Option<Node> {
            match n {
                Node::Leaf(l) if *l == p => ins.clone(),
                Node::Leaf(l) if *l > p => Some(Node::Leaf(l + m - 1)),
                Node::Leaf(l) => Some(Node::Leaf(*l)),
                Node::Branch(a, c) => match (replace(a, p, m, ins), replace(c, p, m, ins)) {
                    (Some(a), Some(c)) => Some(Node::branch(a, c)),
                    (Some(x), None) | (None, Some(x)) => Some(x),
                    (None, None) => None,
                },
            }
        }
        Ok(Tree { root: replace(root, p, m, &inserted) })
    }

    /// Splits the tree into its shape (leaves `1..r` left to right) and the
    /// permutation sending position `i` to the label found there.
    pub fn decompose(&self) -> (Tree, Permutation) {
        let labels = self.leaves();
        let g = Permutation::new(labels.clone()).expect("tree labels are a permutation");
        let inv = g.inverse();
        let w = Tree { root: self.root.as_ref().map(|n| n.map_labels(&|l| inv.apply(l))) };
        (w, g)
    }

    /// Left action of `S_r`: leaf labeled `i` becomes `g(i)`.
    pub fn relabel(&self, g: &Permutation) -> Result<Tree> {
        if g.size() != self.size() {
            return Err(Error::StrandMismatch(g.size(), self.size()));
        }
        Ok(Tree { root: self.root.as_ref().map(|n| n.map_labels(&|l| g.apply(l))) })
    }

    /// The tree with the same shape and labels `1..r` left to right.
    pub fn shape(&self) -> Tree {
        self.decompose().0
    }

    /// Whether the vertex at `site` has the local shape `X(YZ)`. The root
    /// qualifies, which covers the elementary move `1(23) → (12)3`.
    pub fn is_alpha_site(&self, site: &str) -> bool {
        matches!(self.node_at(site), Some(Node::Branch(_, b)) if !b.is_leaf())
    }

    /// Reassociates `X(YZ)` at `site` into `(XY)Z`.
    pub fn alpha_target(&self, site: &str) -> Result<Tree> {
        if !self.is_alpha_site(site) {
            return Err(if self.is_vertex(site) {
                Error::NotAlphaType(site.to_string())
            } else {
                Error::NoSuchVertex(site.to_string())
            });
        }
        let mut out = self.clone();
        let node = out.root.as_mut().unwrap().at_mut(site).unwrap();
        let taken = std::mem::replace(node, Node::Leaf(0));
        if let Node::Branch(x, yz) = taken {
            if let Node::Branch(y, z) = *yz {
                *node = Node::branch(Node::Branch(x, y), *z);
            }
        }
        Ok(out)
    }

    /// Inverse of [`Tree::alpha_target`]: `(XY)Z` at `site` becomes `X(YZ)`.
    pub fn alpha_source(&self, site: &str) -> Result<Tree> {
        match self.node_at(site) {
            Some(Node::Branch(a, _)) if !a.is_leaf() => {}
            Some(Node::Branch(..)) => return Err(Error::NotAlphaType(site.to_string())),
            _ => return Err(Error::NoSuchVertex(site.to_string())),
        }
        let mut out = self.clone();
        let node = out.root.as_mut().unwrap().at_mut(site).unwrap();
        let taken = std::mem::replace(node, Node::Leaf(0));
        if let Node::Branch(xy, z) = taken {
            if let Node::Branch(x, y) = *xy {
                *node = Node::branch(*x, Node::Branch(y, z));
            }
        }
        Ok(out)
    }

    /// Swaps the two subtrees below vertex `v`.
    pub fn sigma_target(&self, v: &str) -> Result<Tree> {
        if !self.is_vertex(v) {
            return Err(Error::NoSuchVertex(v.to_string()));
        }
        let mut out = self.clone();
        if let Some(Node::Branch(a, b)) = out.root.as_mut().unwrap().at_mut(v) {
            std::mem::swap(a, b);
        }
        Ok(out)
    }

    pub fn analyze(&self) -> TreeAnalysis {
        TreeAnalysis::new(self)
    }

    /// A uniformly random shape (by random splitting) with random labels.
    pub fn random<R: Rng + ?Sized>(r: usize, rng: &mut R) -> Tree {
        if r == 0 {
            return Tree::empty();
        }
        fn build<R: Rng + ?Sized>(lo: usize, n: usize, rng: &mut R) -> Node {
            if n == 1 {
                return Node::Leaf(lo);
            }
            let k = rng.gen_range(1..n);
            Node::branch(build(lo, k, rng), build(lo + k, n - k, rng))
        }
        let shape = Tree { root: Some(build(1, r, rng)) };
        shape.relabel(&Permutation::random(r, rng)).unwrap()
    }

    /// All shapes with `r` leaves, labeled `1..r` left to right.
    pub fn all_shapes(r: usize) -> Vec<Tree> {
        fn go(lo: usize, n: usize) -> Vec<Node> {
            if n == 1 {
                return vec![Node::Leaf(lo)];
            }
            let mut out = Vec::new();
            for k in 1..n {
                for a in go(lo, k) {
                    for b in go(lo + k, n - k) {
                        out.push(Node::branch(a.clone(), b));
                    }
                }
            }
            out
        }
        if r == 0 {
            return vec![Tree::empty()];
        }
        go(1, r).into_iter().map(|n| Tree { root: Some(n) }).collect()
    }

    /// Parses a word, treating the empty string as the empty tree.
    pub fn parse_allow_empty(s: &str) -> Result<Tree> {
        if s.trim().is_empty() {
            Ok(Tree::empty())
        } else {
            s.parse()
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.root {
            None => write!(f, "∅"),
            Some(n) => n.write_word(f, true),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn atom(&mut self) -> Result<Node> {
        self.skip_ws();
        let start = self.pos;
        match self.bump() {
            Some(c @ '1'..='9') => Ok(Node::Leaf(c.to_digit(10).unwrap() as usize)),
            Some('[') => {
                let digits_start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.bump();
                }
                let digits = &self.src[digits_start..self.pos];
                if self.bump() != Some(']') {
                    return Err(Error::parse(self.pos, "expected ']'"));
                }
                match digits.parse::<usize>() {
                    Ok(n) if n > 0 => Ok(Node::Leaf(n)),
                    _ => Err(Error::parse(start, "bad bracketed label")),
                }
            }
            Some('(') => {
                let a = self.atom()?;
                let b = self.atom()?;
                self.skip_ws();
                match self.bump() {
                    Some(')') => Ok(Node::branch(a, b)),
                    Some(_) => Err(Error::parse(self.pos, "a group must contain exactly two words")),
                    None => Err(Error::parse(self.pos, "unbalanced parentheses")),
                }
            }
            Some(')') => Err(Error::parse(start, "unbalanced parentheses")),
            Some('0') => Err(Error::parse(start, "labels start at 1")),
            Some(c) => Err(Error::parse(start, format!("unexpected character {c:?}"))),
            None => Err(Error::parse(start, "unexpected end of input")),
        }
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        let t = s.trim();
        if t == "∅" {
            return Ok(Tree::empty());
        }
        if t.is_empty() {
            return Err(Error::parse(0, "empty input (use \"∅\" for the empty tree)"));
        }
        let mut p = Parser { src: t, pos: 0 };
        let first = p.atom()?;
        p.skip_ws();
        let node = if p.peek().is_some() {
            let second = p.atom()?;
            p.skip_ws();
            if let Some(c) = p.peek() {
                let msg = if c == ')' { "unbalanced parentheses" } else { "trailing input" };
                return Err(Error::parse(p.pos, msg));
            }
            Node::branch(first, second)
        } else {
            first
        };
        Tree::from_node(node)
    }
}

impl Serialize for Tree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Tree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Vertex and edge bookkeeping of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeAnalysis {
    /// Internal vertices in preorder.
    pub vertices: Vec<String>,
    /// Internal edges as `(upper, lower)` vertex pairs.
    pub edges: Vec<(String, String)>,
    /// Rightmost leaf of the left subtree, per vertex.
    pub left_leaf: BTreeMap<String, usize>,
    /// Rightmost leaf below the vertex.
    pub right_leaf: BTreeMap<String, usize>,
    pub r_a: usize,
    /// Internal edges (named by lower vertex) whose lower vertex has a
    /// non-leaf right child.
    pub alpha_edges: Vec<String>,
    /// Leaves below each internal edge (named by lower vertex).
    pub leaf_of_edge: BTreeMap<String, BTreeSet<usize>>,
}

impl TreeAnalysis {
    fn new(t: &Tree) -> Self {
        let mut a = TreeAnalysis {
            vertices: Vec::new(),
            edges: Vec::new(),
            left_leaf: BTreeMap::new(),
            right_leaf: BTreeMap::new(),
            r_a: 0,
            alpha_edges: Vec::new(),
            leaf_of_edge: BTreeMap::new(),
        };
        let Some(root) = t.root() else { return a };
        a.r_a = root.rightmost_leaf();
        fn walk(n: &Node, path: String, a: &mut TreeAnalysis) {
            if let Node::Branch(l, r) = n {
                a.vertices.push(path.clone());
                a.left_leaf.insert(path.clone(), l.rightmost_leaf());
                a.right_leaf.insert(path.clone(), r.rightmost_leaf());
                if !path.is_empty() {
                    let up = path[..path.len() - 1].to_string();
                    a.edges.push((up, path.clone()));
                    a.leaf_of_edge.insert(path.clone(), n.leaves().into_iter().collect());
                    if !r.is_leaf() {
                        a.alpha_edges.push(path.clone());
                    }
                }
                walk(l, format!("{path}L"), a);
                walk(r, format!("{path}R"), a);
            }
        }
        walk(root, String::new(), &mut a);
        a
    }

    /// Alpha sites: alpha edges plus the root when it has shape `X(YZ)`.
    pub fn alpha_sites(&self, t: &Tree) -> Vec<String> {
        let mut v = Vec::new();
        if t.is_alpha_site("") {
            v.push(String::new());
        }
        v.extend(self.alpha_edges.iter().cloned());
        v
    }

    /// Edge names (lower-vertex paths) in preorder.
    pub fn edge_names(&self) -> Vec<String> {
        self.edges.iter().map(|(_, d)| d.clone()).collect()
    }
}
