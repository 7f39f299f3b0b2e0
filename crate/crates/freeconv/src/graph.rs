//! Rooted multigraphs with edges colored in {1, 2}, and the product
//! constructions that realize the five convolutions on the graph side.
//!
//! The finite products glue copies of the second factor onto the first (comb,
//! star, orthogonal) and their loop variants add colored loops so that the
//! colored adjacency blocks become the unitized operators whose product
//! counts alternating double-return walks. The s-free and free products are
//! infinite; they are built here as balls of bounded graph distance around
//! the root, which is exact for closed-walk counting: a closed walk of length
//! `2n` never leaves the radius-`n` ball.
//!
//! Construction is deterministic: vertex order is construction order, edge
//! lists are canonicalized (endpoints ordered, sorted, multiplicities
//! merged), so equal products serialize identically.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Edge color; products color first-factor edges 1 and second-factor edges 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    One,
    Two,
}

impl Color {
    pub fn as_u8(self) -> u8 {
        match self {
            Color::One => 1,
            Color::Two => 2,
        }
    }

    pub fn from_u8(c: u8) -> Result<Self> {
        match c {
            1 => Ok(Color::One),
            2 => Ok(Color::Two),
            _ => Err(Error::MalformedGraph {
                reason: format!("edge color must be 1 or 2, got {c}"),
            }),
        }
    }

    pub fn other(self) -> Self {
        match self {
            Color::One => Color::Two,
            Color::Two => Color::One,
        }
    }
}

/// An undirected colored edge with multiplicity; `u == v` is a loop.
/// Canonical storage keeps `u <= v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: Color,
    pub mult: u64,
}

/// A finite rooted multigraph with 2-colored edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredRootedGraph {
    names: Vec<String>,
    root: usize,
    edges: Vec<Edge>,
}

impl ColoredRootedGraph {
    /// Builds a graph from named vertices, a root index, and an edge list.
    /// Edges are canonicalized: endpoints ordered, sorted by (u, v, color),
    /// and parallel same-colored edges merged into one multiplicity.
    pub fn new(names: Vec<String>, root: usize, edges: Vec<Edge>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::MalformedGraph {
                reason: "a graph needs at least one vertex".into(),
            });
        }
        if root >= names.len() {
            return Err(Error::MalformedGraph {
                reason: format!("root index {root} out of range"),
            });
        }
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateVertex { name: n.clone() });
            }
        }
        let mut canon: Vec<Edge> = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.u >= names.len() || e.v >= names.len() {
                return Err(Error::MalformedGraph {
                    reason: format!("edge ({}, {}) references a missing vertex", e.u, e.v),
                });
            }
            if e.mult == 0 {
                return Err(Error::MalformedGraph {
                    reason: "edge multiplicity must be at least 1".into(),
                });
            }
            if e.u > e.v {
                std::mem::swap(&mut e.u, &mut e.v);
            }
            canon.push(e);
        }
        canon.sort_by_key(|e| (e.u, e.v, e.color));
        let mut merged: Vec<Edge> = Vec::with_capacity(canon.len());
        for e in canon {
            match merged.last_mut() {
                Some(last) if last.u == e.u && last.v == e.v && last.color == e.color => {
                    last.mult += e.mult;
                }
                _ => merged.push(e),
            }
        }
        Ok(ColoredRootedGraph {
            names,
            root,
            edges: merged,
        })
    }

    /// Convenience for tests and small fixtures: vertices by name, root
    /// first-class, edges as (u, v, color, mult) index tuples.
    pub fn from_parts(
        names: &[&str],
        root: usize,
        edges: &[(usize, usize, u8, u64)],
    ) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|&(u, v, c, mult)| {
                Ok(Edge {
                    u,
                    v,
                    color: Color::from_u8(c)?,
                    mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(names.iter().map(|s| s.to_string()).collect(), root, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_name(&self) -> &str {
        &self.names[self.root]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of loops of a given color.
    pub fn loop_count(&self, color: Color) -> u64 {
        self.edges
            .iter()
            .filter(|e| e.u == e.v && e.color == color)
            .map(|e| e.mult)
            .sum()
    }

    /// Splits the adjacency matrix by color: symmetric nonnegative integer
    /// matrices indexed by vertex order, a loop of multiplicity `k`
    /// contributing `k` to its diagonal entry. Their sum is the full
    /// adjacency matrix.
    pub fn adjacency_split(&self) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
        let n = self.names.len();
        let mut a1 = vec![vec![0u64; n]; n];
        let mut a2 = vec![vec![0u64; n]; n];
        for e in &self.edges {
            let a = match e.color {
                Color::One => &mut a1,
                Color::Two => &mut a2,
            };
            if e.u == e.v {
                a[e.u][e.u] += e.mult;
            } else {
                a[e.u][e.v] += e.mult;
                a[e.v][e.u] += e.mult;
            }
        }
        (a1, a2)
    }

    /// The full adjacency matrix, ignoring colors.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let (mut a1, a2) = self.adjacency_split();
        for (r1, r2) in a1.iter_mut().zip(&a2) {
            for (x, y) in r1.iter_mut().zip(r2) {
                *x += y;
            }
        }
        a1
    }

    /// Incidence list of one vertex, optionally restricted by color: each
    /// entry is (neighbor, color, multiplicity); a loop yields one entry.
    pub fn incident(&self, x: usize, color: Option<Color>) -> Vec<(usize, Color, u64)> {
        let mut out = Vec::new();
        for e in &self.edges {
            if let Some(c) = color {
                if e.color != c {
                    continue;
                }
            }
            if e.u == x {
                out.push((e.v, e.color, e.mult));
            } else if e.v == x {
                out.push((e.u, e.color, e.mult));
            }
        }
        out
    }

    /// The induced subgraph on vertices within graph distance `radius` of the
    /// root, keeping the original vertex order.
    pub fn ball(&self, radius: usize) -> ColoredRootedGraph {
        let n = self.names.len();
        let mut dist = vec![usize::MAX; n];
        dist[self.root] = 0;
        let mut queue = std::collections::VecDeque::from([self.root]);
        while let Some(x) = queue.pop_front() {
            if dist[x] == radius {
                continue;
            }
            for (y, _, _) in self.incident(x, None) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&x| dist[x] <= radius).collect();
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(Edge {
                    u: *remap.get(&e.u)?,
                    v: *remap.get(&e.v)?,
                    color: e.color,
                    mult: e.mult,
                })
            })
            .collect();
        ColoredRootedGraph::new(names, remap[&self.root], edges)
            .expect("induced subgraph of a valid graph is valid")
    }

    /// DOT rendering with the root double-circled and edges labeled by color
    /// (and multiplicity when above one). Deterministic.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for (i, name) in self.names.iter().enumerate() {
            if i == self.root {
                out.push_str(&format!("  {:?} [shape=doublecircle];\n", name));
            } else {
                out.push_str(&format!("  {:?};\n", name));
            }
        }
        for e in &self.edges {
            let label = if e.mult == 1 {
                format!("c{}", e.color.as_u8())
            } else {
                format!("c{} x{}", e.color.as_u8(), e.mult)
            };
            out.push_str(&format!(
                "  {:?} -- {:?} [label={:?}];\n",
                self.names[e.u], self.names[e.v], label
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// The eight product constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    Comb,
    CombLoop,
    Star,
    StarLoop,
    Ortho,
    OrthoLoop,
    SfreeLoop,
    Free,
}

impl ProductKind {
    pub const ALL: [ProductKind; 8] = [
        ProductKind::Comb,
        ProductKind::CombLoop,
        ProductKind::Star,
        ProductKind::StarLoop,
        ProductKind::Ortho,
        ProductKind::OrthoLoop,
        ProductKind::SfreeLoop,
        ProductKind::Free,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProductKind::Comb => "comb",
            ProductKind::CombLoop => "comb_loop",
            ProductKind::Star => "star",
            ProductKind::StarLoop => "star_loop",
            ProductKind::Ortho => "ortho",
            ProductKind::OrthoLoop => "ortho_loop",
            ProductKind::SfreeLoop => "sfree_loop",
            ProductKind::Free => "free",
        }
    }

    /// True for the infinite products that must be truncated to a ball.
    pub fn needs_radius(self) -> bool {
        matches!(self, ProductKind::SfreeLoop | ProductKind::Free)
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProductKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        for kind in Self::ALL {
            if kind.as_str() == s {
                return Ok(kind);
            }
        }
        Err(Error::UnknownToken {
            what: "product kind",
            token: s.to_string(),
            expected: "comb, comb_loop, star, star_loop, ortho, ortho_loop, sfree_loop, free",
        })
    }
}

fn pair_name(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

struct ProductBuilder {
    names: Vec<String>,
    edges: Vec<Edge>,
}

impl ProductBuilder {
    fn new() -> Self {
        ProductBuilder {
            names: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn vertex(&mut self, name: String) -> usize {
        self.names.push(name);
        self.names.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize, color: Color, mult: u64) {
        self.edges.push(Edge { u, v, color, mult });
    }

    fn build(self, root: usize) -> ColoredRootedGraph {
        ColoredRootedGraph::new(self.names, root, self.edges)
            .expect("product construction yields a valid graph")
    }
}

/// The six finite products. Factor edges are recolored: every `g1` edge gets
/// color 1 and every `g2` edge color 2, regardless of their input colors.
///
/// * comb: a copy of `g2` glued by its root to every vertex of `g1`; the
///   loop variant adds a color-1 loop to every non-root vertex of every copy.
/// * star: `g1` and `g2` glued at their roots; the loop variant adds color-2
///   loops to non-root vertices of `g1` and color-1 loops to non-root
///   vertices of `g2`.
/// * ortho: a copy of `g2` glued to every vertex of `g1` except the root;
///   the loop variant adds color-1 loops to non-root vertices of the copies
///   and a single color-2 loop at the root.
pub fn finite_product(
    kind: ProductKind,
    g1: &ColoredRootedGraph,
    g2: &ColoredRootedGraph,
) -> Result<ColoredRootedGraph> {
    if kind.needs_radius() {
        return Err(Error::NotFinite {
            kind: kind.as_str().to_string(),
        });
    }
    let mut b = ProductBuilder::new();
    match kind {
        ProductKind::Comb | ProductKind::CombLoop => {
            let loops = kind == ProductKind::CombLoop;
            let n2 = g2.vertex_count();
            let idx = |x: usize, y: usize| x * n2 + y;
            for x in 0..g1.vertex_count() {
                for y in 0..n2 {
                    b.vertex(pair_name(g1.vertex_name(x), g2.vertex_name(y)));
                }
            }
            for e in g1.edges() {
                b.edge(idx(e.u, g2.root()), idx(e.v, g2.root()), Color::One, e.mult);
            }
            for x in 0..g1.vertex_count() {
                for e in g2.edges() {
                    b.edge(idx(x, e.u), idx(x, e.v), Color::Two, e.mult);
                }
                if loops {
                    for y in 0..n2 {
                        if y != g2.root() {
                            b.edge(idx(x, y), idx(x, y), Color::One, 1);
                        }
                    }
                }
            }
            Ok(b.build(idx(g1.root(), g2.root())))
        }
        ProductKind::Star | ProductKind::StarLoop => {
            let loops = kind == ProductKind::StarLoop;
            let root = b.vertex("e".to_string());
            // Tagged union: non-root factor vertices glued at the shared root.
            let side = |b: &mut ProductBuilder, g: &ColoredRootedGraph, tag: u8| -> Vec<usize> {
                (0..g.vertex_count())
                    .map(|x| {
                        if x == g.root() {
                            root
                        } else {
                            b.vertex(format!("{tag}:{}", g.vertex_name(x)))
                        }
                    })
                    .collect()
            };
            let m1 = side(&mut b, g1, 1);
            let m2 = side(&mut b, g2, 2);
            for e in g1.edges() {
                b.edge(m1[e.u], m1[e.v], Color::One, e.mult);
            }
            for e in g2.edges() {
                b.edge(m2[e.u], m2[e.v], Color::Two, e.mult);
            }
            if loops {
                // Opposite-color loops: the unitization of each factor block
                // acts as the identity on the other side's non-root vertices.
                for &mx in &m1 {
                    if mx != root {
                        b.edge(mx, mx, Color::Two, 1);
                    }
                }
                for &my in &m2 {
                    if my != root {
                        b.edge(my, my, Color::One, 1);
                    }
                }
            }
            Ok(b.build(root))
        }
        ProductKind::Ortho | ProductKind::OrthoLoop => {
            let loops = kind == ProductKind::OrthoLoop;
            let root = b.vertex(pair_name(g1.root_name(), g2.root_name()));
            let mut idx = HashMap::new();
            for x in 0..g1.vertex_count() {
                if x == g1.root() {
                    continue;
                }
                for y in 0..g2.vertex_count() {
                    let i = b.vertex(pair_name(g1.vertex_name(x), g2.vertex_name(y)));
                    idx.insert((x, y), i);
                }
            }
            let m1 = |x: usize, idx: &HashMap<(usize, usize), usize>| {
                if x == g1.root() {
                    root
                } else {
                    idx[&(x, g2.root())]
                }
            };
            for e in g1.edges() {
                b.edge(m1(e.u, &idx), m1(e.v, &idx), Color::One, e.mult);
            }
            for x in 0..g1.vertex_count() {
                if x == g1.root() {
                    continue;
                }
                for e in g2.edges() {
                    b.edge(idx[&(x, e.u)], idx[&(x, e.v)], Color::Two, e.mult);
                }
                if loops {
                    for y in 0..g2.vertex_count() {
                        if y != g2.root() {
                            b.edge(idx[&(x, y)], idx[&(x, y)], Color::One, 1);
                        }
                    }
                }
            }
            if loops {
                b.edge(root, root, Color::Two, 1);
            }
            Ok(b.build(root))
        }
        ProductKind::SfreeLoop | ProductKind::Free => unreachable!("handled above"),
    }
}

/// A letter of a product word: which factor it came from and which non-root
/// vertex of that factor it names.
type Letter = (Color, usize);

fn word_name(word: &[Letter], g1: &ColoredRootedGraph, g2: &ColoredRootedGraph) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter()
        .map(|&(side, v)| {
            let g = if side == Color::One { g1 } else { g2 };
            format!("{}:{}", side.as_u8(), g.vertex_name(v))
        })
        .collect::<Vec<_>>()
        .join("/")
}

/// The ball of graph distance `radius` around the root in the s-free loop or
/// free product.
///
/// Vertices of the infinite product are alternating words over the non-root
/// vertices of the factors (the empty word is the root). A copy of factor
/// `i` is attached at every word that does not end with an `i`-letter; in the
/// s-free product the copy of the second factor at the empty word is absent,
/// so words start with a 1-letter. The s-free loop product carries one extra
/// color-2 loop at the root.
pub fn ball_product(
    kind: ProductKind,
    g1: &ColoredRootedGraph,
    g2: &ColoredRootedGraph,
    radius: usize,
) -> Result<ColoredRootedGraph> {
    if !kind.needs_radius() {
        return Err(Error::NotBall {
            kind: kind.as_str().to_string(),
        });
    }
    if radius == 0 {
        return Err(Error::RadiusRequired {
            kind: kind.as_str().to_string(),
        });
    }
    let factor = |side: Color| if side == Color::One { g1 } else { g2 };
    let attaches = |word: &[Letter], side: Color| -> bool {
        if word.last().is_some_and(|&(s, _)| s == side) {
            return false;
        }
        !(kind == ProductKind::SfreeLoop && side == Color::Two && word.is_empty())
    };
    let extend = |word: &[Letter], side: Color, v: usize| -> Vec<Letter> {
        let mut w = word.to_vec();
        if v == factor(side).root() {
            w
        } else {
            w.push((side, v));
            w
        }
    };

    // Breadth-first expansion by graph distance.
    let mut index: HashMap<Vec<Letter>, usize> = HashMap::new();
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut dist = vec![0usize];
    index.insert(Vec::new(), 0);
    let mut head = 0;
    while head < words.len() {
        let word = words[head].clone();
        let d = dist[head];
        head += 1;
        if d == radius {
            continue;
        }
        let mut neighbors: Vec<Vec<Letter>> = Vec::new();
        // Edges inside the copy the word belongs to as a non-root vertex.
        if let Some(&(side, a)) = word.last() {
            let prefix = &word[..word.len() - 1];
            for (b, _, _) in factor(side).incident(a, None) {
                neighbors.push(extend(prefix, side, b));
            }
        }
        // Edges inside the copies rooted at this word.
        for side in [Color::One, Color::Two] {
            if attaches(&word, side) {
                for (b, _, _) in factor(side).incident(factor(side).root(), None) {
                    neighbors.push(extend(&word, side, b));
                }
            }
        }
        for nb in neighbors {
            if !index.contains_key(&nb) {
                index.insert(nb.clone(), words.len());
                words.push(nb);
                dist.push(d + 1);
            }
        }
    }

    // Every factor copy is identified by its attachment word; sweep each copy
    // once and keep the edges with both endpoints inside the ball.
    let mut b = ProductBuilder::new();
    for w in &words {
        b.vertex(word_name(w, g1, g2));
    }
    for word in &words {
        for side in [Color::One, Color::Two] {
            if !attaches(word, side) {
                continue;
            }
            for e in factor(side).edges() {
                let wa = extend(word, side, e.u);
                let wb = extend(word, side, e.v);
                if let (Some(&ia), Some(&ib)) = (index.get(&wa), index.get(&wb)) {
                    b.edge(ia, ib, side, e.mult);
                }
            }
        }
    }
    if kind == ProductKind::SfreeLoop {
        b.edge(0, 0, Color::Two, 1);
    }
    Ok(b.build(0))
}

/// Dispatch over all product kinds; ball kinds require a radius and finite
/// kinds reject one.
pub fn product(
    kind: ProductKind,
    g1: &ColoredRootedGraph,
    g2: &ColoredRootedGraph,
    radius: Option<usize>,
) -> Result<ColoredRootedGraph> {
    match (kind.needs_radius(), radius) {
        (true, Some(r)) => ball_product(kind, g1, g2, r),
        (true, None) => Err(Error::RadiusRequired {
            kind: kind.as_str().to_string(),
        }),
        (false, None) => finite_product(kind, g1, g2),
        (false, Some(_)) => Err(Error::NotBall {
            kind: kind.as_str().to_string(),
        }),
    }
}
