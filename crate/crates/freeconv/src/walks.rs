//! Walk statistics on finite colored rooted graphs.
//!
//! Three families of counts, all exact integers:
//!
//! * spectral moments: closed walks of length `n` from the root, read off
//!   `A^n` applied to the root indicator;
//! * first-return counts `|F_n(e)|`: closed walks whose only return to the
//!   root is the final step, via `A (P_perp A)^(n-1)` with `P_perp` the
//!   projection away from the root;
//! * alternating double-return counts `|D_2n(e)|`: closed walks of length
//!   `2n` that alternate colors starting with color 1 and split into exactly
//!   two consecutive first-return walks. The matrix route applies the same
//!   first-return recursion to `Z = A_2 A_1` (one color-1 step, then one
//!   color-2 step); it counts d-walks whenever the graph has no rooted
//!   alternating first-return walk of even length, which every product
//!   construction in this crate satisfies. A brute-force enumeration is kept
//!   as an independent oracle.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::{Color, ColoredRootedGraph};

/// Per-order walk counts of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTable {
    pub max_n: usize,
    pub spectral: Vec<BigInt>,
    pub first_return: Vec<BigInt>,
    pub dwalks: Vec<BigInt>,
}

impl WalkTable {
    /// Assembles the three matrix-route statistics for `n = 1..=max_n`.
    pub fn build(g: &ColoredRootedGraph, max_n: usize) -> Self {
        WalkTable {
            max_n,
            spectral: spectral_moments(g, max_n),
            first_return: first_return_moments(g, max_n),
            dwalks: dwalk_counts_matrix(g, max_n),
        }
    }
}

fn matvec(a: &[Vec<u64>], x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| {
            let mut s = BigInt::zero();
            for (c, xi) in row.iter().zip(x) {
                if *c != 0 {
                    s += xi * *c;
                }
            }
            s
        })
        .collect()
}

fn root_indicator(n: usize, root: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[root] = BigInt::one();
    v
}

/// Closed-walk counts from the root: entry `n` is the root component of
/// `A^n` applied to the root indicator.
pub fn spectral_moments(g: &ColoredRootedGraph, max_n: usize) -> Vec<BigInt> {
    let a = g.adjacency();
    let root = g.root();
    let mut v = root_indicator(g.vertex_count(), root);
    let mut out = Vec::with_capacity(max_n);
    for _ in 0..max_n {
        v = matvec(&a, &v);
        out.push(v[root].clone());
    }
    out
}

/// First-return recursion shared by the plain and alternating counters: after
/// each application the root component is recorded and then projected away.
fn first_return_recursion<F>(step: F, count: usize, size: usize, root: usize) -> Vec<BigInt>
where
    F: Fn(&[BigInt]) -> Vec<BigInt>,
{
    let mut v = root_indicator(size, root);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let w = step(&v);
        out.push(w[root].clone());
        v = w;
        v[root] = BigInt::zero();
    }
    out
}

/// Counts of rooted f-walks `|F_n(e)|` for `n = 1..=max_n`. Agrees with the
/// first-return moments of the spectral sequence.
pub fn first_return_moments(g: &ColoredRootedGraph, max_n: usize) -> Vec<BigInt> {
    let a = g.adjacency();
    first_return_recursion(|v| matvec(&a, v), max_n, g.vertex_count(), g.root())
}

/// Alternating double-return counts by the matrix route: the first-return
/// recursion for `Z = A_2 A_1`, applied as one color-1 step followed by one
/// color-2 step. Pair with [`even_fwalk_check`]; on graphs with rooted even
/// alternating f-walks this counts a different walk class.
pub fn dwalk_counts_matrix(g: &ColoredRootedGraph, max_n: usize) -> Vec<BigInt> {
    let (a1, a2) = g.adjacency_split();
    first_return_recursion(
        |v| matvec(&a2, &matvec(&a1, v)),
        max_n,
        g.vertex_count(),
        g.root(),
    )
}

/// Alternating double-return counts by exhaustive enumeration.
///
/// Walks of length `2n` from the root are explored edge by edge: colors must
/// alternate starting with color 1, the walk must revisit the root exactly
/// once before the final step, and both segments must be first-return walks.
/// Parallel edges contribute the product of their multiplicities. Exponential
/// in `2n`; meant for small orders as an oracle.
pub fn dwalk_counts_bruteforce(g: &ColoredRootedGraph, max_n: usize) -> Vec<BigInt> {
    let root = g.root();
    let size = g.vertex_count();
    let mut incident: Vec<[Vec<(usize, u64)>; 2]> = vec![[Vec::new(), Vec::new()]; size];
    for (x, lists) in incident.iter_mut().enumerate() {
        for (y, c, m) in g.incident(x, Some(Color::One)) {
            debug_assert_eq!(c, Color::One);
            lists[0].push((y, m));
        }
        for (y, c, m) in g.incident(x, Some(Color::Two)) {
            debug_assert_eq!(c, Color::Two);
            lists[1].push((y, m));
        }
    }

    (1..=max_n)
        .map(|n| {
            let steps = 2 * n;
            let mut total = BigInt::zero();
            // Depth-first over (vertex, steps taken, interior root visits,
            // multiplicity product so far).
            let mut stack: Vec<(usize, usize, u8, u64)> = vec![(root, 0, 0, 1)];
            while let Some((x, k, visits, mult)) = stack.pop() {
                if k == steps {
                    if x == root && visits == 1 {
                        total += mult;
                    }
                    continue;
                }
                let color_idx = k % 2; // even steps take color 1
                for &(y, m) in &incident[x][color_idx] {
                    let mut v = visits;
                    if y == root && k + 1 < steps {
                        v += 1;
                        if v > 1 {
                            continue;
                        }
                    }
                    stack.push((y, k + 1, v, mult * m));
                }
            }
            total
        })
        .collect()
}

/// True if no rooted alternating f-walk of even length `<= max_len` exists.
/// This is the hypothesis under which the matrix route counts d-walks.
pub fn even_fwalk_check(g: &ColoredRootedGraph, max_len: usize) -> bool {
    let root = g.root();
    let size = g.vertex_count();
    // reach[v][c]: an alternating walk of the current length ends at v (not
    // the root) with last color c and no interior root visit.
    let mut reach = vec![[false; 2]; size];
    for (y, c, _) in g.incident(root, None) {
        if y != root {
            reach[y][(c.as_u8() - 1) as usize] = true;
        }
    }
    for len in 1..max_len {
        // Closing an alternating walk of length `len` with one more edge to
        // the root makes an f-walk of length len + 1.
        if (len + 1) % 2 == 0 {
            for (x, flags) in reach.iter().enumerate() {
                for c in [Color::One, Color::Two] {
                    if !flags[(c.as_u8() - 1) as usize] {
                        continue;
                    }
                    let close = c.other();
                    if g.incident(x, Some(close))
                        .iter()
                        .any(|&(y, _, _)| y == root)
                    {
                        return false;
                    }
                }
            }
        }
        let mut next = vec![[false; 2]; size];
        for (x, flags) in reach.iter().enumerate() {
            for c in [Color::One, Color::Two] {
                if !flags[(c.as_u8() - 1) as usize] {
                    continue;
                }
                let step = c.other();
                for (y, _, _) in g.incident(x, Some(step)) {
                    if y != root {
                        next[y][(step.as_u8() - 1) as usize] = true;
                    }
                }
            }
        }
        reach = next;
    }
    true
}
