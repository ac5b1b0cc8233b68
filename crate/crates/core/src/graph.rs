//! Regular bipartite base graphs of girth at least 6.
//!
//! Nodes are split into a top side `0..L` and a bottom side `0..L`; an edge is
//! a `(top, bottom)` pair. Edge lists are kept sorted lexicographically, which
//! fixes the edge ids used by the code construction.

use std::collections::VecDeque;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Length of the shortest cycle, or `Infinite` for a forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    l: usize,
    r: usize,
    edges: Vec<(usize, usize)>,
    certified_girth: Option<Girth>,
}

impl BipartiteGraph {
    /// Wraps an edge list without validating it; see [`validate`](Self::validate).
    /// Edges are sorted. Endpoints must be below `l`.
    pub fn new(l: usize, r: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= l || v >= l) {
            return Err(Error::MalformedGraph(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{l}"
            )));
        }
        edges.sort_unstable();
        Ok(Self {
            l,
            r,
            edges,
            certified_girth: None,
        })
    }

    /// Nodes per side.
    pub fn l(&self) -> usize {
        self.l
    }

    /// Degree.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Sorted `(top, bottom)` pairs. The position in this list is the edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn certified_girth(&self) -> Option<Girth> {
        self.certified_girth
    }

    fn with_certified_girth(mut self, g: Girth) -> Self {
        self.certified_girth = Some(g);
        self
    }

    pub fn top_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.l];
        for &(u, _) in &self.edges {
            d[u] += 1;
        }
        d
    }

    pub fn bottom_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.l];
        for &(_, v) in &self.edges {
            d[v] += 1;
        }
        d
    }

    pub fn is_regular(&self) -> bool {
        self.edges.len() == self.l * self.r
            && self.top_degrees().iter().all(|&d| d == self.r)
            && self.bottom_degrees().iter().all(|&d| d == self.r)
    }

    pub fn is_simple(&self) -> bool {
        self.edges.windows(2).all(|w| w[0] != w[1])
    }

    /// Adjacency on the `2L` nodes: top `u` is node `u`, bottom `v` is `L + v`.
    /// Each entry is `(neighbor, edge id)`.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); 2 * self.l];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((self.l + v, e));
            adj[self.l + v].push((u, e));
        }
        adj
    }

    /// Exact girth by breadth-first search from every node.
    pub fn girth(&self) -> Result<Girth> {
        if !self.is_regular() {
            return Err(Error::MalformedGraph(format!(
                "not {}-regular on {}+{} nodes",
                self.r, self.l, self.l
            )));
        }
        if !self.is_simple() {
            return Err(Error::MalformedGraph("duplicate edge".into()));
        }
        Ok(self.girth_unchecked())
    }

    /// Girth of the underlying multigraph (parallel edges give girth 2).
    pub(crate) fn girth_unchecked(&self) -> Girth {
        let adj = self.adjacency();
        let n = adj.len();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut via = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.fill(usize::MAX);
            via.fill(usize::MAX);
            dist[root] = 0;
            queue.clear();
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                if 2 * dist[x] + 1 >= best {
                    break;
                }
                for &(y, e) in &adj[x] {
                    if e == via[x] {
                        continue;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        via[y] = e;
                        queue.push_back(y);
                    } else {
                        best = best.min(dist[x] + dist[y] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let regular = self.is_regular();
        let simple = self.is_simple();
        let girth = self.girth_unchecked();
        ValidationReport {
            regular,
            simple,
            girth,
            girth_at_least_6: girth.at_least(6),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub regular: bool,
    pub simple: bool,
    pub girth: Girth,
    pub girth_at_least_6: bool,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.regular && self.simple && self.girth_at_least_6
    }
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Canonical representatives of the points of PG(2, q): vectors whose first
/// nonzero coordinate is 1, in the order (1,a,b), (0,1,b), (0,0,1).
fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::with_capacity((q * q + q + 1) as usize);
    for a in 0..q {
        for b in 0..q {
            pts.push([1, a, b]);
        }
    }
    for b in 0..q {
        pts.push([0, 1, b]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Point/line incidence graph of the projective plane over the prime field of
/// order `q`: points on top, lines on the bottom.
pub fn projective_plane_incidence(q: u64) -> Result<BipartiteGraph> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let pts = projective_points(q);
    // Lines are the same coordinate vectors, incident when the dot product vanishes.
    let mut edges = Vec::new();
    for (u, p) in pts.iter().enumerate() {
        for (v, line) in pts.iter().enumerate() {
            if (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]) % q == 0 {
                edges.push((u, v));
            }
        }
    }
    let g = BipartiteGraph::new(pts.len(), (q + 1) as usize, edges)?;
    Ok(g.with_certified_girth(Girth::Finite(6)))
}

/// Search state for the edge-swap generator. `mult[u][v]` counts parallel
/// edges; `codeg[u][w]` counts common bottom neighbors of tops `u` and `w`
/// (with multiplicity).
struct SwapSearch {
    l: usize,
    edges: Vec<(usize, usize)>,
    mult: Vec<Vec<u32>>,
    codeg: Vec<Vec<u32>>,
}

#[inline]
fn pairs(x: u32) -> u64 {
    let x = u64::from(x);
    x * x.saturating_sub(1) / 2
}

impl SwapSearch {
    fn new(l: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut s = Self {
            l,
            edges,
            mult: vec![vec![0; l]; l],
            codeg: vec![vec![0; l]; l],
        };
        for &(u, v) in &s.edges {
            s.mult[u][v] += 1;
        }
        for u in 0..l {
            for w in u + 1..l {
                let c = (0..l).map(|v| s.mult[u][v] * s.mult[w][v]).sum();
                s.codeg[u][w] = c;
                s.codeg[w][u] = c;
            }
        }
        s
    }

    /// Parallel-edge pairs plus 4-cycles. Zero iff simple with girth >= 6.
    fn defect(&self) -> u64 {
        let mut d = 0;
        for u in 0..self.l {
            d += self.mult[u].iter().map(|&m| pairs(m)).sum::<u64>();
            d += (u + 1..self.l).map(|w| pairs(self.codeg[u][w])).sum::<u64>();
        }
        d
    }

    fn edge_is_defective(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        self.mult[u][v] > 1
            || (0..self.l).any(|w| w != u && self.mult[w][v] > 0 && self.codeg[u][w] > 1)
    }

    /// Adds or removes one copy of edge `(u, v)`, keeping `codeg` in step.
    fn toggle(&mut self, u: usize, v: usize, add: bool) {
        if !add {
            self.mult[u][v] -= 1;
        }
        for w in 0..self.l {
            if w != u && self.mult[w][v] > 0 {
                let m = self.mult[w][v];
                if add {
                    self.codeg[u][w] += m;
                    self.codeg[w][u] += m;
                } else {
                    self.codeg[u][w] -= m;
                    self.codeg[w][u] -= m;
                }
            }
        }
        if add {
            self.mult[u][v] += 1;
        }
    }

    /// Defect contributions that can change when rows `a` and `c` change.
    fn local_defect(&self, a: usize, c: usize) -> u64 {
        let mut d = 0;
        for &x in &[a, c] {
            d += self.mult[x].iter().map(|&m| pairs(m)).sum::<u64>();
            d += (0..self.l)
                .filter(|&w| w != x && !(x == c && w == a))
                .map(|w| pairs(self.codeg[x][w]))
                .sum::<u64>();
        }
        d
    }

    /// Rewires `(a,b),(c,d)` to `(a,d),(c,b)`.
    fn apply_swap(&mut self, i: usize, j: usize) {
        let (a, b) = self.edges[i];
        let (c, d) = self.edges[j];
        self.toggle(a, b, false);
        self.toggle(c, d, false);
        self.toggle(a, d, true);
        self.toggle(c, b, true);
        self.edges[i] = (a, d);
        self.edges[j] = (c, b);
    }

    /// Applies the lowest-indexed swap that strictly lowers the defect.
    fn improve(&mut self) -> bool {
        let m = self.edges.len();
        for i in 0..m {
            if !self.edge_is_defective(i) {
                continue;
            }
            for j in 0..m {
                let (a, b) = self.edges[i];
                let (c, d) = self.edges[j];
                if a == c || b == d {
                    continue;
                }
                let before = self.local_defect(a, c);
                self.apply_swap(i, j);
                if self.local_defect(a, c) < before {
                    return true;
                }
                self.apply_swap(i, j);
            }
        }
        false
    }
}

/// Random `r`-regular bipartite graph on `L + L` nodes with girth at least 6.
///
/// Each restart stacks `r` random perfect matchings and then descends on the
/// count of parallel edges and 4-cycles by degree-preserving edge swaps. A
/// restart ends when no swap strictly improves. Deterministic in `seed`.
pub fn random_girth6(l: usize, r: usize, seed: u64, max_iters: usize) -> Result<BipartiteGraph> {
    if l == 0 || r == 0 || r > l {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= r <= L, got L={l}, r={r}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..l).collect();
    for _ in 0..max_iters {
        let mut edges = Vec::with_capacity(l * r);
        for _ in 0..r {
            perm.shuffle(&mut rng);
            edges.extend(perm.iter().enumerate().map(|(u, &v)| (u, v)));
        }
        // Random edge order so swap tie-breaking does not always favor low tops.
        edges.shuffle(&mut rng);
        let mut search = SwapSearch::new(l, edges);
        while search.defect() > 0 {
            if !search.improve() {
                break;
            }
        }
        if search.defect() == 0 {
            let certified = if r == 1 {
                Girth::Infinite
            } else {
                Girth::Finite(6)
            };
            return Ok(BipartiteGraph::new(l, r, search.edges)?.with_certified_girth(certified));
        }
    }
    Err(Error::SearchExhausted { l, r, iters: max_iters })
}
