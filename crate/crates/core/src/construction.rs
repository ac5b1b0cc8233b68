//! Parity-check matrices for the four- and five-erasure codes built from a
//! base graph.
//!
//! Take `r` copies of an `r`-regular bipartite graph on `L + L` nodes. Each
//! edge of each copy is an information symbol. Each node of each copy is a
//! parity symbol over its `r` edges. Node position `j` across the copies is
//! tied together by one more parity `N_j`. The five-erasure variant adds
//! parities `S_i` over consecutive blocks of the top-side `N_j`.
//!
//! Column order: edge symbols (copy-major, edge id ascending), node symbols
//! (copy-major, node ascending, bottom node `v` is node `L + v`), `N_0..N_{2L-1}`,
//! then `S_0..`. Row order: node rows (copy-major), `N` rows, `S` rows.

use std::collections::BTreeMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::BipartiteGraph;

/// A code symbol by role. Copies are numbered from 1; everything else from 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Edge { copy: usize, edge: usize },
    Node { copy: usize, node: usize },
    N(usize),
    S(usize),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Symbol::Edge { copy, edge } => write!(f, "edge/i={copy}/e={edge}"),
            Symbol::Node { copy, node } => write!(f, "node/i={copy}/l={node}"),
            Symbol::N(j) => write!(f, "N/{j}"),
            Symbol::S(i) => write!(f, "S/{i}"),
        }
    }
}

/// Canonical numbering of the code symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolIndex {
    l: usize,
    r: usize,
    s_count: usize,
}

impl SymbolIndex {
    pub fn new(l: usize, r: usize, s_count: usize) -> Self {
        Self { l, r, s_count }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.l * self.r * self.r
    }

    pub fn node_count(&self) -> usize {
        2 * self.l * self.r
    }

    pub fn s_count(&self) -> usize {
        self.s_count
    }

    pub fn len(&self) -> usize {
        self.edge_count() + self.node_count() + 2 * self.l + self.s_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Column of edge `edge` in copy `copy` (1-based).
    pub fn edge(&self, copy: usize, edge: usize) -> usize {
        assert!((1..=self.r).contains(&copy) && edge < self.l * self.r);
        (copy - 1) * self.l * self.r + edge
    }

    /// Column of node `node` (`0..2L`) in copy `copy` (1-based).
    pub fn node(&self, copy: usize, node: usize) -> usize {
        assert!((1..=self.r).contains(&copy) && node < 2 * self.l);
        self.edge_count() + (copy - 1) * 2 * self.l + node
    }

    pub fn n_sym(&self, j: usize) -> usize {
        assert!(j < 2 * self.l);
        self.edge_count() + self.node_count() + j
    }

    pub fn s_sym(&self, i: usize) -> usize {
        assert!(i < self.s_count);
        self.edge_count() + self.node_count() + 2 * self.l + i
    }

    pub fn symbol(&self, col: usize) -> Option<Symbol> {
        let lr = self.l * self.r;
        let mut c = col;
        if c < self.edge_count() {
            return Some(Symbol::Edge {
                copy: c / lr + 1,
                edge: c % lr,
            });
        }
        c -= self.edge_count();
        if c < self.node_count() {
            return Some(Symbol::Node {
                copy: c / (2 * self.l) + 1,
                node: c % (2 * self.l),
            });
        }
        c -= self.node_count();
        if c < 2 * self.l {
            return Some(Symbol::N(c));
        }
        c -= 2 * self.l;
        (c < self.s_count).then_some(Symbol::S(c))
    }

    pub fn column(&self, sym: Symbol) -> usize {
        match sym {
            Symbol::Edge { copy, edge } => self.edge(copy, edge),
            Symbol::Node { copy, node } => self.node(copy, node),
            Symbol::N(j) => self.n_sym(j),
            Symbol::S(i) => self.s_sym(i),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len())
            .map(|c| self.symbol(c).expect("in range").to_string())
            .collect()
    }
}

/// A constructed code: its parity-check matrix, parameters and labeling.
#[derive(Clone, Debug)]
pub struct CodeInstance {
    pub h: BitMatrix,
    pub n: usize,
    pub r: usize,
    pub t: usize,
    /// `L r^2`, confirmed against `n - rank(H)` at build time.
    pub k_claimed: usize,
    pub index: SymbolIndex,
    pub base_graph: BipartiteGraph,
}

impl CodeInstance {
    pub fn l(&self) -> usize {
        self.index.l()
    }

    pub fn symbol(&self, col: usize) -> Option<Symbol> {
        self.index.symbol(col)
    }

    /// Hex SHA-256 of H: row count and column count as little-endian `u64`,
    /// then every packed row word as little-endian `u64`.
    pub fn content_hash(&self) -> String {
        matrix_hash(&self.h)
    }

    pub fn column_profile(&self) -> BTreeMap<usize, usize> {
        column_profile(self)
    }
}

pub fn matrix_hash(h: &BitMatrix) -> String {
    let mut hasher = Sha256::new();
    hasher.update((h.rows() as u64).to_le_bytes());
    hasher.update((h.cols() as u64).to_le_bytes());
    for i in 0..h.rows() {
        for w in h.row_words(i) {
            hasher.update(w.to_le_bytes());
        }
    }
    hex::encode(hasher.finalize())
}

/// Members of block `i` of the partition of the top-side `N` parities:
/// `N_{i r} .. N_{min((i+1) r, L) - 1}`.
pub fn s_block(l: usize, r: usize, i: usize) -> std::ops::Range<usize> {
    i * r..((i + 1) * r).min(l)
}

fn check_graph(g: &BipartiteGraph) -> Result<()> {
    if g.l() == 0 || g.r() == 0 {
        return Err(Error::InvalidGraph("L and r must be positive".into()));
    }
    let rep = g.validate();
    if !rep.regular {
        return Err(Error::InvalidGraph(format!("not {}-regular", g.r())));
    }
    if !rep.simple {
        return Err(Error::InvalidGraph("duplicate edge".into()));
    }
    if !rep.girth_at_least_6 {
        return Err(Error::InvalidGraph(format!("girth {} < 6", rep.girth)));
    }
    Ok(())
}

fn assemble(g: &BipartiteGraph, t: usize) -> Result<CodeInstance> {
    check_graph(g)?;
    let (l, r) = (g.l(), g.r());
    let s_count = if t == 5 { l.div_ceil(r) } else { 0 };
    let index = SymbolIndex::new(l, r, s_count);
    let n = index.len();

    let mut incident = vec![Vec::with_capacity(r); 2 * l];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(e);
        incident[l + v].push(e);
    }

    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(2 * l * r + 2 * l + s_count);
    for copy in 1..=r {
        for (node, edges) in incident.iter().enumerate() {
            let mut row = vec![index.node(copy, node)];
            row.extend(edges.iter().map(|&e| index.edge(copy, e)));
            rows.push(row);
        }
    }
    for j in 0..2 * l {
        let mut row = vec![index.n_sym(j)];
        row.extend((1..=r).map(|copy| index.node(copy, j)));
        rows.push(row);
    }
    for i in 0..s_count {
        let mut row = vec![index.s_sym(i)];
        row.extend(s_block(l, r, i).map(|j| index.n_sym(j)));
        rows.push(row);
    }

    let h = BitMatrix::from_row_supports(n, &rows)?;
    let expected = rows.len();
    let rank = h.rank();
    if rank != expected {
        return Err(Error::RankDeficient { rank, expected });
    }
    let k_claimed = l * r * r;
    debug_assert_eq!(n - rank, k_claimed);
    Ok(CodeInstance {
        h,
        n,
        r,
        t,
        k_claimed,
        index,
        base_graph: g.clone(),
    })
}

/// Four-erasure code over `r` copies of `g`.
pub fn build_t4(g: &BipartiteGraph) -> Result<CodeInstance> {
    assemble(g, 4)
}

/// Five-erasure code: [`build_t4`] plus `ceil(L/r)` block parities `S_i`.
pub fn build_t5(g: &BipartiteGraph) -> Result<CodeInstance> {
    assemble(g, 5)
}

pub fn build(g: &BipartiteGraph, t: usize) -> Result<CodeInstance> {
    match t {
        4 | 5 => assemble(g, t),
        _ => Err(Error::InvalidParameters(format!("t must be 4 or 5, got {t}"))),
    }
}

/// Histogram of column weights of H.
pub fn column_profile(code: &CodeInstance) -> BTreeMap<usize, usize> {
    code.h.column_weight_histogram()
}
