//! Exact loopless digraphs with bitset adjacency, and the digraph
//! constructions used throughout: wreath product, deleted wreath product,
//! block quotient, twin classes, and the all-or-nothing cross-arc test.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Default cap on vertex counts of constructed digraphs.
pub const VERTEX_CAP: usize = 4096;

/// A loopless directed graph on vertices 0..n with an exact arc set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, arcs={})", self.n, self.arc_count())
    }
}

impl Digraph {
    pub fn empty(n: usize) -> Digraph {
        let words = n.div_ceil(64).max(1);
        Digraph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Digraph {
        let mut d = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    d.set_arc(u, v);
                }
            }
        }
        d
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Digraph> {
        let mut d = Digraph::empty(n);
        for &(u, v) in arcs {
            if u == v {
                return Err(Error::LoopArc { u });
            }
            if u >= n || v >= n {
                return Err(Error::BadPartition {
                    detail: format!("arc ({u},{v}) outside 0..{n}"),
                });
            }
            d.set_arc(u, v);
        }
        Ok(d)
    }

    #[inline]
    pub(crate) fn set_arc(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.rows[u * self.words + v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn out_neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.has_arc(u, v)).collect()
    }

    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_arc(u, v)).collect()
    }

    /// Sorted arc list; the canonical form for serialization and equality
    /// against expected fixtures.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.arc_count());
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_arc(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn out_row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn complement(&self) -> Digraph {
        let mut d = Digraph::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && !self.has_arc(u, v) {
                    d.set_arc(u, v);
                }
            }
        }
        d
    }

    /// Induced subdigraph on the given (sorted, distinct) vertices,
    /// relabeled 0..k in that order.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut d = Digraph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i != j && self.has_arc(u, v) {
                    d.set_arc(i, j);
                }
            }
        }
        d
    }

    /// Relabel vertices by a bijection: vertex u becomes map[u].
    pub fn relabeled(&self, map: &[usize]) -> Digraph {
        let mut d = Digraph::empty(self.n);
        for (u, v) in self.arcs() {
            d.set_arc(map[u], map[v]);
        }
        d
    }

    pub fn is_complete(&self) -> bool {
        self.arc_count() == self.n * (self.n.saturating_sub(1))
    }

    pub fn is_empty_graph(&self) -> bool {
        self.arc_count() == 0
    }

    /// Weakly connected components, each sorted, ordered by minimum vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(u) = stack.pop() {
                for v in 0..self.n {
                    if comp[v] == usize::MAX && (self.has_arc(u, v) || self.has_arc(v, u)) {
                        comp[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        let mut cells = vec![Vec::new(); count];
        for v in 0..self.n {
            cells[comp[v]].push(v);
        }
        cells
    }
}

/// A partition of the vertex set into disjoint covering cells, ordered by
/// minimal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    pub cells: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(mut cells: Vec<Vec<usize>>) -> VertexPartition {
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.sort_by_key(|c| c.first().copied().unwrap_or(usize::MAX));
        VertexPartition { cells }
    }

    pub fn singletons(n: usize) -> VertexPartition {
        VertexPartition {
            cells: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// Check that the cells exactly cover 0..n.
    pub fn validate(&self, n: usize) -> Result<Vec<usize>> {
        let mut idx = vec![usize::MAX; n];
        for (c, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                if v >= n {
                    return Err(Error::BadPartition {
                        detail: format!("vertex {v} outside 0..{n}"),
                    });
                }
                if idx[v] != usize::MAX {
                    return Err(Error::BadPartition {
                        detail: format!("vertex {v} appears in two cells"),
                    });
                }
                idx[v] = c;
            }
        }
        if let Some(v) = idx.iter().position(|&c| c == usize::MAX) {
            return Err(Error::BadPartition {
                detail: format!("vertex {v} uncovered"),
            });
        }
        Ok(idx)
    }
}

/// Wreath product: one copy of `inner` per vertex of `outer`, with complete
/// one-way joins along arcs of `outer`. Vertex (u,v) is u*|inner| + v.
pub fn wreath(outer: &Digraph, inner: &Digraph) -> Result<Digraph> {
    wreath_with_cap(outer, inner, VERTEX_CAP)
}

pub fn wreath_with_cap(outer: &Digraph, inner: &Digraph, cap: usize) -> Result<Digraph> {
    let (n1, n2) = (outer.vertex_count(), inner.vertex_count());
    let size = n1.saturating_mul(n2);
    if size > cap {
        return Err(Error::SizeOverflow { size, cap });
    }
    let mut d = Digraph::empty(size);
    for u in 0..n1 {
        for (v, vp) in inner.arcs() {
            d.set_arc(u * n2 + v, u * n2 + vp);
        }
    }
    for (u, up) in outer.arcs() {
        for v in 0..n2 {
            for vp in 0..n2 {
                d.set_arc(u * n2 + v, up * n2 + vp);
            }
        }
    }
    Ok(d)
}

/// Deleted wreath product: like the wreath product but cross arcs between
/// vertices sharing the second coordinate are omitted.
pub fn deleted_wreath(outer: &Digraph, inner: &Digraph) -> Result<Digraph> {
    deleted_wreath_with_cap(outer, inner, VERTEX_CAP)
}

pub fn deleted_wreath_with_cap(outer: &Digraph, inner: &Digraph, cap: usize) -> Result<Digraph> {
    let (n1, n2) = (outer.vertex_count(), inner.vertex_count());
    let size = n1.saturating_mul(n2);
    if size > cap {
        return Err(Error::SizeOverflow { size, cap });
    }
    let mut d = Digraph::empty(size);
    for u in 0..n1 {
        for (v, vp) in inner.arcs() {
            d.set_arc(u * n2 + v, u * n2 + vp);
        }
    }
    for (u, up) in outer.arcs() {
        for v in 0..n2 {
            for vp in 0..n2 {
                if v != vp {
                    d.set_arc(u * n2 + v, up * n2 + vp);
                }
            }
        }
    }
    Ok(d)
}

/// Block quotient: cells become vertices; an arc joins two distinct cells
/// whenever any arc of the original digraph crosses between them.
pub fn quotient(d: &Digraph, partition: &VertexPartition) -> Result<Digraph> {
    let idx = partition.validate(d.vertex_count())?;
    let m = partition.cells.len();
    let mut q = Digraph::empty(m);
    for (u, v) in d.arcs() {
        if idx[u] != idx[v] {
            q.set_arc(idx[u], idx[v]);
        }
    }
    Ok(q)
}

/// Partition into twin classes: vertices with identical out-neighbor and
/// in-neighbor sets. Returns the partition and whether any class has two
/// or more vertices (the digraph is then reducible).
pub fn twin_classes(d: &Digraph) -> (VertexPartition, bool) {
    let n = d.vertex_count();
    let mut in_rows: Vec<Vec<u64>> = vec![vec![0; d.words]; n];
    for (u, v) in d.arcs() {
        in_rows[v][u / 64] |= 1u64 << (u % 64);
    }
    let mut classes: HashMap<(Vec<u64>, Vec<u64>), Vec<usize>> = HashMap::new();
    for u in 0..n {
        let key = (d.out_row(u).to_vec(), in_rows[u].clone());
        classes.entry(key).or_default().push(u);
    }
    let cells: Vec<Vec<usize>> = classes.into_values().collect();
    let reducible = cells.iter().any(|c| c.len() >= 2);
    (VertexPartition::new(cells), reducible)
}

/// The all-or-nothing cross-arc condition: for every ordered pair of
/// distinct cells, either every arc from the first to the second is present
/// or none is.
pub fn wreath_condition(d: &Digraph, partition: &VertexPartition) -> Result<bool> {
    let _ = partition.validate(d.vertex_count())?;
    for (ci, a) in partition.cells.iter().enumerate() {
        for (cj, b) in partition.cells.iter().enumerate() {
            if ci == cj {
                continue;
            }
            let first = d.has_arc(a[0], b[0]);
            for &u in a {
                for &v in b {
                    if d.has_arc(u, v) != first {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// DOT rendering; when a partition is supplied its cells become clusters.
pub fn to_dot(d: &Digraph, partition: Option<&VertexPartition>, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {name} {{\n"));
    match partition {
        Some(p) => {
            for (i, cell) in p.cells.iter().enumerate() {
                out.push_str(&format!("  subgraph cluster_{i} {{\n"));
                for &v in cell {
                    out.push_str(&format!("    v{v};\n"));
                }
                out.push_str("  }\n");
            }
        }
        None => {
            for v in 0..d.vertex_count() {
                out.push_str(&format!("  v{v};\n"));
            }
        }
    }
    for (u, v) in d.arcs() {
        out.push_str(&format!("  v{u} -> v{v};\n"));
    }
    out.push_str("}\n");
    out
}

/// Directed cycle 0 -> 1 -> ... -> n-1 -> 0.
pub fn directed_cycle(n: usize) -> Digraph {
    let arcs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Digraph::from_arcs(n, &arcs).unwrap()
}

/// Undirected cycle as a digraph with arcs both ways.
pub fn undirected_cycle(n: usize) -> Digraph {
    let mut arcs = Vec::new();
    for i in 0..n {
        arcs.push((i, (i + 1) % n));
        arcs.push(((i + 1) % n, i));
    }
    Digraph::from_arcs(n, &arcs).unwrap()
}
