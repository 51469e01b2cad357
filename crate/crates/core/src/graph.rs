//! Immutable simple graphs on vertex set `{0..n-1}` with bitset adjacency
//! rows, plus the structural operations the bound algebra needs:
//! complement, join, induced subgraphs, components and join factorization.

use std::fmt;

/// Largest supported vertex count. Adjacency rows are single `u64` bitsets.
pub const MAX_ORDER: usize = 64;

/// A set of vertices as a 64-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All of `{0..n-1}`.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= MAX_ORDER);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, v: usize) -> VertexSet {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> VertexSet {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn smallest(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            debug_assert!(v < MAX_ORDER);
            s = s.with(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Index of the unordered pair `(i, j)`, `i < j`, in upper-triangle order
/// `x(0,1), x(0,2), x(1,2), x(0,3), ...` (all pairs ending at `j` grouped,
/// ascending in `i`). Shared by the edge-mask corpus encoding and graph6.
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// An immutable simple graph. Vertices are `0..n-1`; `adj[v]` holds the
/// neighbor bitset of `v`. Symmetric, loop-free, `1 <= n <= MAX_ORDER`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n` is zero or exceeds [`MAX_ORDER`].
    pub fn empty(n: usize) -> Graph {
        assert!(n >= 1 && n <= MAX_ORDER, "order {n} out of range 1..={MAX_ORDER}");
        Graph { n, adj: vec![0; n] }
    }

    /// Graph with the given undirected edges. Panics on out-of-range
    /// endpoints or self-loops.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            assert!(u < n && v < n && u != v, "bad edge ({u},{v}) for order {n}");
            g.adj[u] |= 1u64 << v;
            g.adj[v] |= 1u64 << u;
        }
        g
    }

    /// Rows built by trusted internal code; invariants checked in debug only.
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Graph {
        if cfg!(debug_assertions) {
            Graph::from_adj_rows(adj)
        } else {
            let n = adj.len();
            Graph { n, adj }
        }
    }

    /// Builds a graph from adjacency rows, validating symmetry, zero
    /// diagonal and that no bit at position `>= n` is set.
    pub fn from_adj_rows(adj: Vec<u64>) -> Graph {
        let n = adj.len();
        assert!(n >= 1 && n <= MAX_ORDER, "order {n} out of range 1..={MAX_ORDER}");
        let mask = VertexSet::full(n).0;
        for (v, &row) in adj.iter().enumerate() {
            assert_eq!(row & !mask, 0, "row {v} has bits outside 0..{n}");
            assert_eq!(row >> v & 1, 0, "self-loop at {v}");
        }
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(adj[i] >> j & 1, adj[j] >> i & 1, "asymmetric at ({i},{j})");
            }
        }
        Graph { n, adj }
    }

    /// Graph of order `n` from an upper-triangle edge bitmask in
    /// [`pair_index`] order. Only valid for `n*(n-1)/2 <= 64`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Graph {
        assert!(n >= 1 && n * (n - 1) / 2 <= 64, "order {n} too large for an edge mask");
        let mut g = Graph::empty(n);
        for j in 1..n {
            for i in 0..j {
                if mask >> pair_index(i, j) & 1 == 1 {
                    g.adj[i] |= 1u64 << j;
                    g.adj[j] |= 1u64 << i;
                }
            }
        }
        g
    }

    /// Inverse of [`Graph::from_edge_mask`].
    pub fn edge_mask(&self) -> u64 {
        assert!(self.n * (self.n - 1) / 2 <= 64);
        let mut mask = 0u64;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    mask |= 1u64 << pair_index(i, j);
                }
            }
        }
        mask
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbor bitset of `v`.
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, ascending in [`pair_index`] order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    /// Same vertices, edge iff non-edge.
    pub fn complement(&self) -> Graph {
        let mask = VertexSet::full(self.n).0;
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & mask & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Join of two or more parts: disjoint union plus all cross edges.
    /// Part 0 keeps its labels; part `i` is offset by the preceding orders.
    pub fn join(parts: &[Graph]) -> Graph {
        assert!(parts.len() >= 2, "join needs at least two parts");
        let n: usize = parts.iter().map(|p| p.n).sum();
        assert!(n <= MAX_ORDER, "join order {n} exceeds {MAX_ORDER}");
        let full = VertexSet::full(n).0;
        let mut adj = Vec::with_capacity(n);
        let mut offset = 0usize;
        for part in parts {
            let block = if part.n == 64 {
                u64::MAX
            } else {
                ((1u64 << part.n) - 1) << offset
            };
            for v in 0..part.n {
                // all vertices outside this part, plus neighbors inside it
                adj.push((full & !block) | (part.adj[v] << offset));
            }
            offset += part.n;
        }
        Graph { n, adj }
    }

    /// Subgraph induced by `keep`, relabeled to `0..keep.len()-1` in
    /// ascending vertex order.
    ///
    /// Panics if `keep` is empty or not a subset of the vertices.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Graph {
        assert!(!keep.is_empty(), "induced subgraph needs a nonempty vertex set");
        assert!(keep.is_subset_of(self.vertices()), "keep set out of range");
        let verts = keep.to_vec();
        let mut g = Graph::empty(verts.len());
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.adj[a] |= 1u64 << b;
                    g.adj[b] |= 1u64 << a;
                }
            }
        }
        g
    }

    /// Deletes one vertex.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        assert!(self.n >= 2, "cannot remove the last vertex");
        self.induced_subgraph(self.vertices().without(v))
    }

    /// Connected components as vertex sets, ordered by smallest contained
    /// vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.neighbors(v));
                }
                frontier = next.difference(comp);
                comp = comp.union(next);
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Maximal factorization of the graph as an iterated join. The factors
    /// are the induced subgraphs on the components of the complement,
    /// ordered by smallest original vertex; there is a single factor iff
    /// the complement is connected.
    pub fn join_factorization(&self) -> JoinFactorization {
        let comps = self.complement().components();
        let mut vertex_map = vec![(0usize, 0usize); self.n];
        let mut factors = Vec::with_capacity(comps.len());
        for (fi, comp) in comps.iter().enumerate() {
            for (within, v) in comp.iter().enumerate() {
                vertex_map[v] = (fi, within);
            }
            factors.push(self.induced_subgraph(*comp));
        }
        JoinFactorization { factors, vertex_map }
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            let (a, b) = (perm[u], perm[v]);
            g.adj[a] |= 1u64 << b;
            g.adj[b] |= 1u64 << a;
        }
        g
    }

    /// Brute-force isomorphism test by permutation search. Intended for
    /// small orders only (tests and the 5-cycle recognizer).
    pub fn is_isomorphic_to(&self, other: &Graph) -> bool {
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut degs_a: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut degs_b: Vec<usize> = (0..self.n).map(|v| other.degree(v)).collect();
        degs_a.sort_unstable();
        degs_b.sort_unstable();
        if degs_a != degs_b {
            return false;
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        permute_search(self, other, &mut perm, 0)
    }

    /// True iff this graph is a 5-cycle (as an unlabeled graph).
    pub fn is_five_cycle(&self) -> bool {
        self.n == 5
            && self.edge_count() == 5
            && (0..5).all(|v| self.degree(v) == 2)
            && self.is_connected()
    }
}

fn permute_search(a: &Graph, b: &Graph, perm: &mut Vec<usize>, k: usize) -> bool {
    let n = a.order();
    if k == n {
        return (0..n).all(|u| (u + 1..n).all(|v| a.has_edge(u, v) == b.has_edge(perm[u], perm[v])));
    }
    for i in k..n {
        perm.swap(k, i);
        // prune: edges among the first k+1 placed vertices must agree
        let ok = (0..k).all(|u| a.has_edge(u, k) == b.has_edge(perm[u], perm[k]));
        if ok && permute_search(a, b, perm, k + 1) {
            return true;
        }
        perm.swap(k, i);
    }
    false
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A graph written as an iterated join `C_1 + ... + C_m` with each factor's
/// complement connected, together with the relabeling back to the original
/// vertices.
#[derive(Clone, Debug)]
pub struct JoinFactorization {
    /// Factors ordered by smallest original vertex.
    pub factors: Vec<Graph>,
    /// `vertex_map[v] = (factor index, vertex within factor)`.
    pub vertex_map: Vec<(usize, usize)>,
}

impl JoinFactorization {
    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Rebuilds the original labeled graph from the factors.
    pub fn reassemble(&self) -> Graph {
        if self.factors.len() == 1 {
            // one factor means the component was the whole vertex set, so
            // the induced relabeling was the identity
            return self.factors[0].clone();
        }
        let n = self.vertex_map.len();
        let joined = Graph::join(&self.factors);
        // map joined labels (factor offset + within) back to original labels
        let mut offsets = vec![0usize; self.factors.len()];
        for fi in 1..self.factors.len() {
            offsets[fi] = offsets[fi - 1] + self.factors[fi - 1].order();
        }
        let mut perm = vec![0usize; n];
        for (orig, &(fi, within)) in self.vertex_map.iter().enumerate() {
            perm[offsets[fi] + within] = orig;
        }
        joined.permute(&perm)
    }
}
