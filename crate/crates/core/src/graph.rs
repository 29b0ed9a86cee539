//! Defining graphs: finite simple undirected graphs on vertices `0..n`.
//!
//! Vertex sets are 64-bit masks, so a graph has at most [`MAX_VERTICES`]
//! vertices. That is far beyond anything the exact algebra can handle.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("vertex set is not a subset of the graph's vertices")]
    NotSubset,
    #[error("vertex set does not induce a connected subgraph")]
    NotConnected,
    #[error("circular indices have different moduli {0} and {1}")]
    ModulusMismatch(usize, usize),
    #[error("invalid graph JSON: {0}")]
    Json(String),
    #[error("unknown graph constructor '{0}'")]
    UnknownConstructor(String),
}

/// A subset of the vertices of some graph, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

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
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Disjoint nonempty blocks covering a ground set, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<VertexSet>,
}

impl Partition {
    fn from_blocks(mut blocks: Vec<VertexSet>) -> Self {
        blocks.sort_by_key(|b| b.first());
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, v: usize) -> Option<VertexSet> {
        self.blocks.iter().copied().find(|b| b.contains(v))
    }

    pub fn ground(&self) -> VertexSet {
        self.blocks.iter().fold(VertexSet::EMPTY, |acc, b| acc.union(*b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

/// An induced subgraph together with the host indices of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `vertices[k]` is the host vertex that became vertex `k`.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compaction {
    pub graph: Graph,
    /// `kept[k]` is the host vertex retained as vertex `k`.
    pub kept: Vec<usize>,
    /// `class_of[v]` is the new index of the representative of `v`'s class.
    pub class_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(GraphError::OutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(GraphError::Loop(i));
            }
            if adj[i].contains(j) {
                return Err(GraphError::DuplicateEdge(i.min(j), i.max(j)));
            }
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Ok(Graph { n, adj })
    }

    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, &[])
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooShort(n));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges)
    }

    /// The seven-vertex example graph whose compaction is a spider tree:
    /// a 4-clique on `{0,1,2,3}`, vertex 4 joined to `1,2,3`, and two
    /// leaves `5,6` hanging off 4. The drawing has no labels; this is one
    /// faithful reading of it.
    pub fn figure_one() -> Self {
        let edges = [
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (2, 3),
            (1, 3),
            (1, 4),
            (2, 4),
            (3, 4),
            (4, 5),
            (4, 6),
        ];
        Graph::new(7, &edges).expect("static edge list is valid")
    }

    /// Parses `cycle:<n>`, `complete:<n>`, `path:<n>`, `empty:<n>` or a
    /// JSON object `{"n":..,"edges":[[i,j],..]}`.
    pub fn from_spec(spec: &str) -> Result<Self, GraphError> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            return Graph::from_json(spec);
        }
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| GraphError::UnknownConstructor(spec.to_string()))?;
        let n: usize = arg
            .trim()
            .parse()
            .map_err(|_| GraphError::UnknownConstructor(spec.to_string()))?;
        match kind.trim() {
            "cycle" => Graph::cycle(n),
            "complete" => Graph::complete(n),
            "path" => Graph::path(n),
            "empty" | "free" => Graph::edgeless(n),
            _ => Err(GraphError::UnknownConstructor(spec.to_string())),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let edges: Vec<_> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(raw.n, &edges)
    }

    pub fn to_json(&self) -> String {
        let raw = GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        };
        serde_json::to_string(&raw).expect("graph serialization cannot fail")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.adj[i].iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i < self.n && self.adj[i].contains(j)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::OutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_subset(&self, set: VertexSet) -> Result<(), GraphError> {
        if set.is_subset(self.vertices()) {
            Ok(())
        } else {
            Err(GraphError::NotSubset)
        }
    }

    pub fn induced_subgraph(&self, set: VertexSet) -> Result<Subgraph, GraphError> {
        self.check_subset(set)?;
        let vertices: Vec<usize> = set.iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (k, &v) in vertices.iter().enumerate() {
            index[v] = k;
        }
        let mut edges = Vec::new();
        for (k, &v) in vertices.iter().enumerate() {
            for w in self.adj[v].intersection(set).iter().filter(|&w| w > v) {
                edges.push((k, index[w]));
            }
        }
        let graph = Graph::new(vertices.len(), &edges)?;
        Ok(Subgraph { graph, vertices })
    }

    /// The connected component of `v` inside the subgraph induced by `within`.
    pub fn component_within(&self, v: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier.iter() {
                next = next.union(self.adj[u]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Connected components of the subgraph induced by `within`.
    pub fn components_within(&self, within: VertexSet) -> Partition {
        let mut rest = within;
        let mut blocks = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.component_within(v, within);
            rest = rest.difference(comp);
            blocks.push(comp);
        }
        Partition::from_blocks(blocks)
    }

    pub fn connected_components(&self) -> Partition {
        self.components_within(self.vertices())
    }

    /// True iff `component` (which must be connected) is a single vertex or
    /// a simple path.
    pub fn is_chain(&self, component: VertexSet) -> Result<bool, GraphError> {
        self.check_subset(component)?;
        let Some(start) = component.first() else {
            return Err(GraphError::NotConnected);
        };
        if self.component_within(start, component) != component {
            return Err(GraphError::NotConnected);
        }
        let mut edge_ends = 0;
        for v in component.iter() {
            let d = self.adj[v].intersection(component).len();
            if d > 2 {
                return Ok(false);
            }
            edge_ends += d;
        }
        Ok(edge_ends / 2 + 1 == component.len())
    }

    /// `x` together with all of its neighbours.
    pub fn closed_neighborhood(&self, x: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(x)?;
        Ok(self.adj[x].with(x))
    }

    /// Classes of vertices with equal closed neighbourhoods.
    pub fn perp_classes(&self) -> Partition {
        let mut blocks: Vec<(VertexSet, VertexSet)> = Vec::new();
        for v in 0..self.n {
            let nb = self.adj[v].with(v);
            match blocks.iter_mut().find(|(key, _)| *key == nb) {
                Some((_, block)) => block.insert(v),
                None => blocks.push((nb, VertexSet::singleton(v))),
            }
        }
        Partition::from_blocks(blocks.into_iter().map(|(_, b)| b).collect())
    }

    pub fn perp_equivalent(&self, x: usize, y: usize) -> bool {
        x < self.n && y < self.n && self.adj[x].with(x) == self.adj[y].with(y)
    }

    /// Keeps the smallest vertex of every `~⊥` class.
    pub fn compaction(&self) -> Compaction {
        let classes = self.perp_classes();
        let kept: Vec<usize> = classes
            .blocks()
            .iter()
            .map(|b| b.first().expect("blocks are nonempty"))
            .collect();
        let mut sorted = kept.clone();
        sorted.sort_unstable();
        let keep_set: VertexSet = sorted.iter().copied().collect();
        let sub = self.induced_subgraph(keep_set).expect("representatives are vertices");
        let mut class_of = vec![0; self.n];
        for block in classes.blocks() {
            let rep = block.first().expect("blocks are nonempty");
            let new = sub.vertices.iter().position(|&v| v == rep).expect("kept");
            for v in block.iter() {
                class_of[v] = new;
            }
        }
        Compaction {
            graph: sub.graph,
            kept: sub.vertices,
            class_of,
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// An element of `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircIndex {
    modulus: usize,
    value: usize,
}

impl CircIndex {
    /// Reduces any integer into `Z_n`.
    pub fn new(modulus: usize, value: i64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        let v = value.rem_euclid(modulus as i64) as usize;
        CircIndex { modulus, value: v }
    }

    pub fn modulus(self) -> usize {
        self.modulus
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn offset(self, delta: i64) -> Self {
        CircIndex::new(self.modulus, self.value as i64 + delta)
    }
}

/// The lesser of `a - b` and `b - a` in `Z_n`.
pub fn circ_distance(a: CircIndex, b: CircIndex) -> Result<usize, GraphError> {
    if a.modulus != b.modulus {
        return Err(GraphError::ModulusMismatch(a.modulus, b.modulus));
    }
    Ok(circ(a.modulus, a.value, b.value))
}

pub(crate) fn circ(n: usize, a: usize, b: usize) -> usize {
    let d = (a + n - b % n) % n;
    d.min((n - d) % n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert!(matches!(Graph::new(4, &[(0, 0)]), Err(GraphError::Loop(0))));
        assert!(matches!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::OutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        let tri = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(tri, Graph::complete(3).unwrap());
        assert_eq!(Graph::figure_one().edge_count(), 11);
    }

    #[test]
    fn cycles() {
        assert_eq!(Graph::cycle(3).unwrap(), Graph::complete(3).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert!(!c4.adjacent(0, 2));
        assert!(c4.adjacent(3, 0));
        assert_eq!(Graph::cycle(5).unwrap().edge_count(), 5);
        assert!(matches!(Graph::cycle(2), Err(GraphError::CycleTooShort(2))));
    }

    #[test]
    fn induced() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.induced_subgraph(set(&[0, 2])).unwrap().graph.edge_count(), 0);
        let p = c5.induced_subgraph(set(&[0, 1, 2])).unwrap();
        assert_eq!(p.graph.edges(), vec![(0, 1), (1, 2)]);
        // C_4 on {0,1,3}: path 1-0-3
        let c4 = Graph::cycle(4).unwrap();
        let s = c4.induced_subgraph(set(&[0, 1, 3])).unwrap();
        assert_eq!(s.vertices, vec![0, 1, 3]);
        assert_eq!(s.graph.edges(), vec![(0, 1), (0, 2)]);
        assert!(matches!(c4.induced_subgraph(set(&[5])), Err(GraphError::NotSubset)));
    }

    #[test]
    fn components() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.connected_components().len(), 1);
        let sub = c5.components_within(set(&[0, 2, 3]));
        assert_eq!(sub.blocks(), &[set(&[0]), set(&[2, 3])]);
        assert_eq!(Graph::edgeless(3).unwrap().connected_components().len(), 3);
    }

    #[test]
    fn chains() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(c5.is_chain(set(&[3])).unwrap());
        assert!(c5.is_chain(set(&[0, 1, 2])).unwrap());
        assert!(!Graph::complete(3).unwrap().is_chain(set(&[0, 1, 2])).unwrap());
        assert!(!c5.is_chain(set(&[0, 1, 2, 3, 4])).unwrap());
        assert!(matches!(c5.is_chain(set(&[0, 2])), Err(GraphError::NotConnected)));
    }

    #[test]
    fn neighborhoods_and_classes() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.closed_neighborhood(0).unwrap(), set(&[4, 0, 1]));
        assert_eq!(
            Graph::complete(4).unwrap().closed_neighborhood(2).unwrap(),
            set(&[0, 1, 2, 3])
        );
        let fig = Graph::figure_one();
        assert_eq!(fig.closed_neighborhood(1).unwrap(), set(&[0, 1, 2, 3, 4]));
        assert!(c5.closed_neighborhood(5).is_err());

        assert_eq!(Graph::complete(4).unwrap().perp_classes().len(), 1);
        assert_eq!(c5.perp_classes().len(), 5);
        let classes = fig.perp_classes();
        assert_eq!(
            classes.blocks(),
            &[set(&[0]), set(&[1, 2, 3]), set(&[4]), set(&[5]), set(&[6])]
        );
    }

    #[test]
    fn compactions() {
        let k4 = Graph::complete(4).unwrap().compaction();
        assert_eq!(k4.graph.vertex_count(), 1);
        assert_eq!(k4.class_of, vec![0, 0, 0, 0]);

        let fig = Graph::figure_one().compaction();
        assert_eq!(fig.kept, vec![0, 1, 4, 5, 6]);
        assert_eq!(fig.graph.edges(), vec![(0, 1), (1, 2), (2, 3), (2, 4)]);
        assert_eq!(fig.class_of, vec![0, 1, 1, 1, 2, 3, 4]);

        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.compaction().graph, c4);
    }

    #[test]
    fn circular_distance() {
        let d = |n, a, b| circ_distance(CircIndex::new(n, a), CircIndex::new(n, b)).unwrap();
        assert_eq!(d(6, 0, 4), 2);
        assert_eq!(d(5, 1, 1), 0);
        assert_eq!(d(4, 0, 2), 2);
        assert_eq!(CircIndex::new(5, -1).value(), 4);
        assert!(circ_distance(CircIndex::new(4, 0), CircIndex::new(5, 0)).is_err());
    }

    #[test]
    fn json_roundtrip_normalizes() {
        let g = Graph::from_json(r#"{"n":3,"edges":[[2,0],[1,0]]}"#).unwrap();
        assert_eq!(g.to_json(), r#"{"n":3,"edges":[[0,1],[0,2]]}"#);
        assert_eq!(Graph::from_spec("cycle:5").unwrap(), Graph::cycle(5).unwrap());
        assert!(Graph::from_spec("wheel:5").is_err());
    }
}
