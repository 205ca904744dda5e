//! Multigraph core: vertices and edges with stable identities, loops and
//! parallel edges allowed, plus the editing operations the reduction
//! machinery builds on.
//!
//! Identity is the load-bearing property here. Deleting, contracting, or
//! suppressing never renumbers the surviving vertices and edges, so a witness
//! computed on a derived graph can still point back into the original.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

mod compact;
mod fixtures;
mod format;

pub(crate) use compact::Compact;
pub use fixtures::{fixture, fixture_names};
pub use format::{
    encode_graph6, encode_sparse6, parse_adjacency, parse_graph6, parse_graph6_or_sparse6,
    parse_sparse6, write_adjacency,
};

/// Identifier of a vertex. Ids are stable across edits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct VertexId(pub u32);

/// Identifier of an edge. Ids are stable across edits; freshly created edges
/// (contraction and suppression byproducts) receive ids never used before.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An undirected multigraph. A loop contributes two to its vertex's degree.
///
/// The structure is a plain value: editing operations take `&self` and return
/// a new graph, so concurrent readers never observe a half-edited state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    next_edge: u32,
}

impl Default for MultiGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl MultiGraph {
    /// The empty graph.
    pub fn new() -> Self {
        MultiGraph { vertices: BTreeSet::new(), edges: BTreeMap::new(), next_edge: 0 }
    }

    /// A graph with vertices `0..n` and no edges.
    pub fn with_vertices(n: u32) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.vertices.insert(VertexId(i));
        }
        g
    }

    /// Builds a graph on vertices `0..n` from an endpoint list. Loops and
    /// repeated pairs are allowed; edge ids follow list order.
    pub fn from_edges(n: u32, pairs: &[(u32, u32)]) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for &(u, v) in pairs {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    /// Inserts a concrete vertex id, returning whether it was new.
    pub fn insert_vertex(&mut self, v: VertexId) -> bool {
        self.vertices.insert(v)
    }

    /// Allocates and inserts a fresh vertex (one past the current maximum id).
    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.vertices.iter().next_back().map_or(0, |v| v.0 + 1));
        self.vertices.insert(id);
        id
    }

    /// Adds an edge between two existing vertices and returns its fresh id.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if !self.vertices.contains(&u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.vertices.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        let id = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.insert(id, (u, v));
        Ok(id)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges (loops and parallels each count once).
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    /// Edge ids in ascending order.
    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    /// Edges as `(id, u, v)` in ascending id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(u, v))| (e, u, v))
    }

    /// Both endpoints of an edge; equal endpoints mean a loop.
    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        self.edges.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn is_loop(&self, e: EdgeId) -> Result<bool> {
        let (u, v) = self.endpoints(e)?;
        Ok(u == v)
    }

    /// Degree of a vertex. A loop contributes two.
    pub fn degree(&self, v: VertexId) -> Result<usize> {
        if !self.vertices.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut d = 0;
        for &(a, b) in self.edges.values() {
            if a == v {
                d += 1;
            }
            if b == v {
                d += 1;
            }
        }
        Ok(d)
    }

    /// True when every vertex has degree exactly three. The empty graph
    /// satisfies this vacuously; pair with [`MultiGraph::is_empty`] when the
    /// distinction matters.
    pub fn is_cubic(&self) -> bool {
        self.vertices().all(|v| self.degree(v).unwrap() == 3)
    }

    /// Incidence lists: for each vertex, `(edge, other endpoint)` pairs in
    /// edge-id order. A loop appears twice at its vertex, once per end, so
    /// `adj[v].len()` equals the degree of `v`.
    pub fn adjacency(&self) -> BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> {
        let mut adj: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> =
            self.vertices().map(|v| (v, Vec::new())).collect();
        for (&e, &(u, v)) in &self.edges {
            adj.get_mut(&u).unwrap().push((e, v));
            adj.get_mut(&v).unwrap().push((e, u));
        }
        adj
    }

    /// Ids of edges incident to `v` (a loop listed once), ascending.
    pub fn incident_edges(&self, v: VertexId) -> Result<Vec<EdgeId>> {
        if !self.vertices.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(self
            .edges
            .iter()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(&e, _)| e)
            .collect())
    }

    /// Distinct neighbors of `v` (excluding `v` itself), ascending.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        if !self.vertices.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut out = BTreeSet::new();
        for &(a, b) in self.edges.values() {
            if a == v && b != v {
                out.insert(b);
            }
            if b == v && a != v {
                out.insert(a);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Vertex sets of connected components, each sorted, ordered by minimum
    /// vertex. Isolated vertices form their own components.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let adj = self.adjacency();
        let mut out = Vec::new();
        for start in self.vertices() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &(_, w) in &adj[&v] {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// New graph with one edge removed. Vertex set unchanged.
    pub fn delete_edge(&self, e: EdgeId) -> Result<MultiGraph> {
        if !self.edges.contains_key(&e) {
            return Err(Error::UnknownEdge(e));
        }
        let mut g = self.clone();
        g.edges.remove(&e);
        Ok(g)
    }

    /// New graph with the given vertices and all their incident edges removed.
    pub fn delete_vertices(&self, xs: &[VertexId]) -> Result<MultiGraph> {
        for &v in xs {
            if !self.vertices.contains(&v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        let drop: BTreeSet<VertexId> = xs.iter().copied().collect();
        let mut g = self.clone();
        g.vertices.retain(|v| !drop.contains(v));
        g.edges.retain(|_, &mut (u, v)| !drop.contains(&u) && !drop.contains(&v));
        Ok(g)
    }

    /// Subgraph induced by a vertex set. Identical (same ids, same edges) to
    /// deleting the complementary vertex set.
    pub fn induced(&self, xs: &[VertexId]) -> Result<MultiGraph> {
        for &v in xs {
            if !self.vertices.contains(&v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        let keep: BTreeSet<VertexId> = xs.iter().copied().collect();
        let rest: Vec<VertexId> = self.vertices().filter(|v| !keep.contains(v)).collect();
        self.delete_vertices(&rest)
    }

    /// Contracts a non-loop edge. The surviving vertex keeps the smaller id of
    /// the two endpoints; every other edge keeps its id, with endpoints
    /// rewritten. Parallels of the contracted edge become loops.
    ///
    /// # Errors
    ///
    /// Contracting a loop is refused.
    pub fn contract_edge(&self, e: EdgeId) -> Result<MultiGraph> {
        let (u, v) = self.endpoints(e)?;
        if u == v {
            return Err(Error::pre(format!("cannot contract loop {e}")));
        }
        let keep = u.min(v);
        let gone = u.max(v);
        let mut g = self.clone();
        g.edges.remove(&e);
        g.vertices.remove(&gone);
        for (a, b) in g.edges.values_mut() {
            if *a == gone {
                *a = keep;
            }
            if *b == gone {
                *b = keep;
            }
        }
        Ok(g)
    }

    /// Suppresses degree-two vertices until none remain: each such vertex and
    /// its two edge ends are replaced by a single fresh edge joining the two
    /// neighboring ends. A degree-two vertex whose both ends form one loop is
    /// an isolated circle; it is removed outright together with the loop.
    ///
    /// Vertices are processed smallest-id first, so the result is
    /// deterministic.
    pub fn suppress_degree_two(&self) -> MultiGraph {
        self.suppress_traced().0
    }

    /// Deletes an edge and restores cubicity: degree-zero and degree-one
    /// vertices are deleted and degree-two vertices suppressed, repeatedly,
    /// until the graph is cubic or empty.
    pub fn reduce_delete(&self, e: EdgeId) -> Result<MultiGraph> {
        Ok(self.reduce_delete_traced(e)?.0)
    }

    /// As [`MultiGraph::suppress_degree_two`], also returning the expansion of
    /// every surviving edge into a path of the original graph.
    pub(crate) fn suppress_traced(&self) -> (MultiGraph, EdgeTrace) {
        let mut g = self.clone();
        let mut trace = EdgeTrace::identity(self);
        loop {
            let Some(v) = g.vertices().find(|&v| g.degree(v).unwrap() == 2) else {
                break;
            };
            let inc = g.incident_edges(v).unwrap();
            if inc.len() == 1 {
                // Both ends of one loop: an isolated circle, removed outright.
                trace.paths.remove(&inc[0]);
                g.edges.remove(&inc[0]);
                g.vertices.remove(&v);
                continue;
            }
            let (e1, e2) = (inc[0], inc[1]);
            let (a1, b1) = g.endpoints(e1).unwrap();
            let (a2, b2) = g.endpoints(e2).unwrap();
            let a = if a1 == v { b1 } else { a1 };
            let b = if a2 == v { b2 } else { a2 };
            let p1 = trace.oriented(e1, a, v);
            let p2 = trace.oriented(e2, v, b);
            let joined = TracedPath::concat(&p1, &p2);
            trace.paths.remove(&e1);
            trace.paths.remove(&e2);
            g.edges.remove(&e1);
            g.edges.remove(&e2);
            g.vertices.remove(&v);
            let fresh = g.add_edge(a, b).unwrap();
            trace.paths.insert(fresh, joined);
        }
        (g, trace)
    }

    /// As [`MultiGraph::reduce_delete`], also returning edge expansions.
    pub(crate) fn reduce_delete_traced(&self, e: EdgeId) -> Result<(MultiGraph, EdgeTrace)> {
        let mut g = self.delete_edge(e)?;
        let mut trace = EdgeTrace::identity(&g);
        loop {
            let low = g.vertices().find(|&v| g.degree(v).unwrap() <= 1);
            if let Some(v) = low {
                for e in g.incident_edges(v)? {
                    trace.paths.remove(&e);
                    g.edges.remove(&e);
                }
                g.vertices.remove(&v);
                continue;
            }
            if g.vertices().any(|v| g.degree(v).unwrap() == 2) {
                let (h, step) = g.suppress_traced();
                trace = trace.compose(&step);
                g = h;
                continue;
            }
            break;
        }
        Ok((g, trace))
    }
}

/// Expansion of each live edge into a path of some ancestor graph: vertex
/// sequence from one endpoint to the other, with the ancestor edges used.
#[derive(Clone, Debug)]
pub(crate) struct EdgeTrace {
    pub paths: BTreeMap<EdgeId, TracedPath>,
}

/// An oriented path in the ancestor graph. `vertices` has one more entry than
/// `edges`; `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
#[derive(Clone, Debug)]
pub(crate) struct TracedPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl TracedPath {
    fn single(e: EdgeId, u: VertexId, v: VertexId) -> Self {
        TracedPath { vertices: vec![u, v], edges: vec![e] }
    }

    fn reversed(&self) -> Self {
        let mut p = self.clone();
        p.vertices.reverse();
        p.edges.reverse();
        p
    }

    fn concat(a: &TracedPath, b: &TracedPath) -> Self {
        debug_assert_eq!(a.vertices.last(), b.vertices.first());
        let mut vertices = a.vertices.clone();
        vertices.extend_from_slice(&b.vertices[1..]);
        let mut edges = a.edges.clone();
        edges.extend_from_slice(&b.edges);
        TracedPath { vertices, edges }
    }
}

impl EdgeTrace {
    fn identity(g: &MultiGraph) -> Self {
        let paths = g
            .edges()
            .map(|(e, u, v)| (e, TracedPath::single(e, u, v)))
            .collect();
        EdgeTrace { paths }
    }

    /// Path for edge `e`, oriented to run from `from` to `to`.
    fn oriented(&self, e: EdgeId, from: VertexId, to: VertexId) -> TracedPath {
        let p = &self.paths[&e];
        if p.vertices.first() == Some(&from) && p.vertices.last() == Some(&to) {
            p.clone()
        } else {
            debug_assert_eq!(p.vertices.first(), Some(&to));
            debug_assert_eq!(p.vertices.last(), Some(&from));
            p.reversed()
        }
    }

    /// Composes with a later trace whose paths are expressed in this trace's
    /// live graph: the result expands the latest edges all the way down.
    fn compose(&self, later: &EdgeTrace) -> EdgeTrace {
        let mut paths = BTreeMap::new();
        for (&e, lp) in &later.paths {
            let mut acc: Option<TracedPath> = None;
            for i in 0..lp.edges.len() {
                let seg = self.oriented(lp.edges[i], lp.vertices[i], lp.vertices[i + 1]);
                acc = Some(match acc {
                    None => seg,
                    Some(a) => TracedPath::concat(&a, &seg),
                });
            }
            paths.insert(e, acc.expect("trace path has at least one edge"));
        }
        EdgeTrace { paths }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> MultiGraph {
        // 0 - 1 - 2 with a loop at 2 and a parallel pair 0,1.
        let mut g = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        g.add_edge(VertexId(2), VertexId(2)).unwrap();
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        g
    }

    #[test]
    fn loop_counts_two_toward_degree() {
        let g = path3();
        assert_eq!(g.degree(VertexId(2)).unwrap(), 3);
        assert_eq!(g.degree(VertexId(1)).unwrap(), 3);
        assert_eq!(g.degree(VertexId(0)).unwrap(), 2);
        assert_eq!(g.adjacency()[&VertexId(2)].len(), 3);
    }

    #[test]
    fn delete_keeps_ids_stable() {
        let g = path3();
        let h = g.delete_edge(EdgeId(0)).unwrap();
        assert!(h.has_edge(EdgeId(3)));
        assert_eq!(h.endpoints(EdgeId(3)).unwrap(), (VertexId(0), VertexId(1)));
        let mut h2 = h.clone();
        let fresh = h2.add_edge(VertexId(0), VertexId(0)).unwrap();
        assert_eq!(fresh, EdgeId(4), "fresh ids never reuse deleted ones");
    }

    #[test]
    fn induced_equals_delete_complement() {
        let g = fixture("petersen").unwrap();
        let xs: Vec<VertexId> = (0..5).map(VertexId).collect();
        let rest: Vec<VertexId> = (5..10).map(VertexId).collect();
        assert_eq!(g.induced(&xs).unwrap(), g.delete_vertices(&rest).unwrap());
    }

    #[test]
    fn contract_parallel_leaves_loop() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let h = g.contract_edge(EdgeId(0)).unwrap();
        assert_eq!(h.order(), 1);
        assert!(h.is_loop(EdgeId(1)).unwrap());
        assert!(g.contract_edge(EdgeId(0)).unwrap().has_vertex(VertexId(0)));
        let lp = MultiGraph::from_edges(1, &[(0, 0)]).unwrap();
        assert!(lp.contract_edge(EdgeId(0)).is_err(), "loop contraction refused");
    }

    #[test]
    fn suppress_two_path_yields_edge() {
        // 0 - 2 - 1 becomes a single 0-1 edge.
        let g = MultiGraph::from_edges(3, &[(0, 2), (2, 1)]).unwrap();
        let h = g.suppress_degree_two();
        assert_eq!(h.order(), 2);
        assert_eq!(h.size(), 1);
        let e = h.edge_ids().next().unwrap();
        assert_eq!(h.endpoints(e).unwrap(), (VertexId(0), VertexId(1)));
    }

    #[test]
    fn suppress_isolated_circle_vanishes() {
        // A 2-circuit of parallel edges collapses to nothing: suppressing one
        // vertex makes a loop, and the loop vertex is then removed outright.
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let h = g.suppress_degree_two();
        assert!(h.is_empty());
        assert_eq!(h.size(), 0);
    }

    #[test]
    fn reduce_delete_on_cubic_stays_cubic_or_empty() {
        let g = fixture("petersen").unwrap();
        for e in g.edge_ids() {
            let h = g.reduce_delete(e).unwrap();
            assert!(h.is_cubic());
            assert_eq!(h.order(), 8, "deleting one Petersen edge suppresses two ends");
        }
        let k4 = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let h = k4.reduce_delete(EdgeId(0)).unwrap();
        assert!(h.is_cubic() || h.is_empty());
    }

    #[test]
    fn reduce_delete_trace_expands_to_original_paths() {
        let g = fixture("petersen").unwrap();
        let (h, trace) = g.reduce_delete_traced(EdgeId(0)).unwrap();
        for (e, u, v) in h.edges() {
            let p = &trace.paths[&e];
            assert_eq!(*p.vertices.first().unwrap(), u);
            assert_eq!(*p.vertices.last().unwrap(), v);
            assert_eq!(p.edges.len() + 1, p.vertices.len());
            for (i, &pe) in p.edges.iter().enumerate() {
                let (a, b) = g.endpoints(pe).unwrap();
                let (x, y) = (p.vertices[i], p.vertices[i + 1]);
                assert!((a, b) == (x, y) || (a, b) == (y, x));
            }
        }
    }
}
