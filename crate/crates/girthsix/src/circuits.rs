//! Circuits of a multigraph: closed walks with no repeated vertex, stored in
//! a canonical rotation so equal circuits compare equal.
//!
//! A loop is a circuit of length one and a pair of parallel edges a circuit
//! of length two. Girth is the length of a shortest circuit, infinite on
//! forests. A circuit is short when it has at most five edges; a breaker is
//! a short circuit meeting every short circuit (itself included), and an
//! interesting graph is a cubic graph on at least ten vertices whose girth is
//! at least six or which has a breaker.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Compact, EdgeId, MultiGraph, VertexId};

/// Length of a shortest circuit; `Infinite` on forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl Girth {
    /// True when every circuit has at least `k` edges (vacuously on forests).
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "infinity"),
        }
    }
}

/// A circuit, canonicalized to the lexicographically least rotation or
/// reflection of its `(vertex, edge)` sequences. `edges[i]` joins
/// `vertices[i]` and `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Circuit {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Circuit {
    /// Validates and canonicalizes a circuit given by aligned vertex and edge
    /// sequences.
    ///
    /// # Errors
    ///
    /// Rejects empty input, repeated vertices or edges, and edges that do not
    /// join their consecutive vertices in `g`.
    pub fn new(g: &MultiGraph, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Result<Self> {
        if vertices.is_empty() || vertices.len() != edges.len() {
            return Err(Error::pre("circuit needs equally many vertices and edges, at least one"));
        }
        let k = vertices.len();
        if vertices.iter().collect::<BTreeSet<_>>().len() != k {
            return Err(Error::pre("circuit repeats a vertex"));
        }
        if edges.iter().collect::<BTreeSet<_>>().len() != k {
            return Err(Error::pre("circuit repeats an edge"));
        }
        for i in 0..k {
            let (a, b) = g.endpoints(edges[i])?;
            let (x, y) = (vertices[i], vertices[(i + 1) % k]);
            if (a, b) != (x, y) && (a, b) != (y, x) {
                return Err(Error::pre(format!("edge {} does not join {x} and {y}", edges[i])));
            }
        }
        Ok(Circuit { vertices, edges }.canonical())
    }

    fn canonical(self) -> Self {
        let k = self.vertices.len();
        let mut best: Option<(Vec<VertexId>, Vec<EdgeId>)> = None;
        for dir in [false, true] {
            for r in 0..k {
                let mut vs = Vec::with_capacity(k);
                let mut es = Vec::with_capacity(k);
                for i in 0..k {
                    if dir {
                        vs.push(self.vertices[(r + k - i) % k]);
                        es.push(self.edges[(r + k - 1 - i) % k]);
                    } else {
                        vs.push(self.vertices[(r + i) % k]);
                        es.push(self.edges[(r + i) % k]);
                    }
                }
                let cand = (vs, es);
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        let (vertices, edges) = best.unwrap();
        Circuit { vertices, edges }
    }

    /// Number of edges (equals the number of vertices).
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices.iter().copied().collect()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// True when the two circuits share a vertex.
    pub fn meets(&self, other: &Circuit) -> bool {
        self.vertices.iter().any(|v| other.vertices.contains(v))
    }

    /// Number of edges the two circuits share.
    pub fn shared_edges(&self, other: &Circuit) -> usize {
        self.edges.iter().filter(|e| other.edges.contains(e)).count()
    }

    /// At most five edges.
    pub fn is_short(&self) -> bool {
        self.len() <= 5
    }

    /// Exactly five edges.
    pub fn is_pentagon(&self) -> bool {
        self.len() == 5
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", names.join(" "))
    }
}

/// All circuits with at most `max_len` edges, sorted by length then by
/// canonical sequences. Loops and parallel pairs are included.
pub fn circuits_up_to(g: &MultiGraph, max_len: usize) -> Vec<Circuit> {
    let c = Compact::build(g);
    let mut out = Vec::new();
    if max_len >= 1 {
        for e in 0..c.m() {
            if c.is_loop(e) {
                out.push(Circuit {
                    vertices: vec![c.verts[c.ends[e].0]],
                    edges: vec![c.eids[e]],
                });
            }
        }
    }
    if max_len >= 2 {
        for e in 0..c.m() {
            for f in e + 1..c.m() {
                if c.is_loop(e) || c.is_loop(f) {
                    continue;
                }
                let (a, b) = c.ends[e];
                let (x, y) = c.ends[f];
                if (a, b) == (x, y) || (a, b) == (y, x) {
                    let (lo, hi) = (a.min(b), a.max(b));
                    out.push(
                        Circuit {
                            vertices: vec![c.verts[lo], c.verts[hi]],
                            edges: vec![c.eids[e], c.eids[f]],
                        }
                        .canonical(),
                    );
                }
            }
        }
    }
    if max_len >= 3 {
        // Anchored DFS: each circuit is found once, rooted at its least
        // vertex, with the traversal direction fixed by second < last.
        let mut path: Vec<usize> = Vec::new();
        let mut path_edges: Vec<usize> = Vec::new();
        let mut on_path = vec![false; c.n()];
        for anchor in 0..c.n() {
            path.push(anchor);
            on_path[anchor] = true;
            dfs_circuits(&c, anchor, max_len, &mut path, &mut path_edges, &mut on_path, &mut out);
            on_path[anchor] = false;
            path.pop();
        }
    }
    out.sort_by(|a, b| (a.len(), &a.vertices, &a.edges).cmp(&(b.len(), &b.vertices, &b.edges)));
    out.dedup();
    out
}

fn dfs_circuits(
    c: &Compact,
    anchor: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    path_edges: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    out: &mut Vec<Circuit>,
) {
    let u = *path.last().unwrap();
    for &(e, w) in &c.adj[u] {
        if c.is_loop(e) || w < anchor {
            continue;
        }
        if w == anchor {
            if path.len() >= 3 && path[1] < path[path.len() - 1] {
                let mut edges: Vec<EdgeId> = path_edges.iter().map(|&i| c.eids[i]).collect();
                edges.push(c.eids[e]);
                out.push(
                    Circuit {
                        vertices: path.iter().map(|&i| c.verts[i]).collect(),
                        edges,
                    }
                    .canonical(),
                );
            }
            continue;
        }
        if on_path[w] || path.len() == max_len {
            continue;
        }
        path.push(w);
        path_edges.push(e);
        on_path[w] = true;
        dfs_circuits(c, anchor, max_len, path, path_edges, on_path, out);
        on_path[w] = false;
        path_edges.pop();
        path.pop();
    }
}

/// Girth of the multigraph: one with a loop, two with a parallel pair,
/// otherwise the shortest cycle length by breadth-first search.
pub fn girth(g: &MultiGraph) -> Girth {
    let c = Compact::build(g);
    if (0..c.m()).any(|e| c.is_loop(e)) {
        return Girth::Finite(1);
    }
    let mut simple: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); c.n()];
    for e in 0..c.m() {
        let (u, v) = c.ends[e];
        if !simple[u].insert(v) {
            return Girth::Finite(2);
        }
        simple[v].insert(u);
    }
    let mut best: Option<u32> = None;
    for root in 0..c.n() {
        let mut dist = vec![u32::MAX; c.n()];
        let mut parent = vec![usize::MAX; c.n()];
        let mut queue = std::collections::VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &w in &simple[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let cycle = dist[u] + dist[w] + 1;
                    if best.is_none_or(|b| cycle < b) {
                        best = Some(cycle);
                    }
                }
            }
        }
    }
    match best {
        Some(b) => Girth::Finite(b),
        None => Girth::Infinite,
    }
}

/// All short circuits (length at most five).
pub fn short_circuits(g: &MultiGraph) -> Vec<Circuit> {
    circuits_up_to(g, 5)
}

/// Number of circuits of length exactly five.
pub fn pentagon_count(g: &MultiGraph) -> usize {
    circuits_up_to(g, 5).iter().filter(|c| c.is_pentagon()).count()
}

/// Short circuits meeting every short circuit. Empty when the graph has no
/// short circuit at all, and also when short circuits exist but none meets
/// all of them.
pub fn find_breakers(g: &MultiGraph) -> Vec<Circuit> {
    let shorts = short_circuits(g);
    shorts
        .iter()
        .filter(|c| shorts.iter().all(|s| c.meets(s)))
        .cloned()
        .collect()
}

/// Cubic, at least ten vertices, and either girth at least six or some
/// breaker exists.
pub fn is_interesting(g: &MultiGraph) -> bool {
    g.is_cubic()
        && g.order() >= 10
        && (girth(g).at_least(6) || !find_breakers(g).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixture;

    fn k4() -> MultiGraph {
        MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k33() -> MultiGraph {
        MultiGraph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap()
    }

    #[test]
    fn canonical_form_is_rotation_and_reflection_invariant() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let a = Circuit::new(&g, vec![VertexId(0), VertexId(1), VertexId(2)], vec![EdgeId(0), EdgeId(1), EdgeId(2)]).unwrap();
        let b = Circuit::new(&g, vec![VertexId(1), VertexId(2), VertexId(0)], vec![EdgeId(1), EdgeId(2), EdgeId(0)]).unwrap();
        let c = Circuit::new(&g, vec![VertexId(2), VertexId(1), VertexId(0)], vec![EdgeId(1), EdgeId(0), EdgeId(2)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.vertices(), &[VertexId(0), VertexId(1), VertexId(2)]);
    }

    #[test]
    fn loop_and_parallel_pair_are_circuits() {
        let mut g = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        g.add_edge(VertexId(1), VertexId(1)).unwrap();
        let all = circuits_up_to(&g, 5);
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].len(), 1, "loop is a length-one circuit");
        assert_eq!(all[1].len(), 2, "parallel pair is a length-two circuit");
        assert_eq!(girth(&g), Girth::Finite(1));
        assert_eq!(girth(&g.delete_edge(EdgeId(2)).unwrap()), Girth::Finite(2));
    }

    #[test]
    fn three_parallels_give_three_two_circuits() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let twos: Vec<Circuit> = circuits_up_to(&g, 2);
        assert_eq!(twos.len(), 3, "each unordered pair of parallels is its own circuit");
    }

    #[test]
    fn k4_circuit_census() {
        let counts: Vec<usize> = [3usize, 4].iter().map(|&k| {
            circuits_up_to(&k4(), 4).iter().filter(|c| c.len() == k).count()
        }).collect();
        assert_eq!(counts, vec![4, 3], "four triangles and three quadrilaterals");
        assert_eq!(girth(&k4()), Girth::Finite(3));
    }

    #[test]
    fn petersen_has_twelve_pentagons_and_no_breaker() {
        let g = fixture("petersen").unwrap();
        assert_eq!(girth(&g), Girth::Finite(5));
        assert_eq!(pentagon_count(&g), 12);
        assert_eq!(short_circuits(&g).len(), 12);
        assert!(find_breakers(&g).is_empty(), "every Petersen pentagon misses its antipode");
        assert!(!is_interesting(&g));
    }

    #[test]
    fn heawood_is_interesting_via_girth() {
        let g = fixture("heawood").unwrap();
        assert_eq!(girth(&g), Girth::Finite(6));
        assert_eq!(pentagon_count(&g), 0);
        assert!(find_breakers(&g).is_empty(), "no short circuits at all");
        assert!(is_interesting(&g));
    }

    #[test]
    fn k33_quadrilaterals_all_break() {
        let g = k33();
        assert_eq!(girth(&g), Girth::Finite(4));
        let shorts = short_circuits(&g);
        assert_eq!(shorts.len(), 9, "nine quadrilaterals");
        assert_eq!(find_breakers(&g).len(), 9, "any two quadrilaterals share a vertex");
        assert!(!is_interesting(&g), "only six vertices");
    }

    #[test]
    fn forest_girth_is_infinite() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(girth(&g), Girth::Infinite);
        assert!(girth(&g).at_least(6));
        assert!(circuits_up_to(&g, 10).is_empty());
        assert_eq!(girth(&MultiGraph::new()), Girth::Infinite);
    }

    #[test]
    fn dodecahedron_pentagon_count() {
        let g = fixture("dodecahedron").unwrap();
        assert_eq!(girth(&g), Girth::Finite(5));
        assert_eq!(pentagon_count(&g), 12, "exactly the twelve faces");
    }

    #[test]
    fn dodeca_apex_girth_is_six() {
        let g = fixture("dodeca_apex").unwrap();
        assert_eq!(girth(&g), Girth::Finite(6));
    }
}
