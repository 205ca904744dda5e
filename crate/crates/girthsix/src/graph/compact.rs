//! Internal contiguous-index view of a multigraph, built per algorithm call.
//! Public ids stay the source of truth; this is scratch space.

use std::collections::BTreeMap;

use super::{EdgeId, MultiGraph, VertexId};

/// Indexed copy of a multigraph: vertices `0..n`, edges `0..m`, with
/// incidence lists. A loop appears twice in its vertex's list, once per end,
/// so list lengths equal degrees.
#[derive(Clone, Debug)]
pub(crate) struct Compact {
    pub verts: Vec<VertexId>,
    pub eids: Vec<EdgeId>,
    pub ends: Vec<(usize, usize)>,
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl Compact {
    pub fn build(g: &MultiGraph) -> Self {
        let verts: Vec<VertexId> = g.vertices().collect();
        let vidx: BTreeMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut eids = Vec::with_capacity(g.size());
        let mut ends = Vec::with_capacity(g.size());
        let mut adj = vec![Vec::new(); verts.len()];
        for (e, u, v) in g.edges() {
            let (ui, vi) = (vidx[&u], vidx[&v]);
            let ei = eids.len();
            eids.push(e);
            ends.push((ui, vi));
            adj[ui].push((ei, vi));
            adj[vi].push((ei, ui));
        }
        Compact { verts, eids, ends, adj }
    }

    pub fn n(&self) -> usize {
        self.verts.len()
    }

    pub fn m(&self) -> usize {
        self.eids.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.ends[e].0 == self.ends[e].1
    }

    /// The endpoint of `e` other than `v` (equal to `v` for a loop).
    pub fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Index of a public vertex id, if present.
    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.verts.binary_search(&v).ok()
    }

    /// Index of a public edge id, if present.
    pub fn edge_index_of(&self, e: EdgeId) -> Option<usize> {
        self.eids.iter().position(|&x| x == e)
    }
}
