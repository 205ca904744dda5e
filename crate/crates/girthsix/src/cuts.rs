//! Edge cuts and shores.
//!
//! For a vertex set X, the boundary is the set of edges with exactly one
//! endpoint in X; loops never cross. A shore is a side X whose boundary has
//! at most five edges while both X and its complement contain at least two
//! circuits. A cubic graph of girth at least five is theta-connected when
//! every cut with at least seven vertices on each side has at least six
//! boundary edges.
//!
//! Shore search and the theta-connectivity check enumerate all vertex
//! subsets, so they refuse graphs with more than [`SHORE_SEARCH_LIMIT`]
//! vertices rather than silently degrade to a heuristic.

use std::collections::BTreeSet;

use crate::circuits::{girth, Circuit};
use crate::error::{Error, Result};
use crate::graph::{Compact, EdgeId, MultiGraph, VertexId};

/// Largest vertex count accepted by the exhaustive subset sweeps.
pub const SHORE_SEARCH_LIMIT: usize = 20;

/// A shore together with its boundary edges, sorted by edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shore {
    pub side: BTreeSet<VertexId>,
    pub boundary: Vec<EdgeId>,
}

/// Edges with exactly one endpoint in `x`, sorted by id. Loops never cross.
///
/// # Errors
///
/// Rejects vertices of `x` absent from the graph.
pub fn edge_cut(g: &MultiGraph, x: &BTreeSet<VertexId>) -> Result<Vec<EdgeId>> {
    for &v in x {
        if !g.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    Ok(g.edges()
        .filter(|&(_, u, v)| x.contains(&u) != x.contains(&v))
        .map(|(e, _, _)| e)
        .collect())
}

/// True when the subgraph induced on `x` contains at least two distinct
/// circuits, i.e. its cyclomatic number (edges minus vertices plus
/// components) is at least two.
pub fn contains_two_circuits(g: &MultiGraph, x: &BTreeSet<VertexId>) -> Result<bool> {
    for &v in x {
        if !g.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    let xs: Vec<VertexId> = x.iter().copied().collect();
    let induced = g.induced(&xs)?;
    let comps = induced.components().len();
    Ok(induced.size() + comps >= induced.order() + 2)
}

/// True when `x` is a shore: boundary at most five and two circuits on each
/// side.
pub fn is_shore(g: &MultiGraph, x: &BTreeSet<VertexId>) -> Result<bool> {
    if edge_cut(g, x)?.len() > 5 {
        return Ok(false);
    }
    let complement: BTreeSet<VertexId> = g.vertices().filter(|v| !x.contains(v)).collect();
    Ok(contains_two_circuits(g, x)? && contains_two_circuits(g, &complement)?)
}

/// The shore minimizing (boundary size, side size, lexicographic side), or
/// `None` when the graph has no shore at all.
///
/// # Errors
///
/// `BoundExceeded` past [`SHORE_SEARCH_LIMIT`] vertices.
pub fn find_shore(g: &MultiGraph) -> Result<Option<Shore>> {
    minimal_shore_by(g, |cut, side| (cut, side.len(), side.iter().copied().collect::<Vec<_>>()))
}

/// The shore minimizing (boundary size, vertices shared with `c`,
/// lexicographic side): the shore pushed as far off the circuit `c` as
/// possible. `None` when no shore exists.
///
/// # Errors
///
/// Rejects circuits that do not lie in `g`, and large graphs as
/// [`find_shore`] does.
pub fn push_shore(g: &MultiGraph, c: &Circuit) -> Result<Option<Shore>> {
    for (i, &e) in c.edges().iter().enumerate() {
        let (a, b) = g.endpoints(e)?;
        let k = c.vertices().len();
        let (x, y) = (c.vertices()[i], c.vertices()[(i + 1) % k]);
        if (a, b) != (x, y) && (a, b) != (y, x) {
            return Err(Error::pre(format!("circuit edge {e} does not lie in the graph")));
        }
    }
    let on_c = c.vertex_set();
    minimal_shore_by(g, move |cut, side| {
        let shared = side.intersection(&on_c).count();
        (cut, shared, side.iter().copied().collect::<Vec<_>>())
    })
}

fn minimal_shore_by<K: Ord>(
    g: &MultiGraph,
    rank: impl Fn(usize, &BTreeSet<VertexId>) -> K,
) -> Result<Option<Shore>> {
    let n = g.order();
    if n > SHORE_SEARCH_LIMIT {
        return Err(Error::BoundExceeded(format!(
            "shore search enumerates all vertex subsets and accepts at most {SHORE_SEARCH_LIMIT} vertices, got {n}"
        )));
    }
    let c = Compact::build(g);
    let mut best: Option<(K, Shore)> = None;
    sweep_cuts(&c, |cut, in_x| {
        if cut > 5 {
            return true;
        }
        let side: BTreeSet<VertexId> =
            (0..n).filter(|&i| in_x[i]).map(|i| c.verts[i]).collect();
        if !two_circuits_masked(&c, in_x, true) || !two_circuits_masked(&c, in_x, false) {
            return true;
        }
        let key = rank(cut, &side);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            let boundary = (0..c.m())
                .filter(|&e| {
                    let (u, v) = c.ends[e];
                    in_x[u] != in_x[v]
                })
                .map(|e| c.eids[e])
                .collect();
            best = Some((key, Shore { side, boundary }));
        }
        true
    });
    Ok(best.map(|(_, s)| s))
}

/// Checks theta-connectivity by definition: cubic, girth at least five, and
/// no cut of at most five edges with seven or more vertices on each side.
///
/// # Errors
///
/// `BoundExceeded` past [`SHORE_SEARCH_LIMIT`] vertices.
pub fn is_theta_connected(g: &MultiGraph) -> Result<bool> {
    let n = g.order();
    if n > SHORE_SEARCH_LIMIT {
        return Err(Error::BoundExceeded(format!(
            "theta-connectivity check enumerates all vertex subsets and accepts at most {SHORE_SEARCH_LIMIT} vertices, got {n}"
        )));
    }
    if !g.is_cubic() || !girth(g).at_least(5) {
        return Ok(false);
    }
    let c = Compact::build(g);
    let mut ok = true;
    sweep_cuts(&c, |cut, in_x| {
        if cut <= 5 {
            let inside = in_x.iter().filter(|&&b| b).count();
            if inside >= 7 && n - inside >= 7 {
                ok = false;
                return false;
            }
        }
        true
    });
    Ok(ok)
}

/// Visits every proper nonempty vertex subset in Gray-code order, keeping the
/// boundary size incrementally. The callback returns false to stop early.
fn sweep_cuts(c: &Compact, mut visit: impl FnMut(usize, &[bool]) -> bool) {
    let n = c.n();
    if n == 0 {
        return;
    }
    let mut in_x = vec![false; n];
    let mut cut = 0usize;
    for step in 1u64..(1u64 << n) {
        let j = step.trailing_zeros() as usize;
        in_x[j] = !in_x[j];
        for &(e, w) in &c.adj[j] {
            if c.is_loop(e) {
                continue;
            }
            if in_x[j] != in_x[w] {
                cut += 1;
            } else {
                cut -= 1;
            }
        }
        if in_x.iter().all(|&b| b) {
            continue;
        }
        if !visit(cut, &in_x) {
            return;
        }
    }
}

/// Cyclomatic number at least two on the side of the mask selected by
/// `inside`, computed without materializing the induced subgraph.
fn two_circuits_masked(c: &Compact, in_x: &[bool], inside: bool) -> bool {
    let picked: Vec<usize> = (0..c.n()).filter(|&i| in_x[i] == inside).collect();
    if picked.is_empty() {
        return false;
    }
    let mut edges = 0usize;
    for e in 0..c.m() {
        let (u, v) = c.ends[e];
        if in_x[u] == inside && in_x[v] == inside {
            edges += 1;
        }
    }
    let mut seen = vec![false; c.n()];
    let mut comps = 0usize;
    for &start in &picked {
        if seen[start] {
            continue;
        }
        comps += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &(_, w) in &c.adj[u] {
                if in_x[w] == inside && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    edges + comps >= picked.len() + 2
}
