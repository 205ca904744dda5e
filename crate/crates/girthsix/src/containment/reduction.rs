//! Reduction steps on interesting graphs.
//!
//! Each step consumes an interesting graph and produces a strictly smaller
//! interesting graph together with a containment witness (the output is a
//! topological subgraph of the input), so iterating the steps traces any
//! interesting graph down to either a direct Petersen witness or a
//! theta-connected terminal graph:
//!
//! - when the girth is at most three, deleting an edge shared by a shortest
//!   circuit and a breaker and restoring cubicity shrinks the graph;
//! - when a shore exists, the far side collapses to a short circuit attached
//!   across the boundary by a matching.
//!
//! The quadrilateral contraction and the sixteen-vertex matching-variant
//! family pin down the remaining girth-four case; they produce graphs to
//! search directly rather than reduction steps.

use std::collections::{BTreeMap, BTreeSet};

use crate::circuits::{
    circuits_up_to, find_breakers, girth, is_interesting, short_circuits, Circuit, Girth,
};
use crate::containment::flow::FlowNet;
use crate::containment::witness::{validate_witness, SubdivisionWitness, WitnessPath};
use crate::containment::{contains_petersen, Containment};
use crate::cuts::{edge_cut, find_shore, is_shore, push_shore, Shore};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeTrace, MultiGraph, VertexId};

/// Which reduction produced a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Deleted an edge shared by a shortest circuit and a breaker, then
    /// restored cubicity.
    DeleteReduce,
    /// Replaced the complement of a shore by a short circuit attached along
    /// the boundary matching.
    ShoreReplace,
    /// Deleted and contracted around a quadrilateral.
    Girth4Case,
}

/// One sound reduction: `output` is interesting, strictly smaller than the
/// input, and contained in it along `witness` (pattern = output, host =
/// input). Both properties are checked before a step is returned.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub output: MultiGraph,
    pub witness: SubdivisionWitness,
}

/// Result of one pass of [`reduction_pipeline`].
#[derive(Clone, Debug)]
pub enum PipelineOutcome {
    /// A sound step to a smaller interesting graph.
    Reduced(ReductionStep),
    /// The input contains a Petersen subdivision; direct witness.
    Petersen(SubdivisionWitness),
    /// No step applies and the graph has girth at least five with no shore,
    /// hence is theta-connected; callers hand such graphs to the
    /// classification report.
    ThetaTerminal(MultiGraph),
    /// Direct search exhausted every assignment without finding a witness.
    PetersenAbsent,
    /// Direct search ran out of node budget.
    Unknown(String),
}

/// Runs one round of the reduction strategy on an interesting graph.
///
/// In order: the girth-at-most-three deletion, then shore replacement (when
/// the graph has a breaker the shore is pushed off the first one), then
/// termination: girth at least five with no shore means theta-connected,
/// anything else falls back to the direct subdivision search. The fallback
/// also covers graphs too large for the shore sweep.
///
/// # Errors
///
/// `Precondition` when `g` is not interesting, or propagated from a step
/// whose internal soundness checks fail.
pub fn reduction_pipeline(g: &MultiGraph) -> Result<PipelineOutcome> {
    if !is_interesting(g) {
        return Err(Error::pre("reduction pipeline expects an interesting graph"));
    }
    if let Girth::Finite(k) = girth(g) {
        if k <= 3 {
            if let Some(step) = delete_reduce_step(g)? {
                return Ok(PipelineOutcome::Reduced(step));
            }
        }
    }
    match find_shore(g) {
        Ok(Some(shore)) => {
            let shore = match find_breakers(g).first() {
                Some(c) => push_shore(g, c)?.unwrap_or(shore),
                None => shore,
            };
            let rep = build_shore_replacement(g, &shore)?;
            return Ok(PipelineOutcome::Reduced(ReductionStep {
                kind: StepKind::ShoreReplace,
                output: rep.graph,
                witness: rep.witness,
            }));
        }
        Ok(None) => {
            if girth(g).at_least(5) {
                return Ok(PipelineOutcome::ThetaTerminal(g.clone()));
            }
        }
        Err(Error::BoundExceeded(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(match contains_petersen(g)? {
        Containment::Found(w) => PipelineOutcome::Petersen(w),
        Containment::Absent => PipelineOutcome::PetersenAbsent,
        Containment::Unknown => {
            PipelineOutcome::Unknown("subdivision search exhausted its node budget".into())
        }
    })
}

/// The girth-at-most-three step: pick the first shortest circuit and the
/// first breaker, delete their least shared edge, and restore cubicity. In a
/// cubic graph a breaker shares an edge with every short circuit: two
/// circuits through one degree-three vertex must leave it along a common
/// edge. Returns `None` when the reduced graph fails the step invariants,
/// which cannot happen under the theorem's hypotheses but keeps the pipeline
/// total near the size floor.
fn delete_reduce_step(g: &MultiGraph) -> Result<Option<ReductionStep>> {
    let shorts = short_circuits(g);
    let Some(c) = shorts.first() else {
        return Ok(None);
    };
    let Some(b) = find_breakers(g).first().cloned() else {
        return Ok(None);
    };
    let Some(e) = c.edges().iter().copied().filter(|&e| b.contains_edge(e)).min() else {
        return Ok(None);
    };
    let (h, trace) = g.reduce_delete_traced(e)?;
    if h.order() >= g.order() || !is_interesting(&h) {
        return Ok(None);
    }
    let witness = witness_from_trace(&h, &trace);
    validate_witness(g, &h, &witness)?;
    Ok(Some(ReductionStep { kind: StepKind::DeleteReduce, output: h, witness }))
}

/// Identity branch map plus the traced expansion of every surviving edge.
fn witness_from_trace(pattern: &MultiGraph, trace: &EdgeTrace) -> SubdivisionWitness {
    let branch = pattern.vertices().map(|v| (v, v)).collect();
    let paths = pattern
        .edge_ids()
        .map(|e| {
            let p = &trace.paths[&e];
            (e, WitnessPath { vertices: p.vertices.clone(), edges: p.edges.clone() })
        })
        .collect();
    SubdivisionWitness { branch, paths }
}

/// Everything produced by [`build_shore_replacement`].
#[derive(Clone, Debug)]
pub struct ShoreReplacement {
    /// The shore side plus a fresh circuit attached by a matching.
    pub graph: MultiGraph,
    /// Containment of `graph` in the input (pattern = `graph`).
    pub witness: SubdivisionWitness,
    /// The fresh circuit; a breaker of `graph`.
    pub breaker: Circuit,
}

/// Collapses everything outside a shore to a single short circuit.
///
/// With `X` the shore side and `k = |boundary|`, the output is the graph
/// induced on `X` plus a fresh circuit `w_1 … w_k` joined by a matching to
/// the boundary ends inside `X`. The order of the matching follows the
/// positions at which `k` vertex-disjoint paths from the boundary reach a
/// circuit of length at least `k` in the far side, so the output embeds in
/// the input: those paths, the boundary edges, and the arcs of the far-side
/// circuit realize the fresh circuit and its matching as a subdivision. The
/// emitted witness records exactly that embedding and is revalidated before
/// returning, as are the output's invariants (interesting, strictly smaller,
/// fresh circuit a breaker).
///
/// # Errors
///
/// `Precondition` when the input is not interesting, the side is not a
/// shore, the boundary is not a matching, or no far-side circuit admits the
/// disjoint paths (the last cannot happen for a least-boundary shore of an
/// interesting graph, so it flags a bug or a hand-built shore).
pub fn build_shore_replacement(g: &MultiGraph, shore: &Shore) -> Result<ShoreReplacement> {
    if !is_interesting(g) {
        return Err(Error::pre("shore replacement expects an interesting input"));
    }
    if !is_shore(g, &shore.side)? {
        return Err(Error::pre(
            "not a shore: need at most five boundary edges and two circuits on each side",
        ));
    }
    let boundary = edge_cut(g, &shore.side)?;
    let k = boundary.len();
    if k == 0 {
        return Err(Error::pre("shore has an empty boundary; the sides are disconnected"));
    }
    // Boundary ends, u inside the shore and y outside; both ends must form
    // matchings for the attachment to be well defined.
    let mut ends = Vec::with_capacity(k);
    for &e in &boundary {
        let (a, b) = g.endpoints(e)?;
        let (u, y) = if shore.side.contains(&a) { (a, b) } else { (b, a) };
        ends.push((e, u, y));
    }
    let us: BTreeSet<VertexId> = ends.iter().map(|t| t.1).collect();
    let ys: BTreeSet<VertexId> = ends.iter().map(|t| t.2).collect();
    if us.len() != k || ys.len() != k {
        return Err(Error::pre("shore boundary is not a matching"));
    }

    let comp_vec: Vec<VertexId> = g.vertices().filter(|v| !shore.side.contains(v)).collect();
    let comp = g.induced(&comp_vec)?;
    let sources: Vec<VertexId> = ends.iter().map(|t| t.2).collect();
    // Far-side circuits by ascending length and canonical order, first one
    // that admits one disjoint path per boundary edge wins.
    let mut routed = None;
    'search: for cap in k..=comp.order() {
        for c in circuits_up_to(&comp, cap) {
            if c.len() != cap {
                continue;
            }
            if let Some(paths) = route_disjoint(&comp, &sources, &c) {
                routed = Some((c, paths));
                break 'search;
            }
        }
    }
    let Some((target, paths)) = routed else {
        return Err(Error::pre(
            "disjoint paths not found: no far-side circuit admits one path per boundary edge",
        ));
    };

    // Attachments in order of position along the target circuit.
    let pos_of: BTreeMap<VertexId, usize> =
        target.vertices().iter().copied().enumerate().map(|(i, v)| (v, i)).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| pos_of[paths[i].vertices.last().unwrap()]);
    let positions: Vec<usize> =
        order.iter().map(|&i| pos_of[paths[i].vertices.last().unwrap()]).collect();

    let side_vec: Vec<VertexId> = shore.side.iter().copied().collect();
    let mut h = g.induced(&side_vec)?;
    let mut branch: BTreeMap<VertexId, VertexId> =
        shore.side.iter().map(|&v| (v, v)).collect();
    let mut wpaths: BTreeMap<EdgeId, WitnessPath> = BTreeMap::new();
    let kept: Vec<(EdgeId, VertexId, VertexId)> = h.edges().collect();
    for (e, a, b) in kept {
        wpaths.insert(e, WitnessPath { vertices: vec![a, b], edges: vec![e] });
    }

    let mut ws = Vec::with_capacity(k);
    for i in 0..k {
        let w = h.add_vertex();
        branch.insert(w, *paths[order[i]].vertices.last().unwrap());
        ws.push(w);
    }

    // The fresh circuit: a loop, a parallel pair, or a k-cycle; its pattern
    // edges map to the arcs of the target circuit between attachments.
    let mut ring_edges = Vec::with_capacity(k);
    if k == 1 {
        let e = h.add_edge(ws[0], ws[0])?;
        let m = target.len();
        let start = positions[0];
        let mut vertices = vec![target.vertices()[start]];
        let mut edges = Vec::with_capacity(m);
        for step in 0..m {
            let j = (start + step) % m;
            edges.push(target.edges()[j]);
            vertices.push(target.vertices()[(j + 1) % m]);
        }
        wpaths.insert(e, WitnessPath { vertices, edges });
        ring_edges.push(e);
    } else if k == 2 {
        let e0 = h.add_edge(ws[0], ws[1])?;
        let e1 = h.add_edge(ws[0], ws[1])?;
        let fwd = circuit_arc(&target, positions[0], positions[1]);
        let mut back = circuit_arc(&target, positions[1], positions[0]);
        back.vertices.reverse();
        back.edges.reverse();
        wpaths.insert(e0, fwd);
        wpaths.insert(e1, back);
        ring_edges.extend([e0, e1]);
    } else {
        for i in 0..k {
            let e = h.add_edge(ws[i], ws[(i + 1) % k])?;
            wpaths.insert(e, circuit_arc(&target, positions[i], positions[(i + 1) % k]));
            ring_edges.push(e);
        }
    }

    // The matching: pattern edge u–w maps to the boundary edge followed by
    // the routed path.
    for (i, &pi) in order.iter().enumerate() {
        let (be, u, _) = ends[pi];
        let e = h.add_edge(u, ws[i])?;
        let mut vertices = vec![u];
        vertices.extend_from_slice(&paths[pi].vertices);
        let mut edges = vec![be];
        edges.extend_from_slice(&paths[pi].edges);
        wpaths.insert(e, WitnessPath { vertices, edges });
    }

    let witness = SubdivisionWitness { branch, paths: wpaths };
    validate_witness(g, &h, &witness)?;
    let ring = Circuit::new(&h, ws, ring_edges)?;
    if h.order() >= g.order() {
        return Err(Error::pre("shore replacement did not shrink the graph"));
    }
    if !is_interesting(&h) {
        return Err(Error::pre("shore replacement output is not interesting"));
    }
    if !find_breakers(&h).contains(&ring) {
        return Err(Error::pre("shore replacement circuit is not a breaker of the output"));
    }
    Ok(ShoreReplacement { graph: h, witness, breaker: ring })
}

/// A path routed through the far side: vertices from a boundary end to the
/// first circuit vertex met, with the edges used.
struct RoutedPath {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

/// Finds one vertex-disjoint path from each source to the target circuit
/// inside `comp`, or `None` if fewer exist. Unit-capacity flow on split
/// vertices; sources accept no incoming arcs and circuit vertices allow no
/// outgoing ones, so every path stops at its first circuit contact and no
/// path passes through a source. Augmentation scans arcs in insertion order,
/// making the routing deterministic.
fn route_disjoint(
    comp: &MultiGraph,
    sources: &[VertexId],
    target: &Circuit,
) -> Option<Vec<RoutedPath>> {
    let verts: Vec<VertexId> = comp.vertices().collect();
    let idx: BTreeMap<VertexId, usize> =
        verts.iter().copied().enumerate().map(|(i, v)| (v, i)).collect();
    let n = verts.len();
    let (source, sink) = (2 * n, 2 * n + 1);
    let is_source: BTreeSet<usize> = sources.iter().map(|v| idx[v]).collect();
    let on_target: BTreeSet<usize> = target.vertices().iter().map(|v| idx[v]).collect();
    let mut net = FlowNet::new(2 * n + 2);
    for i in 0..n {
        net.arc(2 * i, 2 * i + 1, None);
    }
    for (e, u, v) in comp.edges() {
        if u == v {
            continue;
        }
        let (iu, iv) = (idx[&u], idx[&v]);
        if !is_source.contains(&iv) && !on_target.contains(&iu) {
            net.arc(2 * iu + 1, 2 * iv, Some(e));
        }
        if !is_source.contains(&iu) && !on_target.contains(&iv) {
            net.arc(2 * iv + 1, 2 * iu, Some(e));
        }
    }
    for s in sources {
        net.arc(source, 2 * idx[s], None);
    }
    for &i in &on_target {
        net.arc(2 * i + 1, sink, None);
    }
    if net.max_flow(source, sink) as usize != sources.len() {
        return None;
    }
    // Each source saturates one unit; follow it arc by arc. Unit vertex
    // capacities give every split pair at most one saturated out-arc.
    Some(
        sources
            .iter()
            .map(|&s| {
                let mut vertices = vec![s];
                let mut edges = Vec::new();
                let mut i = idx[&s];
                loop {
                    let a = net.head[2 * i + 1]
                        .iter()
                        .copied()
                        .find(|&a| a % 2 == 0 && net.cap[a] == 0)
                        .expect("flow conservation gives each visited vertex an out-arc");
                    if net.to[a] == sink {
                        return RoutedPath { vertices, edges };
                    }
                    i = net.to[a] / 2;
                    edges.push(net.eid[a].unwrap());
                    vertices.push(verts[i]);
                }
            })
            .collect(),
    )
}

/// Forward walk along `c` from position `from` to position `to`.
fn circuit_arc(c: &Circuit, from: usize, to: usize) -> WitnessPath {
    let m = c.len();
    let mut vertices = vec![c.vertices()[from]];
    let mut edges = Vec::new();
    let mut j = from;
    while j != to {
        edges.push(c.edges()[j]);
        j = (j + 1) % m;
        vertices.push(c.vertices()[j]);
    }
    WitnessPath { vertices, edges }
}

/// Deletes the first edge of a quadrilateral and contracts the two edges
/// adjacent to it, leaving the opposite edge (`c.edges()[2]`, id preserved)
/// in a graph two vertices smaller.
///
/// When the input matches the hypotheses of the girth-four analysis (an
/// interesting graph of girth four whose only short circuit is `c`), the
/// analysis' conclusions are verified: the result has girth at least five
/// and every pentagon in it contains an end of the surviving edge. Outside
/// the hypotheses the graph is returned unchecked.
///
/// # Errors
///
/// `Precondition` when `g` is not cubic, `c` is not a quadrilateral of `g`,
/// or a verified conclusion fails.
pub fn girth4_contraction(g: &MultiGraph, c: &Circuit) -> Result<MultiGraph> {
    if !g.is_cubic() {
        return Err(Error::pre("quadrilateral contraction expects a cubic graph"));
    }
    if c.len() != 4 {
        return Err(Error::pre("quadrilateral contraction expects a circuit of length four"));
    }
    Circuit::new(g, c.vertices().to_vec(), c.edges().to_vec())?;
    let es = c.edges();
    let h = g.delete_edge(es[0])?;
    let h = h.contract_edge(es[1])?;
    let h = h.contract_edge(es[3])?;
    let hypotheses =
        is_interesting(g) && girth(g) == Girth::Finite(4) && short_circuits(g) == vec![c.clone()];
    if hypotheses {
        if !girth(&h).at_least(5) {
            return Err(Error::pre(
                "contraction left a short circuit despite a unique quadrilateral",
            ));
        }
        let (x, y) = h.endpoints(es[2])?;
        if circuits_up_to(&h, 5)
            .iter()
            .any(|p| p.is_pentagon() && !p.contains_vertex(x) && !p.contains_vertex(y))
        {
            return Err(Error::pre("a pentagon avoids both ends of the surviving edge"));
        }
    }
    Ok(h)
}

/// One assignment of the four variable matching edges of the sixteen-vertex
/// construction: `targets[i]` is the partner of `[b1, b2, c1, c2][i]`, coded
/// `0..=3` for `[q1, q2, r1, r2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Figure2Variant {
    pub targets: [u8; 4],
}

/// A consistent sixteen-vertex two-block graph with its unique
/// quadrilateral and the fourteen-vertex graph derived by
/// [`girth4_contraction`].
#[derive(Clone, Debug)]
pub struct Figure2 {
    pub graph: MultiGraph,
    pub quad: Circuit,
    pub derived: MultiGraph,
}

// Vertex ids of the two-block frame. The quadrilateral is b3 q3 r3 c3; ids
// are chosen so its canonical rotation starts with the matching edge b3–q3,
// which is the edge the contraction step deletes.
const FIG_A: u32 = 0;
const FIG_B: [u32; 3] = [1, 2, 3];
const FIG_Q: [u32; 3] = [4, 5, 6];
const FIG_C: [u32; 3] = [7, 8, 9];
const FIG_R: [u32; 3] = [10, 11, 12];
const FIG_D: u32 = 13;
const FIG_P: u32 = 14;
const FIG_S: u32 = 15;

/// Builds the sixteen-vertex graph for one matching variant: two blocks of
/// three four-vertex paths (`a b_i c_i d` and `p q_i r_i s`), the fixed
/// matching edges `b3 q3` and `c3 r3`, and the four variant edges. The
/// variant is consistent when the quadrilateral `b3 q3 r3 c3` is a breaker,
/// equivalently when no short circuit avoids it.
///
/// # Errors
///
/// `Precondition` when the encoding is not a bijection or the variant
/// admits a short circuit avoiding the quadrilateral.
pub fn build_figure2(variant: &Figure2Variant) -> Result<Figure2> {
    let t = variant.targets;
    let mut sorted = t;
    sorted.sort_unstable();
    if sorted != [0, 1, 2, 3] {
        return Err(Error::pre("variant must use each of q1, q2, r1, r2 exactly once"));
    }
    let mut pairs = Vec::with_capacity(20);
    for i in 0..3 {
        pairs.push((FIG_A, FIG_B[i]));
        pairs.push((FIG_B[i], FIG_C[i]));
        pairs.push((FIG_C[i], FIG_D));
        pairs.push((FIG_P, FIG_Q[i]));
        pairs.push((FIG_Q[i], FIG_R[i]));
        pairs.push((FIG_R[i], FIG_S));
    }
    pairs.push((FIG_B[2], FIG_Q[2]));
    pairs.push((FIG_C[2], FIG_R[2]));
    let code = |c: u8| match c {
        0 => FIG_Q[0],
        1 => FIG_Q[1],
        2 => FIG_R[0],
        _ => FIG_R[1],
    };
    for (i, &src) in [FIG_B[0], FIG_B[1], FIG_C[0], FIG_C[1]].iter().enumerate() {
        pairs.push((src, code(t[i])));
    }
    let graph = MultiGraph::from_edges(16, &pairs)?;
    let (b3, q3, r3, c3) = (FIG_B[2], FIG_Q[2], FIG_R[2], FIG_C[2]);
    let quad = Circuit::new(
        &graph,
        vec![VertexId(b3), VertexId(q3), VertexId(r3), VertexId(c3)],
        vec![
            edge_between(&graph, b3, q3).unwrap(),
            edge_between(&graph, q3, r3).unwrap(),
            edge_between(&graph, r3, c3).unwrap(),
            edge_between(&graph, c3, b3).unwrap(),
        ],
    )?;
    if !is_interesting(&graph) || !find_breakers(&graph).contains(&quad) {
        return Err(Error::pre(
            "inconsistent variant: a short circuit avoids the quadrilateral",
        ));
    }
    let derived = girth4_contraction(&graph, &quad)?;
    Ok(Figure2 { graph, quad, derived })
}

/// All consistent matching variants, in lexicographic target order.
pub fn figure2_variants() -> Vec<Figure2Variant> {
    let mut out = Vec::new();
    for t0 in 0..4u8 {
        for t1 in 0..4u8 {
            for t2 in 0..4u8 {
                for t3 in 0..4u8 {
                    let v = Figure2Variant { targets: [t0, t1, t2, t3] };
                    if build_figure2(&v).is_ok() {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

/// The fourteen-vertex derived graph of the first consistent variant;
/// exposed as the `figure2` fixture.
pub fn figure2_fixture() -> Result<MultiGraph> {
    let variants = figure2_variants();
    let first = variants
        .first()
        .ok_or_else(|| Error::pre("no consistent matching variant exists"))?;
    Ok(build_figure2(first)?.derived)
}

/// First edge joining `u` and `v`, by id.
fn edge_between(g: &MultiGraph, u: u32, v: u32) -> Option<EdgeId> {
    g.edges()
        .find(|&(_, a, b)| (a.0, b.0) == (u, v) || (a.0, b.0) == (v, u))
        .map(|(e, _, _)| e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containment::{is_isomorphic, pattern};
    use crate::graph::fixture;

    /// Heawood graph with vertex 0 expanded into a triangle: sixteen
    /// vertices, cubic, and the triangle is the unique short circuit, hence
    /// a breaker.
    fn triangle_expanded_heawood() -> MultiGraph {
        let hw = fixture("heawood").unwrap();
        let nbrs = hw.neighbors(VertexId(0)).unwrap();
        let mut g = hw.delete_vertices(&[VertexId(0)]).unwrap();
        let t: Vec<VertexId> = (0..3).map(|_| g.add_vertex()).collect();
        g.add_edge(t[0], t[1]).unwrap();
        g.add_edge(t[1], t[2]).unwrap();
        g.add_edge(t[0], t[2]).unwrap();
        for (ti, n) in t.iter().zip(nbrs) {
            g.add_edge(*ti, n).unwrap();
        }
        g
    }

    /// A complete bipartite block on {0,1,2} × {3,4} joined by a three-edge
    /// matching to a Heawood graph minus one vertex (ids shifted by 4).
    fn k23_heawood_join() -> MultiGraph {
        let hw = fixture("heawood").unwrap();
        let rest = hw.delete_vertices(&[VertexId(0)]).unwrap();
        let mut pairs = vec![(0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4)];
        for (_, u, v) in rest.edges() {
            pairs.push((u.0 + 4, v.0 + 4));
        }
        let deg2: Vec<u32> = rest
            .vertices()
            .filter(|&v| rest.degree(v).unwrap() == 2)
            .map(|v| v.0 + 4)
            .collect();
        assert_eq!(deg2.len(), 3);
        for (x, d) in deg2.into_iter().enumerate() {
            pairs.push((x as u32, d));
        }
        MultiGraph::from_edges(18, &pairs).unwrap()
    }

    /// Petersen minus a vertex and one more edge, joined by a five-edge
    /// matching to Heawood minus three consecutive vertices: twenty cubic
    /// vertices whose five-edge cut is a shore boundary.
    fn pet_heawood_join() -> MultiGraph {
        let pet = fixture("petersen").unwrap();
        let e79 = edge_between(&pet, 7, 9).unwrap();
        let a = pet.delete_vertices(&[VertexId(0)]).unwrap().delete_edge(e79).unwrap();
        let hw = fixture("heawood").unwrap();
        let b = hw.delete_vertices(&[VertexId(0), VertexId(1), VertexId(2)]).unwrap();
        let mut pairs = Vec::new();
        for (_, u, v) in a.edges() {
            pairs.push((u.0 - 1, v.0 - 1));
        }
        for (_, u, v) in b.edges() {
            pairs.push((u.0 + 6, v.0 + 6));
        }
        let adeg2: Vec<u32> = a
            .vertices()
            .filter(|&v| a.degree(v).unwrap() == 2)
            .map(|v| v.0 - 1)
            .collect();
        let bdeg2: Vec<u32> = b
            .vertices()
            .filter(|&v| b.degree(v).unwrap() == 2)
            .map(|v| v.0 + 6)
            .collect();
        assert_eq!((adeg2.len(), bdeg2.len()), (5, 5));
        for (x, y) in adeg2.into_iter().zip(bdeg2) {
            pairs.push((x, y));
        }
        MultiGraph::from_edges(20, &pairs).unwrap()
    }

    #[test]
    fn delete_step_recovers_heawood_from_a_triangle_expansion() {
        let g = triangle_expanded_heawood();
        assert!(g.is_cubic());
        assert_eq!(girth(&g), Girth::Finite(3));
        assert!(is_interesting(&g));
        let out = reduction_pipeline(&g).unwrap();
        let PipelineOutcome::Reduced(step) = out else {
            panic!("expected a reduction step");
        };
        assert_eq!(step.kind, StepKind::DeleteReduce);
        assert_eq!(step.output.order(), 14);
        assert!(is_interesting(&step.output));
        assert!(is_isomorphic(&step.output, &fixture("heawood").unwrap()));
        validate_witness(&g, &step.output, &step.witness).unwrap();
    }

    #[test]
    fn three_edge_shore_replacement_rebuilds_the_triangle_expansion() {
        let g = k23_heawood_join();
        assert!(g.is_cubic());
        assert!(is_interesting(&g));
        let found = find_shore(&g).unwrap().unwrap();
        let low: BTreeSet<VertexId> = (0..5).map(VertexId).collect();
        assert_eq!(found.side, low);
        assert_eq!(found.boundary.len(), 3);

        // Pushing off the first breaker lands on the complement side.
        let quad = find_breakers(&g)[0].clone();
        let pushed = push_shore(&g, &quad).unwrap().unwrap();
        let high: BTreeSet<VertexId> = (5..18).map(VertexId).collect();
        assert_eq!(pushed.side, high);

        let rep = build_shore_replacement(&g, &pushed).unwrap();
        assert_eq!(rep.graph.order(), 16);
        assert_eq!(rep.breaker.len(), 3);
        assert!(is_interesting(&rep.graph));
        validate_witness(&g, &rep.graph, &rep.witness).unwrap();
        assert!(is_isomorphic(&rep.graph, &triangle_expanded_heawood()));

        let out = reduction_pipeline(&g).unwrap();
        let PipelineOutcome::Reduced(step) = out else {
            panic!("expected a reduction step");
        };
        assert_eq!(step.kind, StepKind::ShoreReplace);
        assert!(is_isomorphic(&step.output, &triangle_expanded_heawood()));
    }

    #[test]
    fn five_edge_shore_replacement_attaches_a_pentagon() {
        let g = pet_heawood_join();
        assert!(g.is_cubic());
        assert_eq!(girth(&g), Girth::Finite(5));
        assert!(is_interesting(&g));
        let side: BTreeSet<VertexId> = g.vertices().filter(|v| v.0 >= 9).collect();
        assert!(is_shore(&g, &side).unwrap());
        let boundary = edge_cut(&g, &side).unwrap();
        assert_eq!(boundary.len(), 5);
        let rep = build_shore_replacement(&g, &Shore { side, boundary }).unwrap();
        assert_eq!(rep.graph.order(), 16);
        assert_eq!(rep.breaker.len(), 5);
        assert!(is_interesting(&rep.graph));
        validate_witness(&g, &rep.graph, &rep.witness).unwrap();
    }

    #[test]
    fn pipeline_reduces_across_a_five_edge_cut() {
        let g = pet_heawood_join();
        let out = reduction_pipeline(&g).unwrap();
        let PipelineOutcome::Reduced(step) = out else {
            panic!("expected a reduction step");
        };
        assert_eq!(step.kind, StepKind::ShoreReplace);
        assert!(step.output.order() < g.order());
        assert!(is_interesting(&step.output));
        validate_witness(&g, &step.output, &step.witness).unwrap();
    }

    #[test]
    fn two_edge_shore_replacement_attaches_a_parallel_pair() {
        let hw = fixture("heawood").unwrap();
        let e0 = hw.edge_ids().next().unwrap();
        let (u, v) = hw.endpoints(e0).unwrap();
        let cut_open = hw.delete_edge(e0).unwrap();
        let mut pairs = Vec::new();
        for (_, a, b) in cut_open.edges() {
            pairs.push((a.0, b.0));
            pairs.push((a.0 + 14, b.0 + 14));
        }
        pairs.push((u.0, u.0 + 14));
        pairs.push((v.0, v.0 + 14));
        let g = MultiGraph::from_edges(28, &pairs).unwrap();
        assert!(g.is_cubic());
        assert!(is_interesting(&g));
        let side: BTreeSet<VertexId> = g.vertices().filter(|v| v.0 < 14).collect();
        let boundary = edge_cut(&g, &side).unwrap();
        assert_eq!(boundary.len(), 2);
        let rep = build_shore_replacement(&g, &Shore { side, boundary }).unwrap();
        assert_eq!(rep.graph.order(), 16);
        assert_eq!(rep.breaker.len(), 2);
        assert!(is_interesting(&rep.graph));
        validate_witness(&g, &rep.graph, &rep.witness).unwrap();
    }

    #[test]
    fn pipeline_terminates_on_theta_connected_input() {
        let hw = fixture("heawood").unwrap();
        match reduction_pipeline(&hw).unwrap() {
            PipelineOutcome::ThetaTerminal(g) => assert_eq!(g.order(), 14),
            other => panic!("expected a theta-connected terminal, got {other:?}"),
        }
    }

    #[test]
    fn pipeline_rejects_graphs_that_are_not_interesting() {
        let pet = fixture("petersen").unwrap();
        assert!(reduction_pipeline(&pet).is_err());
    }

    #[test]
    fn pipeline_searches_directly_past_the_sweep_bound() {
        let hw = fixture("heawood").unwrap();
        let mut pairs = Vec::new();
        for (_, a, b) in hw.edges() {
            pairs.push((a.0, b.0));
            pairs.push((a.0 + 14, b.0 + 14));
        }
        let g = MultiGraph::from_edges(28, &pairs).unwrap();
        assert!(is_interesting(&g));
        match reduction_pipeline(&g).unwrap() {
            PipelineOutcome::Petersen(w) => {
                validate_witness(&g, &pattern("petersen").unwrap(), &w).unwrap();
            }
            other => panic!("expected a direct witness, got {other:?}"),
        }
    }

    #[test]
    fn replacement_rejects_a_side_that_is_not_a_shore() {
        let hw = fixture("heawood").unwrap();
        let side: BTreeSet<VertexId> = (0..7).map(VertexId).collect();
        let shore = Shore { side, boundary: Vec::new() };
        assert!(matches!(
            build_shore_replacement(&hw, &shore),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn contraction_turns_a_cube_face_into_a_prism() {
        let q3 = MultiGraph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
        .unwrap();
        let quad = Circuit::new(
            &q3,
            vec![VertexId(0), VertexId(1), VertexId(2), VertexId(3)],
            vec![EdgeId(0), EdgeId(1), EdgeId(2), EdgeId(3)],
        )
        .unwrap();
        let h = girth4_contraction(&q3, &quad).unwrap();
        assert_eq!(h.order(), 6);
        // The hypotheses are unmet (eight vertices), so the girth-five
        // conclusion is not enforced and the prism's triangles are fine.
        assert_eq!(girth(&h), Girth::Finite(3));
        let prism = MultiGraph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(is_isomorphic(&h, &prism));
    }

    #[test]
    fn contraction_rejects_non_quadrilaterals() {
        let pet = fixture("petersen").unwrap();
        let pentagon = short_circuits(&pet)[0].clone();
        assert!(girth4_contraction(&pet, &pentagon).is_err());
    }

    #[test]
    fn exactly_four_matching_variants_are_consistent() {
        let variants = figure2_variants();
        let targets: Vec<[u8; 4]> = variants.iter().map(|v| v.targets).collect();
        assert_eq!(
            targets,
            vec![[0, 1, 3, 2], [1, 0, 2, 3], [2, 3, 1, 0], [3, 2, 0, 1]]
        );
    }

    #[test]
    fn consistent_variants_split_in_two_classes_with_one_derived_graph() {
        let variants = figure2_variants();
        let built: Vec<Figure2> =
            variants.iter().map(|v| build_figure2(v).unwrap()).collect();
        for f in &built {
            assert_eq!(f.graph.order(), 16);
            assert!(f.graph.is_cubic());
            assert_eq!(girth(&f.graph), Girth::Finite(4));
            assert!(is_interesting(&f.graph));
            assert_eq!(f.derived.order(), 14);
            assert!(f.derived.is_cubic());
            assert!(girth(&f.derived).at_least(5));
        }
        // The sixteen-vertex graphs form two isomorphism classes (swapping
        // the two free columns of one block maps variant 0 to 1 and 2 to 3,
        // but 0 and 2 differ already in their hexagon counts) while all four
        // derived graphs are isomorphic.
        assert!(is_isomorphic(&built[0].graph, &built[1].graph));
        assert!(is_isomorphic(&built[2].graph, &built[3].graph));
        assert!(!is_isomorphic(&built[0].graph, &built[2].graph));
        for f in &built[1..] {
            assert!(is_isomorphic(&built[0].derived, &f.derived));
        }
    }

    #[test]
    fn inconsistent_variants_are_rejected() {
        // b1 -> q1 and c1 -> r1 close a quadrilateral avoiding b3 q3 r3 c3.
        let bad = Figure2Variant { targets: [0, 1, 2, 3] };
        assert!(matches!(build_figure2(&bad), Err(Error::Precondition(_))));
        let not_bijective = Figure2Variant { targets: [0, 0, 1, 2] };
        assert!(build_figure2(&not_bijective).is_err());
    }

    #[test]
    fn every_derived_figure2_graph_contains_petersen() {
        let fix = figure2_fixture().unwrap();
        assert_eq!(fix.order(), 14);
        for v in figure2_variants() {
            let h = build_figure2(&v).unwrap().derived;
            let got = contains_petersen(&h).unwrap();
            let w = got.witness().expect("every derived graph contains Petersen");
            validate_witness(&h, &pattern("petersen").unwrap(), w).unwrap();
        }
    }
}
