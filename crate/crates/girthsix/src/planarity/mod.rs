//! Plane embeddings and near-planar classification.
//!
//! An embedding is a rotation system: the cyclic order of darts around
//! every vertex. Faces are the orbits of the next-dart permutation (follow
//! a dart to its head, then take the next dart around that vertex), and
//! Euler's identity over vertices, edges, faces, and components is enforced
//! whenever faces are read off, so a rotation that describes a
//! positive-genus drawing is rejected rather than silently miscounted.
//!
//! On top of the embedder sit two near-planarity classifiers for graphs
//! that are not themselves planar: an apex vertex, whose deletion leaves
//! the graph planar, and a doublecross quadruple, four removed edges that
//! reattach as two independent crossing pairs over one face of the planar
//! remainder.

mod demoucron;
mod doublecross;

pub use doublecross::{
    doublecross_pentagon_bound, is_doublecross, is_doublecross_mode, validate_doublecross,
    validate_doublecross_mode, DoublecrossWitness, ReflectionMode, DOUBLECROSS_EDGE_LIMIT,
};

use std::collections::{BTreeMap, BTreeSet};

use crate::circuits::{girth, pentagon_count};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Closed boundary walk of one face. Each dart `(e, side)` traverses edge
/// `e` once, side 0 leaving the first endpoint and side 1 the second; loops
/// contribute both sides and parallel edges their own darts.
pub type FaceWalk = Vec<(EdgeId, u8)>;

/// Rotation system of a plane drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// Cyclic dart order around every vertex of the graph. Isolated
    /// vertices map to an empty list.
    pub rotation: BTreeMap<VertexId, Vec<(EdgeId, u8)>>,
    /// Index into the canonical [`faces`] order designating the unbounded
    /// face, when one has been chosen.
    pub outer_face: Option<usize>,
}

/// Outcome of the planarity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanarityVerdict {
    Planar(Embedding),
    NonPlanar,
}

impl PlanarityVerdict {
    pub fn is_planar(&self) -> bool {
        matches!(self, PlanarityVerdict::Planar(_))
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            PlanarityVerdict::Planar(e) => Some(e),
            PlanarityVerdict::NonPlanar => None,
        }
    }
}

/// Decides planarity; a planar graph comes back with one concrete plane
/// embedding. Deterministic: the same graph always yields the same
/// rotation system.
pub fn planar_embedding(g: &MultiGraph) -> PlanarityVerdict {
    let Some(walks) = demoucron::embed_faces(g) else {
        return PlanarityVerdict::NonPlanar;
    };
    // The face successor of dart d is rotation(reverse(d)), so the rotation
    // is read off the walks as rotation(d) = walk successor of reverse(d).
    let mut succ: BTreeMap<(EdgeId, u8), (EdgeId, u8)> = BTreeMap::new();
    for w in &walks {
        for (i, &d) in w.iter().enumerate() {
            succ.insert(d, w[(i + 1) % w.len()]);
        }
    }
    let mut rotation = BTreeMap::new();
    for v in g.vertices() {
        let darts = darts_at(g, v);
        let mut cyc = Vec::with_capacity(darts.len());
        if let Some(&first) = darts.first() {
            let mut d = first;
            loop {
                cyc.push(d);
                d = succ[&(d.0, d.1 ^ 1)];
                if d == first {
                    break;
                }
            }
            debug_assert_eq!(cyc.len(), darts.len());
        }
        rotation.insert(v, cyc);
    }
    PlanarityVerdict::Planar(Embedding { rotation, outer_face: None })
}

/// Convenience wrapper for callers that only need the verdict.
pub fn is_planar(g: &MultiGraph) -> bool {
    planar_embedding(g).is_planar()
}

/// Face walks of the rotation system in canonical order: walks start at
/// their least dart and are listed by starting dart, ascending.
///
/// # Errors
/// `Precondition` when the rotation does not list each vertex of the graph
/// with exactly its incident darts, when a designated outer face is out of
/// range, or when the orbit count violates Euler's identity, meaning the
/// rotation describes a positive-genus drawing rather than a plane one.
pub fn faces(g: &MultiGraph, emb: &Embedding) -> Result<Vec<FaceWalk>> {
    if emb.rotation.len() != g.order() {
        return Err(Error::pre("rotation must cover exactly the vertex set"));
    }
    let mut succ: BTreeMap<(EdgeId, u8), (EdgeId, u8)> = BTreeMap::new();
    for (&v, order) in &emb.rotation {
        if !g.has_vertex(v) {
            return Err(Error::pre(format!("rotation lists unknown vertex {v}")));
        }
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != darts_at(g, v) {
            return Err(Error::pre(format!(
                "rotation at {v} does not match its incident darts"
            )));
        }
        for (i, &d) in order.iter().enumerate() {
            succ.insert(d, order[(i + 1) % order.len()]);
        }
    }
    let mut walks: Vec<FaceWalk> = Vec::new();
    let mut visited: BTreeSet<(EdgeId, u8)> = BTreeSet::new();
    for e in g.edge_ids() {
        for side in 0..2u8 {
            let start = (e, side);
            if visited.contains(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                walk.push(d);
                visited.insert(d);
                d = succ[&(d.0, d.1 ^ 1)];
                if d == start {
                    break;
                }
            }
            walks.push(walk);
        }
    }
    let comps = g.components();
    let edgeless = comps
        .iter()
        .filter(|c| c.len() == 1 && g.degree(c[0]).unwrap_or(0) == 0)
        .count();
    let euler = g.order() as i64 - g.size() as i64 + (walks.len() + edgeless) as i64;
    if euler != 2 * comps.len() as i64 {
        return Err(Error::pre("rotation describes a positive-genus drawing, not a plane one"));
    }
    if let Some(of) = emb.outer_face {
        if of >= walks.len() {
            return Err(Error::pre("designated outer face is out of range"));
        }
    }
    Ok(walks)
}

/// Number of faces whose boundary is a circuit through exactly five
/// vertices.
///
/// # Errors
/// Propagates the [`faces`] validation errors.
pub fn pentagonal_face_count(g: &MultiGraph, emb: &Embedding) -> Result<usize> {
    let walks = faces(g, emb)?;
    Ok(walks.iter().filter(|w| w.len() == 5 && is_circuit_walk(g, w)).count())
}

/// Least vertex whose deletion leaves a planar graph, when one exists. A
/// planar graph reports its least vertex; the empty graph has no vertex to
/// delete and reports none.
pub fn is_apex(g: &MultiGraph) -> Option<VertexId> {
    if g.order() == 0 {
        return None;
    }
    if is_planar(g) {
        return g.vertices().next();
    }
    g.vertices().find(|&v| g.delete_vertices(&[v]).map(|h| is_planar(&h)).unwrap_or(false))
}

/// Pentagon inventory for cubic apex graphs of girth at least five: the
/// number of five-circuits, paired with whether it reaches six.
///
/// # Errors
/// `Precondition` unless `g` is cubic, has girth at least five, and has an
/// apex vertex.
pub fn apex_pentagon_bound(g: &MultiGraph) -> Result<(usize, bool)> {
    if !g.is_cubic() {
        return Err(Error::pre("pentagon bound requires a cubic graph"));
    }
    if !girth(g).at_least(5) {
        return Err(Error::pre("pentagon bound requires girth at least five"));
    }
    if is_apex(g).is_none() {
        return Err(Error::pre("pentagon bound requires an apex vertex"));
    }
    let pentagons = pentagon_count(g);
    Ok((pentagons, pentagons >= 6))
}

/// Sorted darts leaving `v`.
fn darts_at(g: &MultiGraph, v: VertexId) -> Vec<(EdgeId, u8)> {
    let mut out = Vec::new();
    for (e, a, b) in g.edges() {
        if a == v {
            out.push((e, 0));
        }
        if b == v {
            out.push((e, 1));
        }
    }
    out
}

/// Vertex a dart leaves.
pub(crate) fn dart_tail(g: &MultiGraph, d: (EdgeId, u8)) -> VertexId {
    let (u, v) = g.endpoints(d.0).expect("dart refers to a graph edge");
    if d.1 == 0 {
        u
    } else {
        v
    }
}

/// True when the walk visits pairwise distinct vertices.
pub(crate) fn is_circuit_walk(g: &MultiGraph, w: &[(EdgeId, u8)]) -> bool {
    let mut tails: Vec<VertexId> = w.iter().map(|&d| dart_tail(g, d)).collect();
    tails.sort_unstable();
    tails.windows(2).all(|p| p[0] != p[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containment::pattern;
    use crate::graph::fixture;

    fn cycle(n: u32) -> MultiGraph {
        let pairs: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::from_edges(n, &pairs).unwrap()
    }

    fn embedding_of(g: &MultiGraph) -> Embedding {
        match planar_embedding(g) {
            PlanarityVerdict::Planar(e) => e,
            PlanarityVerdict::NonPlanar => panic!("expected a planar graph"),
        }
    }

    #[test]
    fn dodecahedron_embeds_with_twelve_pentagonal_faces() {
        let g = fixture("dodecahedron").unwrap();
        let emb = embedding_of(&g);
        let walks = faces(&g, &emb).unwrap();
        assert_eq!(walks.len(), 12);
        assert_eq!(pentagonal_face_count(&g, &emb).unwrap(), 12);
    }

    #[test]
    fn kuratowski_graphs_and_petersen_are_nonplanar() {
        for name in ["k5", "k33", "petersen"] {
            let g = pattern(name).unwrap();
            assert!(!is_planar(&g), "{name} must be nonplanar");
        }
        assert!(!is_planar(&fixture("heawood").unwrap()));
        assert!(!is_planar(&fixture("dodeca_apex").unwrap()));
    }

    #[test]
    fn small_planar_graphs_embed_with_the_right_face_counts() {
        let c5 = cycle(5);
        let emb = embedding_of(&c5);
        assert_eq!(faces(&c5, &emb).unwrap().len(), 2);
        assert_eq!(pentagonal_face_count(&c5, &emb).unwrap(), 2);

        let c6 = cycle(6);
        let emb = embedding_of(&c6);
        assert_eq!(pentagonal_face_count(&c6, &emb).unwrap(), 0);

        let k4 = pattern("k4").unwrap();
        let emb = embedding_of(&k4);
        assert_eq!(faces(&k4, &emb).unwrap().len(), 4);

        let path = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let emb = embedding_of(&path);
        let walks = faces(&path, &emb).unwrap();
        assert_eq!(walks.len(), 1);
        assert_eq!(walks[0].len(), 6);

        let bowtie =
            MultiGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let emb = embedding_of(&bowtie);
        assert_eq!(faces(&bowtie, &emb).unwrap().len(), 3);
    }

    #[test]
    fn loops_and_parallel_edges_embed() {
        let mut theta = MultiGraph::with_vertices(2);
        let (v0, v1) = (VertexId(0), VertexId(1));
        theta.add_edge(v0, v1).unwrap();
        theta.add_edge(v0, v1).unwrap();
        theta.add_edge(v0, v1).unwrap();
        let emb = embedding_of(&theta);
        assert_eq!(faces(&theta, &emb).unwrap().len(), 3);

        let mut looped = MultiGraph::with_vertices(1);
        looped.add_edge(v0, v0).unwrap();
        looped.add_edge(v0, v0).unwrap();
        let emb = embedding_of(&looped);
        assert_eq!(faces(&looped, &emb).unwrap().len(), 3);

        let mut mixed = cycle(3);
        mixed.add_edge(v0, v0).unwrap();
        mixed.add_edge(v1, VertexId(2)).unwrap();
        let emb = embedding_of(&mixed);
        assert_eq!(faces(&mixed, &emb).unwrap().len(), 4);
    }

    #[test]
    fn disconnected_graphs_and_isolated_vertices_embed() {
        let mut g = MultiGraph::with_vertices(7);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            g.add_edge(VertexId(u), VertexId(v)).unwrap();
        }
        let emb = embedding_of(&g);
        assert_eq!(emb.rotation[&VertexId(6)], Vec::new());
        assert_eq!(faces(&g, &emb).unwrap().len(), 4);

        let empty = MultiGraph::new();
        let emb = embedding_of(&empty);
        assert!(faces(&empty, &emb).unwrap().is_empty());
    }

    #[test]
    fn faces_rejects_malformed_rotations() {
        let c4 = cycle(4);
        let emb = embedding_of(&c4);

        let mut missing = emb.clone();
        missing.rotation.remove(&VertexId(3));
        assert!(matches!(faces(&c4, &missing), Err(Error::Precondition(_))));

        let mut swapped = emb.clone();
        let a = swapped.rotation[&VertexId(0)].clone();
        let b = swapped.rotation[&VertexId(1)].clone();
        swapped.rotation.insert(VertexId(0), b);
        swapped.rotation.insert(VertexId(1), a);
        assert!(matches!(faces(&c4, &swapped), Err(Error::Precondition(_))));

        let mut out_of_range = emb;
        out_of_range.outer_face = Some(99);
        assert!(matches!(faces(&c4, &out_of_range), Err(Error::Precondition(_))));

        // K5 has no plane drawing, so any rotation system for it must fail
        // the Euler check.
        let k5 = pattern("k5").unwrap();
        let rotation = k5.vertices().map(|v| (v, darts_at(&k5, v))).collect();
        let emb = Embedding { rotation, outer_face: None };
        assert!(matches!(faces(&k5, &emb), Err(Error::Precondition(_))));
    }

    #[test]
    fn apex_detection_scans_single_vertex_deletions() {
        assert_eq!(is_apex(&pattern("k5").unwrap()), Some(VertexId(0)));
        assert_eq!(is_apex(&fixture("dodecahedron").unwrap()), Some(VertexId(0)));
        assert_eq!(is_apex(&MultiGraph::new()), None);

        let k6pairs: Vec<(u32, u32)> =
            (0..6).flat_map(|i| ((i + 1)..6).map(move |j| (i, j))).collect();
        let k6 = MultiGraph::from_edges(6, &k6pairs).unwrap();
        assert_eq!(is_apex(&k6), None);

        let apexed = fixture("dodeca_apex").unwrap();
        let hub = VertexId(26);
        assert!(is_planar(&apexed.delete_vertices(&[hub]).unwrap()));
        assert_eq!(is_apex(&apexed), Some(hub));
    }

    #[test]
    fn petersen_stays_nonplanar_under_every_single_deletion() {
        // A planar graph of girth five has at most 5(n - 2) / 3 edges.
        // Deleting one vertex leaves 9 vertices and 12 > 11 edges, deleting
        // one edge leaves 10 vertices and 14 > 13 edges, so no single
        // deletion can planarize and there is no apex vertex.
        let p = pattern("petersen").unwrap();
        for v in p.vertices() {
            assert!(!is_planar(&p.delete_vertices(&[v]).unwrap()));
        }
        for e in p.edge_ids() {
            assert!(!is_planar(&p.delete_edge(e).unwrap()));
        }
        assert_eq!(is_apex(&p), None);
    }

    #[test]
    fn pentagon_bound_holds_on_the_dodecahedron_and_rejects_bad_inputs() {
        let g = fixture("dodecahedron").unwrap();
        assert_eq!(apex_pentagon_bound(&g).unwrap(), (12, true));

        let c5 = cycle(5);
        assert!(matches!(apex_pentagon_bound(&c5), Err(Error::Precondition(_))));
        let k4 = pattern("k4").unwrap();
        assert!(matches!(apex_pentagon_bound(&k4), Err(Error::Precondition(_))));
        let p = pattern("petersen").unwrap();
        assert!(matches!(apex_pentagon_bound(&p), Err(Error::Precondition(_))));
    }

    #[test]
    fn every_fixture_embedding_survives_face_validation() {
        for name in ["petersen", "heawood", "dodecahedron", "dodeca_apex", "figure2"] {
            let g = fixture(name).unwrap();
            if let PlanarityVerdict::Planar(emb) = planar_embedding(&g) {
                faces(&g, &emb).unwrap();
            }
        }
    }
}
