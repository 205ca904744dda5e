//! Doublecross detection.
//!
//! A graph is a doublecross when four edges can be removed so that the rest
//! embeds in the plane with one face circuit carrying all eight removed
//! endpoints, and the removed edges reattach across that face as two
//! independent crossing pairs: reading around the circuit, the endpoints
//! spell the cyclic pattern ABAB CDCD over the four edges.

use std::collections::BTreeSet;

use super::{dart_tail, faces, is_circuit_walk, planar_embedding, Embedding, PlanarityVerdict};
use crate::circuits::{girth, pentagon_count};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Largest edge count the exhaustive doublecross scan accepts.
pub const DOUBLECROSS_EDGE_LIMIT: usize = 60;

/// How an endpoint sequence may be read around the designated face.
///
/// Face walks are stored with the bounded side on the left, so the walk of
/// the face turned inside out into the unbounded one reads the boundary
/// backwards. `Strict` accepts only that reversed reading; `Permissive`
/// accepts either direction, which also admits the mirror image of a
/// drawing. The crossing pattern itself is symmetric under reversal, so the
/// two modes agree on whether a graph is a doublecross and differ only in
/// which endpoint orders validate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionMode {
    Permissive,
    Strict,
}

/// Certificate that a graph is a doublecross.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublecrossWitness {
    /// The four removed edges in crossing roles `e1, e2, e3, e4`: `e1`
    /// crosses `e2` and `e3` crosses `e4`.
    pub removed: [EdgeId; 4],
    /// Plane embedding of the remainder, with `outer_face` designating the
    /// face all eight endpoints lie on.
    pub embedding: Embedding,
    /// The eight endpoints in cyclic order around the designated face:
    /// `u1, u2, v1, v2, u3, u4, v3, v4` with `e1 = u1 v1`, `e2 = u2 v2`,
    /// `e3 = u3 v3`, `e4 = u4 v4`.
    pub order: [VertexId; 8],
}

/// Exhaustive doublecross scan under [`ReflectionMode::Permissive`].
///
/// # Errors
/// `BoundExceeded` when the graph has more than
/// [`DOUBLECROSS_EDGE_LIMIT`] edges.
pub fn is_doublecross(g: &MultiGraph) -> Result<Option<DoublecrossWitness>> {
    is_doublecross_mode(g, ReflectionMode::Permissive)
}

/// Exhaustive doublecross scan: every four-edge subset in ascending order,
/// every face of the remainder embedding in canonical order. Returns the
/// first witness found, so the result is deterministic.
///
/// # Errors
/// `BoundExceeded` when the graph has more than
/// [`DOUBLECROSS_EDGE_LIMIT`] edges.
pub fn is_doublecross_mode(
    g: &MultiGraph,
    mode: ReflectionMode,
) -> Result<Option<DoublecrossWitness>> {
    if g.size() > DOUBLECROSS_EDGE_LIMIT {
        return Err(Error::BoundExceeded(format!(
            "doublecross scan accepts at most {DOUBLECROSS_EDGE_LIMIT} edges, got {}",
            g.size()
        )));
    }
    let eids: Vec<EdgeId> = g.edge_ids().collect();
    let m = eids.len();
    if m < 4 {
        return Ok(None);
    }
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    let quad = [eids[a], eids[b], eids[c], eids[d]];
                    if let Some(w) = try_quad(g, quad, mode)? {
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn try_quad(
    g: &MultiGraph,
    quad: [EdgeId; 4],
    mode: ReflectionMode,
) -> Result<Option<DoublecrossWitness>> {
    let mut pts = Vec::with_capacity(8);
    for &e in &quad {
        let (u, v) = g.endpoints(e)?;
        if u == v {
            return Ok(None);
        }
        pts.push(u);
        pts.push(v);
    }
    let mut sorted = pts.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != 8 {
        return Ok(None);
    }
    let mut rem = g.clone();
    for &e in &quad {
        rem = rem.delete_edge(e)?;
    }
    let PlanarityVerdict::Planar(mut emb) = planar_embedding(&rem) else {
        return Ok(None);
    };
    let walks = faces(&rem, &emb)?;
    let label = |v: VertexId| -> usize {
        quad.iter()
            .position(|&e| {
                let (x, y) = g.endpoints(e).expect("edge present");
                x == v || y == v
            })
            .expect("vertex is a removed endpoint")
    };
    for (fi, w) in walks.iter().enumerate() {
        if w.len() < 8 || !is_circuit_walk(&rem, w) {
            continue;
        }
        let tails: Vec<VertexId> = w.iter().map(|&d| dart_tail(&rem, d)).collect();
        if pts.iter().any(|p| !tails.contains(p)) {
            continue;
        }
        let seq: Vec<VertexId> = tails.into_iter().filter(|t| pts.contains(t)).collect();
        let rev: Vec<VertexId> = seq.iter().rev().copied().collect();
        let mut readings: Vec<&[VertexId]> = vec![&rev];
        if mode == ReflectionMode::Permissive {
            readings.push(&seq);
        }
        for reading in readings {
            let word: Vec<usize> = reading.iter().map(|&v| label(v)).collect();
            let hit = (0..8).find(|&r| {
                word[r] == word[(r + 2) % 8]
                    && word[(r + 1) % 8] == word[(r + 3) % 8]
                    && word[(r + 4) % 8] == word[(r + 6) % 8]
                    && word[(r + 5) % 8] == word[(r + 7) % 8]
            });
            if let Some(r) = hit {
                let mut order = [VertexId(0); 8];
                for (i, slot) in order.iter_mut().enumerate() {
                    *slot = reading[(r + i) % 8];
                }
                let removed = [
                    quad[label(order[0])],
                    quad[label(order[1])],
                    quad[label(order[4])],
                    quad[label(order[5])],
                ];
                emb.outer_face = Some(fi);
                return Ok(Some(DoublecrossWitness { removed, embedding: emb, order }));
            }
        }
    }
    Ok(None)
}

/// Replays a doublecross witness under [`ReflectionMode::Permissive`].
///
/// # Errors
/// `InvalidWitness` when any part of the certificate fails replay;
/// `Precondition` when the embedding itself is malformed.
pub fn validate_doublecross(g: &MultiGraph, w: &DoublecrossWitness) -> Result<()> {
    validate_doublecross_mode(g, w, ReflectionMode::Permissive)
}

/// Replays a doublecross witness: the removed edges must exist and join the
/// claimed endpoints, the embedding must be a plane drawing of the
/// remainder, and the eight endpoints must read around the designated face
/// circuit in the certified order under the given mode.
///
/// # Errors
/// `InvalidWitness` when any part of the certificate fails replay;
/// `Precondition` when the embedding itself is malformed.
pub fn validate_doublecross_mode(
    g: &MultiGraph,
    w: &DoublecrossWitness,
    mode: ReflectionMode,
) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &e in &w.removed {
        if !seen.insert(e) {
            return Err(Error::InvalidWitness("removed edges repeat".into()));
        }
    }
    let mut pts = BTreeSet::new();
    for &v in &w.order {
        if !pts.insert(v) {
            return Err(Error::InvalidWitness("endpoint order repeats a vertex".into()));
        }
    }
    let pairing = [(0usize, 2usize), (1, 3), (4, 6), (5, 7)];
    for (k, &(i, j)) in pairing.iter().enumerate() {
        let (x, y) = g.endpoints(w.removed[k])?;
        let have = (x.min(y), x.max(y));
        let want = (w.order[i].min(w.order[j]), w.order[i].max(w.order[j]));
        if have != want {
            return Err(Error::InvalidWitness(format!(
                "edge {} does not join its claimed endpoints",
                w.removed[k]
            )));
        }
    }
    let mut rem = g.clone();
    for &e in &w.removed {
        rem = rem.delete_edge(e)?;
    }
    let walks = faces(&rem, &w.embedding)?;
    let Some(of) = w.embedding.outer_face else {
        return Err(Error::InvalidWitness("witness designates no outer face".into()));
    };
    let walk = &walks[of];
    if walk.len() < 8 || !is_circuit_walk(&rem, walk) {
        return Err(Error::InvalidWitness("outer face is not a circuit of length eight".into()));
    }
    let tails: Vec<VertexId> = walk.iter().map(|&d| dart_tail(&rem, d)).collect();
    if w.order.iter().any(|v| !tails.contains(v)) {
        return Err(Error::InvalidWitness("an endpoint is missing from the outer face".into()));
    }
    let seq: Vec<VertexId> = tails.into_iter().filter(|t| w.order.contains(t)).collect();
    let matches_order =
        |s: &[VertexId]| (0..8).any(|r| (0..8).all(|i| s[(r + i) % 8] == w.order[i]));
    let rev: Vec<VertexId> = seq.iter().rev().copied().collect();
    let ok = match mode {
        ReflectionMode::Strict => matches_order(&rev),
        ReflectionMode::Permissive => matches_order(&rev) || matches_order(&seq),
    };
    if !ok {
        return Err(Error::InvalidWitness(
            "endpoints do not read around the outer face in the certified order".into(),
        ));
    }
    Ok(())
}

/// Pentagon inventory for cubic doublecross graphs of girth at least five:
/// the number of five-circuits, paired with whether it reaches six.
///
/// # Errors
/// `Precondition` unless `g` is cubic with girth at least five and the
/// doublecross scan finds a witness; `BoundExceeded` when the graph is too
/// large to scan.
pub fn doublecross_pentagon_bound(g: &MultiGraph) -> Result<(usize, bool)> {
    if !g.is_cubic() {
        return Err(Error::pre("pentagon bound requires a cubic graph"));
    }
    if !girth(g).at_least(5) {
        return Err(Error::pre("pentagon bound requires girth at least five"));
    }
    if is_doublecross(g)?.is_none() {
        return Err(Error::pre("pentagon bound requires a doublecross quadruple"));
    }
    let pentagons = pentagon_count(g);
    Ok((pentagons, pentagons >= 6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::Girth;
    use crate::containment::pattern;

    /// Octagon with two interleaved chord pairs: chords (0,2) and (1,3)
    /// cross, chords (4,6) and (5,7) cross.
    fn octagon_with_crossings() -> MultiGraph {
        let mut pairs = vec![(0, 2), (1, 3), (4, 6), (5, 7)];
        pairs.extend((0..8).map(|i| (i, (i + 1) % 8)));
        MultiGraph::from_edges(8, &pairs).unwrap()
    }

    /// Cubic girth-five doublecross on 32 vertices. A drum fullerene (top
    /// and bottom hexagons joined by a twelve-vertex belt, all other faces
    /// pentagons) has its top hexagon subdivided into a 14-circuit, and four
    /// chords are drawn across that circuit as two crossing pairs. Each
    /// chord closes a pentagon with its four-edge arc, so the graph keeps
    /// girth five with ten pentagons: six intact bottom ones and four new
    /// chord ones.
    fn drum_doublecross() -> MultiGraph {
        let mut pairs = vec![(31, 25), (24, 26), (27, 29), (28, 30)];
        // subdivided top hexagon: T0 24 T1 25 T2 26 27 T3 28 T4 29 T5 30 31
        pairs.extend([
            (0, 24),
            (24, 1),
            (1, 25),
            (25, 2),
            (2, 26),
            (26, 27),
            (27, 3),
            (3, 28),
            (28, 4),
            (4, 29),
            (29, 5),
            (5, 30),
            (30, 31),
            (31, 0),
        ]);
        pairs.extend((0..12).map(|j| (6 + j, 6 + (j + 1) % 12)));
        pairs.extend((0..6).map(|i| (18 + i, 18 + (i + 1) % 6)));
        pairs.extend((0..6).map(|i| (i, 6 + 2 * i)));
        pairs.extend((0..6).map(|i| (18 + i, 6 + 2 * i + 1)));
        MultiGraph::from_edges(32, &pairs).unwrap()
    }

    #[test]
    fn octagon_with_interleaved_chords_is_a_doublecross() {
        let g = octagon_with_crossings();
        let w = is_doublecross(&g).unwrap().expect("witness expected");
        validate_doublecross(&g, &w).unwrap();
        validate_doublecross_mode(&g, &w, ReflectionMode::Strict).unwrap();
    }

    #[test]
    fn tampered_witnesses_are_rejected() {
        let g = octagon_with_crossings();
        let w = is_doublecross(&g).unwrap().expect("witness expected");

        let mut swapped = w.clone();
        swapped.order.swap(0, 1);
        assert!(matches!(
            validate_doublecross(&g, &swapped),
            Err(Error::InvalidWitness(_))
        ));

        let mut undirected = w.clone();
        undirected.embedding.outer_face = None;
        assert!(matches!(
            validate_doublecross(&g, &undirected),
            Err(Error::InvalidWitness(_))
        ));

        let mut repeated = w;
        repeated.removed[1] = repeated.removed[0];
        assert!(matches!(
            validate_doublecross(&g, &repeated),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn quadruples_without_eight_distinct_endpoints_never_qualify() {
        let k4 = pattern("k4").unwrap();
        assert!(is_doublecross(&k4).unwrap().is_none());
    }

    #[test]
    fn oversized_graphs_are_rejected() {
        let pairs: Vec<(u32, u32)> = (0..61).map(|i| (i, (i + 1) % 61)).collect();
        let big = MultiGraph::from_edges(61, &pairs).unwrap();
        assert!(matches!(is_doublecross(&big), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn drum_fullerene_with_chords_is_a_cubic_girth_five_doublecross() {
        let g = drum_doublecross();
        assert!(g.is_cubic());
        assert_eq!(girth(&g), Girth::Finite(5));
        assert_eq!(pentagon_count(&g), 10);

        let w = is_doublecross(&g).unwrap().expect("witness expected");
        validate_doublecross(&g, &w).unwrap();
        let mut removed: Vec<u32> = w.removed.iter().map(|e| e.0).collect();
        removed.sort_unstable();
        assert_eq!(removed, vec![0, 1, 2, 3]);

        assert_eq!(doublecross_pentagon_bound(&g).unwrap(), (10, true));
    }

    #[test]
    fn petersen_doublecross_status_is_frozen() {
        // Exhaustive replay over all 1365 four-edge subsets.
        let p = pattern("petersen").unwrap();
        let status = is_doublecross(&p).unwrap();
        assert!(status.is_none(), "got witness {:?}", status.map(|w| w.removed));
        let strict = is_doublecross_mode(&p, ReflectionMode::Strict).unwrap();
        assert!(strict.is_none());
    }
}
