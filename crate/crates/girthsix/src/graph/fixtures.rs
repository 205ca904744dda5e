//! Named reference graphs used across the toolkit and its test suites.

use std::path::PathBuf;

use crate::error::{Error, Result};

use super::{EdgeId, MultiGraph, VertexId};

/// Names accepted by [`fixture`].
pub fn fixture_names() -> &'static [&'static str] {
    &["petersen", "heawood", "dodecahedron", "dodeca_apex", "figure2", "starfish"]
}

/// Returns a bundled reference graph by name.
///
/// `petersen`, `heawood`, and `dodecahedron` are hardcoded. `dodeca_apex` is
/// built programmatically: subdivide a size-six induced matching of the
/// dodecahedron once per edge and join the six new vertices to a hub, which
/// raises the girth to six while keeping the graph apex. `figure2` is the
/// 14-vertex outcome of the quadrilateral reduction (see
/// [`crate::containment::build_figure2`]). `starfish` is loaded from
/// `data/starfish.txt` and validated.
///
/// # Errors
///
/// Unknown names are refused; `starfish` reports "fixture unavailable" when
/// its data file is missing or fails validation.
pub fn fixture(name: &str) -> Result<MultiGraph> {
    match name {
        "petersen" => Ok(petersen()),
        "heawood" => Ok(heawood()),
        "dodecahedron" => Ok(dodecahedron()),
        "dodeca_apex" => Ok(dodeca_apex()),
        "figure2" => crate::containment::figure2_fixture(),
        "starfish" => starfish(),
        other => Err(Error::FixtureUnavailable(format!("unknown fixture name `{other}`"))),
    }
}

/// The Petersen graph: outer pentagon 0..5, spokes, inner pentagram 5..10.
fn petersen() -> MultiGraph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((i + 5, (i + 2) % 5 + 5));
    }
    dedup_pairs(&mut pairs);
    MultiGraph::from_edges(10, &pairs).unwrap()
}

/// The Heawood graph from its LCF description: a 14-cycle where each even
/// vertex is joined to the vertex five steps ahead.
fn heawood() -> MultiGraph {
    let mut pairs = Vec::new();
    for i in 0..14 {
        pairs.push((i, (i + 1) % 14));
        if i % 2 == 0 {
            pairs.push((i, (i + 5) % 14));
        }
    }
    dedup_pairs(&mut pairs);
    MultiGraph::from_edges(14, &pairs).unwrap()
}

/// The dodecahedron: top pentagon 0..5, middle 10-cycle 5..15, bottom
/// pentagon 15..20, with alternating spokes.
fn dodecahedron() -> MultiGraph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((15 + i, 15 + (i + 1) % 5));
        pairs.push((i, 5 + 2 * i));
        pairs.push((15 + i, 5 + 2 * i + 1));
    }
    for j in 0..10 {
        pairs.push((5 + j, 5 + (j + 1) % 10));
    }
    dedup_pairs(&mut pairs);
    MultiGraph::from_edges(20, &pairs).unwrap()
}

/// Girth-six apex graph derived from the dodecahedron.
fn dodeca_apex() -> MultiGraph {
    let base = dodecahedron();
    let matching = first_induced_matching(&base, 6)
        .expect("the dodecahedron has an induced matching of size six");
    let mut g = base.clone();
    let mut mids = Vec::new();
    for e in matching {
        let (u, v) = g.endpoints(e).unwrap();
        g = g.delete_edge(e).unwrap();
        let mid = g.add_vertex();
        g.add_edge(u, mid).unwrap();
        g.add_edge(mid, v).unwrap();
        mids.push(mid);
    }
    let hub = g.add_vertex();
    for mid in mids {
        g.add_edge(hub, mid).unwrap();
    }
    g
}

/// Drops repeated unordered pairs, keeping first occurrences.
fn dedup_pairs(pairs: &mut Vec<(u32, u32)>) {
    let mut seen = std::collections::BTreeSet::new();
    pairs.retain(|&(a, b)| seen.insert((a.min(b), a.max(b))));
}

/// Lexicographically least induced matching of the given size, as edge ids.
/// Induced means the chosen edges are pairwise disjoint with no edge of the
/// graph joining their endpoint sets.
fn first_induced_matching(g: &MultiGraph, size: usize) -> Option<Vec<EdgeId>> {
    let edges: Vec<(EdgeId, VertexId, VertexId)> = g.edges().collect();
    let adjacent = |a: VertexId, b: VertexId| {
        a == b || g.edges().any(|(_, u, v)| (u, v) == (a, b) || (u, v) == (b, a))
    };
    fn extend(
        edges: &[(EdgeId, VertexId, VertexId)],
        adjacent: &impl Fn(VertexId, VertexId) -> bool,
        chosen: &mut Vec<usize>,
        from: usize,
        size: usize,
    ) -> bool {
        if chosen.len() == size {
            return true;
        }
        for i in from..edges.len() {
            let (_, u, v) = edges[i];
            let clash = chosen.iter().any(|&j| {
                let (_, a, b) = edges[j];
                adjacent(u, a) || adjacent(u, b) || adjacent(v, a) || adjacent(v, b)
            });
            if clash {
                continue;
            }
            chosen.push(i);
            if extend(edges, adjacent, chosen, i + 1, size) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    extend(&edges, &adjacent, &mut chosen, 0, size)
        .then(|| chosen.iter().map(|&i| edges[i].0).collect())
}

/// Directory holding bundled data files. `GIRTHSIX_DATA_DIR` overrides the
/// in-repo default.
pub(crate) fn data_dir() -> PathBuf {
    match std::env::var_os("GIRTHSIX_DATA_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data")),
    }
}

/// Loads and validates the starfish graph: cubic, girth five, with three
/// pairwise vertex-disjoint pentagons.
fn starfish() -> Result<MultiGraph> {
    starfish_from(&data_dir().join("starfish.txt"))
}

fn starfish_from(path: &std::path::Path) -> Result<MultiGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::FixtureUnavailable(format!("starfish data file {} unreadable: {e}", path.display()))
    })?;
    let g = super::parse_adjacency(&text)
        .map_err(|e| Error::FixtureUnavailable(format!("starfish data file malformed: {e}")))?;
    let invalid = |why: &str| Error::FixtureUnavailable(format!("starfish data file invalid: {why}"));
    if !g.is_cubic() {
        return Err(invalid("not cubic"));
    }
    if crate::circuits::girth(&g) != crate::circuits::Girth::Finite(5) {
        return Err(invalid("girth is not five"));
    }
    let pentagons: Vec<crate::circuits::Circuit> = crate::circuits::circuits_up_to(&g, 5)
        .into_iter()
        .filter(|c| c.len() == 5)
        .collect();
    let disjoint_triple = pentagons.iter().enumerate().any(|(i, a)| {
        pentagons.iter().enumerate().skip(i + 1).any(|(j, b)| {
            !a.meets(b)
                && pentagons
                    .iter()
                    .skip(j + 1)
                    .any(|c| !a.meets(c) && !b.meets(c))
        })
    });
    if !disjoint_triple {
        return Err(invalid("no three pairwise vertex-disjoint pentagons"));
    }
    Ok(g)
}
