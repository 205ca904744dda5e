//! Subdivision witnesses: a branch map plus one host path per pattern edge,
//! an independent validator, and a line-oriented text certificate format.
//!
//! The validator deliberately shares no code with the search; it re-derives
//! every claim from the two graphs alone, so a bug in the search cannot
//! vouch for itself.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// A host path standing in for one pattern edge. `edges[i]` joins
/// `vertices[i]` and `vertices[i + 1]`. For a loop pattern edge the first
/// and last vertices coincide; otherwise all vertices are distinct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl WitnessPath {
    pub fn interior(&self) -> &[VertexId] {
        &self.vertices[1..self.vertices.len() - 1]
    }
}

/// Witness that a host contains a subdivision of a pattern: where each
/// pattern vertex lands and which host path realizes each pattern edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionWitness {
    /// Pattern vertex to host vertex, injective.
    pub branch: BTreeMap<VertexId, VertexId>,
    /// Pattern edge to host path; the path runs from the branch image of the
    /// edge's first stored endpoint to the image of its second.
    pub paths: BTreeMap<EdgeId, WitnessPath>,
}

/// Checks a witness against the two graphs from first principles.
///
/// # Errors
///
/// `InvalidWitness` naming the first violated condition.
pub fn validate_witness(
    host: &MultiGraph,
    pattern: &MultiGraph,
    w: &SubdivisionWitness,
) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidWitness(msg));

    let pattern_vertices: BTreeSet<VertexId> = pattern.vertices().collect();
    let mapped: BTreeSet<VertexId> = w.branch.keys().copied().collect();
    if mapped != pattern_vertices {
        return bad("branch map keys differ from the pattern vertex set".into());
    }
    let mut images = BTreeSet::new();
    for (&p, &h) in &w.branch {
        if !host.has_vertex(h) {
            return bad(format!("branch image {h} of {p} is not a host vertex"));
        }
        if !images.insert(h) {
            return bad(format!("branch map repeats host vertex {h}"));
        }
    }

    let pattern_edges: BTreeSet<EdgeId> = pattern.edge_ids().collect();
    let covered: BTreeSet<EdgeId> = w.paths.keys().copied().collect();
    if covered != pattern_edges {
        return bad("path map keys differ from the pattern edge set".into());
    }

    let mut used_edges = BTreeSet::new();
    let mut used_interiors = BTreeSet::new();
    for (&pe, path) in &w.paths {
        let label = format!("path for pattern edge {pe}");
        if path.edges.is_empty() || path.vertices.len() != path.edges.len() + 1 {
            return bad(format!("{label} is not a nonempty alternating sequence"));
        }
        let (pa, pb) = pattern.endpoints(pe)?;
        let first = path.vertices[0];
        let last = *path.vertices.last().unwrap();
        if first != w.branch[&pa] || last != w.branch[&pb] {
            return bad(format!("{label} does not join the branch images of {pa} and {pb}"));
        }
        if (pa == pb) != (first == last) {
            return bad(format!("{label} closes up exactly when the pattern edge is a loop"));
        }
        for (i, &e) in path.edges.iter().enumerate() {
            let (x, y) = (path.vertices[i], path.vertices[i + 1]);
            match host.endpoints(e) {
                Ok((a, b)) if (a, b) == (x, y) || (a, b) == (y, x) => {}
                Ok(_) => return bad(format!("{label}: edge {e} does not join {x} and {y}")),
                Err(_) => return bad(format!("{label}: {e} is not a host edge")),
            }
            if !used_edges.insert(e) {
                return bad(format!("host edge {e} is used by two paths"));
            }
        }
        let mut seen = BTreeSet::new();
        for &v in path.interior() {
            if !seen.insert(v) {
                return bad(format!("{label} revisits {v}"));
            }
            if images.contains(&v) {
                return bad(format!("{label} passes through branch vertex {v}"));
            }
            if !used_interiors.insert(v) {
                return bad(format!("interior vertex {v} is shared by two paths"));
            }
        }
    }
    Ok(())
}

impl SubdivisionWitness {
    /// Renders the certificate: `branch i -> v` lines, then
    /// `path (i,j): v0 v1 ... vk` lines in pattern edge id order.
    pub fn to_text(&self, pattern: &MultiGraph) -> Result<String> {
        let mut out = String::new();
        for (p, h) in &self.branch {
            writeln!(out, "branch {} -> {}", p.0, h.0).unwrap();
        }
        for (&pe, path) in &self.paths {
            let (a, b) = pattern.endpoints(pe)?;
            let stops: Vec<String> = path.vertices.iter().map(|v| v.0.to_string()).collect();
            writeln!(out, "path ({},{}): {}", a.0, b.0, stops.join(" ")).unwrap();
        }
        Ok(out)
    }

    /// Parses a certificate back against its pattern and host. Pattern edges
    /// with equal endpoints are matched to `path` lines in id order, and
    /// host edges along each path are chosen greedily by least id among the
    /// edges not yet claimed.
    ///
    /// # Errors
    ///
    /// `Parse` for malformed lines, `InvalidWitness` for references that do
    /// not fit the graphs. The result still requires [`validate_witness`].
    pub fn from_text(pattern: &MultiGraph, host: &MultiGraph, text: &str) -> Result<Self> {
        let mut branch = BTreeMap::new();
        let mut path_lines: Vec<(VertexId, VertexId, Vec<VertexId>)> = Vec::new();
        let mut offset = 0usize;
        for line in text.lines() {
            let at = offset;
            offset += line.len() + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("branch ") {
                let (p, h) = rest
                    .split_once("->")
                    .ok_or_else(|| Error::parse(at, "branch line needs `->`"))?;
                let p = parse_u32(p.trim(), at)?;
                let h = parse_u32(h.trim(), at)?;
                if branch.insert(VertexId(p), VertexId(h)).is_some() {
                    return Err(Error::parse(at, format!("branch {p} repeated")));
                }
            } else if let Some(rest) = line.strip_prefix("path ") {
                let (ends, stops) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(at, "path line needs `:`"))?;
                let ends = ends.trim();
                let inner = ends
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| Error::parse(at, "path ends must look like (i,j)"))?;
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::parse(at, "path ends must look like (i,j)"))?;
                let a = VertexId(parse_u32(a.trim(), at)?);
                let b = VertexId(parse_u32(b.trim(), at)?);
                let mut vs = Vec::new();
                for tok in stops.split_whitespace() {
                    vs.push(VertexId(parse_u32(tok, at)?));
                }
                if vs.len() < 2 {
                    return Err(Error::parse(at, "path needs at least two stops"));
                }
                path_lines.push((a, b, vs));
            } else {
                return Err(Error::parse(at, format!("unrecognized line `{line}`")));
            }
        }

        // Hand path lines to pattern edges with the same endpoints, in id
        // order on both sides.
        let mut wanted: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
        for (e, a, b) in pattern.edges() {
            wanted.entry((a.min(b), a.max(b))).or_default().push(e);
        }
        let mut paths: BTreeMap<EdgeId, WitnessPath> = BTreeMap::new();
        let mut claimed_edges: BTreeSet<EdgeId> = BTreeSet::new();
        for (a, b, vs) in path_lines {
            let key = (a.min(b), a.max(b));
            let pe = wanted
                .get_mut(&key)
                .and_then(|q| if q.is_empty() { None } else { Some(q.remove(0)) })
                .ok_or_else(|| {
                    Error::InvalidWitness(format!("no unmatched pattern edge joins {a} and {b}"))
                })?;
            let (pa, _) = pattern.endpoints(pe)?;
            let mut vs = vs;
            if branch.get(&pa) != Some(&vs[0]) {
                vs.reverse();
            }
            let mut edges = Vec::new();
            for i in 0..vs.len() - 1 {
                let (x, y) = (vs[i], vs[i + 1]);
                let pick = host
                    .edges()
                    .filter(|&(e, u, v)| {
                        ((u, v) == (x, y) || (u, v) == (y, x)) && !claimed_edges.contains(&e)
                    })
                    .map(|(e, _, _)| e)
                    .next()
                    .ok_or_else(|| {
                        Error::InvalidWitness(format!("no unused host edge joins {x} and {y}"))
                    })?;
                claimed_edges.insert(pick);
                edges.push(pick);
            }
            paths.insert(pe, WitnessPath { vertices: vs, edges });
        }
        Ok(SubdivisionWitness { branch, paths })
    }
}

fn parse_u32(tok: &str, at: usize) -> Result<u32> {
    tok.parse::<u32>()
        .map_err(|_| Error::parse(at, format!("expected a number, found `{tok}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containment::{contains_subdivision, pattern};
    use crate::graph::fixture;

    #[test]
    fn text_round_trip_preserves_the_witness() {
        let host = fixture("heawood").unwrap();
        let pat = pattern("petersen").unwrap();
        let w = contains_subdivision(&host, &pat, None).unwrap().witness().cloned().unwrap();
        let text = w.to_text(&pat).unwrap();
        let back = SubdivisionWitness::from_text(&pat, &host, &text).unwrap();
        validate_witness(&host, &pat, &back).unwrap();
        assert_eq!(w.branch, back.branch);
        for (e, p) in &w.paths {
            assert_eq!(p.vertices, back.paths[e].vertices);
        }
    }

    #[test]
    fn validator_rejects_tampered_witnesses() {
        let host = fixture("heawood").unwrap();
        let pat = pattern("petersen").unwrap();
        let w = contains_subdivision(&host, &pat, None).unwrap().witness().cloned().unwrap();

        let mut broken = w.clone();
        let first = *broken.branch.keys().next().unwrap();
        let second = *broken.branch.keys().nth(1).unwrap();
        let img = broken.branch[&first];
        broken.branch.insert(second, img);
        assert!(validate_witness(&host, &pat, &broken).is_err(), "non-injective branch map");

        let mut broken = w.clone();
        let e = *broken.paths.keys().next().unwrap();
        broken.paths.remove(&e);
        assert!(validate_witness(&host, &pat, &broken).is_err(), "uncovered pattern edge");

        let mut broken = w.clone();
        let e = *broken.paths.keys().next().unwrap();
        broken.paths.get_mut(&e).unwrap().vertices.swap(0, 1);
        assert!(validate_witness(&host, &pat, &broken).is_err(), "mangled path");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let pat = pattern("k4").unwrap();
        let host = fixture("petersen").unwrap();
        assert!(SubdivisionWitness::from_text(&pat, &host, "branch 0 0\n").is_err());
        assert!(SubdivisionWitness::from_text(&pat, &host, "nonsense\n").is_err());
        assert!(SubdivisionWitness::from_text(&pat, &host, "path (0,1): 3\n").is_err());
    }
}
