//! Multigraph isomorphism by iterated degree refinement plus backtracking.
//!
//! Vertices are first colored by (non-loop degree, loop count) and the
//! colors refined against neighbor color multisets (with edge multiplicity)
//! until stable. The backtracking then only maps within color classes and
//! checks adjacency multiplicities against all previously mapped vertices,
//! which is exact; refinement is only a pruning device.

use std::collections::BTreeMap;

use crate::graph::{Compact, MultiGraph};

pub fn is_isomorphic(a: &MultiGraph, b: &MultiGraph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    let va = View::build(a);
    let vb = View::build(b);
    let ca = refine(&va);
    let cb = refine(&vb);
    let mut hist_a: BTreeMap<u32, usize> = BTreeMap::new();
    let mut hist_b: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &ca {
        *hist_a.entry(c).or_default() += 1;
    }
    for &c in &cb {
        *hist_b.entry(c).or_default() += 1;
    }
    if hist_a != hist_b {
        return false;
    }
    let n = va.n;
    let order: Vec<usize> = (0..n).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(&va, &vb, &ca, &cb, &order, &[], &mut map, &mut used, 0)
}

/// Images of vertex `v` (a [`Compact`] index) under automorphisms of `g`
/// fixing every index in `pins` pointwise. Always contains `v`; ascending.
///
/// Each candidate image is decided by its own backtracking run seeded with
/// the forced assignments, so the automorphism group is never enumerated;
/// on the small patterns fed to the subdivision search every probe is
/// cheap. The search uses these orbits to break pattern symmetry: once two
/// pattern vertices lie in a common pinned orbit, only one relative order
/// of their host images needs exploring.
pub(super) fn pinned_orbit(g: &MultiGraph, v: usize, pins: &[usize]) -> Vec<usize> {
    let view = View::build(g);
    let colors = refine(&view);
    let mut orbit = vec![v];
    if pins.contains(&v) {
        return orbit;
    }
    for w in 0..view.n {
        if w == v || pins.contains(&w) || colors[w] != colors[v] {
            continue;
        }
        if automorphism_moves(&view, &colors, pins, v, w) {
            orbit.push(w);
        }
    }
    orbit.sort_unstable();
    orbit
}

/// Does some automorphism fix `pins` pointwise and send `v` to `w`?
fn automorphism_moves(view: &View, colors: &[u32], pins: &[usize], v: usize, w: usize) -> bool {
    let n = view.n;
    let mut order: Vec<usize> = pins.to_vec();
    order.push(v);
    order.extend((0..n).filter(|x| *x != v && !pins.contains(x)));
    let mut forced: Vec<usize> = pins.to_vec();
    forced.push(w);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(view, view, colors, colors, &order, &forced, &mut map, &mut used, 0)
}

struct View {
    n: usize,
    loops: Vec<u32>,
    /// Multiplicity of non-loop edges between each vertex pair.
    mult: Vec<BTreeMap<usize, u32>>,
}

impl View {
    fn build(g: &MultiGraph) -> View {
        let c = Compact::build(g);
        let mut loops = vec![0u32; c.n()];
        let mut mult: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); c.n()];
        for e in 0..c.m() {
            let (u, v) = c.ends[e];
            if u == v {
                loops[u] += 1;
            } else {
                *mult[u].entry(v).or_default() += 1;
                *mult[v].entry(u).or_default() += 1;
            }
        }
        View { n: c.n(), loops, mult }
    }

    fn degree(&self, v: usize) -> u32 {
        self.mult[v].values().sum::<u32>()
    }
}

/// Stable colors under neighbor-multiset refinement, seeded by
/// (loop count, non-loop degree).
fn refine(view: &View) -> Vec<u32> {
    let n = view.n;
    let mut colors: Vec<u32> = (0..n).map(|v| view.loops[v] << 16 | view.degree(v)).collect();
    loop {
        let mut sigs: Vec<(u32, Vec<(u32, u32)>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb: Vec<(u32, u32)> =
                view.mult[v].iter().map(|(&w, &m)| (colors[w], m)).collect();
            nb.sort_unstable();
            sigs.push((colors[v], nb));
        }
        let mut sorted: Vec<&(u32, Vec<(u32, u32)>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let index: BTreeMap<&(u32, Vec<(u32, u32)>), u32> =
            sorted.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
        let next: Vec<u32> = (0..n).map(|v| index[&sigs[v]]).collect();
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

/// Maps `order[pos..]` one vertex at a time; positions below `forced.len()`
/// admit only the listed image, the rest range over all of `vb`.
#[allow(clippy::too_many_arguments)]
fn extend(
    va: &View,
    vb: &View,
    ca: &[u32],
    cb: &[u32],
    order: &[usize],
    forced: &[usize],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    pos: usize,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let range = if pos < forced.len() { forced[pos]..forced[pos] + 1 } else { 0..vb.n };
    for w in range {
        if used[w] || ca[v] != cb[w] || va.loops[v] != vb.loops[w] {
            continue;
        }
        // The mapped set is exactly order[..pos]; exact multiplicity
        // agreement against each of its members is a complete adjacency
        // check once every vertex is placed.
        let consistent = order[..pos].iter().all(|&x| {
            va.mult[v].get(&x).copied().unwrap_or(0)
                == vb.mult[w].get(&map[x]).copied().unwrap_or(0)
        });
        if consistent {
            map[v] = w;
            used[w] = true;
            if extend(va, vb, ca, cb, order, forced, map, used, pos + 1) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixture;
    use crate::graph::{MultiGraph, VertexId};

    #[test]
    fn relabeled_petersen_matches() {
        let a = fixture("petersen").unwrap();
        let perm = |v: u32| (3 * v + 7) % 10;
        let pairs: Vec<(u32, u32)> = a.edges().map(|(_, u, v)| (perm(u.0), perm(v.0))).collect();
        let b = MultiGraph::from_edges(10, &pairs).unwrap();
        assert!(is_isomorphic(&a, &b));
    }

    #[test]
    fn kneser_form_equals_pentagon_pentagram_form() {
        // Vertices are the 2-subsets of {0..5} in lexicographic order,
        // adjacent when disjoint.
        let mut subsets = Vec::new();
        for i in 0..5u32 {
            for j in i + 1..5 {
                subsets.push((i, j));
            }
        }
        let mut pairs = Vec::new();
        for (x, &(a, b)) in subsets.iter().enumerate() {
            for (y, &(c, d)) in subsets.iter().enumerate().skip(x + 1) {
                if a != c && a != d && b != c && b != d {
                    pairs.push((x as u32, y as u32));
                }
            }
        }
        let kneser = MultiGraph::from_edges(10, &pairs).unwrap();
        assert!(is_isomorphic(&kneser, &fixture("petersen").unwrap()));
    }

    #[test]
    fn different_graphs_are_rejected() {
        let p = fixture("petersen").unwrap();
        let h = fixture("heawood").unwrap();
        assert!(!is_isomorphic(&p, &h), "different orders");
        let mut q = p.clone();
        let (_, u, v) = q.edges().next().unwrap();
        let e = q.edges().next().unwrap().0;
        q = q.delete_edge(e).unwrap();
        q.add_edge(u, v).unwrap();
        assert!(is_isomorphic(&p, &q), "same graph after edge id churn");
        let first = p.edge_ids().next().unwrap();
        let r = p.delete_edge(first).unwrap();
        assert!(!is_isomorphic(&p, &r), "different sizes");
    }

    #[test]
    fn multiplicities_and_loops_matter() {
        let two_par = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let mut loop_pair = MultiGraph::with_vertices(2);
        loop_pair.add_edge(VertexId(0), VertexId(0)).unwrap();
        loop_pair.add_edge(VertexId(1), VertexId(1)).unwrap();
        assert!(!is_isomorphic(&two_par, &loop_pair));
        let two_par_again = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(is_isomorphic(&two_par, &two_par_again));
        let path = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let par_plus_iso = MultiGraph::from_edges(3, &[(0, 1), (0, 1)]).unwrap();
        assert!(!is_isomorphic(&path, &par_plus_iso), "same order and size, different shape");
    }

    #[test]
    fn cospectral_like_trees_distinguished() {
        let star = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let path = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!is_isomorphic(&star, &path));
    }
}
