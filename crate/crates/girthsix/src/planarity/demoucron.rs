//! Face-walk planar embedder.
//!
//! Planarity is decided block by block: a graph embeds in the plane exactly
//! when each biconnected block does, and block embeddings splice at cut
//! vertices afterwards. Inside a block the embedder is incremental: one
//! circuit is drawn first, then a path through some unembedded fragment is
//! routed across a face whose boundary carries all of the fragment's
//! attachment vertices. A fragment with no such face certifies
//! non-planarity; a fragment with exactly one is forced and is processed
//! before any free fragment. Faces are maintained explicitly as closed dart
//! walks, and the rotation system is read off the finished walks.
//!
//! Loops and parallel edges never change planarity, so they are peeled off
//! up front and drawn back in at the end: a duplicate edge is laid beside
//! its class representative, cutting a two-sided face off the face the
//! representative bordered, and a loop becomes a small circle inside any
//! face its vertex borders.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::graph::{EdgeId, MultiGraph, VertexId};

use super::dart_tail;

/// Closed face walk. Dart `(e, 0)` leaves the first endpoint of `e` and
/// `(e, 1)` the second; every dart of the graph lies on exactly one walk.
pub(crate) type Walk = Vec<(EdgeId, u8)>;

/// Face walks of some plane drawing of `g`, or `None` when `g` is not
/// planar. Every component contributes its own walks; a vertex without
/// incident edges contributes none.
pub(crate) fn embed_faces(g: &MultiGraph) -> Option<Vec<Walk>> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let vidx = |v: VertexId| verts.binary_search(&v).expect("vertex present");

    // Peel loops and collapse parallel classes; the skeleton stays simple.
    let mut loops: Vec<(EdgeId, VertexId)> = Vec::new();
    let mut classes: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
    for (e, u, v) in g.edges() {
        if u == v {
            loops.push((e, u));
        } else {
            let key = if u <= v { (u, v) } else { (v, u) };
            classes.entry(key).or_default().push(e);
        }
    }
    let mut sedges: Vec<(usize, usize, EdgeId)> = Vec::new();
    for reps in classes.values() {
        let e = reps[0];
        let (u, v) = g.endpoints(e).expect("edge present");
        sedges.push((vidx(u), vidx(v), e));
    }
    let mut sadj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); verts.len()];
    for (i, &(u, v, _)) in sedges.iter().enumerate() {
        sadj[u].push((i, v));
        sadj[v].push((i, u));
    }

    // Embed each block on its own, then splice walks at cut vertices.
    let mut units: Vec<(Vec<usize>, Vec<Walk>)> = Vec::new();
    for blk in blocks(verts.len(), &sadj) {
        let mut bverts: Vec<usize> =
            blk.iter().flat_map(|&i| [sedges[i].0, sedges[i].1]).collect();
        bverts.sort_unstable();
        bverts.dedup();
        if blk.len() == 1 {
            let e = sedges[blk[0]].2;
            units.push((bverts, vec![vec![(e, 0), (e, 1)]]));
            continue;
        }
        let loc = |x: usize| bverts.binary_search(&x).expect("block vertex");
        let bedges: Vec<(usize, usize)> =
            blk.iter().map(|&i| (loc(sedges[i].0), loc(sedges[i].1))).collect();
        let local = dmp(bverts.len(), &bedges)?;
        let walks = local
            .into_iter()
            .map(|w| {
                w.into_iter().map(|d| (sedges[blk[d >> 1]].2, (d & 1) as u8)).collect()
            })
            .collect();
        units.push((bverts, walks));
    }
    splice_at_cut_vertices(g, &mut units, &verts);
    let mut walks: Vec<Walk> = units.into_iter().flat_map(|(_, w)| w).collect();

    // Lay each duplicate beside its class representative: the
    // representative's side-0 dart moves to the duplicate and a two-sided
    // face closes the sliver between them.
    for reps in classes.values() {
        let (ru, _) = g.endpoints(reps[0]).expect("edge present");
        for &f in &reps[1..] {
            let (wi, p) = find_dart(&walks, (reps[0], 0));
            let (fu, _) = g.endpoints(f).expect("edge present");
            let same = if fu == ru { (f, 0) } else { (f, 1) };
            walks[wi][p] = same;
            walks.push(vec![(reps[0], 0), (same.0, same.1 ^ 1)]);
        }
    }
    // Draw each loop inside some face at its vertex; the loop's far side is
    // a new one-sided face. A vertex with no other darts gets the loop as
    // two one-sided faces.
    for &(l, v) in &loops {
        match find_tail(g, &walks, v) {
            Some((wi, p)) => {
                walks[wi].insert(p, (l, 0));
                walks.push(vec![(l, 1)]);
            }
            None => {
                walks.push(vec![(l, 0)]);
                walks.push(vec![(l, 1)]);
            }
        }
    }
    Some(walks)
}

/// Position of the exact dart `d` across all walks.
fn find_dart(walks: &[Walk], d: (EdgeId, u8)) -> (usize, usize) {
    for (wi, w) in walks.iter().enumerate() {
        if let Some(p) = w.iter().position(|&x| x == d) {
            return (wi, p);
        }
    }
    unreachable!("every dart of an embedded edge lies on a walk");
}

/// First walk position whose dart leaves `v`.
fn find_tail(g: &MultiGraph, walks: &[Walk], v: VertexId) -> Option<(usize, usize)> {
    for (wi, w) in walks.iter().enumerate() {
        if let Some(p) = w.iter().position(|&d| dart_tail(g, d) == v) {
            return Some((wi, p));
        }
    }
    None
}

/// Repeatedly merges two units sharing a vertex by splicing one face walk
/// of each at that vertex, until every component is a single unit.
fn splice_at_cut_vertices(
    g: &MultiGraph,
    units: &mut Vec<(Vec<usize>, Vec<Walk>)>,
    verts: &[VertexId],
) {
    loop {
        let mut pair = None;
        'scan: for i in 0..units.len() {
            for j in i + 1..units.len() {
                if let Some(x) = first_shared(&units[i].0, &units[j].0) {
                    pair = Some((i, j, x));
                    break 'scan;
                }
            }
        }
        let Some((i, j, x)) = pair else { return };
        let vx = verts[x];
        let (jverts, mut jwalks) = units.remove(j);
        let (wj, q) = find_tail(g, &jwalks, vx).expect("cut vertex has darts in both units");
        let wb = jwalks.remove(wj);
        let (wi, p) = find_tail(g, &units[i].1, vx).expect("cut vertex has darts in both units");
        let wa = &units[i].1[wi];
        let mut merged = wa[..p].to_vec();
        merged.extend_from_slice(&wb[q..]);
        merged.extend_from_slice(&wb[..q]);
        merged.extend_from_slice(&wa[p..]);
        units[i].1[wi] = merged;
        units[i].1.append(&mut jwalks);
        let mut vv = units[i].0.clone();
        vv.extend_from_slice(&jverts);
        vv.sort_unstable();
        vv.dedup();
        units[i].0 = vv;
    }
}

fn first_shared(a: &[usize], b: &[usize]) -> Option<usize> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}

/// Biconnected blocks of the skeleton as sorted edge-index lists, ordered
/// by least edge. Bridges come out as single-edge blocks.
fn blocks(n: usize, adj: &[Vec<(usize, usize)>]) -> Vec<Vec<usize>> {
    struct Dfs<'a> {
        adj: &'a [Vec<(usize, usize)>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        estack: Vec<usize>,
        out: Vec<Vec<usize>>,
    }
    fn go(t: &mut Dfs, v: usize, pe: usize) {
        t.time += 1;
        t.disc[v] = t.time;
        t.low[v] = t.time;
        for k in 0..t.adj[v].len() {
            let (e, w) = t.adj[v][k];
            if e == pe {
                continue;
            }
            if t.disc[w] == 0 {
                t.estack.push(e);
                go(t, w, e);
                t.low[v] = t.low[v].min(t.low[w]);
                if t.low[w] >= t.disc[v] {
                    let mut blk = Vec::new();
                    while let Some(x) = t.estack.pop() {
                        blk.push(x);
                        if x == e {
                            break;
                        }
                    }
                    blk.sort_unstable();
                    t.out.push(blk);
                }
            } else if t.disc[w] < t.disc[v] {
                t.estack.push(e);
                t.low[v] = t.low[v].min(t.disc[w]);
            }
        }
    }
    let mut t = Dfs {
        adj,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        estack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if t.disc[v] == 0 {
            go(&mut t, v, usize::MAX);
        }
    }
    t.out.sort_unstable_by_key(|b| b[0]);
    t.out
}

/// Local darts inside one block: dart `2e` leaves `edges[e].0`, dart
/// `2e + 1` leaves `edges[e].1`.
fn tail_of(d: usize, edges: &[(usize, usize)]) -> usize {
    if d & 1 == 0 {
        edges[d >> 1].0
    } else {
        edges[d >> 1].1
    }
}

fn dart_from(e: usize, v: usize, edges: &[(usize, usize)]) -> usize {
    if edges[e].0 == v {
        2 * e
    } else {
        2 * e + 1
    }
}

fn other_end(e: usize, v: usize, edges: &[(usize, usize)]) -> usize {
    if edges[e].0 == v {
        edges[e].1
    } else {
        edges[e].0
    }
}

/// Unembedded part hanging off the current drawing: either a single edge
/// between embedded vertices, or a component of unembedded vertices with
/// its embedded neighbors as attachments.
struct Fragment {
    chord: Option<usize>,
    interior: Vec<usize>,
    attachments: Vec<usize>,
}

/// Incremental embedding of a simple biconnected graph with at least two
/// edges; returns face walks in local darts, or `None` when non-planar.
fn dmp(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let m = edges.len();
    if m + 6 > 3 * n {
        return None;
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((i, v));
        adj[v].push((i, u));
    }
    let start = find_circuit(n, &adj);
    let mut emb_v = vec![false; n];
    let mut emb_e = vec![false; m];
    for &(v, e) in &start {
        emb_v[v] = true;
        emb_e[e] = true;
    }
    let fwd: Vec<usize> = start.iter().map(|&(v, e)| dart_from(e, v, edges)).collect();
    let bwd: Vec<usize> = fwd.iter().rev().map(|&d| d ^ 1).collect();
    let mut faces = vec![fwd, bwd];
    let mut remaining = m - start.len();
    while remaining > 0 {
        let frags = fragments(n, m, &adj, edges, &emb_v, &emb_e);
        let boundary: Vec<Vec<bool>> = faces
            .iter()
            .map(|w| {
                let mut b = vec![false; n];
                for &d in w {
                    b[tail_of(d, edges)] = true;
                }
                b
            })
            .collect();
        let mut forced = None;
        let mut fallback = None;
        for (fi, fr) in frags.iter().enumerate() {
            let adm: Vec<usize> = (0..faces.len())
                .filter(|&x| fr.attachments.iter().all(|&a| boundary[x][a]))
                .collect();
            if adm.is_empty() {
                return None;
            }
            if adm.len() == 1 {
                forced = Some((fi, adm[0]));
                break;
            }
            if fallback.is_none() {
                fallback = Some((fi, adm[0]));
            }
        }
        let (fi, face_idx) = forced.or(fallback).expect("edges remain, so fragments exist");
        let path = route_through(&frags[fi], &adj, &emb_v, &emb_e);
        for &(_, e) in &path {
            emb_e[e] = true;
        }
        for &(v, _) in &path[1..] {
            emb_v[v] = true;
        }
        remaining -= path.len();
        let a = path[0].0;
        let b = {
            let &(lv, le) = path.last().expect("path is nonempty");
            other_end(le, lv, edges)
        };
        // Split the face walk at the two path ends. Intermediate drawings
        // stay 2-connected (circuit plus open ears), so every face is a
        // circuit and each vertex occurs at most once on the boundary.
        let w = faces.swap_remove(face_idx);
        let i = w.iter().position(|&d| tail_of(d, edges) == a).expect("face admits fragment");
        let j = w.iter().position(|&d| tail_of(d, edges) == b).expect("face admits fragment");
        let slice = |s: usize, t: usize| -> Vec<usize> {
            if s <= t {
                w[s..t].to_vec()
            } else {
                w[s..].iter().chain(w[..t].iter()).copied().collect()
            }
        };
        let darts: Vec<usize> = path.iter().map(|&(v, e)| dart_from(e, v, edges)).collect();
        let mut f1 = darts.clone();
        f1.extend(slice(j, i));
        let mut f2: Vec<usize> = darts.iter().rev().map(|&d| d ^ 1).collect();
        f2.extend(slice(i, j));
        faces.push(f1);
        faces.push(f2);
    }
    Some(faces)
}

/// Chord fragments in edge order, then one fragment per component of the
/// unembedded vertices in least-vertex order.
fn fragments(
    n: usize,
    m: usize,
    adj: &[Vec<(usize, usize)>],
    edges: &[(usize, usize)],
    emb_v: &[bool],
    emb_e: &[bool],
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for e in 0..m {
        let (u, v) = edges[e];
        if !emb_e[e] && emb_v[u] && emb_v[v] {
            out.push(Fragment {
                chord: Some(e),
                interior: Vec::new(),
                attachments: vec![u.min(v), u.max(v)],
            });
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if emb_v[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = vec![s];
        let mut interior = vec![s];
        let mut attach = BTreeSet::new();
        let mut qi = 0;
        while qi < queue.len() {
            let y = queue[qi];
            qi += 1;
            for &(_, z) in &adj[y] {
                if emb_v[z] {
                    attach.insert(z);
                } else if !seen[z] {
                    seen[z] = true;
                    queue.push(z);
                    interior.push(z);
                }
            }
        }
        interior.sort_unstable();
        out.push(Fragment {
            chord: None,
            interior,
            attachments: attach.into_iter().collect(),
        });
    }
    out
}

/// Path through the fragment from its least attachment to the first other
/// attachment reached, as (vertex, edge toward the next vertex) steps. A
/// chord is its own one-step path.
fn route_through(
    fr: &Fragment,
    adj: &[Vec<(usize, usize)>],
    emb_v: &[bool],
    emb_e: &[bool],
) -> Vec<(usize, usize)> {
    if let Some(e) = fr.chord {
        return vec![(fr.attachments[0], e)];
    }
    let a = fr.attachments[0];
    let inside = |v: usize| fr.interior.binary_search(&v).is_ok();
    let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &(e, z) in &adj[a] {
        if !emb_e[e] && inside(z) && !parent.contains_key(&z) {
            parent.insert(z, (a, e));
            queue.push_back(z);
        }
    }
    while let Some(y) = queue.pop_front() {
        for &(e, z) in &adj[y] {
            if emb_e[e] {
                continue;
            }
            if emb_v[z] {
                if z == a {
                    continue;
                }
                let mut rev = vec![(y, e)];
                let mut cur = y;
                while cur != a {
                    let (pv, pe) = parent[&cur];
                    rev.push((pv, pe));
                    cur = pv;
                }
                rev.reverse();
                return rev;
            }
            if inside(z) && !parent.contains_key(&z) {
                parent.insert(z, (y, e));
                queue.push_back(z);
            }
        }
    }
    unreachable!("every fragment of a biconnected block attaches at two vertices");
}

/// Some circuit of a graph known to contain one, as (vertex, edge to the
/// next vertex) steps.
fn find_circuit(n: usize, adj: &[Vec<(usize, usize)>]) -> Vec<(usize, usize)> {
    let mut state = vec![0u8; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        let mut path: Vec<(usize, usize)> = vec![(root, usize::MAX)];
        state[root] = 1;
        while let Some(top) = stack.last_mut() {
            let (v, pe) = (top.0, top.1);
            if top.2 >= adj[v].len() {
                state[v] = 2;
                stack.pop();
                path.pop();
                continue;
            }
            let (e, w) = adj[v][top.2];
            top.2 += 1;
            if e == pe {
                continue;
            }
            match state[w] {
                1 => {
                    let s = path.iter().position(|&(x, _)| x == w).expect("vertex on path");
                    let mut out = Vec::new();
                    for t in s..path.len() - 1 {
                        out.push((path[t].0, path[t + 1].1));
                    }
                    out.push((v, e));
                    return out;
                }
                0 => {
                    state[w] = 1;
                    stack.push((w, e, 0));
                    path.push((w, e));
                }
                _ => {}
            }
        }
    }
    unreachable!("caller guarantees a circuit exists");
}
