//! Backtracking subdivision search.
//!
//! Pattern vertices are placed one at a time along a fixed order (most
//! already-placed neighbors first, then largest degree); host candidates
//! are tried in ascending index order. Whenever a placement closes pattern
//! edges (both ends placed), those edges are routed immediately, hardest
//! first, so partial assignments stay consistent. After every commitment a
//! joint feasibility pass runs: a free-vertex budget against the branch
//! vertices and path interiors still owed, unused-dart headroom at every
//! placed branch, reachability of every pending routed pair, and a
//! vertex-disjoint flow bound at branches owing several routed paths at
//! once.
//!
//! Pattern symmetry is broken with automorphism orbits: when a later
//! pattern vertex lies in the orbit of an earlier one under automorphisms
//! fixing all vertices ordered before it, the later image is forced above
//! the earlier image. The first placement additionally ranges only over
//! host-orbit minima. A witness set is closed under precomposition with
//! pattern automorphisms and postcomposition with host automorphisms, so
//! the image-minimal witness survives both constraints and absence
//! verdicts stay exhaustive.
//!
//! Two more prunes cut detour enumeration. The image of a pattern circuit
//! is a host circuit, so pattern circuits shorter than the host girth must
//! stretch: fully routed short circuits below girth length are dead, and
//! missing stretch adds to the free-vertex demand. And within one routing
//! slot, exhausted routings are remembered as vertex/edge masks, completed
//! paths and partial paths alike (the latter keyed by their endpoint); a
//! later partial path covering a remembered set fails identically and is
//! skipped, because the remembered routing could be substituted into any
//! witness the covering path would lead to.
//!
//! The feasibility pass runs after every single commitment, with the
//! half-routed edge accounted separately during path extension. One node
//! of the budget is spent per expanded state: a placement or extension
//! that survives feasibility and recurses. Candidates rejected before
//! recursion are domain prunes, not backtrack nodes.
//!
//! Ahead of any search, cheap refutations settle easy instances exactly:
//! size and degree-sequence dominance, forest hosts against patterns with
//! circuits, planar hosts against non-planar patterns, and apex hosts
//! against patterns that stay non-planar under every single vertex or
//! edge deletion.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::flow::FlowNet;
use super::iso::pinned_orbit;
use super::witness::{SubdivisionWitness, WitnessPath};
use super::Containment;
use crate::circuits::{circuits_up_to, girth, Girth};
use crate::error::{Error, Result};
use crate::graph::{Compact, MultiGraph, VertexId};
use crate::planarity::{is_apex, is_planar};

pub(super) fn run(host: &MultiGraph, pattern: &MultiGraph, budget: u64) -> Result<Containment> {
    if pattern.edges().any(|(_, u, v)| u == v) {
        return Err(Error::pre("subdivision search does not accept patterns with loops"));
    }
    if pattern.order() == 0 {
        return Ok(Containment::Found(SubdivisionWitness {
            branch: BTreeMap::new(),
            paths: BTreeMap::new(),
        }));
    }
    if pattern.order() > host.order() || pattern.size() > host.size() {
        return Ok(Containment::Absent);
    }
    // Branch images need distinct host vertices at least as busy, so the
    // sorted degree sequences must dominate pointwise.
    let pd = nonloop_degrees(pattern);
    let hd = nonloop_degrees(host);
    if pd.iter().zip(&hd).any(|(p, h)| p > h) {
        return Ok(Containment::Absent);
    }
    // A forest host has no circuit to carry a pattern circuit's image.
    if girth(host) == Girth::Infinite && girth(pattern) != Girth::Infinite {
        return Ok(Containment::Absent);
    }
    // Subdividing never changes planarity, so a planar host cannot hold a
    // non-planar pattern. Stronger: when every single-vertex and
    // single-edge deletion of the pattern stays non-planar, deleting any
    // one host vertex from a witness still leaves some forbidden
    // subdivision behind, so such a pattern cannot appear in a host that
    // one vertex deletion planarizes.
    if !is_planar(pattern) {
        if is_planar(host) {
            return Ok(Containment::Absent);
        }
        if deletion_critical_nonplanar(pattern) && is_apex(host).is_some() {
            return Ok(Containment::Absent);
        }
    }
    run_search_only(host, pattern, budget)
}

/// The raw backtracking enumeration with no structural refutations in
/// front. Exposed inside the crate so the refutation rules can be
/// cross-checked against exhaustive search.
pub(crate) fn run_search_only(
    host: &MultiGraph,
    pattern: &MultiGraph,
    budget: u64,
) -> Result<Containment> {
    let mut s = Searcher::new(host, pattern, budget);
    let out = s.place(0);
    match out {
        Flow::Found => Ok(Containment::Found(s.witness.take().expect("witness recorded"))),
        Flow::Dead => Ok(Containment::Absent),
        Flow::Out => Ok(Containment::Unknown),
    }
}

/// True when deleting any one vertex or any one edge leaves a non-planar
/// graph.
fn deletion_critical_nonplanar(p: &MultiGraph) -> bool {
    p.vertices().all(|v| p.delete_vertices(&[v]).map(|h| !is_planar(&h)).unwrap_or(false))
        && p.edge_ids().all(|e| p.delete_edge(e).map(|h| !is_planar(&h)).unwrap_or(false))
}

/// Non-loop degrees in descending order; loops cannot carry branch darts
/// or path edges.
fn nonloop_degrees(g: &MultiGraph) -> Vec<u32> {
    let mut deg: BTreeMap<VertexId, u32> = g.vertices().map(|v| (v, 0)).collect();
    for (_, u, v) in g.edges() {
        if u != v {
            *deg.get_mut(&u).unwrap() += 1;
            *deg.get_mut(&v).unwrap() += 1;
        }
    }
    let mut out: Vec<u32> = deg.into_values().collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

enum Flow {
    Found,
    Dead,
    Out,
}

const FREE: u8 = 0;
const BRANCH: u8 = 1;
const INTERIOR: u8 = 2;

struct Searcher {
    hc: Compact,
    pc: Compact,
    /// Host adjacency without loops, sorted by (neighbor, edge).
    sorted_adj: Vec<Vec<(usize, usize)>>,
    /// Pattern placement order, most-constrained first.
    order: Vec<usize>,
    /// Pattern edges closed by each placement step.
    edges_at: Vec<Vec<usize>>,
    /// Earlier steps whose images bound each step's image from below.
    floors: Vec<Vec<usize>>,
    /// Host-orbit minima, the only candidates for the first placement.
    level0_ok: Vec<bool>,
    /// Host copy for stabilizer-orbit queries at shallow levels.
    host: MultiGraph,
    /// Allowed-candidate masks per image prefix: a candidate must be the
    /// minimum of its orbit under host automorphisms fixing the prefix.
    orbit_cache: HashMap<Vec<usize>, Vec<bool>>,
    /// Pattern circuits shorter than the host girth, as edge index lists;
    /// their images must stretch to host-girth length or more.
    tight_cycles: Vec<Vec<usize>>,
    host_girth: u32,
    /// Hosts small enough for word-sized failed-path masks.
    masks_on: bool,
    pat_deg: Vec<u32>,

    used_v: Vec<u8>,
    used_e: Vec<bool>,
    free_darts: Vec<u32>,
    free_count: usize,
    branch_host: Vec<Option<usize>>,
    /// Inverse of `branch_host` on host indices.
    pat_of: Vec<Option<usize>>,
    /// Unrouted pattern degree per pattern vertex.
    rem_deg: Vec<u32>,
    path_store: Vec<Option<(Vec<usize>, Vec<usize>)>>,

    nodes: u64,
    budget: u64,
    witness: Option<SubdivisionWitness>,
}

impl Searcher {
    fn new(host: &MultiGraph, pattern: &MultiGraph, budget: u64) -> Self {
        let hc = Compact::build(host);
        let pc = Compact::build(pattern);
        let hn = hc.n();
        let pn = pc.n();

        let mut sorted_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); hn];
        for e in 0..hc.m() {
            if hc.is_loop(e) {
                continue;
            }
            let (u, v) = hc.ends[e];
            sorted_adj[u].push((v, e));
            sorted_adj[v].push((u, e));
        }
        for list in &mut sorted_adj {
            list.sort_unstable();
        }
        let free_darts: Vec<u32> = sorted_adj.iter().map(|l| l.len() as u32).collect();

        // Patterns are loop-free here, so the adjacency length is the degree.
        let pat_deg: Vec<u32> = (0..pn).map(|p| pc.adj[p].len() as u32).collect();
        let mut order = Vec::with_capacity(pn);
        let mut placed = vec![false; pn];
        for _ in 0..pn {
            let chosen = (0..pn)
                .filter(|&p| !placed[p])
                .max_by_key(|&p| {
                    let anchored = pc.adj[p].iter().filter(|&&(_, w)| placed[w]).count();
                    (anchored, pat_deg[p], std::cmp::Reverse(p))
                })
                .unwrap();
            placed[chosen] = true;
            order.push(chosen);
        }
        let mut when_placed = vec![0usize; pn];
        for (k, &p) in order.iter().enumerate() {
            when_placed[p] = k;
        }
        let mut edges_at: Vec<Vec<usize>> = vec![Vec::new(); pn];
        for e in 0..pc.m() {
            let (a, b) = pc.ends[e];
            edges_at[when_placed[a].max(when_placed[b])].push(e);
        }

        // Orbit constraints: members of the orbit of order[k] under
        // automorphisms fixing order[..k] pointwise are always ordered
        // after k, and their images may stay above the image of order[k].
        let mut floors: Vec<Vec<usize>> = vec![Vec::new(); pn];
        let mut pins: Vec<usize> = Vec::new();
        for k in 0..pn {
            let p = order[k];
            for w in pinned_orbit(pattern, p, &pins) {
                if w != p {
                    debug_assert!(when_placed[w] > k, "orbit members never precede their level");
                    floors[when_placed[w]].push(k);
                }
            }
            pins.push(p);
        }

        // Host symmetry: composing a witness with a host automorphism moves
        // the first image to its orbit minimum and leaves the floor
        // constraints (comparisons among images) intact.
        let mut level0_ok = vec![false; hn];
        let mut seen = vec![false; hn];
        for v in 0..hn {
            if seen[v] {
                continue;
            }
            for w in pinned_orbit(host, v, &[]) {
                seen[w] = true;
            }
            level0_ok[v] = true;
        }

        let host_girth = match girth(host) {
            Girth::Finite(g) => g,
            Girth::Infinite => 0,
        };
        let tight_cycles: Vec<Vec<usize>> = if host_girth >= 2 {
            circuits_up_to(pattern, host_girth as usize - 1)
                .iter()
                .map(|c| {
                    c.edges()
                        .iter()
                        .map(|&eid| pc.edge_index_of(eid).expect("pattern edge"))
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        let masks_on = hn <= 64 && hc.m() <= 64;

        Searcher {
            sorted_adj,
            order,
            edges_at,
            floors,
            level0_ok,
            host: host.clone(),
            orbit_cache: HashMap::new(),
            tight_cycles,
            host_girth,
            masks_on,
            free_count: hn,
            used_v: vec![FREE; hn],
            used_e: vec![false; hc.m()],
            free_darts,
            branch_host: vec![None; pn],
            pat_of: vec![None; hn],
            rem_deg: pat_deg.clone(),
            pat_deg,
            path_store: vec![None; pc.m()],
            nodes: 0,
            budget,
            witness: None,
            hc,
            pc,
        }
    }

    fn spent(&mut self) -> bool {
        self.nodes += 1;
        self.nodes > self.budget
    }

    fn image(&self, p: usize) -> usize {
        self.branch_host[p].expect("endpoint already placed")
    }

    fn place(&mut self, k: usize) -> Flow {
        if k == self.pc.n() {
            self.witness = Some(self.build_witness());
            return Flow::Found;
        }
        let p = self.order[k];
        let need = self.pat_deg[p];
        let lo = self.floors[k]
            .iter()
            .map(|&j| self.image(self.order[j]) + 1)
            .max()
            .unwrap_or(0);
        // Residual host symmetry at shallow levels: candidates must be
        // orbit minima under automorphisms fixing the placed images
        // pointwise. A witness skipped here reappears conjugated in a
        // sibling routing branch of the same prefix, so absence verdicts
        // stay exhaustive.
        let stab_allowed = if (1..=3).contains(&k) && self.hc.n() <= 64 {
            Some(self.stab_allowed(k))
        } else {
            None
        };
        for v in lo..self.hc.n() {
            if self.used_v[v] != FREE || self.free_darts[v] < need {
                continue;
            }
            if k == 0 && !self.level0_ok[v] {
                continue;
            }
            if let Some(a) = &stab_allowed {
                if !a[v] {
                    continue;
                }
            }
            self.used_v[v] = BRANCH;
            self.branch_host[p] = Some(v);
            self.pat_of[v] = Some(p);
            self.free_count -= 1;
            let flow = if self.feasible(k, None) {
                if self.spent() {
                    Flow::Out
                } else {
                    self.route_set(k)
                }
            } else {
                Flow::Dead
            };
            self.used_v[v] = FREE;
            self.branch_host[p] = None;
            self.pat_of[v] = None;
            self.free_count += 1;
            match flow {
                Flow::Dead => {}
                other => return other,
            }
        }
        Flow::Dead
    }

    /// Allowed-candidate mask at level `k`: orbit minima of the host under
    /// automorphisms fixing the first `k` placed images pointwise, cached
    /// per image prefix.
    fn stab_allowed(&mut self, k: usize) -> Vec<bool> {
        let prefix: Vec<usize> = (0..k).map(|j| self.image(self.order[j])).collect();
        if let Some(a) = self.orbit_cache.get(&prefix) {
            return a.clone();
        }
        let hn = self.hc.n();
        let mut allowed = vec![false; hn];
        let mut seen = vec![false; hn];
        for v in 0..hn {
            if seen[v] {
                continue;
            }
            for w in pinned_orbit(&self.host, v, &prefix) {
                seen[w] = true;
            }
            allowed[v] = true;
        }
        self.orbit_cache.insert(prefix, allowed.clone());
        allowed
    }

    /// Routes every pattern edge closed at step `k`, hardest (currently most
    /// distant) pair first, then moves to the next placement.
    fn route_set(&mut self, k: usize) -> Flow {
        let mut ranked = Vec::with_capacity(self.edges_at[k].len());
        for &e in &self.edges_at[k] {
            let (pa, pb) = self.pc.ends[e];
            match self.pair_distance(self.image(pa), self.image(pb)) {
                None => return Flow::Dead,
                Some(d) => ranked.push((std::cmp::Reverse(d), e)),
            }
        }
        ranked.sort_unstable();
        let edges: Vec<usize> = ranked.into_iter().map(|(_, e)| e).collect();
        self.route_chain(k, &edges, 0)
    }

    fn route_chain(&mut self, k: usize, edges: &[usize], i: usize) -> Flow {
        if i == edges.len() {
            return self.place(k + 1);
        }
        let pe = edges[i];
        let (pa, pb) = self.pc.ends[pe];
        let (s, t) = (self.image(pa), self.image(pb));
        let dist = self.free_dist_from(t);
        let mut vs = vec![s];
        let mut es = Vec::new();
        let mut failed: Vec<(usize, u64, u64)> = Vec::new();
        self.extend_path(k, edges, i, pe, s, t, &dist, &mut vs, &mut es, &mut failed, 0, 0)
    }

    /// Grows the path for pattern edge `pe` from `u` toward `t`, nearest
    /// next hop first. Paths are stored from the image of the edge's first
    /// endpoint, matching the witness orientation contract. `vmask` and
    /// `emask` carry the path vertices (except the start) and edges
    /// committed so far; `failed` records exhausted routings of this slot,
    /// keyed by endpoint, for dominance pruning.
    #[allow(clippy::too_many_arguments)]
    fn extend_path(
        &mut self,
        k: usize,
        edges: &[usize],
        i: usize,
        pe: usize,
        u: usize,
        t: usize,
        dist: &[u32],
        vs: &mut Vec<usize>,
        es: &mut Vec<usize>,
        failed: &mut Vec<(usize, u64, u64)>,
        vmask: u64,
        emask: u64,
    ) -> Flow {
        let mut cands: Vec<(u32, usize, usize)> = Vec::new();
        for &(w, e) in &self.sorted_adj[u] {
            if self.used_e[e] {
                continue;
            }
            if w == t {
                cands.push((0, e, w));
            } else if self.used_v[w] == FREE && dist[w] != u32::MAX {
                cands.push((dist[w], e, w));
            }
        }
        cands.sort_unstable();
        // A single surviving candidate is forced propagation, not a choice
        // point, and spends no budget.
        let decision = cands.len() >= 2;
        for (_, e, w) in cands {
            let (nvm, nem) = if self.masks_on {
                let iv = if w == t { 0 } else { 1u64 << w };
                (vmask | iv, emask | (1u64 << e))
            } else {
                (0, 0)
            };
            // A remembered routing with the same endpoint fails again from
            // any superset of its commitments; completed routings (endpoint
            // `t`) dominate supersets at any stage.
            if self.masks_on
                && failed.iter().any(|&(fu, fv, fe)| {
                    (fu == t || fu == w)
                        && if fv != 0 { fv & !nvm == 0 } else { fe & !nem == 0 }
                })
            {
                continue;
            }
            self.used_e[e] = true;
            self.free_darts[u] -= 1;
            self.free_darts[w] -= 1;
            vs.push(w);
            es.push(e);
            let flow = if w == t {
                let (pa, pb) = self.pc.ends[pe];
                self.rem_deg[pa] -= 1;
                self.rem_deg[pb] -= 1;
                self.path_store[pe] = Some((vs.clone(), es.clone()));
                let flow = if self.feasible(k, None) {
                    if decision && self.spent() {
                        Flow::Out
                    } else {
                        self.route_chain(k, edges, i + 1)
                    }
                } else {
                    Flow::Dead
                };
                self.path_store[pe] = None;
                self.rem_deg[pa] += 1;
                self.rem_deg[pb] += 1;
                flow
            } else {
                self.used_v[w] = INTERIOR;
                self.free_count -= 1;
                // A fresh distance beats the frame-start map: the committed
                // prefix may have cut off the live end's return routes.
                let flow = match self.pair_distance(w, t) {
                    None => Flow::Dead,
                    Some(fresh) => {
                        if self.feasible(k, Some((pe, w, fresh, es.len() as u32))) {
                            if decision && self.spent() {
                                Flow::Out
                            } else {
                                self.extend_path(
                                    k, edges, i, pe, w, t, dist, vs, es, failed, nvm, nem,
                                )
                            }
                        } else {
                            Flow::Dead
                        }
                    }
                };
                self.used_v[w] = FREE;
                self.free_count += 1;
                flow
            };
            vs.pop();
            es.pop();
            self.used_e[e] = false;
            self.free_darts[u] += 1;
            self.free_darts[w] += 1;
            match flow {
                Flow::Dead => {
                    if self.masks_on {
                        failed.push((w, nvm, nem));
                    }
                }
                other => return other,
            }
        }
        Flow::Dead
    }

    /// Joint feasibility of the partial embedding with steps `0..=k`
    /// placed. Sound pruning only: any state completable to a witness
    /// passes every check. During path extension, `inflight` carries the
    /// half-routed pattern edge, its live endpoint, a stale-but-valid
    /// lower bound on the remaining hops, and the committed length; the
    /// checks then treat that edge as started at its first endpoint and
    /// still owed a tail into the live endpoint.
    fn feasible(&self, k: usize, inflight: Option<(usize, usize, u32, u32)>) -> bool {
        // Unplaced branch vertices each need a free host vertex.
        let unplaced = self.pc.n() - 1 - k;
        if self.free_count < unplaced {
            return false;
        }

        // Every unrouted pattern edge at a placed branch consumes a distinct
        // unused host edge there, and only edges toward a free vertex or
        // toward a partner owing a path can serve. A half-routed edge has
        // already left its first endpoint.
        for pos in 0..=k {
            let p = self.order[pos];
            let mut need = self.rem_deg[p];
            if let Some((ipe, _, _, _)) = inflight {
                if p == self.pc.ends[ipe].0 {
                    need -= 1;
                }
            }
            if need == 0 {
                continue;
            }
            let v = self.image(p);
            let mut usable = 0u32;
            for &(w, e) in &self.sorted_adj[v] {
                if self.used_e[e] {
                    continue;
                }
                match self.used_v[w] {
                    FREE => usable += 1,
                    BRANCH => {
                        let q = self.pat_of[w].expect("branch vertices map back");
                        if self.pending_between(p, q) > 0 {
                            usable += 1;
                        }
                    }
                    // The live path end may deliver the half-routed edge
                    // into its second endpoint.
                    _ => {
                        if let Some((ipe, cur, _, _)) = inflight {
                            if w == cur && p == self.pc.ends[ipe].1 {
                                usable += 1;
                            }
                        }
                    }
                }
            }
            if usable < need {
                return false;
            }
        }

        // Pending routed pairs must stay connected, and their shortest
        // connections alone claim free vertices beyond those reserved for
        // unplaced branches. Per-edge bounds feed the circuit stretch
        // checks: routed edges count exactly, pending closed pairs at
        // least their current distance, open edges at least one.
        let mut owed = 0usize;
        let mut exact = vec![0u32; self.pc.m()];
        let mut closed_lb = vec![0u32; self.pc.m()];
        let mut inflight_done = 0u32;
        for e in 0..self.pc.m() {
            if let Some((ipe, _, lbrem, done)) = inflight {
                if e == ipe {
                    owed += lbrem as usize - 1;
                    closed_lb[e] = lbrem;
                    inflight_done = done;
                    continue;
                }
            }
            if let Some((_, es)) = &self.path_store[e] {
                exact[e] = es.len() as u32;
                continue;
            }
            let (pa, pb) = self.pc.ends[e];
            let (Some(s), Some(t)) = (self.branch_host[pa], self.branch_host[pb]) else {
                continue;
            };
            match self.pair_distance(s, t) {
                None => return false,
                Some(d) => {
                    owed += d as usize - 1;
                    closed_lb[e] = d;
                }
            }
        }

        // The image of a pattern circuit is a host circuit, so a short
        // pattern circuit must stretch to host-girth length. Once fully
        // routed its total is fixed; before that, the missing stretch is
        // extra free-vertex demand on top of the distance bounds. The
        // committed prefix of a half-routed edge counts as achieved length.
        // Deficits of edge-disjoint circuits add up: their paths share no
        // interior vertices, so each claims its own stretch. Overlapping
        // circuits are dropped greedily, largest deficit first.
        let mut deficits: Vec<(i64, &Vec<usize>)> = Vec::new();
        for cyc in &self.tight_cycles {
            let mut routed_total = 0i64;
            let mut pending = 0i64;
            let mut pending_base = 0i64;
            for &e in cyc {
                if exact[e] > 0 {
                    routed_total += exact[e] as i64;
                } else {
                    if closed_lb[e] > 0 && matches!(inflight, Some((ipe, ..)) if ipe == e) {
                        routed_total += inflight_done as i64;
                    }
                    pending += 1;
                    pending_base += closed_lb[e].max(1) as i64 - 1;
                }
            }
            if pending == 0 {
                if routed_total < self.host_girth as i64 {
                    return false;
                }
                continue;
            }
            let deficit = self.host_girth as i64 - routed_total - pending - pending_base;
            if deficit > 0 {
                deficits.push((deficit, cyc));
            }
        }
        let mut extra = 0i64;
        if !deficits.is_empty() {
            deficits.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(b.1)));
            let mut claimed = vec![false; self.pc.m()];
            for (deficit, cyc) in deficits {
                if cyc.iter().any(|&e| claimed[e]) {
                    continue;
                }
                extra += deficit;
                for &e in cyc {
                    claimed[e] = true;
                }
            }
        }
        if (self.free_count as i64) < unplaced as i64 + owed as i64 + extra {
            return false;
        }

        // A branch owing several routed paths needs that many vertex-
        // disjoint routes at once.
        for pos in 0..=k {
            if !self.disjoint_ok(self.order[pos], inflight) {
                return false;
            }
        }
        true
    }

    /// Unrouted pattern edges between placed vertices `p` and `q`.
    fn pending_between(&self, p: usize, q: usize) -> u32 {
        self.pc.adj[p].iter().filter(|&&(e, w)| w == q && self.path_store[e].is_none()).count()
            as u32
    }

    /// Checks that the pending routed paths out of `p` can start and end
    /// disjointly: unit-capacity flow from the image of `p` through free
    /// vertices to the images of its owed partners, one unit per pattern
    /// edge. Trivially true below two pending edges. A half-routed edge no
    /// longer starts at its first endpoint, and from its second endpoint
    /// the route must reach the live path end instead of the far image.
    fn disjoint_ok(&self, p: usize, inflight: Option<(usize, usize, u32, u32)>) -> bool {
        let mut demand: BTreeMap<usize, u32> = BTreeMap::new();
        let mut total = 0u32;
        for &(e, q) in &self.pc.adj[p] {
            if let Some((ipe, cur, _, _)) = inflight {
                if e == ipe {
                    if p == self.pc.ends[ipe].1 {
                        *demand.entry(cur).or_default() += 1;
                        total += 1;
                    }
                    continue;
                }
            }
            if self.path_store[e].is_none() {
                if let Some(w) = self.branch_host[q] {
                    *demand.entry(w).or_default() += 1;
                    total += 1;
                }
            }
        }
        if total < 2 {
            return true;
        }
        let hn = self.hc.n();
        let v = self.image(p);
        // Free vertex x splits into entry 2x and exit 2x + 1; targets keep
        // only their entry node; the source is the exit of v.
        let source = 2 * v + 1;
        let sink = 2 * hn;
        let mut net = FlowNet::new(2 * hn + 1);
        for x in 0..hn {
            if self.used_v[x] == FREE {
                net.arc(2 * x, 2 * x + 1, None);
            }
        }
        for e in 0..self.hc.m() {
            if self.used_e[e] || self.hc.is_loop(e) {
                continue;
            }
            let (a, b) = self.hc.ends[e];
            let usable = |x: usize| self.used_v[x] == FREE || demand.contains_key(&x) || x == v;
            if !usable(a) || !usable(b) {
                continue;
            }
            let mut one_way = |from: usize, to: usize| {
                if from != v && self.used_v[from] != FREE {
                    return;
                }
                let tail = if from == v { source } else { 2 * from + 1 };
                if to == v {
                    return;
                }
                let head = 2 * to;
                net.arc(tail, head, None);
            };
            one_way(a, b);
            one_way(b, a);
        }
        for (&w, &d) in &demand {
            for _ in 0..d {
                net.arc(2 * w, sink, None);
            }
        }
        net.max_flow(source, sink) == total
    }

    /// Length of a shortest `s`-`t` path through free vertices and unused
    /// edges, if any. Interior vertices need two unused darts, one in and
    /// one out, so weaker vertices do not relay.
    fn pair_distance(&self, s: usize, t: usize) -> Option<u32> {
        let mut dist = vec![u32::MAX; self.hc.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &self.sorted_adj[u] {
                if self.used_e[e] {
                    continue;
                }
                if w == t {
                    return Some(dist[u] + 1);
                }
                if self.used_v[w] == FREE && self.free_darts[w] >= 2 && dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Distance from every relay-capable free vertex to `t` through free
    /// vertices and unused edges; orders and prunes path extension.
    fn free_dist_from(&self, t: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.hc.n()];
        dist[t] = 0;
        let mut queue = VecDeque::from([t]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &self.sorted_adj[u] {
                if self.used_e[e]
                    || self.used_v[w] != FREE
                    || self.free_darts[w] < 2
                    || dist[w] != u32::MAX
                {
                    continue;
                }
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
        dist
    }

    fn build_witness(&self) -> SubdivisionWitness {
        let branch = (0..self.pc.n())
            .map(|p| (self.pc.verts[p], self.hc.verts[self.image(p)]))
            .collect();
        let mut paths = BTreeMap::new();
        for pe in 0..self.pc.m() {
            let (vs, es) = self.path_store[pe].clone().expect("all pattern edges routed");
            debug_assert_eq!(vs[0], self.image(self.pc.ends[pe].0), "stored from the first end");
            let vertices: Vec<_> = vs.iter().map(|&v| self.hc.verts[v]).collect();
            let edges: Vec<_> = es.iter().map(|&e| self.hc.eids[e]).collect();
            paths.insert(self.pc.eids[pe], WitnessPath { vertices, edges });
        }
        SubdivisionWitness { branch, paths }
    }
}
