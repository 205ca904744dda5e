//! Unit-capacity flow network shared by the routing and pruning code.

use std::collections::VecDeque;

use crate::graph::EdgeId;

/// Unit-capacity flow network. Arc `2i` is a forward arc with its residual
/// twin at `2i + 1`.
pub(super) struct FlowNet {
    pub(super) to: Vec<usize>,
    pub(super) cap: Vec<u32>,
    pub(super) eid: Vec<Option<EdgeId>>,
    pub(super) head: Vec<Vec<usize>>,
}

impl FlowNet {
    pub(super) fn new(nodes: usize) -> Self {
        FlowNet { to: Vec::new(), cap: Vec::new(), eid: Vec::new(), head: vec![Vec::new(); nodes] }
    }

    pub(super) fn arc(&mut self, from: usize, to: usize, eid: Option<EdgeId>) {
        let i = self.to.len();
        self.to.push(to);
        self.cap.push(1);
        self.eid.push(eid);
        self.to.push(from);
        self.cap.push(0);
        self.eid.push(eid);
        self.head[from].push(i);
        self.head[to].push(i + 1);
    }

    /// Edmonds-Karp: repeatedly augments along a breadth-first shortest
    /// residual path, scanning arcs in insertion order.
    pub(super) fn max_flow(&mut self, s: usize, t: usize) -> u32 {
        let mut total = 0;
        loop {
            let mut pred: Vec<Option<usize>> = vec![None; self.head.len()];
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.head[u] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && v != s && pred[v].is_none() {
                        pred[v] = Some(a);
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            let Some(mut a) = pred[t] else {
                return total;
            };
            loop {
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                let u = self.to[a ^ 1];
                if u == s {
                    break;
                }
                a = pred[u].expect("breadth-first predecessors reach back to the source");
            }
            total += 1;
        }
    }
}
