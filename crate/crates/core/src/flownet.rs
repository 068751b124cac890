//! Small residual network with Edmonds-Karp augmentation.

use std::collections::VecDeque;

pub(crate) const INF: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
pub(crate) struct FlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    orig: Vec<i64>,
}

impl FlowNet {
    pub fn new(n: usize) -> Self {
        FlowNet {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            orig: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, c: i64) -> usize {
        let e = self.to.len();
        self.to.push(v);
        self.cap.push(c);
        self.orig.push(c);
        self.adj[u].push(e);
        self.to.push(u);
        self.cap.push(0);
        self.orig.push(0);
        self.adj[v].push(e + 1);
        e
    }

    /// Augments along shortest paths until the flow reaches `limit` or no path is left.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0i64;
        let n = self.adj.len();
        while total < limit {
            let mut prev = vec![usize::MAX; n];
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if !seen[v] && self.cap[e] > 0 {
                        seen[v] = true;
                        prev[v] = e;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut bottleneck = limit - total;
            let mut v = t;
            while v != s {
                let e = prev[v];
                bottleneck = bottleneck.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = prev[v];
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                v = self.to[e ^ 1];
            }
            total = total.saturating_add(bottleneck);
        }
        total
    }

    /// Nodes that can still reach `t` in the residual network.
    pub fn residual_coreach(&self, t: usize) -> Vec<bool> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            for &e in &self.adj[v] {
                // e leaves v; its partner e^1 enters v from to[e]
                let u = self.to[e];
                if !seen[u] && self.cap[e ^ 1] > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// Splits the flow into source-sink walks with cycles cancelled; each returned node
    /// sequence is simple and carries one unit.
    pub fn decompose(&self, s: usize, t: usize, value: i64) -> Vec<Vec<usize>> {
        let mut flow: Vec<i64> = (0..self.to.len())
            .map(|e| if e % 2 == 0 { self.orig[e] - self.cap[e] } else { 0 })
            .collect();
        let n = self.adj.len();
        let mut out = Vec::new();
        for _ in 0..value {
            let mut walk = vec![s];
            let mut edges: Vec<usize> = Vec::new();
            let mut pos = vec![usize::MAX; n];
            pos[s] = 0;
            let mut u = s;
            while u != t {
                let e = match self.adj[u].iter().copied().find(|&e| e % 2 == 0 && flow[e] > 0) {
                    Some(e) => e,
                    None => return out,
                };
                let v = self.to[e];
                if pos[v] != usize::MAX {
                    // cancel the cycle v -> ... -> u -> v
                    let start = pos[v];
                    flow[e] -= 1;
                    for &ce in &edges[start..] {
                        flow[ce] -= 1;
                    }
                    for &w in &walk[start + 1..] {
                        pos[w] = usize::MAX;
                    }
                    walk.truncate(start + 1);
                    edges.truncate(start);
                    u = v;
                    continue;
                }
                pos[v] = walk.len();
                walk.push(v);
                edges.push(e);
                u = v;
            }
            for &e in &edges {
                flow[e] -= 1;
            }
            out.push(walk);
        }
        out
    }
}
