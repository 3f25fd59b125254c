//! Vertex-disjoint paths through unit-capacity max-flow.
//!
//! Logical nodes carry a capacity; unit nodes are split into an in-half and an
//! out-half joined by a unit arc, so that Dinic on the split network yields
//! internally vertex-disjoint paths.

use std::collections::VecDeque;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Capacity {
    Unit,
    Unbounded,
}

#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    capacity: Vec<Capacity>,
    arcs: Vec<(NodeId, NodeId)>,
}

impl FlowNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, capacity: Capacity) -> NodeId {
        self.capacity.push(capacity);
        self.capacity.len() - 1
    }

    /// Adds a unit-capacity arc.
    pub fn add_arc(&mut self, from: NodeId, to: NodeId) {
        debug_assert!(from < self.capacity.len() && to < self.capacity.len());
        self.arcs.push((from, to));
    }

    pub fn node_count(&self) -> usize {
        self.capacity.len()
    }

    pub fn arcs(&self) -> &[(NodeId, NodeId)] {
        &self.arcs
    }
}

/// A maximum family of internally vertex-disjoint `src -> sink` paths, each
/// listed as logical nodes from `src` to `sink`.
#[derive(Clone, Debug, Default)]
pub struct DisjointPaths {
    pub paths: Vec<Vec<NodeId>>,
    pub augmentations: usize,
}

/// Computes a maximum set of internally vertex-disjoint paths. The endpoints
/// themselves are never capacity limited. Intended for acyclic networks; on a
/// network with cycles the decomposition may report walks.
pub fn max_vertex_disjoint(net: &FlowNetwork, src: NodeId, sink: NodeId) -> DisjointPaths {
    if src == sink {
        return DisjointPaths::default();
    }
    let n = net.node_count();
    let mut dinic = Dinic::new(2 * n);
    for (v, cap) in net.capacity.iter().enumerate() {
        let c = match cap {
            Capacity::Unit => 1,
            Capacity::Unbounded => u32::MAX / 2,
        };
        dinic.add_edge(2 * v, 2 * v + 1, c);
    }
    let first_arc = dinic.to.len();
    for &(a, b) in &net.arcs {
        dinic.add_edge(2 * a + 1, 2 * b, 1);
    }
    let (s, t) = (2 * src + 1, 2 * sink);
    let augmentations = dinic.max_flow(s, t);

    // Peel paths off the flow on logical arcs.
    let mut used: Vec<bool> = vec![false; net.arcs.len()];
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, _)) in net.arcs.iter().enumerate() {
        if dinic.flow(first_arc + 2 * i) > 0 {
            out_arcs[a].push(i);
        }
    }
    let mut paths = Vec::new();
    for _ in 0..augmentations {
        let mut path = vec![src];
        let mut at = src;
        while at != sink {
            let Some(&arc) = out_arcs[at].iter().find(|&&i| !used[i]) else {
                break;
            };
            used[arc] = true;
            at = net.arcs[arc].1;
            path.push(at);
        }
        if at == sink {
            paths.push(path);
        }
    }
    DisjointPaths {
        paths,
        augmentations,
    }
}

struct Dinic {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
    original: Vec<u32>,
    level: Vec<u32>,
    iter: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl Dinic {
    fn new(n: usize) -> Self {
        Self {
            head: vec![NIL; n],
            next: Vec::new(),
            to: Vec::new(),
            cap: Vec::new(),
            original: Vec::new(),
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    fn add_edge(&mut self, a: usize, b: usize, c: u32) {
        for (from, to, cap) in [(a, b, c), (b, a, 0)] {
            self.next.push(self.head[from]);
            self.head[from] = self.to.len();
            self.to.push(to);
            self.cap.push(cap);
            self.original.push(cap);
        }
    }

    fn flow(&self, edge: usize) -> u32 {
        self.original[edge] - self.cap[edge]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let mut e = self.head[v];
            while e != NIL {
                let w = self.to[e];
                if self.cap[e] > 0 && self.level[w] == u32::MAX {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
                e = self.next[e];
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: u32) -> u32 {
        if v == t {
            return pushed;
        }
        while self.iter[v] != NIL {
            let e = self.iter[v];
            let w = self.to[e];
            if self.cap[e] > 0 && self.level[w] == self.level[v] + 1 {
                let got = self.dfs(w, t, pushed.min(self.cap[e]));
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            self.iter[v] = self.next[e];
        }
        0
    }

    /// Returns the number of unit augmenting paths found.
    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.clone_from(&self.head);
            loop {
                let got = self.dfs(s, t, 1);
                if got == 0 {
                    break;
                }
                total += got as usize;
            }
        }
        total
    }
}
