//! Brute-force references used to certify the solvers on small inputs.
//!
//! An optimal single-source tree may be taken to be the union of one shortest
//! path per terminal: every leaf of an optimal tree is a terminal, so the tree
//! is exactly the union of its root-to-terminal paths. Conversely, any union of
//! shortest paths contains a tree (keep one parent per vertex) with no more
//! branching. Enumerating per-terminal path choices is therefore exact.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::biinterval::{BiIntervalGraph, ProductVertex};
use crate::error::{Error, Result};
use crate::interval::IntervalGraph;
use crate::layering::{build_bfs_dag, LayeredDag};
use crate::sssp::{count_branching, BranchingMode};

pub const MAX_ORACLE_TERMINALS: usize = 5;
pub const MAX_ORACLE_COMBINATIONS: u128 = 1_000_000;

/// Every directed path from the source of `dag` to `t`.
fn all_dag_paths(dag: &LayeredDag, from: usize, to: usize, limit: usize) -> Option<Vec<Vec<usize>>> {
    fn walk(dag: &LayeredDag, from: usize, at: usize, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) -> bool {
        suffix.push(at);
        if at == from {
            out.push(suffix.iter().rev().copied().collect());
        } else {
            for &p in dag.in_neighbors(at) {
                if !walk(dag, from, p, suffix, out, limit) {
                    return false;
                }
            }
        }
        suffix.pop();
        out.len() <= limit
    }
    let mut out = Vec::new();
    if dag.layer_of(to).is_none() || dag.layer_of(from).is_none() {
        return Some(out);
    }
    let mut suffix = Vec::new();
    walk(dag, from, to, &mut suffix, &mut out, limit).then_some(out)
}

/// Minimum out-degree branching count over all combinations of one shortest
/// path per terminal.
pub fn oracle_sssp(g: &IntervalGraph, s: usize, terminals: &[usize]) -> Result<usize> {
    g.check_vertex(s)?;
    let terms: BTreeSet<usize> = terminals.iter().copied().filter(|&t| t != s).collect();
    if terms.len() > MAX_ORACLE_TERMINALS {
        return Err(Error::OracleLimit(format!("{} terminals, at most {MAX_ORACLE_TERMINALS}", terms.len())));
    }
    let dag = build_bfs_dag(g, s)?;
    let mut choices = Vec::new();
    let mut combos: u128 = 1;
    for &t in &terms {
        g.check_vertex(t)?;
        let paths = all_dag_paths(&dag, s, t, MAX_ORACLE_COMBINATIONS as usize)
            .ok_or_else(|| Error::OracleLimit(format!("too many shortest paths to {t}")))?;
        if paths.is_empty() {
            return Err(Error::Infeasible(format!("terminal {t} is unreachable from {s}")));
        }
        combos = combos.saturating_mul(paths.len() as u128);
        if combos > MAX_ORACLE_COMBINATIONS {
            return Err(Error::OracleLimit(format!("more than {MAX_ORACLE_COMBINATIONS} path combinations")));
        }
        choices.push(paths);
    }
    let mut best = usize::MAX;
    let mut multiplicity: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut out_degree = vec![0usize; g.len()];
    search(&choices, 0, &mut multiplicity, &mut out_degree, 0, &mut best);
    Ok(if terms.is_empty() { 0 } else { best })
}

fn search(
    choices: &[Vec<Vec<usize>>],
    index: usize,
    multiplicity: &mut BTreeMap<(usize, usize), usize>,
    out_degree: &mut [usize],
    branching: usize,
    best: &mut usize,
) {
    if branching >= *best {
        return;
    }
    if index == choices.len() {
        *best = branching;
        return;
    }
    for path in &choices[index] {
        let mut added = Vec::new();
        let mut b = branching;
        for w in path.windows(2) {
            let count = multiplicity.entry((w[0], w[1])).or_default();
            *count += 1;
            if *count == 1 {
                out_degree[w[0]] += 1;
                if out_degree[w[0]] == 2 {
                    b += 1;
                }
                added.push(w[0]);
            }
        }
        search(choices, index + 1, multiplicity, out_degree, b, best);
        for w in path.windows(2) {
            let count = multiplicity.get_mut(&(w[0], w[1])).expect("inserted above");
            *count -= 1;
            if *count == 0 {
                multiplicity.remove(&(w[0], w[1]));
            }
        }
        for v in added {
            out_degree[v] -= 1;
        }
    }
}

/// A second, independent reference for tiny graphs: tries every subset of the
/// layered edges and keeps those in which all terminals hang off the source.
pub fn oracle_sssp_exhaustive(g: &IntervalGraph, s: usize, terminals: &[usize]) -> Result<usize> {
    let dag = build_bfs_dag(g, s)?;
    let edges: Vec<(usize, usize)> = dag.edges().collect();
    if edges.len() > 20 {
        return Err(Error::OracleLimit(format!("{} layered edges, at most 20", edges.len())));
    }
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << edges.len()) {
        let chosen: Vec<(usize, usize)> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        let mut seen = vec![false; g.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(a, b) in &chosen {
                if a == v && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        if terminals.iter().all(|&t| seen[t]) {
            let used: Vec<(usize, usize)> = chosen.into_iter().filter(|&(a, _)| seen[a]).collect();
            let b = count_branching(&used, BranchingMode::OutDegree);
            best = Some(best.map_or(b, |x| x.min(b)));
        }
    }
    best.ok_or_else(|| Error::Infeasible("some terminal is unreachable".into()))
}

/// Does a cover rooted at `v` exist for `targets`? Enumerates one DAG path
/// per target and checks the union against the definition.
pub fn oracle_cover(dag: &LayeredDag, v: usize, targets: &[usize]) -> Result<bool> {
    let targets: Vec<usize> = targets.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut choices = Vec::new();
    for &x in &targets {
        let paths = all_dag_paths(dag, v, x, 100_000)
            .ok_or_else(|| Error::OracleLimit(format!("too many paths to {x}")))?;
        if paths.is_empty() || x == v {
            return Ok(false);
        }
        choices.push(paths);
    }
    let mut pick = vec![0usize; choices.len()];
    loop {
        let mut edges = BTreeSet::new();
        for (c, &i) in choices.iter().zip(&pick) {
            for w in c[i].windows(2) {
                edges.insert((w[0], w[1]));
            }
        }
        if is_cover(&edges, v, &targets) {
            return Ok(true);
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return Ok(false);
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

fn is_cover(edges: &BTreeSet<(usize, usize)>, root: usize, targets: &[usize]) -> bool {
    let mut indeg: BTreeMap<usize, usize> = BTreeMap::new();
    let mut outdeg: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in edges {
        *indeg.entry(b).or_default() += 1;
        *outdeg.entry(a).or_default() += 1;
    }
    indeg.values().all(|&d| d == 1)
        && outdeg.iter().all(|(&v, &d)| v == root || d <= 1)
        && indeg.keys().all(|v| outdeg.contains_key(v) || targets.contains(v))
}

/// A graph that can be searched breadth-first.
pub trait Neighborhood {
    type Vertex: Ord + Copy;
    fn neighbors_of(&self, v: Self::Vertex) -> Vec<Self::Vertex>;
}

impl Neighborhood for IntervalGraph {
    type Vertex = usize;
    fn neighbors_of(&self, v: usize) -> Vec<usize> {
        self.neighbors(v).to_vec()
    }
}

impl Neighborhood for BiIntervalGraph {
    type Vertex = ProductVertex;
    fn neighbors_of(&self, v: ProductVertex) -> Vec<ProductVertex> {
        self.neighbors(v)
    }
}

fn bfs<V: Ord + Copy>(from: V, next: impl Fn(V) -> Vec<V>) -> BTreeMap<V, usize> {
    let mut dist = BTreeMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for w in next(v) {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck<V> {
    pub from: V,
    pub to: V,
    pub expected: Option<usize>,
    pub actual: Option<usize>,
}

impl<V> PairCheck<V> {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport<V> {
    pub pairs: Vec<PairCheck<V>>,
    pub out_degree_branching: usize,
    pub undirected_branching: usize,
}

impl<V> VerifyReport<V> {
    pub fn all_preserved(&self) -> bool {
        self.pairs.iter().all(PairCheck::ok)
    }
}

/// Compares distances in the subgraph `edges` with those in `g` for every
/// pair in `sources` x `targets` (unordered, distinct). Distances in `g` come
/// from BFS on `g` itself, never from a closed formula.
pub fn verify_dps<G: Neighborhood>(
    g: &G,
    edges: &[(G::Vertex, G::Vertex)],
    sources: &[G::Vertex],
    targets: &[G::Vertex],
) -> VerifyReport<G::Vertex> {
    let mut adj: BTreeMap<G::Vertex, Vec<G::Vertex>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut pairs = Vec::new();
    let mut done = BTreeSet::new();
    for &s in sources {
        let in_g = bfs(s, |v| g.neighbors_of(v));
        let in_h = bfs(s, |v| adj.get(&v).cloned().unwrap_or_default());
        for &t in targets {
            if t == s || done.contains(&(t, s)) || !done.insert((s, t)) {
                continue;
            }
            pairs.push(PairCheck {
                from: s,
                to: t,
                expected: in_g.get(&t).copied(),
                actual: in_h.get(&t).copied(),
            });
        }
    }
    VerifyReport {
        pairs,
        out_degree_branching: count_branching(edges, BranchingMode::OutDegree),
        undirected_branching: count_branching(edges, BranchingMode::UndirectedDegree),
    }
}

/// Explicit adjacency lists of the product, for checking the implicit
/// distance formula on small instances.
pub fn materialize_product(g: &BiIntervalGraph) -> Result<Vec<Vec<usize>>> {
    let (nx, ny) = (g.x_axis().len(), g.y_axis().len());
    if nx > 12 || ny > 12 {
        return Err(Error::OracleLimit(format!("{nx} x {ny} product, at most 12 x 12")));
    }
    let id = |v: ProductVertex| v.ix * ny + v.iy;
    let all: Vec<ProductVertex> = g.vertices().collect();
    Ok(all
        .iter()
        .map(|&u| all.iter().copied().filter(|&v| g.adjacent(u, v)).map(id).collect())
        .collect())
}

/// All-pairs BFS distances on an explicit adjacency list.
pub fn all_pairs_bfs(adj: &[Vec<usize>]) -> Vec<Vec<Option<usize>>> {
    (0..adj.len())
        .map(|s| {
            let dist = bfs(s, |v| adj[v].clone());
            (0..adj.len()).map(|t| dist.get(&t).copied()).collect()
        })
        .collect()
}

/// Number of shortest `s -> t` paths in an explicit adjacency list,
/// saturating at `u64::MAX`.
pub fn count_shortest_paths(adj: &[Vec<usize>], s: usize, t: usize) -> u64 {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut ways = vec![0u64; adj.len()];
    dist[s] = 0;
    ways[s] = 1;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                ways[w] = ways[w].saturating_add(ways[v]);
            }
        }
    }
    ways[t]
}
