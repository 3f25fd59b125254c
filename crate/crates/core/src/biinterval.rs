//! Bi-interval graphs (strong products of two interval graphs) and the
//! all-pairs construction: cardinal paths from every terminal, hand-offs into
//! terminal rows and columns, then straight paths along those lines.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Direction, IntervalGraph};
use crate::sssp::{count_branching, BranchingMode};

/// A product vertex: column `ix` on the x axis, row `iy` on the y axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct ProductVertex {
    pub ix: usize,
    pub iy: usize,
}

impl ProductVertex {
    pub fn new(ix: usize, iy: usize) -> Self {
        Self { ix, iy }
    }
}

impl From<[usize; 2]> for ProductVertex {
    fn from([ix, iy]: [usize; 2]) -> Self {
        Self { ix, iy }
    }
}

impl From<ProductVertex> for [usize; 2] {
    fn from(v: ProductVertex) -> Self {
        [v.ix, v.iy]
    }
}

impl fmt::Display for ProductVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ix, self.iy)
    }
}

pub type ProductEdge = (ProductVertex, ProductVertex);

fn edge(a: ProductVertex, b: ProductVertex) -> ProductEdge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Heading {
    NorthEast,
    NorthWest,
}

#[derive(Clone, Debug)]
pub struct BiIntervalGraph {
    x: IntervalGraph,
    y: IntervalGraph,
    dx: Vec<Vec<Option<usize>>>,
    dy: Vec<Vec<Option<usize>>>,
}

impl PartialEq for BiIntervalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl Eq for BiIntervalGraph {}

impl BiIntervalGraph {
    pub fn new(x: IntervalGraph, y: IntervalGraph) -> Self {
        let dx = x.distance_matrix();
        let dy = y.distance_matrix();
        Self { x, y, dx, dy }
    }

    pub fn x_axis(&self) -> &IntervalGraph {
        &self.x
    }

    pub fn y_axis(&self) -> &IntervalGraph {
        &self.y
    }

    pub fn vertex_count(&self) -> usize {
        self.x.len() * self.y.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = ProductVertex> + '_ {
        (0..self.x.len()).flat_map(move |ix| (0..self.y.len()).map(move |iy| ProductVertex { ix, iy }))
    }

    pub fn check_vertex(&self, v: ProductVertex) -> Result<()> {
        self.x.check_vertex(v.ix)?;
        self.y.check_vertex(v.iy)
    }

    /// Strong-product adjacency: distinct, and adjacent or equal on each axis.
    pub fn adjacent(&self, u: ProductVertex, v: ProductVertex) -> bool {
        u != v
            && (u.ix == v.ix || self.x.adjacent(u.ix, v.ix))
            && (u.iy == v.iy || self.y.adjacent(u.iy, v.iy))
    }

    pub fn neighbors(&self, v: ProductVertex) -> Vec<ProductVertex> {
        let xs: Vec<usize> = std::iter::once(v.ix).chain(self.x.neighbors(v.ix).iter().copied()).collect();
        let ys: Vec<usize> = std::iter::once(v.iy).chain(self.y.neighbors(v.iy).iter().copied()).collect();
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for &ix in &xs {
            for &iy in &ys {
                if ix != v.ix || iy != v.iy {
                    out.push(ProductVertex { ix, iy });
                }
            }
        }
        out
    }

    pub fn axis_distance_x(&self, a: usize, b: usize) -> Option<usize> {
        self.dx[a][b]
    }

    pub fn axis_distance_y(&self, a: usize, b: usize) -> Option<usize> {
        self.dy[a][b]
    }

    /// `max(d_X, d_Y)`; `None` if either axis pair is disconnected.
    pub fn product_distance(&self, u: ProductVertex, v: ProductVertex) -> Option<usize> {
        Some(self.dx[u.ix][v.ix]?.max(self.dy[u.iy][v.iy]?))
    }

    /// Pairs the two axis greedy paths step by step, then finishes along the
    /// longer one.
    pub fn product_greedy_path(&self, u: ProductVertex, v: ProductVertex) -> Result<Vec<ProductVertex>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        // Only the north-going quadrants are walked; swap the ends otherwise.
        let flipped = self.y.precede(v.iy, u.iy);
        let (a, b) = if flipped { (v, u) } else { (u, v) };
        let unreachable = |_| Error::Unreachable {
            from: self.flat(u),
            to: self.flat(v),
        };
        let px = self.x.directed_greedy_path(a.ix, b.ix).map_err(unreachable)?.vertices;
        let py = self.y.directed_greedy_path(a.iy, b.iy).map_err(unreachable)?.vertices;
        let steps = px.len().max(py.len());
        let mut path: Vec<ProductVertex> = (0..steps)
            .map(|k| ProductVertex {
                ix: px[k.min(px.len() - 1)],
                iy: py[k.min(py.len() - 1)],
            })
            .collect();
        if flipped {
            path.reverse();
        }
        Ok(path)
    }

    fn flat(&self, v: ProductVertex) -> usize {
        v.ix * self.y.len() + v.iy
    }

    /// The NE or NW cardinal path: x-axis east or west paired with the y-axis
    /// northward walk, while both continue.
    pub fn cardinal_product_path(&self, u: ProductVertex, heading: Heading) -> Vec<ProductVertex> {
        let dir = match heading {
            Heading::NorthEast => Direction::East,
            Heading::NorthWest => Direction::West,
        };
        let xs = self.x.cardinal_path(u.ix, dir).vertices;
        let ys = self.y.cardinal_path(u.iy, Direction::East).vertices;
        xs.into_iter().zip(ys).map(|(ix, iy)| ProductVertex { ix, iy }).collect()
    }
}

/// An undirected subgraph of the product together with its pseudo-terminals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AllPairsSubgraph {
    pub edges: BTreeSet<ProductEdge>,
    pub pseudo_terminals: BTreeSet<ProductVertex>,
}

impl AllPairsSubgraph {
    pub fn branching(&self) -> usize {
        let edges: Vec<ProductEdge> = self.edges.iter().copied().collect();
        count_branching(&edges, BranchingMode::UndirectedDegree)
    }

    fn add_path(&mut self, path: &[ProductVertex]) {
        for w in path.windows(2) {
            self.edges.insert(edge(w[0], w[1]));
        }
    }

    fn touched(&self) -> BTreeSet<ProductVertex> {
        self.edges.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

fn check_terminals(g: &BiIntervalGraph, terminals: &[ProductVertex]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &t in terminals {
        g.check_vertex(t)?;
        if !seen.insert(t) {
            return Err(Error::InvalidArgument(format!("terminal {t} listed twice")));
        }
    }
    Ok(())
}

/// Orders a terminal pair so the first one is not above the second.
fn lower_first(g: &BiIntervalGraph, a: ProductVertex, b: ProductVertex) -> (ProductVertex, ProductVertex) {
    if g.y.precede(b.iy, a.iy) {
        (b, a)
    } else {
        (a, b)
    }
}

/// Every edge from the cardinal prefix of `lo` into the row or column of
/// `hi` that stays on a shortest `lo`-`hi` path. Each edge is returned as
/// (prefix vertex, landing); the landing becomes a pseudo-terminal unless it
/// is `hi`.
fn hand_off_options(g: &BiIntervalGraph, lo: ProductVertex, hi: ProductVertex) -> Vec<ProductEdge> {
    let Some(total) = g.product_distance(lo, hi) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for heading in [Heading::NorthEast, Heading::NorthWest] {
        let path = g.cardinal_product_path(lo, heading);
        for (m, &u) in path.iter().enumerate().take(total) {
            for v in g.neighbors(u) {
                if (v.ix == hi.ix || v.iy == hi.iy)
                    && g.product_distance(lo, v) == Some(m + 1)
                    && g.product_distance(v, hi) == Some(total - m - 1)
                {
                    out.push((u, v));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Does a cardinal path of `lo` enter the row or column of `hi` at a vertex
/// on some shortest `lo`-`hi` path? If so the straight paths in that line
/// finish the job and no hand-off is needed.
fn cardinal_reaches_line(g: &BiIntervalGraph, lo: ProductVertex, hi: ProductVertex) -> bool {
    let Some(total) = g.product_distance(lo, hi) else {
        return false;
    };
    [Heading::NorthEast, Heading::NorthWest].into_iter().any(|heading| {
        g.cardinal_product_path(lo, heading).iter().enumerate().any(|(m, &v)| {
            (v.ix == hi.ix || v.iy == hi.iy) && g.product_distance(v, hi).is_some_and(|d| m + d == total)
        })
    })
}

/// Cardinal NE and NW paths from every terminal, plus a hand-off edge for
/// each terminal pair the cardinal paths do not already serve. Pseudo-terminals
/// are the touched non-terminals that share a row or column with a terminal.
pub fn pseudo_terms(g: &BiIntervalGraph, terminals: &[ProductVertex]) -> Result<AllPairsSubgraph> {
    if terminals.is_empty() {
        return Err(Error::EmptyTargets);
    }
    check_terminals(g, terminals)?;
    let mut h = AllPairsSubgraph::default();
    for &t in terminals {
        h.add_path(&g.cardinal_product_path(t, Heading::NorthEast));
        h.add_path(&g.cardinal_product_path(t, Heading::NorthWest));
    }
    let columns: BTreeSet<usize> = terminals.iter().map(|t| t.ix).collect();
    let rows: BTreeSet<usize> = terminals.iter().map(|t| t.iy).collect();
    let terminal_set: BTreeSet<ProductVertex> = terminals.iter().copied().collect();
    // Pairs the cardinal paths miss, each with every admissible hand-off.
    let mut touched = h.touched();
    touched.extend(terminals.iter().copied());
    let mut open: Vec<Vec<ProductEdge>> = Vec::new();
    for (i, &a) in terminals.iter().enumerate() {
        for &b in &terminals[i + 1..] {
            let (lo, hi) = lower_first(g, a, b);
            if !cardinal_reaches_line(g, lo, hi) {
                let options = hand_off_options(g, lo, hi);
                if !options.is_empty() {
                    open.push(options);
                }
            }
        }
    }
    // Landings already in H cost nothing; otherwise take the landing that
    // serves the most open pairs.
    while !open.is_empty() {
        let free = open.iter().enumerate().find_map(|(i, options)| {
            options.iter().find(|e| touched.contains(&e.1)).map(|&e| (i, e))
        });
        if let Some((i, e)) = free {
            h.edges.insert(edge(e.0, e.1));
            open.swap_remove(i);
            continue;
        }
        let mut votes: BTreeMap<ProductVertex, usize> = BTreeMap::new();
        for options in &open {
            let landings: BTreeSet<ProductVertex> = options.iter().map(|e| e.1).collect();
            for v in landings {
                *votes.entry(v).or_default() += 1;
            }
        }
        // Ties go to the landing whose row and column are least loaded
        // relative to their bounds (k per column, 2k per row).
        let load = |v: ProductVertex| {
            let in_column = touched.iter().filter(|w| w.ix == v.ix && !terminal_set.contains(w)).count();
            let in_row = touched.iter().filter(|w| w.iy == v.iy && !terminal_set.contains(w)).count();
            let column = if columns.contains(&v.ix) { 2 * in_column } else { 0 };
            let row = if rows.contains(&v.iy) { in_row } else { 0 };
            column.max(row)
        };
        let (&best, _) = votes
            .iter()
            .max_by_key(|&(&v, &n)| (n, std::cmp::Reverse(load(v)), std::cmp::Reverse(v)))
            .expect("open pairs have options");
        touched.insert(best);
    }
    h.pseudo_terminals = h
        .touched()
        .into_iter()
        .filter(|v| !terminal_set.contains(v) && (columns.contains(&v.ix) || rows.contains(&v.iy)))
        .collect();
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPaths {
    pub edges: BTreeSet<(usize, usize)>,
    pub branching: usize,
    pub bound: usize,
}

/// Preserves `d(u, v)` for every `u` in `sources` and `v` in `targets` on one
/// interval graph, with at most `(q - 2) + 2pq` branching vertices.
///
/// All targets are joined to the `≺`-last target by greedy paths; each other
/// required pair gets one more edge, from the first vertex of the lower
/// target's greedy path that meets the upper target.
pub fn interval_paths(g: &IntervalGraph, sources: &[usize], targets: &[usize]) -> Result<IntervalPaths> {
    let target_set: BTreeSet<usize> = targets.iter().copied().collect();
    let source_set: BTreeSet<usize> = sources.iter().copied().collect();
    for &v in target_set.iter() {
        g.check_vertex(v)?;
    }
    if let Some(&s) = source_set.iter().find(|s| !target_set.contains(s)) {
        return Err(Error::InvalidArgument(format!("source {s} is not among the targets")));
    }
    let mut order: Vec<usize> = target_set.iter().copied().collect();
    order.sort_by_key(|&v| g.interval(v).right());
    let (p, q) = (source_set.len(), order.len());
    let bound = (q.saturating_sub(2)) + 2 * p * q;
    let mut edges = BTreeSet::new();
    let undirected = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    if q >= 2 {
        let last = order[q - 1];
        let mut spines = Vec::with_capacity(q - 1);
        for &t in &order[..q - 1] {
            let path = g.greedy_path(t, last)?.vertices;
            for w in path.windows(2) {
                edges.insert(undirected(w[0], w[1]));
            }
            spines.push(path);
        }
        for i in 0..q - 1 {
            for j in i + 1..q - 1 {
                let (ti, tj) = (order[i], order[j]);
                if !source_set.contains(&ti) && !source_set.contains(&tj) {
                    continue;
                }
                let target = g.interval(tj);
                let b = spines[i]
                    .iter()
                    .copied()
                    .find(|&v| v == tj || g.interval(v).overlaps(target))
                    .expect("the spine ends at an interval containing or meeting every earlier target");
                if b != tj {
                    edges.insert(undirected(b, tj));
                }
            }
        }
    }
    let list: Vec<(usize, usize)> = edges.iter().copied().collect();
    let branching = count_branching(&list, BranchingMode::UndirectedDegree);
    if branching > bound {
        return Err(Error::Invariant(format!(
            "interval paths produced {branching} branching vertices, above the bound {bound}"
        )));
    }
    Ok(IntervalPaths { edges, branching, bound })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Line {
    Column(usize),
    Row(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCall {
    pub line: Line,
    pub sources: usize,
    pub targets: usize,
    pub branching: usize,
    pub bound: usize,
}

/// Adds straight paths inside every row and column holding a terminal.
pub fn straight_paths(
    g: &BiIntervalGraph,
    partial: &AllPairsSubgraph,
    terminals: &[ProductVertex],
) -> Result<(AllPairsSubgraph, Vec<LineCall>)> {
    let mut h = partial.clone();
    let mut calls = Vec::new();
    let columns: BTreeSet<usize> = terminals.iter().map(|t| t.ix).collect();
    let rows: BTreeSet<usize> = terminals.iter().map(|t| t.iy).collect();
    for &c in &columns {
        let s: Vec<usize> = terminals.iter().filter(|t| t.ix == c).map(|t| t.iy).collect();
        let mut t = s.clone();
        t.extend(partial.pseudo_terminals.iter().filter(|p| p.ix == c).map(|p| p.iy));
        let out = interval_paths(&g.y, &s, &t)?;
        for (a, b) in &out.edges {
            h.edges.insert(edge(ProductVertex::new(c, *a), ProductVertex::new(c, *b)));
        }
        calls.push(LineCall {
            line: Line::Column(c),
            sources: s.len(),
            targets: out_len(&t),
            branching: out.branching,
            bound: out.bound,
        });
    }
    for &r in &rows {
        let s: Vec<usize> = terminals.iter().filter(|t| t.iy == r).map(|t| t.ix).collect();
        let mut t = s.clone();
        t.extend(partial.pseudo_terminals.iter().filter(|p| p.iy == r).map(|p| p.ix));
        let out = interval_paths(&g.x, &s, &t)?;
        for (a, b) in &out.edges {
            h.edges.insert(edge(ProductVertex::new(*a, r), ProductVertex::new(*b, r)));
        }
        calls.push(LineCall {
            line: Line::Row(r),
            sources: s.len(),
            targets: out_len(&t),
            branching: out.branching,
            bound: out.bound,
        });
    }
    Ok((h, calls))
}

fn out_len(v: &[usize]) -> usize {
    v.iter().collect::<BTreeSet<_>>().len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpsReport {
    pub subgraph: AllPairsSubgraph,
    pub branching: usize,
    pub line_calls: Vec<LineCall>,
    pub max_column_pseudo: usize,
    pub max_row_pseudo: usize,
}

/// The full pipeline. Fails if a terminal pair is disconnected, and checks the
/// pseudo-terminal bounds, cardinal-path merging, and the preservation of every
/// terminal distance before returning.
pub fn build_dps(g: &BiIntervalGraph, terminals: &[ProductVertex]) -> Result<DpsReport> {
    check_terminals(g, terminals)?;
    if terminals.len() <= 1 {
        return Ok(DpsReport {
            subgraph: AllPairsSubgraph::default(),
            branching: 0,
            line_calls: Vec::new(),
            max_column_pseudo: 0,
            max_row_pseudo: 0,
        });
    }
    for (i, &a) in terminals.iter().enumerate() {
        for &b in &terminals[i + 1..] {
            if g.product_distance(a, b).is_none() {
                return Err(Error::Infeasible(format!("terminals {a} and {b} are disconnected")));
            }
        }
    }
    let k = terminals.len();
    check_cardinal_merging(g, terminals)?;
    let partial = pseudo_terms(g, terminals)?;
    let mut per_column: BTreeMap<usize, usize> = BTreeMap::new();
    let mut per_row: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &partial.pseudo_terminals {
        *per_column.entry(p.ix).or_default() += 1;
        *per_row.entry(p.iy).or_default() += 1;
    }
    let max_column_pseudo = per_column.values().copied().max().unwrap_or(0);
    let max_row_pseudo = per_row.values().copied().max().unwrap_or(0);
    if max_column_pseudo > k || max_row_pseudo > 2 * k {
        return Err(Error::Invariant(format!(
            "pseudo-terminal bounds broken: {max_column_pseudo} in a column, {max_row_pseudo} in a row, k = {k}"
        )));
    }
    let (subgraph, line_calls) = straight_paths(g, &partial, terminals)?;
    if let Some((a, b, want, got)) = first_distance_violation(g, &subgraph.edges, terminals) {
        return Err(Error::Invariant(format!(
            "distance between {a} and {b} is {want} but the subgraph gives {got:?}"
        )));
    }
    Ok(DpsReport {
        branching: subgraph.branching(),
        subgraph,
        line_calls,
        max_column_pseudo,
        max_row_pseudo,
    })
}

/// Two cardinal paths with the same heading that meet must agree from then on.
fn check_cardinal_merging(g: &BiIntervalGraph, terminals: &[ProductVertex]) -> Result<()> {
    for heading in [Heading::NorthEast, Heading::NorthWest] {
        let paths: Vec<Vec<ProductVertex>> = terminals.iter().map(|&t| g.cardinal_product_path(t, heading)).collect();
        for (i, a) in paths.iter().enumerate() {
            for b in &paths[i + 1..] {
                if let Some((ia, ib)) = a.iter().enumerate().find_map(|(ia, v)| b.iter().position(|w| w == v).map(|ib| (ia, ib))) {
                    if a[ia..] != b[ib..] {
                        return Err(Error::Invariant(format!(
                            "cardinal paths meet at {} and then separate",
                            a[ia]
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// BFS inside the edge set from each terminal, compared with the product
/// distance. Returns the first pair that is not preserved.
pub fn first_distance_violation(
    g: &BiIntervalGraph,
    edges: &BTreeSet<ProductEdge>,
    terminals: &[ProductVertex],
) -> Option<(ProductVertex, ProductVertex, usize, Option<usize>)> {
    let mut adj: BTreeMap<ProductVertex, Vec<ProductVertex>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for (i, &a) in terminals.iter().enumerate() {
        let dist = bfs_in(&adj, a);
        for &b in &terminals[i + 1..] {
            let want = g.product_distance(a, b)?;
            let got = dist.get(&b).copied();
            if got != Some(want) {
                return Some((a, b, want, got));
            }
        }
    }
    None
}

fn bfs_in(adj: &BTreeMap<ProductVertex, Vec<ProductVertex>>, from: ProductVertex) -> BTreeMap<ProductVertex, usize> {
    let mut dist = BTreeMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for &w in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// King's graph: the product of two paths with `width` and `height` vertices.
pub fn kings_graph(width: usize, height: usize) -> Result<BiIntervalGraph> {
    Ok(BiIntervalGraph::new(path_graph(width)?, path_graph(height)?))
}

/// A path graph on `n` unit-spaced intervals `(i - 0.6, i + 0.6)`.
pub fn path_graph(n: usize) -> Result<IntervalGraph> {
    IntervalGraph::from_pairs((1..=n as i64).map(|i| (crate::interval::frac(10 * i - 6, 10), crate::interval::frac(10 * i + 6, 10))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(ix: usize, iy: usize) -> ProductVertex {
        ProductVertex::new(ix, iy)
    }

    #[test]
    fn kings_distance_is_chebyshev() {
        let g = kings_graph(8, 8).unwrap();
        assert_eq!(g.product_distance(pv(0, 0), pv(3, 5)), Some(5));
        assert_eq!(g.product_distance(pv(2, 2), pv(2, 2)), Some(0));
    }

    #[test]
    fn kings_greedy_goes_diagonal_then_straight() {
        let g = kings_graph(8, 8).unwrap();
        let path = g.product_greedy_path(pv(0, 0), pv(3, 5)).unwrap();
        assert_eq!(path, vec![pv(0, 0), pv(1, 1), pv(2, 2), pv(3, 3), pv(3, 4), pv(3, 5)]);
        let diag = g.product_greedy_path(pv(1, 1), pv(4, 4)).unwrap();
        assert_eq!(diag.len(), 4);
        assert!(diag.windows(2).all(|w| w[1].ix == w[0].ix + 1 && w[1].iy == w[0].iy + 1));
        let down = g.product_greedy_path(pv(3, 5), pv(0, 0)).unwrap();
        assert_eq!(down.len(), 6);
        assert_eq!((down[0], down[5]), (pv(3, 5), pv(0, 0)));
    }

    #[test]
    fn cardinal_paths_on_kings_graph() {
        let g = kings_graph(5, 5).unwrap();
        assert_eq!(
            g.cardinal_product_path(pv(1, 2), Heading::NorthEast),
            vec![pv(1, 2), pv(2, 3), pv(3, 4)]
        );
        assert_eq!(g.cardinal_product_path(pv(2, 4), Heading::NorthEast), vec![pv(2, 4)]);
        let nw = g.cardinal_product_path(pv(2, 1), Heading::NorthWest);
        let ne = g.cardinal_product_path(pv(2, 1), Heading::NorthEast);
        assert_eq!(nw, vec![pv(2, 1), pv(1, 2), pv(0, 3)]);
        assert_eq!(nw.iter().filter(|v| ne.contains(v)).count(), 1);
    }

    #[test]
    fn single_top_terminal_has_no_branching() {
        let g = kings_graph(5, 5).unwrap();
        let h = pseudo_terms(&g, &[pv(2, 4)]).unwrap();
        assert!(h.edges.is_empty());
        assert_eq!(h.branching(), 0);
    }

    #[test]
    fn interval_paths_on_a_path_graph() {
        let g = path_graph(6).unwrap();
        let out = interval_paths(&g, &[0, 5], &[0, 5]).unwrap();
        assert_eq!(out.edges.len(), 5);
        assert_eq!(out.branching, 0);
        let all: Vec<usize> = (0..6).collect();
        let out = interval_paths(&g, &all, &all).unwrap();
        assert_eq!(out.branching, 0);
        assert!(interval_paths(&g, &[1], &[0, 5]).is_err());
    }

    #[test]
    fn interval_paths_handles_nested_targets() {
        // Targets 0 and 3 reach 4 through 1; target 3 sits inside 4 beyond 1,
        // so the greedy path to 3 leaves the spine towards 4.
        let g = IntervalGraph::from_decimal_pairs(&[
            ("0", "1"),
            ("0.5", "2"),
            ("1.8", "7"),
            ("5", "6"),
            ("1.5", "10"),
        ])
        .unwrap();
        let out = interval_paths(&g, &[0, 3, 4], &[0, 3, 4]).unwrap();
        let mut adj = vec![Vec::new(); g.len()];
        for &(a, b) in &out.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        // d(0, 3) = 3 in g and must be 3 in the subgraph.
        let mut dist = vec![usize::MAX; g.len()];
        dist[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        assert_eq!(Some(dist[3]), g.bfs_distance(0, 3));
        assert_eq!(Some(dist[4]), g.bfs_distance(0, 4));
    }

    #[test]
    fn two_terminals_in_one_column() {
        let g = kings_graph(4, 6).unwrap();
        let report = build_dps(&g, &[pv(1, 0), pv(1, 5)]).unwrap();
        for iy in 0..5 {
            assert!(report.subgraph.edges.contains(&(pv(1, iy), pv(1, iy + 1))));
        }
    }

    #[test]
    fn one_terminal_needs_nothing() {
        let g = kings_graph(4, 4).unwrap();
        let report = build_dps(&g, &[pv(1, 1)]).unwrap();
        assert_eq!(report.branching, 0);
        assert!(report.subgraph.edges.is_empty());
    }

    #[test]
    fn offset_pair_uses_hand_off() {
        // x axis: a=0 reaches c=2 only through the long interval 1.
        let x = IntervalGraph::from_decimal_pairs(&[("0", "1"), ("0.5", "3"), ("1.5", "1.7"), ("2.8", "4")]).unwrap();
        let y = path_graph(5).unwrap();
        let g = BiIntervalGraph::new(x, y);
        let report = build_dps(&g, &[pv(0, 0), pv(2, 4)]).unwrap();
        assert!(report.subgraph.edges.contains(&edge(pv(1, 1), pv(2, 2))));
    }
}
