//! Single-source distance-preserving trees with the fewest branching vertices.
//!
//! `D[v]` is the optimum for the subproblem of reaching every terminal in a
//! later layer from `v`; `D1[v]` the same with `v` restricted to one child.
//! A vertex that branches either roots a cover ending in some `w`, after which
//! `w` carries the rest of the problem, or it does not branch at all. The
//! tables are filled from the deepest layer back towards the source.

use std::collections::{BTreeMap, BTreeSet};
use web_time::Instant;

use serde::{Deserialize, Serialize};

use crate::cover::{CoverQuery, CoverSearch};
use crate::error::{Error, Result};
use crate::interval::IntervalGraph;
use crate::layering::{build_bfs_dag, split_layers, LayeredDag, Side};

const INF: u32 = u32::MAX;

fn plus(a: u32, b: u32) -> u32 {
    if a == INF || b == INF {
        INF
    } else {
        a + b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchingMode {
    /// Out-degree at least two; used for rooted single-source trees.
    OutDegree,
    /// Degree at least three in the undirected sense; used for all-pairs.
    UndirectedDegree,
}

/// Number of branching vertices of an edge set under the given convention.
/// Edges are read as `(tail, head)` in out-degree mode.
pub fn count_branching<V: Ord + Copy>(edges: &[(V, V)], mode: BranchingMode) -> usize {
    let mut degree: BTreeMap<V, usize> = BTreeMap::new();
    for &(u, v) in edges {
        *degree.entry(u).or_default() += 1;
        if mode == BranchingMode::UndirectedDegree {
            *degree.entry(v).or_default() += 1;
        }
    }
    let threshold = match mode {
        BranchingMode::OutDegree => 2,
        BranchingMode::UndirectedDegree => 3,
    };
    degree.values().filter(|&&d| d >= threshold).count()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverStats {
    pub cover_queries: u64,
    pub flow_augmentations: u64,
    pub wall_time_us: u64,
}

/// An out-tree rooted at the source that contains a shortest path to every
/// terminal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub source: usize,
    pub terminals: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub branching_count: usize,
    pub stats: SolverStats,
}

impl Solution {
    pub fn undirected_branching(&self) -> usize {
        count_branching(&self.edges, BranchingMode::UndirectedDegree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Empty,
    Child(usize),
    Cover(usize),
}

/// FindOpt tables over one region of the DAG.
struct Tables {
    d: Vec<u32>,
    d1: Vec<u32>,
    dc: Vec<u32>,
    child: Vec<Option<usize>>,
    cover_end: Vec<Option<usize>>,
}

impl Tables {
    /// Optimum when `v`'s own branching is not charged.
    fn free(&self, v: usize) -> u32 {
        self.d1[v].min(self.dc[v])
    }

    fn step(&self, v: usize, free_root: bool) -> Step {
        if self.d[v] == 0 && self.child[v].is_none() && self.cover_end[v].is_none() {
            return Step::Empty;
        }
        let cover_cost = if free_root { self.dc[v] } else { plus(1, self.dc[v]) };
        if self.d1[v] <= cover_cost {
            Step::Child(self.child[v].expect("finite D1 has a child"))
        } else {
            Step::Cover(self.cover_end[v].expect("finite cover cost has an end"))
        }
    }
}

struct Region<'a> {
    mask: Vec<bool>,
    is_terminal: Vec<bool>,
    /// Vertices whose cover value must be exact rather than pruned.
    exact: &'a [usize],
}

impl Region<'_> {
    fn terminals_in(&self, dag: &LayeredDag, from: usize, to: usize) -> Vec<usize> {
        (from..=to)
            .flat_map(|l| dag.layer(l).iter().copied())
            .filter(|&v| self.is_terminal[v])
            .collect()
    }
}

fn find_opt(search: &mut CoverSearch<'_>, region: &Region<'_>) -> Result<Tables> {
    let dag = search.dag();
    let n = dag.vertex_count();
    let depth = dag.depth();
    let mut t = Tables {
        d: vec![INF; n],
        d1: vec![INF; n],
        dc: vec![INF; n],
        child: vec![None; n],
        cover_end: vec![None; n],
    };
    let mut per_layer = vec![0usize; depth + 2];
    for (l, layer) in dag.layers().iter().enumerate() {
        per_layer[l] = layer.iter().filter(|&&v| region.is_terminal[v]).count();
    }
    let mut after = vec![0usize; depth + 2];
    for l in (0..=depth).rev() {
        after[l] = after[l + 1] + per_layer[l + 1];
    }

    for i in (0..=depth).rev() {
        for &v in dag.layer(i) {
            if !region.mask[v] {
                continue;
            }
            if after[i] == 0 {
                t.d[v] = 0;
                continue;
            }
            let later = region.terminals_in(dag, i + 1, depth);
            if later.iter().any(|&x| !search.reaches(v, x)) {
                continue;
            }

            let next = region.terminals_in(dag, i + 1, i + 1);
            match next.as_slice() {
                [] => {
                    for &w in dag.out_neighbors(v) {
                        if region.mask[w] && t.d[w] < t.d1[v] {
                            t.d1[v] = t.d[w];
                            t.child[v] = Some(w);
                        }
                    }
                }
                &[x] if dag.has_edge(v, x) && t.d[x] < INF => {
                    t.d1[v] = t.d[x];
                    t.child[v] = Some(x);
                }
                _ => {}
            }

            // Deepest layer up to which the terminal prefix is coverable.
            let mut reach_layer = i;
            for l in i + 1..=depth {
                if per_layer[l] > 0 {
                    let prefix = region.terminals_in(dag, i + 1, l);
                    let query = CoverQuery {
                        roots: &[v],
                        targets: &prefix,
                        leaf_targets: &[],
                        region: Some(&region.mask),
                    };
                    if !search.exists(query)? {
                        break;
                    }
                }
                reach_layer = l;
            }
            let exact = region.exact.contains(&v);
            let mut candidates: Vec<usize> = (i + 1..=reach_layer)
                .flat_map(|l| dag.layer(l).iter().copied())
                .filter(|&w| region.mask[w] && t.d[w] < INF && search.reaches(v, w))
                .collect();
            candidates.sort_by_key(|&w| (t.d[w], dag.layer_of(w), w));
            for w in candidates {
                if !exact && plus(1, t.d[w]) >= t.d1[v] {
                    break;
                }
                let lw = dag.layer_of(w).expect("layered");
                let mut targets = region.terminals_in(dag, i + 1, lw);
                if !targets.contains(&w) {
                    targets.push(w);
                }
                let query = CoverQuery {
                    roots: &[v],
                    targets: &targets,
                    leaf_targets: &[],
                    region: Some(&region.mask),
                };
                if search.exists(query)? {
                    t.dc[v] = t.d[w];
                    t.cover_end[v] = Some(w);
                    break;
                }
            }
            t.d[v] = t.d1[v].min(plus(1, t.dc[v]));
        }
    }
    Ok(t)
}

/// Appends the witness tree for `v`'s subproblem.
fn rebuild(
    search: &mut CoverSearch<'_>,
    region: &Region<'_>,
    t: &Tables,
    mut v: usize,
    mut free_root: bool,
    edges: &mut BTreeSet<(usize, usize)>,
) -> Result<()> {
    let dag = search.dag();
    loop {
        match t.step(v, free_root) {
            Step::Empty => return Ok(()),
            Step::Child(w) => {
                edges.insert((v, w));
                v = w;
            }
            Step::Cover(w) => {
                let i = dag.layer_of(v).expect("layered");
                let lw = dag.layer_of(w).expect("layered");
                let mut targets = region.terminals_in(dag, i + 1, lw);
                if !targets.contains(&w) {
                    targets.push(w);
                }
                let query = CoverQuery {
                    roots: &[v],
                    targets: &targets,
                    leaf_targets: &[],
                    region: Some(&region.mask),
                };
                let tree = search
                    .find(query)?
                    .ok_or_else(|| Error::Invariant(format!("recorded cover from {v} to {w} vanished")))?;
                edges.extend(tree.edges);
                v = w;
            }
        }
        free_root = false;
    }
}

struct Prepared {
    dag: LayeredDag,
    terminals: Vec<usize>,
}

fn prepare(g: &IntervalGraph, s: usize, terminals: &[usize]) -> Result<Prepared> {
    g.check_vertex(s)?;
    let mut set = BTreeSet::new();
    for &t in terminals {
        g.check_vertex(t)?;
        if t != s {
            set.insert(t);
        }
    }
    let dag = build_bfs_dag(g, s)?;
    let unreachable: Vec<usize> = set.iter().copied().filter(|&t| dag.layer_of(t).is_none()).collect();
    if !unreachable.is_empty() {
        return Err(Error::Infeasible(format!(
            "terminals {unreachable:?} are unreachable from source {s}"
        )));
    }
    Ok(Prepared {
        dag,
        terminals: set.into_iter().collect(),
    })
}

/// Optimal tree for a source whose interval starts before every other one.
pub fn solve_leftmost(g: &IntervalGraph, s: usize, terminals: &[usize]) -> Result<Solution> {
    g.check_vertex(s)?;
    if g.leftmost() != s {
        return Err(Error::NotLeftmost { vertex: s });
    }
    solve_general(g, s, terminals)
}

/// Optimal tree for any source position.
pub fn solve_general(g: &IntervalGraph, s: usize, terminals: &[usize]) -> Result<Solution> {
    let started = Instant::now();
    let Prepared { dag, terminals } = prepare(g, s, terminals)?;
    let split = split_layers(g, &dag, s)?;
    let mut search = CoverSearch::new(&dag);
    let n = dag.vertex_count();
    let u1: Vec<usize> = split.first_layer().to_vec();
    let on_side = |side: Side| -> Vec<usize> {
        terminals.iter().copied().filter(|&t| split.side_of(t) == Some(side)).collect()
    };
    let (left_t, right_t) = (on_side(Side::Left), on_side(Side::Right));

    let mut edges = BTreeSet::new();
    let optimum;
    if left_t.is_empty() || right_t.is_empty() {
        // Only one side matters: the region behaves like a leftmost source.
        let drop = if left_t.is_empty() { Side::Left } else { Side::Right };
        let mut is_terminal = vec![false; n];
        terminals.iter().for_each(|&t| is_terminal[t] = true);
        let region = Region {
            mask: (0..n)
                .map(|v| dag.layer_of(v).is_some() && split.side_of(v) != Some(drop))
                .collect(),
            is_terminal,
            exact: &[],
        };
        let t = find_opt(&mut search, &region)?;
        optimum = t.d[s];
        if optimum == INF {
            return Err(Error::Invariant("no tree found for a reachable terminal set".into()));
        }
        rebuild(&mut search, &region, &t, s, false, &mut edges)?;
    } else {
        let side_region = |side: Side, side_terms: &[usize]| {
            let mut is_terminal = vec![false; n];
            side_terms.iter().for_each(|&t| is_terminal[t] = true);
            Region {
                mask: (0..n)
                    .map(|v| dag.layer_of(v) == Some(1) || split.side_of(v) == Some(side))
                    .collect(),
                is_terminal,
                exact: &u1,
            }
        };
        let left = side_region(Side::Left, &left_t);
        let right = side_region(Side::Right, &right_t);
        let tl = find_opt(&mut search, &left)?;
        let tr = find_opt(&mut search, &right)?;
        let plan = best_root_plan(&mut search, &split, &terminals, &u1, &tl, &tr)?;
        optimum = plan.cost;
        match plan.kind {
            RootPlan::Descend(u) => {
                edges.insert((s, u));
                rebuild(&mut search, &left, &tl, u, true, &mut edges)?;
                rebuild(&mut search, &right, &tr, u, true, &mut edges)?;
            }
            RootPlan::Pair { u, w_left, w_right } => {
                let targets = pair_targets(&split, &terminals, u, w_left, w_right);
                let roots: Vec<usize> = std::iter::once(s).chain(u).collect();
                let leaf: Vec<usize> = [w_left, w_right].into_iter().filter(|&w| dag.layer_of(w) == Some(1)).collect();
                let query = CoverQuery {
                    roots: &roots,
                    targets: &targets,
                    leaf_targets: &leaf,
                    region: None,
                };
                let tree = search
                    .find(query)?
                    .ok_or_else(|| Error::Invariant("recorded pair cover vanished".into()))?;
                edges.extend(tree.edges);
                if let Some(u) = u {
                    edges.insert((s, u));
                }
                rebuild(&mut search, &left, &tl, w_left, false, &mut edges)?;
                rebuild(&mut search, &right, &tr, w_right, false, &mut edges)?;
            }
        }
    }

    let edges = prune_leaves(edges, &terminals);
    check_tree(&dag, s, &terminals, &edges)?;
    let branching_count = count_branching(&edges, BranchingMode::OutDegree);
    if branching_count as u32 != optimum {
        return Err(Error::Invariant(format!(
            "witness tree has {branching_count} branching vertices but the tables promise {optimum}"
        )));
    }
    Ok(Solution {
        source: s,
        terminals,
        edges,
        branching_count,
        stats: SolverStats {
            cover_queries: search.stats.queries,
            flow_augmentations: search.stats.augmentations,
            wall_time_us: started.elapsed().as_micros() as u64,
        },
    })
}

#[derive(Clone, Copy, Debug)]
enum RootPlan {
    /// The source has the single child `u`, which reaches both sides.
    Descend(usize),
    /// The source (with `u`, if set, as a second root) covers up to `w_left`
    /// and `w_right`, which carry the rest of each side.
    Pair {
        u: Option<usize>,
        w_left: usize,
        w_right: usize,
    },
}

struct Plan {
    cost: u32,
    kind: RootPlan,
}

fn pair_targets(
    split: &crate::layering::SplitLayering,
    terminals: &[usize],
    u: Option<usize>,
    w_left: usize,
    w_right: usize,
) -> Vec<usize> {
    let dag = split.base();
    let mut set: BTreeSet<usize> = terminals
        .iter()
        .copied()
        .filter(|&t| dag.layer_of(t) == Some(1))
        .collect();
    let li = dag.layer_of(w_left).expect("layered");
    let rj = dag.layer_of(w_right).expect("layered");
    set.extend(split.side_range(Side::Left, 2, li).into_iter().filter(|v| terminals.contains(v)));
    set.extend(split.side_range(Side::Right, 2, rj).into_iter().filter(|v| terminals.contains(v)));
    set.insert(w_left);
    set.insert(w_right);
    if let Some(u) = u {
        set.remove(&u);
    }
    set.into_iter().collect()
}

fn best_root_plan(
    search: &mut CoverSearch<'_>,
    split: &crate::layering::SplitLayering,
    terminals: &[usize],
    u1: &[usize],
    tl: &Tables,
    tr: &Tables,
) -> Result<Plan> {
    let dag = split.base();
    let s = dag.source();
    let u1_terms: Vec<usize> = u1.iter().copied().filter(|v| terminals.contains(v)).collect();
    let mut best = Plan {
        cost: INF,
        kind: RootPlan::Descend(s),
    };

    // (a) a single edge from the source into U1.
    for &u in u1 {
        if u1_terms.iter().any(|&t| t != u) {
            continue;
        }
        let cost = plus(1, plus(tl.free(u), tr.free(u)));
        if cost < best.cost {
            best = Plan {
                cost,
                kind: RootPlan::Descend(u),
            };
        }
    }

    let side_candidates = |t: &Tables, side: Side, with_u1: bool| -> Vec<usize> {
        let mut c: Vec<usize> = (0..dag.vertex_count())
            .filter(|&v| t.d[v] < INF)
            .filter(|&v| split.side_of(v) == Some(side) || (with_u1 && dag.layer_of(v) == Some(1)))
            .collect();
        c.sort_by_key(|&v| (t.d[v], dag.layer_of(v), v));
        c
    };

    // (b) a cover rooted at the source alone; (c) the source plus one of its
    // neighbours as joint roots, both charged.
    let mut configs: Vec<(Option<usize>, u32)> = vec![(None, 1)];
    configs.extend(u1.iter().map(|&u| (Some(u), 2)));
    for (u, charge) in configs {
        let with_u1 = u.is_none();
        let lefts = side_candidates(tl, Side::Left, with_u1);
        let rights = side_candidates(tr, Side::Right, with_u1);
        let (Some(&l0), Some(&r0)) = (lefts.first(), rights.first()) else {
            continue;
        };
        if plus(charge, plus(tl.d[l0], tr.d[r0])) >= best.cost {
            continue;
        }
        let roots: Vec<usize> = std::iter::once(s).chain(u).collect();
        let leaf_of = |w: usize| -> Vec<usize> {
            if dag.layer_of(w) == Some(1) {
                vec![w]
            } else {
                Vec::new()
            }
        };
        // Each side must be coverable on its own before pairing.
        let mut feasible = |side_list: &[usize], side: Side| -> Result<Vec<usize>> {
            let mut keep = Vec::new();
            for &w in side_list {
                let mut targets = pair_targets(split, terminals, u, w, w);
                if side == Side::Left {
                    targets.retain(|&x| split.side_of(x) != Some(Side::Right));
                } else {
                    targets.retain(|&x| split.side_of(x) != Some(Side::Left));
                }
                if targets.is_empty() {
                    keep.push(w);
                    continue;
                }
                let leaf = leaf_of(w);
                let query = CoverQuery {
                    roots: &roots,
                    targets: &targets,
                    leaf_targets: &leaf,
                    region: None,
                };
                if search.exists(query)? {
                    keep.push(w);
                }
            }
            Ok(keep)
        };
        let lefts = feasible(&lefts, Side::Left)?;
        let rights = feasible(&rights, Side::Right)?;
        let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
        for &l in &lefts {
            for &r in &rights {
                if l != r {
                    pairs.push((plus(charge, plus(tl.d[l], tr.d[r])), l, r));
                }
            }
        }
        pairs.sort_unstable();
        for (cost, l, r) in pairs {
            if cost >= best.cost {
                break;
            }
            let targets = pair_targets(split, terminals, u, l, r);
            let mut leaf = leaf_of(l);
            leaf.extend(leaf_of(r));
            let query = CoverQuery {
                roots: &roots,
                targets: &targets,
                leaf_targets: &leaf,
                region: None,
            };
            if search.exists(query)? {
                best = Plan {
                    cost,
                    kind: RootPlan::Pair {
                        u,
                        w_left: l,
                        w_right: r,
                    },
                };
                break;
            }
        }
    }
    if best.cost == INF {
        return Err(Error::Invariant("no root configuration reaches every terminal".into()));
    }
    Ok(best)
}

/// Drops non-terminal leaves until every leaf is a terminal.
fn prune_leaves(edges: BTreeSet<(usize, usize)>, terminals: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = edges;
    loop {
        let tails: BTreeSet<usize> = edges.iter().map(|&(u, _)| u).collect();
        let before = edges.len();
        edges.retain(|&(_, v)| tails.contains(&v) || terminals.contains(&v));
        if edges.len() == before {
            return edges.into_iter().collect();
        }
    }
}

/// Confirms the edge set is an out-tree of layered edges from `s` that reaches
/// every terminal.
pub fn check_tree(dag: &LayeredDag, s: usize, terminals: &[usize], edges: &[(usize, usize)]) -> Result<()> {
    let mut parent = BTreeMap::new();
    for &(u, v) in edges {
        if !dag.has_edge(u, v) {
            return Err(Error::Invariant(format!("({u}, {v}) is not a shortest-path edge")));
        }
        if parent.insert(v, u).is_some() {
            return Err(Error::Invariant(format!("vertex {v} has two parents")));
        }
    }
    for &t in terminals {
        let mut at = t;
        while at != s {
            match parent.get(&at) {
                Some(&p) => at = p,
                None => return Err(Error::Invariant(format!("terminal {t} is not connected to the source"))),
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub accepted: bool,
    pub optimum: Option<usize>,
    pub diagnostic: Option<String>,
}

/// Is there a tree with at most `m` branching vertices?
pub fn decide(g: &IntervalGraph, s: usize, terminals: &[usize], m: usize) -> Decision {
    match solve_general(g, s, terminals) {
        Ok(sol) => Decision {
            accepted: sol.branching_count <= m,
            optimum: Some(sol.branching_count),
            diagnostic: None,
        },
        Err(e) => Decision {
            accepted: false,
            optimum: None,
            diagnostic: Some(e.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain4() -> IntervalGraph {
        IntervalGraph::from_decimal_pairs(&[("0", "1.5"), ("1", "2.5"), ("2", "3.5"), ("3", "4.5")]).unwrap()
    }

    fn star() -> IntervalGraph {
        IntervalGraph::from_decimal_pairs(&[("0", "10"), ("1", "2"), ("4", "5"), ("7", "8")]).unwrap()
    }

    #[test]
    fn chain_needs_no_branching() {
        let sol = solve_leftmost(&chain4(), 0, &[3]).unwrap();
        assert_eq!(sol.branching_count, 0);
        assert_eq!(sol.edges, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn star_branches_once() {
        let sol = solve_leftmost(&star(), 0, &[1, 2, 3]).unwrap();
        assert_eq!(sol.branching_count, 1);
        assert_eq!(sol.edges.len(), 3);
    }

    #[test]
    fn symmetric_chain_branches_at_source() {
        let g = IntervalGraph::from_decimal_pairs(&[("4", "6"), ("2", "4.5"), ("0", "2.5"), ("5.5", "8"), ("7.5", "10")])
            .unwrap();
        let sol = solve_general(&g, 0, &[2, 4]).unwrap();
        assert_eq!(sol.branching_count, 1);
        assert_eq!(sol.edges, vec![(0, 1), (0, 3), (1, 2), (3, 4)]);
    }

    #[test]
    fn two_hosts_in_first_layer() {
        // s=0, u1=1, u2=2, a=3, b=4, c=5, d=6: u1 alone reaches a and b,
        // u2 alone reaches c and d, so s, u1 and u2 all branch.
        let g = IntervalGraph::from_decimal_pairs(&[
            ("0", "10"),
            ("-3", "1"),
            ("9", "13"),
            ("-5", "-2"),
            ("-4.5", "-1"),
            ("11", "15"),
            ("12", "16"),
        ])
        .unwrap();
        let sol = solve_general(&g, 0, &[3, 4, 5, 6]).unwrap();
        assert_eq!(sol.branching_count, 3);
    }

    #[test]
    fn leftmost_rejects_interior_source() {
        let g = IntervalGraph::from_decimal_pairs(&[("4", "6"), ("2", "4.5"), ("0", "2.5")]).unwrap();
        assert_eq!(solve_leftmost(&g, 0, &[2]), Err(Error::NotLeftmost { vertex: 0 }));
    }

    #[test]
    fn unreachable_terminal_is_infeasible() {
        let g = IntervalGraph::from_decimal_pairs(&[("0", "1"), ("0.5", "2"), ("5", "6")]).unwrap();
        assert!(matches!(solve_general(&g, 0, &[2]), Err(Error::Infeasible(_))));
        let d = decide(&g, 0, &[2], 5);
        assert!(!d.accepted && d.diagnostic.is_some());
    }

    #[test]
    fn decide_thresholds() {
        assert!(decide(&chain4(), 0, &[3], 0).accepted);
        assert!(!decide(&star(), 0, &[1, 2, 3], 0).accepted);
        assert!(decide(&star(), 0, &[1, 2, 3], 1).accepted);
    }

    #[test]
    fn empty_terminal_set() {
        let sol = solve_general(&chain4(), 0, &[]).unwrap();
        assert_eq!(sol.branching_count, 0);
        assert!(sol.edges.is_empty());
    }

    #[test]
    fn branching_conventions() {
        let path = [(0, 1), (1, 2), (2, 3)];
        assert_eq!(count_branching(&path, BranchingMode::OutDegree), 0);
        assert_eq!(count_branching(&path, BranchingMode::UndirectedDegree), 0);
        let cherry = [(0, 1), (0, 2)];
        assert_eq!(count_branching(&cherry, BranchingMode::OutDegree), 1);
        assert_eq!(count_branching(&cherry, BranchingMode::UndirectedDegree), 0);
        let binary = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)];
        assert_eq!(count_branching(&binary, BranchingMode::OutDegree), 3);
    }
}
