//! Covers: shortest-path out-trees in the layered DAG in which only the root
//! may branch and every leaf is a target. Existence and construction reduce
//! to vertex-disjoint paths from the root to a sink attached to the targets.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::flow::{max_vertex_disjoint, Capacity, FlowNetwork, NodeId};
use crate::layering::{LayeredDag, Reachability, Side, SplitLayering};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverTree {
    pub roots: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub targets: Vec<usize>,
}

impl CoverTree {
    pub fn vertices(&self) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = self.roots.iter().copied().collect();
        for &(u, v) in &self.edges {
            set.insert(u);
            set.insert(v);
        }
        set
    }

    /// Checks every condition of a cover against `dag`: tree edges are DAG
    /// edges, non-roots have in-degree one and out-degree at most one, leaves
    /// are targets, and every target hangs below some root.
    pub fn validate(&self, dag: &LayeredDag) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(format!("cover: {msg}")));
        let roots: BTreeSet<usize> = self.roots.iter().copied().collect();
        let targets: BTreeSet<usize> = self.targets.iter().copied().collect();
        let mut parent = BTreeMap::new();
        let mut out_degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &(u, v) in &self.edges {
            if !dag.has_edge(u, v) {
                return fail(format!("({u}, {v}) is not a layered edge"));
            }
            if roots.contains(&v) {
                return fail(format!("edge ({u}, {v}) enters a root"));
            }
            if parent.insert(v, u).is_some() {
                return fail(format!("vertex {v} has two parents"));
            }
            *out_degree.entry(u).or_default() += 1;
        }
        for (&v, &deg) in &out_degree {
            if deg > 1 && !roots.contains(&v) {
                return fail(format!("non-root {v} has out-degree {deg}"));
            }
        }
        for &v in parent.keys() {
            if !out_degree.contains_key(&v) && !targets.contains(&v) {
                return fail(format!("leaf {v} is not a target"));
            }
            let mut at = v;
            while let Some(&p) = parent.get(&at) {
                at = p;
            }
            if !roots.contains(&at) {
                return fail(format!("vertex {v} does not hang below a root"));
            }
        }
        for &x in &targets {
            if !parent.contains_key(&x) {
                return fail(format!("target {x} is not covered"));
            }
        }
        Ok(())
    }
}

/// A cover request: the roots (one or two), the target set, which targets must
/// stay leaves, and an optional mask restricting the vertices paths may use.
#[derive(Clone, Copy, Debug)]
pub struct CoverQuery<'a> {
    pub roots: &'a [usize],
    pub targets: &'a [usize],
    pub leaf_targets: &'a [usize],
    pub region: Option<&'a [bool]>,
}

impl<'a> CoverQuery<'a> {
    pub fn rooted(root: &'a [usize], targets: &'a [usize]) -> Self {
        Self {
            roots: root,
            targets,
            leaf_targets: &[],
            region: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CoverStats {
    pub queries: u64,
    pub augmentations: u64,
}

/// Answers cover queries against one DAG, caching its reachability and
/// counting the work done.
pub struct CoverSearch<'a> {
    dag: &'a LayeredDag,
    reach: Reachability,
    pub stats: CoverStats,
}

#[derive(Clone, Copy)]
enum Half {
    Whole(usize),
    In(usize),
    Out(usize),
    Root,
    Sink,
}

impl<'a> CoverSearch<'a> {
    pub fn new(dag: &'a LayeredDag) -> Self {
        Self {
            dag,
            reach: dag.reachability(),
            stats: CoverStats::default(),
        }
    }

    pub fn dag(&self) -> &'a LayeredDag {
        self.dag
    }

    pub fn reaches(&self, from: usize, to: usize) -> bool {
        self.reach.reaches(from, to)
    }

    /// Whether a cover exists, without building it.
    pub fn exists(&mut self, query: CoverQuery<'_>) -> Result<bool> {
        Ok(self.run(query, false)?.is_some())
    }

    pub fn find(&mut self, query: CoverQuery<'_>) -> Result<Option<CoverTree>> {
        self.run(query, true)
    }

    fn run(&mut self, query: CoverQuery<'_>, build: bool) -> Result<Option<CoverTree>> {
        let dag = self.dag;
        let CoverQuery {
            roots,
            targets,
            leaf_targets,
            region,
        } = query;
        if targets.is_empty() {
            return Err(Error::EmptyTargets);
        }
        if roots.is_empty() {
            return Err(Error::InvalidArgument("cover needs a root".into()));
        }
        let n = dag.vertex_count();
        for &v in roots.iter().chain(targets) {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, len: n });
            }
        }
        let root_layer = roots
            .iter()
            .filter_map(|&r| dag.layer_of(r))
            .min()
            .ok_or_else(|| Error::InvalidArgument("cover root is not layered".into()))?;
        for &x in targets {
            match dag.layer_of(x) {
                Some(l) if l > root_layer && !roots.contains(&x) => {}
                Some(_) => return Err(Error::TargetNotAfterRoot { target: x }),
                None => return Ok(None),
            }
        }
        self.stats.queries += 1;
        let inside = |v: usize| region.is_none_or(|mask| mask[v]);
        let is_root = |v: usize| roots.contains(&v);
        let target_set: BTreeSet<usize> = targets.iter().copied().collect();
        for &x in &target_set {
            if !inside(x) || !roots.iter().any(|&r| self.reach.reaches(r, x)) {
                return Ok(None);
            }
        }
        let max_layer = target_set
            .iter()
            .map(|&x| dag.layer_of(x).expect("checked"))
            .max()
            .expect("nonempty");

        // Build the split network.
        let mut net = FlowNetwork::new();
        let root = net.add_node(Capacity::Unbounded);
        let sink = net.add_node(Capacity::Unbounded);
        let mut halves: Vec<Half> = vec![Half::Root, Half::Sink];
        let mut in_node: Vec<Option<NodeId>> = vec![None; n];
        let mut out_node: Vec<Option<NodeId>> = vec![None; n];
        for layer in root_layer + 1..=max_layer {
            for &v in dag.layer(layer) {
                if is_root(v) || !inside(v) || !roots.iter().any(|&r| self.reach.reaches(r, v)) {
                    continue;
                }
                if target_set.contains(&v) {
                    let i = net.add_node(Capacity::Unit);
                    halves.push(Half::In(v));
                    in_node[v] = Some(i);
                    net.add_arc(i, sink);
                    if !leaf_targets.contains(&v) {
                        let o = net.add_node(Capacity::Unit);
                        halves.push(Half::Out(v));
                        out_node[v] = Some(o);
                        net.add_arc(root, o);
                    }
                } else {
                    let w = net.add_node(Capacity::Unit);
                    halves.push(Half::Whole(v));
                    in_node[v] = Some(w);
                    out_node[v] = Some(w);
                }
            }
        }
        let mut root_of: BTreeMap<usize, usize> = BTreeMap::new();
        for &r in roots {
            for &w in dag.out_neighbors(r) {
                if let Some(i) = in_node[w] {
                    if let std::collections::btree_map::Entry::Vacant(e) = root_of.entry(w) {
                        e.insert(r);
                        net.add_arc(root, i);
                    }
                }
            }
        }
        for v in 0..n {
            let Some(o) = out_node[v] else { continue };
            for &w in dag.out_neighbors(v) {
                if let Some(i) = in_node[w] {
                    net.add_arc(o, i);
                }
            }
        }

        let found = max_vertex_disjoint(&net, root, sink);
        self.stats.augmentations += found.augmentations as u64;
        if found.paths.len() < target_set.len() {
            return Ok(None);
        }
        if !build {
            return Ok(Some(CoverTree {
                roots: roots.to_vec(),
                edges: Vec::new(),
                targets: target_set.into_iter().collect(),
            }));
        }

        // Contract the split pairs: a path root -> x_out -> ... continues the
        // tree below x, so its first arc is dropped; the arc into the sink is
        // dropped everywhere.
        let mut edges = BTreeSet::new();
        for path in &found.paths {
            let mut prev: Option<usize> = None;
            for &node in &path[1..] {
                match halves[node] {
                    Half::Sink | Half::Root => {}
                    Half::Out(v) if prev.is_none() => prev = Some(v),
                    Half::Whole(v) | Half::In(v) | Half::Out(v) => {
                        let from = match prev {
                            Some(p) => p,
                            None => root_of[&v],
                        };
                        if from != v {
                            edges.insert((from, v));
                        }
                        prev = Some(v);
                    }
                }
            }
        }
        let tree = CoverTree {
            roots: roots.to_vec(),
            edges: edges.into_iter().collect(),
            targets: target_set.into_iter().collect(),
        };
        tree.validate(dag)?;
        Ok(Some(tree))
    }
}

/// Cover rooted at `v` for the target set `targets`, or `None` when no cover
/// exists.
pub fn find_cover(dag: &LayeredDag, v: usize, targets: &[usize]) -> Result<Option<CoverTree>> {
    CoverSearch::new(dag).find(CoverQuery::rooted(&[v], targets))
}

/// Roots of a pair cover: either a single vertex, or the source together with
/// one of its neighbours, each of which may start paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairRoot {
    Single(usize),
    Pair(usize, usize),
}

/// Cover for `(w_left, w_right)`: the targets are the terminals on the left
/// side up to the layer of `w_left`, those on the right side up to the layer
/// of `w_right`, and the two named vertices.
pub fn find_pair_cover(
    split: &SplitLayering,
    roots: PairRoot,
    w_left: usize,
    w_right: usize,
    terminals: &[usize],
) -> Result<Option<CoverTree>> {
    let dag = split.base();
    let layer = |v: usize| {
        dag.layer_of(v)
            .ok_or(Error::Unreachable { from: dag.source(), to: v })
    };
    let (li, rj) = (layer(w_left)?, layer(w_right)?);
    let mut targets: BTreeSet<usize> = [w_left, w_right].into_iter().collect();
    targets.extend(split.side_range(Side::Left, 2, li).into_iter().filter(|v| terminals.contains(v)));
    targets.extend(split.side_range(Side::Right, 2, rj).into_iter().filter(|v| terminals.contains(v)));
    let roots: Vec<usize> = match roots {
        PairRoot::Single(r) => vec![r],
        PairRoot::Pair(s, u) => vec![s, u],
    };
    let targets: Vec<usize> = targets.into_iter().filter(|v| !roots.contains(v)).collect();
    CoverSearch::new(dag).find(CoverQuery::rooted(&roots, &targets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IntervalGraph;
    use crate::layering::{build_bfs_dag, split_layers};

    fn dag(n: usize, layers: Vec<Vec<usize>>, edges: &[(usize, usize)]) -> LayeredDag {
        LayeredDag::from_parts(n, layers[0][0], layers, edges).unwrap()
    }

    #[test]
    fn single_target_gives_a_path() {
        let d = dag(4, vec![vec![0], vec![1], vec![2], vec![3]], &[(0, 1), (1, 2), (2, 3)]);
        let tree = find_cover(&d, 0, &[3]).unwrap().unwrap();
        assert_eq!(tree.edges, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn shared_middle_vertex_blocks_cover() {
        // v=0 -> a=1 -> x1=2, x2=3
        let d = dag(4, vec![vec![0], vec![1], vec![2, 3]], &[(0, 1), (1, 2), (1, 3)]);
        assert!(find_cover(&d, 0, &[2, 3]).unwrap().is_none());
    }

    #[test]
    fn one_path_through_both_targets() {
        let d = dag(3, vec![vec![0], vec![1], vec![2]], &[(0, 1), (1, 2)]);
        let tree = find_cover(&d, 0, &[1, 2]).unwrap().unwrap();
        assert_eq!(tree.edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn empty_targets_rejected() {
        let d = dag(2, vec![vec![0], vec![1]], &[(0, 1)]);
        assert_eq!(find_cover(&d, 0, &[]), Err(Error::EmptyTargets));
        assert_eq!(find_cover(&d, 1, &[0]), Err(Error::TargetNotAfterRoot { target: 0 }));
    }

    #[test]
    fn leaf_targets_cannot_be_passed_through() {
        let d = dag(3, vec![vec![0], vec![1], vec![2]], &[(0, 1), (1, 2)]);
        let mut search = CoverSearch::new(&d);
        let query = CoverQuery {
            roots: &[0],
            targets: &[1, 2],
            leaf_targets: &[1],
            region: None,
        };
        assert!(!search.exists(query).unwrap());
    }

    fn symmetric_chain() -> IntervalGraph {
        // s=0, c1=1, c2=2, d1=3, d2=4
        IntervalGraph::from_decimal_pairs(&[("4", "6"), ("2", "4.5"), ("0", "2.5"), ("5.5", "8"), ("7.5", "10")])
            .unwrap()
    }

    #[test]
    fn pair_cover_on_symmetric_chain() {
        let g = symmetric_chain();
        let d = build_bfs_dag(&g, 0).unwrap();
        let split = split_layers(&g, &d, 0).unwrap();
        let tree = find_pair_cover(&split, PairRoot::Single(0), 2, 4, &[2, 4]).unwrap().unwrap();
        assert_eq!(tree.edges, vec![(0, 1), (0, 3), (1, 2), (3, 4)]);
    }

    #[test]
    fn pair_cover_fails_on_shared_bottleneck() {
        // s=0 with a single neighbour u=1 feeding both sides.
        let g = IntervalGraph::from_decimal_pairs(&[
            ("4", "5"),
            ("3", "6"),
            ("1", "3.5"),
            ("5.5", "8"),
            ("0", "1.5"),
            ("7.5", "9"),
        ])
        .unwrap();
        let d = build_bfs_dag(&g, 0).unwrap();
        let split = split_layers(&g, &d, 0).unwrap();
        assert!(find_pair_cover(&split, PairRoot::Single(0), 2, 3, &[2, 3]).unwrap().is_none());
        let tree = find_pair_cover(&split, PairRoot::Pair(0, 1), 2, 3, &[2, 3]).unwrap().unwrap();
        assert_eq!(tree.edges, vec![(1, 2), (1, 3)]);
    }
}
