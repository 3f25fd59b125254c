//! BFS layering of an interval graph into the directed DAG `G_BFS`, plus the
//! left/right split needed when the source sits in the middle of the line.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::interval::IntervalGraph;

/// Layers `R_0 = {s}, R_1, ...` of vertices at equal distance from the source,
/// with only the edges between consecutive layers, oriented away from `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredDag {
    source: usize,
    layers: Vec<Vec<usize>>,
    layer_of: Vec<Option<usize>>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    unreachable: Vec<usize>,
}

impl LayeredDag {
    /// Assembles a layered DAG from explicit layers and directed edges.
    ///
    /// Every edge must join consecutive layers in the forward direction, the
    /// first layer must be exactly `{source}`, and every other layered vertex
    /// needs an in-edge. Vertices in no layer are recorded as unreachable.
    pub fn from_parts(
        vertex_count: usize,
        source: usize,
        layers: Vec<Vec<usize>>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        if source >= vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: source,
                len: vertex_count,
            });
        }
        if layers.first().map(Vec::as_slice) != Some(&[source][..]) {
            return Err(Error::InvalidLayering("first layer must be exactly the source".into()));
        }
        let mut layer_of = vec![None; vertex_count];
        for (i, layer) in layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(Error::InvalidLayering(format!("layer {i} is empty")));
            }
            for &v in layer {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        len: vertex_count,
                    });
                }
                if layer_of[v].replace(i).is_some() {
                    return Err(Error::InvalidLayering(format!("vertex {v} appears twice")));
                }
            }
        }
        let mut out_edges = vec![Vec::new(); vertex_count];
        let mut in_edges = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            match (layer_of.get(u).copied().flatten(), layer_of.get(v).copied().flatten()) {
                (Some(a), Some(b)) if b == a + 1 => {
                    if !out_edges[u].contains(&v) {
                        out_edges[u].push(v);
                        in_edges[v].push(u);
                    }
                }
                _ => {
                    return Err(Error::InvalidLayering(format!(
                        "edge ({u}, {v}) does not join consecutive layers"
                    )))
                }
            }
        }
        for layer in layers.iter().skip(1) {
            for &v in layer {
                if in_edges[v].is_empty() {
                    return Err(Error::InvalidLayering(format!("vertex {v} has no in-edge")));
                }
            }
        }
        for list in out_edges.iter_mut().chain(in_edges.iter_mut()) {
            list.sort_unstable();
        }
        let unreachable = (0..vertex_count).filter(|&v| layer_of[v].is_none()).collect();
        Ok(Self {
            source,
            layers,
            layer_of,
            out_edges,
            in_edges,
            unreachable,
        })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn vertex_count(&self) -> usize {
        self.layer_of.len()
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &[usize] {
        self.layers.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Index of the last layer.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer_of(&self, v: usize) -> Option<usize> {
        self.layer_of[v]
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_edges[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_edges
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn unreachable(&self) -> &[usize] {
        &self.unreachable
    }

    /// Forward reachability for every layered vertex.
    pub fn reachability(&self) -> Reachability {
        let n = self.vertex_count();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for layer in self.layers.iter().rev() {
            for &v in layer {
                bits[v * words + v / 64] |= 1 << (v % 64);
                for &w in &self.out_edges[v] {
                    for k in 0..words {
                        let add = bits[w * words + k];
                        bits[v * words + k] |= add;
                    }
                }
            }
        }
        Reachability { words, bits }
    }
}

/// Bitset of vertices reachable (along DAG edges) from each vertex, itself
/// included.
#[derive(Clone, Debug)]
pub struct Reachability {
    words: usize,
    bits: Vec<u64>,
}

impl Reachability {
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        self.bits[from * self.words + to / 64] & (1 << (to % 64)) != 0
    }
}

/// Runs BFS from `source` and keeps only the edges between consecutive
/// layers. Vertices inside a layer are listed in `≺` order.
pub fn build_bfs_dag(graph: &IntervalGraph, source: usize) -> Result<LayeredDag> {
    graph.check_vertex(source)?;
    let n = graph.len();
    let mut dist: Vec<Option<usize>> = vec![None; n];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    let mut layers: Vec<Vec<usize>> = vec![vec![source]];
    let mut edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &w in graph.neighbors(u) {
            match dist[w] {
                None => {
                    dist[w] = Some(du + 1);
                    if layers.len() == du + 1 {
                        layers.push(Vec::new());
                    }
                    layers[du + 1].push(w);
                    queue.push_back(w);
                    edges.push((u, w));
                }
                Some(dw) if dw == du + 1 => edges.push((u, w)),
                _ => {}
            }
        }
    }
    for layer in &mut layers {
        layer.sort_by_key(|&v| graph.interval(v).right());
    }
    LayeredDag::from_parts(n, source, layers, &edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// For a source in general position: layers at distance two or more split
/// into the part strictly left of the source interval and the part strictly
/// right of it. Layer 1 (`U_1`) stays unsplit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitLayering {
    base: LayeredDag,
    side: Vec<Option<Side>>,
}

impl SplitLayering {
    pub fn base(&self) -> &LayeredDag {
        &self.base
    }

    /// `U_1`, the neighbours of the source.
    pub fn first_layer(&self) -> &[usize] {
        self.base.layer(1)
    }

    /// Index of the last nonempty layer.
    pub fn alpha(&self) -> usize {
        self.base.depth()
    }

    pub fn side_of(&self, v: usize) -> Option<Side> {
        self.side[v]
    }

    /// `L_i` or `R_i` for `i >= 2`.
    pub fn side_layer(&self, side: Side, i: usize) -> Vec<usize> {
        if i < 2 {
            return Vec::new();
        }
        self.base
            .layer(i)
            .iter()
            .copied()
            .filter(|&v| self.side[v] == Some(side))
            .collect()
    }

    /// `L[i, j]` or `R[i, j]`.
    pub fn side_range(&self, side: Side, i: usize, j: usize) -> Vec<usize> {
        (i.max(2)..=j).flat_map(|k| self.side_layer(side, k)).collect()
    }
}

/// Assigns every vertex at distance `>= 2` to the left or right side of `s`.
pub fn split_layers(graph: &IntervalGraph, dag: &LayeredDag, source: usize) -> Result<SplitLayering> {
    if dag.source() != source {
        return Err(Error::InvalidArgument(format!(
            "layering is rooted at {}, not {source}",
            dag.source()
        )));
    }
    let s = graph.interval(source);
    let mut side = vec![None; graph.len()];
    for layer in dag.layers().iter().skip(2) {
        for &v in layer {
            let iv = graph.interval(v);
            side[v] = if iv.right() < s.left() {
                Some(Side::Left)
            } else if iv.left() > s.right() {
                Some(Side::Right)
            } else {
                return Err(Error::Invariant(format!(
                    "vertex {v} is at distance >= 2 yet overlaps the source"
                )));
            };
        }
    }
    for (u, v) in dag.edges() {
        if let (Some(a), Some(b)) = (side[u], side[v]) {
            if a != b {
                return Err(Error::Invariant(format!("edge ({u}, {v}) crosses sides")));
            }
        }
    }
    Ok(SplitLayering {
        base: dag.clone(),
        side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_layers() {
        let g = IntervalGraph::from_decimal_pairs(&[("0", "1.5"), ("1", "2.5"), ("2", "3.5"), ("3", "4.5")])
            .unwrap();
        let dag = build_bfs_dag(&g, 0).unwrap();
        assert_eq!(dag.layers(), &[vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(dag.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn intra_layer_edges_are_dropped() {
        let g = IntervalGraph::from_decimal_pairs(&[
            ("0", "1.5"),
            ("1", "2.5"),
            ("2", "3.5"),
            ("3", "4.5"),
            ("1.2", "4"),
        ])
        .unwrap();
        let dag = build_bfs_dag(&g, 0).unwrap();
        assert_eq!(dag.layers(), &[vec![0], vec![1, 4], vec![2, 3]]);
        assert!(!dag.has_edge(1, 4) && !dag.has_edge(4, 1));
        assert!(dag.has_edge(4, 3) && dag.has_edge(1, 2) && dag.has_edge(4, 2));
    }

    #[test]
    fn star_layers() {
        let g = IntervalGraph::from_decimal_pairs(&[("0", "10"), ("1", "2"), ("4", "5"), ("7", "8")]).unwrap();
        let dag = build_bfs_dag(&g, 0).unwrap();
        assert_eq!(dag.layers(), &[vec![0], vec![1, 2, 3]]);
        assert_eq!(dag.edges().count(), 3);
    }

    #[test]
    fn unreachable_vertices_are_recorded() {
        let g = IntervalGraph::from_decimal_pairs(&[("0", "1"), ("0.5", "2"), ("5", "6")]).unwrap();
        let dag = build_bfs_dag(&g, 0).unwrap();
        assert_eq!(dag.unreachable(), &[2]);
        assert_eq!(dag.layer_of(2), None);
    }

    #[test]
    fn symmetric_chain_split() {
        // c2 - c1 - s - d1 - d2
        let g = IntervalGraph::from_decimal_pairs(&[
            ("4", "6"),
            ("2", "4.5"),
            ("0", "2.5"),
            ("5.5", "8"),
            ("7.5", "10"),
        ])
        .unwrap();
        let dag = build_bfs_dag(&g, 0).unwrap();
        let split = split_layers(&g, &dag, 0).unwrap();
        assert_eq!(split.first_layer(), &[1, 3]);
        assert_eq!(split.side_layer(Side::Left, 2), vec![2]);
        assert_eq!(split.side_layer(Side::Right, 2), vec![4]);
        assert_eq!(split.alpha(), 2);
    }

    #[test]
    fn leftmost_source_has_empty_left_side() {
        let g = IntervalGraph::from_decimal_pairs(&[("0", "1.5"), ("1", "2.5"), ("2", "3.5"), ("3", "4.5")])
            .unwrap();
        let dag = build_bfs_dag(&g, 0).unwrap();
        let split = split_layers(&g, &dag, 0).unwrap();
        assert!(split.side_range(Side::Left, 2, split.alpha()).is_empty());
        assert_eq!(split.side_range(Side::Right, 2, 3), vec![2, 3]);
    }

    #[test]
    fn from_parts_rejects_skipping_edges() {
        let err = LayeredDag::from_parts(3, 0, vec![vec![0], vec![1], vec![2]], &[(0, 1), (0, 2)]);
        assert!(matches!(err, Err(Error::InvalidLayering(_))));
        let err = LayeredDag::from_parts(3, 0, vec![vec![0], vec![1], vec![2]], &[(0, 1)]);
        assert!(matches!(err, Err(Error::InvalidLayering(_))));
    }

    #[test]
    fn reachability_follows_edges() {
        let dag = LayeredDag::from_parts(
            5,
            0,
            vec![vec![0], vec![1, 2], vec![3, 4]],
            &[(0, 1), (0, 2), (1, 3), (2, 4)],
        )
        .unwrap();
        let reach = dag.reachability();
        assert!(reach.reaches(0, 4) && reach.reaches(1, 3) && reach.reaches(2, 2));
        assert!(!reach.reaches(1, 4) && !reach.reaches(3, 1));
    }
}
