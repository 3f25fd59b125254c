//! Interval families, the right-endpoint order `≺`, overlap adjacency, BFS
//! distances and greedy shortest paths.
//!
//! Endpoints are exact rationals so that comparisons between endpoints that
//! differ by small offsets (0.01, 0.1, ...) never depend on float rounding.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// An exact rational endpoint.
pub type Endpoint = Ratio<i64>;

/// Parses `"3"`, `"-1.25"`, or `"7/3"` into an exact endpoint.
pub fn parse_endpoint(text: &str) -> Option<Endpoint> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = i64::from_str(num.trim()).ok()?;
        let den = i64::from_str(den.trim()).ok()?;
        if den == 0 {
            return None;
        }
        return Some(Ratio::new(num, den));
    }
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut scale: i64 = 1;
    for _ in 0..frac_part.len() {
        scale = scale.checked_mul(10)?;
    }
    let int_value: i64 = if int_part.is_empty() { 0 } else { int_part.parse().ok()? };
    let frac_value: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().ok()? };
    let mut num = int_value.checked_mul(scale)?.checked_add(frac_value)?;
    if negative {
        num = -num;
    }
    Some(Ratio::new(num, scale))
}

/// Formats an endpoint as a terminating decimal when possible, `p/q` otherwise.
pub fn format_endpoint(value: &Endpoint) -> String {
    let mut den = *value.denom();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while den % 2 == 0 {
        den /= 2;
        twos += 1;
    }
    while den % 5 == 0 {
        den /= 5;
        fives += 1;
    }
    if den != 1 {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return value.numer().to_string();
    }
    let scale = 10i64.pow(digits);
    let scaled = (value * Ratio::from_integer(scale)).to_integer();
    let sign = if scaled < 0 { "-" } else { "" };
    let abs = scaled.abs();
    format!(
        "{sign}{}.{:0width$}",
        abs / scale,
        abs % scale,
        width = digits as usize
    )
}

/// A closed interval `[left, right]` with `left < right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    left: Endpoint,
    right: Endpoint,
}

impl Interval {
    pub fn new(left: Endpoint, right: Endpoint) -> Result<Self> {
        if left >= right {
            return Err(Error::InvertedInterval {
                vertex: 0,
                left,
                right,
            });
        }
        Ok(Self { left, right })
    }

    /// Builds an interval from integer numerators over a shared denominator.
    pub fn scaled(left: i64, right: i64, denominator: i64) -> Result<Self> {
        Self::new(Ratio::new(left, denominator), Ratio::new(right, denominator))
    }

    pub fn left(&self) -> Endpoint {
        self.left
    }

    pub fn right(&self) -> Endpoint {
        self.right
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.left.max(other.left) <= self.right.min(other.right)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_endpoint(&self.left), format_endpoint(&self.right))
    }
}

/// Direction of a cardinal path on one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Towards larger right endpoints (also "north" on a vertical axis).
    East,
    /// Towards smaller left endpoints.
    West,
}

/// An ordered vertex sequence in some host graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub vertices: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}

/// An interval graph: vertex `i` is `intervals[i]`, and two vertices are
/// adjacent exactly when their intervals intersect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalGraph {
    intervals: Vec<Interval>,
    adjacency: Vec<Vec<usize>>,
}

impl IntervalGraph {
    /// Validates endpoint distinctness and derives the overlap adjacency.
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut endpoints: Vec<(Endpoint, usize)> = intervals
            .iter()
            .enumerate()
            .flat_map(|(v, iv)| [(iv.left, v), (iv.right, v)])
            .collect();
        endpoints.sort();
        for pair in endpoints.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateEndpoint {
                    value: pair[0].0,
                    first: pair[0].1,
                    second: pair[1].1,
                });
            }
        }

        let n = intervals.len();
        let mut adjacency = vec![Vec::new(); n];
        // Sweep by left endpoint: each interval meets every earlier-starting
        // interval that is still open.
        let mut by_left: Vec<usize> = (0..n).collect();
        by_left.sort_by_key(|&v| intervals[v].left);
        let mut open: Vec<usize> = Vec::new();
        for &v in &by_left {
            let left = intervals[v].left;
            open.retain(|&u| intervals[u].right >= left);
            for &u in &open {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
            open.push(v);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            intervals,
            adjacency,
        })
    }

    /// Convenience constructor from `(left, right)` pairs.
    pub fn from_pairs<I, T>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, T)>,
        T: Into<Endpoint>,
    {
        let intervals = pairs
            .into_iter()
            .enumerate()
            .map(|(v, (l, r))| {
                let (left, right) = (l.into(), r.into());
                Interval::new(left, right).map_err(|_| Error::InvertedInterval {
                    vertex: v,
                    left,
                    right,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(intervals)
    }

    /// Builds a graph from decimal strings, e.g. `[("0", "1.5"), ("1", "2.5")]`.
    pub fn from_decimal_pairs(pairs: &[(&str, &str)]) -> Result<Self> {
        let mut intervals = Vec::with_capacity(pairs.len());
        for (v, (l, r)) in pairs.iter().enumerate() {
            let left = parse_endpoint(l)
                .ok_or_else(|| Error::InvalidArgument(format!("bad endpoint {l:?}")))?;
            let right = parse_endpoint(r)
                .ok_or_else(|| Error::InvalidArgument(format!("bad endpoint {r:?}")))?;
            intervals.push(
                Interval::new(left, right).map_err(|_| Error::InvertedInterval {
                    vertex: v,
                    left,
                    right,
                })?,
            );
        }
        Self::new(intervals)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, v: usize) -> &Interval {
        &self.intervals[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                len: self.len(),
            })
        }
    }

    /// `u ≺ v`: the right endpoint of `u` is smaller than that of `v`.
    pub fn precede(&self, u: usize, v: usize) -> bool {
        self.intervals[u].right < self.intervals[v].right
    }

    /// Vertex ids sorted by `≺`.
    pub fn order_by_right(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| self.intervals[v].right);
        order
    }

    /// The vertex whose interval starts first.
    pub fn leftmost(&self) -> usize {
        (0..self.len())
            .min_by_key(|&v| self.intervals[v].left)
            .expect("graph is nonempty")
    }

    /// Hop distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].expect("queued vertices have a distance") + 1;
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(next);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn bfs_distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs_from(u)[v]
    }

    /// All-pairs hop distances.
    pub fn distance_matrix(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.len()).map(|v| self.bfs_from(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_from(0).iter().all(Option::is_some)
    }

    /// The greedy shortest path `P^gr(u, v)` for `u ≺ v`: repeatedly step to
    /// the neighbour with the largest right endpoint until the current interval
    /// meets `v`, then finish at `v`.
    pub fn greedy_path(&self, u: usize, v: usize) -> Result<Path> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.precede(u, v) {
            return Err(Error::NotOrdered { from: u, to: v });
        }
        self.greedy_walk(u, v, Direction::East)
    }

    /// Greedy shortest path from `u` to `v` in whichever direction `v` lies:
    /// eastward when `u ≺ v`, otherwise the mirrored westward walk that steps
    /// to the neighbour with the smallest left endpoint.
    pub fn directed_greedy_path(&self, u: usize, v: usize) -> Result<Path> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(Path { vertices: vec![u] });
        }
        let direction = if self.precede(u, v) {
            Direction::East
        } else {
            Direction::West
        };
        self.greedy_walk(u, v, direction)
    }

    fn greedy_walk(&self, u: usize, v: usize, direction: Direction) -> Result<Path> {
        let target = self.intervals[v];
        let mut vertices = vec![u];
        let mut current = u;
        while !self.intervals[current].overlaps(&target) {
            let next = self.extreme_neighbor(current, direction);
            if next == current {
                return Err(Error::Unreachable { from: u, to: v });
            }
            current = next;
            vertices.push(current);
        }
        vertices.push(v);
        Ok(Path { vertices })
    }

    /// The vertex of the closed neighbourhood of `v` that reaches furthest in
    /// `direction`.
    fn extreme_neighbor(&self, v: usize, direction: Direction) -> usize {
        let key = |w: usize| match direction {
            Direction::East => self.intervals[w].right,
            Direction::West => -self.intervals[w].left,
        };
        self.adjacency[v]
            .iter()
            .copied()
            .chain(std::iter::once(v))
            .max_by_key(|&w| key(w))
            .expect("closed neighbourhood contains v")
    }

    /// Cardinal path from `u`: a greedy walk with no destination, stopping at
    /// the first vertex that is already extreme within its closed
    /// neighbourhood.
    pub fn cardinal_path(&self, u: usize, direction: Direction) -> Path {
        let mut vertices = vec![u];
        let mut current = u;
        loop {
            let next = self.extreme_neighbor(current, direction);
            if next == current {
                break;
            }
            current = next;
            vertices.push(current);
        }
        Path { vertices }
    }
}

/// Shorthand for an integer endpoint.
pub fn int(value: i64) -> Endpoint {
    Ratio::from_integer(value)
}

/// Shorthand for `num / den`.
pub fn frac(num: i64, den: i64) -> Endpoint {
    Ratio::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain4() -> IntervalGraph {
        IntervalGraph::from_decimal_pairs(&[("0", "1.5"), ("1", "2.5"), ("2", "3.5"), ("3", "4.5")])
            .unwrap()
    }

    #[test]
    fn singleton_graph_has_no_edges() {
        let g = IntervalGraph::from_decimal_pairs(&[("0", "1.5")]).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn chain_edges() {
        let g = IntervalGraph::from_decimal_pairs(&[("0", "1.5"), ("1", "2.5"), ("2", "3.5")]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn long_interval_edges() {
        let g = IntervalGraph::from_decimal_pairs(&[("0", "1.5"), ("1", "2.5"), ("2", "3.5"), ("1.2", "4")])
            .unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(g.bfs_distance(0, 2), Some(2));
    }

    #[test]
    fn duplicate_endpoint_is_rejected() {
        let err = IntervalGraph::from_decimal_pairs(&[("0", "1"), ("1", "2")]).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateEndpoint {
                value: int(1),
                first: 0,
                second: 1
            }
        );
    }

    #[test]
    fn empty_and_inverted_inputs_are_rejected() {
        assert_eq!(IntervalGraph::new(vec![]).unwrap_err(), Error::EmptyGraph);
        assert!(matches!(
            IntervalGraph::from_decimal_pairs(&[("0", "1"), ("3", "2")]),
            Err(Error::InvertedInterval { vertex: 1, .. })
        ));
    }

    #[test]
    fn precede_is_strict_and_total() {
        let g = chain4();
        assert!(g.precede(0, 1));
        assert!(!g.precede(1, 1));
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    assert!(g.precede(u, v) ^ g.precede(v, u));
                }
            }
        }
    }

    #[test]
    fn bfs_on_chain() {
        let g = chain4();
        assert_eq!(g.bfs_distance(0, 3), Some(3));
        assert_eq!(g.bfs_distance(2, 2), Some(0));
    }

    #[test]
    fn disconnected_pair_is_unreachable() {
        let g = IntervalGraph::from_decimal_pairs(&[("0", "1"), ("2", "3")]).unwrap();
        assert_eq!(g.bfs_distance(0, 1), None);
        assert_eq!(g.greedy_path(0, 1).unwrap_err(), Error::Unreachable { from: 0, to: 1 });
    }

    #[test]
    fn greedy_paths() {
        let g = chain4();
        assert_eq!(g.greedy_path(0, 3).unwrap().vertices, vec![0, 1, 2, 3]);
        assert_eq!(g.greedy_path(0, 1).unwrap().vertices, vec![0, 1]);
        assert_eq!(g.greedy_path(3, 0).unwrap_err(), Error::NotOrdered { from: 3, to: 0 });

        let g = IntervalGraph::from_decimal_pairs(&[
            ("0", "1.5"),
            ("1", "2.5"),
            ("2", "3.5"),
            ("3", "4.5"),
            ("1.2", "4"),
        ])
        .unwrap();
        let path = g.greedy_path(0, 3).unwrap();
        assert_eq!(path.vertices, vec![0, 4, 3]);
        assert_eq!(path.len(), g.bfs_distance(0, 3).unwrap());
    }

    #[test]
    fn westward_greedy_mirrors_eastward() {
        let g = chain4();
        assert_eq!(g.directed_greedy_path(3, 0).unwrap().vertices, vec![3, 2, 1, 0]);
        assert_eq!(g.directed_greedy_path(2, 2).unwrap().vertices, vec![2]);
    }

    #[test]
    fn cardinal_paths() {
        let g = chain4();
        assert_eq!(g.cardinal_path(0, Direction::East).vertices, vec![0, 1, 2, 3]);
        assert_eq!(g.cardinal_path(3, Direction::East).vertices, vec![3]);
        assert_eq!(g.cardinal_path(3, Direction::West).vertices, vec![3, 2, 1, 0]);
        let lone = IntervalGraph::from_decimal_pairs(&[("0", "1"), ("2", "3")]).unwrap();
        assert_eq!(lone.cardinal_path(0, Direction::East).vertices, vec![0]);
    }

    #[test]
    fn endpoint_text_round_trip() {
        for text in ["0", "1.5", "-0.01", "12.125", "7/3", "-2/7"] {
            let value = parse_endpoint(text).unwrap();
            assert_eq!(parse_endpoint(&format_endpoint(&value)), Some(value), "{text}");
        }
        assert_eq!(format_endpoint(&frac(1, 100)), "0.01");
        assert_eq!(format_endpoint(&frac(-99, 100)), "-0.99");
        assert_eq!(format_endpoint(&frac(1, 3)), "1/3");
        assert_eq!(parse_endpoint("abc"), None);
        assert_eq!(parse_endpoint("1/0"), None);
        assert_eq!(parse_endpoint("."), None);
    }
}
