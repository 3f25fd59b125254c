//! Seeded random instances and the two adversarial constructions.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::biinterval::{path_graph, BiIntervalGraph, ProductVertex};
use crate::error::{Error, Result};
use crate::interval::{frac, Interval, IntervalGraph};
use crate::layering::{build_bfs_dag, LayeredDag};

/// Where an instance came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    #[serde(default)]
    pub params: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Provenance {
    fn new(generator: &str, params: &[(&str, u64)], seed: Option<u64>) -> Self {
        Self {
            generator: generator.to_owned(),
            params: params.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalInstance {
    pub graph: IntervalGraph,
    pub source: Option<usize>,
    pub terminals: Vec<usize>,
    pub provenance: Option<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiInstance {
    pub graph: BiIntervalGraph,
    pub terminals: Vec<ProductVertex>,
    pub provenance: Option<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Interval(IntervalInstance),
    BiInterval(BiInstance),
}

impl IntervalInstance {
    pub fn validate(&self) -> Result<()> {
        if let Some(s) = self.source {
            self.graph.check_vertex(s)?;
        }
        distinct_in_range(&self.terminals, |&t| self.graph.check_vertex(t))
    }
}

impl BiInstance {
    pub fn validate(&self) -> Result<()> {
        distinct_in_range(&self.terminals, |&t| self.graph.check_vertex(t))
    }
}

impl Instance {
    pub fn validate(&self) -> Result<()> {
        match self {
            Instance::Interval(i) => i.validate(),
            Instance::BiInterval(b) => b.validate(),
        }
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        match self {
            Instance::Interval(i) => i.provenance.as_ref(),
            Instance::BiInterval(b) => b.provenance.as_ref(),
        }
    }
}

fn distinct_in_range<T: Ord + std::fmt::Debug>(items: &[T], check: impl Fn(&T) -> Result<()>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for t in items {
        check(t)?;
        if !seen.insert(t) {
            return Err(Error::InvalidArgument(format!("terminal {t:?} listed twice")));
        }
    }
    Ok(())
}

/// How `gen_random_interval_with` picks the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourcePlacement {
    /// No source (all-pairs use).
    None,
    /// The interval with the smallest left endpoint.
    Leftmost,
    /// A source with layered vertices strictly on both sides of it.
    Interior,
    /// Uniform over all vertices.
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomIntervalParams {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub source: SourcePlacement,
}

// Endpoints live on a grid of hundredths. Lefts are drawn from [0, n) and
// lengths from [0.5, 4.0]; a draw is rejected if it repeats an endpoint or
// misses the union of the intervals accepted so far.
const GRID: i64 = 100;
const MIN_LEN: i64 = 50;
const MAX_LEN: i64 = 400;
const ATTEMPTS_PER_VERTEX: usize = 2_000;
const INSTANCE_ATTEMPTS: usize = 200;

/// A connected interval graph with `n` distinct-endpoint intervals.
pub fn random_interval_graph<R: Rng>(n: usize, rng: &mut R) -> Result<IntervalGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let span = n as i64 * GRID;
    let mut used = BTreeSet::new();
    let mut pairs: Vec<(i64, i64)> = Vec::with_capacity(n);
    let (mut lo, mut hi) = (i64::MAX, i64::MIN);
    let mut attempts = 0;
    while pairs.len() < n {
        attempts += 1;
        if attempts > ATTEMPTS_PER_VERTEX * n {
            return Err(Error::GeneratorExhausted {
                attempts,
                reason: "could not place a connected interval".into(),
            });
        }
        let left = rng.gen_range(0..span);
        let right = left + rng.gen_range(MIN_LEN..=MAX_LEN);
        if used.contains(&left) || used.contains(&right) {
            continue;
        }
        if !pairs.is_empty() && (right < lo || left > hi) {
            continue;
        }
        used.insert(left);
        used.insert(right);
        lo = lo.min(left);
        hi = hi.max(right);
        pairs.push((left, right));
    }
    // Vertex ids are shuffled so nothing downstream can lean on draw order.
    pairs.shuffle(rng);
    IntervalGraph::new(
        pairs
            .into_iter()
            .map(|(l, r)| Interval::scaled(l, r, GRID))
            .collect::<Result<Vec<_>>>()?,
    )
}

fn interior_sources(g: &IntervalGraph) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for s in 0..g.len() {
        let dag = build_bfs_dag(g, s)?;
        let here = g.interval(s);
        let (mut left, mut right) = (false, false);
        for layer in dag.layers().iter().skip(2) {
            for &v in layer {
                left |= g.interval(v).right() < here.left();
                right |= g.interval(v).left() > here.right();
            }
        }
        if left && right {
            out.push(s);
        }
    }
    Ok(out)
}

pub fn gen_random_interval_with(params: RandomIntervalParams) -> Result<IntervalInstance> {
    let RandomIntervalParams { n, k, seed, source } = params;
    let reserved = usize::from(source != SourcePlacement::None);
    if k + reserved > n {
        return Err(Error::InvalidArgument(format!("{k} terminals do not fit in {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..INSTANCE_ATTEMPTS {
        let graph = random_interval_graph(n, &mut rng)?;
        let s = match source {
            SourcePlacement::None => None,
            SourcePlacement::Leftmost => Some(graph.leftmost()),
            SourcePlacement::Uniform => Some(rng.gen_range(0..n)),
            SourcePlacement::Interior => match interior_sources(&graph)?.choose(&mut rng) {
                Some(&s) => Some(s),
                None => continue,
            },
        };
        let pool: Vec<usize> = (0..n).filter(|&v| Some(v) != s).collect();
        let mut terminals: Vec<usize> = index::sample(&mut rng, pool.len(), k).into_iter().map(|i| pool[i]).collect();
        terminals.sort_unstable();
        let placement = match source {
            SourcePlacement::None => 0,
            SourcePlacement::Leftmost => 1,
            SourcePlacement::Interior => 2,
            SourcePlacement::Uniform => 3,
        };
        return Ok(IntervalInstance {
            graph,
            source: s,
            terminals,
            provenance: Some(Provenance::new(
                "random-interval",
                &[("n", n as u64), ("k", k as u64), ("placement", placement)],
                Some(seed),
            )),
        });
    }
    Err(Error::GeneratorExhausted {
        attempts: INSTANCE_ATTEMPTS,
        reason: "no graph with an interior source".into(),
    })
}

/// `n` intervals, `k` terminals and a uniformly chosen source.
pub fn gen_random_interval(n: usize, k: usize, seed: u64) -> Result<IntervalInstance> {
    gen_random_interval_with(RandomIntervalParams {
        n,
        k,
        seed,
        source: SourcePlacement::Uniform,
    })
}

pub fn gen_random_bi(nx: usize, ny: usize, k: usize, seed: u64) -> Result<BiInstance> {
    if k > nx * ny {
        return Err(Error::InvalidArgument(format!("{k} terminals do not fit in {nx} x {ny}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = random_interval_graph(nx, &mut rng)?;
    let y = random_interval_graph(ny, &mut rng)?;
    let mut terminals: Vec<ProductVertex> = index::sample(&mut rng, nx * ny, k)
        .into_iter()
        .map(|i| ProductVertex::new(i / ny, i % ny))
        .collect();
    terminals.sort_unstable();
    Ok(BiInstance {
        graph: BiIntervalGraph::new(x, y),
        terminals,
        provenance: Some(Provenance::new(
            "random-bi",
            &[("nx", nx as u64), ("ny", ny as u64), ("k", k as u64)],
            Some(seed),
        )),
    })
}

/// A layered DAG on `n` vertices: vertex 0 alone in layer 0, every other
/// vertex has at least one parent in the previous layer, and each further
/// consecutive-layer pair is joined with probability `density`.
pub fn gen_random_layered_dag(n: usize, density: f64, seed: u64) -> Result<LayeredDag> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut layers = vec![vec![0]];
    let mut next = 1;
    while next < n {
        let width = rng.gen_range(1..=3).min(n - next);
        layers.push((next..next + width).collect());
        next += width;
    }
    let mut edges = Vec::new();
    for i in 1..layers.len() {
        for &v in &layers[i] {
            let parents = &layers[i - 1];
            let forced = *parents.choose(&mut rng).expect("layers are non-empty");
            for &p in parents {
                if p == forced || rng.gen_bool(density) {
                    edges.push((p, v));
                }
            }
        }
    }
    LayeredDag::from_parts(n, 0, layers, &edges)
}

/// King's graph lower-bound instance: a `board` x `board` grid, chessboard
/// coloured with (0, 0) black, terminals the black squares on the boundary.
pub fn gen_diag(board: usize) -> Result<BiInstance> {
    if board < 4 {
        return Err(Error::InvalidArgument(format!("board {board} is below 4")));
    }
    let axis = path_graph(board)?;
    let terminals = (0..board)
        .flat_map(|ix| (0..board).map(move |iy| ProductVertex::new(ix, iy)))
        .filter(|&v| is_black(v) && on_boundary(v, board))
        .collect();
    Ok(BiInstance {
        graph: BiIntervalGraph::new(axis.clone(), axis),
        terminals,
        provenance: Some(Provenance::new("diag", &[("board", board as u64)], None)),
    })
}

pub fn is_black(v: ProductVertex) -> bool {
    (v.ix + v.iy).is_multiple_of(2)
}

pub fn on_boundary(v: ProductVertex, board: usize) -> bool {
    v.ix == 0 || v.iy == 0 || v.ix + 1 == board || v.iy + 1 == board
}

pub fn interior_black(board: usize) -> Vec<ProductVertex> {
    (0..board)
        .flat_map(|ix| (0..board).map(move |iy| ProductVertex::new(ix, iy)))
        .filter(|&v| is_black(v) && !on_boundary(v, board))
        .collect()
}

/// Maximal diagonals of black squares, as (end, end) pairs of boundary
/// squares, in both slopes. Single-square diagonals (corners) are skipped.
pub fn black_diagonals(board: usize) -> Vec<(ProductVertex, ProductVertex)> {
    let b = board as isize;
    let mut out = Vec::new();
    for slope in [1isize, -1] {
        for start_x in 0..b {
            for start_y in 0..b {
                let v = ProductVertex::new(start_x as usize, start_y as usize);
                if !is_black(v) {
                    continue;
                }
                // Only start from a square whose predecessor is off the board.
                let (px, py) = (start_x - 1, start_y - slope);
                if (0..b).contains(&px) && (0..b).contains(&py) {
                    continue;
                }
                let (mut x, mut y) = (start_x, start_y);
                while (0..b).contains(&(x + 1)) && (0..b).contains(&(y + slope)) {
                    x += 1;
                    y += slope;
                }
                if x != start_x {
                    out.push((v, ProductVertex::new(x as usize, y as usize)));
                }
            }
        }
    }
    out
}

/// Anti-parallel lower-bound instance with the two designated endpoints.
#[derive(Clone, Debug)]
pub struct AntiParallel {
    pub instance: IntervalInstance,
    pub u: usize,
    pub v: usize,
    /// Family index 1..=6 per vertex.
    pub family: Vec<u8>,
}

/// Intervals in hundredths with epsilon 0.01 and delta 0.1. The sixth family
/// is read as `(i + 1 - 2 delta, i + 1 - delta)`; taken literally it would be
/// inverted.
pub fn gen_antiparallel(n: usize) -> Result<AntiParallel> {
    if n < 4 || !n.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!("n = {n} must be a positive multiple of 4")));
    }
    let (eps, delta) = (1i64, 10i64);
    let mut pairs: Vec<(i64, i64, u8)> = Vec::new();
    let c = |i: usize| i as i64 * GRID;
    for i in 1..=n {
        pairs.push((c(i) - delta + eps, c(i) + delta + eps, 1));
    }
    for i in 1..=n {
        pairs.push((c(i) - delta - eps, c(i) + delta - eps, 2));
    }
    for i in 1..n {
        pairs.push((c(i) + eps, c(i + 1) - eps, 3));
    }
    for i in [0, n] {
        pairs.push((c(i) + eps, c(i + 1) - eps, 4));
    }
    for i in [n / 4, n / 2, 3 * n / 4] {
        pairs.push((c(i) + delta, c(i) + 2 * delta, 5));
    }
    for i in [n / 4, n / 2, 3 * n / 4] {
        pairs.push((c(i + 1) - 2 * delta, c(i + 1) - delta, 6));
    }
    let family: Vec<u8> = pairs.iter().map(|p| p.2).collect();
    let graph = IntervalGraph::from_pairs(pairs.iter().map(|&(l, r, _)| (frac(l, GRID), frac(r, GRID))))?;
    let terminals: Vec<usize> = (0..family.len()).filter(|&v| family[v] >= 4).collect();
    let u = terminals[0];
    let v = terminals[1];
    Ok(AntiParallel {
        instance: IntervalInstance {
            graph,
            source: Some(u),
            terminals,
            provenance: Some(Provenance::new("antiparallel", &[("n", n as u64)], None)),
        },
        u,
        v,
        family,
    })
}
