//! JSON instance and result files, and DOT export.
//!
//! Endpoints are written as exact decimal strings (or `p/q` when the value has
//! no terminating expansion) so that reading a file back gives the same
//! rationals.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::biinterval::{BiIntervalGraph, DpsReport, LineCall, ProductVertex};
use crate::error::{Error, Result};
use crate::generate::{BiInstance, Instance, IntervalInstance, Provenance};
use crate::interval::{format_endpoint, parse_endpoint, Interval, IntervalGraph};
use crate::layering::build_bfs_dag;
use crate::oracle::{verify_dps, Neighborhood, VerifyReport};
use crate::sssp::{count_branching, BranchingMode, Solution, SolverStats};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    #[serde(flatten)]
    pub body: InstanceBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InstanceBody {
    Interval {
        intervals: Vec<[String; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        source: Option<usize>,
        terminals: Vec<usize>,
    },
    BiInterval {
        x_intervals: Vec<[String; 2]>,
        y_intervals: Vec<[String; 2]>,
        terminals: Vec<ProductVertex>,
    },
}

fn encode_intervals(g: &IntervalGraph) -> Vec<[String; 2]> {
    g.intervals()
        .iter()
        .map(|iv| [format_endpoint(&iv.left()), format_endpoint(&iv.right())])
        .collect()
}

fn decode_intervals(field: &str, pairs: &[[String; 2]]) -> Result<IntervalGraph> {
    let mut intervals = Vec::with_capacity(pairs.len());
    for (i, [l, r]) in pairs.iter().enumerate() {
        let parse = |text: &String, side: usize| {
            parse_endpoint(text).ok_or_else(|| Error::Field {
                field: format!("{field}[{i}][{side}]"),
                message: format!("{text:?} is not an exact decimal or p/q rational"),
            })
        };
        let (left, right) = (parse(l, 0)?, parse(r, 1)?);
        intervals.push(Interval::new(left, right).map_err(|_| Error::Field {
            field: format!("{field}[{i}]"),
            message: format!("left endpoint {l} is not below right endpoint {r}"),
        })?);
    }
    IntervalGraph::new(intervals).map_err(|e| Error::Field {
        field: field.to_owned(),
        message: e.to_string(),
    })
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        let body = match instance {
            Instance::Interval(i) => InstanceBody::Interval {
                intervals: encode_intervals(&i.graph),
                source: i.source,
                terminals: i.terminals.clone(),
            },
            Instance::BiInterval(b) => InstanceBody::BiInterval {
                x_intervals: encode_intervals(b.graph.x_axis()),
                y_intervals: encode_intervals(b.graph.y_axis()),
                terminals: b.terminals.clone(),
            },
        };
        Self {
            version: FORMAT_VERSION,
            body,
            provenance: instance.provenance().cloned(),
        }
    }

    pub fn into_instance(self) -> Result<Instance> {
        check_version(self.version)?;
        let instance = match self.body {
            InstanceBody::Interval {
                intervals,
                source,
                terminals,
            } => Instance::Interval(IntervalInstance {
                graph: decode_intervals("intervals", &intervals)?,
                source,
                terminals,
                provenance: self.provenance,
            }),
            InstanceBody::BiInterval {
                x_intervals,
                y_intervals,
                terminals,
            } => Instance::BiInterval(BiInstance {
                graph: BiIntervalGraph::new(
                    decode_intervals("x_intervals", &x_intervals)?,
                    decode_intervals("y_intervals", &y_intervals)?,
                ),
                terminals,
                provenance: self.provenance,
            }),
        };
        let field = |name: &str| {
            let name = name.to_owned();
            move |e: Error| Error::Field {
                field: name,
                message: e.to_string(),
            }
        };
        if let Instance::Interval(IntervalInstance { graph, source: Some(s), .. }) = &instance {
            graph.check_vertex(*s).map_err(field("source"))?;
        }
        instance.validate().map_err(field("terminals"))?;
        Ok(instance)
    }
}

fn check_version(version: u32) -> Result<()> {
    if version == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Error::Field {
            field: "version".into(),
            message: format!("unsupported version {version}, expected {FORMAT_VERSION}"),
        })
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_json::<InstanceFile>(text)?.into_instance()
}

pub fn instance_to_string(instance: &Instance) -> String {
    to_json(&InstanceFile::from_instance(instance))
}

/// Reads `path`, or standard input when `path` is `-`.
pub fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut text).map_err(|e| Error::Io(format!("stdin: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes `path`, or standard output when `path` is `-`.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if path == Path::new("-") {
        print!("{text}");
        return Ok(());
    }
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read_text(path)?)
}

pub fn write_instance(path: &Path, instance: &Instance) -> Result<()> {
    write_text(path, &instance_to_string(instance))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingCounts {
    pub out_degree: usize,
    pub undirected_degree: usize,
}

impl BranchingCounts {
    pub fn of<V: Ord + Copy>(edges: &[(V, V)]) -> Self {
        Self {
            out_degree: count_branching(edges, BranchingMode::OutDegree),
            undirected_degree: count_branching(edges, BranchingMode::UndirectedDegree),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord<V> {
    pub from: V,
    pub to: V,
    pub expected: Option<usize>,
    pub actual: Option<usize>,
    pub ok: bool,
}

fn records<V: Copy>(report: &VerifyReport<V>) -> Vec<PairRecord<V>> {
    report
        .pairs
        .iter()
        .map(|p| PairRecord {
            from: p.from,
            to: p.to,
            expected: p.expected,
            actual: p.actual,
            ok: p.ok(),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimality {
    /// The branching count is the optimum.
    Exact,
    /// Only the asymptotic bound is claimed.
    BoundOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleStatus {
    Agrees,
    Disagrees,
    Refused,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub status: OracleStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub threshold: usize,
    pub accepted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFile {
    pub version: u32,
    #[serde(flatten)]
    pub body: ResultBody,
    pub branching: BranchingCounts,
    pub distances_ok: bool,
    pub optimality: Optimality,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
    pub stats: SolverStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ResultBody {
    Sssp {
        source: usize,
        edges: Vec<(usize, usize)>,
        verification: Vec<PairRecord<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        decision: Option<DecisionRecord>,
    },
    AllPairs {
        edges: Vec<(ProductVertex, ProductVertex)>,
        pseudo_terminals: Vec<ProductVertex>,
        verification: Vec<PairRecord<ProductVertex>>,
        line_calls: Vec<LineCall>,
    },
}

impl ResultFile {
    /// Verification covers the source against every terminal.
    pub fn from_solution(instance: &IntervalInstance, solution: &Solution) -> Self {
        let report = verify_dps(&instance.graph, &solution.edges, &[solution.source], &solution.terminals);
        Self {
            version: FORMAT_VERSION,
            branching: BranchingCounts::of(&solution.edges),
            distances_ok: report.all_preserved(),
            body: ResultBody::Sssp {
                source: solution.source,
                edges: solution.edges.clone(),
                verification: records(&report),
                decision: None,
            },
            optimality: Optimality::Exact,
            oracle: None,
            stats: solution.stats,
        }
    }

    /// Verification covers every unordered terminal pair.
    pub fn from_report(instance: &BiInstance, report: &DpsReport, stats: SolverStats) -> Self {
        let edges: Vec<(ProductVertex, ProductVertex)> = report.subgraph.edges.iter().copied().collect();
        let check = verify_dps(&instance.graph, &edges, &instance.terminals, &instance.terminals);
        Self {
            version: FORMAT_VERSION,
            branching: BranchingCounts::of(&edges),
            distances_ok: check.all_preserved(),
            body: ResultBody::AllPairs {
                edges,
                pseudo_terminals: report.subgraph.pseudo_terminals.iter().copied().collect(),
                verification: records(&check),
                line_calls: report.line_calls.clone(),
            },
            optimality: Optimality::BoundOnly,
            oracle: None,
            stats,
        }
    }

    pub fn branching_vertices(&self) -> Vec<String> {
        match &self.body {
            ResultBody::Sssp { edges, .. } => branching_set(edges, BranchingMode::OutDegree)
                .into_iter()
                .map(|v| v.to_string())
                .collect(),
            ResultBody::AllPairs { edges, .. } => branching_set(edges, BranchingMode::UndirectedDegree)
                .into_iter()
                .map(|v| v.to_string())
                .collect(),
        }
    }
}

pub fn parse_result(text: &str) -> Result<ResultFile> {
    let result: ResultFile = parse_json(text)?;
    check_version(result.version)?;
    Ok(result)
}

pub fn result_to_string(result: &ResultFile) -> String {
    to_json(result)
}

pub fn read_result(path: &Path) -> Result<ResultFile> {
    parse_result(&read_text(path)?)
}

pub fn write_result(path: &Path, result: &ResultFile) -> Result<()> {
    write_text(path, &result_to_string(result))
}

/// Checks a stored subgraph against an instance, recomputing every distance.
pub fn verify_result(instance: &Instance, result: &ResultFile) -> Result<ResultFile> {
    let mut fresh = result.clone();
    match (instance, &mut fresh.body) {
        (Instance::Interval(inst), ResultBody::Sssp { source, edges, verification, .. }) => {
            check_edges(edges, |&v| inst.graph.check_vertex(v))?;
            let report = verify_dps(&inst.graph, edges, &[*source], &inst.terminals);
            *verification = records(&report);
            fresh.distances_ok = report.all_preserved();
            fresh.branching = BranchingCounts::of(edges);
        }
        (Instance::BiInterval(inst), ResultBody::AllPairs { edges, verification, .. }) => {
            check_edges(edges, |&v| inst.graph.check_vertex(v))?;
            let report = verify_dps(&inst.graph, edges, &inst.terminals, &inst.terminals);
            *verification = records(&report);
            fresh.distances_ok = report.all_preserved();
            fresh.branching = BranchingCounts::of(edges);
        }
        _ => {
            return Err(Error::Field {
                field: "kind".into(),
                message: "subgraph kind does not match the instance".into(),
            })
        }
    }
    Ok(fresh)
}

fn check_edges<V>(edges: &[(V, V)], check: impl Fn(&V) -> Result<()>) -> Result<()> {
    for (i, (a, b)) in edges.iter().enumerate() {
        for v in [a, b] {
            check(v).map_err(|e| Error::Field {
                field: format!("edges[{i}]"),
                message: e.to_string(),
            })?;
        }
    }
    Ok(())
}

fn branching_set<V: Ord + Copy>(edges: &[(V, V)], mode: BranchingMode) -> BTreeSet<V> {
    let mut degree = std::collections::BTreeMap::<V, usize>::new();
    for &(a, b) in edges {
        *degree.entry(a).or_default() += 1;
        if mode == BranchingMode::UndirectedDegree {
            *degree.entry(b).or_default() += 1;
        }
    }
    let threshold = if mode == BranchingMode::OutDegree { 2 } else { 3 };
    degree.into_iter().filter(|&(_, d)| d >= threshold).map(|(v, _)| v).collect()
}

const BRANCH_STYLE: &str = "style=filled, fillcolor=orange, penwidth=2";
const TERMINAL_STYLE: &str = "shape=box";

/// DOT for an instance, optionally with a subgraph highlighted. Interval
/// instances are ranked by BFS layer from the source (or the leftmost
/// vertex); bi-interval instances are pinned to grid coordinates. Branching
/// vertices of the subgraph are filled orange.
pub fn export_dot(instance: &Instance, subgraph: Option<&ResultFile>) -> Result<String> {
    match instance {
        Instance::Interval(inst) => {
            let edges = match subgraph.map(|r| &r.body) {
                Some(ResultBody::Sssp { edges, .. }) => Some(edges.as_slice()),
                Some(_) => return Err(Error::InvalidArgument("subgraph is not a single-source result".into())),
                None => None,
            };
            Ok(dot_interval(inst, edges))
        }
        Instance::BiInterval(inst) => {
            let edges = match subgraph.map(|r| &r.body) {
                Some(ResultBody::AllPairs { edges, .. }) => Some(edges.as_slice()),
                Some(_) => return Err(Error::InvalidArgument("subgraph is not an all-pairs result".into())),
                None => None,
            };
            Ok(dot_bi(inst, edges))
        }
    }
}

fn dot_interval(inst: &IntervalInstance, edges: Option<&[(usize, usize)]>) -> String {
    let g = &inst.graph;
    let root = inst.source.unwrap_or_else(|| g.leftmost());
    let terminals: BTreeSet<usize> = inst.terminals.iter().copied().collect();
    let branching = edges.map(|e| branching_set(e, BranchingMode::OutDegree)).unwrap_or_default();
    let mut out = String::from("digraph instance {\n  rankdir=LR;\n  node [shape=circle];\n");
    for v in 0..g.len() {
        let iv = g.interval(v);
        let mut attrs = vec![format!(
            "label=\"{v}\\n[{}, {}]\"",
            format_endpoint(&iv.left()),
            format_endpoint(&iv.right())
        )];
        if terminals.contains(&v) {
            attrs.push(TERMINAL_STYLE.into());
        }
        if Some(v) == inst.source {
            attrs.push("peripheries=2".into());
        }
        if branching.contains(&v) {
            attrs.push(BRANCH_STYLE.into());
        }
        let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
    }
    if let Ok(dag) = build_bfs_dag(g, root) {
        for layer in dag.layers() {
            let ids: Vec<String> = layer.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
        }
    }
    let chosen: BTreeSet<(usize, usize)> = edges.unwrap_or(&[]).iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for (a, b) in g.edges() {
        if chosen.contains(&(a, b)) {
            continue;
        }
        let _ = writeln!(out, "  {a} -> {b} [dir=none, color=gray];");
    }
    for &(a, b) in edges.unwrap_or(&[]) {
        let _ = writeln!(out, "  {a} -> {b} [color=blue, penwidth=2];");
    }
    out.push_str("}\n");
    out
}

const DOT_FULL_PRODUCT_LIMIT: usize = 144;

fn dot_bi(inst: &BiInstance, edges: Option<&[(ProductVertex, ProductVertex)]>) -> String {
    let g = &inst.graph;
    let name = |v: ProductVertex| format!("\"{}_{}\"", v.ix, v.iy);
    let terminals: BTreeSet<ProductVertex> = inst.terminals.iter().copied().collect();
    let branching = edges.map(|e| branching_set(e, BranchingMode::UndirectedDegree)).unwrap_or_default();
    let mut shown: BTreeSet<ProductVertex> = terminals.clone();
    let full = g.vertex_count() <= DOT_FULL_PRODUCT_LIMIT;
    if full {
        shown.extend(g.vertices());
    }
    for &(a, b) in edges.unwrap_or(&[]) {
        shown.insert(a);
        shown.insert(b);
    }
    let mut out = String::from("graph instance {\n  layout=neato;\n  node [shape=point, width=0.08];\n");
    if !full {
        let _ = writeln!(out, "  // product has {} vertices; only terminals and subgraph vertices drawn", g.vertex_count());
    }
    for &v in &shown {
        let mut attrs = vec![format!("pos=\"{},{}!\"", v.ix, v.iy)];
        if terminals.contains(&v) {
            attrs.push("shape=box, width=0.15, color=blue, style=filled".into());
        }
        if branching.contains(&v) {
            attrs.push("shape=circle, width=0.15, style=filled, fillcolor=orange".into());
        }
        let _ = writeln!(out, "  {} [{}];", name(v), attrs.join(", "));
    }
    if full && edges.is_none() {
        for &u in &shown {
            for v in g.neighbors_of(u) {
                if u < v {
                    let _ = writeln!(out, "  {} -- {} [color=gray];", name(u), name(v));
                }
            }
        }
    }
    for &(a, b) in edges.unwrap_or(&[]) {
        let _ = writeln!(out, "  {} -- {} [color=blue, penwidth=2];", name(a), name(b));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_antiparallel, gen_diag, gen_random_bi, gen_random_interval};
    use crate::sssp::solve_general;

    #[test]
    fn instance_round_trip() {
        let instances = [
            Instance::Interval(gen_random_interval(12, 3, 5).unwrap()),
            Instance::Interval(gen_antiparallel(8).unwrap().instance),
            Instance::BiInterval(gen_random_bi(5, 6, 4, 9).unwrap()),
            Instance::BiInterval(gen_diag(5).unwrap()),
        ];
        for inst in instances {
            let text = instance_to_string(&inst);
            assert_eq!(parse_instance(&text).unwrap(), inst);
        }
    }

    #[test]
    fn thirds_survive() {
        let g = IntervalGraph::from_decimal_pairs(&[("0", "1/3"), ("1/6", "2")]).unwrap();
        let inst = Instance::Interval(IntervalInstance {
            graph: g,
            source: Some(0),
            terminals: vec![1],
            provenance: None,
        });
        let text = instance_to_string(&inst);
        assert!(text.contains("\"1/3\""));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn diagnostics_name_the_problem() {
        match parse_instance("{\n  \"version\": 1,\n  \"kind\": \"interval\",\n  \"intervals\": [[\"0\", \"1\"],\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"version": 1, "kind": "interval", "intervals": [["0", "1"], ["2", "x"]], "terminals": []}"#;
        match parse_instance(bad) {
            Err(Error::Field { field, .. }) => assert_eq!(field, "intervals[1][1]"),
            other => panic!("{other:?}"),
        }
        let out_of_range = r#"{"version": 1, "kind": "interval", "intervals": [["0", "1"]], "terminals": [4]}"#;
        assert!(matches!(parse_instance(out_of_range), Err(Error::Field { .. })));
        let version = r#"{"version": 7, "kind": "interval", "intervals": [["0", "1"]], "terminals": []}"#;
        assert!(matches!(parse_instance(version), Err(Error::Field { field, .. }) if field == "version"));
    }

    #[test]
    fn result_round_trip_and_verify() {
        let inst = gen_random_interval(12, 3, 5).unwrap();
        let sol = solve_general(&inst.graph, inst.source.unwrap(), &inst.terminals).unwrap();
        let result = ResultFile::from_solution(&inst, &sol);
        assert!(result.distances_ok);
        assert_eq!(result.branching.out_degree, sol.branching_count);
        let back = parse_result(&result_to_string(&result)).unwrap();
        assert_eq!(back, result);
        let wrapped = Instance::Interval(inst);
        assert!(verify_result(&wrapped, &back).unwrap().distances_ok);
        let mut broken = back.clone();
        if let ResultBody::Sssp { edges, .. } = &mut broken.body {
            edges.pop();
        }
        assert!(!verify_result(&wrapped, &broken).unwrap().distances_ok);
    }

    #[test]
    fn dot_marks_branching() {
        let g = IntervalGraph::from_decimal_pairs(&[("0", "10"), ("1", "2"), ("4", "5"), ("7", "8")]).unwrap();
        let inst = IntervalInstance {
            graph: g,
            source: Some(0),
            terminals: vec![1, 2, 3],
            provenance: None,
        };
        let sol = solve_general(&inst.graph, 0, &inst.terminals).unwrap();
        let result = ResultFile::from_solution(&inst, &sol);
        let dot = export_dot(&Instance::Interval(inst), Some(&result)).unwrap();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("fillcolor=orange").count(), 1);
        assert!(dot.contains("rank=same; 1; 2; 3;"));
        let bi = Instance::BiInterval(gen_diag(4).unwrap());
        let dot = export_dot(&bi, None).unwrap();
        assert!(dot.contains("pos=\"3,3!\""));
    }
}
