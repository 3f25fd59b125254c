//! Browser bindings for `dps-core`. Every export takes and returns JSON text so
//! the page can stay plain JavaScript; the `*_json` functions hold the logic
//! and are what the native tests call.

use dps_core::biinterval::{build_dps, ProductVertex};
use dps_core::generate::{gen_antiparallel, gen_diag, gen_random_bi, gen_random_interval, Instance};
use dps_core::io::{instance_to_string, parse_instance, BranchingCounts, ResultFile};
use dps_core::sssp::{solve_general, SolverStats};
use dps_core::{Endpoint, IntervalGraph};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

// Keeps a single click under a second or so in the browser.
const MAX_INTERVALS: usize = 400;
const MAX_AXIS: usize = 40;

fn float(e: Endpoint) -> f64 {
    *e.numer() as f64 / *e.denom() as f64
}

fn field(request: &Value, name: &str, default: u64) -> Result<u64, String> {
    match request.get(name) {
        None | Some(Value::Null) => Ok(default),
        Some(v) => v.as_u64().ok_or_else(|| format!("`{name}` must be a non-negative integer")),
    }
}

fn capped(name: &str, value: u64, max: usize) -> Result<usize, String> {
    let value = value as usize;
    if value > max {
        return Err(format!("`{name}` is {value}; the demo allows at most {max}"));
    }
    Ok(value)
}

/// `{"kind": "random" | "random-bi" | "diag" | "antiparallel", ...}` to an
/// instance file.
pub fn generate_json(request: &str) -> Result<String, String> {
    let req: Value = serde_json::from_str(request).map_err(|e| e.to_string())?;
    let seed = field(&req, "seed", 0)?;
    let k = field(&req, "k", 4)? as usize;
    let instance = match req.get("kind").and_then(Value::as_str).unwrap_or("random") {
        "random" => Instance::Interval(gen_random_interval(capped("n", field(&req, "n", 20)?, MAX_INTERVALS)?, k, seed).map_err(|e| e.to_string())?),
        "random-bi" => {
            let nx = capped("nx", field(&req, "nx", 10)?, MAX_AXIS)?;
            let ny = capped("ny", field(&req, "ny", 10)?, MAX_AXIS)?;
            Instance::BiInterval(gen_random_bi(nx, ny, k, seed).map_err(|e| e.to_string())?)
        }
        "diag" => Instance::BiInterval(gen_diag(capped("board", field(&req, "board", 8)?, MAX_AXIS)?).map_err(|e| e.to_string())?),
        "antiparallel" => Instance::Interval(
            gen_antiparallel(capped("n", field(&req, "n", 16)?, MAX_INTERVALS)?)
                .map_err(|e| e.to_string())?
                .instance,
        ),
        other => return Err(format!("unknown generator `{other}`")),
    };
    Ok(instance_to_string(&instance))
}

fn axis_ranks(g: &IntervalGraph) -> Vec<usize> {
    let mut rank = vec![0; g.len()];
    for (i, v) in g.order_by_right().into_iter().enumerate() {
        rank[v] = i;
    }
    rank
}

/// Solves an instance and returns `{"result": <result file>, "view": ...}`.
/// The view carries what the page needs to draw: interval spans and BFS layers
/// for interval instances, grid positions for bi-interval ones.
pub fn solve_json(instance: &str) -> Result<String, String> {
    let instance = parse_instance(instance).map_err(|e| e.to_string())?;
    let (result, view) = match &instance {
        Instance::Interval(inst) => {
            if inst.graph.len() > MAX_INTERVALS {
                return Err(format!("{} intervals; the demo allows at most {MAX_INTERVALS}", inst.graph.len()));
            }
            let source = inst.source.ok_or("this instance has no source")?;
            let solution = solve_general(&inst.graph, source, &inst.terminals).map_err(|e| e.to_string())?;
            let layers = inst.graph.bfs_from(source);
            let spans: Vec<[f64; 2]> = inst
                .graph
                .intervals()
                .iter()
                .map(|iv| [float(iv.left()), float(iv.right())])
                .collect();
            let view = json!({
                "kind": "interval",
                "spans": spans,
                "layers": layers,
                "source": source,
                "terminals": inst.terminals,
            });
            (ResultFile::from_solution(inst, &solution), view)
        }
        Instance::BiInterval(inst) => {
            let (x, y) = (inst.graph.x_axis(), inst.graph.y_axis());
            if x.len() > MAX_AXIS || y.len() > MAX_AXIS {
                return Err(format!("axes of {} and {}; the demo allows at most {MAX_AXIS}", x.len(), y.len()));
            }
            let report = build_dps(&inst.graph, &inst.terminals).map_err(|e| e.to_string())?;
            let view = json!({
                "kind": "bi-interval",
                "width": x.len(),
                "height": y.len(),
                "x_rank": axis_ranks(x),
                "y_rank": axis_ranks(y),
                "terminals": inst.terminals,
            });
            (ResultFile::from_report(inst, &report, SolverStats::default()), view)
        }
    };
    let branching = result.branching_vertices();
    Ok(json!({ "result": result, "branching_vertices": branching, "view": view }).to_string())
}

/// Shortest path between two vertices chosen the way the solver does: the
/// greedy path on an interval instance, the zipped axis paths on a bi-interval
/// one. Vertices are ids, or `[ix, iy]` for products.
pub fn path_json(instance: &str, from: &str, to: &str) -> Result<String, String> {
    let instance = parse_instance(instance).map_err(|e| e.to_string())?;
    let parse = |text: &str| serde_json::from_str::<Value>(text).map_err(|e| e.to_string());
    let (from, to) = (parse(from)?, parse(to)?);
    match &instance {
        Instance::Interval(inst) => {
            let id = |v: &Value| {
                v.as_u64()
                    .map(|v| v as usize)
                    .ok_or_else(|| "interval vertices are integers".to_string())
            };
            let path = inst.graph.greedy_path(id(&from)?, id(&to)?).map_err(|e| e.to_string())?;
            let edges: Vec<(usize, usize)> = path.edges().collect();
            Ok(json!({
                "path": path.vertices,
                "length": edges.len(),
                "branching": BranchingCounts::of(&edges),
            })
            .to_string())
        }
        Instance::BiInterval(inst) => {
            let pv = |v: &Value| serde_json::from_value::<ProductVertex>(v.clone()).map_err(|e| e.to_string());
            let (u, v) = (pv(&from)?, pv(&to)?);
            inst.graph.check_vertex(u).map_err(|e| e.to_string())?;
            inst.graph.check_vertex(v).map_err(|e| e.to_string())?;
            let path = inst.graph.product_greedy_path(u, v).map_err(|e| e.to_string())?;
            Ok(json!({ "path": path, "length": path.len().saturating_sub(1) }).to_string())
        }
    }
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate(request: &str) -> Result<String, JsValue> {
    js(generate_json(request))
}

#[wasm_bindgen]
pub fn solve(instance: &str) -> Result<String, JsValue> {
    js(solve_json(instance))
}

#[wasm_bindgen]
pub fn path(instance: &str, from: &str, to: &str) -> Result<String, JsValue> {
    js(path_json(instance, from, to))
}
