import init, { generate, solve, path } from "./pkg/dps_demo.js";

const $ = (id) => document.getElementById(id);
const svg = $("canvas");
const NS = "http://www.w3.org/2000/svg";
const W = 760, H = 560, PAD = 30;

let solved = null;   // last solve() output, parsed
let picked = null;   // first vertex of a path query
let positions = new Map();

function status(text, error = false) {
  $("status").textContent = text;
  $("status").className = error ? "error" : "";
}

function el(name, attrs, parent = svg) {
  const node = document.createElementNS(NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  parent.appendChild(node);
  return node;
}

function clear() {
  while (svg.firstChild) svg.removeChild(svg.firstChild);
  positions = new Map();
}

const key = (v) => JSON.stringify(v);

function request() {
  const num = (id) => Number($(id).value);
  return JSON.stringify({
    kind: $("kind").value, n: num("n"), nx: num("nx"), ny: num("ny"),
    board: num("board"), k: num("k"), seed: num("seed"),
  });
}

function marker(v, { terminal, source, branching, pseudo }) {
  const [x, y] = positions.get(key(v));
  const fill = branching ? "#e67e22" : "#555";
  let shape;
  if (terminal) {
    shape = el("rect", { x: x - 5, y: y - 5, width: 10, height: 10, fill });
  } else if (pseudo) {
    shape = el("polygon", { points: `${x},${y - 6} ${x + 6},${y} ${x},${y + 6} ${x - 6},${y}`, fill });
  } else {
    shape = el("circle", { cx: x, cy: y, r: branching ? 5 : 3, fill });
  }
  if (source) el("circle", { cx: x, cy: y, r: 9, fill: "none", stroke: "#222" });
  shape.style.cursor = "pointer";
  shape.addEventListener("click", () => pick(v));
  const title = el("title", {}, shape);
  title.textContent = key(v);
}

function line(a, b, attrs) {
  const [x1, y1] = positions.get(key(a));
  const [x2, y2] = positions.get(key(b));
  el("line", { x1, y1, x2, y2, ...attrs });
}

// Layers left to right, each ordered by its intervals' midpoints.
function drawInterval(out) {
  const { view, result } = out;
  const byLayer = new Map();
  view.layers.forEach((layer, v) => {
    if (layer === null) return;
    if (!byLayer.has(layer)) byLayer.set(layer, []);
    byLayer.get(layer).push(v);
  });
  const depth = Math.max(...byLayer.keys());
  for (const [layer, vs] of byLayer) {
    vs.sort((a, b) => view.spans[a][0] + view.spans[a][1] - view.spans[b][0] - view.spans[b][1]);
    vs.forEach((v, i) => {
      const x = PAD + (depth === 0 ? 0 : (layer / depth) * (W - 2 * PAD));
      const y = PAD + ((i + 1) / (vs.length + 1)) * (H - 2 * PAD);
      positions.set(key(v), [x, y]);
    });
  }
  for (const [u, v] of result.edges) line(u, v, { stroke: "#999", "stroke-width": 1.5 });
  const branching = new Set(out.branching_vertices.map(Number));
  const terminals = new Set(view.terminals);
  for (let v = 0; v < view.spans.length; v++) {
    if (!positions.has(key(v))) continue;
    marker(v, { terminal: terminals.has(v), source: v === view.source, branching: branching.has(v) });
  }
}

// Axis vertices ordered by right endpoint, so cardinal paths run diagonally.
function drawBi(out) {
  const { view, result } = out;
  const sx = (W - 2 * PAD) / Math.max(1, view.width - 1);
  const sy = (H - 2 * PAD) / Math.max(1, view.height - 1);
  for (let ix = 0; ix < view.width; ix++) {
    for (let iy = 0; iy < view.height; iy++) {
      positions.set(key([ix, iy]), [PAD + view.x_rank[ix] * sx, H - PAD - view.y_rank[iy] * sy]);
    }
  }
  for (const [u, v] of result.edges) line(u, v, { stroke: "#999", "stroke-width": 1.5 });
  const branching = new Set(out.branching_vertices);
  const terminals = new Set(view.terminals.map(key));
  const pseudo = new Set(result.pseudo_terminals.map(key));
  const touched = new Set(result.edges.flat().map(key));
  for (let ix = 0; ix < view.width; ix++) {
    for (let iy = 0; iy < view.height; iy++) {
      const v = [ix, iy];
      const k = key(v);
      if (!touched.has(k) && !terminals.has(k)) {
        const [x, y] = positions.get(k);
        const dot = el("circle", { cx: x, cy: y, r: 1.5, fill: "#ccc" });
        dot.style.cursor = "pointer";
        dot.addEventListener("click", () => pick(v));
        continue;
      }
      marker(v, {
        terminal: terminals.has(k),
        pseudo: pseudo.has(k) && !terminals.has(k),
        branching: branching.has(`(${ix}, ${iy})`),
      });
    }
  }
}

function summary(out) {
  const r = out.result;
  const parts = [
    `branching: ${r.branching.out_degree} by out-degree, ${r.branching.undirected_degree} undirected`,
    `distances ${r.distances_ok ? "preserved" : "NOT preserved"}`,
    `${r.edges.length} edges`,
  ];
  if (r.kind === "all-pairs") parts.push(`${r.pseudo_terminals.length} pseudo-terminals`);
  return parts.join("; ");
}

function pick(v) {
  if (!solved) return;
  if (picked === null) {
    picked = v;
    status(`from ${key(v)}: pick a second vertex`);
    return;
  }
  try {
    const out = JSON.parse(path($("instance").value, key(picked), key(v)));
    for (const old of svg.querySelectorAll(".trace")) old.remove();
    out.path.slice(1).forEach((w, i) =>
      line(out.path[i], w, { stroke: "#2c7be5", "stroke-width": 3, opacity: 0.7, class: "trace" }));
    status(`${key(picked)} to ${key(v)}: distance ${out.length}, path ${out.path.map(key).join(" ")}`);
  } catch (e) {
    status(String(e), true);
  }
  picked = null;
}

function runSolve() {
  try {
    const started = performance.now();
    solved = JSON.parse(solve($("instance").value));
    const ms = (performance.now() - started).toFixed(0);
    clear();
    (solved.view.kind === "interval" ? drawInterval : drawBi)(solved);
    status(`${summary(solved)} (${ms} ms)`);
  } catch (e) {
    solved = null;
    status(String(e), true);
  }
  picked = null;
}

await init();
$("generate").addEventListener("click", () => {
  try {
    $("instance").value = generate(request());
    runSolve();
  } catch (e) {
    status(String(e), true);
  }
});
$("solve").addEventListener("click", runSolve);
$("generate").click();
