// Build first: see the project README (wasm-bindgen --target web --out-dir www/pkg).
import init, { phaseShifts, reggePoles, jostRay } from "./pkg/regge_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const SVG = "http://www.w3.org/2000/svg";
const W = 640, H = 400, PAD = 40;

function potential() {
  if ($("kind").value === "square_well") {
    return JSON.stringify({ kind: "square_well", q0: num("q0"), a: num("a") });
  }
  return JSON.stringify({ kind: "analytic_decay", amp: num("amp"), c: num("c"), p: num("p") });
}

function el(name, attrs) {
  const e = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  return e;
}

function extent(vals) {
  let lo = Math.min(...vals), hi = Math.max(...vals);
  if (!(hi > lo)) { lo -= 1; hi += 1; }
  return [lo, hi];
}

// series: [{ points: [[x, y]], color, line, dots }]
function plot(series, xlabel, ylabel) {
  const svg = $("plot");
  svg.replaceChildren();
  const all = series.flatMap((s) => s.points);
  if (all.length === 0) return;
  const [x0, x1] = extent(all.map((p) => p[0]));
  const [y0, y1] = extent(all.map((p) => p[1]));
  const sx = (x) => PAD + (x - x0) / (x1 - x0) * (W - 2 * PAD);
  const sy = (y) => H - PAD - (y - y0) / (y1 - y0) * (H - 2 * PAD);
  svg.append(el("rect", { x: PAD, y: PAD, width: W - 2 * PAD, height: H - 2 * PAD, fill: "none", stroke: "#999" }));
  for (const [txt, x, y, anchor] of [
    [x0.toPrecision(3), PAD, H - PAD + 15, "start"], [x1.toPrecision(3), W - PAD, H - PAD + 15, "end"],
    [y0.toPrecision(3), PAD - 4, H - PAD, "end"], [y1.toPrecision(3), PAD - 4, PAD + 10, "end"],
    [xlabel, W / 2, H - 8, "middle"], [ylabel, 4, PAD - 10, "start"],
  ]) {
    const t = el("text", { x, y, "text-anchor": anchor, "font-size": 12 });
    t.textContent = txt;
    svg.append(t);
  }
  for (const s of series) {
    if (s.line) {
      const d = s.points.map((p) => `${sx(p[0]).toFixed(1)},${sy(p[1]).toFixed(1)}`).join(" ");
      svg.append(el("polyline", { points: d, fill: "none", stroke: s.color, "stroke-dasharray": s.dash || "" }));
    }
    if (s.dots) {
      for (const p of s.points) {
        svg.append(el("circle", { cx: sx(p[0]), cy: sy(p[1]), r: s.r || 3, fill: s.fill || s.color, stroke: s.color }));
      }
    }
  }
}

function table(cols, rows) {
  const head = cols.map((c) => `<th>${c}</th>`).join("");
  const body = rows.map((r) => "<tr>" + r.map((v) => `<td>${v}</td>`).join("") + "</tr>").join("");
  $("table").innerHTML = `<table><tr>${head}</tr>${body}</table>`;
}

function guarded(f) {
  return () => {
    $("status").textContent = "";
    const t = performance.now();
    try {
      f();
      $("status").textContent = `done in ${(performance.now() - t).toFixed(0)} ms`;
    } catch (e) {
      $("status").textContent = String(e.message || e);
    }
  };
}

function runPhase() {
  const rows = JSON.parse(phaseShifts(potential(), num("lmax")));
  plot([{ points: rows.map((r) => [r.l, r.delta]), color: "steelblue", line: true, dots: true }], "l", "delta");
  table(["l", "nu", "delta", "route"], rows.map((r) => [r.l, r.nu, r.delta.toExponential(6), r.small_route ? "small" : "tracked"]));
}

function runPoles() {
  const s = JSON.parse(reggePoles(potential(), num("remax"), num("immax")));
  plot([
    { points: s.predicted, color: "gray", line: true, dash: "4 3", dots: true, fill: "none", r: 4 },
    { points: s.located, color: "firebrick", dots: true },
  ], "Re nu", "Im nu");
  table(["Re nu", "Im nu"], s.located.map((p) => [p[0].toFixed(8), p[1].toFixed(8)]));
}

function runRay() {
  const pts = JSON.parse(jostRay(potential(), num("arg"), num("tmax"), 120));
  plot([{ points: pts.map((p) => [p.modulus, p.log10_abs_h]), color: "darkgreen", line: true }], "|nu|", "log10 |beta/beta0|");
  table(["|nu|", "Re nu", "Im nu", "log10 |h|"],
    pts.filter((_, i) => i % 10 === 0).map((p) => [p.modulus.toFixed(3), p.re.toFixed(3), p.im.toFixed(3), p.log10_abs_h.toFixed(6)]));
}

$("kind").addEventListener("change", () => {
  const well = $("kind").value === "square_well";
  $("well-params").hidden = !well;
  $("decay-params").hidden = well;
});

await init();
$("run-phase").addEventListener("click", guarded(runPhase));
$("run-poles").addEventListener("click", guarded(runPoles));
$("run-ray").addEventListener("click", guarded(runRay));
$("status").textContent = "ready";
