import init, { circulant_view, family_report, compute } from "./pkg/critgroup_web.js";

const COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"];
const SVG = "http://www.w3.org/2000/svg";
const $ = (id) => document.getElementById(id);

function el(tag, attrs, text) {
  const e = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (text !== undefined) e.textContent = text;
  return e;
}

// parallel edges are bent apart so multiplicities stay visible
function draw(svg, drawing) {
  svg.replaceChildren();
  const pts = drawing.vertices;
  const seen = new Map();
  for (const [u, v] of drawing.edges) {
    const key = u < v ? `${u},${v}` : `${v},${u}`;
    const k = seen.get(key) ?? 0;
    seen.set(key, k + 1);
    const a = pts[u], b = pts[v];
    if (u === v) continue;
    const mx = (a.x + b.x) / 2, my = (a.y + b.y) / 2;
    const bend = (k % 2 ? -1 : 1) * Math.ceil(k / 2) * 0.12;
    const dx = b.x - a.x, dy = b.y - a.y, len = Math.hypot(dx, dy) || 1;
    const cx = mx - (dy / len) * bend, cy = my + (dx / len) * bend;
    svg.append(el("path", { d: `M${a.x},${a.y} Q${cx},${cy} ${b.x},${b.y}`, fill: "none", stroke: "#888", "stroke-width": 0.012 }));
  }
  pts.forEach((p, i) => {
    const c = COLORS[drawing.orbit[i] % COLORS.length];
    svg.append(el("circle", { cx: p.x, cy: p.y, r: 0.055, fill: c }));
    svg.append(el("text", { x: p.x * 1.17, y: p.y * 1.17 + 0.03, "font-size": 0.09, "text-anchor": "middle" }, p.label));
  });
}

function checksHtml(checks) {
  return "<pre>" + checks.map((c) => {
    const line = typeof c.line === "string" ? c.line : `${c.status.toUpperCase()} ${c.name}`;
    const cls = c.status.toLowerCase().replace("n/a", "");
    return `<span class="${cls}">${escape(line)}</span>`;
  }).join("\n") + "</pre>";
}

function escape(s) {
  return s.replace(/[&<>]/g, (ch) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;" })[ch]);
}

function groupText(g) {
  return g.invariant_factors.length ? g.invariant_factors.map((d) => `Z/${d}`).join(" + ") : "0";
}

function showError(out, e) {
  out.innerHTML = `<p class="error">${escape(String(e))}</p>`;
}

function runCirculant() {
  const out = $("c-out");
  try {
    const v = JSON.parse(circulant_view(Number($("c-n").value), $("c-steps").value));
    draw($("c-svg"), v.drawing);
    if (!v.connected) return showError(out, `${v.name} is disconnected`);
    let html = `<p><b>${v.name}</b>: K(G) = ${groupText(v.jacobian)} (order ${v.jacobian.order})</p>`;
    const d = v.decomposition;
    if (d.error) {
      html += `<p class="error">${escape(d.error)}</p>`;
    } else {
      html += `<p>n = ${d.n}, s = ${d.s}, t = ${d.t}; J = ${groupText(d.subgroup)}</p><ul>`;
      for (const q of d.quotients) html += `<li>${q.part}: ${q.vertices} vertices, ${q.edges} edges, K = ${groupText(q.jacobian)}</li>`;
      html += "</ul>" + checksHtml(d.checks);
    }
    out.innerHTML = html;
  } catch (e) {
    showError(out, e);
  }
}

function familySpec() {
  const name = $("f-name").value, n = Number($("f-n").value);
  switch (name) {
    case "circulant": return { family: "circulant", n, steps: [1, 2] };
    case "chained": return { family: "chained", base: "square", n };
    case "klein": case "intro": return { family: name };
    default: return { family: name, n };
  }
}

function runFamily() {
  const out = $("f-out");
  try {
    const v = JSON.parse(family_report(JSON.stringify(familySpec()), Number($("f-seed").value)));
    draw($("f-svg"), v.drawing);
    if (v.error) {
      let html = `<p class="error">${escape(v.error)}</p>`;
      if (v.certificate) {
        const c = v.certificate;
        html += `<p>|K(H1)| |K(H2)| |K(H3)| = ${c.direct_sum_order}, |K(G)| = ${c.jacobian_order}: `
          + (c.divides ? "no order obstruction" : "the direct sum cannot be a subgroup") + "</p>";
      }
      out.innerHTML = html;
      return;
    }
    const r = v.report;
    let html = `<p><b>${v.name}</b>: K(G) = ${groupText(r.jacobian)}; J = ${groupText(r.subgroup)}</p>`;
    html += checksHtml(r.checks.map((c) => ({ ...c, line: `${c.status.toUpperCase().padEnd(8)} ${c.name}` })));
    const s = r.sweep;
    if (s) html += `<p>sweep (seed ${s.seed}): ${s.trials} divisors, ${s.members_p} in P, mismatches ${s.membership_mismatches + s.split_failures + s.principal_mismatches + s.pullback_failures}</p>`;
    html += `<p class="${r.pass ? "pass" : "fail"}">${r.pass ? "all checks pass" : "some checks fail"}</p>`;
    out.innerHTML = html;
  } catch (e) {
    showError(out, e);
  }
}

function runCompute() {
  const out = $("g-out");
  try {
    const v = JSON.parse(compute($("g-text").value));
    let html = `<p>${v.vertices} vertices, ${v.edges} edges; K(G) = ${groupText(v.jacobian)}; spanning trees ${v.spanning_trees}</p>`;
    if (v.labeling) html += v.labeling.error
      ? `<p class="error">${escape(v.labeling.error)}</p>`
      : `<p>orbit labeling: n = ${v.labeling.n}, s = ${v.labeling.s}, t = ${v.labeling.t}</p>`;
    out.innerHTML = html;
  } catch (e) {
    showError(out, e);
  }
}

await init();
$("c-n").addEventListener("input", runCirculant);
$("c-steps").addEventListener("input", runCirculant);
$("f-run").addEventListener("click", runFamily);
$("g-run").addEventListener("click", runCompute);
runCirculant();
runFamily();
