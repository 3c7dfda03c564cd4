import init, { families, family_table, family_orbits, family_unitary } from "../pkg/supertab_wasm.js";

const $ = (id) => document.getElementById(id);
let catalogue = [];

function el(tag, text, attrs = {}) {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  Object.assign(node, attrs);
  return node;
}

function grid(headers, rows) {
  const table = el("table");
  const head = el("tr");
  headers.forEach((h) => head.appendChild(el("th", h)));
  table.appendChild(head);
  rows.forEach((r) => {
    const tr = el("tr");
    r.forEach((cell, k) => tr.appendChild(el(k === 0 ? "th" : "td", String(cell))));
    table.appendChild(tr);
  });
  return table;
}

function rep(v) {
  return "(" + v.join(",") + ")";
}

function selected() {
  const f = catalogue.find((f) => f.name === $("family").value);
  const d = f.fixed_d === null ? Number($("dim").value) : undefined;
  return [f.name, Number($("param").value), d];
}

function syncInputs() {
  const f = catalogue.find((f) => f.name === $("family").value);
  $("param-name").textContent = f.parameter;
  $("dim").disabled = f.fixed_d !== null;
  $("dim").value = f.fixed_d ?? f.default_d;
}

function summary(meta) {
  $("summary").textContent =
    `n = ${meta.n}, d = ${meta.d}, |Γ| = ${meta.group_order}, symmetry: ${meta.symmetry}`;
}

function showTable(doc) {
  const ys = doc.superclasses;
  const headers = [""].concat(ys.map((y, j) => `Y${j + 1} ${rep(y.rep)}`));
  const rows = [["size"].concat(ys.map((y) => y.size))];
  doc.text.forEach((row, i) => rows.push([`σ${i + 1}`].concat(row)));
  return grid(headers, rows);
}

function showOrbits(doc) {
  const out = el("div");
  const census = doc.census.map((c) => `${c.count}×${c.size}`).join(", ");
  out.appendChild(el("p", `${doc.superclasses.length} superclasses; census ${census}`));
  out.appendChild(grid(["", "representative", "size"], doc.superclasses.map((o, i) => [`Y${i + 1}`, rep(o.rep), o.size])));
  if (doc.grid) {
    const n = doc.meta.n;
    const cols = doc.meta.d === 2 ? n : doc.grid.length;
    const rowsCount = doc.grid.length / cols;
    const table = el("table", undefined, { id: "grid" });
    const count = doc.superclasses.length;
    for (let r = 0; r < rowsCount; r++) {
      const tr = el("tr");
      for (let c = 0; c < cols; c++) {
        const k = doc.grid[r * cols + c];
        const td = el("td", String(k + 1), { title: doc.meta.d === 2 ? `(${r},${c})` : `(${c})` });
        td.style.background = `hsl(${(360 * k) / count}, 70%, 80%)`;
        tr.appendChild(td);
      }
      table.appendChild(tr);
    }
    out.appendChild(el("p", "Superclass of each point (row = first coordinate):"));
    out.appendChild(table);
  }
  return out;
}

function showUnitary(doc) {
  const out = el("div");
  const fmt = ([re, im]) => (Math.abs(im) < 1e-12 ? re.toFixed(4) : `${re.toFixed(4)}${im >= 0 ? "+" : ""}${im.toFixed(4)}i`);
  out.appendChild(grid([""].concat(doc.unitary.map((_, j) => `${j + 1}`)), doc.unitary.map((r, i) => [`${i + 1}`].concat(r.map(fmt)))));
  const checks = doc.checks;
  const lines = [
    ["theory axioms", checks.theory.is_partition_pair && checks.theory.sizes_match && checks.theory.zero_singleton && checks.theory.constancy],
    ["orthogonality", checks.theory.orthogonality],
    ["|entry| ≤ |X_i|", checks.entry_bound],
  ];
  if (checks.unitary) {
    lines.push(["U unitary", checks.unitary.unitary.passed]);
    lines.push([checks.unitary.symmetry_required ? "U = Uᵗ" : "U = Uᵗ (informational)", checks.unitary.symmetric.passed]);
    lines.push(["U² permutation", checks.unitary.square_is_permutation.passed]);
    lines.push(["U⁴ = I", checks.unitary.fourth_power_identity.passed]);
  }
  const ul = el("ul");
  lines.forEach(([name, ok]) => ul.appendChild(el("li", `${ok ? "PASS" : "FAIL"} ${name}`, { className: ok ? "pass" : "fail" })));
  out.appendChild(ul);
  return out;
}

const ops = {
  table: [family_table, showTable],
  orbits: [family_orbits, showOrbits],
  unitary: [family_unitary, showUnitary],
};

function run(op) {
  $("error").textContent = "";
  $("output").replaceChildren();
  const [call, show] = ops[op];
  try {
    const doc = JSON.parse(call(...selected()));
    summary(doc.meta);
    $("output").appendChild(show(doc));
  } catch (e) {
    $("summary").textContent = "";
    $("error").textContent = String(e.message ?? e);
  }
}

await init();
catalogue = JSON.parse(families());
catalogue.forEach((f) => $("family").appendChild(el("option", f.name, { value: f.name, title: f.description })));
$("family").value = "diagonal";
$("family").addEventListener("change", syncInputs);
document.querySelectorAll("button[data-op]").forEach((b) => b.addEventListener("click", () => run(b.dataset.op)));
syncInputs();
run("table");
