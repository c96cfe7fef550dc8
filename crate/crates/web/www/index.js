import init, { product_expansion, mzv_partial_sum, li2_grid } from "./pkg/dshuffle_web.js";

const $ = (id) => document.getElementById(id);

function call(fn, ...args) {
  const out = JSON.parse(fn(...args));
  if (out.error) throw new Error(out.error);
  return out;
}

function show(el, render) {
  el.classList.remove("error");
  try {
    render();
  } catch (e) {
    el.classList.add("error");
    el.textContent = e.message;
  }
}

function formatSum(terms) {
  if (terms.length === 0) return "0";
  return terms
    .map(({ index, coeff }, i) => {
      const neg = coeff.startsWith("-");
      const mag = neg ? coeff.slice(1) : coeff;
      const sign = neg ? (i === 0 ? "-" : " - ") : i === 0 ? "" : " + ";
      return `${sign}${mag === "1" ? "" : mag + "·"}ζ(${index.join(",")})`;
    })
    .join("");
}

function products() {
  const el = $("prod-out");
  show(el, () => {
    const r = call(product_expansion, $("prod-a").value, $("prod-b").value);
    const lines = [`stuffle:  ${formatSum(r.stuffle)}`];
    if (r.shuffle) {
      lines.push(`shuffle:  ${formatSum(r.shuffle)}`);
      lines.push(`relation: ${formatSum(r.relation)} = 0`);
    } else {
      lines.push("shuffle needs both indices admissible (last part > 1)");
    }
    el.textContent = lines.join("\n");
  });
}

function partialSum() {
  const el = $("sum-out");
  show(el, () => {
    const n = Number.parseInt($("sum-n").value, 10);
    if (!(n > 0)) throw new Error("N must be a positive integer");
    const r = call(mzv_partial_sum, $("sum-idx").value, n);
    el.textContent = `${r.value.toPrecision(15)} ± ${r.error_bound.toExponential(2)}`;
  });
}

function grid() {
  const el = $("grid-out");
  show(el, () => {
    const cap = Number.parseInt($("grid-cap").value, 10);
    if (!(cap >= 0)) throw new Error("degree must be a nonnegative integer");
    const r = call(li2_grid, $("grid-a").value, $("grid-b").value, cap);
    const head = ["i \\ j", ...Array.from({ length: cap + 1 }, (_, j) => j)];
    const rows = r.rows.map((row, i) => [i, ...row, ...Array(cap + 1 - row.length).fill("")]);
    const table = document.createElement("table");
    for (const [k, cells] of [head, ...rows].entries()) {
      const tr = table.insertRow();
      for (const c of cells) {
        const td = document.createElement(k === 0 ? "th" : "td");
        td.textContent = c === "0" ? "·" : c;
        tr.appendChild(td);
      }
    }
    el.replaceChildren(table);
  });
}

await init();
$("prod-go").onclick = products;
$("sum-go").onclick = partialSum;
$("grid-go").onclick = grid;
products();
partialSum();
grid();
