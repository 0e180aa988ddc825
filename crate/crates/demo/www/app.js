import init, { example_matrix, generate_matrix, mine, threshold_sweep } from "./pkg/mfif_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function fail(target, e) {
  target.innerHTML = "";
  const p = document.createElement("p");
  p.className = "err";
  p.textContent = String(e);
  target.append(p);
}

function table(head, rows) {
  const t = document.createElement("table");
  const tr = t.insertRow();
  for (const h of head) {
    const th = document.createElement("th");
    th.textContent = h;
    tr.append(th);
  }
  for (const r of rows) {
    const row = t.insertRow();
    for (const c of r) row.insertCell().textContent = c;
  }
  return t;
}

function runMine() {
  const out = $("mine-out");
  try {
    const r = JSON.parse(mine($("matrix").value, num("m-pct"), $("m-all").checked));
    out.innerHTML = "";
    const p = document.createElement("p");
    p.textContent = `${r.transactions} transactions × ${r.items} items, threshold ${r.threshold}. ` +
      (r.border.length ? `${r.border.length} maximal set(s).` : "Nothing frequent.") +
      (r.agree ? "" : " Baseline disagrees!");
    out.append(p);
    if (r.border.length) {
      out.append(table(["items", "size", "support", "row"],
        r.border.map((b) => [b.labels, b.size, b.support, b.flags.join(" ")])));
    }
    out.append(table(["miner", "db scans", "support calls"], [
      ["top-down", r.mfif.db_scans, r.mfif.support_calls],
      ["level-wise", r.apriori.db_scans, r.apriori.support_calls],
    ]));
  } catch (e) {
    fail(out, e);
  }
}

function drawSweep(points) {
  const c = $("chart");
  const g = c.getContext("2d");
  const pad = 40;
  const w = c.width - 2 * pad;
  const h = c.height - 2 * pad;
  g.clearRect(0, 0, c.width, c.height);
  const xs = points.map((p) => p.percent);
  const x0 = Math.min(...xs);
  const x1 = Math.max(...xs);
  const ymax = Math.max(1, ...points.flatMap((p) => [p.mfif.support_calls, p.apriori.support_calls]));
  // log scale: the two miners differ by orders of magnitude
  const ly = (v) => Math.log10(1 + v) / Math.log10(1 + ymax);
  const px = (v) => pad + (x1 === x0 ? w / 2 : ((v - x0) / (x1 - x0)) * w);
  const py = (v) => pad + h - ly(v) * h;

  g.strokeStyle = "#888";
  g.strokeRect(pad, pad, w, h);
  g.fillStyle = "#000";
  g.font = "12px system-ui";
  g.fillText("support calls (log)", pad, pad - 8);
  g.fillText(String(ymax), 2, pad + 4);
  for (const p of points) g.fillText(`${p.percent}%`, px(p.percent) - 10, pad + h + 16);

  const series = [["top-down", "#1f6feb", (p) => p.mfif.support_calls],
                  ["level-wise", "#d1242f", (p) => p.apriori.support_calls]];
  series.forEach(([name, color, f], i) => {
    g.strokeStyle = g.fillStyle = color;
    g.beginPath();
    points.forEach((p, j) => (j ? g.lineTo : g.moveTo).call(g, px(p.percent), py(f(p))));
    g.stroke();
    for (const p of points) g.fillRect(px(p.percent) - 2, py(f(p)) - 2, 5, 5);
    g.fillText(name, pad + w - 90, pad + 16 + 16 * i);
  });
}

function runSweep() {
  const out = $("sweep-out");
  try {
    const points = JSON.parse(threshold_sweep($("matrix").value, num("s-from"), num("s-to"), num("s-step")));
    drawSweep(points);
    out.innerHTML = "";
    out.append(table(
      ["min sup %", "threshold", "largest", "top-down scans", "top-down calls", "level-wise scans", "level-wise calls"],
      points.map((p) => [p.percent, p.threshold, p.largest, p.mfif.db_scans, p.mfif.support_calls,
                         p.apriori.db_scans, p.apriori.support_calls])));
  } catch (e) {
    fail(out, e);
  }
}

function runGenerate() {
  try {
    $("matrix").value = generate_matrix(num("g-rows"), num("g-items"), $("g-plant").value,
      num("g-occ"), num("g-noise"), BigInt(Math.max(0, Math.floor(num("g-seed")))));
    runMine();
  } catch (e) {
    fail($("mine-out"), e);
  }
}

await init();
$("matrix").value = example_matrix();
$("load-example").onclick = () => { $("matrix").value = example_matrix(); runMine(); };
$("generate").onclick = runGenerate;
$("mine").onclick = runMine;
$("sweep").onclick = runSweep;
runMine();
