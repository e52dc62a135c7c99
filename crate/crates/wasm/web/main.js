import init, { rhat_curve, profile_samples, anomaly_radial } from "./pkg/causalreg_wasm.js";

const $ = (id) => document.getElementById(id);

// Rows of a flat Float64Array.
function rows(flat, width, skip = 0) {
  const out = [];
  for (let i = skip; i + width <= flat.length; i += width) out.push(Array.from(flat.slice(i, i + width)));
  return out;
}

function plot(canvas, xs, series, { logx = false, hline = null } = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 30;
  ctx.clearRect(0, 0, w, h);
  const tx = logx ? Math.log10 : (x) => x;
  const x0 = tx(xs[0]), x1 = tx(xs[xs.length - 1]);
  let lo = Infinity, hi = -Infinity;
  for (const s of series) for (const y of s.ys) { lo = Math.min(lo, y); hi = Math.max(hi, y); }
  if (hline !== null) { lo = Math.min(lo, hline); hi = Math.max(hi, hline); }
  if (hi - lo < 1e-12) { hi += 1; lo -= 1; }
  const m = 0.05 * (hi - lo);
  lo -= m; hi += m;
  const px = (x) => pad + ((tx(x) - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - lo) / (hi - lo)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(pad, py(0)); ctx.lineTo(w - pad, py(0));
  ctx.stroke();
  ctx.fillStyle = "#666";
  ctx.font = "11px sans-serif";
  ctx.fillText(hi.toPrecision(3), 2, pad - 4);
  ctx.fillText(lo.toPrecision(3), 2, h - pad + 12);
  ctx.fillText(String(xs[0].toPrecision(2)), pad, h - 8);
  ctx.fillText(String(xs[xs.length - 1].toPrecision(2)), w - pad - 30, h - 8);

  if (hline !== null) {
    ctx.setLineDash([5, 4]);
    ctx.beginPath();
    ctx.moveTo(pad, py(hline)); ctx.lineTo(w - pad, py(hline));
    ctx.stroke();
    ctx.setLineDash([]);
  }
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    s.ys.forEach((y, i) => (i ? ctx.lineTo(px(xs[i]), py(y)) : ctx.moveTo(px(xs[i]), py(y))));
    ctx.stroke();
  }
}

function guarded(fn, out) {
  return () => {
    try {
      fn();
      if (out) out.classList.remove("err");
    } catch (e) {
      if (out) { out.textContent = String(e.message ?? e); out.classList.add("err"); }
    }
  };
}

const drawRhat = guarded(() => {
  const r = rows(rhat_curve(+$("r-lo").value, +$("r-hi").value, 200), 3);
  const xs = r.map((v) => v[0]);
  plot($("rhat"), xs, [
    { ys: r.map((v) => v[1]), color: "#1f5fbf" },
    { ys: r.map((v) => v[2]), color: "#c03020" },
  ], { logx: true, hline: 1 / Math.PI });
  const last = r[r.length - 1];
  $("rhat-out").textContent =
    `blue: Re r̂, red: Im r̂.  At m²/k² = ${xs[0].toExponential(2)}: ${r[0][1].toExponential(3)} + ${r[0][2].toFixed(6)} i;` +
    `  at ${last[0].toFixed(3)}: ${last[1].toFixed(4)} + ${last[2].toFixed(4)} i`;
}, $("rhat-out"));

const drawProfile = guarded(() => {
  const r = rows(profile_samples($("p-shape").value, +$("p-radius").value, 301), 4);
  const scale = (k) => {
    const m = Math.max(...r.map((v) => Math.abs(v[k])));
    return m > 0 ? r.map((v) => v[k] / m) : r.map(() => 0);
  };
  plot($("profile"), r.map((v) => v[0]), [
    { ys: r.map((v) => v[1]), color: "#222" },
    { ys: scale(2), color: "#1f5fbf" },
    { ys: scale(3), color: "#c03020" },
  ]);
});

const drawAnomaly = guarded(() => {
  const dim = +$("a-dim").value;
  const flat = anomaly_radial(dim, $("a-shape").value, +$("a-scale").value, +$("a-e").value, 200);
  const [integral, coefficient] = flat;
  const r = rows(flat, 2, 2);
  plot($("anomaly"), r.map((v) => v[0]), [{ ys: r.map((v) => v[1]), color: "#222" }]);
  const e = +$("a-e").value;
  const expect = dim === 4 ? `e²/16π² = ${(e * e / (16 * Math.PI ** 2)).toPrecision(10)}` : `−e/2π = ${(-e / (2 * Math.PI)).toPrecision(10)}`;
  $("anomaly-out").textContent =
    `radial integral ${integral.toPrecision(12)}, coefficient ${coefficient.toPrecision(12)}  (expected ${expect})`;
}, $("anomaly-out"));

await init();
for (const id of ["r-lo", "r-hi"]) $(id).addEventListener("input", drawRhat);
for (const id of ["p-shape", "p-radius"]) $(id).addEventListener("input", drawProfile);
for (const id of ["a-dim", "a-shape", "a-scale", "a-e"]) $(id).addEventListener("input", drawAnomaly);
drawRhat();
drawProfile();
drawAnomaly();
