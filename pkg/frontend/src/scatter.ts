// SVG plotting for Pareto fronts. Both losses are minimized and normalized,
// so every plot shares the fixed [0,1] x [0,1] frame: x = accuracy loss,
// y = normalized energy. Fronts render as a dominated-region staircase with
// one marker per model; the comparison view stays blinded (no scores).

export interface PlotPoint {
  x: number;
  y: number;
  label?: string;
}

export const AXIS_X_LABEL = "accuracy loss";
export const AXIS_Y_LABEL = "normalized energy";

const SIZE = 260;
const PAD = 34;

function px(v: number): number {
  return PAD + v * (SIZE - 2 * PAD);
}

function py(v: number): number {
  return SIZE - PAD - v * (SIZE - 2 * PAD);
}

function fmt(v: number): string {
  return Number(v.toFixed(4)).toString();
}

export function staircasePath(points: PlotPoint[]): string {
  // sort by x ascending; a valid front then has y descending. The staircase
  // extends to the worst edges (loss 1) on both sides so a singleton still
  // shows its step lines to the axes' far ends.
  const sorted = [...points].sort((a, b) => a.x - b.x || a.y - b.y);
  const parts: string[] = [];
  const first = sorted[0];
  parts.push(`M ${px(first.x)} ${py(1)}`);
  parts.push(`L ${px(first.x)} ${py(first.y)}`);
  for (let i = 1; i < sorted.length; i++) {
    const prev = sorted[i - 1];
    const cur = sorted[i];
    parts.push(`L ${px(cur.x)} ${py(prev.y)}`);
    parts.push(`L ${px(cur.x)} ${py(cur.y)}`);
  }
  const last = sorted[sorted.length - 1];
  parts.push(`L ${px(1)} ${py(last.y)}`);
  return parts.join(" ");
}

/** One front as a standalone SVG element string with the shared fixed axes. */
export function frontPlot(rows: number[][], options: { title: string; labels?: string[] } = { title: "" }): string {
  if (!rows.length || rows.some((r) => r.length !== 2 || r.some((v) => !Number.isFinite(v)))) {
    throw new Error("malformed front payload");
  }
  const points: PlotPoint[] = rows.map((r, i) => ({ x: r[0], y: r[1], label: options.labels?.[i] }));
  const markers = points
    .map((p) => {
      const title = p.label ? `<title>${p.label}</title>` : "";
      return `<circle class="pt" cx="${fmt(px(p.x))}" cy="${fmt(py(p.y))}" r="3.5">${title}</circle>`;
    })
    .join("");
  const ticks = [0, 0.5, 1]
    .map(
      (t) =>
        `<text class="tick" x="${fmt(px(t))}" y="${SIZE - PAD + 14}" text-anchor="middle">${t}</text>` +
        `<text class="tick" x="${PAD - 8}" y="${fmt(py(t) + 3)}" text-anchor="end">${t}</text>`,
    )
    .join("");
  return (
    `<svg class="front-plot" viewBox="0 0 ${SIZE} ${SIZE}" role="img" aria-label="${options.title}">` +
    `<rect class="frame" x="${PAD}" y="${PAD}" width="${SIZE - 2 * PAD}" height="${SIZE - 2 * PAD}"/>` +
    ticks +
    `<text class="axis-label x" x="${SIZE / 2}" y="${SIZE - 4}" text-anchor="middle">${AXIS_X_LABEL}</text>` +
    `<text class="axis-label y" x="10" y="${SIZE / 2}" text-anchor="middle" transform="rotate(-90 10 ${SIZE / 2})">${AXIS_Y_LABEL}</text>` +
    `<path class="staircase" d="${staircasePath(points)}"/>` +
    markers +
    `</svg>`
  );
}

/** Incumbent cost against trial count, for live optimization polling. */
export function incumbentChart(samples: { trial: number; cost: number }[]): string {
  const W = 420;
  const H = 140;
  const pad = 28;
  if (!samples.length) {
    return `<svg class="incumbent-chart" viewBox="0 0 ${W} ${H}"><text x="${W / 2}" y="${H / 2}" text-anchor="middle" class="tick">waiting for trials...</text></svg>`;
  }
  const xs = samples.map((s) => s.trial);
  const ys = samples.map((s) => s.cost);
  const xMax = Math.max(...xs, 1);
  const yMin = Math.min(...ys);
  const yMax = Math.max(...ys);
  const ySpan = yMax - yMin || 1;
  const sx = (t: number) => pad + (t / xMax) * (W - 2 * pad);
  const sy = (c: number) => H - pad - ((c - yMin) / ySpan) * (H - 2 * pad);
  const line = samples.map((s, i) => `${i ? "L" : "M"} ${fmt(sx(s.trial))} ${fmt(sy(s.cost))}`).join(" ");
  const last = samples[samples.length - 1];
  return (
    `<svg class="incumbent-chart" viewBox="0 0 ${W} ${H}" role="img" aria-label="incumbent cost by trial">` +
    `<path class="incumbent-line" d="${line}"/>` +
    `<text class="tick" x="${pad}" y="${H - 8}">trial ${last.trial}/${xMax}</text>` +
    `<text class="tick" x="${W - pad}" y="${H - 8}" text-anchor="end">incumbent cost ${fmt(last.cost)}</text>` +
    `</svg>`
  );
}
