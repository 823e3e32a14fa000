/**
 * Hand-rolled SVG line charts: multiple series over a shared numeric x
 * axis, grid lines, nice-number ticks, and a legend. Output is a plain
 * string, deterministic for identical input.
 */

export interface Series {
  x: number[];
  y: number[];
  color: string;
  label: string;
  width?: number;
  opacity?: number;
  markers?: boolean;
}

export interface ChartOpts {
  title: string;
  subtitle?: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  yMin?: number;
  yMax?: number;
}

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const nice = [1, 2, 5, 10].map((m) => m * mag);
  const step = nice.find((n) => n >= rough) ?? rough;
  const start = Math.ceil(min / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= max + step * 0.01; v += step) ticks.push(v);
  return ticks;
}

/** Compact tick/legend formatting: trims trailing zeros, switches to
 * scientific notation outside [1e-3, 1e4). */
export function fmtNum(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return v.toFixed(3).replace(/\.?0+$/, "");
}

export function buildLineChart(opts: ChartOpts): string {
  const { series } = opts;

  // Layout
  const W = 720, H = 360;
  const ml = 64, mr = 18, mt = 46, mb = 48;
  const pw = W - ml - mr;
  const ph = H - mt - mb;

  // X range across all series
  const allX = series.flatMap((sr) => sr.x);
  const xMin = Math.min(...allX), xMax = Math.max(...allX);
  const xOf = (v: number) => ml + ((v - xMin) / (xMax - xMin || 1)) * pw;

  // Y range, floored at zero for non-negative data
  const allY = series.flatMap((sr) => sr.y);
  const dataMax = Math.max(...allY);
  const yMin = opts.yMin ?? Math.min(0, ...allY);
  const yMax = opts.yMax ?? (dataMax > yMin ? dataMax + (dataMax - yMin) * 0.06 : yMin + 1);
  const yOf = (v: number) => mt + ph - ((v - yMin) / (yMax - yMin || 1)) * ph;

  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;

  // Title + subtitle
  s += `<text x="${ml}" y="${mt - 26}" font-size="11" font-weight="600" fill="#222">${esc(opts.title)}</text>\n`;
  if (opts.subtitle) {
    s += `<text x="${ml}" y="${mt - 14}" font-size="7.5" fill="#888">${esc(opts.subtitle)}</text>\n`;
  }

  // Clip path
  s += `<defs><clipPath id="clip"><rect x="${ml}" y="${mt}" width="${pw}" height="${ph}"/></clipPath></defs>\n`;

  // Grid
  const yTicks = niceTicks(yMin, yMax, 5);
  for (const v of yTicks) {
    const y = yOf(v);
    s += `<line x1="${ml}" y1="${y.toFixed(1)}" x2="${ml + pw}" y2="${y.toFixed(1)}" stroke="#eee" stroke-width="0.5"/>\n`;
  }

  // Series
  for (const sr of series) {
    const pts = sr.x.map((xv, i) =>
      `${xOf(xv).toFixed(1)},${yOf(sr.y[i]).toFixed(1)}`
    ).join(" ");
    s += `<polyline clip-path="url(#clip)" fill="none" stroke="${sr.color}" stroke-width="${sr.width ?? 1.2}" opacity="${sr.opacity ?? 1}" points="${pts}"/>\n`;
    if (sr.markers) {
      for (let i = 0; i < sr.x.length; i++) {
        s += `<circle clip-path="url(#clip)" cx="${xOf(sr.x[i]).toFixed(1)}" cy="${yOf(sr.y[i]).toFixed(1)}" r="2" fill="${sr.color}"/>\n`;
      }
    }
  }

  // Axes frame
  s += `<line x1="${ml}" y1="${mt}" x2="${ml}" y2="${mt + ph}" stroke="#333" stroke-width="0.7"/>\n`;
  s += `<line x1="${ml}" y1="${mt + ph}" x2="${ml + pw}" y2="${mt + ph}" stroke="#333" stroke-width="0.7"/>\n`;

  // X ticks + label
  const xTicks = niceTicks(xMin, xMax, 8);
  for (const v of xTicks) {
    const x = xOf(v);
    s += `<line x1="${x.toFixed(1)}" y1="${mt + ph}" x2="${x.toFixed(1)}" y2="${mt + ph + 3}" stroke="#333" stroke-width="0.5"/>\n`;
    s += `<text x="${x.toFixed(1)}" y="${mt + ph + 13}" text-anchor="middle" font-size="7" fill="#666">${esc(fmtNum(v))}</text>\n`;
  }
  s += `<text x="${ml + pw / 2}" y="${H - 8}" text-anchor="middle" font-size="8.5" fill="#444">${esc(opts.xLabel)}</text>\n`;

  // Y ticks + label
  for (const v of yTicks) {
    const y = yOf(v);
    s += `<line x1="${ml - 3}" y1="${y.toFixed(1)}" x2="${ml}" y2="${y.toFixed(1)}" stroke="#333" stroke-width="0.5"/>\n`;
    s += `<text x="${ml - 5}" y="${(y + 2.5).toFixed(1)}" text-anchor="end" font-size="7" fill="#666">${esc(fmtNum(v))}</text>\n`;
  }
  s += `<text x="14" y="${mt + ph / 2}" text-anchor="middle" font-size="8.5" fill="#444" transform="rotate(-90,14,${mt + ph / 2})">${esc(opts.yLabel)}</text>\n`;

  // Legend (top-right, background box for readability)
  const legendW = Math.max(...series.map((sr) => sr.label.length)) * 4.5 + 24;
  const legendH = series.length * 11 + 4;
  const ly = mt + 6;
  s += `<rect x="${ml + pw - legendW - 4}" y="${ly - 5}" width="${legendW + 8}" height="${legendH}" rx="2" fill="white" fill-opacity="0.85"/>\n`;
  let legendIdx = 0;
  for (const sr of series) {
    const lxr = ml + pw - legendW;
    const lyy = ly + legendIdx * 11;
    s += `<line x1="${lxr}" y1="${lyy}" x2="${lxr + 14}" y2="${lyy}" stroke="${sr.color}" stroke-width="${Math.min(sr.width ?? 1.2, 1.5)}" opacity="${sr.opacity ?? 1}"/>\n`;
    s += `<text x="${lxr + 18}" y="${lyy + 3}" font-size="7" fill="#444">${esc(sr.label)}</text>\n`;
    legendIdx++;
  }

  s += `</svg>\n`;
  return s;
}
