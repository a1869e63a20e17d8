import { TrendSeries } from "./api.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const W = 640;
const H = 220;
const PAD = { left: 44, right: 12, top: 12, bottom: 26 };

function polyline(xs: number[], ys: number[], cls: string): SVGPolylineElement {
  const el = document.createElementNS(SVG_NS, "polyline");
  el.classList.add(cls);
  el.setAttribute("points", xs.map((x, i) => `${x},${ys[i]}`).join(" "));
  return el;
}

/**
 * Two lines (7-day rolling cases and deaths) on a shared date axis.
 * Hovering a date column shows that date's values verbatim from the
 * payload; the chart does no aggregation of its own.
 */
export function renderTrend(container: HTMLElement, trend: TrendSeries): void {
  container.textContent = "";
  const n = trend.dates.length;
  if (n === 0) return;

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.classList.add("trend-chart");
  svg.setAttribute("viewBox", `0 0 ${W} ${H}`);

  const top = Math.max(...trend.cases, ...trend.deaths, 1);
  const plotW = W - PAD.left - PAD.right;
  const plotH = H - PAD.top - PAD.bottom;
  const x = (i: number) => PAD.left + (n === 1 ? plotW / 2 : (plotW * i) / (n - 1));
  const y = (v: number) => PAD.top + plotH - (plotH * v) / top;

  const axis = document.createElementNS(SVG_NS, "line");
  axis.classList.add("trend-axis");
  axis.setAttribute("x1", String(PAD.left));
  axis.setAttribute("y1", String(PAD.top + plotH));
  axis.setAttribute("x2", String(W - PAD.right));
  axis.setAttribute("y2", String(PAD.top + plotH));
  svg.appendChild(axis);

  const xs = trend.dates.map((_, i) => x(i));
  svg.appendChild(polyline(xs, trend.cases.map(y), "trend-line-cases"));
  svg.appendChild(polyline(xs, trend.deaths.map(y), "trend-line-deaths"));

  const tooltip = document.createElement("div");
  tooltip.classList.add("trend-tooltip");
  tooltip.hidden = true;

  for (let i = 0; i < n; i++) {
    const pt = document.createElementNS(SVG_NS, "circle");
    pt.classList.add("trend-pt");
    pt.dataset.date = trend.dates[i];
    pt.setAttribute("cx", String(xs[i]));
    pt.setAttribute("cy", String(y(trend.cases[i])));
    pt.setAttribute("r", "6");
    const show = () => {
      tooltip.textContent =
        `${trend.dates[i]}: ${trend.cases[i]} cases, ${trend.deaths[i]} deaths`;
      tooltip.hidden = false;
    };
    pt.addEventListener("mouseenter", show);
    pt.addEventListener("mouseleave", () => {
      tooltip.hidden = true;
    });
    svg.appendChild(pt);
  }

  container.appendChild(svg);
  container.appendChild(tooltip);
}
