import { LocalStats } from "./api.js";
import { Bounds, contains, geometryBounds, pad } from "./geo.js";

const SVG_NS = "http://www.w3.org/2000/svg";

// Drawn in plain lon/lat with the y axis flipped (SVG y grows down).
function toPath(coordinates: number[][][][]): string {
  const parts: string[] = [];
  for (const polygon of coordinates) {
    for (const ring of polygon) {
      const cmds = ring.map(([lon, lat], i) => `${i === 0 ? "M" : "L"}${lon} ${-lat}`);
      parts.push(cmds.join("") + "Z");
    }
  }
  return parts.join("");
}

function viewBoxOf(b: Bounds): string {
  return `${b.minLon} ${-b.maxLat} ${b.maxLon - b.minLon} ${b.maxLat - b.minLat}`;
}

function boundsFromViewBox(svg: SVGSVGElement): Bounds {
  const [x, y, w, h] = (svg.getAttribute("viewBox") ?? "0 0 1 1").split(" ").map(Number);
  return { minLon: x, minLat: -(y + h), maxLon: x + w, maxLat: -y };
}

function attachZoomAndPan(svg: SVGSVGElement, home: Bounds): void {
  svg.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    const b = boundsFromViewBox(svg);
    const factor = ev.deltaY > 0 ? 1.25 : 0.8;
    const cx = (b.minLon + b.maxLon) / 2;
    const cy = (b.minLat + b.maxLat) / 2;
    const w = (b.maxLon - b.minLon) * factor;
    const h = (b.maxLat - b.minLat) * factor;
    const next = {
      minLon: cx - w / 2,
      minLat: cy - h / 2,
      maxLon: cx + w / 2,
      maxLat: cy + h / 2,
    };
    // zooming out never goes past the fitted view
    svg.setAttribute("viewBox", viewBoxOf(contains(next, home) ? home : next));
  }, { passive: false });

  let drag: { x: number; y: number } | null = null;
  svg.addEventListener("pointerdown", (ev) => {
    drag = { x: ev.clientX, y: ev.clientY };
    svg.setPointerCapture?.(ev.pointerId);
  });
  svg.addEventListener("pointermove", (ev) => {
    if (!drag) return;
    const b = boundsFromViewBox(svg);
    const rect = svg.getBoundingClientRect();
    const scaleX = (b.maxLon - b.minLon) / (rect.width || 1);
    const scaleY = (b.maxLat - b.minLat) / (rect.height || 1);
    const dLon = (drag.x - ev.clientX) * scaleX;
    const dLat = (ev.clientY - drag.y) * scaleY;
    drag = { x: ev.clientX, y: ev.clientY };
    svg.setAttribute("viewBox", viewBoxOf({
      minLon: b.minLon + dLon,
      minLat: b.minLat + dLat,
      maxLon: b.maxLon + dLon,
      maxLat: b.maxLat + dLat,
    }));
  });
  svg.addEventListener("pointerup", () => {
    drag = null;
  });
}

/**
 * Render the drive-time area into `container` and return the fitted
 * viewport. The viewport always contains the isochrone's bounding box
 * (10% padding each side). County stats ride along as hover chips; the
 * payload has no county geometry, so chips stand in for shaded shapes.
 */
export function renderMap(container: HTMLElement, stats: LocalStats): Bounds {
  container.textContent = "";
  const bbox = geometryBounds(stats.isochrone);
  const viewport = pad(bbox, 0.1);

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.classList.add("iso-map");
  svg.setAttribute("viewBox", viewBoxOf(viewport));
  svg.setAttribute("preserveAspectRatio", "xMidYMid meet");

  const area = document.createElementNS(SVG_NS, "path");
  area.classList.add("iso-area");
  area.setAttribute("d", toPath(stats.isochrone.coordinates));
  area.setAttribute("fill-rule", "evenodd");
  svg.appendChild(area);

  const origin = document.createElementNS(SVG_NS, "circle");
  origin.classList.add("iso-origin");
  origin.setAttribute("cx", String(stats.origin.lon));
  origin.setAttribute("cy", String(-stats.origin.lat));
  origin.setAttribute("r", String((viewport.maxLon - viewport.minLon) / 80));
  svg.appendChild(origin);

  attachZoomAndPan(svg, viewport);
  container.appendChild(svg);

  const tooltip = document.createElement("div");
  tooltip.classList.add("map-tooltip");
  tooltip.hidden = true;
  container.appendChild(tooltip);

  const strip = document.createElement("div");
  strip.classList.add("county-strip");
  for (const county of stats.counties) {
    const chip = document.createElement("button");
    chip.type = "button";
    chip.classList.add("county-chip");
    chip.dataset.fips = county.fips;
    chip.textContent = county.name;
    const show = () => {
      tooltip.textContent = `${county.name}: ${county.cases} cases, ${county.deaths} deaths`;
      tooltip.hidden = false;
    };
    const hide = () => {
      tooltip.hidden = true;
    };
    chip.addEventListener("mouseenter", show);
    chip.addEventListener("focus", show);
    chip.addEventListener("mouseleave", hide);
    chip.addEventListener("blur", hide);
    strip.appendChild(chip);
  }
  container.appendChild(strip);

  return viewport;
}
