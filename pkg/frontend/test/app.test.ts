import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { ApiError } from "../src/api.js";
import { contains, geometryBounds } from "../src/geo.js";
import { initApp, AppHandle } from "../src/main.js";
import { STATS, flush, mount, stubApi } from "./fixture.js";
import type { StubApi } from "./fixture.js";

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function submitPlace(text: string): void {
  el<HTMLInputElement>("search-input").value = text;
  el<HTMLFormElement>("search-form").dispatchEvent(
    new Event("submit", { bubbles: true, cancelable: true }),
  );
}

describe("app", () => {
  let api: StubApi;
  let handle: AppHandle | null = null;

  beforeEach(() => {
    document.body.innerHTML = "";
    api = stubApi();
  });

  afterEach(() => {
    if (handle) handle.stop();
    handle = null;
    vi.useRealTimers();
  });

  it("walks submit through loading to results and fits the map to the area", async () => {
    handle = initApp(mount(), { api, pollMs: 60000 });
    expect(el("results").hidden).toBe(true);
    expect(el("progress").hidden).toBe(true);

    submitPlace("Gridville");
    expect(el("progress").hidden).toBe(false);
    expect(el("results").hidden).toBe(true);

    await flush();
    expect(el("progress").hidden).toBe(true);
    expect(el("results").hidden).toBe(false);
    expect(api.localStats).toHaveBeenCalledWith({ place: "Gridville" });

    const svg = el("map").querySelector("svg.iso-map")!;
    const [x, y, w, h] = svg.getAttribute("viewBox")!.split(" ").map(Number);
    const viewport = { minLon: x, minLat: -(y + h), maxLon: x + w, maxLat: -y };
    expect(contains(viewport, geometryBounds(STATS.isochrone))).toBe(true);
  });

  it("shows the payload text verbatim once results land", async () => {
    handle = initApp(mount(), { api, pollMs: 60000 });
    submitPlace("Gridville");
    await flush();

    const lines = [...el("summary").querySelectorAll("li")].map((li) => li.textContent);
    expect(lines).toEqual(STATS.summary);
    expect(el("data-version").textContent).toBe(STATS.data_version);

    const tooltip = el("map").querySelector<HTMLElement>(".map-tooltip")!;
    el("map")
      .querySelector(".county-chip")!
      .dispatchEvent(new MouseEvent("mouseenter"));
    expect(tooltip.textContent).toBe("Alder: 150 cases, 60 deaths");

    const pts = el("chart").querySelectorAll(".trend-pt");
    expect(pts).toHaveLength(STATS.trend.dates.length);
    pts[2].dispatchEvent(new MouseEvent("mouseenter"));
    expect(el("chart").querySelector(".trend-tooltip")!.textContent).toBe(
      "2020-01-24: 24 cases, 9 deaths",
    );
  });

  it("parses lat, lon typed into the search box", async () => {
    handle = initApp(mount(), { api, pollMs: 60000 });
    submitPlace("31.25, -97.5");
    await flush();
    expect(api.localStats).toHaveBeenCalledWith({ lat: 31.25, lon: -97.5 });
  });

  it("ignores an empty submit and a second submit while loading", async () => {
    handle = initApp(mount(), { api, pollMs: 60000 });
    submitPlace("   ");
    expect(api.localStats).not.toHaveBeenCalled();

    submitPlace("Gridville");
    submitPlace("Elsewhere");
    await flush();
    expect(api.localStats).toHaveBeenCalledTimes(1);
  });

  it("returns to landing with a friendly banner when lookup fails", async () => {
    api = stubApi({
      localStats: vi.fn(async () => {
        throw new ApiError(
          "PLACE_NOT_FOUND",
          "We couldn't find that place. Try a nearby city or town name.",
        );
      }),
    });
    handle = initApp(mount(), { api, pollMs: 60000 });
    submitPlace("Nowhereville");
    await flush();

    expect(el("results").hidden).toBe(true);
    expect(el("progress").hidden).toBe(true);
    const banner = el("banner");
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain("couldn't find that place");
  });

  it("hides the locate button when geolocation is unavailable", () => {
    handle = initApp(mount(), { api, pollMs: 60000 });
    expect(el("locate-btn").hidden).toBe(true);
  });

  it("shows the polled total, then rolls to the committed total", async () => {
    vi.useFakeTimers();
    api = stubApi({
      commit: vi.fn(async () => ({ id: "2020-04-01T12:00:00.000Z-000043", total: 932 })),
    });
    handle = initApp(mount(), { api, pollMs: 60000 });

    await flush();
    expect(el("commit-counter").textContent).toBe("865");

    const box = el("join").querySelector<HTMLInputElement>("input[type=checkbox]")!;
    box.checked = true;
    box.dispatchEvent(new Event("change", { bubbles: true }));
    el("join").querySelector<HTMLButtonElement>(".commit-button")!.click();
    await flush();

    await vi.advanceTimersByTimeAsync(600);
    expect(el("commit-counter").textContent).toBe("932");
    expect(api.count).toHaveBeenCalledTimes(1);
  });

  it("fires one confetti event per checkbox on the full page", async () => {
    let events = 0;
    const onConfetti = () => {
      events += 1;
    };
    document.addEventListener("confetti", onConfetti);
    try {
      handle = initApp(mount(), { api, pollMs: 60000 });
      const boxes = el("join").querySelectorAll<HTMLInputElement>("input[type=checkbox]");
      expect(boxes).toHaveLength(5);
      for (const box of boxes) {
        box.checked = true;
        box.dispatchEvent(new Event("change", { bubbles: true }));
      }
      expect(events).toBe(5);
    } finally {
      document.removeEventListener("confetti", onConfetti);
    }
  });
});
