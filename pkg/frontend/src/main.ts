import { Api, makeApi } from "./api.js";
import { renderTrend } from "./chart.js";
import { initCommitPanel } from "./commit.js";
import { startCounter } from "./counter.js";
import { renderMap } from "./map.js";
import { createStore, ViewState } from "./state.js";

const COORDS = /^\s*(-?\d+(?:\.\d+)?)\s*,\s*(-?\d+(?:\.\d+)?)\s*$/;

export interface AppOptions {
  api?: Api;
  pollMs?: number;
  maskHelpUrl?: string;
}

export interface AppHandle {
  store: ReturnType<typeof createStore>;
  stop(): void;
}

export function initApp(root: HTMLElement, opts: AppOptions = {}): AppHandle {
  const api = opts.api ?? makeApi();

  root.innerHTML = `
    <header class="masthead">
      <h1>What is the virus doing near you?</h1>
      <p class="counter-line">
        <span id="commit-counter" class="counter" aria-live="polite">&hellip;</span>
        people have made the commitment
      </p>
    </header>
    <form id="search-form">
      <input id="search-input" type="text" autocomplete="off"
             placeholder="Town or city, or lat, lon" aria-label="Your location" />
      <button id="search-btn" type="submit">Show my area</button>
      <button id="locate-btn" type="button">Use my location</button>
    </form>
    <p id="banner" class="banner" role="alert" hidden></p>
    <div id="progress" class="progress" hidden>
      <div class="progress-bar"></div>
      <span>Mapping an hour's drive from you&hellip;</span>
    </div>
    <section id="results" hidden>
      <ul id="summary" class="summary"></ul>
      <div id="map" class="map-box"></div>
      <h2>7-day rolling counts nearby</h2>
      <div id="chart" class="chart-box"></div>
      <p class="data-version">data version <span id="data-version"></span></p>
    </section>
    <section id="join" class="join-box"></section>
  `;

  const byId = <T extends HTMLElement>(id: string) =>
    root.querySelector<T>(`#${id}`) as T;

  const form = byId<HTMLFormElement>("search-form");
  const input = byId<HTMLInputElement>("search-input");
  const locate = byId<HTMLButtonElement>("locate-btn");
  const banner = byId<HTMLParagraphElement>("banner");
  const progress = byId<HTMLDivElement>("progress");
  const results = byId<HTMLElement>("results");
  const summary = byId<HTMLUListElement>("summary");
  const mapBox = byId<HTMLDivElement>("map");
  const chartBox = byId<HTMLDivElement>("chart");

  const store = createStore(api);

  function render(s: ViewState): void {
    progress.hidden = s.phase !== "loading";
    banner.hidden = s.banner === null;
    banner.textContent = s.banner ?? "";
    results.hidden = s.phase !== "results";
    if (s.phase === "results" && s.stats) {
      summary.textContent = "";
      for (const line of s.stats.summary) {
        const li = document.createElement("li");
        li.textContent = line;
        summary.appendChild(li);
      }
      renderMap(mapBox, s.stats);
      renderTrend(chartBox, s.stats.trend);
      byId<HTMLSpanElement>("data-version").textContent = s.stats.data_version;
    }
  }
  store.subscribe(render);

  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const text = input.value.trim();
    if (!text) return;
    const m = COORDS.exec(text);
    if (m) {
      void store.submit({ lat: Number(m[1]), lon: Number(m[2]) });
    } else {
      void store.submit({ place: text });
    }
  });

  if (typeof navigator !== "undefined" && navigator.geolocation) {
    locate.addEventListener("click", () => {
      navigator.geolocation.getCurrentPosition(
        (pos) => {
          void store.submit({ lat: pos.coords.latitude, lon: pos.coords.longitude });
        },
        () => {
          banner.textContent = "Couldn't read your location. Type a place name instead.";
          banner.hidden = false;
        },
      );
    });
  } else {
    locate.hidden = true;
  }

  const counter = startCounter(
    byId<HTMLSpanElement>("commit-counter"),
    () => api.count(),
    opts.pollMs ?? 15000,
  );

  initCommitPanel(byId<HTMLElement>("join"), {
    api,
    onTotal: (total) => counter.set(total),
    maskHelpUrl: opts.maskHelpUrl ?? "https://www.cdc.gov/coronavirus/2019-ncov/prevent-getting-sick/diy-cloth-face-coverings.html",
  });

  return { store, stop: () => counter.stop() };
}

const mount = typeof document !== "undefined" ? document.getElementById("app") : null;
if (mount) {
  initApp(mount);
}
