import { describe, expect, it, vi } from "vitest";
import { ApiError } from "../src/api.js";
import { createStore } from "../src/state.js";
import { STATS, stubApi } from "./fixture.js";

describe("store", () => {
  it("walks landing -> loading -> results on success", async () => {
    const store = createStore(stubApi());
    const phases: string[] = [];
    store.subscribe((s) => phases.push(s.phase));

    expect(store.state.phase).toBe("landing");
    await store.submit({ place: "Gridville" });

    expect(phases).toEqual(["loading", "results"]);
    expect(store.state.stats).toEqual(STATS);
    expect(store.state.banner).toBeNull();
  });

  it("returns to landing with a banner on api errors", async () => {
    const api = stubApi({
      localStats: vi.fn(async () => {
        throw new ApiError("PLACE_NOT_FOUND", "We couldn't find that place. Try a nearby city or town name.");
      }),
    });
    const store = createStore(api);
    await store.submit({ place: "Atlantis" });

    expect(store.state.phase).toBe("landing");
    expect(store.state.banner).toContain("couldn't find that place");
    expect(store.state.stats).toBeNull();
  });

  it("uses a generic banner for unexpected failures", async () => {
    const api = stubApi({
      localStats: vi.fn(async () => {
        throw new TypeError("fetch exploded");
      }),
    });
    const store = createStore(api);
    await store.submit({ place: "x" });

    expect(store.state.phase).toBe("landing");
    expect(store.state.banner).toContain("Something went wrong");
  });

  it("ignores submits while a request is in flight", async () => {
    let release!: () => void;
    const gate = new Promise<void>((resolve) => {
      release = resolve;
    });
    const api = stubApi({
      localStats: vi.fn(async () => {
        await gate;
        return STATS;
      }),
    });
    const store = createStore(api);

    const first = store.submit({ place: "one" });
    await store.submit({ place: "two" });
    await store.submit({ lat: 1, lon: 2 });
    expect(api.localStats).toHaveBeenCalledTimes(1);

    release();
    await first;
    expect(store.state.phase).toBe("results");
  });

  it("never reaches results without a response", async () => {
    const store = createStore(stubApi());
    const seen: Array<[string, boolean]> = [];
    store.subscribe((s) => seen.push([s.phase, s.stats !== null]));
    await store.submit({ place: "Gridville" });
    for (const [phase, hasStats] of seen) {
      if (phase === "results") expect(hasStats).toBe(true);
    }
  });
});
