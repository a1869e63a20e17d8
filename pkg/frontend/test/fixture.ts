import { vi } from "vitest";
import { Api, CommitReceipt, LocalStats } from "../src/api.js";

// Mirrors the service's demo-tree response shapes.
export const STATS: LocalStats = {
  origin: { lon: -97.0, lat: 31.0, matched_name: "Gridville, Texas" },
  isochrone: {
    type: "MultiPolygon",
    coordinates: [[[
      [-97.065, 30.942],
      [-96.935, 30.942],
      [-96.935, 31.058],
      [-97.065, 31.058],
      [-97.065, 30.942],
    ]]],
  },
  counties: [
    { fips: "48001", name: "Alder", cases: 150, deaths: 60 },
    { fips: "48003", name: "Birch", cases: 90, deaths: 30 },
  ],
  trend: {
    dates: ["2020-01-22", "2020-01-23", "2020-01-24", "2020-01-25",
            "2020-01-26", "2020-01-27", "2020-01-28"],
    cases: [8, 16, 24, 32, 40, 48, 56],
    deaths: [3, 6, 9, 12, 15, 18, 21],
  },
  summary: [
    "Since January, there have been 240 cases and 90 deaths within an hour's drive of you.",
    "Texas has had at least 330 cases and 150 deaths so far.",
    "450 Americans have been infected, 210 have died.",
  ],
  data_version: "58afc4c0b3a1d922",
};

export const RECEIPT: CommitReceipt = { id: "2020-04-01T12:00:00.000Z-000042", total: 865 };

export interface StubApi extends Api {
  localStats: ReturnType<typeof vi.fn>;
  commit: ReturnType<typeof vi.fn>;
  share: ReturnType<typeof vi.fn>;
  count: ReturnType<typeof vi.fn>;
}

export function stubApi(overrides: Partial<Api> = {}): StubApi {
  return {
    localStats: vi.fn(async () => STATS),
    commit: vi.fn(async () => RECEIPT),
    share: vi.fn(async () => undefined),
    count: vi.fn(async () => 865),
    ...overrides,
  } as StubApi;
}

export function mount(): HTMLElement {
  const el = document.createElement("div");
  document.body.appendChild(el);
  return el;
}

export async function flush(): Promise<void> {
  await Promise.resolve();
  await Promise.resolve();
}
