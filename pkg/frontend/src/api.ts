// Typed access to the driveshed HTTP API.
//
// The UI never does arithmetic on epidemic data; every number on screen
// comes out of these payloads unchanged.

export interface CountyRow {
  fips: string;
  name: string;
  cases: number;
  deaths: number;
}

export interface TrendSeries {
  dates: string[];
  cases: number[];
  deaths: number[];
}

export interface MultiPolygonGeometry {
  type: "MultiPolygon";
  coordinates: number[][][][];
}

export interface LocalStats {
  origin: { lon: number; lat: number; matched_name: string | null };
  isochrone: MultiPolygonGeometry;
  counties: CountyRow[];
  trend: TrendSeries;
  summary: string[];
  data_version: string;
}

export interface CommitReceipt {
  id: string;
  total: number;
}

export type Channel = "facebook" | "twitter";

export type Query = { lat: number; lon: number } | { place: string };

export class ApiError extends Error {
  constructor(readonly code: string, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

const FRIENDLY: Record<string, string> = {
  PLACE_NOT_FOUND: "We couldn't find that place. Try a nearby city or town name.",
  NO_MATCH: "We couldn't find that place. Try a nearby city or town name.",
  ORIGIN_OFF_NETWORK: "That spot is too far from any road in our network.",
  BAD_REQUEST: "That doesn't look like a place name or lat, lon coordinates.",
  EMPTY_QUERY: "Type a place name first.",
  SNAPSHOT: "The data is still loading on the server. Try again in a moment.",
  NETWORK: "The server couldn't reach its data provider. Try again shortly.",
  REGION_UNRESOLVED: "We couldn't work out which state that area is in.",
};

export function friendlyMessage(code: string, fallback: string): string {
  return FRIENDLY[code] ?? fallback;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function request<T>(fetchImpl: FetchLike, url: string, init?: RequestInit): Promise<T> {
  const res = await fetchImpl(url, init);
  const body = await res.json().catch(() => null);
  if (!res.ok) {
    const code = body && typeof body.code === "string" ? body.code : "NETWORK";
    const raw = body && typeof body.message === "string" ? body.message : `HTTP ${res.status}`;
    throw new ApiError(code, friendlyMessage(code, raw));
  }
  return body as T;
}

export function makeApi(fetchImpl?: FetchLike, base = "") {
  const doFetch: FetchLike = fetchImpl ?? ((input, init) => fetch(input, init));
  return {
    async localStats(q: Query): Promise<LocalStats> {
      const params = new URLSearchParams();
      if ("place" in q) {
        params.set("place", q.place);
      } else {
        params.set("lat", String(q.lat));
        params.set("lon", String(q.lon));
      }
      return request<LocalStats>(doFetch, `${base}/api/local-stats?${params}`);
    },

    async commit(items: boolean[]): Promise<CommitReceipt> {
      return request<CommitReceipt>(doFetch, `${base}/api/commitments`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ items }),
      });
    },

    async share(id: string, channel: Channel): Promise<void> {
      await request<{ ok: boolean }>(
        doFetch,
        `${base}/api/commitments/${encodeURIComponent(id)}/share`,
        {
          method: "POST",
          headers: { "content-type": "application/json" },
          body: JSON.stringify({ channel }),
        },
      );
    },

    async count(): Promise<number> {
      const body = await request<{ total: number }>(doFetch, `${base}/api/commitments/count`);
      return body.total;
    },
  };
}

export type Api = ReturnType<typeof makeApi>;
