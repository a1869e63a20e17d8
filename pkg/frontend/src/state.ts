import { Api, ApiError, LocalStats, Query } from "./api.js";

export type Phase = "landing" | "loading" | "results";

export interface ViewState {
  phase: Phase;
  stats: LocalStats | null;
  banner: string | null;
}

export type Listener = (s: ViewState) => void;

/**
 * Minimal store for the page. At most one local-stats request is in
 * flight: submits during the loading phase are dropped, so the results
 * phase always shows the response to the most recent accepted query.
 */
export function createStore(api: Api) {
  let state: ViewState = { phase: "landing", stats: null, banner: null };
  const listeners = new Set<Listener>();

  function set(next: ViewState): void {
    state = next;
    for (const l of listeners) l(state);
  }

  return {
    get state(): ViewState {
      return state;
    },

    subscribe(l: Listener): () => void {
      listeners.add(l);
      return () => listeners.delete(l);
    },

    async submit(q: Query): Promise<void> {
      if (state.phase === "loading") return;
      set({ ...state, phase: "loading", banner: null });
      try {
        const stats = await api.localStats(q);
        set({ phase: "results", stats, banner: null });
      } catch (err) {
        const banner =
          err instanceof ApiError
            ? err.message
            : "Something went wrong talking to the server. Please try again.";
        set({ ...state, phase: "landing", banner });
      }
    },
  };
}

export type Store = ReturnType<typeof createStore>;
