// The live commitment counter: polls the total and rolls the displayed
// number toward new values. Poll failures keep the last good number.

function reducedMotion(): boolean {
  return typeof window.matchMedia === "function" &&
    window.matchMedia("(prefers-reduced-motion: reduce)").matches;
}

export interface CounterHandle {
  set(total: number): void;
  stop(): void;
}

export function startCounter(
  el: HTMLElement,
  fetchTotal: () => Promise<number>,
  pollMs = 15000,
): CounterHandle {
  let shown: number | null = null;
  let anim: ReturnType<typeof setInterval> | null = null;

  function settle(target: number): void {
    if (anim !== null) {
      clearInterval(anim);
      anim = null;
    }
    if (shown === null || shown === target || reducedMotion()) {
      shown = target;
      el.textContent = String(target);
      return;
    }
    const start = shown;
    shown = target;
    const steps = 20;
    let i = 0;
    anim = setInterval(() => {
      i += 1;
      el.textContent = String(Math.round(start + ((target - start) * i) / steps));
      if (i >= steps && anim !== null) {
        clearInterval(anim);
        anim = null;
      }
    }, 25);
  }

  async function poll(): Promise<void> {
    try {
      settle(await fetchTotal());
    } catch {
      // keep whatever we last showed
    }
  }

  void poll();
  const timer = setInterval(poll, pollMs);

  return {
    set: settle,
    stop(): void {
      clearInterval(timer);
      if (anim !== null) clearInterval(anim);
    },
  };
}
