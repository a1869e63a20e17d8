import { afterEach, beforeEach, describe, expect, it } from "vitest";
import { initCommitPanel, ITEM_LABELS } from "../src/commit.js";
import { RECEIPT, mount, flush, stubApi } from "./fixture.js";
import type { StubApi } from "./fixture.js";

function boxes(root: HTMLElement): HTMLInputElement[] {
  return [...root.querySelectorAll<HTMLInputElement>("input[type=checkbox]")];
}

function commitButton(root: HTMLElement): HTMLButtonElement {
  return root.querySelector<HTMLButtonElement>(".commit-button")!;
}

describe("commitment panel", () => {
  let root: HTMLElement;
  let api: StubApi;
  let totals: number[];
  let confettiEvents: number;
  const onConfetti = () => {
    confettiEvents += 1;
  };

  beforeEach(() => {
    document.body.innerHTML = "";
    root = mount();
    api = stubApi();
    totals = [];
    confettiEvents = 0;
    document.addEventListener("confetti", onConfetti);
    initCommitPanel(root, { api, onTotal: (t) => totals.push(t) });
  });

  afterEach(() => {
    document.removeEventListener("confetti", onConfetti);
  });

  it("lists all five commitments", () => {
    const items = boxes(root);
    expect(items).toHaveLength(5);
    const labels = [...root.querySelectorAll(".commit-item span")].map(
      (s) => s.textContent,
    );
    expect(labels).toEqual(ITEM_LABELS);
  });

  it("fires exactly one confetti event per box checked, none on uncheck", () => {
    const items = boxes(root);
    items[0].checked = true;
    items[0].dispatchEvent(new Event("change", { bubbles: true }));
    expect(confettiEvents).toBe(1);

    items[3].checked = true;
    items[3].dispatchEvent(new Event("change", { bubbles: true }));
    expect(confettiEvents).toBe(2);

    items[0].checked = false;
    items[0].dispatchEvent(new Event("change", { bubbles: true }));
    expect(confettiEvents).toBe(2);
  });

  it("keeps the button disabled while nothing is checked", () => {
    const items = boxes(root);
    const btn = commitButton(root);
    expect(btn.disabled).toBe(true);

    items[2].checked = true;
    items[2].dispatchEvent(new Event("change", { bubbles: true }));
    expect(btn.disabled).toBe(false);

    items[2].checked = false;
    items[2].dispatchEvent(new Event("change", { bubbles: true }));
    expect(btn.disabled).toBe(true);
  });

  it("blocks a zero-checked commit client-side, with no request", async () => {
    const btn = commitButton(root);
    btn.disabled = false; // simulate a stale DOM state; the handler must still refuse
    btn.click();
    await flush();
    expect(api.commit).not.toHaveBeenCalled();
    const note = root.querySelector(".commit-note")!;
    expect(note.textContent).toBe("Pick at least one commitment first.");
  });

  it("commits the checked items and reports the returned total", async () => {
    const items = boxes(root);
    items[1].checked = true;
    items[1].dispatchEvent(new Event("change", { bubbles: true }));
    items[4].checked = true;
    items[4].dispatchEvent(new Event("change", { bubbles: true }));

    commitButton(root).click();
    await flush();

    expect(api.commit).toHaveBeenCalledTimes(1);
    expect(api.commit).toHaveBeenCalledWith([false, true, false, false, true]);
    expect(totals).toEqual([RECEIPT.total]);
    expect(root.querySelector(".commit-note")!.textContent).toBe(
      "Thank you. Your commitment is counted.",
    );
  });

  it("shows share links after a commit and reports clicks", async () => {
    const items = boxes(root);
    items[0].checked = true;
    items[0].dispatchEvent(new Event("change", { bubbles: true }));
    commitButton(root).click();
    await flush();

    const fb = root.querySelector<HTMLAnchorElement>(".share-facebook")!;
    const tw = root.querySelector<HTMLAnchorElement>(".share-twitter")!;
    expect(fb.href).toContain("facebook.com/sharer");
    expect(tw.href).toContain("twitter.com/intent/tweet");

    // jsdom would try to navigate on a real anchor click; invoke the handler
    // via a cancelled click instead
    fb.addEventListener("click", (e) => e.preventDefault());
    fb.click();
    await flush();
    expect(api.share).toHaveBeenCalledWith(RECEIPT.id, "facebook");

    tw.addEventListener("click", (e) => e.preventDefault());
    tw.click();
    await flush();
    expect(api.share).toHaveBeenCalledWith(RECEIPT.id, "twitter");
  });

  it("re-enables the button and explains when the POST fails", async () => {
    api.commit.mockRejectedValueOnce(new TypeError("fetch failed"));
    const items = boxes(root);
    items[0].checked = true;
    items[0].dispatchEvent(new Event("change", { bubbles: true }));

    const btn = commitButton(root);
    btn.click();
    await flush();

    expect(btn.disabled).toBe(false);
    expect(totals).toEqual([]);
    expect(root.querySelector(".commit-note")!.textContent).toBe(
      "Couldn't record that just now. Please try again.",
    );
  });

  it("fires one more confetti burst on a successful commit", async () => {
    const items = boxes(root);
    items[0].checked = true;
    items[0].dispatchEvent(new Event("change", { bubbles: true }));
    expect(confettiEvents).toBe(1);

    commitButton(root).click();
    await flush();
    expect(confettiEvents).toBe(2);
  });
});
