import { Api, Channel } from "./api.js";
import { burst } from "./confetti.js";
import { shareUrl } from "./share.js";

export const ITEM_LABELS = [
  "I will leave home less often",
  "I will wash my hands regularly",
  "I will keep 6 feet of distance",
  "I will wear a mask",
  "I will stay connected with loved ones",
];

const SHARE_TEXT = "I just made the commitment to help slow the spread.";

export interface CommitPanelOptions {
  api: Api;
  onTotal: (total: number) => void;
  maskHelpUrl?: string;
  pageUrl?: string;
}

/**
 * The pledge panel: five checkboxes, the commit button, and the share
 * prompt that appears after committing. Checking a box fires one
 * confetti burst; the button stays disabled until at least one box is
 * checked, and a zero-box commit never reaches the network.
 */
export function initCommitPanel(root: HTMLElement, opts: CommitPanelOptions): void {
  root.textContent = "";
  const pageUrl = opts.pageUrl ?? (typeof location !== "undefined" ? location.href : "");

  const heading = document.createElement("h2");
  heading.textContent = "Join us";
  root.appendChild(heading);

  const list = document.createElement("div");
  list.className = "commit-items";
  const boxes: HTMLInputElement[] = [];

  ITEM_LABELS.forEach((text, i) => {
    const label = document.createElement("label");
    label.className = "commit-item pulse";
    const box = document.createElement("input");
    box.type = "checkbox";
    box.dataset.item = String(i);
    const span = document.createElement("span");
    span.textContent = text;
    label.append(box, span);
    if (i === 3 && opts.maskHelpUrl) {
      const help = document.createElement("a");
      help.className = "mask-help";
      help.href = opts.maskHelpUrl;
      help.target = "_blank";
      help.rel = "noopener";
      help.textContent = "How to make one";
      label.appendChild(help);
    }
    list.appendChild(label);
    boxes.push(box);

    box.addEventListener("change", () => {
      label.classList.toggle("pulse", !box.checked);
      if (box.checked) burst();
      button.disabled = boxes.every((b) => !b.checked);
    });
  });
  root.appendChild(list);

  const button = document.createElement("button");
  button.type = "button";
  button.className = "commit-button";
  button.textContent = "Make the commitment";
  button.disabled = true;
  root.appendChild(button);

  const note = document.createElement("p");
  note.className = "commit-note";
  note.hidden = true;
  root.appendChild(note);

  const sharePrompt = document.createElement("div");
  sharePrompt.className = "share-prompt";
  sharePrompt.hidden = true;
  root.appendChild(sharePrompt);

  button.addEventListener("click", () => {
    const items = boxes.map((b) => b.checked);
    if (items.every((checked) => !checked)) {
      note.textContent = "Pick at least one commitment first.";
      note.hidden = false;
      return;
    }
    button.disabled = true;
    void opts.api
      .commit(items)
      .then((receipt) => {
        opts.onTotal(receipt.total);
        note.textContent = "Thank you. Your commitment is counted.";
        note.hidden = false;
        burst();
        showSharePrompt(receipt.id);
      })
      .catch(() => {
        note.textContent = "Couldn't record that just now. Please try again.";
        note.hidden = false;
        button.disabled = false;
      });
  });

  function showSharePrompt(commitmentId: string): void {
    sharePrompt.textContent = "Tell your friends: ";
    (["facebook", "twitter"] as Channel[]).forEach((channel) => {
      const a = document.createElement("a");
      a.className = `share-link share-${channel}`;
      a.href = shareUrl(channel, pageUrl, SHARE_TEXT);
      a.target = "_blank";
      a.rel = "noopener";
      a.textContent = channel === "facebook" ? "Facebook" : "Twitter";
      a.addEventListener("click", () => {
        // fire and forget; sharing shouldn't block the popup
        void opts.api.share(commitmentId, channel).catch(() => undefined);
      });
      sharePrompt.appendChild(a);
    });
    sharePrompt.hidden = false;
  }
}
