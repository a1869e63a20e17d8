import { Channel } from "./api.js";

// Plain share-intent URLs; no SDKs, no tracking scripts.

export function shareUrl(channel: Channel, pageUrl: string, text: string): string {
  if (channel === "facebook") {
    return `https://www.facebook.com/sharer/sharer.php?u=${encodeURIComponent(pageUrl)}`;
  }
  return `https://twitter.com/intent/tweet?text=${encodeURIComponent(text)}&url=${encodeURIComponent(pageUrl)}`;
}
