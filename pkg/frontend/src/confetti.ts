// Celebration burst, one per call.
//
// The DOM particles are decorative and skipped under reduced motion;
// the "confetti" event on document always fires and is what the rest
// of the app observes.

const COLORS = ["#e63946", "#f4a261", "#2a9d8f", "#457b9d", "#9b5de5", "#ffd166"];

function reducedMotion(): boolean {
  return typeof window.matchMedia === "function" &&
    window.matchMedia("(prefers-reduced-motion: reduce)").matches;
}

export function burst(): void {
  document.dispatchEvent(new CustomEvent("confetti"));
  if (reducedMotion()) return;

  const holder = document.createElement("div");
  holder.className = "confetti-holder";
  for (let i = 0; i < 60; i++) {
    const piece = document.createElement("span");
    const size = 6 + Math.random() * 6;
    piece.className = "confetti-piece";
    piece.style.cssText = [
      `left:${Math.random() * 100}%`,
      `width:${size}px`,
      `height:${size * 0.6}px`,
      `background:${COLORS[i % COLORS.length]}`,
      `animation-duration:${1.8 + Math.random() * 1.4}s`,
      `animation-delay:${Math.random() * 0.3}s`,
      `transform:rotate(${Math.random() * 360}deg)`,
    ].join(";");
    holder.appendChild(piece);
  }
  document.body.appendChild(holder);
  setTimeout(() => holder.remove(), 3600);
}
