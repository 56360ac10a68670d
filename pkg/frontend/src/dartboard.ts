/** SVG dartboard for the life-domain scores.
 *
 * The server supplies each domain's radius as a fraction of the board
 * radius (score 1 on the outer ring, 7 at the bullseye). This renderer
 * only scales that fraction to pixels; it never rederives it from the
 * score, so board placement cannot drift from the service's arithmetic. */

import type { DartboardEntry } from "./models.js";

export const BOARD_SIZE = 320;
const MARGIN = 24;
const RING_SCORES = [1, 2, 3, 4, 5, 6, 7] as const;

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function ringRadius(score: number, boardRadius: number): number {
  return (boardRadius * (8 - score)) / 7;
}

export function renderDartboard(
  entries: readonly DartboardEntry[],
  size: number = BOARD_SIZE
): string {
  if (entries.length !== 4) {
    return '<div class="dartboard-empty">Dartboard appears once the values check-in is complete.</div>';
  }
  const center = size / 2;
  const boardRadius = center - MARGIN;
  const parts: string[] = [
    `<svg class="dartboard" viewBox="0 0 ${size} ${size}" role="img" aria-label="life domain dartboard">`,
  ];
  for (const score of RING_SCORES) {
    const r = ringRadius(score, boardRadius);
    parts.push(
      `<circle cx="${center}" cy="${center}" r="${r.toFixed(2)}" class="ring" data-score="${score}"/>`
    );
    parts.push(
      `<text x="${center}" y="${(center - r + 11).toFixed(2)}" class="ring-label" text-anchor="middle">${score}</text>`
    );
  }
  entries.forEach((entry, index) => {
    const angle = (-90 + index * 90) * (Math.PI / 180);
    const r = entry.radius * boardRadius;
    const x = center + r * Math.cos(angle);
    const y = center + r * Math.sin(angle);
    parts.push(
      `<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="7" class="domain-dot" data-domain="${escapeHtml(entry.domain)}" data-score="${entry.score}"/>`
    );
    const labelY = y < center ? y - 12 : y + 18;
    parts.push(
      `<text x="${x.toFixed(2)}" y="${labelY.toFixed(2)}" class="domain-label" text-anchor="middle">${escapeHtml(entry.domain)}</text>`
    );
  });
  parts.push("</svg>");
  return parts.join("\n");
}
