/**
 * In-text highlight projection.
 *
 * The server expresses annotation offsets in Unicode scalar units (code
 * points); JavaScript strings index UTF-16 units. Conversion happens here, at
 * the boundary, and nowhere else. Projection is lossless by construction:
 * concatenating the segment texts reproduces the essay exactly, so rendering
 * never alters the essay's visible character sequence.
 */

import type { Annotation } from "./types.js";

export interface EssaySegment {
  text: string;
  /** Present when this segment is a highlighted span. */
  annotation: Annotation | null;
}

/**
 * Convert a code-point offset into a UTF-16 index. Offsets past the end of
 * the text clamp to its length (astral characters count once on the way in,
 * twice on the way out).
 */
export function codePointToUtf16(text: string, codePoints: number): number {
  let utf16 = 0;
  let remaining = codePoints;
  for (const ch of text) {
    if (remaining <= 0) break;
    utf16 += ch.length;
    remaining -= 1;
  }
  return utf16;
}

/** Inverse of codePointToUtf16 for a valid (non-surrogate-splitting) index. */
export function utf16ToCodePoint(text: string, utf16: number): number {
  let codePoints = 0;
  let consumed = 0;
  for (const ch of text) {
    if (consumed >= utf16) break;
    consumed += ch.length;
    codePoints += 1;
  }
  return codePoints;
}

/**
 * Split the essay into ordered segments, alternating plain text and
 * highlighted spans. Spans are taken in start order; a span that overlaps an
 * already-placed one or exceeds the text is dropped rather than allowed to
 * distort the essay (the server never sends such spans, but a renderer must
 * not amplify a bad payload into corrupted text).
 */
export function segmentEssay(essay: string, annotations: Annotation[]): EssaySegment[] {
  const ordered = [...annotations].sort((a, b) => a.start - b.start || a.end - b.end);
  const segments: EssaySegment[] = [];
  let cursorUtf16 = 0;
  let cursorCp = 0;

  for (const annotation of ordered) {
    if (annotation.start < cursorCp || annotation.end <= annotation.start) continue;
    const startUtf16 = codePointToUtf16(essay, annotation.start);
    const endUtf16 = codePointToUtf16(essay, annotation.end);
    if (startUtf16 >= essay.length) continue; // span entirely past the end
    if (startUtf16 > cursorUtf16) {
      segments.push({ text: essay.slice(cursorUtf16, startUtf16), annotation: null });
    }
    segments.push({ text: essay.slice(startUtf16, endUtf16), annotation });
    cursorUtf16 = endUtf16;
    cursorCp = annotation.end;
  }
  if (cursorUtf16 < essay.length) {
    segments.push({ text: essay.slice(cursorUtf16), annotation: null });
  }
  if (segments.length === 0) {
    segments.push({ text: essay, annotation: null });
  }
  return segments;
}

const CATEGORY_CLASSES: Record<Annotation["category"], string> = {
  grammar: "hl hl-grammar",
  word_choice: "hl hl-word-choice",
};

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * Render the essay as HTML with <mark> highlights and suggestion tooltips.
 * The element's textContent equals the essay exactly.
 */
export function renderEssayHtml(essay: string, annotations: Annotation[]): string {
  return segmentEssay(essay, annotations)
    .map((segment) => {
      const escaped = escapeHtml(segment.text);
      if (!segment.annotation) return escaped;
      const tooltip = segment.annotation.explanation
        ? `${segment.annotation.suggestion} — ${segment.annotation.explanation}`
        : segment.annotation.suggestion;
      const cls = CATEGORY_CLASSES[segment.annotation.category];
      return `<mark class="${cls}" title="${escapeHtml(tooltip)}">${escaped}</mark>`;
    })
    .join("");
}
