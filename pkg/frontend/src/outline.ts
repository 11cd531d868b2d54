/**
 * Outline side panel state.
 *
 * Content always equals the server's latest OutlineBuilding artifact after a
 * refresh; the hide/unhide toggle is purely local and never refetches or
 * mutates content. Kept as an explicit little state machine so the
 * transitions are testable without a DOM.
 */

export interface OutlinePanelState {
  outline: string;
  visible: boolean;
  /** False until the first refresh delivers a server artifact. */
  loaded: boolean;
}

export type OutlineEvent =
  | { kind: "toggle" }
  | { kind: "refresh"; outline: string | null };

export function initialOutlineState(): OutlinePanelState {
  return { outline: "", visible: false, loaded: false };
}

export function outlineReduce(
  state: OutlinePanelState,
  event: OutlineEvent,
): OutlinePanelState {
  switch (event.kind) {
    case "toggle":
      // Local only: content untouched, nothing fetched.
      return { ...state, visible: !state.visible };
    case "refresh":
      if (event.outline === null) {
        // No outline artifact on the server yet; visibility is preserved.
        return { ...state, outline: "", loaded: false };
      }
      return { ...state, outline: event.outline, loaded: true };
  }
}
