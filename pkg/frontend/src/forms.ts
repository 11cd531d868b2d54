/**
 * Per-stage input form selection, driven entirely by the server's TaskView.
 *
 * The client holds no stage table of its own: which form appears and which
 * buttons are enabled is a pure function of input_kind and available_actions,
 * so server-side rule changes flow through without client edits.
 */

import type { TaskView } from "./types.js";

export type FormKind = "short_text" | "url_list" | "paragraph" | "none";

export interface FormModel {
  kind: FormKind;
  submitEnabled: boolean;
  advanceEnabled: boolean;
  placeholder: string;
}

const PLACEHOLDERS: Record<FormKind, string> = {
  short_text: "Type your response…",
  url_list: "Paste one resource link per line…",
  paragraph: "Write your paragraph here…",
  none: "",
};

export function formForTask(view: TaskView, busy: boolean): FormModel {
  const kind: FormKind =
    view.stage.input_kind === "free_text"
      ? "short_text"
      : view.stage.input_kind === "url_list"
        ? "url_list"
        : view.stage.input_kind === "paragraph"
          ? "paragraph"
          : "none";
  return {
    kind,
    submitEnabled: !busy && view.available_actions.includes("submit"),
    advanceEnabled: !busy && view.available_actions.includes("advance"),
    placeholder: PLACEHOLDERS[kind],
  };
}
