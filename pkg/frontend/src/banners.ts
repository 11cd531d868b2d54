/**
 * Human-readable banners for every error code the API can emit.
 *
 * The server's error envelope is {code, message, detail?}; the banner leads
 * with a plain-language line and keeps the server message as supporting
 * detail. Unknown codes fall back to a generic banner rather than leaking a
 * raw identifier at the user.
 */

import type { ApiError } from "./client.js";

export type BannerTone = "info" | "warning" | "error";

export interface Banner {
  tone: BannerTone;
  headline: string;
  /** Server-provided context, already human-oriented. */
  detail: string;
}

const HEADLINES: Record<string, { tone: BannerTone; headline: string }> = {
  invalid_request: { tone: "warning", headline: "That request was malformed — check the form and try again." },
  validation_rejected: { tone: "info", headline: "Your submission needs a bit more substance before coaching can help." },
  empty_assignment: { tone: "warning", headline: "An assignment prompt is required to start a task." },
  invalid_stage: { tone: "warning", headline: "That stage name isn't part of the workflow." },
  unauthorized: { tone: "error", headline: "You're signed out — log in to continue." },
  auth_failed: { tone: "error", headline: "Username and password didn't match." },
  forbidden: { tone: "error", headline: "That task belongs to another account." },
  not_found: { tone: "warning", headline: "Nothing with that identifier exists." },
  busy: { tone: "info", headline: "The task is still finishing your previous action — it will retry in a moment." },
  duplicate_username: { tone: "warning", headline: "That username is taken — pick another." },
  session_completed: { tone: "info", headline: "This session is complete; no further changes are possible." },
  missing_submission: { tone: "info", headline: "Submit your work for this stage before advancing." },
  submission_not_allowed: { tone: "info", headline: "This stage takes no input — review the feedback and advance." },
  missing_section: { tone: "warning", headline: "The essay is missing a required section." },
  provider_failure: { tone: "error", headline: "The writing coach had trouble responding — your work is saved; try again." },
  provider_unavailable: { tone: "error", headline: "The coaching service is unreachable right now — try again shortly." },
  malformed_response: { tone: "error", headline: "The coach sent back something unreadable — try again." },
  feedback_error: { tone: "error", headline: "The feedback couldn't be read — try submitting again." },
  empty_response: { tone: "error", headline: "The coach returned an empty reply — try again." },
  missing_criterion: { tone: "error", headline: "The feedback came back incomplete — try submitting again." },
  out_of_order_criteria: { tone: "error", headline: "The feedback came back scrambled — try submitting again." },
  storage_unavailable: { tone: "error", headline: "Saving is temporarily unavailable — nothing was recorded." },
  error: { tone: "error", headline: "Something went wrong on the server." },
};

/** Every code with a dedicated banner; useful for exhaustiveness checks. */
export const KNOWN_ERROR_CODES: readonly string[] = Object.keys(HEADLINES);

export function bannerFor(error: Pick<ApiError, "code" | "message" | "detail">): Banner {
  const entry = HEADLINES[error.code] ?? HEADLINES["error"]!;
  let detail = error.message;
  const redirect = error.detail?.["redirect_message"];
  if (typeof redirect === "string" && redirect) {
    detail = redirect; // the server's own coaching redirect reads best as-is
  }
  return { tone: entry.tone, headline: entry.headline, detail };
}
