/**
 * Embedded usage walkthrough — the in-app substitute for a tutorial video.
 * Rendered as a static page; one entry per workflow stop.
 */

export interface WalkthroughStep {
  title: string;
  body: string;
}

export const WALKTHROUGH: readonly WalkthroughStep[] = [
  {
    title: "Start a task",
    body: "Paste your assignment prompt. The coach keeps it pinned for every later stage, so feedback always checks your work against the actual assignment.",
  },
  {
    title: "Answer the pre-writing questions",
    body: "Type the key questions your essay should answer. You'll get feedback on how well they align with the assignment and how specific they are. Revise as often as you like — Advance moves on when you're satisfied.",
  },
  {
    title: "Gather resources",
    body: "Paste links, one per line. Each is rated High, Medium, Low, or Invalid with the reasons shown. This check is instant and deterministic; you can also preview links any time from the Resources panel.",
  },
  {
    title: "Thesis and outline",
    body: "Submit a one-sentence thesis, then an outline. The outline stays available in the side panel for the rest of the session — toggle it with the Outline button; hiding it never loses its content.",
  },
  {
    title: "Draft paragraph by paragraph",
    body: "Introduction, body paragraphs (submit as many as your outline needs — each one is kept), then the conclusion. The coach critiques against named criteria and never writes sentences for you.",
  },
  {
    title: "Revise the whole essay",
    body: "At General Revising the app assembles your full draft and seeds it into the editor. Submit revised versions until the organization, flow, and completeness feel right.",
  },
  {
    title: "Word choice and grammar",
    body: "The final two stages need no input: the coach analyzes your latest full essay and highlights exact spots in the text. Hover a highlight for the suggestion; anything the coach couldn't pin to a spot is listed under the essay.",
  },
  {
    title: "Finish",
    body: "Advancing past Grammar Check completes the session. The transcript stays readable stage by stage via the stepper.",
  },
];
