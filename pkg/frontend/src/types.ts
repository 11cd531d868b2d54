/**
 * Wire types for the writecoach HTTP API.
 *
 * These mirror the server's response models field-for-field; nothing here is
 * invented client-side. Annotation offsets are in Unicode scalar units (code
 * points), not UTF-16 units — convert at the rendering boundary.
 */

export type InputKind = "free_text" | "url_list" | "paragraph" | "none_required";

export type StageName =
  | "PreWriting"
  | "IdentifyingResources"
  | "ThesisStatement"
  | "OutlineBuilding"
  | "IntroductionParagraph"
  | "BodyParagraph"
  | "BodyWrapUp"
  | "ConclusionParagraph"
  | "GeneralRevising"
  | "WordChoiceEvaluation"
  | "GrammarCheck";

/** The fixed stage order; ordinal = index into this array. */
export const STAGE_ORDER: readonly StageName[] = [
  "PreWriting",
  "IdentifyingResources",
  "ThesisStatement",
  "OutlineBuilding",
  "IntroductionParagraph",
  "BodyParagraph",
  "BodyWrapUp",
  "ConclusionParagraph",
  "GeneralRevising",
  "WordChoiceEvaluation",
  "GrammarCheck",
];

export interface TokenResponse {
  token: string;
  user_id: string;
  expires_at: number;
}

export interface StageInfo {
  name: StageName;
  ordinal: number;
  input_kind: InputKind;
  criteria: string[];
}

export interface ArtifactSummary {
  latest: string;
  revision_count: number;
}

export interface TaskView {
  task_id: string;
  stage: StageInfo;
  completed: boolean;
  available_actions: ("submit" | "advance")[];
  artifacts: Record<string, ArtifactSummary>;
}

export interface FeedbackSection {
  criterion: string;
  body: string;
}

export interface Feedback {
  stage: string;
  sections: FeedbackSection[];
  verdict: "ready" | "revise";
  raw: string;
}

export interface Annotation {
  start: number;
  end: number;
  category: "grammar" | "word_choice";
  suggestion: string;
  explanation: string | null;
}

export interface UnmatchedClaim {
  quote: string;
  category: "grammar" | "word_choice";
  suggestion: string;
  explanation: string | null;
}

export interface ValidationOutcome {
  valid: boolean;
  reason: string | null;
  redirect_message: string | null;
}

export interface SubmitResult {
  feedback: Feedback;
  annotations: Annotation[];
  unmatched: UnmatchedClaim[];
  validation: ValidationOutcome;
}

export interface Assessment {
  url: string;
  tier: "High" | "Medium" | "Low" | "Invalid";
  reasons: string[];
  rationale: string | null;
}

export interface Message {
  seq: number;
  role: "user" | "assistant" | "system";
  stage: string;
  content: string;
  created_at: string;
  annotations: Annotation[];
  unmatched: UnmatchedClaim[];
}

export interface ErrorBody {
  code: string;
  message: string;
  detail?: Record<string, unknown>;
}
