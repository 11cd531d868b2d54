/**
 * Stage progress stepper — a pure projection of the server's TaskView.
 *
 * Invariants: exactly one current step; completed flags are true only below
 * the current index; future steps are never selectable (the workflow is
 * strictly linear and the client mirrors that).
 */

import { STAGE_ORDER, type StageName, type TaskView } from "./types.js";

export interface StepperStep {
  name: StageName;
  label: string;
  ordinal: number;
  completed: boolean;
  current: boolean;
  /** Past and current steps open their transcript; future ones are inert. */
  selectable: boolean;
}

export interface StepperModel {
  steps: StepperStep[];
  currentIndex: number;
  /** Terminal flag: the session advanced past the final stage. */
  sessionComplete: boolean;
}

/** "IntroductionParagraph" -> "Introduction Paragraph". */
export function stageLabel(name: StageName): string {
  return name.replace(/(?<=[a-z])(?=[A-Z])/g, " ");
}

export function stepperFromTask(view: TaskView): StepperModel {
  const currentIndex = view.stage.ordinal;
  if (currentIndex < 0 || currentIndex >= STAGE_ORDER.length) {
    throw new RangeError(`stage ordinal out of range: ${currentIndex}`);
  }
  if (STAGE_ORDER[currentIndex] !== view.stage.name) {
    throw new RangeError(
      `stage name ${view.stage.name} does not match ordinal ${currentIndex}`,
    );
  }
  const steps = STAGE_ORDER.map((name, ordinal) => ({
    name,
    label: stageLabel(name),
    ordinal,
    completed: ordinal < currentIndex,
    current: ordinal === currentIndex,
    selectable: ordinal <= currentIndex,
  }));
  return { steps, currentIndex, sessionComplete: view.completed };
}
