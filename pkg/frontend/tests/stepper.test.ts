import { describe, expect, it } from "vitest";

import { stageLabel, stepperFromTask } from "../src/stepper";
import { STAGE_ORDER, type TaskView } from "../src/types";

function taskAt(ordinal: number, completed = false): TaskView {
  return {
    task_id: "t1",
    stage: {
      name: STAGE_ORDER[ordinal]!,
      ordinal,
      input_kind: "free_text",
      criteria: [],
    },
    completed,
    available_actions: completed ? [] : ["submit", "advance"],
    artifacts: {},
  };
}

describe("stepperFromTask", () => {
  it("reflects the TaskView for all 11 ordinals", () => {
    for (let ordinal = 0; ordinal < STAGE_ORDER.length; ordinal++) {
      const model = stepperFromTask(taskAt(ordinal));
      expect(model.steps).toHaveLength(11);
      expect(model.currentIndex).toBe(ordinal);

      const current = model.steps.filter((s) => s.current);
      expect(current).toHaveLength(1); // exactly one current
      expect(current[0]!.ordinal).toBe(ordinal);
      expect(current[0]!.name).toBe(STAGE_ORDER[ordinal]);

      for (const step of model.steps) {
        expect(step.completed).toBe(step.ordinal < ordinal); // only below current
        expect(step.selectable).toBe(step.ordinal <= ordinal); // future never clickable
      }
    }
  });

  it("shows 4 completed and Introduction Paragraph active at ordinal 4", () => {
    const model = stepperFromTask(taskAt(4));
    expect(model.steps.filter((s) => s.completed)).toHaveLength(4);
    const active = model.steps.find((s) => s.current)!;
    expect(active.label).toBe("Introduction Paragraph");
  });

  it("flags session completion without breaking the completed-below rule", () => {
    const model = stepperFromTask(taskAt(10, true));
    expect(model.sessionComplete).toBe(true);
    expect(model.steps[10]!.current).toBe(true);
    expect(model.steps[10]!.completed).toBe(false);
    expect(model.steps.filter((s) => s.completed)).toHaveLength(10);
  });

  it("rejects a TaskView whose name and ordinal disagree", () => {
    const view = taskAt(3);
    view.stage.name = "GrammarCheck";
    expect(() => stepperFromTask(view)).toThrow(RangeError);
    expect(() => stepperFromTask(taskAt(0)) !== undefined).not.toThrow();
    const bad = taskAt(0);
    bad.stage.ordinal = 11;
    expect(() => stepperFromTask(bad)).toThrow(RangeError);
  });

  it("humanizes stage names", () => {
    expect(stageLabel("PreWriting")).toBe("Pre Writing");
    expect(stageLabel("IdentifyingResources")).toBe("Identifying Resources");
    expect(stageLabel("BodyWrapUp")).toBe("Body Wrap Up");
    expect(stageLabel("GrammarCheck")).toBe("Grammar Check");
  });
});
