/**
 * Single-page app shell.
 *
 * All state shown here is a projection of the latest TaskView and feedback
 * payloads; the client enforces no stage rules of its own beyond enabling or
 * disabling controls per available_actions. Mutating buttons disable while a
 * request is in flight (one mutation per task at a time).
 */

import { ApiError, CoachClient } from "./client.js";
import { bannerFor, type Banner } from "./banners.js";
import { formForTask } from "./forms.js";
import { renderEssayHtml } from "./highlights.js";
import { initialOutlineState, outlineReduce, type OutlinePanelState } from "./outline.js";
import { stepperFromTask } from "./stepper.js";
import type { Message, SubmitResult, TaskView } from "./types.js";
import { WALKTHROUGH } from "./walkthrough.js";

interface AppState {
  view: "login" | "create" | "task" | "walkthrough";
  banner: Banner | null;
  task: TaskView | null;
  messages: Message[];
  lastSubmit: SubmitResult | null;
  outline: OutlinePanelState;
}

const API_BASE =
  (document.querySelector("meta[name=api-base]") as HTMLMetaElement | null)?.content ??
  window.location.origin;

const client = new CoachClient({ baseUrl: API_BASE });
const root = document.getElementById("app") as HTMLElement;

const state: AppState = {
  view: "login",
  banner: null,
  task: null,
  messages: [],
  lastSubmit: null,
  outline: initialOutlineState(),
};

function setBanner(banner: Banner | null): void {
  state.banner = banner;
  render();
}

async function guarded<T>(work: () => Promise<T>): Promise<T | undefined> {
  try {
    const result = await work();
    state.banner = null;
    return result;
  } catch (error) {
    if (error instanceof ApiError) {
      setBanner(bannerFor(error));
      return undefined;
    }
    setBanner({
      tone: "error",
      headline: "Could not reach the service.",
      detail: error instanceof Error ? error.message : String(error),
    });
    return undefined;
  }
}

async function refreshTask(taskId: string): Promise<void> {
  const task = await guarded(() => client.getTask(taskId));
  if (!task) return;
  state.task = task;
  const transcript = await guarded(() => client.messages(taskId));
  state.messages = transcript ? transcript.messages : [];
  const outlineArtifact = task.artifacts["OutlineBuilding"];
  state.outline = outlineReduce(state.outline, {
    kind: "refresh",
    outline: outlineArtifact ? outlineArtifact.latest : null,
  });
  render();
}

// -- event handlers -----------------------------------------------------------

async function onLogin(username: string, password: string, isRegister: boolean): Promise<void> {
  const session = await guarded(() =>
    isRegister ? client.register(username, password) : client.login(username, password),
  );
  if (!session) return;
  client.setToken(session.token);
  state.view = "create";
  render();
}

async function onCreateTask(assignment: string): Promise<void> {
  const task = await guarded(() => client.createTask(assignment));
  if (!task) return;
  state.task = task;
  state.view = "task";
  await refreshTask(task.task_id);
}

async function onSubmit(input: string): Promise<void> {
  if (!state.task) return;
  render(); // repaint with buttons disabled while in flight
  const result = await guarded(() => client.submit(state.task!.task_id, input));
  if (result) state.lastSubmit = result;
  await refreshTask(state.task.task_id);
}

async function onAdvance(): Promise<void> {
  if (!state.task) return;
  render();
  const task = await guarded(() => client.advance(state.task!.task_id));
  if (task) state.lastSubmit = null;
  await refreshTask(state.task.task_id);
}

function onToggleOutline(): void {
  state.outline = outlineReduce(state.outline, { kind: "toggle" });
  render();
}

// -- rendering ------------------------------------------------------------------

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderBanner(parent: HTMLElement): void {
  if (!state.banner) return;
  const box = el("div", `banner banner-${state.banner.tone}`);
  box.append(el("strong", undefined, state.banner.headline));
  box.append(el("p", undefined, state.banner.detail));
  parent.append(box);
}

function renderLogin(parent: HTMLElement): void {
  const form = el("form", "login-form");
  const user = el("input");
  user.placeholder = "username";
  const pass = el("input");
  pass.type = "password";
  pass.placeholder = "password (8+ characters)";
  const loginBtn = el("button", undefined, "Log in");
  const registerBtn = el("button", undefined, "Register");
  registerBtn.type = "button";
  form.append(user, pass, loginBtn, registerBtn);
  form.addEventListener("submit", (e) => {
    e.preventDefault();
    void onLogin(user.value, pass.value, false);
  });
  registerBtn.addEventListener("click", () => void onLogin(user.value, pass.value, true));
  parent.append(form);
}

function renderCreate(parent: HTMLElement): void {
  const form = el("form", "create-form");
  const prompt = el("textarea");
  prompt.placeholder = "Paste the assignment prompt…";
  const start = el("button", undefined, "Start writing");
  form.append(prompt, start);
  form.addEventListener("submit", (e) => {
    e.preventDefault();
    void onCreateTask(prompt.value);
  });
  parent.append(form);
}

function renderStepper(parent: HTMLElement, task: TaskView): void {
  const model = stepperFromTask(task);
  const list = el("ol", "stepper");
  for (const step of model.steps) {
    const item = el(
      "li",
      [
        "step",
        step.completed ? "step-done" : "",
        step.current ? "step-current" : "",
        step.selectable ? "" : "step-future",
      ]
        .filter(Boolean)
        .join(" "),
      step.label,
    );
    if (step.selectable) {
      item.addEventListener("click", () => void showStageTranscript(step.name));
    }
    list.append(item);
  }
  parent.append(list);
  if (model.sessionComplete) {
    parent.append(el("p", "session-complete", "Session complete — well done."));
  }
}

async function showStageTranscript(stage: string): Promise<void> {
  if (!state.task) return;
  const transcript = await guarded(() => client.messages(state.task!.task_id, stage));
  if (!transcript) return;
  state.messages = transcript.messages;
  render();
}

function renderMessages(parent: HTMLElement): void {
  const pane = el("div", "chat");
  for (const message of state.messages) {
    const bubble = el("article", `msg msg-${message.role}`);
    if (message.annotations.length > 0) {
      const essay = el("div", "essay");
      essay.innerHTML = renderEssayHtml(message.content, message.annotations);
      bubble.append(essay);
      if (message.unmatched.length > 0) {
        const missed = el("div", "unmatched");
        missed.append(el("h4", undefined, "Could not locate in text"));
        const list = el("ul");
        for (const claim of message.unmatched) {
          list.append(el("li", undefined, `“${claim.quote}” — ${claim.suggestion}`));
        }
        missed.append(list);
        bubble.append(missed);
      }
    } else {
      bubble.append(el("pre", "msg-text", message.content));
    }
    bubble.append(el("footer", "msg-meta", `${message.stage} · ${message.role}`));
    pane.append(bubble);
  }
  parent.append(pane);
}

function renderResourceForm(parent: HTMLElement, task: TaskView): void {
  const box = el("details", "resources");
  box.append(el("summary", undefined, "Check resource links"));
  const input = el("textarea");
  input.placeholder = "One link per line";
  const check = el("button", undefined, "Rate reliability");
  const out = el("ul", "tiers");
  check.addEventListener("click", () => {
    const urls = input.value
      .split("\n")
      .map((u) => u.trim())
      .filter(Boolean);
    void guarded(() => client.evaluateResources(task.task_id, urls)).then((assessments) => {
      if (!assessments) return;
      out.replaceChildren(
        ...assessments.map((a) =>
          el("li", `tier tier-${a.tier.toLowerCase()}`, `${a.url} — ${a.tier} (${a.reasons.join(", ")})`),
        ),
      );
    });
  });
  box.append(input, check, out);
  parent.append(box);
}

function renderTask(parent: HTMLElement): void {
  const task = state.task;
  if (!task) return;
  renderStepper(parent, task);

  const outlineBtn = el("button", "outline-toggle", state.outline.visible ? "Hide outline" : "Show outline");
  outlineBtn.addEventListener("click", onToggleOutline);
  parent.append(outlineBtn);
  if (state.outline.visible) {
    const panel = el("aside", "outline-panel");
    panel.append(el("h3", undefined, "Outline"));
    panel.append(el("pre", undefined, state.outline.loaded ? state.outline.outline : "No outline yet."));
    parent.append(panel);
  }

  renderMessages(parent);

  const busy = client.isBusy(task.task_id);
  const form = formForTask(task, busy);
  const controls = el("form", "controls");
  let input: HTMLTextAreaElement | null = null;
  if (form.kind !== "none") {
    input = el("textarea");
    input.placeholder = form.placeholder;
    controls.append(input);
  }
  if (task.available_actions.includes("submit")) {
    const submit = el("button", undefined, "Submit for feedback");
    submit.disabled = !form.submitEnabled;
    controls.append(submit);
  }
  if (task.available_actions.includes("advance")) {
    const advanceBtn = el("button", undefined, "Advance");
    advanceBtn.type = "button";
    advanceBtn.disabled = !form.advanceEnabled;
    advanceBtn.addEventListener("click", () => void onAdvance());
    controls.append(advanceBtn);
  }
  controls.addEventListener("submit", (e) => {
    e.preventDefault();
    if (input) void onSubmit(input.value);
  });
  parent.append(controls);

  if (task.stage.name === "IdentifyingResources") {
    renderResourceForm(parent, task);
  }
}

function renderWalkthrough(parent: HTMLElement): void {
  const page = el("div", "walkthrough");
  page.append(el("h2", undefined, "How a session works"));
  for (const step of WALKTHROUGH) {
    const card = el("section", "walkthrough-step");
    card.append(el("h3", undefined, step.title));
    card.append(el("p", undefined, step.body));
    page.append(card);
  }
  parent.append(page);
}

function render(): void {
  root.replaceChildren();
  const nav = el("nav", "topbar");
  nav.append(el("span", "brand", "writecoach"));
  const help = el("button", "help", state.view === "walkthrough" ? "Back" : "How it works");
  help.addEventListener("click", () => {
    state.view = state.view === "walkthrough" ? (state.task ? "task" : "login") : "walkthrough";
    render();
  });
  nav.append(help);
  root.append(nav);

  renderBanner(root);
  switch (state.view) {
    case "login":
      renderLogin(root);
      break;
    case "create":
      renderCreate(root);
      break;
    case "task":
      renderTask(root);
      break;
    case "walkthrough":
      renderWalkthrough(root);
      break;
  }
}

render();
