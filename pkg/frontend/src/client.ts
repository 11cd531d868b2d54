/**
 * Typed client for the writecoach HTTP API.
 *
 * One method per documented route — the UI performs no other calls. Mutating
 * requests on the same task are serialized client-side (matching the server's
 * 409 contract); a 409 that slips through anyway is retried once after the
 * in-flight call settles.
 */

import type {
  Assessment,
  ErrorBody,
  Message,
  SubmitResult,
  TaskView,
  TokenResponse,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail?: Record<string, unknown>;

  constructor(status: number, body: ErrorBody) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.detail = body.detail;
  }
}

export interface ClientOptions {
  baseUrl: string;
  fetchImpl?: typeof fetch;
}

export class CoachClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: typeof fetch;
  private token: string | null = null;
  /** Last mutating request per task; new mutations chain behind it. */
  private inflight = new Map<string, Promise<unknown>>();

  constructor(options: ClientOptions) {
    this.baseUrl = options.baseUrl.replace(/\/+$/, "");
    this.fetchImpl = options.fetchImpl ?? fetch;
  }

  setToken(token: string | null): void {
    this.token = token;
  }

  // -- auth -----------------------------------------------------------------

  register(username: string, password: string): Promise<TokenResponse> {
    return this.call("POST", "/auth/register", { username, password });
  }

  login(username: string, password: string): Promise<TokenResponse> {
    return this.call("POST", "/auth/login", { username, password });
  }

  // -- tasks ----------------------------------------------------------------

  createTask(assignmentPrompt: string): Promise<TaskView> {
    return this.call("POST", "/tasks", { assignment_prompt: assignmentPrompt });
  }

  getTask(taskId: string): Promise<TaskView> {
    return this.call("GET", `/tasks/${taskId}`);
  }

  submit(taskId: string, input: string): Promise<SubmitResult> {
    return this.mutate(taskId, () =>
      this.call<SubmitResult>("POST", `/tasks/${taskId}/submit`, { input }),
    );
  }

  advance(taskId: string): Promise<TaskView> {
    return this.mutate(taskId, () =>
      this.call<TaskView>("POST", `/tasks/${taskId}/advance`),
    );
  }

  messages(taskId: string, stage?: string): Promise<{ messages: Message[] }> {
    const query = stage ? `?stage=${encodeURIComponent(stage)}` : "";
    return this.call("GET", `/tasks/${taskId}/messages${query}`);
  }

  evaluateResources(taskId: string, urls: string[]): Promise<Assessment[]> {
    return this.call("POST", `/tasks/${taskId}/resources`, { urls });
  }

  health(): Promise<{ status: string }> {
    return this.call("GET", "/healthz");
  }

  /** True while a mutating call for the task is awaiting — disable buttons. */
  isBusy(taskId: string): boolean {
    return this.inflight.has(taskId);
  }

  // -- plumbing ---------------------------------------------------------------

  private async mutate<T>(taskId: string, send: () => Promise<T>): Promise<T> {
    const previous = this.inflight.get(taskId) ?? Promise.resolve();
    const run = previous
      .catch(() => undefined) // a failed predecessor doesn't block the queue
      .then(async () => {
        try {
          return await send();
        } catch (error) {
          if (error instanceof ApiError && error.status === 409 && error.code === "busy") {
            return await send(); // the racing call has settled by now
          }
          throw error;
        }
      });
    this.inflight.set(taskId, run);
    try {
      return await run;
    } finally {
      if (this.inflight.get(taskId) === run) this.inflight.delete(taskId);
    }
  }

  private async call<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const text = await response.text();
    let parsed: unknown = null;
    try {
      parsed = text ? JSON.parse(text) : null;
    } catch {
      parsed = null;
    }
    if (!response.ok) {
      const envelope =
        parsed && typeof parsed === "object" && "code" in (parsed as object)
          ? (parsed as ErrorBody)
          : { code: "error", message: text || response.statusText };
      throw new ApiError(response.status, envelope);
    }
    return parsed as T;
  }
}
