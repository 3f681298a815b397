/**
 * Typed client for the quiverlab HTTP service.
 *
 * All requests go through a single promise chain, so at most one request
 * is in flight at a time; rapid clicks queue client-side and apply in
 * order.  Service errors ({"error": {type, message}}) surface as
 * ApiError so the UI can show them inline.
 */

import {
  ErrorPayloadSchema,
  parseSessionView,
  type SessionView,
} from "./model.js";

export interface ResponseLike {
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (
  url: string,
  init?: {
    method?: string;
    headers?: Record<string, string>;
    body?: string;
  },
) => Promise<ResponseLike>;

export class ApiError extends Error {
  readonly type: string;
  readonly status: number;

  constructor(type: string, message: string, status: number) {
    super(message);
    this.name = "ApiError";
    this.type = type;
    this.status = status;
  }
}

export interface CreateSessionBody {
  object?: Record<string, unknown>;
  construction?: string;
  params?: Record<string, unknown>;
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;
  private queue: Promise<unknown> = Promise.resolve();

  constructor(base: string, fetchFn?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    const fn = fetchFn ?? (globalThis.fetch as unknown as FetchLike);
    if (!fn) throw new Error("no fetch implementation available");
    this.fetchFn = fn;
  }

  /** Number of requests issued, for tests and a busy indicator. */
  requestsIssued = 0;

  private enqueue<T>(job: () => Promise<T>): Promise<T> {
    const run = this.queue.then(job, job);
    this.queue = run.then(
      () => undefined,
      () => undefined,
    );
    return run;
  }

  private request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    return this.enqueue(async () => {
      this.requestsIssued += 1;
      const init: Parameters<FetchLike>[1] = { method };
      if (body !== undefined) {
        init.headers = { "content-type": "application/json" };
        init.body = JSON.stringify(body);
      }
      const response = await this.fetchFn(this.base + path, init);
      const payload = await response.json();
      if (response.status >= 400) {
        const parsed = ErrorPayloadSchema.safeParse(payload);
        if (parsed.success) {
          throw new ApiError(
            parsed.data.error.type,
            parsed.data.error.message,
            response.status,
          );
        }
        throw new ApiError("HttpError", `status ${response.status}`, response.status);
      }
      return payload as T;
    });
  }

  async health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  async createSession(body: CreateSessionBody): Promise<SessionView> {
    return parseSessionView(await this.request("POST", "/sessions", body));
  }

  async getSession(sid: string): Promise<SessionView> {
    return parseSessionView(await this.request("GET", `/sessions/${sid}`));
  }

  async mutate(sid: string, vertex: number): Promise<SessionView> {
    return parseSessionView(
      await this.request("POST", `/sessions/${sid}/mutate`, { vertex }),
    );
  }

  async move(
    sid: string,
    move: "square" | "flip",
    location: number,
  ): Promise<SessionView> {
    return parseSessionView(
      await this.request("POST", `/sessions/${sid}/move`, { move, location }),
    );
  }

  async undo(sid: string): Promise<SessionView> {
    return parseSessionView(
      await this.request("POST", `/sessions/${sid}/undo`),
    );
  }

  async exportSession(
    sid: string,
    format: "json" | "dot",
  ): Promise<{ format: string; content: string }> {
    return this.request("GET", `/sessions/${sid}/export?format=${format}`);
  }

  async deleteSession(sid: string): Promise<{ deleted: string }> {
    return this.request("DELETE", `/sessions/${sid}`);
  }
}
