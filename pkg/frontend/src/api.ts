import type { GameInfo, SessionView, StateDetail, ValuesDoc } from "./types.js";

export interface LoggedRequest {
  method: string;
  path: string;
  body?: unknown;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

/**
 * Thin typed client. Every request is appended to `requestLog`, so a whole
 * session can be replayed verbatim against the server (used by the
 * round-trip tests; session ids are remapped on replay since the server
 * mints fresh ones).
 */
export class ApiClient {
  readonly requestLog: LoggedRequest[] = [];

  constructor(readonly base: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    this.requestLog.push({ method, path, ...(body === undefined ? {} : { body }) });
    return this.rawRequest(method, path, body);
  }

  private async rawRequest<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await fetch(this.base + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const doc = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, (doc as { error?: string }).error ?? resp.statusText);
    }
    return doc as T;
  }

  game(): Promise<GameInfo> {
    return this.request("GET", "/game");
  }

  values(): Promise<ValuesDoc> {
    return this.request("GET", "/values");
  }

  state(id: number): Promise<StateDetail> {
    return this.request("GET", `/state/${id}`);
  }

  createSession(startState: number, humanSide: number): Promise<SessionView> {
    return this.request("POST", "/session", {
      start_state: startState,
      human_side: humanSide,
    });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request("GET", `/session/${id}`);
  }

  move(sessionId: string, successorId: number): Promise<SessionView> {
    return this.request("POST", `/session/${sessionId}/move`, {
      successor_id: successorId,
    });
  }

  deleteSession(id: string): Promise<{ deleted: boolean }> {
    return this.request("DELETE", `/session/${id}`);
  }

  /**
   * Re-issue the logged requests in order and collect the responses.
   * Session ids embedded in paths are rewritten to the ids the replay run
   * receives, so a fresh server-side session is driven through the same
   * moves.
   */
  async replay(): Promise<unknown[]> {
    const out: unknown[] = [];
    const idMap = new Map<string, string>();
    for (const entry of this.requestLog) {
      let path = entry.path;
      const match = path.match(/^\/session\/([0-9a-f]+)/);
      if (match && idMap.has(match[1])) {
        path = path.replace(match[1], idMap.get(match[1])!);
      }
      const doc = await this.rawRequest<Record<string, unknown>>(entry.method, path, entry.body);
      if (entry.method === "POST" && entry.path === "/session") {
        const original = this.findSessionIdAfter(entry);
        if (original && typeof doc.session_id === "string") {
          idMap.set(original, doc.session_id);
        }
      }
      out.push(doc);
    }
    return out;
  }

  /** The session id the original run obtained from this create request:
   * the first id referenced by a later logged path. */
  private findSessionIdAfter(entry: LoggedRequest): string | undefined {
    const start = this.requestLog.indexOf(entry);
    for (let i = start + 1; i < this.requestLog.length; i++) {
      const match = this.requestLog[i].path.match(/^\/session\/([0-9a-f]+)/);
      if (match) return match[1];
    }
    return undefined;
  }
}
