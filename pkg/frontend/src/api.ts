// Thin HTTP client for the engine server. All analytics happen server-side;
// the client only moves JSON documents back and forth.

import type { EnhancedCubeDoc, EngineError } from "./types.js";

export class ApiError extends Error {
  constructor(public readonly detail: EngineError) {
    super(`${detail.stage}: ${detail.message}`);
    this.name = "ApiError";
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class EngineClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const res = await this.fetchImpl(this.baseUrl + path, init);
    const body = await res.json();
    if (!res.ok) {
      throw new ApiError(body as EngineError);
    }
    return body;
  }

  async createSession(): Promise<string> {
    const body = (await this.request("/sessions", { method: "POST" })) as {
      id: string;
    };
    return body.id;
  }

  async submitIntention(
    sessionId: string,
    text: string,
  ): Promise<EnhancedCubeDoc> {
    return (await this.request(`/sessions/${sessionId}/intentions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text }),
    })) as EnhancedCubeDoc;
  }

  async getDashboard(sessionId: string): Promise<EnhancedCubeDoc[]> {
    return (await this.request(
      `/sessions/${sessionId}/dashboard`,
    )) as EnhancedCubeDoc[];
  }

  async getCatalog(): Promise<Record<string, string[]>> {
    return (await this.request("/catalog")) as Record<string, string[]>;
  }

  /** Compose a statement and submit it in one call. */
  async composeAndSubmit(
    sessionId: string,
    parts: { target: string; operator: string; args?: string },
  ): Promise<EnhancedCubeDoc> {
    const tail = parts.args ? ` ${parts.args}` : "";
    return this.submitIntention(
      sessionId,
      `with ${parts.target} ${parts.operator}${tail}`,
    );
  }
}
