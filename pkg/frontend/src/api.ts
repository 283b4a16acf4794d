// Typed client for the search service. The fetch implementation is
// injectable so tests can substitute a mock service.

import type {
  CreateSessionResponse,
  ExpandResponse,
  NeighborsDoc,
  ParamOverrides,
  SearchResultDoc,
  SessionDoc,
} from "./types";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function unwrap<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const code = body?.code ?? "server_error";
    const message = body?.message ?? `request failed with status ${response.status}`;
    throw new ApiError(response.status, code, message);
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private get(path: string): Promise<Response> {
    return this.fetchImpl(this.baseUrl + path);
  }

  private post(path: string, payload: unknown): Promise<Response> {
    return this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async search(title: string, params?: Partial<ParamOverrides>): Promise<SearchResultDoc> {
    const query = new URLSearchParams({ title });
    for (const [key, value] of Object.entries(params ?? {})) {
      query.set(key, String(value));
    }
    return unwrap(await this.get(`/search?${query.toString()}`));
  }

  async neighbors(id: number): Promise<NeighborsDoc> {
    return unwrap(await this.get(`/page/${id}/neighbors`));
  }

  async createSession(
    title: string,
    params?: Partial<ParamOverrides>,
  ): Promise<CreateSessionResponse> {
    return unwrap(await this.post("/session", { title, params: params ?? {} }));
  }

  async getSession(token: string): Promise<SessionDoc> {
    return unwrap(await this.get(`/session/${token}`));
  }

  async rate(token: string, id: number): Promise<SessionDoc> {
    return unwrap(await this.post(`/session/${token}/rate`, { id }));
  }

  async unrate(token: string, id: number): Promise<SessionDoc> {
    return unwrap(await this.post(`/session/${token}/unrate`, { id }));
  }

  async expand(token: string, id: number): Promise<ExpandResponse> {
    return unwrap(await this.post(`/session/${token}/expand`, { id }));
  }

  async importSession(doc: SessionDoc): Promise<{ token: string; session: SessionDoc }> {
    return unwrap(await this.post("/session/import", doc));
  }
}
