/** Thin typed client for the semrank JSON API. */

import type { Health, RankingView, SearchParams, Session } from "./types.js";

/** Error envelope raised for any non-2xx response. */
export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(code: string, message: string, status: number) {
    super(message);
    this.name = "ApiError";
    this.code = code;
    this.status = status;
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const body: unknown = await response.json().catch(() => null);
  if (!response.ok) {
    const envelope = body as { error?: { code?: string; message?: string } } | null;
    throw new ApiError(
      envelope?.error?.code ?? "unexpected",
      envelope?.error?.message ?? `request failed with status ${response.status}`,
      response.status,
    );
  }
  return body as T;
}

export function search(
  base: string,
  params: SearchParams,
  signal?: AbortSignal,
): Promise<Session> {
  return request<Session>(`${base}/api/search`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(params),
    signal,
  });
}

export function fetchView(
  base: string,
  sessionId: string,
  mode: string,
  engine?: string,
): Promise<RankingView> {
  const params = new URLSearchParams({ mode });
  if (engine) {
    params.set("engine", engine);
  }
  return request<RankingView>(
    `${base}/api/sessions/${encodeURIComponent(sessionId)}/view?${params}`,
  );
}

export function fetchHealth(base: string): Promise<Health> {
  return request<Health>(`${base}/api/health`);
}
