/** Typed client for the backend API.  Read-only: the UI never mutates
 * backend state, so only GET requests are issued. */

import type {
  ApiErrorBody,
  ArticleDetail,
  Health,
  Recommendation,
  SearchHit,
  SubgraphPayload,
} from './types';

export class ApiRequestError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, body: ApiErrorBody | null) {
    super(body?.message ?? `request failed with status ${status}`);
    this.status = status;
    this.code = body?.code ?? 'INTERNAL';
  }
}

export type FetchLike = (url: string) => Promise<Response>;

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base = '', fetchFn?: FetchLike) {
    this.base = base.replace(/\/+$/, '');
    this.fetchFn = fetchFn ?? ((url) => fetch(url));
  }

  private async get<T>(path: string, params?: Record<string, string>): Promise<T> {
    const query = params ? `?${new URLSearchParams(params)}` : '';
    const response = await this.fetchFn(`${this.base}${path}${query}`);
    if (!response.ok) {
      let body: ApiErrorBody | null = null;
      try {
        body = (await response.json()) as ApiErrorBody;
      } catch {
        body = null;
      }
      throw new ApiRequestError(response.status, body);
    }
    return (await response.json()) as T;
  }

  search(q: string, limit = 10): Promise<SearchHit[]> {
    return this.get('/api/search', { q, limit: String(limit) });
  }

  subgraph(q: string, radius = 1, maxNodes = 50): Promise<SubgraphPayload> {
    return this.get('/api/subgraph', {
      q,
      radius: String(radius),
      max_nodes: String(maxNodes),
    });
  }

  article(pmid: string): Promise<ArticleDetail> {
    return this.get(`/api/article/${encodeURIComponent(pmid)}`);
  }

  recommend(q: string, k = 10): Promise<Recommendation[]> {
    return this.get('/api/recommend', { q, k: String(k) });
  }

  health(): Promise<Health> {
    return this.get('/api/health');
  }
}

/** Backend base URL: ?api= query parameter, then a global override, then
 * same-origin. */
export function resolveApiBase(win: Window): string {
  const fromQuery = new URLSearchParams(win.location.search).get('api');
  if (fromQuery) return fromQuery;
  const fromGlobal = (win as Window & { LITKG_API_BASE?: string }).LITKG_API_BASE;
  return fromGlobal ?? '';
}
