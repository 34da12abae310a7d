/** Typed client for the sensesearch JSON API. */

export interface Sense {
  headword: string;
  pos: string;
  gloss: string;
  is_fallback: boolean;
}

export interface AggregatedResult {
  url: string;
  title: string;
  snippet: string;
  count: number;
  best_rank: number;
  sources: string[];
}

export interface Cluster {
  sense: Sense;
  cluster_query: string;
  category: string | null;
  results: AggregatedResult[];
}

export interface ProviderReport {
  provider: string;
  status: string;
  elapsed_ms: number;
  links: number;
}

export interface SearchResponse {
  query: string;
  reduced_query: string;
  pivot_word: string;
  strategy: string;
  clusters: Cluster[];
  provider_status: ProviderReport[];
  served_from_cache: boolean;
}

export interface ApiError {
  code: string;
  message: string;
  detail: unknown;
}

export interface HistoryAck {
  recorded: boolean;
  user_id: string;
  query: string;
  chosen_category: string;
  timestamp_ms: number;
}

export type FetchFn = (input: string, init?: RequestInit) => Promise<Response>;

export interface SearchOptions {
  k?: number;
  user?: string;
  strategy?: string;
}

/** Thrown when the service answers with its {code, message, detail} body. */
export class ApiRequestError extends Error {
  readonly code: string;
  readonly status: number;
  readonly detail: unknown;

  constructor(status: number, body: ApiError) {
    super(body.message);
    this.name = "ApiRequestError";
    this.code = body.code;
    this.status = status;
    this.detail = body.detail;
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let body: ApiError;
  try {
    body = (await response.json()) as ApiError;
  } catch {
    body = { code: "http_error", message: `HTTP ${response.status}`, detail: null };
  }
  throw new ApiRequestError(response.status, body);
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchFn;

  constructor(base = "", fetchFn: FetchFn = (...args) => globalThis.fetch(...args)) {
    this.base = base.replace(/\/+$/, "");
    this.fetchFn = fetchFn;
  }

  searchUrl(q: string, options: SearchOptions = {}): string {
    const params = new URLSearchParams({ q });
    if (options.k !== undefined) params.set("k", String(options.k));
    if (options.user) params.set("user", options.user);
    if (options.strategy) params.set("strategy", options.strategy);
    return `${this.base}/api/search?${params.toString()}`;
  }

  async search(q: string, options: SearchOptions = {}): Promise<SearchResponse> {
    const response = await this.fetchFn(this.searchUrl(q, options));
    await raiseForStatus(response);
    return (await response.json()) as SearchResponse;
  }

  async recordSelection(userId: string, query: string, chosenCategory: string): Promise<HistoryAck> {
    const response = await this.fetchFn(`${this.base}/api/history`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ user_id: userId, query, chosen_category: chosenCategory }),
    });
    await raiseForStatus(response);
    return (await response.json()) as HistoryAck;
  }
}
