/**
 * Thin client for the tracking-service JSON API.
 *
 * The UI performs no business logic beyond plate normalization and form
 * validation; every displayed value comes straight from an API field.
 */

export interface TraceRecord {
  id: number;
  number: string;
  latitude: number;
  longitude: number;
  place: string;
  time: string;
  camera_id: string;
}

export interface WatchEntry {
  id: number;
  vehicle: string;
  email: string;
  mobile: string;
  details: string;
  created_at: string;
}

export interface WatchForm {
  vehicle: string;
  email: string;
  mobile: string;
  details: string;
}

/** Server rejected one field (HTTP 400 with the field name). */
export class FieldError extends Error {
  constructor(public field: string, message: string) {
    super(message);
    this.name = "FieldError";
  }
}

/** Transport problem or 5xx: the request may be retried. */
export class ApiError extends Error {
  constructor(message: string, public status?: number) {
    super(message);
    this.name = "ApiError";
  }
}

/** Uppercase and strip all whitespace: "tn 23 cb 0624" -> "TN23CB0624". */
export function normalizePlate(raw: string): string {
  return raw.replace(/\s+/g, "").toUpperCase();
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface ClientOptions {
  baseUrl?: string;
  token?: string;
  fetchFn?: FetchLike;
}

export interface ApiClient {
  searchTraces(query: string): Promise<TraceRecord[]>;
  registerWatch(form: WatchForm): Promise<WatchEntry>;
}

export function createClient(options: ClientOptions = {}): ApiClient {
  const baseUrl = (options.baseUrl ?? "").replace(/\/$/, "");
  const fetchFn = options.fetchFn ?? fetch.bind(globalThis);

  function headers(json: boolean): Record<string, string> {
    const h: Record<string, string> = {};
    if (json) h["Content-Type"] = "application/json";
    if (options.token) h["Authorization"] = `Bearer ${options.token}`;
    return h;
  }

  async function parseError(resp: Response): Promise<never> {
    if (resp.status >= 400 && resp.status < 500) {
      let field = "request";
      let message = `HTTP ${resp.status}`;
      try {
        const body = await resp.json();
        if (body?.error?.field) {
          field = body.error.field;
          message = body.error.message ?? message;
        }
      } catch {
        /* non-JSON 4xx body */
      }
      throw new FieldError(field, message);
    }
    throw new ApiError(`service error (HTTP ${resp.status})`, resp.status);
  }

  return {
    async searchTraces(query: string): Promise<TraceRecord[]> {
      const number = normalizePlate(query);
      let resp: Response;
      try {
        resp = await fetchFn(
          `${baseUrl}/traces?number=${encodeURIComponent(number)}`,
          { headers: headers(false) },
        );
      } catch (err) {
        throw new ApiError(`network failure: ${String(err)}`);
      }
      if (!resp.ok) await parseError(resp);
      return (await resp.json()) as TraceRecord[];
    },

    async registerWatch(form: WatchForm): Promise<WatchEntry> {
      const payload = { ...form, vehicle: normalizePlate(form.vehicle) };
      let resp: Response;
      try {
        resp = await fetchFn(`${baseUrl}/watches`, {
          method: "POST",
          headers: headers(true),
          body: JSON.stringify(payload),
        });
      } catch (err) {
        throw new ApiError(`network failure: ${String(err)}`);
      }
      if (!resp.ok) await parseError(resp);
      return (await resp.json()) as WatchEntry;
    },
  };
}
