/** Minimal fetch stub and shared fixtures for the contract tests. */

import { TraceRecord } from "../src/api.js";

/** The search-results fixture row: Vellore sighting of TN23CB0624. */
export const FIG8C_TRACE: TraceRecord = {
  id: 1,
  number: "TN23CB0624",
  latitude: 12.9333,
  longitude: 79.1333,
  place: "Vellore TN IN",
  time: "2017-05-28 22:20:05+05:30",
  camera_id: "cam-vellore",
};

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

type GetHandler = Response | ((url: string) => Response);
type PostHandler = (body: any) => Response;

export class StubFetch {
  requests: { url: string; init?: RequestInit }[] = [];
  private gets = new Map<string, GetHandler>();
  private posts = new Map<string, PostHandler>();

  onGet(pathPrefix: string, handler: GetHandler): void {
    this.gets.set(pathPrefix, handler);
  }

  onPost(pathPrefix: string, handler: PostHandler): void {
    this.posts.set(pathPrefix, handler);
  }

  fetch = async (url: string, init?: RequestInit): Promise<Response> => {
    this.requests.push({ url, init });
    const method = init?.method ?? "GET";
    const handlers = method === "POST" ? this.posts : this.gets;
    for (const [prefix, handler] of handlers) {
      if (url.startsWith(prefix)) {
        if (typeof handler === "function") {
          const arg = method === "POST" ? JSON.parse(String(init?.body ?? "{}")) : url;
          return (handler as (x: any) => Response)(arg);
        }
        return handler;
      }
    }
    return jsonResponse({ error: { field: "request", message: "no stub" } }, 404);
  };
}
