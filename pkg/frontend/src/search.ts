/**
 * Search page controller: one in-flight request, stale responses dropped,
 * errors keep the previous results on screen.
 */

import { ApiClient, normalizePlate, TraceRecord } from "./api.js";

export interface SearchView {
  showResults(traces: TraceRecord[]): void;
  showError(message: string): void;
  clearError(): void;
  setBusy(busy: boolean): void;
}

export interface SearchController {
  search(query: string): Promise<void>;
}

export function createSearchController(client: ApiClient, view: SearchView): SearchController {
  let requestSeq = 0;

  return {
    async search(query: string): Promise<void> {
      const normalized = normalizePlate(query);
      if (!normalized) {
        view.showError("enter a vehicle number");
        return;
      }
      const seq = ++requestSeq;
      view.setBusy(true);
      try {
        const traces = await client.searchTraces(normalized);
        if (seq !== requestSeq) return; // superseded by a newer query
        view.clearError();
        view.showResults(traces);
      } catch (err) {
        if (seq !== requestSeq) return;
        view.showError(err instanceof Error ? err.message : String(err));
        // previous results stay on screen
      } finally {
        if (seq === requestSeq) view.setBusy(false);
      }
    },
  };
}
