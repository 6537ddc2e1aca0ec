/**
 * Pure rendering helpers for the search results table.
 *
 * Columns follow the admin page layout: NUMBER | LAT LONG & LOCATION |
 * DATE & TIME. Rows keep the API's order; no client-side resort.
 */

import { TraceRecord } from "./api.js";

export const COLUMNS = ["NUMBER", "LAT LONG & LOCATION", "DATE & TIME"] as const;

export const NO_TRACE_TEXT = "no trace found";

export function locationCell(trace: TraceRecord): string {
  return `${trace.latitude} ${trace.longitude} ${trace.place}`;
}

export function timeCell(trace: TraceRecord): string {
  // stored timestamps carry the zone offset; the admin table shows local time
  return trace.time.slice(0, 19);
}

export function traceRowCells(trace: TraceRecord): [string, string, string] {
  return [trace.number, locationCell(trace), timeCell(trace)];
}

function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderResultsTable(traces: TraceRecord[]): string {
  const head = `<thead><tr>${COLUMNS.map((c) => `<th>${c}</th>`).join("")}</tr></thead>`;
  if (traces.length === 0) {
    const row = `<tr><td class="empty" colspan="${COLUMNS.length}">${NO_TRACE_TEXT}</td></tr>`;
    return `<table>${head}<tbody>${row}</tbody></table>`;
  }
  const rows = traces
    .map(
      (t) =>
        `<tr>${traceRowCells(t)
          .map((cell) => `<td>${escapeHtml(cell)}</td>`)
          .join("")}</tr>`,
    )
    .join("");
  return `<table>${head}<tbody>${rows}</tbody></table>`;
}
