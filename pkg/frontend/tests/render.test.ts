import { describe, expect, it } from "vitest";

import {
  COLUMNS,
  locationCell,
  NO_TRACE_TEXT,
  renderResultsTable,
  timeCell,
  traceRowCells,
} from "../src/render.js";
import { FIG8C_TRACE } from "./stub-api.js";

describe("trace row rendering", () => {
  it("renders the seeded fixture with the exact location and time strings", () => {
    expect(traceRowCells(FIG8C_TRACE)).toEqual([
      "TN23CB0624",
      "12.9333 79.1333 Vellore TN IN",
      "2017-05-28 22:20:05",
    ]);
  });

  it("keeps the offset out of the displayed time but uses the stored value", () => {
    expect(timeCell({ ...FIG8C_TRACE, time: "2020-01-02 03:04:05+00:00" })).toBe(
      "2020-01-02 03:04:05",
    );
    expect(locationCell({ ...FIG8C_TRACE, latitude: -1.5, longitude: 10 })).toBe(
      "-1.5 10 Vellore TN IN",
    );
  });
});

describe("results table", () => {
  it("uses the admin column layout", () => {
    expect(COLUMNS).toEqual(["NUMBER", "LAT LONG & LOCATION", "DATE & TIME"]);
    const html = renderResultsTable([FIG8C_TRACE]);
    for (const col of COLUMNS) expect(html).toContain(`<th>${col}</th>`);
  });

  it("renders one row per trace in API order, no resort", () => {
    const newer = { ...FIG8C_TRACE, id: 2, time: "2017-05-28 22:39:35+05:30" };
    const html = renderResultsTable([newer, FIG8C_TRACE]);
    const first = html.indexOf("22:39:35");
    const second = html.indexOf("22:20:05");
    expect(first).toBeGreaterThan(-1);
    expect(second).toBeGreaterThan(first);
  });

  it("renders an explicit row when nothing was found", () => {
    const html = renderResultsTable([]);
    expect(html).toContain(NO_TRACE_TEXT);
  });

  it("escapes markup in API-provided strings", () => {
    const sneaky = { ...FIG8C_TRACE, place: '<img src=x onerror="x">' };
    const html = renderResultsTable([sneaky]);
    expect(html).not.toContain("<img");
    expect(html).toContain("&lt;img");
  });
});
