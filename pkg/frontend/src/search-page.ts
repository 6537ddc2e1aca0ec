/** DOM glue for search.html; all logic lives in the controller. */

import { createClient, TraceRecord } from "./api.js";
import { renderResultsTable } from "./render.js";
import { createSearchController, SearchView } from "./search.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const form = el<HTMLFormElement>("search-form");
const input = el<HTMLInputElement>("search-input");
const button = el<HTMLButtonElement>("search-button");
const results = el<HTMLDivElement>("results");
const banner = el<HTMLDivElement>("error-banner");
const tokenInput = el<HTMLInputElement>("token-input");

const view: SearchView = {
  showResults(traces: TraceRecord[]) {
    results.innerHTML = renderResultsTable(traces);
  },
  showError(message: string) {
    banner.textContent = message;
    banner.hidden = false;
  },
  clearError() {
    banner.hidden = true;
  },
  setBusy(busy: boolean) {
    button.disabled = busy;
  },
};

form.addEventListener("submit", (event) => {
  event.preventDefault();
  const client = createClient({ token: tokenInput.value || undefined });
  void createSearchController(client, view).search(input.value);
});
