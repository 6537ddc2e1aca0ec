/** DOM glue for register.html; all logic lives in the controller. */

import { createClient, WatchForm } from "./api.js";
import { createRegisterController, RegisterView, SubmissionState } from "./register.js";
import { FieldErrors } from "./validation.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const form = el<HTMLFormElement>("register-form");
const status = el<HTMLDivElement>("status");
const tokenInput = el<HTMLInputElement>("token-input");
const fields: (keyof WatchForm)[] = ["vehicle", "email", "mobile", "details"];

function readForm(): WatchForm {
  const value = (name: string) => el<HTMLInputElement>(`field-${name}`).value;
  return {
    vehicle: value("vehicle"),
    email: value("email"),
    mobile: value("mobile"),
    details: value("details"),
  };
}

const view: RegisterView = {
  showFieldErrors(errors: FieldErrors) {
    for (const name of fields) {
      const slot = el<HTMLSpanElement>(`error-${name}`);
      slot.textContent = errors[name] ?? "";
    }
  },
  showState(state: SubmissionState) {
    switch (state.kind) {
      case "idle":
        status.textContent = "";
        break;
      case "pending":
        status.textContent = "submitting…";
        break;
      case "ok":
        status.textContent = `registered, entry id ${state.id}`;
        break;
      case "error":
        status.textContent = state.message;
        break;
    }
  },
  clearForm() {
    for (const name of fields) el<HTMLInputElement>(`field-${name}`).value = "";
  },
};

form.addEventListener("submit", (event) => {
  event.preventDefault();
  const client = createClient({ token: tokenInput.value || undefined });
  void createRegisterController(client, view).submit(readForm());
});
