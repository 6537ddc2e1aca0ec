/**
 * Register page controller: client validation gates submission; server
 * field errors land next to the offending input.
 */

import { ApiClient, ApiError, FieldError, WatchForm } from "./api.js";
import { FieldErrors, isValid, validateWatchForm } from "./validation.js";

export type SubmissionState =
  | { kind: "idle" }
  | { kind: "pending" }
  | { kind: "ok"; id: number }
  | { kind: "error"; message: string };

export interface RegisterView {
  showFieldErrors(errors: FieldErrors): void;
  showState(state: SubmissionState): void;
  clearForm(): void;
}

export interface RegisterController {
  submit(form: WatchForm): Promise<void>;
}

export function createRegisterController(client: ApiClient, view: RegisterView): RegisterController {
  let pending = false;

  return {
    async submit(form: WatchForm): Promise<void> {
      if (pending) return;
      const errors = validateWatchForm(form);
      view.showFieldErrors(errors);
      if (!isValid(errors)) return; // no request leaves the client

      pending = true;
      view.showState({ kind: "pending" });
      try {
        const entry = await client.registerWatch(form);
        view.showState({ kind: "ok", id: entry.id });
        view.clearForm();
      } catch (err) {
        if (err instanceof FieldError) {
          view.showFieldErrors({ [err.field]: err.message } as FieldErrors);
          view.showState({ kind: "idle" });
        } else {
          const message = err instanceof ApiError ? err.message : String(err);
          view.showState({ kind: "error", message: `${message} — retry` });
        }
      } finally {
        pending = false;
      }
    },
  };
}
