/**
 * Client-side form rules, mirroring the server's WatchEntry validation:
 * plates are [A-Z0-9]+ after normalization, emails need exactly one '@'
 * with non-empty sides, mobiles are digit strings.
 */

import { normalizePlate, WatchForm } from "./api.js";

export type FieldErrors = Partial<Record<keyof WatchForm, string>>;

export function validatePlate(raw: string): string | null {
  return /^[A-Z0-9]+$/.test(normalizePlate(raw))
    ? null
    : "plate must be letters and digits only";
}

export function validateEmail(raw: string): string | null {
  const email = raw.trim();
  const at = email.indexOf("@");
  if (at <= 0 || at !== email.lastIndexOf("@") || at === email.length - 1) {
    return "email needs exactly one '@' with text on both sides";
  }
  return null;
}

export function validateMobile(raw: string): string | null {
  return /^[0-9]+$/.test(raw.trim()) ? null : "mobile must be digits only";
}

export function validateWatchForm(form: WatchForm): FieldErrors {
  const errors: FieldErrors = {};
  const vehicle = validatePlate(form.vehicle);
  if (vehicle) errors.vehicle = vehicle;
  const email = validateEmail(form.email);
  if (email) errors.email = email;
  const mobile = validateMobile(form.mobile);
  if (mobile) errors.mobile = mobile;
  return errors;
}

export function isValid(errors: FieldErrors): boolean {
  return Object.keys(errors).length === 0;
}
