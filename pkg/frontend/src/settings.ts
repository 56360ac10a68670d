/** Settings form logic: diff against the server copy so the PUT payload
 * carries only changed fields, and a no-op edit sends nothing at all. */

import { FREQUENCIES, WINDOWS, type Settings } from "./models.js";
import type { SettingsPatch } from "./api.js";

export interface SettingsFormValues {
  frequency: string;
  enabled: boolean;
  window: string;
  persona_name: string;
  persona_avatar: string;
}

export function formValuesFrom(settings: Settings): SettingsFormValues {
  return {
    frequency: settings.reminder.frequency,
    enabled: settings.reminder.enabled,
    window: settings.window,
    persona_name: settings.persona.name,
    persona_avatar: settings.persona.avatar,
  };
}

/** Mirrors the server's enum rules so an invalid value never leaves the
 * client; the server still 422s anything that bypasses this. */
export function validateFormValues(values: SettingsFormValues): string[] {
  const problems: string[] = [];
  if (!(FREQUENCIES as readonly string[]).includes(values.frequency)) {
    problems.push(`frequency must be one of: ${FREQUENCIES.join(", ")}`);
  }
  if (!(WINDOWS as readonly string[]).includes(values.window)) {
    problems.push(`window must be one of: ${WINDOWS.join(", ")}`);
  }
  if (values.persona_name.trim() === "") {
    problems.push("coach name must not be blank");
  }
  return problems;
}

/** Returns the fields that differ from the server copy, or null when the
 * form matches it exactly (meaning: send no request). */
export function diffSettings(
  current: Settings,
  edited: SettingsFormValues
): SettingsPatch | null {
  const patch: SettingsPatch = {};
  if (edited.frequency !== current.reminder.frequency) {
    patch.frequency = edited.frequency;
  }
  if (edited.enabled !== current.reminder.enabled) {
    patch.enabled = edited.enabled;
  }
  if (edited.window !== current.window) {
    patch.window = edited.window;
  }
  if (edited.persona_name !== current.persona.name) {
    patch.persona_name = edited.persona_name;
  }
  if (edited.persona_avatar !== current.persona.avatar) {
    patch.persona_avatar = edited.persona_avatar;
  }
  return Object.keys(patch).length === 0 ? null : patch;
}

function option(value: string, selected: string): string {
  const attr = value === selected ? ' selected="selected"' : "";
  return `<option value="${value}"${attr}>${value}</option>`;
}

export function renderSettingsForm(values: SettingsFormValues): string {
  return [
    `<form class="settings" data-role="settings">`,
    `<label>Reminder frequency<select name="frequency">${FREQUENCIES.map((f) => option(f, values.frequency)).join("")}</select></label>`,
    `<label>Reminders enabled<input type="checkbox" name="enabled"${values.enabled ? ' checked="checked"' : ""}/></label>`,
    `<label>Preferred time<select name="window">${WINDOWS.map((w) => option(w, values.window)).join("")}</select></label>`,
    `<label>Coach name<input type="text" name="persona_name" value="${values.persona_name.replace(/"/g, "&quot;")}"/></label>`,
    `<label>Coach avatar<input type="text" name="persona_avatar" value="${values.persona_avatar.replace(/"/g, "&quot;")}"/></label>`,
    `<button type="submit">Save</button>`,
    `</form>`,
  ].join("");
}
