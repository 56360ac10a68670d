/** Thin HTTP client for the coaching service. Every response body passes
 * through its zod schema; the view layer never touches unvalidated JSON. */

import {
  ChatReplySchema,
  DashboardPayloadSchema,
  ResourceSchema,
  SettingsSchema,
  TranscriptSchema,
  type ChatReply,
  type DashboardPayload,
  type Resource,
  type Settings,
  type Transcript,
} from "./models.js";
import { z } from "zod";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string) {
    super(`${status} ${code}`);
    this.status = status;
    this.code = code;
  }
}

const ResourceListSchema = z.object({ resources: z.array(ResourceSchema) });

type FetchFn = typeof fetch;

export interface SettingsPatch {
  frequency?: string;
  enabled?: boolean;
  window?: string;
  persona_name?: string;
  persona_avatar?: string;
  persona_gender?: string;
}

export class CoachApi {
  private readonly baseUrl: string;
  private readonly token: string;
  private readonly fetchFn: FetchFn;

  constructor(baseUrl: string, token: string, fetchFn: FetchFn = fetch) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.token = token;
    this.fetchFn = fetchFn;
  }

  private async request(
    method: string,
    path: string,
    body?: unknown
  ): Promise<unknown> {
    const headers: Record<string, string> = {
      Authorization: `Bearer ${this.token}`,
    };
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
    }
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = "Unknown";
      try {
        const payload = (await response.json()) as { code?: string };
        if (typeof payload.code === "string") code = payload.code;
      } catch {
        // non-JSON error body; keep the generic code
      }
      throw new ApiError(response.status, code);
    }
    if (response.status === 204) return null;
    return response.json();
  }

  async chat(text: string): Promise<ChatReply> {
    return ChatReplySchema.parse(await this.request("POST", "/api/chat", { text }));
  }

  async transcript(): Promise<Transcript> {
    return TranscriptSchema.parse(await this.request("GET", "/api/chat"));
  }

  async dashboard(): Promise<DashboardPayload> {
    return DashboardPayloadSchema.parse(await this.request("GET", "/api/dashboard"));
  }

  async getSettings(): Promise<Settings> {
    return SettingsSchema.parse(await this.request("GET", "/api/settings"));
  }

  async putSettings(patch: SettingsPatch): Promise<Settings> {
    return SettingsSchema.parse(await this.request("PUT", "/api/settings", patch));
  }

  async connectCalendar(): Promise<Settings> {
    return SettingsSchema.parse(
      await this.request("POST", "/api/calendar/connect")
    );
  }

  async resources(): Promise<Resource[]> {
    const parsed = ResourceListSchema.parse(
      await this.request("GET", "/api/resources")
    );
    return parsed.resources;
  }

  async deleteUser(): Promise<void> {
    await this.request("DELETE", "/api/user");
  }
}
