/** Shared builders for realistic wire payloads. */

import type { DashboardPayload, Settings } from "../src/models.js";

export function dashboardPayload(
  overrides: Partial<DashboardPayload> = {}
): DashboardPayload {
  return {
    display_phase: "Active Coaching",
    overall_progress: 43,
    consistency: 29,
    active_goal_count: 1,
    goals_view: [
      {
        goal_id: "g-1",
        description: "Practice guitar 7 times over the next week",
        duration_days: 7,
        next_steps: ["Pick three songs", "Block 20 minutes after dinner"],
        progress: 43,
        status: "active",
        scheduled_checkins: [
          {
            kind: "midpoint",
            start: "2026-01-08T08:00:00",
            link: "http://localhost:8000/dashboard",
            fallback: false,
          },
          {
            kind: "end",
            start: "2026-01-11T08:00:00",
            link: "http://localhost:8000/dashboard",
            fallback: false,
          },
        ],
      },
    ],
    insights: {
      themes: ["exam stress", "guitar practice", "sleep"],
      themes_stale: false,
      style: {
        tone: "casual",
        length: "short",
        emotional_style: "neutral",
        thinking_style: "experience-based",
      },
      dartboard: [
        { domain: "Work/Studies", score: 3, radius: 5 / 7 },
        { domain: "Relationships", score: 6, radius: 2 / 7 },
        { domain: "Personal Growth/Health", score: 5, radius: 3 / 7 },
        { domain: "Leisure", score: 4, radius: 4 / 7 },
      ],
    },
    resources: [
      {
        title: "Campus Counseling Center",
        description: "Free short-term counseling for enrolled students.",
        url: "https://example.edu/counseling",
        category: "campus",
      },
      {
        title: "988 Suicide and Crisis Lifeline",
        description: "Call or text 988 for free, confidential support, 24/7.",
        url: "https://988lifeline.org",
        category: "crisis",
      },
    ],
    ...overrides,
  };
}

export function settingsPayload(overrides: Partial<Settings> = {}): Settings {
  return {
    reminder: { frequency: "weekly", enabled: false, last_sent: null },
    window: "morning",
    persona: { name: "Coach", avatar: "default", gender: null },
    calendar_connected: false,
    ...overrides,
  };
}

type FetchFn = typeof fetch;

export interface RecordedCall {
  url: string;
  method: string;
  headers: Record<string, string>;
  body: unknown;
}

/** fetch stub that replays canned JSON bodies and records every call. */
export function stubFetch(
  responses: { status: number; body?: unknown }[]
): { fetchFn: FetchFn; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const queue = [...responses];
  const fetchFn: FetchFn = async (input, init) => {
    const next = queue.shift();
    if (next === undefined) throw new Error("stubFetch queue exhausted");
    calls.push({
      url: String(input),
      method: init?.method ?? "GET",
      headers: (init?.headers as Record<string, string>) ?? {},
      body:
        typeof init?.body === "string" ? JSON.parse(init.body) : undefined,
    });
    return new Response(
      next.body === undefined ? null : JSON.stringify(next.body),
      { status: next.status }
    );
  };
  return { fetchFn, calls };
}
