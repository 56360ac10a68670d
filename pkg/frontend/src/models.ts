/** Wire schemas for the coaching API. Parsed with zod so a payload drift
 * fails loudly at the boundary instead of rendering garbage. */

import { z } from "zod";

export const FREQUENCIES = ["daily", "biweekly", "weekly"] as const;
export const WINDOWS = ["morning", "afternoon", "evening", "night"] as const;

export const CheckinViewSchema = z.object({
  kind: z.string(),
  start: z.string(),
  link: z.string(),
  fallback: z.boolean(),
});

export const GoalViewSchema = z.object({
  goal_id: z.string(),
  description: z.string(),
  duration_days: z.number().int(),
  next_steps: z.array(z.string()),
  progress: z.number().int(),
  status: z.string(),
  scheduled_checkins: z.array(CheckinViewSchema),
});

export const DartboardEntrySchema = z.object({
  domain: z.string(),
  score: z.number().int(),
  radius: z.number(),
});

export const StyleSchema = z.object({
  tone: z.enum(["formal", "casual"]),
  length: z.enum(["short", "long"]),
  emotional_style: z.enum(["expressive", "neutral"]),
  thinking_style: z.enum(["data-driven", "experience-based"]),
});

export const InsightsSchema = z.object({
  themes: z.array(z.string()),
  themes_stale: z.boolean(),
  style: StyleSchema.nullable(),
  dartboard: z.array(DartboardEntrySchema),
});

export const ResourceSchema = z.object({
  title: z.string(),
  description: z.string(),
  url: z.string(),
  category: z.enum(["campus", "crisis", "self-guided"]),
});

export const DashboardPayloadSchema = z.object({
  display_phase: z.string(),
  overall_progress: z.number().int(),
  consistency: z.number().int(),
  active_goal_count: z.number().int(),
  goals_view: z.array(GoalViewSchema),
  insights: InsightsSchema,
  resources: z.array(ResourceSchema),
});

export const ChatReplySchema = z.object({
  reply_text: z.string(),
  display_phase: z.string(),
  resource_footer_attached: z.boolean(),
  gateway_failed: z.boolean(),
  patches: z.array(
    z.object({ status: z.string(), error_code: z.string().nullable() })
  ),
});

export const SettingsSchema = z.object({
  reminder: z.object({
    frequency: z.enum(FREQUENCIES),
    enabled: z.boolean(),
    last_sent: z.string().nullable(),
  }),
  window: z.enum(WINDOWS),
  persona: z.object({
    name: z.string(),
    avatar: z.string(),
    gender: z.string().nullable(),
  }),
  calendar_connected: z.boolean(),
});

export const TranscriptSchema = z.object({
  turns: z.array(
    z.object({
      speaker: z.enum(["user", "coach"]),
      text: z.string(),
      timestamp: z.string(),
    })
  ),
});

export type CheckinView = z.infer<typeof CheckinViewSchema>;
export type GoalView = z.infer<typeof GoalViewSchema>;
export type DartboardEntry = z.infer<typeof DartboardEntrySchema>;
export type Insights = z.infer<typeof InsightsSchema>;
export type Resource = z.infer<typeof ResourceSchema>;
export type DashboardPayload = z.infer<typeof DashboardPayloadSchema>;
export type ChatReply = z.infer<typeof ChatReplySchema>;
export type Settings = z.infer<typeof SettingsSchema>;
export type Transcript = z.infer<typeof TranscriptSchema>;
export type Frequency = (typeof FREQUENCIES)[number];
export type Window = (typeof WINDOWS)[number];
