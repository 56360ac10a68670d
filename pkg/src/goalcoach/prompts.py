"""Prompt assembly: phase task templates, few-shot voice anchors, tool schemas.

Each phase owns one task template. Slot tokens ([user_profile], [history],
[currentStep], [domainIndex]) are replaced verbatim at build time; everything
else reaches the model unchanged, so the flow rules the coach follows live
here and nowhere else.
"""

from __future__ import annotations

import json
from typing import Any, Sequence

from .domain import BEVS_DOMAINS, Phase, UserProfile
from .gateway import SAVE_PROFILE_TOOL, PromptBundle

SYSTEM_TEXT = (
    "You are {persona_name}, a warm, encouraging well-being coach for college "
    "students. You speak in short, friendly turns, one question at a time. You "
    "are supportive and practical, never clinical or diagnostic. You never "
    "reveal JSON, tool names, or internal markers in user-visible text."
)

# Small fixed exemplars keep the voice stable across phases.
FEW_SHOTS: tuple[tuple[str, str], ...] = (
    (
        "I keep putting things off and then panicking.",
        "That cycle is so common, and it doesn't say anything bad about you. "
        "What's one small thing you've been putting off this week?",
    ),
    (
        "I actually did my morning walk three times!",
        "Three walks already? That's real momentum. What made it easier this week?",
    ),
)

INTRO_TASK = """Task: INTRODUCTION PHASE. Get to know the student naturally through conversation; do NOT set goals yet. REQUIRED SEQUENCE (ask conversationally, ONE at a time):

Basic Info (5):

- Name, college year, major
- How they feel (today + generally)
- Emotional awareness (high/medium/low in their words)
- Coping style (healthy/mixed/avoidant in their words)
- What encouragement helps (praise/progress/achievement/effort)

Personality (5) - ask naturally, like getting to know a friend:

- "Are you the type who gets excited about trying new things and exploring ideas?" (Open-mindedness: high/moderate/low)
- "How are you with staying organized and disciplined - natural for you or more of a struggle?" (Conscientiousness: high/moderate/low)
- "Would you describe yourself as more outgoing or more reserved?" (Extraversion: high/moderate/low)
- "When it comes to relationships, do you really focus on harmony and getting along with people?" (Agreeableness: high/moderate/low)
- "How often do you experience worry or stress - a lot or not so much?" (Neuroticism: high/moderate/low)

CONVERSATION STYLE: Make it feel natural - use their name, show genuine interest ("That makes sense", "I can see that"), make connections between answers ("So you're in CS and pretty organized - that probably serves you well"). Keep it friendly, strictly not clinical or diagnostic.
Light ACT touches only (breath check-in, normalize feelings, values preview).

Flow:

- You MUST collect all 10 pieces (5 basic + 5 personality) before proceeding.
- ONLY call saveProfile when you have complete demographic, ALL five personality_traits, and mental_health_profile data.
- After saving, say: "Thanks for sharing all of that with me. I feel like I'm getting a good sense of who you are. Now I'm curious about what really matters to you in different areas of your life."
- Do NOT include any phase markers yet. The system will automatically transition to the values check-in.

Recent conversation: [history]"""

GOAL_SETTING_TASK = """Task: GOAL SETTING PHASE. Start from values (ACT), then shape SMART goals.

You have this profile: [user_profile]

Recent conversation: [history]

Flow (ONE question at a time):

- Values cue: "What feels most important for your well-being right now?" (offer everyday examples only if needed, such as sleep, stress relief, friendships, or study rhythm).
- Pick one area to start.
- Build a SMART goal + define a weekly measure that enables auto progress:
 - Specific (what exactly?)
 - Measurable (use count, frequency, or minutes, with a clear weekly target).
 - Achievable (tiny first step)
 - Relevant (tied to their value)
 - Time-bound (clear timeframe)
- Plan 1-3 tiny actions for week one (committed action).
- Identify likely obstacles and choose a brief coping response using acceptance or defusion (for example, acknowledging the thought and continuing with a 2-minute starter action).
- Confirm the goal feels realistic.

- Ensure measures is phrased so progress can be inferred from chat (e.g., "3 wind-downs/week", "10 min mindfulness x4/week").
- Call saveProfile once with JSON matching ProfileJsonSchema, including mental_health_goals[] objects with description, measures, timeframe, steps, obstacles, completed: false, progress: 0
- After the user indicates they have finished setting goals (typically 1-3 total), include the internal marker [ONGOING_PHASE] in your text to transition to the on-going conversation phase."""

ACTIVE_COACHING_TASK = """Task: ONGOING CONVERSATION PHASE. Support progress with brief, practical tips.

Have profile + goals: [user_profile]

Recent conversation: [history]

Flow: If just came to ONGOING CONVERSATION PHASE from GOAL SETTING PHASE, ask if they are set and say that you'll be here when they need you and end conversation.

- Quick check-in ("How's today going?"). If the last 4 turns already covered whether they did a daily action (e.g., drank water), do not ask it again; instead acknowledge the answer and proceed.
- Take one goal at a time. Ask about progress/obstacles (short). Infer % progress from what they say
- When user confirms they want a snapshot ("yes", "sure", "show me"):
 - Simply show their current progress from the profile data above
 - Example: "Here's where you are: Your skincare wind-down goal is at 40% (you've done it 2 times this week, aiming for 5)."
- Offer one concrete next step (tiny, value-aligned).
- Use brief ACT-inspired micro-moves when helpful (for example: pausing to notice a feeling, acknowledging a thought without debating it, or gently refocusing on what matters).
- This is supportive, non-clinical coaching. Avoid diagnostic, therapeutic, or prescriptive mental health language.
- Celebrate a small win; normalize setbacks.
- If a goal is done, mark completed. If all done, move to [GOAL_SETTING_PHASE].
- End with a tiny, doable action before next time.
- Call saveProfile tool once per update turn when there is new or modified goal progress, following the same ProfileJsonSchema, and include the updated mental_health_goals[] object with description, progress, completed, lastUpdated.

Skip the tool call if the user's response indicates no change in progress, to avoid redundant saves.
Begin by greeting them and asking how they've been since last time. Keep it brief."""

VALUES_CHECK_IN_TASK = """Task: VALUES CHECK-IN (BEVS). Map what matters across four life domains and capture 1-7 "closeness to values" scores, using warm, brief, conversational turns.

Recent conversation: [history]

Context:

- Current step: [currentStep]
- Current domain index: [domainIndex] (Work/Studies, Relationships, Personal Growth/Health, Leisure)

Flow:

- If step = intro: Briefly introduce the "values check-in" across a few life areas and ask to start with the current domain. Keep it friendly and conversational. Track the start time internally (not visible to user).
- If step = collect_values: Ask "In <domain>, what kind of person do you want to be or what matters to you?" Collect a short, natural answer (e.g., learn deeply, show up for friends, care for health). Advance to currentStep: collect_scores.
- If step = collect_scores: Ask "On a scale of 1-7, how close are your actions to your values in <domain>?" Validate responses within range. If domainIndex < 3, move to the next domain; otherwise, proceed to confirm.
- If step = confirm: Summarize in 2-3 lines, highlighting the lowest and highest domains. Suggest one tiny, values-aligned action (e.g., send one supportive text, 2-min wind-down). Ask "Shall I save this values check-in and move on?"
- If user confirms (yes/done): Call tool saveProfile once with the complete BEVS object:

{ startedAt, completedAt, currentStep: "done",
              domainIndex: 3, domains[], assessments[] }

- If step = done: Thank them, say "Now that I know what matters to you, let's set a goal that aligns with your values" and include [GOAL_SETTING_PHASE] to move forward.

Tone & constraints:

- Never say "BEVS" to the user. Always refer to it as "values check-in" or "values mapping."
- Keep the tone warm, conversational, and brief with one question per turn.
- Provide examples of values naturally to make it feel human, not survey-like.
- Never show JSON or tool details in user-visible text."""

STYLE_TASK = """You are analyzing a user's communication style for coaching personalization. ONLY consider lines that start with "User:" in the transcript provided. Ignore any "Coach:" lines. Use the transcript as primary evidence and the derived metrics below as tie-breakers. Do not default to "casual", "short", "neutral", or "experience-based" unless the transcript clearly supports it.

Categories and guidance:

- Tone: "formal" (polite forms, complete sentences, minimal slang) vs "casual" (slang, contractions, informal phrasing).
- Length: "short" (typically <= 12 words per message) vs "long" (typically more than 12 words on average).
- Emotional style: "expressive" (emotion words, emojis, exclamations, self-disclosure) vs "neutral" (matter-of-fact, low affect).
- Thinking style: "data-driven" (numbers, structure, explicit reasoning, references) vs "experience-based" (anecdotes, personal examples, intuitive language).

Return a single compact JSON object with exactly these keys and values:

{ "tone": "formal|casual", "length": "short|long",
  "emotional_style": "expressive|neutral",
  "thinking_style": "data-driven|experience-based" }

Output ONLY JSON (no prose)."""

THEMES_TASK = """Review the coaching transcript below and extract the key themes the student keeps returning to: recurring stressors, values, goals, and moments of reflection.

Rules:
- Return at most 5 themes.
- Each theme is a concise noun phrase of at most 8 words.
- Never quote transcript sentences; summarize in your own words.
- ONLY consider lines that start with "User:".

Return a single compact JSON array of strings, e.g. ["exam stress", "sleep routine"].
Output ONLY JSON (no prose)."""


_TRAIT_LEVELS = ["high", "moderate", "low"]

INTRO_TOOL_SCHEMA: dict[str, Any] = {
    "name": SAVE_PROFILE_TOOL,
    "description": "Save the complete introduction profile (all 10 items at once).",
    "parameters": {
        "type": "object",
        "additionalProperties": False,
        "required": ["demographic", "personality_traits", "mental_health_profile"],
        "properties": {
            "demographic": {
                "type": "object",
                "additionalProperties": False,
                "required": ["college_year", "major"],
                "properties": {
                    "name": {"type": "string"},
                    "college_year": {"type": "string"},
                    "major": {"type": "string"},
                },
            },
            "personality_traits": {
                "type": "object",
                "additionalProperties": False,
                "required": [
                    "Openness",
                    "Conscientiousness",
                    "Extraversion",
                    "Agreeableness",
                    "Neuroticism",
                ],
                "properties": {
                    trait: {"type": "string", "enum": _TRAIT_LEVELS}
                    for trait in (
                        "Openness",
                        "Conscientiousness",
                        "Extraversion",
                        "Agreeableness",
                        "Neuroticism",
                    )
                },
            },
            "mental_health_profile": {
                "type": "object",
                "additionalProperties": False,
                "required": [
                    "emotional_awareness",
                    "coping_style",
                    "encouragement_preference",
                ],
                "properties": {
                    "emotional_awareness": {
                        "type": "string",
                        "enum": ["high", "medium", "low"],
                    },
                    "coping_style": {
                        "type": "string",
                        "enum": ["healthy", "mixed", "avoidant"],
                    },
                    "encouragement_preference": {
                        "type": "string",
                        "enum": ["praise", "progress", "achievement", "effort"],
                    },
                },
            },
        },
    },
}

BEVS_TOOL_SCHEMA: dict[str, Any] = {
    "name": SAVE_PROFILE_TOOL,
    "description": "Save the completed values check-in record.",
    "parameters": {
        "type": "object",
        "additionalProperties": False,
        "required": ["bevs"],
        "properties": {
            "bevs": {
                "type": "object",
                "additionalProperties": False,
                "required": [
                    "startedAt",
                    "completedAt",
                    "currentStep",
                    "domainIndex",
                    "domains",
                    "assessments",
                ],
                "properties": {
                    "startedAt": {"type": "string"},
                    "completedAt": {"type": "string"},
                    "currentStep": {"type": "string", "enum": ["done"]},
                    "domainIndex": {"type": "integer", "enum": [3]},
                    "domains": {"type": "array", "items": {"type": "string"}},
                    "assessments": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["domain", "value_statement", "score"],
                            "properties": {
                                "domain": {
                                    "type": "string",
                                    "enum": list(BEVS_DOMAINS),
                                },
                                "value_statement": {"type": "string"},
                                "score": {"type": "integer", "minimum": 1, "maximum": 7},
                            },
                        },
                    },
                },
            }
        },
    },
}

GOAL_CREATE_TOOL_SCHEMA: dict[str, Any] = {
    "name": SAVE_PROFILE_TOOL,
    "description": "Create new SMART goals (completed: false, progress: 0).",
    "parameters": {
        "type": "object",
        "additionalProperties": False,
        "required": ["mental_health_goals"],
        "properties": {
            "mental_health_goals": {
                "type": "array",
                "items": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["description", "measures", "timeframe", "steps"],
                    "properties": {
                        "description": {"type": "string"},
                        "measures": {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["unit", "weekly_target"],
                            "properties": {
                                "unit": {"type": "string", "enum": ["count", "minutes"]},
                                "weekly_target": {"type": "integer", "minimum": 1},
                            },
                        },
                        "timeframe": {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["duration_days"],
                            "properties": {
                                "start_date": {"type": "string"},
                                "duration_days": {"type": "integer", "minimum": 1},
                            },
                        },
                        "steps": {
                            "type": "array",
                            "items": {"type": "string"},
                            "minItems": 1,
                            "maxItems": 3,
                        },
                        "obstacles": {"type": "array", "items": {"type": "string"}},
                        "completed": {"type": "boolean", "enum": [False]},
                        "progress": {"type": "integer", "enum": [0]},
                    },
                },
            }
        },
    },
}

GOAL_UPDATE_TOOL_SCHEMA: dict[str, Any] = {
    "name": SAVE_PROFILE_TOOL,
    "description": "Update existing goals: progress, completed units, status, completion.",
    "parameters": {
        "type": "object",
        "additionalProperties": False,
        "required": ["mental_health_goals"],
        "properties": {
            "mental_health_goals": {
                "type": "array",
                "items": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "goal_id": {"type": "string"},
                        "description": {"type": "string"},
                        "completed_units": {"type": "integer", "minimum": 0},
                        "progress": {"type": "integer", "minimum": 0, "maximum": 100},
                        "completed": {"type": "boolean"},
                        "status": {
                            "type": "string",
                            "enum": ["active", "paused", "completed"],
                        },
                        "timeframe": {
                            "type": "object",
                            "additionalProperties": False,
                            "properties": {
                                "start_date": {"type": "string"},
                                "duration_days": {"type": "integer", "minimum": 1},
                            },
                        },
                        "lastUpdated": {"type": "string"},
                    },
                },
            }
        },
    },
}

PHASE_TASKS: dict[Phase, str] = {
    Phase.INTRODUCTION: INTRO_TASK,
    Phase.VALUES_CHECK_IN: VALUES_CHECK_IN_TASK,
    Phase.GOAL_SETTING: GOAL_SETTING_TASK,
    Phase.ACTIVE_COACHING: ACTIVE_COACHING_TASK,
}

PHASE_TOOL_SCHEMAS: dict[Phase, dict[str, Any]] = {
    Phase.INTRODUCTION: INTRO_TOOL_SCHEMA,
    Phase.VALUES_CHECK_IN: BEVS_TOOL_SCHEMA,
    Phase.GOAL_SETTING: GOAL_CREATE_TOOL_SCHEMA,
    Phase.ACTIVE_COACHING: GOAL_UPDATE_TOOL_SCHEMA,
}


def format_history(turns: Sequence[tuple[str, str]], window: int = 20) -> str:
    """Render (speaker, text) pairs as User:/Coach: lines, newest-last."""
    recent = list(turns)[-window:]
    if not recent:
        return "(no prior turns)"
    labels = {"user": "User", "coach": "Coach"}
    return "\n".join(f"{labels.get(speaker, speaker)}: {text}" for speaker, text in recent)


def profile_json(profile: UserProfile) -> str:
    document = profile.model_dump(mode="json")
    return json.dumps(document, sort_keys=True)


def build_prompt(
    phase: Phase,
    profile: UserProfile,
    history: Sequence[tuple[str, str]],
    persona_name: str = "Coach",
    user_text: str = "",
    turn_index: int = 0,
    current_step: str = "intro",
    domain_index: int = 0,
    directive: str = "",
    history_window: int = 20,
) -> PromptBundle:
    """Fill the phase template's slots and attach the phase-scoped tool schema."""
    task = PHASE_TASKS[phase]
    task = task.replace("[user_profile]", profile_json(profile))
    task = task.replace("[history]", format_history(history, history_window))
    task = task.replace("[currentStep]", current_step)
    task = task.replace("[domainIndex]", str(domain_index))
    if directive:
        task = f"{task}\n\nThis turn: {directive}"
    return PromptBundle(
        kind="chat",
        phase=phase,
        system_text=SYSTEM_TEXT.format(persona_name=persona_name),
        task_text=task,
        few_shots=FEW_SHOTS,
        history=tuple(tuple(t) for t in list(history)[-history_window:]),
        user_text=user_text,
        turn_index=turn_index,
        tool_schema=PHASE_TOOL_SCHEMAS[phase],
    )


def build_style_bundle(
    user_messages: Sequence[str], metrics_block: str
) -> PromptBundle:
    transcript = "\n".join(f"User: {text}" for text in user_messages)
    return PromptBundle(
        kind="style",
        task_text=f"{STYLE_TASK}\n\nDerived metrics:\n{metrics_block}",
        user_text=transcript,
    )


def build_themes_bundle(history: Sequence[tuple[str, str]]) -> PromptBundle:
    return PromptBundle(
        kind="themes",
        task_text=THEMES_TASK,
        user_text=format_history(history, window=200),
    )
