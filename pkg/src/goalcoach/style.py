"""Communication-style classification with a deterministic fallback.

The model does the nuanced read when a gateway is available; the fallback
thresholds guarantee a valid four-key record for every non-empty corpus, and
they double as tie-breaker metrics in the model prompt.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Sequence

from pydantic import ValidationError

from .config import LlmParams
from .domain import (
    CommunicationStyle,
    EmotionalStyle,
    MessageLength,
    ThinkingStyle,
    Tone,
)
from .gateway import ModelGateway, NoPayload, repair_tool_payload
from .prompts import build_style_bundle

# Inclusive boundary: a corpus averaging exactly 12 words reads as short.
SHORT_AVG_WORDS_MAX = 12.0
EXPRESSIVE_RATE_MIN = 0.2
DATA_DRIVEN_RATIO_MIN = 0.05
CASUAL_RATE_MIN = 0.15

_EMOJI = re.compile(
    "[\U0001f300-\U0001faff\U00002600-\U000027bf\U0001f1e6-\U0001f1ff]"
)
_WORD = re.compile(r"[\w']+")

CONTRACTION_SLANG = frozenset(
    {
        "i'm", "don't", "can't", "won't", "it's", "that's", "i've", "you're",
        "we're", "they're", "didn't", "isn't", "aren't", "wasn't", "couldn't",
        "wouldn't", "shouldn't", "gonna", "wanna", "gotta", "kinda", "sorta",
        "dunno", "lol", "omg", "btw", "idk", "tbh", "ngl", "yeah", "yep",
        "nah", "ok", "okay", "hey", "haha", "hmm", "ugh", "lemme", "ain't",
    }
)


class InsufficientData(ValueError):
    code = "InsufficientData"


@dataclass(frozen=True)
class StyleMetrics:
    avg_words_per_user_message: float
    emoji_or_exclaim_rate: float
    digit_token_ratio: float
    contraction_slang_rate: float

    def as_block(self) -> str:
        return (
            f"- average words per user message: {self.avg_words_per_user_message:.2f}\n"
            f"- messages with emoji or '!': {self.emoji_or_exclaim_rate:.2f}\n"
            f"- digit-token ratio: {self.digit_token_ratio:.3f}\n"
            f"- contraction/slang token rate: {self.contraction_slang_rate:.3f}"
        )


def compute_style_metrics(user_messages: Sequence[str]) -> StyleMetrics:
    if not user_messages:
        raise InsufficientData("no user messages to analyze")
    total_words = 0
    expressive_messages = 0
    digit_tokens = 0
    slang_tokens = 0
    total_tokens = 0
    for message in user_messages:
        tokens = _WORD.findall(message)
        total_words += len(tokens)
        total_tokens += len(tokens)
        if "!" in message or _EMOJI.search(message):
            expressive_messages += 1
        for token in tokens:
            if any(ch.isdigit() for ch in token):
                digit_tokens += 1
            if token.lower() in CONTRACTION_SLANG:
                slang_tokens += 1
    n = len(user_messages)
    return StyleMetrics(
        avg_words_per_user_message=total_words / n,
        emoji_or_exclaim_rate=expressive_messages / n,
        digit_token_ratio=digit_tokens / total_tokens if total_tokens else 0.0,
        contraction_slang_rate=slang_tokens / total_tokens if total_tokens else 0.0,
    )


def fallback_style(metrics: StyleMetrics) -> CommunicationStyle:
    return CommunicationStyle(
        tone=Tone.CASUAL if metrics.contraction_slang_rate >= CASUAL_RATE_MIN else Tone.FORMAL,
        length=(
            MessageLength.SHORT
            if metrics.avg_words_per_user_message <= SHORT_AVG_WORDS_MAX
            else MessageLength.LONG
        ),
        emotional_style=(
            EmotionalStyle.EXPRESSIVE
            if metrics.emoji_or_exclaim_rate >= EXPRESSIVE_RATE_MIN
            else EmotionalStyle.NEUTRAL
        ),
        thinking_style=(
            ThinkingStyle.DATA_DRIVEN
            if metrics.digit_token_ratio >= DATA_DRIVEN_RATIO_MIN
            else ThinkingStyle.EXPERIENCE_BASED
        ),
    )


def _validate_style_document(document: object) -> CommunicationStyle | None:
    if not isinstance(document, dict):
        return None
    if set(document) != {"tone", "length", "emotional_style", "thinking_style"}:
        return None
    try:
        return CommunicationStyle.model_validate(document)
    except ValidationError:
        return None


def classify_style(
    user_messages: Sequence[str],
    gateway: ModelGateway | None = None,
    params: LlmParams | None = None,
) -> CommunicationStyle:
    """Model-assisted when possible, threshold fallback always available."""
    metrics = compute_style_metrics(user_messages)
    if gateway is None:
        return fallback_style(metrics)
    bundle = build_style_bundle(user_messages, metrics.as_block())
    try:
        result = gateway.complete(bundle, params or LlmParams())
    except Exception:
        return fallback_style(metrics)
    try:
        document = json.loads(result.text)
    except json.JSONDecodeError:
        try:
            document = repair_tool_payload(result.text)
        except NoPayload:
            return fallback_style(metrics)
    style = _validate_style_document(document)
    return style if style is not None else fallback_style(metrics)
