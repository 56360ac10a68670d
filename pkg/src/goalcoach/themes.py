"""Conversation themes: short summaries only, cached once per day per user.

A failed or malformed model response never clears what the dashboard already
shows; it returns the previous list flagged stale.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .config import LlmParams
from .gateway import ModelGateway, NoPayload, repair_tool_payload
from .prompts import build_themes_bundle

MAX_THEMES = 5
MAX_THEME_WORDS = 8


class InsufficientData(ValueError):
    code = "InsufficientData"


@dataclass(frozen=True)
class ThemesResult:
    themes: tuple[str, ...]
    stale: bool = False


def _clean_theme_list(document: object) -> tuple[str, ...] | None:
    if not isinstance(document, list):
        return None
    themes = []
    for item in document:
        if not isinstance(item, str) or not item.strip():
            return None
        theme = " ".join(item.split())
        # Anything longer than a noun phrase reads as a transcript quote.
        if len(theme.split()) > MAX_THEME_WORDS:
            continue
        themes.append(theme)
    return tuple(themes[:MAX_THEMES])


def summarize_themes(
    history: Sequence[tuple[str, str]],
    gateway: ModelGateway,
    previous: tuple[str, ...] = (),
    params: LlmParams | None = None,
) -> ThemesResult:
    if not history:
        raise InsufficientData("no conversation to summarize")
    bundle = build_themes_bundle(history)
    try:
        result = gateway.complete(bundle, params or LlmParams())
    except Exception:
        return ThemesResult(themes=previous, stale=True)
    try:
        document = json.loads(result.text)
    except json.JSONDecodeError:
        try:
            document = repair_tool_payload(result.text)
        except NoPayload:
            return ThemesResult(themes=previous, stale=True)
    themes = _clean_theme_list(document)
    if themes is None:
        return ThemesResult(themes=previous, stale=True)
    return ThemesResult(themes=themes, stale=False)
