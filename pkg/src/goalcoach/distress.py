"""Distress redirection: literal phrase matching, no scoring, no classification.

When a user turn contains a lexicon phrase, the coach reply gets a constraint
directive and the response carries a resource footer pointing at the Support
Resources tab. Nothing about the match is persisted to the profile.
"""

from __future__ import annotations

from importlib import resources as importlib_resources
from pathlib import Path

DEFAULT_LEXICON_RESOURCE = "distress_lexicon.txt"

FOOTER_DIRECTIVE = (
    "The user's message touches on serious distress. Respond with warmth and "
    "without judgment, do not problem-solve or coach on it, explicitly encourage "
    "reaching out to professional support, and mention that the Support Resources "
    "tab on their dashboard lists campus and crisis contacts. Do not diagnose, "
    "do not minimize, do not endorse harmful intentions."
)


def _parse_lexicon(text: str) -> tuple[str, ...]:
    phrases = []
    for line in text.splitlines():
        line = line.strip()
        # Comment and blank lines keep the shipped file annotatable.
        if not line or line.startswith("#"):
            continue
        phrases.append(line.lower())
    return tuple(phrases)


def load_lexicon(path: str | Path | None = None) -> tuple[str, ...]:
    if path is not None:
        return _parse_lexicon(Path(path).read_text(encoding="utf-8"))
    packaged = importlib_resources.files("goalcoach.data") / DEFAULT_LEXICON_RESOURCE
    return _parse_lexicon(packaged.read_text(encoding="utf-8"))


def distress_guard(user_text: str, lexicon: tuple[str, ...]) -> str | None:
    """The footer directive when any phrase appears in the text, else None."""
    lowered = user_text.lower()
    if any(phrase in lowered for phrase in lexicon):
        return FOOTER_DIRECTIVE
    return None
