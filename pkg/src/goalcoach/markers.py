"""Phase-marker grammar: literal bracketed tokens the model embeds in replies.

Exactly two markers exist. Matching is literal and case-sensitive; unknown
bracketed tokens are user-visible text and pass through untouched.
"""

from __future__ import annotations

import re

from .domain import Phase

MARKER_TARGETS: dict[str, Phase] = {
    "[ONGOING_PHASE]": Phase.ACTIVE_COACHING,
    "[GOAL_SETTING_PHASE]": Phase.GOAL_SETTING,
}

_MARKER_PATTERN = re.compile(
    "|".join(re.escape(marker) for marker in MARKER_TARGETS)
)
# Collapse doubled spaces left behind where a marker sat mid-sentence.
_SPACE_RUN = re.compile(r"[ \t]{2,}")


def parse_markers(model_text: str) -> tuple[str, Phase | None]:
    """Strip every recognized marker; return the first marker's target phase.

    Legality against the current phase is the caller's concern; this function
    only reads the grammar.
    """
    first = _MARKER_PATTERN.search(model_text)
    transition = MARKER_TARGETS[first.group(0)] if first else None
    clean = _MARKER_PATTERN.sub("", model_text)
    clean = _SPACE_RUN.sub(" ", clean).strip()
    return clean, transition
