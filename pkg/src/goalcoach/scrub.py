"""PII removal applied to every transcript row before it is stored.

Over-redaction is the accepted failure direction: a mangled innocent string
is cheaper than a leaked address.
"""

from __future__ import annotations

import re

EMAIL_PATTERN = re.compile(r"\b[A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,}\b")
# E.164-ish: optional +, then 8+ digits allowing separators in between.
PHONE_PATTERN = re.compile(r"(?<![\w.])\+?\d[\d\s\-().]{6,}\d\b")

REDACTED_EMAIL = "[REDACTED_EMAIL]"
REDACTED_PHONE = "[REDACTED_PHONE]"
REDACTED_NAME = "[NAME]"


def scrub_text(text: str, display_name: str | None = None) -> str:
    """Replace emails, phone numbers, and the session display name."""
    cleaned = EMAIL_PATTERN.sub(REDACTED_EMAIL, text)
    cleaned = PHONE_PATTERN.sub(REDACTED_PHONE, cleaned)
    if display_name and display_name.strip():
        name = re.compile(rf"\b{re.escape(display_name.strip())}\b", re.IGNORECASE)
        cleaned = name.sub(REDACTED_NAME, cleaned)
    return cleaned


def contains_pii(text: str, display_name: str | None = None) -> bool:
    """True when any scrub pattern still matches; used by datastore scans."""
    if EMAIL_PATTERN.search(text) or PHONE_PATTERN.search(text):
        return True
    if display_name and display_name.strip():
        name = re.compile(rf"\b{re.escape(display_name.strip())}\b", re.IGNORECASE)
        if name.search(text):
            return True
    return False
