"""Support-resource catalog: a deployment-editable list with guaranteed crisis entries."""

from __future__ import annotations

import json
from enum import Enum
from importlib import resources as importlib_resources
from pathlib import Path

from pydantic import BaseModel, ConfigDict


class ResourceCategory(str, Enum):
    CAMPUS = "campus"
    CRISIS = "crisis"
    SELF_GUIDED = "self-guided"


class SupportResource(BaseModel):
    model_config = ConfigDict(frozen=True)

    title: str
    description: str
    url: str
    category: ResourceCategory


# Served even when a deployment's catalog omits them; crisis access is not
# allowed to depend on configuration quality.
BUILTIN_CRISIS_RESOURCES: tuple[SupportResource, ...] = (
    SupportResource(
        title="988 Suicide & Crisis Lifeline",
        description="Call or text 988 for free, confidential support, any hour of any day.",
        url="https://988lifeline.org",
        category=ResourceCategory.CRISIS,
    ),
    SupportResource(
        title="Crisis Text Line",
        description="Text HOME to 741741 to reach a trained crisis counselor.",
        url="https://www.crisistextline.org",
        category=ResourceCategory.CRISIS,
    ),
)


def _default_catalog_text() -> str:
    return (
        importlib_resources.files("goalcoach")
        .joinpath("data/resources.json")
        .read_text(encoding="utf-8")
    )


def load_resources(path: str | Path | None = None) -> list[SupportResource]:
    """Load the catalog, inject missing crisis defaults, and put crisis first."""
    text = Path(path).read_text(encoding="utf-8") if path else _default_catalog_text()
    entries = [SupportResource.model_validate(item) for item in json.loads(text)]
    if not any(item.category is ResourceCategory.CRISIS for item in entries):
        entries = list(BUILTIN_CRISIS_RESOURCES) + entries
    entries.sort(key=lambda item: item.category is not ResourceCategory.CRISIS)
    return entries
