"""Runtime configuration, sourced from the environment and keyword overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, field


@dataclass(frozen=True)
class LlmParams:
    """Sampling knobs; fixed by configuration, never set per turn by the model."""

    temperature: float = 0.7
    max_tokens: int = 512
    model_name: str = "coach-default"

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError("temperature must be non-negative")
        if self.max_tokens < 1:
            raise ValueError("max_tokens must be positive")


@dataclass(frozen=True)
class GatewayConfig:
    endpoint: str = ""
    api_key: str = ""
    params: LlmParams = field(default_factory=LlmParams)
    max_attempts: int = 3
    backoff_initial_seconds: float = 0.5

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> "GatewayConfig":
        env = dict(os.environ) if env is None else env
        return cls(
            endpoint=env.get("GOALCOACH_LLM_ENDPOINT", ""),
            api_key=env.get("GOALCOACH_LLM_API_KEY", ""),
            params=LlmParams(
                temperature=float(env.get("GOALCOACH_LLM_TEMPERATURE", "0.7")),
                max_tokens=int(env.get("GOALCOACH_LLM_MAX_TOKENS", "512")),
                model_name=env.get("GOALCOACH_LLM_MODEL", "coach-default"),
            ),
            max_attempts=int(env.get("GOALCOACH_LLM_MAX_ATTEMPTS", "3")),
            backoff_initial_seconds=float(env.get("GOALCOACH_LLM_BACKOFF", "0.5")),
        )


@dataclass(frozen=True)
class ServiceConfig:
    history_window: int = 20
    consistency_window_days: int = 7
    transcript_retention_days: int = 90
    dashboard_url: str = "http://localhost:8000/dashboard"
    resources_path: str | None = None
    lexicon_path: str | None = None
