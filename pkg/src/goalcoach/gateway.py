"""Model backends behind one completion-with-tools interface.

The scripted backend replays deterministic fixtures for tests and demos; the
live backend speaks the common chat-completions HTTP protocol.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Protocol

import httpx

from .config import GatewayConfig, LlmParams
from .domain import Phase

BundleKind = str  # "chat", "themes", or "style"

SAVE_PROFILE_TOOL = "saveProfile"


class GatewayUnavailable(RuntimeError):
    """Transient backend failure after exhausting retries."""


class ProviderProtocolError(RuntimeError):
    """The provider answered with something that is not the protocol."""


class NoPayload(ValueError):
    """No well-formed structured document could be extracted."""


class ScriptFormatError(ValueError):
    """A script fixture does not parse or misses required keys."""


class DuplicateScriptEntry(ValueError):
    """Two script entries claim the same match key."""


@dataclass(frozen=True)
class PromptBundle:
    """Everything one completion call needs, already phase-shaped."""

    kind: BundleKind = "chat"
    phase: Phase | None = None
    system_text: str = ""
    task_text: str = ""
    few_shots: tuple[tuple[str, str], ...] = ()
    history: tuple[tuple[str, str], ...] = ()
    user_text: str = ""
    turn_index: int = 0
    tool_schema: dict[str, Any] | None = None

    @property
    def is_empty(self) -> bool:
        return not (self.task_text.strip() or self.user_text.strip())


@dataclass(frozen=True)
class ToolCall:
    tool_name: str
    payload: Any


@dataclass(frozen=True)
class LlmResult:
    text: str
    tool_calls: tuple[ToolCall, ...] = ()


class ModelGateway(Protocol):
    def complete(self, bundle: PromptBundle, params: LlmParams) -> LlmResult: ...


def repair_tool_payload(raw_text: str) -> Any:
    """Extract the first well-formed JSON object or array embedded in text.

    Never repairs partial documents; a truncated payload is a missing payload.
    """
    decoder = json.JSONDecoder()
    for at, char in enumerate(raw_text):
        if char not in "{[":
            continue
        try:
            document, _ = decoder.raw_decode(raw_text, at)
        except json.JSONDecodeError:
            continue
        if isinstance(document, (dict, list)):
            return document
    raise NoPayload("no structured document found")


@dataclass(frozen=True)
class ScriptEntry:
    result: LlmResult
    kind: BundleKind = "chat"
    phase: Phase | None = None
    turn: int | None = None
    contains: str | None = None

    def matches(self, bundle: PromptBundle) -> bool:
        if self.kind != bundle.kind:
            return False
        if self.kind != "chat":
            return self.contains is None or self.contains in bundle.user_text
        if self.phase is not bundle.phase:
            return False
        if self.turn is not None:
            return self.turn == bundle.turn_index
        return self.contains is not None and self.contains in bundle.user_text


_FALLBACK_TEXT = "Thanks for sharing. Tell me a bit more about that?"


@dataclass(frozen=True)
class Script:
    entries: tuple[ScriptEntry, ...] = ()
    fallback: LlmResult = field(default_factory=lambda: LlmResult(_FALLBACK_TEXT))


def _parse_tool_calls(raw: Any) -> tuple[ToolCall, ...]:
    if raw is None:
        return ()
    if not isinstance(raw, list):
        raise ScriptFormatError("tool_calls must be a list")
    calls = []
    for item in raw:
        if not isinstance(item, dict) or "tool" not in item:
            raise ScriptFormatError("each tool call needs a 'tool' name")
        calls.append(ToolCall(tool_name=str(item["tool"]), payload=item.get("payload")))
    return tuple(calls)


def _parse_entry(raw: Any) -> ScriptEntry:
    if not isinstance(raw, dict):
        raise ScriptFormatError("script entries must be objects")
    if "text" not in raw or not isinstance(raw["text"], str):
        raise ScriptFormatError("every entry needs a text string")
    result = LlmResult(text=raw["text"], tool_calls=_parse_tool_calls(raw.get("tool_calls")))
    kind = raw.get("kind", "chat")
    if kind in ("themes", "style"):
        return ScriptEntry(result=result, kind=kind, contains=raw.get("contains"))
    if kind != "chat":
        raise ScriptFormatError(f"unknown entry kind: {kind!r}")
    try:
        phase = Phase(raw["phase"])
    except (KeyError, ValueError):
        raise ScriptFormatError(f"entry needs a valid phase, got {raw.get('phase')!r}") from None
    turn = raw.get("turn")
    contains = raw.get("contains")
    if (turn is None) == (contains is None):
        raise ScriptFormatError("chat entries take exactly one of 'turn' or 'contains'")
    if turn is not None and (not isinstance(turn, int) or turn < 0):
        raise ScriptFormatError("turn must be a non-negative integer")
    return ScriptEntry(result=result, phase=phase, turn=turn, contains=contains)


def parse_script(document: Any) -> Script:
    if not isinstance(document, dict):
        raise ScriptFormatError("script root must be an object")
    raw_entries = document.get("entries", [])
    if not isinstance(raw_entries, list):
        raise ScriptFormatError("entries must be a list")
    entries = tuple(_parse_entry(raw) for raw in raw_entries)
    seen: set[tuple[Any, ...]] = set()
    for entry in entries:
        key = (entry.kind, entry.phase, entry.turn, entry.contains)
        if key in seen:
            raise DuplicateScriptEntry(f"duplicate match key: {key}")
        seen.add(key)
    fallback = Script().fallback
    if "fallback" in document:
        raw_fallback = document["fallback"]
        if not isinstance(raw_fallback, dict) or not isinstance(raw_fallback.get("text"), str):
            raise ScriptFormatError("fallback needs a text string")
        fallback = LlmResult(text=raw_fallback["text"])
    return Script(entries=entries, fallback=fallback)


def load_script(path: str | Path) -> Script:
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise ScriptFormatError(f"script does not parse: {err}") from err
    return parse_script(document)


class ScriptedBackend:
    """Deterministic replay backend: same bundle sequence, same results."""

    def __init__(self, script: Script) -> None:
        self._script = script

    def complete(self, bundle: PromptBundle, params: LlmParams) -> LlmResult:
        if bundle.is_empty:
            return LlmResult(text=self._script.fallback.text)
        matches = [entry for entry in self._script.entries if entry.matches(bundle)]
        if len(matches) > 1:
            raise DuplicateScriptEntry(
                f"{len(matches)} entries match phase={bundle.phase} turn={bundle.turn_index}"
            )
        if matches:
            return matches[0].result
        return self._script.fallback


class FailingBackend:
    """Always unavailable; simulates an outage in tests."""

    def complete(self, bundle: PromptBundle, params: LlmParams) -> LlmResult:
        raise GatewayUnavailable("backend offline")


def _bundle_messages(bundle: PromptBundle) -> list[dict[str, str]]:
    messages: list[dict[str, str]] = []
    system = "\n\n".join(part for part in (bundle.system_text, bundle.task_text) if part)
    if system:
        messages.append({"role": "system", "content": system})
    for role, text in bundle.few_shots:
        messages.append({"role": role, "content": text})
    for speaker, text in bundle.history:
        role = "assistant" if speaker == "coach" else "user"
        messages.append({"role": role, "content": text})
    if bundle.user_text:
        messages.append({"role": "user", "content": bundle.user_text})
    return messages


class LiveGateway:
    """HTTP chat-completions client with bounded retry and payload repair."""

    def __init__(
        self,
        config: GatewayConfig,
        transport: httpx.BaseTransport | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        if not config.endpoint:
            raise ValueError("live gateway needs an endpoint URL")
        self._config = config
        self._sleep = sleep
        self._client = httpx.Client(transport=transport, timeout=30.0)

    def complete(self, bundle: PromptBundle, params: LlmParams) -> LlmResult:
        if bundle.is_empty:
            raise ProviderProtocolError("refusing to send an empty prompt")
        body: dict[str, Any] = {
            "model": params.model_name,
            "messages": _bundle_messages(bundle),
            "temperature": params.temperature,
            "max_tokens": params.max_tokens,
        }
        if bundle.tool_schema is not None:
            body["tools"] = [
                {
                    "type": "function",
                    "function": {
                        "name": SAVE_PROFILE_TOOL,
                        "description": "Persist validated profile fields for the active phase.",
                        "parameters": bundle.tool_schema,
                    },
                }
            ]
        response = self._post_with_retry(body)
        return self._parse_response(response)

    def _post_with_retry(self, body: dict[str, Any]) -> httpx.Response:
        headers = {}
        if self._config.api_key:
            headers["Authorization"] = f"Bearer {self._config.api_key}"
        delay = self._config.backoff_initial_seconds
        last_error: Exception | None = None
        for attempt in range(self._config.max_attempts):
            if attempt:
                self._sleep(delay)
                delay *= 2
            try:
                response = self._client.post(self._config.endpoint, json=body, headers=headers)
            except httpx.TransportError as err:
                last_error = err
                continue
            if response.status_code >= 500:
                last_error = ProviderProtocolError(f"server error {response.status_code}")
                continue
            if response.status_code >= 400:
                raise ProviderProtocolError(
                    f"provider rejected the request: {response.status_code}"
                )
            return response
        raise GatewayUnavailable(f"gave up after {self._config.max_attempts} attempts") from last_error

    def _parse_response(self, response: httpx.Response) -> LlmResult:
        try:
            body = response.json()
            message = body["choices"][0]["message"]
        except (json.JSONDecodeError, LookupError, TypeError) as err:
            raise ProviderProtocolError(f"malformed provider response: {err}") from err
        text = message.get("content") or ""
        calls: list[ToolCall] = []
        for raw_call in message.get("tool_calls") or []:
            function = raw_call.get("function") or {}
            name = function.get("name")
            if not name:
                continue
            arguments = function.get("arguments", "")
            payload = self._decode_arguments(arguments)
            if payload is None:
                continue  # truncated or unparseable: dropped, never guessed
            calls.append(ToolCall(tool_name=name, payload=payload))
        return LlmResult(text=text, tool_calls=tuple(calls))

    @staticmethod
    def _decode_arguments(arguments: Any) -> Any:
        if isinstance(arguments, (dict, list)):
            return arguments
        if not isinstance(arguments, str):
            return None
        try:
            return json.loads(arguments)
        except json.JSONDecodeError:
            try:
                return repair_tool_payload(arguments)
            except NoPayload:
                return None
