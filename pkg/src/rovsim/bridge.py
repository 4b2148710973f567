"""The model-facing side: prompt construction, completion transport, and
the instruction pipeline that turns a reply into executable commands.

Information flows one way.  Outbound traffic is only ever the fixed system
prompt and the user's words, verbatim; scene state never rides along, and
`audit_closed_loop` checks exactly that over the recorded transcript.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Protocol

from .chatscript import (
    CATALOG,
    Command,
    EvalError,
    LexError,
    ParseError,
    Script,
    ValidationReport,
    evaluate,
    extract_script,
    parse,
    validate,
)
from .chatscript.catalog import CatalogFunction
from .scene import Scene

__all__ = [
    "Message",
    "TranscriptRecord",
    "Transcript",
    "ProviderConfig",
    "ProviderError",
    "ProviderTimeout",
    "ProviderHTTPError",
    "ReplayMiss",
    "ReplayProvider",
    "HttpProvider",
    "InstructionResult",
    "LLMBridge",
    "AuditResult",
    "audit_closed_loop",
    "build_system_prompt",
    "fnv1a64",
    "make_provider",
]

DEFAULT_API_KEY_ENV = "CHATSIM_API_KEY"


@dataclass(frozen=True, slots=True)
class Message:
    role: str  # "system" | "user" (outbound); "assistant" only inbound
    content: str


@dataclass(frozen=True, slots=True)
class TranscriptRecord:
    seq: int
    exchange: int
    direction: str  # "outbound" | "inbound"
    role: str
    content: str
    timestamp: str
    provider_id: str | None = None

    def to_dict(self) -> dict:
        return {
            "seq": self.seq,
            "exchange": self.exchange,
            "direction": self.direction,
            "role": self.role,
            "content": self.content,
            "timestamp": self.timestamp,
            "provider_id": self.provider_id,
        }


class Transcript:
    """Append-only record of every message exchanged with the provider."""

    def __init__(self) -> None:
        self.records: list[TranscriptRecord] = []
        self._exchanges = 0

    def begin_exchange(self) -> int:
        self._exchanges += 1
        return self._exchanges

    @property
    def exchange_count(self) -> int:
        return self._exchanges

    def append(
        self, exchange: int, direction: str, role: str, content: str, provider_id: str | None = None
    ) -> None:
        self.records.append(
            TranscriptRecord(
                seq=len(self.records),
                exchange=exchange,
                direction=direction,
                role=role,
                content=content,
                timestamp=datetime.now(timezone.utc).isoformat(),
                provider_id=provider_id,
            )
        )

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r.to_dict()) + "\n" for r in self.records)


# -- providers ----------------------------------------------------------------


class ProviderError(Exception):
    """Base class for completion transport failures."""


class ProviderTimeout(ProviderError):
    pass


class ProviderHTTPError(ProviderError):
    def __init__(self, status: int, detail: str = "") -> None:
        super().__init__(f"provider returned HTTP {status}" + (f": {detail}" if detail else ""))
        self.status = status


class ReplayMiss(ProviderError):
    def __init__(self, key: str, text: str) -> None:
        super().__init__(f"no replay fixture for {text!r} (key {key})")
        self.key = key


@dataclass(frozen=True, slots=True)
class ProviderConfig:
    kind: str = "replay"  # "http" | "replay"
    endpoint: str = ""
    model: str = ""
    timeout_seconds: float = 30.0
    max_retries: int = 3
    api_key_env: str = DEFAULT_API_KEY_ENV
    fixtures_path: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ("http", "replay"):
            raise ValueError(f"unknown provider kind {self.kind!r}")
        if self.kind == "http" and not self.endpoint:
            raise ValueError("http provider requires an endpoint")
        if self.kind == "http" and not self.api_key_env:
            raise ValueError("http provider requires an api key source")


@dataclass(frozen=True, slots=True)
class ProviderReply:
    content: str
    provider_id: str


class Provider(Protocol):
    def send(self, messages: list[Message]) -> ProviderReply: ...


def fnv1a64(data: str) -> int:
    """64-bit FNV-1a over the UTF-8 bytes."""
    h = 0xCBF29CE484222325
    for byte in data.encode("utf-8"):
        h ^= byte
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def _replay_key(text: str) -> int:
    return fnv1a64(text.strip().lower())


class ReplayProvider:
    """Deterministic stand-in: canned replies keyed by hashed user text.

    Fixtures are a JSON object mapping raw instruction text to the reply,
    kept readable on disk; lookups hash the lowercase-trimmed user turn.
    """

    def __init__(self, fixtures: dict[str, str]) -> None:
        self._by_hash: dict[int, str] = {_replay_key(k): v for k, v in fixtures.items()}

    @classmethod
    def from_path(cls, path: str | Path) -> ReplayProvider:
        with open(path, encoding="utf-8") as fh:
            return cls(json.load(fh))

    def send(self, messages: list[Message]) -> ProviderReply:
        user_text = messages[-1].content
        key = _replay_key(user_text)
        if key not in self._by_hash:
            raise ReplayMiss(f"{key:016x}", user_text)
        return ProviderReply(content=self._by_hash[key], provider_id=f"replay-{key:016x}")


_RETRYABLE_STATUS = {500, 502, 503, 504, 429}


class HttpProvider:
    """Chat-completion client for any endpoint speaking the common wire shape.

    POSTs {model, messages, temperature: 0} to <endpoint>/chat/completions
    with a bearer token from the configured environment variable.  Transient
    failures (timeouts, connection errors, retryable statuses) back off
    exponentially: 1s, 2s, 4s for the default three retries.  Client errors
    (other 4xx) never retry.
    """

    def __init__(
        self,
        config: ProviderConfig,
        sleep: Callable[[float], None] = time.sleep,
        env: dict | None = None,
    ) -> None:
        self.config = config
        self._sleep = sleep
        self._env = env

    def _api_key(self) -> str:
        import os

        env = self._env if self._env is not None else os.environ
        key = env.get(self.config.api_key_env, "")
        if not key:
            raise ProviderError(
                f"api key environment variable {self.config.api_key_env} is not set"
            )
        return key

    def send(self, messages: list[Message]) -> ProviderReply:
        import requests

        url = self.config.endpoint.rstrip("/") + "/chat/completions"
        headers = {"Authorization": f"Bearer {self._api_key()}"}
        body = {
            "model": self.config.model,
            "messages": [{"role": m.role, "content": m.content} for m in messages],
            "temperature": 0,
        }
        last_status: int | None = None
        attempts = self.config.max_retries + 1
        for attempt in range(attempts):
            try:
                response = requests.post(
                    url, json=body, headers=headers, timeout=self.config.timeout_seconds
                )
            except requests.Timeout:
                last_status = None
            except requests.ConnectionError:
                last_status = None
            else:
                if response.status_code == 200:
                    return self._parse_reply(response)
                if response.status_code in _RETRYABLE_STATUS:
                    last_status = response.status_code
                else:
                    raise ProviderHTTPError(response.status_code, response.text[:200])
            if attempt + 1 < attempts:
                self._sleep(float(2**attempt))
        if last_status is not None:
            raise ProviderHTTPError(last_status, "retries exhausted")
        raise ProviderTimeout(f"no response from {url} after {attempts} attempts")

    @staticmethod
    def _parse_reply(response) -> ProviderReply:
        try:
            payload = response.json()
            content = payload["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise ProviderError(f"malformed completion payload: {exc}") from None
        return ProviderReply(content=str(content), provider_id=str(payload.get("id", "")))


def make_provider(config: ProviderConfig) -> Provider:
    if config.kind == "replay":
        if not config.fixtures_path:
            raise ProviderError("replay provider requires a fixtures path")
        return ReplayProvider.from_path(config.fixtures_path)
    return HttpProvider(config)


# -- system prompt --------------------------------------------------------------


def build_system_prompt(catalog: dict[str, CatalogFunction] = CATALOG) -> str:
    """Deterministic system prompt: catalog signatures plus output rules."""
    if not catalog:
        raise ValueError("catalog is empty")
    lines = [
        "You steer a headless underwater robot simulator. Convert the user's",
        "instruction into a ChatScript program built only from the functions",
        "listed below.",
        "",
        "Respond with exactly one fenced code block (``` on its own line",
        "before and after) containing only the program, nothing else.",
        "",
        "ChatScript rules:",
        "- One statement per line: a function call, or `let name = expression`.",
        "- Expressions: numbers, + - * /, tuples (a, b, c), the fields .x .y .z",
        "  of a stored vector, and double-quoted text.",
        "- No loops, no conditionals, no function definitions. To repeat an",
        "  action, write the call once per repetition with computed literals.",
        "- Never use a function that is not listed below.",
        "- Distances are meters; angles are degrees.",
        "",
        "Functions:",
    ]
    for fn in catalog.values():
        lines.append(f"- {fn.signature}: {fn.description}")
    return "\n".join(lines) + "\n"


# -- instruction pipeline --------------------------------------------------------


@dataclass(slots=True)
class InstructionResult:
    """Everything that happened to one instruction, success or not."""

    text: str
    status: str  # "accepted" | "rejected" | "provider_error"
    raw_reply: str = ""
    source: str = ""
    script: Script | None = None
    report: ValidationReport = field(default_factory=ValidationReport)
    commands: list[Command] = field(default_factory=list)
    error: str = ""

    def to_dict(self) -> dict:
        from .chatscript import describe_command

        return {
            "text": self.text,
            "status": self.status,
            "raw_reply": self.raw_reply,
            "source": self.source,
            "findings": self.report.render_lines(),
            "commands": [describe_command(c) for c in self.commands],
            "error": self.error,
        }


class LLMBridge:
    """Runs the instruct pipeline and keeps the audit surfaces."""

    def __init__(self, provider: Provider, catalog: dict[str, CatalogFunction] = CATALOG) -> None:
        self.provider = provider
        self.catalog = catalog
        self.system_prompt = build_system_prompt(catalog)
        self.transcript = Transcript()
        self.user_inputs: list[str] = []

    def complete(self, messages: list[Message]) -> str:
        """One recorded exchange: messages out, first choice's content back."""
        if len(messages) != 2 or messages[0].role != "system" or messages[1].role != "user":
            raise ValueError("outbound shape must be [system, user]")
        exchange = self.transcript.begin_exchange()
        for m in messages:
            self.transcript.append(exchange, "outbound", m.role, m.content)
        reply = self.provider.send(messages)
        self.transcript.append(
            exchange, "inbound", "assistant", reply.content, provider_id=reply.provider_id
        )
        return reply.content

    def instruct(self, text: str, scene: Scene) -> InstructionResult:
        """Natural language in, validated commands (or a rejection) out."""
        result = InstructionResult(text=text, status="rejected")
        self.user_inputs.append(text)
        messages = [Message("system", self.system_prompt), Message("user", text)]
        try:
            result.raw_reply = self.complete(messages)
        except ProviderError as exc:
            result.status = "provider_error"
            result.error = str(exc)
            return result

        result.source = extract_script(result.raw_reply)
        try:
            result.script = parse(result.source)
        except LexError as exc:
            result.report.add("LexError", exc.line, exc.column, exc.reason)
            return result
        except ParseError as exc:
            result.report.add("ParseError", exc.line, exc.column, exc.reason)
            return result

        if not result.script.statements:
            result.report.add("ParseError", 1, 1, "script is empty")
            return result

        result.report = validate(result.script, self.catalog)
        if not result.report.ok:
            return result

        try:
            result.commands = evaluate(result.script, scene)
        except EvalError as exc:
            result.report.add(exc.code, exc.line, exc.column, exc.reason)
            return result

        result.status = "accepted"
        return result

    def assert_closed_loop(self) -> AuditResult:
        return audit_closed_loop(self.transcript, self.system_prompt, self.user_inputs)


# -- closed-loop audit ------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class AuditResult:
    ok: bool
    violation_index: int | None = None
    message: str = ""


def audit_closed_loop(
    transcript: Transcript, system_prompt: str, user_texts: list[str]
) -> AuditResult:
    """Pass iff every outbound message is the system prompt or verbatim user text.

    Anything else (for example a user turn augmented with positions read
    from the scene) is a violation, reported with its record index.
    """
    allowed_user = set(user_texts)
    for idx, record in enumerate(transcript.records):
        if record.direction != "outbound":
            continue
        if record.role == "system":
            if record.content != system_prompt:
                return AuditResult(False, idx, "outbound system message differs from the prompt")
        elif record.role == "user":
            if record.content not in allowed_user:
                return AuditResult(False, idx, "outbound user message is not verbatim user input")
        else:
            return AuditResult(False, idx, f"unexpected outbound role {record.role!r}")
    return AuditResult(True)
