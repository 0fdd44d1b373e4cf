"""Chat-completion client plumbing for judge calls."""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import httpx

from ..transport import TransportFailure, with_retries
from .types import DecodingConfig

Message = dict


class ChatClient(Protocol):
    """Anything that can turn chat messages into a completion string."""

    model: str

    def complete(self, messages: Sequence[Message], decoding: DecodingConfig) -> str:
        ...


def request_fingerprint(
    model: str, messages: Sequence[Message], decoding: DecodingConfig
) -> str:
    """Stable hash of the full request body, for replay bookkeeping."""
    canonical = json.dumps(
        {"model": model, "messages": list(messages), "decoding": decoding.to_json()},
        sort_keys=True,
        ensure_ascii=False,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class RawResponse:
    """Verbatim reply text plus the request metadata needed to replay it."""

    text: str
    model: str
    decoding: DecodingConfig
    fingerprint: str
    attempts: int
    started_at: float
    finished_at: float


class HttpChatClient:
    """OpenAI-style chat-completions client.

    The API key comes from the environment variable named by ``api_key_env``
    so keys never live in run configs.
    """

    def __init__(
        self,
        model: str,
        base_url: str,
        api_key_env: str = "JUDGE_API_KEY",
        http: httpx.Client | None = None,
        timeout: float = 120.0,
    ):
        self.model = model
        self.base_url = base_url.rstrip("/")
        self._api_key = os.environ.get(api_key_env)
        self._http = http or httpx.Client(timeout=timeout)

    def complete(self, messages: Sequence[Message], decoding: DecodingConfig) -> str:
        headers = {}
        if self._api_key:
            headers["Authorization"] = f"Bearer {self._api_key}"
        payload = {
            "model": self.model,
            "messages": list(messages),
            "temperature": decoding.temperature,
            "seed": decoding.seed,
            "max_tokens": decoding.max_output_tokens,
        }
        try:
            response = self._http.post(
                f"{self.base_url}/chat/completions", json=payload, headers=headers
            )
        except httpx.HTTPError as exc:
            raise TransportFailure(f"chat completion: {exc}") from exc
        if response.status_code == 429 or response.status_code >= 500:
            retry_after = response.headers.get("Retry-After")
            raise TransportFailure(
                f"chat completion: HTTP {response.status_code}",
                retry_after=float(retry_after) if retry_after else None,
            )
        response.raise_for_status()
        body = response.json()
        return body["choices"][0]["message"]["content"]


def invoke_judge(
    client: ChatClient,
    messages: Sequence[Message],
    decoding: DecodingConfig | None = None,
    max_retries: int = 4,
    backoff_base: float = 0.5,
    sleep=time.sleep,
) -> RawResponse:
    """One judge call with bounded retries on transport failures.

    The raw text is returned verbatim; interpretation belongs to parsing.
    """
    decoding = decoding or DecodingConfig()
    fingerprint = request_fingerprint(client.model, messages, decoding)
    attempts = 0
    started = time.time()

    def attempt() -> str:
        nonlocal attempts
        attempts += 1
        return client.complete(messages, decoding)

    text = with_retries(
        attempt, max_retries=max_retries, backoff_base=backoff_base, sleep=sleep
    )
    return RawResponse(
        text=text,
        model=client.model,
        decoding=decoding,
        fingerprint=fingerprint,
        attempts=attempts,
        started_at=started,
        finished_at=time.time(),
    )
