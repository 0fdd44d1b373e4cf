"""HTTP client for the scoring wire protocol."""

from __future__ import annotations

import time
from typing import Sequence

import httpx

from ..transport import TransportFailure, with_retries
from .types import BackendError, BackendInfo, ContextOverflowError, EmbeddingMatrix, TokenSpan


class HttpScorerBackend:
    """Talks to a server exposing /info, /tokenize, /embed and /loglik.

    Transport-level failures retry with exponential backoff; structured
    errors (for example context_overflow) surface as typed exceptions.
    """

    def __init__(
        self,
        base_url: str,
        http: httpx.Client | None = None,
        timeout: float = 60.0,
        max_retries: int = 2,
        backoff_base: float = 0.5,
        sleep=time.sleep,
    ):
        self.base_url = base_url.rstrip("/")
        self._http = http or httpx.Client(timeout=timeout)
        self._max_retries = max_retries
        self._backoff_base = backoff_base
        self._sleep = sleep

    def _request(self, method: str, path: str, payload: dict | None = None) -> dict:
        url = f"{self.base_url}{path}"

        def attempt() -> dict:
            try:
                if method == "GET":
                    response = self._http.get(url)
                else:
                    response = self._http.post(url, json=payload)
            except httpx.HTTPError as exc:
                raise TransportFailure(f"{method} {url}: {exc}") from exc
            if response.status_code >= 500 or response.status_code == 429:
                raise TransportFailure(f"{method} {url}: HTTP {response.status_code}")
            if response.status_code >= 400:
                try:
                    body = response.json()
                except ValueError:
                    body = {}
                detail = body.get("detail", body) if isinstance(body, dict) else body
                if isinstance(detail, dict) and detail.get("error") == "context_overflow":
                    raise ContextOverflowError(
                        limit=int(detail.get("limit", 0)),
                        needed=detail.get("needed"),
                    )
                raise BackendError(f"{method} {url}: HTTP {response.status_code}: {detail}")
            return response.json()

        return with_retries(
            attempt,
            max_retries=self._max_retries,
            backoff_base=self._backoff_base,
            sleep=self._sleep,
        )

    def info(self) -> BackendInfo:
        obj = self._request("GET", "/info")
        return BackendInfo(
            backend_id=obj["backend_id"],
            model_name=obj["model_name"],
            context_window=int(obj["context_window"]),
            vocab_size=int(obj["vocab_size"]),
        )

    def tokenize(self, text: str) -> list[str]:
        return list(self._request("POST", "/tokenize", {"text": text})["tokens"])

    def embed(self, text: str, span: TokenSpan) -> EmbeddingMatrix:
        obj = self._request("POST", "/embed", {"text": text, "span": [span.start, span.end]})
        matrix = EmbeddingMatrix(obj["vectors"])
        declared = int(obj["dimension"])
        if matrix.dimension != declared:
            raise BackendError(
                f"declared dimension {declared} but vectors have {matrix.dimension}"
            )
        return matrix

    def loglik(self, source: str, target: str, target_span: TokenSpan) -> list[float]:
        obj = self._request(
            "POST",
            "/loglik",
            {"source": source, "target": target, "target_span": [target_span.start, target_span.end]},
        )
        values = [float(v) for v in obj["logprobs"]]
        if len(values) != len(target_span):
            raise BackendError(
                f"expected {len(target_span)} log-probabilities, got {len(values)}"
            )
        return values
