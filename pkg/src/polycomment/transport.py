"""Retry plumbing shared by the HTTP clients (forge search, scorer, judge)."""

from __future__ import annotations

import time
from typing import Callable, TypeVar

T = TypeVar("T")


class TransportFailure(Exception):
    """Retryable transport-level failure (connection, timeout, 5xx, 429)."""

    def __init__(self, message: str, retry_after: float | None = None):
        super().__init__(message)
        self.retry_after = retry_after


class RateLimitedError(TransportFailure):
    """The remote asked us to back off."""


def with_retries(
    fn: Callable[[], T],
    max_retries: int = 3,
    backoff_base: float = 0.5,
    sleep: Callable[[float], None] = time.sleep,
) -> T:
    """Run fn, retrying on TransportFailure with exponential backoff.

    A server-provided Retry-After wins over the computed delay.  The last
    failure is re-raised once retries are exhausted.
    """
    if max_retries < 0:
        raise ValueError("max_retries must be >= 0")
    attempt = 0
    while True:
        try:
            return fn()
        except TransportFailure as exc:
            if attempt >= max_retries:
                raise
            delay = exc.retry_after if exc.retry_after is not None else backoff_base * 2**attempt
            sleep(delay)
            attempt += 1
