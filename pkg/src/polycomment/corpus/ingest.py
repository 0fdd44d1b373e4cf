"""Keyword-driven harvesting of source files from a code-search API."""

from __future__ import annotations

import base64
import hashlib
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import httpx

from ..transport import RateLimitedError, TransportFailure, with_retries
from .syntax import SyntaxTable
from .types import SourceFile


@dataclass(frozen=True)
class RemoteFile:
    repo: str
    path: str
    url: str
    content: str


class SearchClient(Protocol):
    def search(self, keyword: str, limit: int = 100) -> list[RemoteFile]:
        ...


@dataclass
class IngestResult:
    files: list[SourceFile]
    warnings: list[str] = field(default_factory=list)


def _normalize(content: str) -> str:
    return content.replace("\r\n", "\n").replace("\r", "\n")


def _content_id(content: str) -> str:
    return hashlib.sha1(content.encode("utf-8")).hexdigest()[:12]


def ingest_keywords(
    keywords: Sequence[str],
    client: SearchClient,
    language: str,
    limit_per_keyword: int = 100,
    pl_table: SyntaxTable | None = None,
    default_pl: str = "unknown",
    max_in_flight: int = 4,
) -> IngestResult:
    """Search each keyword, download hits, dedup by content, sort by id.

    Rate-limit exhaustion on one keyword yields a warning and a partial
    result rather than aborting the run.  The same client state always
    produces the same file set, so reruns are idempotent.
    """
    warnings: list[str] = []
    hits: list[RemoteFile] = []

    def one(keyword: str) -> list[RemoteFile]:
        try:
            return client.search(keyword, limit=limit_per_keyword)
        except RateLimitedError as exc:
            warnings.append(f"keyword {keyword!r}: rate limit exhausted ({exc})")
            return []

    with ThreadPoolExecutor(max_workers=max(1, max_in_flight)) as pool:
        for found in pool.map(one, keywords):
            hits.extend(found)

    by_id: dict[str, SourceFile] = {}
    for hit in hits:
        content = _normalize(hit.content)
        file_id = _content_id(content)
        if file_id in by_id:
            continue
        pl = default_pl
        if pl_table is not None:
            ext = os.path.splitext(hit.path)[1]
            syntax = pl_table.for_extension(ext)
            if syntax is not None:
                pl = syntax.pl
        by_id[file_id] = SourceFile(
            id=file_id,
            language=language,
            pl=pl,
            content=content,
            origin=f"{hit.repo}:{hit.path}",
        )
    files = [by_id[k] for k in sorted(by_id)]
    return IngestResult(files=files, warnings=warnings)


class ForgeSearchClient:
    """Code-search client for a GitHub-style REST API.

    Needs an access token for non-trivial rate limits; pass it directly or
    via the environment variable named by ``token_env``.
    """

    def __init__(
        self,
        base_url: str = "https://api.github.com",
        token: str | None = None,
        token_env: str = "GITHUB_TOKEN",
        http: httpx.Client | None = None,
        max_retries: int = 3,
        backoff_base: float = 1.0,
        sleep=None,
    ):
        self.base_url = base_url.rstrip("/")
        self.token = token or os.environ.get(token_env)
        self._http = http or httpx.Client(timeout=30.0)
        self._max_retries = max_retries
        self._backoff_base = backoff_base
        self._sleep = sleep if sleep is not None else time.sleep

    def _headers(self) -> dict[str, str]:
        headers = {"Accept": "application/vnd.github+json"}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        return headers

    def _get(self, url: str, params: dict | None = None) -> dict:
        def attempt() -> dict:
            try:
                response = self._http.get(url, params=params, headers=self._headers())
            except httpx.HTTPError as exc:
                raise TransportFailure(f"GET {url}: {exc}") from exc
            if response.status_code in (429, 403):
                retry_after = response.headers.get("Retry-After")
                raise RateLimitedError(
                    f"GET {url}: HTTP {response.status_code}",
                    retry_after=float(retry_after) if retry_after else None,
                )
            if response.status_code >= 500:
                raise TransportFailure(f"GET {url}: HTTP {response.status_code}")
            response.raise_for_status()
            return response.json()

        return with_retries(
            attempt,
            max_retries=self._max_retries,
            backoff_base=self._backoff_base,
            sleep=self._sleep,
        )

    def search(self, keyword: str, limit: int = 100) -> list[RemoteFile]:
        payload = self._get(
            f"{self.base_url}/search/code",
            params={"q": keyword, "per_page": min(limit, 100)},
        )
        out: list[RemoteFile] = []
        for item in payload.get("items", [])[:limit]:
            meta = self._get(item["url"])
            raw = meta.get("content", "")
            if meta.get("encoding") == "base64":
                try:
                    text = base64.b64decode(raw).decode("utf-8", errors="replace")
                except Exception:
                    continue
            else:
                text = raw
            out.append(
                RemoteFile(
                    repo=item.get("repository", {}).get("full_name", ""),
                    path=item.get("path", ""),
                    url=item["url"],
                    content=text,
                )
            )
        return out
