"""Corpus construction: harvesting, extraction, filtering and FIM prompts."""

from .extract import (
    UnterminatedCommentError,
    extract_comments,
    samples_from_file,
    scan_comments,
)
from .filters import (
    DEFAULT_MAX_CONTEXT,
    DEFAULT_MIN_TOKENS,
    DEFAULT_SIGMA_BUDGET,
    FilterDecision,
    PoolStatistics,
    compute_pool_statistics,
    filter_sample,
)
from .fim import (
    DEFAULT_PRIME_TOKENS,
    DEFAULT_SENTINELS,
    SENTINELS,
    FimPrompt,
    PrimeTooLongError,
    SentinelSet,
    build_fim_prompt,
)
from .ingest import ForgeSearchClient, IngestResult, RemoteFile, SearchClient, ingest_keywords
from .io import (
    read_corpus,
    read_source_files,
    sample_from_json,
    sample_to_json,
    source_from_json,
    source_to_json,
    write_corpus,
    write_source_files,
)
from .langid import DetectionResult, LanguageCheck, detect_language, verify_language
from .syntax import (
    CommentSyntax,
    StringDelimiter,
    SyntaxTable,
    UnknownProgrammingLanguageError,
    load_syntax_table,
)
from .types import CommentSample, CommentSpan, SourceFile, sample_from_span

__all__ = [
    "CommentSample",
    "CommentSpan",
    "CommentSyntax",
    "DEFAULT_MAX_CONTEXT",
    "DEFAULT_MIN_TOKENS",
    "DEFAULT_PRIME_TOKENS",
    "DEFAULT_SENTINELS",
    "DetectionResult",
    "FilterDecision",
    "FimPrompt",
    "ForgeSearchClient",
    "IngestResult",
    "LanguageCheck",
    "PoolStatistics",
    "PrimeTooLongError",
    "RemoteFile",
    "SENTINELS",
    "SearchClient",
    "SentinelSet",
    "SourceFile",
    "StringDelimiter",
    "SyntaxTable",
    "UnknownProgrammingLanguageError",
    "UnterminatedCommentError",
    "build_fim_prompt",
    "compute_pool_statistics",
    "detect_language",
    "extract_comments",
    "filter_sample",
    "ingest_keywords",
    "load_syntax_table",
    "read_corpus",
    "read_source_files",
    "sample_from_json",
    "sample_from_span",
    "sample_to_json",
    "samples_from_file",
    "scan_comments",
    "source_from_json",
    "source_to_json",
    "verify_language",
    "write_corpus",
    "write_source_files",
]
