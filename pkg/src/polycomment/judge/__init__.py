"""LLM-as-a-judge orchestration: prompts, clients, parsing, aggregation."""

from .client import (
    ChatClient,
    HttpChatClient,
    Message,
    RawResponse,
    invoke_judge,
    request_fingerprint,
)
from .hierarchy import HierarchicalResult, aggregate_cluster_outcomes, hierarchical_evaluate
from .parsing import check_cot_order, parse_response
from .prompts import MASK_MARKER, build_prompt
from .runner import (
    RECORD_TRANSPORT_FAILURE,
    JudgeRecord,
    TokenRateLimiter,
    run_judge_task,
    run_judge_tasks,
)
from .stats import CellStats, run_stats, verdict_labels
from .translations import TranslationTable, load_translations
from .types import (
    FAILURE_KINDS,
    OUTCOME_EMPTY,
    OUTCOME_OK,
    OUTCOME_PARSE_FAILURE,
    STRATEGIES,
    DecodingConfig,
    ErrorMark,
    JudgeOutcome,
    JudgeTask,
    JudgeVerdict,
    PredictionVerdict,
)

__all__ = [
    "CellStats",
    "ChatClient",
    "DecodingConfig",
    "ErrorMark",
    "FAILURE_KINDS",
    "HierarchicalResult",
    "HttpChatClient",
    "JudgeOutcome",
    "JudgeRecord",
    "JudgeTask",
    "JudgeVerdict",
    "MASK_MARKER",
    "Message",
    "OUTCOME_EMPTY",
    "OUTCOME_OK",
    "OUTCOME_PARSE_FAILURE",
    "PredictionVerdict",
    "RECORD_TRANSPORT_FAILURE",
    "RawResponse",
    "STRATEGIES",
    "TokenRateLimiter",
    "TranslationTable",
    "aggregate_cluster_outcomes",
    "build_prompt",
    "check_cot_order",
    "hierarchical_evaluate",
    "invoke_judge",
    "load_translations",
    "parse_response",
    "request_fingerprint",
    "run_judge_task",
    "run_judge_tasks",
    "run_stats",
    "verdict_labels",
]
