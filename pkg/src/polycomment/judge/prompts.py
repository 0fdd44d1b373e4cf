"""Prompt assembly for the four judging strategies."""

from __future__ import annotations

import json
from typing import Mapping

from ..taxonomy import Taxonomy, format_rubric
from .translations import TranslationTable
from .types import JudgeTask

MASK_MARKER = "<<MASK>>"


def _schema_skeleton(
    translations: TranslationTable,
    language: str,
    strategy: str,
    include_overall: bool,
) -> str:
    loc = lambda canonical: translations.localized_field(canonical, language)
    entry: dict = {loc("model"): "<prediction key>"}
    if strategy == "cot":
        entry[loc("reasoning")] = "<your reasoning>"
        error_entry = {
            loc("code"): "SE-MD",
            loc("confidence"): 0.9,
            loc("justification"): "<why this error applies>",
        }
    else:
        error_entry = {loc("code"): "SE-MD"}
    entry[loc("errors")] = [error_entry]
    if include_overall:
        entry[loc("overall")] = "<grade>"
    skeleton = {loc("predictions"): [entry]}
    return json.dumps(skeleton, ensure_ascii=False, indent=2)


def _codes_listing(taxonomy: Taxonomy, code_ids, language: str) -> str:
    lines = []
    for code_id in code_ids:
        if taxonomy.is_meta(code_id):
            meta = taxonomy.meta_codes[code_id]
            lines.append(f"{meta.id} ({meta.name}): {meta.description}")
        else:
            code = taxonomy.codes[code_id]
            lines.append(f"{code.id} ({code.name}): {code.description}")
    return "\n".join(lines)


def build_prompt(
    task: JudgeTask,
    taxonomy: Taxonomy,
    translations: TranslationTable,
    cluster: str | None = None,
) -> list[dict]:
    """Chat messages for one judge call.

    ``cluster`` is required for (and only for) the hierarchical strategy; the
    meta cluster asks for leftover errors without an overall grade.  All
    textual scaffolding comes from the translation table for the sample's
    language; the three bias directives appear in both the system and the
    user message.
    """
    if task.strategy == "hierarchical":
        if cluster is None:
            raise ValueError("hierarchical strategy needs a cluster")
        cluster_codes = taxonomy.cluster(cluster).codes
    elif cluster is not None:
        raise ValueError(f"strategy {task.strategy!r} does not take a cluster")
    language = task.language
    sample = task.sample
    tr = translations
    say = lambda key: tr.string(key, language)
    bias = [say("bias_verbosity"), say("bias_position"), say("bias_consistency")]
    is_meta_cluster = cluster is not None and all(
        taxonomy.is_meta(c) for c in cluster_codes
    )
    include_overall = not is_meta_cluster

    parts: list[str] = [say("task_intro"), say("language_note"), ""]
    parts.append(say("file_label"))
    parts.append(f"```\n{sample.prefix}{MASK_MARKER}{sample.suffix}\n```")
    parts.append(say("original_label"))
    parts.append(f"```\n{sample.ground_truth}\n```")
    parts.append(say("predictions_label"))
    for key in sorted(sample.predictions):
        parts.append(tr.string("prediction_item_label", language).format(key=key))
        parts.append(f"```\n{sample.predictions[key]}\n```")
    parts.append("")

    if task.strategy == "standard":
        parts.append(say("codes_label"))
        parts.append(_codes_listing(taxonomy, taxonomy.codes, language))
    elif task.strategy == "rubric":
        parts.append(say("rubric_intro"))
        parts.append(format_rubric(taxonomy, taxonomy.codes, language))
    elif task.strategy == "cot":
        parts.append(say("codes_label"))
        parts.append(_codes_listing(taxonomy, taxonomy.codes, language))
        parts.append(say("cot_intro"))
        steps = tr.strings_list("cot_steps", language)
        parts.append("\n".join(f"{i}. {step}" for i, step in enumerate(steps, start=1)))
        parts.append(
            tr.string("cot_format_note", language).format(
                reasoning=tr.localized_field("reasoning", language)
            )
        )
    else:  # hierarchical
        parts.append(say("rubric_intro"))
        parts.append(format_rubric(taxonomy, cluster_codes, language))
        parts.append(say("cluster_focus"))
        if is_meta_cluster:
            parts.append(say("meta_instruction"))

    parts.append("")
    parts.extend(bias)
    parts.append("")
    parts.append(say("response_instruction"))
    parts.append(
        _schema_skeleton(tr, language, task.strategy, include_overall=include_overall)
    )
    if include_overall:
        parts.append(
            tr.string("overall_instruction", language).format(
                overall=tr.localized_field("overall", language),
                values=", ".join(f"'{v}'" for v in tr.localized_labels(language)),
            )
        )

    system = " ".join([say("system_role"), *bias])
    return [
        {"role": "system", "content": system},
        {"role": "user", "content": "\n".join(parts)},
    ]
