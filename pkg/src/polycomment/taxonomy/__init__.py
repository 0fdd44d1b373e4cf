"""Error-code schema: categories, groups, leaf codes, clusters and rubrics.

The bundled schema has 4 categories, 6 mid-level groups and 26 assignable
leaf codes, plus judge-only meta codes (catch-all entries used by the
hierarchical strategy, never counted in per-code reporting).  Custom schema
files with the same shape load through the same path; structural invariants
are always enforced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class TaxonomyError(ValueError):
    """The schema file violates a structural invariant."""


@dataclass(frozen=True)
class Category:
    id: str
    name: str


@dataclass(frozen=True)
class ErrorGroup:
    id: str
    name: str
    category: str


@dataclass(frozen=True)
class ErrorCode:
    id: str
    name: str
    category: str
    group: str | None
    description: str
    inclusion: tuple[str, ...]
    exclusion: tuple[str, ...]


@dataclass(frozen=True)
class MetaCode:
    id: str
    name: str
    description: str


@dataclass(frozen=True)
class Cluster:
    id: str
    codes: tuple[str, ...]


MAX_CLUSTER_SIZE = 9
META_CLUSTER_ID = "meta"


class Taxonomy:
    def __init__(
        self,
        categories: Sequence[Category],
        groups: Sequence[ErrorGroup],
        codes: Sequence[ErrorCode],
        meta_codes: Sequence[MetaCode],
        clusters: Sequence[Cluster],
        rubric_headers: Mapping[str, Mapping[str, str]],
        criteria_translations: Mapping[str, Mapping[str, Mapping[str, Sequence[str]]]] | None = None,
        version: str = "unversioned",
    ):
        self.version = version
        self.categories = {c.id: c for c in categories}
        self.groups = {g.id: g for g in groups}
        self.codes = {c.id: c for c in codes}
        self.meta_codes = {m.id: m for m in meta_codes}
        self.clusters = tuple(clusters)
        self.rubric_headers = {k: dict(v) for k, v in rubric_headers.items()}
        self.criteria_translations = {
            lang: {code: dict(entry) for code, entry in table.items()}
            for lang, table in (criteria_translations or {}).items()
        }
        self._validate()

    def _validate(self) -> None:
        seen: set[str] = set()
        for pool in (self.categories, self.groups, self.codes, self.meta_codes):
            for node_id in pool:
                if node_id in seen:
                    raise TaxonomyError(f"duplicate id {node_id!r}")
                seen.add(node_id)
        for group in self.groups.values():
            if group.category not in self.categories:
                raise TaxonomyError(f"group {group.id} references unknown category")
        for code in self.codes.values():
            if code.category not in self.categories:
                raise TaxonomyError(f"code {code.id} references unknown category")
            if code.group is not None:
                if code.group not in self.groups:
                    raise TaxonomyError(f"code {code.id} references unknown group")
                if self.groups[code.group].category != code.category:
                    raise TaxonomyError(
                        f"code {code.id} and its group disagree on the category"
                    )
            if not code.inclusion:
                raise TaxonomyError(f"code {code.id} has no inclusion criteria")
        if "en" not in self.rubric_headers:
            raise TaxonomyError("rubric headers must at least cover 'en'")
        placed: dict[str, str] = {}
        for cluster in self.clusters:
            if len(cluster.codes) > MAX_CLUSTER_SIZE:
                raise TaxonomyError(
                    f"cluster {cluster.id} has {len(cluster.codes)} codes, "
                    f"limit is {MAX_CLUSTER_SIZE}"
                )
            for code_id in cluster.codes:
                if code_id in placed:
                    raise TaxonomyError(
                        f"{code_id} appears in clusters {placed[code_id]} and {cluster.id}"
                    )
                placed[code_id] = cluster.id
                if code_id in self.meta_codes:
                    if cluster.id != META_CLUSTER_ID:
                        raise TaxonomyError(
                            f"meta code {code_id} outside the {META_CLUSTER_ID} cluster"
                        )
                elif code_id not in self.codes:
                    raise TaxonomyError(f"cluster {cluster.id} references unknown {code_id!r}")
        if self.clusters:
            missing = set(self.codes) - set(placed)
            if missing:
                raise TaxonomyError(f"codes not covered by any cluster: {sorted(missing)}")

    # id resolution -----------------------------------------------------

    def is_code(self, node_id: str) -> bool:
        return node_id in self.codes

    def is_group(self, node_id: str) -> bool:
        return node_id in self.groups

    def is_category(self, node_id: str) -> bool:
        return node_id in self.categories

    def is_meta(self, node_id: str) -> bool:
        return node_id in self.meta_codes

    def is_known(self, node_id: str) -> bool:
        return (
            self.is_code(node_id)
            or self.is_group(node_id)
            or self.is_category(node_id)
            or self.is_meta(node_id)
        )

    def category_of(self, node_id: str) -> str:
        if self.is_category(node_id):
            return node_id
        if self.is_group(node_id):
            return self.groups[node_id].category
        if self.is_code(node_id):
            return self.codes[node_id].category
        raise KeyError(f"unknown taxonomy id {node_id!r}")

    def group_of(self, node_id: str) -> str | None:
        if self.is_group(node_id):
            return node_id
        if self.is_code(node_id):
            return self.codes[node_id].group
        return None

    # clusters ----------------------------------------------------------

    def cluster_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.clusters)

    def cluster(self, cluster_id: str) -> Cluster:
        for c in self.clusters:
            if c.id == cluster_id:
                return c
        raise KeyError(f"unknown cluster {cluster_id!r}")

    def cluster_of(self, code_id: str) -> str | None:
        for c in self.clusters:
            if code_id in c.codes:
                return c.id
        return None

    # criteria ----------------------------------------------------------

    def criteria_for(self, code_id: str, language: str = "en") -> tuple[tuple[str, ...], tuple[str, ...]]:
        """(inclusion, exclusion) in the requested language, English fallback."""
        code = self.codes[code_id]
        table = self.criteria_translations.get(language, {}).get(code_id)
        if table:
            inclusion = tuple(table.get("inclusion", code.inclusion))
            exclusion = tuple(table.get("exclusion", code.exclusion))
            return inclusion, exclusion
        return code.inclusion, code.exclusion

    def rubric_header(self, which: str, language: str) -> str:
        table = self.rubric_headers.get(language) or self.rubric_headers["en"]
        return table.get(which) or self.rubric_headers["en"][which]


def _load_obj(data: Mapping) -> Taxonomy:
    return Taxonomy(
        categories=[Category(**c) for c in data["categories"]],
        groups=[ErrorGroup(**g) for g in data["groups"]],
        codes=[
            ErrorCode(
                id=c["id"],
                name=c["name"],
                category=c["category"],
                group=c.get("group"),
                description=c.get("description", ""),
                inclusion=tuple(c.get("inclusion", ())),
                exclusion=tuple(c.get("exclusion", ())),
            )
            for c in data["codes"]
        ],
        meta_codes=[MetaCode(**m) for m in data.get("meta_codes", [])],
        clusters=[Cluster(id=c["id"], codes=tuple(c["codes"])) for c in data.get("clusters", [])],
        rubric_headers=data.get("rubric_headers", {"en": {"present": "Mark as PRESENT if:", "absent": "Mark as ABSENT if:"}}),
        criteria_translations=data.get("criteria_translations"),
        version=data.get("version", "unversioned"),
    )


def load_taxonomy(path: "str | Path | None" = None) -> Taxonomy:
    """Load the bundled schema, or a custom JSON file with the same shape."""
    if path is None:
        text = resources.files("polycomment.taxonomy").joinpath("data/taxonomy.json").read_text()
    else:
        text = Path(path).read_text()
    return _load_obj(json.loads(text))


def format_rubric(taxonomy: Taxonomy, code_ids: Iterable[str], language: str = "en") -> str:
    """Criteria rendered as PRESENT/ABSENT sections, one entry per code.

    Meta codes have no criteria and render as their description.
    """
    present = taxonomy.rubric_header("present", language)
    absent = taxonomy.rubric_header("absent", language)
    blocks: list[str] = []
    for code_id in code_ids:
        if taxonomy.is_meta(code_id):
            meta = taxonomy.meta_codes[code_id]
            blocks.append(f"{meta.id} ({meta.name})\n- {meta.description}")
            continue
        code = taxonomy.codes[code_id]
        inclusion, exclusion = taxonomy.criteria_for(code_id, language)
        lines = [f"{code.id} ({code.name})", present]
        lines.extend(f"- {c}" for c in inclusion)
        lines.append(absent)
        lines.extend(f"- {c}" for c in exclusion)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


__all__ = [
    "Category",
    "Cluster",
    "ErrorCode",
    "ErrorGroup",
    "MAX_CLUSTER_SIZE",
    "META_CLUSTER_ID",
    "MetaCode",
    "Taxonomy",
    "TaxonomyError",
    "format_rubric",
    "load_taxonomy",
]
