"""Label cleanup and language-code normalization."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .entity_types import qid_key

DEFAULT_CODE_MAP = {
    "bh": "bho",
    "zh-yue": "yue",
    "yue-hant": "yue",
    "zh-min-nan": "nan",
    "bat-smg": "sgs",
}

_ASCII_PARENS = re.compile(r"\([^()]*\)")
_FULLWIDTH_PARENS = re.compile(r"（[^（）]*）")
_COLLAPSIBLE = re.compile(r"([a-z]{2,3})-[a-z0-9]{2,8}\Z")


@dataclass(slots=True)
class NameEntry:
    entity_id: str
    language: str
    label: str
    script: str = ""
    types: tuple[str, ...] = ()


def strip_parentheticals(label: str) -> str:
    """Remove ``(...)`` and fullwidth ``（...）`` segments, then collapse whitespace.

    Nested groups are removed innermost first; unmatched parentheses stay. May
    return an empty string, which callers must treat as a dropped name.
    """
    if "(" not in label and "（" not in label:
        return " ".join(label.split())
    prev = None
    s = label
    while s != prev:
        prev = s
        s = _ASCII_PARENS.sub("", s)
        s = _FULLWIDTH_PARENS.sub("", s)
    return " ".join(s.split())


@dataclass
class CodeNormalizationTable:
    exact_map: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_CODE_MAP))
    collapse_enabled: bool = False

    def __post_init__(self):
        self.exact_map = {k.lower(): v.lower() for k, v in self.exact_map.items()}
        for start in self.exact_map:
            seen = {start}
            code = self.exact_map[start]
            while code in self.exact_map:
                if code in seen:
                    raise ValueError(f"cyclic language-code mapping through {code!r}")
                seen.add(code)
                code = self.exact_map[code]

    def resolve(self, code: str) -> str:
        while code in self.exact_map:
            code = self.exact_map[code]
        return code

    @classmethod
    def from_tsv(cls, path: str | Path, collapse_enabled: bool = False) -> "CodeNormalizationTable":
        mapping = {}
        for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'from<TAB>to'")
            mapping[parts[0].strip()] = parts[1].strip()
        return cls(mapping, collapse_enabled)


def normalize_language_code(code: str, table: CodeNormalizationTable | None = None) -> str:
    if not code:
        raise ValueError("empty language code")
    table = table or CodeNormalizationTable()
    code = table.resolve(code.strip().lower())
    if table.collapse_enabled:
        m = _COLLAPSIBLE.match(code)
        if m:
            code = table.resolve(m.group(1))
    return code


def entity_names(record, table: CodeNormalizationTable, types: tuple[str, ...] = ()) -> tuple[list[NameEntry], int]:
    """Clean one entity's labels into NameEntries.

    Returns ``(entries, n_emptied)`` where ``n_emptied`` counts labels that were
    nothing but parentheticals. When several source codes normalize to the same
    language, the label whose source code already equals the target wins, then the
    smallest source code.
    """
    chosen: dict[str, tuple[tuple[bool, str], str]] = {}
    emptied = 0
    for code, label in record.labels.items():
        lang = normalize_language_code(code, table)
        clean = strip_parentheticals(label)
        if not clean:
            emptied += 1
            continue
        rank = (code.lower() != lang, code)
        if lang not in chosen or rank < chosen[lang][0]:
            chosen[lang] = (rank, clean)
    entries = [NameEntry(record.id, lang, label, "", types) for lang, (_, label) in sorted(chosen.items())]
    return entries, emptied


def drop_singleton_languages(entries: Iterable[NameEntry], min_names: int = 2) -> tuple[list[NameEntry], dict[str, int]]:
    """Remove languages with fewer than ``min_names`` names; returns (kept, dropped counts)."""
    entries = list(entries)
    counts = Counter(e.language for e in entries)
    dropped = {lang: n for lang, n in sorted(counts.items()) if n < min_names}
    kept = [e for e in entries if e.language not in dropped]
    return kept, dropped


def sort_entries(entries: Iterable[NameEntry]) -> list[NameEntry]:
    return sorted(entries, key=lambda e: (qid_key(e.entity_id), e.language))
