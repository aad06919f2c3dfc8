"""Unicode script classification, per-language script filtering, and script entropy.

Script data comes from the vendored ``data/ucd_scripts.tsv`` (a flattened copy of
the UCD ``Scripts.txt``), so results do not depend on the host's ICU build.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from . import kernels

logger = logging.getLogger(__name__)

NEUTRAL_SCRIPTS = frozenset({"Common", "Inherited", "Unknown"})
COMMON = "Common"


@dataclass(frozen=True)
class ScriptTable:
    version: str
    names: tuple[str, ...]
    starts: tuple[int, ...]
    values: bytes

    def index(self, name: str) -> int:
        return self.names.index(name)


def _read_table(text: str) -> ScriptTable:
    version = "unknown"
    names: list[str] = []
    name_idx: dict[str, int] = {}
    starts: list[int] = []
    values = bytearray()
    for line in text.splitlines():
        if line.startswith("#"):
            if line.startswith("# Unicode Scripts.txt"):
                version = line.rsplit(" ", 1)[1]
            continue
        if not line.strip():
            continue
        start, _end, name = line.split("\t")
        if name not in name_idx:
            name_idx[name] = len(names)
            names.append(name)
        starts.append(int(start, 16))
        values.append(name_idx[name])
    if starts[0] != 0:
        raise ValueError("script table must start at U+0000")
    return ScriptTable(version, tuple(names), tuple(starts), bytes(values))


@lru_cache(maxsize=None)
def script_table() -> ScriptTable:
    text = resources.files("paranames").joinpath("data/ucd_scripts.tsv").read_text("utf-8")
    return _read_table(text)


def ucd_version() -> str:
    return script_table().version


def _bmp_table(table: ScriptTable) -> bytes:
    bmp = bytearray(0x10000)
    bounds = list(table.starts) + [0x110000]
    for i, start in enumerate(table.starts):
        if start >= 0x10000:
            break
        end = min(bounds[i + 1], 0x10000)
        bmp[start:end] = bytes([table.values[i]]) * (end - start)
    return bytes(bmp)


def make_voter(table: ScriptTable | None = None, backend=kernels):
    """Build a ScriptVoter from ``backend`` (the selected kernels module by default)."""
    table = table or script_table()
    neutral = bytes(1 if n in NEUTRAL_SCRIPTS else 0 for n in table.names)
    return backend.ScriptVoter(_bmp_table(table), table.starts, table.values, neutral)


@lru_cache(maxsize=None)
def _default_voter():
    return make_voter()


def script_of(ch: str) -> str:
    """Unicode Script property value of a single character."""
    return script_table().names[_default_voter().script_of(ord(ch))]


def majority_script(name: str) -> str:
    """Most frequent non-neutral script in ``name``.

    Common, Inherited and Unknown characters do not vote. A name made only of
    neutral characters is ``"Common"``. Ties go to the script of the earliest
    tied character.
    """
    if not name:
        raise ValueError("majority_script requires a non-empty string")
    idx = _default_voter().vote(name)
    return COMMON if idx < 0 else script_table().names[idx]


class ScriptRegistry:
    """Allowed scripts per (normalized) language code."""

    def __init__(self, allowed: Mapping[str, Iterable[str]]):
        valid = set(script_table().names)
        self.allowed: dict[str, frozenset[str]] = {}
        for lang, scripts in allowed.items():
            scripts = frozenset(scripts)
            if not scripts:
                raise ValueError(f"empty script set for language {lang!r}")
            bad = scripts - valid
            if bad:
                raise ValueError(f"unknown script(s) for {lang!r}: {sorted(bad)}")
            self.allowed[lang] = scripts

    def __contains__(self, lang: str) -> bool:
        return lang in self.allowed

    def __getitem__(self, lang: str) -> frozenset[str]:
        return self.allowed[lang]

    def __len__(self) -> int:
        return len(self.allowed)

    @classmethod
    def from_tsv(cls, path: str | Path) -> "ScriptRegistry":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def parse(cls, text: str) -> "ScriptRegistry":
        allowed: dict[str, set[str]] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"registry line {lineno}: expected 'language<TAB>scripts'")
            lang, scripts = parts[0].strip().lower(), parts[1]
            allowed.setdefault(lang, set()).update(s.strip() for s in scripts.split(";") if s.strip())
        return cls(allowed)

    @classmethod
    def default(cls) -> "ScriptRegistry":
        text = resources.files("paranames").joinpath("data/default_registry.tsv").read_text("utf-8")
        return cls.parse(text)


def script_entropy(script_counts: Mapping[str, int]) -> float:
    """Shannon entropy (nats) of a script histogram."""
    total = sum(script_counts.values())
    if total <= 0:
        raise ValueError("script_entropy needs at least one positive count")
    h = 0.0
    for script in sorted(script_counts):
        c = script_counts[script]
        if c > 0:
            p = c / total
            h -= p * math.log(p)
    return h + 0.0  # no negative zero


@dataclass
class LanguageEntropy:
    entropy_before: float
    entropy_after: float
    counts_before: dict[str, int]
    counts_after: dict[str, int]


@dataclass
class ScriptEntropyReport:
    per_language: dict[str, LanguageEntropy] = field(default_factory=dict)
    mean_before: float = 0.0
    mean_after: float = 0.0
    unlisted_languages: dict[str, int] = field(default_factory=dict)

    def to_dict(self, ndigits: int = 6) -> dict:
        return {
            "ucd_version": ucd_version(),
            "log_base": "e",
            "mean_before": round(self.mean_before, ndigits),
            "mean_after": round(self.mean_after, ndigits),
            "unlisted_languages": dict(sorted(self.unlisted_languages.items())),
            "per_language": {
                lang: {
                    "entropy_before": round(e.entropy_before, ndigits) + 0.0,
                    "entropy_after": round(e.entropy_after, ndigits) + 0.0,
                    "script_counts_before": dict(sorted(e.counts_before.items())),
                    "script_counts_after": dict(sorted(e.counts_after.items())),
                }
                for lang, e in sorted(self.per_language.items())
            },
        }


def entropy_report(
    before: Mapping[str, Mapping[str, int]],
    after: Mapping[str, Mapping[str, int]],
    unlisted: Mapping[str, int] | None = None,
) -> ScriptEntropyReport:
    """Per-language entropy before/after filtering; means are unweighted over languages.

    A language whose names were all dropped has ``entropy_after = 0``.
    """
    report = ScriptEntropyReport(unlisted_languages=dict(unlisted or {}))
    for lang, counts in before.items():
        if not any(counts.values()):
            continue
        kept = {s: c for s, c in after.get(lang, {}).items() if c > 0}
        report.per_language[lang] = LanguageEntropy(
            script_entropy(counts),
            script_entropy(kept) if kept else 0.0,
            dict(counts),
            kept,
        )
    if report.per_language:
        langs = sorted(report.per_language)
        report.mean_before = math.fsum(report.per_language[l].entropy_before for l in langs) / len(langs)
        report.mean_after = math.fsum(report.per_language[l].entropy_after for l in langs) / len(langs)
    return report


@dataclass
class FilterResult:
    kept: list
    dropped: list
    counts_before: dict[str, Counter]
    counts_after: dict[str, Counter]
    unlisted: Counter

    def report(self) -> ScriptEntropyReport:
        return entropy_report(self.counts_before, self.counts_after, self.unlisted)


def is_allowed(language: str, script: str, registry: ScriptRegistry) -> bool:
    if script == COMMON or language not in registry:
        return True
    return script in registry[language]


def partition_names(entries: Iterable, registry: ScriptRegistry) -> Iterator[tuple[bool, object]]:
    """Yield ``(keep, entry)``; the streaming form of filter_names.

    ``entry.script`` is computed unless already set.
    """
    voter = _default_voter()
    names = script_table().names
    allowed = registry.allowed
    for entry in entries:
        script = entry.script
        if not script:
            if not entry.label:
                raise ValueError(f"empty label for {entry.entity_id}/{entry.language}")
            idx = voter.vote(entry.label)
            script = entry.script = COMMON if idx < 0 else names[idx]
        scripts = allowed.get(entry.language)
        yield (script == COMMON or scripts is None or script in scripts), entry


def filter_names(entries: Iterable, registry: ScriptRegistry) -> FilterResult:
    """Split entries into kept and dropped by majority script against ``registry``.

    Languages missing from the registry pass through and are tallied in ``unlisted``.
    """
    kept, dropped = [], []
    before: dict[str, Counter] = {}
    after: dict[str, Counter] = {}
    unlisted: Counter = Counter()
    for keep, entry in partition_names(entries, registry):
        lang = entry.language
        c = before.get(lang)
        if c is None:
            c = before[lang] = Counter()
            after[lang] = Counter()
        c[entry.script] += 1
        if lang not in registry:
            unlisted[lang] += 1
        if keep:
            kept.append(entry)
            after[lang][entry.script] += 1
        else:
            dropped.append(entry)
    for lang, n in sorted(unlisted.items()):
        logger.warning("language %s not in script registry; %d names passed unfiltered", lang, n)
    return FilterResult(kept, dropped, before, after, unlisted)
