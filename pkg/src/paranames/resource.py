"""Resource TSV serialization and per-language statistics."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from .entity_types import LOC, ORG, PER, format_types, parse_types
from .normalize import NameEntry, sort_entries
from .scripts import majority_script, script_entropy, ucd_version

RESOURCE_HEADER = ("wikidata_id", "label", "language", "type")
NAMES_HEADER = RESOURCE_HEADER + ("script",)
STATS_SCHEMA_VERSION = 1


class ResourceFormatError(ValueError):
    pass


def _check_field(value: str, entry: NameEntry, name: str) -> None:
    if "\t" in value or "\n" in value or "\r" in value:
        raise ResourceFormatError(f"{name} of {entry.entity_id}/{entry.language} contains a TAB or newline")


def format_row(entry: NameEntry, with_script: bool = False) -> str:
    fields = [entry.entity_id, entry.label, entry.language, format_types(entry.types)]
    if with_script:
        fields.append(entry.script)
    for name, value in zip(NAMES_HEADER, fields):
        _check_field(value, entry, name)
    return "\t".join(fields) + "\n"


def emit_tsv(entries: Iterable[NameEntry], fh: IO[str], sort: bool = False, with_script: bool = False) -> int:
    """Write the resource TSV (header plus one row per entry); returns the row count."""
    if sort:
        entries = sort_entries(entries)
    fh.write("\t".join(NAMES_HEADER if with_script else RESOURCE_HEADER) + "\n")
    n = 0
    for entry in entries:
        fh.write(format_row(entry, with_script))
        n += 1
    return n


def read_tsv(fh: IO[str]) -> Iterator[NameEntry]:
    """Read a resource (4-column) or names (5-column, with script) TSV."""
    header = fh.readline().rstrip("\n").split("\t")
    if tuple(header) not in (RESOURCE_HEADER, NAMES_HEADER):
        raise ResourceFormatError(f"unexpected header {header}")
    width = len(header)
    for lineno, line in enumerate(fh, 2):
        line = line.rstrip("\n")
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != width:
            raise ResourceFormatError(f"line {lineno}: expected {width} fields, got {len(parts)}")
        script = parts[4] if width == 5 else ""
        yield NameEntry(parts[0], parts[2], parts[1], script, parse_types(parts[3]))


@dataclass
class LanguageStats:
    names: Counter = field(default_factory=Counter)
    entities: dict[str, set] = field(default_factory=dict)
    scripts: dict[str, Counter] = field(default_factory=dict)
    entity_types: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def add(self, entry: NameEntry) -> None:
        lang = entry.language
        self.names[lang] += 1
        self.entities.setdefault(lang, set()).add(entry.entity_id)
        script = entry.script or majority_script(entry.label)
        self.scripts.setdefault(lang, Counter())[script] += 1
        if entry.types:
            self.entity_types[entry.entity_id] = entry.types

    def type_counts(self) -> dict[str, int]:
        counts = {PER: 0, LOC: 0, ORG: 0, "Mixed": 0}
        for types in self.entity_types.values():
            key = types[0] if len(types) == 1 else "Mixed"
            counts[key] += 1
        return counts

    def to_dict(self, ndigits: int = 4) -> dict:
        total_entities = len(set().union(*self.entities.values()))
        counts = self.type_counts()
        typed = sum(counts.values())
        return {
            "schema_version": STATS_SCHEMA_VERSION,
            "ucd_version": ucd_version(),
            "total_names": sum(self.names.values()),
            "total_entities": total_entities,
            "language_count": len(self.names),
            "types": {
                k: {"count": v, "percent": round(100.0 * v / typed, ndigits) if typed else 0.0}
                for k, v in counts.items()
            },
            "per_language": {
                lang: {
                    "names": self.names[lang],
                    "entities": len(self.entities[lang]),
                    "scripts": dict(sorted(self.scripts[lang].items())),
                    "script_entropy": round(script_entropy(self.scripts[lang]), 6),
                }
                for lang in sorted(self.names)
            },
        }


def language_stats(entries: Iterable[NameEntry]) -> LanguageStats:
    stats = LanguageStats()
    for e in entries:
        stats.add(e)
    return stats


def dump_json(obj, fh: IO[str]) -> None:
    json.dump(obj, fh, ensure_ascii=False, indent=2, sort_keys=False)
    fh.write("\n")
