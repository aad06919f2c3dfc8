"""Per-language gazetteers and exact n-gram linking of CoNLL-style NER corpora."""
from __future__ import annotations

import logging
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator

from .entity_types import TYPE_ORDER, dedup_types, format_types
from .metrics import coverage

logger = logging.getLogger(__name__)

MAX_NGRAM = 3
GOLD_TYPES = frozenset(TYPE_ORDER)


def _nfc(s: str) -> str:
    return unicodedata.normalize("NFC", s)


@dataclass
class Gazetteer:
    language: str
    entries: dict[str, str] = field(default_factory=dict)

    def __contains__(self, name: str) -> bool:
        return _nfc(name) in self.entries

    def get(self, name: str) -> str | None:
        return self.entries.get(_nfc(name))

    def __len__(self) -> int:
        return len(self.entries)

    def write(self, fh: IO[str]) -> int:
        for name in sorted(self.entries):
            fh.write(f"{name}\t{self.entries[name]}\n")
        return len(self.entries)

    @classmethod
    def read(cls, fh: IO[str], language: str = "") -> "Gazetteer":
        entries = {}
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0]:
                raise ValueError(f"gazetteer line {lineno}: expected 'name<TAB>type'")
            entries[_nfc(parts[0])] = parts[1]
        return cls(language, entries)


def build_gazetteer(entries: Iterable, language: str, dedup: bool = True) -> Gazetteer:
    """Map every distinct name in ``language`` to its type.

    Types of entities sharing a name are unioned first; with ``dedup`` the union is
    reduced to one type by the usual disambiguation rules, otherwise it is kept as a
    ``;``-joined set.
    """
    union: dict[str, set[str]] = {}
    for e in entries:
        if e.language != language or not e.types:
            continue
        union.setdefault(_nfc(e.label), set()).update(e.types)
    if not union:
        logger.warning("no resource rows for language %s; gazetteer is empty", language)
    gaz = Gazetteer(language)
    for name, types in union.items():
        gaz.entries[name] = dedup_types(types) if dedup else format_types(types)
    return gaz


class CoNLLFormatError(ValueError):
    pass


def read_conll(fh: IO[str]) -> Iterator[list[tuple[str, str]]]:
    """Yield sentences as lists of ``(token, tag)`` from a two-column TAB file."""
    sent: list[tuple[str, str]] = []
    for lineno, line in enumerate(fh, 1):
        line = line.rstrip("\r\n")
        if not line.strip():
            if sent:
                yield sent
                sent = []
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise CoNLLFormatError(f"line {lineno}: expected 'token<TAB>tag'")
        token, tag = parts
        if token == "-DOCSTART-":
            continue
        if tag != "O" and not (len(tag) > 2 and tag[:2] in ("B-", "I-")):
            raise CoNLLFormatError(f"line {lineno}: bad tag {tag!r}")
        sent.append((token, tag))
    if sent:
        yield sent


@dataclass
class Mention:
    surface: str
    type: str


def gold_mentions(sentence: list[tuple[str, str]]) -> tuple[list[Mention], int, int]:
    """Maximal ``B-X (I-X)*`` spans.

    Returns ``(mentions, repaired, ignored)``: ``repaired`` counts I- tags that did not
    continue a same-type span and were read as B-; ``ignored`` counts spans whose type
    is outside PER/LOC/ORG.
    """
    mentions: list[Mention] = []
    repaired = ignored = 0
    cur_tokens: list[str] = []
    cur_type: str | None = None

    def close():
        nonlocal cur_tokens, cur_type, ignored
        if cur_type is not None:
            if cur_type in GOLD_TYPES:
                mentions.append(Mention(_nfc(" ".join(cur_tokens)), cur_type))
            else:
                ignored += 1
        cur_tokens, cur_type = [], None

    for token, tag in sentence:
        if tag == "O":
            close()
            continue
        prefix, etype = tag[:2], tag[2:]
        if prefix == "I-" and cur_type == etype:
            cur_tokens.append(token)
            continue
        if prefix == "I-":
            repaired += 1
        close()
        cur_tokens, cur_type = [token], etype
    close()
    return mentions, repaired, ignored


def ngram_links(sentence: list[tuple[str, str]], gazetteer: Gazetteer, max_n: int = MAX_NGRAM) -> Iterator[tuple[str, str, int]]:
    tokens = [t for t, _ in sentence]
    for n in range(1, max_n + 1):
        for i in range(len(tokens) - n + 1):
            surface = _nfc(" ".join(tokens[i:i + n]))
            etype = gazetteer.entries.get(surface)
            if etype is not None:
                yield surface, etype, n


@dataclass
class LinkReport:
    tokens: int = 0
    entities: int = 0
    links: int = 0
    mentions: int = 0
    repaired_tags: int = 0
    ignored_mentions: int = 0

    @property
    def coverage(self) -> float:
        return coverage(self.links, self.entities)

    def to_dict(self) -> dict:
        return {
            "tokens": self.tokens,
            "entities": self.entities,
            "links": self.links,
            "coverage": round(self.coverage, 2),
            "mentions": self.mentions,
            "repaired_tags": self.repaired_tags,
            "ignored_mentions": self.ignored_mentions,
        }


def link_corpus(sentences: Iterable[list[tuple[str, str]]], gazetteer: Gazetteer) -> tuple[LinkReport, list[tuple[str, str, int]]]:
    """Coverage of unique gold mention strings plus every gazetteer-matching n-gram (n <= 3).

    The n-gram list is de-duplicated and sorted, so it does not depend on sentence order.
    """
    report = LinkReport()
    surfaces: set[str] = set()
    found: set[tuple[str, str, int]] = set()
    for sent in sentences:
        report.tokens += len(sent)
        mentions, repaired, ignored = gold_mentions(sent)
        report.repaired_tags += repaired
        report.ignored_mentions += ignored
        report.mentions += len(mentions)
        surfaces.update(m.surface for m in mentions)
        found.update(ngram_links(sent, gazetteer))
    report.entities = len(surfaces)
    report.links = sum(1 for s in surfaces if s in gazetteer.entries)
    if report.repaired_tags:
        logger.warning("%d I- tags without a matching B- were treated as B-", report.repaired_tags)
    return report, sorted(found, key=lambda x: (x[2], x[0], x[1]))


def write_links(links: Iterable[tuple[str, str, int]], fh: IO[str]) -> int:
    n = 0
    for surface, etype, size in links:
        fh.write(f"{surface}\t{etype}\t{size}\n")
        n += 1
    return n


def load_gazetteer(path: str | Path, language: str = "") -> Gazetteer:
    with open(path, encoding="utf-8") as fh:
        return Gazetteer.read(fh, language)
