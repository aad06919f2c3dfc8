"""Parallel English<->X name data: entity-keyed splits, caps, character tokens, special tokens."""
from __future__ import annotations

import logging
import random
import unicodedata
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from . import kernels
from .entity_types import dedup_types, qid_key
from .scripts import majority_script

logger = logging.getLogger(__name__)

SPLITS = ("train", "dev", "test")
X2EN, EN2X = "x2en", "en2x"
DIRECTIONS = (X2EN, EN2X)
SPACE_TOKEN = "<sp>"
DEFAULT_TRAIN_CAP = 500_000
DEFAULT_EVAL_CAP = 5_000
DEFAULT_SEED = 1917
PAIRS_HEADER = ("entity_id", "english", "foreign", "language", "script", "type")


def split_bucket(entity_id: str) -> int:
    return kernels.fnv1a_64(entity_id.encode("utf-8")) % 10


def split_of(entity_id: str) -> str:
    """Buckets 0-7 train, 8 dev, 9 test."""
    b = split_bucket(entity_id)
    return "train" if b < 8 else ("dev" if b == 8 else "test")


@dataclass(frozen=True)
class NamePair:
    entity_id: str
    english: str
    foreign: str
    language: str
    script: str
    entity_type: str


@dataclass(frozen=True)
class AugmentationConfig:
    use_language_token: bool = True
    use_script_token: bool = False
    use_type_token: bool = False
    direction: str = X2EN

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")
        if self.direction == EN2X:
            if self.use_script_token:
                raise ValueError("script token would leak the target side for en->x")
            if not self.use_language_token:
                raise ValueError("en->x needs the language token to select the target")

    @property
    def name(self) -> str:
        parts = [p for p, on in (("lang", self.use_language_token), ("script", self.use_script_token),
                                 ("type", self.use_type_token)) if on]
        return "+".join(parts) or "none"


def tokenize_chars(label: str) -> list[str]:
    return [SPACE_TOKEN if ch == " " else ch for ch in unicodedata.normalize("NFC", label)]


def detokenize(tokens: Iterable[str]) -> str:
    return unicodedata.normalize("NFC", "".join(" " if t == SPACE_TOKEN else t for t in tokens))


def augment_example(pair: NamePair, config: AugmentationConfig) -> tuple[list[str], list[str]]:
    """Source/target token sequences; special tokens are prepended in language, script, type order."""
    if config.direction == X2EN:
        source, target = pair.foreign, pair.english
    else:
        source, target = pair.english, pair.foreign
    prefix = []
    if config.use_language_token:
        prefix.append(f"<{pair.language}>")
    if config.use_script_token:
        prefix.append(f"<{pair.script}>")
    if config.use_type_token:
        prefix.append(f"<{pair.entity_type}>")
    return prefix + tokenize_chars(source), tokenize_chars(target)


def collect_pairs(entries: Iterable, target_languages: Iterable[str]) -> list[NamePair]:
    """English<->X pairs for every entity with an ``en`` label and a label in a target language."""
    targets = set(target_languages) - {"en"}
    by_entity: dict[str, dict[str, object]] = {}
    for e in entries:
        if e.language == "en" or e.language in targets:
            by_entity.setdefault(e.entity_id, {})[e.language] = e
    pairs = []
    for qid in sorted(by_entity, key=qid_key):
        langs = by_entity[qid]
        en = langs.get("en")
        if en is None:
            continue
        for lang in sorted(langs):
            if lang == "en":
                continue
            e = langs[lang]
            script = e.script or majority_script(e.label)
            etype = dedup_types(e.types or en.types)
            pairs.append(NamePair(qid, en.label, e.label, lang, script, etype))
    return pairs


def cap_sample(pairs: list[NamePair], cap: int, seed: int, language: str, split: str) -> list[NamePair]:
    """At most ``cap`` pairs: seeded Fisher-Yates over the entity-sorted list, result re-sorted."""
    pairs = sorted(pairs, key=lambda p: qid_key(p.entity_id))
    if len(pairs) <= cap:
        return pairs
    rng = random.Random(f"{seed}:{language}:{split}")
    rng.shuffle(pairs)
    return sorted(pairs[:cap], key=lambda p: qid_key(p.entity_id))


def make_pairs(
    entries: Iterable,
    target_languages: Iterable[str],
    train_cap: int = DEFAULT_TRAIN_CAP,
    eval_cap: int = DEFAULT_EVAL_CAP,
    seed: int = DEFAULT_SEED,
) -> dict[str, list[NamePair]]:
    """Split pairs by entity id, then cap each language per split."""
    targets = sorted(set(target_languages) - {"en"})
    pairs = collect_pairs(entries, targets)
    grouped: dict[tuple[str, str], list[NamePair]] = {}
    for p in pairs:
        grouped.setdefault((split_of(p.entity_id), p.language), []).append(p)
    present = {lang for _, lang in grouped}
    for lang in targets:
        if lang not in present:
            logger.warning("no English-paired names for target language %s", lang)
    out: dict[str, list[NamePair]] = {s: [] for s in SPLITS}
    for split in SPLITS:
        cap = train_cap if split == "train" else eval_cap
        for lang in targets:
            out[split].extend(cap_sample(grouped.get((split, lang), []), cap, seed, lang, split))
        out[split].sort(key=lambda p: (qid_key(p.entity_id), p.language))
    return out


def write_pairs(pairs: Iterable[NamePair], fh: IO[str]) -> int:
    fh.write("\t".join(PAIRS_HEADER) + "\n")
    n = 0
    for p in pairs:
        fh.write("\t".join((p.entity_id, p.english, p.foreign, p.language, p.script, p.entity_type)) + "\n")
        n += 1
    return n


def read_pairs(fh: IO[str]) -> Iterator[NamePair]:
    header = tuple(fh.readline().rstrip("\n").split("\t"))
    if header != PAIRS_HEADER:
        raise ValueError(f"unexpected pairs header {header}")
    for lineno, line in enumerate(fh, 2):
        line = line.rstrip("\n")
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != len(PAIRS_HEADER):
            raise ValueError(f"pairs line {lineno}: expected {len(PAIRS_HEADER)} fields")
        yield NamePair(*parts)


def write_augmented(pairs: Iterable[NamePair], config: AugmentationConfig, fh: IO[str]) -> int:
    n = 0
    for p in pairs:
        src, tgt = augment_example(p, config)
        fh.write(f"{' '.join(src)}\t{' '.join(tgt)}\t{p.entity_id}\t{p.language}\n")
        n += 1
    return n
