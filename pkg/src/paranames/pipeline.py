"""File-to-file stages. The CLI runs them one at a time or chained in one process."""
from __future__ import annotations

import json
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, Iterator

import msgspec

from .dump_reader import (
    DumpReader,
    EntityRecord,
    ParseStats,
    _as_chunks,
    _batches,
    _classify_lines,
    _counted,
    _decode_batch,
    iter_lines,
    read_entities_jsonl,
    write_entities_jsonl,
)
from .entity_types import (
    ROOTS,
    SubclassClosure,
    SubclassGraph,
    build_closures,
    classify_entity,
    format_types,
    parse_types,
)
from .normalize import CodeNormalizationTable, NameEntry, drop_singleton_languages, entity_names
from .resource import dump_json, emit_tsv, language_stats, read_tsv
from .scripts import ScriptRegistry, entropy_report, filter_names, majority_script, partition_names

logger = logging.getLogger(__name__)

FILTER_BATCH = 20_000


def default_jobs() -> int:
    return os.cpu_count() or 1


def _write_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        dump_json(obj, fh)


# --- extract ---------------------------------------------------------------


def extract(dump_path, out_path, jobs: int = 1, stats_path=None) -> dict:
    with open(dump_path, "rb") as src, open(out_path, "wb") as dst:
        reader = DumpReader(src, jobs=jobs)
        write_entities_jsonl(reader, dst)
    stats = reader.stats.to_dict()
    if stats_path:
        _write_json(stats, stats_path)
    return stats


# --- classify-types --------------------------------------------------------


def load_or_build_closures(entities_path, cache_dir=None) -> dict[str, SubclassClosure]:
    cache = Path(cache_dir) if cache_dir else None
    if cache and all((cache / f"closure.{t}.txt").exists() for t in ROOTS):
        return {t: SubclassClosure.load(cache / f"closure.{t}.txt") for t in ROOTS}
    graph = SubclassGraph.from_records(read_entities_jsonl(entities_path))
    closures = build_closures(graph)
    if cache:
        cache.mkdir(parents=True, exist_ok=True)
        for t, c in closures.items():
            c.dump(cache / f"closure.{t}.txt")
    return closures


def classify_types(entities_path, out_path, closure_cache=None) -> dict:
    """Pass 1 collects P279 edges (or reads the cache); pass 2 types and writes entities."""
    closures = load_or_build_closures(entities_path, closure_cache)
    enc = msgspec.json.Encoder()
    counts: Counter = Counter()
    with open(out_path, "wb") as dst:
        for rec in read_entities_jsonl(entities_path):
            types = classify_entity(rec, closures)
            if not types:
                counts["untyped"] += 1
                continue
            counts["typed"] += 1
            counts[format_types(types)] += 1
            if not rec.labels:
                continue
            dst.write(enc.encode({"id": rec.id, "labels": rec.labels, "types": format_types(types)}))
            dst.write(b"\n")
    return {"closure_sizes": {t: len(c.descendants) for t, c in closures.items()}, **dict(sorted(counts.items()))}


def read_typed(path) -> Iterator[tuple[EntityRecord, tuple[str, ...]]]:
    dec = msgspec.json.Decoder()
    with open(path, "rb") as fh:
        for line in fh:
            if line.strip():
                obj = dec.decode(line)
                yield EntityRecord(obj["id"], obj["labels"]), parse_types(obj["types"])


# --- normalize -------------------------------------------------------------


def normalize(typed_path, out_path, table: CodeNormalizationTable) -> dict:
    rows = emptied = 0
    with open(out_path, "w", encoding="utf-8", newline="\n") as dst:
        def gen():
            nonlocal emptied
            for rec, types in read_typed(typed_path):
                entries, n_empty = entity_names(rec, table, types)
                emptied += n_empty
                yield from entries
        rows = emit_tsv(gen(), dst, with_script=True)
    return {"names": rows, "emptied_by_parenthetical_stripping": emptied}


def read_names(path) -> Iterator[NameEntry]:
    with open(path, encoding="utf-8", newline="\n") as fh:
        yield from read_tsv(fh)


# --- filter-scripts --------------------------------------------------------


def _vote_batch(labels: list[str]) -> list[str]:
    return [majority_script(l) for l in labels]


def _batched(it: Iterable, size: int) -> Iterator[list]:
    batch = []
    for x in it:
        batch.append(x)
        if len(batch) >= size:
            yield batch
            batch = []
    if batch:
        yield batch


def assign_scripts(entries: Iterable[NameEntry], jobs: int = 1) -> Iterator[NameEntry]:
    """Fill ``entry.script``; batches go to a process pool when ``jobs > 1``."""
    if jobs <= 1:
        for e in entries:
            e.script = majority_script(e.label)
            yield e
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        window = []
        for batch in _batched(entries, FILTER_BATCH):
            window.append((batch, pool.submit(_vote_batch, [e.label for e in batch])))
            if len(window) >= 2 * jobs:
                yield from _apply(*window.pop(0))
        for item in window:
            yield from _apply(*item)


def _apply(batch, future):
    for e, script in zip(batch, future.result()):
        e.script = script
    return batch


def filter_scripts(names_path, kept_path, registry: ScriptRegistry, report_path=None, dropped_path=None, jobs: int = 1) -> dict:
    entries = read_names(names_path)
    if jobs > 1:
        entries = assign_scripts(entries, jobs)
    result = filter_names(entries, registry)
    with open(kept_path, "w", encoding="utf-8", newline="\n") as fh:
        emit_tsv(result.kept, fh, with_script=True)
    if dropped_path:
        with open(dropped_path, "w", encoding="utf-8", newline="\n") as fh:
            emit_tsv(result.dropped, fh, with_script=True)
    report = result.report().to_dict()
    if report_path:
        _write_json(report, report_path)
    return {"kept": len(result.kept), "dropped": len(result.dropped), "mean_entropy_before": report["mean_before"],
            "mean_entropy_after": report["mean_after"]}


# --- scan: single-pass parse + filter ----------------------------------------


def _bump(counts: dict, lang: str, script: str) -> None:
    c = counts.get(lang)
    if c is None:
        c = counts[lang] = Counter()
    c[script] += 1


def _scan_batch(lines: list[bytes], allowed: dict, table: CodeNormalizationTable):
    records, st = _decode_batch(lines)
    registry = ScriptRegistry.__new__(ScriptRegistry)
    registry.allowed = allowed
    before: dict[str, Counter] = {}
    after: dict[str, Counter] = {}
    kept = dropped = 0
    entries = (e for rec in records for e in entity_names(rec, table)[0])
    for keep, e in partition_names(entries, registry):
        _bump(before, e.language, e.script)
        if keep:
            kept += 1
            _bump(after, e.language, e.script)
        else:
            dropped += 1
    return st, before, after, kept, dropped


def scan_dump(dump_path, registry: ScriptRegistry, table: CodeNormalizationTable | None = None, jobs: int = 1) -> dict:
    """Parse a dump and script-filter every label in one streaming pass.

    Only aggregate counts are kept, so this measures (and bounds) the hot path of
    ``extract`` + ``normalize`` + ``filter-scripts`` without writing intermediates.
    The result is independent of ``jobs``.
    """
    table = table or CodeNormalizationTable()
    stats = ParseStats()
    before: dict[str, Counter] = {}
    after: dict[str, Counter] = {}
    kept = dropped = 0

    def merge(part):
        nonlocal stats, kept, dropped
        st, b, a, k, d = part
        stats = stats.merge(st)
        for tgt, src in ((before, b), (after, a)):
            for lang, c in src.items():
                tgt.setdefault(lang, Counter()).update(c)
        kept += k
        dropped += d

    counted = ParseStats()
    with open(dump_path, "rb") as fh:
        batches = _batches(_classify_lines(iter_lines(_counted(_as_chunks(fh), counted))))
        if jobs <= 1:
            for batch in batches:
                merge(_scan_batch(batch, registry.allowed, table))
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                pending = []
                for batch in batches:
                    pending.append(pool.submit(_scan_batch, batch, registry.allowed, table))
                    if len(pending) >= 2 * jobs:
                        merge(pending.pop(0).result())
                for fut in pending:
                    merge(fut.result())
    stats.bytes_read = counted.bytes_read
    unlisted = {l: sum(c.values()) for l, c in before.items() if l not in registry}
    return {
        "parse_stats": stats.to_dict(),
        "kept": kept,
        "dropped": dropped,
        "entropy": entropy_report(before, after, unlisted).to_dict(),
    }


# --- emit / stats ----------------------------------------------------------


def emit(names_path, out_path, sort: bool = False, min_names: int = 2) -> dict:
    kept, dropped = drop_singleton_languages(read_names(names_path), min_names)
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        rows = emit_tsv(kept, fh, sort=sort)
    return {"rows": rows, "dropped_languages": dropped}


def stats(resource_path, out_path) -> dict:
    st = language_stats(read_names(resource_path)).to_dict()
    _write_json(st, out_path)
    return {"total_names": st["total_names"], "total_entities": st["total_entities"], "language_count": st["language_count"]}


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
