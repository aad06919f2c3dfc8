"""Streaming decoder for Wikidata JSON dumps.

Two layouts are accepted and auto-detected from the first non-blank line:

* the official array dump: ``[`` / one entity per line with a trailing comma / ``]``
* plain JSON lines, one entity object per line

Only ``labels.<lang>.value`` and the P31/P279 claim targets are decoded; every other
field is skipped by the decoder without being materialized.
"""
from __future__ import annotations

import logging
import re
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Any, Iterable, Iterator, Union

import msgspec

logger = logging.getLogger(__name__)

QID_RE = re.compile(r"Q[0-9]+\Z")
CHUNK_SIZE = 1 << 20
BATCH_BYTES = 4 << 20


class _DataValue(msgspec.Struct):
    value: Any = None


class _Snak(msgspec.Struct):
    datavalue: Union[_DataValue, None] = None


class _Statement(msgspec.Struct):
    mainsnak: Union[_Snak, None] = None


class _Claims(msgspec.Struct):
    P31: list[_Statement] = []
    P279: list[_Statement] = []


class _Label(msgspec.Struct):
    value: str = ""


class _Entity(msgspec.Struct):
    id: str = ""
    type: str = "item"
    labels: Union[dict[str, _Label], list] = {}
    claims: Union[_Claims, list] = []


_decoder = msgspec.json.Decoder(_Entity)


@dataclass(slots=True)
class EntityRecord:
    id: str
    labels: dict[str, str] = field(default_factory=dict)
    instance_of: list[str] = field(default_factory=list)
    subclass_of: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "labels": self.labels,
            "instance_of": self.instance_of,
            "subclass_of": self.subclass_of,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EntityRecord":
        return cls(obj["id"], dict(obj.get("labels", {})), list(obj.get("instance_of", [])),
                   list(obj.get("subclass_of", [])))


@dataclass
class ParseStats:
    entities_read: int = 0
    lines_skipped: int = 0
    labels_read: int = 0
    bytes_read: int = 0
    properties_skipped: int = 0

    def merge(self, other: "ParseStats") -> "ParseStats":
        return ParseStats(
            self.entities_read + other.entities_read,
            self.lines_skipped + other.lines_skipped,
            self.labels_read + other.labels_read,
            self.bytes_read + other.bytes_read,
            self.properties_skipped + other.properties_skipped,
        )

    def to_dict(self) -> dict:
        return {
            "entities_read": self.entities_read,
            "lines_skipped": self.lines_skipped,
            "labels_read": self.labels_read,
            "bytes_read": self.bytes_read,
            "properties_skipped": self.properties_skipped,
        }


def _targets(statements: list[_Statement]) -> list[str]:
    out: list[str] = []
    for st in statements:
        snak = st.mainsnak
        if snak is None or snak.datavalue is None:
            continue
        value = snak.datavalue.value
        qid = value.get("id") if isinstance(value, dict) else None
        if isinstance(qid, str) and QID_RE.match(qid) and qid not in out:
            out.append(qid)
    return out


def decode_entity(line: bytes) -> EntityRecord | None:
    """Decode one entity line (trailing comma/whitespace allowed).

    Returns None for non-item entities (properties, lexemes). Raises ValueError on a
    malformed line.
    """
    line = line.strip()
    if line.endswith(b","):
        line = line[:-1]
    try:
        ent = _decoder.decode(line)
    except msgspec.DecodeError as exc:
        raise ValueError(str(exc)) from None
    if ent.type != "item":
        return None
    if not QID_RE.match(ent.id):
        raise ValueError(f"bad entity id {ent.id!r}")
    labels = {}
    if isinstance(ent.labels, dict):
        for lang, lab in ent.labels.items():
            if lab.value.strip():
                labels[lang] = lab.value
    elif ent.labels:
        raise ValueError("labels must be an object")
    p31: list[str] = []
    p279: list[str] = []
    if isinstance(ent.claims, _Claims):
        p31 = _targets(ent.claims.P31)
        p279 = _targets(ent.claims.P279)
    elif ent.claims:
        raise ValueError("claims must be an object")
    return EntityRecord(ent.id, labels, p31, p279)


def iter_lines(chunks: Iterable[bytes]) -> Iterator[bytes]:
    """Reassemble newline-terminated lines from arbitrarily split byte chunks."""
    pending = b""
    for chunk in chunks:
        if not chunk:
            continue
        buf = pending + chunk if pending else chunk
        parts = buf.split(b"\n")
        pending = parts.pop()
        yield from parts
    if pending:
        yield pending


def _read_chunks(stream: IO[bytes], size: int = CHUNK_SIZE) -> Iterator[bytes]:
    while True:
        chunk = stream.read(size)
        if not chunk:
            return
        yield chunk


def _as_chunks(source) -> Iterable[bytes]:
    if hasattr(source, "read"):
        return _read_chunks(source)
    if isinstance(source, (bytes, bytearray)):
        return [bytes(source)]
    return source


def _counted(chunks: Iterable[bytes], stats: ParseStats) -> Iterator[bytes]:
    for chunk in chunks:
        stats.bytes_read += len(chunk)
        yield chunk


def _classify_lines(lines: Iterable[bytes]) -> Iterator[bytes]:
    """Drop array brackets and blank lines."""
    array_mode: bool | None = None
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        if array_mode is None:
            array_mode = line == b"["
            if array_mode:
                continue
        if array_mode and line in (b"]", b"],"):
            continue
        yield line


def _decode_batch(lines: list[bytes]) -> tuple[list[EntityRecord], ParseStats]:
    stats = ParseStats()
    out = []
    for line in lines:
        try:
            rec = decode_entity(line)
        except ValueError:
            stats.lines_skipped += 1
            continue
        if rec is None:
            stats.properties_skipped += 1
            continue
        stats.entities_read += 1
        stats.labels_read += len(rec.labels)
        out.append(rec)
    return out, stats


def _batches(lines: Iterable[bytes], max_bytes: int = BATCH_BYTES) -> Iterator[list[bytes]]:
    batch: list[bytes] = []
    size = 0
    for line in lines:
        batch.append(line)
        size += len(line)
        if size >= max_bytes:
            yield batch
            batch, size = [], 0
    if batch:
        yield batch


class DumpReader:
    """Iterate EntityRecords from a dump; ``stats`` is complete once iteration ends.

    ``source`` may be a binary file object, a bytes object, or an iterable of byte
    chunks split at arbitrary positions. With ``jobs > 1`` line batches are decoded in
    a process pool; record order is preserved, so output does not depend on ``jobs``.
    """

    def __init__(self, source, jobs: int = 1):
        self.source = source
        self.jobs = max(1, int(jobs))
        self.stats = ParseStats()

    def __iter__(self) -> Iterator[EntityRecord]:
        lines = _classify_lines(iter_lines(_counted(_as_chunks(self.source), self.stats)))
        if self.jobs == 1:
            stats = self.stats
            for line in lines:
                try:
                    rec = decode_entity(line)
                except ValueError:
                    stats.lines_skipped += 1
                    continue
                if rec is None:
                    stats.properties_skipped += 1
                    continue
                stats.entities_read += 1
                stats.labels_read += len(rec.labels)
                yield rec
            return
        with ProcessPoolExecutor(max_workers=self.jobs) as pool:
            # bounded window of in-flight batches keeps memory independent of dump size
            pending: deque = deque()
            for batch in _batches(lines):
                pending.append(pool.submit(_decode_batch, batch))
                if len(pending) >= 2 * self.jobs:
                    yield from self._drain(pending.popleft())
            while pending:
                yield from self._drain(pending.popleft())

    def _drain(self, future) -> list[EntityRecord]:
        records, st = future.result()
        self._merge(st)
        return records

    def _merge(self, st: ParseStats) -> None:
        s = self.stats
        s.entities_read += st.entities_read
        s.lines_skipped += st.lines_skipped
        s.labels_read += st.labels_read
        s.properties_skipped += st.properties_skipped


def parse_dump(source, jobs: int = 1) -> tuple[list[EntityRecord], ParseStats]:
    """Decode a whole dump into memory. Use DumpReader to stream instead."""
    reader = DumpReader(source, jobs=jobs)
    records = list(reader)
    return records, reader.stats


def read_entities_jsonl(path) -> Iterator[EntityRecord]:
    """Read the ``extract`` stage output."""
    dec = msgspec.json.Decoder()
    with open(path, "rb") as fh:
        for line in fh:
            if line.strip():
                yield EntityRecord.from_json(dec.decode(line))


def write_entities_jsonl(records: Iterable[EntityRecord], fh: IO[bytes]) -> int:
    enc = msgspec.json.Encoder()
    n = 0
    for rec in records:
        fh.write(enc.encode(rec.to_json()))
        fh.write(b"\n")
        n += 1
    return n
