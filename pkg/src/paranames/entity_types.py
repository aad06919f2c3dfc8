"""PER/LOC/ORG typing from the P31/P279 hierarchy."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

PER, LOC, ORG = "PER", "LOC", "ORG"
TYPE_ORDER = (PER, LOC, ORG)
ROOTS = {PER: "Q5", LOC: "Q82794", ORG: "Q43229"}
HUMAN = ROOTS[PER]

_DEDUP = {
    frozenset({ORG, PER}): ORG,
    frozenset({ORG, LOC}): LOC,
    frozenset({LOC, PER}): PER,
    frozenset({LOC, ORG, PER}): ORG,
}


def qid_key(qid: str) -> tuple[int, str]:
    """Sort key ordering QIDs numerically (Q2 < Q10)."""
    try:
        return int(qid[1:]), qid
    except ValueError:
        return (1 << 62), qid


def canonical_types(types: Iterable[str]) -> tuple[str, ...]:
    s = set(types)
    unknown = s - set(TYPE_ORDER)
    if unknown:
        raise ValueError(f"unknown entity type(s): {sorted(unknown)}")
    return tuple(t for t in TYPE_ORDER if t in s)


def format_types(types: Iterable[str]) -> str:
    return ";".join(canonical_types(types))


def parse_types(field: str) -> tuple[str, ...]:
    return canonical_types(t for t in field.split(";") if t)


def dedup_types(types: Iterable[str]) -> str:
    """Collapse a type set to one type: ORG+PER->ORG, ORG+LOC->LOC, LOC+PER->PER, all three->ORG."""
    s = frozenset(types)
    if not s:
        raise ValueError("dedup_types needs a non-empty type set")
    if len(s) == 1:
        (only,) = s
        if only not in TYPE_ORDER:
            raise ValueError(f"unknown entity type {only!r}")
        return only
    try:
        return _DEDUP[s]
    except KeyError:
        raise ValueError(f"unknown entity type(s) in {sorted(s)}") from None


class SubclassGraph:
    """Reverse P279 adjacency (parent -> children), accumulated from a full pass."""

    def __init__(self):
        self.children: dict[str, set[str]] = {}

    def add(self, child: str, parents: Iterable[str]) -> None:
        for parent in parents:
            self.children.setdefault(parent, set()).add(child)

    @classmethod
    def from_records(cls, records: Iterable) -> "SubclassGraph":
        g = cls()
        for rec in records:
            if rec.subclass_of:
                g.add(rec.id, rec.subclass_of)
        return g

    def __len__(self) -> int:
        return sum(len(c) for c in self.children.values())


@dataclass(frozen=True)
class SubclassClosure:
    root: str
    descendants: frozenset[str]

    def __contains__(self, qid: str) -> bool:
        return qid in self.descendants

    def dump(self, path: str | Path) -> None:
        lines = [f"#root={self.root} #ucd-independent"]
        lines.extend(sorted(self.descendants, key=qid_key))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "SubclassClosure":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines or not lines[0].startswith("#root="):
            raise ValueError(f"{path}: missing '#root=' header")
        root = lines[0].split()[0][len("#root="):]
        members = frozenset(l.strip() for l in lines[1:] if l.strip() and not l.startswith("#"))
        if root not in members:
            raise ValueError(f"{path}: root {root} missing from closure")
        return cls(root, members)


def build_subclass_closure(graph: SubclassGraph | Iterable, root: str) -> SubclassClosure:
    """All QIDs reaching ``root`` through zero or more P279 edges (reverse BFS)."""
    if not isinstance(graph, SubclassGraph):
        graph = SubclassGraph.from_records(graph)
    seen = {root}
    queue = deque([root])
    children = graph.children
    while queue:
        node = queue.popleft()
        for child in children.get(node, ()):
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return SubclassClosure(root, frozenset(seen))


def build_closures(graph: SubclassGraph, roots: Mapping[str, str] = ROOTS) -> dict[str, SubclassClosure]:
    return {t: build_subclass_closure(graph, qid) for t, qid in roots.items()}


def classify_entity(record, closures: Mapping[str, SubclassClosure]) -> tuple[str, ...]:
    """Entity types in canonical order; empty if the entity is not PER/LOC/ORG.

    PER needs a direct ``P31 Q5`` claim; LOC and ORG accept any subclass of their root.
    """
    p31 = record.instance_of
    types = []
    if HUMAN in p31:
        types.append(PER)
    for t in (LOC, ORG):
        members = closures[t].descendants
        if any(q in members for q in p31):
            types.append(t)
    return tuple(types)
