"""Name-translation scoring and the significance/effect-size helpers used to compare runs."""
from __future__ import annotations

import math
import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels

EXACT_MAX_N = 10


def _nfc(s: str) -> str:
    return unicodedata.normalize("NFC", s)


def cer(candidate: str, reference: str) -> float:
    """Character error rate: edit distance over NFC code points / reference length."""
    candidate, reference = _nfc(candidate), _nfc(reference)
    if not reference:
        raise ValueError("cer needs a non-empty reference")
    return kernels.levenshtein(candidate, reference) / len(reference)


def lcs_f1(candidate: str, reference: str) -> float:
    """F1 of LCS-based precision (over candidate) and recall (over reference)."""
    candidate, reference = _nfc(candidate), _nfc(reference)
    if not candidate or not reference:
        raise ValueError("lcs_f1 needs two non-empty strings")
    lcs = kernels.lcs_length(candidate, reference)
    if lcs == 0:
        return 0.0
    p = lcs / len(candidate)
    r = lcs / len(reference)
    return 2 * p * r / (p + r)


def exact_match(candidate: str, reference: str) -> bool:
    return _nfc(candidate) == _nfc(reference)


def accuracy(pairs: Iterable[tuple[str, str]]) -> float:
    pairs = list(pairs)
    if not pairs:
        raise ValueError("accuracy of an empty corpus is undefined")
    return sum(exact_match(c, r) for c, r in pairs) / len(pairs)


@dataclass
class ScoredCorpus:
    items: list[tuple[str, str]]
    cer: list[float]
    f1: list[float]
    correct: list[bool]

    @classmethod
    def score(cls, pairs: Iterable[tuple[str, str]]) -> "ScoredCorpus":
        items = list(pairs)
        return cls(
            items,
            [cer(c, r) for c, r in items],
            [lcs_f1(c, r) for c, r in items],
            [exact_match(c, r) for c, r in items],
        )

    def summary(self) -> dict:
        n = len(self.items)
        if n == 0:
            raise ValueError("empty corpus")
        return {
            "n": n,
            "accuracy": sum(self.correct) / n,
            "cer": math.fsum(self.cer) / n,
            "f1": math.fsum(self.f1) / n,
        }


def evaluate(rows: Iterable[tuple[str, str, str]], ndigits: int = 6) -> dict:
    """Per-language and micro-averaged scores for ``(candidate, reference, language)`` rows."""
    by_lang: dict[str, list[tuple[str, str]]] = {}
    for cand, ref, lang in rows:
        by_lang.setdefault(lang, []).append((cand, ref))
    if not by_lang:
        raise ValueError("no rows to evaluate")
    per_language = {}
    pooled = ScoredCorpus([], [], [], [])
    for lang in sorted(by_lang):
        sc = ScoredCorpus.score(by_lang[lang])
        per_language[lang] = {k: round(v, ndigits) if isinstance(v, float) else v for k, v in sc.summary().items()}
        pooled.items += sc.items
        pooled.cer += sc.cer
        pooled.f1 += sc.f1
        pooled.correct += sc.correct
    micro = {k: round(v, ndigits) if isinstance(v, float) else v for k, v in pooled.summary().items()}
    return {"per_language": per_language, "micro_average": micro}


# --- Mann-Whitney U --------------------------------------------------------


@dataclass(frozen=True)
class TestResult:
    u_statistic: float
    p_value: float
    method: str

    __test__ = False  # not a pytest class


def midranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        r = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = r
        i = j + 1
    return ranks


def _rank_sum_distribution(doubled_ranks: Sequence[int], n: int) -> Counter:
    """Number of size-``n`` subsets for each total of the given (integer) doubled ranks."""
    # ways[k] maps subset-sum -> count over subsets of size k
    ways: list[Counter] = [Counter() for _ in range(n + 1)]
    ways[0][0] = 1
    for r in doubled_ranks:
        for k in range(n, 0, -1):
            src = ways[k - 1]
            if src:
                dst = ways[k]
                for s, c in src.items():
                    dst[s + r] += c
    return ways[n]


def _exact_p(ranks: Sequence[float], n: int, m: int, u: float) -> float:
    doubled = [int(round(2 * r)) for r in ranks]
    dist = _rank_sum_distribution(doubled, n)
    total = math.comb(n + m, n)
    offset2 = n * (n + 1)  # 2 * n(n+1)/2
    mean2 = n * m  # 2 * E[U]
    dev = abs(2 * u - mean2)
    hits = sum(c for s2, c in dist.items() if abs(s2 - offset2 - mean2) >= dev - 1e-9)
    return hits / total


def _normal_p(ranks: Sequence[float], n: int, m: int, u: float) -> float:
    N = n + m
    ties = Counter(ranks).values()
    tie_term = sum(t ** 3 - t for t in ties) / (N * (N - 1)) if N > 1 else 0.0
    var = n * m / 12.0 * ((N + 1) - tie_term)
    if var <= 0:
        return 1.0
    dev = max(abs(u - n * m / 2.0) - 0.5, 0.0)
    z = dev / math.sqrt(var)
    return math.erfc(z / math.sqrt(2.0))


def mann_whitney_u(sample_a: Sequence[float], sample_b: Sequence[float]) -> TestResult:
    """Two-tailed Mann-Whitney U test; U is reported for ``sample_a``.

    Exact (enumerating every rank assignment, ties as midranks) when both samples
    have at most 10 values, otherwise the tie-corrected normal approximation with a
    0.5 continuity correction.
    """
    n, m = len(sample_a), len(sample_b)
    if n == 0 or m == 0:
        raise ValueError("both samples must be non-empty")
    ranks = midranks(list(sample_a) + list(sample_b))
    u = math.fsum(ranks[:n]) - n * (n + 1) / 2.0
    if n <= EXACT_MAX_N and m <= EXACT_MAX_N:
        p, method = _exact_p(ranks, n, m, u), "exact"
    else:
        p, method = _normal_p(ranks, n, m, u), "normal-approximation"
    return TestResult(u, min(1.0, max(0.0, p)), method)


# --- effect size / coverage ------------------------------------------------


def effect_size(delta: float, sigma: float, ndigits: int | None = 2) -> float:
    """Normalized effect size delta/sigma, rounded to ``ndigits`` (None keeps full precision)."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    value = delta / sigma
    return value if ndigits is None else round(value, ndigits) + 0.0


def coverage(links: int, entities: int) -> float:
    """Percent of unique gold entity strings found in the gazetteer."""
    if links < 0 or entities < 0 or links > entities:
        raise ValueError("need 0 <= links <= entities")
    return 100.0 * links / entities if entities else 0.0
