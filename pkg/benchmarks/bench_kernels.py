"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import random
import time

from paranames import _pykernels
from paranames.scripts import make_voter

try:
    from paranames import _kernels
except ImportError:  # extension not built
    _kernels = None


def make_inputs(seed=0, n=20000):
    rng = random.Random(seed)
    pools = ["abcdefghijklmnop ", "абвгдежзиклмно ", "ابتثجحخدذرز ", "東京山川明國王", "0123456789-. "]
    names = []
    for _ in range(n):
        pool = rng.choice(pools)
        names.append("".join(rng.choice(pool) for _ in range(rng.randint(3, 24))))
    pairs = [(names[i], names[(i * 7 + 1) % n]) for i in range(n // 4)]
    qids = [f"Q{rng.randint(1, 10**8)}".encode() for _ in range(n * 5)]
    return names, pairs, qids


def bench(mod, names, pairs, qids, repeat):
    voter = make_voter(backend=mod)
    cases = {
        "script vote": lambda: [voter.vote(s) for s in names],
        "levenshtein": lambda: [mod.levenshtein(a, b) for a, b in pairs],
        "lcs_length": lambda: [mod.lcs_length(a, b) for a, b in pairs],
        "fnv1a_64": lambda: [mod.fnv1a_64(q) for q in qids],
    }
    out = {}
    for name, fn in cases.items():
        best = float("inf")
        result = None
        for _ in range(repeat):
            t = time.perf_counter()
            result = fn()
            best = min(best, time.perf_counter() - t)
        out[name] = (best, result)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names, pairs, qids = make_inputs()
    py = bench(_pykernels, names, pairs, qids, args.repeat)
    if _kernels is None:
        print("compiled kernels not built; pure-Python timings only")
        for k, (t, _) in py.items():
            print(f"{k:14s} python {t * 1e3:9.1f} ms")
        return
    cy = bench(_kernels, names, pairs, qids, args.repeat)
    print(f"{'kernel':14s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for k in py:
        tp, rp = py[k]
        tc, rc = cy[k]
        assert rp == rc, f"backends disagree on {k}"
        print(f"{k:14s} {tp * 1e3:10.1f} {tc * 1e3:10.1f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
