"""Pure-Python kernels. Same surface as the compiled ``_kernels`` module."""
from bisect import bisect_right

FNV_OFFSET = 14695981039346656037
FNV_PRIME = 1099511628211
_MASK64 = (1 << 64) - 1

BACKEND = "python"


class ScriptVoter:
    """Majority-script vote over the code points of a string.

    ``bmp`` maps every BMP code point to a script index (one byte each);
    ``starts``/``values`` are the full range table used above U+FFFF.
    ``neutral`` has a nonzero byte for script indices excluded from the vote.
    """

    def __init__(self, bmp, starts, values, neutral):
        if len(bmp) != 0x10000:
            raise ValueError("bmp table must cover 65536 code points")
        self._bmp = bytes(bmp)
        self._starts = list(starts)
        self._values = bytes(values)
        self._neutral = bytes(neutral)

    def script_of(self, cp):
        if cp < 0x10000:
            return self._bmp[cp]
        return self._values[bisect_right(self._starts, cp) - 1]

    def vote(self, s):
        """Index of the winning script, or -1 if every character is neutral."""
        bmp = self._bmp
        neutral = self._neutral
        counts = {}
        first = {}
        for pos, ch in enumerate(s):
            cp = ord(ch)
            idx = bmp[cp] if cp < 0x10000 else self.script_of(cp)
            if neutral[idx]:
                continue
            if idx in counts:
                counts[idx] += 1
            else:
                counts[idx] = 1
                first[idx] = pos
        if not counts:
            return -1
        best = -1
        best_count = -1
        best_pos = 0
        for idx, c in counts.items():
            if c > best_count or (c == best_count and first[idx] < best_pos):
                best, best_count, best_pos = idx, c, first[idx]
        return best


def levenshtein(a, b):
    """Unit-cost edit distance between two strings (by code point)."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cost = prev[j - 1] + (ca != cb)
            ins = cur[j - 1] + 1
            dele = prev[j] + 1
            cur.append(min(cost, ins, dele))
        prev = cur
    return prev[-1]


def lcs_length(a, b):
    """Length of the longest common subsequence (by code point)."""
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for ca in a:
        cur = [0]
        for j, cb in enumerate(b, 1):
            if ca == cb:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def fnv1a_64(data):
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & _MASK64
    return h
