# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: script voting, edit distance, LCS, FNV-1a."""
from libc.stdint cimport uint8_t, uint32_t, uint64_t
from libc.stdlib cimport malloc, free

BACKEND = "cython"

cdef enum:
    MAX_SCRIPTS = 256

cdef uint64_t _FNV_OFFSET = 14695981039346656037ULL
cdef uint64_t _FNV_PRIME = 1099511628211ULL


cdef class ScriptVoter:
    cdef bytes _bmp_obj
    cdef bytes _values_obj
    cdef bytes _neutral_obj
    cdef const uint8_t* _bmp
    cdef const uint8_t* _values
    cdef const uint8_t* _neutral
    cdef uint32_t* _starts
    cdef Py_ssize_t _nranges

    def __cinit__(self, bmp, starts, values, neutral):
        self._starts = NULL

    def __init__(self, bmp, starts, values, neutral):
        if len(bmp) != 0x10000:
            raise ValueError("bmp table must cover 65536 code points")
        if len(neutral) > MAX_SCRIPTS:
            raise ValueError("too many scripts")
        self._bmp_obj = bytes(bmp)
        self._values_obj = bytes(values)
        self._neutral_obj = bytes(neutral).ljust(MAX_SCRIPTS, b"\0")
        self._bmp = self._bmp_obj
        self._values = self._values_obj
        self._neutral = self._neutral_obj
        self._nranges = len(starts)
        self._starts = <uint32_t*>malloc(self._nranges * sizeof(uint32_t))
        if self._starts == NULL:
            raise MemoryError()
        cdef Py_ssize_t i
        for i, s in enumerate(starts):
            self._starts[i] = s

    def __dealloc__(self):
        if self._starts != NULL:
            free(self._starts)

    cdef inline uint8_t _lookup(self, Py_UCS4 cp) noexcept:
        cdef Py_ssize_t lo, hi, mid
        if cp < 0x10000:
            return self._bmp[cp]
        lo = 0
        hi = self._nranges
        while hi - lo > 1:
            mid = (lo + hi) >> 1
            if self._starts[mid] <= cp:
                lo = mid
            else:
                hi = mid
        return self._values[lo]

    def script_of(self, uint32_t cp):
        return self._lookup(cp)

    def vote(self, str s):
        cdef int counts[MAX_SCRIPTS]
        cdef Py_ssize_t first[MAX_SCRIPTS]
        cdef uint8_t touched[MAX_SCRIPTS]
        cdef int ntouched = 0
        cdef Py_ssize_t pos = 0
        cdef Py_UCS4 ch
        cdef uint8_t idx
        cdef int k, best = -1, best_count = -1
        cdef Py_ssize_t best_pos = 0
        for ch in s:
            idx = self._lookup(ch)
            if not self._neutral[idx]:
                for k in range(ntouched):
                    if touched[k] == idx:
                        counts[idx] += 1
                        break
                else:
                    touched[ntouched] = idx
                    ntouched += 1
                    counts[idx] = 1
                    first[idx] = pos
            pos += 1
        for k in range(ntouched):
            idx = touched[k]
            if counts[idx] > best_count or (counts[idx] == best_count and first[idx] < best_pos):
                best = idx
                best_count = counts[idx]
                best_pos = first[idx]
        return best


def levenshtein(str a, str b):
    cdef Py_ssize_t n, m, i, j
    cdef Py_ssize_t* prev
    cdef Py_ssize_t* cur
    cdef Py_ssize_t* tmp
    cdef Py_ssize_t best, v
    cdef Py_UCS4 ca
    if len(a) < len(b):
        a, b = b, a
    n = len(a)
    m = len(b)
    if m == 0:
        return n
    prev = <Py_ssize_t*>malloc((m + 1) * sizeof(Py_ssize_t))
    cur = <Py_ssize_t*>malloc((m + 1) * sizeof(Py_ssize_t))
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()
    try:
        for j in range(m + 1):
            prev[j] = j
        for i in range(1, n + 1):
            ca = a[i - 1]
            cur[0] = i
            for j in range(1, m + 1):
                best = prev[j - 1] + (0 if ca == b[j - 1] else 1)
                v = cur[j - 1] + 1
                if v < best:
                    best = v
                v = prev[j] + 1
                if v < best:
                    best = v
                cur[j] = best
            tmp = prev
            prev = cur
            cur = tmp
        return prev[m]
    finally:
        free(prev)
        free(cur)


def lcs_length(str a, str b):
    cdef Py_ssize_t n, m, i, j
    cdef Py_ssize_t* prev
    cdef Py_ssize_t* cur
    cdef Py_ssize_t* tmp
    cdef Py_UCS4 ca
    if len(a) < len(b):
        a, b = b, a
    n = len(a)
    m = len(b)
    if m == 0:
        return 0
    prev = <Py_ssize_t*>malloc((m + 1) * sizeof(Py_ssize_t))
    cur = <Py_ssize_t*>malloc((m + 1) * sizeof(Py_ssize_t))
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()
    try:
        for j in range(m + 1):
            prev[j] = 0
        for i in range(1, n + 1):
            ca = a[i - 1]
            cur[0] = 0
            for j in range(1, m + 1):
                if ca == b[j - 1]:
                    cur[j] = prev[j - 1] + 1
                elif prev[j] >= cur[j - 1]:
                    cur[j] = prev[j]
                else:
                    cur[j] = cur[j - 1]
            tmp = prev
            prev = cur
            cur = tmp
        return prev[m]
    finally:
        free(prev)
        free(cur)


def fnv1a_64(const uint8_t[:] data):
    cdef uint64_t h = _FNV_OFFSET
    cdef Py_ssize_t i
    for i in range(data.shape[0]):
        h ^= data[i]
        h *= _FNV_PRIME
    return h
