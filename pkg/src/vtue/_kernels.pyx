# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: fixed-p syndrome DPs and the Monte Carlo inner loop."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, int32_t
from libc.string cimport memset

cnp.import_array()

NAME = "cython"
GENERATOR = "xoshiro256**"

cdef extern from *:
    """
    static inline int vt_ctz64(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int vt_ctz64(unsigned long long x) nogil


def vt_fixed_p(int n, double p):
    """Halved-weight mass over (syndrome of x, syndrome of e), e nonzero."""
    cdef int q = n + 1
    cdef double stay = 0.5, keep = 0.5 * (1.0 - p), flip = 0.5 * p
    cdef cnp.ndarray[double, ndim=1] f0a = np.zeros(q)
    cdef cnp.ndarray[double, ndim=1] g0a = np.zeros(q)
    cdef cnp.ndarray[double, ndim=2] f1a = np.zeros((q, q))
    cdef cnp.ndarray[double, ndim=2] g1a = np.zeros((q, q))
    cdef double[:] f0 = f0a, g0 = g0a, t0
    cdef double[:, :] f1 = f1a, g1 = g1a, t1
    cdef int m, s, rx, re, sx, se
    f0[0] = 1.0
    with nogil:
        for m in range(1, n + 1):
            s = m % q
            for rx in range(q):
                sx = rx - s
                if sx < 0:
                    sx += q
                g0[rx] = stay * f0[rx] + keep * f0[sx]
                for re in range(q):
                    se = re - s
                    if se < 0:
                        se += q
                    g1[rx, re] = stay * f1[rx, re] + keep * f1[sx, re] + flip * f1[sx, se]
                g1[rx, s] += flip * f0[sx]
            t0 = f0
            f0 = g0
            g0 = t0
            t1 = f1
            f1 = g1
            g1 = t1
    return np.asarray(f1).copy()


def hamming_fixed_p(int r, double p):
    """Same as :func:`vt_fixed_p` with XOR syndromes of a Hamming code."""
    cdef int size = 1 << r
    cdef int n = size - 1
    cdef double stay = 0.5, keep = 0.5 * (1.0 - p), flip = 0.5 * p
    cdef cnp.ndarray[double, ndim=1] f0a = np.zeros(size)
    cdef cnp.ndarray[double, ndim=1] g0a = np.zeros(size)
    cdef cnp.ndarray[double, ndim=2] f1a = np.zeros((size, size))
    cdef cnp.ndarray[double, ndim=2] g1a = np.zeros((size, size))
    cdef double[:] f0 = f0a, g0 = g0a, t0
    cdef double[:, :] f1 = f1a, g1 = g1a, t1
    cdef int col, a, b, pa
    f0[0] = 1.0
    with nogil:
        for col in range(1, n + 1):
            for a in range(size):
                pa = a ^ col
                g0[a] = stay * f0[a] + keep * f0[pa]
                for b in range(size):
                    g1[a, b] = stay * f1[a, b] + keep * f1[pa, b] + flip * f1[pa, b ^ col]
                g1[a, col] += flip * f0[pa]
            t0 = f0
            f0 = g0
            g0 = t0
            t1 = f1
            f1 = g1
            g1 = t1
    return np.asarray(f1).copy()


cdef inline uint64_t _rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t _next(uint64_t* s) nogil:
    cdef uint64_t result = _rotl(s[1] * 5, 7) * 9
    cdef uint64_t t = s[1] << 17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


cdef inline double _uniform(uint64_t* s) nogil:
    return <double>(_next(s) >> 11) * (1.0 / 9007199254740992.0)


cdef uint64_t _splitmix(uint64_t* x) nogil:
    x[0] += <uint64_t>0x9E3779B97F4A7C15
    cdef uint64_t z = x[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef uint64_t[4] _JUMP = [<uint64_t>0x180ec6d33cfd0aba, <uint64_t>0xd5a61266f0c9392c,
                          <uint64_t>0xa9582618e03fc9aa, <uint64_t>0x39abdc4529b1661c]


cdef class Stream:
    """xoshiro256** state; worker ``w`` starts ``w`` jumps (2**128 draws each) in."""

    cdef uint64_t s[4]

    def __init__(self, seed, int worker=0):
        cdef uint64_t x = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
        cdef int i
        for i in range(4):
            self.s[i] = _splitmix(&x)
        for i in range(worker):
            self._jump()

    cdef void _jump(self):
        cdef uint64_t t[4]
        cdef int i, b
        memset(t, 0, sizeof(t))
        for i in range(4):
            for b in range(64):
                if _JUMP[i] & (<uint64_t>1 << b):
                    t[0] ^= self.s[0]
                    t[1] ^= self.s[1]
                    t[2] ^= self.s[2]
                    t[3] ^= self.s[3]
                _next(self.s)
        for i in range(4):
            self.s[i] = t[i]

    def next_u64(self):
        return _next(self.s)

    def state(self):
        return tuple(self.s[i] for i in range(4))


def make_stream(seed, int worker=0):
    return Stream(seed, worker)


def _chunk_tables(int n):
    """tables[k, v]: syndrome contribution of 16-bit value v in slot k."""
    cdef int q = n + 1
    cdef int slots = (n + 63) // 64 * 4
    values = np.arange(1 << 16, dtype=np.int64)
    tables = np.zeros((slots, 1 << 16), dtype=np.int64)
    for k in range(slots):
        for b in range(16):
            pos = 16 * k + b + 1
            if pos <= n:
                tables[k] += ((values >> b) & 1) * pos
    return (tables % q).astype(np.int32)


def simulate_chunk(Stream stream, int n, int g, double p, int mode,
                   long long max_trials, long long max_hits):
    """Run trials until ``max_hits`` undetected errors or ``max_trials``.

    ``mode`` 0 draws codewords uniformly by rejection; 1 encodes uniform
    information bits systematically.  Returns ``(trials, hits)``.
    """
    cdef int q = n + 1
    cdef int words = (n + 63) // 64
    cdef int slots = words * 4
    cdef uint64_t top_mask = (<uint64_t>1 << (n - 64 * (words - 1))) - 1 if n % 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    cdef cnp.ndarray[uint64_t, ndim=1] xa = np.zeros(words, dtype=np.uint64)
    cdef uint64_t[:] xw = xa
    cdef int32_t[:, :] tables
    cdef int64_t[:] info_pos
    cdef int n_parity = 0, k_info = 0, v
    cdef long long trials = 0, hits = 0
    cdef int w, syn, chunk, b, i, j, d
    cdef uint64_t val, pool = 0
    cdef int pool_left = 0
    cdef long long se
    cdef bint flipped
    cdef uint64_t* st = stream.s

    if mode == 0:
        tables = _chunk_tables(n)
    else:
        v = 1
        parity = []
        while v <= n:
            parity.append(v)
            v <<= 1
        n_parity = len(parity)
        info_pos = np.array([m for m in range(1, n + 1) if m not in set(parity)], dtype=np.int64)
        k_info = len(info_pos)

    with nogil:
        while trials < max_trials and hits < max_hits:
            if mode == 0:
                while True:
                    syn = 0
                    for w in range(words):
                        val = _next(st)
                        if w == words - 1:
                            val &= top_mask
                        xw[w] = val
                        for chunk in range(4):
                            syn += tables[4 * w + chunk, (val >> (16 * chunk)) & 0xFFFF]
                    if syn % q == g:
                        break
            else:
                syn = 0
                for w in range(words):
                    xw[w] = 0
                for i in range(k_info):
                    if pool_left == 0:
                        pool = _next(st)
                        pool_left = 64
                    if pool & 1:
                        b = <int>info_pos[i] - 1
                        xw[b >> 6] |= (<uint64_t>1) << (b & 63)
                        syn += <int>info_pos[i]
                    pool >>= 1
                    pool_left -= 1
                d = (g - syn) % q
                if d < 0:
                    d += q
                for j in range(n_parity):
                    if (d >> j) & 1:
                        b = (1 << j) - 1
                        xw[b >> 6] |= (<uint64_t>1) << (b & 63)
            se = 0
            flipped = False
            for w in range(words):
                val = xw[w]
                while val:
                    b = vt_ctz64(val)
                    val &= val - 1
                    if _uniform(st) < p:
                        se += 64 * w + b + 1
                        flipped = True
            trials += 1
            if flipped and se % q == 0:
                hits += 1
    return trials, hits
