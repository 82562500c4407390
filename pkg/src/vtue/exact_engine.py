"""Exact undetectable-error pair counts and P_ue over the Z-channel.

Two independent routes produce the pair table A[i][j] (codewords of weight
``i`` times dominated undetectable errors of weight ``j``): explicit subset
enumeration for short codes, and a joint syndrome dynamic program.  A third,
fixed-``p`` route sums probabilities directly and reaches n in the thousands.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

from . import _backend
from .vt_core import Word, code_size, syndrome_table, weight_spectrum_v0

NAIVE_LIMIT = 14
DP_LIMIT = 64

# Primes below 2**61.4 so three residues sum without int64 overflow.
_CRT_PRIMES = (2305843009213693951, 2305843009213693921)


class StateBudgetError(ValueError):
    pass


def _check_p(p):
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")


@dataclass(frozen=True)
class PairTable:
    """Lower-triangular table ``rows[i][j]`` for ``0 <= j <= i <= n``."""

    n: int
    g: int
    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not 0 <= j <= i <= self.n:
            raise IndexError(key)
        return self.rows[i][j]

    def column(self, j: int) -> list[int]:
        return [self.rows[i][j] if j <= i else 0 for i in range(self.n + 1)]

    @property
    def size(self) -> int:
        return code_size(self.n, self.g)

    def cells(self):
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                yield i, j, v

    def p_ue(self, p):
        """Evaluate P_ue at ``p``; exact when ``p`` is a Fraction or int."""
        _check_p(p)
        exact = isinstance(p, Rational)
        q = 1 - p
        total = 0
        for i in range(2, self.n + 1):
            row = self.rows[i]
            for j in range(2, i + 1):
                a = row[j]
                if a:
                    if exact:
                        total += a * p**j * q ** (i - j)
                    else:
                        total += float(a) * p**j * q ** (i - j)
        if exact:
            return Fraction(total) / self.size
        return total / self.size

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["i", "j", "count"])
        for i, j, v in self.cells():
            writer.writerow([i, j, str(v)])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "g": self.g, "rows": [[str(v) for v in row] for row in self.rows]}
        )

    @classmethod
    def from_json(cls, text: str) -> PairTable:
        data = json.loads(text)
        rows = tuple(tuple(int(v) for v in row) for row in data["rows"])
        return cls(int(data["n"]), int(data["g"]), rows)

    @classmethod
    def from_csv(cls, text: str, n: int, g: int) -> PairTable:
        rows = [[0] * (i + 1) for i in range(n + 1)]
        for rec in csv.DictReader(io.StringIO(text)):
            rows[int(rec["i"])][int(rec["j"])] = int(rec["count"])
        return cls(n, g, tuple(tuple(r) for r in rows))


def undetectable_count(x: Word, j: int) -> int:
    """Number of nonzero-or-zero words ``e`` in V_0 of weight ``j`` with ``e <= x``."""
    support = x.support()
    if not 0 <= j <= len(support):
        raise ValueError(f"j must be in [0, w(x)={len(support)}]")
    q = x.n + 1
    # counts[w][r]
    counts = [[0] * q for _ in range(j + 1)]
    counts[0][0] = 1
    for m in support:
        for w in range(j, 0, -1):
            prev, cur = counts[w - 1], counts[w]
            counts[w] = [cur[r] + prev[(r - m) % q] for r in range(q)]
    return counts[j][0]


def pair_table_naive(n: int, g: int = 0) -> PairTable:
    """Pair table by enumerating every subset of every codeword's support."""
    if n > NAIVE_LIMIT:
        raise StateBudgetError(f"naive enumeration limited to n <= {NAIVE_LIMIT}")
    q = n + 1
    g %= q
    syn = syndrome_table(n).tolist()
    rows = [[0] * (i + 1) for i in range(n + 1)]
    for x in range(1 << n):
        if syn[x] != g:
            continue
        row = rows[x.bit_count()]
        sub = x
        while True:
            if syn[sub] == 0:
                row[sub.bit_count()] += 1
            if sub == 0:
                break
            sub = (sub - 1) & x
    return PairTable(n, g, tuple(tuple(r) for r in rows))


def _dp_mod(n: int, modulus: int | None) -> np.ndarray:
    q = n + 1
    state = np.zeros((q, q, n + 1, n + 1), dtype=np.int64)
    state[0, 0, 0, 0] = 1
    for m in range(1, n + 1):
        s = m % q
        shifted = np.roll(state, s, axis=0)  # x_m = 1
        both = np.roll(shifted, s, axis=1)  # e_m = 1 as well
        state[:, :, 1:, :] += shifted[:, :, :-1, :]
        del shifted
        state[:, :, 1:, 1:] += both[:, :, :-1, :-1]
        del both
        if modulus is not None:
            np.remainder(state, modulus, out=state)
    return state[:, 0]


@lru_cache(maxsize=8)
def _pair_tables_dp(n: int) -> tuple[PairTable, ...]:
    q = n + 1
    if 3**n < 2**63:
        final = _dp_mod(n, None)
        values = [[[int(final[g, i, j]) for j in range(i + 1)] for i in range(n + 1)] for g in range(q)]
    else:
        p1, p2 = _CRT_PRIMES
        r1 = _dp_mod(n, p1)
        r2 = _dp_mod(n, p2)
        inv = pow(p1, -1, p2)
        values = []
        for g in range(q):
            rows = []
            for i in range(n + 1):
                row = []
                for j in range(i + 1):
                    a, b = int(r1[g, i, j]), int(r2[g, i, j])
                    row.append(a + p1 * (((b - a) * inv) % p2))
                rows.append(row)
            values.append(rows)
    return tuple(PairTable(n, g, tuple(tuple(r) for r in values[g])) for g in range(q))


def pair_tables_dp(n: int) -> tuple[PairTable, ...]:
    """Pair tables for every residue ``g`` from a single joint DP pass.

    State is (syndrome of x, syndrome of e, w(x), w(e)); each position picks
    (x_m, e_m) in {(0,0), (1,0), (1,1)}.  Counts never exceed 3**n, so
    int64 is exact up to n = 39; beyond that two prime moduli are combined
    by CRT.
    """
    if not 1 <= n <= DP_LIMIT:
        raise StateBudgetError(f"pair-table DP limited to 1 <= n <= {DP_LIMIT}")
    return _pair_tables_dp(n)


def pair_table_dp(n: int, g: int = 0) -> PairTable:
    return pair_tables_dp(n)[g % (n + 1)]


def p_ue_exact(n: int, g: int, p):
    """P_ue(V_g, p) from exact pair counts; exact if ``p`` is rational."""
    _check_p(p)
    return pair_table_dp(n, g).p_ue(p)


@lru_cache(maxsize=64)
def _size_ratio(n: int, g: int) -> float:
    return float(Fraction(code_size(n, g), 2**n))


def p_ue_exact_fast(n: int, g: int, p: float) -> float:
    """P_ue(V_g, p) for one ``p`` by a probability-weighted syndrome DP.

    Every position's three choices carry weights 1, 1-p, p halved, so the
    total mass stays 1 and nothing overflows for n up to 2048.
    """
    _check_p(p)
    if not 1 <= n <= 2048:
        raise ValueError("n must be in [1, 2048]")
    g %= n + 1
    mass = _backend.vt_fixed_p(n, float(p))
    return float(mass[g, 0]) / _size_ratio(n, g)


def p_ue_exact_fast_curve(n: int, g: int, ps) -> np.ndarray:
    return np.array([p_ue_exact_fast(n, g, p) for p in ps])


def p_ue_v0prime(n: int, p):
    """P_ue of V_0 with the zero word removed, normalised by #V_0.

    The correction is divided by #V_0, not #V_0 - 1, so this is not the
    normalised P_ue of the reduced code; it vanishes at p = 1.
    """
    _check_p(p)
    spectrum = weight_spectrum_v0(n)
    size = sum(spectrum)
    base = p_ue_exact(n, 0, p)
    if isinstance(p, Rational):
        corr = sum(a * Fraction(p) ** j for j, a in enumerate(spectrum) if j >= 1)
        return base - corr / size
    corr = sum(float(a) * p**j for j, a in enumerate(spectrum) if j >= 1)
    return base - corr / size


def binomial_pair_total(n: int, i: int, j: int) -> int:
    """C(n-j, i-j) * A_j^(0): all weight-i words dominating a weight-j V_0 word."""
    return math.comb(n - j, i - j) * weight_spectrum_v0(n)[j]
