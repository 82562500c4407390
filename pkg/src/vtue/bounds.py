"""Closed-form low-weight pair counts and truncated lower bounds on P_ue.

Each counter sums, over the undetectable error supports listed by the
closed form, the number of weight-``i`` codewords covering that support.
The covering count is a small (residue, weight) DP over the remaining
positions, which is the codeword sweep with the order of summation swapped.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

from .exact_engine import _check_p, pair_table_dp
from .vt_core import code_size, weight_spectrum_general


def _covering_counts(n: int, support: tuple[int, ...], g: int) -> np.ndarray:
    """counts[i] = #{x in V_g : w(x) = i, x_m = 1 for m in support}."""
    q = n + 1
    # every entry is at most 2^(n - |support|)
    dtype = np.int64 if n - len(support) <= 62 else object
    table = np.zeros((q, n + 1), dtype=dtype)
    table[sum(support) % q, len(support)] = 1
    taken = set(support)
    for m in range(1, n + 1):
        if m in taken:
            continue
        shifted = np.roll(table, m % q, axis=0)
        table[:, 1:] = table[:, 1:] + shifted[:, :-1]
    return table[g % q]


def _accumulate(n: int, g: int, supports, factor: int = 1) -> list[int]:
    total = [0] * (n + 1)
    for s in supports:
        counts = _covering_counts(n, s, g)
        for i in range(n + 1):
            total[i] += int(counts[i])
    return [factor * v for v in total]


@lru_cache(maxsize=128)
def _count_weight2(n: int, g: int) -> tuple[int, ...]:
    supports = [(r, n + 1 - r) for r in range(1, n // 2 + 1)]
    return tuple(_accumulate(n, g, supports))


def count_weight2(n: int, g: int = 0) -> list[int]:
    """A_{i,2}^{(g)} for i = 0..n.

    A weight-2 word is in V_0 iff its two positions sum to n + 1, so every
    x covering such a pair contributes one undetectable error.
    """
    return list(_count_weight2(n, g % (n + 1)))


def _require_v0(g: int, n: int):
    if g % (n + 1) != 0:
        raise ValueError("closed forms for j >= 3 rely on reversal symmetry and need g = 0")


@lru_cache(maxsize=128)
def _count_weight3(n: int) -> tuple[int, ...]:
    supports = [
        (r, s, n + 1 - r - s)
        for r in range(1, (n - 2) // 3 + 1)
        for s in range(r + 1, (n - r) // 2 + 1)
    ]
    # supports summing to 2(n+1) are the reversals of these
    return tuple(_accumulate(n, 0, supports, factor=2))


def count_weight3(n: int, g: int = 0) -> list[int]:
    """A_{i,3}^{(0)}; only supports summing to n + 1 are swept, then doubled."""
    _require_v0(g, n)
    return list(_count_weight3(n))


def _weight4_supports(n: int):
    first = [
        (r, s, t, n + 1 - r - s - t)
        for r in range(1, (n - 5) // 4 + 1)
        for s in range(r + 1, (n - 2 - r) // 3 + 1)
        for t in range(s + 1, (n - r - s) // 2 + 1)
    ]
    second = [
        (r, s, t, 2 * n + 2 - r - s - t)
        for r in range(1, (2 * n - 4) // 4 + 1)
        for s in range(r + 1, (2 * n - 1 - r) // 3 + 1)
        for t in range(max(s + 1, n + 2 - r - s), (2 * n + 1 - r - s) // 2 + 1)
    ]
    return first, second


@lru_cache(maxsize=128)
def _count_weight4(n: int) -> tuple[int, ...]:
    first, second = _weight4_supports(n)
    a = _accumulate(n, 0, first, factor=2)
    b = _accumulate(n, 0, second)
    return tuple(x + y for x, y in zip(a, b))


def count_weight4(n: int, g: int = 0) -> list[int]:
    """A_{i,4}^{(0)}: supports summing to n+1 (doubled for 3(n+1)) plus 2(n+1)."""
    _require_v0(g, n)
    return list(_count_weight4(n))


def closed_form_column(n: int, j: int, g: int = 0) -> list[int]:
    if j == 2:
        return count_weight2(n, g)
    if j == 3:
        return count_weight3(n, g)
    if j == 4:
        return count_weight4(n, g)
    raise ValueError("closed forms exist for j in {2, 3, 4}")


def bound_cells(n: int, g: int, m: int, mirror: bool = False) -> dict[tuple[int, int], int]:
    """Exact pair counts retained by the truncated bound.

    With ``mirror`` (g = 0 only) the cells (i, i-j) and (i, i) are added
    from the same counts; no cell is counted twice.
    """
    if m not in (2, 3, 4):
        raise ValueError("m must be 2, 3 or 4")
    g %= n + 1
    if mirror and g != 0:
        raise ValueError("the mirrored bound uses symmetries of V_0 only")
    if g == 0:
        columns = {j: closed_form_column(n, j) for j in range(2, m + 1)}
    else:
        table = pair_table_dp(n, g)
        columns = {j: table.column(j) for j in range(2, m + 1)}
    cells: dict[tuple[int, int], int] = {}
    for j, col in columns.items():
        for i in range(j, n + 1):
            if col[i]:
                cells[(i, j)] = col[i]
                if mirror and i - j >= 2:
                    cells[(i, i - j)] = col[i]
    if mirror:
        spectrum = weight_spectrum_general(n, 0)
        for i in range(2, n + 1):
            if spectrum[i]:
                cells[(i, i)] = spectrum[i]
    return cells


def evaluate_cells(cells: dict[tuple[int, int], int], p, size: int):
    """(1/size) * sum of count * p^j (1-p)^(i-j); exact for rational ``p``."""
    _check_p(p)
    q = 1 - p
    if isinstance(p, Rational):
        total = sum(c * Fraction(p) ** j * Fraction(q) ** (i - j) for (i, j), c in cells.items())
        return Fraction(total) / size
    total = 0.0
    for (i, j), c in cells.items():
        total += float(c) * p**j * q ** (i - j)
    return total / size


def lower_bound(n: int, g: int, p, m: int, mirror: bool = False):
    """Truncated P_ue keeping only error weights up to ``m``."""
    cells = bound_cells(n, g, m, mirror)
    return evaluate_cells(cells, p, code_size(n, g))
