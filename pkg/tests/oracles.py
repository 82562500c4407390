"""Brute-force reference implementations used across the test suite."""

from __future__ import annotations

import itertools


def brute_code(n: int, g: int = 0) -> list[int]:
    """All n-bit ints (bit m-1 = position m) whose position sum is g mod n+1."""
    q = n + 1
    out = []
    for bits in range(1 << n):
        s = sum(m for m in range(1, n + 1) if (bits >> (m - 1)) & 1)
        if s % q == g % q:
            out.append(bits)
    return out


def position_sum(bits: int) -> int:
    total, m = 0, 1
    while bits:
        if bits & 1:
            total += m
        bits >>= 1
        m += 1
    return total


def submasks(x: int):
    s = x
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & x


def brute_pair_table(n: int, g: int) -> dict[tuple[int, int], int]:
    """A_{i,j} by direct definition: codeword x, error e <= x with x-e in V_g, e != 0."""
    q = n + 1
    counts: dict[tuple[int, int], int] = {}
    for x in brute_code(n, g):
        i = x.bit_count()
        for e in submasks(x):
            if e and position_sum(e) % q == 0:
                key = (i, e.bit_count())
                counts[key] = counts.get(key, 0) + 1
    return counts


def brute_pue_z(code: list[int], p: float) -> float:
    """Exhaustive Z-channel P_ue: sum over codewords and received words."""
    members = set(code)
    total = 0.0
    for x in code:
        w = x.bit_count()
        for y in submasks(x):
            if y != x and y in members:
                j = w - y.bit_count()
                total += p**j * (1 - p) ** (w - j)
    return total / len(code)


def brute_pue_bsc(code: list[int], n: int, p: float) -> float:
    total = 0.0
    for x, y in itertools.product(code, repeat=2):
        if x != y:
            d = (x ^ y).bit_count()
            total += p**d * (1 - p) ** (n - d)
    return total / len(code)


def p_grid(count: int = 99) -> list[float]:
    return [k / (count + 1) for k in range(1, count + 1)]


def rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b else abs(a)
