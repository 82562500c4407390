"""Hamming codes on the BSC and the Z-channel, and generic BSC P_ue via the
MacWilliams transform."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence

from . import _backend
from .exact_engine import _check_p


@dataclass(frozen=True)
class HammingCode:
    """Binary Hamming code whose parity-check column at position m is m."""

    r: int

    def __post_init__(self):
        if not 2 <= self.r <= 16:
            raise ValueError("r must be in [2, 16]")

    @property
    def n(self) -> int:
        return (1 << self.r) - 1

    @property
    def k(self) -> int:
        return self.n - self.r

    @property
    def size(self) -> int:
        return 1 << self.k

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def spectrum(self) -> list[int]:
        return hamming_spectrum(self.r)

    def syndrome(self, bits: int) -> int:
        s = 0
        m = 1
        while bits:
            if bits & 1:
                s ^= m
            bits >>= 1
            m += 1
        return s

    def encode(self, info: Sequence[int]) -> int:
        """Systematic encoding; parity bits sit at positions 2^j."""
        if len(info) != self.k:
            raise ValueError(f"expected {self.k} information bits")
        bits = 0
        s = 0
        it = iter(info)
        for m in range(1, self.n + 1):
            if m & (m - 1) == 0:
                continue
            if next(it):
                bits |= 1 << (m - 1)
                s ^= m
        for j in range(self.r):
            if (s >> j) & 1:
                bits |= 1 << ((1 << j) - 1)
        return bits

    def codewords(self) -> list[int]:
        if self.k > 20:
            raise ValueError("codeword enumeration limited to k <= 20")
        out = []
        for v in range(self.size):
            out.append(self.encode([(v >> t) & 1 for t in range(self.k)]))
        return out


@lru_cache(maxsize=16)
def _hamming_spectrum(r: int) -> tuple[int, ...]:
    n = (1 << r) - 1
    half = (n - 1) // 2
    out = []
    big, small = 1, 1  # C(n, i) and C(half, i // 2), advanced in place
    for i in range(n + 1):
        if i:
            big = big * (n - i + 1) // i
            if i % 2 == 0:
                k = i // 2
                small = small * (half - k + 1) // k
        sign = -1 if (-(-i // 2)) % 2 else 1
        value, rem = divmod(big + n * sign * small, n + 1)
        assert rem == 0
        out.append(value)
    return tuple(out)


def hamming_spectrum(r: int) -> list[int]:
    if not 2 <= r <= 16:
        raise ValueError("r must be in [2, 16]")
    return list(_hamming_spectrum(r))


def p_ue_bsc_hamming(r: int, p):
    """Closed-form BSC undetected-error probability of the length 2^r - 1 code."""
    _check_p(p)
    n = (1 << r) - 1
    return (1 + n * (1 - 2 * p) ** ((n + 1) // 2)) / (n + 1) - (1 - p) ** n


def p_ue_bsc_hamming_derivative(r: int, p):
    _check_p(p)
    n = (1 << r) - 1
    return n * ((1 - p) ** (n - 1) - (1 - 2 * p) ** ((n - 1) // 2))


@dataclass(frozen=True)
class BscFlatReport:
    n: int
    p_low: float
    p_high: float
    value_low: float
    value_high: float
    approx_low: float
    approx_high: float
    difference: float
    difference_estimate: float

    def to_dict(self) -> dict:
        return asdict(self)


def bsc_flat_endpoints_hamming(n: int) -> BscFlatReport:
    r = (n + 1).bit_length() - 1
    if (1 << r) - 1 != n or r < 4:
        raise ValueError("n must be 2^r - 1 with r >= 4")
    root = math.sqrt(n)
    p_low, p_high = 1 / root, 1 - 1 / root
    decay = math.exp(-root - 1)
    v_low = p_ue_bsc_hamming(r, p_low)
    v_high = p_ue_bsc_hamming(r, p_high)
    return BscFlatReport(
        n=n,
        p_low=p_low,
        p_high=p_high,
        value_low=v_low,
        value_high=v_high,
        approx_low=(1 + n * decay * (1 - math.sqrt(math.e))) / (n + 1),
        approx_high=(1 + n * decay) / (n + 1),
        difference=v_high - v_low,
        difference_estimate=n / (n + 1) * math.exp(-root - 0.5),
    )


def p_ue_z_hamming(r: int, p: float) -> float:
    """Exact Z-channel P_ue of the Hamming code by a syndrome-pair DP."""
    _check_p(p)
    if not 2 <= r <= 10:
        raise ValueError("Z-channel DP limited to 2 <= r <= 10")
    n = (1 << r) - 1
    mass = _backend.hamming_fixed_p(r, float(p))
    return float(mass[0, 0]) / float(Fraction(1 << (n - r), 1 << n))


@lru_cache(maxsize=None)
def _krawtchouk(n: int, k: int, i: int) -> int:
    return sum((-1) ** s * math.comb(i, s) * math.comb(n - i, k - s) for s in range(0, min(i, k) + 1))


@dataclass(frozen=True)
class DualSpectrum:
    n: int
    exact: tuple[Fraction, ...]

    @property
    def values(self) -> list[float]:
        return [float(v) for v in self.exact]

    @property
    def dual_distance(self) -> int | None:
        for i in range(1, self.n + 1):
            if self.exact[i] != 0:
                return i
        return None


def macwilliams(distribution: Sequence[int], n: int, size: int, tol: float = 1e-9) -> DualSpectrum:
    """MacWilliams transform (1/M) sum_i B_i K_k(i) in exact arithmetic."""
    if len(distribution) != n + 1:
        raise ValueError("distribution must have n + 1 entries")
    if sum(distribution) != size:
        raise ValueError("distribution must sum to the code size")
    dual = _dual(tuple(Fraction(b) for b in distribution), n, size)
    worst = min(dual)
    if worst < 0 and -worst > tol:
        raise ValueError(f"negative dual coefficient {float(worst):.3g}: inconsistent distribution")
    return DualSpectrum(n, dual)


@lru_cache(maxsize=64)
def _dual(distribution: tuple[Fraction, ...], n: int, size: int) -> tuple[Fraction, ...]:
    out = []
    for k in range(n + 1):
        total = sum(b * _krawtchouk(n, k, i) for i, b in enumerate(distribution) if b)
        out.append(Fraction(total) / size)
    return tuple(out)


def _power_sum(coeffs, start: int, base: Fraction, weight=lambda i: 1, shift: int = 0) -> Fraction:
    """sum_{i >= start} weight(i) coeffs[i] base^(i - shift) with running powers."""
    total = Fraction(0)
    power = base ** (start - shift)
    for i in range(start, len(coeffs)):
        if coeffs[i]:
            total += weight(i) * coeffs[i] * power
        power *= base
    return total


def distance_distribution(codewords: Sequence[int], n: int) -> list[Fraction]:
    """B_i = (1/M) #{(x, y) : d(x, y) = i}; equals the weight spectrum for linear codes."""
    counts = [0] * (n + 1)
    for x in codewords:
        for y in codewords:
            counts[(x ^ y).bit_count()] += 1
    m = len(codewords)
    return [Fraction(c, m) for c in counts]


def p_ue_bsc_generic(distribution: Sequence, n: int, size: int, p):
    """BSC P_ue from the dual distribution of a (possibly nonlinear) code.

    ``distribution`` is the distance distribution; for a linear code the
    weight spectrum can be passed directly.  The sum is carried out exactly
    and rounded once unless ``p`` is rational.
    """
    _check_p(p)
    dual = macwilliams(distribution, n, size)
    d_perp = dual.dual_distance
    x = Fraction(p)
    inner = 1
    if d_perp is not None:
        inner += _power_sum(dual.exact, d_perp, 1 - 2 * x)
    value = Fraction(size, 2**n) * inner - (1 - x) ** n
    return value if isinstance(p, Rational) else float(value)


def p_ue_bsc_generic_derivative(distribution: Sequence, n: int, size: int, p):
    _check_p(p)
    dual = macwilliams(distribution, n, size)
    d_perp = dual.dual_distance
    x = Fraction(p)
    s = 0
    if d_perp is not None:
        s = _power_sum(dual.exact, d_perp, 1 - 2 * x, weight=lambda i: i, shift=1)
    value = -Fraction(size, 2 ** (n - 1)) * s + n * (1 - x) ** (n - 1)
    return value if isinstance(p, Rational) else float(value)


def bsc_derivative_bounds(distribution: Sequence, n: int, size: int, p) -> tuple[float, float]:
    """n(1-p)^(n-1) -/+ n|1-2p|^(d_perp - 1) around dP_ue/dp."""
    _check_p(p)
    d_perp = macwilliams(distribution, n, size).dual_distance
    base = n * (1 - p) ** (n - 1)
    spread = n * abs(1 - 2 * p) ** (d_perp - 1) if d_perp is not None else 0.0
    return base - spread, base + spread
