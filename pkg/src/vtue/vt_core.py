"""Binary words and Varshamov-Tenengol'ts codes.

A word of length ``n`` is stored as a Python int; position ``m`` (1-based)
lives in bit ``m - 1``.  Public functions speak in positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

MAX_LENGTH = 1024
ENUMERATION_LIMIT = 30


class EnumerationLimitError(ValueError):
    """Raised when exhaustive enumeration is requested beyond the limit."""


@dataclass(frozen=True)
class Word:
    n: int
    bits: int
    weight: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_LENGTH:
            raise ValueError(f"word length must be in [1, {MAX_LENGTH}], got {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("bits outside the word length")
        object.__setattr__(self, "weight", self.bits.bit_count())

    @classmethod
    def from_string(cls, s: str) -> Word:
        """Parse ``"1001"`` where the first character is position 1."""
        s = s.strip()
        bits = 0
        for m, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << m
            elif ch != "0":
                raise ValueError(f"invalid bit character {ch!r}")
        return cls(len(s), bits)

    @classmethod
    def from_support(cls, n: int, support) -> Word:
        bits = 0
        for m in support:
            if not 1 <= m <= n:
                raise ValueError(f"position {m} outside 1..{n}")
            bits |= 1 << (m - 1)
        return cls(n, bits)

    @classmethod
    def from_bits(cls, seq: Sequence[int]) -> Word:
        bits = 0
        for m, b in enumerate(seq):
            if b:
                bits |= 1 << m
        return cls(len(seq), bits)

    @classmethod
    def zeros(cls, n: int) -> Word:
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> Word:
        return cls(n, (1 << n) - 1)

    def support(self) -> list[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length())
            b ^= low
        return out

    def __getitem__(self, m: int) -> int:
        if not 1 <= m <= self.n:
            raise IndexError(m)
        return (self.bits >> (m - 1)) & 1

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> m) & 1 else "0" for m in range(self.n))

    def to_list(self) -> list[int]:
        return [(self.bits >> m) & 1 for m in range(self.n)]

    def syndrome(self) -> int:
        return sum(self.support()) % (self.n + 1)

    def reverse(self) -> Word:
        return Word(self.n, int(format(self.bits, f"0{self.n}b")[::-1], 2))

    def complement(self) -> Word:
        return Word(self.n, self.bits ^ ((1 << self.n) - 1))

    def dominated_by(self, other: Word) -> bool:
        """True if ``self <= other`` componentwise."""
        self._check_len(other)
        return self.bits & ~other.bits == 0

    def __sub__(self, other: Word) -> Word:
        # only meaningful for other <= self (Z-channel error vectors)
        self._check_len(other)
        if not other.dominated_by(self):
            raise ValueError("subtraction requires other <= self")
        return Word(self.n, self.bits ^ other.bits)

    def _check_len(self, other: Word):
        if other.n != self.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")


def syndrome(x: Word) -> int:
    """Position-weighted sum of ``x`` modulo ``n + 1``."""
    return x.syndrome()


def reverse(x: Word) -> Word:
    return x.reverse()


def complement(x: Word) -> Word:
    return x.complement()


@lru_cache(maxsize=None)
def _divisors(m: int) -> tuple[int, ...]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return tuple(small + large[::-1])


def euler_phi(m: int) -> int:
    result = m
    k, rest = 2, m
    while k * k <= rest:
        if rest % k == 0:
            while rest % k == 0:
                rest //= k
            result -= result // k
        k += 1
    if rest > 1:
        result -= result // rest
    return result


@lru_cache(maxsize=64)
def _spectrum_v0(n: int) -> tuple[int, ...]:
    q = n + 1
    out = []
    for j in range(n + 1):
        total = 0
        for d in _divisors(q):
            jd = j // d
            sign = -1 if (j + jd) % 2 else 1
            total += sign * math.comb(q // d - 1, jd) * euler_phi(d)
        value, rem = divmod(total, q)
        assert rem == 0, "divisor sum not divisible by n+1"
        out.append(value)
    return tuple(out)


def weight_spectrum_v0(n: int) -> list[int]:
    """Exact weight distribution of V_0 from the divisor-sum closed form."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return list(_spectrum_v0(n))


@lru_cache(maxsize=64)
def _residue_weight_table(n: int) -> tuple[tuple[int, ...], ...]:
    # counts[r][w] = number of words of length n with syndrome r and weight w
    q = n + 1
    table = np.zeros((q, n + 1), dtype=object)
    table[0, 0] = 1
    for m in range(1, n + 1):
        shifted = np.roll(table, m % q, axis=0)
        table[:, 1:] = table[:, 1:] + shifted[:, :-1]
    return tuple(tuple(int(v) for v in row) for row in table)


def weight_spectrum_general(n: int, g: int) -> list[int]:
    """Weight distribution of V_g by a (residue, weight) dynamic program."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= g <= n:
        raise ValueError(f"residue g must be in [0, {n}]")
    return list(_residue_weight_table(n)[g])


@lru_cache(maxsize=256)
def _residue_sizes(n: int) -> tuple[int, ...]:
    q = n + 1
    counts = [0] * q
    counts[0] = 1
    for m in range(1, n + 1):
        s = m % q
        counts = [counts[r] + counts[(r - s) % q] for r in range(q)]
    return tuple(counts)


def code_size(n: int, g: int = 0) -> int:
    """Exact number of codewords of V_g."""
    if not 1 <= n <= 2048:
        raise ValueError("n must be in [1, 2048]")
    g %= n + 1
    if g == 0:
        return sum(_spectrum_v0(n))
    return _residue_sizes(n)[g]


def approx_weight(n: int, j: int) -> float:
    """Main-term approximation C(n, j) / (n + 1) of the V_0 weight spectrum."""
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    log_val = math.lgamma(n + 1) - math.lgamma(j + 1) - math.lgamma(n - j + 1) - math.log(n + 1)
    return math.exp(log_val)


def size_bounds_v0(n: int) -> tuple[float, float]:
    """Real-valued sandwich around #V_0 (use :func:`size_within_bounds` for exact checks)."""
    lower = 2.0**n / (n + 1)
    return lower, lower * (1 + n / 2 ** (2 * (n + 2) / 3))


def size_within_bounds(n: int) -> bool:
    """Exact check of 2^n/(n+1) <= #V_0 <= 2^n/(n+1) * (1 + n / 2^(2(n+2)/3)).

    The upper bound has an irrational exponent when 3 does not divide
    2(n+2); it is compared as (S(n+1) - 2^n)^3 * 2^(2(n+2)) <= (n 2^n)^3.
    """
    size = code_size(n, 0)
    q = n + 1
    if size * q < 2**n:
        return False
    excess = size * q - 2**n
    return excess**3 * 2 ** (2 * (n + 2)) <= (n * 2**n) ** 3


@dataclass(frozen=True)
class VtCode:
    n: int
    g: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_LENGTH:
            raise ValueError(f"n must be in [1, {MAX_LENGTH}]")
        object.__setattr__(self, "g", self.g % (self.n + 1))

    @property
    def modulus(self) -> int:
        return self.n + 1

    @property
    def size(self) -> int:
        return code_size(self.n, self.g)

    @property
    def spectrum(self) -> list[int]:
        if self.g == 0:
            return weight_spectrum_v0(self.n)
        return weight_spectrum_general(self.n, self.g)

    def contains(self, x: Word) -> bool:
        if x.n != self.n:
            raise ValueError(f"length mismatch: word has {x.n}, code has {self.n}")
        return x.syndrome() == self.g

    def __contains__(self, x: Word) -> bool:
        return self.contains(x)

    def enumerate(self, limit: int = ENUMERATION_LIMIT) -> Iterator[Word]:
        return enumerate_code(self, limit=limit)


def contains(code: VtCode, x: Word) -> bool:
    return code.contains(x)


def enumerate_code(code: VtCode, limit: int = ENUMERATION_LIMIT) -> Iterator[Word]:
    """Yield every codeword of ``code`` once, in lexicographic bit order.

    Lexicographic order reads the word left to right from position 1, so
    position 1 is the most significant character.
    """
    n, g = code.n, code.g
    if n > limit:
        raise EnumerationLimitError(f"n={n} exceeds enumeration limit {limit}")
    for bits in enumerate_bits(n, g):
        yield Word(n, bits)


def enumerate_bits(n: int, g: int) -> Iterator[int]:
    """Raw int form of :func:`enumerate_code` without limit checks."""
    q = n + 1
    # reach[m][r]: some assignment of positions m..n sums to r mod q
    reach = [[False] * q for _ in range(n + 2)]
    reach[n + 1][0] = True
    for m in range(n, 0, -1):
        nxt = reach[m + 1]
        reach[m] = [nxt[r] or nxt[(r - m) % q] for r in range(q)]

    def walk(m: int, need: int, acc: int):
        if m > n:
            yield acc
            return
        # '0' before '1' at position m gives lexicographic order
        if reach[m + 1][need]:
            yield from walk(m + 1, need, acc)
        rest = (need - m) % q
        if reach[m + 1][rest]:
            yield from walk(m + 1, rest, acc | (1 << (m - 1)))

    if reach[1][g % q]:
        yield from walk(1, g % q, 0)


@lru_cache(maxsize=32)
def syndrome_table(n: int) -> np.ndarray:
    """Syndrome of every n-bit int, for n small enough to tabulate."""
    if n > 24:
        raise EnumerationLimitError("syndrome table limited to n <= 24")
    q = n + 1
    table = np.zeros(1 << n, dtype=np.int64)
    for m in range(1, n + 1):
        half = 1 << (m - 1)
        table[half : 2 * half] = (table[:half] + m) % q
    table.setflags(write=False)
    return table
