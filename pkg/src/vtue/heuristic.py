"""Heuristic pair-count approximations and the closed-form P_ue^h(V_0, p).

The closed form and its derivative are evaluated in exact rational
arithmetic on the binary value of ``p``; terms like 2**n - (2-p)**n cancel
badly in floating point for small ``p``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .bounds import closed_form_column
from .exact_engine import _check_p
from .vt_core import code_size, weight_spectrum_v0

SPECTRUM = "spectrum"
BINOMIAL = "binomial"


def approx_pair_count(n: int, i: int, j: int, variant: str = SPECTRUM) -> float:
    """Heuristic estimate of A_{i,j}^{(0)}.

    ``spectrum``: C(n-j, i-j) / C(n, i) * A_j * A_i with exact spectra.
    ``binomial``: C(n, i) C(i, j) / (n+1)^2 for 2 <= j <= i-2,
    C(n, i) / (n+1) on the diagonal and C(n, j) / (n+1) on row n for even n.
    """
    if not 0 <= j <= i <= n:
        raise IndexError(f"need 0 <= j <= i <= n, got i={i}, j={j}, n={n}")
    if variant == SPECTRUM:
        spec = weight_spectrum_v0(n)
        return math.comb(n - j, i - j) * spec[j] * spec[i] / math.comb(n, i)
    if variant != BINOMIAL:
        raise ValueError(f"unknown variant {variant!r}")
    q = n + 1
    if j == i or j == 0:
        return math.comb(n, i) / q
    if i == n and n % 2 == 0:
        return math.comb(n, j) / q
    if j == 1 or j == i - 1:
        return 0.0
    return math.comb(n, i) * math.comb(i, j) / q**2


def _eq12_numerator(n: int, p: Fraction) -> Fraction:
    return (
        2**n
        - (2 - p) ** n
        - n * p * (2 - p) ** (n - 1)
        + 2 * n * p * (1 + p) ** (n - 1)
        - 2 * n * p
        - n * (n - 1) * p**2
    )


def p_ue_heuristic(n: int, p, exact: bool = False):
    """Closed-form heuristic P_ue^h(V_0, p) (with the exact #V_0)."""
    _check_p(p)
    if n < 2:
        raise ValueError("n must be >= 2")
    value = _eq12_numerator(n, Fraction(p)) / ((n + 1) ** 2 * code_size(n, 0))
    return value if exact else float(value)


def p_ue_heuristic_derivative(n: int, p, exact: bool = False):
    """d/dp of :func:`p_ue_heuristic` in its factored closed form."""
    _check_p(p)
    if n < 2:
        raise ValueError("n must be >= 2")
    p = Fraction(p)
    num = 2 * n * (1 + n * p) * ((1 + p) ** (n - 2) - 1) + n * (n - 1) * p * (2 - p) ** (n - 2) + 2 * n * p
    value = num / ((n + 1) ** 2 * code_size(n, 0))
    return value if exact else float(value)


def p_ue_heuristic_direct(n: int, p: float) -> float:
    """The heuristic as an explicit double sum over binomial cell estimates."""
    _check_p(p)
    q = 1.0 - p
    total = 0.0
    for i in range(2, n + 1):
        total += math.comb(n, i) / (n + 1) * p**i
    for i in range(4, n + 1):
        row = 0.0
        for j in range(2, i - 1):
            row += math.comb(i, j) * p**j * q ** (i - j)
        total += math.comb(n, i) / (n + 1) ** 2 * row
    return total / code_size(n, 0)


def hybrid_cells(n: int, jmax: int) -> tuple[dict, dict]:
    """Split the pair-table cells into exactly known and estimated ones."""
    if jmax not in (2, 3, 4):
        raise ValueError("jmax must be 2, 3 or 4")
    spectrum = weight_spectrum_v0(n)
    cols = {j: closed_form_column(n, j) for j in range(2, jmax + 1)}
    exact: dict[tuple[int, int], int] = {}
    approx: dict[tuple[int, int], float] = {}
    for i in range(2, n + 1):
        for j in range(2, i + 1):
            k = i - j
            if j == i:
                exact[(i, j)] = spectrum[i]
            elif j <= jmax:
                exact[(i, j)] = cols[j][i]
            elif k <= jmax:
                # A_{i,i-1} = A_{i,1} = 0
                exact[(i, j)] = cols[k][i] if k >= 2 else 0
            else:
                approx[(i, j)] = approx_pair_count(n, i, j, SPECTRUM)
    return exact, approx


def p_ue_hybrid(n: int, p: float, jmax: int = 4) -> float:
    """Exact low-weight cells (and their mirrors) plus spectrum-based estimates."""
    _check_p(p)
    exact, approx = hybrid_cells(n, jmax)
    q = 1.0 - p
    total = 0.0
    for (i, j), c in exact.items():
        total += float(c) * p**j * q ** (i - j)
    for (i, j), c in approx.items():
        total += c * p**j * q ** (i - j)
    return total / code_size(n, 0)


@dataclass(frozen=True)
class FlatRegionReport:
    n: int
    p_low: float
    p_high: float
    value_low: float
    value_high: float
    approx_low: float
    approx_high: float
    approx_low_refined: float
    approx_high_refined: float
    difference: float
    difference_estimate: float
    difference_bound: float
    value_at_one: float
    value_at_one_claimed: float

    def to_dict(self) -> dict:
        return asdict(self)


def flat_region(n: int) -> FlatRegionReport:
    """Endpoint values of the heuristic on [1/sqrt(n), 1 - 1/sqrt(n)].

    ``approx_low``/``approx_high`` are the classical asymptotic forms.  The
    ``_refined`` pair keeps (2 - 1/sqrt(n))^(n-1) ~ 2^(n-1) e^(...) at its
    true size, which halves the correction terms and adds the
    (1 + sqrt(n)/2) prefactor at the low end; at n = 127 the classical high
    endpoint is ~30% off while the refined one is within ~2%.

    ``difference_estimate`` keeps the exact 2^n/((n+1)^2 #V_0) prefactor,
    ``difference_bound`` replaces it by 1/(n+1).
    """
    if n < 9:
        raise ValueError("flat-region report needs n >= 9")
    root = math.sqrt(n)
    p_low, p_high = 1.0 / root, 1.0 - 1.0 / root
    size = code_size(n, 0)
    scale = float(Fraction(2**n, (n + 1) ** 2 * size))
    decay = math.exp(-root / 2 - 0.125)
    v_low = p_ue_heuristic(n, p_low)
    v_high = p_ue_heuristic(n, p_high)
    return FlatRegionReport(
        n=n,
        p_low=p_low,
        p_high=p_high,
        value_low=v_low,
        value_high=v_high,
        approx_low=scale * (1 - root * decay),
        approx_high=scale * (1 + 2 * n * decay),
        approx_low_refined=scale * (1 - (1 + root / 2) * decay),
        approx_high_refined=scale * (1 + n * decay),
        difference=v_high - v_low,
        difference_estimate=scale * (2 * n + root) * decay,
        difference_bound=2 * n / (n + 1) * decay,
        value_at_one=p_ue_heuristic(n, 1),
        value_at_one_claimed=1 - 1 / size,
    )
