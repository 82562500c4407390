"""Acceptance gate: every criterion at its stated tolerance.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from oracles import brute_code, brute_pue_bsc, submasks  # noqa: E402
from vtue.cli import table1_value  # noqa: E402
from vtue.exact_engine import (  # noqa: E402
    p_ue_exact,
    p_ue_exact_fast,
    pair_table_dp,
    pair_table_naive,
    pair_tables_dp,
)
from vtue.hamming import (  # noqa: E402
    HammingCode,
    bsc_derivative_bounds,
    bsc_flat_endpoints_hamming,
    distance_distribution,
    hamming_spectrum,
    p_ue_bsc_generic,
    p_ue_bsc_hamming,
    p_ue_z_hamming,
)
from vtue.heuristic import (  # noqa: E402
    flat_region,
    p_ue_heuristic,
    p_ue_heuristic_derivative,
    p_ue_heuristic_direct,
    p_ue_hybrid,
)
from vtue.vt_core import (  # noqa: E402
    VtCode,
    code_size,
    enumerate_code,
    size_within_bounds,
    weight_spectrum_v0,
)
from vtue.zchannel_sim import SimConfig, simulate_pue  # noqa: E402

GRID = [k / 100 for k in range(1, 100)]


def _rel(a, b):
    return abs(a - b) / abs(b)


def criterion_1():
    start = time.perf_counter()
    bad = [(n, g) for n in range(1, 13) for g in range(n + 1) if pair_table_dp(n, g) != pair_table_naive(n, g)]
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 120, f"mismatches={bad} time={elapsed:.1f}s"


def criterion_2():
    start = time.perf_counter()
    failures = []
    for n in range(10, 21):
        t = pair_table_dp(n, 0)
        spec = weight_spectrum_v0(n)
        for i in range(n + 1):
            if i >= 1 and t[i, 1] != 0:
                failures.append(("sym3", n, i))
            if t[i, i] != spec[i]:
                failures.append(("sym2", n, i))
            for j in range(i + 1):
                if t[i, j] != t[i, i - j]:
                    failures.append(("sym", n, i, j))
                if n % 2 == 0:
                    a = t[i, j]
                    if a != t[n - j, n - i]:
                        failures.append(("rel1", n, i, j))
                    orbit = (t[n - i + j, n - i], t[n - i + j, j], t[n - j, i - j], t[n - j, n - i])
                    if any(v != a for v in orbit):
                        failures.append(("rel2", n, i, j))
        for j in range(n + 1):
            if n % 2 == 0 and not t[n, j] == spec[j] == spec[n - j]:
                failures.append(("sym4", n, j))
            if n % 2 == 1 and t[n, j] != 0:
                failures.append(("odd", n, j))
    elapsed = time.perf_counter() - start
    return not failures and elapsed < 60, f"failures={failures[:5]} time={elapsed:.1f}s"


def criterion_3():
    bad = []
    for n in range(1, 17):
        tables = pair_tables_dp(n)
        spec = weight_spectrum_v0(n)
        for i in range(n + 1):
            for j in range(i + 1):
                if sum(t[i, j] for t in tables) != math.comb(n - j, i - j) * spec[j]:
                    bad.append((n, i, j))
    return not bad, f"mismatches={bad[:5]} over n<=16"


def criterion_4():
    enum_bad = []
    for n in range(1, 17):
        spec = [0] * (n + 1)
        for w in enumerate_code(VtCode(n, 0)):
            spec[w.weight] += 1
        if spec != weight_spectrum_v0(n):
            enum_bad.append(n)
    sandwich_bad = [n for n in range(1, 61) if not size_within_bounds(n)]
    small = weight_spectrum_v0(4) == [1, 0, 2, 0, 1]
    ok = not enum_bad and not sandwich_bad and small
    return ok, f"spectrum_vs_enum_bad={enum_bad} size_sandwich_violated_at_n={sandwich_bad} n4_ok={small}"


def criterion_5():
    bad = []
    for n in range(1, 21):
        size = code_size(n, 0)
        if p_ue_exact(n, 0, 1) != Fraction(size - 1, size):
            bad.append((n, 0))
        bad += [(n, g) for g in range(1, n + 1) if p_ue_exact(n, g, 1) != 0]
    return not bad, f"mismatches={bad}"


def criterion_6():
    start = time.perf_counter()
    t = pair_table_dp(25, 0)
    worst, where = max((_rel(p_ue_hybrid(25, p, 4), t.p_ue(p)), p) for p in GRID)
    elapsed = time.perf_counter() - start
    ok = worst < 0.00065 and 0.4 <= where <= 0.6 and elapsed < 300
    return ok, f"max_rel={worst * 100:.4f}% at p={where} time={elapsed:.2f}s"


def criterion_7():
    start = time.perf_counter()
    root = math.sqrt(509)
    lo = p_ue_heuristic(509, 1 / root)
    hi = p_ue_heuristic(509, 1 - 1 / root)
    elapsed = time.perf_counter() - start
    ok = f"{lo:.4g}" == "0.001961" and f"{hi:.4g}" == "0.001972" and elapsed < 1
    return ok, f"low={lo:.7f} high={hi:.7f} time={elapsed:.3f}s"


def criterion_8():
    worst = max(_rel(p_ue_heuristic(n, p), p_ue_heuristic_direct(n, p)) for n in (10, 20, 30) for p in GRID)
    return worst < 1e-10, f"max_rel={worst:.2e}"


def criterion_9():
    negative = [(n, p) for n in (20, 127, 509) for p in GRID if p_ue_heuristic_derivative(n, p) <= 0]
    plateau = max(_rel(p_ue_exact_fast(127, 0, k / 100), 1 / 128) for k in range(10, 71))
    return not negative and plateau < 0.05, f"nonpositive_derivative={negative} plateau_max_rel={plateau:.4f}"


TABLE_CELLS = [(36, 0.5), (127, 0.5), (127, 0.95), (509, 0.5), (509, 0.9)]


def criterion_10():
    start = time.perf_counter()
    parts, ok = [], True
    for n, p in TABLE_CELLS:
        published = table1_value(n, p)
        sigma = published / math.sqrt(50_000)
        exact = p_ue_exact_fast(n, 0, p)
        z = (exact - published) / sigma
        ok &= abs(z) < 3
        parts.append(f"({n},{p}) exact={exact:.6g} z={z:+.2f}")
    elapsed = time.perf_counter() - start
    return ok and elapsed < 120, " ".join(parts) + f" time={elapsed:.1f}s"


def criterion_11():
    parts, ok = [], True
    for p in (0.1, 0.5, 0.9):
        cfg = SimConfig(n=25, p=p, target=50_000, max_trials=10**8, seed=1)
        rep = simulate_pue(cfg)
        z = (rep.estimate - p_ue_exact(25, 0, p)) / rep.stderr
        ok &= abs(z) < 3 and not rep.truncated
        parts.append(f"p={p} est={rep.estimate:.6g} z={z:+.2f}")
    cfg = SimConfig(n=25, p=0.9, target=50_000, max_trials=10**8, seed=1)
    same = simulate_pue(cfg) == simulate_pue(cfg)
    return ok and same, " ".join(parts) + f" deterministic={same}"


def criterion_12():
    spec_ok = hamming_spectrum(3) == [1, 0, 0, 7, 7, 0, 0, 1]
    closed_gap = 0.0
    for r in (3, 4, 5):
        n = (1 << r) - 1
        for p in GRID:
            closed_gap = max(closed_gap, abs(p_ue_bsc_hamming(r, p) - p_ue_bsc_generic(hamming_spectrum(r), n, 2 ** (n - r), p)))
    half_ok = all(
        p_ue_bsc_hamming(r, Fraction(1, 2)) == Fraction(2 ** ((1 << r) - 1 - r) - 1, 2 ** ((1 << r) - 1))
        for r in (3, 4, 5)
    )
    z_gap = 0.0
    for r in (2, 3, 4):
        code = HammingCode(r)
        words = code.codewords()
        members = set(words)
        counts: dict[tuple[int, int], int] = {}
        for x in words:
            w = x.bit_count()
            for y in submasks(x):
                if y != x and y in members:
                    key = (w, w - y.bit_count())
                    counts[key] = counts.get(key, 0) + 1
        for p in GRID:
            want = sum(c * p**j * (1 - p) ** (i - j) for (i, j), c in counts.items()) / code.size
            z_gap = max(z_gap, abs(p_ue_z_hamming(r, p) - want))
    ok = spec_ok and closed_gap < 1e-12 and half_ok and z_gap < 1e-12
    return ok, f"spectrum_ok={spec_ok} closed_vs_generic={closed_gap:.1e} half_ok={half_ok} z_vs_exhaustive={z_gap:.1e}"


def criterion_13():
    parts, ok = [], True
    h = bsc_flat_endpoints_hamming(127)
    for name, v, a in (("H127.low", h.value_low, h.approx_low), ("H127.high", h.value_high, h.approx_high)):
        e = _rel(v, a)
        ok &= e < 0.05
        parts.append(f"{name}={e * 100:.2f}%")
    for n in (127, 509):
        r = flat_region(n)
        for name, v, a in (("low", r.value_low, r.approx_low), ("high", r.value_high, r.approx_high)):
            e = _rel(v, a)
            ok &= e < 0.05
            parts.append(f"VT{n}.{name}={e * 100:.2f}%")
    h_dec = bsc_flat_endpoints_hamming(1023).difference < h.difference
    vt_dec = flat_region(509).difference < flat_region(127).difference
    ok &= h_dec and vt_dec
    parts.append(f"differences_decrease={h_dec and vt_dec}")
    return ok, " ".join(parts)


def criterion_14():
    n = 10
    code = brute_code(n, 0)
    dist = distance_distribution(code, n)
    m = len(code)
    gap = max(abs(p_ue_bsc_generic(dist, n, m, p) - brute_pue_bsc(code, n, p)) for p in GRID[::4])
    step = Fraction(1, 10**9)
    outside = []
    for k in range(1, 50):
        p = Fraction(k, 50)
        fd = float((p_ue_bsc_generic(dist, n, m, p + step) - p_ue_bsc_generic(dist, n, m, p - step)) / (2 * step))
        lo, hi = bsc_derivative_bounds(dist, n, m, float(p))
        if not lo <= fd <= hi:
            outside.append(float(p))
    return gap < 1e-12 and not outside, f"generic_vs_exhaustive={gap:.1e} sandwich_violations={outside}"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 15)}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_log):
    ok, detail = CRITERIA[number]()
    acceptance_log.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, check in CRITERIA.items():
        ok, detail = check()
        failed += not ok
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}", flush=True)
    sys.exit(1 if failed else 0)
