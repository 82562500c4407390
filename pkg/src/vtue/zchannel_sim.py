"""Monte Carlo estimation of P_ue(V_g, p) over the Z-channel."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _backend
from .vt_core import Word

UNIFORM = "uniform-rejection"
SYSTEMATIC = "systematic-info"
_MODE_CODES = {UNIFORM: 0, SYSTEMATIC: 1}

DEFAULT_TARGET = 50_000
DEFAULT_MAX_TRIALS = 10**10


def parity_positions(n: int) -> list[int]:
    out, v = [], 1
    while v <= n:
        out.append(v)
        v <<= 1
    return out


def info_positions(n: int) -> list[int]:
    parity = set(parity_positions(n))
    return [m for m in range(1, n + 1) if m not in parity]


def info_length(n: int) -> int:
    return n - math.ceil(math.log2(n + 1))


def _place_info(info, n: int) -> tuple[int, int]:
    positions = info_positions(n)
    if len(info) != len(positions):
        raise ValueError(f"expected {len(positions)} information bits, got {len(info)}")
    bits, total = 0, 0
    for m, b in zip(positions, info):
        if b:
            bits |= 1 << (m - 1)
            total += m
    return bits, total


def systematic_encode(info, n: int, g: int = 0) -> Word:
    """Information bits off the powers of two; parity bits spell the deficiency.

    The deficiency d = (g - sum of information positions) mod (n+1) is written
    in binary over positions 1, 2, 4, ...; this is the canonical encoding
    with 0 <= d <= n.
    """
    bits, total = _place_info(info, n)
    d = (g - total) % (n + 1)
    for j, pos in enumerate(parity_positions(n)):
        if (d >> j) & 1:
            bits |= 1 << (pos - 1)
    return Word(n, bits)


def all_encodings(info, n: int, g: int = 0) -> list[Word]:
    """Every codeword of V_g carrying ``info``: deficiencies d, d + (n+1), ...
    that still fit in the parity positions."""
    bits, total = _place_info(info, n)
    parity = parity_positions(n)
    top = (1 << len(parity)) - 1
    out = []
    d = (g - total) % (n + 1)
    while d <= top:
        word = bits
        for j, pos in enumerate(parity):
            if (d >> j) & 1:
                word |= 1 << (pos - 1)
        out.append(Word(n, word))
        d += n + 1
    return out


def z_transmit(x: Word, p: float, rng: np.random.Generator) -> Word:
    """Each 1 independently becomes 0 with probability ``p``."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    support = x.support()
    if not support:
        return x
    lost = rng.random(len(support)) < p
    bits = x.bits
    for m, drop in zip(support, lost):
        if drop:
            bits &= ~(1 << (m - 1))
    return Word(x.n, bits)


def _random_bits(n: int, rng: np.random.Generator) -> int:
    words = rng.bit_generator.random_raw((n + 63) // 64)
    value = 0
    for k, w in enumerate(words.tolist()):
        value |= int(w) << (64 * k)
    return value & ((1 << n) - 1)


def sample_v0_uniform(n: int, rng: np.random.Generator, g: int = 0) -> Word:
    """Uniform codeword of V_g by rejection from uniform n-bit words."""
    if n < 2:
        raise ValueError("n must be >= 2")
    q = n + 1
    g %= q
    while True:
        x = Word(n, _random_bits(n, rng))
        if x.syndrome() == g:
            return x


def is_undetected(x: Word, y: Word, g: int = 0) -> bool:
    """Received word is a different codeword of V_g."""
    return y != x and y.syndrome() == g % (x.n + 1)


@dataclass(frozen=True)
class SimConfig:
    n: int
    g: int = 0
    p: float = 0.5
    target: int = DEFAULT_TARGET
    max_trials: int = DEFAULT_MAX_TRIALS
    seed: int = 0
    workers: int = 1
    mode: str = UNIFORM

    def __post_init__(self):
        if not 2 <= self.n <= 1024:
            raise ValueError("n must be in [2, 1024]")
        if not 0 < self.p < 1:
            raise ValueError("simulation needs 0 < p < 1")
        if self.target < 1:
            raise ValueError("target must be >= 1")
        if self.max_trials < 1:
            raise ValueError("max_trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.mode not in _MODE_CODES:
            raise ValueError(f"mode must be one of {sorted(_MODE_CODES)}")
        object.__setattr__(self, "g", self.g % (self.n + 1))


@dataclass(frozen=True)
class SimReport:
    n: int
    g: int
    p: float
    trials: int
    undetected: int
    estimate: float
    stderr: float
    ci_low: float
    ci_high: float
    truncated: bool
    seed: int
    workers: int
    mode: str
    target: int
    generator: str
    backend: str
    wall_time: float = field(compare=False)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> SimReport:
        return cls(**json.loads(text))

    CSV_FIELDS = (
        "n", "g", "p", "trials", "undetected", "estimate", "stderr",
        "ci_low", "ci_high", "truncated", "seed", "workers", "mode", "generator", "backend",
    )

    def csv_row(self) -> list:
        d = self.to_dict()
        return [d[k] for k in self.CSV_FIELDS]

    @classmethod
    def csv_header(cls) -> list[str]:
        return list(cls.CSV_FIELDS)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.csv_header())
        w.writerow(self.csv_row())
        return buf.getvalue()


def _split(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if k < extra else 0) for k in range(parts)]


def simulate_pue(config: SimConfig, backend=None) -> SimReport:
    """Plain Monte Carlo with the stop-after-``target``-undetected-errors rule.

    Each worker owns an independent stream and a share of the remaining hit
    and trial budgets; rounds repeat until the target or the cap is met, so
    results depend only on (seed, workers, backend).
    """
    impl = backend or _backend.impl
    mode = _MODE_CODES[config.mode]
    streams = [impl.make_stream(config.seed, w) for w in range(config.workers)]
    trials = hits = 0
    start = time.perf_counter()

    def run(args):
        stream, t_quota, h_quota = args
        if t_quota <= 0 or h_quota <= 0:
            return 0, 0
        return impl.simulate_chunk(stream, config.n, config.g, config.p, mode, t_quota, h_quota)

    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        while hits < config.target and trials < config.max_trials:
            jobs = list(
                zip(
                    streams,
                    _split(config.max_trials - trials, config.workers),
                    _split(config.target - hits, config.workers),
                )
            )
            if config.workers == 1:
                results = [run(jobs[0])]
            else:
                results = list(pool.map(run, jobs))
            trials += sum(t for t, _ in results)
            hits += sum(h for _, h in results)

    elapsed = time.perf_counter() - start
    est = hits / trials if trials else 0.0
    se = math.sqrt(est * (1 - est) / trials) if trials else 0.0
    return SimReport(
        n=config.n,
        g=config.g,
        p=config.p,
        trials=trials,
        undetected=hits,
        estimate=est,
        stderr=se,
        ci_low=max(0.0, est - 1.96 * se),
        ci_high=min(1.0, est + 1.96 * se),
        truncated=hits < config.target,
        seed=config.seed,
        workers=config.workers,
        mode=config.mode,
        target=config.target,
        generator=impl.GENERATOR,
        backend=impl.NAME,
        wall_time=elapsed,
    )
