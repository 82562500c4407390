"""Vectorised numpy implementations of the hot kernels.

Mirrors the compiled ``_kernels`` module function for function.  The
Monte Carlo stream uses numpy's PCG64, so sampled values differ from the
compiled backend's xoshiro256** stream while sharing the same algorithm.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"
GENERATOR = "numpy.PCG64"

REJECTION = 0
SYSTEMATIC = 1

_BATCH = 4096
_CANDIDATE_WORDS = 1 << 20


def vt_fixed_p(n: int, p: float) -> np.ndarray:
    """Halved-weight mass over (syndrome of x, syndrome of e), e nonzero."""
    q = n + 1
    stay, keep, flip = 0.5, 0.5 * (1.0 - p), 0.5 * p
    f0 = np.zeros(q)
    f0[0] = 1.0
    f1 = np.zeros((q, q))
    for m in range(1, n + 1):
        s = m % q
        f0s = np.roll(f0, s)
        f1s = np.roll(f1, s, axis=0)
        both = np.roll(f1s, s, axis=1)
        both[:, s] += f0s
        f1 = stay * f1 + keep * f1s + flip * both
        f0 = stay * f0 + keep * f0s
    return f1


def hamming_fixed_p(r: int, p: float) -> np.ndarray:
    """Same as :func:`vt_fixed_p` with XOR syndromes of a Hamming code."""
    size = 1 << r
    n = size - 1
    stay, keep, flip = 0.5, 0.5 * (1.0 - p), 0.5 * p
    idx = np.arange(size)
    f0 = np.zeros(size)
    f0[0] = 1.0
    f1 = np.zeros((size, size))
    for col in range(1, n + 1):
        perm = idx ^ col
        f0s = f0[perm]
        f1s = f1[perm]
        both = f1s[:, perm]
        both[:, col] += f0s
        f1 = stay * f1 + keep * f1s + flip * both
        f0 = stay * f0 + keep * f0s
    return f1


class Stream:
    def __init__(self, seed: int, worker: int):
        seq = np.random.SeedSequence(seed, spawn_key=(worker,))
        self.rng = np.random.Generator(np.random.PCG64(seq))


def make_stream(seed: int, worker: int = 0) -> Stream:
    return Stream(seed, worker)


def _chunk_tables(n: int) -> np.ndarray:
    """tables[k, v]: syndrome contribution of byte value v in byte slot k."""
    q = n + 1
    slots = (n + 63) // 64 * 8
    values = np.arange(256)
    tables = np.zeros((slots, 256), dtype=np.int64)
    for k in range(slots):
        for b in range(8):
            pos = 8 * k + b + 1
            if pos <= n:
                tables[k] += ((values >> b) & 1) * pos
    return tables % q


def _sample_rejection(rng, n: int, g: int, count: int, tables) -> np.ndarray:
    q = n + 1
    words = (n + 63) // 64
    top_mask = np.uint64((1 << (n - 64 * (words - 1))) - 1) if n % 64 else np.uint64(2**64 - 1)
    slot_idx = np.arange(8 * words)
    block = max(1, min(_CANDIDATE_WORDS // words, count * q * 2))
    found = []
    have = 0
    while have < count:
        cand = rng.integers(0, 2**64, size=(block, words), dtype=np.uint64, endpoint=False)
        cand[:, -1] &= top_mask
        by = cand.view(np.uint8).reshape(block, 8 * words)
        syn = tables[slot_idx, by].sum(axis=1) % q
        acc = cand[syn == g]
        found.append(acc)
        have += len(acc)
    packed = np.concatenate(found)[:count]
    bits = np.unpackbits(packed.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :n].astype(bool)


def _sample_systematic(rng, n: int, g: int, count: int) -> np.ndarray:
    q = n + 1
    parity = []
    v = 1
    while v <= n:
        parity.append(v)
        v <<= 1
    info_pos = np.array([m for m in range(1, n + 1) if m not in set(parity)])
    info = rng.integers(0, 2, size=(count, len(info_pos)), dtype=np.int64)
    deficiency = (g - info @ info_pos) % q
    x = np.zeros((count, n), dtype=bool)
    x[:, info_pos - 1] = info.astype(bool)
    for j, pos in enumerate(parity):
        x[:, pos - 1] = (deficiency >> j) & 1
    return x


def simulate_chunk(stream: Stream, n: int, g: int, p: float, mode: int, max_trials: int, max_hits: int):
    """Run trials until ``max_hits`` undetected errors or ``max_trials``.

    Returns ``(trials, hits)``; stops right after the trial producing the
    last requested hit.
    """
    rng = stream.rng
    q = n + 1
    positions = np.arange(1, n + 1, dtype=np.int64)
    tables = _chunk_tables(n) if mode == REJECTION else None
    trials = hits = 0
    while trials < max_trials and hits < max_hits:
        b = int(min(_BATCH, max_trials - trials))
        if mode == REJECTION:
            x = _sample_rejection(rng, n, g, b, tables)
        else:
            x = _sample_systematic(rng, n, g, b)
        err = x & (rng.random((b, n)) < p)
        hit = ((err @ positions) % q == 0) & err.any(axis=1)
        running = np.cumsum(hit)
        need = max_hits - hits
        if running[-1] >= need:
            stop = int(np.searchsorted(running, need))
            return trials + stop + 1, max_hits
        trials += b
        hits += int(running[-1])
    return trials, hits
