from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from vtue import _backend, _fallback

compiled = pytest.mark.skipif(not _backend.compiled_available(), reason="extension not built")


def backend_name(env_value: str | None) -> str:
    env = dict(os.environ)
    env.pop("VTUE_PURE_PYTHON", None)
    if env_value is not None:
        env["VTUE_PURE_PYTHON"] = env_value
    out = subprocess.run(
        [sys.executable, "-c", "import vtue; print(vtue.BACKEND)"], env=env, capture_output=True, text=True, check=True
    )
    return out.stdout.strip()


def test_env_forces_fallback():
    assert backend_name("1") == "numpy"


@compiled
def test_compiled_is_default():
    assert backend_name(None) == "cython"
    assert backend_name("0") == "cython"


def test_get_by_name():
    assert _backend.get("numpy") is _fallback


@compiled
def test_get_compiled():
    assert _backend.get("cython").NAME == "cython"
    assert _backend.get("cython").GENERATOR == "xoshiro256**"


def test_vt_kernel_mass(backend):
    # halved weights: total mass over all x and e (including e = 0) is 1
    n, p = 12, 0.3
    f1 = backend.vt_fixed_p(n, p)
    assert f1.shape == (n + 1, n + 1)
    assert (f1 >= 0).all()
    assert f1.sum() < 1


def test_stream_determinism(backend):
    a = backend.make_stream(5, 0)
    b = backend.make_stream(5, 0)
    c = backend.make_stream(5, 1)
    ra = backend.simulate_chunk(a, 20, 0, 0.5, 0, 10**6, 50)
    rb = backend.simulate_chunk(b, 20, 0, 0.5, 0, 10**6, 50)
    rc = backend.simulate_chunk(c, 20, 0, 0.5, 0, 10**6, 50)
    assert ra == rb
    assert ra != rc


@pytest.mark.parametrize("mode", [0, 1])
def test_chunk_quotas(backend, mode):
    s = backend.make_stream(9, 0)
    trials, hits = backend.simulate_chunk(s, 16, 0, 0.5, mode, 10**7, 37)
    assert hits == 37 and trials >= 37
    trials, hits = backend.simulate_chunk(s, 16, 0, 0.5, mode, 123, 10**6)
    assert trials == 123 and hits < 123


def test_long_words(backend):
    # more than one 64-bit machine word per codeword
    s = backend.make_stream(3, 0)
    trials, hits = backend.simulate_chunk(s, 150, 0, 0.5, 0, 10**6, 20)
    assert hits == 20
    assert 20 / trials == pytest.approx(1 / 151, rel=0.8)


@compiled
def test_backends_share_fixed_p_values():
    ck = _backend.get("cython")
    for n in (3, 40, 200):
        assert np.allclose(ck.vt_fixed_p(n, 0.45), _fallback.vt_fixed_p(n, 0.45), rtol=1e-12, atol=1e-300)
