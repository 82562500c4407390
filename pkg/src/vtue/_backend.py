"""Kernel selection: compiled extension if importable, numpy otherwise.

Set ``VTUE_PURE_PYTHON=1`` to force the numpy fallback.
"""

from __future__ import annotations

import os

if os.environ.get("VTUE_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _fallback as impl
else:
    try:
        from . import _kernels as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as impl

from . import _fallback

NAME = impl.NAME
GENERATOR = impl.GENERATOR

vt_fixed_p = impl.vt_fixed_p
hamming_fixed_p = impl.hamming_fixed_p
make_stream = impl.make_stream
simulate_chunk = impl.simulate_chunk


def compiled_available() -> bool:
    try:
        from . import _kernels  # noqa: F401
    except ImportError:
        return False
    return True


def get(name: str):
    """Return a specific backend module (``"cython"`` or ``"numpy"``)."""
    if name == _fallback.NAME:
        return _fallback
    from . import _kernels

    return _kernels
