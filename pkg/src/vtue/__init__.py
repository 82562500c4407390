"""Undetected-error probability of VT and Hamming codes."""

from . import _backend
from .vt_core import (
    VtCode,
    Word,
    approx_weight,
    code_size,
    complement,
    contains,
    enumerate_code,
    reverse,
    syndrome,
    weight_spectrum_general,
    weight_spectrum_v0,
)
from .exact_engine import (
    PairTable,
    p_ue_exact,
    p_ue_exact_fast,
    p_ue_v0prime,
    pair_table_dp,
    pair_table_naive,
    undetectable_count,
)

BACKEND = _backend.NAME

__version__ = "0.1.0"
